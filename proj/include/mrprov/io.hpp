#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mrprov/error_report.hpp"
#include "mrprov/experiment.hpp"
#include "mrprov/experiment_run.hpp"
#include "mrprov/regression.hpp"
#include "mrprov/similarity.hpp"
#include "mrprov/simulator.hpp"
#include "mrprov/time_series.hpp"

namespace mrprov::io {

using Json = nlohmann::json;

// All readers throw Error(ParseError) naming the file and the offending
// field or line. JSON objects with unknown fields are rejected.

/// Shortest decimal string that parses back to the same double.
std::string format_exact(double v);

/// Six significant digits, printf %.6g.
std::string format_sig6(double v);

/// Value rounded to six significant digits (for JSON printed to a console).
double round_sig6(double v);

Json to_json(const RegressionModel& model);
RegressionModel model_from_json(const Json& j);
void write_model(const std::filesystem::path& path, const RegressionModel& model);
RegressionModel read_model(const std::filesystem::path& path);

Json to_json(const AppProfile& profile);
AppProfile profile_from_json(const Json& j);
AppProfile read_profile(const std::filesystem::path& path);

Json to_json(const ParameterRanges& ranges);
ParameterRanges ranges_from_json(const Json& j);
ParameterRanges read_ranges(const std::filesystem::path& path);

Json to_json(const ErrorReport& report);
Json to_json(const TransferReport& report);
Json to_json(const SimilarityScore& score);

/// Pretty-printed (indent 2, keys sorted) with a trailing newline.
std::string dump(const Json& j);

inline constexpr std::string_view kTraceHeader = "t_seconds,cpu_percent";
inline constexpr std::string_view kRunTableHeader =
    "app_name,map_count,reduce_count,fs_size_mb,in_size_mb,cpu_total_ticks,trace_file";

std::string trace_to_csv(const TimeSeries& trace);
TimeSeries trace_from_csv(std::string_view text, std::string_view source = "<trace>");
void write_trace(const std::filesystem::path& path, const TimeSeries& trace);
TimeSeries read_trace(const std::filesystem::path& path);

/// Writes the table and, for runs that carry a trace, one trace CSV per run
/// under "<table stem>_traces/run_NNNNN.csv" next to the table. The
/// trace_file column holds that path relative to the table's directory.
void write_run_table(const std::filesystem::path& path, std::span<const ExperimentRun> runs);

/// Reads a run table; trace files are resolved relative to the table's
/// directory and every run is validated.
std::vector<ExperimentRun> read_run_table(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace mrprov::io
