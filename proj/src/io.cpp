#include "mrprov/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "mrprov/error.hpp"

namespace mrprov::io {

namespace fs = std::filesystem;

std::string format_exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double round_sig6(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return std::strtod(buf, nullptr);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for '" + path.string() + "'");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

[[noreturn]] void parse_fail(std::string_view ctx, const std::string& what) {
  throw Error(ErrorCode::ParseError, std::string(ctx) + ": " + what);
}

void require_object(const Json& j, std::string_view ctx, std::initializer_list<std::string_view> fields) {
  if (!j.is_object()) parse_fail(ctx, "expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto f : fields) known = known || key == f;
    if (!known) parse_fail(ctx, "unknown field '" + key + "'");
  }
  for (auto f : fields) {
    if (!j.contains(f)) parse_fail(ctx, "missing field '" + std::string(f) + "'");
  }
}

double number_field(const Json& j, std::string_view key, std::string_view ctx) {
  const Json& v = j.at(std::string(key));
  if (!v.is_number()) parse_fail(ctx, "field '" + std::string(key) + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) parse_fail(ctx, "field '" + std::string(key) + "' must be finite");
  return d;
}

std::int64_t integer_field(const Json& j, std::string_view key, std::string_view ctx) {
  const Json& v = j.at(std::string(key));
  if (!v.is_number_integer()) parse_fail(ctx, "field '" + std::string(key) + "' must be an integer");
  return v.get<std::int64_t>();
}

template <std::size_t N>
std::array<double, N> number_array(const Json& j, std::string_view key, std::string_view ctx) {
  const Json& v = j.at(std::string(key));
  if (!v.is_array() || v.size() != N) {
    parse_fail(ctx, "field '" + std::string(key) + "' must be an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    if (!v[i].is_number()) parse_fail(ctx, "field '" + std::string(key) + "' must contain only numbers");
    out[i] = v[i].get<double>();
    if (!std::isfinite(out[i])) parse_fail(ctx, "field '" + std::string(key) + "' must be finite");
  }
  return out;
}

Json parse_json_file(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

// Rewrites library validation failures as parse errors that name the file.
template <typename F>
auto with_context(const std::string& ctx, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (std::string_view(e.what()).starts_with(ctx)) throw;
    throw Error(e.code() == ErrorCode::InvalidArgument ? ErrorCode::ParseError : e.code(),
                ctx + ": " + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- model

Json to_json(const RegressionModel& model) {
  Json j;
  j["app_name"] = model.app_name;
  j["coefficients"] = model.coefficients;
  j["scaler"] = {{"means", model.scaler.means}, {"stds", model.scaler.stds}};
  j["training_summary"] = {{"n_runs", model.training_summary.n_runs},
                           {"mape_percent", model.training_summary.mape_percent}};
  return j;
}

RegressionModel model_from_json(const Json& j) {
  constexpr std::string_view ctx = "model";
  require_object(j, ctx, {"app_name", "coefficients", "scaler", "training_summary"});
  RegressionModel model;
  if (!j.at("app_name").is_string()) parse_fail(ctx, "field 'app_name' must be a string");
  model.app_name = j.at("app_name").get<std::string>();
  model.coefficients = number_array<kNumCoefficients>(j, "coefficients", ctx);

  const Json& scaler = j.at("scaler");
  require_object(scaler, "model.scaler", {"means", "stds"});
  model.scaler.means = number_array<kNumFeatures>(scaler, "means", "model.scaler");
  model.scaler.stds = number_array<kNumFeatures>(scaler, "stds", "model.scaler");

  const Json& summary = j.at("training_summary");
  require_object(summary, "model.training_summary", {"n_runs", "mape_percent"});
  const auto n_runs = integer_field(summary, "n_runs", "model.training_summary");
  if (n_runs < 0) parse_fail("model.training_summary", "field 'n_runs' must be >= 0");
  model.training_summary.n_runs = static_cast<std::size_t>(n_runs);
  model.training_summary.mape_percent = number_field(summary, "mape_percent", "model.training_summary");

  with_context(std::string(ctx), [&] { validate(model); });
  return model;
}

void write_model(const fs::path& path, const RegressionModel& model) { write_file(path, dump(to_json(model))); }

RegressionModel read_model(const fs::path& path) {
  const Json j = parse_json_file(path);
  return with_context(path.string(), [&] { return model_from_json(j); });
}

// -------------------------------------------------------------- profile

Json to_json(const AppProfile& p) {
  Json j;
  j["app_name"] = p.app_name;
  j["true_coefficients"] = p.true_coefficients;
  j["noise_sigma_fraction"] = p.noise_sigma_fraction;
  j["mismatch_amplitude"] = p.mismatch_amplitude;
  j["trace_shape"] = {{"map_fraction", p.trace_shape.map_fraction},
                      {"samples_per_run", p.trace_shape.samples_per_run},
                      {"phase_smoothness", p.trace_shape.phase_smoothness}};
  return j;
}

AppProfile profile_from_json(const Json& j) {
  constexpr std::string_view ctx = "profile";
  require_object(j, ctx,
                 {"app_name", "true_coefficients", "noise_sigma_fraction", "mismatch_amplitude", "trace_shape"});
  AppProfile p;
  if (!j.at("app_name").is_string()) parse_fail(ctx, "field 'app_name' must be a string");
  p.app_name = j.at("app_name").get<std::string>();
  p.true_coefficients = number_array<kNumCoefficients>(j, "true_coefficients", ctx);
  p.noise_sigma_fraction = number_field(j, "noise_sigma_fraction", ctx);
  p.mismatch_amplitude = number_field(j, "mismatch_amplitude", ctx);

  const Json& shape = j.at("trace_shape");
  constexpr std::string_view sctx = "profile.trace_shape";
  require_object(shape, sctx, {"map_fraction", "samples_per_run", "phase_smoothness"});
  p.trace_shape.map_fraction = number_field(shape, "map_fraction", sctx);
  const auto samples = integer_field(shape, "samples_per_run", sctx);
  if (samples < 1) parse_fail(sctx, "field 'samples_per_run' must be positive");
  p.trace_shape.samples_per_run = static_cast<std::size_t>(samples);
  p.trace_shape.phase_smoothness = number_field(shape, "phase_smoothness", sctx);
  return p;
}

AppProfile read_profile(const fs::path& path) {
  const Json j = parse_json_file(path);
  return with_context(path.string(), [&] { return profile_from_json(j); });
}

// --------------------------------------------------------------- ranges

Json to_json(const ParameterRanges& r) {
  Json j;
  j["map"] = {r.map.lo, r.map.hi};
  j["reduce"] = {r.reduce.lo, r.reduce.hi};
  j["fs_size_mb"] = {r.fs_size.lo, r.fs_size.hi};
  j["in_size_mb"] = {r.in_size.lo, r.in_size.hi};
  j["in_size_log_uniform"] = r.in_size_log_uniform;
  return j;
}

ParameterRanges ranges_from_json(const Json& j) {
  constexpr std::string_view ctx = "ranges";
  require_object(j, ctx, {"map", "reduce", "fs_size_mb", "in_size_mb", "in_size_log_uniform"});
  auto int_pair = [&](const char* key) {
    const Json& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
      parse_fail(ctx, std::string("field '") + key + "' must be [lo, hi] integers");
    }
    return Interval<std::int64_t>{v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
  };
  ParameterRanges r;
  r.map = int_pair("map");
  r.reduce = int_pair("reduce");
  const auto fs_pair = number_array<2>(j, "fs_size_mb", ctx);
  const auto in_pair = number_array<2>(j, "in_size_mb", ctx);
  r.fs_size = {fs_pair[0], fs_pair[1]};
  r.in_size = {in_pair[0], in_pair[1]};
  if (!j.at("in_size_log_uniform").is_boolean()) parse_fail(ctx, "field 'in_size_log_uniform' must be a boolean");
  r.in_size_log_uniform = j.at("in_size_log_uniform").get<bool>();
  validate(r);
  return r;
}

ParameterRanges read_ranges(const fs::path& path) {
  const Json j = parse_json_file(path);
  return with_context(path.string(), [&] { return ranges_from_json(j); });
}

// -------------------------------------------------------------- reports

Json to_json(const ErrorReport& report) {
  Json residuals = Json::array();
  for (const auto& r : report.residuals) {
    residuals.push_back(
        {{"index", r.index}, {"predicted", r.predicted}, {"actual", r.actual}, {"ape_percent", r.ape_percent}});
  }
  Json j;
  j["mape"] = report.mape;
  j["max_ape"] = report.max_ape;
  j["r_squared"] = report.r_squared;
  j["excluded_zero_actuals"] = report.excluded_zero_actuals;
  j["clamped_predictions"] = report.clamped_predictions;
  j["n_runs"] = report.residuals.size() + report.excluded_zero_actuals;
  j["residuals"] = std::move(residuals);
  return j;
}

Json to_json(const TransferReport& t) {
  Json j = to_json(t.report);
  j["model_app_name"] = t.model_app;
  j["runs_app_name"] = t.runs_app;
  j["app_mismatch"] = t.app_mismatch;
  return j;
}

Json to_json(const SimilarityScore& s) {
  return {{"dtw_normalized", s.dtw_normalized}, {"pearson", s.pearson}, {"combined", s.combined}, {"weight", s.weight}};
}

// ------------------------------------------------------------------ CSV

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(',', pos);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, end - pos));
    pos = end + 1;
  }
}

template <typename T>
T parse_value(std::string_view field, const std::string& where, const char* column) {
  T value{};
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (field.empty() || res.ec != std::errc() || res.ptr != last) {
    throw Error(ErrorCode::ParseError, where + ": column '" + column + "' has invalid value '" +
                                           std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string trace_to_csv(const TimeSeries& trace) {
  std::string out(kTraceHeader);
  out += '\n';
  const auto values = trace.values();
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += format_exact(static_cast<double>(k) * trace.interval());
    out += ',';
    out += format_exact(values[k]);
    out += '\n';
  }
  return out;
}

TimeSeries trace_from_csv(std::string_view text, std::string_view source) {
  const std::string src(source);
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != kTraceHeader) {
    throw Error(ErrorCode::ParseError, src + ": header must be '" + std::string(kTraceHeader) + "'");
  }
  std::vector<double> times;
  std::vector<double> values;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = src + ":" + std::to_string(i + 1);
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 2) throw Error(ErrorCode::ParseError, where + ": expected 2 fields");
    times.push_back(parse_value<double>(fields[0], where, "t_seconds"));
    values.push_back(parse_value<double>(fields[1], where, "cpu_percent"));
  }
  if (values.size() < 2) throw Error(ErrorCode::ParseError, src + ": trace needs at least 2 samples");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::ParseError, src + ": t_seconds must be strictly increasing");
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = times.front() + static_cast<double>(k) * dt;
    if (std::abs(times[k] - expected) > 1e-6 * dt) {
      throw Error(ErrorCode::ParseError,
                  src + ":" + std::to_string(k + 2) + ": t_seconds is not uniformly spaced");
    }
  }
  return with_context(src, [&] { return TimeSeries(std::move(values), dt); });
}

void write_trace(const fs::path& path, const TimeSeries& trace) { write_file(path, trace_to_csv(trace)); }

TimeSeries read_trace(const fs::path& path) { return trace_from_csv(read_file(path), path.string()); }

void write_run_table(const fs::path& path, std::span<const ExperimentRun> runs) {
  const fs::path dir = path.parent_path();
  const std::string trace_dir = path.stem().string() + "_traces";
  std::string out(kRunTableHeader);
  out += '\n';
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    std::string trace_file;
    if (run.trace) {
      char name[32];
      std::snprintf(name, sizeof name, "run_%05zu.csv", i);
      trace_file = trace_dir + "/" + name;
      write_trace(dir / trace_file, *run.trace);
    }
    out += run.app_name + ',' + std::to_string(run.config.map_count) + ',' +
           std::to_string(run.config.reduce_count) + ',' + format_exact(run.config.fs_size) + ',' +
           format_exact(run.config.in_size) + ',' + format_exact(run.cpu_total) + ',' + trace_file + '\n';
  }
  write_file(path, out);
}

std::vector<ExperimentRun> read_run_table(const fs::path& path) {
  const std::string text = read_file(path);
  const std::string src = path.string();
  const auto lines = split_lines(text);
  if (lines.empty() || lines.front() != kRunTableHeader) {
    throw Error(ErrorCode::ParseError, src + ": header must be '" + std::string(kRunTableHeader) + "'");
  }
  std::vector<ExperimentRun> runs;
  runs.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string where = src + ":" + std::to_string(i + 1);
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 7) {
      throw Error(ErrorCode::ParseError, where + ": expected 7 fields, got " + std::to_string(fields.size()));
    }
    ExperimentRun run;
    run.app_name = std::string(fields[0]);
    run.config.map_count = parse_value<std::int64_t>(fields[1], where, "map_count");
    run.config.reduce_count = parse_value<std::int64_t>(fields[2], where, "reduce_count");
    run.config.fs_size = parse_value<double>(fields[3], where, "fs_size_mb");
    run.config.in_size = parse_value<double>(fields[4], where, "in_size_mb");
    run.cpu_total = parse_value<double>(fields[5], where, "cpu_total_ticks");
    if (!fields[6].empty()) run.trace = read_trace(path.parent_path() / fs::path(std::string(fields[6])));
    with_context(where, [&] { validate(run); });
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace mrprov::io
