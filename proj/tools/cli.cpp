#include "cli.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mrprov/error.hpp"
#include "mrprov/error_report.hpp"
#include "mrprov/experiment.hpp"
#include "mrprov/io.hpp"
#include "mrprov/plot.hpp"
#include "mrprov/regression.hpp"
#include "mrprov/similarity.hpp"
#include "mrprov/simulator.hpp"

namespace mrprov::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InsufficientData:
    case ErrorCode::RankDeficient:
    case ErrorCode::AllZeroActuals:
    case ErrorCode::ZeroVariance:
      return kExitNumerical;
    default:
      return kExitInput;
  }
}

AppProfile load_profile(const std::string& spec) {
  for (const auto& name : bundled_profile_names()) {
    if (spec == name) return bundled_profile(name);
  }
  return io::read_profile(spec);
}

std::string runs_app_label(std::span<const ExperimentRun> runs) {
  return runs.empty() ? std::string() : runs.front().app_name;
}

void print_report_summary(std::ostream& out, const ErrorReport& r) {
  out << "mape_percent: " << io::format_sig6(r.mape) << "\n"
      << "max_ape_percent: " << io::format_sig6(r.max_ape) << "\n"
      << "r_squared: " << io::format_sig6(r.r_squared) << "\n"
      << "excluded_zero_actuals: " << r.excluded_zero_actuals << "\n";
}

std::string residual_csv(const ErrorReport& r) {
  std::string s = "index,predicted,actual,ape_percent\n";
  for (const auto& res : r.residuals) {
    s += std::to_string(res.index) + ',' + io::format_exact(res.predicted) + ',' + io::format_exact(res.actual) +
         ',' + io::format_exact(res.ape_percent) + '\n';
  }
  return s;
}

// Residuals and MAPE from a report JSON written by evaluate or transfer.
ErrorReport report_from_file(const fs::path& path) {
  const io::Json j = [&] {
    try {
      return io::Json::parse(io::read_file(path));
    } catch (const io::Json::exception& e) {
      throw Error(ErrorCode::ParseError, path.string() + ": invalid JSON: " + e.what());
    }
  }();
  ErrorReport r;
  try {
    r.mape = j.at("mape").get<double>();
    r.max_ape = j.at("max_ape").get<double>();
    for (const auto& item : j.at("residuals")) {
      r.residuals.push_back({item.at("index").get<std::size_t>(), item.at("predicted").get<double>(),
                             item.at("actual").get<double>(), item.at("ape_percent").get<double>()});
    }
  } catch (const io::Json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": not an error report: " + e.what());
  }
  if (r.residuals.empty()) throw Error(ErrorCode::ParseError, path.string() + ": report has no residuals");
  return r;
}

bool looks_like_json(const fs::path& path) {
  const std::string text = io::read_file(path);
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic CPU-cost models for MapReduce configurations", "mrprov"};
  app.require_subcommand(1);

  // simulate
  std::string profile_spec;
  std::optional<std::string> ranges_path;
  std::size_t n_runs = 0;
  std::uint64_t seed = 42;
  std::string out_path;
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic runs and CPU traces from a profile");
  simulate->add_option("--profile", profile_spec, "Profile JSON file or bundled profile name")->required();
  simulate->add_option("--ranges", ranges_path, "Parameter ranges JSON (default ranges if omitted)");
  simulate->add_option("--n", n_runs, "Number of runs")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Random seed")->capture_default_str();
  simulate->add_option("--out", out_path, "Run table CSV to write")->required();

  // fit
  std::string runs_path;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the quadratic CPU-cost model to a run table");
  fit_cmd->add_option("--runs", runs_path, "Run table CSV")->required();
  fit_cmd->add_option("--out", out_path, "Model JSON to write")->required();

  // predict
  std::string model_path;
  std::int64_t map_count = 0;
  std::int64_t reduce_count = 0;
  double fs_size = 0.0;
  double in_size = 0.0;
  auto* predict_cmd = app.add_subcommand("predict", "Predict CPU ticks for one configuration");
  predict_cmd->add_option("--model", model_path, "Model JSON")->required();
  predict_cmd->add_option("--map", map_count, "Number of map tasks")->required();
  predict_cmd->add_option("--reduce", reduce_count, "Number of reduce tasks")->required();
  predict_cmd->add_option("--fs-size", fs_size, "Block size, MB")->required();
  predict_cmd->add_option("--in-size", in_size, "Input size, MB")->required();

  // evaluate / transfer
  std::optional<std::string> csv_path;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Error report of a model on a run table");
  auto* transfer_cmd = app.add_subcommand("transfer", "Error report of one application's model on another's runs");
  for (auto* cmd : {evaluate_cmd, transfer_cmd}) {
    cmd->add_option("--model", model_path, "Model JSON")->required();
    cmd->add_option("--runs", runs_path, "Run table CSV")->required();
    cmd->add_option("--out", out_path, "Report JSON to write")->required();
    cmd->add_option("--csv", csv_path, "Optional per-run residual CSV");
  }

  // similarity
  std::string trace_a;
  std::string trace_b;
  double weight = kDefaultSimilarityWeight;
  std::optional<std::size_t> band;
  auto* similarity_cmd = app.add_subcommand("similarity", "Compare two CPU traces");
  similarity_cmd->add_option("trace_a", trace_a, "First trace CSV")->required();
  similarity_cmd->add_option("trace_b", trace_b, "Second trace CSV")->required();
  similarity_cmd->add_option("--weight", weight, "Weight of correlation in the combined score")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  similarity_cmd->add_option("--band", band, "Sakoe-Chiba half-width");
  std::optional<double> advisory_threshold;
  similarity_cmd
      ->add_option("--advisory-threshold", advisory_threshold,
                   "Also report whether the combined score reaches this value")
      ->check(CLI::Range(0.0, 1.0));

  // plot
  std::string kind = "actual-vs-model";
  std::optional<std::string> plot_model;
  auto* plot_cmd = app.add_subcommand("plot", "Render an SVG of model fit or residuals");
  plot_cmd->add_option("--runs", runs_path, "Run table CSV or report JSON")->required();
  plot_cmd->add_option("--model", plot_model, "Model JSON (required with a run table)");
  plot_cmd->add_option("--out", out_path, "SVG file to write")->required();
  plot_cmd->add_option("--kind", kind, "Plot kind")
      ->check(CLI::IsMember({"actual-vs-model", "residual"}))
      ->capture_default_str();

  std::vector<const char*> argv{"mrprov"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (simulate->parsed()) {
      const ParameterRanges ranges = ranges_path ? io::read_ranges(*ranges_path) : ParameterRanges::defaults();
      const AppProfile profile = load_profile(profile_spec);
      validate(profile, ranges);
      const auto configs = sample_configs(n_runs, ranges, seed);
      const auto runs = batch_simulate(profile, configs, seed);
      io::write_run_table(out_path, runs);
      out << "wrote " << runs.size() << " runs of " << profile.app_name << " to " << out_path << "\n";
    } else if (fit_cmd->parsed()) {
      const auto runs = io::read_run_table(runs_path);
      const RegressionModel model = fit(runs);
      io::write_model(out_path, model);
      out << "n_runs: " << model.training_summary.n_runs << "\n"
          << "training_mape_percent: " << io::format_sig6(model.training_summary.mape_percent) << "\n";
    } else if (predict_cmd->parsed()) {
      const RegressionModel model = io::read_model(model_path);
      const ConfigPoint c{map_count, reduce_count, fs_size, in_size};
      validate(c);
      const Prediction p = predict(model, c);
      // Printed exactly so a prediction can be compared with a stored run.
      out << io::format_exact(p.value) << "\n";
      if (p.clamped) err << "warning: raw model value was negative; clamped to 0\n";
    } else if (evaluate_cmd->parsed() || transfer_cmd->parsed()) {
      const RegressionModel model = io::read_model(model_path);
      const auto runs = io::read_run_table(runs_path);
      io::Json j;
      ErrorReport report;
      if (transfer_cmd->parsed()) {
        const TransferReport t = transfer_error(model, runs);
        j = io::to_json(t);
        report = t.report;
        out << "model_app_name: " << t.model_app << "\n"
            << "runs_app_name: " << t.runs_app << "\n";
      } else {
        report = evaluate(model, runs);
        j = io::to_json(report);
      }
      io::write_file(out_path, io::dump(j));
      if (csv_path) io::write_file(*csv_path, residual_csv(report));
      print_report_summary(out, report);
    } else if (similarity_cmd->parsed()) {
      const TimeSeries a = io::read_trace(trace_a);
      const TimeSeries b = io::read_trace(trace_b);
      const SimilarityScore s = similarity_score(a, b, weight, band);
      SimilarityScore rounded{io::round_sig6(s.dtw_normalized), io::round_sig6(s.pearson),
                              io::round_sig6(s.combined), s.weight};
      io::Json j = io::to_json(rounded);
      if (advisory_threshold) {
        j["advisory_threshold"] = *advisory_threshold;
        j["advisory_similar"] = s.combined >= *advisory_threshold;
      }
      out << io::dump(j);
    } else if (plot_cmd->parsed()) {
      std::string svg;
      if (looks_like_json(runs_path)) {
        const ErrorReport report = report_from_file(runs_path);
        if (kind == "residual") {
          svg = plot::residual_svg(report.residuals, report.mape, "Model error per experiment");
        } else {
          std::vector<double> actual;
          std::vector<double> predicted;
          for (const auto& r : report.residuals) {
            actual.push_back(r.actual);
            predicted.push_back(r.predicted);
          }
          svg = plot::actual_vs_model_svg(actual, predicted, "Actual and modelled CPU cost");
        }
      } else {
        if (!plot_model) throw Error(ErrorCode::InvalidArgument, "--model is required when --runs is a run table");
        const RegressionModel model = io::read_model(*plot_model);
        const auto runs = io::read_run_table(runs_path);
        if (runs.empty()) throw Error(ErrorCode::EmptyInput, runs_path + ": no runs to plot");
        const std::string app = runs_app_label(runs);
        if (kind == "residual") {
          const ErrorReport report = evaluate(model, runs);
          svg = plot::residual_svg(report.residuals, report.mape, "Model error per experiment (" + app + ")");
        } else {
          std::vector<double> actual;
          std::vector<double> predicted;
          for (const auto& run : runs) {
            actual.push_back(run.cpu_total);
            predicted.push_back(predict(model, run.config).value);
          }
          svg = plot::actual_vs_model_svg(actual, predicted, "Actual and modelled CPU cost (" + app + ")");
        }
      }
      io::write_file(out_path, svg);
      out << "wrote " << out_path << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace mrprov::cli
