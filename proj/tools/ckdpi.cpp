// ckdpi - CK metrics and defect-proneness reporting tool.
//
//   ckdpi metrics <inputs...>    extract metric vectors to CSV
//   ckdpi analyze <inputs...>    full defect-proneness report
//   ckdpi calibrate [golden.csv] refit coefficients and show divergence
//
// Exit codes: 0 success; 1 analyze gate exceeded; 2 input or usage error.
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ckdpi/analysis.hpp"

namespace {

void add_input_flags(CLI::App* cmd, ckdpi::AnalysisConfig& config) {
    cmd->add_option("inputs", config.input_paths,
                    "source files/directories, or one model-document/metrics file")
        ->required();
    std::map<std::string, ckdpi::InputFormat> formats{
        {"source", ckdpi::InputFormat::source},
        {"model", ckdpi::InputFormat::model_document},
        {"metrics", ckdpi::InputFormat::metrics_csv},
    };
    cmd->add_option("--input-format", config.input_format,
                    "input kind: source, model (class-model JSON) or metrics (CSV)")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    std::map<std::string, ckdpi::WmcMode> wmc_modes{
        {"count", ckdpi::WmcMode::count},
        {"cyclomatic", ckdpi::WmcMode::cyclomatic},
    };
    cmd->add_option("--wmc-mode", config.wmc_mode,
                    "method weighting: count or cyclomatic")
        ->transform(CLI::CheckedTransformer(wmc_modes, CLI::ignore_case));
    cmd->add_option("--ext", config.source_extension,
                    "source file extension for directory inputs");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CK metrics and defect-proneness estimation"};
    app.require_subcommand(1);

    ckdpi::AnalysisConfig config;
    std::string model_name = "calibrated";
    std::string model_file;
    std::map<std::string, ckdpi::OutputFormat> output_formats{
        {"text", ckdpi::OutputFormat::text},
        {"csv", ckdpi::OutputFormat::csv},
        {"structured", ckdpi::OutputFormat::structured},
    };

    CLI::App* metrics = app.add_subcommand("metrics", "extract metric vectors as CSV");
    add_input_flags(metrics, config);

    CLI::App* analyze = app.add_subcommand("analyze", "defect-proneness report");
    add_input_flags(analyze, config);
    analyze->add_option("--model", model_name, "built-in coefficient set: published or calibrated")
        ->transform(CLI::IsMember({"published", "calibrated"}, CLI::ignore_case));
    analyze->add_option("--model-file", model_file,
                        "load the coefficient set from a model JSON document");
    analyze->add_option("--output", config.output_format,
                        "output format: text, csv or structured")
        ->transform(CLI::CheckedTransformer(output_formats, CLI::ignore_case));
    analyze->add_option("--gate", config.gate,
                        "fail (exit 1) when project p_dpr exceeds this percentage")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), 100.0).description("FLOAT in (0 - 100]"));
    analyze->add_option("--round", config.round_decimals, "decimals in rendered values")
        ->check(CLI::Range(0, 9));
    analyze->add_option("--project-id", config.project_id, "label for the summary row");

    ckdpi::CalibrateConfig cal;
    CLI::App* calibrate =
        app.add_subcommand("calibrate", "refit coefficients from a golden dataset");
    calibrate->add_option("golden", cal.golden_csv,
                          "golden dataset CSV (defaults to the built-in dataset)");
    calibrate->add_option("--model-file", cal.model_out,
                          "write the calibrated model JSON here");
    calibrate->add_option("--output", cal.output_format,
                          "output format: text or structured")
        ->transform(CLI::CheckedTransformer(output_formats, CLI::ignore_case));
    calibrate->add_option("--round", cal.round_decimals, "decimals in rendered values")
        ->check(CLI::Range(0, 9));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    if (metrics->parsed()) return ckdpi::run_metrics(config, std::cout, std::cerr);
    if (analyze->parsed()) {
        if (!model_file.empty()) {
            config.model_choice = ckdpi::ModelChoice::from_file;
            config.model_file = model_file;
        } else {
            config.model_choice = model_name == "published"
                                      ? ckdpi::ModelChoice::published
                                      : ckdpi::ModelChoice::calibrated;
        }
        return ckdpi::run_analyze(config, std::cout, std::cerr);
    }
    return ckdpi::run_calibrate(cal, std::cout, std::cerr);
}
