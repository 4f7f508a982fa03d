// ckdpi/analysis.hpp - end-to-end pipeline drivers shared by the CLI.
//
// run_analyze / run_metrics / run_calibrate return process exit codes:
//   0  success (analyze: gate not set, or p_dpr within the gate)
//   1  analyze only: gate set and p_dpr above it
//   2  any input error (bad files, bad flags, empty input)
// Data goes to `out`, warnings and notes go to `diag`.
#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ckdpi/calibration.hpp"
#include "ckdpi/errors.hpp"
#include "ckdpi/estimation.hpp"
#include "ckdpi/golden.hpp"
#include "ckdpi/metrics.hpp"
#include "ckdpi/model_doc.hpp"
#include "ckdpi/model_io.hpp"
#include "ckdpi/parser.hpp"
#include "ckdpi/report.hpp"

namespace ckdpi {

enum class InputFormat { source, model_document, metrics_csv };
enum class OutputFormat { text, csv, structured };
enum class ModelChoice { published, calibrated, from_file };

struct AnalysisConfig {
    std::vector<std::string> input_paths;
    InputFormat input_format = InputFormat::source;
    ModelChoice model_choice = ModelChoice::calibrated;
    std::string model_file;                  // used when model_choice == from_file
    WmcMode wmc_mode = WmcMode::count;
    OutputFormat output_format = OutputFormat::text;
    std::optional<double> gate;              // percent threshold on p_dpr
    int round_decimals = 2;
    std::string source_extension = ".java";
    std::string project_id = "PROJECT";
};

inline constexpr const char* kMetricsCsvHeader = "class,dit,rfc,wmc";

/// Reads "class,dit,rfc,wmc" rows, preserving row order. Duplicate class
/// names are rejected.
inline std::vector<MetricVector> read_metrics_csv(std::istream& in,
                                                  const std::string& source) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(source, 1, 1, "empty metrics file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMetricsCsvHeader)
        throw ParseError(source, 1, 1,
                         std::string("expected header '") + kMetricsCsvHeader + "'");
    std::vector<MetricVector> out;
    std::set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 4)
            throw ParseError(source, line_no, 1,
                             "expected 4 fields, got " + std::to_string(f.size()));
        if (f[0].empty()) throw ParseError(source, line_no, 1, "empty class name");
        if (!seen.insert(f[0]).second)
            throw ParseError(source, line_no, 1, "duplicate class '" + f[0] + "'");
        MetricVector v;
        v.class_name = f[0];
        long dit = detail::parse_long_field(f[1], source, line_no, "dit");
        long rfc = detail::parse_long_field(f[2], source, line_no, "rfc");
        long wmc = detail::parse_long_field(f[3], source, line_no, "wmc");
        if (dit < 0 || rfc < 0 || wmc < 0)
            throw ParseError(source, line_no, 1, "metric values must be non-negative");
        v.dit = static_cast<unsigned>(dit);
        v.rfc = static_cast<unsigned>(rfc);
        v.wmc = static_cast<unsigned>(wmc);
        out.push_back(std::move(v));
    }
    return out;
}

inline void write_metrics_csv(std::ostream& out, const std::vector<MetricVector>& vectors) {
    out << kMetricsCsvHeader << "\n";
    for (const auto& v : vectors)
        out << v.class_name << ',' << v.dit << ',' << v.rfc << ',' << v.wmc << "\n";
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Expands the input paths: files stay, directories are walked recursively
/// for files with the configured extension. The result is sorted.
inline std::vector<std::string> discover_sources(const std::vector<std::string>& paths,
                                                 const std::string& extension) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& p : paths) {
        fs::path path(p);
        std::error_code ec;
        if (fs::is_directory(path, ec)) {
            for (const auto& entry : fs::recursive_directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == extension)
                    files.push_back(entry.path().string());
            }
        } else if (fs::exists(path, ec)) {
            files.push_back(path.string());
        } else {
            throw InputError("no such input: " + p);
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

} // namespace detail

/// Produces metric vectors from the configured inputs. Source and model
/// documents go through the class model; metrics CSV rows pass through
/// unchanged (including their order).
inline std::vector<MetricVector> gather_vectors(const AnalysisConfig& config) {
    if (config.input_paths.empty()) throw InputError("no inputs given");
    std::vector<MetricVector> vectors;
    switch (config.input_format) {
        case InputFormat::source: {
            auto files = detail::discover_sources(config.input_paths,
                                                  config.source_extension);
            std::vector<SourceUnit> units;
            units.reserve(files.size());
            for (const auto& f : files)
                units.push_back(parse_source(detail::read_file(f), f));
            vectors = compute_all(build_model(units), config.wmc_mode);
            break;
        }
        case InputFormat::model_document: {
            if (config.input_paths.size() != 1)
                throw InputError("model-document input takes exactly one file");
            try {
                ClassModel model = ingest_model(detail::read_file(config.input_paths[0]));
                vectors = compute_all(model, config.wmc_mode);
            } catch (const ModelError& e) {
                throw ModelError(config.input_paths[0] + ": " + e.what());
            }
            break;
        }
        case InputFormat::metrics_csv: {
            if (config.input_paths.size() != 1)
                throw InputError("metrics-csv input takes exactly one file");
            std::ifstream in(config.input_paths[0]);
            if (!in) throw InputError("cannot open " + config.input_paths[0]);
            vectors = read_metrics_csv(in, config.input_paths[0]);
            break;
        }
    }
    if (vectors.empty()) throw InputError("no classes found in the inputs");
    return vectors;
}

inline ModelSet resolve_model(const AnalysisConfig& config) {
    switch (config.model_choice) {
        case ModelChoice::published: return ModelSet::published();
        case ModelChoice::calibrated: return ModelSet::calibrated();
        case ModelChoice::from_file:
            return parse_model_text(detail::read_file(config.model_file),
                                    config.model_file);
    }
    throw InputError("unknown model choice");
}

/// Full pipeline without rendering; throws on input errors.
inline Report analyze(const AnalysisConfig& config) {
    return build_report(gather_vectors(config), resolve_model(config),
                        config.project_id);
}

inline int run_analyze(const AnalysisConfig& config, std::ostream& out,
                       std::ostream& diag) {
    try {
        Report report = analyze(config);
        switch (config.output_format) {
            case OutputFormat::text:
                render_text(report, out, config.round_decimals);
                break;
            case OutputFormat::csv:
                diag << "note: model: " << report.model_label << "\n";
                render_csv(report, out, config.round_decimals);
                break;
            case OutputFormat::structured:
                render_structured(report, out, config.round_decimals);
                break;
        }
        for (const auto& n : report.notes) diag << n << "\n";
        if (config.gate && report.summary.p_dpr > *config.gate) {
            diag << "gate: p_dpr " << format_fixed(report.summary.p_dpr, config.round_decimals)
                 << " exceeds " << format_fixed(*config.gate, config.round_decimals) << "\n";
            return 1;
        }
        return 0;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run_metrics(const AnalysisConfig& config, std::ostream& out,
                       std::ostream& diag) {
    try {
        write_metrics_csv(out, gather_vectors(config));
        return 0;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

struct CalibrateConfig {
    std::string golden_csv;        // empty: use the built-in golden dataset
    std::string model_out;         // write the calibrated ModelSet here if set
    OutputFormat output_format = OutputFormat::text;
    int round_decimals = 2;
};

namespace detail {

inline void render_component_divergence(std::ostream& out, const char* name,
                                        const ComponentDivergence& d, int decimals) {
    out << name << ":\n";
    char line[256];
    std::snprintf(line, sizeof line, "  %6s %10s %10s %10s %10s", "x", "published",
                  "calibrated", "golden", "|pub-cal|");
    out << line << "\n";
    for (const auto& p : d.points) {
        std::snprintf(line, sizeof line, "  %6s %10s %10s %10s %10s",
                      format_fixed(p.x, 0).c_str(),
                      format_fixed(p.published, decimals).c_str(),
                      format_fixed(p.calibrated, decimals).c_str(),
                      format_fixed(p.golden, decimals).c_str(),
                      format_fixed(std::abs(p.published - p.calibrated), decimals).c_str());
        out << line << "\n";
    }
    out << "  max |published-calibrated| = " << format_fixed(d.max_pub_vs_cal, decimals)
        << " at x = " << format_fixed(d.at_pub_vs_cal, 0) << "\n";
    out << "  max |published-golden|     = " << format_fixed(d.max_pub_vs_golden, decimals)
        << " at x = " << format_fixed(d.at_pub_vs_golden, 0) << "\n";
}

inline nlohmann::json divergence_json(const ComponentDivergence& d, int decimals) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : d.points)
        points.push_back({{"x", p.x},
                          {"published", round_to(p.published, decimals)},
                          {"calibrated", round_to(p.calibrated, decimals)},
                          {"golden", round_to(p.golden, decimals)}});
    return {{"points", points},
            {"max_published_vs_calibrated", round_to(d.max_pub_vs_cal, decimals)},
            {"at_published_vs_calibrated", d.at_pub_vs_cal},
            {"max_published_vs_golden", round_to(d.max_pub_vs_golden, decimals)},
            {"at_published_vs_golden", d.at_pub_vs_golden}};
}

} // namespace detail

inline int run_calibrate(const CalibrateConfig& config, std::ostream& out,
                         std::ostream& diag) {
    try {
        GoldenDataset dataset;
        std::string source = "builtin golden dataset";
        if (config.golden_csv.empty()) {
            dataset = GoldenDataset::builtin();
        } else {
            std::ifstream in(config.golden_csv);
            if (!in) throw InputError("cannot open " + config.golden_csv);
            dataset = load_golden_csv(in, config.golden_csv);
            source = config.golden_csv;
        }
        CalibrationResult result = recover_calibrated(dataset);

        if (result.excluded_wmc_cells > 0) {
            std::string projects;
            for (const auto& p : result.excluded_projects) {
                if (!projects.empty()) projects += ", ";
                projects += p;
            }
            diag << "note: excluded " << result.excluded_wmc_cells
                 << " corrupted dp_wmc cells (project " << projects
                 << ") from the wmc fit\n";
        }

        if (!config.model_out.empty()) {
            std::ofstream mf(config.model_out);
            if (!mf) throw InputError("cannot write " + config.model_out);
            mf << model_to_json(result.model).dump(2) << "\n";
            diag << "note: calibrated model written to " << config.model_out << "\n";
        }

        const int d = config.round_decimals;
        if (config.output_format == OutputFormat::structured) {
            nlohmann::json j;
            j["source"] = source;
            j["model"] = model_to_json(result.model);
            auto fit_json = [](const FitReport& f) {
                return nlohmann::json{
                    {"method", f.method == FitMethod::exact_solve ? "exact_solve"
                                                                  : "least_squares"},
                    {"max_abs_residual", f.max_abs_residual}};
            };
            j["fit"] = {
                {"dit", fit_json(result.dit_fit)},
                {"rfc", fit_json(result.rfc_fit)},
                {"wmc", fit_json(result.wmc_fit)},
                {"weights", fit_json(result.weight_fit)},
            };
            j["divergence"] = {
                {"dit", detail::divergence_json(result.divergence.dit, d)},
                {"rfc", detail::divergence_json(result.divergence.rfc, d)},
                {"wmc", detail::divergence_json(result.divergence.wmc, d)},
                {"published_weights", result.divergence.published_weights},
                {"calibrated_weights", result.divergence.calibrated_weights},
            };
            out << j.dump(2) << "\n";
        } else if (config.output_format == OutputFormat::text) {
            out << "calibration source: " << source << "\n\n";
            out << "calibrated coefficients (highest power first):\n";
            auto print_coeffs = [&out](const char* name, const std::vector<double>& cs) {
                out << "  " << name << ":";
                for (double c : cs) out << ' ' << format_fixed(c, 6);
                out << "\n";
            };
            print_coeffs("dit", result.model.dit_poly.coefficients);
            print_coeffs("rfc", result.model.rfc_poly.coefficients);
            print_coeffs("wmc", result.model.wmc_poly.coefficients);
            print_coeffs("weights", {result.model.w_dit, result.model.w_rfc,
                                     result.model.w_wmc});
            out << "\ndivergence from the published coefficients:\n";
            detail::render_component_divergence(out, "dit", result.divergence.dit, d);
            detail::render_component_divergence(out, "rfc", result.divergence.rfc, d);
            detail::render_component_divergence(out, "wmc", result.divergence.wmc, d);
            out << "weights: published";
            for (double w : result.divergence.published_weights)
                out << ' ' << format_fixed(w, 2);
            out << ", calibrated";
            for (double w : result.divergence.calibrated_weights)
                out << ' ' << format_fixed(w, 4);
            out << "\n";
        } else {
            throw InputError("calibrate supports text or structured output only");
        }
        return 0;
    } catch (const Error& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ckdpi
