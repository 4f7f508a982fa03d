// Report assembly/rendering and the analyze/metrics/calibrate drivers.
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ckdpi/analysis.hpp"

using namespace ckdpi;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string fixture_path(const std::string& name) {
    return std::string(CKDPI_TEST_DATA_DIR) + "/" + name;
}

AnalysisConfig metrics_csv_config() {
    AnalysisConfig config;
    config.input_paths = {fixture_path("project1_metrics.csv")};
    config.input_format = InputFormat::metrics_csv;
    return config;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path(std::string(CKDPI_TEST_TMP_DIR) + "/" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("analyze renders the golden project as csv", "[report]") {
    std::ostringstream out, diag;
    AnalysisConfig config = metrics_csv_config();
    config.output_format = OutputFormat::csv;
    REQUIRE(run_analyze(config, out, diag) == 0);

    auto lines = lines_of(out.str());
    REQUIRE(lines.size() == 7);
    REQUIRE(lines[0] == "class,dit,rfc,wmc,dp_dit,dp_rfc,dp_wmc,c_dpr");
    REQUIRE(lines[1] == "1,1,10,7,10.63,1.12,7.31,6.14");
    REQUIRE(lines[6] == "PROJECT,,,,16.80,1.11,6.62,7.39");
    // the model label is a diagnostic, not data
    REQUIRE_THAT(diag.str(), ContainsSubstring("model: calibrated"));
}

TEST_CASE("analyze keeps metrics-csv row order", "[report]") {
    std::ostringstream out, diag;
    AnalysisConfig config = metrics_csv_config();
    config.output_format = OutputFormat::csv;
    REQUIRE(run_analyze(config, out, diag) == 0);
    auto lines = lines_of(out.str());
    for (std::size_t i = 1; i <= 5; ++i)
        REQUIRE(lines[i].substr(0, 2) == std::to_string(i) + ",");
}

TEST_CASE("text report carries the model label and summary", "[report]") {
    std::ostringstream out, diag;
    AnalysisConfig config = metrics_csv_config();
    REQUIRE(run_analyze(config, out, diag) == 0);
    REQUIRE_THAT(out.str(), ContainsSubstring("model: calibrated"));
    REQUIRE_THAT(out.str(), ContainsSubstring("7.39"));
    REQUIRE_THAT(out.str(), ContainsSubstring("p_dpr over 5 classes"));

    config.model_choice = ModelChoice::published;
    std::ostringstream pub;
    REQUIRE(run_analyze(config, pub, diag) == 0);
    REQUIRE_THAT(pub.str(), ContainsSubstring("model: published"));
}

TEST_CASE("structured report rounds at the boundary", "[report]") {
    std::ostringstream out, diag;
    AnalysisConfig config = metrics_csv_config();
    config.output_format = OutputFormat::structured;
    REQUIRE(run_analyze(config, out, diag) == 0);

    nlohmann::json j = nlohmann::json::parse(out.str());
    REQUIRE(j["model"] == "calibrated");
    REQUIRE(j["project"]["p_dpr"] == 7.39);
    REQUIRE(j["project"]["classes"] == 5);
    REQUIRE(j["classes"].size() == 5);
    REQUIRE(j["classes"][0]["class"] == "1");
    REQUIRE(j["classes"][0]["c_dpr"] == 6.14);
    REQUIRE(j["classes"][0]["influence"]["dit"] == 9.0);
    REQUIRE(j["classes"][1]["flags"] == nlohmann::json::array({"dit:WARN"}));
}

TEST_CASE("rounding decimals are configurable", "[report]") {
    std::ostringstream out, diag;
    AnalysisConfig config = metrics_csv_config();
    config.output_format = OutputFormat::csv;
    config.round_decimals = 4;
    REQUIRE(run_analyze(config, out, diag) == 0);
    REQUIRE_THAT(out.str(), ContainsSubstring("10.6300,1.1197,7.3107,6.1423"));
}

TEST_CASE("gate drives the exit code", "[report]") {
    std::ostringstream out, diag;
    AnalysisConfig config = metrics_csv_config();
    config.gate = 10.0;
    REQUIRE(run_analyze(config, out, diag) == 0);

    config.gate = 5.0;
    std::ostringstream out2, diag2;
    REQUIRE(run_analyze(config, out2, diag2) == 1);
    REQUIRE_THAT(diag2.str(), ContainsSubstring("gate"));
    REQUIRE_THAT(diag2.str(), ContainsSubstring("7.39"));
}

TEST_CASE("input problems exit with code 2", "[report]") {
    auto run_with = [](AnalysisConfig config) {
        std::ostringstream out, diag;
        int code = run_analyze(config, out, diag);
        REQUIRE_THAT(diag.str(), ContainsSubstring("error:"));
        return code;
    };
    AnalysisConfig missing;
    missing.input_paths = {fixture_path("nope.java")};
    REQUIRE(run_with(missing) == 2);

    AnalysisConfig two_csv = metrics_csv_config();
    two_csv.input_paths.push_back(two_csv.input_paths[0]);
    REQUIRE(run_with(two_csv) == 2);

    AnalysisConfig none;
    REQUIRE(run_with(none) == 2);

    AnalysisConfig bad_model = metrics_csv_config();
    bad_model.model_choice = ModelChoice::from_file;
    bad_model.model_file = fixture_path("corpus_model.json");   // wrong schema
    REQUIRE(run_with(bad_model) == 2);
}

TEST_CASE("metrics command emits the corpus vectors", "[report]") {
    std::ostringstream out, diag;
    AnalysisConfig config;
    config.input_paths = {fixture_path("corpus")};
    REQUIRE(run_metrics(config, out, diag) == 0);
    REQUIRE(out.str() ==
            "class,dit,rfc,wmc\n"
            "App,3,4,3\n"
            "Polygon,1,4,2\n"
            "Registry,0,5,3\n"
            "Shape,0,3,3\n"
            "Square,2,3,2\n");
}

TEST_CASE("metrics output feeds back into analyze", "[report]") {
    std::ostringstream metrics_out, diag;
    AnalysisConfig source_config;
    source_config.input_paths = {fixture_path("corpus")};
    REQUIRE(run_metrics(source_config, metrics_out, diag) == 0);

    TempFile csv("corpus_metrics.csv");
    {
        std::ofstream f(csv.path);
        f << metrics_out.str();
    }
    AnalysisConfig csv_config;
    csv_config.input_paths = {csv.path};
    csv_config.input_format = InputFormat::metrics_csv;
    csv_config.output_format = OutputFormat::csv;
    std::ostringstream from_csv;
    REQUIRE(run_analyze(csv_config, from_csv, diag) == 0);

    source_config.output_format = OutputFormat::csv;
    std::ostringstream from_source;
    REQUIRE(run_analyze(source_config, from_source, diag) == 0);
    REQUIRE(from_csv.str() == from_source.str());
}

TEST_CASE("model documents round trip through analyze", "[report]") {
    TempFile model_file("roundtrip_model.json");
    {
        std::ofstream f(model_file.path);
        f << model_to_json(ModelSet::published()).dump(2) << "\n";
    }
    AnalysisConfig direct = metrics_csv_config();
    direct.model_choice = ModelChoice::published;
    direct.output_format = OutputFormat::csv;
    std::ostringstream a, b, diag;
    REQUIRE(run_analyze(direct, a, diag) == 0);

    AnalysisConfig via_file = metrics_csv_config();
    via_file.model_choice = ModelChoice::from_file;
    via_file.model_file = model_file.path;
    via_file.output_format = OutputFormat::csv;
    REQUIRE(run_analyze(via_file, b, diag) == 0);
    REQUIRE(a.str() == b.str());
}

TEST_CASE("model-document input analyzes like source", "[report]") {
    AnalysisConfig doc_config;
    doc_config.input_paths = {fixture_path("corpus_model.json")};
    doc_config.input_format = InputFormat::model_document;
    doc_config.output_format = OutputFormat::csv;
    std::ostringstream from_doc, from_source, diag;
    REQUIRE(run_analyze(doc_config, from_doc, diag) == 0);

    AnalysisConfig source_config;
    source_config.input_paths = {fixture_path("corpus")};
    source_config.output_format = OutputFormat::csv;
    REQUIRE(run_analyze(source_config, from_source, diag) == 0);
    REQUIRE(from_doc.str() == from_source.str());
}

TEST_CASE("clamp warnings go to diagnostics only", "[report]") {
    TempFile csv("clamped.csv");
    {
        std::ofstream f(csv.path);
        f << "class,dit,rfc,wmc\nHuge,9,230,120\n";
    }
    AnalysisConfig config;
    config.input_paths = {csv.path};
    config.input_format = InputFormat::metrics_csv;
    config.output_format = OutputFormat::csv;
    std::ostringstream out, diag;
    REQUIRE(run_analyze(config, out, diag) == 0);
    REQUIRE_THAT(diag.str(), ContainsSubstring("outside model domain"));
    REQUIRE_THAT(out.str(), !ContainsSubstring("warning"));
    // clamped evaluation equals the domain edge
    REQUIRE_THAT(out.str(), ContainsSubstring("Huge,9,230,120,80.23"));
}

TEST_CASE("calibrate writes a usable model file", "[report]") {
    TempFile model_file("calibrated_model.json");
    CalibrateConfig cal;
    cal.model_out = model_file.path;
    std::ostringstream out, diag;
    REQUIRE(run_calibrate(cal, out, diag) == 0);
    REQUIRE_THAT(diag.str(), ContainsSubstring("corrupted dp_wmc"));
    REQUIRE_THAT(out.str(), ContainsSubstring("divergence"));
    REQUIRE_THAT(out.str(), ContainsSubstring("10.80"));

    std::ifstream f(model_file.path);
    REQUIRE(f.good());
    std::ostringstream buf;
    buf << f.rdbuf();
    ModelSet loaded = parse_model_text(buf.str(), model_file.path);
    REQUIRE(loaded.label == "calibrated");

    // the written model drives analyze
    AnalysisConfig config = metrics_csv_config();
    config.model_choice = ModelChoice::from_file;
    config.model_file = model_file.path;
    config.output_format = OutputFormat::csv;
    std::ostringstream report, diag2;
    REQUIRE(run_analyze(config, report, diag2) == 0);
    REQUIRE_THAT(report.str(), ContainsSubstring("PROJECT,,,,16.80,1.11,6.62,7.39"));
}

TEST_CASE("calibrate structured output embeds model and divergence", "[report]") {
    CalibrateConfig cal;
    cal.output_format = OutputFormat::structured;
    std::ostringstream out, diag;
    REQUIRE(run_calibrate(cal, out, diag) == 0);
    nlohmann::json j = nlohmann::json::parse(out.str());
    REQUIRE(j["model"]["label"] == "calibrated");
    REQUIRE(j["divergence"]["dit"]["max_published_vs_calibrated"] == 10.8);
    REQUIRE(j["divergence"]["dit"]["at_published_vs_calibrated"] == 6.0);
    REQUIRE(j["fit"]["rfc"]["method"] == "least_squares");
}

TEST_CASE("calibrate accepts an external golden csv", "[report]") {
    CalibrateConfig cal;
    cal.golden_csv = std::string(CKDPI_DATA_DIR) + "/golden_classes.csv";
    std::ostringstream out, diag;
    REQUIRE(run_calibrate(cal, out, diag) == 0);
    REQUIRE_THAT(out.str(), ContainsSubstring("golden_classes.csv"));

    CalibrateConfig missing;
    missing.golden_csv = fixture_path("absent.csv");
    std::ostringstream out2, diag2;
    REQUIRE(run_calibrate(missing, out2, diag2) == 2);
    REQUIRE_THAT(diag2.str(), ContainsSubstring("error:"));
}

TEST_CASE("checked-in golden csv equals the builtin dataset", "[report]") {
    std::ifstream f(std::string(CKDPI_DATA_DIR) + "/golden_classes.csv");
    REQUIRE(f.good());
    GoldenDataset loaded = load_golden_csv(f, "golden_classes.csv");
    REQUIRE(loaded == GoldenDataset::builtin());
}
