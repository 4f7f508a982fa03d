// ckdpi/report.hpp - per-class report assembly and rendering.
//
// Values are carried at full precision and rounded only here, at the
// rendering boundary. Data notes (domain clamps, the non-monotonic rfc
// influence series) are collected on the report and meant for a diagnostic
// stream, never for the data output.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ckdpi/estimation.hpp"
#include "ckdpi/metrics.hpp"

namespace ckdpi {

struct ReportRow {
    MetricVector metrics;
    DefectProfile profile;
    std::vector<ThresholdFlag> flags;
    double influence_dit = 0.0;
    double influence_rfc = 0.0;
    double influence_wmc = 0.0;
};

struct Report {
    std::string model_label;
    ProjectProfile summary;
    std::vector<ReportRow> rows;          // same order as the input vectors
    std::vector<std::string> notes;       // diagnostics, not part of the data
};

inline double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline Report build_report(const std::vector<MetricVector>& vectors, const ModelSet& m,
                           const std::string& project_id = "PROJECT",
                           const ThresholdSet& thresholds = {},
                           const InfluenceTable& influence_table = InfluenceTable::empirical()) {
    Report report;
    report.model_label = m.label;
    report.summary = project_dpi(vectors, m, project_id);
    report.rows.reserve(vectors.size());

    auto note_clamp = [&report](const std::string& cls, Metric metric, unsigned value,
                                const PolynomialModel& poly) {
        report.notes.push_back("warning: " + cls + ": " + metric_name(metric) + " " +
                               std::to_string(value) + " outside model domain [" +
                               format_fixed(poly.domain_lo, 0) + ", " +
                               format_fixed(poly.domain_hi, 0) + "]; value clamped");
    };

    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const MetricVector& v = vectors[i];
        ReportRow row;
        row.metrics = v;
        row.profile = report.summary.class_profiles[i];
        row.flags = threshold_flags(v, thresholds);

        if (v.dit != 0 && eval_poly(m.dit_poly, v.dit).clamped)
            note_clamp(v.class_name, Metric::dit, v.dit, m.dit_poly);
        if (eval_poly(m.rfc_poly, v.rfc).clamped)
            note_clamp(v.class_name, Metric::rfc, v.rfc, m.rfc_poly);
        if (eval_poly(m.wmc_poly, v.wmc).clamped)
            note_clamp(v.class_name, Metric::wmc, v.wmc, m.wmc_poly);

        auto inf = [&](Metric metric, unsigned value) {
            InfluenceValue iv = influence(metric, value, influence_table);
            if (iv.clamped)
                report.notes.push_back("warning: " + v.class_name + ": " +
                                       metric_name(metric) + " " + std::to_string(value) +
                                       " outside influence knot range; clamped to nearest knot");
            return iv.percent;
        };
        row.influence_dit = inf(Metric::dit, v.dit);
        row.influence_rfc = inf(Metric::rfc, v.rfc);
        row.influence_wmc = inf(Metric::wmc, v.wmc);
        report.rows.push_back(std::move(row));
    }
    report.notes.push_back(
        "note: the rfc influence reference series is non-monotonic above rfc=80; "
        "influence percentages are interpolated from it verbatim");
    return report;
}

inline std::string flag_column(const std::vector<ThresholdFlag>& flags) {
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty()) out += ' ';
        out += flag_label(f);
    }
    return out;
}

/// Human-readable fixed-width table plus a project summary line.
inline void render_text(const Report& report, std::ostream& out, int decimals = 2) {
    out << "model: " << report.model_label << "\n";
    std::size_t name_w = 5;
    for (const auto& r : report.rows) name_w = std::max(name_w, r.metrics.class_name.size());

    char line[512];
    std::snprintf(line, sizeof line, "%-*s %5s %5s %5s %9s %9s %9s %9s  %s",
                  static_cast<int>(name_w), "class", "dit", "rfc", "wmc", "dp_dit",
                  "dp_rfc", "dp_wmc", "c_dpr", "flags");
    out << line << "\n";
    for (const auto& r : report.rows) {
        std::snprintf(line, sizeof line, "%-*s %5u %5u %5u %9s %9s %9s %9s  %s",
                      static_cast<int>(name_w), r.metrics.class_name.c_str(), r.metrics.dit,
                      r.metrics.rfc, r.metrics.wmc,
                      format_fixed(r.profile.dp_dit, decimals).c_str(),
                      format_fixed(r.profile.dp_rfc, decimals).c_str(),
                      format_fixed(r.profile.dp_wmc, decimals).c_str(),
                      format_fixed(r.profile.c_dpr, decimals).c_str(),
                      flag_column(r.flags).c_str());
        out << line << "\n";
    }
    const auto& s = report.summary;
    std::snprintf(line, sizeof line, "%-*s %5s %5s %5s %9s %9s %9s %9s  p_dpr over %zu classes",
                  static_cast<int>(name_w), s.project_id.c_str(), "", "", "",
                  format_fixed(s.mean_dp_dit, decimals).c_str(),
                  format_fixed(s.mean_dp_rfc, decimals).c_str(),
                  format_fixed(s.mean_dp_wmc, decimals).c_str(),
                  format_fixed(s.p_dpr, decimals).c_str(), s.class_profiles.size());
    out << line << "\n";
}

inline constexpr const char* kAnalyzeCsvHeader =
    "class,dit,rfc,wmc,dp_dit,dp_rfc,dp_wmc,c_dpr";

/// Machine-readable CSV: pinned header, one row per class, then a summary
/// row whose first field is the project id and whose metric fields are
/// empty. The model label is not part of the CSV; emit it as a diagnostic.
inline void render_csv(const Report& report, std::ostream& out, int decimals = 2) {
    out << kAnalyzeCsvHeader << "\n";
    for (const auto& r : report.rows) {
        out << r.metrics.class_name << ',' << r.metrics.dit << ',' << r.metrics.rfc << ','
            << r.metrics.wmc << ',' << format_fixed(r.profile.dp_dit, decimals) << ','
            << format_fixed(r.profile.dp_rfc, decimals) << ','
            << format_fixed(r.profile.dp_wmc, decimals) << ','
            << format_fixed(r.profile.c_dpr, decimals) << "\n";
    }
    const auto& s = report.summary;
    out << s.project_id << ",,,," << format_fixed(s.mean_dp_dit, decimals) << ','
        << format_fixed(s.mean_dp_rfc, decimals) << ','
        << format_fixed(s.mean_dp_wmc, decimals) << ',' << format_fixed(s.p_dpr, decimals)
        << "\n";
}

/// JSON document with the same rounded values as the other renderers.
inline nlohmann::json structured_report(const Report& report, int decimals = 2) {
    nlohmann::json j;
    j["model"] = report.model_label;
    const auto& s = report.summary;
    j["project"] = {
        {"id", s.project_id},
        {"classes", s.class_profiles.size()},
        {"mean_dp_dit", round_to(s.mean_dp_dit, decimals)},
        {"mean_dp_rfc", round_to(s.mean_dp_rfc, decimals)},
        {"mean_dp_wmc", round_to(s.mean_dp_wmc, decimals)},
        {"p_dpr", round_to(s.p_dpr, decimals)},
    };
    j["classes"] = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json flags = nlohmann::json::array();
        for (const auto& f : r.flags) flags.push_back(flag_label(f));
        j["classes"].push_back({
            {"class", r.metrics.class_name},
            {"dit", r.metrics.dit},
            {"rfc", r.metrics.rfc},
            {"wmc", r.metrics.wmc},
            {"dp_dit", round_to(r.profile.dp_dit, decimals)},
            {"dp_rfc", round_to(r.profile.dp_rfc, decimals)},
            {"dp_wmc", round_to(r.profile.dp_wmc, decimals)},
            {"c_dpr", round_to(r.profile.c_dpr, decimals)},
            {"flags", flags},
            {"influence",
             {{"dit", round_to(r.influence_dit, decimals)},
              {"rfc", round_to(r.influence_rfc, decimals)},
              {"wmc", round_to(r.influence_wmc, decimals)}}},
        });
    }
    return j;
}

inline void render_structured(const Report& report, std::ostream& out, int decimals = 2) {
    out << structured_report(report, decimals).dump(2) << "\n";
}

} // namespace ckdpi
