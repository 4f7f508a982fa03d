// ckdpi/estimation.hpp - defect-proneness estimation from CK metric values.
//
// Each metric feeds a fitted polynomial that maps the raw value to a defect
// probability in percent; a weighted combination of the three gives the
// class rating (c_dpr) and, averaged per component first, the project
// rating (p_dpr). Two coefficient sets ship built in: `published`, the
// figures as originally reported, and `calibrated`, the set recovered by
// refitting the golden dataset (the published dit cubic and weights do not
// reproduce it; see calibration.hpp).
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ckdpi/errors.hpp"
#include "ckdpi/metrics.hpp"

namespace ckdpi {

/// Polynomial with clamping domain. Coefficients are stored highest power
/// first, so {a, b, c} means a*x^2 + b*x + c.
struct PolynomialModel {
    std::vector<double> coefficients;
    double domain_lo = 0.0;
    double domain_hi = 0.0;

    bool operator==(const PolynomialModel&) const = default;
};

struct PolyValue {
    double value = 0.0;
    bool clamped = false;   // the input fell outside the domain
};

/// Evaluates the polynomial by Horner's scheme after clamping the input to
/// the domain.
inline PolyValue eval_poly(const PolynomialModel& p, double x) {
    double cx = std::clamp(x, p.domain_lo, p.domain_hi);
    double v = 0.0;
    for (double c : p.coefficients) v = v * cx + c;
    return {v, cx != x};
}

/// One complete coefficient set: three component polynomials plus the
/// combination weights.
struct ModelSet {
    std::string label;
    PolynomialModel dit_poly;   // cubic over [1, 6]
    PolynomialModel rfc_poly;   // quadratic over [0, 222]
    PolynomialModel wmc_poly;   // quadratic over [0, 100]
    double w_dit = 0.0;
    double w_rfc = 0.0;
    double w_wmc = 0.0;

    bool operator==(const ModelSet&) const = default;

    static const ModelSet& published() {
        static const ModelSet m{
            "published",
            {{-1.55, 16.86, -35.3, 30.67}, 1.0, 6.0},
            {{0.002, 0.06, 0.33}, 0.0, 222.0},
            {{0.0043, 0.4, 4.3}, 0.0, 100.0},
            0.25, 0.37, 0.38,
        };
        return m;
    }

    static const ModelSet& calibrated() {
        static const ModelSet m{
            "calibrated",
            {{-1.6, 16.86, -35.3, 30.67}, 1.0, 6.0},
            {{0.0021003496726802544, 0.05798049049062458, 0.3298102841010673}, 0.0, 222.0},
            {{0.0043, 0.4, 4.3}, 0.0, 100.0},
            0.25, 0.37, 0.42,
        };
        return m;
    }
};

/// Defect probability contributed by inheritance depth. Depth 0 means the
/// class heads its own chain and carries no inheritance-driven risk, so the
/// value is 0 without consulting the polynomial (whose domain starts at 1).
inline double dp_dit(unsigned dit, const ModelSet& m) {
    if (dit == 0) return 0.0;
    return eval_poly(m.dit_poly, static_cast<double>(dit)).value;
}

inline double dp_rfc(unsigned rfc, const ModelSet& m) {
    return eval_poly(m.rfc_poly, static_cast<double>(rfc)).value;
}

inline double dp_wmc(unsigned wmc, const ModelSet& m) {
    return eval_poly(m.wmc_poly, static_cast<double>(wmc)).value;
}

/// Per-class estimation result. All values are percentages at full
/// precision; rounding happens only when a report is rendered.
struct DefectProfile {
    std::string class_name;
    double dp_dit = 0.0;
    double dp_rfc = 0.0;
    double dp_wmc = 0.0;
    double c_dpr = 0.0;
};

inline DefectProfile class_dpi(const MetricVector& v, const ModelSet& m) {
    DefectProfile p;
    p.class_name = v.class_name;
    p.dp_dit = dp_dit(v.dit, m);
    p.dp_rfc = dp_rfc(v.rfc, m);
    p.dp_wmc = dp_wmc(v.wmc, m);
    p.c_dpr = m.w_dit * p.dp_dit + m.w_rfc * p.dp_rfc + m.w_wmc * p.dp_wmc;
    return p;
}

/// Project-level aggregate: component means over all classes, combined with
/// the same weights as c_dpr.
struct ProjectProfile {
    std::string project_id;
    std::vector<DefectProfile> class_profiles;
    double mean_dp_dit = 0.0;
    double mean_dp_rfc = 0.0;
    double mean_dp_wmc = 0.0;
    double p_dpr = 0.0;
};

inline ProjectProfile project_dpi(const std::vector<MetricVector>& vectors,
                                  const ModelSet& m,
                                  const std::string& project_id = "PROJECT") {
    if (vectors.empty())
        throw InputError("project_dpi: no metric vectors to aggregate");
    ProjectProfile pr;
    pr.project_id = project_id;
    pr.class_profiles.reserve(vectors.size());
    for (const auto& v : vectors) {
        pr.class_profiles.push_back(class_dpi(v, m));
        pr.mean_dp_dit += pr.class_profiles.back().dp_dit;
        pr.mean_dp_rfc += pr.class_profiles.back().dp_rfc;
        pr.mean_dp_wmc += pr.class_profiles.back().dp_wmc;
    }
    const double n = static_cast<double>(vectors.size());
    pr.mean_dp_dit /= n;
    pr.mean_dp_rfc /= n;
    pr.mean_dp_wmc /= n;
    pr.p_dpr = m.w_dit * pr.mean_dp_dit + m.w_rfc * pr.mean_dp_rfc + m.w_wmc * pr.mean_dp_wmc;
    return pr;
}

enum class Metric { dit, rfc, wmc };

inline const char* metric_name(Metric m) {
    switch (m) {
        case Metric::dit: return "dit";
        case Metric::rfc: return "rfc";
        default: return "wmc";
    }
}

/// Screening thresholds per metric. `warn_at` and up draws a warning,
/// above `max_at` the value is flagged as exceeding the acceptable maximum.
/// RFC carries an extra secondary warning level.
struct ThresholdSet {
    unsigned wmc_warn = 20;
    unsigned wmc_max = 100;
    unsigned rfc_warn = 50;
    unsigned rfc_secondary = 100;
    unsigned rfc_max = 222;
    unsigned dit_warn = 3;
    unsigned dit_max = 6;

    /// The standard screening thresholds; also the defaults above.
    static ThresholdSet standard() { return {}; }
};

enum class FlagKind { warn, secondary_warn, max_exceeded };

struct ThresholdFlag {
    Metric metric;
    FlagKind kind;

    bool operator==(const ThresholdFlag&) const = default;
};

/// Threshold screening for one metric vector. Each metric yields at most
/// one primary flag: max_exceeded when the value is above the maximum, else
/// warn when it reaches the warning level. RFC additionally yields
/// secondary_warn at its secondary level when the maximum is not exceeded.
/// Flags come out in dit, rfc, wmc order.
inline std::vector<ThresholdFlag> threshold_flags(const MetricVector& v,
                                                  const ThresholdSet& t = {}) {
    std::vector<ThresholdFlag> flags;
    if (v.dit > t.dit_max) flags.push_back({Metric::dit, FlagKind::max_exceeded});
    else if (v.dit >= t.dit_warn) flags.push_back({Metric::dit, FlagKind::warn});

    if (v.rfc > t.rfc_max) {
        flags.push_back({Metric::rfc, FlagKind::max_exceeded});
    } else {
        if (v.rfc >= t.rfc_warn) flags.push_back({Metric::rfc, FlagKind::warn});
        if (v.rfc >= t.rfc_secondary) flags.push_back({Metric::rfc, FlagKind::secondary_warn});
    }

    if (v.wmc > t.wmc_max) flags.push_back({Metric::wmc, FlagKind::max_exceeded});
    else if (v.wmc >= t.wmc_warn) flags.push_back({Metric::wmc, FlagKind::warn});
    return flags;
}

inline std::string flag_label(const ThresholdFlag& f) {
    std::string label = metric_name(f.metric);
    switch (f.kind) {
        case FlagKind::warn: return label + ":WARN";
        case FlagKind::secondary_warn: return label + ":SECONDARY_WARN";
        default: return label + ":MAX_EXCEEDED";
    }
}

struct InfluenceValue {
    double percent = 0.0;
    bool clamped = false;   // the input fell outside the knot range
};

/// Empirically observed influence of each metric on defect counts, given as
/// piecewise-linear interpolation knots (metric value, percent). Inputs
/// outside the knot range clamp to the nearest end. The rfc series is
/// non-monotonic above rfc = 80; it is applied verbatim.
struct InfluenceTable {
    std::vector<std::pair<double, double>> dit_knots;
    std::vector<std::pair<double, double>> rfc_knots;
    std::vector<std::pair<double, double>> wmc_knots;

    bool operator==(const InfluenceTable&) const = default;

    static const InfluenceTable& empirical() {
        static const InfluenceTable t{
            {{1, 9}, {2, 21}, {3, 36}, {4, 56}, {5, 74}, {6, 98}},
            {{1, 3}, {23, 31}, {45, 56}, {60, 80}, {80, 91}, {100, 78}, {120, 62},
             {149, 51}, {170, 40}, {198, 26}, {222, 7}},
            {{1, 5}, {5, 25}, {10, 42}, {12, 63}, {16, 80}, {20, 92}, {30, 75},
             {50, 54}, {60, 40}, {70, 10}, {96, 2}},
        };
        return t;
    }
};

namespace detail {

inline InfluenceValue interpolate_knots(const std::vector<std::pair<double, double>>& knots,
                                        double x) {
    if (x <= knots.front().first) return {knots.front().second, x < knots.front().first};
    if (x >= knots.back().first) return {knots.back().second, x > knots.back().first};
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (x <= knots[i].first) {
            const auto& [x0, y0] = knots[i - 1];
            const auto& [x1, y1] = knots[i];
            return {y0 + (y1 - y0) * (x - x0) / (x1 - x0), false};
        }
    }
    return {knots.back().second, false};   // unreachable for sorted knots
}

} // namespace detail

/// Interpolated influence percentage for one metric value.
inline InfluenceValue influence(Metric metric, double value,
                                const InfluenceTable& table = InfluenceTable::empirical()) {
    switch (metric) {
        case Metric::dit: return detail::interpolate_knots(table.dit_knots, value);
        case Metric::rfc: return detail::interpolate_knots(table.rfc_knots, value);
        default: return detail::interpolate_knots(table.wmc_knots, value);
    }
}

} // namespace ckdpi
