// ckdpi/calibration.hpp - recovering model coefficients from golden data.
//
// Polynomial fitting runs on normal equations built over inputs centered at
// their mean, solved by Gaussian elimination with partial pivoting; the
// centered coefficients are then expanded back to the standard basis. When
// the number of distinct points equals degree + 1 the Vandermonde system is
// solved directly instead (method = exact_solve). Points are brought into a
// canonical order before fitting so results do not depend on input order.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <tuple>
#include <vector>

#include "ckdpi/errors.hpp"
#include "ckdpi/estimation.hpp"
#include "ckdpi/golden.hpp"

namespace ckdpi {

enum class FitMethod { exact_solve, least_squares };

struct FitReport {
    std::vector<double> coefficients;   // highest power first
    std::vector<double> residuals;      // fitted(x_i) - y_i, in input order
    double max_abs_residual = 0.0;
    FitMethod method = FitMethod::least_squares;
};

namespace detail {

/// In-place Gaussian elimination with partial pivoting on an n x n system.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    const double tiny = std::max(scale, 1.0) * 1e-13;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < tiny)
            throw SingularSystemError("singular system: no usable pivot in column " +
                                      std::to_string(col));
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * x[c];
        x[ri] = s / a[ri][ri];
    }
    return x;
}

inline double horner(const std::vector<double>& coeffs, double x) {
    double v = 0.0;
    for (double c : coeffs) v = v * x + c;
    return v;
}

/// Expands a polynomial in t = x - m (coefficients highest power first)
/// into the standard basis in x via the binomial theorem.
inline std::vector<double> uncenter(const std::vector<double>& centered, double m) {
    const std::size_t k = centered.size();
    std::vector<double> out(k, 0.0);   // out[i] multiplies x^(k-1-i)
    for (std::size_t i = 0; i < k; ++i) {
        const double a = centered[i];
        const std::size_t j = k - 1 - i;   // power of t
        double binom = 1.0;
        double mp = 1.0;
        // a * (x - m)^j  ->  sum over l: a * C(j,l) * (-m)^(j-l) * x^l
        for (std::size_t l = j + 1; l-- > 0;) {
            // iterate l = j down to 0; binom = C(j, l), mp = (-m)^(j-l)
            out[k - 1 - l] += a * binom * mp;
            if (l > 0) {
                binom = binom * static_cast<double>(l) / static_cast<double>(j - l + 1);
                mp *= -m;
            }
        }
    }
    return out;
}

} // namespace detail

/// Fits a polynomial of the given degree to (x, y) points in the
/// least-squares sense, or solves exactly when the point count equals
/// degree + 1. Residuals are reported against the original input order.
/// Throws InputError for too few points, SingularSystemError when the
/// system cannot be solved (for example, duplicated x values in an exact
/// solve).
inline FitReport fit_polynomial(const std::vector<std::pair<double, double>>& points,
                                unsigned degree) {
    const std::size_t k = static_cast<std::size_t>(degree) + 1;
    if (points.size() < k)
        throw InputError("fit_polynomial: need at least " + std::to_string(k) +
                         " points for degree " + std::to_string(degree) + ", got " +
                         std::to_string(points.size()));

    std::vector<std::pair<double, double>> pts = points;
    std::sort(pts.begin(), pts.end());

    double mean = 0.0;
    for (const auto& [x, y] : pts) mean += x;
    mean /= static_cast<double>(pts.size());

    FitReport report;
    if (pts.size() == k) {
        report.method = FitMethod::exact_solve;
        std::vector<std::vector<double>> a(k, std::vector<double>(k, 0.0));
        std::vector<double> b(k, 0.0);
        for (std::size_t r = 0; r < k; ++r) {
            const double t = pts[r].first - mean;
            double p = 1.0;
            for (std::size_t c = k; c-- > 0;) {
                a[r][c] = p;
                p *= t;
            }
            b[r] = pts[r].second;
        }
        report.coefficients = detail::uncenter(detail::solve_dense(std::move(a), std::move(b)), mean);
    } else {
        report.method = FitMethod::least_squares;
        // normal equations over the centered monomial basis
        std::vector<std::vector<double>> n(k, std::vector<double>(k, 0.0));
        std::vector<double> rhs(k, 0.0);
        std::vector<double> powers(k, 0.0);
        for (const auto& [x, y] : pts) {
            const double t = x - mean;
            double p = 1.0;
            for (std::size_t c = k; c-- > 0;) {
                powers[c] = p;
                p *= t;
            }
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c < k; ++c) n[r][c] += powers[r] * powers[c];
                rhs[r] += powers[r] * y;
            }
        }
        report.coefficients = detail::uncenter(detail::solve_dense(std::move(n), std::move(rhs)), mean);
    }

    report.residuals.reserve(points.size());
    for (const auto& [x, y] : points) {
        const double r = detail::horner(report.coefficients, x) - y;
        report.residuals.push_back(r);
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(r));
    }
    return report;
}

/// One calibration observation for the combination weights.
struct WeightRow {
    double dp_dit = 0.0;
    double dp_rfc = 0.0;
    double dp_wmc = 0.0;
    double c_dpr = 0.0;
};

/// Fits the three combination weights from observed component values and
/// combined ratings: least squares in general, exact solve at three rows.
/// Coefficients come back in dit, rfc, wmc order.
inline FitReport fit_weights(const std::vector<WeightRow>& rows) {
    if (rows.size() < 3)
        throw InputError("fit_weights: need at least 3 rows, got " +
                         std::to_string(rows.size()));
    std::vector<std::array<double, 4>> sorted;
    sorted.reserve(rows.size());
    for (const auto& r : rows) sorted.push_back({r.dp_dit, r.dp_rfc, r.dp_wmc, r.c_dpr});
    std::sort(sorted.begin(), sorted.end());

    FitReport report;
    if (sorted.size() == 3) {
        report.method = FitMethod::exact_solve;
        std::vector<std::vector<double>> a(3, std::vector<double>(3, 0.0));
        std::vector<double> b(3, 0.0);
        for (std::size_t r = 0; r < 3; ++r) {
            a[r] = {sorted[r][0], sorted[r][1], sorted[r][2]};
            b[r] = sorted[r][3];
        }
        report.coefficients = detail::solve_dense(std::move(a), std::move(b));
    } else {
        report.method = FitMethod::least_squares;
        std::vector<std::vector<double>> n(3, std::vector<double>(3, 0.0));
        std::vector<double> rhs(3, 0.0);
        for (const auto& row : sorted) {
            for (std::size_t r = 0; r < 3; ++r) {
                for (std::size_t c = 0; c < 3; ++c) n[r][c] += row[r] * row[c];
                rhs[r] += row[r] * row[3];
            }
        }
        report.coefficients = detail::solve_dense(std::move(n), std::move(rhs));
    }

    report.residuals.reserve(rows.size());
    for (const auto& r : rows) {
        const double pred = report.coefficients[0] * r.dp_dit +
                            report.coefficients[1] * r.dp_rfc +
                            report.coefficients[2] * r.dp_wmc;
        report.residuals.push_back(pred - r.c_dpr);
        report.max_abs_residual = std::max(report.max_abs_residual,
                                           std::abs(report.residuals.back()));
    }
    return report;
}

/// Published-versus-calibrated comparison at one golden input value.
struct DivergencePoint {
    double x = 0.0;
    double published = 0.0;
    double calibrated = 0.0;
    double golden = 0.0;
};

struct ComponentDivergence {
    std::vector<DivergencePoint> points;   // ordered by x
    double max_pub_vs_cal = 0.0;
    double at_pub_vs_cal = 0.0;            // x where the maximum occurs
    double max_pub_vs_golden = 0.0;
    double at_pub_vs_golden = 0.0;
};

struct DivergenceReport {
    ComponentDivergence dit;
    ComponentDivergence rfc;
    ComponentDivergence wmc;
    std::array<double, 3> published_weights{};
    std::array<double, 3> calibrated_weights{};
};

struct CalibrationResult {
    ModelSet model;               // label "calibrated"
    FitReport dit_fit;
    FitReport rfc_fit;
    FitReport wmc_fit;
    FitReport weight_fit;
    std::size_t excluded_wmc_cells = 0;
    std::vector<std::string> excluded_projects;   // projects with corrupted cells
    DivergenceReport divergence;
};

namespace detail {

inline ComponentDivergence component_divergence(
    const std::vector<std::pair<double, double>>& golden_points,
    const PolynomialModel& published, const std::vector<double>& calibrated) {
    std::vector<std::pair<double, double>> pts = golden_points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ComponentDivergence d;
    for (const auto& [x, golden] : pts) {
        DivergencePoint p;
        p.x = x;
        p.published = eval_poly(published, x).value;
        p.calibrated = horner(calibrated, x);
        p.golden = golden;
        if (std::abs(p.published - p.calibrated) > d.max_pub_vs_cal) {
            d.max_pub_vs_cal = std::abs(p.published - p.calibrated);
            d.at_pub_vs_cal = x;
        }
        if (std::abs(p.published - p.golden) > d.max_pub_vs_golden) {
            d.max_pub_vs_golden = std::abs(p.published - p.golden);
            d.at_pub_vs_golden = x;
        }
        d.points.push_back(p);
    }
    return d;
}

} // namespace detail

/// Recovers a full calibrated coefficient set from a golden dataset:
///   - dit cubic from the distinct (dit, dp_dit) pairs
///   - rfc quadratic from all (rfc, dp_rfc) pairs
///   - wmc quadratic from the pairs whose dp_wmc cell is trusted
///   - weights from all (dp_dit, dp_rfc, dp_wmc, c_dpr) rows
/// and reports where the published coefficients diverge from both the
/// recovered ones and the golden values.
inline CalibrationResult recover_calibrated(const GoldenDataset& golden) {
    const auto& rows = golden.class_rows;
    if (rows.empty()) throw InputError("recover_calibrated: empty golden dataset");

    std::vector<std::pair<double, double>> dit_pts, rfc_pts, wmc_pts;
    std::vector<WeightRow> weight_rows;
    CalibrationResult result;
    for (const auto& r : rows) {
        dit_pts.push_back({static_cast<double>(r.dit), r.dp_dit});
        rfc_pts.push_back({static_cast<double>(r.rfc), r.dp_rfc});
        if (r.wmc_trust == CellTrust::trusted) {
            wmc_pts.push_back({static_cast<double>(r.wmc), r.dp_wmc});
        } else {
            ++result.excluded_wmc_cells;
            if (std::find(result.excluded_projects.begin(), result.excluded_projects.end(),
                          r.project) == result.excluded_projects.end())
                result.excluded_projects.push_back(r.project);
        }
        weight_rows.push_back({r.dp_dit, r.dp_rfc, r.dp_wmc, r.c_dpr});
    }

    // the dit grid is tiny; fit over its distinct pairs
    std::sort(dit_pts.begin(), dit_pts.end());
    dit_pts.erase(std::unique(dit_pts.begin(), dit_pts.end()), dit_pts.end());

    result.dit_fit = fit_polynomial(dit_pts, 3);
    result.rfc_fit = fit_polynomial(rfc_pts, 2);
    result.wmc_fit = fit_polynomial(wmc_pts, 2);
    result.weight_fit = fit_weights(weight_rows);

    const ModelSet& pub = ModelSet::published();
    result.model.label = "calibrated";
    result.model.dit_poly = {result.dit_fit.coefficients, pub.dit_poly.domain_lo,
                             pub.dit_poly.domain_hi};
    result.model.rfc_poly = {result.rfc_fit.coefficients, pub.rfc_poly.domain_lo,
                             pub.rfc_poly.domain_hi};
    result.model.wmc_poly = {result.wmc_fit.coefficients, pub.wmc_poly.domain_lo,
                             pub.wmc_poly.domain_hi};
    result.model.w_dit = result.weight_fit.coefficients[0];
    result.model.w_rfc = result.weight_fit.coefficients[1];
    result.model.w_wmc = result.weight_fit.coefficients[2];

    result.divergence.dit =
        detail::component_divergence(dit_pts, pub.dit_poly, result.dit_fit.coefficients);
    result.divergence.rfc =
        detail::component_divergence(rfc_pts, pub.rfc_poly, result.rfc_fit.coefficients);
    result.divergence.wmc =
        detail::component_divergence(wmc_pts, pub.wmc_poly, result.wmc_fit.coefficients);
    result.divergence.published_weights = {pub.w_dit, pub.w_rfc, pub.w_wmc};
    result.divergence.calibrated_weights = {result.model.w_dit, result.model.w_rfc,
                                            result.model.w_wmc};
    return result;
}

} // namespace ckdpi
