// ckdpi/golden.hpp - the golden calibration dataset and its CSV form.
//
// 35 reference classes across five sample projects, each with raw metric
// values, the printed per-component percentages and the printed combined
// rating. The dp_wmc column of project IV is corrupted at the source: it
// repeats project V's column instead of following project IV's own wmc
// inputs, so those cells are marked untrusted and excluded from wmc
// refitting. Raw metrics and the combined rating of those rows stay usable.
#pragma once

#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckdpi/errors.hpp"

namespace ckdpi {

enum class CellTrust { trusted, corrupted };

struct GoldenRow {
    std::string project;
    int class_index = 0;
    unsigned dit = 0;
    unsigned rfc = 0;
    unsigned wmc = 0;
    double dp_dit = 0.0;
    double dp_rfc = 0.0;
    double dp_wmc = 0.0;
    double c_dpr = 0.0;
    CellTrust wmc_trust = CellTrust::trusted;

    bool operator==(const GoldenRow&) const = default;
};

struct GoldenDataset {
    std::vector<GoldenRow> class_rows;

    bool operator==(const GoldenDataset&) const = default;

    static const GoldenDataset& builtin() {
        static const GoldenDataset d{{
            {"I", 1, 1, 10, 7, 10.63, 1.12, 7.31, 6.14, CellTrust::trusted},
            {"I", 2, 3, 9, 3, 33.31, 1.02, 5.54, 11.03, CellTrust::trusted},
            {"I", 3, 2, 21, 1, 14.71, 2.47, 4.70, 6.57, CellTrust::trusted},
            {"I", 4, 2, 3, 9, 14.71, 0.52, 8.25, 7.34, CellTrust::trusted},
            {"I", 5, 1, 1, 7, 10.63, 0.39, 7.31, 5.87, CellTrust::trusted},
            {"II", 1, 5, 24, 14, 75.67, 2.93, 10.74, 24.51, CellTrust::trusted},
            {"II", 2, 3, 28, 8, 33.31, 3.60, 7.78, 12.93, CellTrust::trusted},
            {"II", 3, 1, 27, 13, 10.63, 3.43, 10.23, 8.22, CellTrust::trusted},
            {"II", 4, 3, 26, 1, 33.31, 3.26, 4.70, 11.51, CellTrust::trusted},
            {"III", 1, 4, 19, 3, 56.83, 2.19, 5.54, 17.34, CellTrust::trusted},
            {"III", 2, 2, 27, 5, 14.71, 3.43, 6.41, 7.64, CellTrust::trusted},
            {"III", 3, 3, 15, 12, 33.31, 1.67, 9.72, 13.03, CellTrust::trusted},
            {"III", 4, 4, 27, 9, 56.83, 3.43, 8.25, 18.94, CellTrust::trusted},
            {"III", 5, 3, 23, 4, 33.31, 2.77, 5.97, 11.86, CellTrust::trusted},
            {"IV", 1, 6, 31, 6, 80.23, 4.15, 16.99, 28.73, CellTrust::corrupted},
            {"IV", 2, 4, 7, 10, 56.83, 0.84, 51.38, 36.10, CellTrust::corrupted},
            {"IV", 3, 4, 27, 1, 56.83, 3.43, 40.18, 32.35, CellTrust::corrupted},
            {"IV", 4, 2, 25, 9, 14.71, 3.09, 22.87, 14.43, CellTrust::corrupted},
            {"IV", 5, 3, 6, 8, 33.31, 0.75, 6.41, 11.30, CellTrust::corrupted},
            {"IV", 6, 1, 34, 3, 10.63, 4.73, 12.89, 9.82, CellTrust::corrupted},
            {"IV", 7, 3, 12, 2, 33.31, 1.33, 43.78, 27.21, CellTrust::corrupted},
            {"IV", 8, 2, 4, 15, 14.71, 0.60, 22.87, 13.50, CellTrust::corrupted},
            {"IV", 9, 5, 35, 6, 75.67, 4.93, 15.77, 27.37, CellTrust::corrupted},
            {"IV", 10, 4, 26, 14, 56.83, 3.26, 6.85, 18.29, CellTrust::corrupted},
            {"IV", 11, 5, 11, 8, 75.67, 1.22, 7.78, 22.64, CellTrust::corrupted},
            {"V", 1, 1, 14, 25, 10.63, 1.55, 16.99, 10.37, CellTrust::trusted},
            {"V", 2, 2, 45, 68, 14.71, 7.19, 51.38, 27.92, CellTrust::trusted},
            {"V", 3, 2, 52, 56, 14.71, 9.02, 40.18, 23.89, CellTrust::trusted},
            {"V", 4, 2, 29, 34, 14.71, 3.78, 22.87, 14.68, CellTrust::trusted},
            {"V", 5, 4, 12, 5, 56.83, 1.33, 6.41, 17.39, CellTrust::trusted},
            {"V", 6, 4, 11, 18, 56.83, 1.22, 12.89, 20.07, CellTrust::trusted},
            {"V", 7, 5, 78, 60, 75.67, 17.63, 43.78, 43.83, CellTrust::trusted},
            {"V", 8, 1, 93, 34, 10.63, 23.89, 22.87, 21.10, CellTrust::trusted},
            {"V", 9, 3, 55, 23, 33.31, 9.87, 15.77, 18.61, CellTrust::trusted},
            {"V", 10, 2, 46, 6, 14.71, 7.44, 6.85, 9.31, CellTrust::trusted},
        }};
        return d;
    }
};

inline constexpr const char* kGoldenCsvHeader =
    "project,class,dit,rfc,wmc,dp_dit,dp_rfc,dp_wmc,c_dpr,trust_wmc";

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

inline long parse_long_field(const std::string& text, const std::string& source,
                             std::size_t line_no, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, line_no, 1,
                         std::string("expected integer ") + what + ", got '" + text + "'");
    }
}

inline double parse_double_field(const std::string& text, const std::string& source,
                                 std::size_t line_no, const char* what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError(source, line_no, 1,
                         std::string("expected number ") + what + ", got '" + text + "'");
    }
}

} // namespace detail

/// Reads a golden dataset from CSV. The header line must match
/// kGoldenCsvHeader exactly; trust_wmc is "true" or "false".
inline GoldenDataset load_golden_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(source, 1, 1, "empty golden dataset file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kGoldenCsvHeader)
        throw ParseError(source, 1, 1,
                         std::string("expected header '") + kGoldenCsvHeader + "'");
    GoldenDataset ds;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 10)
            throw ParseError(source, line_no, 1,
                             "expected 10 fields, got " + std::to_string(f.size()));
        GoldenRow r;
        r.project = f[0];
        r.class_index = static_cast<int>(detail::parse_long_field(f[1], source, line_no, "class"));
        r.dit = static_cast<unsigned>(detail::parse_long_field(f[2], source, line_no, "dit"));
        r.rfc = static_cast<unsigned>(detail::parse_long_field(f[3], source, line_no, "rfc"));
        r.wmc = static_cast<unsigned>(detail::parse_long_field(f[4], source, line_no, "wmc"));
        r.dp_dit = detail::parse_double_field(f[5], source, line_no, "dp_dit");
        r.dp_rfc = detail::parse_double_field(f[6], source, line_no, "dp_rfc");
        r.dp_wmc = detail::parse_double_field(f[7], source, line_no, "dp_wmc");
        r.c_dpr = detail::parse_double_field(f[8], source, line_no, "c_dpr");
        if (f[9] == "true") r.wmc_trust = CellTrust::trusted;
        else if (f[9] == "false") r.wmc_trust = CellTrust::corrupted;
        else
            throw ParseError(source, line_no, 1,
                             "expected trust_wmc 'true' or 'false', got '" + f[9] + "'");
        ds.class_rows.push_back(std::move(r));
    }
    if (ds.class_rows.empty())
        throw ParseError(source, line_no, 1, "golden dataset has no rows");
    return ds;
}

inline void write_golden_csv(std::ostream& out, const GoldenDataset& ds) {
    out << kGoldenCsvHeader << "\n";
    char buf[160];
    for (const auto& r : ds.class_rows) {
        std::snprintf(buf, sizeof buf, "%s,%d,%u,%u,%u,%.2f,%.2f,%.2f,%.2f,%s",
                      r.project.c_str(), r.class_index, r.dit, r.rfc, r.wmc, r.dp_dit,
                      r.dp_rfc, r.dp_wmc, r.c_dpr,
                      r.wmc_trust == CellTrust::trusted ? "true" : "false");
        out << buf << "\n";
    }
}

} // namespace ckdpi
