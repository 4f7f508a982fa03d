// ckdpi/model_io.hpp - ModelSet JSON document read/write.
//
// Layout:
// {
//   "label": "calibrated",
//   "dit": [a3, a2, a1, a0],          // cubic, highest power first
//   "rfc": [a2, a1, a0],
//   "wmc": [a2, a1, a0],
//   "weights": [w_dit, w_rfc, w_wmc],
//   "domains": { "dit": [lo, hi], "rfc": [lo, hi], "wmc": [lo, hi] }
// }
#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "ckdpi/errors.hpp"
#include "ckdpi/estimation.hpp"

namespace ckdpi {

namespace detail {

inline std::vector<double> number_array(const nlohmann::json& j, const std::string& where,
                                        std::size_t count) {
    if (!j.is_array() || j.size() != count)
        throw InputError("model document: '" + where + "' must be an array of " +
                         std::to_string(count) + " numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number())
            throw InputError("model document: '" + where + "' must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

inline std::pair<double, double> domain_pair(const nlohmann::json& j,
                                             const std::string& where) {
    auto v = number_array(j, where, 2);
    if (!(v[0] < v[1]))
        throw InputError("model document: '" + where + "' must be an ascending [lo, hi]");
    return {v[0], v[1]};
}

} // namespace detail

inline nlohmann::json model_to_json(const ModelSet& m) {
    nlohmann::json j;
    j["label"] = m.label;
    j["dit"] = m.dit_poly.coefficients;
    j["rfc"] = m.rfc_poly.coefficients;
    j["wmc"] = m.wmc_poly.coefficients;
    j["weights"] = {m.w_dit, m.w_rfc, m.w_wmc};
    j["domains"] = {
        {"dit", {m.dit_poly.domain_lo, m.dit_poly.domain_hi}},
        {"rfc", {m.rfc_poly.domain_lo, m.rfc_poly.domain_hi}},
        {"wmc", {m.wmc_poly.domain_lo, m.wmc_poly.domain_hi}},
    };
    return j;
}

/// Parses a ModelSet document. Unknown keys, wrong coefficient counts and
/// non-ascending domains are rejected.
inline ModelSet model_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("model document: top level must be an object");
    static const std::vector<std::string> known = {"label", "dit", "rfc",
                                                   "wmc",   "weights", "domains"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InputError("model document: unknown key '" + key + "'");
    for (const auto& key : known)
        if (!j.contains(key))
            throw InputError("model document: missing key '" + key + "'");
    if (!j["label"].is_string())
        throw InputError("model document: 'label' must be a string");
    if (!j["domains"].is_object())
        throw InputError("model document: 'domains' must be an object");
    for (const auto& [key, value] : j["domains"].items())
        if (key != "dit" && key != "rfc" && key != "wmc")
            throw InputError("model document: unknown domain '" + key + "'");
    for (const char* key : {"dit", "rfc", "wmc"})
        if (!j["domains"].contains(key))
            throw InputError(std::string("model document: missing domain '") + key + "'");

    ModelSet m;
    m.label = j["label"].get<std::string>();
    m.dit_poly.coefficients = detail::number_array(j["dit"], "dit", 4);
    m.rfc_poly.coefficients = detail::number_array(j["rfc"], "rfc", 3);
    m.wmc_poly.coefficients = detail::number_array(j["wmc"], "wmc", 3);
    auto w = detail::number_array(j["weights"], "weights", 3);
    m.w_dit = w[0];
    m.w_rfc = w[1];
    m.w_wmc = w[2];
    std::tie(m.dit_poly.domain_lo, m.dit_poly.domain_hi) =
        detail::domain_pair(j["domains"]["dit"], "domains.dit");
    std::tie(m.rfc_poly.domain_lo, m.rfc_poly.domain_hi) =
        detail::domain_pair(j["domains"]["rfc"], "domains.rfc");
    std::tie(m.wmc_poly.domain_lo, m.wmc_poly.domain_hi) =
        detail::domain_pair(j["domains"]["wmc"], "domains.wmc");
    return m;
}

inline ModelSet parse_model_text(const std::string& text, const std::string& source) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw InputError("model document " + source + ": invalid JSON");
    return model_from_json(j);
}

} // namespace ckdpi
