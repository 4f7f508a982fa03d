// ckdpi/model_doc.hpp - interchange format for class models.
//
// Document layout (JSON):
//   { "classes": [ { "name": "A",
//                    "extends": "B",              // optional
//                    "methods": [ { "name": "m",
//                                   "arity": 1,
//                                   "decision_points": 2,   // optional, default 0
//                                   "calls": [ { "receiver": "X" | "self",
//                                                "method": "f",
//                                                "arity": 0 } ] } ] } ] }
//
// The schema is strict: unknown keys are rejected, and every violation is
// reported with the path of the offending element.
#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "ckdpi/class_model.hpp"
#include "ckdpi/errors.hpp"

namespace ckdpi {

namespace detail {

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
    };
    if (!head(s[0])) return false;
    for (char c : s.substr(1))
        if (!head(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

inline void reject_unknown_keys(const nlohmann::json& obj, const std::string& path,
                                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok) throw ModelError("schema violation at " + path + ": unknown key '" + key + "'");
    }
}

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  const std::string& path) {
    if (!obj.contains(key))
        throw ModelError("schema violation at " + path + ": missing key '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_string())
        throw ModelError("schema violation at " + path + "." + key + ": expected a string");
    return v.get<std::string>();
}

inline unsigned require_count(const nlohmann::json& obj, const char* key,
                              const std::string& path) {
    if (!obj.contains(key))
        throw ModelError("schema violation at " + path + ": missing key '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ModelError("schema violation at " + path + "." + key +
                         ": expected a non-negative integer");
    return static_cast<unsigned>(v.get<long long>());
}

inline std::string require_identifier(const nlohmann::json& obj, const char* key,
                                      const std::string& path) {
    std::string s = require_string(obj, key, path);
    if (!is_identifier(s))
        throw ModelError("schema violation at " + path + "." + key + ": '" + s +
                         "' is not a valid identifier");
    return s;
}

} // namespace detail

/// Parses and validates a class-model document. All ClassModel invariants are
/// established on success; unresolved type references end up in externals.
/// Throws ModelError on schema violations, duplicate classes or inheritance
/// cycles (the cycle is named in the message).
inline ClassModel ingest_model(const std::string& document_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ModelError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object())
        throw ModelError("schema violation at $: expected an object");
    detail::reject_unknown_keys(doc, "$", {"classes"});
    if (!doc.contains("classes") || !doc.at("classes").is_array())
        throw ModelError("schema violation at $: expected key 'classes' holding a list");

    std::map<std::string, ClassDecl> classes;
    const auto& class_list = doc.at("classes");
    for (std::size_t ci = 0; ci < class_list.size(); ++ci) {
        const std::string cpath = "classes[" + std::to_string(ci) + "]";
        const auto& cj = class_list.at(ci);
        if (!cj.is_object())
            throw ModelError("schema violation at " + cpath + ": expected an object");
        detail::reject_unknown_keys(cj, cpath, {"name", "extends", "methods"});

        ClassDecl decl;
        decl.name = detail::require_identifier(cj, "name", cpath);
        if (is_self_receiver(decl.name))
            throw ModelError("schema violation at " + cpath +
                             ".name: 'self' is reserved for the self receiver");
        if (cj.contains("extends"))
            decl.superclass = detail::require_identifier(cj, "extends", cpath);

        if (!cj.contains("methods") || !cj.at("methods").is_array())
            throw ModelError("schema violation at " + cpath +
                             ": expected key 'methods' holding a list");
        const auto& methods = cj.at("methods");
        std::set<std::pair<std::string, unsigned>> seen;
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            const std::string mpath = cpath + ".methods[" + std::to_string(mi) + "]";
            const auto& mj = methods.at(mi);
            if (!mj.is_object())
                throw ModelError("schema violation at " + mpath + ": expected an object");
            detail::reject_unknown_keys(mj, mpath, {"name", "arity", "decision_points", "calls"});

            MethodDecl m;
            m.name = detail::require_identifier(mj, "name", mpath);
            m.arity = detail::require_count(mj, "arity", mpath);
            if (mj.contains("decision_points"))
                m.decision_points = detail::require_count(mj, "decision_points", mpath);
            if (!seen.insert({m.name, m.arity}).second)
                throw ModelError("schema violation at " + mpath + ": duplicate method " +
                                 m.name + "/" + std::to_string(m.arity) + " in class " +
                                 decl.name);

            if (!mj.contains("calls") || !mj.at("calls").is_array())
                throw ModelError("schema violation at " + mpath +
                                 ": expected key 'calls' holding a list");
            const auto& calls = mj.at("calls");
            for (std::size_t ki = 0; ki < calls.size(); ++ki) {
                const std::string kpath = mpath + ".calls[" + std::to_string(ki) + "]";
                const auto& kj = calls.at(ki);
                if (!kj.is_object())
                    throw ModelError("schema violation at " + kpath + ": expected an object");
                detail::reject_unknown_keys(kj, kpath, {"receiver", "method", "arity"});
                MethodRef ref;
                ref.receiver_key = detail::require_string(kj, "receiver", kpath);
                if (!is_self_receiver(ref.receiver_key) &&
                    !detail::is_identifier(ref.receiver_key))
                    throw ModelError("schema violation at " + kpath +
                                     ".receiver: expected a class name or 'self'");
                ref.method_name = detail::require_identifier(kj, "method", kpath);
                ref.arity = detail::require_count(kj, "arity", kpath);
                m.invocations.insert(std::move(ref));
            }
            decl.methods.push_back(std::move(m));
        }

        if (classes.count(decl.name))
            throw ModelError("duplicate class name '" + decl.name + "' in document");
        classes.emplace(decl.name, std::move(decl));
    }

    return detail::finalize_model(std::move(classes));
}

/// Serializes a model back into the interchange format. Classes come out in
/// name order and calls in set order, so ingest_model(serialize_model(m)) is
/// the identity on valid models.
inline nlohmann::json serialize_model(const ClassModel& model) {
    nlohmann::json doc;
    doc["classes"] = nlohmann::json::array();
    for (const auto& [name, decl] : model.classes) {
        nlohmann::json cj;
        cj["name"] = name;
        if (decl.superclass) cj["extends"] = *decl.superclass;
        cj["methods"] = nlohmann::json::array();
        for (const auto& m : decl.methods) {
            nlohmann::json mj;
            mj["name"] = m.name;
            mj["arity"] = m.arity;
            if (m.decision_points > 0) mj["decision_points"] = m.decision_points;
            mj["calls"] = nlohmann::json::array();
            for (const auto& ref : m.invocations)
                mj["calls"].push_back({{"receiver", ref.receiver_key},
                                       {"method", ref.method_name},
                                       {"arity", ref.arity}});
            cj["methods"].push_back(std::move(mj));
        }
        doc["classes"].push_back(std::move(cj));
    }
    return doc;
}

} // namespace ckdpi
