// ckdpi/class_model.hpp - language-neutral class model: classes, inheritance,
// methods and method invocations. Input to the metrics engine.
#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ckdpi/errors.hpp"

namespace ckdpi {

/// Sentinel receiver for invocations on the class itself (unqualified calls,
/// this.m(...)). Class names equal to the sentinel are rejected at ingestion
/// so the two can never be confused.
inline constexpr std::string_view kSelfReceiver = "self";

inline bool is_self_receiver(std::string_view receiver) {
    return receiver == kSelfReceiver;
}

/// One directed method invocation. receiver_key is a resolved class name, an
/// external type name, or kSelfReceiver. Values are compared field-wise and
/// kept in sets (response-set semantics).
struct MethodRef {
    std::string receiver_key;
    std::string method_name;
    unsigned arity = 0;

    auto operator<=>(const MethodRef&) const = default;
};

/// A declared method (constructors are modelled as methods named after their
/// class). decision_points counts branch/loop/case constructs in the body.
struct MethodDecl {
    std::string name;
    unsigned arity = 0;
    unsigned decision_points = 0;
    std::set<MethodRef> invocations;

    bool operator==(const MethodDecl&) const = default;
};

struct ClassDecl {
    std::string name;
    std::optional<std::string> superclass;
    std::vector<MethodDecl> methods;

    bool operator==(const ClassDecl&) const = default;
};

/// Resolved snapshot of an object-oriented system. Immutable by convention
/// once built by ingest_model / build_model; safe to share across threads.
///
/// Invariants (established at construction, re-checkable via validate):
///   - the inheritance graph restricted to in-model classes is acyclic
///   - every superclass identifier is a key in `classes` or sits in `externals`
///   - every invocation receiver is the self sentinel, an in-model class, or
///     a recorded external
struct ClassModel {
    std::map<std::string, ClassDecl> classes;
    std::set<std::string> externals;

    bool operator==(const ClassModel&) const = default;
};

struct Diagnostic {
    std::string where;   // class or class.method the problem was found in
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

namespace detail {

// Walks superclass links among in-model classes; returns the first cycle
// found as [a, b, ..., a-again-omitted], or an empty list.
inline std::vector<std::string> find_inheritance_cycle(
    const std::map<std::string, ClassDecl>& classes) {
    // 0 = unvisited, 1 = on current chain, 2 = done
    std::map<std::string, int> state;
    for (const auto& [name, decl] : classes) {
        if (state[name] != 0) continue;
        std::vector<std::string> chain;
        std::string cur = name;
        while (true) {
            state[cur] = 1;
            chain.push_back(cur);
            const auto& decl2 = classes.at(cur);
            if (!decl2.superclass) break;
            auto it = classes.find(*decl2.superclass);
            if (it == classes.end()) break;          // external root
            int s = state[it->first];
            if (s == 1) {
                // cycle: slice the chain from the first occurrence
                auto pos = std::find(chain.begin(), chain.end(), it->first);
                return {pos, chain.end()};
            }
            if (s == 2) break;
            cur = it->first;
        }
        for (const auto& c : chain) state[c] = 2;
    }
    return {};
}

inline std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

} // namespace detail

/// Re-checks every ClassModel invariant. Returns one diagnostic per
/// violation; empty means the model is well formed. Never mutates the model.
inline std::vector<Diagnostic> validate(const ClassModel& model) {
    std::vector<Diagnostic> out;
    for (const auto& [name, decl] : model.classes) {
        if (name != decl.name)
            out.push_back({name, "index key does not match class name '" + decl.name + "'"});
        if (is_self_receiver(name))
            out.push_back({name, "class name collides with the reserved receiver 'self'"});
        if (decl.superclass) {
            if (*decl.superclass == name)
                out.push_back({name, "class extends itself"});
            else if (!model.classes.count(*decl.superclass) &&
                     !model.externals.count(*decl.superclass))
                out.push_back({name, "superclass '" + *decl.superclass +
                                         "' is neither declared nor recorded as external"});
        }
        std::set<std::pair<std::string, unsigned>> seen;
        for (const auto& m : decl.methods) {
            if (m.name.empty())
                out.push_back({name, "method with empty name"});
            if (!seen.insert({m.name, m.arity}).second)
                out.push_back({name + "." + m.name,
                               "duplicate method (name, arity) = (" + m.name + ", " +
                                   std::to_string(m.arity) + ")"});
            for (const auto& ref : m.invocations) {
                if (ref.method_name.empty())
                    out.push_back({name + "." + m.name, "invocation with empty method name"});
                if (!is_self_receiver(ref.receiver_key) &&
                    !model.classes.count(ref.receiver_key) &&
                    !model.externals.count(ref.receiver_key))
                    out.push_back({name + "." + m.name,
                                   "receiver '" + ref.receiver_key +
                                       "' is neither self, a declared class, nor an external"});
            }
        }
    }
    auto cycle = detail::find_inheritance_cycle(model.classes);
    if (!cycle.empty())
        out.push_back({cycle.front(), "inheritance cycle: " + detail::join_names(cycle)});
    return out;
}

namespace detail {

// Shared final assembly step for ingest_model and build_model: establishes
// every ClassModel invariant or throws ModelError. Unresolved superclasses
// and receivers are recorded as externals.
inline ClassModel finalize_model(std::map<std::string, ClassDecl> classes) {
    for (const auto& [name, decl] : classes) {
        if (is_self_receiver(name))
            throw ModelError("class name '" + std::string(kSelfReceiver) +
                             "' is reserved for the self receiver");
        if (decl.superclass && *decl.superclass == name)
            throw ModelError("inheritance cycle: " + name);
    }
    auto cycle = find_inheritance_cycle(classes);
    if (!cycle.empty())
        throw ModelError("inheritance cycle: " + join_names(cycle));

    ClassModel model;
    model.classes = std::move(classes);
    for (const auto& [name, decl] : model.classes) {
        if (decl.superclass && !model.classes.count(*decl.superclass))
            model.externals.insert(*decl.superclass);
        for (const auto& m : decl.methods)
            for (const auto& ref : m.invocations)
                if (!is_self_receiver(ref.receiver_key) &&
                    !model.classes.count(ref.receiver_key))
                    model.externals.insert(ref.receiver_key);
    }
    return model;
}

} // namespace detail

} // namespace ckdpi
