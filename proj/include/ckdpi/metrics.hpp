// ckdpi/metrics.hpp - WMC, DIT and RFC computation over a class model.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "ckdpi/class_model.hpp"

namespace ckdpi {

/// WMC counting scheme. `count` weights every method as 1; `cyclomatic`
/// weights a method as its decision points + 1.
enum class WmcMode { count, cyclomatic };

/// One class's metric triple.
struct MetricVector {
    std::string class_name;
    unsigned dit = 0;
    unsigned rfc = 0;
    unsigned wmc = 0;

    bool operator==(const MetricVector&) const = default;
};

inline unsigned compute_wmc(const ClassDecl& cls, WmcMode mode) {
    if (mode == WmcMode::count) return static_cast<unsigned>(cls.methods.size());
    unsigned total = 0;
    for (const auto& m : cls.methods) total += m.decision_points + 1;
    return total;
}

/// Inheritance edges between the class and the root of its chain. A class
/// without a superclass sits at depth 0. A superclass that is not part of
/// the model contributes one edge and ends the chain.
inline unsigned compute_dit(const ClassDecl& cls, const ClassModel& model) {
    unsigned depth = 0;
    const ClassDecl* cur = &cls;
    std::set<std::string> seen{cls.name};
    while (cur->superclass) {
        ++depth;
        auto it = model.classes.find(*cur->superclass);
        if (it == model.classes.end()) break;            // external superclass
        if (!seen.insert(it->first).second) break;       // defensive cycle stop
        cur = &it->second;
    }
    return depth;
}

/// Size of the response set: the class's own methods as (class, name, arity)
/// plus every distinct non-self invocation target. One level only; methods
/// reachable through the invoked methods are not followed.
inline unsigned compute_rfc(const ClassDecl& cls, const ClassModel& model) {
    (void)model;
    std::set<MethodRef> response;
    for (const auto& m : cls.methods) response.insert({cls.name, m.name, m.arity});
    for (const auto& m : cls.methods)
        for (const auto& ref : m.invocations)
            if (!is_self_receiver(ref.receiver_key)) response.insert(ref);
    return static_cast<unsigned>(response.size());
}

/// Metric vectors for every declared class, ordered by class name.
/// External classes get no vector.
inline std::vector<MetricVector> compute_all(const ClassModel& model, WmcMode mode) {
    std::vector<MetricVector> out;
    out.reserve(model.classes.size());
    for (const auto& [name, cls] : model.classes)
        out.push_back({name, compute_dit(cls, model), compute_rfc(cls, model),
                       compute_wmc(cls, mode)});
    return out;
}

} // namespace ckdpi
