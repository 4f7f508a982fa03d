// tests/oracle.hpp - brute-force reference metrics and a random model
// generator, kept deliberately independent of the library's algorithms.
#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ckdpi/class_model.hpp"
#include "ckdpi/metrics.hpp"

namespace oracle {

// Method count, or sum of (decision points + 1), straight off the decl.
inline unsigned wmc_ref(const ckdpi::ClassDecl& cls, ckdpi::WmcMode mode) {
    unsigned total = 0;
    for (const auto& m : cls.methods)
        total += mode == ckdpi::WmcMode::count ? 1u : m.decision_points + 1u;
    return total;
}

// Walks the inheritance path upward, counting edges; an edge into a class
// that is not in the model still counts, then the walk stops.
inline unsigned dit_ref(const ckdpi::ClassModel& model, const std::string& name) {
    unsigned depth = 0;
    std::string cur = name;
    for (;;) {
        auto it = model.classes.find(cur);
        if (it == model.classes.end()) break;
        if (!it->second.superclass) break;
        ++depth;
        cur = *it->second.superclass;
    }
    return depth;
}

// Enumerates the response set as literal (receiver, method, arity) strings.
inline unsigned rfc_ref(const ckdpi::ClassModel& model, const std::string& name) {
    const auto& cls = model.classes.at(name);
    std::set<std::tuple<std::string, std::string, unsigned>> response;
    for (const auto& m : cls.methods) response.insert({name, m.name, m.arity});
    for (const auto& m : cls.methods)
        for (const auto& ref : m.invocations)
            if (ref.receiver_key != "self")
                response.insert({ref.receiver_key, ref.method_name, ref.arity});
    return static_cast<unsigned>(response.size());
}

// Random small models: superclasses only point at earlier classes or at one
// of a few external names, so the result is always acyclic and valid.
inline ckdpi::ClassModel random_model(std::mt19937& rng) {
    std::uniform_int_distribution<int> class_count(1, 10);
    std::uniform_int_distribution<int> method_count(0, 8);
    std::uniform_int_distribution<int> arity(0, 3);
    std::uniform_int_distribution<int> dp(0, 4);
    std::uniform_int_distribution<int> call_count(0, 5);
    std::uniform_int_distribution<int> percent(0, 99);

    const int n = class_count(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("C" + std::to_string(i));
    const std::vector<std::string> externals = {"ExtA", "ExtB", "ExtC"};

    std::map<std::string, ckdpi::ClassDecl> classes;
    for (int i = 0; i < n; ++i) {
        ckdpi::ClassDecl decl;
        decl.name = names[i];
        const int p = percent(rng);
        if (i > 0 && p < 50) {
            decl.superclass = names[std::uniform_int_distribution<int>(0, i - 1)(rng)];
        } else if (p < 65) {
            decl.superclass = externals[p % externals.size()];
        }
        const int mc = method_count(rng);
        std::set<std::pair<std::string, unsigned>> sigs;
        for (int m = 0; m < mc; ++m) {
            ckdpi::MethodDecl method;
            method.name = "m" + std::to_string(m % 5);
            method.arity = static_cast<unsigned>(arity(rng));
            if (!sigs.insert({method.name, method.arity}).second) continue;
            method.decision_points = static_cast<unsigned>(dp(rng));
            const int cc = call_count(rng);
            for (int c = 0; c < cc; ++c) {
                ckdpi::MethodRef ref;
                const int r = percent(rng);
                if (r < 25) ref.receiver_key = "self";
                else if (r < 70) ref.receiver_key = names[std::uniform_int_distribution<int>(0, n - 1)(rng)];
                else ref.receiver_key = externals[r % externals.size()];
                ref.method_name = "m" + std::to_string(percent(rng) % 6);
                ref.arity = static_cast<unsigned>(arity(rng));
                method.invocations.insert(std::move(ref));
            }
            decl.methods.push_back(std::move(method));
        }
        classes.emplace(decl.name, std::move(decl));
    }
    return ckdpi::detail::finalize_model(std::move(classes));
}

} // namespace oracle
