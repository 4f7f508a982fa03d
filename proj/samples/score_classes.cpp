// samples/score_classes.cpp - minimal end-to-end use of the library:
// build a class model in memory, compute CK metrics, and print the
// defect-proneness report with both built-in coefficient sets.
#include <iostream>

#include "ckdpi/metrics.hpp"
#include "ckdpi/model_doc.hpp"
#include "ckdpi/report.hpp"

int main() {
    ckdpi::ClassModel model = ckdpi::ingest_model(R"({
      "classes": [
        {"name": "Store", "methods": [
          {"name": "put", "arity": 2, "decision_points": 1},
          {"name": "get", "arity": 1, "decision_points": 2,
           "calls": [{"receiver": "Codec", "method": "decode", "arity": 1}]}
        ]},
        {"name": "CachedStore", "extends": "Store", "methods": [
          {"name": "get", "arity": 1, "decision_points": 3,
           "calls": [{"receiver": "Store", "method": "get", "arity": 1},
                     {"receiver": "self", "method": "evict", "arity": 0}]},
          {"name": "evict", "arity": 0, "decision_points": 1}
        ]}
      ]
    })");

    auto vectors = ckdpi::compute_all(model, ckdpi::WmcMode::cyclomatic);
    for (const ckdpi::ModelSet* set :
         {&ckdpi::ModelSet::published(), &ckdpi::ModelSet::calibrated()}) {
        ckdpi::Report report = ckdpi::build_report(vectors, *set, "demo");
        ckdpi::render_text(report, std::cout);
        std::cout << "\n";
    }
    return 0;
}
