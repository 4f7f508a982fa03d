// Class model invariants and model-document ingestion.
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ckdpi/class_model.hpp"
#include "ckdpi/model_doc.hpp"
#include "oracle.hpp"

using namespace ckdpi;

namespace {

ClassModel tiny_model() {
    return ingest_model(R"({
      "classes": [
        {"name": "Base", "methods": [{"name": "go", "arity": 0, "calls": []}]},
        {"name": "Leaf", "extends": "Base", "methods": [
          {"name": "go", "arity": 0,
           "calls": [{"receiver": "Helper", "method": "assist", "arity": 2}]}
        ]}
      ]
    })");
}

} // namespace

TEST_CASE("ingest resolves classes and externals", "[class_model]") {
    ClassModel m = tiny_model();
    REQUIRE(m.classes.size() == 2);
    REQUIRE(m.classes.count("Base") == 1);
    REQUIRE(m.classes.at("Leaf").superclass == "Base");
    REQUIRE(m.externals == std::set<std::string>{"Helper"});
    REQUIRE(validate(m).empty());
}

TEST_CASE("ingest defaults and field checks", "[class_model]") {
    ClassModel m = ingest_model(R"({
      "classes": [{"name": "A", "methods": [{"name": "f", "arity": 1, "calls": []}]}]
    })");
    const MethodDecl& f = m.classes.at("A").methods.at(0);
    REQUIRE(f.decision_points == 0);
    REQUIRE(f.invocations.empty());
    REQUIRE(!m.classes.at("A").superclass.has_value());
}

TEST_CASE("ingest rejects schema violations", "[class_model]") {
    auto bad = [](const char* doc) {
        REQUIRE_THROWS_AS(ingest_model(doc), ModelError);
    };
    bad(R"({"classes": [], "extra": 1})");                          // unknown key
    bad(R"({"classes": [{"name": "A", "methods": [], "x": 1}]})");  // unknown class key
    bad(R"({"classes": [{"methods": []}]})");                       // missing name
    bad(R"({"classes": [{"name": "A", "methods": [{"name": "f"}]}]})");   // missing arity
    bad(R"({"classes": [{"name": "A", "methods": [{"name": "f", "arity": -1}]}]})");
    bad(R"({"classes": [{"name": "A", "methods": [{"name": "f", "arity": 0}]}]})");  // missing calls
    bad(R"({"classes": [{"name": "A", "methods": [{"name": "f", "arity": 0,
          "decision_points": -2}]}]})");
    bad(R"({"classes": [{"name": "9A", "methods": []}]})");         // bad identifier
    bad(R"({"classes": [{"name": "A", "methods": []},
            {"name": "A", "methods": []}]})");                      // duplicate class
    bad(R"({"classes": [{"name": "A", "methods": [
            {"name": "f", "arity": 1, "calls": []},
            {"name": "f", "arity": 1, "calls": []}]}]})");     // duplicate method
    bad(R"({"classes": [{"name": "self", "methods": []}]})");       // reserved name
    bad(R"({"classes": [{"name": "A", "methods": [{"name": "f", "arity": 0,
          "calls": [{"receiver": "B", "method": "g"}]}]}]})");      // missing call arity
    bad("not json at all");
}

TEST_CASE("inheritance cycles are rejected and named", "[class_model]") {
    try {
        ingest_model(R"({
          "classes": [
            {"name": "A", "extends": "B", "methods": []},
            {"name": "B", "extends": "A", "methods": []}
          ]
        })");
        FAIL("expected ModelError");
    } catch (const ModelError& e) {
        const std::string what = e.what();
        REQUIRE(what.find("cycle") != std::string::npos);
        REQUIRE(what.find('A') != std::string::npos);
        REQUIRE(what.find('B') != std::string::npos);
    }
    REQUIRE_THROWS_AS(ingest_model(R"({
      "classes": [{"name": "A", "extends": "A", "methods": []}]
    })"), ModelError);
}

TEST_CASE("self receiver is recognized, self class name is reserved", "[class_model]") {
    REQUIRE(is_self_receiver("self"));
    REQUIRE(!is_self_receiver("Self"));
    ClassModel m = ingest_model(R"({
      "classes": [{"name": "A", "methods": [{"name": "f", "arity": 0,
        "calls": [{"receiver": "self", "method": "g", "arity": 0}]}]}]
    })");
    REQUIRE(m.externals.empty());   // self calls never create externals
}

TEST_CASE("serialize and ingest are inverse", "[class_model]") {
    ClassModel m = tiny_model();
    REQUIRE(ingest_model(serialize_model(m).dump()) == m);

    std::mt19937 rng(20240817);
    for (int i = 0; i < 25; ++i) {
        ClassModel r = oracle::random_model(rng);
        REQUIRE(ingest_model(serialize_model(r).dump()) == r);
    }
}

TEST_CASE("validate flags broken models", "[class_model]") {
    ClassModel m = tiny_model();
    m.classes.at("Leaf").superclass = "Nowhere";   // not declared, not external
    auto diags = validate(m);
    REQUIRE(!diags.empty());
}
