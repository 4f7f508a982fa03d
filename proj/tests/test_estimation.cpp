// Polynomial evaluation, DPI aggregation, thresholds, influence bands,
// and ModelSet document round trips.
#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ckdpi/estimation.hpp"
#include "ckdpi/golden.hpp"
#include "ckdpi/model_io.hpp"

using namespace ckdpi;
using Catch::Matchers::WithinAbs;

TEST_CASE("eval_poly uses Horner and clamps to the domain", "[estimation]") {
    const ModelSet& pub = ModelSet::published();
    PolyValue v = eval_poly(pub.wmc_poly, 7.0);
    REQUIRE_THAT(v.value, WithinAbs(7.3107, 1e-12));
    REQUIRE(!v.clamped);

    PolyValue lo = eval_poly(pub.rfc_poly, -1.0);
    REQUIRE(lo.clamped);
    REQUIRE_THAT(lo.value, WithinAbs(eval_poly(pub.rfc_poly, 0.0).value, 1e-12));
    PolyValue hi = eval_poly(pub.rfc_poly, 230.0);
    REQUIRE(hi.clamped);
    REQUIRE_THAT(hi.value, WithinAbs(eval_poly(pub.rfc_poly, 222.0).value, 1e-12));

    PolynomialModel constant{{2.5}, 0.0, 1.0};
    REQUIRE_THAT(eval_poly(constant, 0.4).value, WithinAbs(2.5, 0.0));
}

TEST_CASE("component polynomials hit the published spot values", "[estimation]") {
    const ModelSet& pub = ModelSet::published();
    REQUIRE_THAT(dp_dit(1, pub), WithinAbs(10.68, 1e-9));
    REQUIRE_THAT(dp_dit(6, pub), WithinAbs(91.03, 1e-9));
    REQUIRE_THAT(dp_rfc(10, pub), WithinAbs(1.13, 1e-9));
    REQUIRE_THAT(dp_wmc(7, pub), WithinAbs(7.3107, 1e-9));
}

TEST_CASE("calibrated dit cubic reproduces the golden column exactly", "[estimation]") {
    const ModelSet& cal = ModelSet::calibrated();
    const double expected[] = {10.63, 14.71, 33.31, 56.83, 75.67, 80.23};
    for (unsigned d = 1; d <= 6; ++d)
        REQUIRE_THAT(dp_dit(d, cal), WithinAbs(expected[d - 1], 1e-9));
}

TEST_CASE("depth zero contributes no inheritance risk", "[estimation]") {
    REQUIRE(dp_dit(0, ModelSet::published()) == 0.0);
    REQUIRE(dp_dit(0, ModelSet::calibrated()) == 0.0);
    // above the domain the polynomial clamps instead
    REQUIRE_THAT(dp_dit(9, ModelSet::calibrated()),
                 WithinAbs(dp_dit(6, ModelSet::calibrated()), 1e-12));
}

TEST_CASE("class_dpi combines components with the model weights", "[estimation]") {
    DefectProfile cal = class_dpi({"c", 1, 10, 7}, ModelSet::calibrated());
    REQUIRE_THAT(cal.c_dpr, WithinAbs(6.14226455782188, 1e-9));
    REQUIRE_THAT(cal.dp_dit, WithinAbs(10.63, 1e-9));

    DefectProfile pub = class_dpi({"c", 1, 10, 7}, ModelSet::published());
    REQUIRE_THAT(pub.c_dpr, WithinAbs(5.866166, 1e-9));

    DefectProfile top = class_dpi({"c", 5, 78, 60}, ModelSet::calibrated());
    REQUIRE_THAT(top.c_dpr, WithinAbs(43.82850190185415, 1e-9));
}

TEST_CASE("project_dpi averages components before weighting", "[estimation]") {
    std::vector<MetricVector> project_one = {
        {"1", 1, 10, 7}, {"2", 3, 9, 3}, {"3", 2, 21, 1}, {"4", 2, 3, 9}, {"5", 1, 1, 7},
    };
    ProjectProfile p = project_dpi(project_one, ModelSet::calibrated(), "I");
    REQUIRE(p.project_id == "I");
    REQUIRE(p.class_profiles.size() == 5);
    REQUIRE_THAT(p.mean_dp_dit, WithinAbs(16.798, 1e-9));
    REQUIRE_THAT(p.p_dpr, WithinAbs(7.39, 0.005));

    // identical to the mean of the class ratings
    double mean_c = 0.0;
    for (const auto& cp : p.class_profiles) mean_c += cp.c_dpr;
    mean_c /= static_cast<double>(p.class_profiles.size());
    REQUIRE_THAT(p.p_dpr, WithinAbs(mean_c, 1e-9));

    REQUIRE_THROWS_AS(project_dpi({}, ModelSet::calibrated()), InputError);
}

TEST_CASE("dp curves strictly increase on the metric grids", "[estimation]") {
    for (const ModelSet* m : {&ModelSet::published(), &ModelSet::calibrated()}) {
        for (unsigned r = 1; r <= 222; ++r)
            REQUIRE(dp_rfc(r, *m) > dp_rfc(r - 1, *m));
        for (unsigned w = 1; w <= 100; ++w)
            REQUIRE(dp_wmc(w, *m) > dp_wmc(w - 1, *m));
    }
    for (unsigned d = 2; d <= 6; ++d)
        REQUIRE(dp_dit(d, ModelSet::calibrated()) > dp_dit(d - 1, ModelSet::calibrated()));
}

TEST_CASE("threshold flags at the boundary values", "[estimation]") {
    auto flags = [](unsigned dit, unsigned rfc, unsigned wmc) {
        return threshold_flags({"c", dit, rfc, wmc});
    };
    REQUIRE(flags(3, 50, 20) ==
            std::vector<ThresholdFlag>{{Metric::dit, FlagKind::warn},
                                       {Metric::rfc, FlagKind::warn},
                                       {Metric::wmc, FlagKind::warn}});
    // the maxima themselves still warn; only beyond them is an exceedance
    REQUIRE(flags(6, 222, 100) ==
            std::vector<ThresholdFlag>{{Metric::dit, FlagKind::warn},
                                       {Metric::rfc, FlagKind::warn},
                                       {Metric::rfc, FlagKind::secondary_warn},
                                       {Metric::wmc, FlagKind::warn}});
    REQUIRE(flags(7, 230, 101) ==
            std::vector<ThresholdFlag>{{Metric::dit, FlagKind::max_exceeded},
                                       {Metric::rfc, FlagKind::max_exceeded},
                                       {Metric::wmc, FlagKind::max_exceeded}});
    REQUIRE(flags(2, 49, 19).empty());
    REQUIRE(flags(0, 100, 0) ==
            std::vector<ThresholdFlag>{{Metric::rfc, FlagKind::warn},
                                       {Metric::rfc, FlagKind::secondary_warn}});
}

TEST_CASE("influence interpolates the empirical knots", "[estimation]") {
    const InfluenceTable& t = InfluenceTable::empirical();
    // exact at every knot
    for (auto [knots, metric] :
         {std::pair{&t.dit_knots, Metric::dit}, {&t.rfc_knots, Metric::rfc},
          {&t.wmc_knots, Metric::wmc}}) {
        for (const auto& [x, y] : *knots) {
            InfluenceValue v = influence(metric, x, t);
            REQUIRE_THAT(v.percent, WithinAbs(y, 1e-12));
            REQUIRE(!v.clamped);
        }
    }
    REQUIRE_THAT(influence(Metric::dit, 3.5).percent, WithinAbs(46.0, 1e-12));
    REQUIRE_THAT(influence(Metric::rfc, 90.0).percent, WithinAbs(84.5, 1e-12));

    InfluenceValue below = influence(Metric::rfc, 0.0);
    REQUIRE(below.clamped);
    REQUIRE_THAT(below.percent, WithinAbs(3.0, 1e-12));
    InfluenceValue above = influence(Metric::wmc, 100.0);
    REQUIRE(above.clamped);
    REQUIRE_THAT(above.percent, WithinAbs(2.0, 1e-12));

    // the rfc series is non-monotonic and applied verbatim
    REQUIRE(influence(Metric::rfc, 100.0).percent < influence(Metric::rfc, 80.0).percent);
}

TEST_CASE("model documents round trip", "[estimation]") {
    for (const ModelSet* m : {&ModelSet::published(), &ModelSet::calibrated()}) {
        ModelSet back = model_from_json(model_to_json(*m));
        REQUIRE(back == *m);
    }
}

TEST_CASE("model documents are validated strictly", "[estimation]") {
    nlohmann::json good = model_to_json(ModelSet::published());

    nlohmann::json j = good;
    j["surprise"] = 1;
    REQUIRE_THROWS_AS(model_from_json(j), InputError);

    j = good;
    j.erase("weights");
    REQUIRE_THROWS_AS(model_from_json(j), InputError);

    j = good;
    j["dit"] = {1.0, 2.0, 3.0};   // cubic needs four coefficients
    REQUIRE_THROWS_AS(model_from_json(j), InputError);

    j = good;
    j["domains"]["rfc"] = {222.0, 0.0};
    REQUIRE_THROWS_AS(model_from_json(j), InputError);

    j = good;
    j["domains"]["extra"] = {0.0, 1.0};
    REQUIRE_THROWS_AS(model_from_json(j), InputError);

    REQUIRE_THROWS_AS(parse_model_text("{]", "bad.json"), InputError);
}

TEST_CASE("golden csv matches the builtin dataset", "[estimation]") {
    std::ostringstream out;
    write_golden_csv(out, GoldenDataset::builtin());
    std::istringstream in(out.str());
    GoldenDataset back = load_golden_csv(in, "roundtrip");
    REQUIRE(back == GoldenDataset::builtin());

    std::istringstream bad_header("class,dit\n");
    REQUIRE_THROWS_AS(load_golden_csv(bad_header, "x"), ParseError);
}
