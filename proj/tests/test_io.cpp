#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "json.hpp"
#include "sqpack/io.hpp"
#include "sqpack/packing.hpp"
#include "sqpack/sweep.hpp"
#include "sqpack/verifier.hpp"

using namespace sqpack;

namespace {

bool same_report(const WasteReport& a, const WasteReport& b) {
    return a.total_squares == b.total_squares && a.waste_total == b.waste_total && a.region_total == b.region_total &&
           a.overlap_violations == b.overlap_violations && a.containment_violations == b.containment_violations &&
           a.waste_by_region == b.waste_by_region && a.fallback_events == b.fallback_events;
}

}  // namespace

TEST_CASE("packing JSON round trip preserves the audit") {
    const Packing p = build_packing(50.5);
    const WasteReport before = audit(p);
    const std::string text = packing_to_json(p, &before);
    const Packing q = packing_from_json(text);
    const WasteReport after = audit(q);
    CHECK(same_report(before, after));
    CHECK(packing_to_json(q, &after) == text);
}

TEST_CASE("schema errors name the offending path") {
    const Packing p = build_packing(20.5);
    auto j = nlohmann::json::parse(packing_to_json(p));

    auto missing = j;
    missing.erase("x");
    CHECK_THROWS_AS(packing_from_json(missing.dump()), SchemaError);

    auto bad = j;
    bad["stacks"][0]["count"] = 0;
    try {
        packing_from_json(bad.dump());
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(e.path().find("/stacks/0") == 0);
    }

    auto skew = j;
    skew["stacks"][0]["step"] = nlohmann::json::array({2.0, 0.0});
    CHECK_THROWS_AS(packing_from_json(skew.dump()), SchemaError);

    CHECK_THROWS_AS(packing_from_json("not json"), SchemaError);
    CHECK_THROWS_AS(packing_from_json("[]"), SchemaError);
}

TEST_CASE("SVG output is deterministic") {
    const Packing p = build_packing(30.5);
    const std::string a = packing_to_svg(p);
    CHECK(a == packing_to_svg(packing_from_json(packing_to_json(p))));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
}

TEST_CASE("an empty packing renders the bare region") {
    Packing p;
    p.x = 5.0;
    const std::string s = packing_to_svg(p);
    CHECK(s.find("<svg") != std::string::npos);
}

TEST_CASE("sweep CSV is sorted with a fixed header") {
    std::vector<SweepRow> rows(2);
    rows[0].x = 200.5;
    rows[0].waste = 3.0;
    rows[1].x = 100.5;
    rows[1].ok = false;
    rows[1].error = "boom";
    const std::string csv = sweep_to_csv(rows);
    CHECK(csv.rfind("x,h,theta,m,strips,W,violations,W_naive,fallbacks,error\n", 0) == 0);
    CHECK(csv.find("100.5") < csv.find("200.5"));
    CHECK(csv.find("boom") != std::string::npos);
}

TEST_CASE("sweep points") {
    const auto xs = sweep_points(50.0, 2.0, 3, 0.5);
    REQUIRE(xs.size() == 3);
    CHECK(xs[0] == 50.5);
    CHECK(xs[2] == 200.5);
    const auto plain = sweep_points(10.0, 3.0, 2);
    CHECK(plain[1] == doctest::Approx(30.0));
}

TEST_CASE("sweep rows carry audit results") {
    const SweepRow r = evaluate_point(50.5);
    CHECK(r.ok);
    CHECK(r.violations == 0);
    CHECK(r.fallback_events == 0);
    const SweepRow n = evaluate_naive(50.5);
    CHECK(n.waste == doctest::Approx(50.25));
    const SweepRow bad = evaluate_point(3.0);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.error.empty());
}
