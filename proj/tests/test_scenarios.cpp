#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace tropcover;

namespace {

/// Default-parameter reports, computed once per process.
const Report& cached(const std::string& name) {
    static std::map<std::string, Report> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, run_scenario(name)).first;
    return it->second;
}

/// Checks whose verdict differs from the expected one, by design of the
/// underlying example.
const std::map<std::string, std::vector<std::string>>& known_reds() {
    static const std::map<std::string, std::vector<std::string>> reds{
        {"hankel", {"the certified images cover P modulo lineality"}},
        {"fourbyfive", {"the 2x2 system for (m35, m45) is solvable on at least 95% of samples"}}};
    return reds;
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& [n, fn] : scenario_registry()) out.push_back(n);
    return out;
}

const Check& require(const Report& r, const std::string& name) {
    const Check* c = r.find(name);
    if (!c) throw std::runtime_error("missing check '" + name + "' in " + r.scenario);
    return *c;
}

}  // namespace

TEST(Registry, KnownNames) {
    EXPECT_EQ(scenario_names(), (std::vector<std::string>{"line", "combination", "singular", "hankel", "rank2", "grassmannian",
                                                         "horn", "curves", "linear", "fourbyfive", "verifier", "roots"}));
    EXPECT_THROW(run_scenario("tropical-donut"), UnknownScenario);
}

TEST(Registry, ParameterValidation) {
    EXPECT_THROW(run_scenario("singular", {{"n", "7"}}), std::invalid_argument);
    EXPECT_THROW(run_scenario("singular", {{"n", "two"}}), std::invalid_argument);
    EXPECT_THROW(run_scenario("grassmannian", {{"n", "3"}}), std::invalid_argument);
    EXPECT_THROW(run_scenario("rank2", {{"m", "1"}}), std::invalid_argument);
}

class EveryScenario : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryScenario, VerdictsMatchExpectations) {
    const auto& r = cached(GetParam());
    EXPECT_EQ(r.scenario, GetParam());
    ASSERT_FALSE(r.checks.empty());
    std::vector<std::string> red;
    for (const auto& c : r.checks)
        if (!c.met()) red.push_back(c.name);
    auto it = known_reds().find(GetParam());
    EXPECT_EQ(red, it == known_reds().end() ? std::vector<std::string>{} : it->second);
    if (it != known_reds().end()) {
        EXPECT_FALSE(r.discrepancies.empty());
    }
}

TEST_P(EveryScenario, ReportSchema) {
    const auto& r = cached(GetParam());
    auto j = r.to_json();
    EXPECT_EQ(j.at("schema"), "tropcover/1");
    EXPECT_EQ(j.at("scenario"), GetParam());
    EXPECT_EQ(j.at("seed"), 1u);
    EXPECT_EQ(j.at("verdict"), r.ok() ? "ok" : "mismatch");
    EXPECT_EQ(j.at("checks").size(), r.checks.size());
    EXPECT_FALSE(j.contains("timings"));
    // the report survives a round trip through text
    EXPECT_EQ(json::parse(j.dump()), j);
}

TEST_P(EveryScenario, FundamentalContainmentNeverFails) {
    const auto& r = cached(GetParam());
    int containment = 0;
    for (const auto& c : r.checks)
        if (c.name.rfind("fundamental containment", 0) == 0) {
            ++containment;
            EXPECT_TRUE(c.expected);
            EXPECT_TRUE(c.observed) << c.name << ": " << c.detail;
            EXPECT_NE(c.detail.find("50/50"), std::string::npos) << c.name << ": " << c.detail;
        }
    // roots has no variety X to contain anything
    if (GetParam() == "roots")
        EXPECT_EQ(containment, 0);
    else
        EXPECT_GT(containment, 0);
}

INSTANTIATE_TEST_SUITE_P(All, EveryScenario, ::testing::ValuesIn(scenario_names()),
                         [](const auto& info) { return info.param; });

// Determinism.

TEST(Determinism, SameSeedSameBytes) {
    const std::vector<std::pair<std::string, ScenarioParams>> cases{
        {"line", {}}, {"combination", {}}, {"fourbyfive", {{"samples", "20"}}}, {"linear", {{"count", "3"}}}, {"verifier", {}}};
    for (const auto& [name, params] : cases) {
        auto a = run_scenario(name, params, 42), b = run_scenario(name, params, 42);
        EXPECT_EQ(a.to_json().dump(), b.to_json().dump()) << name;
        EXPECT_EQ(a.svg, b.svg) << name;
    }
}

TEST(Determinism, HankelRenderingMatchesCachedRun) {
    auto again = run_scenario("hankel");
    EXPECT_EQ(again.svg, cached("hankel").svg);
    EXPECT_EQ(again.to_json().dump(), cached("hankel").to_json().dump());
}

TEST(Determinism, SeedChangesSampledData) {
    auto a = run_scenario("combination", {}, 1), b = run_scenario("combination", {}, 2);
    EXPECT_NE(a.to_json().dump(), b.to_json().dump());
    EXPECT_TRUE(a.ok() && b.ok());
}

// Scenario specifics.

TEST(LineScenario, WitnessOnTheNorthArm) {
    const auto& r = cached("line");
    EXPECT_TRUE(require(r, "tripod has three maximal rays").met());
    EXPECT_EQ(require(r, "im Trop(phi) covers the tripod").observed, false);
    EXPECT_TRUE(require(r, "im Trop(psi) covers the tripod").observed);
    EXPECT_NE(r.svg.find("<svg"), std::string::npos);
}

TEST(SingularScenario, ThreeByThree) {
    auto r = run_scenario("singular", {{"n", "3"}});
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(require(r, "every maximal cell is horizontal for some projection").observed);
    EXPECT_TRUE(require(r, "covers() confirms every horizontal (cell, projection) pair").observed);
}

TEST(HankelScenario, OneUncoveredConeAndReportedTypos) {
    const auto& r = cached("hankel");
    EXPECT_TRUE(require(r, "exactly one cone is horizontal for neither projection, the one dual to {b, e}").met());
    EXPECT_TRUE(require(r, "certificate for phi o psi is valid with rank 3").met());
    EXPECT_TRUE(require(r, "certificate for phi o psi o iota is valid with rank 3").met());
    EXPECT_TRUE(require(r, "the certified images lie in P").met());
    const auto& cover = require(r, "the certified images cover P modulo lineality");
    EXPECT_TRUE(cover.expected);
    EXPECT_FALSE(cover.observed);
    EXPECT_GE(r.discrepancies.size(), 3u);
    // both panels are present, with the five labelled regions
    for (const char* label : {">a<", ">b<", ">c<", ">d<", ">e<"}) EXPECT_NE(r.svg.find(label), std::string::npos) << label;
}

TEST(FourByFiveScenario, IdentitiesHoldButTheSystemIsDegenerate) {
    const auto& r = cached("fourbyfive");
    EXPECT_TRUE(require(r, "cofactor identity for columns 2345 vanishes on every sample").met());
    EXPECT_TRUE(require(r, "cofactor identity for columns 1345 vanishes on every sample").met());
    EXPECT_TRUE(require(r, "(m35, m45) can move along a line inside the rank-3 locus with the other 18 entries fixed").met());
}

TEST(LinearScenario, CountParameter) {
    auto r = run_scenario("linear", {{"count", "2"}});
    EXPECT_TRUE(r.ok());
    int trivial = 0, puiseux = 0;
    for (const auto& c : r.checks) {
        trivial += c.name.rfind("Yu-Yuster image equals Trop(V): trivial", 0) == 0;
        puiseux += c.name.rfind("Yu-Yuster image equals Trop(V): Puiseux", 0) == 0;
    }
    EXPECT_EQ(trivial, 2);
    EXPECT_EQ(puiseux, 2);
}

// Serialisation.

TEST(Serialize, ComplexRoundTrip) {
    auto c = trop_hypersurface(parse_poly_text("vars: x y\nt*x^2 + x*y + y^2 + 1").first).complex;
    auto back = complex_from_json(to_json(c));
    ASSERT_EQ(back.size(), c.size());
    EXPECT_EQ(back.ambient_dim, c.ambient_dim);
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_TRUE(same_set(back.cells[i], c.cells[i]));
        EXPECT_EQ(back.labels[i], c.labels[i]);
    }
}

TEST(Serialize, MapRoundTrip) {
    for (const auto& phi : {line_psi(), hankel_psi(), rank2_param(2, 2)}) EXPECT_TRUE(map_from_json(to_json(phi)).equals(phi));
}

TEST(Serialize, SinglePolyhedronIsAComplex) {
    Polyhedron p(2, {LinConstraint::le({Rational(-1), Rational(0)}, Rational(0))});
    auto c = complex_from_json(to_json(p));
    ASSERT_EQ(c.size(), 1u);
    EXPECT_TRUE(same_set(c.cells[0], p));
}

TEST(Serialize, MalformedInput) {
    EXPECT_THROW(complex_from_json(json::parse(R"({"cells": []})")), JsonFormatError);
    EXPECT_THROW(complex_from_json(json::parse(R"({"ambient_dim": 2, "cells": [{"constraints": [{"normal": ["1"]}]}]})")),
                 JsonFormatError);
    EXPECT_THROW(map_from_json(json::parse(R"({"domain_dim": 1, "components": [{"num": [[[1, 2], "1"]], "den": []}]})")),
                 JsonFormatError);
}

// Rendering.

TEST(Svg, RejectsOtherDimensions) {
    PolyhedralComplex c(3);
    c.add(Polyhedron(3));
    EXPECT_THROW(render_svg(std::vector<PolyhedralComplex>{c}), std::invalid_argument);
}

TEST(Svg, EmptyComplexDrawsAxes) {
    auto s = render_svg(std::vector<PolyhedralComplex>{PolyhedralComplex(2)});
    EXPECT_EQ(s.rfind("<svg", 0), 0u);
    EXPECT_NE(s.find("</svg>"), std::string::npos);
    std::size_t lines = 0;
    for (auto pos = s.find("<line"); pos != std::string::npos; pos = s.find("<line", pos + 1)) ++lines;
    EXPECT_EQ(lines, 2u);
}

TEST(Svg, TripodDrawsThreeRays) {
    auto tripod = trop_hypersurface(line_equation()).complex;
    auto s = render_svg(std::vector<PolyhedralComplex>{tripod});
    std::size_t lines = 0;
    for (auto pos = s.find("<line"); pos != std::string::npos; pos = s.find("<line", pos + 1)) ++lines;
    EXPECT_EQ(lines, 2u + 3u);
}

TEST(Svg, PlaneSliceOfTheHankelFan) {
    auto x = trop_hypersurface(hankel_determinant().first).complex;
    QMatrix basis{{Rational(-1), Rational(0), Rational(0), Rational(1), Rational(0)},
                  {Rational(-1), Rational(0), Rational(0), Rational(0), Rational(1)}};
    QPoint base{Rational(0), Rational(0), Rational(0), Rational(0), Rational(1)};
    auto slice = plane_slice(x, base, basis);
    EXPECT_EQ(slice.ambient_dim, 2u);
    EXPECT_FALSE(slice.cells.empty());
    for (const auto& c : slice.cells) EXPECT_LE(dimension(c), 2);
}
