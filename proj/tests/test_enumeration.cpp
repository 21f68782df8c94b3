#include "doctest.h"

#include "cyldec/enumeration.hpp"
#include "cyldec/error.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace cyldec;
using fixture::type_of;

namespace {

const TypeTally* tally_with(const Classification& c, const std::vector<MinimalType>& types) {
    for (const auto& t : c.tallies) {
        auto a = t.types, b = types;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b)
            return &t;
    }
    return nullptr;
}

Prediagram assemble(const TypeTally& t) {
    std::vector<Prediagram> parts;
    for (const auto& ty : t.types)
        parts.push_back(component_from_type(ty));
    return disjoint_union(parts);
}

} // namespace

TEST_CASE("strictly positive kernel") {
    auto w = strict_positive_kernel({{1, -1}}, 2);
    CHECK(w.status == FeasibilityStatus::Feasible);
    CHECK(w.lengths[0] == w.lengths[1]);
    CHECK(w.lengths[0] > 0);
    // x1 = x1 + x2
    auto z = strict_positive_kernel({{0, 1}}, 2);
    CHECK(z.status == FeasibilityStatus::Infeasible);
    CHECK(verify_witness({{0, 1}}, 2, z));
    CHECK(z.combination[1] != 0);
    // nothing to satisfy
    CHECK(strict_positive_kernel({}, 3).status == FeasibilityStatus::Feasible);
}

TEST_CASE("type counts") {
    // full lists by brute force over S_n: one type per conjugacy class of the
    // rotation action that gives a single sigma-orbit
    for (int n : {2, 3, 4}) {
        auto full = enumerate_types(n, false);
        auto quot = enumerate_types(n, true);
        std::set<std::set<MinimalType>> pairs;
        for (const auto& t : full)
            pairs.insert({t, reversed_type(t)});
        CHECK(quot.size() == pairs.size());
        for (const auto& t : full)
            CHECK(minimal_type(component_from_type(t)) == t);
    }
    CHECK(enumerate_types(3, true).size() == 3);
    CHECK(enumerate_types(4, true).size() == 5);
    auto t2 = enumerate_types(2, true);
    CHECK(std::any_of(t2.begin(), t2.end(), [](const MinimalType& t) {
        return t == type_of(2, {}) || reversed_type(t) == type_of(2, {});
    }));
}

TEST_CASE("every enumerated prediagram is stable and alternating") {
    for (auto kappa : {std::vector<int>{2, 2}, std::vector<int>{3, 1}, std::vector<int>{4}}) {
        auto ps = enumerate_prediagrams(SingularityProfile::make(kappa));
        CHECK_FALSE(ps.empty());
        for (const auto& p : ps) {
            CHECK(is_stable(p));
            CHECK(is_alternating(p));
        }
    }
}

TEST_CASE("pairing counts") {
    Prediagram single = component_from_type(type_of(3, {{1, 2, 3}}));
    auto cs = cylinder_components(single);
    CHECK(enumerate_pairings(single).size() == 1);
    CHECK(surface_connected(single, enumerate_pairings(single).front()));
    Prediagram t33 = disjoint_union({component_from_type(type_of(3, {{2, 3}})), component_from_type(type_of(3, {{2, 3}}))});
    CHECK(enumerate_pairings(t33).size() == 24);
    Prediagram t23 = disjoint_union({component_from_type(type_of(3, {{2, 3}})), component_from_type(type_of(3, {{1, 2, 3}}))});
    CHECK(enumerate_pairings(t23).size() == 6);
}

TEST_CASE("H(2,2) tallies") {
    const auto& c = fixture::h22();
    auto id3 = type_of(3, {}), c3 = type_of(3, {{1, 2, 3}}), s3 = type_of(3, {{2, 3}});
    const TypeTally* t11 = tally_with(c, {id3, reversed_type(id3)});
    const TypeTally* t33 = tally_with(c, {s3, s3});
    const TypeTally* t23 = tally_with(c, {s3, c3});
    const TypeTally* t22 = tally_with(c, {c3, c3});
    REQUIRE(t11);
    REQUIRE(t33);
    REQUIRE(t23);
    REQUIRE(t22);
    CHECK(t11->classes == 2);
    CHECK(t33->pairings == 24);
    CHECK(t33->disconnected == 4);
    CHECK(t33->infeasible == 13);
    CHECK(t33->classes == 5);
    CHECK(t23->classes == 2);
    CHECK(t22->feasible == 1);
    CHECK(t22->classes == 1);
    CHECK(c.entries.size() == 10);
    // no (1,2) assembly: id and (123) have unequal component counts
    CHECK(tally_with(c, {id3, c3}) == nullptr);
    CHECK(tally_with(c, {reversed_type(id3), c3}) == nullptr);
    // every certificate verifies
    for (const auto& t : c.tallies) {
        Prediagram p = assemble(t);
        for (const auto& ic : t.infeasible_cases)
            CHECK(verify_witness(pairing_equalities(p, ic.pairing), edge_pair_count(p), ic.certificate));
        for (const auto& pr : t.disconnected_cases)
            CHECK_FALSE(surface_connected(p, pr));
    }
}

TEST_CASE("H(3,1) tallies") {
    const auto& c = fixture::h31();
    CHECK(c.entries.size() == 7);
    std::map<std::string, int> comp;
    for (const auto& e : c.entries)
        ++comp[e.component_label];
    CHECK(comp["n/a"] == 7);
    // the tallies count classes before the quotient by -omega
    int classes = 0;
    for (const auto& t : c.tallies)
        classes += t.classes;
    CHECK(classes == 14);
    CHECK(c.removed_by_quotient == 7);
}

TEST_CASE("witness metrics are positive and satisfy the pairing") {
    for (const auto* c : {&fixture::h22(), &fixture::h31()})
        for (const auto& e : c->entries) {
            const auto& p = e.diagram.prediagram;
            CHECK(std::all_of(e.diagram.metric.begin(), e.diagram.metric.end(),
                              [](const QuadNum& x) { return x > QuadNum(0); }));
            auto var = edge_pair_index(p);
            std::vector<Rational> x(edge_pair_count(p));
            for (int k = 0; k < p.size(); ++k)
                x[var[k]] = e.diagram.metric[k].a();
            for (const auto& row : pairing_equalities(p, e.diagram.pairing)) {
                Rational s = 0;
                for (std::size_t j = 0; j < row.size(); ++j)
                    s += row[j] * x[j];
                CHECK(s == 0);
            }
            CHECK(mixed_flags(p, e.diagram.pairing) == e.mixed);
            CHECK(std::any_of(e.mixed.begin(), e.mixed.end(), [](bool b) { return b; }));
        }
}

TEST_CASE("classification does not depend on the thread count") {
    auto one = classify_stratum(SingularityProfile::make({2, 2}), {true, true, 1});
    const auto& many = fixture::h22();
    REQUIRE(one.entries.size() == many.entries.size());
    for (std::size_t i = 0; i < one.entries.size(); ++i) {
        CHECK(format_diagram(one.entries[i].diagram) == format_diagram(many.entries[i].diagram));
        CHECK(one.entries[i].component_label == many.entries[i].component_label);
    }
    CHECK(format_summary(one) == format_summary(many));
}

TEST_CASE("profile parsing") {
    CHECK(parse_profile("3,1").kappa == std::vector<int>{3, 1});
    CHECK(parse_profile("1,3").kappa == std::vector<int>{3, 1});
    CHECK(parse_profile("2,2").genus() == 3);
    CHECK_THROWS_AS(parse_profile("2,x"), Error);
}
