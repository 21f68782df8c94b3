// One PASS/FAIL line per acceptance criterion.  Exit status is nonzero when
// any criterion fails.

#include "cyldec/cli.hpp"
#include "cyldec/constraints.hpp"
#include "cyldec/enumeration.hpp"
#include "cyldec/polygons.hpp"
#include "oracles.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace cyldec;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

std::string golden_path(const std::string& name) { return std::string(CYLDEC_GOLDEN_DIR) + "/" + name; }

std::vector<GoldenEntry> golden(const std::string& name) {
    std::ifstream in(golden_path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_golden(ss.str());
}

Perm perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Perm p(n);
    for (int i = 0; i < n; ++i)
        p[i] = i;
    for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k)
            p[c[k] - 1] = c[(k + 1) % c.size()] - 1;
    return p;
}

// Types up to reversal, as a set of unordered {type, reversed type} pairs.
std::set<std::set<MinimalType>> up_to_reversal(const std::vector<MinimalType>& ts) {
    std::set<std::set<MinimalType>> out;
    for (const auto& t : ts)
        out.insert({t, reversed_type(t)});
    return out;
}

const TypeTally* tally(const Classification& c, const std::vector<MinimalType>& types) {
    for (const auto& t : c.tallies)
        if (t.types == types)
            return &t;
    return nullptr;
}

Outcome criterion1() {
    Outcome o;
    auto t3 = enumerate_types(3, true);
    std::vector<MinimalType> want3 = {canonical_type(perm_from_cycles(3, {})),
                                      canonical_type(perm_from_cycles(3, {{1, 2, 3}})),
                                      canonical_type(perm_from_cycles(3, {{1, 2}}))};
    o.require(t3.size() == 3, "n=3: " + std::to_string(t3.size()) + " types");
    o.require(up_to_reversal(t3) == up_to_reversal(want3), "n=3 type set differs");
    auto t4 = enumerate_types(4, true);
    std::vector<MinimalType> want4 = {canonical_type(perm_from_cycles(4, {{2, 4, 3}})),
                                      canonical_type(perm_from_cycles(4, {{2, 4}})),
                                      canonical_type(perm_from_cycles(4, {{2, 3, 4}})),
                                      canonical_type(perm_from_cycles(4, {{1, 3}, {2, 4}})),
                                      canonical_type(perm_from_cycles(4, {}))};
    o.require(t4.size() == 5, "n=4: " + std::to_string(t4.size()) + " types");
    o.require(up_to_reversal(t4) == up_to_reversal(want4), "n=4 type set differs");
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto c = classify_stratum(parse_profile("3,1"), {true, true, 1});
    // the order-one component is forced by the balance of components
    auto find = [&](const Perm& f) -> const TypeTally* {
        auto t = canonical_type(f);
        for (const auto& cand : c.tallies)
            if (cand.types[0] == t || cand.types[0] == reversed_type(t))
                return &cand;
        return nullptr;
    };
    const TypeTally* t16 = find(perm_from_cycles(4, {{2, 4, 3}}));
    o.require(t16 != nullptr, "type (1,6) missing");
    if (t16) {
        o.require(t16->pairings == 24, "(1,6): " + std::to_string(t16->pairings) + " pairings");
        o.require(t16->infeasible == 18, "(1,6): " + std::to_string(t16->infeasible) + " infeasible");
        o.require(t16->feasible == 6, "(1,6): " + std::to_string(t16->feasible) + " feasible");
        o.require(t16->classes == 3, "(1,6): " + std::to_string(t16->classes) + " classes");
        Prediagram p;
        {
            std::vector<Prediagram> parts;
            for (const auto& ty : t16->types)
                parts.push_back(component_from_type(ty));
            p = disjoint_union(parts);
        }
        for (const auto& ic : t16->infeasible_cases)
            o.require(verify_witness(pairing_equalities(p, ic.pairing), edge_pair_count(p), ic.certificate),
                      "(1,6): certificate does not verify");
    }
    std::vector<std::pair<Perm, int>> others = {{perm_from_cycles(4, {{2, 4}}), 2},
                                                {perm_from_cycles(4, {{2, 3, 4}}), 1},
                                                {perm_from_cycles(4, {{1, 3}, {2, 4}}), 1}};
    for (const auto& [f, want] : others) {
        const TypeTally* t = find(f);
        o.require(t && t->classes == want, "type " + type_cycles(canonical_type(f)) + ": expected " +
                                               std::to_string(want) + " classes");
    }
    o.require(c.entries.size() == 7, std::to_string(c.entries.size()) + " classes in total");
    auto cmp = compare_to_golden(c, golden("h31.txt"));
    o.require(cmp.ok(), "golden comparison: " + cmp.format());
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto c = classify_stratum(parse_profile("2,2"), {true, true, 1});
    auto t = canonical_type(perm_from_cycles(3, {{2, 3}}));
    const TypeTally* t33 = tally(c, {t, t});
    o.require(t33 != nullptr, "type (3,3) missing");
    if (t33) {
        Prediagram p = disjoint_union({component_from_type(t), component_from_type(t)});
        // disconnected exactly when the positive components of the first zero
        // are paired with its own negative components
        auto comps = cylinder_components(p);
        auto orbit = sigma_orbit_index(p);
        std::set<Pairing> expect_disc;
        for (const auto& pr : enumerate_pairings(p)) {
            bool closed = true;
            for (auto [a, b] : pr)
                if ((orbit[comps[a].edges[0]] == 0) != (orbit[comps[b].edges[0]] == 0))
                    closed = false;
            if (closed)
                expect_disc.insert(pr);
        }
        std::set<Pairing> got(t33->disconnected_cases.begin(), t33->disconnected_cases.end());
        o.require(t33->disconnected == 4 && got == expect_disc, "(3,3): disconnected pairings differ");
        o.require(t33->infeasible == 13, "(3,3): " + std::to_string(t33->infeasible) + " infeasible");
        for (const auto& ic : t33->infeasible_cases)
            o.require(verify_witness(pairing_equalities(p, ic.pairing), edge_pair_count(p), ic.certificate),
                      "(3,3): certificate does not verify");
    }
    auto cmp = compare_to_golden(c, golden("h22.txt"));
    std::map<std::string, int> counts(cmp.computed_counts.begin(), cmp.computed_counts.end());
    o.require(counts["odd"] == 4 && counts["hyp"] == 3,
              "components: " + std::to_string(counts["odd"]) + " odd / " + std::to_string(counts["hyp"]) + " hyp");
    o.require(cmp.ok(), "golden comparison:\n" + cmp.format());
    return o;
}

Outcome criterion4() {
    Outcome o;
    for (const auto& g : golden("h22.txt")) {
        CylinderSurface s = build_surface(g.diagram);
        int lib = spin_parity(s), ref = oracle::spin_by_majority(s);
        o.require(lib == ref, g.comment + ": library and oracle disagree");
        int want = g.component == "odd" ? 1 : 0;
        o.require(ref == want, g.comment + ": spin " + (ref ? "odd" : "even") + ", listed as " + g.component);
        bool hyp = false;
        for (const auto& inv : neg_involutions(s))
            if (inv.quotient_genus == 0 && inv.swaps_singularities)
                hyp = true;
        o.require(hyp == (g.component == "hyp"),
                  g.comment + ": hyperelliptic involution " + (hyp ? "found" : "not found"));
    }
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> small(1, 5);
    int checked = 0;
    for (const char* k : {"2,2", "3,1"}) {
        auto c = classify_stratum(parse_profile(k), {false, false, 1});
        for (const auto& e : c.entries) {
            auto ms = mixed_structure(build_surface(e.diagram));
            QuadNum plus(0), minus(0);
            for (int i : ms.plus)
                plus += build_surface(e.diagram).cylinders[i].c;
            for (int i : ms.minus)
                minus += build_surface(e.diagram).cylinders[i].c;
            o.require(plus == minus, std::string(k) + " class " + std::to_string(e.class_id) + ": unbalanced");
            for (int r = 0; r < 10; ++r) {
                SeparatrixDiagram d = e.diagram;
                d.metric = oracle::random_metric(e.diagram, rng);
                int m = static_cast<int>(d.pairing.size());
                std::vector<QuadNum> h, t;
                CylinderSurface base = build_surface(d);
                for (int i = 0; i < m; ++i) {
                    h.push_back(QuadNum(Rational(small(rng), small(rng))));
                    t.push_back(base.cylinders[i].c * QuadNum(Rational(small(rng) - 1, 5)));
                }
                auto back = horizontal_diagram(build_surface(d, h, t));
                o.require(diagrams_isomorphic(back, d, IsoLevel::ExactMetric),
                          std::string(k) + " class " + std::to_string(e.class_id) + ": round trip fails");
                ++checked;
            }
        }
    }
    o.require(checked > 0, "nothing checked");
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 7);
    auto cls = classify_stratum(parse_profile("2,2"), {true, true, 1});
    const auto& e = cls.entries[4];
    CylinderSurface s = build_surface(e.diagram, {QuadNum(1), QuadNum(Rational(3, 2)), QuadNum(2), QuadNum(1)},
                                      {QuadNum(0), QuadNum(Rational(1, 3)), QuadNum(0), QuadNum(Rational(1, 2))});
    auto ms = mixed_structure(s);
    for (int r = 0; r < 10; ++r) {
        QuadNum sh(Rational(num(rng), den(rng)));
        auto horo = horizontal_decomposition(apply_matrix(to_polygons(s), {QuadNum(1), sh, QuadNum(0), QuadNum(1)}));
        std::vector<QuadNum> x;
        for (const auto& mu : ms.mu)
            x.push_back(sh * mu);
        o.require(horo && translation_equivalent(*horo, twist_deform(s, x)),
                  "horocycle by " + to_string(sh) + " differs from the twist");
    }
    // Rel: additivity and invariant circumferences, inside the domain
    for (RelAxis axis : {RelAxis::Real, RelAxis::Imaginary}) {
        QuadNum a(Rational(1, 7)), b(Rational(-1, 11));
        auto two = rel_deform(rel_deform(s, a, axis), b, axis);
        auto one = rel_deform(s, a + b, axis);
        o.require(translation_equivalent(two, one), "Rel is not additive");
        for (int i = 0; i < s.cylinder_count(); ++i)
            o.require(one.cylinders[i].c == s.cylinders[i].c, "Rel changes a circumference");
    }
    for (int r = 0; r < 5; ++r) {
        std::vector<QuadNum> x;
        for (int i = 0; i < s.cylinder_count(); ++i)
            x.push_back(QuadNum(num(rng)));
        o.require(translation_equivalent(twist_deform(s, x), s), "integer twist changes the surface");
    }
    return o;
}

const CylinderSurface* snapshot(const ScenarioResult& r, const std::string& name) {
    for (std::size_t i = 0; i < r.surfaces.size(); ++i)
        if (r.surface_names[i] == name)
            return &r.surfaces[i];
    return nullptr;
}

Outcome criterion7() {
    Outcome o;
    auto r = replay_scenario("h22_theorem");
    const CylinderSurface* X = snapshot(r, "X_B twisted");
    o.require(X != nullptr, "final surface missing");
    if (!X)
        return o;
    auto V = decompose_direction(to_polygons(*X), Vec2{QuadNum(0), QuadNum(1)});
    o.require(V && V->cylinder_count() == 3, "vertical direction is not a 3-cylinder decomposition");
    if (V) {
        bool dark = false;
        for (const auto& cy : V->cylinders)
            if (cy.c == X->cylinders[0].h + X->cylinders[1].h && cy.h == X->cylinders[0].c)
                dark = true;
        o.require(dark, "no vertical cylinder of circumference h1+h2 and height c1");
    }
    auto inv = detect_neg_involution(*X);
    o.require(inv && inv->quotient_genus == 1, "no involution with quotient genus 1");
    return o;
}

Outcome criterion8() {
    Outcome o;
    auto r = replay_scenario("h31_theorem");
    const CylinderSurface* X = snapshot(r, "X (lA = 1)");
    const CylinderSurface* Y = snapshot(r, "Y (lA = 1)");
    o.require(X && Y, "scenario surfaces missing");
    if (!X || !Y)
        return o;
    for (int i : {1, 2}) {
        bool found = false;
        for (const auto& cy : Y->cylinders)
            if (cy.c == X->cylinders[i].c)
                found = true;
        o.require(found, "circumference of cylinder " + std::to_string(i + 1) + " not found on Y");
    }
    o.require(field_generators(*Y).degree == 1, "field degree of Y is not 1");
    o.require(check_notmixed(*Y).verdict != Verdict::Violated, "non-mixed check violated on Y");
    return o;
}

Outcome criterion9() {
    Outcome o;
    QuadNum r2 = QuadNum::sqrt(2);
    // decomposition B shape: cylinders 1 and 4 are equivalent, c1 = c4, h1 != h4
    CylinderSurface s;
    s.D = 2;
    s.lengths = {r2, QuadNum(1), QuadNum(1), r2, QuadNum(1), QuadNum(1)};
    s.cylinders = {{QuadNum(1), QuadNum(1), QuadNum(0), {2}, {4}},
                   {2 + r2, QuadNum(1), QuadNum(0), {3, 4, 5}, {0, 2, 1}},
                   {r2, QuadNum(1), QuadNum(0), {0}, {3}},
                   {QuadNum(1), QuadNum(3), QuadNum(0), {1}, {5}}};
    s = validate_surface(s);
    o.require(v_space(s).d == 2, "synthetic surface is not of degree 2");
    auto res = check_noneq_and_height(s);
    o.require(res.verdict == Verdict::Violated, std::string("verdict ") + verdict_name(res.verdict));
    o.require(!res.witness.empty(), "no witness");
    // independent recomputation: gamma_1 - gamma_4 = 0 but mu_1 - mu_4 != 0
    QuadNum g = QuadNum(1) / s.cylinders[0].c - QuadNum(1) / s.cylinders[3].c;
    QuadNum m = s.cylinders[0].h / s.cylinders[0].c - s.cylinders[3].h / s.cylinders[3].c;
    o.require(g.is_zero() && !m.is_zero(), "oracle does not see the violation");

    // arithmetic metrics: nothing is violated
    for (const char* name : {"h22.txt", "h31.txt"})
        for (const auto& ge : golden(name)) {
            auto rep = check_all(build_surface(ge.diagram));
            for (const auto& ch : rep.checks)
                o.require(ch.verdict != Verdict::Violated, ge.comment + ": " + ch.name + " violated");
        }
    return o;
}

} // namespace

int main() {
    struct Row {
        int id;
        const char* title;
        Outcome (*run)();
    };
    const Row rows[] = {
        {1, "minimal types for n = 3, 4", criterion1},
        {2, "H(3,1) tallies and classes", criterion2},
        {3, "H(2,2) tallies, components and golden list", criterion3},
        {4, "spin labels and hyperelliptic involutions", criterion4},
        {5, "diagram round trip and circumference balance", criterion5},
        {6, "deformation identities", criterion6},
        {7, "H(2,2) scenario", criterion7},
        {8, "H(3,1) scenario", criterion8},
        {9, "constraint engine", criterion9},
    };
    int failed = 0;
    for (const auto& row : rows) {
        Outcome o;
        try {
            o = row.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << row.id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << row.title << ")\n";
        for (const auto& n : o.notes)
            std::cout << "    " << n << "\n";
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
