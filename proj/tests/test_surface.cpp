#include "doctest.h"

#include "cyldec/error.hpp"
#include "cyldec/surface.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <random>

using namespace cyldec;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Internal;
}

CylinderSurface torus() { return parse_surface("D=0\nc=1;h=1;t=0;top=[0];bottom=[0]\nl0=1\n"); }

// Class with all four cylinders mixed, spread to generic heights.
CylinderSurface mixed_surface() {
    for (const auto& e : fixture::h22().entries)
        if (e.mixed == std::vector<bool>{true, true, true, true} && e.component_label == "odd") {
            std::vector<QuadNum> h, t;
            int m = static_cast<int>(e.diagram.pairing.size());
            for (int i = 0; i < m; ++i) {
                h.push_back(QuadNum(Rational(3 + i, 2)));
                t.push_back(QuadNum(Rational(1, 3 + i)));
            }
            return build_surface(e.diagram, h, t);
        }
    throw std::runtime_error("no fully mixed odd class");
}

} // namespace

TEST_CASE("stratum of witness surfaces") {
    for (const auto& e : fixture::h22().entries) {
        auto sig = stratum_signature(fixture::witness(e));
        CHECK(sig.kappa == std::vector<int>{2, 2});
        CHECK(sig.genus == 3);
        CHECK(topological_genus(fixture::witness(e)) == 3);
    }
    for (const auto& e : fixture::h31().entries)
        CHECK(stratum_signature(fixture::witness(e)).kappa == std::vector<int>{3, 1});
    CHECK(stratum_signature(fixture::l_shape()).kappa == std::vector<int>{2});
    CHECK(stratum_signature(fixture::l_shape()).genus == 2);
    CHECK(code_of([] { stratum_signature(torus()); }) == ErrorCode::ZeroOrderSingularity);
}

TEST_CASE("build then read back the diagram") {
    std::mt19937 rng(5);
    for (const auto* c : {&fixture::h22(), &fixture::h31()})
        for (const auto& e : c->entries) {
            for (int k = 0; k < 3; ++k) {
                SeparatrixDiagram d = e.diagram;
                d.metric = oracle::random_metric(d, rng);
                int m = static_cast<int>(d.pairing.size());
                std::vector<QuadNum> h, t;
                for (int i = 0; i < m; ++i) {
                    h.push_back(QuadNum(Rational(1 + (i + k) % 3, 2)));
                    t.push_back(QuadNum(Rational(k, 5)));
                }
                CylinderSurface s = build_surface(d, h, t);
                CHECK(is_stable(s));
                CHECK(diagrams_isomorphic(horizontal_diagram(s), d));
                // horizontal saddle connections with positive period are the positive edges
                SeparatrixDiagram back = horizontal_diagram(s);
                for (int q = 0; q < s.saddle_count(); ++q) {
                    CHECK(back.prediagram.positive[2 * q]);
                    CHECK_FALSE(back.prediagram.positive[2 * q + 1]);
                }
            }
        }
}

TEST_CASE("surface text round trip and validation") {
    CylinderSurface s = mixed_surface();
    CylinderSurface r = parse_surface(format_surface(s));
    CHECK(format_surface(r) == format_surface(s));
    CHECK(translation_equivalent(r, s));
    CHECK(code_of([] { parse_surface("D=0\nc=2;h=1;t=0;top=[0];bottom=[0]\nl0=1\n"); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([] { parse_surface("D=0\nc=1;h=0;t=0;top=[0];bottom=[0]\nl0=1\n"); }) == ErrorCode::NonPositiveHeight);
    CHECK(code_of([] { parse_surface("c=1;h=1;t=0;top=[0];bottom=[0]\nl0=1\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("twist deformation") {
    CylinderSurface s = mixed_surface();
    int m = s.cylinder_count();
    CHECK(format_surface(twist_deform(s, std::vector<QuadNum>(m, QuadNum(0)))) == format_surface(s));
    // integer twists are Dehn twists
    CHECK(translation_equivalent(twist_deform(s, {QuadNum(1), QuadNum(-2), QuadNum(0), QuadNum(3)}), s));
    CHECK_FALSE(translation_equivalent(twist_deform(s, {QuadNum(Rational(1, 7)), QuadNum(0), QuadNum(0), QuadNum(0)}), s));
    CHECK(code_of([&] { twist_deform(s, {QuadNum(1)}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("Rel deformation") {
    CylinderSurface s = mixed_surface();
    auto ms = mixed_structure(s);
    CHECK(ms.sing1 >= 0);
    CHECK(ms.sing2 >= 0);
    CHECK(format_surface(rel_deform(s, QuadNum(0), RelAxis::Imaginary)) == format_surface(s));
    QuadNum a(Rational(1, 5)), b(Rational(1, 7));
    for (RelAxis ax : {RelAxis::Imaginary, RelAxis::Real}) {
        CylinderSurface ab = rel_deform(rel_deform(s, a, ax), b, ax);
        CHECK(translation_equivalent(ab, rel_deform(s, a + b, ax)));
        CHECK(translation_equivalent(rel_deform(rel_deform(s, a, ax), -a, ax), s));
    }
    CylinderSurface up = rel_deform(s, a, RelAxis::Imaginary);
    for (int i = 0; i < s.cylinder_count(); ++i) {
        CHECK(up.cylinders[i].c == s.cylinders[i].c);
        CHECK(up.cylinders[i].h == s.cylinders[i].h + a * QuadNum(ms.delta[i]));
    }
    // past the wall without surgery
    CHECK(code_of([&] { rel_deform(s, QuadNum(10), RelAxis::Imaginary); }) == ErrorCode::HeightCollapse);
    CHECK(code_of([] { rel_deform(fixture::l_shape(), QuadNum(Rational(1, 2)), RelAxis::Real); }) ==
          ErrorCode::NotTwoSingularities);
}

TEST_CASE("spin parity agrees with the majority oracle") {
    std::mt19937 rng(9);
    for (const auto& e : fixture::h22().entries) {
        CylinderSurface s = fixture::witness(e);
        int p = spin_parity(s);
        CHECK(p == oracle::spin_by_majority(s));
        SeparatrixDiagram d = e.diagram;
        d.metric = oracle::random_metric(d, rng);
        CylinderSurface r = build_surface(d);
        CHECK(spin_parity(r) == p);
        // invariant along twists
        std::vector<QuadNum> x;
        for (int i = 0; i < r.cylinder_count(); ++i)
            x.push_back(QuadNum(Rational(i + 1, 3)));
        CHECK(spin_parity(twist_deform(r, x)) == p);
        if (e.component_label != "hyp")
            CHECK(p == (e.component_label == "odd" ? 1 : 0));
    }
    CylinderSurface s = mixed_surface();
    CHECK(spin_parity(rel_deform(s, QuadNum(Rational(1, 4)), RelAxis::Imaginary)) == spin_parity(s));
    CHECK(spin_parity(rel_deform(s, QuadNum(Rational(1, 4)), RelAxis::Real)) == spin_parity(s));
}

TEST_CASE("rotation by pi and involutions") {
    for (const auto& e : fixture::h22().entries) {
        CylinderSurface s = fixture::witness(e);
        CHECK(translation_equivalent(rotate_pi(rotate_pi(s)), s));
        CylinderSurface rev = build_surface(reverse_orientation(e.diagram));
        CHECK(diagrams_isomorphic(horizontal_diagram(rotate_pi(s)), horizontal_diagram(rev)));
        for (const auto& inv : neg_involutions(s)) {
            // Riemann-Hurwitz: 2g - 2 = 2 (2g' - 2) + F
            CHECK(2 * 3 - 2 == 2 * (2 * inv.quotient_genus - 2) + inv.fixed_points);
            for (int i = 0; i < s.cylinder_count(); ++i)
                CHECK(inv.cylinder[inv.cylinder[i]] == i);
        }
        bool hyp = false;
        for (const auto& inv : neg_involutions(s))
            hyp = hyp || (inv.quotient_genus == 0 && inv.swaps_singularities);
        CHECK(hyp == (e.component_label == "hyp"));
    }
    // the torus has -Id with four fixed points
    auto inv = detect_neg_involution(torus());
    REQUIRE(inv);
    CHECK(inv->quotient_genus == 0);
    CHECK(inv->fixed_points == 4);
}

TEST_CASE("generic twist breaks the involution") {
    // a surface with -Id, then one twist perturbed
    for (const auto& e : fixture::h22().entries) {
        CylinderSurface s = fixture::witness(e);
        if (neg_involutions(s).empty())
            continue;
        std::vector<QuadNum> x(s.cylinder_count(), QuadNum(0));
        x[0] = QuadNum(Rational(1, 7));
        CylinderSurface t = twist_deform(s, x);
        bool fixes0 = false;
        for (const auto& inv : neg_involutions(s))
            fixes0 = fixes0 || inv.cylinder[0] == 0;
        if (!fixes0)
            CHECK(neg_involutions(t).empty());
    }
}
