#include "doctest.h"

#include "cyldec/error.hpp"
#include "cyldec/polygons.hpp"
#include "fixtures.hpp"

#include <random>

using namespace cyldec;

namespace {

CylinderSurface sample(int k) {
    const auto& es = fixture::h22().entries;
    const auto& e = es[k % es.size()];
    int m = static_cast<int>(e.diagram.pairing.size());
    std::vector<QuadNum> h, t;
    for (int i = 0; i < m; ++i) {
        h.push_back(QuadNum(Rational(2 + i, 3)));
        t.push_back(QuadNum(Rational(i, 4)));
    }
    return build_surface(e.diagram, h, t);
}

} // namespace

TEST_CASE("polygons glue consistently and keep the area") {
    for (int k = 0; k < 10; ++k) {
        CylinderSurface s = sample(k);
        PolygonSurface p = to_polygons(s);
        CHECK_NOTHROW(validate_polygons(p));
        CHECK(area(p) == area(s));
        CHECK(p.polys.size() == static_cast<std::size_t>(s.cylinder_count()));
        auto vs = vertex_singularities(s);
        REQUIRE(vs.size() == p.polys.size());
        for (std::size_t q = 0; q < vs.size(); ++q)
            CHECK(vs[q].size() == p.polys[q].v.size());
    }
}

TEST_CASE("horizontal decomposition of the polygons gives the surface back") {
    for (int k = 0; k < 10; ++k) {
        CylinderSurface s = sample(k);
        auto r = horizontal_decomposition(to_polygons(s));
        REQUIRE(r);
        CHECK(translation_equivalent(*r, s));
        auto h = decompose_direction(to_polygons(s), {QuadNum(1), QuadNum(0)});
        REQUIRE(h);
        CHECK(translation_equivalent(*h, s));
    }
}

TEST_CASE("identity and minus identity") {
    CylinderSurface s = sample(4);
    PolygonSurface p = to_polygons(s);
    PolygonSurface q = apply_matrix(p, {QuadNum(1), QuadNum(0), QuadNum(0), QuadNum(1)});
    REQUIRE(q.polys.size() == p.polys.size());
    for (std::size_t k = 0; k < p.polys.size(); ++k)
        for (std::size_t j = 0; j < p.polys[k].v.size(); ++j)
            CHECK(q.polys[k].v[j] == p.polys[k].v[j]);
    auto r = horizontal_decomposition(apply_matrix(p, {QuadNum(-1), QuadNum(0), QuadNum(0), QuadNum(-1)}));
    REQUIRE(r);
    CHECK(translation_equivalent(*r, rotate_pi(s)));
    CHECK_THROWS_AS(apply_matrix(p, {QuadNum(1), QuadNum(0), QuadNum(0), QuadNum(-1)}), Error);
}

TEST_CASE("horocycle shear equals twisting by s mu") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 9);
    for (int k = 0; k < 10; ++k) {
        CylinderSurface s = sample(k);
        QuadNum sh(Rational(num(rng), den(rng)));
        auto r = horizontal_decomposition(apply_matrix(to_polygons(s), {QuadNum(1), sh, QuadNum(0), QuadNum(1)}));
        REQUIRE(r);
        std::vector<QuadNum> x;
        for (const auto& c : s.cylinders)
            x.push_back(sh * c.h / c.c);
        CHECK(translation_equivalent(*r, twist_deform(s, x)));
    }
}

TEST_CASE("diagonal flow scales lengths") {
    CylinderSurface s = sample(2);
    auto r = horizontal_decomposition(apply_matrix(to_polygons(s), {QuadNum(2), QuadNum(0), QuadNum(0), QuadNum(Rational(1, 2))}));
    REQUIRE(r);
    CHECK(r->cylinder_count() == s.cylinder_count());
    CHECK(area(*r) == area(s));
    std::vector<QuadNum> a, b;
    for (const auto& c : r->cylinders)
        a.push_back(c.c);
    for (const auto& c : s.cylinders)
        b.push_back(2 * c.c);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
}

TEST_CASE("vertical rays on a square-tiled surface") {
    // unit metric, zero twists: every vertical separatrix closes up
    const auto& e = fixture::h22().entries.front();
    CylinderSurface s = build_surface(e.diagram);
    auto v = decompose_direction(to_polygons(s), {QuadNum(0), QuadNum(1)});
    REQUIRE(v);
    CHECK(area(*v) == area(s));
    CHECK(stratum_signature(*v).kappa == std::vector<int>{2, 2});
    auto ray = trace_ray(to_polygons(s), 0, 0, {QuadNum(0), QuadNum(1)});
    REQUIRE(ray);
    CHECK(ray->length > QuadNum(0));
    CHECK(ray->length.is_rational());
}

TEST_CASE("irrational direction on a square-tiled surface is not periodic") {
    CylinderSurface s = build_surface(fixture::h22().entries.front().diagram);
    auto v = decompose_direction(to_polygons(s), {QuadNum(1), QuadNum::sqrt(2)}, 200);
    CHECK_FALSE(v);
}

TEST_CASE("Rel surgery past a wall keeps area and stratum") {
    for (int k = 0; k < 10; ++k) {
        CylinderSurface s = sample(k);
        INFO("sample " << k << "\n" << format_surface(s));
        CylinderSurface r = rel_surgery(s, {QuadNum(Rational(1, 7)), QuadNum(3)}, 2000);
        CHECK(area(r) == area(s));
        CHECK(stratum_signature(r).kappa == std::vector<int>{2, 2});
        // small moves agree with the cylinder formula
        QuadNum eps(Rational(1, 100));
        CHECK(translation_equivalent(rel_surgery(s, {QuadNum(0), eps}), rel_deform(s, eps, RelAxis::Imaginary)));
        CHECK(translation_equivalent(rel_surgery(s, {eps, QuadNum(0)}), rel_deform(s, eps, RelAxis::Real)));
    }
}
