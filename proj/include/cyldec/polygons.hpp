#pragma once

// Surfaces as convex polygons glued along parallel edges, and separatrix
// tracing on them.

#include "cyldec/surface.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cyldec {

struct Vec2 {
    QuadNum x, y;
};
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(const QuadNum& s, const Vec2& a) { return {s * a.x, s * a.y}; }
inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
inline QuadNum cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline QuadNum dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

// Row-major [[a, b], [c, d]].
struct Matrix2 {
    QuadNum a, b, c, d;
    QuadNum det() const { return a * d - b * c; }
    Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
};

// Vertices counterclockwise.  Edge k runs v[k] -> v[k+1]; glue[k] = (q, l)
// means it is identified with edge l of polygon q, whose vector is opposite.
// Every vertex is a singularity (or marked point).
struct Polygon {
    std::vector<Vec2> v;
    std::vector<std::pair<int, int>> glue;
};

struct PolygonSurface {
    std::int64_t D = 0;
    std::vector<Polygon> polys;
};

// One parallelogram per cylinder; the two slanted sides are glued together.
PolygonSurface to_polygons(const CylinderSurface& s);
void validate_polygons(const PolygonSurface& p);
QuadNum area(const PolygonSurface& p);

PolygonSurface apply_matrix(const PolygonSurface& p, const Matrix2& M);

// Traces every horizontal separatrix.  Empty when some separatrix needs more
// than step_cap polygon crossings (the direction may not be periodic).
std::optional<CylinderSurface> horizontal_decomposition(const PolygonSurface& p, int step_cap = 10000);

// Brings d to the positive horizontal axis with [[dx, dy], [-dy, dx]] and
// decomposes.  For unit axis directions this is an exact rotation; otherwise
// all lengths come out scaled by |d|.
std::optional<CylinderSurface> decompose_direction(const PolygonSurface& p, const Vec2& d, int step_cap = 10000);

struct RayEnd {
    int poly = -1, vertex = -1;
    QuadNum length; // in units of |dir|
};
// Follows the ray leaving vertex `vertex` of polygon `poly` in direction dir
// (the corner is found by turning around the vertex) up to the next vertex.
std::optional<RayEnd> trace_ray(const PolygonSurface& p, int poly, int vertex, const Vec2& dir, int step_cap = 10000);
// Singularity (as numbered by singularities()) at each vertex of to_polygons(s).
std::vector<std::vector<int>> vertex_singularities(const CylinderSurface& s);

// Moves the second singularity by w relative to the first (see
// mixed_structure for which one is second), through triangle flips, then
// recomputes the horizontal cylinders.
CylinderSurface rel_surgery(const CylinderSurface& s, const Vec2& w, int step_cap = 10000);

} // namespace cyldec
