#include "cyldec/polygons.hpp"

#include "cyldec/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace cyldec {

namespace {

bool same_direction(const Vec2& a, const Vec2& d) { return cross(a, d).is_zero() && dot(a, d).sign() > 0; }

int prev_index(int k, int n) { return (k + n - 1) % n; }

// Ray d from vertex k lies in the half-open sector [v[k+1]-v[k], v[k-1]-v[k]).
bool in_sector(const Polygon& P, int k, const Vec2& d) {
    int n = static_cast<int>(P.v.size());
    Vec2 u = P.v[(k + 1) % n] - P.v[k];
    Vec2 w = P.v[prev_index(k, n)] - P.v[k];
    if (same_direction(u, d))
        return true;
    return cross(u, d).sign() > 0 && cross(d, w).sign() > 0;
}

// The corner counterclockwise after (p, k) around the same vertex.
std::pair<int, int> next_corner(const PolygonSurface& S, int p, int k) {
    const auto& P = S.polys[p];
    return P.glue[prev_index(k, static_cast<int>(P.v.size()))];
}

Vec2 through_edge(const PolygonSurface& S, int p, int k, const Vec2& X, int& q) {
    auto [qq, l] = S.polys[p].glue[k];
    q = qq;
    const auto& Q = S.polys[qq];
    return Q.v[(l + 1) % Q.v.size()] + (X - S.polys[p].v[k]);
}

struct Exit {
    int edge = -1;
    QuadNum lambda;
    int vertex = -1; // polygon vertex hit, if any
};

Exit exit_point(const Polygon& P, const Vec2& X, const Vec2& d) {
    int n = static_cast<int>(P.v.size());
    Exit best;
    for (int k = 0; k < n; ++k) {
        const Vec2& a = P.v[k];
        Vec2 e = P.v[(k + 1) % n] - a;
        QuadNum den = cross(d, e);
        if (den.is_zero())
            continue;
        QuadNum lam = cross(a - X, e) / den;
        QuadNum mu = cross(a - X, d) / den;
        if (lam.sign() <= 0 || mu.sign() < 0 || mu > QuadNum(1))
            continue;
        if (best.edge < 0 || lam < best.lambda) {
            best.edge = k;
            best.lambda = lam;
            best.vertex = mu.is_zero() ? k : mu == QuadNum(1) ? (k + 1) % n : -1;
        }
    }
    if (best.edge < 0)
        throw Error(ErrorCode::Internal, "ray leaves no edge of a polygon");
    return best;
}

std::pair<int, int> arrival_corner(const PolygonSurface& S, int p, int j, const Vec2& back) {
    if (in_sector(S.polys[p], j, back))
        return {p, j};
    auto nc = next_corner(S, p, j);
    if (in_sector(S.polys[nc.first], nc.second, back))
        return nc;
    throw Error(ErrorCode::Internal, "arriving ray outside its corner");
}

// Piece of a horizontal saddle connection inside one polygon, left to right.
struct Piece {
    int saddle;
    int poly;
    Vec2 a, b;
    QuadNum offset;
    bool up_inside;
};

struct Shot {
    bool ok = false;
    int saddle = -1;
    QuadNum beta, height;
};

Shot shoot_up(const PolygonSurface& S, const std::vector<Piece>& pieces,
              const std::vector<std::vector<int>>& by_poly, const std::vector<QuadNum>& lengths, int poly, Vec2 X,
              int step_cap) {
    const Vec2 up{QuadNum(0), QuadNum(1)};
    QuadNum dist(0);
    int cur = poly;
    for (int step = 0; step <= step_cap; ++step) {
        Exit ex = exit_point(S.polys[cur], X, up);
        int hit = -1;
        QuadNum hit_lam;
        for (int id : by_poly[cur]) {
            const auto& pc = pieces[id];
            QuadNum lam = pc.a.y - X.y;
            if (lam.sign() <= 0 || X.x < pc.a.x || X.x > pc.b.x)
                continue;
            if (hit < 0 || lam < hit_lam) {
                hit = id;
                hit_lam = lam;
            }
        }
        if (hit >= 0 && hit_lam <= ex.lambda) {
            const auto& pc = pieces[hit];
            Shot out;
            out.saddle = pc.saddle;
            out.beta = pc.offset + (X.x - pc.a.x);
            out.height = dist + hit_lam;
            out.ok = out.beta.sign() > 0 && out.beta < lengths[pc.saddle];
            return out;
        }
        if (ex.vertex >= 0)
            return {};
        dist += ex.lambda;
        Vec2 Y{X.x, X.y + ex.lambda};
        int q;
        X = through_edge(S, cur, ex.edge, Y, q);
        cur = q;
    }
    throw Error(ErrorCode::Internal, "vertical shot did not reach a saddle connection");
}

} // namespace

PolygonSurface to_polygons(const CylinderSurface& s) {
    PolygonSurface out;
    out.D = s.D;
    int m = s.cylinder_count();
    // (cylinder, top/bottom, index in word) -> polygon edge
    std::vector<int> top_edge_of(s.saddle_count()), bottom_edge_of(s.saddle_count());
    std::vector<int> top_poly(s.saddle_count()), bottom_poly(s.saddle_count());
    for (int i = 0; i < m; ++i) {
        const auto& cy = s.cylinders[i];
        int nb = static_cast<int>(cy.bottom.size()), nt = static_cast<int>(cy.top.size());
        Polygon P;
        QuadNum x(0);
        P.v.push_back({x, QuadNum(0)});
        for (int k = 0; k < nb; ++k) {
            x += s.lengths[cy.bottom[k]];
            P.v.push_back({x, QuadNum(0)});
            bottom_edge_of[cy.bottom[k]] = k;
            bottom_poly[cy.bottom[k]] = i;
        }
        std::vector<QuadNum> tx{cy.t};
        for (int id : cy.top)
            tx.push_back(tx.back() + s.lengths[id]);
        for (int j = nt; j >= 0; --j)
            P.v.push_back({tx[j], cy.h});
        // edge nb+1+(nt-1-j) runs T_{j+1} -> T_j and carries top[j]
        for (int j = 0; j < nt; ++j) {
            top_edge_of[cy.top[j]] = nb + 1 + (nt - 1 - j);
            top_poly[cy.top[j]] = i;
        }
        int n = static_cast<int>(P.v.size());
        P.glue.assign(n, {-1, -1});
        P.glue[nb] = {i, n - 1};
        P.glue[n - 1] = {i, nb};
        out.polys.push_back(P);
    }
    for (int id = 0; id < s.saddle_count(); ++id) {
        out.polys[bottom_poly[id]].glue[bottom_edge_of[id]] = {top_poly[id], top_edge_of[id]};
        out.polys[top_poly[id]].glue[top_edge_of[id]] = {bottom_poly[id], bottom_edge_of[id]};
    }
    validate_polygons(out);
    return out;
}

void validate_polygons(const PolygonSurface& S) {
    for (int p = 0; p < static_cast<int>(S.polys.size()); ++p) {
        const auto& P = S.polys[p];
        int n = static_cast<int>(P.v.size());
        if (n < 3 || static_cast<int>(P.glue.size()) != n)
            throw Error(ErrorCode::InvalidSurface, "polygon needs >= 3 glued edges");
        for (int k = 0; k < n; ++k) {
            Vec2 a = P.v[(k + 1) % n] - P.v[k], b = P.v[(k + 2) % n] - P.v[(k + 1) % n];
            if (cross(a, b).sign() < 0)
                throw Error(ErrorCode::InvalidSurface, "polygon not convex counterclockwise");
            auto [q, l] = P.glue[k];
            if (q < 0 || q >= static_cast<int>(S.polys.size()))
                throw Error(ErrorCode::InvalidSurface, "dangling edge");
            const auto& Q = S.polys[q];
            if (Q.glue.at(l) != std::make_pair(p, k))
                throw Error(ErrorCode::InvalidSurface, "gluing not symmetric");
            Vec2 e = Q.v[(l + 1) % Q.v.size()] - Q.v[l];
            if (!(a + e == Vec2{QuadNum(0), QuadNum(0)}))
                throw Error(ErrorCode::InvalidSurface, "glued edges not opposite");
        }
    }
}

QuadNum area(const PolygonSurface& S) {
    QuadNum a(0);
    for (const auto& P : S.polys)
        for (std::size_t k = 0; k < P.v.size(); ++k)
            a += cross(P.v[k], P.v[(k + 1) % P.v.size()]);
    return a / QuadNum(2);
}

PolygonSurface apply_matrix(const PolygonSurface& S, const Matrix2& M) {
    if (M.det().sign() <= 0)
        throw Error(ErrorCode::NonPositiveDeterminant, "det = " + to_string(M.det()));
    PolygonSurface out = S;
    for (const QuadNum* x : {&M.a, &M.b, &M.c, &M.d})
        out.D = common_discriminant(out.D, x->D());
    for (auto& P : out.polys)
        for (auto& v : P.v)
            v = M * v;
    return out;
}

std::optional<CylinderSurface> horizontal_decomposition(const PolygonSurface& S, int step_cap) {
    const Vec2 east{QuadNum(1), QuadNum(0)}, west{QuadNum(-1), QuadNum(0)};
    int np = static_cast<int>(S.polys.size());
    std::map<std::pair<int, int>, int> east_ray, west_ray; // corner -> edge id
    std::vector<Piece> pieces;
    std::vector<QuadNum> lengths;
    int steps = 0;
    std::vector<std::pair<int, int>> west_corner_of; // saddle -> arrival corner

    for (int p = 0; p < np; ++p)
        for (int k = 0; k < static_cast<int>(S.polys[p].v.size()); ++k) {
            if (!in_sector(S.polys[p], k, east))
                continue;
            int sid = static_cast<int>(lengths.size());
            east_ray[{p, k}] = 2 * sid;
            const auto& P = S.polys[p];
            int n = static_cast<int>(P.v.size());
            QuadNum len(0);
            std::pair<int, int> end;
            if (same_direction(P.v[(k + 1) % n] - P.v[k], east)) {
                Vec2 a = P.v[k], b = P.v[(k + 1) % n];
                pieces.push_back({sid, p, a, b, QuadNum(0), true});
                auto [q, l] = P.glue[k];
                const auto& Q = S.polys[q];
                Vec2 a2 = Q.v[(l + 1) % Q.v.size()], b2 = Q.v[l];
                pieces.push_back({sid, q, a2, b2, QuadNum(0), false});
                len = b.x - a.x;
                end = arrival_corner(S, p, (k + 1) % n, west);
            } else {
                int cur = p;
                Vec2 X = P.v[k];
                while (true) {
                    Exit ex = exit_point(S.polys[cur], X, east);
                    Vec2 Y{X.x + ex.lambda, X.y};
                    pieces.push_back({sid, cur, X, Y, len, true});
                    len += ex.lambda;
                    if (ex.vertex >= 0) {
                        end = arrival_corner(S, cur, ex.vertex, west);
                        break;
                    }
                    if (++steps > step_cap)
                        return std::nullopt;
                    int q;
                    X = through_edge(S, cur, ex.edge, Y, q);
                    cur = q;
                }
            }
            lengths.push_back(len);
            if (west_ray.count(end))
                throw Error(ErrorCode::Internal, "two separatrices end on the same ray");
            west_ray[end] = 2 * sid + 1;
        }
    int nsad = static_cast<int>(lengths.size());
    if (nsad == 0)
        throw Error(ErrorCode::InvalidSurface, "no horizontal separatrix");

    // rays around each singularity in counterclockwise order
    std::vector<int> sigma(2 * nsad, -1);
    std::set<std::pair<int, int>> visited;
    for (int p = 0; p < np; ++p)
        for (int k = 0; k < static_cast<int>(S.polys[p].v.size()); ++k) {
            if (visited.count({p, k}))
                continue;
            std::vector<int> rays;
            std::pair<int, int> c{p, k};
            while (!visited.count(c)) {
                visited.insert(c);
                if (auto it = east_ray.find(c); it != east_ray.end())
                    rays.push_back(it->second);
                if (in_sector(S.polys[c.first], c.second, west)) {
                    auto it = west_ray.find(c);
                    if (it == west_ray.end())
                        throw Error(ErrorCode::Internal, "westward separatrix never reached");
                    rays.push_back(it->second);
                }
                c = next_corner(S, c.first, c.second);
            }
            for (std::size_t r = 0; r < rays.size(); ++r)
                sigma[rays[r]] = rays[(r + 1) % rays.size()];
        }
    for (int e = 0; e < 2 * nsad; ++e)
        if (sigma[e] < 0 || (sigma[e] % 2) == (e % 2))
            throw Error(ErrorCode::Internal, "separatrices do not alternate");

    std::vector<int> next_bottom(nsad), next_top(nsad);
    for (int sd = 0; sd < nsad; ++sd) {
        next_bottom[(sigma[2 * sd] - 1) / 2] = sd;
        next_top[sd] = sigma[2 * sd + 1] / 2;
    }
    auto cycles = [&](const std::vector<int>& nxt) {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(nsad, 0);
        for (int sd = 0; sd < nsad; ++sd) {
            if (seen[sd])
                continue;
            std::vector<int> w;
            for (int x = sd; !seen[x]; x = nxt[x]) {
                seen[x] = 1;
                w.push_back(x);
            }
            out.push_back(w);
        }
        return out;
    };
    auto bottoms = cycles(next_bottom), tops = cycles(next_top);
    std::vector<int> top_word_of(nsad);
    std::vector<QuadNum> pos_top(nsad);
    for (std::size_t w = 0; w < tops.size(); ++w) {
        QuadNum x(0);
        for (int sd : tops[w]) {
            top_word_of[sd] = static_cast<int>(w);
            pos_top[sd] = x;
            x += lengths[sd];
        }
    }

    std::vector<std::vector<int>> by_poly(np);
    for (std::size_t i = 0; i < pieces.size(); ++i)
        by_poly[pieces[i].poly].push_back(static_cast<int>(i));

    CylinderSurface out;
    out.D = S.D;
    out.lengths = lengths;
    std::vector<char> top_used(tops.size(), 0);
    for (const auto& bw : bottoms) {
        int s0 = bw[0];
        QuadNum c(0);
        for (int sd : bw)
            c += lengths[sd];
        Shot shot;
        QuadNum alpha;
        for (int den = 2; den <= 64 && !shot.ok; ++den)
            for (int num = 1; num < den && !shot.ok; ++num) {
                if (std::gcd(num, den) != 1)
                    continue;
                alpha = lengths[s0] * QuadNum(Rational(num, den));
                for (const auto& pc : pieces) {
                    if (pc.saddle != s0 || !pc.up_inside)
                        continue;
                    QuadNum rel = alpha - pc.offset;
                    if (rel.sign() <= 0 || rel >= pc.b.x - pc.a.x)
                        continue;
                    shot = shoot_up(S, pieces, by_poly, lengths, pc.poly, Vec2{pc.a.x + rel, pc.a.y}, step_cap);
                    break;
                }
            }
        if (!shot.ok)
            throw Error(ErrorCode::Internal, "no regular vertical shot from a saddle connection");
        int tw = top_word_of[shot.saddle];
        if (top_used[tw])
            throw Error(ErrorCode::Internal, "top boundary reached twice");
        top_used[tw] = 1;
        Cylinder cy;
        cy.bottom = bw;
        cy.top = tops[tw];
        cy.c = c;
        cy.h = shot.height;
        cy.t = mod(alpha - pos_top[shot.saddle] - shot.beta, c);
        out.cylinders.push_back(cy);
    }
    return validate_surface(out);
}

std::optional<CylinderSurface> decompose_direction(const PolygonSurface& S, const Vec2& d, int step_cap) {
    if (d.x.is_zero() && d.y.is_zero())
        throw Error(ErrorCode::NonFieldDirection, "zero direction");
    try {
        common_discriminant(common_discriminant(S.D, d.x.D()), d.y.D());
    } catch (const Error&) {
        throw Error(ErrorCode::NonFieldDirection, "direction outside the field of the surface");
    }
    Matrix2 M{d.x, d.y, -d.y, d.x};
    auto res = horizontal_decomposition(apply_matrix(S, M), step_cap);
    if (res && cyldec::area(*res) != area(S) * M.det())
        throw Error(ErrorCode::Internal, "cylinder areas do not add up to the surface area");
    return res;
}

std::optional<RayEnd> trace_ray(const PolygonSurface& S, int poly, int vertex, const Vec2& dir, int step_cap) {
    std::pair<int, int> c{poly, vertex};
    for (int guard = 0; !in_sector(S.polys[c.first], c.second, dir); ++guard) {
        if (guard > 4 * static_cast<int>(S.polys.size()) * 64)
            throw Error(ErrorCode::Internal, "direction in no corner of the vertex");
        c = next_corner(S, c.first, c.second);
    }
    int cur = c.first;
    const auto& P = S.polys[cur];
    int n = static_cast<int>(P.v.size());
    Vec2 X = P.v[c.second];
    Vec2 u = P.v[(c.second + 1) % n] - X;
    if (same_direction(u, dir)) {
        QuadNum len = dir.x.is_zero() ? u.y / dir.y : u.x / dir.x;
        return RayEnd{cur, (c.second + 1) % n, len};
    }
    QuadNum len(0);
    for (int step = 0; step <= step_cap; ++step) {
        Exit ex = exit_point(S.polys[cur], X, dir);
        len += ex.lambda;
        if (ex.vertex >= 0)
            return RayEnd{cur, ex.vertex, len};
        Vec2 Y = X + ex.lambda * dir;
        int q;
        X = through_edge(S, cur, ex.edge, Y, q);
        cur = q;
    }
    return std::nullopt;
}

std::vector<std::vector<int>> vertex_singularities(const CylinderSurface& s) {
    auto sg = singularities(s);
    std::vector<std::vector<int>> out;
    for (const auto& cy : s.cylinders) {
        int nb = static_cast<int>(cy.bottom.size()), nt = static_cast<int>(cy.top.size());
        std::vector<int> label(nb + nt + 2);
        for (int a = 0; a <= nb; ++a)
            label[a] = a < nb ? sg.left[cy.bottom[a]] : sg.right[cy.bottom[nb - 1]];
        for (int j = 0; j <= nt; ++j)
            label[nb + 1 + (nt - j)] = j < nt ? sg.left[cy.top[j]] : sg.right[cy.top[nt - 1]];
        out.push_back(label);
    }
    return out;
}

namespace {

struct Tri {
    int v[3];
    Vec2 e[3]; // e[k] from corner k to corner k+1
    std::pair<int, int> glue[3];
};

Vec2 drift(const Tri& T, int k, int moving, const Vec2& w) {
    int dv = (T.v[(k + 1) % 3] == moving ? 1 : 0) - (T.v[k] == moving ? 1 : 0);
    return QuadNum(dv) * w;
}

std::vector<Tri> triangulate(const CylinderSurface& s) {
    auto labels = vertex_singularities(s);
    PolygonSurface P = to_polygons(s);
    std::vector<Tri> tris;
    std::map<std::pair<int, int>, std::pair<int, int>> edge_side;     // polygon edge -> side
    std::map<std::tuple<int, int, int>, std::pair<int, int>> diagonal; // (poly, lo, hi) -> side
    for (int i = 0; i < s.cylinder_count(); ++i) {
        const auto& cy = s.cylinders[i];
        const auto& poly = P.polys[i];
        int nb = static_cast<int>(cy.bottom.size()), nt = static_cast<int>(cy.top.size());
        int n = static_cast<int>(poly.v.size());
        auto B = [&](int a) { return a; };
        auto T = [&](int j) { return nb + 1 + (nt - j); };
        const auto& label = labels[i];
        auto add = [&](int a, int b, int c) {
            Tri t;
            int idx[3] = {a, b, c};
            int ti = static_cast<int>(tris.size());
            for (int k = 0; k < 3; ++k) {
                int x = idx[k], y = idx[(k + 1) % 3];
                t.v[k] = label[x];
                t.e[k] = poly.v[y] - poly.v[x];
                t.glue[k] = {-1, -1};
                if (y == (x + 1) % n)
                    edge_side[{i, x}] = {ti, k};
                else {
                    auto key = std::make_tuple(i, std::min(x, y), std::max(x, y));
                    auto it = diagonal.find(key);
                    if (it == diagonal.end())
                        diagonal[key] = {ti, k};
                    else {
                        t.glue[k] = it->second;
                        tris[it->second.first].glue[it->second.second] = {ti, k};
                    }
                }
            }
            tris.push_back(t);
        };
        int a = 0, j = 0;
        while (a < nb || j < nt) {
            bool bottom_step = j == nt || (a < nb && poly.v[B(a + 1)].x <= poly.v[T(j + 1)].x);
            if (bottom_step) {
                add(B(a), B(a + 1), T(j));
                ++a;
            } else {
                add(B(a), T(j + 1), T(j));
                ++j;
            }
        }
    }
    for (const auto& [pe, side] : edge_side) {
        auto other = P.polys[pe.first].glue[pe.second];
        tris[side.first].glue[side.second] = edge_side.at(other);
    }
    return tris;
}

void flip(std::vector<Tri>& tris, int t1, int k) {
    auto [t2, k2] = tris[t1].glue[k];
    Tri A = tris[t1], Bt = tris[t2];
    // quad X W Y Z, new diagonal Z -> W
    int X = A.v[k], Y = A.v[(k + 1) % 3], Z = A.v[(k + 2) % 3], W = Bt.v[(k2 + 2) % 3];
    Vec2 zx = A.e[(k + 2) % 3], yz = A.e[(k + 1) % 3];
    Vec2 xw = Bt.e[(k2 + 1) % 3], wy = Bt.e[(k2 + 2) % 3];
    Vec2 zw = zx + xw;
    std::pair<int, int> old_sides[4] = {{t1, (k + 2) % 3}, {t2, (k2 + 1) % 3}, {t2, (k2 + 2) % 3}, {t1, (k + 1) % 3}};
    std::pair<int, int> new_sides[4] = {{t1, 0}, {t1, 1}, {t2, 0}, {t2, 1}};
    std::pair<int, int> partner[4];
    for (int r = 0; r < 4; ++r) {
        auto [tt, ss] = old_sides[r];
        partner[r] = tris[tt].glue[ss];
    }
    Tri N1, N2;
    N1.v[0] = Z, N1.v[1] = X, N1.v[2] = W;
    N1.e[0] = zx, N1.e[1] = xw, N1.e[2] = Vec2{QuadNum(0), QuadNum(0)} - zw;
    N2.v[0] = W, N2.v[1] = Y, N2.v[2] = Z;
    N2.e[0] = wy, N2.e[1] = yz, N2.e[2] = zw;
    N1.glue[2] = {t2, 2};
    N2.glue[2] = {t1, 2};
    tris[t1] = N1;
    tris[t2] = N2;
    for (int r = 0; r < 4; ++r) {
        auto p = partner[r];
        for (int r2 = 0; r2 < 4; ++r2)
            if (old_sides[r2] == partner[r])
                p = new_sides[r2];
        tris[new_sides[r].first].glue[new_sides[r].second] = p;
        tris[p.first].glue[p.second] = new_sides[r];
    }
}

bool flip_valid(const std::vector<Tri>& tris, int t1, int k) {
    auto [t2, k2] = tris[t1].glue[k];
    const Tri &A = tris[t1], &Bt = tris[t2];
    Vec2 zx = A.e[(k + 2) % 3], yz = A.e[(k + 1) % 3];
    Vec2 xw = Bt.e[(k2 + 1) % 3], wy = Bt.e[(k2 + 2) % 3];
    return cross(zx, xw).sign() > 0 && cross(wy, yz).sign() > 0;
}

void advance(std::vector<Tri>& tris, int moving, const Vec2& w, const QuadNum& s) {
    for (auto& T : tris) {
        Vec2 d[3];
        for (int k = 0; k < 3; ++k)
            d[k] = drift(T, k, moving, w);
        for (int k = 0; k < 3; ++k)
            T.e[k] = T.e[k] + s * d[k];
    }
}

} // namespace

CylinderSurface rel_surgery(const CylinderSurface& s, const Vec2& w, int step_cap) {
    auto ms = mixed_structure(s);
    if (ms.one_singularity)
        throw Error(ErrorCode::NotTwoSingularities, "Rel needs exactly two singularities");
    int moving = ms.sing2;
    auto tris = triangulate(s);
    QuadNum rem(1);
    for (int iter = 0;; ++iter) {
        if (iter > step_cap)
            throw Error(ErrorCode::Internal, "Rel surgery did not settle within the step cap");
        int hit = -1;
        QuadNum wall;
        for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
            const auto& T = tris[i];
            Vec2 a0 = drift(T, 0, moving, w), a1 = drift(T, 1, moving, w);
            QuadNum d0 = cross(T.e[0], T.e[1]);
            QuadNum d1 = cross(T.e[0], a1) + cross(a0, T.e[1]);
            if (d1.sign() >= 0)
                continue;
            QuadNum sw = -d0 / d1;
            if (sw <= rem && (hit < 0 || sw < wall)) {
                hit = i;
                wall = sw;
            }
        }
        if (hit < 0) {
            advance(tris, moving, w, rem);
            break;
        }
        // several triangles may reach the wall together; flip whichever
        // long side bounds a convex quadrilateral just before it
        std::vector<int> cands;
        for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
            const auto& T = tris[i];
            Vec2 a0 = drift(T, 0, moving, w), a1 = drift(T, 1, moving, w);
            QuadNum d1 = cross(T.e[0], a1) + cross(a0, T.e[1]);
            if (d1.sign() < 0 && -cross(T.e[0], T.e[1]) / d1 == wall)
                cands.push_back(i);
        }
        bool done = false;
        for (int c : cands) {
            const Tri& T = tris[c];
            Vec2 at[3];
            for (int k = 0; k < 3; ++k) {
                at[k] = T.e[k] + wall * drift(T, k, moving, w);
                if (at[k].x.is_zero() && at[k].y.is_zero())
                    throw Error(ErrorCode::SingularityCollision, "the two singularities meet");
            }
            int middle = -1;
            for (int k = 0; k < 3; ++k) {
                Vec2 back = Vec2{QuadNum(0), QuadNum(0)} - at[(k + 2) % 3];
                if (dot(at[k], back).sign() < 0)
                    middle = k;
            }
            if (middle < 0)
                throw Error(ErrorCode::Internal, "degenerate triangle without a middle vertex");
            int side = (middle + 1) % 3;
            QuadNum step = wall / QuadNum(2);
            for (int tries = 0; tries < 80 && !done; ++tries) {
                auto trial = tris;
                advance(trial, moving, w, step);
                if (flip_valid(trial, c, side)) {
                    flip(trial, c, side);
                    tris = std::move(trial);
                    rem -= step;
                    done = true;
                } else
                    step = (step + wall) / QuadNum(2);
            }
            if (done)
                break;
        }
        if (!done)
            throw Error(ErrorCode::Internal, "no convex quadrilateral near the wall");
    }
    PolygonSurface P;
    P.D = common_discriminant(common_discriminant(s.D, w.x.D()), w.y.D());
    for (const auto& T : tris) {
        Polygon poly;
        poly.v = {Vec2{QuadNum(0), QuadNum(0)}, T.e[0], T.e[0] + T.e[1]};
        poly.glue = {T.glue[0], T.glue[1], T.glue[2]};
        P.polys.push_back(poly);
    }
    validate_polygons(P);
    auto res = horizontal_decomposition(P, step_cap);
    if (!res)
        throw Error(ErrorCode::Internal, "horizontal direction not resolved after surgery");
    return *res;
}

} // namespace cyldec
