#pragma once

// Test-side reference computations, written independently of the library
// code they check.

#include "cyldec/diagram.hpp"
#include "cyldec/enumeration.hpp"
#include "cyldec/surface.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using namespace cyldec;

// Spin parity from winding numbers, Arf invariant by majority vote.
//
// Curves: the core curve of every cylinder, and one closed curve per simple
// upward cycle of cylinders, drawn as straight upward segments through the
// interior points of the saddle connections.  Every such curve keeps its
// tangent in an open half plane, so its winding number is 0 and q = 1.
// Intersections are counted geometrically, segment against segment.
inline int spin_by_majority(const CylinderSurface& s) {
    int m = s.cylinder_count(), S = s.saddle_count();
    std::vector<int> up(S, -1), down(S, -1);
    std::vector<QuadNum> xb(S), xt(S);
    for (int i = 0; i < m; ++i) {
        QuadNum x(0);
        for (int id : s.cylinders[i].bottom) {
            up[id] = i;
            xb[id] = x;
            x += s.lengths[id];
        }
        x = s.cylinders[i].t;
        for (int id : s.cylinders[i].top) {
            down[id] = i;
            xt[id] = x;
            x += s.lengths[id];
        }
    }
    // cycles as saddle sequences, canonical start = smallest saddle id
    std::vector<std::vector<int>> cycles;
    std::vector<int> path;
    std::vector<char> seen(m, 0);
    std::function<void(int)> walk = [&](int s0) {
        int cyl = up[path.back()];
        if (cyl == down[s0]) {
            cycles.push_back(path);
            return;
        }
        if (seen[cyl])
            return;
        seen[cyl] = 1;
        for (int id : s.cylinders[cyl].top)
            if (id > s0) {
                path.push_back(id);
                walk(s0);
                path.pop_back();
            }
        seen[cyl] = 0;
    };
    for (int s0 = 0; s0 < S; ++s0) {
        std::fill(seen.begin(), seen.end(), 0);
        seen[down[s0]] = 1;
        path = {s0};
        walk(s0);
    }
    int R = static_cast<int>(cycles.size());
    int N = m + R;
    if (N > 26)
        throw std::runtime_error("too many curves for the majority vote");

    std::vector<std::vector<int>> G(N, std::vector<int>(N, 0));
    struct Seg {
        int curve;
        QuadNum b, a; // bottom point, lifted top point (a in (b - c, b])
    };
    std::vector<std::vector<Seg>> segs(m);
    for (int r = 0; r < R; ++r) {
        QuadNum frac(Rational(2 * r + 1, 2 * R));
        const auto& cyc = cycles[r];
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            int in = cyc[k], out = cyc[(k + 1) % cyc.size()];
            int i = up[in];
            const QuadNum& c = s.cylinders[i].c;
            QuadNum b = xb[in] + frac * s.lengths[in];
            QuadNum a = xt[out] + frac * s.lengths[out];
            // lift into (b - c, b]
            QuadNum shift = QuadNum(Rational(((b - a) / c).floor())) * c;
            a = a + shift;
            segs[i].push_back({m + r, b, a});
            G[i][m + r] ^= 1;
            G[m + r][i] ^= 1;
        }
    }
    for (int i = 0; i < m; ++i) {
        const QuadNum& c = s.cylinders[i].c;
        for (std::size_t p = 0; p < segs[i].size(); ++p)
            for (std::size_t q = p + 1; q < segs[i].size(); ++q) {
                // d(y) runs linearly from d0 to d1; count multiples of c strictly between
                QuadNum d0 = segs[i][p].b - segs[i][q].b;
                QuadNum d1 = segs[i][p].a - segs[i][q].a;
                QuadNum lo = std::min(d0, d1), hi = std::max(d0, d1);
                Integer n = ((hi / c).floor() - (lo / c).floor());
                if ((hi / c - QuadNum(Rational((hi / c).floor()))).is_zero())
                    n -= 1; // endpoint exactly on a multiple
                if (n % 2 != 0) {
                    G[segs[i][p].curve][segs[i][q].curve] ^= 1;
                    G[segs[i][q].curve][segs[i][p].curve] ^= 1;
                }
            }
    }
    std::uint64_t ones = 0, total = std::uint64_t(1) << N;
    for (std::uint64_t v = 0; v < total; ++v) {
        int q = 0;
        for (int i = 0; i < N; ++i) {
            if (!(v >> i & 1))
                continue;
            q ^= 1;
            for (int j = i + 1; j < N; ++j)
                if (v >> j & 1)
                    q ^= G[i][j];
        }
        ones += q;
    }
    if (2 * ones == total)
        throw std::runtime_error("no majority: q is not defined on homology");
    return 2 * ones > total ? 1 : 0;
}

// Basis of {x : row.x = 0} over Q.
inline std::vector<std::vector<Rational>> kernel(std::vector<std::vector<Rational>> rows, int n) {
    std::vector<int> pivcol;
    int r = 0;
    for (int col = 0; col < n && r < static_cast<int>(rows.size()); ++col) {
        int p = -1;
        for (int k = r; k < static_cast<int>(rows.size()); ++k)
            if (rows[k][col] != 0) {
                p = k;
                break;
            }
        if (p < 0)
            continue;
        std::swap(rows[r], rows[p]);
        Rational inv = 1 / rows[r][col];
        for (auto& x : rows[r])
            x *= inv;
        for (int k = 0; k < static_cast<int>(rows.size()); ++k)
            if (k != r && rows[k][col] != 0) {
                Rational f = rows[k][col];
                for (int j = 0; j < n; ++j)
                    rows[k][j] -= f * rows[r][j];
            }
        pivcol.push_back(col);
        ++r;
    }
    std::vector<std::vector<Rational>> out;
    for (int free = 0; free < n; ++free) {
        if (std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end())
            continue;
        std::vector<Rational> v(n, 0);
        v[free] = 1;
        for (int k = 0; k < r; ++k)
            v[pivcol[k]] = -rows[k][free];
        out.push_back(v);
    }
    return out;
}

// Random strictly positive rational metric on the diagram's pairing
// equalities, near the diagram's own metric.
inline std::vector<QuadNum> random_metric(const SeparatrixDiagram& d, std::mt19937& rng) {
    const Prediagram& p = d.prediagram;
    auto var = edge_pair_index(p);
    int n = edge_pair_count(p);
    std::vector<Rational> w(n, 0);
    for (int e = 0; e < p.size(); ++e) {
        if (!d.metric[e].is_rational())
            throw std::runtime_error("random_metric wants a rational base metric");
        w[var[e]] = d.metric[e].a();
    }
    auto K = kernel(pairing_equalities(p, d.pairing), n);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int tries = 0; tries < 64; ++tries) {
        std::vector<Rational> x = w;
        Rational scale(1, 4 << (tries / 8));
        for (const auto& k : K) {
            Rational r = Rational(coef(rng)) * scale;
            for (int j = 0; j < n; ++j)
                x[j] += r * k[j];
        }
        if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v > 0; }))
            return metric_from_witness(p, x);
    }
    throw std::runtime_error("no positive perturbation found");
}

// All edge bijections commuting with sigma, tau and the orientation,
// by trying every image of one edge per <sigma, tau>-orbit.
inline std::vector<Perm> prediagram_isomorphisms(const Prediagram& a, const Prediagram& b) {
    std::vector<Perm> out;
    int n = a.size();
    if (b.size() != n)
        return out;
    std::vector<int> comp(n, -1), roots;
    for (int e = 0; e < n; ++e) {
        if (comp[e] >= 0)
            continue;
        roots.push_back(e);
        std::vector<int> st = {e};
        comp[e] = static_cast<int>(roots.size()) - 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : {a.sigma[x], a.tau[x]})
                if (comp[y] < 0) {
                    comp[y] = comp[e];
                    st.push_back(y);
                }
        }
    }
    Perm phi(n, -1);
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == roots.size()) {
            std::vector<char> hit(n, 0);
            for (int x : phi) {
                if (x < 0 || hit[x])
                    return;
                hit[x] = 1;
            }
            out.push_back(phi);
            return;
        }
        for (int img = 0; img < n; ++img) {
            Perm save = phi;
            bool ok = true;
            std::vector<std::pair<int, int>> st = {{roots[k], img}};
            while (!st.empty() && ok) {
                auto [x, y] = st.back();
                st.pop_back();
                if (phi[x] >= 0) {
                    ok = phi[x] == y;
                    continue;
                }
                if (a.positive[x] != b.positive[y]) {
                    ok = false;
                    continue;
                }
                phi[x] = y;
                st.push_back({a.sigma[x], b.sigma[y]});
                st.push_back({a.tau[x], b.tau[y]});
            }
            if (ok)
                go(k + 1);
            phi = save;
        }
    };
    go(0);
    return out;
}

} // namespace oracle
