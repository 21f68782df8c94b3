// Involutions with derivative -Id, and the spin parity.

#include "cyldec/enumeration.hpp"
#include "cyldec/error.hpp"
#include "cyldec/surface.hpp"

#include <algorithm>
#include <functional>

namespace cyldec {

std::vector<NegInvolution> neg_involutions(const CylinderSurface& s) {
    // a map with derivative -Id is a translation isomorphism from the rotated copy
    auto maps = translation_isomorphisms(rotate_pi(s), s);
    auto sg = singularities(s);
    int g = topological_genus(s);
    std::vector<NegInvolution> out;
    for (const auto& tm : maps) {
        bool involutive = true;
        for (int id = 0; id < s.saddle_count(); ++id)
            if (tm.saddle[tm.saddle[id]] != id)
                involutive = false;
        if (!involutive)
            continue;
        NegInvolution inv;
        inv.cylinder = tm.cylinder;
        inv.saddle = tm.saddle;
        inv.singularity.assign(sg.count, -1);
        for (int id = 0; id < s.saddle_count(); ++id)
            inv.singularity[sg.left[id]] = sg.right[tm.saddle[id]];
        int F = 0;
        for (int i = 0; i < s.cylinder_count(); ++i)
            if (tm.cylinder[i] == i)
                F += 2;
        for (int id = 0; id < s.saddle_count(); ++id)
            if (tm.saddle[id] == id)
                F += 1;
        for (int p = 0; p < sg.count; ++p)
            if (inv.singularity[p] == p)
                F += 1;
            else
                inv.swaps_singularities = true;
        inv.fixed_points = F;
        // Riemann-Hurwitz for a double cover with F branch points
        inv.quotient_genus = (2 * g + 2 - F) / 4;
        out.push_back(inv);
    }
    std::stable_sort(out.begin(), out.end(), [](const NegInvolution& a, const NegInvolution& b) {
        return a.quotient_genus < b.quotient_genus;
    });
    return out;
}

std::optional<NegInvolution> detect_neg_involution(const CylinderSurface& s) {
    auto all = neg_involutions(s);
    if (all.empty())
        return std::nullopt;
    return all.front();
}

namespace {

using Bits = std::vector<std::uint8_t>;

struct Form {
    std::vector<Bits> G; // intersection numbers mod 2
    Bits q;

    int pair(const Bits& x, const Bits& y) const {
        int r = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i])
                for (std::size_t j = 0; j < y.size(); ++j)
                    if (y[j])
                        r ^= G[i][j];
        return r;
    }
    int value(const Bits& x) const {
        int r = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i])
                continue;
            r ^= q[i];
            for (std::size_t j = i + 1; j < x.size(); ++j)
                if (x[j])
                    r ^= G[i][j];
        }
        return r;
    }
};

} // namespace

int spin_parity(const CylinderSurface& s) {
    auto sg = singularities(s);
    for (int k : sg.order())
        if (k % 2 != 0)
            throw Error(ErrorCode::OddOrderSingularity, "spin parity needs even orders");
    int m = s.cylinder_count(), S = s.saddle_count();
    std::vector<int> above(S), below(S);
    std::vector<QuadNum> xbottom(S), xtop(S);
    for (int i = 0; i < m; ++i) {
        const auto& cy = s.cylinders[i];
        QuadNum x(0);
        for (int id : cy.bottom) {
            above[id] = i;
            xbottom[id] = x;
            x += s.lengths[id];
        }
        x = cy.t;
        for (int id : cy.top) {
            below[id] = i;
            xtop[id] = x;
            x += s.lengths[id];
        }
    }

    // simple upward cycles in the graph cylinder -> cylinder above, one arc per saddle connection
    std::vector<std::vector<int>> cycles;
    std::vector<char> on_path(m, 0);
    std::vector<int> path;
    std::function<void(int, int)> dfs = [&](int root, int u) {
        for (int id : s.cylinders[u].top) {
            int w = above[id];
            path.push_back(id);
            if (w == root)
                cycles.push_back(path);
            else if (w > root && !on_path[w]) {
                on_path[w] = 1;
                dfs(root, w);
                on_path[w] = 0;
            }
            path.pop_back();
            if (cycles.size() > 20000)
                throw Error(ErrorCode::Internal, "too many transverse cycles");
        }
    };
    for (int v = 0; v < m; ++v) {
        on_path[v] = 1;
        dfs(v, v);
        on_path[v] = 0;
    }

    int R = static_cast<int>(cycles.size());
    int N = m + R; // core curves first
    Form f;
    f.G.assign(N, Bits(N, 0));
    f.q.assign(N, 1); // both kinds of curve keep their tangent in a half plane

    struct Segment {
        int curve;
        QuadNum b0, a1;
    };
    std::vector<std::vector<Segment>> in_cyl(m);
    for (int r = 0; r < R; ++r) {
        const auto& cyc = cycles[r];
        QuadNum frac = QuadNum(Rational(r + 1, R + 1));
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            int sin = cyc[k], sout = cyc[(k + 1) % cyc.size()];
            int i = above[sin];
            const auto& cy = s.cylinders[i];
            QuadNum b0 = xbottom[sin] + frac * s.lengths[sin];
            QuadNum a1raw = xtop[sout] + frac * s.lengths[sout];
            in_cyl[i].push_back({m + r, b0, b0 + mod(a1raw - b0, cy.c)});
            f.G[i][m + r] ^= 1;
            f.G[m + r][i] ^= 1;
        }
    }
    for (int i = 0; i < m; ++i) {
        const auto& segs = in_cyl[i];
        const QuadNum& c = s.cylinders[i].c;
        for (std::size_t a = 0; a < segs.size(); ++a)
            for (std::size_t b = a + 1; b < segs.size(); ++b) {
                Integer n = ((segs[a].a1 - segs[b].a1) / c).floor() - ((segs[a].b0 - segs[b].b0) / c).floor();
                if (n < 0)
                    n = -n;
                if (n % 2 != 0) {
                    f.G[segs[a].curve][segs[b].curve] ^= 1;
                    f.G[segs[b].curve][segs[a].curve] ^= 1;
                }
            }
    }

    // symplectic reduction
    std::vector<Bits> vecs;
    for (int i = 0; i < N; ++i) {
        Bits e(N, 0);
        e[i] = 1;
        vecs.push_back(e);
    }
    int arf = 0, rank = 0;
    while (true) {
        int ia = -1, ib = -1;
        for (std::size_t a = 0; a < vecs.size() && ia < 0; ++a)
            for (std::size_t b = a + 1; b < vecs.size(); ++b)
                if (f.pair(vecs[a], vecs[b])) {
                    ia = static_cast<int>(a);
                    ib = static_cast<int>(b);
                    break;
                }
        if (ia < 0)
            break;
        Bits A = vecs[ia], B = vecs[ib];
        arf ^= f.value(A) & f.value(B);
        rank += 2;
        std::vector<Bits> rest;
        for (std::size_t k = 0; k < vecs.size(); ++k) {
            if (static_cast<int>(k) == ia || static_cast<int>(k) == ib)
                continue;
            Bits v = vecs[k];
            int pa = f.pair(v, A), pb = f.pair(v, B);
            for (int i = 0; i < N; ++i)
                v[i] ^= (pb & A[i]) ^ (pa & B[i]);
            rest.push_back(v);
        }
        vecs = std::move(rest);
    }
    int g = topological_genus(s);
    if (rank != 2 * g)
        throw Error(ErrorCode::Internal, "cycles span rank " + std::to_string(rank) + ", expected " +
                                             std::to_string(2 * g));
    for (const auto& v : vecs)
        if (f.value(v) != 0)
            throw Error(ErrorCode::Internal, "quadratic form not defined on homology");
    return arf;
}

void label_components(Classification& c) {
    const auto& k = c.profile.kappa;
    int g = c.profile.genus();
    bool hyp_stratum = (k.size() == 1 && k[0] == 2 * g - 2) || (k.size() == 2 && k[0] == g - 1 && k[1] == g - 1);
    hyp_stratum = hyp_stratum && g >= 2;
    bool even = std::all_of(k.begin(), k.end(), [](int x) { return x % 2 == 0; });
    for (auto& e : c.entries) {
        CylinderSurface s = build_surface(e.diagram);
        bool hyp = false;
        if (hyp_stratum)
            for (const auto& inv : neg_involutions(s))
                if (inv.quotient_genus == 0 && (k.size() == 1 || inv.swaps_singularities))
                    hyp = true;
        if (hyp)
            e.component_label = "hyp";
        else if (even)
            e.component_label = spin_parity(s) ? "odd" : "even";
        else
            e.component_label = hyp_stratum ? "nonhyp" : "n/a";
    }
}

} // namespace cyldec
