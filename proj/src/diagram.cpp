#include "cyldec/diagram.hpp"

#include "cyldec/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cyldec {

bool is_permutation(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        q[p[i]] = static_cast<int>(i);
    return q;
}

std::vector<std::vector<int>> orbits(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s])
            continue;
        std::vector<int> orb;
        for (int x = static_cast<int>(s); !seen[x]; x = p[x]) {
            seen[x] = true;
            orb.push_back(x);
        }
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<std::vector<int>> sigma_orbits(const Prediagram& p) { return orbits(p.sigma); }

std::vector<int> sigma_orbit_index(const Prediagram& p) {
    std::vector<int> idx(p.size());
    auto orbs = sigma_orbits(p);
    for (std::size_t i = 0; i < orbs.size(); ++i)
        for (int e : orbs[i])
            idx[e] = static_cast<int>(i);
    return idx;
}

Prediagram validate_prediagram(const Perm& sigma, const Perm& tau, const std::vector<bool>& positive) {
    if (sigma.size() != tau.size() || sigma.size() != positive.size())
        throw Error(ErrorCode::DimensionMismatch, "sigma, tau and orientation sizes differ");
    if (!is_permutation(sigma))
        throw Error(ErrorCode::NotPermutation, "sigma");
    if (!is_permutation(tau))
        throw Error(ErrorCode::NotPermutation, "tau");
    for (std::size_t e = 0; e < tau.size(); ++e)
        if (tau[e] == static_cast<int>(e) || tau[tau[e]] != static_cast<int>(e))
            throw Error(ErrorCode::TauNotFixedPointFreeInvolution, "at edge " + std::to_string(e));
    for (std::size_t e = 0; e < tau.size(); ++e)
        if (positive[e] == positive[tau[e]])
            throw Error(ErrorCode::ThetaNotSection, "edges " + std::to_string(e) + " and " + std::to_string(tau[e]));
    return Prediagram{sigma, tau, positive};
}

Prediagram validate_prediagram(const Perm& sigma, const Perm& tau, const std::vector<int>& positive_set) {
    std::vector<bool> pos(sigma.size(), false);
    for (int e : positive_set) {
        if (e < 0 || e >= static_cast<int>(sigma.size()))
            throw Error(ErrorCode::DimensionMismatch, "positive edge out of range");
        pos[e] = true;
    }
    return validate_prediagram(sigma, tau, pos);
}

bool is_alternating(const Prediagram& p) {
    for (int e = 0; e < p.size(); ++e)
        if (p.positive[e] == p.positive[p.sigma[e]])
            return false;
    return true;
}

bool is_stable(const Prediagram& p) {
    auto idx = sigma_orbit_index(p);
    for (int e = 0; e < p.size(); ++e)
        if (idx[e] != idx[p.tau[e]])
            return false;
    return true;
}

std::vector<std::vector<int>> component_edge_sets(const Prediagram& p) {
    int n = p.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        int id = static_cast<int>(out.size());
        std::vector<int> stack{s}, edges;
        comp[s] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            edges.push_back(x);
            for (int y : {p.sigma[x], p.tau[x]})
                if (comp[y] < 0) {
                    comp[y] = id;
                    stack.push_back(y);
                }
        }
        std::sort(edges.begin(), edges.end());
        out.push_back(std::move(edges));
    }
    return out;
}

Prediagram induced_prediagram(const Prediagram& p, const std::vector<int>& edges) {
    std::map<int, int> local;
    for (std::size_t i = 0; i < edges.size(); ++i)
        local[edges[i]] = static_cast<int>(i);
    Prediagram q;
    for (int e : edges) {
        q.sigma.push_back(local.at(p.sigma[e]));
        q.tau.push_back(local.at(p.tau[e]));
        q.positive.push_back(p.positive[e]);
    }
    return q;
}

std::vector<Prediagram> connected_components(const Prediagram& p) {
    std::vector<Prediagram> out;
    for (const auto& edges : component_edge_sets(p))
        out.push_back(induced_prediagram(p, edges));
    return out;
}

Prediagram disjoint_union(const std::vector<Prediagram>& parts) {
    Prediagram out;
    int off = 0;
    for (const auto& q : parts) {
        for (int e = 0; e < q.size(); ++e) {
            out.sigma.push_back(q.sigma[e] + off);
            out.tau.push_back(q.tau[e] + off);
            out.positive.push_back(q.positive[e]);
        }
        off += q.size();
    }
    return out;
}

std::vector<CylinderComponent> cylinder_components(const Prediagram& p) {
    int n = p.size();
    std::vector<bool> seen(n, false);
    std::vector<CylinderComponent> out;
    for (int s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        CylinderComponent c;
        c.positive = p.positive[s];
        for (int x = s; !seen[x]; x = p.sigma[p.tau[x]]) {
            seen[x] = true;
            if (p.positive[x] != c.positive)
                throw Error(ErrorCode::OrientationMixedWithinOrbit, "component of edge " + std::to_string(s));
            c.edges.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

MinimalType canonical_type(const Perm& f) {
    int n = static_cast<int>(f.size());
    Perm best;
    for (int k = 0; k < n; ++k) {
        Perm g(n);
        for (int i = 0; i < n; ++i)
            g[(i + k) % n] = (f[i] + k) % n;
        if (best.empty() || g < best)
            best = g;
    }
    return MinimalType{n, best};
}

MinimalType reversed_type(const MinimalType& t) {
    int n = t.n;
    Perm fc(n);
    for (int i = 0; i < n; ++i)
        fc[i] = t.f[(i + 1) % n];
    return canonical_type(inverse(fc));
}

MinimalType minimal_type(const Prediagram& c) {
    if (component_edge_sets(c).size() != 1)
        throw Error(ErrorCode::NotMinimal, "more than one <sigma,tau>-orbit");
    if (!is_stable(c))
        throw Error(ErrorCode::NotStable, "tau leaves a sigma-orbit");
    if (!is_alternating(c))
        throw Error(ErrorCode::NotAlternating, "consecutive edges with equal orientation");
    int N = c.size();
    int x = 0;
    while (!c.positive[x])
        ++x;
    std::vector<int> at(N);
    int y = x;
    for (int j = 0; j < N; ++j, y = c.sigma[y])
        at[y] = j;
    int n = N / 2;
    Perm f(n);
    y = x;
    for (int j = 0; j < N; ++j, y = c.sigma[y])
        if (j % 2 == 0)
            f[j / 2] = (at[c.tau[y]] - 1) / 2;
    return canonical_type(f);
}

std::vector<MinimalType> component_types(const Prediagram& p) {
    std::vector<MinimalType> out;
    for (const auto& c : connected_components(p))
        out.push_back(minimal_type(c));
    std::sort(out.begin(), out.end());
    return out;
}

Prediagram component_from_type(const MinimalType& t) {
    int N = 2 * t.n;
    Prediagram p;
    p.sigma.resize(N);
    p.tau.resize(N);
    p.positive.resize(N);
    for (int i = 0; i < N; ++i) {
        p.sigma[i] = (i + 1) % N;
        p.positive[i] = (i % 2 == 0);
    }
    for (int k = 0; k < t.n; ++k) {
        int a = 2 * k, b = 2 * t.f[k] + 1;
        p.tau[a] = b;
        p.tau[b] = a;
    }
    return p;
}

std::string type_cycles(const MinimalType& t) {
    std::string out;
    bool identity = true;
    for (const auto& orb : orbits(t.f)) {
        out += "(";
        for (std::size_t i = 0; i < orb.size(); ++i)
            out += std::to_string(orb[i] + 1);
        out += ")";
        if (orb.size() > 1)
            identity = false;
    }
    return identity ? "id" : out;
}

Prediagram reverse_orientation(const Prediagram& p) {
    Prediagram q = p;
    for (int e = 0; e < q.size(); ++e)
        q.positive[e] = !p.positive[e];
    return q;
}

bool are_isomorphic(const Prediagram& p, const Prediagram& q) {
    for (const auto* x : {&p, &q}) {
        if (!is_stable(*x))
            throw Error(ErrorCode::NotStable, "are_isomorphic");
        if (!is_alternating(*x))
            throw Error(ErrorCode::NotAlternating, "are_isomorphic");
    }
    if (p.size() != q.size())
        return false;
    return component_types(p) == component_types(q);
}

std::vector<int> edge_pair_index(const Prediagram& p) {
    std::vector<int> idx(p.size(), -1);
    int k = 0;
    for (int e = 0; e < p.size(); ++e)
        if (idx[e] < 0) {
            idx[e] = k;
            idx[p.tau[e]] = k;
            ++k;
        }
    return idx;
}

int edge_pair_count(const Prediagram& p) { return p.size() / 2; }

SeparatrixDiagram validate_diagram(const Prediagram& p, const Pairing& pairing, const std::vector<QuadNum>& metric) {
    if (!is_alternating(p))
        throw Error(ErrorCode::NotAlternating, "diagram prediagram");
    auto comps = cylinder_components(p);
    int npos = 0;
    for (const auto& c : comps)
        npos += c.positive ? 1 : 0;
    int nneg = static_cast<int>(comps.size()) - npos;
    if (npos != nneg)
        throw Error(ErrorCode::UnequalComponentCounts, std::to_string(npos) + " vs " + std::to_string(nneg));
    if (static_cast<int>(pairing.size()) != npos)
        throw Error(ErrorCode::InvalidPairing, "pairing size");
    std::set<int> used_pos, used_neg;
    for (auto [a, b] : pairing) {
        if (a < 0 || b < 0 || a >= static_cast<int>(comps.size()) || b >= static_cast<int>(comps.size()) ||
            !comps[a].positive || comps[b].positive)
            throw Error(ErrorCode::InvalidPairing, "entry (" + std::to_string(a) + "," + std::to_string(b) + ")");
        used_pos.insert(a);
        used_neg.insert(b);
    }
    if (static_cast<int>(used_pos.size()) != npos || static_cast<int>(used_neg.size()) != nneg)
        throw Error(ErrorCode::InvalidPairing, "not a bijection");
    if (!metric.empty()) {
        if (static_cast<int>(metric.size()) != p.size())
            throw Error(ErrorCode::InvalidMetric, "metric size");
        for (int e = 0; e < p.size(); ++e) {
            if (metric[e].sign() <= 0)
                throw Error(ErrorCode::InvalidMetric, "non-positive length at edge " + std::to_string(e));
            if (metric[e] != metric[p.tau[e]])
                throw Error(ErrorCode::InvalidMetric, "metric not tau-invariant at edge " + std::to_string(e));
        }
        for (auto [a, b] : pairing) {
            QuadNum la(0), lb(0);
            for (int e : comps[a].edges)
                la += metric[e];
            for (int e : comps[b].edges)
                lb += metric[e];
            if (la != lb)
                throw Error(ErrorCode::LengthMismatch, "paired components " + std::to_string(a) + "," +
                                                           std::to_string(b) + ": " + to_string(la) + " vs " +
                                                           to_string(lb));
        }
    }
    return SeparatrixDiagram{p, pairing, metric};
}

SeparatrixDiagram reverse_orientation(const SeparatrixDiagram& d) {
    SeparatrixDiagram r;
    r.prediagram = reverse_orientation(d.prediagram);
    for (auto [a, b] : d.pairing)
        r.pairing.emplace_back(b, a);
    r.metric = d.metric;
    return r;
}

namespace {

struct IsoSearch {
    const SeparatrixDiagram& d1;
    const SeparatrixDiagram& d2;
    IsoLevel level;
    std::vector<std::vector<int>> o1, o2;
    std::vector<std::vector<int>> comp_edges1;
    std::vector<int> comp2_of;
    std::set<std::pair<int, int>> pairs2;
    Perm phi;
    std::vector<bool> used;

    IsoSearch(const SeparatrixDiagram& a, const SeparatrixDiagram& b, IsoLevel lv) : d1(a), d2(b), level(lv) {
        o1 = sigma_orbits(d1.prediagram);
        o2 = sigma_orbits(d2.prediagram);
        phi.assign(d1.prediagram.size(), -1);
        used.assign(o2.size(), false);
        if (level != IsoLevel::Prediagram) {
            for (const auto& c : cylinder_components(d1.prediagram))
                comp_edges1.push_back(c.edges);
            auto c2 = cylinder_components(d2.prediagram);
            comp2_of.assign(d2.prediagram.size(), -1);
            for (std::size_t i = 0; i < c2.size(); ++i)
                for (int e : c2[i].edges)
                    comp2_of[e] = static_cast<int>(i);
            for (auto pr : d2.pairing)
                pairs2.insert(pr);
        }
    }

    bool local_ok(const std::vector<int>& orb) const {
        const auto& p1 = d1.prediagram;
        const auto& p2 = d2.prediagram;
        for (int e : orb) {
            if (p1.positive[e] != p2.positive[phi[e]])
                return false;
            int te = p1.tau[e];
            if (phi[te] >= 0 && phi[te] != p2.tau[phi[e]])
                return false;
            if (level == IsoLevel::ExactMetric && d1.metric[e] != d2.metric[phi[e]])
                return false;
        }
        return true;
    }

    bool global_ok() const {
        if (level == IsoLevel::Prediagram)
            return true;
        for (auto [a, b] : d1.pairing) {
            std::pair<int, int> img{comp2_of[phi[comp_edges1[a][0]]], comp2_of[phi[comp_edges1[b][0]]]};
            if (!pairs2.count(img))
                return false;
        }
        return true;
    }

    bool run(std::size_t i) {
        if (i == o1.size())
            return global_ok();
        const auto& orb = o1[i];
        for (std::size_t j = 0; j < o2.size(); ++j) {
            if (used[j] || o2[j].size() != orb.size())
                continue;
            std::size_t L = orb.size();
            for (std::size_t r = 0; r < L; ++r) {
                for (std::size_t k = 0; k < L; ++k)
                    phi[orb[k]] = o2[j][(k + r) % L];
                used[j] = true;
                if (local_ok(orb) && run(i + 1))
                    return true;
                used[j] = false;
                for (int e : orb)
                    phi[e] = -1;
            }
        }
        return false;
    }
};

} // namespace

std::optional<Perm> find_isomorphism(const SeparatrixDiagram& d1, const SeparatrixDiagram& d2, IsoLevel level) {
    if (d1.prediagram.size() != d2.prediagram.size())
        return std::nullopt;
    if (level != IsoLevel::Prediagram && d1.pairing.size() != d2.pairing.size())
        return std::nullopt;
    if (level == IsoLevel::ExactMetric && (d1.metric.empty() || d2.metric.empty()))
        throw Error(ErrorCode::InvalidMetric, "exact-metric comparison needs metrics on both diagrams");
    IsoSearch s(d1, d2, level);
    if (s.run(0))
        return s.phi;
    return std::nullopt;
}

bool diagrams_isomorphic(const SeparatrixDiagram& d1, const SeparatrixDiagram& d2, IsoLevel level) {
    return find_isomorphism(d1, d2, level).has_value();
}

// ---- text format ----

std::string format_prediagram(const Prediagram& p) {
    std::ostringstream os;
    os << p.size() << "; sigma=";
    for (int e = 0; e < p.size(); ++e)
        os << (e ? " " : "") << p.sigma[e];
    os << "; tau=";
    for (int e = 0; e < p.size(); ++e)
        if (e < p.tau[e])
            os << "(" << e << " " << p.tau[e] << ")";
    os << "; pos={";
    bool first = true;
    for (int e = 0; e < p.size(); ++e)
        if (p.positive[e]) {
            os << (first ? "" : ",") << e;
            first = false;
        }
    os << "}";
    return os.str();
}

std::string format_diagram(const SeparatrixDiagram& d) {
    std::ostringstream os;
    os << format_prediagram(d.prediagram) << "; pairing=";
    for (auto [a, b] : d.pairing)
        os << "(" << a << "," << b << ")";
    if (!d.metric.empty()) {
        os << "; metric=";
        bool first = true;
        for (int e = 0; e < d.prediagram.size(); ++e)
            if (e < d.prediagram.tau[e]) {
                os << (first ? "" : ",") << e << ":" << to_string(d.metric[e]);
                first = false;
            }
    }
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<int> ints_in(const std::string& s) {
    std::vector<int> out;
    std::string cur;
    for (char c : s + " ") {
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && cur.empty()))
            cur += c;
        else if (!cur.empty()) {
            out.push_back(std::stoi(cur));
            cur.clear();
        }
    }
    return out;
}

} // namespace

SeparatrixDiagram parse_diagram(const std::string& raw) {
    std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ';') {
            fields.push_back(trim(cur));
            cur.clear();
        } else
            cur += c;
    }
    if (!trim(cur).empty())
        fields.push_back(trim(cur));
    if (fields.empty())
        throw Error(ErrorCode::ParseError, "empty record");
    int N = 0;
    try {
        N = std::stoi(fields[0]);
    } catch (...) {
        throw Error(ErrorCode::ParseError, "record must start with the edge count");
    }
    Perm sigma, tau(N, -1);
    std::vector<int> pos;
    Pairing pairing;
    std::vector<std::pair<int, std::string>> lengths;
    bool have_pairing = false;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        auto eq = fields[i].find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::ParseError, "field without '=': " + fields[i]);
        std::string key = trim(fields[i].substr(0, eq)), val = trim(fields[i].substr(eq + 1));
        if (key == "sigma")
            sigma = ints_in(val);
        else if (key == "tau") {
            auto v = ints_in(val);
            if (v.size() % 2 != 0)
                throw Error(ErrorCode::ParseError, "tau cycles must be pairs");
            for (std::size_t k = 0; k < v.size(); k += 2) {
                if (v[k] < 0 || v[k] >= N || v[k + 1] < 0 || v[k + 1] >= N)
                    throw Error(ErrorCode::ParseError, "tau edge out of range");
                tau[v[k]] = v[k + 1];
                tau[v[k + 1]] = v[k];
            }
        } else if (key == "pos")
            pos = ints_in(val);
        else if (key == "pairing") {
            auto v = ints_in(val);
            if (v.size() % 2 != 0)
                throw Error(ErrorCode::ParseError, "pairing entries must be pairs");
            for (std::size_t k = 0; k < v.size(); k += 2)
                pairing.emplace_back(v[k], v[k + 1]);
            have_pairing = true;
        } else if (key == "metric") {
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) {
                auto colon = item.find(':');
                if (colon == std::string::npos)
                    throw Error(ErrorCode::ParseError, "metric entry needs ':'");
                lengths.emplace_back(std::stoi(trim(item.substr(0, colon))), trim(item.substr(colon + 1)));
            }
        } else
            throw Error(ErrorCode::ParseError, "unknown field '" + key + "'");
    }
    if (static_cast<int>(sigma.size()) != N)
        throw Error(ErrorCode::ParseError, "sigma has " + std::to_string(sigma.size()) + " entries, expected " +
                                               std::to_string(N));
    for (int t : tau)
        if (t < 0)
            throw Error(ErrorCode::TauNotFixedPointFreeInvolution, "tau does not cover every edge");
    Prediagram p = validate_prediagram(sigma, tau, pos);
    std::vector<QuadNum> metric;
    if (!lengths.empty()) {
        metric.assign(N, QuadNum(0));
        for (auto& [e, s] : lengths) {
            if (e < 0 || e >= N)
                throw Error(ErrorCode::ParseError, "metric edge out of range");
            metric[e] = parse_quadnum(s);
            metric[p.tau[e]] = metric[e];
        }
    }
    if (!have_pairing) {
        if (!metric.empty())
            throw Error(ErrorCode::ParseError, "metric given without pairing");
        return SeparatrixDiagram{p, {}, {}};
    }
    return validate_diagram(p, pairing, metric);
}

Prediagram parse_prediagram(const std::string& line) { return parse_diagram(line).prediagram; }

} // namespace cyldec
