#include "cyldec/enumeration.hpp"

#include "cyldec/error.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace cyldec {

SingularityProfile SingularityProfile::make(std::vector<int> kappa) {
    if (kappa.empty())
        throw Error(ErrorCode::UnsupportedProfile, "empty profile");
    int sum = 0;
    for (int k : kappa) {
        if (k <= 0)
            throw Error(ErrorCode::UnsupportedProfile, "orders must be positive");
        sum += k;
    }
    if (sum % 2 != 0)
        throw Error(ErrorCode::UnsupportedProfile, "sum of orders must be even");
    std::sort(kappa.rbegin(), kappa.rend());
    return SingularityProfile{kappa};
}

int SingularityProfile::genus() const {
    int sum = std::accumulate(kappa.begin(), kappa.end(), 0);
    return (sum + 2) / 2;
}

SingularityProfile parse_profile(const std::string& text) {
    std::vector<int> k;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            k.push_back(std::stoi(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "bad profile '" + text + "'");
        }
    }
    return SingularityProfile::make(k);
}

std::vector<MinimalType> enumerate_types(int n, bool quotient) {
    if (n < 1)
        throw Error(ErrorCode::UnsupportedProfile, "n must be positive");
    Perm f(n);
    std::iota(f.begin(), f.end(), 0);
    std::set<MinimalType> all;
    do {
        all.insert(canonical_type(f));
    } while (std::next_permutation(f.begin(), f.end()));
    if (!quotient)
        return {all.begin(), all.end()};
    std::set<MinimalType> reps;
    for (const auto& t : all)
        reps.insert(std::min(t, reversed_type(t)));
    return {reps.begin(), reps.end()};
}

namespace {

// Every multiset of component types, one component per singularity.
void for_each_type_choice(const SingularityProfile& profile,
                          const std::function<void(const std::vector<MinimalType>&)>& visit) {
    std::map<int, std::vector<MinimalType>> per_n;
    for (int k : profile.kappa)
        if (!per_n.count(k + 1))
            per_n[k + 1] = enumerate_types(k + 1, false);
    std::vector<MinimalType> choice;
    std::vector<int> index;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == profile.kappa.size()) {
            visit(choice);
            return;
        }
        const auto& list = per_n[profile.kappa[i] + 1];
        int start = 0;
        if (i > 0 && profile.kappa[i] == profile.kappa[i - 1])
            start = index.back(); // equal orders: nondecreasing choice
        for (int j = start; j < static_cast<int>(list.size()); ++j) {
            choice.push_back(list[j]);
            index.push_back(j);
            rec(i + 1);
            choice.pop_back();
            index.pop_back();
        }
    };
    rec(0);
}

std::pair<int, int> component_counts(const Prediagram& p) {
    int pos = 0, neg = 0;
    for (const auto& c : cylinder_components(p))
        (c.positive ? pos : neg)++;
    return {pos, neg};
}

} // namespace

std::vector<Prediagram> enumerate_prediagrams(const SingularityProfile& profile, bool stable) {
    if (!stable)
        throw Error(ErrorCode::UnsupportedProfile, "only stable prediagrams are enumerated");
    std::vector<Prediagram> out;
    for_each_type_choice(profile, [&](const std::vector<MinimalType>& types) {
        std::vector<Prediagram> parts;
        for (const auto& t : types)
            parts.push_back(component_from_type(t));
        Prediagram p = disjoint_union(parts);
        auto [pos, neg] = component_counts(p);
        if (pos == neg)
            out.push_back(std::move(p));
    });
    return out;
}

std::vector<Pairing> enumerate_pairings(const Prediagram& p) {
    auto comps = cylinder_components(p);
    std::vector<int> P, M;
    for (std::size_t i = 0; i < comps.size(); ++i)
        (comps[i].positive ? P : M).push_back(static_cast<int>(i));
    if (P.size() != M.size())
        throw Error(ErrorCode::UnequalComponentCounts,
                    std::to_string(P.size()) + " positive vs " + std::to_string(M.size()) + " negative");
    std::vector<Pairing> out;
    do {
        Pairing m;
        for (std::size_t i = 0; i < P.size(); ++i)
            m.emplace_back(P[i], M[i]);
        out.push_back(m);
    } while (std::next_permutation(M.begin(), M.end()));
    return out;
}

bool surface_connected(const Prediagram& p, const Pairing& pairing) {
    int n = p.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (int e = 0; e < n; ++e) {
        unite(e, p.sigma[e]);
        unite(e, p.tau[e]);
    }
    auto comps = cylinder_components(p);
    for (auto [a, b] : pairing)
        unite(comps[a].edges[0], comps[b].edges[0]);
    for (int e = 0; e < n; ++e)
        if (find(e) != find(0))
            return false;
    return true;
}

std::vector<LinearForm> pairing_equalities(const Prediagram& p, const Pairing& pairing) {
    auto comps = cylinder_components(p);
    auto var = edge_pair_index(p);
    int nv = edge_pair_count(p);
    std::vector<LinearForm> rows;
    for (auto [a, b] : pairing) {
        LinearForm r(nv, Rational(0));
        for (int e : comps[a].edges)
            r[var[e]] += 1;
        for (int e : comps[b].edges)
            r[var[e]] -= 1;
        rows.push_back(r);
    }
    return rows;
}

FeasibilityWitness metric_feasible(const Prediagram& p, const Pairing& pairing) {
    if (!surface_connected(p, pairing))
        return FeasibilityWitness{};
    return strict_positive_kernel(pairing_equalities(p, pairing), edge_pair_count(p));
}

std::vector<QuadNum> metric_from_witness(const Prediagram& p, const std::vector<Rational>& lengths) {
    auto var = edge_pair_index(p);
    std::vector<QuadNum> m;
    for (int e = 0; e < p.size(); ++e)
        m.emplace_back(lengths.at(var[e]));
    return m;
}

std::vector<bool> mixed_flags(const Prediagram& p, const Pairing& pairing) {
    auto comps = cylinder_components(p);
    auto sing = sigma_orbit_index(p);
    std::vector<bool> out;
    for (auto [a, b] : pairing)
        out.push_back(sing[comps[a].edges[0]] != sing[comps[b].edges[0]]);
    return out;
}

std::string types_label(const std::vector<MinimalType>& types) {
    std::string s = "[";
    for (std::size_t i = 0; i < types.size(); ++i)
        s += (i ? ", " : "") + type_cycles(types[i]);
    return s + "]";
}

Classification classify_stratum(const SingularityProfile& profile, const ClassifyOptions& options) {
    Classification out;
    out.profile = profile;
    out.options = options;

    struct Candidate {
        std::size_t tally;
        Prediagram p;
        Pairing m;
        FeasibilityWitness w;
    };
    std::vector<Candidate> cands;
    for_each_type_choice(profile, [&](const std::vector<MinimalType>& types) {
        std::vector<Prediagram> parts;
        for (const auto& t : types)
            parts.push_back(component_from_type(t));
        Prediagram p = disjoint_union(parts);
        auto [pos, neg] = component_counts(p);
        if (pos != neg)
            return;
        TypeTally t;
        t.types = types;
        t.positive_components = pos;
        out.tallies.push_back(t);
        for (auto& m : enumerate_pairings(p))
            cands.push_back(Candidate{out.tallies.size() - 1, p, m, {}});
    });

    // sharded evaluation; results land in fixed slots so the merge is deterministic
    unsigned nthreads = std::max(1u, options.threads);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cands.size(); i = next++)
            cands[i].w = metric_feasible(cands[i].p, cands[i].m);
    };
    if (nthreads == 1)
        work();
    else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }

    std::vector<ClassificationEntry> classes;
    std::vector<std::size_t> class_tally;
    for (auto& c : cands) {
        auto& t = out.tallies[c.tally];
        t.pairings++;
        if (c.w.status == FeasibilityStatus::Disconnected) {
            t.disconnected++;
            t.disconnected_cases.push_back(c.m);
            continue;
        }
        if (c.w.status == FeasibilityStatus::Infeasible) {
            t.infeasible++;
            t.infeasible_cases.push_back(InfeasibleCase{c.m, c.w});
            continue;
        }
        t.feasible++;
        SeparatrixDiagram d = validate_diagram(c.p, c.m, metric_from_witness(c.p, c.w.lengths));
        bool merged = false;
        for (std::size_t k = 0; k < classes.size(); ++k)
            if (class_tally[k] == c.tally && diagrams_isomorphic(classes[k].diagram, d, IsoLevel::Pairing)) {
                classes[k].members++;
                merged = true;
                break;
            }
        if (merged)
            continue;
        t.classes++;
        ClassificationEntry e;
        e.diagram = d;
        e.mixed = mixed_flags(c.p, c.m);
        e.types = t.types;
        classes.push_back(e);
        class_tally.push_back(c.tally);
    }

    std::vector<ClassificationEntry> kept;
    for (auto& e : classes) {
        if (options.require_mixed && std::none_of(e.mixed.begin(), e.mixed.end(), [](bool b) { return b; })) {
            out.removed_by_mixed_filter++;
            continue;
        }
        if (options.quotient_minus_omega) {
            SeparatrixDiagram r = reverse_orientation(e.diagram);
            bool dup = false;
            for (const auto& k : kept)
                if (diagrams_isomorphic(k.diagram, r, IsoLevel::Pairing)) {
                    dup = true;
                    break;
                }
            if (dup) {
                out.removed_by_quotient++;
                continue;
            }
        }
        e.class_id = static_cast<int>(kept.size()) + 1;
        kept.push_back(e);
    }
    out.entries = std::move(kept);
    label_components(out);
    return out;
}

std::string format_types_table(const SingularityProfile& profile) {
    std::ostringstream os;
    std::set<int> ns;
    for (int k : profile.kappa)
        ns.insert(k + 1);
    for (int n : ns) {
        auto all = enumerate_types(n, false);
        os << "n=" << n << " (order " << n - 1 << "): " << all.size() << " types, "
           << enumerate_types(n, true).size() << " up to reversal\n";
        for (const auto& t : all) {
            auto comps = cylinder_components(component_from_type(t));
            int pos = 0;
            for (const auto& c : comps)
                pos += c.positive ? 1 : 0;
            os << "  " << type_cycles(t) << "  reversed=" << type_cycles(reversed_type(t)) << "  components +"
               << pos << "/-" << comps.size() - pos << "\n";
        }
    }
    os << "admissible type choices for kappa=(";
    for (std::size_t i = 0; i < profile.kappa.size(); ++i)
        os << (i ? "," : "") << profile.kappa[i];
    os << "):\n";
    for (const auto& p : enumerate_prediagrams(profile))
        os << "  " << types_label(component_types(p)) << "\n";
    return os.str();
}

std::string format_certificate(const Prediagram& p, const FeasibilityWitness& w) {
    std::ostringstream os;
    auto var = edge_pair_index(p);
    std::vector<int> rep(edge_pair_count(p), -1);
    for (int e = p.size() - 1; e >= 0; --e)
        rep[var[e]] = e;
    if (w.status == FeasibilityStatus::Feasible) {
        os << "lengths";
        for (std::size_t i = 0; i < w.lengths.size(); ++i)
            os << " l" << rep[i] << "=" << to_string(w.lengths[i]);
    } else if (w.status == FeasibilityStatus::Infeasible) {
        os << "sum";
        for (std::size_t j = 0; j < w.multipliers.size(); ++j)
            if (w.multipliers[j] != 0)
                os << " " << (w.multipliers[j] > 0 ? "+" : "") << to_string(w.multipliers[j]) << "*eq" << j;
        os << " gives";
        bool first = true;
        for (std::size_t i = 0; i < w.combination.size(); ++i)
            if (w.combination[i] != 0) {
                os << (first ? " " : " + ") << to_string(w.combination[i]) << "*l" << rep[i];
                first = false;
            }
        os << " = 0";
    } else
        os << "disconnected";
    return os.str();
}

std::string format_summary(const Classification& c) {
    std::ostringstream os;
    os << "kappa=(";
    for (std::size_t i = 0; i < c.profile.kappa.size(); ++i)
        os << (i ? "," : "") << c.profile.kappa[i];
    os << ") quotient_minus_omega=" << (c.options.quotient_minus_omega ? "yes" : "no")
       << " mixed_only=" << (c.options.require_mixed ? "yes" : "no") << "\n";
    os << "types                     +comp pairings disconnected infeasible feasible classes\n";
    int total = 0;
    for (const auto& t : c.tallies) {
        std::string label = types_label(t.types);
        label.resize(std::max<std::size_t>(label.size(), 26), ' ');
        os << label << t.positive_components << "     " << t.pairings << "        " << t.disconnected
           << "            " << t.infeasible << "          " << t.feasible << "        " << t.classes << "\n";
        total += t.classes;
    }
    os << "classes before filters: " << total << "; removed by mixed filter: " << c.removed_by_mixed_filter
       << "; removed by -omega quotient: " << c.removed_by_quotient << "; final: " << c.entries.size() << "\n";
    for (const auto& t : c.tallies) {
        if (t.infeasible_cases.empty())
            continue;
        os << "certificates for " << types_label(t.types) << ":\n";
        Prediagram p;
        {
            std::vector<Prediagram> parts;
            for (const auto& ty : t.types)
                parts.push_back(component_from_type(ty));
            p = disjoint_union(parts);
        }
        for (const auto& ic : t.infeasible_cases) {
            os << "  pairing=";
            for (auto [a, b] : ic.pairing)
                os << "(" << a << "," << b << ")";
            os << "  " << format_certificate(p, ic.certificate) << "\n";
        }
    }
    return os.str();
}

} // namespace cyldec
