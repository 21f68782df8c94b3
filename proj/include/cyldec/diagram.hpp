#pragma once

// Prediagrams of horizontal separatrices and diagrams of separatrices.
//
// Edges are 0..N-1.  sigma turns an outgoing horizontal separatrix
// counterclockwise by pi around its singularity, tau pairs the two ends of
// a saddle connection, positive[e] marks rightward separatrices (E+).

#include "cyldec/quadnum.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyldec {

using Perm = std::vector<int>;

struct Prediagram {
    Perm sigma;
    Perm tau;
    std::vector<bool> positive;

    int size() const { return static_cast<int>(sigma.size()); }
    bool operator==(const Prediagram&) const = default;
};

struct CylinderComponent {
    std::vector<int> edges; // sigma_inf orbit, starting at its smallest edge
    bool positive = true;
};

struct MinimalType {
    int n = 0;
    Perm f;

    bool operator==(const MinimalType&) const = default;
    auto operator<=>(const MinimalType& o) const {
        if (n != o.n)
            return n <=> o.n;
        return f <=> o.f;
    }
};

// (positive component index, negative component index), indices into
// cylinder_components().  Entry i describes cylinder i.
using Pairing = std::vector<std::pair<int, int>>;

struct SeparatrixDiagram {
    Prediagram prediagram;
    Pairing pairing;
    // length per edge, tau-invariant; empty when metric-free
    std::vector<QuadNum> metric;
};

enum class IsoLevel { Prediagram, Pairing, ExactMetric };

Prediagram validate_prediagram(const Perm& sigma, const Perm& tau, const std::vector<int>& positive_set);
Prediagram validate_prediagram(const Perm& sigma, const Perm& tau, const std::vector<bool>& positive);

bool is_permutation(const Perm& p);
Perm inverse(const Perm& p);
std::vector<std::vector<int>> orbits(const Perm& p);
std::vector<std::vector<int>> sigma_orbits(const Prediagram& p);
// orbit index of each edge under sigma
std::vector<int> sigma_orbit_index(const Prediagram& p);

bool is_alternating(const Prediagram& p);
bool is_stable(const Prediagram& p);

// Edge sets of the <sigma,tau>-orbits in increasing order of smallest edge.
std::vector<std::vector<int>> component_edge_sets(const Prediagram& p);
std::vector<Prediagram> connected_components(const Prediagram& p);
Prediagram induced_prediagram(const Prediagram& p, const std::vector<int>& edges);
Prediagram disjoint_union(const std::vector<Prediagram>& parts);

std::vector<CylinderComponent> cylinder_components(const Prediagram& p);

MinimalType canonical_type(const Perm& f);
// canonical((f o c_n)^{-1})
MinimalType reversed_type(const MinimalType& t);
MinimalType minimal_type(const Prediagram& component);
// types of all components, sorted
std::vector<MinimalType> component_types(const Prediagram& p);
// sigma = c_{2n}, tau pairs (2k, 2f(k)+1), positive = even edges
Prediagram component_from_type(const MinimalType& t);
std::string type_cycles(const MinimalType& t); // 1-based cycle notation

Prediagram reverse_orientation(const Prediagram& p);
bool are_isomorphic(const Prediagram& p, const Prediagram& q);

SeparatrixDiagram validate_diagram(const Prediagram& p, const Pairing& pairing, const std::vector<QuadNum>& metric);
SeparatrixDiagram reverse_orientation(const SeparatrixDiagram& d);

// Edge bijection phi (p-edge -> q-edge) commuting with sigma, tau and
// orientation that transports the pairing (and the metric at ExactMetric).
std::optional<Perm> find_isomorphism(const SeparatrixDiagram& d1, const SeparatrixDiagram& d2, IsoLevel level);
bool diagrams_isomorphic(const SeparatrixDiagram& d1, const SeparatrixDiagram& d2,
                         IsoLevel level = IsoLevel::Pairing);

// Variables of the metric: one per tau-orbit, indexed by increasing smallest edge.
std::vector<int> edge_pair_index(const Prediagram& p);
int edge_pair_count(const Prediagram& p);

// Text format.
std::string format_prediagram(const Prediagram& p);
std::string format_diagram(const SeparatrixDiagram& d);
// Accepts a prediagram or diagram record; '#' starts a comment.
SeparatrixDiagram parse_diagram(const std::string& line);
Prediagram parse_prediagram(const std::string& line);

} // namespace cyldec
