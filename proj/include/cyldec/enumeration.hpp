#pragma once

#include "cyldec/diagram.hpp"

#include <string>
#include <vector>

namespace cyldec {

struct SingularityProfile {
    std::vector<int> kappa; // sorted in decreasing order

    static SingularityProfile make(std::vector<int> kappa);
    int genus() const;
};

// Parses "2,2" or "3,1".
SingularityProfile parse_profile(const std::string& text);

using LinearForm = std::vector<Rational>;

enum class FeasibilityStatus { Feasible, Infeasible, Disconnected };

struct FeasibilityWitness {
    FeasibilityStatus status = FeasibilityStatus::Disconnected;
    // Feasible: strictly positive solution, one entry per variable
    std::vector<Rational> lengths;
    // Infeasible: multipliers w of the equalities such that
    // combination = sum_j w_j * row_j is >= 0 and nonzero, so every variable in
    // its support is forced to vanish.
    std::vector<Rational> multipliers;
    std::vector<Rational> combination;
};

// Is there x > 0 with row.x = 0 for every row?  Exact; see FeasibilityWitness.
FeasibilityWitness strict_positive_kernel(const std::vector<LinearForm>& equalities, int nvars);

// Re-checks a witness or certificate by substitution.
bool verify_witness(const std::vector<LinearForm>& equalities, int nvars, const FeasibilityWitness& w);

std::vector<MinimalType> enumerate_types(int n, bool quotient_by_reversal);

std::vector<Prediagram> enumerate_prediagrams(const SingularityProfile& profile, bool stable = true);
std::vector<Pairing> enumerate_pairings(const Prediagram& p);
bool surface_connected(const Prediagram& p, const Pairing& pairing);

// Rows l(c+) - l(m(c+)) over the edge-pair variables of edge_pair_index().
std::vector<LinearForm> pairing_equalities(const Prediagram& p, const Pairing& pairing);
FeasibilityWitness metric_feasible(const Prediagram& p, const Pairing& pairing);
// Per-edge lengths from a per-variable witness.
std::vector<QuadNum> metric_from_witness(const Prediagram& p, const std::vector<Rational>& lengths);

// Cylinder i (pairing entry i) is mixed when its two boundary components sit
// on different sigma-orbits.
std::vector<bool> mixed_flags(const Prediagram& p, const Pairing& pairing);

struct ClassifyOptions {
    bool quotient_minus_omega = false;
    bool require_mixed = false;
    unsigned threads = 1;
};

struct InfeasibleCase {
    Pairing pairing;
    FeasibilityWitness certificate;
};

struct TypeTally {
    std::vector<MinimalType> types; // one per singularity, in profile order
    int positive_components = 0;
    int pairings = 0;
    int disconnected = 0;
    int infeasible = 0;
    int feasible = 0;
    int classes = 0;
    std::vector<Pairing> disconnected_cases;
    std::vector<InfeasibleCase> infeasible_cases;
};

struct ClassificationEntry {
    SeparatrixDiagram diagram; // carries one feasible witness metric
    int class_id = 0;
    std::vector<bool> mixed;
    std::string component_label = "n/a";
    std::vector<MinimalType> types;
    int members = 1; // feasible pairings merged into this class
};

struct Classification {
    SingularityProfile profile;
    ClassifyOptions options;
    std::vector<ClassificationEntry> entries;
    std::vector<TypeTally> tallies;
    int removed_by_quotient = 0;
    int removed_by_mixed_filter = 0;
};

// Sets component_label from the witness surface of each entry: "hyp" when
// the stratum has a hyperelliptic component and the surface carries its
// involution, else "even"/"odd" for even profiles, "nonhyp" or "n/a".
void label_components(Classification& c);

Classification classify_stratum(const SingularityProfile& profile, const ClassifyOptions& options);

std::string types_label(const std::vector<MinimalType>& types);
std::string format_types_table(const SingularityProfile& profile);
std::string format_summary(const Classification& c);
std::string format_certificate(const Prediagram& p, const FeasibilityWitness& w);

} // namespace cyldec
