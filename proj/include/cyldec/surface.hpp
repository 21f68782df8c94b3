#pragma once

// Horizontally periodic translation surfaces given by their cylinders.
//
// Cylinder i is the strip [0, c) x [0, h] with its bottom boundary cut into
// the saddle connections of `bottom` (left to right, starting at x = 0) and
// its top boundary into those of `top` (left to right, starting at x = t).
// Every saddle connection id occurs once in some top word and once in some
// bottom word.

#include "cyldec/diagram.hpp"
#include "cyldec/quadnum.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cyldec {

struct Cylinder {
    QuadNum c, h, t;
    std::vector<int> top, bottom;
};

struct CylinderSurface {
    std::int64_t D = 0;
    std::vector<QuadNum> lengths; // per saddle connection
    std::vector<Cylinder> cylinders;

    int saddle_count() const { return static_cast<int>(lengths.size()); }
    int cylinder_count() const { return static_cast<int>(cylinders.size()); }
};

// Checks the word/length invariants, fixes D, recomputes nothing else but
// reduces twists into [0, c).
CylinderSurface validate_surface(CylinderSurface s);

struct Singularities {
    int count = 0;
    std::vector<int> left;      // singularity at the left end of each saddle connection
    std::vector<int> right;     // ... and at its right end
    std::vector<int> junctions; // per singularity; cone angle = pi * junctions
    std::vector<int> order() const;
};

// Singularities are numbered by first appearance along l0, r0, l1, r1, ...
Singularities singularities(const CylinderSurface& s);
// -1 when the boundary word touches several singularities
int bottom_singularity(const CylinderSurface& s, int cyl);
int top_singularity(const CylinderSurface& s, int cyl);
bool is_stable(const CylinderSurface& s);
// from V - E, marked points included
int topological_genus(const CylinderSurface& s);
QuadNum area(const CylinderSurface& s);

struct StratumSignature {
    std::vector<int> kappa; // decreasing
    int genus = 0;
};
StratumSignature stratum_signature(const CylinderSurface& s);

// Cylinder i comes from pairing entry i; its top word is the positive
// component, its bottom word the reversed negative component.  Saddle
// connection ids follow edge_pair_index().
CylinderSurface build_surface(const SeparatrixDiagram& d, const std::vector<QuadNum>& heights,
                              const std::vector<QuadNum>& twists);
// Unit heights, zero twists.
CylinderSurface build_surface(const SeparatrixDiagram& d);

// Edge 2s is the rightward separatrix at the left end of saddle connection s,
// edge 2s+1 the leftward one at its right end.
SeparatrixDiagram horizontal_diagram(const CylinderSurface& s);

struct MixedStructure {
    bool one_singularity = false;
    int sing1 = -1, sing2 = -1;
    std::vector<int> delta;
    std::vector<int> plus, minus, nonmixed;
    std::vector<int> plus0, plus1, minus0, minus1;
    std::vector<QuadNum> u;  // delta_i / c_i
    std::vector<QuadNum> mu; // h_i / c_i
};

// sing1 is the bottom singularity of the first mixed cylinder; delta_i = +1
// when cylinder i goes from sing1 (bottom) to sing2 (top).
MixedStructure mixed_structure(const CylinderSurface& s);

CylinderSurface twist_deform(const CylinderSurface& s, const std::vector<QuadNum>& x);

enum class RelAxis { Real, Imaginary };
// Moves the second singularity by t (real axis) or i*t (imaginary axis)
// relative to the first.  Crossing a height-zero wall needs surgery = true.
CylinderSurface rel_deform(const CylinderSurface& s, const QuadNum& t, RelAxis axis, bool surgery = false,
                           int step_cap = 10000);

// The same surface seen after the rotation by pi.
CylinderSurface rotate_pi(const CylinderSurface& s);

struct TranslationMap {
    std::vector<int> cylinder; // cylinder i of the source -> cylinder[i] of the target
    std::vector<int> saddle;
    std::vector<QuadNum> offset; // bottom coordinate shift per source cylinder
};
std::vector<TranslationMap> translation_isomorphisms(const CylinderSurface& a, const CylinderSurface& b,
                                                     bool first_only = false);
bool translation_equivalent(const CylinderSurface& a, const CylinderSurface& b);

struct NegInvolution {
    std::vector<int> cylinder;
    std::vector<int> saddle;
    std::vector<int> singularity;
    int fixed_points = 0;
    int quotient_genus = 0;
    bool swaps_singularities = false;
};
std::vector<NegInvolution> neg_involutions(const CylinderSurface& s);
std::optional<NegInvolution> detect_neg_involution(const CylinderSurface& s);

// 0 = even, 1 = odd.
int spin_parity(const CylinderSurface& s);

std::string format_surface(const CylinderSurface& s);
CylinderSurface parse_surface(const std::string& text);

} // namespace cyldec
