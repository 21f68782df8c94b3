#pragma once
// Shared inputs for the unit tests.

#include "cyldec/enumeration.hpp"
#include "cyldec/surface.hpp"

namespace fixture {

using namespace cyldec;

inline const Classification& h22() {
    static const Classification c = classify_stratum(SingularityProfile::make({2, 2}), {true, true, 2});
    return c;
}

inline const Classification& h31() {
    static const Classification c = classify_stratum(SingularityProfile::make({3, 1}), {true, true, 2});
    return c;
}

// 1-based cycles to a 0-based permutation of n points.
inline Perm perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    Perm p(n);
    for (int i = 0; i < n; ++i)
        p[i] = i;
    for (const auto& c : cycles)
        for (std::size_t k = 0; k < c.size(); ++k)
            p[c[k] - 1] = c[(k + 1) % c.size()] - 1;
    return p;
}

inline MinimalType type_of(int n, const std::vector<std::vector<int>>& cycles) {
    return canonical_type(perm_from_cycles(n, cycles));
}

inline CylinderSurface witness(const ClassificationEntry& e) { return build_surface(e.diagram); }

// Two cylinders in H(2): the L-shaped table.
inline CylinderSurface l_shape() {
    return parse_surface("D=0\n"
                         "c=2;h=1;t=0;top=[1,2];bottom=[0,1]\n"
                         "c=1;h=1;t=0;top=[0];bottom=[2]\n"
                         "l0=1\nl1=1\nl2=1\n");
}

} // namespace fixture
