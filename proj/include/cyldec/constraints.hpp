#pragma once

// Necessary conditions for a horizontally periodic surface to lie in a
// proper rank-one invariant locus, decided exactly over Q(sqrt D).

#include "cyldec/surface.hpp"

#include <string>
#include <vector>

namespace cyldec {

struct CommensurabilityPartition {
    std::vector<std::vector<int>> classes;       // i ~ j iff v_i / v_j rational
    std::vector<std::vector<Rational>> relations; // basis of {p : sum p_i v_i = 0}, integral
    int degree = 0;                               // dim_Q span(v)
};

// Values must be nonzero and share one field.
CommensurabilityPartition commensurability(const std::vector<QuadNum>& values);

struct VSpace {
    MixedStructure mixed;
    std::vector<QuadNum> u, mu;
    int d = 0;
    std::vector<std::vector<Rational>> relations; // rational relations among the u_i
};
VSpace v_space(const CylinderSurface& s);

enum class Verdict { Holds, Violated, NotApplicable };
const char* verdict_name(Verdict v);

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::NotApplicable;
    std::string witness; // filled when violated
    std::string note;
};

CheckResult check_rational_closure(const CylinderSurface& s);
CheckResult check_equation_propagation(const CylinderSurface& s);
CheckResult check_notmixed(const CylinderSurface& s);
// (a) non-equivalent mixed cylinders are incommensurable
CheckResult check_noneq(const CylinderSurface& s);
// (b) commensurable equivalent cylinders have equal heights, (c) and conversely
CheckResult check_height(const CylinderSurface& s);
CheckResult check_noneq_and_height(const CylinderSurface& s);
CheckResult check_adjacent(const CylinderSurface& s);

struct FieldGenerators {
    std::vector<QuadNum> ratios; // c_i / c_base, i != base
    int degree = 1;
};
FieldGenerators field_generators(const CylinderSurface& s, int base = 0);
CheckResult check_field_degree(const CylinderSurface& s);

// Cylinders i, j share a saddle connection; 2-adjacent when they share one
// on each boundary.
bool adjacent(const CylinderSurface& s, int i, int j);
bool two_adjacent(const CylinderSurface& s, int i, int j);

struct ConstraintReport {
    int d = 0;
    std::vector<CheckResult> checks; // rational_closure .. field_degree
    bool any_violated() const;
};
ConstraintReport check_all(const CylinderSurface& s);
std::string format_report(const ConstraintReport& r);

// Scripted replays of the two classification arguments.
struct ScenarioStep {
    int index = 0;
    bool checked = true; // false: cited, not machine-checked
    std::string text;
};
struct ScenarioResult {
    std::string name;
    std::vector<ScenarioStep> steps;
    std::vector<CylinderSurface> surfaces; // named snapshots, in step order
    std::vector<std::string> surface_names;
    std::string format_log() const;
};
// Throws ScenarioAssertionFailed (message carries the step index) or UnknownScenario.
ScenarioResult replay_scenario(const std::string& name);
std::vector<std::string> scenario_names();

} // namespace cyldec
