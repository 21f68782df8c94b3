#pragma once

// Command-line front end and the pieces of it worth testing directly.

#include "cyldec/enumeration.hpp"
#include "cyldec/surface.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cyldec {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIO = 3;

// Golden list: lines "<component> | <diagram record> # comment".
struct GoldenEntry {
    std::string component;
    SeparatrixDiagram diagram;
    std::string comment;
};
std::vector<GoldenEntry> parse_golden(const std::string& text);

struct AppendixComparison {
    std::vector<int> unmatched_computed; // class ids with no golden entry
    std::vector<int> unmatched_golden;   // golden line indices (0-based) with no class
    std::vector<std::string> label_mismatches;
    std::vector<std::pair<std::string, int>> computed_counts, golden_counts; // per component, sorted
    bool ok() const;
    std::string format() const;
};
// Matches up to isomorphism of the diagram or its reversal.
AppendixComparison compare_to_golden(const Classification& c, const std::vector<GoldenEntry>& golden);

// Rectangle picture: one rectangle per cylinder, twists drawn as offsets of
// the top marks, x and dot glyphs for the first two singularities, letters
// for the saddle connections.  Deterministic.
std::string surface_svg(const CylinderSurface& s);

std::string surface_json(const CylinderSurface& s);

// Returns the exit code; normal output to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cyldec
