#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "khoverant/diagram.hpp"

namespace khoverant {

// Field used for the rational rank computations; Khovanov torsion orders are
// checked to be coprime to it, so ranks over it agree with ranks over ℚ.
constexpr std::uint64_t kLesPrime = 2147483647ULL;

struct LesWindow {
    int j = 0;
    int i = 0;
    // Dimensions of H^i of the B-subcomplex, the whole complex and the A-quotient.
    std::int64_t sub = 0, whole = 0, quotient = 0;
    // Ranks of the induced maps f_*, g_* and the connecting map out of degree i.
    std::int64_t f_rank = 0, g_rank = 0, connecting_rank = 0;
};

struct LesReport {
    int crossing = 0;
    int windows_checked = 0;
    std::vector<LesWindow> windows;
    std::vector<std::string> violations;
    bool exact() const { return violations.empty(); }
};

// Checks the long exact sequence of the resolutions at one crossing in every
// quantum grading, comparing the sub/quotient complexes with independently
// computed homology of the resolved diagrams.
LesReport check_les(const LinkDiagram& d, int crossing);

}  // namespace khoverant
