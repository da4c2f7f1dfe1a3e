#pragma once

#include <array>
#include <string>
#include <vector>

#include "khoverant/diagram.hpp"

namespace khoverant {

enum class Side { A, B };

enum class Verdict {
    alternating,
    A_almost_alternating,
    B_almost_alternating,
    both,
    reducible,
    not_almost_alternating_as_drawn,
};

std::string to_string(Verdict v);

struct AlmostAltStructure {
    int dealternator = -1;
    std::array<int, 2> u{};  // vertices of the unshaded graph
    std::array<int, 2> v{};  // vertices of the shaded graph
    int adj_u = 0;
    int adj_v = 0;
    bool distinct_regions = false;   // u1 ≠ u2 and v1 ≠ v2
    bool no_parallel_crossing = false;  // no other crossing joins u1,u2 or v1,v2
    bool cond_3A = false;
    bool cond_3B = false;
    Verdict verdict = Verdict::not_almost_alternating_as_drawn;
    std::string reason;
};

struct Classification {
    Verdict verdict = Verdict::not_almost_alternating_as_drawn;
    std::string reason;
    std::vector<AlmostAltStructure> dealternators;
};

std::vector<int> find_dealternators(const LinkDiagram& d);
AlmostAltStructure almost_alt_structure(const LinkDiagram& d, int dealternator);
std::array<int, 2> adj_counts(const LinkDiagram& d, int dealternator);
Classification classify(const LinkDiagram& d);

struct TuraevOneFlags {
    bool A_tg1 = false;
    bool B_tg1 = false;
    std::string note;
};
TuraevOneFlags turaev1_flags(const LinkDiagram& d);

// Goeritz matrix of the unshaded regions with the Gordon–Litherland
// correction; positive trefoil has signature −2.
int signature(const LinkDiagram& d);
// Same computation with the colours exchanged; agrees with signature().
int signature_other_colouring(const LinkDiagram& d);

}  // namespace khoverant
