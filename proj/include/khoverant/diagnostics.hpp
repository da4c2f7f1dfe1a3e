#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "khoverant/classify.hpp"
#include "khoverant/diagram.hpp"
#include "khoverant/homology.hpp"

namespace khoverant {

struct ExtremeRow {
    int j = 0;
    std::int64_t rank = 0;
    std::vector<std::int64_t> torsion;
    std::vector<int> gradings;
    // Set only when the row is a single ℤ in one homological grading.
    std::optional<int> i0;
};

struct ExtremalProfile {
    int j_min = 0, j_max = 0;
    int delta_min = 0, delta_max = 0;
    ExtremeRow low, high;
};

ExtremalProfile extremal_profile(const KhTable& t);

// One side of an extremal identity: 2·i₀ − j_extreme == expected.
struct SideCheck {
    Side side = Side::A;
    bool cyclic = false;  // extremal row is a single ℤ
    std::optional<int> i0;
    int j_extreme = 0;
    std::optional<int> lhs;  // 2·i₀ − j_extreme when i₀ exists
    int rhs = 0;
    bool pass = false;
    std::string reason;
};

// A: 2i₀ − j_min = δ_min + 2.  B: 2i₀ − j_max = δ_max − 2.
SideCheck check_theorem_diagonal(const KhTable& t, Side side);

struct ObstructionReport {
    SideCheck a, b;
    bool fires = false;
    std::string conclusion;
};
ObstructionReport obstruction_report(const KhTable& t);

struct SignatureCheck {
    int sigma = 0;
    SideCheck low;   // 2i₀ − j_min = σ + 1
    SideCheck high;  // 2i₀ − j_max = σ − 1
    bool pass = false;
    // "diagram-certified" when the diagram is both A- and B-Turaev genus one, else "unknown".
    std::string hypothesis = "unknown";
};
SignatureCheck check_signature_relation(const KhTable& t, int sigma);
SignatureCheck check_signature_relation(const LinkDiagram& d, const KhTable& t);

// Extremal unshifted statement for almost alternating diagrams: on the A side
// nothing below 2 − s_A and ℤ at (1, 2 − s_A); on the B side nothing above
// c + s_B − 2 and ℤ at (c − 1, c + s_B − 2), the mirror image of the A side.
struct AakhReport {
    Side side = Side::A;
    int expected_j = 0;
    int expected_i = 0;
    std::optional<int> found_j;
    std::vector<int> gradings;
    KhGroup group;
    bool pass = false;
    std::string detail;
};
// Throws DiagramError when the diagram is not A- or B-almost alternating.
std::vector<AakhReport> check_aakh(const LinkDiagram& d, int threads = 1);

// Property checks over one diagram; each counts what it inspected.
struct PropertyCheck {
    explicit PropertyCheck(std::string n) : name(std::move(n)) {}
    std::string name;
    int checked = 0;
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

PropertyCheck check_d_squared(const LinkDiagram& d);
PropertyCheck check_euler_jones(const LinkDiagram& d, const KhTable& shifted);
// Compares Kh̲(D) with a freshly computed Kh̲(mirror D).
PropertyCheck check_mirror_duality(const LinkDiagram& d, const KhTable& unshifted, int threads = 1);
PropertyCheck check_knight_move(const KhTable& t);
// Parity and bounds on 2i − j from s_A, s_B, c₊, c₋; the narrower window
// when g_T(D) = 1.
PropertyCheck check_diagonal_window(const LinkDiagram& d, const KhTable& shifted);
// span Ṽ(t) ≤ c(D) − g_T(D).
PropertyCheck check_span_bound(const LinkDiagram& d);
PropertyCheck check_les_all(const LinkDiagram& d);
// When j_min(D_A) − 1 < j_min(D_B), the bottom row of Kh̲(D) equals that of Kh̲(D_A).
PropertyCheck check_les_jmin(const LinkDiagram& d, const KhTable& unshifted);

}  // namespace khoverant
