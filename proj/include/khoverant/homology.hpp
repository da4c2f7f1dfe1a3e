#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "khoverant/diagram.hpp"
#include "khoverant/polynomial.hpp"
#include "khoverant/smith.hpp"
#include "khoverant/states.hpp"

namespace khoverant {

// Free rank plus torsion as sorted prime-power orders.
struct KhGroup {
    std::int64_t rank = 0;
    std::vector<std::int64_t> torsion;

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    bool is_integers() const { return rank == 1 && torsion.empty(); }
    friend bool operator==(const KhGroup&, const KhGroup&) = default;
};

class KhTable {
public:
    using Key = std::pair<int, int>;  // (i, j)

    // Stores only nonzero groups.
    void set(int i, int j, KhGroup g);
    const KhGroup& at(int i, int j) const;
    const std::map<Key, KhGroup>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    int j_min() const;
    int j_max() const;
    int delta_min() const;
    int delta_max() const;
    // Homological gradings carrying a nonzero group at quantum grading j.
    std::vector<int> support(int j) const;
    std::int64_t total_rank(int j) const;

    bool shifted = false;
    int c_plus = 0;
    int c_minus = 0;
    // Quantum gradings actually computed; unset means every slice.
    std::optional<std::pair<int, int>> computed_j;

    friend bool operator==(const KhTable& a, const KhTable& b) { return a.entries_ == b.entries_; }

private:
    std::map<Key, KhGroup> entries_;
};

// Circle counts of every state, shared by all slices of one diagram.
class StateCatalog {
public:
    explicit StateCatalog(const LinkDiagram& d, int threads = 1);
    const LinkDiagram& diagram() const { return diagram_; }
    const CircleCounter& counter() const { return counter_; }
    int circles(StateBits s) const { return circles_[s]; }
    // Smallest and largest unshifted quantum gradings of any enhanced state.
    int j_lowest() const { return j_lowest_; }
    int j_highest() const { return j_highest_; }

private:
    LinkDiagram diagram_;
    CircleCounter counter_;
    std::vector<std::uint8_t> circles_;
    int j_lowest_ = 0;
    int j_highest_ = 0;
};

// The Khovanov complex in one quantum grading, all homological degrees.
class QuantumSlice {
public:
    struct Block {
        StateBits state;
        int circles;
        int x_count;
        std::size_t offset;
    };

    QuantumSlice(const StateCatalog& catalog, int j);

    int j() const { return j_; }
    int max_degree() const { return static_cast<int>(blocks_.size()) - 1; }
    std::size_t dimension(int i) const;
    const std::vector<Block>& blocks(int i) const { return blocks_[i]; }
    // Enhanced states of C^{i,j} in basis order.
    std::vector<EnhancedState> basis(int i) const;
    // Matrix of d^{i,j}: rows index C^{i+1,j}, columns index C^{i,j}.
    SparseMatrix differential(int i) const;

private:
    const StateCatalog* catalog_;
    int j_;
    std::vector<std::vector<Block>> blocks_;
    std::vector<std::size_t> dims_;
};

int incidence(const EnhancedState& s0, const EnhancedState& s1);
// −1 exactly when s0 has an odd number of B-smoothings below the flipped crossing.
int sign(const EnhancedState& s0, const EnhancedState& s1);
SparseMatrix boundary_matrix(const LinkDiagram& d, int i, int j);

struct KhOptions {
    // Inclusive quantum-grading window (in the table's own convention).
    std::optional<std::pair<int, int>> j_range;
    int threads = 1;
    bool check_d_squared = true;
};

// Homology of one quantum slice, keyed by homological degree.
std::map<int, KhGroup> slice_homology(const QuantumSlice& slice, bool check_d_squared = true);

KhTable unshifted_kh(const LinkDiagram& d, const KhOptions& options = {});
KhTable kh(const LinkDiagram& d, const KhOptions& options = {});

enum class Extreme { Low, High };
// Scans quantum slices inward from one end until homology appears. Only
// those slices are computed; the result is an unshifted table.
KhTable unshifted_kh_extremal(const LinkDiagram& d, Extreme side, int threads = 1);
KhTable kh_extremal(const LinkDiagram& d, Extreme side, int threads = 1);

// Kh^{i,j}(L) = Kh̲^{i+c₋, j−c₊+2c₋}(D).
KhTable shift_table(const KhTable& unshifted, int c_plus, int c_minus);

// Σ (−1)^i q^j rank Kh^{i,j}.
LaurentPoly euler_characteristic(const KhTable& t);

}  // namespace khoverant
