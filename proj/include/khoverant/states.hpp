#pragma once

#include <cstdint>
#include <vector>

#include "khoverant/diagram.hpp"

namespace khoverant {

// Bit k set means the B-smoothing at crossing k.
using StateBits = std::uint64_t;

constexpr int kMaxStateCrossings = 40;

struct KauffmanState {
    StateBits choices = 0;
    int crossing_count = 0;
    // Circle index of every arc; circles are numbered by first appearance in
    // arc order, free loops last.
    std::vector<int> circle_of_arc;
    int circles = 0;

    int b() const { return __builtin_popcountll(choices); }
    int a() const { return crossing_count - b(); }
};

// Labels: bit t set means circle t carries x, clear means 1.
struct EnhancedState {
    KauffmanState state;
    std::uint64_t x_labels = 0;

    int theta() const { return state.circles - 2 * __builtin_popcountll(x_labels); }
    int i() const { return state.b(); }
    int j() const { return state.b() + theta(); }
};

// Union-find circle finder reused across many states of one diagram.
class CircleCounter {
public:
    explicit CircleCounter(const LinkDiagram& d);
    int count(StateBits s) const;
    // Fills circle_of_arc (size 2c) and returns the number of circles.
    int label(StateBits s, std::vector<int>& circle_of_arc) const;
    int crossing_count() const { return static_cast<int>(quads_.size()); }
    int free_loops() const { return free_loops_; }

private:
    std::vector<Quad> quads_;
    int free_loops_ = 0;
};

KauffmanState kauffman_state(const LinkDiagram& d, StateBits choices);
KauffmanState kauffman_state(const LinkDiagram& d, const std::vector<Smoothing>& choices);

int sA(const LinkDiagram& d);
int sB(const LinkDiagram& d);
int turaev_genus_diagram(const LinkDiagram& d);
bool is_adequate(const LinkDiagram& d, Smoothing side);

// Circle counts of all 2^c states, indexed by state bits.
std::vector<std::uint8_t> all_circle_counts(const LinkDiagram& d, int threads = 1);

// Rank of a mask among masks of equal popcount, ordered by numeric value.
std::uint64_t mask_rank(std::uint64_t mask);
std::uint64_t binomial(int n, int k);

// Enhanced states of quantum grading j in basis order: homological grading
// ascending, then state bits ascending, then label mask ascending.
std::vector<EnhancedState> enumerate_enhanced(const LinkDiagram& d, int j);

}  // namespace khoverant
