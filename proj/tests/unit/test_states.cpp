#include <doctest.h>

#include <map>

#include "khoverant/polynomial.hpp"
#include "khoverant/states.hpp"
#include "test_support.hpp"

using namespace khoverant;
using testing_support::fixture;

TEST_CASE("trefoil all-A and all-B circle counts") {
    LinkDiagram t = fixture("k3_1");
    CHECK(sA(t) + sB(t) == 5);
    CHECK(turaev_genus_diagram(t) == 0);
    CHECK(is_adequate(t, Smoothing::A));
    CHECK(is_adequate(t, Smoothing::B));
    // The positive trefoil has its B state made of three circles.
    CHECK(sB(t) == 3);
    CHECK(sA(t) == 2);
}

TEST_CASE("state bookkeeping") {
    LinkDiagram d = fixture("k4_1");
    int c = d.crossing_count();
    for (StateBits s = 0; s < (StateBits{1} << c); ++s) {
        KauffmanState st = kauffman_state(d, s);
        CHECK(st.a() + st.b() == c);
        CHECK(st.circles >= 1);
        CHECK(st.circle_of_arc.size() == static_cast<std::size_t>(2 * c));
        // One flip changes the circle count by exactly one.
        for (int k = 0; k < c; ++k) {
            if (s >> k & 1u) continue;
            int diff = kauffman_state(d, s | (StateBits{1} << k)).circles - st.circles;
            CHECK((diff == 1 || diff == -1));
        }
    }
}

TEST_CASE("state circles are the components of the smoothed diagram") {
    LinkDiagram d = fixture("k5_2");
    int c = d.crossing_count();
    for (StateBits s = 0; s < (StateBits{1} << c); s += 3) {
        LinkDiagram r = d;
        // Resolve from the top index down so lower indices stay valid.
        for (int k = c - 1; k >= 0; --k) r = resolve(r, k, (s >> k & 1u) ? Smoothing::B : Smoothing::A);
        CHECK(r.crossing_count() == 0);
        CHECK(r.free_loops() == kauffman_state(d, s).circles);
    }
}

TEST_CASE("explicit smoothing vectors agree with bit masks") {
    LinkDiagram d = fixture("k6_2");
    std::vector<Smoothing> v(d.crossing_count(), Smoothing::A);
    v[1] = v[4] = Smoothing::B;
    CHECK(kauffman_state(d, v).circles == kauffman_state(d, StateBits{0b10010}).circles);
}

TEST_CASE("enhanced states: totals, theta range and parity") {
    for (const char* name : {"k3_1", "k4_1", "hopf", "unknot_kink"}) {
        LinkDiagram d = fixture(name);
        int c = d.crossing_count();
        std::int64_t expected = 0;
        for (StateBits s = 0; s < (StateBits{1} << c); ++s) expected += std::int64_t{1} << kauffman_state(d, s).circles;
        std::int64_t total = 0;
        std::map<std::pair<int, int>, std::int64_t> by_grading;
        for (int j = -c - 2 * c - 2; j <= 3 * c + 2; ++j) {
            for (const auto& e : enumerate_enhanced(d, j)) {
                ++total;
                CHECK(e.j() == j);
                CHECK(e.theta() <= e.state.circles);
                CHECK(e.theta() >= -e.state.circles);
                CHECK((e.j() - e.i() - e.state.circles) % 2 == 0);
                ++by_grading[{e.i(), e.j()}];
            }
        }
        CHECK_MESSAGE(total == expected, name);
        // Label bookkeeping: a state with n circles contributes C(n, x) generators at theta = n - 2x.
        std::map<std::pair<int, int>, std::int64_t> counted;
        for (StateBits s = 0; s < (StateBits{1} << c); ++s) {
            int n = kauffman_state(d, s).circles, b = __builtin_popcountll(s);
            for (int x = 0; x <= n; ++x) counted[{b, b + n - 2 * x}] += static_cast<std::int64_t>(binomial(n, x));
        }
        CHECK(counted == by_grading);
    }
}

TEST_CASE("Turaev genus is zero exactly on alternating diagrams of the corpus") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = f.diagram;
        if (d.crossing_count() == 0 || d.crossing_count() > 20 || is_split(d)) continue;
        int g = turaev_genus_diagram(d);
        CHECK(g >= 0);
        CHECK((g == 0) == (sA(d) + sB(d) == d.crossing_count() + 2));
        if (is_alternating(d)) CHECK_MESSAGE(g == 0, name);
    }
}

TEST_CASE("mask ranks enumerate each popcount class") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 0) == 1);
    std::map<int, std::vector<std::uint64_t>> seen;
    for (std::uint64_t m = 0; m < 64; ++m) seen[__builtin_popcountll(m)].push_back(mask_rank(m));
    for (auto& [k, ranks] : seen)
        for (std::size_t r = 0; r < ranks.size(); ++r) CHECK(ranks[r] == r);
}

TEST_CASE("parallel circle counts agree with the serial pass") {
    LinkDiagram d = fixture("k10_132");
    CHECK(all_circle_counts(d, 1) == all_circle_counts(d, 4));
}
