#include <doctest.h>

#include "khoverant/classify.hpp"
#include "khoverant/states.hpp"
#include "test_support.hpp"

using namespace khoverant;
using testing_support::fixture;

TEST_CASE("the T(3,4) diagram is A-almost alternating at its marked crossing") {
    LinkDiagram d = fixture("t34_almost_alternating");
    CHECK(find_dealternators(d) == std::vector<int>{2});
    AlmostAltStructure s = almost_alt_structure(d, 2);
    CHECK(s.distinct_regions);
    CHECK(s.no_parallel_crossing);
    CHECK(s.adj_u == 0);
    CHECK(s.adj_v == 1);
    CHECK(s.cond_3A);
    CHECK_FALSE(s.cond_3B);
    CHECK(adj_counts(d, 2) == std::array<int, 2>{0, 1});
    CHECK(classify(d).verdict == Verdict::A_almost_alternating);
}

TEST_CASE("mirroring exchanges the A and B verdicts") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = f.diagram;
        if (d.crossing_count() == 0 || is_split(d)) continue;
        Verdict v = classify(d).verdict, m = classify(mirror(d)).verdict;
        if (v == Verdict::A_almost_alternating) CHECK_MESSAGE(m == Verdict::B_almost_alternating, name);
        else if (v == Verdict::B_almost_alternating) CHECK_MESSAGE(m == Verdict::A_almost_alternating, name);
        else CHECK_MESSAGE(m == v, name);
    }
    CHECK(classify(fixture("k7_4_flip1_mirror")).verdict == Verdict::B_almost_alternating);
}

TEST_CASE("conditions 3A and 3B are the vanishing of adj") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = f.diagram;
        if (d.crossing_count() == 0 || is_split(d)) continue;
        for (int k : find_dealternators(d)) {
            AlmostAltStructure s = almost_alt_structure(d, k);
            CHECK(s.adj_u >= 0);
            CHECK(s.adj_v >= 0);
            CHECK_MESSAGE(s.cond_3A == (s.adj_u == 0), name);
            CHECK_MESSAGE(s.cond_3B == (s.adj_v == 0), name);
        }
    }
}

TEST_CASE("alternating and non almost alternating verdicts") {
    CHECK(classify(fixture("k3_1")).verdict == Verdict::alternating);
    CHECK(classify(fixture("k8_19")).verdict == Verdict::not_almost_alternating_as_drawn);
    CHECK(find_dealternators(fixture("k3_1")).empty());
    // A single flipped crossing of an alternating diagram is the only dealternator.
    CHECK(find_dealternators(fixture("k8_15_flip2")) == std::vector<int>{2});
    CHECK(find_dealternators(fixture("k8_15_flip4")) == std::vector<int>{4});
}

TEST_CASE("flipping any crossing of a reduced alternating diagram gives an almost alternating diagram") {
    LinkDiagram d = fixture("k7_4");
    for (int k = 0; k < d.crossing_count(); ++k) {
        LinkDiagram f = flip_crossing(d, k);
        CHECK(find_dealternators(f) == std::vector<int>{k});
        Verdict v = classify(f).verdict;
        CHECK(v != Verdict::alternating);
        CHECK(v != Verdict::not_almost_alternating_as_drawn);
        // An almost alternating diagram of this kind has Turaev genus one.
        CHECK(turaev_genus_diagram(f) == 1);
    }
}

TEST_CASE("Turaev genus one flags") {
    TuraevOneFlags t = turaev1_flags(fixture("t34_almost_alternating"));
    CHECK(t.A_tg1);
    TuraevOneFlags m = turaev1_flags(fixture("k7_4_flip1_mirror"));
    CHECK(m.B_tg1);
}

TEST_CASE("signature anchors") {
    CHECK(signature(fixture("k3_1")) == -2);
    CHECK(signature(fixture("trefoil_left")) == 2);
    CHECK(signature(fixture("k4_1")) == 0);
    CHECK(signature(fixture("k12n_809")) == -2);
    CHECK(signature(fixture("k12n_835")) == 0);
    CHECK(signature(fixture("k3_1_kinked")) == -2);
}

TEST_CASE("signature matches KnotInfo in both colourings") {
    for (const auto& row : testing_support::knotinfo_rows()) {
        CHECK_MESSAGE(signature(row.diagram) == row.signature, row.name);
        CHECK_MESSAGE(signature_other_colouring(row.diagram) == row.signature, row.name);
        CHECK_MESSAGE(signature(mirror(row.diagram)) == -row.signature, row.name);
    }
}

TEST_CASE("Traczyk's identity on alternating knots") {
    for (const auto& row : testing_support::knotinfo_rows()) {
        if (!row.alternating || !is_alternating(row.diagram)) continue;
        const LinkDiagram& d = row.diagram;
        SignCount sc = crossing_signs(d);
        CHECK_MESSAGE(row.signature == sA(d) - sc.positive - 1, row.name);
        CHECK_MESSAGE(row.signature == -sB(d) + sc.negative + 1, row.name);
    }
}

TEST_CASE("signature of Turaev genus one fixtures is within one of s_A - c_+") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = f.diagram;
        if (d.crossing_count() == 0 || is_split(d) || turaev_genus_diagram(d) != 1) continue;
        int base = sA(d) - crossing_signs(d).positive;
        int s = signature(d);
        CHECK_MESSAGE((s == base - 1 || s == base + 1), name);
    }
}

TEST_CASE("verdict names") {
    CHECK(to_string(Verdict::A_almost_alternating) == "A_almost_alternating");
    CHECK(to_string(Verdict::not_almost_alternating_as_drawn) == "not_almost_alternating_as_drawn");
}
