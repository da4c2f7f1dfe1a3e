#include <doctest.h>

#include "khoverant/diagnostics.hpp"
#include "khoverant/les.hpp"
#include "khoverant/states.hpp"
#include "test_support.hpp"

using namespace khoverant;
using testing_support::fixture;

TEST_CASE("extremal profile of the right trefoil") {
    ExtremalProfile p = extremal_profile(kh(fixture("k3_1")));
    CHECK(p.j_min == 1);
    CHECK(p.j_max == 9);
    CHECK(p.delta_min == -3);
    CHECK(p.delta_max == -1);
    REQUIRE(p.low.i0.has_value());
    CHECK(*p.low.i0 == 0);
    REQUIRE(p.high.i0.has_value());
    CHECK(*p.high.i0 == 3);
}

TEST_CASE("the diagonal identity on an A-almost alternating diagram") {
    KhTable t = kh(fixture("t34_almost_alternating"));
    SideCheck a = check_theorem_diagonal(t, Side::A);
    CHECK(a.cyclic);
    CHECK(a.pass);
    REQUIRE(a.lhs.has_value());
    CHECK(*a.lhs == a.rhs);
}

TEST_CASE("the diagonal identity on a B-almost alternating diagram") {
    KhTable t = kh(fixture("k7_4_flip1_mirror"));
    CHECK(check_theorem_diagonal(t, Side::B).pass);
    CHECK_FALSE(obstruction_report(t).fires);
}

TEST_CASE("a non-cyclic extremal row fails with a reason") {
    KhTable t;
    t.set(0, 1, {2, {}});
    t.set(1, 5, {1, {}});
    SideCheck a = check_theorem_diagonal(t, Side::A);
    CHECK_FALSE(a.cyclic);
    CHECK_FALSE(a.pass);
    CHECK(a.reason.find("not cyclic") == 0);
}

TEST_CASE("obstruction fires on a table with no cyclic extremal rows") {
    KhTable t;
    t.set(0, -1, {1, {}});
    t.set(1, -1, {1, {}});
    t.set(3, 7, {1, {}});
    t.set(4, 7, {1, {}});
    ObstructionReport r = obstruction_report(t);
    CHECK(r.fires);
    CHECK_FALSE(r.conclusion.empty());
}

TEST_CASE("signature relation") {
    // Right trefoil: σ = −2 and the top row Z at (3, 9) gives 2·3 − 9 = −3 = σ − 1.
    SignatureCheck s = check_signature_relation(fixture("k3_1"), kh(fixture("k3_1")));
    CHECK(s.sigma == -2);
    CHECK(s.high.pass);
    CHECK(s.pass);
    CHECK(s.hypothesis == "diagram-certified");

    SignatureCheck u = check_signature_relation(fixture("k8_19"), kh(fixture("k8_19")));
    CHECK(u.hypothesis == "unknown");
}

TEST_CASE("AAKh on the almost alternating fixtures") {
    for (const char* name : {"t34_almost_alternating", "k7_4_flip1", "k7_4_flip1_mirror", "k8_15_flip2", "k8_15_flip4"}) {
        LinkDiagram d = fixture(name);
        auto reports = check_aakh(d);
        REQUIRE(!reports.empty());
        for (const auto& r : reports) {
            CHECK_MESSAGE(r.pass, name);
            if (r.side == Side::A) {
                CHECK(r.expected_j == 2 - sA(d));
                CHECK(r.expected_i == 1);
            } else {
                CHECK(r.expected_j == d.crossing_count() + sB(d) - 2);
                CHECK(r.expected_i == d.crossing_count() - 1);
            }
        }
    }
    CHECK_THROWS_AS(check_aakh(fixture("k3_1")), DiagramError);
}

TEST_CASE("table checks on small fixtures") {
    for (const char* name : {"k3_1", "k4_1", "hopf", "k6_2", "t34_almost_alternating", "k8_19", "k8_15_flip2"}) {
        LinkDiagram d = fixture(name);
        KhTable shifted = kh(d);
        CHECK_MESSAGE(check_d_squared(d).pass(), name);
        CHECK_MESSAGE(check_euler_jones(d, shifted).pass(), name);
        CHECK_MESSAGE(check_mirror_duality(d, unshifted_kh(d)).pass(), name);
        CHECK_MESSAGE(check_diagonal_window(d, shifted).pass(), name);
        if (d.component_count() == 1) CHECK_MESSAGE(check_knight_move(shifted).pass(), name);
    }
}

TEST_CASE("the checks report violations on a damaged table") {
    LinkDiagram d = fixture("k4_1");
    KhTable t = kh(d);
    t.set(5, 5, {1, {}});
    CHECK_FALSE(check_euler_jones(d, t).pass());
    CHECK_FALSE(check_knight_move(t).pass());
    CHECK_FALSE(check_diagonal_window(d, t).pass());
    KhTable u = unshifted_kh(d);
    u.set(0, 0, {0, {3}});
    CHECK_FALSE(check_mirror_duality(d, u).pass());
}

TEST_CASE("the long exact sequence is exact at every crossing of small fixtures") {
    for (const char* name : {"k3_1", "k4_1", "hopf", "k3_1_kinked", "k5_2"}) {
        LinkDiagram d = fixture(name);
        for (int k = 0; k < d.crossing_count(); ++k) {
            LesReport r = check_les(d, k);
            CHECK_MESSAGE(r.exact(), name);
            CHECK(r.windows_checked > 0);
        }
        CHECK(check_les_jmin(d, unshifted_kh(d)).pass());
    }
}
