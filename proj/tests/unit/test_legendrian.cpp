#include <doctest.h>

#include "khoverant/legendrian.hpp"
#include "khoverant/states.hpp"
#include "test_support.hpp"

using namespace khoverant;
using testing_support::fixture;

namespace {

bool has_loop(const PlaneGraph& g) {
    for (auto [a, b] : g.edges)
        if (a == b) return true;
    return false;
}

void check_layout(const PlaneGraph& g, std::optional<int> marked, const std::string& name) {
    MondrianDiagram m = mondrian_from_graph(g, marked);
    CHECK_MESSAGE(mondrian_violations(m).empty(), name);
    CHECK_MESSAGE(same_rotation(contraction(m), g), name);
    CHECK(m.horizontals.size() == static_cast<std::size_t>(g.vertex_count));
    CHECK(m.verticals.size() == g.edges.size());
    if (marked) CHECK_MESSAGE(placement_holds(m, *marked), name);
}

}  // namespace

TEST_CASE("theta graph layout") {
    PlaneGraph theta;
    theta.vertex_count = 2;
    theta.edges = {{0, 1}, {0, 1}, {0, 1}};
    theta.rotation = {{0, 1, 2}, {2, 1, 0}};
    check_layout(theta, std::nullopt, "theta");
    // A marked edge must be the only edge between its endpoints.
    CHECK_THROWS_AS(mondrian_from_graph(theta, 1), DiagramError);
    PlaneGraph square;
    square.vertex_count = 4;
    square.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}};
    square.rotation = {{0, 4, 3}, {1, 0}, {2, 4, 1}, {3, 2}};
    check_layout(square, std::nullopt, "square");
    for (int e = 0; e < 5; ++e) check_layout(square, e, "square marked");
}

TEST_CASE("layouts reject loops and disconnected graphs") {
    PlaneGraph loop;
    loop.vertex_count = 1;
    loop.edges = {{0, 0}};
    loop.rotation = {{0, 0}};
    CHECK_THROWS_AS(mondrian_from_graph(loop), DiagramError);
    PlaneGraph apart;
    apart.vertex_count = 2;
    apart.rotation = {{}, {}};
    CHECK_THROWS_AS(mondrian_from_graph(apart), DiagramError);
}

TEST_CASE("violations are detected") {
    MondrianDiagram m;
    m.horizontals = {{0, 0, 4}, {2, 0, 4}, {1, 1, 2}};
    m.verticals = {{3, 0, 1}, {1, 0, 1}};
    auto v = mondrian_violations(m);
    CHECK(v.size() == 1);  // vertical 1 passes through horizontal 2
    m.horizontals.push_back({0, 3, 5});
    CHECK(mondrian_violations(m).size() == 2);
    m.verticals.push_back({9, 0, 1});
    CHECK(mondrian_violations(m).size() == 3);
    CHECK_FALSE(placement_holds(m, 1));
}

TEST_CASE("contraction is isomorphic to every loop-free checkerboard graph of the corpus") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = f.diagram;
        if (d.crossing_count() == 0 || is_split(d)) continue;
        CheckerboardGraph g = checkerboard(d);
        for (const PlaneGraph* p : {&g.shaded, &g.unshaded})
            if (!has_loop(*p)) check_layout(*p, std::nullopt, name);
        for (int k : find_dealternators(d)) {
            CheckerboardGraph marked = checkerboard(d.with_dealternator(k));
            if (!has_loop(marked.unshaded)) check_layout(marked.unshaded, k, name);
        }
    }
}

TEST_CASE("fronts of small diagrams") {
    LegendrianFront t = front_for_diagram(fixture("k3_1"));
    CHECK(t.oriented());
    CHECK(t.crossings.size() == 3);
    CHECK(tb_of_front(t) == 1);
    CHECK(t.cusp_count() == 4);  // one eye per all-A circle

    LegendrianFront u = front_for_diagram(fixture("unknot"));
    CHECK(tb_of_front(u) == -1);

    LinkDiagram t34 = fixture("t34_almost_alternating");
    LegendrianFront f = front_for_diagram(t34);
    CHECK(tb_of_front(f) == crossing_signs(t34).writhe() - sA(t34));
    CHECK(align_front(f, t34).has_value());
    CHECK_FALSE(front_svg(f).empty());

    CHECK_THROWS_AS(front_for_diagram(fixture("k8_19")), DiagramError);
    CHECK(tb_of_front(front_for_diagram(fixture("unlink2"))) == -2);
    CHECK_THROWS_AS(front_for_diagram(parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2] O")), DiagramError);
}

TEST_CASE("a front does not align with a different diagram") {
    LegendrianFront t = front_for_diagram(fixture("k3_1"));
    CHECK_FALSE(align_front(t, fixture("k4_1")).has_value());
    CHECK_THROWS_AS(orient_front(t, fixture("k4_1")), DiagramError);
}

TEST_CASE("front quads describe the diagram") {
    LinkDiagram d = fixture("k6_2");
    LegendrianFront f = front_for_diagram(d);
    LinkDiagram from_front = LinkDiagram::from_quads(front_quads(f), 0, std::nullopt, "front", true);
    CHECK(from_front.crossing_count() == d.crossing_count());
    CHECK(jones(from_front) == jones(d));
}

TEST_CASE("tb intervals") {
    LinkDiagram t = fixture("k3_1");
    TbInterval a = tb_interval(t, Side::A);
    CHECK(a.lower == 1);
    CHECK(a.upper == 1);
    CHECK(kh_tb_bound(kh(t)) == 1);
    TbInterval b = tb_interval(t, Side::B);
    CHECK(b.lower == -6);
    CHECK(kh_tb_bound(kh(mirror(t))) == -6);

    LinkDiagram aa = fixture("t34_almost_alternating");
    TbInterval i = tb_interval(aa, Side::A);
    CHECK(i.upper == i.lower + 1);
    int bound = kh_tb_bound(kh(aa));
    CHECK(bound >= i.lower);
    CHECK(bound <= i.upper);
    for (const auto& [name, fx] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = fx.diagram;
        if (d.crossing_count() == 0 || d.crossing_count() > 13 || is_split(d)) continue;
        TuraevOneFlags flags = turaev1_flags(d);
        if (!flags.A_tg1) CHECK_THROWS_AS(tb_interval(d, Side::A), DiagramError);
        if (!flags.B_tg1) CHECK_THROWS_AS(tb_interval(d, Side::B), DiagramError);
    }
}

TEST_CASE("front tb and Khovanov bound against KnotInfo") {
    int fronts = 0;
    for (const auto& row : testing_support::knotinfo_rows()) {
        const LinkDiagram& d = row.diagram;
        int bound = kh_tb_bound(kh(d));
        int mirror_bound = kh_tb_bound(kh(mirror(d)));
        CHECK_MESSAGE(bound >= row.tb, row.name);
        CHECK_MESSAGE(mirror_bound >= row.tb_mirror, row.name);
        if (!is_alternating(d)) continue;
        // Alternating knots: the bound is sharp and realized by the front.
        CHECK_MESSAGE(bound == row.tb, row.name);
        CHECK_MESSAGE(mirror_bound == row.tb_mirror, row.name);
        int w = crossing_signs(d).writhe();
        CHECK_MESSAGE(w - sA(d) == row.tb, row.name);
        LegendrianFront f = front_for_diagram(d);
        CHECK_MESSAGE(tb_of_front(f) == row.tb, row.name);
        CHECK_MESSAGE(tb_of_front(front_for_diagram(mirror(d))) == row.tb_mirror, row.name);
        ++fronts;
    }
    CHECK(fronts > 150);
}
