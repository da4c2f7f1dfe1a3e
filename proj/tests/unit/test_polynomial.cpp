#include <doctest.h>

#include "khoverant/diagnostics.hpp"
#include "khoverant/polynomial.hpp"
#include "khoverant/report.hpp"
#include "khoverant/states.hpp"
#include "test_support.hpp"

using namespace khoverant;
using testing_support::fixture;

namespace {

LaurentPoly poly(std::initializer_list<std::pair<int, int>> terms) {
    LaurentPoly p;
    for (auto [e, c] : terms) p.add_term(e, c);
    return p;
}

// Σ (−q)^{b(s)} (q + q^{-1})^{|s|}, written out state by state.
LaurentPoly state_sum(const LinkDiagram& d) {
    LaurentPoly total;
    int c = d.crossing_count();
    for (StateBits s = 0; s < (StateBits{1} << c); ++s) {
        int b = __builtin_popcountll(s);
        LaurentPoly term = unknot_value().pow(kauffman_state(d, s).circles);
        total += term.shifted(b) * BigInt(b % 2 ? -1 : 1);
    }
    return total;
}

}  // namespace

TEST_CASE("Laurent arithmetic") {
    LaurentPoly a = poly({{1, 1}, {-1, 1}});
    CHECK(a == unknot_value());
    CHECK((a * a) == poly({{2, 1}, {0, 2}, {-2, 1}}));
    CHECK((a - a).is_zero());
    CHECK(a.pow(0) == poly({{0, 1}}));
    CHECK(poly({{3, 2}, {-1, 1}}).inverted() == poly({{-3, 2}, {1, 1}}));
    CHECK(poly({{3, 2}, {-1, 1}}).span() == 4);
    // Zero coefficients are never stored.
    LaurentPoly z = poly({{2, 1}});
    z.add_term(2, -1);
    CHECK(z.terms().empty());
}

TEST_CASE("bracket: state sum, module evaluator and skein recursion agree") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = f.diagram;
        if (d.crossing_count() > 8) continue;
        LaurentPoly b = bracket(d);
        CHECK_MESSAGE(b == bracket_by_skein(d), name);
        CHECK_MESSAGE(b == state_sum(d), name);
    }
}

TEST_CASE("Jones polynomials of small diagrams") {
    // V(q) = (q + q^{-1}) Ṽ(q^2); the right trefoil has Ṽ = t + t^3 − t^4.
    CHECK(jones(fixture("unknot")) == unknot_value());
    CHECK(jones(fixture("unknot_kink")) == unknot_value());
    LaurentPoly v = convert_normalization(jones(fixture("k3_1")));
    CHECK(v.variable() == "t");
    CHECK(v.to_string().find("t^4") != std::string::npos);
    CHECK(normalized_jones_half_units(fixture("k3_1")) == parse_table_polynomial("t+ t^3-t^4"));
    // The Hopf link has half-integral exponents.
    CHECK(convert_normalization(jones(fixture("hopf"))).denominator() == 2);
}

TEST_CASE("Jones is unchanged by a Reidemeister I kink") {
    CHECK(jones(fixture("k3_1")) == jones(fixture("k3_1_kinked")));
}

TEST_CASE("Jones of the mirror is the conjugate") {
    for (const char* name : {"k3_1", "k5_2", "k8_19", "hopf"}) {
        LinkDiagram d = fixture(name);
        CHECK_MESSAGE(jones(mirror(d)) == jones(d).inverted(), name);
    }
}

TEST_CASE("Jones matches KnotInfo for every prime knot up to ten crossings") {
    int checked = 0;
    for (const auto& row : testing_support::knotinfo_rows()) {
        CHECK_MESSAGE(normalized_jones_half_units(row.diagram) == parse_table_polynomial(row.jones), row.name);
        ++checked;
    }
    CHECK(checked == 249);
}

TEST_CASE("fixture Jones polynomials match their published values") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        if (!f.jones) continue;
        CHECK_MESSAGE(normalized_jones_half_units(f.diagram) == parse_table_polynomial(*f.jones), name);
    }
}

TEST_CASE("threaded bracket agrees with the serial one") {
    LinkDiagram d = fixture("k10_132");
    CHECK(bracket(d, 1) == bracket(d, 3));
}

TEST_CASE("span bound holds on the corpus") {
    for (const auto& [name, f] : testing_support::all_fixtures().all()) {
        const LinkDiagram& d = f.diagram;
        if (d.crossing_count() == 0 || d.crossing_count() > 20 || is_split(d)) continue;
        CHECK_MESSAGE(check_span_bound(d).pass(), name);
    }
}
