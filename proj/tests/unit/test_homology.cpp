#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dense_oracle.hpp"
#include "khoverant/homology.hpp"
#include "khoverant/smith.hpp"
#include "test_support.hpp"

using namespace khoverant;
using testing_support::fixture;

namespace {

std::map<std::pair<int, int>, oracle::Group> as_oracle(const KhTable& t) {
    std::map<std::pair<int, int>, oracle::Group> out;
    for (const auto& [key, g] : t.entries()) out[key] = {g.rank, g.torsion};
    return out;
}

KhGroup free(std::int64_t r) { return {r, {}}; }

}  // namespace

TEST_CASE("dense oracle Smith form") {
    CHECK(oracle::smith_diagonal({{2, 4}, {6, 8}}) == std::vector<std::int64_t>{2, 4});
    CHECK(oracle::invariant_factors({{1, 0}, {0, 6}}) == std::vector<std::int64_t>{6});
    CHECK(oracle::prime_powers(12) == std::vector<std::int64_t>{3, 4});
}

TEST_CASE("sparse Smith form agrees with the dense oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (int round = 0; round < 40; ++round) {
        int r = 1 + round % 6, c = 1 + (round * 5) % 7;
        std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c));
        for (auto& row : m)
            for (auto& v : row) v = entry(rng) * (entry(rng) == 0 ? 0 : 1);
        SmithForm s = smith_normal_form(SparseMatrix::from_dense(m));
        std::vector<std::int64_t> expected = oracle::smith_diagonal(m);
        std::sort(expected.begin(), expected.end());
        CHECK(s.rank == static_cast<int>(expected.size()));
        std::vector<std::int64_t> got;
        for (const auto& f : s.factors) got.push_back(static_cast<std::int64_t>(f));
        std::sort(got.begin(), got.end());
        // Products of the factors must agree, and torsion up to prime powers.
        CHECK(prime_power_orders(s.torsion_factors()) == [&] {
            std::vector<std::int64_t> p;
            for (auto v : expected)
                for (auto q : oracle::prime_powers(v)) p.push_back(q);
            std::sort(p.begin(), p.end());
            return p;
        }());
        for (std::size_t i = 1; i < s.factors.size(); ++i) CHECK(s.factors[i] % s.factors[i - 1] == 0);
    }
}

TEST_CASE("unknot diagrams carry Z at (0, 1) and (0, -1)") {
    for (const char* name : {"unknot", "unknot_kink"}) {
        KhTable t = kh(fixture(name));
        CHECK_MESSAGE(t.entries().size() == 2, name);
        CHECK(t.at(0, 1) == free(1));
        CHECK(t.at(0, -1) == free(1));
    }
}

TEST_CASE("unshifted homology matches the dense oracle") {
    for (const char* name : {"unknot_kink", "k3_1", "trefoil_left", "k3_1_kinked", "k4_1", "hopf", "unlink2", "k5_1",
                             "k5_2", "k6_1", "k6_3", "k7_4"}) {
        LinkDiagram d = fixture(name);
        CHECK_MESSAGE(as_oracle(unshifted_kh(d)) == oracle::khovanov(d), name);
        LinkDiagram m = mirror(d);
        CHECK_MESSAGE(as_oracle(unshifted_kh(m)) == oracle::khovanov(m), name);
    }
}

TEST_CASE("frozen table of the right trefoil") {
    KhTable t = kh(fixture("k3_1"));
    CHECK(t.entries().size() == 5);
    CHECK(t.at(0, 1) == free(1));
    CHECK(t.at(0, 3) == free(1));
    CHECK(t.at(2, 5) == free(1));
    CHECK(t.at(3, 9) == free(1));
    CHECK(t.at(3, 7) == KhGroup{0, {2}});
    CHECK(t.j_min() == 1);
    CHECK(t.j_max() == 9);
}

TEST_CASE("frozen table of the figure eight") {
    KhTable t = kh(fixture("k4_1"));
    CHECK(t.at(0, 1) == free(1));
    CHECK(t.at(0, -1) == free(1));
    CHECK(t.at(-2, -5) == free(1));
    CHECK(t.at(-1, -1) == free(1));
    CHECK(t.at(1, 1) == free(1));
    CHECK(t.at(2, 5) == free(1));
    CHECK(t.at(-1, -3) == KhGroup{0, {2}});
    CHECK(t.at(2, 3) == KhGroup{0, {2}});
    CHECK(t.entries().size() == 8);
}

TEST_CASE("shifted tables are link invariants across fixture diagrams") {
    CHECK(kh(fixture("k3_1")) == kh(fixture("k3_1_kinked")));
    CHECK(kh(fixture("t34_almost_alternating")) == kh(fixture("k8_19")));
}

TEST_CASE("crossing permutations do not change the table") {
    std::mt19937 rng(11);
    LinkDiagram d = fixture("k7_4_flip1");
    std::vector<int> order(d.crossing_count());
    std::iota(order.begin(), order.end(), 0);
    KhTable base = kh(d);
    for (int round = 0; round < 3; ++round) {
        std::shuffle(order.begin(), order.end(), rng);
        CHECK(kh(permute_crossings(d, order)) == base);
    }
}

TEST_CASE("boundary matrices have unit entries and square to zero") {
    LinkDiagram d = fixture("k6_2");
    for (int j = -20; j <= 20; ++j) {
        for (int i = 0; i < d.crossing_count(); ++i) {
            SparseMatrix a = boundary_matrix(d, i, j);
            for (const auto& row : a.row_entries)
                for (auto [col, v] : row) CHECK((v == 1 || v == -1));
            SparseMatrix b = boundary_matrix(d, i + 1, j);
            if (a.rows == 0 || b.rows == 0 || a.cols == 0) continue;
            CHECK(multiply(b, a).nonzeros() == 0);
        }
    }
}

TEST_CASE("Euler characteristic and parity") {
    for (const char* name : {"k3_1", "k4_1", "hopf", "k8_19", "l11n376"}) {
        LinkDiagram d = fixture(name);
        KhTable t = kh(d);
        CHECK_MESSAGE(euler_characteristic(t) == jones(d), name);
        int parity = ((t.entries().begin()->first.second % 2) + 2) % 2;
        for (const auto& [key, g] : t.entries()) CHECK(((key.second % 2) + 2) % 2 == parity);
    }
}

TEST_CASE("windowed and extremal computations agree with the full table") {
    LinkDiagram d = fixture("k8_19");
    KhTable full = kh(d);
    KhOptions o;
    o.j_range = std::pair{full.j_min(), full.j_min() + 2};
    KhTable part = kh(d, o);
    for (const auto& [key, g] : part.entries()) CHECK(full.at(key.first, key.second) == g);
    for (const auto& [key, g] : full.entries())
        if (key.second <= full.j_min() + 2) CHECK(part.at(key.first, key.second) == g);

    KhTable low = kh_extremal(d, Extreme::Low);
    KhTable high = kh_extremal(d, Extreme::High);
    CHECK(low.j_min() == full.j_min());
    CHECK(high.j_max() == full.j_max());
    for (int i : full.support(full.j_min())) CHECK(low.at(i, full.j_min()) == full.at(i, full.j_min()));
    for (int i : full.support(full.j_max())) CHECK(high.at(i, full.j_max()) == full.at(i, full.j_max()));
}

TEST_CASE("threaded homology agrees with the serial one") {
    LinkDiagram d = fixture("k9_42");
    KhOptions one, four;
    four.threads = 4;
    CHECK(kh(d, one) == kh(d, four));
}

TEST_CASE("slice basis follows the documented order") {
    LinkDiagram d = fixture("k3_1");
    StateCatalog catalog(d);
    QuantumSlice slice(catalog, 3);
    for (int i = 0; i <= slice.max_degree(); ++i) {
        auto basis = slice.basis(i);
        CHECK(basis.size() == slice.dimension(i));
        for (std::size_t k = 1; k < basis.size(); ++k) {
            const auto &a = basis[k - 1], &b = basis[k];
            CHECK(std::pair{a.state.choices, a.x_labels} < std::pair{b.state.choices, b.x_labels});
        }
        for (const auto& e : basis) {
            CHECK(e.i() == i);
            CHECK(e.j() == 3);
        }
    }
}
