#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "khoverant/polynomial.hpp"

namespace khoverant {

// Row-major sparse integer matrix; each row is sorted by column.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> row_entries;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), row_entries(r) {}

    std::size_t nonzeros() const;
    std::int64_t at(int r, int c) const;
    std::vector<std::vector<std::int64_t>> dense() const;
    static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& m);
};

// Product a*b; throws on dimension mismatch.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

struct SmithForm {
    int rank = 0;
    // Invariant factors d1 | d2 | ... (all nonzero ones, units included).
    std::vector<BigInt> factors;
    // Factors greater than one.
    std::vector<BigInt> torsion_factors() const;
};

SmithForm smith_normal_form(const SparseMatrix& m);
SmithForm smith_normal_form(const std::vector<std::vector<BigInt>>& dense);

// Prime-power decomposition of each factor, sorted ascending.
std::vector<std::int64_t> prime_power_orders(const std::vector<BigInt>& factors);

}  // namespace khoverant
