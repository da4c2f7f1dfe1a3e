#include "khoverant/smith.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace khoverant {

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : row_entries) n += r.size();
    return n;
}

std::int64_t SparseMatrix::at(int r, int c) const {
    const auto& row = row_entries[r];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, std::int64_t{INT64_MIN}));
    return it != row.end() && it->first == c ? it->second : 0;
}

std::vector<std::vector<std::int64_t>> SparseMatrix::dense() const {
    std::vector<std::vector<std::int64_t>> out(rows, std::vector<std::int64_t>(cols, 0));
    for (int r = 0; r < rows; ++r)
        for (auto [c, v] : row_entries[r]) out[r][c] = v;
    return out;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& m) {
    SparseMatrix out(static_cast<int>(m.size()), m.empty() ? 0 : static_cast<int>(m[0].size()));
    for (int r = 0; r < out.rows; ++r)
        for (int c = 0; c < out.cols; ++c)
            if (m[r][c]) out.row_entries[r].emplace_back(c, m[r][c]);
    return out;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix dimensions do not match");
    SparseMatrix out(a.rows, b.cols);
    std::unordered_map<int, std::int64_t> acc;
    for (int r = 0; r < a.rows; ++r) {
        acc.clear();
        for (auto [k, v] : a.row_entries[r])
            for (auto [c, w] : b.row_entries[k]) acc[c] += v * w;
        for (auto [c, v] : acc)
            if (v) out.row_entries[r].emplace_back(c, v);
        std::sort(out.row_entries[r].begin(), out.row_entries[r].end());
    }
    return out;
}

std::vector<BigInt> SmithForm::torsion_factors() const {
    std::vector<BigInt> out;
    for (const auto& f : factors)
        if (f > 1) out.push_back(f);
    return out;
}

namespace {

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}

BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

template <class T>
T abs_value(const T& x) {
    return x < 0 ? T(-x) : x;
}

// Diagonalizes a dense matrix by unimodular row and column operations and
// returns the nonzero diagonal entries (not yet in divisibility order).
template <class T>
std::vector<T> dense_diagonal(std::vector<std::vector<T>> m) {
    std::vector<T> diag;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t top = 0;
    while (top < rows && top < cols) {
        // Smallest nonzero entry in the remaining block as pivot.
        std::size_t pr = rows, pc = cols;
        T best = 0;
        for (std::size_t r = top; r < rows; ++r)
            for (std::size_t c = top; c < cols; ++c)
                if (m[r][c] != 0 && (pr == rows || abs_value(m[r][c]) < best)) {
                    best = abs_value(m[r][c]);
                    pr = r;
                    pc = c;
                    if (best == 1) goto found;
                }
    found:
        if (pr == rows) break;
        std::swap(m[top], m[pr]);
        for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][top], m[r][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            T p = m[top][top];
            for (std::size_t r = top + 1; r < rows; ++r) {
                if (m[r][top] == 0) continue;
                T q = m[r][top] / p;
                for (std::size_t c = top; c < cols; ++c)
                    if (m[top][c] != 0) m[r][c] = checked_sub(m[r][c], checked_mul(q, m[top][c]));
                if (m[r][top] != 0) clean = false;
            }
            for (std::size_t c = top + 1; c < cols; ++c) {
                if (m[top][c] == 0) continue;
                T q = m[top][c] / p;
                for (std::size_t r = top; r < rows; ++r)
                    if (m[r][top] != 0) m[r][c] = checked_sub(m[r][c], checked_mul(q, m[r][top]));
                if (m[top][c] != 0) clean = false;
            }
            if (!clean) {
                // Move the smallest remainder in the pivot row/column to the pivot.
                std::size_t br = top, bc = top;
                T b = abs_value(m[top][top]);
                for (std::size_t r = top + 1; r < rows; ++r)
                    if (m[r][top] != 0 && abs_value(m[r][top]) < b) {
                        b = abs_value(m[r][top]);
                        br = r;
                        bc = top;
                    }
                for (std::size_t c = top + 1; c < cols; ++c)
                    if (m[top][c] != 0 && abs_value(m[top][c]) < b) {
                        b = abs_value(m[top][c]);
                        br = top;
                        bc = c;
                    }
                if (br != top) std::swap(m[top], m[br]);
                if (bc != top)
                    for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][top], m[r][bc]);
            }
        }
        diag.push_back(abs_value(m[top][top]));
        ++top;
    }
    return diag;
}

// Sorts diagonal entries into invariant factors via repeated gcd/lcm; unit
// entries are already in place and skip the quadratic pass.
SmithForm normalize(const std::vector<BigInt>& diag) {
    std::vector<BigInt> big;
    int units = 0;
    for (const auto& d : diag) {
        if (d == 1) ++units;
        else big.push_back(d);
    }
    std::size_t n = big.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            BigInt g = boost::multiprecision::gcd(big[a], big[b]);
            BigInt l = big[a] / g * big[b];
            big[a] = g;
            big[b] = l;
        }
    SmithForm f;
    f.rank = static_cast<int>(diag.size());
    f.factors.assign(units, BigInt(1));
    for (auto& d : big) f.factors.push_back(std::move(d));
    return f;
}

template <class T>
SmithForm dense_smith(const std::vector<std::vector<T>>& m) {
    auto diag = dense_diagonal(m);
    std::vector<BigInt> big;
    for (const auto& d : diag) big.emplace_back(d);
    return normalize(big);
}

using Row = std::vector<std::pair<int, std::int64_t>>;

// Sparse elimination with unit pivots chosen by a Markowitz-style cost.
// Returns the number of unit pivots; the untouched remainder is left in rows.
int eliminate_units(std::vector<Row>& rows, int cols) {
    int n = static_cast<int>(rows.size());
    std::vector<int> col_count(cols, 0);
    std::vector<std::vector<int>> col_rows(cols);
    for (int r = 0; r < n; ++r)
        for (auto [c, v] : rows[r]) {
            ++col_count[c];
            col_rows[c].push_back(r);
        }
    std::vector<bool> active(n, true);
    // Bucket queue keyed by row length; stale entries are skipped on pop.
    std::vector<std::vector<int>> buckets(cols + 2);
    std::size_t lowest = 0;
    auto push = [&](int r) {
        std::size_t len = rows[r].size();
        buckets[len].push_back(r);
        lowest = std::min(lowest, len);
    };
    for (int r = 0; r < n; ++r) push(r);
    int rank = 0;
    Row merged;
    while (true) {
        while (lowest < buckets.size() && buckets[lowest].empty()) ++lowest;
        if (lowest >= buckets.size()) break;
        int r = buckets[lowest].back();
        buckets[lowest].pop_back();
        if (!active[r] || rows[r].size() != lowest) continue;
        if (rows[r].empty()) {
            active[r] = false;
            continue;
        }
        int pc = -1;
        std::int64_t pv = 0;
        for (auto [c, v] : rows[r])
            if ((v == 1 || v == -1) && (pc < 0 || col_count[c] < col_count[pc])) {
                pc = c;
                pv = v;
            }
        if (pc < 0) continue;  // no unit entry yet; revisited if the row changes
        const Row pivot_row = rows[r];
        active[r] = false;
        for (auto [c, v] : pivot_row) --col_count[c];
        for (int r2 : col_rows[pc]) {
            if (!active[r2]) continue;
            Row& target = rows[r2];
            auto it = std::lower_bound(target.begin(), target.end(), std::make_pair(pc, std::int64_t{INT64_MIN}));
            if (it == target.end() || it->first != pc) continue;
            std::int64_t factor = checked_mul(it->second, pv);  // pv is its own inverse
            merged.clear();
            std::size_t a = 0, b = 0;
            while (a < target.size() || b < pivot_row.size()) {
                if (b == pivot_row.size() || (a < target.size() && target[a].first < pivot_row[b].first)) {
                    merged.push_back(target[a++]);
                } else if (a == target.size() || pivot_row[b].first < target[a].first) {
                    int c = pivot_row[b].first;
                    std::int64_t val = -checked_mul(factor, pivot_row[b].second);
                    merged.emplace_back(c, val);
                    ++col_count[c];
                    col_rows[c].push_back(r2);
                    ++b;
                } else {
                    int c = target[a].first;
                    std::int64_t val = checked_sub(target[a].second, checked_mul(factor, pivot_row[b].second));
                    if (val) merged.emplace_back(c, val);
                    else --col_count[c];
                    ++a;
                    ++b;
                }
            }
            target.swap(merged);
            push(r2);
        }
        col_count[pc] = 0;
        col_rows[pc].clear();
        ++rank;
    }
    // Drop eliminated rows from the caller's view.
    std::vector<Row> rest;
    for (int r = 0; r < n; ++r)
        if (active[r] && !rows[r].empty()) rest.push_back(std::move(rows[r]));
    rows.swap(rest);
    return rank;
}

SmithForm remainder_smith(const std::vector<Row>& rows) {
    std::map<int, int> col_index;
    for (const auto& row : rows)
        for (auto [c, v] : row) col_index.emplace(c, 0);
    int k = 0;
    for (auto& [c, idx] : col_index) idx = k++;
    try {
        std::vector<std::vector<std::int64_t>> m(rows.size(), std::vector<std::int64_t>(k, 0));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (auto [c, v] : rows[r]) m[r][col_index[c]] = v;
        return dense_smith(m);
    } catch (const Overflow&) {
        std::vector<std::vector<BigInt>> m(rows.size(), std::vector<BigInt>(k, 0));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (auto [c, v] : rows[r]) m[r][col_index[c]] = v;
        return dense_smith(m);
    }
}

}  // namespace

SmithForm smith_normal_form(const SparseMatrix& m) {
    try {
        std::vector<Row> rows = m.row_entries;
        int units = eliminate_units(rows, m.cols);
        SmithForm rest = remainder_smith(rows);
        std::vector<BigInt> diag(units, BigInt(1));
        diag.insert(diag.end(), rest.factors.begin(), rest.factors.end());
        return normalize(diag);
    } catch (const Overflow&) {
        std::vector<std::vector<BigInt>> dense(m.rows, std::vector<BigInt>(m.cols, 0));
        for (int r = 0; r < m.rows; ++r)
            for (auto [c, v] : m.row_entries[r]) dense[r][c] = v;
        return smith_normal_form(dense);
    }
}

SmithForm smith_normal_form(const std::vector<std::vector<BigInt>>& dense) { return dense_smith(dense); }

std::vector<std::int64_t> prime_power_orders(const std::vector<BigInt>& factors) {
    std::vector<std::int64_t> out;
    for (BigInt f : factors) {
        if (f < 0) f = -f;
        if (f <= 1) continue;
        if (f > BigInt(INT64_MAX)) throw std::overflow_error("torsion order exceeds 64 bits");
        auto n = static_cast<std::int64_t>(f);
        for (std::int64_t p = 2; p * p <= n; ++p) {
            if (n % p) continue;
            std::int64_t q = 1;
            while (n % p == 0) {
                n /= p;
                q *= p;
            }
            out.push_back(q);
        }
        if (n > 1) out.push_back(n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace khoverant
