#include "khoverant/homology.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

namespace khoverant {

void KhTable::set(int i, int j, KhGroup g) {
    std::sort(g.torsion.begin(), g.torsion.end());
    if (g.is_zero()) entries_.erase({i, j});
    else entries_[{i, j}] = std::move(g);
}

const KhGroup& KhTable::at(int i, int j) const {
    static const KhGroup zero;
    auto it = entries_.find({i, j});
    return it == entries_.end() ? zero : it->second;
}

namespace {
void require_nonempty(const KhTable& t) {
    if (t.empty()) throw std::domain_error("empty homology table");
}
}  // namespace

int KhTable::j_min() const {
    require_nonempty(*this);
    int best = std::numeric_limits<int>::max();
    for (const auto& [key, g] : entries_) best = std::min(best, key.second);
    return best;
}

int KhTable::j_max() const {
    require_nonempty(*this);
    int best = std::numeric_limits<int>::min();
    for (const auto& [key, g] : entries_) best = std::max(best, key.second);
    return best;
}

int KhTable::delta_min() const {
    require_nonempty(*this);
    int best = std::numeric_limits<int>::max();
    for (const auto& [key, g] : entries_) best = std::min(best, 2 * key.first - key.second);
    return best;
}

int KhTable::delta_max() const {
    require_nonempty(*this);
    int best = std::numeric_limits<int>::min();
    for (const auto& [key, g] : entries_) best = std::max(best, 2 * key.first - key.second);
    return best;
}

std::vector<int> KhTable::support(int j) const {
    std::vector<int> out;
    for (const auto& [key, g] : entries_)
        if (key.second == j) out.push_back(key.first);
    return out;
}

std::int64_t KhTable::total_rank(int j) const {
    std::int64_t r = 0;
    for (const auto& [key, g] : entries_)
        if (key.second == j) r += g.rank;
    return r;
}

StateCatalog::StateCatalog(const LinkDiagram& d, int threads)
    : diagram_(d), counter_(d), circles_(all_circle_counts(d, threads)) {
    j_lowest_ = std::numeric_limits<int>::max();
    j_highest_ = std::numeric_limits<int>::min();
    for (StateBits s = 0; s < circles_.size(); ++s) {
        int b = __builtin_popcountll(s);
        j_lowest_ = std::min(j_lowest_, b - circles_[s]);
        j_highest_ = std::max(j_highest_, b + circles_[s]);
    }
}

QuantumSlice::QuantumSlice(const StateCatalog& catalog, int j) : catalog_(&catalog), j_(j) {
    int c = catalog.diagram().crossing_count();
    blocks_.resize(c + 1);
    dims_.assign(c + 1, 0);
    StateBits total = StateBits{1} << c;
    for (StateBits s = 0; s < total; ++s) {
        int b = __builtin_popcountll(s);
        int n = catalog.circles(s);
        int twice_x = b + n - j;
        if (twice_x < 0 || twice_x % 2 != 0 || twice_x / 2 > n) continue;
        int x = twice_x / 2;
        blocks_[b].push_back(Block{s, n, x, dims_[b]});
        dims_[b] += binomial(n, x);
    }
}

std::size_t QuantumSlice::dimension(int i) const {
    if (i < 0 || i >= static_cast<int>(dims_.size())) return 0;
    return dims_[i];
}

namespace {

// Next integer with the same popcount (Gosper).
std::uint64_t next_same_popcount(std::uint64_t v) {
    std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (__builtin_ctzll(v) + 1));
}

template <class F>
void for_each_mask(int n, int x, F&& f) {
    if (x == 0) {
        f(std::uint64_t{0});
        return;
    }
    std::uint64_t m = (std::uint64_t{1} << x) - 1;
    std::uint64_t limit = std::uint64_t{1} << n;
    while (m < limit) {
        f(m);
        m = next_same_popcount(m);
    }
}

}  // namespace

std::vector<EnhancedState> QuantumSlice::basis(int i) const {
    std::vector<EnhancedState> out;
    if (i < 0 || i > max_degree()) return out;
    for (const Block& b : blocks_[i]) {
        KauffmanState st = kauffman_state(catalog_->diagram(), b.state);
        for_each_mask(b.circles, b.x_count, [&](std::uint64_t m) { out.push_back(EnhancedState{st, m}); });
    }
    return out;
}

SparseMatrix QuantumSlice::differential(int i) const {
    int rows = static_cast<int>(dimension(i + 1)), cols = static_cast<int>(dimension(i));
    SparseMatrix m(rows, cols);
    if (rows == 0 || cols == 0) return m;
    const LinkDiagram& d = catalog_->diagram();
    const CircleCounter& counter = catalog_->counter();
    int c = d.crossing_count();
    int loops = d.free_loops();
    std::unordered_map<StateBits, const Block*> target;
    for (const Block& b : blocks_[i + 1]) target.emplace(b.state, &b);

    std::vector<int> circ0, circ1, image;
    for (const Block& src : blocks_[i]) {
        int n0 = counter.label(src.state, circ0);
        int arc_circles0 = n0 - loops;
        for (int k = 0; k < c; ++k) {
            if ((src.state >> k) & 1) continue;
            StateBits s1 = src.state | (StateBits{1} << k);
            auto found = target.find(s1);
            if (found == target.end()) continue;
            const Block& dst = *found->second;
            int n1 = counter.label(s1, circ1);
            int arc_circles1 = n1 - loops;
            int sgn = __builtin_popcountll(src.state & ((StateBits{1} << k) - 1)) % 2 ? -1 : 1;
            const Quad& q = d.crossings()[k];
            int p = circ0[q[0]], pq = circ0[q[2]];
            bool merge = p != pq;
            image.assign(n0, -1);
            for (std::size_t a = 0; a < circ0.size(); ++a) image[circ0[a]] = circ1[a];
            for (int l = 0; l < loops; ++l) image[arc_circles0 + l] = arc_circles1 + l;
            std::uint64_t special = (std::uint64_t{1} << p) | (std::uint64_t{1} << pq);
            int r1 = circ1[q[0]], r2 = circ1[q[1]];
            std::uint64_t col = src.offset;
            for_each_mask(src.circles, src.x_count, [&](std::uint64_t mask) {
                std::uint64_t base = 0;
                for (std::uint64_t rest = mask & ~special; rest; rest &= rest - 1)
                    base |= std::uint64_t{1} << image[__builtin_ctzll(rest)];
                auto emit = [&](std::uint64_t m1) {
                    std::size_t row = dst.offset + mask_rank(m1);
                    m.row_entries[row].emplace_back(static_cast<int>(col), sgn);
                };
                if (merge) {
                    bool xp = (mask >> p) & 1, xq = (mask >> pq) & 1;
                    if (!(xp && xq)) emit(base | (xp || xq ? std::uint64_t{1} << r1 : 0));
                } else if ((mask >> p) & 1) {
                    emit(base | (std::uint64_t{1} << r1) | (std::uint64_t{1} << r2));
                } else {
                    emit(base | (std::uint64_t{1} << r2));
                    emit(base | (std::uint64_t{1} << r1));
                }
                ++col;
            });
        }
    }
    for (auto& row : m.row_entries) std::sort(row.begin(), row.end());
    return m;
}

namespace {

struct CircleSets {
    std::vector<std::vector<int>> arcs;  // sorted arc lists; free loops are empty
};

CircleSets circle_sets(const KauffmanState& s) {
    CircleSets out;
    out.arcs.resize(s.circles);
    for (std::size_t a = 0; a < s.circle_of_arc.size(); ++a) out.arcs[s.circle_of_arc[a]].push_back(static_cast<int>(a));
    return out;
}

std::optional<int> flipped_crossing(const EnhancedState& s0, const EnhancedState& s1) {
    StateBits diff = s0.state.choices ^ s1.state.choices;
    if (__builtin_popcountll(diff) != 1) return std::nullopt;
    if (s1.state.choices & ~s0.state.choices & diff) return __builtin_ctzll(diff);
    return std::nullopt;
}

}  // namespace

int incidence(const EnhancedState& s0, const EnhancedState& s1) {
    auto k = flipped_crossing(s0, s1);
    if (!k) return 0;
    auto c0 = circle_sets(s0.state), c1 = circle_sets(s1.state);
    // Match circles with identical arc sets (free loops pair up in order).
    std::vector<bool> used1(c1.arcs.size(), false);
    std::vector<int> moving0;
    int free_seen = 0;
    for (std::size_t t = 0; t < c0.arcs.size(); ++t) {
        int match = -1;
        if (c0.arcs[t].empty()) {
            int skip = free_seen++;
            for (std::size_t u = 0; u < c1.arcs.size(); ++u)
                if (c1.arcs[u].empty() && skip-- == 0) {
                    match = static_cast<int>(u);
                    break;
                }
        } else {
            for (std::size_t u = 0; u < c1.arcs.size(); ++u)
                if (!used1[u] && c1.arcs[u] == c0.arcs[t]) {
                    match = static_cast<int>(u);
                    break;
                }
        }
        if (match < 0) {
            moving0.push_back(static_cast<int>(t));
            continue;
        }
        used1[match] = true;
        bool x0 = (s0.x_labels >> t) & 1, x1 = (s1.x_labels >> match) & 1;
        if (x0 != x1) return 0;
    }
    std::vector<int> moving1;
    for (std::size_t u = 0; u < c1.arcs.size(); ++u)
        if (!used1[u]) moving1.push_back(static_cast<int>(u));
    auto lab0 = [&](int t) { return static_cast<int>((s0.x_labels >> t) & 1); };
    auto lab1 = [&](int u) { return static_cast<int>((s1.x_labels >> u) & 1); };
    if (moving0.size() == 2 && moving1.size() == 1) {
        int xs = lab0(moving0[0]) + lab0(moving0[1]);
        if (xs == 2) return 0;
        return lab1(moving1[0]) == xs ? 1 : 0;
    }
    if (moving0.size() == 1 && moving1.size() == 2) {
        int xs = lab1(moving1[0]) + lab1(moving1[1]);
        return lab0(moving0[0]) == 0 ? (xs == 1 ? 1 : 0) : (xs == 2 ? 1 : 0);
    }
    return 0;
}

int sign(const EnhancedState& s0, const EnhancedState& s1) {
    auto k = flipped_crossing(s0, s1);
    if (!k) throw std::invalid_argument("states are not adjacent");
    return __builtin_popcountll(s0.state.choices & ((StateBits{1} << *k) - 1)) % 2 ? -1 : 1;
}

SparseMatrix boundary_matrix(const LinkDiagram& d, int i, int j) {
    StateCatalog catalog(d);
    return QuantumSlice(catalog, j).differential(i);
}

std::map<int, KhGroup> slice_homology(const QuantumSlice& slice, bool check_d_squared) {
    int top = slice.max_degree();
    std::vector<SmithForm> snf(top + 1);
    std::vector<SparseMatrix> mats(top + 1);
    for (int i = 0; i < top; ++i) mats[i] = slice.differential(i);
    if (check_d_squared)
        for (int i = 0; i + 1 < top; ++i) {
            if (mats[i].rows == 0 || mats[i + 1].rows == 0) continue;
            if (multiply(mats[i + 1], mats[i]).nonzeros() != 0)
                throw std::logic_error("d∘d ≠ 0 in quantum grading " + std::to_string(slice.j()));
        }
    for (int i = 0; i < top; ++i) snf[i] = smith_normal_form(mats[i]);
    std::map<int, KhGroup> out;
    for (int i = 0; i <= top; ++i) {
        std::int64_t dim = static_cast<std::int64_t>(slice.dimension(i));
        if (dim == 0) continue;
        std::int64_t out_rank = i < top ? snf[i].rank : 0;
        std::int64_t in_rank = i > 0 ? snf[i - 1].rank : 0;
        KhGroup g;
        g.rank = dim - out_rank - in_rank;
        if (i > 0) g.torsion = prime_power_orders(snf[i - 1].torsion_factors());
        if (!g.is_zero()) out[i] = std::move(g);
    }
    return out;
}

namespace {

void compute_slices(const StateCatalog& catalog, const std::vector<int>& js, int threads, bool check,
                    std::vector<std::map<int, KhGroup>>& results) {
    results.assign(js.size(), {});
    std::atomic<std::size_t> next{0};
    threads = std::max(1, std::min<int>(threads, static_cast<int>(js.size())));
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            try {
                for (std::size_t idx = next++; idx < js.size(); idx = next++)
                    results[idx] = slice_homology(QuantumSlice(catalog, js[idx]), check);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::pair<int, int> shifted_offsets(const LinkDiagram& d) {
    SignCount sc = crossing_signs(d);
    return {sc.positive, sc.negative};
}

}  // namespace

KhTable unshifted_kh(const LinkDiagram& d, const KhOptions& options) {
    StateCatalog catalog(d, options.threads);
    int lo = catalog.j_lowest(), hi = catalog.j_highest();
    KhTable table;
    if (options.j_range) {
        lo = std::max(lo, options.j_range->first);
        hi = std::min(hi, options.j_range->second);
        table.computed_j = options.j_range;
    }
    std::vector<int> js;
    int parity = ((catalog.j_lowest() % 2) + 2) % 2;
    for (int j = lo; j <= hi; ++j)
        if (((j % 2) + 2) % 2 == parity) js.push_back(j);
    std::vector<std::map<int, KhGroup>> results;
    compute_slices(catalog, js, options.threads, options.check_d_squared, results);
    for (std::size_t idx = 0; idx < js.size(); ++idx)
        for (auto& [i, g] : results[idx]) table.set(i, js[idx], g);
    return table;
}

KhTable shift_table(const KhTable& unshifted, int c_plus, int c_minus) {
    KhTable out;
    for (const auto& [key, g] : unshifted.entries()) out.set(key.first - c_minus, key.second + c_plus - 2 * c_minus, g);
    out.shifted = true;
    out.c_plus = c_plus;
    out.c_minus = c_minus;
    if (unshifted.computed_j)
        out.computed_j = std::make_pair(unshifted.computed_j->first + c_plus - 2 * c_minus,
                                        unshifted.computed_j->second + c_plus - 2 * c_minus);
    return out;
}

KhTable kh(const LinkDiagram& d, const KhOptions& options) {
    auto [cp, cm] = shifted_offsets(d);
    KhOptions unshifted_options = options;
    if (options.j_range)
        unshifted_options.j_range =
            std::make_pair(options.j_range->first - cp + 2 * cm, options.j_range->second - cp + 2 * cm);
    return shift_table(unshifted_kh(d, unshifted_options), cp, cm);
}

KhTable unshifted_kh_extremal(const LinkDiagram& d, Extreme side, int threads) {
    StateCatalog catalog(d, threads);
    KhTable table;
    int step = side == Extreme::Low ? 2 : -2;
    int j = side == Extreme::Low ? catalog.j_lowest() : catalog.j_highest();
    int first = j;
    while (j >= catalog.j_lowest() && j <= catalog.j_highest()) {
        auto groups = slice_homology(QuantumSlice(catalog, j), true);
        for (auto& [i, g] : groups) table.set(i, j, g);
        if (!groups.empty()) break;
        j += step;
    }
    table.computed_j = std::minmax(first, j);
    return table;
}

KhTable kh_extremal(const LinkDiagram& d, Extreme side, int threads) {
    auto [cp, cm] = shifted_offsets(d);
    return shift_table(unshifted_kh_extremal(d, side, threads), cp, cm);
}

LaurentPoly euler_characteristic(const KhTable& t) {
    LaurentPoly out;
    for (const auto& [key, g] : t.entries()) out.add_term(key.second, key.first % 2 ? -g.rank : g.rank);
    return out;
}

}  // namespace khoverant
