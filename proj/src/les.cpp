#include "khoverant/les.hpp"

#include <stdexcept>

#include "khoverant/homology.hpp"

namespace khoverant {

namespace {

constexpr std::uint64_t P = kLesPrime;

std::uint64_t reduce(std::int64_t v) {
    std::int64_t r = v % static_cast<std::int64_t>(P);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(P) : r);
}

std::uint64_t power(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= P;
    while (e) {
        if (e & 1) r = r * b % P;
        b = b * b % P;
        e >>= 1;
    }
    return r;
}

std::uint64_t inverse(std::uint64_t a) { return power(a, P - 2); }

// Dense matrix over F_P.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<std::uint64_t> a;
    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    std::uint64_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::uint64_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// Row reduction in place; returns pivot columns.
std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int sel = -1;
        for (int r = row; r < m.rows; ++r)
            if (m.at(r, col)) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(row, c));
        std::uint64_t inv = inverse(m.at(row, col));
        for (int c = 0; c < m.cols; ++c) m.at(row, c) = m.at(row, c) * inv % P;
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || !m.at(r, col)) continue;
            std::uint64_t f = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                if (m.at(row, c)) m.at(r, c) = (m.at(r, c) + P - f * m.at(row, c) % P) % P;
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

// Columns spanning the null space.
Mat kernel(const Mat& m) {
    Mat r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    Mat k(m.cols, m.cols - static_cast<int>(pivots.size()));
    int out = 0;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        k.at(free, out) = 1;
        for (std::size_t p = 0; p < pivots.size(); ++p)
            if (r.at(static_cast<int>(p), free)) k.at(pivots[p], out) = (P - r.at(static_cast<int>(p), free)) % P;
        ++out;
    }
    return k;
}

Mat multiply(const Mat& x, const Mat& y) {
    Mat z(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int k = 0; k < x.cols; ++k) {
            std::uint64_t v = x.at(r, k);
            if (!v) continue;
            for (int c = 0; c < y.cols; ++c)
                if (y.at(k, c)) z.at(r, c) = (z.at(r, c) + v * y.at(k, c)) % P;
        }
    return z;
}

Mat select(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Mat out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out.at(static_cast<int>(r), static_cast<int>(c)) = m.at(rows[r], cols[c]);
    return out;
}

Mat hconcat(const Mat& x, const Mat& y) {
    if (x.rows != y.rows) throw std::logic_error("row mismatch");
    Mat z(x.rows, x.cols + y.cols);
    for (int r = 0; r < x.rows; ++r) {
        for (int c = 0; c < x.cols; ++c) z.at(r, c) = x.at(r, c);
        for (int c = 0; c < y.cols; ++c) z.at(r, x.cols + c) = y.at(r, c);
    }
    return z;
}

Mat to_field(const SparseMatrix& s) {
    Mat m(s.rows, s.cols);
    for (int r = 0; r < s.rows; ++r)
        for (auto [c, v] : s.row_entries[r]) m.at(r, c) = reduce(v);
    return m;
}

std::vector<int> range(int n) {
    std::vector<int> v(n);
    for (int k = 0; k < n; ++k) v[k] = k;
    return v;
}

bool coprime_torsion(const KhTable& t) {
    for (const auto& [key, g] : t.entries())
        for (auto o : g.torsion)
            if (static_cast<std::uint64_t>(o) % P == 0) return false;
    return true;
}

}  // namespace

LesReport check_les(const LinkDiagram& d, int crossing) {
    int c = d.crossing_count();
    if (crossing < 0 || crossing >= c) throw DiagramError("crossing index out of range");
    LesReport report;
    report.crossing = crossing;
    auto fail = [&](const std::string& s) { report.violations.push_back(s); };

    StateCatalog catalog(d);
    KhTable of_b = unshifted_kh(resolve(d, crossing, Smoothing::B));
    KhTable of_a = unshifted_kh(resolve(d, crossing, Smoothing::A));
    KhTable of_d = unshifted_kh(d);
    if (!coprime_torsion(of_a) || !coprime_torsion(of_b) || !coprime_torsion(of_d))
        fail("torsion divisible by the working prime");

    StateBits bit = StateBits{1} << crossing;
    for (int j = catalog.j_lowest(); j <= catalog.j_highest(); j += 2) {
        QuantumSlice slice(catalog, j);
        // Split each chain group into B-at-crossing (sub) and A (quotient) indices.
        std::vector<std::vector<int>> sub(c + 2), quo(c + 2);
        for (int i = 0; i <= c; ++i)
            for (const auto& b : slice.blocks(i)) {
                auto& target = (b.state & bit) ? sub[i] : quo[i];
                std::size_t n = binomial(b.circles, b.x_count);
                for (std::size_t t = 0; t < n; ++t) target.push_back(static_cast<int>(b.offset + t));
            }
        std::vector<Mat> dm(c + 2);
        for (int i = -1; i <= c; ++i) {
            int rows = static_cast<int>(slice.dimension(i + 1)), cols = static_cast<int>(slice.dimension(i));
            dm[i + 1] = (i >= 0 && i < c) ? to_field(slice.differential(i)) : Mat(rows, cols);
        }
        auto D = [&](int i) -> const Mat& { return dm[i + 1]; };  // d^i : C^i -> C^{i+1}

        std::vector<LesWindow> w(c + 1);
        for (int i = 0; i <= c; ++i) {
            auto all_i = range(static_cast<int>(slice.dimension(i)));
            const Mat& out = D(i);
            const Mat& in = D(i - 1);
            if (rank(select(out, quo[i + 1], sub[i])) != 0) fail("B-states do not form a subcomplex");

            Mat z_c = kernel(out);
            int b_c = rank(in);
            Mat d_sub = select(out, sub[i + 1], sub[i]);
            Mat z_sub_local = kernel(d_sub);
            // Embed the sub-cycles into C^i.
            Mat z_sub(static_cast<int>(all_i.size()), z_sub_local.cols);
            for (std::size_t r = 0; r < sub[i].size(); ++r)
                for (int col = 0; col < z_sub_local.cols; ++col) z_sub.at(sub[i][r], col) = z_sub_local.at(static_cast<int>(r), col);
            static const std::vector<int> none;
            int b_sub = rank(select(in, sub[i], i > 0 ? sub[i - 1] : none));
            int b_quo = rank(select(in, quo[i], i > 0 ? quo[i - 1] : none));
            Mat d_quo = select(out, quo[i + 1], quo[i]);
            Mat z_quo = kernel(d_quo);

            LesWindow& win = w[i];
            win.j = j;
            win.i = i;
            win.whole = z_c.cols - b_c;
            win.sub = z_sub_local.cols - b_sub;
            win.quotient = z_quo.cols - b_quo;
            win.f_rank = rank(hconcat(z_sub, in)) - b_c;
            Mat pz = select(z_c, quo[i], range(z_c.cols));
            win.g_rank = rank(pz) - b_quo;
            // Connecting map: quotient cycles pushed through d land in the sub-complex.
            Mat pushed = multiply(select(out, sub[i + 1], quo[i]), z_quo);
            int b_sub_next = rank(d_sub);
            win.connecting_rank = rank(hconcat(pushed, d_sub)) - b_sub_next;
        }
        for (int i = 0; i <= c; ++i) {
            const LesWindow& x = w[i];
            std::int64_t prev_conn = i > 0 ? w[i - 1].connecting_rank : 0;
            std::string where = " at (i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (x.sub - x.f_rank != prev_conn) fail("not exact at the B-resolution term" + where);
            if (x.whole - x.g_rank != x.f_rank) fail("not exact at the diagram term" + where);
            if (x.quotient - x.connecting_rank != x.g_rank) fail("not exact at the A-resolution term" + where);
            const KhGroup& gb = of_b.at(i - 1, j - 1);
            const KhGroup& ga = of_a.at(i, j);
            const KhGroup& gd = of_d.at(i, j);
            if (x.sub != gb.rank) fail("B-subcomplex disagrees with the B-resolution" + where);
            if (x.quotient != ga.rank) fail("A-quotient disagrees with the A-resolution" + where);
            if (x.whole != gd.rank) fail("complex disagrees with the integral table" + where);
            ++report.windows_checked;
            if (x.sub || x.whole || x.quotient) report.windows.push_back(x);
        }
    }
    return report;
}

}  // namespace khoverant
