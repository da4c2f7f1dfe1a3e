#include "khoverant/classify.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <set>

#include "khoverant/states.hpp"

namespace khoverant {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::alternating: return "alternating";
        case Verdict::A_almost_alternating: return "A_almost_alternating";
        case Verdict::B_almost_alternating: return "B_almost_alternating";
        case Verdict::both: return "both";
        case Verdict::reducible: return "reducible";
        case Verdict::not_almost_alternating_as_drawn: return "not_almost_alternating_as_drawn";
    }
    return "unknown";
}

std::vector<int> find_dealternators(const LinkDiagram& d) {
    std::vector<int> out;
    if (is_alternating(d)) return out;
    for (int k = 0; k < d.crossing_count(); ++k)
        if (is_alternating(flip_crossing(d, k))) out.push_back(k);
    return out;
}

namespace {

int common_neighbours(const PlaneGraph& g, int a, int b) {
    auto na = g.simple_neighbours(a), nb = g.simple_neighbours(b);
    int count = 0;
    for (int w : na)
        if (w != a && w != b && std::binary_search(nb.begin(), nb.end(), w)) ++count;
    return count;
}

}  // namespace

AlmostAltStructure almost_alt_structure(const LinkDiagram& d, int k) {
    if (k < 0 || k >= d.crossing_count()) throw DiagramError("dealternator index out of range");
    CheckerboardGraph g = checkerboard(d.with_dealternator(k));
    AlmostAltStructure s;
    s.dealternator = k;
    s.u = *g.u;
    s.v = *g.v;
    s.distinct_regions = s.u[0] != s.u[1] && s.v[0] != s.v[1];
    s.no_parallel_crossing = g.unshaded.multiplicity(s.u[0], s.u[1]) <= 1 && g.shaded.multiplicity(s.v[0], s.v[1]) <= 1;
    s.adj_u = common_neighbours(g.unshaded, s.u[0], s.u[1]);
    s.adj_v = common_neighbours(g.shaded, s.v[0], s.v[1]);
    s.cond_3A = s.adj_u == 0;
    s.cond_3B = s.adj_v == 0;
    if (!s.distinct_regions) {
        s.verdict = Verdict::reducible;
        s.reason = "alternating (nugatory dealternator)";
    } else if (!s.no_parallel_crossing) {
        s.verdict = Verdict::reducible;
        s.reason = "alternating (dealternator cancels against a parallel crossing)";
    } else if (s.cond_3A && s.cond_3B) {
        s.verdict = Verdict::both;
    } else if (s.cond_3A) {
        s.verdict = Verdict::A_almost_alternating;
    } else if (s.cond_3B) {
        s.verdict = Verdict::B_almost_alternating;
    } else if (s.adj_u == 1 && s.adj_v == 1) {
        s.verdict = Verdict::reducible;
        s.reason = "diagram with two fewer crossings exists";
    } else if ((s.adj_u == 2 && s.adj_v == 1) || (s.adj_u == 1 && s.adj_v == 2)) {
        s.verdict = Verdict::reducible;
        s.reason = "alternating";
    } else if (s.adj_u == 2 && s.adj_v == 2) {
        s.verdict = Verdict::reducible;
        s.reason = "split: alternating link plus an unknot";
    } else {
        s.verdict = Verdict::not_almost_alternating_as_drawn;
        s.reason = "unexpected adjacency pattern";
    }
    return s;
}

std::array<int, 2> adj_counts(const LinkDiagram& d, int dealternator) {
    auto s = almost_alt_structure(d, dealternator);
    return {s.adj_u, s.adj_v};
}

Classification classify(const LinkDiagram& d) {
    Classification out;
    if (is_alternating(d)) {
        out.verdict = Verdict::alternating;
        return out;
    }
    bool a = false, b = false, reducible = false;
    for (int k : find_dealternators(d)) {
        auto s = almost_alt_structure(d, k);
        a |= s.verdict == Verdict::A_almost_alternating || s.verdict == Verdict::both;
        b |= s.verdict == Verdict::B_almost_alternating || s.verdict == Verdict::both;
        if (s.verdict == Verdict::reducible && !reducible) {
            reducible = true;
            out.reason = s.reason;
        }
        out.dealternators.push_back(std::move(s));
    }
    if (a && b) out.verdict = Verdict::both;
    else if (a) out.verdict = Verdict::A_almost_alternating;
    else if (b) out.verdict = Verdict::B_almost_alternating;
    else if (reducible) out.verdict = Verdict::reducible;
    else out.verdict = Verdict::not_almost_alternating_as_drawn;
    if (out.verdict != Verdict::reducible) out.reason.clear();
    return out;
}

TuraevOneFlags turaev1_flags(const LinkDiagram& d) {
    TuraevOneFlags f;
    Verdict v = classify(d).verdict;
    f.A_tg1 = is_adequate(d, Smoothing::A) || v == Verdict::A_almost_alternating || v == Verdict::both;
    f.B_tg1 = is_adequate(d, Smoothing::B) || v == Verdict::B_almost_alternating || v == Verdict::both;
    if (!f.A_tg1 && !f.B_tg1 && turaev_genus_diagram(d) >= 2)
        f.note = "diagram has Turaev genus at least two and is inadequate; link-level status unknown";
    return f;
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

int symmetric_signature(std::vector<std::vector<Rational>> m) {
    int n = static_cast<int>(m.size());
    int sig = 0;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (m[r][r] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) {
            // No usable diagonal entry: make one by a congruence e_k += ±e_l.
            int l = -1, r0 = -1;
            for (int r = k; r < n && l < 0; ++r)
                for (int c = r + 1; c < n; ++c)
                    if (m[r][c] != 0) {
                        r0 = r;
                        l = c;
                        break;
                    }
            if (l < 0) break;  // remaining block is zero
            for (int c = 0; c < n; ++c) m[r0][c] += m[l][c];
            for (int r = 0; r < n; ++r) m[r][r0] += m[r][l];
            piv = r0;
        }
        std::swap(m[k], m[piv]);
        for (auto& row : m) std::swap(row[k], row[piv]);
        Rational p = m[k][k];
        sig += p > 0 ? 1 : -1;
        for (int r = k + 1; r < n; ++r) {
            if (m[r][k] == 0) continue;
            Rational f = m[r][k] / p;
            for (int c = k; c < n; ++c) m[r][c] -= f * m[k][c];
        }
        for (int c = k + 1; c < n; ++c) m[k][c] = 0;
        for (int r = k + 1; r < n; ++r) m[r][k] = 0;
    }
    return sig;
}

int gordon_litherland(const LinkDiagram& d, bool swap_colours) {
    if (is_split(d)) throw DiagramError("signature needs a non-split diagram");
    if (d.crossing_count() == 0) return 0;
    CheckerboardGraph g = checkerboard(d);
    int c = d.crossing_count();
    // white = regions whose Goeritz matrix we build.
    auto white = [&](int r) { return g.region_shaded[r] == swap_colours; };
    std::vector<int> index(g.region_count, -1);
    int n = 0;
    for (int r = 0; r < g.region_count; ++r)
        if (white(r)) index[r] = n++;
    std::vector<std::vector<Rational>> full(n, std::vector<Rational>(n, 0));
    int mu = 0;
    for (int k = 0; k < c; ++k) {
        // Shaded (surface) corners at this crossing: {1,3} or {0,2}.
        bool surface_at_odd = !white(g.corner_region[4 * k + 1]);
        int eta = surface_at_odd ? 1 : -1;
        int w0 = surface_at_odd ? 0 : 1;
        int a = index[g.corner_region[4 * k + w0]], b = index[g.corner_region[4 * k + w0 + 2]];
        if (a != b) {
            full[a][b] -= eta;
            full[b][a] -= eta;
            full[a][a] += eta;
            full[b][b] += eta;
        }
        // The oriented smoothing joins corners 1,3 at positive crossings.
        bool oriented_joins_odd = d.positive(k);
        if (oriented_joins_odd == surface_at_odd) mu += eta;
    }
    std::vector<std::vector<Rational>> reduced(n - 1, std::vector<Rational>(n - 1));
    for (int r = 1; r < n; ++r)
        for (int col = 1; col < n; ++col) reduced[r - 1][col - 1] = full[r][col];
    return symmetric_signature(reduced) - mu;
}

}  // namespace

int signature(const LinkDiagram& d) { return gordon_litherland(d, false); }
int signature_other_colouring(const LinkDiagram& d) { return gordon_litherland(d, true); }

}  // namespace khoverant
