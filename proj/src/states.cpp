#include "khoverant/states.hpp"

#include <array>
#include <numeric>
#include <thread>

namespace khoverant {

namespace {

void require_small(const LinkDiagram& d) {
    if (d.crossing_count() > kMaxStateCrossings)
        throw DiagramError("state enumeration supports at most " + std::to_string(kMaxStateCrossings) +
                           " crossings");
}

int find(std::vector<int>& p, int x) {
    while (p[x] != x) {
        p[x] = p[p[x]];
        x = p[x];
    }
    return x;
}

}  // namespace

CircleCounter::CircleCounter(const LinkDiagram& d) : quads_(d.crossings()), free_loops_(d.free_loops()) {
    require_small(d);
}

int CircleCounter::count(StateBits s) const {
    int n = 2 * static_cast<int>(quads_.size());
    std::array<int, 2 * kMaxStateCrossings> parent;
    for (int a = 0; a < n; ++a) parent[a] = a;
    auto root = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    int components = n;
    auto unite = [&](int a, int b) {
        a = root(a);
        b = root(b);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    };
    for (std::size_t k = 0; k < quads_.size(); ++k) {
        const Quad& q = quads_[k];
        if ((s >> k) & 1) {
            unite(q[0], q[3]);
            unite(q[1], q[2]);
        } else {
            unite(q[0], q[1]);
            unite(q[2], q[3]);
        }
    }
    return components + free_loops_;
}

int CircleCounter::label(StateBits s, std::vector<int>& circle_of_arc) const {
    int n = 2 * static_cast<int>(quads_.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t k = 0; k < quads_.size(); ++k) {
        const Quad& q = quads_[k];
        bool b = (s >> k) & 1;
        int x1 = q[0], y1 = b ? q[3] : q[1];
        int x2 = q[2], y2 = b ? q[1] : q[3];
        parent[find(parent, x1)] = find(parent, y1);
        parent[find(parent, x2)] = find(parent, y2);
    }
    circle_of_arc.assign(n, -1);
    std::vector<int> id_of_root(n, -1);
    int next = 0;
    for (int a = 0; a < n; ++a) {
        int r = find(parent, a);
        if (id_of_root[r] < 0) id_of_root[r] = next++;
        circle_of_arc[a] = id_of_root[r];
    }
    return next + free_loops_;
}

KauffmanState kauffman_state(const LinkDiagram& d, StateBits choices) {
    require_small(d);
    KauffmanState st;
    st.choices = choices;
    st.crossing_count = d.crossing_count();
    st.circles = CircleCounter(d).label(choices, st.circle_of_arc);
    return st;
}

KauffmanState kauffman_state(const LinkDiagram& d, const std::vector<Smoothing>& choices) {
    if (static_cast<int>(choices.size()) != d.crossing_count())
        throw DiagramError("state length does not match the crossing count");
    StateBits bits = 0;
    for (std::size_t k = 0; k < choices.size(); ++k)
        if (choices[k] == Smoothing::B) bits |= StateBits{1} << k;
    return kauffman_state(d, bits);
}

namespace {
StateBits all_b(const LinkDiagram& d) {
    int c = d.crossing_count();
    return c == 64 ? ~StateBits{0} : (StateBits{1} << c) - 1;
}
}  // namespace

int sA(const LinkDiagram& d) { return CircleCounter(d).count(0); }
int sB(const LinkDiagram& d) { return CircleCounter(d).count(all_b(d)); }

int turaev_genus_diagram(const LinkDiagram& d) {
    if (is_split(d)) throw DiagramError("Turaev genus needs a non-split diagram");
    int twice = 2 + d.crossing_count() - sA(d) - sB(d);
    if (twice < 0 || twice % 2 != 0) throw std::logic_error("inconsistent circle counts");
    return twice / 2;
}

bool is_adequate(const LinkDiagram& d, Smoothing side) {
    std::vector<int> circle;
    CircleCounter(d).label(side == Smoothing::A ? 0 : all_b(d), circle);
    for (const Quad& q : d.crossings())
        if (circle[q[0]] == circle[q[2]]) return false;
    return true;
}

std::vector<std::uint8_t> all_circle_counts(const LinkDiagram& d, int threads) {
    require_small(d);
    if (d.crossing_count() > 30) throw DiagramError("too many crossings for a full state table");
    CircleCounter counter(d);
    std::size_t total = std::size_t{1} << d.crossing_count();
    std::vector<std::uint8_t> out(total);
    threads = std::max(1, threads);
    if (total < 4096) threads = 1;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t s = t; s < total; s += threads) out[s] = static_cast<std::uint8_t>(counter.count(s));
        });
    for (auto& th : pool) th.join();
    return out;
}

std::uint64_t binomial(int n, int k) {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, 65>, 65> t{};
        for (int a = 0; a <= 64; ++a) {
            t[a][0] = 1;
            for (int b = 1; b <= a; ++b) t[a][b] = t[a - 1][b - 1] + (b <= a - 1 ? t[a - 1][b] : 0);
        }
        return t;
    }();
    if (k < 0 || n < 0 || k > n) return 0;
    return table[n][k];
}

std::uint64_t mask_rank(std::uint64_t mask) {
    std::uint64_t r = 0;
    int t = 0;
    while (mask) {
        int p = __builtin_ctzll(mask);
        r += binomial(p, t + 1);
        ++t;
        mask &= mask - 1;
    }
    return r;
}

std::vector<EnhancedState> enumerate_enhanced(const LinkDiagram& d, int j) {
    require_small(d);
    if (d.crossing_count() > 30) throw DiagramError("too many crossings for enumeration");
    CircleCounter counter(d);
    int c = d.crossing_count();
    std::vector<std::vector<EnhancedState>> by_i(c + 1);
    for (StateBits s = 0; s < (StateBits{1} << c); ++s) {
        int b = __builtin_popcountll(s);
        int n = counter.count(s);
        int twice_x = b + n - j;
        if (twice_x < 0 || twice_x % 2 || twice_x / 2 > n) continue;
        int x = twice_x / 2;
        KauffmanState st = kauffman_state(d, s);
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
            if (__builtin_popcountll(m) == x) by_i[b].push_back(EnhancedState{st, m});
    }
    std::vector<EnhancedState> out;
    for (auto& v : by_i)
        for (auto& e : v) out.push_back(std::move(e));
    return out;
}

}  // namespace khoverant
