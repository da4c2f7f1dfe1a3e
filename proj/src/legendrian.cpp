#include "khoverant/legendrian.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <list>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "khoverant/states.hpp"

namespace khoverant {

int kh_tb_bound(const KhTable& t) {
    if (t.empty()) throw std::domain_error("empty homology table");
    int best = std::numeric_limits<int>::max();
    for (const auto& [key, g] : t.entries()) best = std::min(best, key.second - key.first);
    return best;
}

TbInterval tb_interval(const LinkDiagram& d, Side side) {
    TuraevOneFlags flags = turaev1_flags(d);
    int w = crossing_signs(d).writhe();
    TbInterval out;
    if (side == Side::A) {
        if (!flags.A_tg1) throw DiagramError("diagram is not A-Turaev genus one");
        out.lower = w - sA(d);
        out.upper = is_adequate(d, Smoothing::A) ? out.lower : out.lower + 1;
    } else {
        if (!flags.B_tg1) throw DiagramError("diagram is not B-Turaev genus one");
        out.lower = -w - sB(d);
        out.upper = is_adequate(d, Smoothing::B) ? out.lower : out.lower + 1;
    }
    return out;
}

namespace {

// Rotation system with face tracing. A dart leaves a vertex along an edge;
// faces lie to the left of their darts.
struct Embedding {
    std::vector<std::array<int, 2>> ends;
    std::vector<std::vector<int>> rotation;
    std::vector<int> offset;
    std::vector<std::array<int, 2>> position;  // slot of edge e at ends[e][k]
    std::vector<int> face_of_dart;
    std::vector<std::vector<int>> face_darts;

    Embedding(std::vector<std::array<int, 2>> edge_ends, std::vector<std::vector<int>> rot)
        : ends(std::move(edge_ends)), rotation(std::move(rot)) {
        offset.assign(rotation.size() + 1, 0);
        for (std::size_t v = 0; v < rotation.size(); ++v) offset[v + 1] = offset[v] + static_cast<int>(rotation[v].size());
        position.assign(ends.size(), {-1, -1});
        for (std::size_t v = 0; v < rotation.size(); ++v)
            for (std::size_t p = 0; p < rotation[v].size(); ++p) {
                int e = rotation[v][p];
                position[e][ends[e][0] == static_cast<int>(v) ? 0 : 1] = static_cast<int>(p);
            }
        face_of_dart.assign(offset.back(), -1);
        for (int d0 = 0; d0 < offset.back(); ++d0) {
            if (face_of_dart[d0] >= 0) continue;
            int f = static_cast<int>(face_darts.size());
            face_darts.emplace_back();
            for (int d = d0; face_of_dart[d] < 0; d = next(d)) {
                face_of_dart[d] = f;
                face_darts[f].push_back(d);
            }
        }
    }

    int vertex_of(int dart) const {
        return static_cast<int>(std::upper_bound(offset.begin(), offset.end(), dart) - offset.begin()) - 1;
    }
    int edge_of(int dart) const {
        int v = vertex_of(dart);
        return rotation[v][dart - offset[v]];
    }
    int dart_from(int v, int e) const { return offset[v] + position[e][ends[e][0] == v ? 0 : 1]; }
    // Dart arriving at the far end, as (vertex, slot of the edge there).
    std::pair<int, int> arrival(int dart) const {
        int v = vertex_of(dart), e = edge_of(dart);
        int k = ends[e][0] == v ? 1 : 0;
        return {ends[e][k], position[e][k]};
    }
    int next(int dart) const {
        auto [w, q] = arrival(dart);
        int deg = static_cast<int>(rotation[w].size());
        return offset[w] + (q - 1 + deg) % deg;
    }
    int face_count() const { return static_cast<int>(face_darts.size()); }
};

// Tarjan's st-ordering; returns vertices listed from s to t.
std::vector<int> st_order(int n, const std::vector<std::array<int, 2>>& edges, int s, int t) {
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [a, b] = edges[e];
        if (a == b) continue;
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    auto first = std::find_if(adj[s].begin(), adj[s].end(), [&](auto& p) { return p.first == t; });
    if (first == adj[s].end()) throw std::logic_error("st-ordering needs an edge between source and sink");
    std::iter_swap(adj[s].begin(), first);

    std::vector<int> pre(n, -1), parent(n, -1), low(n, -1), order;
    std::function<void(int, int)> dfs = [&](int v, int via) {
        pre[v] = static_cast<int>(order.size());
        order.push_back(v);
        low[v] = v;
        for (auto [w, e] : adj[v]) {
            if (e == via) continue;
            if (pre[w] < 0) {
                parent[w] = v;
                dfs(w, e);
                if (pre[low[w]] < pre[low[v]]) low[v] = low[w];
            } else if (pre[w] < pre[low[v]]) {
                low[v] = w;
            }
        }
    };
    dfs(s, -1);
    if (static_cast<int>(order.size()) != n) throw std::logic_error("graph is not connected");

    std::list<int> seq{s, t};
    std::vector<std::list<int>::iterator> where(n);
    where[s] = seq.begin();
    where[t] = std::next(seq.begin());
    std::vector<int> sign(n, 0);
    sign[s] = -1;
    for (int v : order) {
        if (v == s || v == t) continue;
        int p = parent[v];
        if (sign[low[v]] == -1) {
            where[v] = seq.insert(where[p], v);
            sign[p] = 1;
        } else {
            where[v] = seq.insert(std::next(where[p]), v);
            sign[p] = -1;
        }
    }
    std::vector<int> out(seq.begin(), seq.end());
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i) rank[out[i]] = i;
    for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        bool below = false, above = false;
        for (auto [w, e] : adj[v]) (rank[w] < rank[v] ? below : above) = true;
        if (!below || !above) throw std::logic_error("st-ordering failed; graph is not 2-connected");
    }
    return out;
}

void require_layout_graph(const PlaneGraph& g) {
    if (g.vertex_count < 1) throw DiagramError("graph has no vertices");
    for (auto [a, b] : g.edges)
        if (a == b) throw DiagramError("graph has a loop; a nugatory crossing has no Mondrian layout");
    std::vector<int> comp(g.vertex_count, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    std::vector<std::vector<int>> nbr(g.vertex_count);
    for (auto [a, b] : g.edges) {
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : nbr[v])
            if (comp[w] < 0) {
                comp[w] = 0;
                stack.push_back(w);
            }
    }
    if (std::count(comp.begin(), comp.end(), -1) != 0) throw DiagramError("graph is not connected");
}

MondrianDiagram layout(const PlaneGraph& g, std::optional<int> marked, bool swap_top) {
    require_layout_graph(g);
    MondrianDiagram m;
    m.marked_edge = marked;
    int nv = g.vertex_count, ne = static_cast<int>(g.edges.size());
    if (ne == 0) {
        m.horizontals.push_back({0, 0, 0});
        return m;
    }
    if (marked) {
        if (*marked < 0 || *marked >= ne) throw DiagramError("marked edge out of range");
        auto [a, b] = g.edges[*marked];
        if (g.multiplicity(a, b) != 1)
            throw DiagramError("marked edge is not the only edge between its endpoints");
    }

    // Star-augment every face so the graph becomes 2-connected.
    Embedding base(g.edges, g.rotation);
    int nf = base.face_count();
    std::vector<std::array<int, 2>> h_edges = g.edges;
    std::vector<std::vector<int>> h_rot(nv + nf);
    std::vector<int> corner_edge(base.offset.back());
    for (int v = 0; v < nv; ++v)
        for (int q = 0; q < static_cast<int>(g.rotation[v].size()); ++q) {
            int e = g.rotation[v][q];
            int other = g.edges[e][0] == v ? g.edges[e][1] : g.edges[e][0];
            int face = base.face_of_dart[base.dart_from(other, e)];
            int star = static_cast<int>(h_edges.size());
            h_edges.push_back({v, nv + face});
            corner_edge[base.offset[v] + q] = star;
            h_rot[v].push_back(star);
            h_rot[v].push_back(e);
        }
    for (int f = 0; f < nf; ++f)
        for (int d : base.face_darts[f]) {
            auto [w, q] = base.arrival(d);
            h_rot[nv + f].push_back(corner_edge[base.offset[w] + q]);
        }
    Embedding aug(h_edges, h_rot);
    int nh = nv + nf;

    int key_edge = marked.value_or(0);
    int top = g.edges[key_edge][swap_top ? 1 : 0];
    int second = g.edges[key_edge][swap_top ? 0 : 1];
    int source = nv + base.face_of_dart[base.dart_from(top, key_edge)];

    std::vector<int> bottom_up;
    if (marked) {
        // Contract the marked edge, order from the merged vertex to the star,
        // then split it again with `top` above `second` and reverse.
        std::vector<std::array<int, 2>> contracted;
        for (int e = 0; e < static_cast<int>(h_edges.size()); ++e) {
            if (e == key_edge) continue;
            auto [a, b] = h_edges[e];
            contracted.push_back({a == second ? top : a, b == second ? top : b});
        }
        // `second` becomes isolated in the contracted graph; give it a
        // throwaway link so the ordering sees a connected vertex set.
        std::vector<int> remap(nh), back;
        for (int v = 0; v < nh; ++v)
            if (v != second) {
                remap[v] = static_cast<int>(back.size());
                back.push_back(v);
            }
        for (auto& [a, b] : contracted) {
            a = remap[a];
            b = remap[b];
        }
        std::vector<int> order = st_order(nh - 1, contracted, remap[top], remap[source]);
        std::vector<int> expanded{top, second};
        for (std::size_t i = 1; i < order.size(); ++i) expanded.push_back(back[order[i]]);
        bottom_up.assign(expanded.rbegin(), expanded.rend());
    } else {
        bottom_up = st_order(nh, h_edges, source, top);
    }
    std::vector<int> y(nh);
    for (int i = 0; i < nh; ++i) y[bottom_up[i]] = i;

    // Dual longest paths give x; the outer face is split into left and right.
    int outer = aug.face_of_dart[aug.dart_from(top, key_edge)];
    int nfa = aug.face_count();
    int left_outer = nfa, right_outer = nfa + 1;
    std::vector<int> left_face(h_edges.size());
    std::vector<std::vector<int>> dual(nfa + 2);
    std::vector<int> indeg(nfa + 2, 0);
    for (int e = 0; e < static_cast<int>(h_edges.size()); ++e) {
        auto [a, b] = h_edges[e];
        int lo = y[a] < y[b] ? a : b, hi = lo == a ? b : a;
        int lf = aug.face_of_dart[aug.dart_from(lo, e)];
        int rf = aug.face_of_dart[aug.dart_from(hi, e)];
        if (lf == outer) lf = left_outer;
        if (rf == outer) rf = right_outer;
        left_face[e] = lf;
        dual[lf].push_back(rf);
        ++indeg[rf];
    }
    std::vector<int> x(nfa + 2, 0);
    std::queue<int> ready;
    for (int f = 0; f < nfa + 2; ++f)
        if (indeg[f] == 0 && f != outer) ready.push(f);
    int done = 0;
    while (!ready.empty()) {
        int f = ready.front();
        ready.pop();
        ++done;
        for (int r : dual[f]) {
            x[r] = std::max(x[r], x[f] + 1);
            if (--indeg[r] == 0) ready.push(r);
        }
    }
    if (done != nfa + 1) throw std::logic_error("dual graph of the layout has a cycle");

    // Keep the real vertices and edges; compress coordinates.
    std::vector<int> xs;
    for (int e = 0; e < ne; ++e) xs.push_back(x[left_face[e]]);
    std::vector<int> distinct = xs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> real_rank(nv);
    {
        std::vector<int> real(nv);
        for (int v = 0; v < nv; ++v) real[v] = v;
        std::sort(real.begin(), real.end(), [&](int a, int b) { return y[a] < y[b]; });
        for (int i = 0; i < nv; ++i) real_rank[real[i]] = i;
    }
    m.horizontals.assign(nv, {});
    for (int v = 0; v < nv; ++v) {
        m.horizontals[v].y = real_rank[v];
        m.horizontals[v].x_begin = std::numeric_limits<int>::max();
        m.horizontals[v].x_end = std::numeric_limits<int>::min();
    }
    m.verticals.assign(ne, {});
    for (int e = 0; e < ne; ++e) {
        auto [a, b] = g.edges[e];
        int col = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), xs[e]) - distinct.begin());
        auto& v = m.verticals[e];
        v.x = col;
        v.lower = y[a] < y[b] ? a : b;
        v.upper = v.lower == a ? b : a;
        for (int end : {a, b}) {
            m.horizontals[end].x_begin = std::min(m.horizontals[end].x_begin, col);
            m.horizontals[end].x_end = std::max(m.horizontals[end].x_end, col);
        }
    }
    return m;
}

bool matches_graph(const MondrianDiagram& m, const PlaneGraph& g, std::optional<int> marked) {
    if (!mondrian_violations(m).empty()) return false;
    if (!same_rotation(contraction(m), g)) return false;
    return !marked || placement_holds(m, *marked);
}

}  // namespace

MondrianDiagram mondrian_from_graph(const PlaneGraph& g, std::optional<int> marked_edge) {
    MondrianDiagram m = layout(g, marked_edge, false);
    if (!matches_graph(m, g, marked_edge)) throw std::logic_error("Mondrian layout does not contract to the graph");
    return m;
}

PlaneGraph contraction(const MondrianDiagram& m) {
    PlaneGraph g;
    g.vertex_count = static_cast<int>(m.horizontals.size());
    g.rotation.assign(g.vertex_count, {});
    for (const auto& v : m.verticals) g.edges.push_back({v.lower, v.upper});
    for (int h = 0; h < g.vertex_count; ++h) {
        std::vector<int> top, bottom;
        for (int e = 0; e < static_cast<int>(m.verticals.size()); ++e) {
            if (m.verticals[e].lower == h) top.push_back(e);
            if (m.verticals[e].upper == h) bottom.push_back(e);
        }
        auto by_x = [&](int a, int b) { return m.verticals[a].x < m.verticals[b].x; };
        std::sort(top.begin(), top.end(), by_x);
        std::sort(bottom.begin(), bottom.end(), by_x);
        g.rotation[h].assign(top.rbegin(), top.rend());
        g.rotation[h].insert(g.rotation[h].end(), bottom.begin(), bottom.end());
    }
    return g;
}

std::vector<std::string> mondrian_violations(const MondrianDiagram& m) {
    std::vector<std::string> out;
    const auto& hs = m.horizontals;
    for (std::size_t a = 0; a < hs.size(); ++a) {
        if (hs[a].x_begin > hs[a].x_end) out.push_back("horizontal " + std::to_string(a) + " is empty");
        for (std::size_t b = a + 1; b < hs.size(); ++b)
            if (hs[a].y == hs[b].y && hs[a].x_begin <= hs[b].x_end && hs[b].x_begin <= hs[a].x_end)
                out.push_back("horizontals " + std::to_string(a) + " and " + std::to_string(b) + " overlap");
    }
    for (std::size_t e = 0; e < m.verticals.size(); ++e) {
        const auto& v = m.verticals[e];
        std::string name = "vertical " + std::to_string(e);
        const auto& lo = hs[v.lower];
        const auto& hi = hs[v.upper];
        if (lo.y >= hi.y) out.push_back(name + " does not go up");
        if (v.x < lo.x_begin || v.x > lo.x_end || v.x < hi.x_begin || v.x > hi.x_end)
            out.push_back(name + " has an endpoint off its horizontals");
        for (std::size_t h = 0; h < hs.size(); ++h)
            if (hs[h].y > lo.y && hs[h].y < hi.y && v.x >= hs[h].x_begin && v.x <= hs[h].x_end)
                out.push_back(name + " crosses horizontal " + std::to_string(h));
    }
    return out;
}

bool same_rotation(const PlaneGraph& a, const PlaneGraph& b) {
    if (a.vertex_count != b.vertex_count || a.edges.size() != b.edges.size()) return false;
    for (std::size_t e = 0; e < a.edges.size(); ++e) {
        auto x = a.edges[e], y = b.edges[e];
        if (!(x == y || (x[0] == y[1] && x[1] == y[0]))) return false;
    }
    for (int v = 0; v < a.vertex_count; ++v) {
        const auto& ra = a.rotation[v];
        const auto& rb = b.rotation[v];
        if (ra.size() != rb.size()) return false;
        if (ra.empty()) continue;
        auto start = std::find(rb.begin(), rb.end(), ra.front());
        if (start == rb.end()) return false;
        std::vector<int> turned(start, rb.end());
        turned.insert(turned.end(), rb.begin(), start);
        if (turned != ra) return false;
    }
    return true;
}

bool placement_holds(const MondrianDiagram& m, int edge) {
    const auto& v = m.verticals.at(edge);
    for (std::size_t e = 0; e < m.verticals.size(); ++e) {
        if (static_cast<int>(e) == edge) continue;
        const auto& o = m.verticals[e];
        if (o.lower == v.lower && o.x <= v.x) return false;
        if (o.upper == v.upper && o.x >= v.x) return false;
    }
    return true;
}

namespace {

enum Slot { SW = 0, SE = 1, NE = 2, NW = 3 };

FrontPort crossing_port(int index, int slot) { return {FrontPort::Kind::crossing, index, slot}; }
FrontPort cusp_port(int index, int branch) { return {FrontPort::Kind::cusp, index, branch}; }

}  // namespace

LegendrianFront front_from_mondrian(const MondrianDiagram& m, std::optional<int> dealternator_edge) {
    LegendrianFront f;
    int nh = static_cast<int>(m.horizontals.size());
    for (std::size_t e = 0; e < m.verticals.size(); ++e) {
        const auto& v = m.verticals[e];
        f.crossings.push_back({static_cast<int>(e), static_cast<double>(v.x),
                               (m.horizontals[v.lower].y + m.horizontals[v.upper].y) / 2.0});
    }
    for (int h = 0; h < nh; ++h) {
        const auto& hz = m.horizontals[h];
        f.cusps.push_back({hz.x_begin - 0.5, static_cast<double>(hz.y), true});
        f.cusps.push_back({hz.x_end + 0.5, static_cast<double>(hz.y), false});
    }
    for (int h = 0; h < nh; ++h) {
        std::vector<int> top, bottom;
        for (int e = 0; e < static_cast<int>(m.verticals.size()); ++e) {
            if (m.verticals[e].lower == h) top.push_back(e);
            if (m.verticals[e].upper == h) bottom.push_back(e);
        }
        auto by_x = [&](int a, int b) { return m.verticals[a].x < m.verticals[b].x; };
        std::sort(top.begin(), top.end(), by_x);
        std::sort(bottom.begin(), bottom.end(), by_x);
        FrontPort at = cusp_port(2 * h, 0);
        for (int e : top) {
            f.segments.push_back({at, crossing_port(e, SW)});
            at = crossing_port(e, SE);
        }
        f.segments.push_back({at, cusp_port(2 * h + 1, 0)});
        at = cusp_port(2 * h, 1);
        for (int e : bottom) {
            f.segments.push_back({at, crossing_port(e, NW)});
            at = crossing_port(e, NE);
        }
        f.segments.push_back({at, cusp_port(2 * h + 1, 1)});
    }

    if (dealternator_edge) {
        int e0 = *dealternator_edge;
        if (!placement_holds(m, e0)) throw DiagramError("dealternator vertical is not placed at the eye corners");
        const auto& v = m.verticals.at(e0);
        std::vector<int> removed{2 * v.lower, 2 * v.upper + 1};
        for (int cusp : removed) {
            // Join the two strand pieces meeting at this cusp.
            std::vector<FrontPort> far;
            std::vector<std::array<FrontPort, 2>> kept;
            for (auto& s : f.segments) {
                bool hit = false;
                for (int k = 0; k < 2; ++k)
                    if (s[k].kind == FrontPort::Kind::cusp && s[k].index == cusp) {
                        far.push_back(s[1 - k]);
                        hit = true;
                    }
                if (!hit) kept.push_back(s);
            }
            kept.push_back({far.at(0), far.at(1)});
            f.segments = std::move(kept);
        }
        // The changed crossing keeps its cyclic neighbours, shifted one slot.
        for (auto& s : f.segments)
            for (auto& p : s)
                if (p.kind == FrontPort::Kind::crossing && p.index == e0) p.slot = (p.slot + 1) % 4;
        std::vector<int> renumber(f.cusps.size(), -1);
        std::vector<LegendrianFront::Cusp> cusps;
        for (int c = 0; c < static_cast<int>(f.cusps.size()); ++c)
            if (std::find(removed.begin(), removed.end(), c) == removed.end()) {
                renumber[c] = static_cast<int>(cusps.size());
                cusps.push_back(f.cusps[c]);
            }
        f.cusps = std::move(cusps);
        for (auto& s : f.segments)
            for (auto& p : s)
                if (p.kind == FrontPort::Kind::cusp) p.index = renumber[p.index];
    }
    return f;
}

namespace {

// Other end of the segment at each port; cusps contribute two ports each.
struct PortIndex {
    const LegendrianFront& f;
    std::map<std::tuple<int, int, int>, FrontPort> partner;

    explicit PortIndex(const LegendrianFront& front) : f(front) {
        for (const auto& s : f.segments) {
            partner[key(s[0])] = s[1];
            partner[key(s[1])] = s[0];
        }
    }
    static std::tuple<int, int, int> key(const FrontPort& p) {
        return {p.kind == FrontPort::Kind::crossing ? 0 : 1, p.index, p.slot};
    }
    // Follows the strand through cusps to the next crossing port.
    std::optional<FrontPort> crossing_after(FrontPort p) const {
        std::size_t guard = 0;
        for (FrontPort q = partner.at(key(p));; q = partner.at(key(q))) {
            if (q.kind == FrontPort::Kind::crossing) return q;
            q.slot = 1 - q.slot;
            if (++guard > partner.size()) return std::nullopt;
        }
    }
};

}  // namespace

std::vector<Quad> front_quads(const LegendrianFront& f) {
    PortIndex index(f);
    int n = static_cast<int>(f.crossings.size());
    std::vector<Quad> quads(n, Quad{-1, -1, -1, -1});
    int arc = 0;
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) {
            if (quads[c][s] >= 0) continue;
            auto other = index.crossing_after(crossing_port(c, s));
            if (!other) throw DiagramError("front strand never reaches a crossing");
            quads[c][s] = arc;
            quads[other->index][other->slot] = arc;
            ++arc;
        }
    return quads;
}

std::optional<std::vector<int>> align_front(const LegendrianFront& f, const LinkDiagram& d) {
    int n = static_cast<int>(f.crossings.size());
    if (n != d.crossing_count()) return std::nullopt;
    std::vector<int> target(n);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
        int id = f.crossings[i].id;
        if (id < 0 || id >= n || used[id]) return std::nullopt;
        used[id] = true;
        target[i] = id;
    }
    std::vector<int> front_of(n);
    for (int i = 0; i < n; ++i) front_of[target[i]] = i;

    auto partners = [](const std::vector<Quad>& quads) {
        std::map<int, std::vector<std::pair<int, int>>> seen;
        for (int c = 0; c < static_cast<int>(quads.size()); ++c)
            for (int s = 0; s < 4; ++s) seen[quads[c][s]].push_back({c, s});
        std::vector<std::array<std::pair<int, int>, 4>> out(quads.size());
        for (auto& [arc, ends] : seen) {
            out[ends[0].first][ends[0].second] = ends[1];
            out[ends[1].first][ends[1].second] = ends[0];
        }
        return out;
    };
    auto fp = partners(front_quads(f));
    auto dp = partners(d.crossings());

    std::vector<int> rot(n, -1);
    for (int start = 0; start < n; ++start) {
        if (rot[start] >= 0) continue;
        bool placed = false;
        for (int guess : {0, 2}) {
            std::vector<int> trial = rot;
            trial[start] = guess;
            std::vector<int> queue{start};
            bool ok = true;
            for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
                int i = queue[qi];
                for (int s = 0; s < 4 && ok; ++s) {
                    auto [fi, fs] = fp[i][s];
                    auto [dk, ds] = dp[target[i]][(s + trial[i]) % 4];
                    if (front_of[dk] != fi) {
                        ok = false;
                        break;
                    }
                    int r = ((ds - fs) % 4 + 4) % 4;
                    if (r != 0 && r != 2) ok = false;
                    else if (trial[fi] < 0) {
                        trial[fi] = r;
                        queue.push_back(fi);
                    } else if (trial[fi] != r) {
                        ok = false;
                    }
                }
            }
            if (ok) {
                rot = std::move(trial);
                placed = true;
                break;
            }
        }
        if (!placed) return std::nullopt;
    }
    return rot;
}

LegendrianFront orient_front(LegendrianFront f, const LinkDiagram& d) {
    if (!align_front(f, d)) throw DiagramError("front does not draw the diagram");
    f.signs.clear();
    for (const auto& c : f.crossings) f.signs.push_back(d.positive(c.id) ? 1 : -1);
    return f;
}

int front_writhe(const LegendrianFront& f) {
    if (!f.oriented()) throw DiagramError("front is not oriented");
    int w = 0;
    for (int s : f.signs) w += s;
    return w;
}

int tb_of_front(const LegendrianFront& f) { return front_writhe(f) - f.cusp_count() / 2; }

LegendrianFront front_for_diagram(const LinkDiagram& d) {
    if (d.crossing_count() == 0) {
        LegendrianFront f;
        for (int h = 0; h < d.free_loops(); ++h) {
            f.cusps.push_back({2.0 * h - 0.5, 0, true});
            f.cusps.push_back({2.0 * h + 0.5, 0, false});
            f.segments.push_back({cusp_port(2 * h, 0), cusp_port(2 * h + 1, 0)});
            f.segments.push_back({cusp_port(2 * h, 1), cusp_port(2 * h + 1, 1)});
        }
        return f;
    }
    if (d.free_loops() > 0 || is_split(d)) throw DiagramError("front construction needs a non-split diagram");
    std::optional<int> dealternator;
    PlaneGraph graph;
    if (is_alternating(d)) {
        graph = checkerboard(d).unshaded;
    } else {
        Classification cls = classify(d);
        for (const auto& s : cls.dealternators) {
            bool a_side = s.verdict == Verdict::A_almost_alternating || s.verdict == Verdict::both;
            if (a_side && (!dealternator || d.dealternator() == s.dealternator)) dealternator = s.dealternator;
        }
        if (!dealternator) throw DiagramError("front construction needs an alternating or A-almost alternating diagram");
        graph = checkerboard(d.with_dealternator(dealternator)).unshaded;
    }
    for (bool swap_top : {false, true}) {
        MondrianDiagram m = layout(graph, dealternator, swap_top);
        if (!matches_graph(m, graph, dealternator)) continue;
        LegendrianFront f = front_from_mondrian(m, dealternator);
        if (align_front(f, d)) return orient_front(std::move(f), d);
    }
    throw std::logic_error("constructed front does not draw the diagram");
}

std::string front_svg(const LegendrianFront& f) {
    const double scale = 60, pad = 40, arm = 8;
    double max_x = 0, max_y = 0;
    for (const auto& c : f.crossings) {
        max_x = std::max(max_x, c.x);
        max_y = std::max(max_y, c.y);
    }
    for (const auto& c : f.cusps) {
        max_x = std::max(max_x, c.x);
        max_y = std::max(max_y, c.y);
    }
    double width = (max_x + 1) * scale + 2 * pad, height = max_y * scale + 2 * pad;
    auto px = [&](double x) { return pad + (x + 0.5) * scale; };
    auto py = [&](double y) { return height - pad - y * scale; };
    auto point = [&](const FrontPort& p) -> std::pair<double, double> {
        if (p.kind == FrontPort::Kind::cusp) return {px(f.cusps[p.index].x), py(f.cusps[p.index].y)};
        const auto& c = f.crossings[p.index];
        double dx = (p.slot == SW || p.slot == NW) ? -arm : arm;
        double dy = (p.slot == SW || p.slot == SE) ? arm : -arm;
        return {px(c.x) + dx, py(c.y) + dy};
    };
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<g fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n";
    for (const auto& s : f.segments) {
        auto [x1, y1] = point(s[0]);
        auto [x2, y2] = point(s[1]);
        double mid = (x1 + x2) / 2;
        out << "<path d=\"M " << x1 << " " << y1 << " C " << mid << " " << y1 << ", " << mid << " " << y2 << ", " << x2
            << " " << y2 << "\"/>\n";
    }
    for (const auto& c : f.crossings) {
        double x = px(c.x), y = py(c.y);
        out << "<line x1=\"" << x - arm << "\" y1=\"" << y + arm << "\" x2=\"" << x + arm << "\" y2=\"" << y - arm
            << "\"/>\n";
        out << "<line x1=\"" << x - arm << "\" y1=\"" << y - arm << "\" x2=\"" << x + arm << "\" y2=\"" << y + arm
            << "\" stroke=\"white\" stroke-width=\"6\"/>\n";
        out << "<line x1=\"" << x - arm << "\" y1=\"" << y - arm << "\" x2=\"" << x + arm << "\" y2=\"" << y + arm
            << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace khoverant
