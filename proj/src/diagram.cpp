#include "khoverant/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace khoverant {

namespace {

using Slot = std::array<int, 2>;  // {crossing, position}

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

std::vector<std::array<Slot, 2>> occurrences(const std::vector<Quad>& quads) {
    std::vector<std::array<Slot, 2>> occ(2 * quads.size());
    std::vector<int> seen(occ.size(), 0);
    for (int k = 0; k < static_cast<int>(quads.size()); ++k)
        for (int s = 0; s < 4; ++s) {
            int a = quads[k][s];
            occ[a][seen[a]++] = Slot{k, s};
        }
    return occ;
}

Slot other_end(const std::array<Slot, 2>& o, Slot x) { return o[0] == x ? o[1] : o[0]; }

// Traces complementary regions. Corner s of crossing k is the region between
// slots s and s+1; the walk leaves along slot s+1 keeping the region on its
// right, so each region's corner list comes out clockwise.
int trace_regions(const std::vector<Quad>& quads, const std::vector<std::array<Slot, 2>>& occ,
                  std::vector<int>* corner_region, std::vector<std::vector<int>>* region_corners) {
    int c = static_cast<int>(quads.size());
    std::vector<int> region(4 * c, -1);
    int faces = 0;
    for (int start = 0; start < 4 * c; ++start) {
        if (region[start] >= 0) continue;
        std::vector<int> walk;
        int cur = start;
        while (region[cur] < 0) {
            region[cur] = faces;
            walk.push_back(cur);
            Slot leave{cur / 4, (cur % 4 + 1) % 4};
            Slot arrive = other_end(occ[quads[leave[0]][leave[1]]], leave);
            cur = arrive[0] * 4 + arrive[1];
        }
        if (cur != start) throw DiagramError("PD code is not a planar diagram");
        if (region_corners) region_corners->push_back(std::move(walk));
        ++faces;
    }
    if (corner_region) *corner_region = std::move(region);
    return faces;
}

int crossing_pieces(const std::vector<Quad>& quads) {
    int c = static_cast<int>(quads.size());
    if (c == 0) return 0;
    UnionFind uf(c);
    std::vector<int> first(2 * c, -1);
    for (int k = 0; k < c; ++k)
        for (int a : quads[k]) {
            if (first[a] < 0) first[a] = k;
            else uf.unite(first[a], k);
        }
    int pieces = 0;
    for (int k = 0; k < c; ++k) pieces += uf.find(k) == k;
    return pieces;
}

// Maps arbitrary positive labels onto 0..2c-1 preserving order.
std::vector<Quad> normalize_labels(const std::vector<Quad>& raw) {
    std::map<int, int> count;
    for (const auto& q : raw)
        for (int a : q) ++count[a];
    if (count.size() != 2 * raw.size())
        throw DiagramError("expected " + std::to_string(2 * raw.size()) + " distinct arcs, found " +
                           std::to_string(count.size()));
    std::map<int, int> index;
    for (auto [label, n] : count) {
        if (n != 2)
            throw DiagramError("arc " + std::to_string(label) + " used " + std::to_string(n) +
                               " times");
        int next = static_cast<int>(index.size());
        index[label] = next;
    }
    std::vector<Quad> out(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
        for (int s = 0; s < 4; ++s) out[k][s] = index[raw[k][s]];
    return out;
}

// Desired head slot per arc; empty when no preference is known.
using HeadHints = std::vector<std::optional<Slot>>;

}  // namespace

struct DiagramBuilder {
    static LinkDiagram build(std::vector<Quad> quads, int free_loops, std::optional<int> dealternator,
                             std::string name, bool repair, const HeadHints& hints) {
        int c = static_cast<int>(quads.size());
        if (free_loops < 0) throw DiagramError("negative loop count");
        if (dealternator && (*dealternator < 0 || *dealternator >= c))
            throw DiagramError("dealternator index out of range");
        for (const auto& q : quads)
            for (int a : q)
                if (a < 0 || a >= 2 * c) throw DiagramError("arc id out of range");
        {
            std::vector<int> uses(2 * c, 0);
            for (const auto& q : quads)
                for (int a : q) ++uses[a];
            for (int a = 0; a < 2 * c; ++a)
                if (uses[a] != 2) throw DiagramError("arc " + std::to_string(a + 1) + " not used twice");
        }
        auto occ = occurrences(quads);
        if (trace_regions(quads, occ, nullptr, nullptr) != c + 2 * crossing_pieces(quads))
            throw DiagramError("PD code is not a planar diagram");

        // Trace each strand once with a tentative direction.
        std::vector<Slot> head(2 * c), tail(2 * c);
        std::vector<int> strand(2 * c, -1);
        std::vector<std::vector<int>> cycles;
        for (int start = 0; start < 2 * c; ++start) {
            if (strand[start] >= 0) continue;
            int id = static_cast<int>(cycles.size());
            std::vector<int> cyc;
            int x = start;
            Slot h = occ[start][0], t = occ[start][1];
            while (strand[x] < 0) {
                strand[x] = id;
                head[x] = h;
                tail[x] = t;
                cyc.push_back(x);
                Slot through{h[0], (h[1] + 2) % 4};
                x = quads[through[0]][through[1]];
                t = through;
                h = other_end(occ[x], through);
            }
            cycles.push_back(std::move(cyc));
        }

        for (const auto& cyc : cycles) {
            std::optional<bool> keep;
            for (int x : cyc)
                if (!hints.empty() && hints[x]) {
                    keep = *hints[x] == head[x];
                    break;
                }
            if (!keep) {
                int forward = 0, backward = 0;
                for (int x : cyc) {
                    forward += head[x][1] == 0;
                    backward += head[x][1] == 2;
                }
                if (forward && backward && !repair)
                    throw DiagramError("under-strands disagree with a consistent orientation");
                if (forward || backward) {
                    keep = forward >= backward;
                } else {
                    // A component that only passes over: prefer increasing labels.
                    int up = 0;
                    for (std::size_t i = 0; i < cyc.size(); ++i) {
                        int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
                        up += (b == a + 1) - (a == b + 1);
                    }
                    keep = up >= 0;
                }
            }
            if (!*keep)
                for (int x : cyc) std::swap(head[x], tail[x]);
        }

        // Rotate crossings so slot 0 carries the incoming under-strand.
        for (int k = 0; k < c; ++k) {
            if (head[quads[k][0]] == Slot{k, 0}) continue;
            if (!repair && hints.empty())
                throw DiagramError("under-strands disagree with a consistent orientation");
            Quad q = quads[k];
            for (int s = 0; s < 4; ++s) quads[k][s] = q[(s + 2) % 4];
            std::set<int> arcs(q.begin(), q.end());
            for (int arc : arcs)
                for (Slot* p : {&head[arc], &tail[arc]})
                    if ((*p)[0] == k) (*p)[1] = ((*p)[1] + 2) % 4;
        }

        LinkDiagram d;
        d.crossings_ = std::move(quads);
        d.free_loops_ = free_loops;
        d.dealternator_ = dealternator;
        d.name_ = std::move(name);
        d.head_ = head;
        d.successor_.assign(2 * c, -1);
        d.component_of_.assign(2 * c, -1);
        d.positive_.assign(c, false);
        for (int x = 0; x < 2 * c; ++x) d.successor_[x] = d.crossings_[head[x][0]][(head[x][1] + 2) % 4];
        for (int k = 0; k < c; ++k) d.positive_[k] = head[d.crossings_[k][3]] == Slot{k, 3};
        std::vector<bool> seen(2 * c, false);
        for (int x = 0; x < 2 * c; ++x) {
            if (seen[x]) continue;
            std::vector<int> cyc;
            for (int y = x; !seen[y]; y = d.successor_[y]) {
                seen[y] = true;
                d.component_of_[y] = static_cast<int>(d.components_.size());
                cyc.push_back(y);
            }
            d.components_.push_back(std::move(cyc));
        }
        return d;
    }

    static HeadHints hints_of(const LinkDiagram& d) {
        HeadHints hints(d.arc_count());
        for (int x = 0; x < d.arc_count(); ++x) hints[x] = d.head_[x];
        return hints;
    }
};

LinkDiagram LinkDiagram::from_quads(std::vector<Quad> quads, int free_loops, std::optional<int> dealternator,
                                    std::string name, bool repair_orientation) {
    return DiagramBuilder::build(std::move(quads), free_loops, dealternator, std::move(name),
                                 repair_orientation, {});
}

LinkDiagram LinkDiagram::unlink(int loops, std::string name) {
    if (loops < 1) throw DiagramError("an unlink needs at least one circle");
    return from_quads({}, loops, std::nullopt, std::move(name));
}

LinkDiagram LinkDiagram::with_name(std::string name) const {
    LinkDiagram d = *this;
    d.name_ = std::move(name);
    return d;
}

LinkDiagram LinkDiagram::with_dealternator(std::optional<int> k) const {
    if (k && (*k < 0 || *k >= crossing_count())) throw DiagramError("dealternator index out of range");
    LinkDiagram d = *this;
    d.dealternator_ = k;
    return d;
}

LinkDiagram LinkDiagram::with_component_reversed(int component) const {
    if (component < 0 || component >= static_cast<int>(components_.size()))
        throw DiagramError("component index out of range");
    auto occ = occurrences(crossings_);
    HeadHints hints = DiagramBuilder::hints_of(*this);
    for (int x : components_[component]) hints[x] = other_end(occ[x], head_[x]);
    return DiagramBuilder::build(crossings_, free_loops_, dealternator_, name_, true, hints);
}

LinkDiagram parse_pd(const std::string& text) {
    std::vector<Quad> raw;
    int loops = 0;
    std::optional<int> dealternator;
    std::size_t i = 0, n = text.size();
    auto skip = [&] {
        while (i < n) {
            if (text[i] == '#') {
                while (i < n && text[i] != '\n') ++i;
            } else if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
                ++i;
            } else {
                break;
            }
        }
    };
    auto fail = [&](const std::string& what) {
        throw DiagramError("malformed token at offset " + std::to_string(i) + ": " + what);
    };
    skip();
    while (i < n) {
        bool marked = false;
        if (text[i] == '!') {
            marked = true;
            ++i;
        }
        if (i < n && (text[i] == 'O' || text[i] == 'o') && !marked) {
            ++loops;
            ++i;
            skip();
            continue;
        }
        if (i >= n || (text[i] != 'X' && text[i] != 'x')) fail("expected X(a,b,c,d)");
        ++i;
        if (i >= n || (text[i] != '(' && text[i] != '[')) fail("expected '('");
        char close = text[i] == '(' ? ')' : ']';
        ++i;
        Quad q{};
        for (int s = 0; s < 4; ++s) {
            while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            std::size_t start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i) fail("expected a positive arc number");
            q[s] = std::stoi(text.substr(start, i - start));
            while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
            if (s < 3) {
                if (i >= n || text[i] != ',') fail("expected ','");
                ++i;
            }
        }
        if (i >= n || text[i] != close) fail(std::string("expected '") + close + "'");
        ++i;
        if (marked) {
            if (dealternator) fail("more than one dealternator mark");
            dealternator = static_cast<int>(raw.size());
        }
        raw.push_back(q);
        skip();
    }
    if (raw.empty() && loops == 0) throw DiagramError("empty input");
    return LinkDiagram::from_quads(normalize_labels(raw), loops, dealternator);
}

std::string to_pd_string(const LinkDiagram& d) {
    std::ostringstream out;
    bool first = true;
    for (int k = 0; k < d.crossing_count(); ++k) {
        const Quad& q = d.crossings()[k];
        if (!first) out << ' ';
        first = false;
        if (d.dealternator() == k) out << '!';
        out << "X(" << q[0] + 1 << ',' << q[1] + 1 << ',' << q[2] + 1 << ',' << q[3] + 1 << ')';
    }
    for (int l = 0; l < d.free_loops(); ++l) {
        if (!first) out << ' ';
        first = false;
        out << 'O';
    }
    return out.str();
}

SignCount crossing_signs(const LinkDiagram& d) {
    SignCount out;
    for (int k = 0; k < d.crossing_count(); ++k) {
        int s = d.positive(k) ? 1 : -1;
        out.signs.push_back(s);
        (s > 0 ? out.positive : out.negative)++;
    }
    return out;
}

namespace {

// Swaps over and under at crossing k while keeping the orientation; returns
// the slot shift applied to the old positions.
int flip_into(std::vector<Quad>& quads, HeadHints& hints, const LinkDiagram& d, int k) {
    const Quad q = d.crossings()[k];
    // Positive: new under-strand is the old over-strand entering at slot 3.
    int shift = d.positive(k) ? 1 : 3;
    for (int s = 0; s < 4; ++s) quads[k][(s + shift) % 4] = q[s];
    for (auto& h : hints)
        if (h && (*h)[0] == k) (*h)[1] = ((*h)[1] + shift) % 4;
    return shift;
}

}  // namespace

LinkDiagram mirror(const LinkDiagram& d) {
    std::vector<Quad> quads = d.crossings();
    HeadHints hints = DiagramBuilder::hints_of(d);
    for (int k = 0; k < d.crossing_count(); ++k) flip_into(quads, hints, d, k);
    return DiagramBuilder::build(std::move(quads), d.free_loops(), d.dealternator(), d.name(), true, hints);
}

LinkDiagram flip_crossing(const LinkDiagram& d, int k) {
    if (k < 0 || k >= d.crossing_count()) throw DiagramError("crossing index out of range");
    std::vector<Quad> quads = d.crossings();
    HeadHints hints = DiagramBuilder::hints_of(d);
    flip_into(quads, hints, d, k);
    return DiagramBuilder::build(std::move(quads), d.free_loops(), d.dealternator(), d.name(), true, hints);
}

LinkDiagram resolve(const LinkDiagram& d, int k, Smoothing choice) {
    int c = d.crossing_count();
    if (k < 0 || k >= c) throw DiagramError("crossing index out of range");
    const Quad& q = d.crossings()[k];
    UnionFind uf(2 * c);
    if (choice == Smoothing::A) {
        uf.unite(q[0], q[1]);
        uf.unite(q[2], q[3]);
    } else {
        uf.unite(q[0], q[3]);
        uf.unite(q[1], q[2]);
    }
    // Count remaining endpoints per merged class; classes with none close up.
    std::vector<int> ends(2 * c, 0);
    for (int m = 0; m < c; ++m)
        if (m != k)
            for (int a : d.crossings()[m]) ++ends[uf.find(a)];
    int loops = d.free_loops();
    std::vector<int> label(2 * c, -1);
    int next = 0;
    for (int a = 0; a < 2 * c; ++a) {
        int r = uf.find(a);
        if (r != a) continue;
        if (ends[r] == 0) ++loops;
    }
    for (int a = 0; a < 2 * c; ++a) {
        int r = uf.find(a);
        if (ends[r] > 0 && label[r] < 0) label[r] = next++;
    }
    std::vector<Quad> quads;
    for (int m = 0; m < c; ++m) {
        if (m == k) continue;
        Quad nq;
        for (int s = 0; s < 4; ++s) nq[s] = label[uf.find(d.crossings()[m][s])];
        quads.push_back(nq);
    }
    std::optional<int> dealt;
    if (d.dealternator() && *d.dealternator() != k)
        dealt = *d.dealternator() - (*d.dealternator() > k ? 1 : 0);
    return DiagramBuilder::build(std::move(quads), loops, dealt, d.name(), true, {});
}

LinkDiagram connected_sum(const LinkDiagram& d1, const LinkDiagram& d2, int arc1, int arc2) {
    if (d2.crossing_count() == 0) {
        if (d2.free_loops() != 1) throw DiagramError("connected sum with a split diagram");
        return d1;
    }
    if (d1.crossing_count() == 0) {
        if (d1.free_loops() != 1) throw DiagramError("connected sum with a split diagram");
        return d2;
    }
    if (arc1 < 0 || arc1 >= d1.arc_count() || arc2 < 0 || arc2 >= d2.arc_count())
        throw DiagramError("invalid arc for connected sum");
    int n1 = d1.arc_count(), c1 = d1.crossing_count();
    std::vector<Quad> quads = d1.crossings();
    for (Quad q : d2.crossings()) {
        for (int& a : q) a += n1;
        quads.push_back(q);
    }
    HeadHints hints(n1 + d2.arc_count());
    for (int x = 0; x < n1; ++x) hints[x] = d1.head_slot(x);
    for (int x = 0; x < d2.arc_count(); ++x) {
        auto h = d2.head_slot(x);
        hints[n1 + x] = Slot{h[0] + c1, h[1]};
    }
    Slot h1 = *hints[arc1], h2 = *hints[n1 + arc2];
    quads[h1[0]][h1[1]] = n1 + arc2;
    quads[h2[0]][h2[1]] = arc1;
    std::swap(hints[arc1], hints[n1 + arc2]);
    std::string name = d1.name().empty() && d2.name().empty() ? "" : d1.name() + "#" + d2.name();
    return DiagramBuilder::build(std::move(quads), d1.free_loops() + d2.free_loops(), std::nullopt,
                                 name, true, hints);
}

LinkDiagram permute_crossings(const LinkDiagram& d, const std::vector<int>& order) {
    int c = d.crossing_count();
    if (static_cast<int>(order.size()) != c) throw DiagramError("permutation length mismatch");
    std::vector<int> where(c, -1);
    for (int i = 0; i < c; ++i) {
        if (order[i] < 0 || order[i] >= c || where[order[i]] >= 0) throw DiagramError("not a permutation");
        where[order[i]] = i;
    }
    std::vector<Quad> quads(c);
    for (int i = 0; i < c; ++i) quads[i] = d.crossings()[order[i]];
    HeadHints hints = DiagramBuilder::hints_of(d);
    for (auto& h : hints) (*h)[0] = where[(*h)[0]];
    std::optional<int> dealt;
    if (d.dealternator()) dealt = where[*d.dealternator()];
    return DiagramBuilder::build(std::move(quads), d.free_loops(), dealt, d.name(), true, hints);
}

bool is_alternating(const LinkDiagram& d) {
    // Each arc must run from an over-passage to an under-passage.
    auto occ = occurrences(d.crossings());
    for (const auto& o : occ)
        if ((o[0][1] % 2) == (o[1][1] % 2)) return false;
    return true;
}

bool is_split(const LinkDiagram& d) {
    return crossing_pieces(d.crossings()) + d.free_loops() > 1;
}

int PlaneGraph::multiplicity(int a, int b) const {
    int m = 0;
    for (const auto& e : edges)
        if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) ++m;
    return m;
}

std::vector<int> PlaneGraph::simple_neighbours(int v) const {
    std::set<int> out;
    for (const auto& e : edges) {
        if (e[0] == e[1]) continue;
        if (e[0] == v) out.insert(e[1]);
        if (e[1] == v) out.insert(e[0]);
    }
    return {out.begin(), out.end()};
}

CheckerboardGraph checkerboard(const LinkDiagram& d) {
    if (is_split(d)) throw DiagramError("checkerboard graphs need a non-split diagram");
    CheckerboardGraph g;
    int c = d.crossing_count();
    if (c == 0) {
        g.region_count = 2;
        g.region_shaded = {false, true};
        g.region_vertex = {0, 0};
        g.shaded.vertex_count = g.unshaded.vertex_count = 1;
        g.shaded.rotation.resize(1);
        g.unshaded.rotation.resize(1);
        return g;
    }
    const auto& quads = d.crossings();
    auto occ = occurrences(quads);
    std::vector<std::vector<int>> region_corners;
    g.region_count = trace_regions(quads, occ, &g.corner_region, &region_corners);

    // Corner s of crossing k has colour base[k] ^ (s & 1); propagate through regions.
    std::vector<int> base(c, -1), colour(g.region_count, -1);
    int seed = d.dealternator().value_or(0);
    base[seed] = d.dealternator() ? 1 : 0;
    std::vector<int> stack{seed};
    while (!stack.empty()) {
        int k = stack.back();
        stack.pop_back();
        for (int s = 0; s < 4; ++s) {
            int r = g.corner_region[4 * k + s];
            int want = base[k] ^ (s & 1);
            if (colour[r] >= 0) {
                if (colour[r] != want) throw DiagramError("diagram is not checkerboard colourable");
                continue;
            }
            colour[r] = want;
            for (int corner : region_corners[r]) {
                int m = corner / 4;
                int b = want ^ (corner & 1);
                if (base[m] < 0) {
                    base[m] = b;
                    stack.push_back(m);
                } else if (base[m] != b) {
                    throw DiagramError("diagram is not checkerboard colourable");
                }
            }
        }
    }
    g.region_shaded.resize(g.region_count);
    g.region_vertex.resize(g.region_count);
    int shaded = 0, unshaded = 0;
    for (int r = 0; r < g.region_count; ++r) {
        g.region_shaded[r] = colour[r] == 1;
        g.region_vertex[r] = g.region_shaded[r] ? shaded++ : unshaded++;
    }
    g.shaded.vertex_count = shaded;
    g.unshaded.vertex_count = unshaded;
    g.shaded.rotation.resize(shaded);
    g.unshaded.rotation.resize(unshaded);
    for (int k = 0; k < c; ++k) {
        int odd_shaded = base[k] ^ 1;  // colour of corners 1 and 3
        std::array<int, 2> sh = odd_shaded ? std::array<int, 2>{1, 3} : std::array<int, 2>{0, 2};
        std::array<int, 2> un = odd_shaded ? std::array<int, 2>{0, 2} : std::array<int, 2>{1, 3};
        g.shaded.edges.push_back({g.region_vertex[g.corner_region[4 * k + sh[0]]],
                                  g.region_vertex[g.corner_region[4 * k + sh[1]]]});
        g.unshaded.edges.push_back({g.region_vertex[g.corner_region[4 * k + un[0]]],
                                    g.region_vertex[g.corner_region[4 * k + un[1]]]});
    }
    for (int r = 0; r < g.region_count; ++r) {
        auto& rot = (g.region_shaded[r] ? g.shaded : g.unshaded).rotation[g.region_vertex[r]];
        for (auto it = region_corners[r].rbegin(); it != region_corners[r].rend(); ++it) rot.push_back(*it / 4);
    }
    if (auto k = d.dealternator()) {
        auto vert = [&](int s) { return g.region_vertex[g.corner_region[4 * *k + s]]; };
        g.u = std::array<int, 2>{vert(1), vert(3)};
        g.v = std::array<int, 2>{vert(0), vert(2)};
    }
    return g;
}

}  // namespace khoverant
