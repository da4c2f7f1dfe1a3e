#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace khoverant {

// Thrown for malformed PD input and invalid diagram operations.
class DiagramError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Smoothing { A, B };

// Arc ids around one crossing, counterclockwise, starting at the incoming
// under-strand. Arcs are 0-based in the API and 1-based in PD text.
using Quad = std::array<int, 4>;

struct SignCount {
    std::vector<int> signs;
    int positive = 0;
    int negative = 0;
    int writhe() const { return positive - negative; }
};

class LinkDiagram {
public:
    LinkDiagram() = default;

    // Validates arc incidence and planarity, then orients every component.
    // With repair_orientation, quadruples whose under-strand runs against
    // the chosen component orientation are rotated by two positions instead
    // of being rejected.
    static LinkDiagram from_quads(std::vector<Quad> quads, int free_loops = 0,
                                  std::optional<int> dealternator = std::nullopt,
                                  std::string name = {}, bool repair_orientation = false);

    // Crossingless diagram of `loops` disjoint circles.
    static LinkDiagram unlink(int loops, std::string name = {});

    const std::vector<Quad>& crossings() const { return crossings_; }
    int crossing_count() const { return static_cast<int>(crossings_.size()); }
    int arc_count() const { return 2 * crossing_count(); }
    int free_loops() const { return free_loops_; }
    std::optional<int> dealternator() const { return dealternator_; }
    const std::string& name() const { return name_; }

    // Arc following `arc` along the orientation.
    int successor(int arc) const { return successor_[arc]; }
    // Oriented arc cycles, one per component with crossings; free loops are
    // counted separately.
    const std::vector<std::vector<int>>& components() const { return components_; }
    int component_count() const { return static_cast<int>(components_.size()) + free_loops_; }
    // Component index of each arc.
    int component_of(int arc) const { return component_of_[arc]; }

    // True when the over-strand at crossing k runs from slot 3 to slot 1.
    bool positive(int k) const { return positive_[k]; }

    LinkDiagram with_name(std::string name) const;
    LinkDiagram with_dealternator(std::optional<int> k) const;
    // Reverses the orientation of one component (index into components()).
    LinkDiagram with_component_reversed(int component) const;

    // Crossing and slot where `arc` ends (enters its head crossing).
    std::array<int, 2> head_slot(int arc) const { return head_[arc]; }

private:
    friend struct DiagramBuilder;
    std::vector<Quad> crossings_;
    std::vector<std::array<int, 2>> head_;
    std::vector<int> successor_;
    std::vector<int> component_of_;
    std::vector<std::vector<int>> components_;
    std::vector<bool> positive_;
    int free_loops_ = 0;
    std::optional<int> dealternator_;
    std::string name_;
};

LinkDiagram parse_pd(const std::string& text);
std::string to_pd_string(const LinkDiagram& d);

SignCount crossing_signs(const LinkDiagram& d);
LinkDiagram mirror(const LinkDiagram& d);
// Changes over/under at a single crossing.
LinkDiagram flip_crossing(const LinkDiagram& d, int k);
LinkDiagram resolve(const LinkDiagram& d, int k, Smoothing choice);
// Arcs are 0-based; the sum is formed by cutting both arcs and cross-joining
// them so the orientations agree.
LinkDiagram connected_sum(const LinkDiagram& d1, const LinkDiagram& d2, int arc1, int arc2);
// Renumbers crossings: result crossing i is input crossing order[i].
LinkDiagram permute_crossings(const LinkDiagram& d, const std::vector<int>& order);

bool is_alternating(const LinkDiagram& d);
bool is_split(const LinkDiagram& d);

// Plane multigraph with a counterclockwise rotation system. Edge ids are
// crossing indices.
struct PlaneGraph {
    int vertex_count = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<int>> rotation;

    int multiplicity(int a, int b) const;
    // Distinct neighbours after removing loops and parallel edges.
    std::vector<int> simple_neighbours(int v) const;
};

struct CheckerboardGraph {
    PlaneGraph shaded;
    PlaneGraph unshaded;
    int region_count = 0;
    // Region of each corner (4 per crossing); corner s lies between slots s and s+1.
    std::vector<int> corner_region;
    std::vector<bool> region_shaded;
    // Vertex index of each region inside its own graph.
    std::vector<int> region_vertex;
    // Marks around the dealternator: u in the unshaded graph, v in the shaded one.
    std::optional<std::array<int, 2>> u;
    std::optional<std::array<int, 2>> v;
};

// Corner c of crossing k is the region between slots c and c+1. With a
// dealternator set, its corners 0 and 2 are shaded; otherwise corners 0 and 2
// of crossing 0 are unshaded.
CheckerboardGraph checkerboard(const LinkDiagram& d);

}  // namespace khoverant
