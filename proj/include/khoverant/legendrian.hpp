#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "khoverant/classify.hpp"
#include "khoverant/diagram.hpp"
#include "khoverant/homology.hpp"

namespace khoverant {

// min{ j − i : Kh^{i,j} ≠ 0 }, an upper bound for the maximal tb.
int kh_tb_bound(const KhTable& t);

struct TbInterval {
    int lower = 0;
    int upper = 0;
};
// Side A bounds the maximal tb of L by [w − s_A, w − s_A + 1]; side B bounds
// that of the mirror by [−w − s_B, −w − s_B + 1]. An adequate side collapses
// to its lower end. Throws DiagramError unless the side is Turaev genus one.
TbInterval tb_interval(const LinkDiagram& d, Side side);

// Thick horizontals (one per graph vertex) and thin verticals (one per edge,
// indexed by crossing). Integer coordinates.
struct MondrianDiagram {
    struct Horizontal {
        int y = 0;
        int x_begin = 0;
        int x_end = 0;
    };
    struct Vertical {
        int x = 0;
        int lower = 0;  // vertex of the horizontal at the bottom end
        int upper = 0;
    };
    std::vector<Horizontal> horizontals;
    std::vector<Vertical> verticals;
    std::optional<int> marked_edge;
};

// Visibility layout of a connected loopless plane graph. With a marked edge,
// its vertical is the only edge on top of its lower horizontal and the
// rightmost on the bottom of its upper horizontal.
MondrianDiagram mondrian_from_graph(const PlaneGraph& g, std::optional<int> marked_edge = std::nullopt);

// Horizontals collapsed to points; rotation read counterclockwise.
PlaneGraph contraction(const MondrianDiagram& m);
std::vector<std::string> mondrian_violations(const MondrianDiagram& m);
// Same edges at every vertex in the same cyclic order.
bool same_rotation(const PlaneGraph& a, const PlaneGraph& b);
bool placement_holds(const MondrianDiagram& m, int edge);

// Combinatorial front. Crossing ports are SW, SE, NE, NW (slots 0..3,
// counterclockwise); the strand SW–NE has positive slope and passes under.
// Cusp ports: 0 upper branch, 1 lower branch.
struct FrontPort {
    enum class Kind { crossing, cusp };
    Kind kind = Kind::crossing;
    int index = 0;
    int slot = 0;
    friend bool operator==(const FrontPort&, const FrontPort&) = default;
};

struct LegendrianFront {
    struct Crossing {
        int id = 0;  // crossing of the source diagram
        double x = 0, y = 0;
    };
    struct Cusp {
        double x = 0, y = 0;
        bool points_left = true;
    };
    std::vector<Crossing> crossings;
    std::vector<Cusp> cusps;
    // Strand pieces between consecutive crossings or cusps.
    std::vector<std::array<FrontPort, 2>> segments;
    // Closed strands with no crossing and no cusp; never produced by the
    // constructions here, kept for completeness of the PD conversion.
    int free_loops = 0;
    // ±1 per crossing once oriented against a diagram.
    std::vector<int> signs;

    int cusp_count() const { return static_cast<int>(cusps.size()); }
    bool oriented() const { return signs.size() == crossings.size(); }
};

// Horizontals become two-cusped eyes and verticals crossings. With a
// dealternator edge, that crossing is changed and the two cusps next to it
// are removed.
LegendrianFront front_from_mondrian(const MondrianDiagram& m, std::optional<int> dealternator_edge = std::nullopt);

// PD quadruples of the front, one per crossing in front order (slot order
// SW, SE, NE, NW), arcs 0-based.
std::vector<Quad> front_quads(const LegendrianFront& f);

// Rotation (0 or 2) per front crossing mapping front slots onto the slots of
// the same crossing in d, when the front is a diagram of d.
std::optional<std::vector<int>> align_front(const LegendrianFront& f, const LinkDiagram& d);
// Copies crossing signs from d through the alignment; throws DiagramError if
// the front does not draw d.
LegendrianFront orient_front(LegendrianFront f, const LinkDiagram& d);

// w(F) − cusps/2; the front must be oriented.
int tb_of_front(const LegendrianFront& f);
int front_writhe(const LegendrianFront& f);

// Builds the front for an alternating or A-almost alternating diagram and
// orients it against d.
LegendrianFront front_for_diagram(const LinkDiagram& d);

std::string front_svg(const LegendrianFront& f);

}  // namespace khoverant
