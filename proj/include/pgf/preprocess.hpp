#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgf/drawing.hpp"
#include "pgf/multigraph.hpp"

namespace pgf {

/// A preprocessing or engine invariant failed. Signals invalid input that
/// slipped past validation, or a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Adds, for every crossing with clockwise endpoints <z0,z1,z2,z3>, the
/// boundary edge z_i z_{i+1} inside the face of each corner that lacks it,
/// so every face at a crossing node becomes a triangle. Added edges are
/// flagged as augmentation edges. `added` receives their number.
Planarization kite_augment(const Planarization& p, std::size_t* added = nullptr);

/// A crossing seen as a quadrangle face of the skeleton.
struct QuadFace {
    Node crossing = 0;
    std::array<Node, 4> corners{};  // clockwise around the crossing node
    /// diagonals[0] is the original edge joining corners 0 and 2,
    /// diagonals[1] the one joining corners 1 and 3.
    std::array<OriginalEdgeId, 2> diagonals{};
};

struct Skeleton {
    /// Kite-augmented, triangulated drawing; crossing nodes are still present
    /// and stand for the quadrangle faces.
    Planarization embedding;
    OriginalGraph original;
    /// Every edge between real vertices, augmentation edges included.
    std::vector<std::pair<Node, Node>> edges;
    std::vector<QuadFace> quads;
    std::size_t triangulation_chords = 0;
    std::size_t face_count = 0;  // of `embedding`
};

/// Splits every face of degree >= 4 that is not a crossing quadrangle into
/// triangles, joining corners two apart whose vertices differ. Each face is
/// cut starting from the smallest rotation of its vertex sequence, compared
/// by `rank` (node id when null), so renumbered copies of one drawing get
/// the same chords.
Skeleton triangulate(Planarization augmented, const std::vector<Node>* rank = nullptr);

struct QuadGadget {
    VertexId quad;
    std::array<VertexId, 4> corners;  // labelled quad0..quad3
    std::array<OriginalEdgeId, 2> diagonals{};
};

/// The skeleton with a diamond gadget in every quadrangle: the crossing node
/// becomes a `quad` vertex joined to the four corners of its face, and each
/// of the four triangles around it is stellated by a `quad_i` vertex.
struct HDiamond {
    Multigraph graph;
    std::vector<QuadGadget> gadgets;  // in crossing-node order
    std::vector<std::int32_t> gadget_of;  // indexed by initial vertex id, -1 if not a quad vertex

    const QuadGadget& gadget(VertexId f) const;
};

/// Corner i of quadrangle k gets id node_count + 4k + i. Throws
/// InvariantViolation unless the skeleton drawing is connected, satisfies
/// Euler's formula and has triangles on both sides of every crossing segment.
HDiamond build_gadgets(const Skeleton& s);

/// The skeleton drawing with every gadget drawn in; node ids match h.graph.
Planarization gadget_embedding(const Skeleton& s);

/// kite_augment + triangulate + build_gadgets.
struct Preprocessed {
    Skeleton skeleton;
    HDiamond diamond;
    std::size_t kite_edges_added = 0;
};
Preprocessed preprocess(const Planarization& p, const std::vector<Node>* rank = nullptr);

/// Clockwise boundary <z0..z3> of a quadrangle face, anchored at the corner
/// between the quad0 and quad1 gadget vertices.
using FacialCycle = std::array<VertexId, 4>;

/// Recovers the facial cycle of quad vertex f from its four gadget corners
/// in O(1). Works after arbitrary contractions elsewhere in the graph.
FacialCycle facial_cycle(const Multigraph& g, VertexId f);

/// Rotates `z` so that x comes first (first occurrence); nullopt if absent.
std::optional<FacialCycle> anchor_at(const FacialCycle& z, VertexId x);

/// `.1pl` dump of the gadget graph of `s` with `label` lines.
std::string dump_hdiamond(const Skeleton& s, const HDiamond& h);

}  // namespace pgf
