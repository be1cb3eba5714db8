#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pgf {

using Node = std::uint32_t;  // vertex of a planarization
using Dart = std::uint32_t;  // half-edge; dart 2e is at ends[0] of edge e, 2e+1 at ends[1]
using PEdge = std::uint32_t;  // planarization edge
using OriginalEdgeId = std::uint32_t;

inline constexpr Dart kNoDart = std::numeric_limits<Dart>::max();
inline constexpr PEdge kNoPEdge = std::numeric_limits<PEdge>::max();

/// Rejected drawing. `line`/`column` are 1-based, 0 when not tied to a position.
class DrawingError : public std::runtime_error {
public:
    DrawingError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// An embedded multigraph given by clockwise rotation systems, with crossing
/// nodes marked. Rotations are circular doubly linked lists of darts, so
/// edges can be inserted into a given angle in O(1).
class Planarization {
public:
    Node add_node(bool crossing = false);

    /// Inserts edge u–v. Its dart at u is placed immediately before `before_u`
    /// in u's clockwise rotation (`kNoDart` requires u to be isolated); the
    /// same holds at v. Passing the starting darts of two corners of one face
    /// splits that face in two. Returns the new edge; its dart at u is 2e.
    PEdge insert_edge(Node u, Dart before_u, Node v, Dart before_v, bool augmented = false);

    /// Inserts a new node inside the face of `face_dart`, joined to every
    /// corner of that face. Returns the new node.
    Node stellate(Dart face_dart);

    void remove_edge(PEdge e);

    /// Builds a planarization from per-node clockwise neighbour lists of
    /// (neighbour, multiplicity tag). Throws DrawingError naming the node on
    /// unmatched or duplicate half-edges. `origin_line` (optional, per node)
    /// is used for error positions.
    static Planarization from_rotations(std::size_t node_count, const std::vector<bool>& crossing,
                                        const std::vector<std::vector<std::pair<Node, std::uint32_t>>>& rotations,
                                        const std::vector<std::size_t>& origin_line = {});

    std::size_t node_count() const { return first_.size(); }
    std::size_t edge_capacity() const { return edge_alive_.size(); }
    std::size_t edge_count() const { return live_edges_; }
    std::size_t crossing_count() const;

    bool is_crossing(Node v) const { return crossing_[v]; }
    std::size_t degree(Node v) const { return degree_[v]; }
    Dart first_dart(Node v) const { return first_[v]; }

    static constexpr Dart twin(Dart d) { return d ^ 1u; }
    static constexpr PEdge edge_of(Dart d) { return d >> 1; }
    Node origin(Dart d) const { return origin_[d]; }
    Node head(Dart d) const { return origin_[d ^ 1u]; }
    Dart rot_next(Dart d) const { return next_[d]; }
    Dart rot_prev(Dart d) const { return prev_[d]; }
    /// Next dart along the same face: leave head(d) by the clockwise successor of twin(d).
    Dart face_next(Dart d) const { return next_[d ^ 1u]; }

    bool edge_alive(PEdge e) const { return edge_alive_[e]; }
    bool augmented(PEdge e) const { return augmented_[e]; }
    std::uint32_t tag(PEdge e) const { return tag_[e]; }

    /// Darts leaving v in clockwise order starting at first_dart(v).
    std::vector<Dart> rotation(Node v) const;
    /// rotation(v) for a node of degree 4, without allocating.
    std::array<Dart, 4> rotation4(Node v) const;

    /// Copy with node order[i] renamed i; `order` must be a permutation.
    /// Live edges are renumbered by first appearance when scanning the new
    /// nodes' rotations, dead ones are dropped. Rotations keep their first
    /// dart. `old_edge`, if given, receives the old id of every new edge.
    Planarization renumbered(const std::vector<Node>& order, std::vector<PEdge>* old_edge = nullptr) const;
    /// renumbered() with a breadth-first order that restarts at the smallest
    /// unvisited node; neighbours end up close together. The order is
    /// written to `order` if given.
    Planarization bfs_renumbered(std::vector<Node>* order = nullptr, std::vector<PEdge>* old_edge = nullptr) const;

private:
    PEdge new_edge(Node u, Node v, std::uint32_t tag, bool augmented);
    Planarization renumber(std::vector<Node>* order, bool bfs, std::vector<PEdge>* old_edge) const;
    void link_before(Dart d, Dart before, Node at);
    std::uint32_t next_tag(Node u, Node v) const;

    std::vector<bool> crossing_;
    std::vector<Dart> first_;
    std::vector<std::uint32_t> degree_;
    std::vector<Node> origin_;
    std::vector<Dart> next_, prev_;
    std::vector<bool> edge_alive_;
    std::vector<bool> augmented_;
    std::vector<std::uint32_t> tag_;
    std::size_t live_edges_ = 0;
};

/// Closed face boundary; corner i sits at origin(darts[i]).
struct FaceWalk {
    std::vector<Dart> darts;
    std::size_t degree() const { return darts.size(); }
};

/// Faces of degree at least `min_degree`. `total`, if given, receives the
/// number of all faces.
std::vector<FaceWalk> faces(const Planarization& p, std::size_t min_degree = 0, std::size_t* total = nullptr);
std::size_t face_count(const Planarization& p);

/// Number of connected components among nodes with at least one edge, plus
/// isolated non-crossing nodes.
std::size_t component_count(const Planarization& p);

/// True when every connected component satisfies V - E + F = 2.
bool is_spherical(const Planarization& p);

struct OriginalEdge {
    Node u = 0;  // u <= v
    Node v = 0;
    std::int32_t crossing = -1;  // index into OriginalGraph::crossings, -1 for a plain edge
    std::array<PEdge, 2> segments{kNoPEdge, kNoPEdge};
};

struct CrossingPair {
    Node node = 0;
    /// edges[0] joins the heads of rotation darts 0 and 2 of the crossing
    /// node (rotation anchored at first_dart), edges[1] those of darts 1 and 3.
    std::array<OriginalEdgeId, 2> edges{};
    std::array<Dart, 4> darts{};
};

/// The drawn graph G recovered from its planarization.
struct OriginalGraph {
    std::size_t real_vertex_count = 0;
    std::vector<OriginalEdge> edges;  // sorted by (u, v, first segment)
    std::vector<CrossingPair> crossings;  // in crossing-node order
};

/// Augmentation edges are skipped.
OriginalGraph original_edges(const Planarization& p);

struct DrawingRules {
    /// Accept drawings whose underlying graph has parallel edges or a loop
    /// through a crossing (synthetic fixtures). The planarization itself must
    /// stay loopless either way.
    bool allow_multigraph = false;
};

/// m <= 4n - 8 for n >= 3, the edge bound of simple 1-planar graphs.
constexpr bool within_edge_bound(std::size_t n, std::size_t m) { return n < 3 || m + 8 <= 4 * n; }

/// Throws DrawingError describing the first violated invariant.
void validate(const Planarization& p, const DrawingRules& rules = {});

Planarization parse_drawing(std::string_view text, const DrawingRules& rules = {});

/// Canonical text: rotations start at the smallest (neighbour, tag) token.
/// `labels`, when non-empty, adds `label <v> <name>` lines for non-empty names.
std::string serialize(const Planarization& p, const std::vector<std::string>& labels = {});

}  // namespace pgf
