#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgf {

/// Vertex handle of a Multigraph. Identifiers are never reused, so a
/// handle to a contracted-away vertex stays detectably dead.
struct VertexId {
    std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

    constexpr auto operator<=>(const VertexId&) const = default;
    constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
};

struct EdgeId {
    std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

    constexpr auto operator<=>(const EdgeId&) const = default;
    constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
};

inline constexpr VertexId kNoVertex{};

/// Raised on use of a dead vertex/edge handle or a malformed request.
class GraphError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class Label : std::uint8_t { none, quad, quad0, quad1, quad2, quad3 };

constexpr bool is_corner_label(Label l) {
    return l == Label::quad0 || l == Label::quad1 || l == Label::quad2 || l == Label::quad3;
}
constexpr Label corner_label(int i) { return static_cast<Label>(static_cast<int>(Label::quad0) + i); }
constexpr int corner_index(Label l) { return static_cast<int>(l) - static_cast<int>(Label::quad0); }

std::string to_string(Label l);

struct VertexMeta {
    std::int32_t opposing = 0;
    bool adj = false;
    bool in_worklist = false;
    Label label = Label::none;

    /// adj/in_worklist/opposing all at their initial values; the label is not scratch state.
    bool clean() const { return !adj && !in_worklist && opposing == 0; }
};

struct Incidence {
    EdgeId edge;
    VertexId other;
};

/// Dynamic multigraph backed by incidence lists.
///
/// All lists live in one pool; a list that outgrows its slot moves to the
/// end of the pool with doubled capacity. Contraction re-attaches the incidence list of the lower-degree endpoint
/// to the higher-degree one, so any sequence of contractions over m edges
/// costs O(m log m) in total. Parallel copies of a contracted edge become
/// loops on the merged vertex and are kept. Vertex metadata is not merged:
/// the survivor keeps its own and the absorbed vertex's is dropped.
class Multigraph {
    struct Slot {
        std::uint32_t entry;  // edge << 1 | side
        VertexId other;
    };

public:
    class NeighborIterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = Incidence;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = Incidence;

        NeighborIterator() = default;
        explicit NeighborIterator(const Slot* p) : p_(p) {}

        Incidence operator*() const { return {EdgeId{p_->entry >> 1}, p_->other}; }
        NeighborIterator& operator++() {
            ++p_;
            return *this;
        }
        NeighborIterator operator++(int) {
            auto tmp = *this;
            ++p_;
            return tmp;
        }
        bool operator==(const NeighborIterator& o) const { return p_ == o.p_; }

    private:
        const Slot* p_ = nullptr;
    };

    class NeighborRange {
    public:
        NeighborRange(NeighborIterator b, NeighborIterator e, std::size_t n) : b_(b), e_(e), n_(n) {}
        NeighborIterator begin() const { return b_; }
        NeighborIterator end() const { return e_; }
        std::size_t size() const { return n_; }

    private:
        NeighborIterator b_, e_;
        std::size_t n_;
    };

    struct Counters {
        std::uint64_t contractions = 0;
        std::uint64_t loop_deletions = 0;
        /// Incidence entries moved between lists; each contraction adds the
        /// degree of the absorbed endpoint.
        std::uint64_t reattach_work = 0;
    };

    Multigraph() = default;

    void reserve(std::size_t vertices, std::size_t edges);

    VertexId add_vertex();
    /// Capacity hint for x's incidence list.
    void reserve_degree(VertexId x, std::size_t degree);
    EdgeId add_edge(VertexId u, VertexId v);

    /// Iterates (edge, other endpoint) over every incidence of x; a loop is
    /// reported twice. The range is invalidated by any structural change.
    NeighborRange neighbors(VertexId x) const;

    /// Merges the endpoints of e and returns the surviving vertex (the
    /// higher-degree endpoint, ties to the first endpoint). Contracting a
    /// loop deletes it and returns its endpoint.
    VertexId contract(EdgeId e);

    std::size_t degree(VertexId x) const;
    const VertexMeta& meta(VertexId x) const;

    void set_adj(VertexId x, bool value);
    void set_in_worklist(VertexId x, bool value);
    void set_opposing(VertexId x, std::int32_t value);
    void set_label(VertexId x, Label value);
    void set_meta(VertexId x, const VertexMeta& value);

    bool alive(VertexId x) const { return x.value < vertices_.size() && vertices_[x.value].alive; }
    bool alive(EdgeId e) const { return e.value < edges_.size() && edges_[e.value].alive; }
    std::pair<VertexId, VertexId> endpoints(EdgeId e) const;

    /// Linear scan of the shorter incidence list.
    bool adjacent(VertexId a, VertexId b) const;

    std::size_t vertex_count() const { return live_vertices_; }
    std::size_t edge_count() const { return live_edges_; }
    /// One past the largest identifier ever issued.
    std::size_t vertex_capacity() const { return vertices_.size(); }
    std::size_t edge_capacity() const { return edges_.size(); }

    const Counters& counters() const { return counters_; }

    /// Number of live vertices whose adj/in_worklist/opposing are not all
    /// at their initial values. Maintained incrementally.
    std::size_t dirty_vertex_count() const { return dirty_; }

    /// Full O(V) scan for vertices with dirty metadata; returns their ids.
    std::vector<VertexId> dirty_vertices_sweep() const;

private:
    struct EdgeRec {
        VertexId ends[2];
        std::uint32_t pos[2] = {0, 0};
        bool alive = true;
    };

    struct VertexRec {
        VertexMeta meta;
        std::uint32_t offset = 0;  // into pool_
        std::uint32_t size = 0;
        std::uint32_t capacity = 0;
        bool alive = true;
    };

    void require(VertexId x) const;
    void grow(VertexRec& r, std::size_t capacity);
    void push_entry(VertexId x, std::uint32_t entry, VertexId other);
    void require(EdgeId e) const;
    void unlink_entry(VertexId x, std::uint32_t pos);
    void update_meta(VertexId x, const VertexMeta& next);

    std::vector<VertexRec> vertices_;
    std::vector<Slot> pool_;
    std::vector<EdgeRec> edges_;
    std::size_t live_vertices_ = 0;
    std::size_t live_edges_ = 0;
    std::size_t dirty_ = 0;
    Counters counters_;
};

}  // namespace pgf
