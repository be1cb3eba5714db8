#include "pgf/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace pgf {

std::string to_string(Label l) {
    switch (l) {
        case Label::none: return "none";
        case Label::quad: return "quad";
        case Label::quad0: return "quad0";
        case Label::quad1: return "quad1";
        case Label::quad2: return "quad2";
        case Label::quad3: return "quad3";
    }
    return "?";
}

void Multigraph::reserve(std::size_t vertices, std::size_t edges) {
    vertices_.reserve(vertices);
    pool_.reserve(2 * edges);
    edges_.reserve(edges);
}

void Multigraph::require(VertexId x) const {
    if (!alive(x)) throw GraphError("dead or unknown vertex " + std::to_string(x.value));
}

void Multigraph::require(EdgeId e) const {
    if (!alive(e)) throw GraphError("dead or unknown edge " + std::to_string(e.value));
}

VertexId Multigraph::add_vertex() {
    const VertexId id{static_cast<std::uint32_t>(vertices_.size())};
    vertices_.emplace_back();
    vertices_.back().offset = static_cast<std::uint32_t>(pool_.size());
    ++live_vertices_;
    return id;
}

void Multigraph::grow(VertexRec& r, std::size_t capacity) {
    const std::size_t offset = pool_.size();
    if (offset + capacity > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("Multigraph: incidence pool exhausted");
    if (r.offset + r.capacity == offset) {
        // Slot at the end of the pool: extend in place.
        pool_.resize(r.offset + capacity);
    } else {
        pool_.resize(offset + capacity);
        std::copy_n(pool_.begin() + r.offset, r.size, pool_.begin() + static_cast<std::ptrdiff_t>(offset));
        r.offset = static_cast<std::uint32_t>(offset);
    }
    r.capacity = static_cast<std::uint32_t>(capacity);
}

void Multigraph::reserve_degree(VertexId x, std::size_t degree) {
    require(x);
    VertexRec& r = vertices_[x.value];
    if (r.capacity < degree) grow(r, degree);
}

void Multigraph::push_entry(VertexId x, std::uint32_t entry, VertexId other) {
    VertexRec& r = vertices_[x.value];
    if (r.size == r.capacity) grow(r, std::max<std::size_t>(4, 2 * std::size_t{r.capacity}));
    const std::uint32_t pos = r.size++;
    pool_[r.offset + pos] = {entry, other};
    edges_[entry >> 1].pos[entry & 1u] = pos;
}

EdgeId Multigraph::add_edge(VertexId u, VertexId v) {
    require(u);
    require(v);
    const std::uint32_t id = static_cast<std::uint32_t>(edges_.size());
    EdgeRec rec;
    rec.ends[0] = u;
    rec.ends[1] = v;
    edges_.push_back(rec);
    push_entry(u, id << 1, v);
    push_entry(v, (id << 1) | 1u, u);
    ++live_edges_;
    return EdgeId{id};
}

Multigraph::NeighborRange Multigraph::neighbors(VertexId x) const {
    require(x);
    const VertexRec& r = vertices_[x.value];
    const Slot* data = pool_.data() + r.offset;
    return {NeighborIterator(data), NeighborIterator(data + r.size), r.size};
}

std::size_t Multigraph::degree(VertexId x) const {
    require(x);
    return vertices_[x.value].size;
}

std::pair<VertexId, VertexId> Multigraph::endpoints(EdgeId e) const {
    require(e);
    return {edges_[e.value].ends[0], edges_[e.value].ends[1]};
}

bool Multigraph::adjacent(VertexId a, VertexId b) const {
    require(a);
    require(b);
    if (vertices_[a.value].size > vertices_[b.value].size) std::swap(a, b);
    for (const Incidence inc : neighbors(a))
        if (inc.other == b) return true;
    return false;
}

// Swap-remove the entry at `pos` of x's list, fixing the moved entry's back-pointer.
void Multigraph::unlink_entry(VertexId x, std::uint32_t pos) {
    VertexRec& r = vertices_[x.value];
    Slot* list = pool_.data() + r.offset;
    const Slot last = list[--r.size];
    list[pos] = last;
    edges_[last.entry >> 1].pos[last.entry & 1u] = pos;
}

VertexId Multigraph::contract(EdgeId e) {
    require(e);
    EdgeRec& rec = edges_[e.value];
    VertexId a = rec.ends[0];
    VertexId b = rec.ends[1];

    if (a == b) {
        // Remove the higher position first so the other stays valid.
        const std::uint32_t p0 = rec.pos[0], p1 = rec.pos[1];
        unlink_entry(a, std::max(p0, p1));
        unlink_entry(a, std::min(p0, p1));
        rec.alive = false;
        --live_edges_;
        ++counters_.loop_deletions;
        return a;
    }

    const bool keep_a = vertices_[a.value].size >= vertices_[b.value].size;
    const VertexId survivor = keep_a ? a : b;
    const VertexId absorbed = keep_a ? b : a;
    const std::uint32_t survivor_side = keep_a ? 0u : 1u;

    unlink_entry(survivor, rec.pos[survivor_side]);
    rec.alive = false;
    --live_edges_;

    VertexRec& gone = vertices_[absorbed.value];
    const std::uint32_t from = gone.offset, count = gone.size;
    counters_.reattach_work += count;
    VertexRec& target = vertices_[survivor.value];
    if (target.size + count > target.capacity)
        grow(target, std::max<std::size_t>(target.size + count, 2 * std::size_t{target.capacity}));
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t entry = pool_[from + i].entry;
        const std::uint32_t edge = entry >> 1;
        if (edge == e.value) continue;
        const std::uint32_t side = entry & 1u;
        EdgeRec& moved = edges_[edge];
        moved.ends[side] = survivor;
        const VertexId other = moved.ends[side ^ 1u];
        push_entry(survivor, entry, other);
        // The twin slot names this endpoint; a loop's twin may still be
        // waiting in the absorbed list and gets fixed when it moves.
        pool_[vertices_[other.value].offset + moved.pos[side ^ 1u]].other = survivor;
    }

    VertexRec& dead = vertices_[absorbed.value];
    if (!dead.meta.clean()) --dirty_;
    dead.meta = {};
    dead.size = 0;
    dead.alive = false;
    --live_vertices_;
    ++counters_.contractions;
    return survivor;
}

const VertexMeta& Multigraph::meta(VertexId x) const {
    require(x);
    return vertices_[x.value].meta;
}

void Multigraph::update_meta(VertexId x, const VertexMeta& next) {
    require(x);
    if (next.opposing < 0)
        throw GraphError("opposing counter of vertex " + std::to_string(x.value) + " would become negative");
    VertexMeta& cur = vertices_[x.value].meta;
    const bool was_clean = cur.clean();
    cur = next;
    if (was_clean && !cur.clean()) ++dirty_;
    if (!was_clean && cur.clean()) --dirty_;
}

void Multigraph::set_adj(VertexId x, bool value) {
    VertexMeta m = meta(x);
    m.adj = value;
    update_meta(x, m);
}

void Multigraph::set_in_worklist(VertexId x, bool value) {
    VertexMeta m = meta(x);
    m.in_worklist = value;
    update_meta(x, m);
}

void Multigraph::set_opposing(VertexId x, std::int32_t value) {
    VertexMeta m = meta(x);
    m.opposing = value;
    update_meta(x, m);
}

void Multigraph::set_label(VertexId x, Label value) {
    VertexMeta m = meta(x);
    m.label = value;
    update_meta(x, m);
}

void Multigraph::set_meta(VertexId x, const VertexMeta& value) { update_meta(x, value); }

std::vector<VertexId> Multigraph::dirty_vertices_sweep() const {
    std::vector<VertexId> out;
    for (std::uint32_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].alive && !vertices_[i].meta.clean()) out.push_back(VertexId{i});
    return out;
}

}  // namespace pgf
