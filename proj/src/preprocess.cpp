#include "pgf/preprocess.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace pgf {

Planarization kite_augment(const Planarization& p, std::size_t* added) {
    Planarization out = p;
    std::size_t count = 0;
    for (Node c = 0; c < out.node_count(); ++c) {
        if (!out.is_crossing(c)) continue;
        if (out.degree(c) != 4) throw InvariantViolation("kite_augment: crossing vertex without degree 4");
        const auto rot = out.rotation4(c);
        for (int i = 0; i < 4; ++i) {
            // The angle between rot[i] and rot[i+1] lies in the face of rot[i+1]:
            // c -> z_{i+1} -> ... -> z_i -> c.
            const Dart to_next = rot[(i + 1) % 4];
            const Dart n1 = out.face_next(to_next);
            const Dart n2 = out.face_next(n1);
            if (out.face_next(n2) == to_next) continue;
            const Node zi = out.head(rot[i]);
            const Node zn = out.head(to_next);
            if (zi == zn) throw InvariantViolation("kite_augment: kite edge would be a loop at " + std::to_string(zi));
            out.insert_edge(zi, Planarization::twin(rot[i]), zn, n1, true);
            ++count;
        }
    }
    if (added) *added = count;
    return out;
}

namespace {

// Index of the lexicographically smallest rotation of the face's vertex
// ranks, so every numbering of one drawing cuts the face the same way.
std::size_t canonical_start(const Planarization& emb, const FaceWalk& face, const std::vector<Node>* rank) {
    const std::size_t k = face.degree();
    auto r = [&](std::size_t i) {
        const Node v = emb.origin(face.darts[i % k]);
        return rank ? (*rank)[v] : v;
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < k; ++i) {
        if (r(i) > r(best)) continue;
        if (r(i) < r(best)) {
            best = i;
            continue;
        }
        for (std::size_t j = 1; j < k; ++j) {
            if (r(i + j) == r(best + j)) continue;
            if (r(i + j) < r(best + j)) best = i;
            break;
        }
    }
    return best;
}

}  // namespace

Skeleton triangulate(Planarization augmented, const std::vector<Node>* rank) {
    Skeleton s;
    s.embedding = std::move(augmented);
    Planarization& emb = s.embedding;
    s.original = original_edges(emb);

    for (const FaceWalk& face : faces(emb, 4, &s.face_count)) {
        for (const Dart d : face.darts)
            if (emb.is_crossing(emb.origin(d)))
                throw InvariantViolation("triangulate: face of degree " + std::to_string(face.degree()) +
                                         " touches crossing vertex " + std::to_string(emb.origin(d)) +
                                         " (drawing is not kite-augmented)");

        // Ear-cut from the front of the walk; rotate past corners whose
        // distance-2 partner is the same vertex.
        std::deque<Dart> walk(face.darts.begin(), face.darts.end());
        std::rotate(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(canonical_start(emb, face, rank)),
                    walk.end());
        std::size_t stalled = 0;
        while (walk.size() > 3) {
            const Node a = emb.origin(walk[0]);
            const Node b = emb.origin(walk[2]);
            if (a == b) {
                walk.push_back(walk.front());
                walk.pop_front();
                if (++stalled > walk.size())
                    throw InvariantViolation("triangulate: face of degree " + std::to_string(walk.size()) +
                                             " has no two corners at distance 2 with distinct vertices");
                continue;
            }
            stalled = 0;
            const PEdge e = emb.insert_edge(a, walk[0], b, walk[2], true);
            ++s.triangulation_chords;
            ++s.face_count;
            walk.pop_front();
            walk.pop_front();
            walk.push_front(2 * e);
        }
    }

    s.edges.reserve(emb.edge_count());
    for (PEdge e = 0; e < emb.edge_capacity(); ++e) {
        if (!emb.edge_alive(e)) continue;
        const Node a = emb.origin(2 * e), b = emb.origin(2 * e + 1);
        if (emb.is_crossing(a) || emb.is_crossing(b)) continue;
        s.edges.emplace_back(a, b);
    }

    s.quads.reserve(s.original.crossings.size());
    for (const CrossingPair& cp : s.original.crossings) {
        QuadFace q;
        q.crossing = cp.node;
        const auto rot = emb.rotation4(cp.node);
        for (int i = 0; i < 4; ++i) {
            if (rot[i] != cp.darts[i]) throw InvariantViolation("triangulate: crossing rotation changed");
            q.corners[i] = emb.head(rot[i]);
        }
        q.diagonals = cp.edges;
        s.quads.push_back(q);
    }
    return s;
}

const QuadGadget& HDiamond::gadget(VertexId f) const {
    if (f.value >= gadget_of.size() || gadget_of[f.value] < 0)
        throw GraphError("vertex " + std::to_string(f.value) + " is not a quad vertex");
    return gadgets[static_cast<std::size_t>(gadget_of[f.value])];
}

namespace {

// Darts of the triangle on the far side of crossing segment rot[i]; its
// corners are the crossing node, z_i and z_{i-1}.
std::array<Dart, 3> corner_face(const Planarization& emb, Dart d) {
    const Dart d1 = emb.face_next(d), d2 = emb.face_next(d1);
    if (emb.face_next(d2) != d)
        throw InvariantViolation("build_gadgets: face beside crossing segment from " + std::to_string(emb.origin(d)) +
                                 " is not a triangle");
    return {d, d1, d2};
}

}  // namespace

HDiamond build_gadgets(const Skeleton& s) {
    const Planarization& emb = s.embedding;
    const std::size_t base = emb.node_count();
    const std::size_t q = s.quads.size();

    // Stellating triangles keeps V - E + F, so checking the skeleton suffices.
    const auto euler = static_cast<std::int64_t>(base) - static_cast<std::int64_t>(emb.edge_count()) +
                       static_cast<std::int64_t>(s.face_count);
    if (euler != 2 || component_count(emb) != 1)
        throw InvariantViolation("build_gadgets: skeleton drawing failed the Euler check");

    HDiamond h;
    h.gadget_of.assign(base + 4 * q, -1);
    h.gadgets.reserve(q);
    std::vector<std::uint32_t> degree(base + 4 * q, 3);
    for (Node v = 0; v < base; ++v) degree[v] = static_cast<std::uint32_t>(emb.degree(v));

    std::vector<std::array<Dart, 3>> triangles(4 * q);
    for (std::size_t k = 0; k < q; ++k) {
        const QuadFace& face = s.quads[k];
        if (emb.degree(face.crossing) != 4)
            throw InvariantViolation("build_gadgets: crossing node " + std::to_string(face.crossing) +
                                     " does not have degree 4");
        QuadGadget gadget;
        gadget.quad = VertexId{face.crossing};
        gadget.diagonals = face.diagonals;
        Dart d = emb.first_dart(face.crossing);
        for (int i = 0; i < 4; ++i, d = emb.rot_next(d)) {
            triangles[4 * k + i] = corner_face(emb, d);
            for (const Dart t : triangles[4 * k + i]) ++degree[emb.origin(t)];
            gadget.corners[i] = VertexId{static_cast<std::uint32_t>(base + 4 * k + i)};
        }
        h.gadget_of[face.crossing] = static_cast<std::int32_t>(k);
        h.gadgets.push_back(gadget);
    }

    Multigraph& g = h.graph;
    g.reserve(base + 4 * q, emb.edge_count() + 12 * q);
    for (const std::uint32_t d : degree) g.reserve_degree(g.add_vertex(), d);
    for (PEdge e = 0; e < emb.edge_capacity(); ++e)
        if (emb.edge_alive(e)) g.add_edge(VertexId{emb.origin(2 * e)}, VertexId{emb.origin(2 * e + 1)});
    for (std::size_t c = 0; c < 4 * q; ++c) {
        const VertexId corner{static_cast<std::uint32_t>(base + c)};
        for (const Dart t : triangles[c]) g.add_edge(corner, VertexId{emb.origin(t)});
    }
    for (const QuadGadget& gadget : h.gadgets) {
        g.set_label(gadget.quad, Label::quad);
        for (int i = 0; i < 4; ++i) g.set_label(gadget.corners[i], corner_label(i));
    }
    return h;
}

Planarization gadget_embedding(const Skeleton& s) {
    Planarization emb = s.embedding;
    for (const QuadFace& face : s.quads) {
        const auto rot = emb.rotation(face.crossing);
        for (const Dart d : rot) emb.stellate(d);
    }
    return emb;
}

Preprocessed preprocess(const Planarization& p, const std::vector<Node>* rank) {
    Preprocessed out;
    Planarization augmented = kite_augment(p, &out.kite_edges_added);
    out.skeleton = triangulate(std::move(augmented), rank);
    out.diamond = build_gadgets(out.skeleton);
    return out;
}

namespace {

struct SmallSet {
    std::array<VertexId, 3> items{};
    int size = 0;

    bool contains(VertexId v) const {
        for (int i = 0; i < size; ++i)
            if (items[i] == v) return true;
        return false;
    }
};

SmallSet corner_neighbors(const Multigraph& g, VertexId corner) {
    SmallSet s;
    if (g.degree(corner) != 3)
        throw InvariantViolation("facial_cycle: gadget corner " + std::to_string(corner.value) + " has degree " +
                                 std::to_string(g.degree(corner)));
    for (const Incidence inc : g.neighbors(corner)) {
        if (s.contains(inc.other))
            throw InvariantViolation("facial_cycle: gadget corner " + std::to_string(corner.value) +
                                     " has a repeated neighbour");
        s.items[s.size++] = inc.other;
    }
    return s;
}

SmallSet intersect(const SmallSet& a, const SmallSet& b) {
    SmallSet out;
    for (int i = 0; i < a.size; ++i)
        if (b.contains(a.items[i])) out.items[out.size++] = a.items[i];
    return out;
}

}  // namespace

FacialCycle facial_cycle(const Multigraph& g, VertexId f) {
    if (g.meta(f).label != Label::quad)
        throw GraphError("facial_cycle: vertex " + std::to_string(f.value) + " is not labelled quad");

    std::array<VertexId, 4> corner{};
    for (const Incidence inc : g.neighbors(f)) {
        const Label l = g.meta(inc.other).label;
        if (!is_corner_label(l)) continue;
        const int i = corner_index(l);
        if (corner[i].valid() && corner[i] != inc.other)
            throw InvariantViolation("facial_cycle: quad vertex " + std::to_string(f.value) + " has two quad" +
                                     std::to_string(i) + " neighbours");
        corner[i] = inc.other;
    }
    for (int i = 0; i < 4; ++i)
        if (!corner[i].valid())
            throw InvariantViolation("facial_cycle: quad vertex " + std::to_string(f.value) + " lacks its quad" +
                                     std::to_string(i) + " neighbour");

    std::array<SmallSet, 4> nb;
    for (int i = 0; i < 4; ++i) nb[i] = corner_neighbors(g, corner[i]);
    // Corner i touches z_{i-1}, z_i and f, so consecutive corners share z_i and f.
    std::array<SmallSet, 4> shared;
    for (int i = 0; i < 4; ++i) shared[i] = intersect(nb[i], nb[(i + 1) % 4]);

    FacialCycle z{};
    for (int i = 0; i < 4; ++i) {
        if (!shared[i].contains(f))
            throw InvariantViolation("facial_cycle: corner of quad vertex " + std::to_string(f.value) +
                                     " is not attached to it");
        if (shared[i].size == 2) z[i] = shared[i].items[0] == f ? shared[i].items[1] : shared[i].items[0];
    }
    // Size 3 means z_{i-1} = z_{i+1}; the opposite intersection then holds
    // that same vertex, so the set difference isolates z_i.
    for (int i = 0; i < 4; ++i) {
        if (shared[i].size == 2) continue;
        if (shared[i].size != 3)
            throw InvariantViolation("facial_cycle: corrupted gadget at quad vertex " + std::to_string(f.value));
        const SmallSet& opposite = shared[(i + 2) % 4];
        int found = 0;
        for (int k = 0; k < 3; ++k) {
            if (!opposite.contains(shared[i].items[k])) {
                z[i] = shared[i].items[k];
                ++found;
            }
        }
        if (found != 1)
            throw InvariantViolation("facial_cycle: ambiguous corner at quad vertex " + std::to_string(f.value));
    }
    return z;
}

std::optional<FacialCycle> anchor_at(const FacialCycle& z, VertexId x) {
    for (int i = 0; i < 4; ++i) {
        if (z[i] == x) return FacialCycle{z[i], z[(i + 1) % 4], z[(i + 2) % 4], z[(i + 3) % 4]};
    }
    return std::nullopt;
}

std::string dump_hdiamond(const Skeleton& s, const HDiamond& h) {
    // Quad vertices have degree 8 here, so they are written as ordinary vertices.
    const Planarization emb = gadget_embedding(s);
    std::vector<bool> crossing(emb.node_count(), false);
    std::vector<std::vector<std::pair<Node, std::uint32_t>>> rotations(emb.node_count());
    for (Node v = 0; v < emb.node_count(); ++v)
        for (const Dart d : emb.rotation(v))
            rotations[v].emplace_back(emb.head(d), emb.tag(Planarization::edge_of(d)));
    std::vector<std::string> labels(emb.node_count());
    for (const QuadGadget& gadget : h.gadgets) {
        labels[gadget.quad.value] = to_string(Label::quad);
        for (int i = 0; i < 4; ++i) labels[gadget.corners[i].value] = to_string(corner_label(i));
    }
    return serialize(Planarization::from_rotations(emb.node_count(), crossing, rotations), labels);
}

}  // namespace pgf
