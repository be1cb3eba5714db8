#include "pgf/gen.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace pgf {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform: empty range");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

namespace {

Planarization triangulation(std::size_t n, SplitMix64& rng) {
    if (n < 3) throw std::invalid_argument("triangulation needs n >= 3, got " + std::to_string(n));
    Planarization p;
    for (int i = 0; i < 3; ++i) p.add_node();
    p.insert_edge(0, kNoDart, 1, kNoDart);
    p.insert_edge(1, 1, 2, kNoDart);
    p.insert_edge(2, 3, 0, 0);
    std::vector<Dart> faces{0, 1};  // one dart per face
    while (p.node_count() < n) {
        const std::size_t i = rng.uniform(faces.size());
        const Dart d0 = faces[i];
        const Dart d1 = p.face_next(d0);
        const Dart d2 = p.face_next(d1);
        p.stellate(d0);
        // Each old boundary dart now bounds its own new triangle.
        faces.push_back(d1);
        faces.push_back(d2);
    }
    return p;
}

std::uint64_t pair_key(Node a, Node b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
}

struct Crosser {
    Planarization& p;
    std::unordered_set<std::uint64_t> edges;  // pairs adjacent in G

    // Third vertex of the face of d if it is a triangle on real vertices.
    Node apex(Dart d) const {
        const Dart d1 = p.face_next(d);
        const Dart d2 = p.face_next(d1);
        if (p.face_next(d2) != d) return kNoPEdge;
        for (const Dart x : {d, d1, d2})
            if (p.is_crossing(p.origin(x))) return kNoPEdge;
        return p.origin(d2);
    }

    bool eligible(PEdge e) const {
        if (!p.edge_alive(e)) return false;
        const Node w1 = apex(2 * e), w2 = apex(2 * e + 1);
        return w1 != kNoPEdge && w2 != kNoPEdge && w1 != w2 && !edges.count(pair_key(w1, w2));
    }

    void cross(PEdge e) {
        const Node u = p.origin(2 * e), v = p.origin(2 * e + 1);
        const Node w1 = apex(2 * e), w2 = apex(2 * e + 1);
        const Node c = p.add_node(true);
        const PEdge uc = p.insert_edge(u, 2 * e, c, kNoDart);
        const PEdge cv = p.insert_edge(c, 2 * uc + 1, v, 2 * e + 1);
        p.remove_edge(e);
        // Faces are now u c v w1 and v c u w2.
        const Dart c_to_u = 2 * uc + 1, c_to_v = 2 * cv;
        const Dart w1_to_u = p.face_next(p.face_next(c_to_v));
        const Dart w2_to_v = p.face_next(p.face_next(c_to_u));
        p.insert_edge(c, c_to_v, w1, w1_to_u);
        p.insert_edge(c, c_to_u, w2, w2_to_v);
        edges.insert(pair_key(w1, w2));
    }
};

void drop_edges(Planarization& p, double fraction, SplitMix64& rng) {
    const OriginalGraph g = original_edges(p);
    std::vector<std::vector<std::pair<Node, OriginalEdgeId>>> adj(g.real_vertex_count);
    for (OriginalEdgeId e = 0; e < g.edges.size(); ++e) {
        adj[g.edges[e].u].emplace_back(g.edges[e].v, e);
        adj[g.edges[e].v].emplace_back(g.edges[e].u, e);
    }
    std::vector<bool> tree(g.edges.size(), false), seen(g.real_vertex_count, false);
    std::queue<Node> q;
    q.push(0);
    seen[0] = true;
    while (!q.empty()) {
        const Node a = q.front();
        q.pop();
        for (const auto& [b, e] : adj[a])
            if (!seen[b]) {
                seen[b] = true;
                tree[e] = true;
                q.push(b);
            }
    }
    std::vector<OriginalEdgeId> candidates;
    for (OriginalEdgeId e = 0; e < g.edges.size(); ++e)
        if (!tree[e] && g.edges[e].crossing < 0) candidates.push_back(e);
    const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(candidates.size())));
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.uniform(candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
        p.remove_edge(g.edges[candidates[i]].segments[0]);
    }
}

}  // namespace

Planarization gen_triangulation(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return triangulation(n, rng);
}

Planarization gen_one_planar(const GenConfig& cfg) {
    if (cfg.crossing_fraction < 0 || cfg.crossing_fraction > 1)
        throw std::invalid_argument("crossing fraction must lie in [0, 1]");
    if (cfg.drop_fraction < 0 || cfg.drop_fraction > 1) throw std::invalid_argument("drop fraction must lie in [0, 1]");
    SplitMix64 rng(cfg.seed);
    Planarization p = triangulation(cfg.n, rng);

    Crosser crosser{p, {}};
    for (PEdge e = 0; e < p.edge_capacity(); ++e) crosser.edges.insert(pair_key(p.origin(2 * e), p.origin(2 * e + 1)));
    std::vector<PEdge> candidates;
    for (PEdge e = 0; e < p.edge_capacity(); ++e)
        if (crosser.eligible(e)) candidates.push_back(e);
    const auto target =
        static_cast<std::size_t>(std::ceil(cfg.crossing_fraction * static_cast<double>(candidates.size())));
    std::size_t crossed = 0;
    while (crossed < target && !candidates.empty()) {
        const std::size_t i = rng.uniform(candidates.size());
        const PEdge e = candidates[i];
        candidates[i] = candidates.back();
        candidates.pop_back();
        if (!crosser.eligible(e)) continue;
        crosser.cross(e);
        ++crossed;
    }
    if (cfg.drop_fraction > 0) drop_edges(p, cfg.drop_fraction, rng);
    return p;
}

namespace {

std::vector<Fixture> make_fixtures() {
    std::vector<Fixture> out;
    out.push_back({"k5",
                   "# K5 drawn with one crossing: 2-3 crosses 0-4 at node 5\n"
                   "n 6\n"
                   "crossings 5\n"
                   "rot 0: 2 5 3 1\n"
                   "rot 1: 0 3 4 2\n"
                   "rot 2: 1 4 5 0\n"
                   "rot 3: 1 0 5 4\n"
                   "rot 4: 1 3 5 2\n"
                   "rot 5: 3 0 2 4\n",
                   false, "K5 with a single crossing"});
    out.push_back({"fig1b",
                   "# quadrangle <0,1,0,2> around crossing node 3; the diagonal through 0 is a loop\n"
                   "n 4\n"
                   "crossings 3\n"
                   "rot 0: 3.0 1.0 1.1 3.1 2.1 2.0\n"
                   "rot 1: 0.0 3 0.1\n"
                   "rot 2: 0.1 3 0.0\n"
                   "rot 3: 0.0 2 0.1 1\n",
                   true, "quadrangle whose facial cycle repeats the anchor"});
    out.push_back({"fig1e",
                   "# 4-cycle 0 1 2 3 with crossing nodes inside (4) and outside (5)\n"
                   "n 6\n"
                   "crossings 4 5\n"
                   "rot 0: 5 1 4 3\n"
                   "rot 1: 5 2 4 0\n"
                   "rot 2: 5 3 4 1\n"
                   "rot 3: 5 0 4 2\n"
                   "rot 4: 0 1 2 3\n"
                   "rot 5: 0 3 2 1\n",
                   true, "two quadrangles sharing both opposing pairs"});
    out.push_back({"bigon",
                   "# k5 with a second copy of edge 0-1\n"
                   "n 6\n"
                   "crossings 5\n"
                   "rot 0: 2 5 3 1 1.1\n"
                   "rot 1: 0.1 0 3 4 2\n"
                   "rot 2: 1 4 5 0\n"
                   "rot 3: 1 0 5 4\n"
                   "rot 4: 1 3 5 2\n"
                   "rot 5: 3 0 2 4\n",
                   true, "skeleton with a face of degree 2"});
    out.push_back({"kite_star",
                   "# two crossing edges and nothing else\n"
                   "n 5\n"
                   "crossings 4\n"
                   "rot 0: 4\n"
                   "rot 1: 4\n"
                   "rot 2: 4\n"
                   "rot 3: 4\n"
                   "rot 4: 0 1 2 3\n",
                   false, "crossing without any kite edge"});
    out.push_back({"kite_full",
                   "n 5\n"
                   "crossings 4\n"
                   "rot 0: 1 4 3\n"
                   "rot 1: 2 4 0\n"
                   "rot 2: 3 4 1\n"
                   "rot 3: 0 4 2\n"
                   "rot 4: 0 1 2 3\n",
                   false, "crossing with all four kite edges"});
    return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = make_fixtures();
    return all;
}

const Fixture& fixture(const std::string& name) {
    for (const Fixture& f : fixtures())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

Planarization load_fixture(const std::string& name) {
    const Fixture& f = fixture(name);
    DrawingRules rules;
    rules.allow_multigraph = f.multigraph;
    return parse_drawing(f.text, rules);
}

}  // namespace pgf
