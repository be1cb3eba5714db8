#include "pgf/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pgf {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    auto line = [&out](const char* name, bool ok) { out << "check " << name << ": " << (ok ? "pass" : "FAIL") << '\n'; };
    line("one_chord_per_crossing", one_chord_per_crossing);
    line("forest_acyclic", forest_acyclic);
    line("no_adjacent_path", no_adjacent_path);
    line("planar_part_planar", planar_part_planar);
    line("edge_bound_ok", edge_bound_ok);
    for (const auto& f : failures) out << "failure: " << f << '\n';
    return out.str();
}

namespace {

std::string edge_text(const OriginalEdge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

// Vertices of a u-v path in the forest built from `edges`, or empty.
std::vector<Node> forest_path(std::size_t n, const std::vector<std::pair<Node, Node>>& edges, Node u, Node v) {
    std::vector<std::vector<Node>> adj(n);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<Node> parent(n, kNoPEdge);
    std::queue<Node> q;
    parent[u] = u;
    q.push(u);
    while (!q.empty()) {
        const Node a = q.front();
        q.pop();
        if (a == v) break;
        for (const Node b : adj[a])
            if (parent[b] == kNoPEdge) {
                parent[b] = a;
                q.push(b);
            }
    }
    if (parent[v] == kNoPEdge) return {};
    std::vector<Node> path{v};
    while (path.back() != u) path.push_back(parent[path.back()]);
    return path;
}

}  // namespace

VerificationReport verify_partition(const Planarization& p, const PGFPartition& part) {
    const OriginalGraph og = original_edges(p);
    const std::size_t m = og.edges.size();
    std::vector<std::uint8_t> side(m, 0);  // 1 forest, 2 planar
    auto mark = [&](const std::vector<OriginalEdgeId>& ids, std::uint8_t s) {
        for (const OriginalEdgeId e : ids) {
            if (e >= m) throw std::invalid_argument("unknown edge id " + std::to_string(e));
            if (side[e] != 0) throw std::invalid_argument("edge " + edge_text(og.edges[e]) + " listed twice");
            side[e] = s;
        }
    };
    mark(part.forest, 1);
    mark(part.planar, 2);
    for (std::size_t e = 0; e < m; ++e)
        if (side[e] == 0) throw std::invalid_argument("edge " + edge_text(og.edges[e]) + " missing from partition");

    VerificationReport r;

    // (a)
    r.one_chord_per_crossing = true;
    for (const CrossingPair& cp : og.crossings) {
        const int chosen = (side[cp.edges[0]] == 1) + (side[cp.edges[1]] == 1);
        if (chosen != 1) {
            r.one_chord_per_crossing = false;
            r.failures.push_back("crossing at node " + std::to_string(cp.node) + " has " + std::to_string(chosen) +
                                 " forest edges");
            break;
        }
    }
    for (std::size_t e = 0; e < m && r.one_chord_per_crossing; ++e) {
        if (side[e] == 1 && og.edges[e].crossing < 0) {
            r.one_chord_per_crossing = false;
            r.failures.push_back("uncrossed edge " + edge_text(og.edges[e]) + " is in the forest");
        }
    }

    // (b)
    const std::size_t n = p.node_count();
    DisjointSets forest(n);
    std::vector<std::pair<Node, Node>> kept;
    r.forest_acyclic = true;
    for (const OriginalEdgeId id : part.forest) {
        const OriginalEdge& e = og.edges[id];
        if (!forest.unite(e.u, e.v) && r.forest_acyclic) {
            r.forest_acyclic = false;
            std::string cycle;
            for (const Node v : forest_path(n, kept, e.u, e.v)) cycle += std::to_string(v) + " ";
            if (e.u == e.v) cycle = std::to_string(e.u) + " ";
            r.failures.push_back("forest cycle through " + cycle + "closed by " + edge_text(e));
        }
        kept.emplace_back(e.u, e.v);
    }

    // (c)
    r.no_adjacent_path = true;
    const Skeleton skeleton = triangulate(kite_augment(p));
    for (const auto& [a, b] : skeleton.edges) {
        if (forest.find(a) == forest.find(b)) {
            r.no_adjacent_path = false;
            r.failures.push_back("forest joins the endpoints of skeleton edge " + std::to_string(a) + "-" +
                                 std::to_string(b));
            break;
        }
    }

    // (d)
    Planarization rest = p;
    for (const OriginalEdgeId id : part.forest)
        for (const PEdge s : og.edges[id].segments)
            if (s != kNoPEdge && rest.edge_alive(s)) rest.remove_edge(s);
    r.planar_part_planar = true;
    for (const CrossingPair& cp : og.crossings) {
        const Node c = cp.node;
        if (rest.degree(c) == 4) {
            r.planar_part_planar = false;
            r.failures.push_back("both edges through crossing node " + std::to_string(c) + " remain");
            break;
        }
        if (rest.degree(c) != 2) continue;
        const auto rot = rest.rotation(c);
        const Dart a = Planarization::twin(rot[0]), b = Planarization::twin(rot[1]);
        // A loop through the crossing never obstructs planarity; drop it.
        if (rest.origin(a) != rest.origin(b)) rest.insert_edge(rest.origin(a), a, rest.origin(b), b);
        rest.remove_edge(Planarization::edge_of(a));
        rest.remove_edge(Planarization::edge_of(b));
    }
    if (r.planar_part_planar && !is_spherical(rest)) {
        r.planar_part_planar = false;
        r.failures.push_back("drawing of the planar part fails the Euler check");
    }

    // (e)
    // The bound only holds for simple graphs; synthetic multigraph fixtures are exempt.
    bool simple = true;
    for (std::size_t e = 0; e < m && simple; ++e) {
        const OriginalEdge& a = og.edges[e];
        simple = a.u != a.v && (e == 0 || a.u != og.edges[e - 1].u || a.v != og.edges[e - 1].v);
    }
    const std::size_t nv = og.real_vertex_count;
    r.edge_bound_ok = !simple || within_edge_bound(nv, m);
    if (!r.edge_bound_ok)
        r.failures.push_back(std::to_string(m) + " edges exceed 4n-8 for n=" + std::to_string(nv));
    return r;
}

PGFPartition partition_from_pairs(const OriginalGraph& g, const std::vector<std::pair<Node, Node>>& forest,
                                  const std::vector<std::pair<Node, Node>>& planar) {
    std::map<std::pair<Node, Node>, std::vector<OriginalEdgeId>> by_pair;
    for (OriginalEdgeId e = 0; e < g.edges.size(); ++e) by_pair[{g.edges[e].u, g.edges[e].v}].push_back(e);
    for (auto& [key, ids] : by_pair) std::reverse(ids.begin(), ids.end());

    auto take = [&by_pair](std::pair<Node, Node> uv) {
        if (uv.first > uv.second) std::swap(uv.first, uv.second);
        auto it = by_pair.find(uv);
        if (it == by_pair.end() || it->second.empty())
            throw std::invalid_argument("no edge " + std::to_string(uv.first) + "-" + std::to_string(uv.second) +
                                        " in the drawing");
        const OriginalEdgeId e = it->second.back();
        it->second.pop_back();
        return e;
    };
    PGFPartition part;
    for (const auto& uv : forest) part.forest.push_back(take(uv));
    for (const auto& uv : planar) part.planar.push_back(take(uv));
    std::sort(part.forest.begin(), part.forest.end());
    std::sort(part.planar.begin(), part.planar.end());
    return part;
}

std::vector<std::vector<OriginalEdgeId>> oracle_chord_sets(const Skeleton& s) {
    const std::size_t q = s.quads.size();
    if (q > kOracleMaxQuads)
        throw std::length_error("oracle refuses " + std::to_string(q) + " quadrangles (limit " +
                                std::to_string(kOracleMaxQuads) + ")");

    // Only vertices touched by some diagonal can be joined by chords.
    std::unordered_map<Node, std::size_t> index;
    auto slot = [&index](Node v) { return index.emplace(v, index.size()).first->second; };
    std::vector<std::array<std::pair<std::size_t, std::size_t>, 2>> diag(q);
    for (std::size_t i = 0; i < q; ++i)
        for (int k = 0; k < 2; ++k) {
            const OriginalEdge& e = s.original.edges[s.quads[i].diagonals[k]];
            diag[i][k] = {slot(e.u), slot(e.v)};
        }
    std::vector<std::pair<std::size_t, std::size_t>> watched;
    for (const auto& [a, b] : s.edges) {
        const auto ia = index.find(a), ib = index.find(b);
        if (ia != index.end() && ib != index.end()) watched.emplace_back(ia->second, ib->second);
    }

    std::vector<std::vector<OriginalEdgeId>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
        DisjointSets ds(index.size());
        bool ok = true;
        for (std::size_t i = 0; i < q && ok; ++i) {
            const auto& [a, b] = diag[i][(mask >> i) & 1u];
            ok = ds.unite(a, b);
        }
        for (std::size_t k = 0; k < watched.size() && ok; ++k)
            ok = ds.find(watched[k].first) != ds.find(watched[k].second);
        if (!ok) continue;
        std::vector<OriginalEdgeId> chords(q);
        for (std::size_t i = 0; i < q; ++i) chords[i] = s.quads[i].diagonals[(mask >> i) & 1u];
        std::sort(chords.begin(), chords.end());
        out.push_back(std::move(chords));
    }
    return out;
}

}  // namespace pgf
