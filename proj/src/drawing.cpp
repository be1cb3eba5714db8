#include "pgf/drawing.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

namespace pgf {

DrawingError::DrawingError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(line == 0 ? what
                                   : "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                         ": " + what),
      line_(line),
      column_(column) {}

// ── Planarization ───────────────────────────────────────────────────────

Node Planarization::add_node(bool crossing) {
    crossing_.push_back(crossing);
    first_.push_back(kNoDart);
    degree_.push_back(0);
    return static_cast<Node>(first_.size() - 1);
}

PEdge Planarization::new_edge(Node u, Node v, std::uint32_t tag, bool augmented) {
    const PEdge e = static_cast<PEdge>(edge_alive_.size());
    origin_.push_back(u);
    origin_.push_back(v);
    next_.push_back(kNoDart);
    next_.push_back(kNoDart);
    prev_.push_back(kNoDart);
    prev_.push_back(kNoDart);
    edge_alive_.push_back(true);
    augmented_.push_back(augmented);
    tag_.push_back(tag);
    ++live_edges_;
    return e;
}

void Planarization::link_before(Dart d, Dart before, Node at) {
    if (before == kNoDart) {
        if (first_[at] != kNoDart)
            throw std::invalid_argument("insert_edge: node " + std::to_string(at) + " is not isolated");
        next_[d] = prev_[d] = d;
        first_[at] = d;
    } else {
        if (origin_[before] != at || !edge_alive_[edge_of(before)])
            throw std::invalid_argument("insert_edge: dart does not leave node " + std::to_string(at));
        const Dart p = prev_[before];
        next_[p] = d;
        prev_[d] = p;
        next_[d] = before;
        prev_[before] = d;
    }
    ++degree_[at];
}

std::uint32_t Planarization::next_tag(Node u, Node v) const {
    const Node a = degree_[u] <= degree_[v] ? u : v;
    const Node b = a == u ? v : u;
    std::uint32_t tag = 0;
    const Dart start = first_[a];
    if (start == kNoDart) return 0;
    Dart d = start;
    do {
        if (head(d) == b) tag = std::max(tag, tag_[edge_of(d)] + 1);
        d = next_[d];
    } while (d != start);
    return tag;
}

PEdge Planarization::insert_edge(Node u, Dart before_u, Node v, Dart before_v, bool augmented) {
    if (u == v) throw std::invalid_argument("insert_edge: loops are not allowed");
    const PEdge e = new_edge(u, v, next_tag(u, v), augmented);
    link_before(2 * e, before_u, u);
    link_before(2 * e + 1, before_v, v);
    return e;
}

Node Planarization::stellate(Dart face_dart) {
    std::array<Dart, 8> small{};
    std::vector<Dart> large;
    std::size_t k = 0;
    Dart d = face_dart;
    do {
        if (k < small.size()) {
            small[k] = d;
        } else {
            if (large.empty()) large.assign(small.begin(), small.end());
            large.push_back(d);
        }
        ++k;
        d = face_next(d);
    } while (d != face_dart);
    const Dart* walk = large.empty() ? small.data() : large.data();

    const Node s = add_node(false);
    Dart prev_spoke = kNoDart;
    for (std::size_t i = 0; i < k; ++i) {
        // Spokes at s go in reverse walk order so every new face is a triangle.
        const PEdge e = insert_edge(s, prev_spoke, origin(walk[i]), walk[i]);
        prev_spoke = 2 * e;
    }
    return s;
}

void Planarization::remove_edge(PEdge e) {
    if (!edge_alive_[e]) throw std::invalid_argument("remove_edge: dead edge");
    for (const Dart d : {2 * e, 2 * e + 1}) {
        const Node at = origin_[d];
        if (next_[d] == d) {
            first_[at] = kNoDart;
        } else {
            next_[prev_[d]] = next_[d];
            prev_[next_[d]] = prev_[d];
            if (first_[at] == d) first_[at] = next_[d];
        }
        --degree_[at];
    }
    edge_alive_[e] = false;
    --live_edges_;
}

std::size_t Planarization::crossing_count() const {
    return static_cast<std::size_t>(std::count(crossing_.begin(), crossing_.end(), true));
}

std::vector<Dart> Planarization::rotation(Node v) const {
    std::vector<Dart> out;
    const Dart start = first_[v];
    if (start == kNoDart) return out;
    Dart d = start;
    do {
        out.push_back(d);
        d = next_[d];
    } while (d != start);
    return out;
}

std::array<Dart, 4> Planarization::rotation4(Node v) const {
    if (degree_[v] != 4)
        throw std::invalid_argument("rotation4: node " + std::to_string(v) + " has degree " +
                                    std::to_string(degree_[v]));
    const Dart d0 = first_[v], d1 = next_[d0], d2 = next_[d1];
    return {d0, d1, d2, next_[d2]};
}

Planarization Planarization::renumbered(const std::vector<Node>& order, std::vector<PEdge>* old_edge) const {
    const std::size_t n = node_count();
    if (order.size() != n) throw std::invalid_argument("renumbered: order has the wrong length");
    std::vector<bool> used(n, false);
    for (const Node v : order) {
        if (v >= n || used[v]) throw std::invalid_argument("renumbered: order is not a permutation");
        used[v] = true;
    }
    std::vector<Node> copy = order;
    return renumber(&copy, false, old_edge);
}

Planarization Planarization::bfs_renumbered(std::vector<Node>* order, std::vector<PEdge>* old_edge) const {
    std::vector<Node> local;
    return renumber(order ? order : &local, true, old_edge);
}

Planarization Planarization::renumber(std::vector<Node>* order, bool bfs, std::vector<PEdge>* old_edge) const {
    const std::size_t n = node_count();
    Planarization out;
    out.crossing_.resize(n);
    out.first_.assign(n, kNoDart);
    out.degree_.resize(n);
    out.origin_.resize(2 * live_edges_);
    out.next_.resize(2 * live_edges_);
    out.prev_.resize(2 * live_edges_);
    out.edge_alive_.assign(live_edges_, true);
    out.augmented_.resize(live_edges_);
    out.tag_.resize(live_edges_);
    out.live_edges_ = live_edges_;
    if (old_edge) old_edge->assign(live_edges_, kNoPEdge);

    std::vector<bool> seen;
    if (bfs) {
        order->clear();
        order->reserve(n);
        seen.assign(n, false);
    }
    Node restart = 0;  // smallest node that may still be unseen

    // fresh[e] = new id << 1 | side of e first seen; that side becomes end 0.
    std::vector<std::uint32_t> fresh(edge_capacity(), kNoPEdge);
    PEdge next_edge = 0;
    auto map = [&](Dart d) -> Dart {
        std::uint32_t& f = fresh[edge_of(d)];
        if (f == kNoPEdge) {
            const PEdge e = edge_of(d);
            f = (next_edge << 1) | (d & 1u);
            if (old_edge) (*old_edge)[next_edge] = e;
            out.augmented_[next_edge] = augmented_[e];
            out.tag_[next_edge] = tag_[e];
            ++next_edge;
        }
        return (f & ~1u) ^ ((d & 1u) ^ (f & 1u));
    };
    for (Node i = 0; i < n; ++i) {
        if (bfs && i == order->size()) {
            while (seen[restart]) ++restart;
            seen[restart] = true;
            order->push_back(restart);
        }
        const Node v = (*order)[i];
        out.crossing_[i] = crossing_[v];
        out.degree_[i] = degree_[v];
        const Dart start = first_[v];
        if (start == kNoDart) continue;
        const Dart first = map(start);
        out.first_[i] = first;
        Dart prev = first;
        Dart d = start;
        for (;;) {
            if (bfs) {
                const Node w = origin_[d ^ 1u];
                if (!seen[w]) {
                    seen[w] = true;
                    order->push_back(w);
                }
            }
            out.origin_[prev] = i;
            d = next_[d];
            if (d == start) break;
            const Dart nd = map(d);
            out.next_[prev] = nd;
            out.prev_[nd] = prev;
            prev = nd;
        }
        out.next_[prev] = first;
        out.prev_[first] = prev;
    }
    return out;
}

Planarization Planarization::from_rotations(
    std::size_t node_count, const std::vector<bool>& crossing,
    const std::vector<std::vector<std::pair<Node, std::uint32_t>>>& rotations,
    const std::vector<std::size_t>& origin_line) {
    auto line_of = [&](Node v) -> std::size_t { return v < origin_line.size() ? origin_line[v] : 0; };
    auto fail = [&](Node v, const std::string& msg) -> DrawingError {
        return DrawingError(msg, line_of(v), line_of(v) ? 1 : 0);
    };

    Planarization p;
    for (std::size_t v = 0; v < node_count; ++v) p.add_node(crossing[v]);

    struct Pending {
        PEdge edge;
        bool matched;
    };
    std::map<std::tuple<Node, Node, std::uint32_t>, Pending> open;
    std::vector<std::vector<Dart>> darts(node_count);

    for (Node v = 0; v < node_count; ++v) {
        for (const auto& [u, tag] : rotations[v]) {
            if (u >= node_count) throw fail(v, "rotation of vertex " + std::to_string(v) + " names unknown vertex " + std::to_string(u));
            if (u == v) throw fail(v, "loop at vertex " + std::to_string(v));
            const auto key = std::make_tuple(std::min(u, v), std::max(u, v), tag);
            if (v < u) {
                if (open.count(key))
                    throw fail(v, "inconsistent rotation: duplicate half-edge " + std::to_string(v) + "-" +
                                      std::to_string(u) + "." + std::to_string(tag));
                const PEdge e = p.new_edge(v, u, tag, false);
                open.emplace(key, Pending{e, false});
                darts[v].push_back(2 * e);
            } else {
                auto it = open.find(key);
                if (it == open.end())
                    throw fail(v, "inconsistent rotation: half-edge " + std::to_string(v) + "-" + std::to_string(u) +
                                      "." + std::to_string(tag) + " missing at vertex " + std::to_string(u));
                if (it->second.matched)
                    throw fail(v, "inconsistent rotation: duplicate half-edge " + std::to_string(v) + "-" +
                                      std::to_string(u) + "." + std::to_string(tag));
                it->second.matched = true;
                darts[v].push_back(2 * it->second.edge + 1);
            }
        }
    }
    for (const auto& [key, pending] : open) {
        if (!pending.matched) {
            const Node hi = std::get<1>(key);
            throw fail(hi, "inconsistent rotation: half-edge " + std::to_string(hi) + "-" +
                               std::to_string(std::get<0>(key)) + "." + std::to_string(std::get<2>(key)) +
                               " missing at vertex " + std::to_string(hi));
        }
    }

    for (Node v = 0; v < node_count; ++v) {
        const auto& ring = darts[v];
        const std::size_t k = ring.size();
        for (std::size_t i = 0; i < k; ++i) {
            p.next_[ring[i]] = ring[(i + 1) % k];
            p.prev_[ring[i]] = ring[(i + k - 1) % k];
        }
        p.first_[v] = k ? ring[0] : kNoDart;
        p.degree_[v] = static_cast<std::uint32_t>(k);
    }
    return p;
}

// ── Faces and topology ──────────────────────────────────────────────────

namespace {

template <class F>
void walk_faces(const Planarization& p, F&& on_face) {
    std::vector<bool> seen(2 * p.edge_capacity(), false);
    std::vector<Dart> buf;
    for (Dart d = 0; d < 2 * p.edge_capacity(); ++d) {
        if (seen[d] || !p.edge_alive(Planarization::edge_of(d))) continue;
        buf.clear();
        Dart c = d;
        do {
            seen[c] = true;
            buf.push_back(c);
            c = p.face_next(c);
        } while (c != d);
        on_face(buf);
    }
}

std::vector<std::uint32_t> label_components(const Planarization& p, std::uint32_t& count) {
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> comp(p.node_count(), kUnset);
    count = 0;
    std::vector<Node> stack;
    for (Node s = 0; s < p.node_count(); ++s) {
        if (comp[s] != kUnset) continue;
        if (p.degree(s) == 0 && p.is_crossing(s)) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            const Node v = stack.back();
            stack.pop_back();
            const Dart first = p.first_dart(v);
            if (first == kNoDart) continue;
            Dart d = first;
            do {
                const Node w = p.head(d);
                if (comp[w] == kUnset) {
                    comp[w] = count;
                    stack.push_back(w);
                }
                d = p.rot_next(d);
            } while (d != first);
        }
        ++count;
    }
    return comp;
}

}  // namespace

std::vector<FaceWalk> faces(const Planarization& p, std::size_t min_degree, std::size_t* total) {
    std::vector<FaceWalk> out;
    std::size_t count = 0;
    walk_faces(p, [&](const std::vector<Dart>& walk) {
        ++count;
        if (walk.size() >= min_degree) out.push_back(FaceWalk{walk});
    });
    if (total) *total = count;
    return out;
}

std::size_t face_count(const Planarization& p) {
    std::size_t n = 0;
    walk_faces(p, [&](const std::vector<Dart>&) { ++n; });
    return n;
}

std::size_t component_count(const Planarization& p) {
    std::uint32_t count = 0;
    label_components(p, count);
    return count;
}

bool is_spherical(const Planarization& p) {
    std::uint32_t count = 0;
    const auto comp = label_components(p, count);
    std::vector<std::int64_t> euler(count, 0);
    for (Node v = 0; v < p.node_count(); ++v)
        if (comp[v] != std::numeric_limits<std::uint32_t>::max()) ++euler[comp[v]];
    for (PEdge e = 0; e < p.edge_capacity(); ++e)
        if (p.edge_alive(e)) --euler[comp[p.origin(2 * e)]];
    std::vector<bool> has_face(count, false);
    walk_faces(p, [&](const std::vector<Dart>& walk) {
        ++euler[comp[p.origin(walk.front())]];
        has_face[comp[p.origin(walk.front())]] = true;
    });
    for (std::uint32_t c = 0; c < count; ++c) {
        if (!has_face[c]) ++euler[c];  // isolated vertex: the sphere around it is one face
        if (euler[c] != 2) return false;
    }
    return true;
}

// ── Original graph ──────────────────────────────────────────────────────

OriginalGraph original_edges(const Planarization& p) {
    OriginalGraph g;
    for (Node v = 0; v < p.node_count(); ++v)
        if (!p.is_crossing(v)) ++g.real_vertex_count;

    std::vector<OriginalEdge> edges;
    edges.reserve(p.edge_count());
    for (PEdge e = 0; e < p.edge_capacity(); ++e) {
        if (!p.edge_alive(e) || p.augmented(e)) continue;
        const Node a = p.origin(2 * e), b = p.origin(2 * e + 1);
        if (p.is_crossing(a) || p.is_crossing(b)) continue;
        OriginalEdge oe;
        oe.u = std::min(a, b);
        oe.v = std::max(a, b);
        oe.segments = {e, kNoPEdge};
        edges.push_back(oe);
    }
    for (Node c = 0; c < p.node_count(); ++c) {
        if (!p.is_crossing(c)) continue;
        if (p.degree(c) != 4)
            throw DrawingError("crossing degree: crossing vertex " + std::to_string(c) + " has degree " +
                               std::to_string(p.degree(c)));
        const auto rot = p.rotation4(c);
        CrossingPair cp;
        cp.node = c;
        std::copy(rot.begin(), rot.end(), cp.darts.begin());
        const auto index = static_cast<std::int32_t>(g.crossings.size());
        for (int k = 0; k < 2; ++k) {
            const Node a = p.head(rot[k]), b = p.head(rot[k + 2]);
            OriginalEdge oe;
            oe.u = std::min(a, b);
            oe.v = std::max(a, b);
            oe.crossing = index;
            oe.segments = {Planarization::edge_of(rot[k]), Planarization::edge_of(rot[k + 2])};
            edges.push_back(oe);
        }
        g.crossings.push_back(cp);
    }

    // Bucket by u, then sort each bucket by (v, first segment).
    std::vector<std::uint32_t> start(p.node_count() + 1, 0);
    for (const OriginalEdge& e : edges) ++start[e.u + 1];
    for (std::size_t k = 0; k < p.node_count(); ++k) start[k + 1] += start[k];
    g.edges.resize(edges.size());
    {
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (const OriginalEdge& e : edges) g.edges[fill[e.u]++] = e;
    }
    for (std::size_t k = 0; k < p.node_count(); ++k)
        std::sort(g.edges.begin() + start[k], g.edges.begin() + start[k + 1],
                  [](const OriginalEdge& x, const OriginalEdge& y) {
                      return x.v != y.v ? x.v < y.v : x.segments[0] < y.segments[0];
                  });
    for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
        const OriginalEdge& e = g.edges[i];
        if (e.crossing < 0) continue;
        CrossingPair& cp = g.crossings[static_cast<std::size_t>(e.crossing)];
        cp.edges[e.segments[0] == Planarization::edge_of(cp.darts[0]) ? 0 : 1] = i;
    }
    return g;
}

// ── Validation ──────────────────────────────────────────────────────────

void validate(const Planarization& p, const DrawingRules& rules) {
    if (p.node_count() == 0) throw DrawingError("drawing has no vertices");

    for (Node c = 0; c < p.node_count(); ++c) {
        if (!p.is_crossing(c)) continue;
        if (p.degree(c) != 4)
            throw DrawingError("crossing degree: crossing vertex " + std::to_string(c) + " has degree " +
                               std::to_string(p.degree(c)) + ", expected 4");
        const auto rot = p.rotation(c);
        std::array<Node, 4> w{};
        for (int i = 0; i < 4; ++i) {
            w[i] = p.head(rot[i]);
            if (p.is_crossing(w[i]))
                throw DrawingError("adjacent crossing vertices " + std::to_string(c) + " and " + std::to_string(w[i]) +
                                   ": an edge would cross twice");
        }
        for (int i = 0; i < 4; ++i)
            if (w[i] == w[(i + 1) % 4])
                throw DrawingError("crossing rotation: crossing vertex " + std::to_string(c) +
                                   " has consecutive half-edges to the same vertex " + std::to_string(w[i]));
        if (w[0] == w[2] && w[1] == w[3])
            throw DrawingError("crossing rotation: crossing vertex " + std::to_string(c) +
                               " joins only two vertices");
        if (!rules.allow_multigraph && (w[0] == w[2] || w[1] == w[3]))
            throw DrawingError("crossing rotation: crossing vertex " + std::to_string(c) +
                               " does not alternate between two edges with four distinct endpoints");
    }

    if (component_count(p) != 1) throw DrawingError("drawing is not connected");

    const std::int64_t v = static_cast<std::int64_t>(p.node_count());
    const std::int64_t e = static_cast<std::int64_t>(p.edge_count());
    const std::int64_t f = static_cast<std::int64_t>(p.edge_count() == 0 ? 1 : face_count(p));
    if (v - e + f != 2)
        throw DrawingError("Euler check failed: V - E + F = " + std::to_string(v) + " - " + std::to_string(e) +
                           " + " + std::to_string(f) + " = " + std::to_string(v - e + f) + ", expected 2");

    if (rules.allow_multigraph) return;

    const OriginalGraph g = original_edges(p);
    for (std::size_t i = 1; i < g.edges.size(); ++i)
        if (g.edges[i].u == g.edges[i - 1].u && g.edges[i].v == g.edges[i - 1].v)
            throw DrawingError("underlying graph is not simple: parallel edges " + std::to_string(g.edges[i].u) +
                               "-" + std::to_string(g.edges[i].v));
    const std::size_t n = g.real_vertex_count;
    if (!within_edge_bound(n, g.edges.size()))
        throw DrawingError("edge bound violated: m = " + std::to_string(g.edges.size()) + " > 4n-8 = " +
                           std::to_string(4 * n - 8));
}

// ── Text format ─────────────────────────────────────────────────────────

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::uint32_t parse_uint(const Token& t, std::size_t line, std::string_view what) {
    std::uint32_t value = 0;
    const char* b = t.text.data();
    const char* e = b + t.text.size();
    auto [ptr, ec] = std::from_chars(b, e, value);
    if (ec != std::errc{} || ptr != e || t.text.empty())
        throw DrawingError("syntax error: expected " + std::string(what) + ", got '" + std::string(t.text) + "'", line,
                           t.column);
    return value;
}

}  // namespace

Planarization parse_drawing(std::string_view text, const DrawingRules& rules) {
    std::size_t node_count = 0;
    bool have_n = false;
    std::size_t n_line = 0;
    std::vector<std::pair<Node, std::pair<std::size_t, std::size_t>>> crossing_ids;  // id, (line, col)
    struct RotLine {
        Node v;
        std::size_t line, column;
        std::vector<std::pair<Node, std::uint32_t>> tokens;
        std::vector<std::size_t> columns;
    };
    std::vector<RotLine> rot_lines;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (toks.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        const auto kw = toks[0].text;
        if (kw == "n") {
            if (have_n) throw DrawingError("syntax error: duplicate 'n' line", line_no, toks[0].column);
            if (toks.size() != 2) throw DrawingError("syntax error: expected 'n <count>'", line_no, toks[0].column);
            node_count = parse_uint(toks[1], line_no, "vertex count");
            have_n = true;
            n_line = line_no;
        } else if (kw == "crossings") {
            for (std::size_t i = 1; i < toks.size(); ++i)
                crossing_ids.push_back({parse_uint(toks[i], line_no, "vertex id"), {line_no, toks[i].column}});
        } else if (kw == "rot") {
            if (toks.size() < 2) throw DrawingError("syntax error: expected 'rot <v>:'", line_no, toks[0].column);
            RotLine r;
            r.line = line_no;
            std::size_t next = 2;
            Token head = toks[1];
            if (!head.text.empty() && head.text.back() == ':') {
                head.text.remove_suffix(1);
            } else if (toks.size() > 2 && toks[2].text == ":") {
                next = 3;
            } else {
                throw DrawingError("syntax error: expected ':' after vertex id", line_no, toks[1].column);
            }
            r.v = parse_uint(head, line_no, "vertex id");
            r.column = toks[1].column;
            for (std::size_t i = next; i < toks.size(); ++i) {
                const auto dot = toks[i].text.find('.');
                std::uint32_t tag = 0;
                Token id = toks[i];
                if (dot != std::string_view::npos) {
                    id.text = toks[i].text.substr(0, dot);
                    Token tagtok{toks[i].text.substr(dot + 1), toks[i].column + dot + 1};
                    tag = parse_uint(tagtok, line_no, "multiplicity index");
                }
                r.tokens.push_back({parse_uint(id, line_no, "vertex id"), tag});
                r.columns.push_back(toks[i].column);
            }
            rot_lines.push_back(std::move(r));
        } else if (kw == "label") {
            if (toks.size() != 3) throw DrawingError("syntax error: expected 'label <v> <name>'", line_no, toks[0].column);
            parse_uint(toks[1], line_no, "vertex id");
        } else {
            throw DrawingError("syntax error: unknown directive '" + std::string(kw) + "'", line_no, toks[0].column);
        }
        if (eol == text.size()) break;
    }

    if (!have_n) throw DrawingError("syntax error: missing 'n <count>' line", line_no, 1);

    std::vector<bool> crossing(node_count, false);
    for (const auto& [id, where] : crossing_ids) {
        if (id >= node_count)
            throw DrawingError("crossing vertex " + std::to_string(id) + " out of range", where.first, where.second);
        crossing[id] = true;
    }
    std::vector<std::vector<std::pair<Node, std::uint32_t>>> rotations(node_count);
    std::vector<std::size_t> origin_line(node_count, 0);
    for (auto& r : rot_lines) {
        if (r.v >= node_count)
            throw DrawingError("vertex " + std::to_string(r.v) + " out of range", r.line, r.column);
        if (origin_line[r.v] != 0)
            throw DrawingError("duplicate rot line for vertex " + std::to_string(r.v), r.line, r.column);
        origin_line[r.v] = r.line;
        for (std::size_t i = 0; i < r.tokens.size(); ++i)
            if (r.tokens[i].first >= node_count)
                throw DrawingError("vertex " + std::to_string(r.tokens[i].first) + " out of range", r.line, r.columns[i]);
        rotations[r.v] = std::move(r.tokens);
    }
    for (Node v = 0; v < node_count; ++v)
        if (origin_line[v] == 0)
            throw DrawingError("missing rot line for vertex " + std::to_string(v), n_line, 1);

    Planarization p = Planarization::from_rotations(node_count, crossing, rotations, origin_line);
    validate(p, rules);
    return p;
}

std::string serialize(const Planarization& p, const std::vector<std::string>& labels) {
    std::ostringstream out;
    out << "n " << p.node_count() << '\n';
    out << "crossings";
    for (Node v = 0; v < p.node_count(); ++v)
        if (p.is_crossing(v)) out << ' ' << v;
    out << '\n';
    for (Node v = 0; v < p.node_count(); ++v) {
        out << "rot " << v << ':';
        const auto rot = p.rotation(v);
        if (!rot.empty()) {
            auto key = [&](Dart d) { return std::make_pair(p.head(d), p.tag(Planarization::edge_of(d))); };
            std::size_t start = 0;
            for (std::size_t i = 1; i < rot.size(); ++i)
                if (key(rot[i]) < key(rot[start])) start = i;
            for (std::size_t k = 0; k < rot.size(); ++k) {
                const Dart d = rot[(start + k) % rot.size()];
                out << ' ' << p.head(d);
                if (const auto t = p.tag(Planarization::edge_of(d)); t != 0) out << '.' << t;
            }
        }
        out << '\n';
    }
    for (Node v = 0; v < labels.size() && v < p.node_count(); ++v)
        if (!labels[v].empty()) out << "label " << v << ' ' << labels[v] << '\n';
    return out.str();
}

}  // namespace pgf
