#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "pgf/gen.hpp"
#include "pgf/preprocess.hpp"

using namespace pgf;

namespace {

FacialCycle ids(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    return {VertexId{a}, VertexId{b}, VertexId{c}, VertexId{d}};
}

FacialCycle initial_cycle(const QuadFace& q) {
    return ids(q.corners[0], q.corners[1], q.corners[2], q.corners[3]);
}

Preprocessed run_fixture(const std::string& name) { return preprocess(load_fixture(name)); }

}  // namespace

TEST_CASE("kite augmentation") {
    SUBCASE("bare crossing gets all four kite edges") {
        std::size_t added = 0;
        const Planarization a = kite_augment(load_fixture("kite_star"), &added);
        CHECK(added == 4);
        CHECK(a.edge_count() == 8);
        std::size_t flagged = 0;
        for (PEdge e = 0; e < a.edge_capacity(); ++e) flagged += a.augmented(e);
        CHECK(flagged == 4);
        for (const FaceWalk& f : faces(a)) {
            bool at_crossing = false;
            for (const Dart d : f.darts) at_crossing |= a.is_crossing(a.origin(d));
            if (at_crossing) CHECK(f.degree() == 3);
        }
        const Skeleton s = triangulate(a);
        CHECK(s.triangulation_chords == 1);
    }
    SUBCASE("complete kite is unchanged") {
        std::size_t added = 7;
        const Planarization p = load_fixture("kite_full");
        const Planarization a = kite_augment(p, &added);
        CHECK(added == 0);
        CHECK(serialize(a) == serialize(p));
        CHECK(triangulate(a).triangulation_chords == 1);
    }
    SUBCASE("k5 already has its kite") {
        std::size_t added = 7;
        kite_augment(load_fixture("k5"), &added);
        CHECK(added == 0);
    }
    SUBCASE("augmentation edges are not original edges") {
        const Planarization a = kite_augment(load_fixture("kite_star"));
        CHECK(original_edges(a).edges.size() == 2);
    }
}

TEST_CASE("skeleton faces are triangles apart from quadrangles and bigons") {
    std::vector<Planarization> inputs;
    for (const char* name : {"k5", "fig1b", "fig1e", "bigon", "kite_star", "kite_full"}) inputs.push_back(load_fixture(name));
    for (std::uint64_t seed = 1; seed <= 10; ++seed) inputs.push_back(gen_one_planar({80, 0.4, seed, 0.5}));
    for (const Planarization& p : inputs) {
        const Preprocessed pre = preprocess(p);
        const Planarization& emb = pre.skeleton.embedding;
        std::size_t total = 0;
        for (const FaceWalk& f : faces(emb, 0, &total)) {
            CHECK(f.degree() >= 2);
            CHECK(f.degree() <= 3);
        }
        CHECK(total == pre.skeleton.face_count);
        CHECK(pre.skeleton.quads.size() == p.crossing_count());
        CHECK(is_spherical(emb));
    }
}

TEST_CASE("k5 skeleton has one quadrangle") {
    const Preprocessed pre = run_fixture("k5");
    REQUIRE(pre.skeleton.quads.size() == 1);
    const QuadFace& q = pre.skeleton.quads[0];
    CHECK(q.crossing == 5);
    CHECK(initial_cycle(q) == ids(3, 0, 2, 4));
    CHECK(pre.skeleton.edges.size() == 8);
    CHECK(pre.skeleton.triangulation_chords == 0);
}

TEST_CASE("gadget sizes") {
    for (const char* name : {"k5", "fig1b", "fig1e", "bigon"}) {
        CAPTURE(name);
        const Preprocessed pre = run_fixture(name);
        const Skeleton& s = pre.skeleton;
        const Multigraph& g = pre.diamond.graph;
        const std::size_t q = s.quads.size();
        // H drops each crossing node and its four segments.
        const std::size_t h_vertices = s.embedding.node_count() - q;
        const std::size_t h_edges = s.embedding.edge_count() - 4 * q;
        CHECK(g.vertex_count() == h_vertices + 5 * q);
        CHECK(g.edge_count() == h_edges + 16 * q);
    }
    const Preprocessed k5 = run_fixture("k5");
    CHECK(k5.diamond.graph.vertex_count() == 10);
    CHECK(k5.diamond.graph.edge_count() == 24);
    CHECK(is_spherical(gadget_embedding(k5.skeleton)));
}

TEST_CASE("gadget labels and ids") {
    const Preprocessed pre = run_fixture("fig1e");
    const HDiamond& h = pre.diamond;
    const std::size_t base = pre.skeleton.embedding.node_count();
    REQUIRE(h.gadgets.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        const QuadGadget& gd = h.gadgets[k];
        CHECK(h.graph.meta(gd.quad).label == Label::quad);
        CHECK(&h.gadget(gd.quad) == &gd);
        CHECK(h.graph.degree(gd.quad) == 8);
        for (int i = 0; i < 4; ++i) {
            CHECK(gd.corners[i].value == base + 4 * k + i);
            CHECK(h.graph.meta(gd.corners[i]).label == corner_label(i));
            CHECK(h.graph.degree(gd.corners[i]) == 3);
        }
    }
    CHECK_THROWS_AS(h.gadget(VertexId{0}), GraphError);
    CHECK_THROWS_AS(facial_cycle(h.graph, VertexId{0}), GraphError);
    CHECK_THROWS_AS(facial_cycle(h.graph, h.gadgets[0].corners[0]), GraphError);
}

TEST_CASE("initial facial cycles match the quadrangles") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Preprocessed pre = preprocess(gen_one_planar({150, 1.0, seed, 0.3}));
        for (std::size_t k = 0; k < pre.skeleton.quads.size(); ++k)
            CHECK(facial_cycle(pre.diamond.graph, pre.diamond.gadgets[k].quad) == initial_cycle(pre.skeleton.quads[k]));
    }
}

TEST_CASE("facial cycle with a repeated vertex") {
    const Preprocessed pre = run_fixture("fig1b");
    REQUIRE(pre.diamond.gadgets.size() == 1);
    CHECK(facial_cycle(pre.diamond.graph, pre.diamond.gadgets[0].quad) == ids(0, 2, 0, 1));
}

TEST_CASE("fig1e quadrangles share both opposing pairs") {
    const Preprocessed pre = run_fixture("fig1e");
    const Multigraph& g = pre.diamond.graph;
    auto pairs = [&g](VertexId f) {
        const FacialCycle z = facial_cycle(g, f);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (int i = 0; i < 2; ++i)
            out.emplace_back(std::min(z[i].value, z[i + 2].value), std::max(z[i].value, z[i + 2].value));
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(pairs(pre.diamond.gadgets[0].quad) == pairs(pre.diamond.gadgets[1].quad));
}

TEST_CASE("anchor_at") {
    const FacialCycle z = ids(4, 7, 4, 9);
    CHECK(anchor_at(z, VertexId{7}) == ids(7, 4, 9, 4));
    CHECK(anchor_at(z, VertexId{4}) == z);
    CHECK_FALSE(anchor_at(z, VertexId{5}).has_value());
}

TEST_CASE("facial cycles track contractions elsewhere") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        CAPTURE(seed);
        Preprocessed pre = preprocess(gen_one_planar({60, 0.6, seed, 0.0}));
        Multigraph& g = pre.diamond.graph;
        const std::size_t base = pre.skeleton.embedding.node_count();
        std::vector<std::size_t> parent(base);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&parent](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::map<std::size_t, VertexId> rep;
        for (std::size_t v = 0; v < base; ++v) rep[v] = VertexId{static_cast<std::uint32_t>(v)};
        auto mapped = [&](const QuadFace& q) {
            FacialCycle z;
            for (int i = 0; i < 4; ++i) z[i] = rep.at(find(q.corners[i]));
            return z;
        };
        // A merge is allowed while every cycle keeps distinct neighbours and
        // at most one opposite pair coincides.
        auto admissible = [&](std::size_t a, std::size_t b) {
            for (const QuadFace& q : pre.skeleton.quads) {
                std::array<std::size_t, 4> r{};
                for (int i = 0; i < 4; ++i) {
                    r[i] = find(q.corners[i]);
                    if (r[i] == b) r[i] = a;
                }
                for (int i = 0; i < 4; ++i)
                    if (r[i] == r[(i + 1) % 4]) return false;
                if (r[0] == r[2] && r[1] == r[3]) return false;
            }
            return true;
        };

        SplitMix64 rng(seed * 7919);
        std::size_t merges = 0;
        for (int attempt = 0; attempt < 200 && merges < 15; ++attempt) {
            const EdgeId e{static_cast<std::uint32_t>(rng.uniform(g.edge_capacity()))};
            if (!g.alive(e)) continue;
            const auto [p, q] = g.endpoints(e);
            if (p.value >= base || q.value >= base || p == q) continue;
            if (g.meta(p).label != Label::none || g.meta(q).label != Label::none) continue;
            std::size_t ra = 0, rb = 0;
            for (const auto& [root, v] : rep) {
                if (v == p) ra = root;
                if (v == q) rb = root;
            }
            if (!admissible(ra, rb)) continue;
            const VertexId y = g.contract(e);
            parent[rb] = ra;
            rep.erase(rb);
            rep[ra] = y;
            ++merges;
            for (std::size_t k = 0; k < pre.skeleton.quads.size(); ++k)
                REQUIRE(facial_cycle(g, pre.diamond.gadgets[k].quad) == mapped(pre.skeleton.quads[k]));
        }
        CHECK(merges > 0);
    }
}

TEST_CASE("gadget dump parses back") {
    for (const char* name : {"k5", "fig1b", "fig1e"}) {
        CAPTURE(name);
        const Preprocessed pre = run_fixture(name);
        const std::string text = dump_hdiamond(pre.skeleton, pre.diamond);
        CHECK(text.find("label ") != std::string::npos);
        const Planarization back = parse_drawing(text, {true});
        CHECK(back.node_count() == pre.diamond.graph.vertex_count());
        CHECK(back.edge_count() == pre.diamond.graph.edge_count());
        CHECK(back.crossing_count() == 0);
        CHECK(is_spherical(back));
        for (Node v = 0; v < back.node_count(); ++v) CHECK(back.degree(v) == pre.diamond.graph.degree(VertexId{v}));
    }
}

TEST_CASE("build_gadgets rejects a broken skeleton") {
    Skeleton s = preprocess(load_fixture("k5")).skeleton;
    s.face_count += 1;
    CHECK_THROWS_AS(build_gadgets(s), InvariantViolation);
}

TEST_CASE("renumbered drawings get the same skeleton") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        CAPTURE(seed);
        const Planarization p = gen_one_planar({150, 0.5, seed, 0.6});
        std::vector<Node> order;
        const Planarization q = p.bfs_renumbered(&order);
        const Skeleton a = preprocess(p).skeleton;
        const Skeleton b = preprocess(q, &order).skeleton;
        REQUIRE(a.triangulation_chords > 0);
        CHECK(a.triangulation_chords == b.triangulation_chords);
        auto sorted_pairs = [](std::vector<std::pair<Node, Node>> edges, const std::vector<Node>* rename) {
            for (auto& [u, v] : edges) {
                if (rename) {
                    u = (*rename)[u];
                    v = (*rename)[v];
                }
                if (u > v) std::swap(u, v);
            }
            std::sort(edges.begin(), edges.end());
            return edges;
        };
        CHECK(sorted_pairs(a.edges, nullptr) == sorted_pairs(b.edges, &order));
    }
}
