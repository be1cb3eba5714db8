#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "pgf/engine.hpp"
#include "pgf/gen.hpp"
#include "pgf/verify.hpp"

using namespace pgf;

namespace {

VertexId V(std::uint32_t v) { return VertexId{v}; }

std::set<std::uint32_t> plain_neighbors(const Multigraph& g, VertexId x) {
    std::set<std::uint32_t> out;
    for (const Incidence inc : g.neighbors(x))
        if (inc.other != x) out.insert(inc.other.value);
    return out;
}

std::pair<Node, Node> ends(const OriginalGraph& g, OriginalEdgeId e) { return {g.edges[e].u, g.edges[e].v}; }

}  // namespace

TEST_CASE("initialize_at_vertex registers quadrangles once") {
    SUBCASE("k5") {
        Preprocessed pre = preprocess(load_fixture("k5"));
        Engine engine(pre.diamond);
        const Multigraph& g = engine.graph();
        engine.initialize_at_vertex(V(0));
        CHECK(engine.worklist() == std::vector<VertexId>{V(5)});
        CHECK(g.meta(V(5)).in_worklist);
        CHECK(g.meta(V(4)).opposing == 1);  // cycle <3,0,2,4>: 4 faces 0
        for (const Incidence inc : g.neighbors(V(0))) CHECK(g.meta(inc.other).adj);
        CHECK_FALSE(g.meta(V(0)).adj);
    }
    SUBCASE("anchor on two corners of one quadrangle") {
        Preprocessed pre = preprocess(load_fixture("fig1b"));
        Engine engine(pre.diamond);
        engine.initialize_at_vertex(V(0));
        CHECK(engine.worklist().size() == 1);
        CHECK(engine.stats().worklist_pushes == 1);
        CHECK(engine.graph().meta(V(0)).opposing == 1);
    }
    SUBCASE("no quadrangle neighbours") {
        Preprocessed pre = preprocess(load_fixture("k5"));
        Engine engine(pre.diamond);
        engine.initialize_at_vertex(V(1));
        CHECK(engine.worklist().empty());
        CHECK(engine.graph().meta(V(0)).adj);
        CHECK(engine.graph().meta(V(0)).opposing == 0);
    }
}

TEST_CASE("classify") {
    SUBCASE("anchor repeated opposite itself") {
        Preprocessed pre = preprocess(load_fixture("fig1b"));
        Engine engine(pre.diamond);
        engine.initialize_at_vertex(V(0));
        const auto z = anchor_at(facial_cycle(engine.graph(), V(3)), V(0));
        CHECK(engine.classify(V(0), *z) == CaseTag::case1a);
    }
    SUBCASE("opposite vertex adjacent to the anchor") {
        Preprocessed pre = preprocess(load_fixture("k5"));
        Engine engine(pre.diamond);
        engine.initialize_at_vertex(V(3));
        const auto z = anchor_at(facial_cycle(engine.graph(), V(5)), V(3));
        CHECK((*z)[2] == V(2));
        CHECK(engine.classify(V(3), *z) == CaseTag::case2);  // 2-3 is the crossed edge
        engine.initialize_at_vertex(V(1));  // 1 is adjacent to 2, marks it
        CHECK(engine.classify(V(3), *z) == CaseTag::case1b);
    }
    SUBCASE("two quadrangles with the same opposite vertex") {
        Preprocessed pre = preprocess(load_fixture("fig1e"));
        Engine engine(pre.diamond);
        engine.initialize_at_vertex(V(0));
        CHECK(engine.worklist().size() == 2);
        CHECK(engine.graph().meta(V(2)).opposing == 2);
        const auto z = anchor_at(facial_cycle(engine.graph(), V(4)), V(0));
        CHECK(engine.classify(V(0), *z) == CaseTag::case1c);
    }
    SUBCASE("plain quadrangle") {
        Preprocessed pre = preprocess(load_fixture("k5"));
        Engine engine(pre.diamond);
        engine.initialize_at_vertex(V(0));
        const auto z = anchor_at(facial_cycle(engine.graph(), V(5)), V(0));
        CHECK(engine.classify(V(0), *z) == CaseTag::case2);
    }
}

TEST_CASE("contract_through collapses the gadget") {
    Preprocessed pre = preprocess(load_fixture("k5"));
    Engine engine(pre.diamond);
    const Multigraph& g = engine.graph();
    CHECK_THROWS_AS(engine.contract_through(V(0), V(2), V(5)), GraphError);  // not a diagonal
    CHECK_THROWS_AS(engine.contract_through(V(0), V(4), V(1)), GraphError);  // not a quad
    const VertexId y = engine.contract_through(V(0), V(4), V(5));
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 18);
    CHECK(plain_neighbors(g, y) == std::set<std::uint32_t>{1, 2, 3});
    CHECK(g.meta(y).label == Label::none);
    REQUIRE(engine.chord_log().size() == 1);
    const ChordRecord& r = engine.chord_log()[0];
    CHECK(r.quad == V(5));
    CHECK(r.diagonal == 1);
    CHECK(ends(pre.skeleton.original, r.edge) == std::make_pair(Node{0}, Node{4}));
    for (std::uint32_t v = 6; v < 10; ++v) CHECK_FALSE(g.alive(V(v)));
}

TEST_CASE("contract_through renames vertices in other cycles") {
    Preprocessed pre = preprocess(load_fixture("fig1e"));
    Engine engine(pre.diamond);
    const VertexId y = engine.contract_through(V(1), V(3), V(4));
    const FacialCycle z = facial_cycle(engine.graph(), V(5));
    CHECK(anchor_at(z, V(0)) == FacialCycle{V(0), y, V(2), y});
}

TEST_CASE("handle_quads_at_vertex") {
    SUBCASE("single quadrangle takes case 2") {
        Preprocessed pre = preprocess(load_fixture("k5"));
        Engine engine(pre.diamond);
        const VertexId x = engine.handle_quads_at_vertex(V(0));
        REQUIRE(engine.chord_log().size() == 1);
        CHECK(engine.chord_log()[0].taken == CaseTag::case2);
        CHECK(ends(pre.skeleton.original, engine.chord_log()[0].edge) == std::make_pair(Node{0}, Node{4}));
        CHECK(engine.graph().dirty_vertices_sweep().empty());
        for (const Incidence inc : engine.graph().neighbors(x)) CHECK(engine.graph().meta(inc.other).label != Label::quad);
    }
    SUBCASE("repeated anchor") {
        Preprocessed pre = preprocess(load_fixture("fig1b"));
        Engine engine(pre.diamond);
        const Multigraph& g = engine.graph();
        std::int32_t opposing_after = -1;
        engine.handle_quads_at_vertex(V(0));
        opposing_after = g.meta(V(0)).opposing;
        REQUIRE(engine.chord_log().size() == 1);
        CHECK(engine.chord_log()[0].taken == CaseTag::case1a);
        CHECK(ends(pre.skeleton.original, engine.chord_log()[0].edge) == std::make_pair(Node{1}, Node{2}));
        CHECK(opposing_after == 0);
        CHECK(g.dirty_vertex_count() == 0);
    }
    SUBCASE("two quadrangles sharing both opposite pairs") {
        Preprocessed pre = preprocess(load_fixture("fig1e"));
        EngineOptions opt;
        opt.check_invariants = true;
        opt.full_sweep = true;
        Engine engine(pre.diamond, opt);
        engine.handle_quads_at_vertex(V(0));
        REQUIRE(engine.chord_log().size() == 2);
        CHECK(engine.chord_log()[0].taken == CaseTag::case1c);
        CHECK(engine.chord_log()[1].taken == CaseTag::case2);
        std::set<std::pair<Node, Node>> chords;
        for (const ChordRecord& r : engine.chord_log()) chords.insert(ends(pre.skeleton.original, r.edge));
        CHECK(chords == std::set<std::pair<Node, Node>>{{0, 2}, {1, 3}});
        CHECK(!engine.graph().alive(V(4)));
        CHECK(!engine.graph().alive(V(5)));
    }
}

TEST_CASE("cleanup_at_vertex is idempotent") {
    Preprocessed pre = preprocess(load_fixture("fig1e"));
    Engine engine(pre.diamond);
    engine.initialize_at_vertex(V(0));
    CHECK(engine.graph().dirty_vertex_count() > 0);
    engine.cleanup_at_vertex(V(0));
    // Only 2 is out of reach: it opposes 0 in both quadrangles but is not a neighbour.
    CHECK(engine.graph().dirty_vertices_sweep() == std::vector<VertexId>{V(2)});
    engine.cleanup_at_vertex(V(0));
    CHECK(engine.graph().dirty_vertices_sweep() == std::vector<VertexId>{V(2)});
    CHECK(engine.graph().dirty_vertex_count() == 1);
}

TEST_CASE("find_pgf_partition on small inputs") {
    SUBCASE("planar input") {
        const Planarization p = gen_one_planar({40, 0.0, 3, 0.2});
        const PGFPartition part = find_pgf_partition(p);
        CHECK(part.forest.empty());
        CHECK(part.planar.size() == original_edges(p).edges.size());
    }
    SUBCASE("k5") {
        const Planarization p = load_fixture("k5");
        const PGFPartition part = find_pgf_partition(p);
        REQUIRE(part.forest.size() == 1);
        CHECK(part.planar.size() == 9);
        const OriginalGraph g = original_edges(p);
        const auto f = ends(g, part.forest[0]);
        CHECK((f == std::make_pair(Node{0}, Node{4}) || f == std::make_pair(Node{2}, Node{3})));
        CHECK(verify_partition(p, part).ok());
    }
}

TEST_CASE("checked runs on random drawings") {
    for (const double cross : {0.0, 0.1, 0.3, 1.0})
        for (std::uint64_t seed = 1; seed <= 8; ++seed)
            for (const std::size_t n : {10, 60, 300}) {
                CAPTURE(n);
                CAPTURE(cross);
                CAPTURE(seed);
                const Planarization p = gen_one_planar({n, cross, seed, seed % 2 ? 0.0 : 0.3});
                EngineOptions opt;
                opt.check_invariants = true;
                opt.full_sweep = true;
                std::size_t anchors = 0;
                opt.after_anchor = [&anchors](const Multigraph& g, VertexId) {
                    ++anchors;
                    REQUIRE(g.dirty_vertices_sweep().empty());
                };
                RunStats stats;
                const PGFPartition part = find_pgf_partition(p, opt, &stats);
                CHECK(anchors == stats.anchors);
                CHECK(stats.sweeps == stats.anchors);
                CHECK(part.forest.size() == p.crossing_count());
                CHECK(stats.case1a + stats.case1b + stats.case1c + stats.case2 == p.crossing_count());
                std::set<VertexId> quads;
                for (const ChordRecord& r : part.chord_log) {
                    CHECK(p.is_crossing(r.quad.value));
                    quads.insert(r.quad);
                }
                CHECK(quads.size() == p.crossing_count());
                const VerificationReport rep = verify_partition(p, part);
                CHECK_MESSAGE(rep.ok(), rep.to_text());
            }
}

TEST_CASE("locality order does not change validity") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Planarization p = gen_one_planar({500, 0.5, seed, 0.1});
        EngineOptions on, off;
        off.locality_order = false;
        const PGFPartition a = find_pgf_partition(p, on);
        const PGFPartition b = find_pgf_partition(p, off);
        CHECK(verify_partition(p, a).ok());
        CHECK(verify_partition(p, b).ok());
        CHECK(a.forest.size() == b.forest.size());
        CHECK(a.planar.size() == b.planar.size());
    }
}

TEST_CASE("chord records name input crossing nodes under renumbering") {
    const Planarization p = gen_one_planar({200, 0.4, 9, 0.0});
    const OriginalGraph g = original_edges(p);
    const PGFPartition part = find_pgf_partition(p);
    for (const ChordRecord& r : part.chord_log) {
        const OriginalEdge& e = g.edges[r.edge];
        REQUIRE(e.crossing >= 0);
        CHECK(g.crossings[static_cast<std::size_t>(e.crossing)].node == r.quad.value);
    }
}

TEST_CASE("stats on fixtures") {
    RunStats stats;
    find_pgf_partition(load_fixture("kite_star"), {}, &stats);
    CHECK(stats.kite_edges_added == 4);
    CHECK(stats.triangulation_chords == 1);
    CHECK(stats.anchors == 1);
    CHECK(stats.contractions >= 6);
}
