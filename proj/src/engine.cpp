#include "pgf/engine.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace pgf {

const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::case1a: return "1.a";
        case CaseTag::case1b: return "1.b";
        case CaseTag::case1c: return "1.c";
        case CaseTag::case2: return "2";
    }
    return "?";
}

namespace {

std::string vid(VertexId v) { return std::to_string(v.value); }

std::string cycle_text(const FacialCycle& z) {
    return "<" + vid(z[0]) + "," + vid(z[1]) + "," + vid(z[2]) + "," + vid(z[3]) + ">";
}

bool opposite_in(const FacialCycle& z, VertexId a, VertexId b) {
    for (int i = 0; i < 4; ++i)
        if (z[i] == a && z[(i + 2) % 4] == b) return true;
    return false;
}

}  // namespace

Engine::Engine(HDiamond& h, EngineOptions options) : h_(h), opt_(std::move(options)) {
    if (opt_.check_invariants) retired_.assign(h_.graph.vertex_capacity(), false);
}

void Engine::initialize_at_vertex(VertexId y) {
    Multigraph& g = h_.graph;
    for (const Incidence inc : g.neighbors(y)) {
        const VertexId v = inc.other;
        if (v == y) continue;
        g.set_adj(v, true);
        const VertexMeta& m = g.meta(v);
        if (m.label != Label::quad || m.in_worklist) continue;
        g.set_in_worklist(v, true);
        worklist_.push_back(v);
        ++stats_.worklist_pushes;
        const auto z = anchor_at(facial_cycle(g, v), y);
        if (!z) throw InvariantViolation("initialize_at_vertex: vertex " + vid(y) + " missing from the cycle of quad " + vid(v));
        g.set_opposing((*z)[2], g.meta((*z)[2]).opposing + 1);
    }
}

CaseTag Engine::classify(VertexId x, const FacialCycle& z) {
    const VertexId z2 = z[2];
    if (z2 == x) return CaseTag::case1a;
    const VertexMeta& m = h_.graph.meta(z2);
    if (m.adj) return CaseTag::case1b;
    if (m.opposing >= 2) return CaseTag::case1c;
    return CaseTag::case2;
}

VertexId Engine::contract_through(VertexId u, VertexId v, VertexId f, CaseTag taken) {
    if (h_.graph.meta(f).label != Label::quad)
        throw GraphError("contract_through: vertex " + vid(f) + " is not labelled quad");
    return merge_through(u, v, f, facial_cycle(h_.graph, f), taken);
}

VertexId Engine::merge_through(VertexId u, VertexId v, VertexId f, const FacialCycle& z, CaseTag taken) {
    Multigraph& g = h_.graph;
    int diagonal = -1;
    for (int i = 0; i < 4; ++i)
        if ((z[i] == u && z[(i + 2) % 4] == v) || (z[i] == v && z[(i + 2) % 4] == u)) diagonal = i % 2;
    if (u == v || diagonal < 0)
        throw GraphError("contract_through: {" + vid(u) + "," + vid(v) + "} is not a diagonal of " + cycle_text(z));
    if (opt_.check_invariants && g.adjacent(u, v))
        throw InvariantViolation("contract_through: merging adjacent vertices " + vid(u) + " and " + vid(v));

    const QuadGadget& gadget = h_.gadget(f);
    chords_.push_back({gadget.quad, diagonal, gadget.diagonals[diagonal], taken});

    std::array<EdgeId, 6> doomed{};
    std::size_t count = 0;
    for (const Incidence inc : g.neighbors(f)) {
        if (inc.other == u || inc.other == v || is_corner_label(g.meta(inc.other).label)) {
            if (count == doomed.size()) throw InvariantViolation("contract_through: gadget of " + vid(f) + " is corrupted");
            doomed[count++] = inc.edge;
        }
    }
    VertexId merged = f;
    for (std::size_t i = 0; i < count; ++i)
        if (g.alive(doomed[i])) merged = g.contract(doomed[i]);

    VertexMeta m = g.meta(merged);
    m.label = Label::none;
    m.in_worklist = false;
    g.set_meta(merged, m);
    return merged;
}

void Engine::audit_classification(VertexId x, const FacialCycle& z, VertexId f, CaseTag t) {
    const Multigraph& g = h_.graph;
    ++stats_.audits;
    const std::string where = " at quad " + vid(f) + " " + cycle_text(z) + ", case " + to_string(t);
    for (const VertexId v : z)
        if (retired_[v.value]) throw InvariantViolation("finished anchor " + vid(v) + " reappeared" + where);

    const VertexId z1 = z[1], z2 = z[2], z3 = z[3];
    if (z2 != x) {
        if (g.meta(z2).adj != g.adjacent(x, z2)) throw InvariantViolation("stale adj mark on " + vid(z2) + where);
        if (!g.meta(z2).adj) {
            std::int32_t shared = 1;
            for (const Incidence inc : g.neighbors(z2)) {
                const VertexId q = inc.other;
                if (q == f || g.meta(q).label != Label::quad || !g.meta(q).in_worklist) continue;
                if (opposite_in(facial_cycle(g, q), x, z2)) ++shared;
            }
            if (g.meta(z2).opposing != shared)
                throw InvariantViolation("opposing count of " + vid(z2) + " is " + std::to_string(g.meta(z2).opposing) +
                                         ", expected " + std::to_string(shared) + where);
        }
    }
    if (!is_case1(t)) return;

    if (z1 == z3) throw InvariantViolation("impossible cell: z1 = z3" + where);
    if (g.adjacent(z1, z3)) throw InvariantViolation("impossible cell: z1 and z3 adjacent" + where);
    for (const Incidence inc : g.neighbors(z1)) {
        const VertexId q = inc.other;
        if (q == f || g.meta(q).label != Label::quad) continue;
        const FacialCycle c = facial_cycle(g, q);
        if (!opposite_in(c, z1, z3)) continue;
        if (t != CaseTag::case1c || !opposite_in(c, x, z2))
            throw InvariantViolation("impossible cell: z1 and z3 also opposing in quad " + vid(q) + " " +
                                     cycle_text(c) + where);
    }
}

VertexId Engine::handle_quads_at_vertex(VertexId x) {
    Multigraph& g = h_.graph;
    worklist_.clear();
    initialize_at_vertex(x);
    for (std::size_t i = 0; i < worklist_.size(); ++i) {
        const VertexId f = worklist_[i];
        const FacialCycle raw = facial_cycle(g, f);
        const auto anchored = anchor_at(raw, x);
        if (!anchored) throw InvariantViolation("quad " + vid(f) + " in the worklist is not incident to anchor " + vid(x));
        const FacialCycle& z = *anchored;
        const CaseTag t = classify(x, z);
        if (opt_.check_invariants) audit_classification(x, z, f, t);

        switch (t) {
            case CaseTag::case1a: ++stats_.case1a; break;
            case CaseTag::case1b: ++stats_.case1b; break;
            case CaseTag::case1c: ++stats_.case1c; break;
            case CaseTag::case2: ++stats_.case2; break;
        }

        if (is_case1(t)) {
            const std::int32_t o1 = g.meta(z[1]).opposing;
            const std::int32_t o3 = g.meta(z[3]).opposing;
            const VertexId v = merge_through(z[1], z[3], f, raw, t);
            VertexMeta m = g.meta(v);
            m.adj = true;
            m.opposing = o1 + o3;
            g.set_meta(v, m);
            g.set_opposing(z[2], g.meta(z[2]).opposing - 1);
        } else {
            initialize_at_vertex(z[2]);
            const std::int32_t ox = g.meta(x).opposing;
            const std::int32_t oz = g.meta(z[2]).opposing;
            const VertexId y = merge_through(x, z[2], f, raw, t);
            VertexMeta m = g.meta(y);
            m.adj = false;
            m.opposing = ox + oz - 1;
            g.set_meta(y, m);
            x = y;
        }
    }
    worklist_.clear();
    cleanup_at_vertex(x);
    return x;
}

void Engine::cleanup_at_vertex(VertexId y) {
    Multigraph& g = h_.graph;
    auto reset = [&g](VertexId v) {
        VertexMeta m = g.meta(v);
        if (m.clean()) return;
        m.adj = false;
        m.in_worklist = false;
        m.opposing = 0;
        g.set_meta(v, m);
    };
    for (const Incidence inc : g.neighbors(y)) reset(inc.other);
    reset(y);
}

void Engine::audit_after_anchor(VertexId x) {
    const Multigraph& g = h_.graph;
    for (const Incidence inc : g.neighbors(x))
        if (g.meta(inc.other).label == Label::quad)
            throw InvariantViolation("quad " + vid(inc.other) + " survived the run at anchor " + vid(x));
    if (g.dirty_vertex_count() != 0)
        throw InvariantViolation(std::to_string(g.dirty_vertex_count()) + " vertices keep metadata after anchor " + vid(x));
    if (opt_.full_sweep) {
        ++stats_.sweeps;
        const auto dirty = g.dirty_vertices_sweep();
        if (!dirty.empty())
            throw InvariantViolation("sweep found dirty metadata on vertex " + vid(dirty.front()) + " after anchor " + vid(x));
    }
    retired_[x.value] = true;
}

void Engine::run() {
    Multigraph& g = h_.graph;
    for (const QuadGadget& gadget : h_.gadgets) {
        const VertexId f = gadget.quad;
        if (!g.alive(f) || g.meta(f).label != Label::quad) continue;
        VertexId x;
        for (const Incidence inc : g.neighbors(f))
            if (!is_corner_label(g.meta(inc.other).label) && (!x.valid() || inc.other < x)) x = inc.other;
        if (!x.valid()) throw InvariantViolation("quad " + vid(f) + " has no anchor candidate");
        ++stats_.anchors;
        x = handle_quads_at_vertex(x);
        if (g.alive(f) && g.meta(f).label == Label::quad)
            throw InvariantViolation("quad " + vid(f) + " survived the run at its own anchor");
        if (opt_.check_invariants) audit_after_anchor(x);
        if (opt_.after_anchor) opt_.after_anchor(g, x);
    }
    const auto& c = g.counters();
    stats_.contractions = c.contractions;
    stats_.loop_deletions = c.loop_deletions;
    stats_.reattach_work = c.reattach_work;
}

PGFPartition find_pgf_partition(const Planarization& p, const EngineOptions& options, RunStats* stats) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    std::vector<Node> order;
    std::vector<PEdge> old_edge;
    Preprocessed pre;
    if (options.locality_order) {
        pre = preprocess(p.bfs_renumbered(&order, &old_edge), &order);
    } else {
        pre = preprocess(p);
    }
    const auto t1 = Clock::now();
    Engine engine(pre.diamond, options);
    engine.run();
    const auto t2 = Clock::now();

    const OriginalGraph& local = pre.skeleton.original;
    if (engine.chord_log().size() != local.crossings.size())
        throw InvariantViolation("recorded " + std::to_string(engine.chord_log().size()) + " chords for " +
                                 std::to_string(local.crossings.size()) + " crossings");

    PGFPartition out;
    out.chord_log = engine.chord_log();
    std::size_t m = local.edges.size();
    if (options.locality_order) {
        // Translate through the planarization edge ids, which both numberings share.
        const OriginalGraph og = original_edges(p);
        m = og.edges.size();
        std::vector<OriginalEdgeId> owner(p.edge_capacity(), 0);
        for (OriginalEdgeId e = 0; e < m; ++e)
            for (const PEdge s : og.edges[e].segments)
                if (s != kNoPEdge) owner[s] = e;
        for (ChordRecord& r : out.chord_log) {
            r.edge = owner[old_edge[local.edges[r.edge].segments[0]]];
            r.quad = VertexId{order[r.quad.value]};
        }
    }
    std::vector<bool> in_forest(m, false);
    for (const ChordRecord& r : out.chord_log) {
        if (in_forest[r.edge]) throw InvariantViolation("edge " + std::to_string(r.edge) + " chosen twice");
        in_forest[r.edge] = true;
    }
    for (OriginalEdgeId e = 0; e < m; ++e) (in_forest[e] ? out.forest : out.planar).push_back(e);

    if (stats) {
        *stats = engine.stats();
        stats->kite_edges_added = pre.kite_edges_added;
        stats->triangulation_chords = pre.skeleton.triangulation_chords;
        stats->preprocess_seconds = std::chrono::duration<double>(t1 - t0).count();
        stats->engine_seconds = std::chrono::duration<double>(t2 - t1).count();
    }
    return out;
}

}  // namespace pgf
