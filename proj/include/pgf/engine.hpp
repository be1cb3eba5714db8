#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "pgf/drawing.hpp"
#include "pgf/multigraph.hpp"
#include "pgf/preprocess.hpp"

namespace pgf {

enum class CaseTag : std::uint8_t { case1a, case1b, case1c, case2 };

constexpr bool is_case1(CaseTag t) { return t != CaseTag::case2; }
const char* to_string(CaseTag t);

struct ChordRecord {
    VertexId quad;  // crossing node the gadget was built on
    int diagonal = 0;  // 0: z0z2 of the gadget's initial cycle, 1: z1z3
    OriginalEdgeId edge = 0;
    CaseTag taken = CaseTag::case2;
};

struct PGFPartition {
    std::vector<OriginalEdgeId> forest;  // sorted
    std::vector<OriginalEdgeId> planar;  // sorted
    std::vector<ChordRecord> chord_log;  // in contraction order
};

struct RunStats {
    std::size_t anchors = 0;
    std::size_t case1a = 0, case1b = 0, case1c = 0, case2 = 0;
    std::size_t worklist_pushes = 0;
    std::uint64_t contractions = 0;
    std::uint64_t loop_deletions = 0;
    std::uint64_t reattach_work = 0;
    /// Impossible-cell, adjacency and bookkeeping audits performed (checked mode).
    std::size_t audits = 0;
    /// Global metadata sweeps performed (checked mode).
    std::size_t sweeps = 0;
    std::size_t kite_edges_added = 0;
    std::size_t triangulation_chords = 0;
    double preprocess_seconds = 0;
    double engine_seconds = 0;
};

struct EngineOptions {
    /// Audit the classification against the graph, assert the cells of the
    /// case table that cannot occur, and check metadata after every anchor.
    /// Failures throw InvariantViolation.
    bool check_invariants = false;
    /// In checked mode, also scan every vertex after each anchor (O(V) each).
    bool full_sweep = false;
    /// Called after each completed anchor run with the final anchor.
    std::function<void(const Multigraph&, VertexId)> after_anchor;
    /// find_pgf_partition only: work on a breadth-first renumbering of the
    /// drawing, which keeps neighbours close in memory. Results are mapped
    /// back to the caller's ids.
    bool locality_order = true;
};

/// Runs the contraction procedure on one gadget graph. The graph is owned by
/// the caller and is consumed.
class Engine {
public:
    explicit Engine(HDiamond& h, EngineOptions options = {});

    /// Marks y's neighbours adjacent and registers its unseen quad neighbours.
    void initialize_at_vertex(VertexId y);
    /// `z` must be anchored at x.
    CaseTag classify(VertexId x, const FacialCycle& z);
    /// Records the chord {u, v} of f and merges u, v and the whole gadget of f.
    VertexId contract_through(VertexId u, VertexId v, VertexId f, CaseTag taken = CaseTag::case2);
    /// Destroys every quadrangle at x; returns the final merged anchor.
    VertexId handle_quads_at_vertex(VertexId x);
    void cleanup_at_vertex(VertexId y);

    /// Processes anchors until no quad vertex survives.
    void run();

    const std::vector<ChordRecord>& chord_log() const { return chords_; }
    const std::vector<VertexId>& worklist() const { return worklist_; }
    RunStats& stats() { return stats_; }
    const Multigraph& graph() const { return h_.graph; }

private:
    /// `z` is f's current facial cycle as returned by facial_cycle.
    VertexId merge_through(VertexId u, VertexId v, VertexId f, const FacialCycle& z, CaseTag taken);
    void audit_classification(VertexId x, const FacialCycle& z, VertexId f, CaseTag t);
    void audit_after_anchor(VertexId x);

    HDiamond& h_;
    EngineOptions opt_;
    std::vector<VertexId> worklist_;
    std::vector<ChordRecord> chords_;
    std::vector<bool> retired_;  // final anchors of finished runs (checked mode)
    RunStats stats_;
};

/// Preprocesses p and returns a PGF-partition of its underlying graph.
/// Edge ids refer to original_edges(p); chord records name crossing nodes
/// of p.
PGFPartition find_pgf_partition(const Planarization& p, const EngineOptions& options = {},
                                RunStats* stats = nullptr);

}  // namespace pgf
