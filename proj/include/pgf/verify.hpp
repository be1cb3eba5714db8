#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pgf/drawing.hpp"
#include "pgf/engine.hpp"
#include "pgf/preprocess.hpp"

namespace pgf {

/// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n = 0);
    std::size_t find(std::size_t x);
    /// False if a and b were already in one set.
    bool unite(std::size_t a, std::size_t b);

private:
    std::vector<std::size_t> parent_, size_;
};

struct VerificationReport {
    bool one_chord_per_crossing = false;
    bool forest_acyclic = false;
    bool no_adjacent_path = false;
    bool planar_part_planar = false;
    bool edge_bound_ok = false;
    /// One message per failed check, naming a counterexample.
    std::vector<std::string> failures;

    bool ok() const {
        return one_chord_per_crossing && forest_acyclic && no_adjacent_path && planar_part_planar && edge_bound_ok;
    }
    /// `check <name>: pass|FAIL` lines followed by the failure messages.
    std::string to_text() const;
};

/// Checks a partition of the edges of p's underlying graph using only the
/// drawing and the two edge sets. The 4n-8 bound is checked only when the
/// underlying graph is simple. Throws std::invalid_argument on edge ids
/// that are unknown or listed twice.
VerificationReport verify_partition(const Planarization& p, const PGFPartition& part);

/// Maps `(u, v)` endpoint pairs back to original edge ids. With parallel
/// edges, each occurrence consumes the next unused copy. Throws
/// std::invalid_argument on an unknown pair.
PGFPartition partition_from_pairs(const OriginalGraph& g, const std::vector<std::pair<Node, Node>>& forest,
                                  const std::vector<std::pair<Node, Node>>& planar);

inline constexpr std::size_t kOracleMaxQuads = 20;

/// Every choice of one diagonal per quadrangle whose chords are acyclic and
/// join no two endpoints of a skeleton edge. Each set is sorted.
/// Throws std::length_error for more than kOracleMaxQuads quadrangles.
std::vector<std::vector<OriginalEdgeId>> oracle_chord_sets(const Skeleton& s);

}  // namespace pgf
