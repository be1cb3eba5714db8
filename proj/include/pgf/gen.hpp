#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pgf/drawing.hpp"

namespace pgf {

/// SplitMix64 (Steele, Lea, Flood). Pinned so generated files are identical
/// on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, bound) by rejection; bound > 0.
    std::uint64_t uniform(std::uint64_t bound);

private:
    std::uint64_t state_;
};

struct GenConfig {
    std::size_t n = 10;
    /// Share of the initially crossable edges to cross, in [0, 1].
    double crossing_fraction = 0.0;
    std::uint64_t seed = 1;
    /// After crossing, share of the uncrossed edges outside a spanning tree
    /// to delete. Leaves faces that need augmentation and triangulation.
    double drop_fraction = 0.0;
};

/// Maximal planar drawing on n vertices: a triangle, then n-3 stellations of
/// uniformly chosen faces.
Planarization gen_triangulation(std::size_t n, std::uint64_t seed);

/// Starts from gen_triangulation and repeatedly draws w1w2 across an edge uv
/// whose two faces are uncrossed triangles uvw1, uvw2 with w1w2 not yet an
/// edge. Crossing nodes get ids n, n+1, ...
Planarization gen_one_planar(const GenConfig& cfg);

struct Fixture {
    std::string name;
    std::string text;  // .1pl
    /// Synthetic fixtures whose underlying graph has parallel edges or loops.
    bool multigraph = false;
    std::string description;
};

/// k5, fig1b, fig1e, bigon, kite_star, kite_full.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);
Planarization load_fixture(const std::string& name);

}  // namespace pgf
