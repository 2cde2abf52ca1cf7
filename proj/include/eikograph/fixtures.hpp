#pragma once

#include <cstdint>
#include <string>

#include "eikograph/metric_graph.hpp"

namespace eikograph {

/// Deterministic test graph with its generator parameters.
struct Fixture {
  std::string name;
  std::string parameters;
  MetricGraph graph;
};

/// [-1, 1] in `segments` equal pieces. Ids are the coordinates ("-1", "-0.5", "0", ...).
/// Boundary: both ends.
Fixture interval_fixture(std::size_t segments);

/// Regular polygon inscribed in the unit circle, chord-length edges, no boundary.
Fixture circle_fixture(std::size_t points);

/// n x n lattice on the unit square, 4- or 8-connected; boundary is the outer ring.
/// Ids are "i_j".
Fixture grid_fixture(std::size_t n, int connectivity = 4);

/// Complete binary tree of the given depth with unit edges; boundary is the leaves.
Fixture binary_tree_fixture(std::size_t depth);

/// Level-k Sierpinski gasket graph: unit outer side, 3^(k+1) edges,
/// (3^(k+1) + 3) / 2 vertices, standard planar embedding, boundary = outer corners.
Fixture gasket_fixture(std::size_t level);

/// Connected random graph: random spanning tree plus `extra_edges` chords,
/// lengths uniform in [0.1, 1], `boundary_count` boundary vertices.
Fixture random_fixture(std::size_t vertices, std::size_t extra_edges, std::size_t boundary_count,
                       std::uint64_t seed);

/// Dispatch by name: interval, circle, grid, binary_tree, gasket.
/// `size` is segments / points / side / depth / level; throws InputError on bad names.
Fixture make_fixture(const std::string& name, std::size_t size, int connectivity = 4);

}  // namespace eikograph
