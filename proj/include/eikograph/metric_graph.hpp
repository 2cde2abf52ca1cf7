#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace eikograph {

using Vertex = std::size_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Default comparison tolerances: |a - b| <= abs + rel * max(|a|, |b|).
inline constexpr double kAbsTol = 1e-12;
inline constexpr double kRelTol = 1e-9;

bool approx_equal(double a, double b, double abs_tol = kAbsTol, double rel_tol = kRelTol);

struct Edge {
  Vertex a = 0;
  Vertex b = 0;
  double length = 0.0;

  Vertex other(Vertex v) const { return v == a ? b : a; }
};

struct Arc {
  Vertex to = 0;
  double length = 0.0;
  std::size_t edge = 0;
};

/// Structured graph description accepted by build_graph().
struct GraphSpec {
  struct VertexSpec {
    std::string id;
    std::vector<double> coords;  // empty when absent
  };
  struct EdgeSpec {
    std::string a;
    std::string b;
    double length = 0.0;
  };

  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> boundary;
};

/// Finite connected weighted graph standing in for a compact length space.
///
/// Vertices are addressed by dense indices; the string ids are kept for I/O.
/// Immutable once built: every query is a const member or a free function.
class MetricGraph {
 public:
  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::string& id(Vertex v) const { return ids_.at(v); }
  std::optional<Vertex> find(const std::string& id) const;
  /// Throws ValidationError for unknown ids.
  Vertex vertex(const std::string& id) const;

  const std::vector<double>& coords(Vertex v) const { return coords_.at(v); }
  bool has_coords() const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Arc>& neighbors(Vertex v) const { return adjacency_.at(v); }

  bool is_boundary(Vertex v) const { return boundary_.at(v) != 0; }
  std::vector<Vertex> boundary() const;
  std::vector<Vertex> interior() const;
  bool has_boundary() const;

  double max_edge_length() const;
  double min_edge_length() const;

  GraphSpec to_spec() const;

 private:
  friend MetricGraph build_graph(const GraphSpec& spec);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<std::vector<double>> coords_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> adjacency_;
  std::vector<char> boundary_;
};

/// Validates and builds a graph. Parallel edges collapse to the shortest one.
/// Throws ValidationError (bad ids, lengths, self-loops) and ConnectivityError.
MetricGraph build_graph(const GraphSpec& spec);

/// Unit-speed vertex path: arc_length[i] is the length travelled up to vertices[i].
struct Curve {
  std::vector<Vertex> vertices;
  std::vector<double> arc_length;

  double length() const { return arc_length.empty() ? 0.0 : arc_length.back(); }
};

/// Builds the arc-length parametrisation of a vertex path, choosing the
/// (unique after deduplication) edge between consecutive vertices.
/// Throws GraphError if two consecutive vertices are not adjacent.
Curve make_curve(const MetricGraph& g, const std::vector<Vertex>& path);

/// True when consecutive vertices are adjacent and increments match edge lengths.
bool is_admissible(const MetricGraph& g, const Curve& c);

/// Shortest-path tree from one or more sources with initial potentials.
///
/// label[v] = min over sources s of (potential[s] + sum of weights on a path s->v),
/// where the weight of an edge is given by `weight(edge_index)`. Ties between
/// equal labels are broken towards the predecessor with the smaller id, so trees
/// and witness paths are reproducible.
struct ShortestPathTree {
  std::vector<double> label;
  std::vector<Vertex> parent;  // kNoVertex at roots and unreachable vertices
  std::vector<Vertex> root;    // originating source, kNoVertex if unreachable

  /// Path from the root of `v` to `v`.
  std::vector<Vertex> path_to(Vertex v) const;
};

struct Source {
  Vertex vertex = 0;
  double potential = 0.0;
};

using EdgeWeight = std::function<double(std::size_t edge)>;

/// Label-setting multi-source search. `allowed` (optional) restricts the
/// search to a vertex subset; `cutoff` stops once labels reach that value.
ShortestPathTree shortest_paths(const MetricGraph& g, const std::vector<Source>& sources,
                                const EdgeWeight& weight,
                                const std::vector<char>* allowed = nullptr,
                                double cutoff = kInfinity);

/// Edge lengths as weights.
ShortestPathTree length_tree(const MetricGraph& g, Vertex source);

struct DistanceWitness {
  double distance = 0.0;
  Curve witness;
};

/// Intrinsic (shortest-path) distance with a realising curve.
DistanceWitness intrinsic_distance(const MetricGraph& g, Vertex x, Vertex y);

/// Dense all-pairs intrinsic distances (one search per vertex).
std::vector<std::vector<double>> all_pairs_distances(const MetricGraph& g);

struct BallSet {
  Vertex center = 0;
  double radius = 0.0;
  std::vector<Vertex> members;     // sorted by (distance, index)
  std::vector<double> distances;   // parallel to members
};

/// Open intrinsic ball {v : d(center, v) < radius}. Requires radius > 0.
BallSet ball(const MetricGraph& g, Vertex center, double radius);

/// Where each vertex of a refined graph came from: the point at fraction `t`
/// along coarse edge (a, b). Original vertices have a == b and t == 0.
struct VertexOrigin {
  Vertex a = 0;
  Vertex b = 0;
  double t = 0.0;
};

struct Refinement {
  MetricGraph graph;
  std::vector<VertexOrigin> origin;  // indexed by fine vertex
};

/// Splits every edge into ceil(length / h_max) equal parts. Original vertices
/// keep their ids and indices; new vertex ids are "<a>~<b>:<k>".
Refinement refine_mapped(const MetricGraph& g, double h_max);
MetricGraph refine(const MetricGraph& g, double h_max);

/// Point set with a chord metric and the pairs that count as edges.
struct ChordInput {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;  // optional, per point
  std::function<double(std::size_t, std::size_t)> distance;
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;
  std::vector<std::string> boundary;
};

/// Chord metric read from a dense symmetric table.
std::function<double(std::size_t, std::size_t)> table_distance(
    std::vector<std::vector<double>> table);
/// Euclidean chord metric on the given coordinates.
std::function<double(std::size_t, std::size_t)> euclidean_distance(
    std::vector<std::vector<double>> coords);

/// Statistics over sampled pairs; purely heuristic evidence for d~ -> 0 as d -> 0.
struct ConsistencyProbe {
  std::size_t pairs_sampled = 0;
  std::size_t triples_sampled = 0;
  double max_chord_excess = 0.0;   // max of d - d~ over pairs (<= 0 expected)
  bool chord_below_intrinsic = true;
  double max_ratio = 0.0;          // max d~/d over all sampled pairs
  double max_ratio_small = 0.0;    // max d~/d over the closest decile of pairs
  double small_chord_cutoff = 0.0; // d at the decile boundary
  bool heuristic = true;
};

struct InducedMetric {
  MetricGraph graph;
  ConsistencyProbe probe;
};

/// Builds the graph whose edges carry the chord length d(x, y), so that its
/// path metric is the discrete intrinsic metric. Validates the metric axioms
/// on sampled triples (MetricError) and connectivity (ConnectivityError).
InducedMetric induce_intrinsic(const ChordInput& input, std::uint64_t seed = 0x5eed,
                               std::size_t max_triples = 20000,
                               std::size_t max_sources = 32);

}  // namespace eikograph
