#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eikograph/field.hpp"
#include "eikograph/metric_graph.hpp"

namespace eikograph {

inline constexpr double kDefaultPositivity = 1e-9;

/// |grad u| = f in the interior, u = zeta on the boundary.
struct DirichletProblem {
  const MetricGraph& graph;
  ScalarField f;     // rhs_f
  ScalarField zeta;  // boundary_zeta
  double positivity_threshold = kDefaultPositivity;
};

/// Discrete optimal-control value u(x) = min_y { zeta(y) + cost-distance(x, y) }.
struct ValueFunction {
  ScalarField u;
  std::vector<Vertex> exit_vertex;  // boundary vertex whose data realises u(x)
  std::vector<Vertex> next_hop;     // neighbour on the optimal route, kNoVertex at exits
  std::vector<char> attained;       // boundary vertices: u(y) == zeta(y)

  /// Optimal route from x to its exit vertex.
  Curve route(const MetricGraph& g, Vertex x) const;
};

/// Multi-source label-setting pass seeded with the boundary data.
/// Throws ProblemError for an empty boundary, FieldError if f fails the
/// positivity threshold or any field is incomplete.
ValueFunction solve_dirichlet(const DirichletProblem& p);

/// Worst violation of u(x) = min_y (cost(x, y) + u(y)) over interior vertices
/// and of u(y) = min(zeta(y), ...) over boundary vertices.
double bellman_defect(const DirichletProblem& p, const ScalarField& u);

struct PairBound {
  Vertex x = kNoVertex;  // interior vertex
  Vertex y = kNoVertex;  // boundary vertex
  double excess = 0.0;   // lhs - rhs of the bound; <= 0 means satisfied
};

struct BoundaryCertificate {
  double lipschitz = 0.0;  // of zeta w.r.t. intrinsic distance between boundary vertices
  double inf_f = 0.0;
  double sup_f = 0.0;

  bool strong_condition = false;  // |zeta(x) - zeta(y)| <= d~(x, y) inf f on the boundary
  std::pair<Vertex, Vertex> strong_tight{kNoVertex, kNoVertex};
  bool curve_condition = false;  // zeta(x) - zeta(y) <= cost-distance(x, y) on the boundary
  std::pair<Vertex, Vertex> curve_tight{kNoVertex, kNoVertex};

  /// u(x) - zeta(y) <= d~(x, y) max{L, sup f} for all interior x, boundary y.
  bool one_sided_bound = false;
  PairBound one_sided_worst;
  /// |u(x) - zeta(y)| <= d~(x, y) sup f; only asserted when strong_condition holds.
  bool two_sided_checked = false;
  bool two_sided_bound = false;
  PairBound two_sided_worst;

  std::vector<Vertex> unattained;  // boundary vertices with u(y) < zeta(y)
};

BoundaryCertificate check_boundary_consistency(const DirichletProblem& p, const ValueFunction& u);

/// Empirical modulus sigma such that any x, y in the subset are joined inside
/// the subset by a path of length <= sigma(d~(x, y)). Heuristic: it is a
/// nondecreasing step fit through the sampled pairs, not a certificate.
struct QuasiconvexityModulus {
  std::vector<double> t;      // breakpoints: distinct intrinsic distances, ascending
  std::vector<double> sigma;  // running max of in-subset path length up to t
  double max_ratio = 1.0;     // max inner length / d~ over pairs
  std::pair<Vertex, Vertex> worst{kNoVertex, kNoVertex};
  bool heuristic = true;

  double operator()(double dist) const;
};

/// `subset` flags the vertices of the closed region. Throws ConnectivityError
/// when the region is not connected through its own vertices.
QuasiconvexityModulus quasiconvexity_probe(const MetricGraph& g, const std::vector<char>& subset);

}  // namespace eikograph
