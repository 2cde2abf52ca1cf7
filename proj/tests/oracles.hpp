#pragma once

// Reference computations kept independent of the library's search code.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "eikograph/field.hpp"
#include "eikograph/metric_graph.hpp"

namespace oracle {

using eikograph::MetricGraph;
using eikograph::ScalarField;
using eikograph::Vertex;

/// Value iteration u <- min(zeta, min_y cost(x, y) + u(y)) until nothing changes.
inline std::vector<double> bellman_ford(const MetricGraph& g, const ScalarField& f,
                                        const ScalarField& zeta) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(g.num_vertices(), inf);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (g.is_boundary(v)) u[v] = zeta[v];
  for (std::size_t round = 0; round <= g.num_vertices(); ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      const double cost = e.length * ((f[e.a] + f[e.b]) * 0.5);
      if (u[e.b] + cost < u[e.a]) {
        u[e.a] = u[e.b] + cost;
        changed = true;
      }
      if (u[e.a] + cost < u[e.b]) {
        u[e.b] = u[e.a] + cost;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return u;
}

/// Floyd-Warshall over edge lengths.
inline std::vector<std::vector<double>> floyd_warshall(const MetricGraph& g) {
  const std::size_t n = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : g.edges()) {
    d[e.a][e.b] = std::min(d[e.a][e.b], e.length);
    d[e.b][e.a] = std::min(d[e.b][e.a], e.length);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Uniform values in [lo, hi] on every vertex, from a fixed seed.
inline ScalarField random_field(const MetricGraph& g, double lo, double hi, std::uint64_t seed,
                                eikograph::FieldRole role) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  ScalarField f{role, std::vector<double>(g.num_vertices())};
  for (auto& v : f.values) v = dist(rng);
  if (role == eikograph::FieldRole::boundary_zeta)
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (!g.is_boundary(v)) f[v] = std::nan("");
  return f;
}

}  // namespace oracle
