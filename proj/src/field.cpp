#include "eikograph/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eikograph/errors.hpp"

namespace eikograph {

namespace {
constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
}

const char* to_string(FieldRole role) {
  switch (role) {
    case FieldRole::rhs_f:
      return "rhs_f";
    case FieldRole::solution_u:
      return "solution_u";
    case FieldRole::boundary_zeta:
      return "boundary_zeta";
  }
  return "unknown";
}

bool ScalarField::defined(Vertex v) const { return v < values.size() && !std::isnan(values[v]); }

ScalarField constant_field(const MetricGraph& g, double value, FieldRole role) {
  return {role, std::vector<double>(g.num_vertices(), value)};
}

ScalarField constant_boundary(const MetricGraph& g, double value) {
  ScalarField z{FieldRole::boundary_zeta, std::vector<double>(g.num_vertices(), kUndefined)};
  for (Vertex v : g.boundary()) z[v] = value;
  return z;
}

ScalarField field_from_coords(const MetricGraph& g,
                              const std::function<double(const std::vector<double>&)>& fn,
                              FieldRole role) {
  ScalarField f{role, std::vector<double>(g.num_vertices())};
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.coords(v).empty()) throw FieldError("vertex '" + g.id(v) + "' has no coordinates");
    f[v] = fn(g.coords(v));
  }
  if (role == FieldRole::boundary_zeta)
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (!g.is_boundary(v)) f[v] = kUndefined;
  return f;
}

ScalarField interpolate(const Refinement& r, const ScalarField& coarse) {
  ScalarField fine{coarse.role, std::vector<double>(r.graph.num_vertices())};
  for (Vertex v = 0; v < r.graph.num_vertices(); ++v) {
    const VertexOrigin& o = r.origin[v];
    fine[v] = o.a == o.b ? coarse[o.a] : (1.0 - o.t) * coarse[o.a] + o.t * coarse[o.b];
  }
  return fine;
}

void require_field(const MetricGraph& g, const ScalarField& f, FieldRole role) {
  if (f.role != role)
    throw FieldError(std::string("expected a field with role ") + to_string(role) + ", got " +
                     to_string(f.role));
  if (f.size() != g.num_vertices())
    throw FieldError("field has " + std::to_string(f.size()) + " values for " +
                     std::to_string(g.num_vertices()) + " vertices");
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    bool needed = role != FieldRole::boundary_zeta || g.is_boundary(v);
    if (needed && !f.defined(v))
      throw FieldError("missing " + std::string(to_string(role)) + " value at vertex '" +
                       g.id(v) + "'");
  }
}

EdgeCost edge_cost(const MetricGraph& g, const ScalarField& f, std::size_t e) {
  const Edge& ed = g.edge(e);
  if (!f.defined(ed.a) || !f.defined(ed.b))
    throw FieldError("missing field value on edge '" + g.id(ed.a) + "'-'" + g.id(ed.b) + "'");
  return {e, segment_cost(ed.length, f[ed.a], f[ed.b])};
}

double path_cost(const MetricGraph& g, const ScalarField& f, const Curve& c) {
  double total = 0.0;
  for (std::size_t i = 1; i < c.vertices.size(); ++i) {
    const Vertex a = c.vertices[i - 1];
    const Vertex b = c.vertices[i];
    double len = c.arc_length[i] - c.arc_length[i - 1];
    for (const Arc& arc : g.neighbors(a))
      if (arc.to == b) len = arc.length;
    total += segment_cost(len, f[a], f[b]);
  }
  return total;
}

double lipschitz_constant(const MetricGraph& g, const ScalarField& f) {
  double lip = 0.0;
  for (const Edge& e : g.edges()) {
    if (!f.defined(e.a) || !f.defined(e.b)) continue;
    lip = std::max(lip, std::abs(f[e.a] - f[e.b]) / e.length);
  }
  return lip;
}

FieldReport validate_field(const ScalarField& f, double threshold) {
  FieldReport r;
  r.threshold = threshold;
  for (Vertex v = 0; v < f.size(); ++v) {
    if (!f.defined(v)) {
      r.offending.push_back(v);
      continue;
    }
    r.min_value = std::min(r.min_value, f[v]);
    r.max_value = std::max(r.max_value, f[v]);
    if (f[v] < threshold || f[v] < 0.0) r.offending.push_back(v);
  }
  r.pass = r.offending.empty();
  return r;
}

}  // namespace eikograph
