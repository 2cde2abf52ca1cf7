#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "eikograph/metric_graph.hpp"

namespace eikograph {

enum class FieldRole { rhs_f, solution_u, boundary_zeta };

const char* to_string(FieldRole role);

/// Vertex values of a piecewise-linear field. Undefined entries are NaN;
/// only boundary data may leave interior vertices undefined.
struct ScalarField {
  FieldRole role = FieldRole::solution_u;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](Vertex v) const { return values[v]; }
  double& operator[](Vertex v) { return values[v]; }
  bool defined(Vertex v) const;
};

ScalarField constant_field(const MetricGraph& g, double value, FieldRole role);
/// Boundary data equal to `value` on every boundary vertex, undefined elsewhere.
ScalarField constant_boundary(const MetricGraph& g, double value);
/// Evaluates `fn(coords)` at every vertex. Throws FieldError if coords are missing.
ScalarField field_from_coords(const MetricGraph& g,
                              const std::function<double(const std::vector<double>&)>& fn,
                              FieldRole role);
/// Linear interpolation of a coarse field onto a refinement of its graph.
ScalarField interpolate(const Refinement& r, const ScalarField& coarse);

/// Throws FieldError unless `f` has one value per vertex of `g` and is
/// defined wherever its role requires.
void require_field(const MetricGraph& g, const ScalarField& f, FieldRole role);

struct EdgeCost {
  std::size_t edge = 0;
  double cost = 0.0;
};

/// Trapezoid value of the integral of f along a segment, exact for linear f.
inline double segment_cost(double length, double fa, double fb) {
  return length * ((fa + fb) * 0.5);
}

/// Integral of the piecewise-linear rhs along edge `e`.
EdgeCost edge_cost(const MetricGraph& g, const ScalarField& f, std::size_t e);

/// Sum of edge costs along a curve.
double path_cost(const MetricGraph& g, const ScalarField& f, const Curve& c);

/// Largest |f(a) - f(b)| / length over edges: the Lipschitz constant of the interpolant.
double lipschitz_constant(const MetricGraph& g, const ScalarField& f);

struct FieldReport {
  bool pass = true;
  double threshold = 0.0;
  double min_value = kInfinity;
  double max_value = -kInfinity;
  std::vector<Vertex> offending;  // below threshold or undefined
};

/// Lists vertices with f < threshold. Threshold 0 accepts any f >= 0.
FieldReport validate_field(const ScalarField& f, double threshold);

}  // namespace eikograph
