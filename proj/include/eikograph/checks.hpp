#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eikograph/field.hpp"
#include "eikograph/metric_graph.hpp"

namespace eikograph {

/// One-hop discrete slopes at a vertex, using incident edge lengths as distances.
struct SlopeTriple {
  Vertex vertex = 0;
  double slope = 0.0;        // max |u(y) - u(x)| / d
  double super_slope = 0.0;  // max [u(y) - u(x)]_+ / d
  double sub_slope = 0.0;    // max [u(y) - u(x)]_- / d
};

/// Throws GraphError at an isolated vertex.
SlopeTriple slopes(const MetricGraph& g, const ScalarField& u, Vertex x);

/// Per-item residuals of one check. Invariant: pass <=> every non-excluded
/// residual <= tolerance.
struct CheckReport {
  struct Item {
    std::string id;
    double residual = 0.0;
    bool pass = true;
    bool excluded = false;  // reported but not counted (e.g. next to the boundary)
  };

  std::string name;
  double tolerance = 0.0;
  std::vector<Item> items;
  bool pass = true;
  std::optional<std::size_t> worst;  // index into items, over counted items

  double max_residual() const;
  std::size_t failures() const;
  const Item* find(const std::string& id) const;
};

enum class MongeMode { both, sub, super };

/// Default slope tolerance Lip(f) * h_max + 1e-9.
double default_slope_tolerance(const MetricGraph& g, const ScalarField& f);

/// Monge residual at interior vertices: |sub_slope - f| (both), [sub_slope - f]_+
/// (sub) or [f - sub_slope]_+ (super). A negative tol selects the default.
CheckReport check_monge(const MetricGraph& g, const ScalarField& u, const ScalarField& f,
                        double tol = -1.0, MongeMode mode = MongeMode::both);

/// H(x, rho, p) evaluated as H(vertex, u(vertex), sub_slope).
using HamiltonianFn = std::function<double(Vertex, double, double)>;

/// Monge residual for a general equation H(x, u, |grad^- u|) = 0, at interior vertices.
CheckReport check_monge(const MetricGraph& g, const ScalarField& u, const HamiltonianFn& h,
                        double tol, MongeMode mode = MongeMode::both);

/// Sampled evidence for |u(x) - u(y)| <= d~(x, y) sup_{B_2r} f for x, y in B_r(x0).
struct LipschitzCertificate {
  double radius = 0.0;
  std::uint64_t seed = 0;
  std::size_t centers = 0;
  std::size_t pairs = 0;
  double worst_excess = 0.0;  // max of lhs - rhs; <= tolerance when it holds
  bool pass = true;
};

struct CSubsolutionResult {
  CheckReport report;  // per oriented edge "a>b": [u(a) - (u(b) + cost)]_+
  LipschitzCertificate lipschitz;
};

/// Curve inequality along every edge in both orientations.
CSubsolutionResult check_c_subsolution(const MetricGraph& g, const ScalarField& u,
                                       const ScalarField& f, double tol = 0.0,
                                       std::uint64_t seed = 0x5eed,
                                       std::size_t sample_centers = 16);

struct CSupersolutionResult {
  CheckReport report;              // per interior vertex: min_y(cost + u(y)) - u(x)
  std::vector<Vertex> descent;     // argmin neighbour per vertex, kNoVertex on the boundary
};

/// Local c-supersolution at one-hop radius: some neighbour y with
/// u(x) >= cost(x, y) + u(y) - eps. A negative eps selects 1e-9 + Lip(f) h_max.
CSupersolutionResult check_c_supersolution(const MetricGraph& g, const ScalarField& u,
                                           const ScalarField& f, double eps = -1.0);

/// Greedy concatenation of argmin neighbours from `start` until the boundary,
/// a revisit, or no descent remains.
Curve descent_curve(const MetricGraph& g, const CSupersolutionResult& r, Vertex start);

/// slope - sub_slope at interior vertices; vertices adjacent to the boundary are
/// reported but excluded. A negative tol selects 1e-9.
CheckReport check_regularity(const MetricGraph& g, const ScalarField& u, double tol = -1.0);

}  // namespace eikograph
