#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eikograph/checks.hpp"
#include "eikograph/field.hpp"
#include "eikograph/fixtures.hpp"
#include "eikograph/metric_graph.hpp"

namespace eikograph {

/// A candidate subsolution u and supersolution v of |grad u| = f.
struct ComparisonInstance {
  const MetricGraph& graph;
  ScalarField f;
  ScalarField u_sub;
  ScalarField v_super;
  double band = -1.0;        // boundary band radius; negative selects 2 h_max
  double band_tol = 1e-12;   // allowed max(u - v) inside the band
  double tol = 1e-12;        // allowed u - v everywhere
  double monge_tol = -1.0;   // sub/super check tolerance; negative selects the default
};

enum class Hypothesis { none, subsolution, supersolution, positivity, boundary_band };

const char* to_string(Hypothesis h);

struct ComparisonReport {
  Hypothesis failed = Hypothesis::none;  // first hypothesis that failed, in check order
  std::string detail;
  CheckReport sub;     // check_monge(u, sub mode)
  CheckReport super;   // check_monge(v, super mode)
  double band_radius = 0.0;
  std::size_t band_size = 0;
  double band_excess = 0.0;       // max(u - v) over the band
  double max_excess = 0.0;        // max(u - v) over all vertices
  Vertex violating = kNoVertex;   // argmax of u - v when the conclusion fails
  bool conclusion = false;        // u <= v + tol everywhere
  bool hypotheses_hold() const { return failed == Hypothesis::none; }
  /// Hypotheses hold and the conclusion holds.
  bool pass() const { return hypotheses_hold() && conclusion; }
};

/// Checks the hypotheses in order (u sub, v super, inf f > 0, boundary band),
/// then u <= v + tol. Report based; fields must be total.
ComparisonReport compare(const ComparisonInstance& inst);

struct SuiteRow {
  std::string fixture;
  std::size_t level = 0;
  std::string check;  // csub, csuper, monge, regularity
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;
  std::vector<double> monge_by_level;
  std::vector<double> h_by_level;
  bool monge_nonincreasing = true;
  std::uint64_t seed = 0;
  bool pass = false;
};

/// Solves on level 0 (the fixture) and on refine(fixture, h_max / 2^k) for
/// k < levels, with f and zeta interpolated from the fixture, and runs the four
/// solution checks at each level.
SuiteReport equivalence_suite(const Fixture& fix, const ScalarField& f, const ScalarField& zeta,
                              std::size_t levels, std::uint64_t seed = 0x5eed);

}  // namespace eikograph
