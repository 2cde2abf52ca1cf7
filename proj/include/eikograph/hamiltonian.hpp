#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eikograph/checks.hpp"
#include "eikograph/eikonal.hpp"
#include "eikograph/field.hpp"
#include "eikograph/metric_graph.hpp"

namespace eikograph {

enum class RhoMonotonicity { independent, nondecreasing, strictly_increasing };

/// H(x, rho, p) with the structural metadata the reduction relies on.
struct HamiltonianSpec {
  std::string name;
  std::function<double(Vertex, double, double)> evaluate;
  double lambda0 = 1.0;  // p -> H - lambda0 p is declared nondecreasing
  RhoMonotonicity rho_monotonicity = RhoMonotonicity::independent;
  double p_max = 1048576.0;  // coercivity is only probed up to here

  double operator()(Vertex x, double rho, double p) const;
};

struct HamiltonianReport {
  bool pass = true;
  bool monotone = true;
  bool coercive = true;
  bool rho_consistent = true;
  std::size_t evaluations = 0;
  /// First failing sample; empty when pass.
  std::string counterexample;
  Vertex x = kNoVertex;
  double rho = 0.0;
  double p_low = 0.0;
  double p_high = 0.0;
  double min_at_p_max = kInfinity;
};

/// Sampled checks: p -> H - lambda0 p nondecreasing on a p-grid up to p_max,
/// min H(x, rho, p_max) > 0, and the declared rho-monotonicity.
/// Throws HamiltonianError if the evaluator throws or returns NaN.
HamiltonianReport validate_hamiltonian(const HamiltonianSpec& h, const MetricGraph& g,
                                       double rho_low, double rho_high, std::size_t samples);

struct Reduction {
  double h = 0.0;
  double residual = 0.0;   // |H(x, rho, h)|
  bool consistent = true;  // false when H(x, rho, 0) > tol: no solution can pass through rho
};

/// h = inf{p >= 0 : H(x, rho, p) > 0}, by doubling a bracket from 1 (capped at
/// 2^40, else CoercivityError) and bisecting until |H| <= tol.
Reduction reduce_h(const HamiltonianSpec& h, Vertex x, double rho, double tol);

struct ReductionField {
  ScalarField h{FieldRole::rhs_f, {}};
  std::vector<double> residual;
  std::vector<char> consistent;
};

ReductionField reduce_field(const HamiltonianSpec& h, const ScalarField& rho, double tol);

struct GeneralOptions {
  double tol = 1e-8;           // Picard stop: max vertex change
  std::size_t max_iter = 100;
  double bisection_tol = 1e-12;
};

struct GeneralSolution {
  ValueFunction value;
  ReductionField reduction;       // h evaluated at the returned u
  std::size_t iterations = 0;     // number of eikonal solves
  std::vector<double> history;    // max vertex change per Picard step
  CheckReport monge;              // |sub_slope(u) - h| at interior vertices
};

/// Eikonal solves with f = h(u), iterated (undamped Picard) when H depends on rho.
/// Throws ConvergenceError with the change history after max_iter steps.
GeneralSolution solve_general(const MetricGraph& g, const HamiltonianSpec& h,
                              const ScalarField& zeta, const GeneralOptions& opts = {});

/// Builtins: "linear[:c]" p-c, "quadratic[:c]" p^2-c^2, "affine-rho[:c]" p+rho-c,
/// "ex1" 1-|p-2|+max(p-3,0)^2, "ex2" 1-|p|+max(p-3,0)^2, "plateau" (p, 1, p-1).
/// Throws InputError for unknown names.
HamiltonianSpec builtin_hamiltonian(const std::string& name);
bool is_builtin_hamiltonian(const std::string& name);

/// Expression in p, rho, x, y (vertex coordinates, 0 when absent).
HamiltonianSpec expression_hamiltonian(const std::string& text, const MetricGraph& g,
                                       double lambda0, RhoMonotonicity rho);

/// One of the three non-monotone examples on the interval [-1, 1].
struct Counterexample {
  std::string name;
  HamiltonianSpec hamiltonian;  // equation is hamiltonian(...) == 0
  ScalarField u;
  std::string check;            // "monge" or "regularity": where the defect shows
  double expected_residual_at_origin = 0.0;
};

struct CounterexampleSuite {
  MetricGraph graph;
  Vertex origin = 0;
  std::vector<Counterexample> cases;
};

CounterexampleSuite counterexample_suite(std::size_t segments = 200);

struct CounterexampleVerdict {
  std::string name;
  bool hamiltonian_rejected = false;
  std::string rejection;
  double monge_max_residual = 0.0;
  double monge_residual_at_origin = 0.0;
  double regularity_residual_at_origin = 0.0;
  bool c_subsolution_for_unit_f = false;
  bool as_expected = false;
};

std::vector<CounterexampleVerdict> evaluate_counterexamples(const CounterexampleSuite& suite);

}  // namespace eikograph
