#include <gtest/gtest.h>

#include <cmath>

#include "eikograph/errors.hpp"
#include "eikograph/fixtures.hpp"
#include "eikograph/hamiltonian.hpp"

using namespace eikograph;

namespace {

const MetricGraph& interval() {
  static const MetricGraph g = interval_fixture(200).graph;
  return g;
}

HamiltonianSpec custom(std::function<double(Vertex, double, double)> fn, double lambda0 = 1.0,
                       RhoMonotonicity rho = RhoMonotonicity::independent) {
  HamiltonianSpec h;
  h.name = "custom";
  h.evaluate = std::move(fn);
  h.lambda0 = lambda0;
  h.rho_monotonicity = rho;
  return h;
}

ValueFunction eikonal(const MetricGraph& g, const ScalarField& f) {
  return solve_dirichlet(DirichletProblem{g, f, constant_boundary(g, 0.0), 0.0});
}

}  // namespace

TEST(ValidateHamiltonian, LinearPasses) {
  const HamiltonianReport r = validate_hamiltonian(builtin_hamiltonian("linear:1"), interval(), -1, 1, 5);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.counterexample.empty());
  EXPECT_GT(r.evaluations, 0u);
}

TEST(ValidateHamiltonian, QuadraticAndAffineRhoPass) {
  EXPECT_TRUE(validate_hamiltonian(builtin_hamiltonian("quadratic"), interval(), -1, 1, 5).pass);
  EXPECT_TRUE(validate_hamiltonian(builtin_hamiltonian("affine-rho"), interval(), -1, 1, 5).pass);
}

TEST(ValidateHamiltonian, Ex1FailsMonotonicityPastTwo) {
  const HamiltonianReport r = validate_hamiltonian(builtin_hamiltonian("ex1"), interval(), -1, 1, 3);
  EXPECT_FALSE(r.pass);
  EXPECT_FALSE(r.monotone);
  EXPECT_TRUE(r.coercive);
  EXPECT_GE(r.p_low, 2.0);
  EXPECT_LE(r.p_high, 3.5);
  EXPECT_FALSE(r.counterexample.empty());
}

TEST(ValidateHamiltonian, Ex2FailsMonotonicityAtZero) {
  const HamiltonianReport r = validate_hamiltonian(builtin_hamiltonian("ex2"), interval(), -1, 1, 3);
  EXPECT_FALSE(r.monotone);
  EXPECT_EQ(r.p_low, 0.0);
}

TEST(ValidateHamiltonian, PlateauFailsOnThePlateau) {
  const HamiltonianReport r = validate_hamiltonian(builtin_hamiltonian("plateau"), interval(), -1, 1, 3);
  EXPECT_FALSE(r.monotone);
  EXPECT_GE(r.p_low, 1.0);
  EXPECT_LT(r.p_high, 2.0 + 1e-12);
}

TEST(ValidateHamiltonian, NonCoerciveFails) {
  const HamiltonianReport r =
      validate_hamiltonian(custom([](Vertex, double, double p) { return std::min(p, 1.0) - 2.0; }, 0.0),
                           interval(), 0, 0, 2);
  EXPECT_FALSE(r.coercive);
  EXPECT_LT(r.min_at_p_max, 0.0);
}

TEST(ValidateHamiltonian, WrongRhoDeclarationFails) {
  const HamiltonianReport r = validate_hamiltonian(
      custom([](Vertex, double, double p) { return p - 1.0; }, 1.0, RhoMonotonicity::strictly_increasing),
      interval(), -1, 1, 3);
  EXPECT_FALSE(r.rho_consistent);
  EXPECT_FALSE(r.pass);
}

TEST(ValidateHamiltonian, EvaluatorFailuresThrow) {
  EXPECT_THROW(validate_hamiltonian(
                   custom([](Vertex, double, double) -> double { throw std::runtime_error("boom"); }),
                   interval(), 0, 1, 2),
               HamiltonianError);
  EXPECT_THROW(validate_hamiltonian(custom([](Vertex, double, double) { return std::nan(""); }),
                                    interval(), 0, 1, 2),
               HamiltonianError);
  EXPECT_THROW(validate_hamiltonian(builtin_hamiltonian("linear"), interval(), 0, 1, 0), ValidationError);
}

TEST(ReduceH, LinearRoot) {
  const Reduction r = reduce_h(builtin_hamiltonian("linear:1"), 0, 0.0, 1e-12);
  EXPECT_EQ(r.h, 1.0);
  EXPECT_TRUE(r.consistent);
}

TEST(ReduceH, QuadraticRoot) {
  const Reduction r = reduce_h(builtin_hamiltonian("quadratic:2"), 0, 0.0, 1e-12);
  EXPECT_NEAR(r.h, 2.0, 1e-9);
  EXPECT_LE(r.residual, 1e-12);
  EXPECT_EQ(reduce_h(builtin_hamiltonian("quadratic:1"), 0, 0.0, 1e-12).h, 1.0);
}

TEST(ReduceH, AffineRho) {
  const HamiltonianSpec h = builtin_hamiltonian("affine-rho:1");
  EXPECT_EQ(reduce_h(h, 0, 0.0, 1e-12).h, 1.0);
  const Reduction at_one = reduce_h(h, 0, 1.0, 1e-12);
  EXPECT_EQ(at_one.h, 0.0);
  EXPECT_TRUE(at_one.consistent);
  const Reduction above = reduce_h(h, 0, 1.5, 1e-12);
  EXPECT_EQ(above.h, 0.0);
  EXPECT_FALSE(above.consistent);
}

TEST(ReduceH, JumpReturnsInfimum) {
  const HamiltonianSpec h = custom([](Vertex, double, double p) { return p < 0.75 ? -1.0 : 1.0; });
  EXPECT_NEAR(reduce_h(h, 0, 0.0, 1e-12).h, 0.75, 1e-12);
}

TEST(ReduceH, CapThrowsCoercivityError) {
  EXPECT_THROW(reduce_h(custom([](Vertex, double, double) { return -1.0; }), 0, 0.0, 1e-12), CoercivityError);
  EXPECT_THROW(reduce_h(builtin_hamiltonian("linear"), 0, 0.0, 0.0), ValidationError);
}

TEST(ReduceHProperty, NonincreasingInRho) {
  const HamiltonianSpec h = custom([](Vertex, double rho, double p) { return p * p + rho * rho * rho - 2.0; },
                                   1e-3, RhoMonotonicity::nondecreasing);
  double prev = kInfinity;
  for (double rho = -1.0; rho <= 1.3; rho += 0.05) {
    const double v = reduce_h(h, 0, rho, 1e-12).h;
    EXPECT_LE(v, prev + 1e-12);
    prev = v;
  }
}

TEST(SolveGeneral, LinearIsTheEikonalSolve) {
  const MetricGraph& g = interval();
  const GeneralSolution s = solve_general(g, builtin_hamiltonian("linear:1"), constant_boundary(g, 0.0));
  const ValueFunction e = eikonal(g, constant_field(g, 1.0, FieldRole::rhs_f));
  EXPECT_EQ(s.iterations, 1u);
  EXPECT_TRUE(s.history.empty());
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    EXPECT_EQ(s.value.u[x], e.u[x]);
    EXPECT_NEAR(s.value.u[x], 1.0 - std::abs(g.coords(x)[0]), 1e-12);
  }
  EXPECT_TRUE(s.monge.pass);
}

TEST(SolveGeneral, QuadraticMatchesUnitRhs) {
  const MetricGraph& g = interval();
  const GeneralSolution s = solve_general(g, builtin_hamiltonian("quadratic:1"), constant_boundary(g, 0.0));
  const ValueFunction e = eikonal(g, constant_field(g, 1.0, FieldRole::rhs_f));
  for (Vertex x = 0; x < g.num_vertices(); ++x) EXPECT_NEAR(s.value.u[x], e.u[x], 1e-9);
}

TEST(SolveGeneral, RhoIndependentEqualsSolveWithReducedRhs) {
  const MetricGraph g = grid_fixture(12).graph;
  const HamiltonianSpec h = expression_hamiltonian("p^2 - (1 + x)^2", g, 1e-3, RhoMonotonicity::independent);
  const GeneralSolution s = solve_general(g, h, constant_boundary(g, 0.0));
  const ValueFunction e = eikonal(g, s.reduction.h);
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    EXPECT_EQ(s.value.u[x], e.u[x]);
    EXPECT_NEAR(s.reduction.h[x], 1.0 + g.coords(x)[0], 1e-9);
  }
  EXPECT_TRUE(s.monge.pass);
}

TEST(SolveGeneral, AffineRhoConvergesToClosedForm) {
  const MetricGraph g = interval_fixture(2000).graph;
  const GeneralSolution s = solve_general(g, builtin_hamiltonian("affine-rho:1"), constant_boundary(g, 0.0));
  EXPECT_LE(s.history.size(), 100u);
  EXPECT_LE(s.history.back(), 1e-8);
  double err = 0.0;
  for (Vertex x = 0; x < g.num_vertices(); ++x)
    err = std::max(err, std::abs(s.value.u[x] - (1.0 - std::exp(-(1.0 - std::abs(g.coords(x)[0]))))));
  EXPECT_LE(err, 1e-6);
  for (Vertex x = 0; x < g.num_vertices(); ++x) EXPECT_LE(s.reduction.residual[x], 1e-12);
  EXPECT_TRUE(s.monge.pass);
}

TEST(SolveGeneral, PicardIteratesBracketTheFixedPoint) {
  // The reduced rhs 1 - u is antitone in u, so the iteration alternates:
  // even iterates decrease, odd iterates increase, odd stays below even.
  const MetricGraph g = interval_fixture(400).graph;
  const HamiltonianSpec h = builtin_hamiltonian("affine-rho:1");
  std::vector<ScalarField> it;
  ScalarField rho = constant_field(g, 0.0, FieldRole::solution_u);
  for (int k = 0; k < 8; ++k) {
    it.push_back(eikonal(g, reduce_field(h, rho, 1e-12).h).u);
    rho = it.back();
  }
  for (std::size_t k = 2; k < it.size(); ++k)
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
      if (k % 2 == 0) EXPECT_LE(it[k][x], it[k - 2][x] + 1e-15);
      else EXPECT_GE(it[k][x], it[k - 2][x] - 1e-15);
      EXPECT_LE(it[k % 2 ? k : k - 1][x], it[k % 2 ? k - 1 : k][x] + 1e-15);
    }
}

TEST(SolveGeneral, NonConvergenceCarriesHistory) {
  const MetricGraph& g = interval();
  GeneralOptions opts;
  opts.max_iter = 2;
  try {
    solve_general(g, builtin_hamiltonian("affine-rho:1"), constant_boundary(g, 0.0), opts);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_EQ(e.history().size(), 2u);
    EXPECT_GT(e.history().back(), 1e-8);
  }
}

TEST(Builtins, ParametersAndErrors) {
  EXPECT_EQ(builtin_hamiltonian("linear:2.5")(0, 0.0, 3.0), 0.5);
  EXPECT_EQ(builtin_hamiltonian("plateau")(0, 0.0, 1.5), 1.0);
  EXPECT_EQ(builtin_hamiltonian("plateau")(0, 0.0, 2.5), 1.5);
  EXPECT_EQ(builtin_hamiltonian("ex1")(0, 0.0, 3.0), 0.0);
  EXPECT_EQ(builtin_hamiltonian("ex2")(0, 0.0, 0.0), 1.0);
  EXPECT_TRUE(is_builtin_hamiltonian("quadratic:3"));
  EXPECT_FALSE(is_builtin_hamiltonian("p - 1"));
  EXPECT_THROW(builtin_hamiltonian("cubic"), InputError);
  EXPECT_THROW(builtin_hamiltonian("linear:abc"), InputError);
}

TEST(ExpressionHamiltonian, EvaluatesAndRejectsBadText) {
  const MetricGraph& g = interval();
  const HamiltonianSpec h = expression_hamiltonian("max(p, 2*p - 1) + rho - x", g, 1.0, RhoMonotonicity::strictly_increasing);
  const Vertex v = g.vertex("0.5");
  EXPECT_DOUBLE_EQ(h(v, 0.25, 3.0), 5.0 + 0.25 - 0.5);
  EXPECT_THROW(expression_hamiltonian("p +", g, 1.0, RhoMonotonicity::independent), InputError);
  EXPECT_THROW(expression_hamiltonian("q - 1", g, 1.0, RhoMonotonicity::independent), InputError);
  EXPECT_THROW(expression_hamiltonian("foo(p)", g, 1.0, RhoMonotonicity::independent), InputError);
}

TEST(Counterexamples, AllThreeReproduced) {
  const CounterexampleSuite suite = counterexample_suite();
  ASSERT_EQ(suite.cases.size(), 3u);
  EXPECT_EQ(suite.graph.id(suite.origin), "0");
  const auto v = evaluate_counterexamples(suite);
  ASSERT_EQ(v.size(), 3u);
  for (const auto& c : v) {
    EXPECT_TRUE(c.hamiltonian_rejected) << c.name;
    EXPECT_TRUE(c.as_expected) << c.name;
  }
  // u = -3|x| satisfies the Monge equation for ex1 everywhere but is not a subsolution for f = 1.
  EXPECT_LE(v[0].monge_max_residual, 1e-9);
  EXPECT_FALSE(v[0].c_subsolution_for_unit_f);
  // u = |x| misses ex2 at the origin only.
  EXPECT_NEAR(v[1].monge_residual_at_origin, 1.0, 1e-12);
  // The plateau solution is not regular at the origin.
  EXPECT_NEAR(v[2].regularity_residual_at_origin, 1.0, 1e-12);
  EXPECT_LE(v[2].monge_max_residual, 1e-9);
}
