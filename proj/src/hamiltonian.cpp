#include "eikograph/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "eikograph/errors.hpp"
#include "eikograph/expression.hpp"
#include "eikograph/fixtures.hpp"

namespace eikograph {

double HamiltonianSpec::operator()(Vertex x, double rho, double p) const {
  double value = 0.0;
  try {
    value = evaluate(x, rho, p);
  } catch (const std::exception& e) {
    throw HamiltonianError("Hamiltonian '" + name + "' failed: " + e.what());
  }
  if (std::isnan(value)) {
    std::ostringstream msg;
    msg << "Hamiltonian '" << name << "' is NaN at rho=" << rho << ", p=" << p;
    throw HamiltonianError(msg.str());
  }
  return value;
}

namespace {

std::vector<double> p_grid(double p_max) {
  std::vector<double> grid;
  const double fine_end = std::min(p_max, 16.0);
  for (int k = 0; k * (1.0 / 64.0) <= fine_end; ++k) grid.push_back(k / 64.0);
  for (double p = 32.0; p < p_max; p *= 2.0) grid.push_back(p);
  if (grid.back() < p_max) grid.push_back(p_max);
  return grid;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n <= 1) return {0.5 * (lo + hi)};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

std::vector<Vertex> sample_vertices(const MetricGraph& g, std::size_t samples) {
  std::vector<Vertex> out;
  const std::size_t n = g.num_vertices();
  const std::size_t k = std::min(std::max<std::size_t>(samples, 1), n);
  for (std::size_t i = 0; i < k; ++i) out.push_back(i * n / k);
  return out;
}

}  // namespace

HamiltonianReport validate_hamiltonian(const HamiltonianSpec& h, const MetricGraph& g,
                                       double rho_low, double rho_high, std::size_t samples) {
  if (samples == 0) throw ValidationError("validate_hamiltonian needs samples >= 1");
  HamiltonianReport r;
  const std::vector<double> ps = p_grid(h.p_max);
  const std::vector<double> rhos = linspace(rho_low, rho_high, samples);
  const double slack = 1e-12;

  auto note = [&](const std::string& what, Vertex x, double rho, double p0, double p1) {
    if (!r.counterexample.empty()) return;
    std::ostringstream msg;
    msg << what << " at vertex '" << g.id(x) << "', rho=" << rho << ", p in [" << p0 << ", "
        << p1 << "]";
    r.counterexample = msg.str();
    r.x = x;
    r.rho = rho;
    r.p_low = p0;
    r.p_high = p1;
  };

  for (Vertex x : sample_vertices(g, samples)) {
    for (double rho : rhos) {
      double prev = h(x, rho, ps[0]) - h.lambda0 * ps[0];
      ++r.evaluations;
      for (std::size_t i = 1; i < ps.size(); ++i) {
        const double cur = h(x, rho, ps[i]) - h.lambda0 * ps[i];
        ++r.evaluations;
        if (cur < prev - slack * std::max(1.0, std::abs(prev))) {
          if (r.monotone) note("p -> H - lambda0 p decreases", x, rho, ps[i - 1], ps[i]);
          r.monotone = false;
        }
        prev = cur;
      }
      const double top = h(x, rho, h.p_max);
      r.min_at_p_max = std::min(r.min_at_p_max, top);
      if (!(top > 0.0)) {
        if (r.coercive) note("H(x, rho, p_max) <= 0", x, rho, h.p_max, h.p_max);
        r.coercive = false;
      }
    }
    if (h.rho_monotonicity == RhoMonotonicity::independent || rhos.size() < 2) continue;
    for (std::size_t k = 0; k + 1 < rhos.size(); ++k) {
      for (double p : {0.0, 1.0, 4.0}) {
        const double a = h(x, rhos[k], p);
        const double b = h(x, rhos[k + 1], p);
        const bool ok = h.rho_monotonicity == RhoMonotonicity::strictly_increasing ? b > a
                                                                                      : b >= a - slack;
        if (!ok) {
          if (r.rho_consistent) note("declared rho-monotonicity fails", x, rhos[k], p, p);
          r.rho_consistent = false;
        }
      }
    }
  }
  r.pass = r.monotone && r.coercive && r.rho_consistent;
  return r;
}

Reduction reduce_h(const HamiltonianSpec& h, Vertex x, double rho, double tol) {
  if (!(tol > 0.0)) throw ValidationError("reduction tolerance must be positive");
  const double at_zero = h(x, rho, 0.0);
  if (at_zero >= 0.0) return {0.0, std::abs(at_zero), at_zero <= tol};

  constexpr double kCap = 1099511627776.0;  // 2^40
  double lo = 0.0;
  double hi = 1.0;
  for (;;) {
    const double val = h(x, rho, hi);
    if (std::abs(val) <= tol) return {hi, std::abs(val), true};
    if (val > 0.0) break;
    lo = hi;
    hi *= 2.0;
    if (hi > kCap) {
      std::ostringstream msg;
      msg << "Hamiltonian '" << h.name << "' stays <= 0 up to p = 2^40 (rho=" << rho << ")";
      throw CoercivityError(msg.str());
    }
  }
  for (int it = 0; it < 4096; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double val = h(x, rho, mid);
    if (std::abs(val) <= tol) return {mid, std::abs(val), true};
    (val > 0.0 ? hi : lo) = mid;
  }
  // Bracket collapsed without |H| <= tol (H jumps across zero); report the infimum.
  return {hi, std::abs(h(x, rho, hi)), true};
}

ReductionField reduce_field(const HamiltonianSpec& h, const ScalarField& rho, double tol) {
  ReductionField out;
  const std::size_t n = rho.size();
  out.h.values.resize(n);
  out.residual.resize(n);
  out.consistent.resize(n);
  for (Vertex x = 0; x < n; ++x) {
    const Reduction r = reduce_h(h, x, rho[x], tol);
    out.h[x] = r.h;
    out.residual[x] = r.residual;
    out.consistent[x] = r.consistent ? 1 : 0;
  }
  return out;
}

GeneralSolution solve_general(const MetricGraph& g, const HamiltonianSpec& h,
                              const ScalarField& zeta, const GeneralOptions& opts) {
  auto solve = [&](const ScalarField& f) {
    return solve_dirichlet(DirichletProblem{g, f, zeta, 0.0});
  };

  GeneralSolution out;
  ReductionField used = reduce_field(h, constant_field(g, 0.0, FieldRole::solution_u),
                                     opts.bisection_tol);
  out.value = solve(used.h);
  out.iterations = 1;

  if (h.rho_monotonicity != RhoMonotonicity::independent) {
    bool converged = false;
    while (out.iterations < opts.max_iter + 1) {
      used = reduce_field(h, out.value.u, opts.bisection_tol);
      ValueFunction next = solve(used.h);
      ++out.iterations;
      double change = 0.0;
      for (Vertex v = 0; v < g.num_vertices(); ++v)
        change = std::max(change, std::abs(next.u[v] - out.value.u[v]));
      out.history.push_back(change);
      out.value = std::move(next);
      if (change <= opts.tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw ConvergenceError("Picard iteration did not reach tol " + std::to_string(opts.tol) +
                                 " in " + std::to_string(opts.max_iter) + " steps",
                             out.history);
  }

  out.reduction = reduce_field(h, out.value.u, opts.bisection_tol);
  double drift = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    drift = std::max(drift, std::abs(out.reduction.h[v] - used.h[v]));
  const double tol = default_slope_tolerance(g, out.reduction.h) + drift;
  out.monge = check_monge(g, out.value.u, out.reduction.h, tol);
  return out;
}

namespace {

double parse_parameter(const std::string& name, double fallback) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) return fallback;
  const std::string arg = name.substr(colon + 1);
  try {
    std::size_t used = 0;
    const double v = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad Hamiltonian parameter in '" + name + "'");
  }
}

std::string base_name(const std::string& name) { return name.substr(0, name.find(':')); }

}  // namespace

bool is_builtin_hamiltonian(const std::string& name) {
  static const std::vector<std::string> known{"linear", "quadratic", "affine-rho",
                                              "ex1",    "ex2",       "plateau"};
  return std::find(known.begin(), known.end(), base_name(name)) != known.end();
}

HamiltonianSpec builtin_hamiltonian(const std::string& name) {
  const std::string base = base_name(name);
  HamiltonianSpec h;
  h.name = name;
  if (base == "linear") {
    const double c = parse_parameter(name, 1.0);
    h.evaluate = [c](Vertex, double, double p) { return p - c; };
    h.lambda0 = 1.0;
  } else if (base == "quadratic") {
    const double c = parse_parameter(name, 1.0);
    h.evaluate = [c](Vertex, double, double p) { return p * p - c * c; };
    // Zero slope at p = 0.
    h.lambda0 = 1e-3;
  } else if (base == "affine-rho") {
    const double c = parse_parameter(name, 1.0);
    h.evaluate = [c](Vertex, double rho, double p) { return p + rho - c; };
    h.lambda0 = 1.0;
    h.rho_monotonicity = RhoMonotonicity::strictly_increasing;
  } else if (base == "ex1") {
    h.evaluate = [](Vertex, double, double p) {
      const double over = std::max(p - 3.0, 0.0);
      return 1.0 - std::abs(p - 2.0) + over * over;
    };
    h.lambda0 = 1e-3;
  } else if (base == "ex2") {
    h.evaluate = [](Vertex, double, double p) {
      const double over = std::max(p - 3.0, 0.0);
      return 1.0 - std::abs(p) + over * over;
    };
    h.lambda0 = 1e-3;
  } else if (base == "plateau") {
    h.evaluate = [](Vertex, double, double p) {
      if (p < 1.0) return p;
      if (p < 2.0) return 1.0;
      return p - 1.0;
    };
    h.lambda0 = 1e-3;
  } else {
    throw InputError("unknown Hamiltonian '" + name + "'");
  }
  return h;
}

HamiltonianSpec expression_hamiltonian(const std::string& text, const MetricGraph& g,
                                       double lambda0, RhoMonotonicity rho) {
  auto expr = std::make_shared<Expression>(text, std::vector<std::string>{"p", "rho", "x", "y"});
  HamiltonianSpec h;
  h.name = text;
  h.lambda0 = lambda0;
  h.rho_monotonicity = rho;
  h.evaluate = [expr, &g](Vertex v, double r, double p) {
    const auto& c = g.coords(v);
    return expr->evaluate({p, r, c.size() > 0 ? c[0] : 0.0, c.size() > 1 ? c[1] : 0.0});
  };
  return h;
}

CounterexampleSuite counterexample_suite(std::size_t segments) {
  CounterexampleSuite s{interval_fixture(segments).graph, 0, {}};
  const MetricGraph& g = s.graph;
  s.origin = g.vertex("0");
  auto field = [&g](auto fn) {
    ScalarField u{FieldRole::solution_u, std::vector<double>(g.num_vertices())};
    for (Vertex v = 0; v < g.num_vertices(); ++v) u[v] = fn(g.coords(v)[0]);
    return u;
  };

  Counterexample ex1{"ex1", builtin_hamiltonian("ex1"),
                     field([](double x) { return -3.0 * std::abs(x); }), "monge", 0.0};
  Counterexample ex2{"ex2", builtin_hamiltonian("ex2"),
                     field([](double x) { return std::abs(x); }), "monge", 1.0};

  // The equation is H(|grad u|) = 1, written as H - 1 = 0.
  HamiltonianSpec shifted = builtin_hamiltonian("plateau");
  shifted.name = "plateau-1";
  shifted.evaluate = [base = builtin_hamiltonian("plateau")](Vertex x, double rho, double p) {
    return base.evaluate(x, rho, p) - 1.0;
  };
  Counterexample plateau{"plateau", shifted,
                         field([](double x) { return x <= 0.0 ? x : 2.0 * x; }), "regularity",
                         1.0};
  s.cases = {ex1, ex2, plateau};
  return s;
}

std::vector<CounterexampleVerdict> evaluate_counterexamples(const CounterexampleSuite& suite) {
  const MetricGraph& g = suite.graph;
  const std::string origin = g.id(suite.origin);
  const ScalarField unit = constant_field(g, 1.0, FieldRole::rhs_f);
  std::vector<CounterexampleVerdict> out;
  for (const Counterexample& c : suite.cases) {
    CounterexampleVerdict v;
    v.name = c.name;
    const HamiltonianReport rep = validate_hamiltonian(c.hamiltonian, g, -1.0, 1.0, 3);
    v.hamiltonian_rejected = !rep.pass;
    v.rejection = rep.counterexample;

    const HamiltonianSpec& h = c.hamiltonian;
    const CheckReport monge = check_monge(
        g, c.u, [&h](Vertex x, double rho, double p) { return h(x, rho, p); }, 1e-9);
    v.monge_max_residual = monge.max_residual();
    v.monge_residual_at_origin = monge.find(origin)->residual;
    v.regularity_residual_at_origin = check_regularity(g, c.u).find(origin)->residual;
    v.c_subsolution_for_unit_f = check_c_subsolution(g, c.u, unit).report.pass;

    const double at_origin =
        c.check == "monge" ? v.monge_residual_at_origin : v.regularity_residual_at_origin;
    v.as_expected = v.hamiltonian_rejected &&
                    std::abs(at_origin - c.expected_residual_at_origin) <= 1e-9;
    if (c.name == "ex1") v.as_expected = v.as_expected && !v.c_subsolution_for_unit_f;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace eikograph
