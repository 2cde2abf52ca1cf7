#include "eikograph/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eikograph/eikonal.hpp"
#include "eikograph/errors.hpp"

namespace eikograph {

const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::none:
      return "none";
    case Hypothesis::subsolution:
      return "subsolution";
    case Hypothesis::supersolution:
      return "supersolution";
    case Hypothesis::positivity:
      return "positivity";
    case Hypothesis::boundary_band:
      return "boundary_band";
  }
  return "none";
}

ComparisonReport compare(const ComparisonInstance& inst) {
  const MetricGraph& g = inst.graph;
  require_field(g, inst.f, FieldRole::rhs_f);
  require_field(g, inst.u_sub, FieldRole::solution_u);
  require_field(g, inst.v_super, FieldRole::solution_u);

  ComparisonReport r;
  r.sub = check_monge(g, inst.u_sub, inst.f, inst.monge_tol, MongeMode::sub);
  r.super = check_monge(g, inst.v_super, inst.f, inst.monge_tol, MongeMode::super);
  auto first_failure = [&](Hypothesis h, const std::string& detail) {
    if (r.failed != Hypothesis::none) return;
    r.failed = h;
    r.detail = detail;
  };
  auto describe = [&](const char* what, const CheckReport& c) {
    std::ostringstream s;
    s << what << " check fails at '" << c.items[*c.worst].id << "' with residual "
      << c.max_residual() << " > " << c.tolerance;
    return s.str();
  };
  if (!r.sub.pass) first_failure(Hypothesis::subsolution, describe("u subsolution", r.sub));
  if (!r.super.pass) first_failure(Hypothesis::supersolution, describe("v supersolution", r.super));

  double inf_f = kInfinity;
  for (double v : inst.f.values) inf_f = std::min(inf_f, v);
  if (!(inf_f > 0.0)) first_failure(Hypothesis::positivity, "inf f = " + std::to_string(inf_f));

  r.band_radius = inst.band < 0.0 ? 2.0 * g.max_edge_length() : inst.band;
  std::vector<Source> sources;
  for (Vertex b : g.boundary()) sources.push_back({b, 0.0});
  std::vector<double> to_boundary(g.num_vertices(), kInfinity);
  if (!sources.empty())
    to_boundary = shortest_paths(g, sources, [&g](std::size_t e) { return g.edge(e).length; })
                      .label;
  r.band_excess = -kInfinity;
  Vertex band_worst = kNoVertex;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (to_boundary[x] > r.band_radius) continue;
    ++r.band_size;
    const double d = inst.u_sub[x] - inst.v_super[x];
    if (d > r.band_excess) {
      r.band_excess = d;
      band_worst = x;
    }
  }
  if (r.band_size == 0) r.band_excess = 0.0;
  if (r.band_excess > inst.band_tol) {
    std::ostringstream s;
    s << "u - v = " << r.band_excess << " at '" << g.id(band_worst) << "' in the boundary band";
    first_failure(Hypothesis::boundary_band, s.str());
  }

  r.max_excess = -kInfinity;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    const double d = inst.u_sub[x] - inst.v_super[x];
    if (d > r.max_excess) {
      r.max_excess = d;
      r.violating = x;
    }
  }
  r.conclusion = r.max_excess <= inst.tol;
  if (r.conclusion) r.violating = kNoVertex;
  return r;
}

SuiteReport equivalence_suite(const Fixture& fix, const ScalarField& f, const ScalarField& zeta,
                              std::size_t levels, std::uint64_t seed) {
  if (levels == 0) throw ValidationError("equivalence suite needs at least one level");
  require_field(fix.graph, f, FieldRole::rhs_f);
  require_field(fix.graph, zeta, FieldRole::boundary_zeta);

  SuiteReport out;
  out.seed = seed;
  out.pass = true;
  const double h0 = fix.graph.max_edge_length();
  for (std::size_t k = 0; k < levels; ++k) {
    Refinement ref =
        k == 0 ? Refinement{fix.graph, {}} : refine_mapped(fix.graph, std::ldexp(h0, -static_cast<int>(k)));
    if (k == 0)
      for (Vertex v = 0; v < fix.graph.num_vertices(); ++v) ref.origin.push_back({v, v, 0.0});
    const MetricGraph& g = ref.graph;
    const ScalarField fk = interpolate(ref, f);
    const ScalarField zk = interpolate(ref, zeta);
    const ValueFunction sol = solve_dirichlet(DirichletProblem{g, fk, zk});

    const double slope_tol = default_slope_tolerance(g, fk);
    auto row = [&](const char* check, const CheckReport& rep) {
      out.rows.push_back({fix.name, k, check, rep.max_residual(), rep.tolerance, rep.pass});
      out.pass = out.pass && rep.pass;
    };
    row("csub", check_c_subsolution(g, sol.u, fk, 0.0, seed).report);
    row("csuper", check_c_supersolution(g, sol.u, fk).report);
    const CheckReport monge = check_monge(g, sol.u, fk, slope_tol);
    row("monge", monge);
    row("regularity", check_regularity(g, sol.u, slope_tol));
    out.monge_by_level.push_back(monge.max_residual());
    out.h_by_level.push_back(g.max_edge_length());
  }
  for (std::size_t k = 1; k < out.monge_by_level.size(); ++k)
    if (out.monge_by_level[k] > out.monge_by_level[k - 1] + kAbsTol) out.monge_nonincreasing = false;
  out.pass = out.pass && out.monge_nonincreasing;
  return out;
}

}  // namespace eikograph
