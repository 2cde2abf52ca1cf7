#include "eikograph/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "eikograph/errors.hpp"

namespace eikograph {

SlopeTriple slopes(const MetricGraph& g, const ScalarField& u, Vertex x) {
  const auto& nbrs = g.neighbors(x);
  if (nbrs.empty()) throw GraphError("isolated vertex '" + g.id(x) + "'");
  SlopeTriple s;
  s.vertex = x;
  for (const Arc& arc : nbrs) {
    const double diff = u[arc.to] - u[x];
    s.super_slope = std::max(s.super_slope, std::max(diff, 0.0) / arc.length);
    s.sub_slope = std::max(s.sub_slope, std::max(-diff, 0.0) / arc.length);
  }
  s.slope = std::max(s.super_slope, s.sub_slope);
  return s;
}

double CheckReport::max_residual() const { return worst ? items[*worst].residual : 0.0; }

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(std::count_if(
      items.begin(), items.end(), [](const Item& it) { return !it.excluded && !it.pass; }));
}

const CheckReport::Item* CheckReport::find(const std::string& id) const {
  for (const auto& it : items)
    if (it.id == id) return &it;
  return nullptr;
}

namespace {

void add_item(CheckReport& r, std::string id, double residual, bool excluded = false) {
  CheckReport::Item it{std::move(id), residual, residual <= r.tolerance, excluded};
  if (!excluded) {
    if (!it.pass) r.pass = false;
    if (!r.worst || residual > r.items[*r.worst].residual) r.worst = r.items.size();
  }
  r.items.push_back(std::move(it));
}

double one_sided(double value, MongeMode mode) {
  switch (mode) {
    case MongeMode::both:
      return std::abs(value);
    case MongeMode::sub:
      return std::max(value, 0.0);
    case MongeMode::super:
      return std::max(-value, 0.0);
  }
  return std::abs(value);
}

const char* mode_suffix(MongeMode mode) {
  switch (mode) {
    case MongeMode::sub:
      return "-sub";
    case MongeMode::super:
      return "-super";
    default:
      return "";
  }
}

void require_values(const MetricGraph& g, const ScalarField& u) {
  if (u.size() != g.num_vertices()) throw FieldError("field size does not match graph");
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!u.defined(v)) throw FieldError("missing value at vertex '" + g.id(v) + "'");
}

}  // namespace

double default_slope_tolerance(const MetricGraph& g, const ScalarField& f) {
  return lipschitz_constant(g, f) * g.max_edge_length() + 1e-9;
}

CheckReport check_monge(const MetricGraph& g, const ScalarField& u, const ScalarField& f,
                        double tol, MongeMode mode) {
  require_values(g, u);
  require_values(g, f);
  CheckReport r;
  r.name = std::string("monge") + mode_suffix(mode);
  r.tolerance = tol < 0.0 ? default_slope_tolerance(g, f) : tol;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (g.is_boundary(x)) continue;
    add_item(r, g.id(x), one_sided(slopes(g, u, x).sub_slope - f[x], mode));
  }
  return r;
}

CheckReport check_monge(const MetricGraph& g, const ScalarField& u, const HamiltonianFn& h,
                        double tol, MongeMode mode) {
  require_values(g, u);
  CheckReport r;
  r.name = std::string("monge-h") + mode_suffix(mode);
  r.tolerance = tol;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (g.is_boundary(x)) continue;
    add_item(r, g.id(x), one_sided(h(x, u[x], slopes(g, u, x).sub_slope), mode));
  }
  return r;
}

CSubsolutionResult check_c_subsolution(const MetricGraph& g, const ScalarField& u,
                                       const ScalarField& f, double tol, std::uint64_t seed,
                                       std::size_t sample_centers) {
  require_values(g, u);
  require_values(g, f);
  CSubsolutionResult out;
  CheckReport& r = out.report;
  r.name = "csub";
  r.tolerance = tol;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const double c = edge_cost(g, f, e).cost;
    // Same floating expression as the solver's relaxation, so exact solver
    // output has residual exactly zero.
    add_item(r, g.id(ed.a) + ">" + g.id(ed.b), std::max(u[ed.a] - (u[ed.b] + c), 0.0));
    add_item(r, g.id(ed.b) + ">" + g.id(ed.a), std::max(u[ed.b] - (u[ed.a] + c), 0.0));
  }

  // Ball-local Lipschitz bound with sup f over the doubled ball.
  LipschitzCertificate& lip = out.lipschitz;
  lip.seed = seed;
  lip.radius = 2.0 * g.max_edge_length();
  lip.worst_excess = -kInfinity;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, g.num_vertices() - 1);
  const std::size_t n_centers = std::min(sample_centers, g.num_vertices());
  for (std::size_t s = 0; s < n_centers; ++s) {
    const Vertex x0 = n_centers == g.num_vertices() ? s : pick(rng);
    const BallSet outer = ball(g, x0, 2.0 * lip.radius);
    double sup_f = 0.0;
    for (Vertex v : outer.members) sup_f = std::max(sup_f, f[v]);
    const BallSet inner = ball(g, x0, lip.radius);
    ++lip.centers;
    for (Vertex x : inner.members) {
      const std::vector<double> d = length_tree(g, x).label;
      for (Vertex y : inner.members) {
        if (y <= x) continue;
        ++lip.pairs;
        lip.worst_excess = std::max(lip.worst_excess, std::abs(u[x] - u[y]) - d[y] * sup_f);
      }
    }
  }
  if (lip.pairs == 0) lip.worst_excess = 0.0;
  lip.pass = lip.worst_excess <= std::max(tol, kAbsTol);
  return out;
}

CSupersolutionResult check_c_supersolution(const MetricGraph& g, const ScalarField& u,
                                           const ScalarField& f, double eps) {
  require_values(g, u);
  require_values(g, f);
  CSupersolutionResult out;
  CheckReport& r = out.report;
  r.name = "csuper";
  r.tolerance = eps < 0.0 ? default_slope_tolerance(g, f) : eps;
  out.descent.assign(g.num_vertices(), kNoVertex);
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (g.is_boundary(x)) continue;
    double best = kInfinity;
    Vertex arg = kNoVertex;
    for (const Arc& arc : g.neighbors(x)) {
      const double cand = u[arc.to] + edge_cost(g, f, arc.edge).cost;
      if (arg == kNoVertex || cand < best || (cand == best && g.id(arc.to) < g.id(arg))) {
        best = cand;
        arg = arc.to;
      }
    }
    out.descent[x] = arg;
    add_item(r, g.id(x), best - u[x]);
  }
  return out;
}

Curve descent_curve(const MetricGraph& g, const CSupersolutionResult& r, Vertex start) {
  std::vector<Vertex> path{start};
  std::vector<char> seen(g.num_vertices(), 0);
  seen[start] = 1;
  for (;;) {
    const Vertex next = r.descent.at(path.back());
    if (next == kNoVertex || seen[next]) break;
    seen[next] = 1;
    path.push_back(next);
  }
  return make_curve(g, path);
}

CheckReport check_regularity(const MetricGraph& g, const ScalarField& u, double tol) {
  require_values(g, u);
  CheckReport r;
  r.name = "regularity";
  r.tolerance = tol < 0.0 ? 1e-9 : tol;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (g.is_boundary(x)) continue;
    const SlopeTriple s = slopes(g, u, x);
    const bool near_boundary = std::any_of(g.neighbors(x).begin(), g.neighbors(x).end(),
                                           [&g](const Arc& a) { return g.is_boundary(a.to); });
    add_item(r, g.id(x), s.slope - s.sub_slope, near_boundary);
  }
  return r;
}

}  // namespace eikograph
