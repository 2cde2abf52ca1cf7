#include "eikograph/eikonal.hpp"

#include <algorithm>
#include <cmath>

#include "eikograph/errors.hpp"

namespace eikograph {

Curve ValueFunction::route(const MetricGraph& g, Vertex x) const {
  std::vector<Vertex> path{x};
  while (next_hop.at(path.back()) != kNoVertex) path.push_back(next_hop[path.back()]);
  return make_curve(g, path);
}

namespace {

void require_problem(const DirichletProblem& p) {
  const MetricGraph& g = p.graph;
  if (!g.has_boundary()) throw ProblemError("Dirichlet problem needs a nonempty boundary");
  require_field(g, p.f, FieldRole::rhs_f);
  require_field(g, p.zeta, FieldRole::boundary_zeta);
  FieldReport rep = validate_field(p.f, p.positivity_threshold);
  if (!rep.pass)
    throw FieldError("rhs fails positivity threshold " + std::to_string(p.positivity_threshold) +
                     " at vertex '" + g.id(rep.offending.front()) + "'");
}

std::vector<double> edge_costs(const MetricGraph& g, const ScalarField& f) {
  std::vector<double> c(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) c[e] = edge_cost(g, f, e).cost;
  return c;
}

}  // namespace

ValueFunction solve_dirichlet(const DirichletProblem& p) {
  require_problem(p);
  const MetricGraph& g = p.graph;
  const std::vector<double> cost = edge_costs(g, p.f);

  std::vector<Source> sources;
  for (Vertex y : g.boundary()) sources.push_back({y, p.zeta[y]});
  ShortestPathTree t = shortest_paths(g, sources, [&cost](std::size_t e) { return cost[e]; });

  ValueFunction vf;
  vf.u = {FieldRole::solution_u, t.label};
  vf.exit_vertex = t.root;
  vf.next_hop = t.parent;
  vf.attained.assign(g.num_vertices(), 0);
  for (Vertex y : g.boundary()) vf.attained[y] = t.root[y] == y ? 1 : 0;
  return vf;
}

double bellman_defect(const DirichletProblem& p, const ScalarField& u) {
  const MetricGraph& g = p.graph;
  double worst = 0.0;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    double best = g.is_boundary(x) ? p.zeta[x] : kInfinity;
    for (const Arc& arc : g.neighbors(x))
      best = std::min(best, u[arc.to] + edge_cost(g, p.f, arc.edge).cost);
    worst = std::max(worst, std::abs(u[x] - best));
  }
  return worst;
}

BoundaryCertificate check_boundary_consistency(const DirichletProblem& p,
                                               const ValueFunction& vf) {
  require_problem(p);
  const MetricGraph& g = p.graph;
  const ScalarField& u = vf.u;
  const std::vector<Vertex> bdry = g.boundary();
  const std::vector<double> cost = edge_costs(g, p.f);

  BoundaryCertificate c;
  c.inf_f = kInfinity;
  c.sup_f = -kInfinity;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    c.inf_f = std::min(c.inf_f, p.f[v]);
    c.sup_f = std::max(c.sup_f, p.f[v]);
  }

  // One search per boundary vertex, in length and in cost.
  std::vector<std::vector<double>> dist(bdry.size());
  std::vector<std::vector<double>> cost_dist(bdry.size());
  for (std::size_t i = 0; i < bdry.size(); ++i) {
    dist[i] = length_tree(g, bdry[i]).label;
    cost_dist[i] =
        shortest_paths(g, {{bdry[i], 0.0}}, [&cost](std::size_t e) { return cost[e]; }).label;
  }

  double worst_strong = -kInfinity;
  double worst_curve = -kInfinity;
  for (std::size_t i = 0; i < bdry.size(); ++i) {
    for (std::size_t j = 0; j < bdry.size(); ++j) {
      if (i == j) continue;
      const double dz = p.zeta[bdry[i]] - p.zeta[bdry[j]];
      const double d = dist[i][bdry[j]];
      c.lipschitz = std::max(c.lipschitz, std::abs(dz) / d);
      const double strong_excess = std::abs(dz) - d * c.inf_f;
      if (strong_excess > worst_strong) {
        worst_strong = strong_excess;
        c.strong_tight = {bdry[i], bdry[j]};
      }
      const double curve_excess = dz - cost_dist[j][bdry[i]];
      if (curve_excess > worst_curve) {
        worst_curve = curve_excess;
        c.curve_tight = {bdry[i], bdry[j]};
      }
    }
  }
  c.strong_condition = bdry.size() < 2 || worst_strong <= kAbsTol;
  c.curve_condition = bdry.size() < 2 || worst_curve <= kAbsTol;

  const double weak_rate = std::max(c.lipschitz, c.sup_f);
  c.one_sided_worst.excess = -kInfinity;
  c.two_sided_worst.excess = -kInfinity;
  c.two_sided_checked = c.strong_condition;
  for (std::size_t j = 0; j < bdry.size(); ++j) {
    const Vertex y = bdry[j];
    for (Vertex x = 0; x < g.num_vertices(); ++x) {
      if (g.is_boundary(x)) continue;
      const double d = dist[j][x];
      const double diff = u[x] - p.zeta[y];
      const double one = diff - d * weak_rate;
      if (one > c.one_sided_worst.excess) c.one_sided_worst = {x, y, one};
      if (c.two_sided_checked) {
        const double two = std::abs(diff) - d * c.sup_f;
        if (two > c.two_sided_worst.excess) c.two_sided_worst = {x, y, two};
      }
    }
  }
  auto holds = [](const PairBound& b) {
    return b.x == kNoVertex || b.excess <= kAbsTol;
  };
  c.one_sided_bound = holds(c.one_sided_worst);
  c.two_sided_bound = c.two_sided_checked && holds(c.two_sided_worst);

  for (Vertex y : bdry)
    if (!vf.attained[y]) c.unattained.push_back(y);
  return c;
}

double QuasiconvexityModulus::operator()(double dist) const {
  auto it = std::upper_bound(t.begin(), t.end(), dist);
  if (it == t.begin()) return 0.0;
  return sigma[static_cast<std::size_t>(it - t.begin()) - 1];
}

QuasiconvexityModulus quasiconvexity_probe(const MetricGraph& g, const std::vector<char>& subset) {
  if (subset.size() != g.num_vertices())
    throw ValidationError("subset mask has the wrong size");
  std::vector<Vertex> members;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (subset[v]) members.push_back(v);
  if (members.empty()) throw ConnectivityError("empty subset");

  auto length = [&g](std::size_t e) { return g.edge(e).length; };
  std::vector<std::pair<double, double>> pairs;  // (d~, inner length)
  QuasiconvexityModulus m;
  for (Vertex x : members) {
    const std::vector<double> whole = length_tree(g, x).label;
    const std::vector<double> inner = shortest_paths(g, {{x, 0.0}}, length, &subset).label;
    for (Vertex y : members) {
      if (y <= x) continue;
      if (inner[y] == kInfinity)
        throw ConnectivityError("subset is disconnected: '" + g.id(x) + "' cannot reach '" +
                                g.id(y) + "' inside it");
      pairs.emplace_back(whole[y], inner[y]);
      const double ratio = inner[y] / whole[y];
      if (ratio > m.max_ratio) {
        m.max_ratio = ratio;
        m.worst = {x, y};
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  double running = 0.0;
  for (auto [d, inner] : pairs) {
    running = std::max(running, inner);
    if (!m.t.empty() && m.t.back() == d) {
      m.sigma.back() = running;
    } else {
      m.t.push_back(d);
      m.sigma.push_back(running);
    }
  }
  return m;
}

}  // namespace eikograph
