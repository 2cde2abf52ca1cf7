#include "eikograph/metric_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <tuple>

#include "eikograph/errors.hpp"

namespace eikograph {

bool approx_equal(double a, double b, double abs_tol, double rel_tol) {
  if (a == b) return true;
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

std::optional<Vertex> MetricGraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vertex MetricGraph::vertex(const std::string& id) const {
  auto v = find(id);
  if (!v) throw ValidationError("unknown vertex id '" + id + "'");
  return *v;
}

bool MetricGraph::has_coords() const {
  return !coords_.empty() &&
         std::all_of(coords_.begin(), coords_.end(), [](const auto& c) { return !c.empty(); });
}

std::vector<Vertex> MetricGraph::boundary() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < num_vertices(); ++v)
    if (boundary_[v]) out.push_back(v);
  return out;
}

std::vector<Vertex> MetricGraph::interior() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < num_vertices(); ++v)
    if (!boundary_[v]) out.push_back(v);
  return out;
}

bool MetricGraph::has_boundary() const {
  return std::any_of(boundary_.begin(), boundary_.end(), [](char c) { return c != 0; });
}

double MetricGraph::max_edge_length() const {
  double h = 0.0;
  for (const auto& e : edges_) h = std::max(h, e.length);
  return h;
}

double MetricGraph::min_edge_length() const {
  double h = kInfinity;
  for (const auto& e : edges_) h = std::min(h, e.length);
  return h;
}

GraphSpec MetricGraph::to_spec() const {
  GraphSpec spec;
  spec.vertices.reserve(num_vertices());
  for (Vertex v = 0; v < num_vertices(); ++v) spec.vertices.push_back({ids_[v], coords_[v]});
  spec.edges.reserve(num_edges());
  for (const auto& e : edges_) spec.edges.push_back({ids_[e.a], ids_[e.b], e.length});
  for (Vertex v : boundary()) spec.boundary.push_back(ids_[v]);
  return spec;
}

MetricGraph build_graph(const GraphSpec& spec) {
  if (spec.vertices.empty()) throw ValidationError("graph has no vertices");

  MetricGraph g;
  const std::size_t n = spec.vertices.size();
  g.ids_.reserve(n);
  g.coords_.reserve(n);
  for (const auto& vs : spec.vertices) {
    if (vs.id.empty()) throw ValidationError("empty vertex id");
    if (!g.index_.emplace(vs.id, g.ids_.size()).second)
      throw ValidationError("duplicate vertex id '" + vs.id + "'");
    for (double c : vs.coords)
      if (!std::isfinite(c)) throw ValidationError("non-finite coordinate at '" + vs.id + "'");
    g.ids_.push_back(vs.id);
    g.coords_.push_back(vs.coords);
  }

  // Keyed by the unordered pair; keeps first-appearance order for determinism.
  std::map<std::pair<Vertex, Vertex>, std::size_t> seen;
  for (const auto& es : spec.edges) {
    Vertex a = g.vertex(es.a);
    Vertex b = g.vertex(es.b);
    if (a == b) throw ValidationError("self-loop at '" + es.a + "'");
    if (!(es.length > 0.0) || !std::isfinite(es.length)) {
      std::ostringstream msg;
      msg << "edge '" << es.a << "'-'" << es.b << "' has nonpositive length " << es.length;
      throw ValidationError(msg.str());
    }
    auto key = std::minmax(a, b);
    auto [it, inserted] = seen.emplace(key, g.edges_.size());
    if (inserted) {
      g.edges_.push_back({a, b, es.length});
    } else {
      auto& kept = g.edges_[it->second];
      kept.length = std::min(kept.length, es.length);
    }
  }

  g.adjacency_.assign(n, {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    const Edge& ed = g.edges_[e];
    g.adjacency_[ed.a].push_back({ed.b, ed.length, e});
    g.adjacency_[ed.b].push_back({ed.a, ed.length, e});
  }

  g.boundary_.assign(n, 0);
  for (const auto& id : spec.boundary) g.boundary_[g.vertex(id)] = 1;

  // Connectivity by BFS from vertex 0.
  std::vector<char> reached(n, 0);
  std::vector<Vertex> stack{0};
  reached[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Arc& arc : g.adjacency_[v]) {
      if (!reached[arc.to]) {
        reached[arc.to] = 1;
        ++count;
        stack.push_back(arc.to);
      }
    }
  }
  if (count != n) {
    Vertex lost = static_cast<Vertex>(std::find(reached.begin(), reached.end(), 0) - reached.begin());
    throw ConnectivityError("graph is disconnected: '" + g.ids_[lost] + "' unreachable from '" +
                            g.ids_[0] + "'");
  }
  return g;
}

namespace {

std::optional<std::size_t> edge_between(const MetricGraph& g, Vertex a, Vertex b) {
  for (const Arc& arc : g.neighbors(a))
    if (arc.to == b) return arc.edge;
  return std::nullopt;
}

}  // namespace

Curve make_curve(const MetricGraph& g, const std::vector<Vertex>& path) {
  if (path.empty()) throw GraphError("curve needs at least one vertex");
  Curve c;
  c.vertices = path;
  c.arc_length.reserve(path.size());
  c.arc_length.push_back(0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    auto e = edge_between(g, path[i - 1], path[i]);
    if (!e)
      throw GraphError("'" + g.id(path[i - 1]) + "' and '" + g.id(path[i]) + "' are not adjacent");
    c.arc_length.push_back(c.arc_length.back() + g.edge(*e).length);
  }
  return c;
}

bool is_admissible(const MetricGraph& g, const Curve& c) {
  if (c.vertices.empty() || c.vertices.size() != c.arc_length.size()) return false;
  if (c.arc_length.front() != 0.0) return false;
  for (std::size_t i = 1; i < c.vertices.size(); ++i) {
    auto e = edge_between(g, c.vertices[i - 1], c.vertices[i]);
    if (!e) return false;
    double step = c.arc_length[i] - c.arc_length[i - 1];
    if (!approx_equal(step, g.edge(*e).length)) return false;
  }
  return true;
}

std::vector<Vertex> ShortestPathTree::path_to(Vertex v) const {
  std::vector<Vertex> path;
  if (root.at(v) == kNoVertex) return path;
  for (Vertex cur = v; cur != kNoVertex; cur = parent[cur]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree shortest_paths(const MetricGraph& g, const std::vector<Source>& sources,
                                const EdgeWeight& weight, const std::vector<char>* allowed,
                                double cutoff) {
  const std::size_t n = g.num_vertices();
  ShortestPathTree t;
  t.label.assign(n, kInfinity);
  t.parent.assign(n, kNoVertex);
  t.root.assign(n, kNoVertex);

  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (const Source& s : sources) {
    if (allowed && !(*allowed)[s.vertex]) continue;
    if (s.potential < t.label[s.vertex]) {
      t.label[s.vertex] = s.potential;
      t.root[s.vertex] = s.vertex;
      heap.emplace(s.potential, s.vertex);
    }
  }

  std::vector<char> done(n, 0);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (done[v] || d != t.label[v]) continue;
    if (d >= cutoff) break;
    done[v] = 1;
    for (const Arc& arc : g.neighbors(v)) {
      Vertex w = arc.to;
      if (done[w] || (allowed && !(*allowed)[w])) continue;
      double cand = d + weight(arc.edge);
      if (cand < t.label[w]) {
        t.label[w] = cand;
        t.parent[w] = v;
        t.root[w] = t.root[v];
        heap.emplace(cand, w);
      } else if (cand == t.label[w] && t.parent[w] != kNoVertex && g.id(v) < g.id(t.parent[w])) {
        t.parent[w] = v;
        t.root[w] = t.root[v];
      }
    }
  }
  return t;
}

ShortestPathTree length_tree(const MetricGraph& g, Vertex source) {
  return shortest_paths(g, {{source, 0.0}}, [&g](std::size_t e) { return g.edge(e).length; });
}

DistanceWitness intrinsic_distance(const MetricGraph& g, Vertex x, Vertex y) {
  if (x >= g.num_vertices() || y >= g.num_vertices())
    throw ValidationError("vertex index out of range");
  ShortestPathTree t = length_tree(g, x);
  DistanceWitness out;
  out.distance = t.label[y];
  out.witness = make_curve(g, t.path_to(y));
  return out;
}

std::vector<std::vector<double>> all_pairs_distances(const MetricGraph& g) {
  std::vector<std::vector<double>> d;
  d.reserve(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) d.push_back(length_tree(g, v).label);
  return d;
}

BallSet ball(const MetricGraph& g, Vertex center, double radius) {
  if (!(radius > 0.0)) throw ValidationError("ball radius must be positive");
  ShortestPathTree t = shortest_paths(
      g, {{center, 0.0}}, [&g](std::size_t e) { return g.edge(e).length; }, nullptr, radius);
  BallSet b;
  b.center = center;
  b.radius = radius;
  std::vector<std::pair<double, Vertex>> inside;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (t.label[v] < radius) inside.emplace_back(t.label[v], v);
  std::sort(inside.begin(), inside.end());
  for (auto [d, v] : inside) {
    b.members.push_back(v);
    b.distances.push_back(d);
  }
  return b;
}

Refinement refine_mapped(const MetricGraph& g, double h_max) {
  if (!(h_max > 0.0)) throw ValidationError("refinement step must be positive");
  GraphSpec spec;
  Refinement out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    spec.vertices.push_back({g.id(v), g.coords(v)});
    out.origin.push_back({v, v, 0.0});
  }
  for (const Edge& e : g.edges()) {
    auto parts = static_cast<std::size_t>(std::ceil(e.length / h_max));
    if (parts <= 1) {
      spec.edges.push_back({g.id(e.a), g.id(e.b), e.length});
      continue;
    }
    const double piece = e.length / static_cast<double>(parts);
    std::string prev = g.id(e.a);
    const auto& ca = g.coords(e.a);
    const auto& cb = g.coords(e.b);
    for (std::size_t k = 1; k < parts; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(parts);
      std::string id = g.id(e.a) + "~" + g.id(e.b) + ":" + std::to_string(k);
      std::vector<double> coords;
      if (!ca.empty() && ca.size() == cb.size()) {
        coords.resize(ca.size());
        for (std::size_t i = 0; i < ca.size(); ++i) coords[i] = (1.0 - t) * ca[i] + t * cb[i];
      }
      spec.vertices.push_back({id, std::move(coords)});
      out.origin.push_back({e.a, e.b, t});
      spec.edges.push_back({prev, id, piece});
      prev = id;
    }
    spec.edges.push_back({prev, g.id(e.b), piece});
  }
  for (Vertex v : g.boundary()) spec.boundary.push_back(g.id(v));
  out.graph = build_graph(spec);
  return out;
}

MetricGraph refine(const MetricGraph& g, double h_max) { return refine_mapped(g, h_max).graph; }

std::function<double(std::size_t, std::size_t)> table_distance(
    std::vector<std::vector<double>> table) {
  return [t = std::move(table)](std::size_t i, std::size_t j) { return t.at(i).at(j); };
}

std::function<double(std::size_t, std::size_t)> euclidean_distance(
    std::vector<std::vector<double>> coords) {
  return [c = std::move(coords)](std::size_t i, std::size_t j) {
    const auto& a = c.at(i);
    const auto& b = c.at(j);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
  };
}

InducedMetric induce_intrinsic(const ChordInput& input, std::uint64_t seed,
                               std::size_t max_triples, std::size_t max_sources) {
  const std::size_t n = input.ids.size();
  if (n == 0) throw ValidationError("chord input has no points");
  if (!input.distance) throw ValidationError("chord input has no distance");
  const auto& d = input.distance;

  auto fail = [&](std::size_t i, std::size_t j, const std::string& what) {
    throw MetricError(what + " at ('" + input.ids[i] + "', '" + input.ids[j] + "')");
  };

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  // Pair axioms: exhaustive when affordable, sampled otherwise.
  const std::size_t all_pairs = n * (n - 1) / 2;
  const std::size_t pair_budget = 2'000'000;
  auto check_pair = [&](std::size_t i, std::size_t j) {
    double dij = d(i, j);
    if (i == j) {
      if (dij != 0.0) fail(i, j, "d(x, x) != 0");
      return;
    }
    if (!(dij > 0.0) || !std::isfinite(dij)) fail(i, j, "d(x, y) must be positive for x != y");
    if (!approx_equal(dij, d(j, i))) fail(i, j, "asymmetric distance");
  };
  for (std::size_t i = 0; i < n; ++i) check_pair(i, i);
  if (all_pairs <= pair_budget) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) check_pair(i, j);
  } else {
    for (std::size_t s = 0; s < pair_budget; ++s) check_pair(pick(rng), pick(rng));
  }

  ConsistencyProbe probe;
  if (n >= 3) {
    for (std::size_t s = 0; s < max_triples; ++s) {
      std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
      double lhs = d(i, k);
      double rhs = d(i, j) + d(j, k);
      ++probe.triples_sampled;
      if (lhs > rhs && !approx_equal(lhs, rhs))
        throw MetricError("triangle inequality fails for ('" + input.ids[i] + "', '" +
                          input.ids[j] + "', '" + input.ids[k] + "')");
    }
  }

  GraphSpec spec;
  for (std::size_t i = 0; i < n; ++i)
    spec.vertices.push_back({input.ids[i], i < input.coords.size() ? input.coords[i]
                                                                    : std::vector<double>{}});
  for (auto [a, b] : input.adjacency) {
    if (a >= n || b >= n) throw ValidationError("adjacency refers to an unknown point");
    spec.edges.push_back({input.ids[a], input.ids[b], d(a, b)});
  }
  spec.boundary = input.boundary;

  InducedMetric out{build_graph(spec), probe};
  const MetricGraph& g = out.graph;

  // d <= d~ on every pair reached from the sampled sources.
  std::vector<Vertex> sources;
  if (n <= max_sources) {
    for (Vertex v = 0; v < n; ++v) sources.push_back(v);
  } else {
    for (std::size_t s = 0; s < max_sources; ++s) sources.push_back(pick(rng));
  }
  std::vector<std::pair<double, double>> samples;  // (d, d~)
  out.probe.max_chord_excess = -kInfinity;
  for (Vertex s : sources) {
    ShortestPathTree t = length_tree(g, s);
    for (Vertex v = 0; v < n; ++v) {
      if (v == s) continue;
      double chord = d(s, v);
      double intrinsic = t.label[v];
      samples.emplace_back(chord, intrinsic);
      out.probe.max_chord_excess = std::max(out.probe.max_chord_excess, chord - intrinsic);
      if (chord > intrinsic && !approx_equal(chord, intrinsic))
        out.probe.chord_below_intrinsic = false;
    }
  }
  out.probe.pairs_sampled = samples.size();
  if (samples.empty()) {
    out.probe.max_chord_excess = 0.0;
    return out;
  }
  std::sort(samples.begin(), samples.end());
  std::size_t decile = std::max<std::size_t>(1, samples.size() / 10);
  out.probe.small_chord_cutoff = samples[decile - 1].first;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double ratio = samples[i].second / samples[i].first;
    out.probe.max_ratio = std::max(out.probe.max_ratio, ratio);
    if (i < decile) out.probe.max_ratio_small = std::max(out.probe.max_ratio_small, ratio);
  }
  return out;
}

}  // namespace eikograph
