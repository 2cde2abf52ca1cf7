#include "eikograph/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <set>

#include "eikograph/errors.hpp"

namespace eikograph {

namespace {

std::string coordinate_id(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

Fixture interval_fixture(std::size_t segments) {
  if (segments == 0) throw ValidationError("interval needs at least one segment");
  GraphSpec spec;
  const double n = static_cast<double>(segments);
  const double h = 2.0 / n;
  for (std::size_t i = 0; i <= segments; ++i) {
    const double x = (2.0 * static_cast<double>(i) - n) / n;
    spec.vertices.push_back({coordinate_id(x), {x}});
  }
  for (std::size_t i = 0; i < segments; ++i)
    spec.edges.push_back({spec.vertices[i].id, spec.vertices[i + 1].id, h});
  spec.boundary = {spec.vertices.front().id, spec.vertices.back().id};
  return {"interval", "n=" + std::to_string(segments), build_graph(spec)};
}

Fixture circle_fixture(std::size_t points) {
  if (points < 3) throw ValidationError("circle needs at least three points");
  GraphSpec spec;
  const double n = static_cast<double>(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / n;
    spec.vertices.push_back({"c" + std::to_string(i), {std::cos(a), std::sin(a)}});
  }
  const double chord = 2.0 * std::sin(std::numbers::pi / n);
  for (std::size_t i = 0; i < points; ++i)
    spec.edges.push_back({spec.vertices[i].id, spec.vertices[(i + 1) % points].id, chord});
  return {"circle", "n=" + std::to_string(points), build_graph(spec)};
}

Fixture grid_fixture(std::size_t n, int connectivity) {
  if (n < 2) throw ValidationError("grid needs n >= 2");
  if (connectivity != 4 && connectivity != 8)
    throw ValidationError("grid connectivity must be 4 or 8");
  GraphSpec spec;
  const double h = 1.0 / static_cast<double>(n - 1);
  auto id = [](std::size_t i, std::size_t j) { return std::to_string(i) + "_" + std::to_string(j); };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      spec.vertices.push_back({id(i, j), {static_cast<double>(i) * h, static_cast<double>(j) * h}});
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) spec.boundary.push_back(id(i, j));
    }
  const double diag = h * std::sqrt(2.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (i + 1 < n) spec.edges.push_back({id(i, j), id(i + 1, j), h});
      if (j + 1 < n) spec.edges.push_back({id(i, j), id(i, j + 1), h});
      if (connectivity == 8 && i + 1 < n && j + 1 < n) {
        spec.edges.push_back({id(i, j), id(i + 1, j + 1), diag});
        spec.edges.push_back({id(i + 1, j), id(i, j + 1), diag});
      }
    }
  return {"grid", "n=" + std::to_string(n) + ",connectivity=" + std::to_string(connectivity),
          build_graph(spec)};
}

Fixture binary_tree_fixture(std::size_t depth) {
  if (depth == 0 || depth > 20) throw ValidationError("binary tree depth must be in [1, 20]");
  GraphSpec spec;
  const std::size_t count = (std::size_t{1} << (depth + 1)) - 1;
  const std::size_t first_leaf = (std::size_t{1} << depth) - 1;
  for (std::size_t k = 0; k < count; ++k) {
    spec.vertices.push_back({"t" + std::to_string(k), {}});
    if (k > 0) spec.edges.push_back({"t" + std::to_string((k - 1) / 2), "t" + std::to_string(k), 1.0});
    if (k >= first_leaf) spec.boundary.push_back("t" + std::to_string(k));
  }
  return {"binary_tree", "depth=" + std::to_string(depth), build_graph(spec)};
}

Fixture gasket_fixture(std::size_t level) {
  if (level > 10) throw ValidationError("gasket level must be <= 10");
  // Lattice coordinates (i, j): position i * e1 + j * e2 with e1 = (s, 0),
  // e2 = (s/2, s*sqrt(3)/2), s = 2^-level.
  const long side = 1L << level;
  const double s = 1.0 / static_cast<double>(side);
  using Point = std::pair<long, long>;
  std::vector<std::array<Point, 3>> triangles{{Point{0, 0}, Point{side, 0}, Point{0, side}}};
  for (std::size_t k = 0; k < level; ++k) {
    std::vector<std::array<Point, 3>> next;
    for (const auto& t : triangles) {
      auto mid = [](Point a, Point b) { return Point{(a.first + b.first) / 2, (a.second + b.second) / 2}; };
      const Point ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({ab, t[1], bc});
      next.push_back({ca, bc, t[2]});
    }
    triangles = std::move(next);
  }

  GraphSpec spec;
  std::map<Point, std::string> ids;
  auto vertex_id = [&](Point p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    std::string id = std::to_string(p.first) + "_" + std::to_string(p.second);
    const double x = (static_cast<double>(p.first) + 0.5 * static_cast<double>(p.second)) * s;
    const double y = static_cast<double>(p.second) * s * std::sqrt(3.0) / 2.0;
    spec.vertices.push_back({id, {x, y}});
    ids.emplace(p, id);
    return id;
  };
  for (const auto& t : triangles) {
    const std::string a = vertex_id(t[0]), b = vertex_id(t[1]), c = vertex_id(t[2]);
    spec.edges.push_back({a, b, s});
    spec.edges.push_back({b, c, s});
    spec.edges.push_back({c, a, s});
  }
  spec.boundary = {ids.at({0, 0}), ids.at({side, 0}), ids.at({0, side})};
  return {"gasket", "level=" + std::to_string(level), build_graph(spec)};
}

Fixture random_fixture(std::size_t vertices, std::size_t extra_edges, std::size_t boundary_count,
                       std::uint64_t seed) {
  if (vertices < 2) throw ValidationError("random graph needs at least two vertices");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> length(0.1, 1.0);
  GraphSpec spec;
  auto id = [](std::size_t k) { return "r" + std::to_string(k); };
  for (std::size_t k = 0; k < vertices; ++k) spec.vertices.push_back({id(k), {}});
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (std::size_t k = 1; k < vertices; ++k) {
    std::uniform_int_distribution<std::size_t> parent(0, k - 1);
    const std::size_t p = parent(rng);
    used.emplace(p, k);
    spec.edges.push_back({id(p), id(k), length(rng)});
  }
  std::uniform_int_distribution<std::size_t> any(0, vertices - 1);
  const std::size_t max_extra = vertices * (vertices - 1) / 2 - (vertices - 1);
  for (std::size_t added = 0; added < std::min(extra_edges, max_extra);) {
    std::size_t a = any(rng), b = any(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!used.emplace(a, b).second) continue;
    spec.edges.push_back({id(a), id(b), length(rng)});
    ++added;
  }
  std::vector<std::size_t> order(vertices);
  for (std::size_t k = 0; k < vertices; ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 0; k < std::min(boundary_count, vertices); ++k)
    spec.boundary.push_back(id(order[k]));
  return {"random", "n=" + std::to_string(vertices) + ",seed=" + std::to_string(seed),
          build_graph(spec)};
}

Fixture make_fixture(const std::string& name, std::size_t size, int connectivity) {
  if (name == "interval") return interval_fixture(size);
  if (name == "circle") return circle_fixture(size);
  if (name == "grid") return grid_fixture(size, connectivity);
  if (name == "binary_tree") return binary_tree_fixture(size);
  if (name == "gasket") return gasket_fixture(size);
  throw InputError("unknown fixture '" + name + "'");
}

}  // namespace eikograph
