#include <gtest/gtest.h>

#include <cmath>

#include "eikograph/errors.hpp"
#include "eikograph/field.hpp"
#include "eikograph/fixtures.hpp"
#include "oracles.hpp"

using namespace eikograph;

namespace {

MetricGraph two_point(double length) {
  GraphSpec s;
  s.vertices = {{"a", {0.0}}, {"b", {length}}};
  s.edges = {{"a", "b", length}};
  s.boundary = {"a"};
  return build_graph(s);
}

}  // namespace

TEST(EdgeCost, ConstantOneIsLength) {
  const MetricGraph g = two_point(0.7);
  EXPECT_DOUBLE_EQ(edge_cost(g, constant_field(g, 1.0, FieldRole::rhs_f), 0).cost, 0.7);
}

TEST(EdgeCost, TrapezoidOfZeroAndTwo) {
  const MetricGraph g = two_point(1.0);
  ScalarField f{FieldRole::rhs_f, {0.0, 2.0}};
  EXPECT_DOUBLE_EQ(edge_cost(g, f, 0).cost, 1.0);
}

TEST(EdgeCost, SquareOnRefinedUnitInterval) {
  const Refinement r = refine_mapped(two_point(1.0), 1e-3);
  const ScalarField f = field_from_coords(
      r.graph, [](const std::vector<double>& c) { return c[0] * c[0]; }, FieldRole::rhs_f);
  std::vector<Vertex> path;
  // Walk from a (coordinate 0) along increasing coordinate.
  std::vector<Vertex> order(r.graph.num_vertices());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(),
            [&](Vertex x, Vertex y) { return r.graph.coords(x)[0] < r.graph.coords(y)[0]; });
  const double cost = path_cost(r.graph, f, make_curve(r.graph, order));
  EXPECT_NEAR(cost, 1.0 / 3.0, 1e-6);
}

TEST(EdgeCost, MissingValueThrows) {
  const MetricGraph g = two_point(1.0);
  ScalarField f{FieldRole::rhs_f, {1.0, std::nan("")}};
  EXPECT_THROW(edge_cost(g, f, 0), FieldError);
}

TEST(EdgeCostProperty, BoundsSymmetryScaling) {
  const MetricGraph g = random_fixture(30, 30, 2, 3).graph;
  const ScalarField f = oracle::random_field(g, 0.0, 3.0, 17, FieldRole::rhs_f);
  ScalarField f2 = f;
  for (auto& v : f2.values) v *= 2.5;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const double c = edge_cost(g, f, e).cost;
    EXPECT_GE(c, ed.length * std::min(f[ed.a], f[ed.b]) - 1e-15);
    EXPECT_LE(c, ed.length * std::max(f[ed.a], f[ed.b]) + 1e-15);
    EXPECT_EQ(segment_cost(ed.length, f[ed.a], f[ed.b]), segment_cost(ed.length, f[ed.b], f[ed.a]));
    EXPECT_NEAR(edge_cost(g, f2, e).cost, 2.5 * c, 1e-12);
  }
}

TEST(EdgeCostProperty, AdditiveUnderRefinement) {
  const MetricGraph g = random_fixture(12, 8, 2, 4).graph;
  const ScalarField f = oracle::random_field(g, 0.1, 2.0, 8, FieldRole::rhs_f);
  const Refinement r = refine_mapped(g, 0.05);
  const ScalarField fine = interpolate(r, f);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const ShortestPathTree t = length_tree(r.graph, ed.a);
    const Curve c = make_curve(r.graph, t.path_to(ed.b));
    if (std::abs(c.length() - ed.length) > 1e-12) continue;  // a shorter detour exists
    EXPECT_NEAR(path_cost(r.graph, fine, c), edge_cost(g, f, e).cost, 1e-12);
  }
}

TEST(ValidateField, OnePassesAtThreshold) {
  const MetricGraph g = interval_fixture(10).graph;
  EXPECT_TRUE(validate_field(constant_field(g, 1.0, FieldRole::rhs_f), 1e-6).pass);
}

TEST(ValidateField, InteriorZeroIsListed) {
  const MetricGraph g = interval_fixture(10).graph;
  ScalarField f = constant_field(g, 1.0, FieldRole::rhs_f);
  const Vertex z = g.vertex("0");
  f[z] = 0.0;
  const FieldReport r = validate_field(f, 1e-6);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.offending, std::vector<Vertex>{z});
  EXPECT_EQ(r.min_value, 0.0);
}

TEST(ValidateField, ZeroPassesInSubsolutionMode) {
  const MetricGraph g = interval_fixture(10).graph;
  EXPECT_TRUE(validate_field(constant_field(g, 0.0, FieldRole::rhs_f), 0.0).pass);
  ScalarField neg = constant_field(g, 0.0, FieldRole::rhs_f);
  neg[3] = -1e-3;
  EXPECT_FALSE(validate_field(neg, 0.0).pass);
}

TEST(ScalarFieldBasics, BoundaryDataAndCoords) {
  const MetricGraph g = interval_fixture(4).graph;
  const ScalarField z = constant_boundary(g, 2.0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) EXPECT_EQ(z.defined(v), g.is_boundary(v));
  EXPECT_NO_THROW(require_field(g, z, FieldRole::boundary_zeta));
  EXPECT_THROW(require_field(g, z, FieldRole::rhs_f), FieldError);
  EXPECT_THROW(field_from_coords(binary_tree_fixture(2).graph,
                                 [](const std::vector<double>&) { return 1.0; }, FieldRole::rhs_f),
               FieldError);
}

TEST(Lipschitz, OfLinearField) {
  const MetricGraph g = grid_fixture(8).graph;
  const ScalarField f = field_from_coords(
      g, [](const std::vector<double>& c) { return 1.0 + 0.5 * c[0]; }, FieldRole::rhs_f);
  EXPECT_NEAR(lipschitz_constant(g, f), 0.5, 1e-12);
}
