#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "eikograph/cli.hpp"
#include "eikograph/errors.hpp"
#include "eikograph/fixtures.hpp"
#include "eikograph/io.hpp"

using namespace eikograph;
namespace fs = std::filesystem;

namespace {

class Workspace : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("eikograph_" + std::string(info->name()) + "_" +
                                        std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int cli(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(GraphJson, RoundTripIsExact) {
  for (const Fixture& fx : {interval_fixture(200), gasket_fixture(3), grid_fixture(5, 8), binary_tree_fixture(3),
                            random_fixture(20, 10, 2, 3)}) {
    const MetricGraph h = parse_graph_json(graph_to_json(fx.graph));
    ASSERT_EQ(h.num_vertices(), fx.graph.num_vertices());
    ASSERT_EQ(h.num_edges(), fx.graph.num_edges());
    for (Vertex v = 0; v < h.num_vertices(); ++v) {
      EXPECT_EQ(h.id(v), fx.graph.id(v));
      EXPECT_EQ(h.coords(v), fx.graph.coords(v));
      EXPECT_EQ(h.is_boundary(v), fx.graph.is_boundary(v));
    }
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      EXPECT_EQ(h.edge(e).a, fx.graph.edge(e).a);
      EXPECT_EQ(h.edge(e).b, fx.graph.edge(e).b);
      EXPECT_EQ(h.edge(e).length, fx.graph.edge(e).length);
    }
    EXPECT_EQ(graph_to_json(h), graph_to_json(fx.graph));
  }
}

TEST(GraphJson, SyntaxErrorNamesLine) {
  try {
    parse_graph_json("{\n \"vertices\": [\n  {\"id\": \"a\"},\n  oops\n ]\n}", "g.json");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("g.json:4"), std::string::npos) << e.what();
  }
}

TEST(GraphJson, StructureErrorNamesField) {
  try {
    parse_graph_json(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"a":"a","b":"b"}]})", "g.json");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("edges[0].length"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_graph_json(R"({"vertices":[{"id":"a"},{"id":"b"}],"edges":[{"a":"a","b":"b","length":0}]})"),
               InputError);
  EXPECT_THROW(parse_graph_json(R"({"vertices":[{"id":1}],"edges":[]})"), InputError);
}

TEST(FieldCsv, ParsesAndReportsLines) {
  const MetricGraph g = interval_fixture(2).graph;
  const ScalarField f = parse_field_csv(g, "vertex_id,value\n-1,0.5\n0,1\n1,2e-1\n", FieldRole::rhs_f);
  EXPECT_EQ(f[g.vertex("1")], 0.2);
  const ScalarField u = parse_field_csv(g, "vertex_id,u,exit_vertex,attained\n-1,0,-1,true\n0,1,-1,\n1,0,1,true\n",
                                        FieldRole::solution_u);
  EXPECT_EQ(u[g.vertex("0")], 1.0);
  auto message = [&](const std::string& text, FieldRole role) {
    try {
      parse_field_csv(g, text, role, "f.csv");
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message("vertex_id,value\n-1,0\n0,abc\n1,0\n", FieldRole::rhs_f).find("f.csv:3"), std::string::npos);
  EXPECT_NE(message("vertex_id,value\n-1,0\nzz,1\n", FieldRole::rhs_f).find("unknown vertex_id"), std::string::npos);
  EXPECT_NE(message("vertex_id,value\n-1,0\n1,0\n", FieldRole::rhs_f).find("'0'"), std::string::npos);
  EXPECT_NE(message("id,value\n", FieldRole::rhs_f).find("f.csv:1"), std::string::npos);
  EXPECT_NE(message("vertex_id,value\n-1,0\n-1,1\n", FieldRole::rhs_f).find("duplicate"), std::string::npos);
  EXPECT_TRUE(message("vertex_id,value\n-1,0\n1,3\n", FieldRole::boundary_zeta).empty());
}

TEST(FieldCsv, RoundTrip) {
  const MetricGraph g = gasket_fixture(2).graph;
  const ScalarField f = field_from_coords(
      g, [](const std::vector<double>& c) { return std::sin(c[0]) + c[1] / 3; }, FieldRole::rhs_f);
  const ScalarField back = parse_field_csv(g, field_to_csv(g, f), FieldRole::rhs_f);
  EXPECT_EQ(back.values, f.values);
}

TEST(FieldSpec, InlineForms) {
  const MetricGraph g = interval_fixture(4).graph;
  const ScalarField c = load_field(g, "const:2.5", FieldRole::rhs_f);
  for (double v : c.values) EXPECT_EQ(v, 2.5);
  const ScalarField l = load_field(g, "linear:1,0.5", FieldRole::rhs_f);
  EXPECT_EQ(l[g.vertex("-0.5")], 0.75);
  const ScalarField z = load_field(g, "const:0", FieldRole::boundary_zeta);
  EXPECT_FALSE(z.defined(g.vertex("0")));
  EXPECT_TRUE(z.defined(g.vertex("1")));
  EXPECT_THROW(load_field(g, "const:x", FieldRole::rhs_f), InputError);
  EXPECT_THROW(load_field(g, "linear:1", FieldRole::rhs_f), InputError);
  EXPECT_THROW(load_field(binary_tree_fixture(2).graph, "linear:1,1", FieldRole::rhs_f), InputError);
  EXPECT_THROW(load_field(g, "/nonexistent/f.csv", FieldRole::rhs_f), InputError);
}

TEST(PlotCsv, IntervalAndGasket) {
  const MetricGraph g = interval_fixture(200).graph;
  const ScalarField u = constant_field(g, 1.0, FieldRole::solution_u);
  const std::string p = plot_csv(g, u, false);
  EXPECT_EQ(count_lines(p), 202u);
  EXPECT_EQ(p.substr(0, p.find('\n')), "vertex_id,x,u");
  EXPECT_THROW(plot_csv(g, u, true), InputError);

  const MetricGraph gk = gasket_fixture(2).graph;
  const std::string q = plot_csv(gk, constant_field(gk, 0.0, FieldRole::solution_u), true);
  EXPECT_EQ(q.substr(0, q.find('\n')), "vertex_id,x,y,u");
  EXPECT_NE(q.find("\n0_4,0.5,0.8660254037844386"), std::string::npos);

  const MetricGraph t = binary_tree_fixture(2).graph;
  const std::string r = plot_csv(t, constant_field(t, 0.0, FieldRole::solution_u), false);
  EXPECT_EQ(r.substr(0, r.find('\n')), "vertex_id,u");
}

TEST_F(Workspace, FixtureSolvePipeline) {
  ASSERT_EQ(cli({"fixture", "--name", "interval", "--n", "200", "--out", path("g.json")}), 0);
  ASSERT_EQ(cli({"solve", "--graph", path("g.json"), "--f", "const:1", "--zeta", "const:0", "--out",
                 path("u.csv"), "--plot", path("p.csv"), "--certificate", path("c.json")}),
            0)
      << err_.str();
  const std::string u = read_text(path("u.csv"));
  EXPECT_EQ(count_lines(u), 202u);
  EXPECT_EQ(u.substr(0, u.find('\n')), "vertex_id,u,exit_vertex,attained");
  EXPECT_NE(u.find("\n0,1.0000000000000007,-1,\n"), std::string::npos);

  // Plot rows carry the same u values.
  const MetricGraph g = parse_graph_json(read_text(path("g.json")));
  const ScalarField from_u = load_field(g, path("u.csv"), FieldRole::solution_u);
  const ScalarField from_plot = parse_field_csv(g, read_text(path("p.csv")), FieldRole::solution_u);
  EXPECT_EQ(from_u.values, from_plot.values);
  EXPECT_NE(read_text(path("c.json")).find("\"strong_condition\": true"), std::string::npos);
}

TEST_F(Workspace, OutputsAreByteIdenticalAcrossRuns) {
  ASSERT_EQ(cli({"fixture", "--name", "gasket", "--level", "3", "--out", path("g.json")}), 0);
  for (const char* tag : {"a", "b"})
    ASSERT_EQ(cli({"solve", "--graph", path("g.json"), "--out", path(std::string("u_") + tag + ".csv"), "--plot",
                   path(std::string("p_") + tag + ".csv"), "--layout"}),
              0)
        << err_.str();
  EXPECT_EQ(read_text(path("u_a.csv")), read_text(path("u_b.csv")));
  EXPECT_EQ(read_text(path("p_a.csv")), read_text(path("p_b.csv")));
}

TEST_F(Workspace, CheckMongeFailsAtOrigin) {
  const MetricGraph g = interval_fixture(200).graph;
  write_text(path("g.json"), graph_to_json(g));
  write_text(path("u.csv"), field_to_csv(g, field_from_coords(
                                             g, [](const std::vector<double>& c) { return std::abs(c[0]) - 1.0; },
                                             FieldRole::solution_u)));
  write_text(path("f.csv"), field_to_csv(g, constant_field(g, 1.0, FieldRole::rhs_f)));
  EXPECT_EQ(cli({"check", "monge", "--u", path("u.csv"), "--f", path("f.csv"), "--graph", path("g.json"),
                 "--report", path("r.csv")}),
            1);
  EXPECT_NE(out_.str().find("worst '0'"), std::string::npos) << out_.str();
  EXPECT_NE(read_text(path("r.csv")).find("\n0,1,fail\n"), std::string::npos);

  // A config file can relax the tolerance; an explicit flag wins over it.
  write_text(path("cfg.json"), R"({"check_tol": 2.0})");
  EXPECT_EQ(cli({"--config", path("cfg.json"), "check", "monge", "--u", path("u.csv"), "--graph", path("g.json")}), 0);
  EXPECT_EQ(cli({"--config", path("cfg.json"), "check", "monge", "--u", path("u.csv"), "--graph", path("g.json"),
                 "--tol", "0.5"}),
            1);
  write_text(path("bad.json"), R"({"no_such_key": 1})");
  EXPECT_EQ(cli({"--config", path("bad.json"), "check", "monge", "--u", path("u.csv"), "--graph", path("g.json")}), 2);
}

TEST_F(Workspace, CheckKindsOnSolverOutput) {
  ASSERT_EQ(cli({"fixture", "--name", "grid", "--n", "16", "--out", path("g.json")}), 0);
  ASSERT_EQ(cli({"solve", "--graph", path("g.json"), "--f", "linear:1,0.5", "--out", path("u.csv")}), 0);
  for (const char* kind : {"monge", "csub", "csuper", "regularity"})
    EXPECT_EQ(cli({"check", kind, "--graph", path("g.json"), "--u", path("u.csv"), "--f", "linear:1,0.5"}), 0)
        << kind << ": " << out_.str() << err_.str();
  EXPECT_EQ(cli({"check", "curvature", "--graph", path("g.json"), "--u", path("u.csv")}), 2);
}

TEST_F(Workspace, SeedFromEnvironment) {
  ASSERT_EQ(cli({"fixture", "--name", "interval", "--n", "20", "--out", path("g.json")}), 0);
  ASSERT_EQ(cli({"solve", "--graph", path("g.json"), "--out", path("u.csv")}), 0);
  ::setenv("EIKOGRAPH_SEED", "1234", 1);
  EXPECT_EQ(default_seed(), 1234u);
  EXPECT_EQ(cli({"check", "csub", "--graph", path("g.json"), "--u", path("u.csv")}), 0);
  EXPECT_NE(out_.str().find("seed 1234"), std::string::npos) << out_.str();
  EXPECT_EQ(cli({"check", "csub", "--graph", path("g.json"), "--u", path("u.csv"), "--seed", "9"}), 0);
  EXPECT_NE(out_.str().find("seed 9"), std::string::npos);
  ::unsetenv("EIKOGRAPH_SEED");
  EXPECT_EQ(default_seed(), kDefaultSeed);
}

TEST_F(Workspace, SolveHRejectsNonMonotoneHamiltonian) {
  ASSERT_EQ(cli({"fixture", "--name", "interval", "--n", "200", "--out", path("g.json")}), 0);
  EXPECT_EQ(cli({"solve-h", "--graph", path("g.json"), "--hamiltonian", "ex1", "--out", path("u.csv")}), 2);
  EXPECT_NE(err_.str().find("decreases"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(path("u.csv")));
}

TEST_F(Workspace, SolveHBuiltinAndExpression) {
  ASSERT_EQ(cli({"fixture", "--name", "interval", "--n", "200", "--out", path("g.json")}), 0);
  ASSERT_EQ(cli({"solve-h", "--graph", path("g.json"), "--hamiltonian", "affine-rho", "--tol", "1e-10", "--out",
                 path("a.csv")}),
            0)
      << err_.str();
  ASSERT_EQ(cli({"solve-h", "--graph", path("g.json"), "--hamiltonian", "p^2 - 1", "--out", path("b.csv")}), 0)
      << err_.str();
  ASSERT_EQ(cli({"solve", "--graph", path("g.json"), "--out", path("c.csv")}), 0);
  EXPECT_EQ(read_text(path("b.csv")), read_text(path("c.csv")));
  const MetricGraph g = parse_graph_json(read_text(path("g.json")));
  const ScalarField a = load_field(g, path("a.csv"), FieldRole::solution_u);
  EXPECT_NEAR(a[g.vertex("0")], 1.0 - std::exp(-1.0), 1e-5);
  EXPECT_EQ(cli({"solve-h", "--graph", path("g.json"), "--hamiltonian", "p +* 1", "--out", path("d.csv")}), 2);
  EXPECT_EQ(cli({"solve-h", "--graph", path("g.json"), "--hamiltonian", "affine-rho", "--max-iter", "2", "--out",
                 path("e.csv")}),
            1);
}

TEST_F(Workspace, CompareReportsHypothesis) {
  const MetricGraph g = interval_fixture(200).graph;
  write_text(path("g.json"), graph_to_json(g));
  auto cone = [&](double s) {
    return field_to_csv(g, field_from_coords(
                               g, [s](const std::vector<double>& c) { return s * (1.0 - std::abs(c[0])); },
                               FieldRole::solution_u));
  };
  write_text(path("full.csv"), cone(1.0));
  write_text(path("half.csv"), cone(0.5));
  EXPECT_EQ(cli({"compare", "--graph", path("g.json"), "--u", path("half.csv"), "--v", path("full.csv")}), 0)
      << out_.str();
  EXPECT_EQ(cli({"compare", "--graph", path("g.json"), "--u", path("full.csv"), "--v", path("half.csv")}), 1);
  EXPECT_NE(out_.str().find("hypothesis failed: supersolution"), std::string::npos) << out_.str();
}

TEST_F(Workspace, SuiteWritesReport) {
  EXPECT_EQ(cli({"suite", "--fixture", "gasket", "--level", "4", "--f", "const:1", "--levels", "3", "--report",
                 path("s.csv")}),
            0)
      << out_.str() << err_.str();
  const std::string s = read_text(path("s.csv"));
  EXPECT_EQ(s.substr(0, s.find('\n')), "fixture,level,check,max_residual,tol,verdict");
  EXPECT_EQ(count_lines(s), 13u);
  EXPECT_EQ(s.find(",fail"), std::string::npos);
}

TEST_F(Workspace, InduceMetricAndRefine) {
  write_text(path("pts.json"), R"({
  "points": [{"id": "a", "coords": [0, 0]}, {"id": "b", "coords": [1, 0]}, {"id": "c", "coords": [1, 1]}],
  "adjacency": [["a", "b"], ["b", "c"]],
  "boundary": ["a"]
})");
  ASSERT_EQ(cli({"induce-metric", "--points", path("pts.json"), "--out", path("g.json"), "--probe", path("probe.json")}), 0)
      << err_.str();
  const MetricGraph g = parse_graph_json(read_text(path("g.json")));
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_NE(read_text(path("probe.json")).find("\"heuristic\": true"), std::string::npos);

  write_text(path("ring.json"), R"({"points": [{"id": "a", "coords": [0, 0]}, {"id": "b", "coords": [1, 0]},
    {"id": "c", "coords": [3, 0]}], "adjacency": {"radius": 1.5}})");
  EXPECT_EQ(cli({"induce-metric", "--points", path("ring.json"), "--out", path("r.json")}), 2);
  EXPECT_NE(err_.str().find("connect"), std::string::npos) << err_.str();

  ASSERT_EQ(cli({"refine", "--graph", path("g.json"), "--h-max", "0.25", "--out", path("fine.json")}), 0);
  EXPECT_EQ(parse_graph_json(read_text(path("fine.json"))).num_edges(), 8u);
}

TEST_F(Workspace, InputErrorsExitTwo) {
  write_text(path("bad.json"), "{\n\"vertices\": [\n,\n]}");
  EXPECT_EQ(cli({"solve", "--graph", path("bad.json"), "--out", path("u.csv")}), 2);
  EXPECT_NE(err_.str().find("bad.json:3"), std::string::npos) << err_.str();
  EXPECT_EQ(cli({"frobnicate"}), 2);
  EXPECT_EQ(cli({}), 2);
  EXPECT_EQ(cli({"solve", "--graph", path("missing.json"), "--out", path("u.csv")}), 2);
  ASSERT_EQ(cli({"fixture", "--name", "circle", "--n", "12", "--out", path("c.json")}), 0);
  EXPECT_EQ(cli({"solve", "--graph", path("c.json"), "--out", path("u.csv")}), 2);  // no boundary
  EXPECT_EQ(cli({"refine", "--graph", path("c.json"), "--h-max", "0.1", "--out", path("c.json")}), 2);
  EXPECT_EQ(cli({"fixture", "--name", "klein", "--n", "3", "--out", path("k.json")}), 2);
  EXPECT_EQ(cli({"--help"}), 0);
}

TEST_F(Workspace, StandaloneBinary) {
  const char* exe = std::getenv("EIKOGRAPH_CLI");
  if (exe == nullptr) GTEST_SKIP() << "EIKOGRAPH_CLI not set";
  const std::string cmd = std::string(exe) + " fixture --name interval --n 10 --out " + path("g.json") +
                          " > /dev/null && " + exe + " solve --graph " + path("g.json") + " --out " +
                          path("u.csv") + " > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(count_lines(read_text(path("u.csv"))), 12u);
  const int status = std::system((std::string(exe) + " solve --graph " + path("nope.json") + " --out " +
                                  path("v.csv") + " 2> /dev/null")
                                     .c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
