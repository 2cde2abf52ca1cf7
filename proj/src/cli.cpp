#include "eikograph/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eikograph/checks.hpp"
#include "eikograph/eikonal.hpp"
#include "eikograph/errors.hpp"
#include "eikograph/fixtures.hpp"
#include "eikograph/hamiltonian.hpp"
#include "eikograph/io.hpp"
#include "eikograph/verify.hpp"

namespace eikograph {

using nlohmann::json;

std::uint64_t default_seed() {
  const char* env = std::getenv("EIKOGRAPH_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 0);
  return *end == '\0' ? v : kDefaultSeed;
}

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

/// Options bound to RunConfig fields, by config key, so a config file can fill
/// whatever the command line left unset.
class ConfigBinding {
 public:
  explicit ConfigBinding(RunConfig& cfg) : cfg_(cfg) {}

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    CLI::Option* opt = nullptr;
    if (key == "seed") opt = app->add_option(flag, cfg_.seed, help);
    else if (key == "positivity_threshold") opt = app->add_option(flag, cfg_.positivity_threshold, help);
    else if (key == "check_tol") opt = app->add_option(flag, cfg_.check_tol, help);
    else if (key == "bisection_tol") opt = app->add_option(flag, cfg_.bisection_tol, help);
    else if (key == "picard_tol") opt = app->add_option(flag, cfg_.picard_tol, help);
    else if (key == "max_iter") opt = app->add_option(flag, cfg_.max_iter, help);
    else if (key == "band") opt = app->add_option(flag, cfg_.band, help);
    else if (key == "band_tol") opt = app->add_option(flag, cfg_.band_tol, help);
    else if (key == "compare_tol") opt = app->add_option(flag, cfg_.compare_tol, help);
    else if (key == "levels") opt = app->add_option(flag, cfg_.levels, help);
    options_[key].push_back(opt);
  }

  /// Applies `doc` to every key not given on the command line.
  void apply(const json& doc, const std::string& source) {
    if (!doc.is_object()) throw InputError(source + ": config must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      auto it = options_.find(key);
      if (it == options_.end() && !known(key))
        throw InputError(source + ": field '" + key + "': unknown config key");
      bool given = false;
      if (it != options_.end())
        for (const CLI::Option* o : it->second) given = given || o->count() > 0;
      if (given) continue;
      if (!value.is_number()) throw InputError(source + ": field '" + key + "': expected a number");
      if (key == "seed") cfg_.seed = value.get<std::uint64_t>();
      else if (key == "positivity_threshold") cfg_.positivity_threshold = value.get<double>();
      else if (key == "check_tol") cfg_.check_tol = value.get<double>();
      else if (key == "bisection_tol") cfg_.bisection_tol = value.get<double>();
      else if (key == "picard_tol") cfg_.picard_tol = value.get<double>();
      else if (key == "max_iter") cfg_.max_iter = value.get<std::size_t>();
      else if (key == "band") cfg_.band = value.get<double>();
      else if (key == "band_tol") cfg_.band_tol = value.get<double>();
      else if (key == "compare_tol") cfg_.compare_tol = value.get<double>();
      else if (key == "levels") cfg_.levels = value.get<std::size_t>();
    }
  }

 private:
  static bool known(const std::string& key) {
    static const std::vector<std::string> keys{"seed",       "positivity_threshold", "check_tol",
                                               "bisection_tol", "picard_tol",       "max_iter",
                                               "band",       "band_tol",             "compare_tol",
                                               "levels"};
    return std::find(keys.begin(), keys.end(), key) != keys.end();
  }

  RunConfig& cfg_;
  std::map<std::string, std::vector<CLI::Option*>> options_;
};

void validate_config(const RunConfig& c) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw InputError(std::string("config: ") + name + " must be > 0");
  };
  if (c.positivity_threshold < 0.0) throw InputError("config: positivity_threshold must be >= 0");
  positive(c.bisection_tol, "bisection_tol");
  positive(c.picard_tol, "picard_tol");
  positive(c.band_tol, "band_tol");
  if (c.compare_tol < 0.0) throw InputError("config: compare_tol must be >= 0");
  if (c.max_iter == 0) throw InputError("config: max_iter must be >= 1");
  if (c.levels == 0) throw InputError("config: levels must be >= 1");
}

void require_distinct(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
  for (const auto& o : outputs) {
    if (o.empty()) continue;
    for (const auto& i : inputs)
      if (!i.empty() && i == o) throw InputError("output path '" + o + "' is also an input");
  }
}

std::string summarize(const CheckReport& r) {
  std::ostringstream s;
  s << r.name << ": " << (r.pass ? "PASS" : "FAIL") << ", " << r.failures() << " of "
    << r.items.size() << " items over tol " << format_number(r.tolerance);
  if (r.worst) s << "; worst '" << r.items[*r.worst].id << "' residual " << format_number(r.max_residual());
  return s.str();
}

std::string pair_ids(const MetricGraph& g, std::pair<Vertex, Vertex> p) {
  if (p.first == kNoVertex) return "";
  return g.id(p.first) + "," + g.id(p.second);
}

json certificate_json(const MetricGraph& g, const BoundaryCertificate& c) {
  json unattained = json::array();
  for (Vertex v : c.unattained) unattained.push_back(g.id(v));
  return {{"lipschitz", c.lipschitz},
          {"inf_f", c.inf_f},
          {"sup_f", c.sup_f},
          {"strong_condition", c.strong_condition},
          {"strong_tight", pair_ids(g, c.strong_tight)},
          {"curve_condition", c.curve_condition},
          {"curve_tight", pair_ids(g, c.curve_tight)},
          {"one_sided_bound", c.one_sided_bound},
          {"two_sided_checked", c.two_sided_checked},
          {"two_sided_bound", c.two_sided_bound},
          {"unattained", unattained}};
}

RhoMonotonicity parse_rho(const std::string& s) {
  if (s == "independent") return RhoMonotonicity::independent;
  if (s == "nondecreasing") return RhoMonotonicity::nondecreasing;
  if (s == "strictly_increasing") return RhoMonotonicity::strictly_increasing;
  throw InputError("unknown rho monotonicity '" + s + "'");
}

MetricGraph load_graph(const std::string& path) { return parse_graph_json(read_text(path), path); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.seed = default_seed();
  ConfigBinding bind(cfg);

  CLI::App app{"Eikonal equations on metric graphs", "eikograph"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON object overriding default tolerances");

  // fixture
  auto* fixture = app.add_subcommand("fixture", "Write a generated graph as JSON");
  std::string fx_name;
  std::size_t fx_size = 0;
  int fx_conn = 4;
  std::string fx_out;
  fixture->add_option("--name", fx_name, "interval | circle | grid | binary_tree | gasket")->required();
  fixture->add_option("--n,--level,--depth", fx_size, "Size parameter")->required();
  fixture->add_option("--connectivity", fx_conn, "Grid connectivity (4 or 8)");
  fixture->add_option("--out", fx_out, "Graph JSON path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "Solve |grad u| = f with Dirichlet data");
  std::string graph_path, f_spec = "const:1", zeta_spec = "const:0", out_path, plot_path, cert_path;
  bool layout = false;
  solve->add_option("--graph", graph_path, "Graph JSON")->required();
  solve->add_option("--f", f_spec, "Right-hand side: const:c, linear:a,b or CSV");
  solve->add_option("--zeta", zeta_spec, "Boundary data: const:c, linear:a,b or CSV");
  solve->add_option("--out", out_path, "Value CSV")->required();
  solve->add_option("--plot", plot_path, "Plot data CSV");
  solve->add_flag("--layout", layout, "Require 2-D coordinates in the plot data");
  solve->add_option("--certificate", cert_path, "Boundary certificate JSON");
  bind.add(solve, "--threshold", "positivity_threshold", "Lower bound required of f");

  // solve-h
  auto* solve_h = app.add_subcommand("solve-h", "Solve H(x, u, |grad u|) = 0");
  std::string ham = "linear";
  double lambda0 = 1e-3;
  std::string rho_mono = "independent";
  std::vector<double> rho_range{-1.0, 1.0};
  std::size_t samples = 5;
  solve_h->add_option("--graph", graph_path, "Graph JSON")->required();
  auto* ham_opt = solve_h->add_option("--hamiltonian", ham, "Builtin name or expression in p, rho, x, y");
  ham_opt->required();
  auto* lambda_opt = solve_h->add_option("--lambda0", lambda0, "Monotonicity margin for expressions");
  auto* rho_opt = solve_h->add_option("--rho-monotonicity", rho_mono,
                                      "independent | nondecreasing | strictly_increasing");
  solve_h->add_option("--rho-range", rho_range, "Validation range for rho")->expected(2);
  solve_h->add_option("--samples", samples, "Validation samples per axis");
  solve_h->add_option("--zeta", zeta_spec, "Boundary data");
  solve_h->add_option("--out", out_path, "Value CSV")->required();
  solve_h->add_option("--plot", plot_path, "Plot data CSV");
  solve_h->add_flag("--layout", layout, "Require 2-D coordinates in the plot data");
  bind.add(solve_h, "--picard-tol,--tol", "picard_tol", "Picard stop tolerance");
  bind.add(solve_h, "--max-iter", "max_iter", "Picard iteration cap");
  bind.add(solve_h, "--bisection-tol", "bisection_tol", "Reduction tolerance");

  // check
  auto* check = app.add_subcommand("check", "Check a candidate solution");
  std::string kind, u_path, mode = "both", report_path;
  check->add_option("kind", kind, "monge | csub | csuper | regularity")
      ->required()
      ->check(CLI::IsMember({"monge", "csub", "csuper", "regularity"}));
  check->add_option("--graph", graph_path, "Graph JSON")->required();
  check->add_option("--u", u_path, "Candidate CSV")->required();
  check->add_option("--f", f_spec, "Right-hand side");
  auto* check_ham = check->add_option("--hamiltonian", ham, "Monge check against H instead of f");
  check->add_option("--mode", mode, "both | sub | super")->check(CLI::IsMember({"both", "sub", "super"}));
  check->add_option("--report", report_path, "Per-item CSV");
  bind.add(check, "--tol", "check_tol", "Tolerance (negative: default)");
  bind.add(check, "--seed", "seed", "Sampling seed");

  // compare
  auto* cmp = app.add_subcommand("compare", "Comparison principle harness");
  std::string v_path;
  cmp->add_option("--graph", graph_path, "Graph JSON")->required();
  cmp->add_option("--u", u_path, "Subsolution CSV")->required();
  cmp->add_option("--v", v_path, "Supersolution CSV")->required();
  cmp->add_option("--f", f_spec, "Right-hand side");
  cmp->add_option("--report", report_path, "Per-vertex CSV");
  bind.add(cmp, "--band", "band", "Boundary band radius (negative: 2 h_max)");
  bind.add(cmp, "--band-tol", "band_tol", "Allowed u - v in the band");
  bind.add(cmp, "--tol", "compare_tol", "Allowed u - v");
  bind.add(cmp, "--monge-tol", "check_tol", "Sub/super check tolerance");

  // suite
  auto* suite = app.add_subcommand("suite", "Equivalence suite over refinement levels");
  std::string suite_fixture;
  std::size_t suite_size = 0;
  int suite_conn = 4;
  suite->add_option("--fixture", suite_fixture, "Fixture name")->required();
  suite->add_option("--n,--level,--depth", suite_size, "Fixture size")->required();
  suite->add_option("--connectivity", suite_conn, "Grid connectivity");
  suite->add_option("--f", f_spec, "Right-hand side");
  suite->add_option("--zeta", zeta_spec, "Boundary data");
  suite->add_option("--report", report_path, "Suite CSV");
  bind.add(suite, "--levels", "levels", "Number of refinement levels");
  bind.add(suite, "--seed", "seed", "Sampling seed");

  // induce-metric
  auto* induce = app.add_subcommand("induce-metric", "Graph of the intrinsic metric of a point set");
  std::string points_path, probe_path;
  std::size_t max_triples = 20000, max_sources = 32;
  induce->add_option("--points", points_path, "Point cloud JSON")->required();
  induce->add_option("--out", out_path, "Graph JSON")->required();
  induce->add_option("--probe", probe_path, "Consistency probe JSON");
  induce->add_option("--max-triples", max_triples, "Triangle samples");
  induce->add_option("--max-sources", max_sources, "Search sources for the probe");
  bind.add(induce, "--seed", "seed", "Sampling seed");

  // refine
  auto* refine_cmd = app.add_subcommand("refine", "Subdivide edges to a maximum length");
  double h = 0.0;
  refine_cmd->add_option("--graph", graph_path, "Graph JSON")->required();
  refine_cmd->add_option("--h-max", h, "Maximum edge length")->required();
  refine_cmd->add_option("--out", out_path, "Graph JSON")->required();

  std::vector<const char*> argv{"eikograph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }

  try {
    if (!config_path.empty()) bind.apply(json::parse(read_text(config_path), nullptr, false), config_path);
    validate_config(cfg);

    if (*fixture) {
      const Fixture fx = make_fixture(fx_name, fx_size, fx_conn);
      write_text(fx_out, graph_to_json(fx.graph));
      out << fx.name << " " << fx.parameters << ": " << fx.graph.num_vertices() << " vertices, "
          << fx.graph.num_edges() << " edges\n";
      return kExitPass;
    }

    if (*solve) {
      require_distinct({graph_path, f_spec, zeta_spec}, {out_path, plot_path, cert_path});
      const MetricGraph g = load_graph(graph_path);
      DirichletProblem p{g, load_field(g, f_spec, FieldRole::rhs_f),
                         load_field(g, zeta_spec, FieldRole::boundary_zeta), cfg.positivity_threshold};
      const ValueFunction v = solve_dirichlet(p);
      write_text(out_path, value_to_csv(g, v));
      if (!plot_path.empty()) write_text(plot_path, plot_csv(g, v.u, layout));
      const BoundaryCertificate cert = check_boundary_consistency(p, v);
      if (!cert_path.empty()) write_text(cert_path, certificate_json(g, cert).dump(1) + "\n");
      double top = 0.0;
      for (double x : v.u.values) top = std::max(top, x);
      out << "solved " << g.num_vertices() << " vertices, max u " << format_number(top) << "\n";
      if (!cert.unattained.empty())
        err << "warning: boundary data not attained at " << cert.unattained.size()
            << " vertices (first '" << g.id(cert.unattained.front()) << "')\n";
      return kExitPass;
    }

    if (*solve_h) {
      require_distinct({graph_path, zeta_spec}, {out_path, plot_path});
      const MetricGraph g = load_graph(graph_path);
      HamiltonianSpec spec;
      if (is_builtin_hamiltonian(ham)) {
        spec = builtin_hamiltonian(ham);
        if (lambda_opt->count()) spec.lambda0 = lambda0;
        if (rho_opt->count()) spec.rho_monotonicity = parse_rho(rho_mono);
      } else {
        spec = expression_hamiltonian(ham, g, lambda0, parse_rho(rho_mono));
      }
      const HamiltonianReport rep = validate_hamiltonian(spec, g, rho_range[0], rho_range[1], samples);
      if (!rep.pass) {
        err << "error: Hamiltonian '" << spec.name << "' rejected: " << rep.counterexample << "\n";
        return kExitInput;
      }
      GeneralOptions opts;
      opts.tol = cfg.picard_tol;
      opts.max_iter = cfg.max_iter;
      opts.bisection_tol = cfg.bisection_tol;
      const GeneralSolution sol = solve_general(g, spec, load_field(g, zeta_spec, FieldRole::boundary_zeta), opts);
      write_text(out_path, value_to_csv(g, sol.value));
      if (!plot_path.empty()) write_text(plot_path, plot_csv(g, sol.value.u, layout));
      out << "solved in " << sol.iterations << " eikonal solves; " << summarize(sol.monge) << "\n";
      return kExitPass;
    }

    if (*check) {
      require_distinct({graph_path, u_path, f_spec}, {report_path});
      const MetricGraph g = load_graph(graph_path);
      const ScalarField u = load_field(g, u_path, FieldRole::solution_u);
      CheckReport rep;
      bool pass = true;
      if (kind == "regularity") {
        const double tol = cfg.check_tol >= 0.0
                               ? cfg.check_tol
                               : default_slope_tolerance(g, load_field(g, f_spec, FieldRole::rhs_f));
        rep = check_regularity(g, u, tol);
      } else if (kind == "monge" && check_ham->count()) {
        HamiltonianSpec spec = is_builtin_hamiltonian(ham)
                                   ? builtin_hamiltonian(ham)
                                   : expression_hamiltonian(ham, g, 1e-3, RhoMonotonicity::independent);
        const MongeMode m = mode == "sub" ? MongeMode::sub : mode == "super" ? MongeMode::super : MongeMode::both;
        rep = check_monge(g, u, [&spec](Vertex x, double r, double p) { return spec(x, r, p); },
                          cfg.check_tol < 0.0 ? 1e-9 : cfg.check_tol, m);
      } else {
        const ScalarField f = load_field(g, f_spec, FieldRole::rhs_f);
        if (kind == "monge") {
          const MongeMode m = mode == "sub" ? MongeMode::sub : mode == "super" ? MongeMode::super : MongeMode::both;
          rep = check_monge(g, u, f, cfg.check_tol, m);
        } else if (kind == "csub") {
          const CSubsolutionResult r = check_c_subsolution(g, u, f, std::max(cfg.check_tol, 0.0), cfg.seed);
          rep = r.report;
          pass = r.lipschitz.pass;
          out << "local Lipschitz bound (seed " << r.lipschitz.seed << ", " << r.lipschitz.pairs
              << " pairs): " << (r.lipschitz.pass ? "PASS" : "FAIL") << ", worst excess "
              << format_number(r.lipschitz.worst_excess) << "\n";
        } else {
          rep = check_c_supersolution(g, u, f, cfg.check_tol).report;
        }
      }
      if (!report_path.empty()) write_text(report_path, report_to_csv(rep));
      out << summarize(rep) << "\n";
      return rep.pass && pass ? kExitPass : kExitFail;
    }

    if (*cmp) {
      require_distinct({graph_path, u_path, v_path, f_spec}, {report_path});
      const MetricGraph g = load_graph(graph_path);
      ComparisonInstance inst{g, load_field(g, f_spec, FieldRole::rhs_f),
                              load_field(g, u_path, FieldRole::solution_u),
                              load_field(g, v_path, FieldRole::solution_u)};
      inst.band = cfg.band;
      inst.band_tol = cfg.band_tol;
      inst.tol = cfg.compare_tol;
      inst.monge_tol = cfg.check_tol;
      const ComparisonReport r = compare(inst);
      if (!report_path.empty()) {
        std::string csv = "vertex_id,u,v,excess\n";
        for (Vertex x = 0; x < g.num_vertices(); ++x)
          csv += g.id(x) + "," + format_number(inst.u_sub[x]) + "," + format_number(inst.v_super[x]) +
                 "," + format_number(inst.u_sub[x] - inst.v_super[x]) + "\n";
        write_text(report_path, csv);
      }
      if (!r.hypotheses_hold()) {
        out << "hypothesis failed: " << to_string(r.failed) << " (" << r.detail << ")\n";
        return kExitFail;
      }
      if (!r.conclusion) {
        out << "comparison FAIL: u - v = " << format_number(r.max_excess) << " at '" << g.id(r.violating) << "'\n";
        return kExitFail;
      }
      out << "comparison PASS: max(u - v) = " << format_number(r.max_excess) << "\n";
      return kExitPass;
    }

    if (*suite) {
      require_distinct({f_spec, zeta_spec}, {report_path});
      const Fixture fx = make_fixture(suite_fixture, suite_size, suite_conn);
      const SuiteReport r = equivalence_suite(fx, load_field(fx.graph, f_spec, FieldRole::rhs_f),
                                              load_field(fx.graph, zeta_spec, FieldRole::boundary_zeta),
                                              cfg.levels, cfg.seed);
      if (!report_path.empty()) write_text(report_path, suite_to_csv(r));
      for (const SuiteRow& row : r.rows)
        out << row.fixture << " level " << row.level << " " << row.check << ": "
            << (row.pass ? "PASS" : "FAIL") << " max residual " << format_number(row.max_residual)
            << " tol " << format_number(row.tol) << "\n";
      out << "monge residual nonincreasing: " << (r.monge_nonincreasing ? "yes" : "no") << " (seed "
          << r.seed << ")\n";
      return r.pass ? kExitPass : kExitFail;
    }

    if (*induce) {
      require_distinct({points_path}, {out_path, probe_path});
      const InducedMetric m = induce_intrinsic(parse_chord_json(read_text(points_path), points_path),
                                               cfg.seed, max_triples, max_sources);
      write_text(out_path, graph_to_json(m.graph));
      const ConsistencyProbe& p = m.probe;
      if (!probe_path.empty()) {
        const json doc{{"seed", cfg.seed},
                       {"pairs_sampled", p.pairs_sampled},
                       {"triples_sampled", p.triples_sampled},
                       {"max_chord_excess", p.max_chord_excess},
                       {"chord_below_intrinsic", p.chord_below_intrinsic},
                       {"max_ratio", p.max_ratio},
                       {"max_ratio_small", p.max_ratio_small},
                       {"small_chord_cutoff", p.small_chord_cutoff},
                       {"heuristic", p.heuristic}};
        write_text(probe_path, doc.dump(1) + "\n");
      }
      out << "induced " << m.graph.num_vertices() << " vertices, " << m.graph.num_edges()
          << " edges; d <= d~ on sampled pairs: " << (p.chord_below_intrinsic ? "yes" : "no") << "\n";
      return kExitPass;
    }

    if (*refine_cmd) {
      require_distinct({graph_path}, {out_path});
      if (!(h > 0.0)) throw InputError("--h-max must be > 0");
      const MetricGraph g = refine(load_graph(graph_path), h);
      write_text(out_path, graph_to_json(g));
      out << "refined to " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
      return kExitPass;
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace eikograph
