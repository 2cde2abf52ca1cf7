#include "eikograph/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eikograph/errors.hpp"

namespace eikograph {

using nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot open for writing");
  out << text;
  if (!out) throw InputError(path + ": write failed");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw InputError(source + ":" + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
}

[[noreturn]] void field_error(const std::string& source, const std::string& path,
                              const std::string& what) {
  throw InputError(source + ": field '" + path + "': " + what);
}

const json& member(const json& obj, const char* key, const std::string& source,
                   const std::string& path) {
  if (!obj.is_object()) field_error(source, path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(source, path + "." + key, "missing");
  return *it;
}

std::string as_string(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_string()) field_error(source, path, "expected a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_number()) field_error(source, path, "expected a number");
  return j.get<double>();
}

std::vector<double> as_coords(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_array()) field_error(source, path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], source, path + "[" + std::to_string(i) + "]"));
  return out;
}

const json& as_array(const json& j, const std::string& source, const std::string& path) {
  if (!j.is_array()) field_error(source, path, "expected an array");
  return j;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) {
    const auto b = cur.find_first_not_of(" \t\r");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

MetricGraph parse_graph_json(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  GraphSpec spec;
  const json& vertices = as_array(member(doc, "vertices", source, "$"), source, "vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string path = "vertices[" + std::to_string(i) + "]";
    GraphSpec::VertexSpec v;
    v.id = as_string(member(vertices[i], "id", source, path), source, path + ".id");
    if (vertices[i].contains("coords"))
      v.coords = as_coords(vertices[i]["coords"], source, path + ".coords");
    spec.vertices.push_back(std::move(v));
  }
  const json& edges = as_array(member(doc, "edges", source, "$"), source, "edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    GraphSpec::EdgeSpec e;
    e.a = as_string(member(edges[i], "a", source, path), source, path + ".a");
    e.b = as_string(member(edges[i], "b", source, path), source, path + ".b");
    e.length = as_number(member(edges[i], "length", source, path), source, path + ".length");
    spec.edges.push_back(std::move(e));
  }
  if (doc.contains("boundary")) {
    const json& b = as_array(doc["boundary"], source, "boundary");
    for (std::size_t i = 0; i < b.size(); ++i)
      spec.boundary.push_back(as_string(b[i], source, "boundary[" + std::to_string(i) + "]"));
  }
  try {
    return build_graph(spec);
  } catch (const Error& e) {
    throw InputError(source + ": " + e.what());
  }
}

std::string graph_to_json(const MetricGraph& g) {
  json doc;
  doc["version"] = 1;
  doc["vertices"] = json::array();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    json item{{"id", g.id(v)}};
    if (!g.coords(v).empty()) item["coords"] = g.coords(v);
    doc["vertices"].push_back(std::move(item));
  }
  doc["edges"] = json::array();
  for (const Edge& e : g.edges())
    doc["edges"].push_back({{"a", g.id(e.a)}, {"b", g.id(e.b)}, {"length", e.length}});
  doc["boundary"] = json::array();
  for (Vertex b : g.boundary()) doc["boundary"].push_back(g.id(b));
  return doc.dump(1) + "\n";
}

ChordInput parse_chord_json(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  ChordInput in;
  std::unordered_map<std::string, std::size_t> index;
  const json& points = as_array(member(doc, "points", source, "$"), source, "points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = "points[" + std::to_string(i) + "]";
    const std::string id = as_string(member(points[i], "id", source, path), source, path + ".id");
    if (!index.emplace(id, i).second) field_error(source, path + ".id", "duplicate id '" + id + "'");
    in.ids.push_back(id);
    in.coords.push_back(points[i].contains("coords")
                            ? as_coords(points[i]["coords"], source, path + ".coords")
                            : std::vector<double>{});
  }
  const std::size_t n = in.ids.size();
  if (doc.contains("distances")) {
    const json& rows = as_array(doc["distances"], source, "distances");
    if (rows.size() != n) field_error(source, "distances", "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<double>> table;
    for (std::size_t i = 0; i < n; ++i) {
      table.push_back(as_coords(rows[i], source, "distances[" + std::to_string(i) + "]"));
      if (table.back().size() != n)
        field_error(source, "distances[" + std::to_string(i) + "]",
                    "expected " + std::to_string(n) + " entries");
    }
    in.distance = table_distance(std::move(table));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (in.coords[i].empty())
        field_error(source, "points[" + std::to_string(i) + "].coords",
                    "needed when no distance table is given");
    in.distance = euclidean_distance(in.coords);
  }

  const json& adj = member(doc, "adjacency", source, "$");
  if (adj.is_object()) {
    const double r = as_number(member(adj, "radius", source, "adjacency"), source, "adjacency.radius");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (in.distance(i, j) <= r) in.adjacency.emplace_back(i, j);
  } else {
    as_array(adj, source, "adjacency");
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const std::string path = "adjacency[" + std::to_string(k) + "]";
      if (!adj[k].is_array() || adj[k].size() != 2) field_error(source, path, "expected [id, id]");
      std::size_t ends[2];
      for (int s = 0; s < 2; ++s) {
        const std::string id = as_string(adj[k][s], source, path);
        auto it = index.find(id);
        if (it == index.end()) field_error(source, path, "unknown id '" + id + "'");
        ends[s] = it->second;
      }
      in.adjacency.emplace_back(ends[0], ends[1]);
    }
  }
  if (doc.contains("boundary")) {
    const json& b = as_array(doc["boundary"], source, "boundary");
    for (std::size_t i = 0; i < b.size(); ++i)
      in.boundary.push_back(as_string(b[i], source, "boundary[" + std::to_string(i) + "]"));
  }
  return in;
}

ScalarField parse_field_csv(const MetricGraph& g, const std::string& text, FieldRole role,
                            const std::string& source) {
  ScalarField f{role, std::vector<double>(g.num_vertices(), std::nan(""))};
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t id_col = 0;
  std::size_t value_col = 0;
  bool header = false;
  std::vector<char> seen(g.num_vertices(), 0);
  auto fail = [&](const std::string& what) {
    throw InputError(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cols = split(line, ',');
    if (!header) {
      header = true;
      auto find = [&](const std::string& name) {
        return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
      };
      id_col = find("vertex_id");
      if (id_col == cols.size()) fail("header needs a 'vertex_id' column");
      value_col = cols.size();
      for (const char* name : {"value", "u", "f", "zeta"}) {
        value_col = find(name);
        if (value_col != cols.size()) break;
      }
      if (value_col == cols.size()) fail("header needs a 'value' (or u, f, zeta) column");
      continue;
    }
    if (cols.size() <= std::max(id_col, value_col))
      fail("expected at least " + std::to_string(std::max(id_col, value_col) + 1) + " fields");
    const auto v = g.find(cols[id_col]);
    if (!v) fail("unknown vertex_id '" + cols[id_col] + "'");
    if (seen[*v]) fail("duplicate vertex_id '" + cols[id_col] + "'");
    seen[*v] = 1;
    double x = 0.0;
    if (!parse_double(cols[value_col], x) || !std::isfinite(x))
      fail("field 'value': not a finite number: '" + cols[value_col] + "'");
    f[*v] = x;
  }
  if (!header) throw InputError(source + ":1: empty file");
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const bool needed = role != FieldRole::boundary_zeta || g.is_boundary(v);
    if (needed && !seen[v]) throw InputError(source + ": no value for vertex '" + g.id(v) + "'");
  }
  return f;
}

std::string field_to_csv(const MetricGraph& g, const ScalarField& f) {
  std::string out = "vertex_id,value\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!f.defined(v)) continue;
    out += g.id(v) + "," + format_number(f[v]) + "\n";
  }
  return out;
}

ScalarField load_field(const MetricGraph& g, const std::string& spec, FieldRole role) {
  auto restrict = [&](ScalarField f) {
    if (role == FieldRole::boundary_zeta)
      for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (!g.is_boundary(v)) f[v] = std::nan("");
    return f;
  };
  auto numbers = [&](const std::string& body, std::size_t count) {
    const auto parts = split(body, ',');
    std::vector<double> out(parts.size());
    if (parts.size() != count) throw InputError("field spec '" + spec + "': expected " + std::to_string(count) + " numbers");
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (!parse_double(parts[i], out[i]) || !std::isfinite(out[i]))
        throw InputError("field spec '" + spec + "': bad number '" + parts[i] + "'");
    return out;
  };
  if (spec.rfind("const:", 0) == 0) {
    const double c = numbers(spec.substr(6), 1)[0];
    return restrict(constant_field(g, c, role));
  }
  if (spec.rfind("linear:", 0) == 0) {
    const auto ab = numbers(spec.substr(7), 2);
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (g.coords(v).empty())
        throw InputError("field spec '" + spec + "': vertex '" + g.id(v) + "' has no coordinates");
    return restrict(field_from_coords(
        g, [a = ab[0], b = ab[1]](const std::vector<double>& c) { return a + b * c[0]; }, role));
  }
  return parse_field_csv(g, read_text(spec), role, spec);
}

std::string value_to_csv(const MetricGraph& g, const ValueFunction& v) {
  std::string out = "vertex_id,u,exit_vertex,attained\n";
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    const Vertex e = v.exit_vertex[x];
    out += g.id(x) + "," + format_number(v.u[x]) + "," + (e == kNoVertex ? "" : g.id(e)) + ",";
    out += g.is_boundary(x) ? (v.attained[x] ? "true" : "false") : "";
    out += "\n";
  }
  return out;
}

std::string report_to_csv(const CheckReport& r) {
  std::string out = "item_id,residual,verdict\n";
  for (const auto& it : r.items)
    out += it.id + "," + format_number(it.residual) + "," +
           (it.excluded ? "excluded" : it.pass ? "pass" : "fail") + "\n";
  return out;
}

std::string suite_to_csv(const SuiteReport& r) {
  std::string out = "fixture,level,check,max_residual,tol,verdict\n";
  for (const auto& row : r.rows)
    out += row.fixture + "," + std::to_string(row.level) + "," + row.check + "," +
           format_number(row.max_residual) + "," + format_number(row.tol) + "," +
           (row.pass ? "pass" : "fail") + "\n";
  return out;
}

std::string plot_csv(const MetricGraph& g, const ScalarField& u, bool layout) {
  std::size_t dim = g.num_vertices() ? g.coords(0).size() : 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) dim = std::min(dim, g.coords(v).size());
  if (layout && dim < 2) throw InputError("2-D layout requested but the graph has no planar coordinates");
  dim = std::min<std::size_t>(dim, 2);

  std::vector<Vertex> order(g.num_vertices());
  for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&g](Vertex a, Vertex b) { return g.id(a) < g.id(b); });

  std::string out = dim == 0 ? "vertex_id,u\n" : dim == 1 ? "vertex_id,x,u\n" : "vertex_id,x,y,u\n";
  for (Vertex v : order) {
    out += g.id(v);
    for (std::size_t k = 0; k < dim; ++k) out += "," + format_number(g.coords(v)[k]);
    out += "," + format_number(u[v]) + "\n";
  }
  return out;
}

}  // namespace eikograph
