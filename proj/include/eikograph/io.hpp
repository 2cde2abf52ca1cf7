#pragma once

#include <string>

#include "eikograph/checks.hpp"
#include "eikograph/eikonal.hpp"
#include "eikograph/field.hpp"
#include "eikograph/metric_graph.hpp"
#include "eikograph/verify.hpp"

namespace eikograph {

/// Reads a whole file; InputError when it cannot be opened.
std::string read_text(const std::string& path);
/// Writes a whole file; InputError when it cannot be created.
void write_text(const std::string& path, const std::string& text);

/// Formats a double with round-trip precision.
std::string format_number(double v);

/// Graph JSON: {"version":1,"vertices":[{"id","coords"?}],"edges":[{"a","b","length"}],"boundary":[ids]}.
/// Errors carry `source` plus a line (syntax) or field path (structure).
MetricGraph parse_graph_json(const std::string& text, const std::string& source = "<graph>");
std::string graph_to_json(const MetricGraph& g);

/// Point cloud JSON for induce_intrinsic:
/// {"points":[{"id","coords"}], "distances"?: [[...]], "adjacency": [[id,id],...] | {"radius": r},
///  "boundary": [ids]}. Without "distances" the chord metric is Euclidean.
ChordInput parse_chord_json(const std::string& text, const std::string& source = "<points>");

/// CSV "vertex_id,<value>" where the value column is the first of value, u, f, zeta.
/// Extra columns are ignored. Every vertex the role needs must appear.
ScalarField parse_field_csv(const MetricGraph& g, const std::string& text, FieldRole role,
                            const std::string& source = "<field>");
std::string field_to_csv(const MetricGraph& g, const ScalarField& f);

/// "const:c", "linear:a,b" (a + b * first coordinate), or a CSV path.
/// For boundary data the inline forms are restricted to boundary vertices.
ScalarField load_field(const MetricGraph& g, const std::string& spec, FieldRole role);

/// "vertex_id,u,exit_vertex,attained".
std::string value_to_csv(const MetricGraph& g, const ValueFunction& v);
/// "item_id,residual,verdict" with verdict pass, fail or excluded.
std::string report_to_csv(const CheckReport& r);
/// "fixture,level,check,max_residual,tol,verdict".
std::string suite_to_csv(const SuiteReport& r);

/// "vertex_id,x,y,u" rows sorted by id; coordinate columns follow the graph's
/// dimension and are dropped when absent. `layout` demands 2-D coordinates and
/// throws InputError otherwise.
std::string plot_csv(const MetricGraph& g, const ScalarField& u, bool layout);

}  // namespace eikograph
