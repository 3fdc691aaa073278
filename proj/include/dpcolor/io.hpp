#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dpcolor/cover.hpp"
#include "dpcolor/discharging.hpp"
#include "dpcolor/multicoloring.hpp"
#include "dpcolor/plane_graph.hpp"
#include "dpcolor/reducible.hpp"
#include "dpcolor/tree_colorers.hpp"

namespace dpcolor {

// JSON text in and out. Every parser throws Parse on malformed input and lets
// the library's own validation errors through unchanged.

// { "n": int, "rotation": [[...], ...], "outer": [...] }
std::string graph_to_json(const PlaneGraph& g);
PlaneGraph graph_from_json(std::string_view text);

// { "sizes": [...], "matchings": { "u-v": [[i, j], ...] } } with u < v
std::string cover_to_json(const Cover& c);
Cover cover_from_json(std::string_view text);

// { "m": int, "assignment": { "v": [...] } }; uncoloured vertices are omitted
std::string coloring_to_json(const MultiColoring& phi, int m);
struct ParsedColoring {
  int m = 1;
  MultiColoring coloring;
};
ParsedColoring coloring_from_json(std::string_view text, int vertex_count);

// { "m": int, "shape": "claw", "lists": { "u": [...], "v1": [...] } }
struct ListAssignment {
  int m = 1;
  TreeKind shape = TreeKind::Claw;
  std::vector<ColorList> lists;  // per role
};
std::string list_assignment_to_json(const ListAssignment& a);
ListAssignment list_assignment_from_json(std::string_view text);
// Same shape and role keys with each role's chosen colours.
std::string list_coloring_to_json(TreeKind shape, int m, const std::vector<ColorList>& phi);

// One line per report: { "kind": ..., "witness": [...], "edges": [[u, v], ...] }
std::string report_to_json(const ConfigReport& r);
std::string reports_to_jsonl(const std::vector<ConfigReport>& reports);
ConfigReport report_from_json(std::string_view line);

std::string ledger_to_json(const PlaneGraph& g, const ChargeLedger& ledger, const AuditReport& audit);
std::string verdict_to_json(const Verdict& v);

std::string read_text_file(const std::filesystem::path& path);  // throws Parse if unreadable
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace dpcolor
