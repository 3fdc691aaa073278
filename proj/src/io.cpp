#include "dpcolor/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dpcolor/error.hpp"

namespace dpcolor {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

// Wraps nlohmann's type errors so callers see Parse.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string(what) + ": " + e.what());
  }
}

int vertex_key(const std::string& key, int n) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == key.size() && v >= 0 && v < n, ErrorKind::Parse, "bad vertex key '" + key + "'");
  return v;
}

ojson charges(const ChargeLedger& l) {
  return ojson{{"vertices", l.vertex_charge}, {"faces", l.face_charge}};
}

ojson audit_json(const AuditReport& a) {
  ojson failures = ojson::array();
  for (const auto& f : a.failures)
    failures.push_back({{"claim", f.claim}, {"element", to_string(f.element)}, {"value", f.value}, {"detail", f.detail}});
  return ojson{{"initial_sum", a.initial_sum},
               {"final_sum", a.final_sum},
               {"conservation", a.conservation},
               {"ok", a.ok()},
               {"failures", failures}};
}

}  // namespace

std::string graph_to_json(const PlaneGraph& g) {
  ojson j{{"n", g.vertex_count()}, {"rotation", g.rotations()}, {"outer", g.outer_boundary()}};
  return j.dump();
}

PlaneGraph graph_from_json(std::string_view text) {
  const json j = parse(text, "graph");
  auto [n, rotation, outer] = guarded("graph", [&] {
    return std::tuple{j.at("n").get<int>(), j.at("rotation").get<std::vector<std::vector<Vertex>>>(),
                      j.at("outer").get<std::vector<Vertex>>()};
  });
  require(n == static_cast<int>(rotation.size()), ErrorKind::Parse,
          "n = " + std::to_string(n) + " but " + std::to_string(rotation.size()) + " rotations");
  return build_embedding(std::move(rotation), outer);
}

std::string cover_to_json(const Cover& c) {
  ojson m = ojson::object();
  for (const auto& [e, pairs] : c.matchings()) {
    ojson arr = ojson::array();
    for (auto [i, j] : pairs) arr.push_back({i, j});
    m[std::to_string(e.u) + "-" + std::to_string(e.v)] = arr;
  }
  return ojson{{"sizes", c.sizes()}, {"matchings", m}}.dump();
}

Cover cover_from_json(std::string_view text) {
  const json j = parse(text, "cover");
  return guarded("cover", [&] {
    Cover c(j.at("sizes").get<std::vector<int>>());
    const int n = c.vertex_count();
    for (const auto& [key, pairs] : j.at("matchings").items()) {
      const auto dash = key.find('-');
      require(dash != std::string::npos, ErrorKind::Parse, "matching key '" + key + "' is not u-v");
      const int u = vertex_key(key.substr(0, dash), n);
      const int v = vertex_key(key.substr(dash + 1), n);
      require(u != v, ErrorKind::Parse, "matching key '" + key + "' is a loop");
      c.set_matching(u, v, pairs.get<std::vector<IndexPair>>());
    }
    return c;
  });
}

std::string coloring_to_json(const MultiColoring& phi, int m) {
  ojson a = ojson::object();
  for (Vertex v : phi.colored_vertices()) a[std::to_string(v)] = phi.colors(v);
  return ojson{{"m", m}, {"assignment", a}}.dump();
}

ParsedColoring coloring_from_json(std::string_view text, int vertex_count) {
  const json j = parse(text, "coloring");
  return guarded("coloring", [&] {
    ParsedColoring out{j.at("m").get<int>(), MultiColoring(vertex_count)};
    require(out.m >= 1, ErrorKind::Parse, "m must be positive");
    for (const auto& [key, colors] : j.at("assignment").items())
      out.coloring.assign(vertex_key(key, vertex_count), colors.get<std::vector<int>>());
    return out;
  });
}

std::string list_assignment_to_json(const ListAssignment& a) {
  ojson lists = ojson::object();
  const auto& names = role_names(a.shape);
  for (std::size_t r = 0; r < names.size(); ++r) lists[names[r]] = a.lists.at(r);
  return ojson{{"m", a.m}, {"shape", to_string(a.shape)}, {"lists", lists}}.dump();
}

ListAssignment list_assignment_from_json(std::string_view text) {
  const json j = parse(text, "list assignment");
  return guarded("list assignment", [&] {
    ListAssignment a;
    a.m = j.at("m").get<int>();
    require(a.m >= 1, ErrorKind::Parse, "m must be positive");
    a.shape = tree_kind_from_string(j.at("shape").get<std::string>());
    const auto& names = role_names(a.shape);
    const json& lists = j.at("lists");
    require(lists.size() == names.size(), ErrorKind::Parse, "lists must name exactly the shape's roles");
    for (const auto& name : names) {
      require(lists.contains(name), ErrorKind::Parse, "missing list for role '" + name + "'");
      auto l = lists.at(name).get<ColorList>();
      std::sort(l.begin(), l.end());
      require(std::adjacent_find(l.begin(), l.end()) == l.end(), ErrorKind::Parse,
              "repeated colour in the list of '" + name + "'");
      a.lists.push_back(std::move(l));
    }
    return a;
  });
}

std::string list_coloring_to_json(TreeKind shape, int m, const std::vector<ColorList>& phi) {
  ojson out = ojson::object();
  const auto& names = role_names(shape);
  for (std::size_t r = 0; r < names.size(); ++r) out[names[r]] = phi.at(r);
  return ojson{{"m", m}, {"shape", to_string(shape)}, {"coloring", out}}.dump();
}

std::string report_to_json(const ConfigReport& r) {
  ojson edges = ojson::array();
  for (const Edge& e : r.edges) edges.push_back({e.u, e.v});
  return ojson{{"kind", to_string(r.kind)}, {"witness", r.witness}, {"edges", edges}}.dump();
}

std::string reports_to_jsonl(const std::vector<ConfigReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += report_to_json(r) + "\n";
  return out;
}

ConfigReport report_from_json(std::string_view line) {
  const json j = parse(line, "report");
  return guarded("report", [&] {
    ConfigReport r{config_kind_from_string(j.at("kind").get<std::string>()),
                   j.at("witness").get<std::vector<Vertex>>(),
                   {}};
    for (const auto& e : j.at("edges")) r.edges.push_back(Edge::of(e.at(0).get<int>(), e.at(1).get<int>()));
    return r;
  });
}

std::string ledger_to_json(const PlaneGraph& g, const ChargeLedger& ledger, const AuditReport& audit) {
  ojson transfers = ojson::array();
  for (const Transfer& t : ledger.transfers)
    transfers.push_back(
        {{"from", to_string(t.from)}, {"to", to_string(t.to)}, {"amount", t.amount}, {"rule", to_string(t.rule)}});
  return ojson{{"unit", "half"},
               {"outer_face", g.outer_face()},
               {"initial", charges(initial_charges(g))},
               {"transfers", transfers},
               {"final", charges(ledger)},
               {"audit", audit_json(audit)}}
      .dump();
}

std::string verdict_to_json(const Verdict& v) {
  ojson reports = ojson::array();
  for (const auto& r : v.reports) reports.push_back(ojson::parse(report_to_json(r)));
  return ojson{{"verdict", to_string(v.kind)}, {"reports", reports}, {"audit", audit_json(v.audit)}}.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Parse, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::Parse, "cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace dpcolor
