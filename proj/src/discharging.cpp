#include "dpcolor/discharging.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "dpcolor/error.hpp"

namespace dpcolor {

std::string to_string(const Element& e) {
  return (e.kind == Element::Kind::Vertex ? "v" : "f") + std::to_string(e.id);
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::R1: return "R1";
    case Rule::R2_1: return "R2(1)";
    case Rule::R2_2: return "R2(2)";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::R5_1: return "R5(1)";
    case Rule::R5_2: return "R5(2)";
    case Rule::R6_1: return "R6(1)";
    case Rule::R6_2: return "R6(2)";
  }
  return "?";
}

int rule_amount(Rule rule) {
  switch (rule) {
    case Rule::R1: return 2;
    case Rule::R2_1: return 1;
    case Rule::R2_2: return 2;
    case Rule::R3: return 1;
    case Rule::R4: return 4;
    case Rule::R5_1: return 3;
    case Rule::R5_2: return 2;
    case Rule::R6_1: return 2;
    case Rule::R6_2: return 1;
  }
  return 0;
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::ReducibleFound: return "ReducibleFound";
    case VerdictKind::ChargeClaimFailed: return "ChargeClaimFailed";
    case VerdictKind::PaperCounterexample: return "PaperCounterexample";
    case VerdictKind::VacuousInterior: return "VacuousInterior";
  }
  return "?";
}

int ChargeLedger::at(Element e) const {
  return e.kind == Element::Kind::Vertex ? vertex_charge.at(static_cast<std::size_t>(e.id))
                                         : face_charge.at(static_cast<std::size_t>(e.id));
}

int& ChargeLedger::at(Element e) {
  return e.kind == Element::Kind::Vertex ? vertex_charge.at(static_cast<std::size_t>(e.id))
                                         : face_charge.at(static_cast<std::size_t>(e.id));
}

long ChargeLedger::total() const {
  return std::accumulate(vertex_charge.begin(), vertex_charge.end(), 0L) +
         std::accumulate(face_charge.begin(), face_charge.end(), 0L);
}

ChargeLedger initial_charges(const PlaneGraph& g) {
  ChargeLedger l;
  for (Vertex v = 0; v < g.vertex_count(); ++v) l.vertex_charge.push_back(2 * (2 * g.degree(v) - 6));
  for (int f = 0; f < g.face_count(); ++f) {
    const int d = g.face_degree(f);
    l.face_charge.push_back(f == g.outer_face() ? 2 * (d + 6) : 2 * (d - 6));
  }
  require(l.total() == 0, ErrorKind::EulerViolation,
          "initial charges sum to " + std::to_string(l.total()) + " half-units");
  return l;
}

namespace {

std::vector<Vertex> non_isolated(const Graph& g, Vertex v) {
  std::vector<Vertex> out;
  for (Vertex u : g.neighbors(v))
    if (!is_isolated_neighbor(g, v, u)) out.push_back(u);
  return out;
}

}  // namespace

ChargeLedger apply_rules(const PlaneGraph& g, ChargeLedger ledger) {
  const Graph& G = g.graph();
  const long before = ledger.total();
  const Element f0 = Element::face(g.outer_face());
  auto give = [&](Element from, Element to, Rule r) {
    const int a = rule_amount(r);
    ledger.at(from) -= a;
    ledger.at(to) += a;
    ledger.transfers.push_back({from, to, a, r});
  };

  for (int f = 0; f < g.face_count(); ++f) {
    if (f == g.outer_face() || g.face_degree(f) != 3) continue;
    for (Vertex v : g.face(f)) give(Element::vertex(v), Element::face(f), Rule::R1);
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!g.is_internal(v) || g.degree(v) != 3 || triangle_count(G, v) == 0) continue;
    if (is_poor(g, v)) {
      for (Vertex u : non_isolated(G, v)) give(Element::vertex(u), Element::vertex(v), Rule::R2_1);
    } else {
      for (Vertex u : G.neighbors(v))
        if (is_isolated_neighbor(G, v, u)) give(Element::vertex(u), Element::vertex(v), Rule::R2_2);
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != 4 || !is_poor(g, v)) continue;
    for (Vertex u : non_isolated(G, v)) give(Element::vertex(u), Element::vertex(v), Rule::R3);
  }
  for (Vertex v : g.outer_boundary()) {
    const int d = g.degree(v);
    const int t = triangle_count(G, v);
    if (d == 2) give(f0, Element::vertex(v), Rule::R4);
    if (d == 3) give(f0, Element::vertex(v), t > 0 ? Rule::R5_1 : Rule::R5_2);
    if (d == 4 && t == 2) give(f0, Element::vertex(v), Rule::R6_1);
    if (d == 4 && t == 1) give(f0, Element::vertex(v), Rule::R6_2);
  }
  require(ledger.total() == before, ErrorKind::InternalAssertion, "rules changed the total charge");
  return ledger;
}

AuditReport audit_final(const PlaneGraph& g, const ChargeLedger& ledger) {
  AuditReport rep;
  auto failure = [&](std::string claim, Element e, int value, std::string detail) {
    rep.failures.push_back({std::move(claim), e, value, std::move(detail)});
  };

  ChargeLedger replay = initial_charges(g);
  rep.initial_sum = replay.total();
  for (const Transfer& t : ledger.transfers) {
    replay.at(t.from) -= t.amount;
    replay.at(t.to) += t.amount;
    if (t.amount < 1 || t.amount > 4 || t.amount != rule_amount(t.rule))
      failure("amount", t.to, t.amount, std::string(to_string(t.rule)) + " transfer of " + std::to_string(t.amount));
  }
  rep.final_sum = ledger.total();
  if (replay.vertex_charge != ledger.vertex_charge || replay.face_charge != ledger.face_charge) {
    rep.conservation = false;
    failure("conservation", Element::face(g.outer_face()), 0, "charges differ from initial plus transfers");
  }
  if (rep.final_sum != 0 || rep.initial_sum != 0) {
    rep.conservation = false;
    failure("conservation", Element::face(g.outer_face()), static_cast<int>(rep.final_sum), "sum is not zero");
  }

  std::set<std::tuple<Element, Element, Rule>> seen;
  std::map<Vertex, std::set<Rule>> received;
  for (const Transfer& t : ledger.transfers) {
    if (!seen.insert({t.from, t.to, t.rule}).second)
      failure("exclusivity", t.to, t.amount, std::string(to_string(t.rule)) + " fired twice from " + to_string(t.from));
    if (t.to.kind == Element::Kind::Vertex) received[t.to.id].insert(t.rule);
  }
  for (const auto& [v, rules] : received) {
    if (rules.count(Rule::R5_1) && rules.count(Rule::R5_2))
      failure("exclusivity", Element::vertex(v), 0, "receives under R5(1) and R5(2)");
    if (rules.count(Rule::R6_1) && rules.count(Rule::R6_2))
      failure("exclusivity", Element::vertex(v), 0, "receives under R6(1) and R6(2)");
  }

  for (int f = 0; f < g.face_count(); ++f) {
    const int c = ledger.face_charge[static_cast<std::size_t>(f)];
    if (f == g.outer_face()) {
      if (c <= 0) failure("outer", Element::face(f), c, "outer face final charge not positive");
    } else if (g.face_degree(f) == 3 ? c != 0 : c < 0) {
      failure("face", Element::face(f), c, "bounded " + std::to_string(g.face_degree(f)) + "-face");
    }
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const int c = ledger.vertex_charge[static_cast<std::size_t>(v)];
    if (c < 0)
      failure("vertex", Element::vertex(v), c,
              std::string(g.is_internal(v) ? "internal " : "boundary ") + std::to_string(g.degree(v)) + "-vertex");
  }

  std::map<std::pair<Element, Element>, int> flow;
  for (const Transfer& t : ledger.transfers) flow[{t.from, t.to}] += t.amount;
  auto sent = [&](Element a, Element b) {
    auto it = flow.find({a, b});
    return it == flow.end() ? 0 : it->second;
  };
  for (int f = 0; f < g.face_count(); ++f) {
    if (f == g.outer_face() || g.face_degree(f) != 3) continue;
    const auto& tri = g.face(f);
    for (std::size_t i = 0; i < 3; ++i) {
      const Vertex v = tri[i];
      if (!g.is_internal(v) || g.degree(v) < 4) continue;
      const Element ev = Element::vertex(v);
      const int out = sent(ev, Element::face(f)) + sent(ev, Element::vertex(tri[(i + 1) % 3])) +
                      sent(ev, Element::vertex(tri[(i + 2) % 3]));
      if (out > 3)
        failure("ob-triangle", ev, out, "sends " + std::to_string(out) + " half-units to " + to_string(Element::face(f)) +
                                            " and its vertices");
    }
  }
  return rep;
}

Verdict meta_audit(const PlaneGraph& g) {
  const ClassReport cls = check_class_p45(g);
  require(!cls.four_cycle && !cls.five_cycle, ErrorKind::PreconditionViolated, "graph contains a 4- or 5-cycle");
  require(cls.outer_is_good, ErrorKind::PreconditionViolated, "outer boundary is not a good cycle");
  Verdict out;
  out.ledger = apply_rules(g, initial_charges(g));
  out.audit = audit_final(g, out.ledger);
  bool interior = false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) interior = interior || g.is_internal(v);
  if (!interior) {
    out.kind = VerdictKind::VacuousInterior;
    return out;
  }
  out.reports = find_reducible(g);
  if (!out.reports.empty())
    out.kind = VerdictKind::ReducibleFound;
  else
    out.kind = out.audit.ok() ? VerdictKind::PaperCounterexample : VerdictKind::ChargeClaimFailed;
  return out;
}

}  // namespace dpcolor
