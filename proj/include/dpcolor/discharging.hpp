#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "dpcolor/plane_graph.hpp"
#include "dpcolor/reducible.hpp"

namespace dpcolor {

// All charges are integers in half-units: a charge of 3/2 is stored as 3.

struct Element {
  enum class Kind { Vertex, Face };
  Kind kind = Kind::Vertex;
  int id = 0;

  static Element vertex(Vertex v) { return {Kind::Vertex, v}; }
  static Element face(int f) { return {Kind::Face, f}; }
  auto operator<=>(const Element&) const = default;
};

std::string to_string(const Element& e);  // "v3", "f0"

enum class Rule { R1, R2_1, R2_2, R3, R4, R5_1, R5_2, R6_1, R6_2 };

std::string_view to_string(Rule rule);
int rule_amount(Rule rule);

struct Transfer {
  Element from;
  Element to;
  int amount = 0;
  Rule rule = Rule::R1;
  bool operator==(const Transfer&) const = default;
};

struct ChargeLedger {
  std::vector<int> vertex_charge;
  std::vector<int> face_charge;
  std::vector<Transfer> transfers;

  int at(Element e) const;
  int& at(Element e);
  long total() const;
};

// ch(v) = 2d(v) - 6, ch(f) = d(f) - 6, ch(f0) = d(f0) + 6. Throws
// EulerViolation if the sum is not zero.
ChargeLedger initial_charges(const PlaneGraph& g);

// Applies R1-R6 once per qualifying incidence, in rule order, logging every
// transfer. Throws InternalAssertion if the total changes.
ChargeLedger apply_rules(const PlaneGraph& g, ChargeLedger ledger);

struct AuditFailure {
  std::string claim;  // "face", "vertex", "outer", "ob-triangle", "conservation", "exclusivity", "amount"
  Element element;
  int value = 0;
  std::string detail;
};

struct AuditReport {
  long initial_sum = 0;
  long final_sum = 0;
  bool conservation = true;
  std::vector<AuditFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Checks the final-charge claims: 3-faces end at 0 and other faces at >= 0,
// every vertex at >= 0, the outer face strictly positive, the per-triangle
// outflow bound for internal 4+-vertices, rule exclusivity and the amount menu,
// and transfer-by-transfer conservation against a fresh initial ledger.
AuditReport audit_final(const PlaneGraph& g, const ChargeLedger& ledger);

enum class VerdictKind { ReducibleFound, ChargeClaimFailed, PaperCounterexample, VacuousInterior };

std::string_view to_string(VerdictKind kind);

struct Verdict {
  VerdictKind kind = VerdictKind::ReducibleFound;
  std::vector<ConfigReport> reports;
  AuditReport audit;
  ChargeLedger ledger;
};

// Requires a graph in the class with a good cycle as outer boundary
// (PreconditionViolated otherwise).
Verdict meta_audit(const PlaneGraph& g);

}  // namespace dpcolor
