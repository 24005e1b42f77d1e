#include "projgrp/report.hpp"

#include <algorithm>
#include <sstream>

namespace projgrp {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kContainsNegativeInversion:
      return "a";
    case Verdict::kExceptional:
      return "b";
    case Verdict::kHypothesesFailed:
      return "hypotheses-failed";
    case Verdict::kUndetermined:
      return "undetermined";
  }
  return "undetermined";
}

const CheckResult* VerificationReport::find(std::string_view id) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.id == id; });
  return it == checks.end() ? nullptr : &*it;
}

bool VerificationReport::hypotheses_passed() const {
  const CheckResult* h = find("hypotheses");
  return h == nullptr || h->pass;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

Json to_json(const CheckResult& c) {
  Json j;
  j["id"] = c.id;
  j["pass"] = c.pass;
  j["witness"] = c.witness;
  j["counterexample"] = c.counterexample;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["p"] = r.p;
  j["verdict"] = std::string(to_string(r.verdict));
  j["witness"] = r.witness ? Json(r.witness->to_cycle_string()) : Json(nullptr);
  if (!r.normal_subgroup_generators.empty()) {
    Json gens = Json::array();
    for (const auto& g : r.normal_subgroup_generators) gens.push_back(g.to_cycle_string());
    j["normal_subgroup"] = gens;
  }
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = checks;
  return j;
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream out;
  out << "p = " << r.p << "\n";
  out << "verdict: " << to_string(r.verdict) << "\n";
  if (r.witness) out << "witness: " << r.witness->to_cycle_string() << "\n";
  if (!r.normal_subgroup_generators.empty()) {
    out << "normal subgroup of order 8 generated by:";
    for (const auto& g : r.normal_subgroup_generators) out << " " << g.to_cycle_string();
    out << "\n";
  }
  for (const auto& c : r.checks) {
    out << (c.pass ? "[pass] " : "[FAIL] ") << c.id << "  " << c.witness.dump() << "\n";
    if (!c.counterexample.is_null()) out << "       counterexample: " << c.counterexample.dump() << "\n";
  }
  return out.str();
}

}  // namespace projgrp
