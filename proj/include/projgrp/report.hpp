#pragma once

// Report records shared by the verifier, the search driver and the CLI.
// JSON objects keep insertion order so identical runs serialize identically.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "projgrp/projline.hpp"

namespace projgrp {

using Json = nlohmann::ordered_json;

struct CheckResult {
  std::string id;
  bool pass = false;
  Json witness = Json::object();
  Json counterexample = nullptr;
};

enum class Verdict {
  kContainsNegativeInversion,  // "a"
  kExceptional,                // "b"
  kHypothesesFailed,
  kUndetermined,
};

std::string_view to_string(Verdict v);

struct VerificationReport {
  std::uint32_t p = 0;
  Verdict verdict = Verdict::kUndetermined;
  std::optional<Permutation> witness;
  std::vector<Permutation> normal_subgroup_generators;  // filled for the exceptional verdict
  std::vector<CheckResult> checks;

  const CheckResult* find(std::string_view id) const;
  bool hypotheses_passed() const;
  bool all_passed() const;
};

Json to_json(const CheckResult& c);
Json to_json(const VerificationReport& r);
std::string to_text(const VerificationReport& r);

}  // namespace projgrp
