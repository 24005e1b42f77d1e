#pragma once

// Brute-force rediscovery of the groups of order (p^3 - p)/2 on Z/p ∪ {∞}
// that contain the translations.
//
// Any such G contains T = <z -> z + 1> and its pair stabilizer splits as
// K ∪ λK with K the square scalings. The point stabilizer of ∞ contains
// <T, K>, of order p(p - 1)/2, and G is transitive on p + 1 points, so
// <T, K> is all of it. Adding any λ that swaps 0 and ∞ makes the stabilizer
// of ∞ a proper subgroup of <T, K, λ>, and the orbit-stabilizer count forces
// <T, K, λ> = G. Searching over λ therefore finds every G.
//
// The full search ranges λ over all bijections of the units; the constrained
// search only over z -> c z^n on squares and d z^n on non-squares.

#include <cstdint>
#include <string>
#include <vector>

#include "projgrp/report.hpp"

namespace projgrp {

enum class SearchMode { kFull, kConstrained };

std::string_view to_string(SearchMode m);

struct FoundGroup {
  std::uint64_t hash = 0;  // FNV-1a of the sorted element images
  std::uint64_t order = 0;
  Verdict verdict = Verdict::kUndetermined;
  bool all_checks_pass = false;
  bool hypotheses = false;
  bool contains_negative_inversion = false;
  bool equals_two_generator_group = false;
  std::uint64_t order_without_swap = 0;
  Permutation first_swap;  // first candidate, in iteration order, that produced it
  std::vector<Permutation> generators;
  std::uint64_t producing_candidates = 0;
  std::vector<Permutation> elements;  // sorted
};

struct SearchOutcome {
  std::uint32_t p = 0;
  SearchMode mode = SearchMode::kConstrained;
  std::uint64_t target_order = 0;
  std::uint64_t candidates_examined = 0;
  std::uint64_t non_bijective_candidates = 0;
  std::uint64_t target_order_hits = 0;
  std::vector<FoundGroup> groups;  // sorted by element list
  double seconds = 0;              // wall clock; text output only

  /// One group for p != 7, all containing z -> -1/z; for p = 7 exactly
  /// PSL2(7) and the two exceptional groups.
  bool matches_prediction() const;
};

/// Odd prime 3 <= p <= 31; throws NotOddPrime or PTooLarge.
SearchOutcome constrained_search(std::uint32_t p);
/// Odd prime 3 <= p <= 7; throws NotOddPrime or PTooLarge.
SearchOutcome full_search(std::uint32_t p);

/// Same hashes in the same order.
bool same_groups(const SearchOutcome& a, const SearchOutcome& b);

Json to_json(const SearchOutcome& s);
std::string to_text(const SearchOutcome& s);

}  // namespace projgrp
