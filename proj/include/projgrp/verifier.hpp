#pragma once

// Mechanical classification of transitive groups G on Z/p ∪ {∞} of order
// (p^3 - p)/2 that contain the translations. Every step is an exhaustive check
// over the relevant finite sets; failures are recorded and the chain goes on
// wherever the later steps still make sense.
//
// Either z -> -1/z lies in G (verdict "a"), or p = 7 and G is one of two groups
// of order 168 with a normal subgroup of order 8 (verdict "b").

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projgrp/group.hpp"
#include "projgrp/report.hpp"

namespace projgrp {

/// Elements fixing 0 and ∞ (the kernel part) and those swapping them.
struct StabilizerDecomposition {
  std::vector<Permutation> fixing;    // sorted
  std::vector<Permutation> swapping;  // sorted
  std::size_t pair_stabilizer_order() const { return fixing.size() + swapping.size(); }
};

enum class CaseTag { kOneModFour, kThreeModFourMain, kThreeModFourSpecial };

std::string_view to_string(CaseTag t);

/// tau(a z) = a^n tau(z) for a square a and nonzero z.
struct TwistExponent {
  std::int64_t n = 0;          // odd, in [1, p - 2]
  std::int64_t n_mod_half = 0; // residue modulo (p - 1)/2
  bool holds_for_all_units = false;
  std::size_t pairs_checked = 0;
};

struct SwapAnalysis {
  Permutation lambda;
  TwistExponent twist;
  std::uint32_t c = 0;  // lambda(1)
  CaseTag tag = CaseTag::kOneModFour;
};

/// Builds the decomposition by filtering the element list.
StabilizerDecomposition decompose_stabilizers(const PermGroup& g);

/// Throws NoTwistExponent if no exponent works, InvalidArgument unless tau swaps 0 and ∞.
TwistExponent compute_twist(std::uint32_t p, const Permutation& tau);

CheckResult check_hypotheses(const PermGroup& g, std::uint32_t p);
CheckResult check_double_transitivity(const PermGroup& g);
CheckResult check_decomposition(const StabilizerDecomposition& dec, std::uint32_t p);
CheckResult check_fixing_part_and_fixed_points(const PermGroup& g, const StabilizerDecomposition& dec, std::uint32_t p);
CheckResult check_square_classes(const StabilizerDecomposition& dec, std::uint32_t p);
CheckResult check_twist(const StabilizerDecomposition& dec, std::uint32_t p);

/// Runs the whole chain; never throws for hypothesis or chain failures.
VerificationReport run_classification(const PermGroup& g, std::uint32_t p);

struct Dichotomy {
  Verdict verdict = Verdict::kUndetermined;
  Permutation witness;
  std::vector<Permutation> normal_subgroup_generators;
  std::optional<SwapAnalysis> analysis;  // absent for p = 3
};

/// Throws HypothesesFail, or SpecialCaseContradiction if the exceptional branch
/// is entered and does not close.
Dichotomy classify(const PermGroup& g, std::uint32_t p, VerificationReport* report = nullptr);

/// The involution of the exceptional group for c in {3, 5}. Throws BadVariant.
std::string exceptional_involution(std::uint32_t c);
/// <z -> z + 1, z -> 2z, involution> on Z/7 ∪ {∞}. Throws BadVariant.
PermGroup build_exceptional(std::uint32_t c, GroupOptions opts = {});
/// Order 168, normal subgroup of order 8, agreement with the GF(8) affine
/// semilinear group, non-simplicity, and the classification verdict.
VerificationReport check_exceptional(std::uint32_t c);

/// The degenerate case p = 3 for a given group on 4 points.
CheckResult check_p3_group(const PermGroup& g);
/// PSL2(3) is the alternating group on 4 points and contains (0 inf)(1 2).
VerificationReport p3_case_check();

/// PSL2(p) relabeled through its action on Sylow p-subgroups. Requires a prime
/// 3 < p <= 13.
VerificationReport corollary_check(std::uint32_t p, GroupOptions opts = {});

}  // namespace projgrp
