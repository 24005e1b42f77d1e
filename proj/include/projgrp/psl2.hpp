#pragma once

// SL2 and PSL2 over small finite fields, both as explicit matrix lists and as
// permutation groups on the q + 1 points of the projective line.
//
// The simplicity certificate works on normal subgroups N of SL2(q) given as
// normal closures of non-scalar matrices. For each one it records:
//   * an element of N with nonzero upper-right entry,
//   * a factorization diag(a, 1/a) = (1 0; -r 1) * B with B in N,
//   * the q commutators A B A^-1 B^-1 for A in the lower unitriangular group P,
//     which must sweep out P exactly,
// and concludes N contains P, its transpose P', and hence all of SL2(q).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "projgrp/field.hpp"
#include "projgrp/group.hpp"
#include "projgrp/projline.hpp"

namespace projgrp {

/// Largest field order for which SL2 is enumerated as matrices.
inline constexpr std::uint32_t kMaxMatrixFieldOrder = 13;
/// Largest field order for psl2_perm_group.
inline constexpr std::uint32_t kMaxPermFieldOrder = 19;

/// SL2(q) as an explicit, sorted list of matrices with a dense membership index.
class SL2 {
 public:
  /// Throws FieldTooLarge above kMaxMatrixFieldOrder.
  explicit SL2(std::uint32_t q);

  const Field& field() const { return field_; }
  std::uint32_t q() const { return field_.order(); }
  const std::vector<Mat2>& elements() const { return elements_; }

  std::uint32_t key(const Mat2& m) const;
  Mat2 mul(const Mat2& x, const Mat2& y) const { return mat::mul(field_, x, y); }
  Mat2 inverse(const Mat2& m) const { return mat::inverse_unimodular(field_, m); }
  Mat2 conjugate(const Mat2& g, const Mat2& x) const { return mul(mul(g, x), inverse(g)); }
  Mat2 identity() const { return mat::identity(field_); }

  /// (1 0; t 1) for every t, ordered by t.
  std::vector<Mat2> lower_unipotent() const;
  /// (1 t; 0 1) for every t, ordered by t.
  std::vector<Mat2> upper_unipotent() const;
  /// Elements of P and P'; they generate SL2(q).
  std::vector<Mat2> generators() const;

  /// Scalar matrices of determinant one.
  std::vector<Mat2> center() const;

 private:
  Field field_;
  std::vector<Mat2> elements_;
};

/// A subgroup of SL2(q) stored as a membership bitmap plus a sorted element list.
class MatrixSubgroup {
 public:
  /// Closure of the given matrices under multiplication.
  static MatrixSubgroup generated_by(const SL2& sl2, std::span<const Mat2> gens);
  /// Smallest normal subgroup containing the seed.
  static MatrixSubgroup normal_closure(const SL2& sl2, const Mat2& seed);

  bool contains(const Mat2& m) const;
  std::size_t order() const { return elements_.size(); }
  const std::vector<Mat2>& elements() const { return elements_; }
  bool is_normal() const;
  bool all_scalar() const;

 private:
  MatrixSubgroup(const SL2* sl2) : sl2_(sl2) {}

  const SL2* sl2_;
  std::vector<char> member_;
  std::vector<Mat2> elements_;
};

std::vector<std::vector<Mat2>> matrix_conjugacy_classes(const SL2& sl2);

struct SL2Group {
  std::vector<Mat2> matrices;
  PermGroup image;
};

/// SL2(q) as matrices together with its image on the projective line.
SL2Group sl2_group(std::uint32_t q, GroupOptions opts = {});

/// PSL2(q) on q + 1 points. For prime q it is generated by z -> z + 1 and
/// z -> -1/z; otherwise by the images of P and P'.
PermGroup psl2_perm_group(std::uint32_t q, GroupOptions opts = {});

/// (q^3 - q)/gcd(2, q - 1).
std::uint64_t psl2_order(std::uint32_t q);

/// An element of N with b != 0. Throws NotNormal if N is not normal in SL2 and
/// OnlyScalars if N is central.
Mat2 upper_right_witness(const SL2& sl2, const MatrixSubgroup& n);

struct LowerUnipotentFactorization {
  Mat2 u;  // lower unitriangular
  Mat2 b;  // in N
};

/// target = u * b with u in P and b in N, found by scanning P.
/// Throws DecompositionFails if no such u exists.
LowerUnipotentFactorization factor_through_lower_unipotent(const SL2& sl2, const Mat2& target, const MatrixSubgroup& n);

struct CommutatorWitness {
  Mat2 a;           // element of P
  Mat2 commutator;  // a b a^-1 b^-1
};

struct NormalSubgroupCertificate {
  Mat2 seed;                  // class representative generating N
  std::size_t subgroup_order = 0;
  Mat2 upper_right;           // element of N with b != 0
  FieldElem a, d, r;          // diag(a, d) = (1 0; -r 1) * B
  Mat2 factor_u, factor_b;
  std::vector<CommutatorWitness> commutators;
  bool commutators_cover_p = false;
  bool contains_p = false;
  bool contains_p_prime = false;
  bool is_everything = false;
};

struct SimplicityCertificate {
  std::uint32_t q = 0;
  std::vector<NormalSubgroupCertificate> entries;
  bool verdict = false;
};

/// Throws FieldTooSmall for q <= 3 and FieldTooLarge above kMaxMatrixFieldOrder.
SimplicityCertificate certify_simplicity(std::uint32_t q);

/// Recomputes every recorded identity from scratch.
bool verify_certificate(const SimplicityCertificate& cert);

}  // namespace projgrp
