#pragma once

// The projective line F ∪ {∞} over a finite field, permutations of its
// points, and the action of 2x2 determinant-one matrices by Möbius maps.
//
// Points are numbered by field element index; ∞ is the last point, q.
// compose(a, b) applies b first and then a.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "projgrp/field.hpp"

namespace projgrp {

using Point = std::uint16_t;

class ProjLine {
 public:
  explicit ProjLine(Field field);
  static ProjLine over_prime(std::uint32_t p) { return ProjLine(Field::prime(p)); }

  const Field& field() const { return field_; }
  std::size_t size() const { return field_.order() + 1; }
  Point infinity() const { return static_cast<Point>(field_.order()); }
  bool is_infinity(Point x) const { return x == infinity(); }

  Point point(FieldElem e) const { return static_cast<Point>(field_.elem(e.index).index); }
  /// Field element at a finite point.
  FieldElem elem(Point x) const;

 private:
  Field field_;
};

/// Token for a point in cycle notation: its index, or "inf" for the last point.
std::string point_token(Point x, std::size_t degree);

class Permutation {
 public:
  Permutation() = default;
  static Permutation identity(std::size_t degree);
  /// Validates that the images form a bijection of {0, ..., n-1}.
  static Permutation from_images(std::vector<Point> images);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// Cycles (1-cycles included) sorted by smallest member, each starting at it.
  std::vector<std::vector<Point>> cycles() const;
  std::vector<Point> fixed_points() const;
  std::uint64_t order() const;
  /// Canonical cycle notation with fixed points omitted; "()" for the identity.
  std::string to_cycle_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {}
  friend Permutation compose(const Permutation& a, const Permutation& b);

  std::vector<Point> images_;
};

/// Apply b first, then a.
Permutation compose(const Permutation& a, const Permutation& b);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }
/// g a g^-1.
Permutation conjugate(const Permutation& g, const Permutation& a);
Permutation power(const Permutation& a, std::int64_t e);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// FNV-1a over a byte stream; stable across platforms.
std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t seed = 1469598103934665603ull);

Permutation perm_from_images(const ProjLine& line, std::vector<Point> images);
/// Parses "(0 inf)(1 3)(2 6)(4 5)"-style text; unlisted points are fixed.
Permutation perm_from_cycles(const ProjLine& line, std::string_view text);
Permutation perm_from_cycles(std::size_t degree, std::string_view text);

/// 2x2 matrix over a finite field.
struct Mat2 {
  FieldElem a, b, c, d;

  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

namespace mat {
Mat2 identity(const Field& f);
Mat2 mul(const Field& f, const Mat2& x, const Mat2& y);
FieldElem det(const Field& f, const Mat2& m);
/// Inverse of a determinant-one matrix.
Mat2 inverse_unimodular(const Field& f, const Mat2& m);
Mat2 neg(const Field& f, const Mat2& m);
bool is_scalar(const Mat2& m);
std::string to_string(const Mat2& m);
}  // namespace mat

/// z -> (az + b)/(cz + d) with ad - bc = 1.
class MoebiusMap {
 public:
  MoebiusMap(const Field& field, FieldElem a, FieldElem b, FieldElem c, FieldElem d);
  MoebiusMap(const Field& field, const Mat2& m) : MoebiusMap(field, m.a, m.b, m.c, m.d) {}
  static MoebiusMap from_ints(const Field& field, std::int64_t a, std::int64_t b, std::int64_t c,
                              std::int64_t d);

  const Mat2& matrix() const { return m_; }

 private:
  Mat2 m_;
};

Permutation moebius_perm(const ProjLine& line, const MoebiusMap& m);
/// Same action for any determinant-one matrix, without constructing a MoebiusMap.
Permutation moebius_perm(const ProjLine& line, const Mat2& m);
Permutation translation(const ProjLine& line, FieldElem a);
Permutation scaling(const ProjLine& line, FieldElem a);
/// z -> -1/z.
Permutation negative_inversion(const ProjLine& line);

}  // namespace projgrp
