#pragma once

// The 8-element field laid over Z/7 ∪ {∞}: 0 goes to ∞ and zeta^i goes to i,
// where zeta is a root of the chosen cubic over Z/2. Under this labeling
// x -> zeta x becomes z -> z + 1 and x -> x^2 becomes z -> 2z.

#include <vector>

#include "projgrp/field.hpp"
#include "projgrp/projline.hpp"

namespace projgrp {

enum class Gf8Cubic {
  kZeta3PlusZetaPlus1,   // zeta^3 + zeta + 1 = 0
  kZeta3PlusZeta2Plus1,  // zeta^3 + zeta^2 + 1 = 0
};

Polynomial gf8_polynomial(Gf8Cubic variant);

/// A map F -> F given by the image of each element index.
using FieldMap = std::vector<FieldElem>;

class Gf8Labeling {
 public:
  /// Throws ReduciblePolynomial unless `cubic` is an irreducible monic cubic over Z/2.
  explicit Gf8Labeling(Polynomial cubic);
  explicit Gf8Labeling(Gf8Cubic variant) : Gf8Labeling(gf8_polynomial(variant)) {}

  const Field& field() const { return field_; }
  const ProjLine& line() const { return line_; }
  /// Root of the cubic; it generates F*.
  FieldElem zeta() const { return zeta_; }

  Point point_of(FieldElem x) const { return point_of_[x.index]; }
  FieldElem elem_of(Point z) const { return elem_of_[z]; }

  Permutation transport(const FieldMap& map) const;
  FieldMap transport_back(const Permutation& perm) const;

  FieldMap add_one() const;
  FieldMap mul_zeta() const;
  FieldMap square() const;

 private:
  Field field_;
  ProjLine line_;
  FieldElem zeta_;
  std::vector<Point> point_of_;
  std::vector<FieldElem> elem_of_;
};

Gf8Labeling gf8_labeling(Gf8Cubic variant);

}  // namespace projgrp
