#include "projgrp/gf8.hpp"

#include "projgrp/error.hpp"

namespace projgrp {

Polynomial gf8_polynomial(Gf8Cubic variant) {
  switch (variant) {
    case Gf8Cubic::kZeta3PlusZetaPlus1: return {1, 1, 0, 1};
    case Gf8Cubic::kZeta3PlusZeta2Plus1: return {1, 0, 1, 1};
  }
  throw Error(ErrorCode::BadVariant, "unknown cubic");
}

namespace {

Field gf8_field(Polynomial cubic) {
  if (cubic.size() != 4) throw Error(ErrorCode::InvalidFieldSpec, "expected a cubic");
  return Field::with_modulus(2, std::move(cubic));
}

}  // namespace

Gf8Labeling::Gf8Labeling(Polynomial cubic)
    : field_(gf8_field(std::move(cubic))), line_(ProjLine::over_prime(7)), zeta_{2}, point_of_(8), elem_of_(8) {
  // zeta is the class of x, index 2. Its order is 7 because F* has prime order.
  point_of_[0] = line_.infinity();
  elem_of_[line_.infinity()] = field_.zero();
  FieldElem x = field_.one();
  for (Point i = 0; i < 7; ++i) {
    point_of_[x.index] = i;
    elem_of_[i] = x;
    x = field_.mul(x, zeta_);
  }

  if (transport(mul_zeta()) != translation(line_, FieldElem{1}) ||
      transport(square()) != scaling(line_, FieldElem{2}))
    throw Error(ErrorCode::InvalidFieldSpec, "labeling does not carry zeta*x and x^2 to z+1 and 2z");
}

Permutation Gf8Labeling::transport(const FieldMap& map) const {
  if (map.size() != 8) throw Error(ErrorCode::WrongLength, "field map must have 8 entries");
  std::vector<Point> images(8);
  for (std::uint32_t i = 0; i < 8; ++i) images[point_of_[i]] = point_of_[field_.elem(map[i].index).index];
  return Permutation::from_images(std::move(images));
}

FieldMap Gf8Labeling::transport_back(const Permutation& perm) const {
  if (perm.degree() != 8) throw Error(ErrorCode::DomainMismatch, "expected a permutation of 8 points");
  FieldMap map(8);
  for (std::uint32_t i = 0; i < 8; ++i) map[i] = elem_of_[perm(point_of_[i])];
  return map;
}

FieldMap Gf8Labeling::add_one() const {
  FieldMap m(8);
  for (std::uint32_t i = 0; i < 8; ++i) m[i] = field_.add(FieldElem{i}, field_.one());
  return m;
}

FieldMap Gf8Labeling::mul_zeta() const {
  FieldMap m(8);
  for (std::uint32_t i = 0; i < 8; ++i) m[i] = field_.mul(FieldElem{i}, zeta_);
  return m;
}

FieldMap Gf8Labeling::square() const {
  FieldMap m(8);
  for (std::uint32_t i = 0; i < 8; ++i) m[i] = field_.mul(FieldElem{i}, FieldElem{i});
  return m;
}

Gf8Labeling gf8_labeling(Gf8Cubic variant) { return Gf8Labeling(variant); }

}  // namespace projgrp
