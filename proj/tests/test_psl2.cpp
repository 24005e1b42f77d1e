#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "projgrp/error.hpp"
#include "projgrp/psl2.hpp"

using namespace projgrp;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

Mat2 m(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  return {FieldElem{a}, FieldElem{b}, FieldElem{c}, FieldElem{d}};
}

}  // namespace

TEST_CASE("SL2 and PSL2 orders for small fields") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    CAPTURE(q);
    auto g = sl2_group(q);
    const std::uint64_t qq = q;
    CHECK(g.matrices.size() == qq * (qq * qq - 1));
    CHECK(g.image.order() == psl2_order(q));
    CHECK(g.image.order() == qq * (qq * qq - 1) / (q % 2 == 1 ? 2 : 1));
    CHECK(psl2_perm_group(q).order() == psl2_order(q));
  }
  CHECK(sl2_group(7).matrices.size() == 336);
  CHECK(sl2_group(7).image.order() == 168);
  CHECK(sl2_group(8).image.order() == 504);
  CHECK(sl2_group(2).image.order() == 6);
  CHECK(psl2_perm_group(4).order() == 60);
  CHECK(psl2_perm_group(11).order() == 660);
  CHECK(psl2_perm_group(3).order() == 12);
  CHECK(code_of([] { sl2_group(16); }) == ErrorCode::FieldTooLarge);
  CHECK(code_of([] { psl2_perm_group(23); }) == ErrorCode::FieldTooLarge);
}

TEST_CASE("two generators give the full order for primes up to 19") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u}) {
    auto g = psl2_perm_group(p);
    CHECK(g.generators().size() == 2);
    CHECK(g.order() == (std::uint64_t{p} * p * p - p) / 2);
  }
  // Oracle closure for the smallest cases.
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto t = oracle::moebius(1, 1, 0, 1, static_cast<int>(p));
    auto s = oracle::moebius(0, -1, 1, 0, static_cast<int>(p));
    CHECK(oracle::closure({t, s}).size() == (p * p * p - p) / 2);
  }
}

TEST_CASE("P and P' have q elements each and generate SL2") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    SL2 sl2(q);
    auto lower = sl2.lower_unipotent();
    auto upper = sl2.upper_unipotent();
    CHECK(std::set<Mat2>(lower.begin(), lower.end()).size() == q);
    CHECK(std::set<Mat2>(upper.begin(), upper.end()).size() == q);
    auto all = MatrixSubgroup::generated_by(sl2, sl2.generators());
    CHECK(all.order() == sl2.elements().size());
    CHECK(sl2.center().size() == (q % 2 == 1 ? 2u : 1u));
  }
}

TEST_CASE("kernel of the projective action is the center") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u, 9u}) {
    SL2 sl2(q);
    ProjLine line(sl2.field());
    std::size_t kernel = 0;
    for (const auto& x : sl2.elements()) {
      if (moebius_perm(line, x).is_identity()) {
        ++kernel;
        CHECK(mat::is_scalar(x));
      }
      CHECK(moebius_perm(line, x) == moebius_perm(line, mat::neg(sl2.field(), x)));
    }
    CHECK(kernel == sl2.center().size());
  }
}

TEST_CASE("upper-right witnesses") {
  SL2 sl5(5);
  auto all5 = MatrixSubgroup::generated_by(sl5, sl5.generators());
  CHECK(upper_right_witness(sl5, all5).b.index != 0);

  SL2 sl7(7);
  auto closure = MatrixSubgroup::normal_closure(sl7, m(1, 1, 0, 1));
  CHECK(closure.order() == 336);
  CHECK(upper_right_witness(sl7, closure).b.index == 1);

  auto center = MatrixSubgroup::generated_by(sl5, sl5.center());
  CHECK(center.order() == 2);
  CHECK(center.all_scalar());
  CHECK(code_of([&] { upper_right_witness(sl5, center); }) == ErrorCode::OnlyScalars);

  // Upper unitriangular matrices form a subgroup that is not normal.
  auto upper = MatrixSubgroup::generated_by(sl5, sl5.upper_unipotent());
  CHECK(code_of([&] { upper_right_witness(sl5, upper); }) == ErrorCode::NotNormal);
}

TEST_CASE("factorization through the lower unitriangular group") {
  SL2 sl5(5);
  auto all5 = MatrixSubgroup::generated_by(sl5, sl5.generators());
  auto fac = factor_through_lower_unipotent(sl5, m(2, 0, 0, 3), all5);
  CHECK(fac.u == sl5.identity());
  CHECK(fac.b == m(2, 0, 0, 3));

  // Restricting the subgroup to the diagonal-times-lower Borel-type pieces: the
  // seed's closure is all of SL2, so B = (a 0; ra d) for the first r scanned.
  SL2 sl7(7);
  const Field& f = sl7.field();
  for (const auto& seed : {m(1, 1, 0, 1), m(0, 6, 1, 0), m(3, 0, 0, 5), m(2, 1, 3, 2)}) {
    REQUIRE(mat::det(f, seed) == f.one());
    auto n = MatrixSubgroup::normal_closure(sl7, seed);
    for (const auto& target : sl7.elements()) {
      auto d = factor_through_lower_unipotent(sl7, target, n);
      REQUIRE(sl7.mul(d.u, d.b) == target);
      REQUIRE(n.contains(d.b));
      REQUIRE(d.u.a == f.one());
      REQUIRE(d.u.b.index == 0);
    }
  }

  // Against a proper subgroup some targets cannot be reached.
  auto center = MatrixSubgroup::generated_by(sl5, sl5.center());
  CHECK(code_of([&] { factor_through_lower_unipotent(sl5, m(0, 4, 1, 0), center); }) == ErrorCode::DecompositionFails);
}

TEST_CASE("simplicity certificates") {
  for (std::uint32_t q : {4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    CAPTURE(q);
    auto cert = certify_simplicity(q);
    CHECK(cert.verdict);
    CHECK_FALSE(cert.entries.empty());
    for (const auto& e : cert.entries) {
      CHECK(e.commutators.size() == q);
      CHECK(e.is_everything);
      CHECK(e.factor_b.b.index == 0);
    }
    CHECK(verify_certificate(cert));
    CHECK(is_simple(psl2_perm_group(q)) == cert.verdict);
  }
  CHECK(code_of([] { certify_simplicity(3); }) == ErrorCode::FieldTooSmall);
  CHECK(code_of([] { certify_simplicity(2); }) == ErrorCode::FieldTooSmall);
  CHECK(code_of([] { certify_simplicity(16); }) == ErrorCode::FieldTooLarge);
  CHECK_FALSE(is_simple(psl2_perm_group(3)));
  CHECK_FALSE(is_simple(psl2_perm_group(2)));
}

TEST_CASE("tampered certificates are rejected") {
  auto cert = certify_simplicity(5);
  REQUIRE(verify_certificate(cert));
  const Field f = Field::prime(5);

  auto bad = cert;
  bad.entries[0].commutators[1].commutator = mat::identity(f);
  CHECK_FALSE(verify_certificate(bad));

  bad = cert;
  bad.entries[0].r = f.add(bad.entries[0].r, f.one());
  CHECK_FALSE(verify_certificate(bad));

  bad = cert;
  bad.entries[0].upper_right = mat::identity(f);
  CHECK_FALSE(verify_certificate(bad));

  bad = cert;
  bad.entries[0].subgroup_order = 2;
  CHECK_FALSE(verify_certificate(bad));
}

TEST_CASE("normal subgroups of SL2(3) and SL2(2) are not forced to be everything") {
  SL2 sl3(3);
  std::set<std::size_t> orders;
  for (const auto& cls : matrix_conjugacy_classes(sl3))
    orders.insert(MatrixSubgroup::normal_closure(sl3, cls.front()).order());
  // SL2(3) has the quaternion normal subgroup of order 8.
  CHECK(orders.count(8) == 1);
  std::size_t total = 0;
  for (const auto& cls : matrix_conjugacy_classes(sl3)) total += cls.size();
  CHECK(total == 24);
}
