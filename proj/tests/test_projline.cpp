#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "projgrp/error.hpp"
#include "projgrp/projline.hpp"

using namespace projgrp;

namespace {

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>(i);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation::from_images(im);
}

Permutation from_oracle(const oracle::Perm& p) {
  std::vector<Point> im(p.begin(), p.end());
  return Permutation::from_images(im);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("permutations from images") {
  auto line5 = ProjLine::over_prime(5);
  CHECK(perm_from_images(line5, {0, 1, 2, 3, 4, 5}).is_identity());
  auto line7 = ProjLine::over_prime(7);
  Permutation lam = perm_from_images(line7, {7, 3, 6, 1, 5, 4, 2, 0});
  CHECK(lam.to_cycle_string() == "(0 inf)(1 3)(2 6)(4 5)");
  CHECK(code_of([&] { perm_from_images(line5, {0, 0, 2, 3, 4, 5}); }) == ErrorCode::NotABijection);
  CHECK(code_of([&] { perm_from_images(line5, {0, 1, 2}); }) == ErrorCode::WrongLength);
}

TEST_CASE("cycle notation parsing") {
  auto line7 = ProjLine::over_prime(7);
  Permutation lam = perm_from_cycles(line7, "(0 inf)(1 5)(2 3)(4 6)");
  CHECK(lam(0) == 7);
  CHECK(lam(7) == 0);
  CHECK(lam(1) == 5);
  CHECK(lam(6) == 4);
  CHECK(perm_from_cycles(line7, "(0 1 2 3 4 5 6)") == translation(line7, FieldElem{1}));
  CHECK(perm_from_cycles(line7, "").is_identity());
  CHECK(perm_from_cycles(line7, "()").is_identity());
  CHECK(perm_from_cycles(line7, "  ( 3 1 )\n( 2 inf ) ").to_cycle_string() == "(1 3)(2 inf)");
  CHECK(code_of([&] { perm_from_cycles(line7, "(0 1)(1 2)"); }) == ErrorCode::OverlappingCycles);
  CHECK(code_of([&] { perm_from_cycles(line7, "(0 9)"); }) == ErrorCode::UnknownPoint);
  CHECK(code_of([&] { perm_from_cycles(line7, "(0 7)"); }) == ErrorCode::UnknownPoint);
  CHECK(code_of([&] { perm_from_cycles(line7, "(0 x)"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { perm_from_cycles(line7, "(0 1"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { perm_from_cycles(line7, "0 1)"); }) == ErrorCode::ParseError);
}

TEST_CASE("composition applies the right factor first") {
  auto line7 = ProjLine::over_prime(7);
  Permutation t1 = translation(line7, FieldElem{1});
  Permutation t2 = translation(line7, FieldElem{2});
  CHECK(compose(t1, t2) == translation(line7, FieldElem{3}));
  Permutation s = negative_inversion(line7);
  CHECK(compose(s, s).is_identity());
  Permutation m2 = scaling(line7, FieldElem{2});
  // (z -> 2z) after (z -> z+1) sends 0 to 2; the other order sends 0 to 1.
  CHECK(compose(m2, t1)(0) == 2);
  CHECK(compose(t1, m2)(0) == 1);
  auto line5 = ProjLine::over_prime(5);
  Permutation c = perm_from_cycles(line5, "(0 1 2 3 4)");
  CHECK(c.inverse().to_cycle_string() == "(0 4 3 2 1)");
  CHECK(code_of([&] { compose(t1, c); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("cycles, fixed points and order") {
  auto line13 = ProjLine::over_prime(13);
  Permutation neg = scaling(line13, FieldElem{12});
  CHECK(neg.fixed_points() == std::vector<Point>{0, 13});
  auto line5 = ProjLine::over_prime(5);
  Permutation s = negative_inversion(line5);
  // Oracle: evaluate -1/z mod 5 directly.
  CHECK(s == from_oracle(oracle::moebius(0, -1, 1, 0, 5)));
  CHECK(s.to_cycle_string() == "(0 inf)(1 4)");
  CHECK(s.fixed_points() == std::vector<Point>{2, 3});
  CHECK(s.order() == 2);
  auto cyc = s.cycles();
  REQUIRE(cyc.size() == 4);
  CHECK(cyc[0] == std::vector<Point>{0, 5});
  CHECK(cyc[1] == std::vector<Point>{1, 4});
  CHECK(cyc[2] == std::vector<Point>{2});
  auto line7 = ProjLine::over_prime(7);
  CHECK(Permutation::identity(8).fixed_points().size() == 8);
  CHECK(Permutation::identity(8).order() == 1);
  CHECK(scaling(line7, FieldElem{3}).order() == 6);
  CHECK(scaling(line7, FieldElem{1}).is_identity());
  CHECK(code_of([&] { scaling(line7, FieldElem{0}); }) == ErrorCode::ZeroScaling);
}

TEST_CASE("Moebius maps") {
  auto line7 = ProjLine::over_prime(7);
  const Field& f = line7.field();
  CHECK(moebius_perm(line7, MoebiusMap::from_ints(f, 1, 1, 0, 1)) == translation(line7, FieldElem{1}));
  Permutation s = moebius_perm(line7, MoebiusMap::from_ints(f, 0, -1, 1, 0));
  CHECK(s == from_oracle(oracle::moebius(0, -1, 1, 0, 7)));
  CHECK(s.to_cycle_string() == "(0 inf)(1 6)(2 3)(4 5)");
  // diag(2, 2^-1) scales by 2^2 = 4.
  CHECK(moebius_perm(line7, MoebiusMap::from_ints(f, 2, 0, 0, 4)) == scaling(line7, FieldElem{4}));
  CHECK(code_of([&] { MoebiusMap::from_ints(f, 1, 1, 1, 1); }) == ErrorCode::NonUnitDeterminant);
  CHECK(translation(line7, FieldElem{1}).to_cycle_string() == "(0 1 2 3 4 5 6)");
}

TEST_CASE("property: group axioms on random triples") {
  std::mt19937_64 rng(20240611);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u}) {
    const std::size_t n = p + 1;
    for (int trial = 0; trial < 10000; ++trial) {
      Permutation a = random_perm(n, rng), b = random_perm(n, rng), c = random_perm(n, rng);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * a.inverse() == Permutation::identity(n));
      REQUIRE(a.inverse() * a == Permutation::identity(n));
      REQUIRE(a * Permutation::identity(n) == a);
      Point x = static_cast<Point>(rng() % n);
      REQUIRE((a * b)(x) == a(b(x)));
    }
  }
}

TEST_CASE("property: cycle notation round trip is canonical") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {3u, 5u, 7u, 13u, 19u}) {
    auto line = ProjLine::over_prime(p);
    for (int trial = 0; trial < 2000; ++trial) {
      Permutation a = random_perm(line.size(), rng);
      std::string text = a.to_cycle_string();
      Permutation back = perm_from_cycles(line, text);
      REQUIRE(back == a);
      REQUIRE(back.to_cycle_string() == text);
      // Product of cycle lengths agrees with the oracle order.
      oracle::Perm raw(a.images().begin(), a.images().end());
      REQUIRE(a.order() == static_cast<std::uint64_t>(oracle::perm_order(raw)));
    }
  }
}

TEST_CASE("property: Moebius action is a homomorphism with kernel +-I") {
  std::mt19937_64 rng(99);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u}) {
    auto line = ProjLine::over_prime(p);
    const Field& f = line.field();
    auto random_sl2 = [&] {
      while (true) {
        Mat2 m{FieldElem{static_cast<std::uint32_t>(rng() % p)}, FieldElem{static_cast<std::uint32_t>(rng() % p)},
               FieldElem{static_cast<std::uint32_t>(rng() % p)}, FieldElem{static_cast<std::uint32_t>(rng() % p)}};
        FieldElem d = mat::det(f, m);
        if (d.index == 0) continue;
        // Rescale the first row so the determinant becomes 1.
        FieldElem s = f.inv(d);
        m.a = f.mul(m.a, s);
        m.b = f.mul(m.b, s);
        return MoebiusMap(f, m);
      }
    };
    for (int trial = 0; trial < 1000; ++trial) {
      MoebiusMap m1 = random_sl2(), m2 = random_sl2();
      MoebiusMap prod(f, mat::mul(f, m1.matrix(), m2.matrix()));
      REQUIRE(moebius_perm(line, prod) == compose(moebius_perm(line, m1), moebius_perm(line, m2)));
      REQUIRE(moebius_perm(line, m1) == moebius_perm(line, MoebiusMap(f, mat::neg(f, m1.matrix()))));
      // Oracle evaluation of the same matrix.
      const Mat2& m = m1.matrix();
      REQUIRE(moebius_perm(line, m1) == from_oracle(oracle::moebius(m.a.index, m.b.index, m.c.index, m.d.index, p)));
    }
  }
}

TEST_CASE("non-identity Moebius permutations fix at most two points") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u}) {
    auto line = ProjLine::over_prime(p);
    const Field& f = line.field();
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b)
        for (std::uint32_t c = 0; c < p; ++c)
          for (std::uint32_t d = 0; d < p; ++d) {
            Mat2 m{FieldElem{a}, FieldElem{b}, FieldElem{c}, FieldElem{d}};
            if (mat::det(f, m) != f.one()) continue;
            Permutation g = moebius_perm(line, m);
            if (!g.is_identity()) REQUIRE(g.fixed_points().size() <= 2);
          }
  }
}
