#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "projgrp/error.hpp"
#include "projgrp/field.hpp"
#include "projgrp/gf8.hpp"

using namespace projgrp;

namespace {

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p <= n; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  Field f = Field::prime(7);
  CHECK(f.inv(FieldElem{2}) == FieldElem{static_cast<std::uint32_t>(oracle::inv_scan(2, 7))});
  CHECK(f.inv(FieldElem{2}) == FieldElem{4});
  CHECK(f.neg(f.one()) == FieldElem{6});
  CHECK(f.pow(FieldElem{3}, 6) == f.one());
  CHECK(f.pow(FieldElem{3}, -1) == FieldElem{5});
  CHECK(f.pow(FieldElem{0}, 0) == f.one());
  CHECK_THROWS_AS(f.inv(f.zero()), Error);
  CHECK_THROWS_AS(f.pow(f.zero(), -2), Error);
  CHECK_THROWS_AS(f.elem(7), Error);
  CHECK_THROWS_AS(f.add(FieldElem{9}, f.one()), Error);
  CHECK(f.from_int(-1) == FieldElem{6});

  try {
    f.inv(f.zero());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InversionOfZero);
  }
}

TEST_CASE("inverse matches residue scan for every prime up to 101") {
  for (auto p : primes_up_to(101)) {
    Field f = Field::prime(p);
    for (std::uint32_t a = 1; a < p; ++a)
      REQUIRE(f.inv(FieldElem{a}).index == oracle::inv_scan(a, p));
  }
}

TEST_CASE("field axioms hold exhaustively for small orders") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 32u, 49u, 64u, 81u, 121u, 125u, 128u, 256u, 343u, 512u}) {
    CAPTURE(q);
    Field f = Field::of_order(q);
    REQUIRE(f.order() == q);
    for (std::uint32_t a = 0; a < q; ++a) {
      FieldElem x{a};
      if (a != 0) REQUIRE(f.mul(x, f.inv(x)) == f.one());
      REQUIRE(f.add(x, f.neg(x)) == f.zero());
      for (std::uint32_t b = 0; b < q; ++b) {
        FieldElem y{b};
        REQUIRE(f.mul(x, y) == f.mul(y, x));
        REQUIRE(f.add(x, y) == f.add(y, x));
      }
    }
    // Distributivity on a stride of triples keeps the 512 case fast.
    const std::uint32_t step = q > 64 ? 7 : 1;
    for (std::uint32_t a = 0; a < q; a += step)
      for (std::uint32_t b = 0; b < q; b += step)
        for (std::uint32_t c = 0; c < q; c += step) {
          FieldElem x{a}, y{b}, z{c};
          REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
        }
  }
}

TEST_CASE("distributivity exhaustive up to order 64") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 27u, 49u, 64u}) {
    Field f = Field::of_order(q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c)
          REQUIRE(f.mul(FieldElem{a}, f.add(FieldElem{b}, FieldElem{c})) ==
                  f.add(f.mul(FieldElem{a}, FieldElem{b}), f.mul(FieldElem{a}, FieldElem{c})));
  }
}

TEST_CASE("irreducibility and default modulus") {
  CHECK(is_irreducible(2, {1, 1, 0, 1}));
  CHECK(is_irreducible(2, {1, 0, 1, 1}));
  CHECK_FALSE(is_irreducible(2, {1, 0, 0, 1}));  // (x+1)(x^2+x+1)
  CHECK_FALSE(is_irreducible(3, {2, 0, 1}));      // x^2 - 1
  CHECK(lowest_irreducible(2, 3) == Polynomial{1, 1, 0, 1});
  CHECK(lowest_irreducible(2, 2) == Polynomial{1, 1, 1});
  CHECK(lowest_irreducible(3, 2) == Polynomial{1, 0, 1});
  CHECK_THROWS_AS(Field::with_modulus(2, {1, 0, 0, 1}), Error);
  CHECK_THROWS_AS(Field::of_order(6), Error);
  CHECK_THROWS_AS(Field::prime(9), Error);
  CHECK_THROWS_AS(Field::of_order(1u << 17), Error);
}

TEST_CASE("quadratic classes") {
  auto qc7 = quadratic_classes(7);
  CHECK(qc7.residues == std::vector<std::uint32_t>{1, 2, 4});
  CHECK(qc7.nonresidues == std::vector<std::uint32_t>{3, 5, 6});
  auto qc5 = quadratic_classes(5);
  CHECK(qc5.residues == std::vector<std::uint32_t>{1, 4});
  CHECK(qc5.nonresidues == std::vector<std::uint32_t>{2, 3});
  CHECK(quadratic_classes(13).is_residue(12));
  CHECK_THROWS_AS(quadratic_classes(2), Error);
  CHECK_THROWS_AS(quadratic_classes(15), Error);
}

TEST_CASE("quadratic class closure and -1 criterion for odd primes up to 101") {
  for (auto p : primes_up_to(101)) {
    if (p == 2) continue;
    CAPTURE(p);
    auto qc = quadratic_classes(p);
    // Oracle: square every residue directly.
    std::set<std::uint32_t> squares;
    for (std::uint64_t a = 1; a < p; ++a) squares.insert(static_cast<std::uint32_t>(a * a % p));
    REQUIRE(std::set<std::uint32_t>(qc.residues.begin(), qc.residues.end()) == squares);
    REQUIRE(qc.residues.size() == (p - 1) / 2);
    REQUIRE(qc.nonresidues.size() == (p - 1) / 2);
    for (auto a : qc.residues)
      for (auto b : qc.residues) REQUIRE(qc.is_residue(static_cast<std::uint32_t>(std::uint64_t{a} * b % p)));
    for (auto a : qc.residues)
      for (auto b : qc.nonresidues) REQUIRE(qc.is_nonresidue(static_cast<std::uint32_t>(std::uint64_t{a} * b % p)));
    for (auto a : qc.nonresidues)
      for (auto b : qc.nonresidues) REQUIRE(qc.is_residue(static_cast<std::uint32_t>(std::uint64_t{a} * b % p)));
    REQUIRE(qc.is_residue(p - 1) == (p % 4 == 1));
    Field f = Field::prime(p);
    for (std::uint32_t a = 1; a < p; ++a) REQUIRE(f.is_square(FieldElem{a}) == qc.is_residue(a));
  }
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(7) == FieldElem{3});
  CHECK(primitive_root(5) == FieldElem{2});
  CHECK(primitive_root(2) == FieldElem{1});
  CHECK(primitive_root(13) == FieldElem{2});
  CHECK_THROWS_AS(primitive_root(8), Error);
  for (auto p : primes_up_to(101)) {
    if (p == 2) continue;
    Field f = Field::prime(p);
    FieldElem g = primitive_root(p);
    CHECK(f.multiplicative_order(g) == p - 1);
    for (std::uint32_t h = 2; h < g.index; ++h) CHECK(f.multiplicative_order(FieldElem{h}) < p - 1);
  }
}

TEST_CASE("GF(8) relations for the cubic zeta^3 + zeta + 1") {
  Gf8Labeling lab(Gf8Cubic::kZeta3PlusZetaPlus1);
  const Field& f = lab.field();
  FieldElem z = lab.zeta();
  CHECK(f.add(f.one(), f.one()) == f.zero());
  CHECK(f.add(f.one(), z) == f.pow(z, 3));
  CHECK(f.add(f.one(), f.pow(z, 2)) == f.pow(z, 6));
  CHECK(f.add(f.one(), f.pow(z, 4)) == f.pow(z, 5));
  CHECK(f.pow(z, 12) == f.pow(z, 5));
  CHECK(f.multiplicative_order(z) == 7);
}

TEST_CASE("GF(8) labeling transports x+1 to the listed involutions") {
  Gf8Labeling a(Gf8Cubic::kZeta3PlusZetaPlus1);
  CHECK(a.transport(a.add_one()).to_cycle_string() == "(0 inf)(1 3)(2 6)(4 5)");
  CHECK(a.transport(a.mul_zeta()) == translation(a.line(), FieldElem{1}));
  CHECK(a.transport(a.square()) == scaling(a.line(), FieldElem{2}));

  // Independent recomputation for the second cubic: discrete logs from 3-bit
  // polynomial arithmetic modulo x^3 + x^2 + 1 (mask 0b1101).
  const int cubic = 0b1101;
  int log_of[8] = {};
  int x = 1;
  for (int i = 0; i < 7; ++i) {
    log_of[x] = i;
    x = oracle::gf8_mul(x, 2, cubic);
  }
  oracle::Perm expected(8);
  expected[7] = log_of[1];  // 0 + 1 = 1
  expected[static_cast<std::size_t>(log_of[1])] = 7;
  for (int e = 1; e < 8; ++e) {
    if (e == 1) continue;
    expected[static_cast<std::size_t>(log_of[e])] = log_of[e ^ 1];
  }
  Gf8Labeling b(Gf8Cubic::kZeta3PlusZeta2Plus1);
  Permutation t = b.transport(b.add_one());
  for (Point i = 0; i < 8; ++i) CHECK(t(i) == expected[i]);
  CHECK(t.to_cycle_string() == "(0 inf)(1 5)(2 3)(4 6)");
  CHECK(b.transport(b.mul_zeta()).to_cycle_string() == "(0 1 2 3 4 5 6)");
}

TEST_CASE("GF(8) labeling round trip and bad cubic") {
  for (auto v : {Gf8Cubic::kZeta3PlusZetaPlus1, Gf8Cubic::kZeta3PlusZeta2Plus1}) {
    Gf8Labeling lab(v);
    for (const auto& m : {lab.add_one(), lab.mul_zeta(), lab.square()}) CHECK(lab.transport_back(lab.transport(m)) == m);
  }
  try {
    Gf8Labeling bad(Polynomial{1, 0, 0, 1});
    FAIL("reducible cubic accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReduciblePolynomial);
  }
}
