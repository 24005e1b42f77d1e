#pragma once

// Exact arithmetic in Z/p and in small extension fields GF(p^k).
//
// An element of GF(p^k) is identified by the integer whose base-p digits are
// the coefficients of its polynomial representative (constant term in the
// least significant digit). For k = 1 that index is just the residue, so
// element 0 is the additive zero and element 1 the multiplicative one in
// every field. Multiplication goes through exp/log tables keyed by the
// smallest-index primitive element.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace projgrp {

struct FieldElem {
  std::uint32_t index = 0;

  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

bool is_prime(std::uint64_t n);

/// Monic polynomial over Z/p: coefficients from constant term up, leading 1 last.
using Polynomial = std::vector<std::uint32_t>;

/// Trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, const Polynomial& poly);

/// Lowest monic irreducible of the given degree, comparing coefficients from
/// the highest non-leading term down.
Polynomial lowest_irreducible(std::uint32_t p, std::uint32_t degree);

class Field {
 public:
  /// Z/p.
  static Field prime(std::uint32_t p);
  /// GF(p^k) on the lowest monic irreducible of degree k.
  static Field extension(std::uint32_t p, std::uint32_t k);
  /// GF(p^k) on a caller-chosen monic polynomial (irreducibility is checked).
  static Field with_modulus(std::uint32_t p, Polynomial modulus);
  /// GF(q) for a prime power q.
  static Field of_order(std::uint32_t q);

  std::uint32_t characteristic() const { return t_->p; }
  std::uint32_t degree() const { return t_->k; }
  std::uint32_t order() const { return t_->q; }
  const Polynomial& modulus() const { return t_->modulus; }
  bool is_prime_field() const { return t_->k == 1; }

  FieldElem zero() const { return FieldElem{0}; }
  FieldElem one() const { return FieldElem{1}; }
  /// Checked element construction by index.
  FieldElem elem(std::uint32_t index) const;
  /// Image of an integer under Z -> prime subfield.
  FieldElem from_int(std::int64_t n) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const;
  /// Exact integer power; a negative exponent needs a nonzero base.
  FieldElem pow(FieldElem a, std::int64_t e) const;

  /// The primitive element backing the log tables.
  FieldElem generator() const { return FieldElem{t_->generator}; }
  /// Discrete log to base generator(); the argument must be nonzero.
  std::uint32_t log(FieldElem a) const;
  FieldElem exp(std::int64_t e) const;
  std::uint32_t multiplicative_order(FieldElem a) const;
  bool is_square(FieldElem a) const;

  std::vector<FieldElem> elements() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->modulus == b.t_->modulus);
  }

 private:
  struct Tables {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint32_t q = 0;
    Polynomial modulus;
    std::uint32_t generator = 0;
    std::vector<std::uint32_t> exp;  // exp[i] = generator^i, i < q - 1
    std::vector<std::uint32_t> log;  // log[exp[i]] = i; log[0] unused
    std::vector<std::uint32_t> neg;
  };

  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  static Field build(std::uint32_t p, Polynomial modulus);
  void check(FieldElem a) const;

  std::shared_ptr<const Tables> t_;
};

/// Squares R and non-squares N in (Z/p)*, both ascending.
struct QuadraticClasses {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> residues;
  std::vector<std::uint32_t> nonresidues;

  bool is_residue(std::uint32_t a) const;
  bool is_nonresidue(std::uint32_t a) const;
};

QuadraticClasses quadratic_classes(std::uint32_t p);

/// Smallest positive generator of (Z/p)*; 1 for p = 2.
FieldElem primitive_root(std::uint32_t p);

}  // namespace projgrp
