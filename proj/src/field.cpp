#include "projgrp/field.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "projgrp/error.hpp"

namespace projgrp {

namespace {

using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t index, std::uint32_t p, std::uint32_t k) {
  Digits d(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    d[i] = index % p;
    index /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint32_t index = 0;
  for (std::size_t i = d.size(); i-- > 0;) index = index * p + d[i];
  return index;
}

// Remainder of a modulo a monic divisor, both over Z/p. Returns true when the
// remainder is zero.
bool divides(const Polynomial& divisor, Polynomial a, std::uint32_t p) {
  const std::size_t dd = divisor.size() - 1;
  while (a.size() > dd) {
    std::uint32_t lead = a.back() % p;
    if (lead != 0) {
      std::size_t shift = a.size() - 1 - dd;
      for (std::size_t i = 0; i <= dd; ++i) {
        a[shift + i] = (a[shift + i] + p - (lead * divisor[i]) % p) % p;
      }
    }
    a.pop_back();
  }
  return std::all_of(a.begin(), a.end(), [p](std::uint32_t c) { return c % p == 0; });
}

// Product of two residues modulo the field polynomial, in digit form.
Digits mul_mod(const Digits& a, const Digits& b, const Polynomial& modulus, std::uint32_t p) {
  const std::size_t k = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t deg = 2 * k - 1; deg >= k; --deg) {
    std::uint64_t lead = prod[deg] % p;
    if (lead == 0) continue;
    std::size_t shift = deg - k;
    for (std::size_t i = 0; i <= k; ++i) prod[shift + i] = (prod[shift + i] + p - (lead * modulus[i]) % p) % p;
  }
  Digits out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::uint32_t p, const Polynomial& poly) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
  if (poly.size() < 2 || poly.back() != 1)
    throw Error(ErrorCode::InvalidFieldSpec, "polynomial must be monic of degree >= 1");
  const std::uint32_t deg = static_cast<std::uint32_t>(poly.size() - 1);
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t m = 0; m < count; ++m) {
      Polynomial divisor = to_digits(static_cast<std::uint32_t>(m), p, d);
      divisor.push_back(1);
      if (divides(divisor, poly, p)) return false;
    }
  }
  return true;
}

Polynomial lowest_irreducible(std::uint32_t p, std::uint32_t degree) {
  if (degree == 0) throw Error(ErrorCode::InvalidFieldSpec, "degree must be positive");
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < degree; ++i) count *= p;
  for (std::uint64_t m = 0; m < count; ++m) {
    Polynomial poly = to_digits(static_cast<std::uint32_t>(m), p, degree);
    poly.push_back(1);
    if (is_irreducible(p, poly)) return poly;
  }
  throw Error(ErrorCode::InvalidFieldSpec, "no irreducible polynomial found");
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
  return build(p, Polynomial{0, 1});
}

Field Field::extension(std::uint32_t p, std::uint32_t k) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
  if (k == 1) return prime(p);
  return build(p, lowest_irreducible(p, k));
}

Field Field::with_modulus(std::uint32_t p, Polynomial modulus) {
  if (!is_irreducible(p, modulus))
    throw Error(ErrorCode::ReduciblePolynomial, "modulus is reducible over Z/" + std::to_string(p));
  return build(p, std::move(modulus));
}

Field Field::of_order(std::uint32_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidFieldSpec, "field order must be at least 2");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw Error(ErrorCode::InvalidFieldSpec, std::to_string(q) + " is not a prime power");
  return extension(p, k);
}

Field Field::build(std::uint32_t p, Polynomial modulus) {
  const std::uint32_t k = static_cast<std::uint32_t>(modulus.size() - 1);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxFieldOrder)
      throw Error(ErrorCode::InvalidFieldSpec, "field order exceeds " + std::to_string(kMaxFieldOrder));
  }

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->k = k;
  t->q = static_cast<std::uint32_t>(q);
  t->modulus = std::move(modulus);
  t->neg.resize(t->q);
  for (std::uint32_t i = 0; i < t->q; ++i) {
    Digits d = to_digits(i, p, k);
    for (auto& c : d) c = (p - c) % p;
    t->neg[i] = from_digits(d, p);
  }

  if (t->q == 2) {
    t->generator = 1;
    t->exp = {1};
    t->log = {0, 0};
    return Field(std::move(t));
  }

  for (std::uint32_t g = 2; g < t->q; ++g) {
    const Digits gd = to_digits(g, p, k);
    std::vector<std::uint32_t> powers{1};
    Digits cur = to_digits(1, p, k);
    while (true) {
      cur = mul_mod(cur, gd, t->modulus, p);
      std::uint32_t idx = from_digits(cur, p);
      if (idx == 1) break;
      powers.push_back(idx);
    }
    if (powers.size() == t->q - 1) {
      t->generator = g;
      t->exp = std::move(powers);
      t->log.assign(t->q, 0);
      for (std::uint32_t i = 0; i < t->exp.size(); ++i) t->log[t->exp[i]] = i;
      return Field(std::move(t));
    }
  }
  throw Error(ErrorCode::InvalidFieldSpec, "no primitive element found");
}

void Field::check(FieldElem a) const {
  if (a.index >= t_->q)
    throw Error(ErrorCode::IndexOutOfRange,
                std::to_string(a.index) + " >= field order " + std::to_string(t_->q));
}

FieldElem Field::elem(std::uint32_t index) const {
  FieldElem e{index};
  check(e);
  return e;
}

FieldElem Field::from_int(std::int64_t n) const {
  const std::int64_t p = t_->p;
  return FieldElem{static_cast<std::uint32_t>(((n % p) + p) % p)};
}

FieldElem Field::add(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  const std::uint32_t p = t_->p;
  if (t_->k == 1) return FieldElem{(a.index + b.index) % p};
  if (p == 2) return FieldElem{a.index ^ b.index};
  std::uint32_t x = a.index, y = b.index, out = 0, place = 1;
  for (std::uint32_t i = 0; i < t_->k; ++i) {
    out += ((x % p + y % p) % p) * place;
    x /= p;
    y /= p;
    place *= p;
  }
  return FieldElem{out};
}

FieldElem Field::neg(FieldElem a) const {
  check(a);
  return FieldElem{t_->neg[a.index]};
}

FieldElem Field::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem Field::mul(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  if (a.index == 0 || b.index == 0) return zero();
  const std::uint32_t n = t_->q - 1;
  return FieldElem{t_->exp[(t_->log[a.index] + t_->log[b.index]) % n]};
}

FieldElem Field::inv(FieldElem a) const {
  check(a);
  if (a.index == 0) throw Error(ErrorCode::InversionOfZero, "inverse of 0");
  const std::uint32_t n = t_->q - 1;
  return FieldElem{t_->exp[(n - t_->log[a.index]) % n]};
}

FieldElem Field::div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

FieldElem Field::pow(FieldElem a, std::int64_t e) const {
  check(a);
  if (a.index == 0) {
    if (e < 0) throw Error(ErrorCode::InversionOfZero, "negative power of 0");
    return e == 0 ? one() : zero();
  }
  const std::int64_t n = t_->q - 1;
  std::int64_t l = (static_cast<std::int64_t>(t_->log[a.index]) * (((e % n) + n) % n)) % n;
  return FieldElem{t_->exp[static_cast<std::size_t>(l)]};
}

std::uint32_t Field::log(FieldElem a) const {
  check(a);
  if (a.index == 0) throw Error(ErrorCode::InversionOfZero, "log of 0");
  return t_->log[a.index];
}

FieldElem Field::exp(std::int64_t e) const {
  const std::int64_t n = t_->q - 1;
  return FieldElem{t_->exp[static_cast<std::size_t>(((e % n) + n) % n)]};
}

std::uint32_t Field::multiplicative_order(FieldElem a) const {
  const std::uint32_t n = t_->q - 1;
  return n / std::gcd(n, log(a));
}

bool Field::is_square(FieldElem a) const {
  check(a);
  if (a.index == 0) return true;
  if (t_->p == 2) return true;
  return log(a) % 2 == 0;
}

std::vector<FieldElem> Field::elements() const {
  std::vector<FieldElem> out(t_->q);
  for (std::uint32_t i = 0; i < t_->q; ++i) out[i] = FieldElem{i};
  return out;
}

bool QuadraticClasses::is_residue(std::uint32_t a) const {
  return std::binary_search(residues.begin(), residues.end(), a % p);
}

bool QuadraticClasses::is_nonresidue(std::uint32_t a) const {
  return std::binary_search(nonresidues.begin(), nonresidues.end(), a % p);
}

QuadraticClasses quadratic_classes(std::uint32_t p) {
  if (p == 2 || !is_prime(p)) throw Error(ErrorCode::NotOddPrime, std::to_string(p));
  std::vector<char> square(p, 0);
  for (std::uint64_t a = 1; a < p; ++a) square[(a * a) % p] = 1;
  QuadraticClasses qc;
  qc.p = p;
  for (std::uint32_t a = 1; a < p; ++a) (square[a] ? qc.residues : qc.nonresidues).push_back(a);
  return qc;
}

FieldElem primitive_root(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
  if (p == 2) return FieldElem{1};
  for (std::uint32_t g = 2; g < p; ++g) {
    std::uint64_t x = 1;
    std::uint32_t ord = 0;
    do {
      x = (x * g) % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return FieldElem{g};
  }
  throw Error(ErrorCode::NotPrime, std::to_string(p));
}

}  // namespace projgrp
