#include "projgrp/psl2.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "projgrp/error.hpp"

namespace projgrp {

namespace {

void check_matrix_order(std::uint32_t q) {
  if (q > kMaxMatrixFieldOrder)
    throw Error(ErrorCode::FieldTooLarge, "q = " + std::to_string(q) + " exceeds " + std::to_string(kMaxMatrixFieldOrder));
}

}  // namespace

SL2::SL2(std::uint32_t q) : field_((check_matrix_order(q), Field::of_order(q))) {
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) {
          Mat2 m{FieldElem{a}, FieldElem{b}, FieldElem{c}, FieldElem{d}};
          if (mat::det(field_, m) == field_.one()) elements_.push_back(m);
        }
}

std::uint32_t SL2::key(const Mat2& m) const {
  const std::uint32_t q = field_.order();
  return m.a.index + q * (m.b.index + q * (m.c.index + q * m.d.index));
}

std::vector<Mat2> SL2::lower_unipotent() const {
  std::vector<Mat2> out;
  for (FieldElem t : field_.elements()) out.push_back({field_.one(), field_.zero(), t, field_.one()});
  return out;
}

std::vector<Mat2> SL2::upper_unipotent() const {
  std::vector<Mat2> out;
  for (FieldElem t : field_.elements()) out.push_back({field_.one(), t, field_.zero(), field_.one()});
  return out;
}

std::vector<Mat2> SL2::generators() const {
  std::vector<Mat2> out = lower_unipotent();
  auto upper = upper_unipotent();
  out.insert(out.end(), upper.begin() + 1, upper.end());
  out.erase(out.begin());
  return out;
}

std::vector<Mat2> SL2::center() const {
  std::vector<Mat2> out;
  for (FieldElem x : field_.elements())
    if (x.index != 0 && field_.mul(x, x) == field_.one()) out.push_back({x, field_.zero(), field_.zero(), x});
  std::sort(out.begin(), out.end());
  return out;
}

MatrixSubgroup MatrixSubgroup::generated_by(const SL2& sl2, std::span<const Mat2> gens) {
  MatrixSubgroup h(&sl2);
  const std::uint32_t q = sl2.q();
  h.member_.assign(static_cast<std::size_t>(q) * q * q * q, 0);
  Mat2 id = sl2.identity();
  h.member_[sl2.key(id)] = 1;
  h.elements_.push_back(id);
  for (std::size_t i = 0; i < h.elements_.size(); ++i) {
    for (const auto& g : gens) {
      Mat2 y = sl2.mul(h.elements_[i], g);
      auto k = sl2.key(y);
      if (h.member_[k]) continue;
      h.member_[k] = 1;
      h.elements_.push_back(y);
    }
  }
  std::sort(h.elements_.begin(), h.elements_.end());
  return h;
}

MatrixSubgroup MatrixSubgroup::normal_closure(const SL2& sl2, const Mat2& seed) {
  // Conjugacy class of the seed, then the subgroup it generates. Class members
  // already inside the running subgroup are skipped as generators.
  std::vector<Mat2> cls{seed};
  std::set<Mat2> seen{seed};
  const auto gens = sl2.generators();
  for (std::size_t i = 0; i < cls.size(); ++i)
    for (const auto& g : gens) {
      Mat2 y = sl2.conjugate(g, cls[i]);
      if (seen.insert(y).second) cls.push_back(y);
    }
  std::vector<Mat2> chosen;
  MatrixSubgroup h = generated_by(sl2, chosen);
  for (const auto& x : cls) {
    if (h.contains(x)) continue;
    chosen.push_back(x);
    h = generated_by(sl2, chosen);
  }
  return h;
}

bool MatrixSubgroup::contains(const Mat2& m) const { return member_[sl2_->key(m)] != 0; }

bool MatrixSubgroup::is_normal() const {
  for (const auto& g : sl2_->generators())
    for (const auto& x : elements_)
      if (!contains(sl2_->conjugate(g, x))) return false;
  return true;
}

bool MatrixSubgroup::all_scalar() const {
  return std::all_of(elements_.begin(), elements_.end(), [](const Mat2& m) { return mat::is_scalar(m); });
}

std::vector<std::vector<Mat2>> matrix_conjugacy_classes(const SL2& sl2) {
  const auto gens = sl2.generators();
  std::set<Mat2> assigned;
  std::vector<std::vector<Mat2>> classes;
  for (const auto& x : sl2.elements()) {
    if (assigned.count(x)) continue;
    std::vector<Mat2> cls{x};
    assigned.insert(x);
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (const auto& g : gens) {
        Mat2 y = sl2.conjugate(g, cls[i]);
        if (assigned.insert(y).second) cls.push_back(y);
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::uint64_t psl2_order(std::uint32_t q) {
  const std::uint64_t qq = q;
  return (qq * qq * qq - qq) / std::gcd<std::uint64_t>(2, qq - 1);
}

SL2Group sl2_group(std::uint32_t q, GroupOptions opts) {
  SL2 sl2(q);
  ProjLine line(sl2.field());
  std::vector<Permutation> gens;
  for (const auto& m : sl2.generators()) gens.push_back(moebius_perm(line, m));
  return SL2Group{sl2.elements(), PermGroup::build(gens, opts)};
}

PermGroup psl2_perm_group(std::uint32_t q, GroupOptions opts) {
  if (q > kMaxPermFieldOrder)
    throw Error(ErrorCode::FieldTooLarge, "q = " + std::to_string(q) + " exceeds " + std::to_string(kMaxPermFieldOrder));
  Field f = Field::of_order(q);
  ProjLine line(f);
  if (f.is_prime_field()) return PermGroup::build({translation(line, f.one()), negative_inversion(line)}, opts);
  std::vector<Permutation> gens;
  for (FieldElem t : f.elements()) {
    if (t.index == 0) continue;
    gens.push_back(moebius_perm(line, Mat2{f.one(), t, f.zero(), f.one()}));
    gens.push_back(moebius_perm(line, Mat2{f.one(), f.zero(), t, f.one()}));
  }
  return PermGroup::build(gens, opts);
}

Mat2 upper_right_witness(const SL2& sl2, const MatrixSubgroup& n) {
  if (!n.is_normal()) throw Error(ErrorCode::NotNormal, "subgroup is not normal in SL2");
  for (const auto& m : n.elements())
    if (m.b.index != 0) return m;
  // Every element has b = 0. Conjugating a non-scalar element by (0 -1; 1 0)
  // (if it has c != 0) or by (1 1; 0 1) (if diagonal) yields b != 0.
  const Field& f = sl2.field();
  for (const auto& m : n.elements()) {
    if (mat::is_scalar(m)) continue;
    Mat2 g = m.c.index != 0 ? Mat2{f.zero(), f.neg(f.one()), f.one(), f.zero()} : Mat2{f.one(), f.one(), f.zero(), f.one()};
    Mat2 w = sl2.conjugate(g, m);
    if (w.b.index != 0 && n.contains(w)) return w;
  }
  throw Error(ErrorCode::OnlyScalars, "subgroup consists of scalar matrices");
}

LowerUnipotentFactorization factor_through_lower_unipotent(const SL2& sl2, const Mat2& target, const MatrixSubgroup& n) {
  for (const auto& u : sl2.lower_unipotent()) {
    Mat2 b = sl2.mul(sl2.inverse(u), target);
    if (n.contains(b)) return {u, b};
  }
  throw Error(ErrorCode::DecompositionFails, "no factorization of " + mat::to_string(target));
}

namespace {

bool is_lower_unipotent(const Field& f, const Mat2& m) {
  return m.a == f.one() && m.d == f.one() && m.b.index == 0;
}

NormalSubgroupCertificate certify_closure(const SL2& sl2, const Mat2& seed) {
  const Field& f = sl2.field();
  NormalSubgroupCertificate e;
  e.seed = seed;
  MatrixSubgroup n = MatrixSubgroup::normal_closure(sl2, seed);
  e.subgroup_order = n.order();
  e.upper_right = upper_right_witness(sl2, n);

  // Any a outside {0, 1, -1}; q > 3 guarantees one.
  for (FieldElem x : f.elements())
    if (x.index != 0 && x != f.one() && x != f.neg(f.one())) {
      e.a = x;
      break;
    }
  e.d = f.inv(e.a);
  Mat2 diag{e.a, f.zero(), f.zero(), e.d};
  auto fac = factor_through_lower_unipotent(sl2, diag, n);
  e.factor_u = fac.u;
  e.factor_b = fac.b;
  e.r = f.neg(fac.u.c);

  const Mat2 b_inv = sl2.inverse(e.factor_b);
  std::set<Mat2> swept;
  bool all_in_n = true;
  for (const auto& a : sl2.lower_unipotent()) {
    Mat2 c = sl2.mul(sl2.conjugate(a, e.factor_b), b_inv);
    e.commutators.push_back({a, c});
    if (is_lower_unipotent(f, c)) swept.insert(c);
    all_in_n = all_in_n && n.contains(c);
  }
  const auto p = sl2.lower_unipotent();
  e.commutators_cover_p = swept == std::set<Mat2>(p.begin(), p.end());
  e.contains_p = e.commutators_cover_p && all_in_n &&
                 std::all_of(p.begin(), p.end(), [&](const Mat2& m) { return n.contains(m); });
  const Mat2 s{f.zero(), f.neg(f.one()), f.one(), f.zero()};
  e.contains_p_prime = true;
  for (const auto& m : p) {
    Mat2 t = sl2.conjugate(s, m);
    e.contains_p_prime = e.contains_p_prime && t.a == f.one() && t.d == f.one() && t.c.index == 0 && n.contains(t);
  }
  e.is_everything = e.contains_p && e.contains_p_prime && n.order() == sl2.elements().size();
  return e;
}

}  // namespace

SimplicityCertificate certify_simplicity(std::uint32_t q) {
  if (q <= 3) throw Error(ErrorCode::FieldTooSmall, "q = " + std::to_string(q) + " has no element outside {0, 1, -1}");
  SL2 sl2(q);
  SimplicityCertificate cert;
  cert.q = q;
  cert.verdict = true;
  for (const auto& cls : matrix_conjugacy_classes(sl2)) {
    const Mat2& rep = cls.front();
    if (mat::is_scalar(rep)) continue;
    cert.entries.push_back(certify_closure(sl2, rep));
    cert.verdict = cert.verdict && cert.entries.back().is_everything;
  }
  return cert;
}

bool verify_certificate(const SimplicityCertificate& cert) {
  if (cert.q <= 3 || cert.q > kMaxMatrixFieldOrder) return false;
  SL2 sl2(cert.q);
  const Field& f = sl2.field();
  bool ok = true;
  for (const auto& e : cert.entries) {
    MatrixSubgroup n = MatrixSubgroup::normal_closure(sl2, e.seed);
    ok = ok && !mat::is_scalar(e.seed) && n.order() == e.subgroup_order && n.is_normal();
    ok = ok && e.upper_right.b.index != 0 && n.contains(e.upper_right);
    ok = ok && e.a.index != 0 && e.a != f.one() && e.a != f.neg(f.one()) && f.mul(e.a, e.d) == f.one();
    Mat2 diag{e.a, f.zero(), f.zero(), e.d};
    ok = ok && e.factor_u == Mat2{f.one(), f.zero(), f.neg(e.r), f.one()};
    ok = ok && sl2.mul(e.factor_u, e.factor_b) == diag;
    ok = ok && e.factor_b == Mat2{e.a, f.zero(), f.mul(e.r, e.a), e.d} && n.contains(e.factor_b);
    std::set<Mat2> swept;
    for (const auto& w : e.commutators) {
      ok = ok && is_lower_unipotent(f, w.a);
      ok = ok && w.commutator == sl2.mul(sl2.conjugate(w.a, e.factor_b), sl2.inverse(e.factor_b));
      ok = ok && n.contains(w.commutator);
      swept.insert(w.commutator);
    }
    const auto p = sl2.lower_unipotent();
    ok = ok && e.commutators.size() == p.size() && swept == std::set<Mat2>(p.begin(), p.end());
    ok = ok && e.commutators_cover_p && e.contains_p && e.contains_p_prime;
    ok = ok && e.is_everything == (n.order() == sl2.elements().size());
    ok = ok && e.is_everything;
  }
  return ok && cert.verdict && !cert.entries.empty();
}

}  // namespace projgrp
