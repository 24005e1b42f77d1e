#include "projgrp/projline.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "projgrp/error.hpp"

namespace projgrp {

ProjLine::ProjLine(Field field) : field_(std::move(field)) {
  if (field_.order() + 1 > 0xffff)
    throw Error(ErrorCode::InvalidArgument, "projective line too large for 16-bit points");
}

FieldElem ProjLine::elem(Point x) const {
  if (x >= infinity()) throw Error(ErrorCode::UnknownPoint, "point " + point_token(x, size()) + " is not finite");
  return FieldElem{x};
}

std::string point_token(Point x, std::size_t degree) {
  if (degree > 0 && x == degree - 1) return "inf";
  return std::to_string(x);
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<char> seen(images.size(), 0);
  for (Point x : images) {
    if (x >= images.size() || seen[x])
      throw Error(ErrorCode::NotABijection, "image " + std::to_string(x) + " repeated or out of range");
    seen[x] = 1;
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv));
}

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    std::vector<Point> cycle;
    for (Point x = static_cast<Point>(start); !seen[x]; x = images_[x]) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<Point> Permutation::fixed_points() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] == i) out.push_back(static_cast<Point>(i));
  return out;
}

std::uint64_t Permutation::order() const {
  std::uint64_t l = 1;
  for (const auto& c : cycles()) l = std::lcm(l, static_cast<std::uint64_t>(c.size()));
  return l;
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += point_token(c[i], degree());
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw Error(ErrorCode::DomainMismatch,
                "degrees " + std::to_string(a.degree()) + " and " + std::to_string(b.degree()));
  std::vector<Point> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = a.images_[b.images_[i]];
  return Permutation(std::move(images));
}

Permutation conjugate(const Permutation& g, const Permutation& a) { return g * a * g.inverse(); }

Permutation power(const Permutation& a, std::int64_t e) {
  Permutation base = e < 0 ? a.inverse() : a;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Permutation result = Permutation::identity(a.degree());
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  auto im = p.images();
  return static_cast<std::size_t>(
      fnv1a({reinterpret_cast<const std::uint8_t*>(im.data()), im.size() * sizeof(Point)}));
}

Permutation perm_from_images(const ProjLine& line, std::vector<Point> images) {
  if (images.size() != line.size())
    throw Error(ErrorCode::WrongLength,
                "expected " + std::to_string(line.size()) + " images, got " + std::to_string(images.size()));
  return Permutation::from_images(std::move(images));
}

Permutation perm_from_cycles(const ProjLine& line, std::string_view text) {
  return perm_from_cycles(line.size(), text);
}

Permutation perm_from_cycles(std::size_t degree, std::string_view text) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<char> used(degree, 0);

  auto parse_token = [&](std::string_view tok) -> Point {
    if (tok == "inf") return static_cast<Point>(degree - 1);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw Error(ErrorCode::ParseError, "bad token '" + std::string(tok) + "'");
    if (tok.size() > 6) throw Error(ErrorCode::UnknownPoint, std::string(tok));
    unsigned long v = std::stoul(std::string(tok));
    if (v + 1 >= degree) throw Error(ErrorCode::UnknownPoint, std::string(tok));
    return static_cast<Point>(v);
  };

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw Error(ErrorCode::ParseError, "expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<Point> cycle;
    while (true) {
      skip_ws();
      if (i == text.size()) throw Error(ErrorCode::ParseError, "unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ')' && text[j] != '(') ++j;
      if (j == i) throw Error(ErrorCode::ParseError, "unexpected '(' inside cycle");
      cycle.push_back(parse_token(text.substr(i, j - i)));
      i = j;
    }
    for (Point x : cycle) {
      if (used[x]) throw Error(ErrorCode::OverlappingCycles, "point " + point_token(x, degree) + " appears twice");
      used[x] = 1;
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation::from_images(std::move(images));
}

namespace mat {

Mat2 identity(const Field& f) { return {f.one(), f.zero(), f.zero(), f.one()}; }

Mat2 mul(const Field& f, const Mat2& x, const Mat2& y) {
  return {f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
          f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

FieldElem det(const Field& f, const Mat2& m) { return f.sub(f.mul(m.a, m.d), f.mul(m.b, m.c)); }

Mat2 inverse_unimodular(const Field& f, const Mat2& m) {
  if (det(f, m) != f.one()) throw Error(ErrorCode::NonUnitDeterminant, to_string(m));
  return {m.d, f.neg(m.b), f.neg(m.c), m.a};
}

Mat2 neg(const Field& f, const Mat2& m) { return {f.neg(m.a), f.neg(m.b), f.neg(m.c), f.neg(m.d)}; }

bool is_scalar(const Mat2& m) { return m.b.index == 0 && m.c.index == 0 && m.a == m.d; }

std::string to_string(const Mat2& m) {
  std::ostringstream os;
  os << "(" << m.a.index << " " << m.b.index << "; " << m.c.index << " " << m.d.index << ")";
  return os.str();
}

}  // namespace mat

MoebiusMap::MoebiusMap(const Field& field, FieldElem a, FieldElem b, FieldElem c, FieldElem d)
    : m_{field.elem(a.index), field.elem(b.index), field.elem(c.index), field.elem(d.index)} {
  if (mat::det(field, m_) != field.one())
    throw Error(ErrorCode::NonUnitDeterminant, "ad - bc != 1 for " + mat::to_string(m_));
}

MoebiusMap MoebiusMap::from_ints(const Field& field, std::int64_t a, std::int64_t b, std::int64_t c,
                                 std::int64_t d) {
  return MoebiusMap(field, field.from_int(a), field.from_int(b), field.from_int(c), field.from_int(d));
}

Permutation moebius_perm(const ProjLine& line, const MoebiusMap& m) { return moebius_perm(line, m.matrix()); }

Permutation moebius_perm(const ProjLine& line, const Mat2& m) {
  const Field& f = line.field();
  if (mat::det(f, m) != f.one()) throw Error(ErrorCode::NonUnitDeterminant, mat::to_string(m));
  const Point inf = line.infinity();
  std::vector<Point> images(line.size());
  for (Point x = 0; x < inf; ++x) {
    FieldElem z{x};
    FieldElem den = f.add(f.mul(m.c, z), m.d);
    images[x] = den.index == 0 ? inf : line.point(f.div(f.add(f.mul(m.a, z), m.b), den));
  }
  images[inf] = m.c.index == 0 ? inf : line.point(f.div(m.a, m.c));
  return Permutation::from_images(std::move(images));
}

Permutation translation(const ProjLine& line, FieldElem a) {
  const Field& f = line.field();
  std::vector<Point> images(line.size());
  for (Point x = 0; x < line.infinity(); ++x) images[x] = line.point(f.add(FieldElem{x}, a));
  images[line.infinity()] = line.infinity();
  return Permutation::from_images(std::move(images));
}

Permutation scaling(const ProjLine& line, FieldElem a) {
  const Field& f = line.field();
  if (f.elem(a.index).index == 0) throw Error(ErrorCode::ZeroScaling, "scaling by 0");
  std::vector<Point> images(line.size());
  for (Point x = 0; x < line.infinity(); ++x) images[x] = line.point(f.mul(FieldElem{x}, a));
  images[line.infinity()] = line.infinity();
  return Permutation::from_images(std::move(images));
}

Permutation negative_inversion(const ProjLine& line) {
  const Field& f = line.field();
  return moebius_perm(line, Mat2{f.zero(), f.neg(f.one()), f.one(), f.zero()});
}

}  // namespace projgrp
