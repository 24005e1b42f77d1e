#include "projgrp/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <string>

#include "projgrp/error.hpp"

namespace projgrp {

struct PermGroup::EnumerationCache {
  std::once_flag once;
  std::vector<Permutation> elements;
};

namespace {

Point first_moved_point(const Permutation& g) {
  for (std::size_t i = 0; i < g.degree(); ++i)
    if (g(static_cast<Point>(i)) != i) return static_cast<Point>(i);
  return 0;
}

std::uint64_t checked_product(std::span<const std::size_t> sizes) {
  std::uint64_t total = 1;
  for (std::size_t s : sizes) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(s), &total))
      throw Error(ErrorCode::OrderOverflow, "group order does not fit in 64 bits");
  }
  return total;
}

// Lower bound on the final order that saturates instead of overflowing.
std::uint64_t saturating_product(std::span<const std::size_t> sizes) {
  std::uint64_t total = 1;
  for (std::size_t s : sizes) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(s), &total)) return UINT64_MAX;
  }
  return total;
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, GroupOptions opts)
    : degree_(degree), opts_(opts), cache_(std::make_shared<EnumerationCache>()) {}

PermGroup PermGroup::trivial(std::size_t degree, GroupOptions opts) {
  PermGroup g(degree, opts);
  g.gens_.push_back(Permutation::identity(degree));
  return g;
}

PermGroup PermGroup::build(std::span<const Permutation> gens, GroupOptions opts) {
  return *schreier_sims(gens, std::nullopt, opts);
}

std::optional<PermGroup> PermGroup::build_bounded(std::span<const Permutation> gens, std::uint64_t order_limit,
                                                  GroupOptions opts) {
  return schreier_sims(gens, order_limit, opts);
}

void PermGroup::rebuild_orbit(Level& level) const {
  level.slot.assign(degree_, -1);
  level.orbit.assign(1, level.base);
  level.transversal.assign(1, Permutation::identity(degree_));
  level.transversal_inv.assign(1, Permutation::identity(degree_));
  level.slot[level.base] = 0;
  for (std::size_t j = 0; j < level.orbit.size(); ++j) {
    for (const auto& s : level.gens) {
      Point gamma = s(level.orbit[j]);
      if (level.slot[gamma] >= 0) continue;
      level.slot[gamma] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(gamma);
      Permutation u = s * level.transversal[j];
      level.transversal_inv.push_back(u.inverse());
      level.transversal.push_back(std::move(u));
    }
  }
}

std::pair<Permutation, std::size_t> PermGroup::sift(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& level = levels_[l];
    std::int32_t s = level.slot[g(level.base)];
    if (s < 0) return {std::move(g), l};
    g = level.transversal_inv[static_cast<std::size_t>(s)] * g;
  }
  return {std::move(g), levels_.size()};
}

std::optional<PermGroup> PermGroup::schreier_sims(std::span<const Permutation> gens,
                                                  std::optional<std::uint64_t> limit, GroupOptions opts) {
  if (gens.empty()) throw Error(ErrorCode::InvalidArgument, "at least one generator is required");
  const std::size_t degree = gens.front().degree();
  for (const auto& g : gens)
    if (g.degree() != degree)
      throw Error(ErrorCode::DomainMismatch, "generators act on different numbers of points");

  PermGroup group(degree, opts);
  group.gens_.assign(gens.begin(), gens.end());

  std::vector<Permutation> strong;
  for (const auto& g : gens)
    if (!g.is_identity() && std::find(strong.begin(), strong.end(), g) == strong.end()) strong.push_back(g);
  if (strong.empty()) return group;

  std::vector<Point> base;
  for (const auto& s : strong) {
    bool fixes_base = std::all_of(base.begin(), base.end(), [&](Point b) { return s(b) == b; });
    if (fixes_base) base.push_back(first_moved_point(s));
  }
  auto& levels = group.levels_;
  levels.resize(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    levels[i].base = base[i];
    for (const auto& s : strong) {
      bool fixes = true;
      for (std::size_t j = 0; j < i; ++j) fixes = fixes && s(base[j]) == base[j];
      if (fixes) levels[i].gens.push_back(s);
    }
    group.rebuild_orbit(levels[i]);
  }

  auto exceeds_limit = [&] {
    if (!limit) return false;
    return saturating_product(group.transversal_sizes()) > *limit;
  };
  if (exceeds_limit()) return std::nullopt;

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels.size()) - 1;
  while (i >= 0) {
    bool extended = false;
    const std::size_t li = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < levels[li].orbit.size() && !extended; ++j) {
      for (std::size_t si = 0; si < levels[li].gens.size(); ++si) {
        const Level& level = levels[li];
        const Permutation& s = level.gens[si];
        Point gamma = s(level.orbit[j]);
        Permutation schreier =
            level.transversal_inv[static_cast<std::size_t>(level.slot[gamma])] * s * level.transversal[j];
        if (schreier.is_identity()) continue;
        auto [residue, stop] = group.sift(std::move(schreier), li + 1);
        if (residue.is_identity()) continue;
        if (stop == levels.size()) {
          Level fresh;
          fresh.base = first_moved_point(residue);
          levels.push_back(std::move(fresh));
        }
        for (std::size_t m = li + 1; m <= stop; ++m) {
          levels[m].gens.push_back(residue);
          group.rebuild_orbit(levels[m]);
        }
        if (exceeds_limit()) return std::nullopt;
        i = static_cast<std::ptrdiff_t>(stop);
        extended = true;
        break;
      }
    }
    if (!extended) --i;
  }
  return group;
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> out;
  for (const auto& l : levels_) out.push_back(l.base);
  return out;
}

std::vector<Permutation> PermGroup::strong_generators() const {
  std::vector<Permutation> out;
  for (const auto& l : levels_)
    for (const auto& g : l.gens)
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::vector<std::size_t> PermGroup::transversal_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels_) out.push_back(l.orbit.size());
  return out;
}

std::uint64_t PermGroup::order() const { return checked_product(transversal_sizes()); }

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw Error(ErrorCode::DomainMismatch, "permutation degree differs from group degree");
  auto [residue, stop] = sift(g, 0);
  return stop == levels_.size() && residue.is_identity();
}

std::vector<Point> PermGroup::orbit(Point pt) const {
  if (pt >= degree_) throw Error(ErrorCode::UnknownPoint, std::to_string(pt));
  std::vector<char> seen(degree_, 0);
  std::vector<Point> out{pt};
  seen[pt] = 1;
  for (std::size_t j = 0; j < out.size(); ++j)
    for (const auto& g : gens_) {
      Point y = g(out[j]);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool PermGroup::is_transitive() const { return degree_ == 0 || orbit(0).size() == degree_; }

bool PermGroup::is_doubly_transitive() const {
  if (degree_ < 2 || !is_transitive()) return false;
  return point_stabilizer(0).orbit(1).size() == degree_ - 1;
}

PermGroup PermGroup::point_stabilizer(Point pt) const {
  if (pt >= degree_) throw Error(ErrorCode::UnknownPoint, std::to_string(pt));
  // Schreier generators of the stabilizer from a transversal of the orbit.
  std::vector<std::int32_t> slot(degree_, -1);
  std::vector<Point> orb{pt};
  std::vector<Permutation> trans{Permutation::identity(degree_)};
  slot[pt] = 0;
  for (std::size_t j = 0; j < orb.size(); ++j)
    for (const auto& g : gens_) {
      Point y = g(orb[j]);
      if (slot[y] >= 0) continue;
      slot[y] = static_cast<std::int32_t>(orb.size());
      orb.push_back(y);
      trans.push_back(g * trans[j]);
    }
  std::vector<Permutation> schreier;
  for (std::size_t j = 0; j < orb.size(); ++j)
    for (const auto& g : gens_) {
      Permutation s = trans[static_cast<std::size_t>(slot[g(orb[j])])].inverse() * g * trans[j];
      if (!s.is_identity() && std::find(schreier.begin(), schreier.end(), s) == schreier.end())
        schreier.push_back(std::move(s));
    }
  if (schreier.empty()) return trivial(degree_, opts_);
  return build(schreier, opts_);
}

void PermGroup::ensure_enumerable() const {
  std::uint64_t n = order();
  if (n > opts_.enumeration_cap)
    throw Error(ErrorCode::GroupTooLargeForEnumeration,
                "order " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(opts_.enumeration_cap));
}

const std::vector<Permutation>& PermGroup::elements() const {
  ensure_enumerable();
  std::call_once(cache_->once, [this] {
    std::vector<Permutation> list{Permutation::identity(degree_)};
    for (std::size_t l = levels_.size(); l-- > 0;) {
      std::vector<Permutation> next;
      next.reserve(list.size() * levels_[l].transversal.size());
      for (const auto& u : levels_[l].transversal)
        for (const auto& x : list) next.push_back(u * x);
      list = std::move(next);
    }
    std::sort(list.begin(), list.end());
    cache_->elements = std::move(list);
  });
  return cache_->elements;
}

std::optional<std::size_t> PermGroup::index_of(const Permutation& g) const {
  const auto& elems = elements();
  auto it = std::lower_bound(elems.begin(), elems.end(), g);
  if (it == elems.end() || *it != g) return std::nullopt;
  return static_cast<std::size_t>(it - elems.begin());
}

PermGroup PermGroup::setwise_stabilizer(std::span<const Point> set) const {
  std::vector<char> in_set(degree_, 0);
  for (Point x : set) {
    if (x >= degree_) throw Error(ErrorCode::UnknownPoint, std::to_string(x));
    in_set[x] = 1;
  }
  std::vector<Permutation> kept;
  for (const auto& g : elements()) {
    bool stabilizes = std::all_of(set.begin(), set.end(), [&](Point x) { return in_set[g(x)] != 0; });
    if (stabilizes) kept.push_back(g);
  }
  return subgroup_from_elements(degree_, kept, opts_);
}

PermGroup subgroup_from_elements(std::size_t degree, std::span<const Permutation> elems, GroupOptions opts) {
  PermGroup h = PermGroup::trivial(degree, opts);
  std::vector<Permutation> gens;
  for (const auto& e : elems) {
    if (h.contains(e)) continue;
    gens.push_back(e);
    h = PermGroup::build(gens, opts);
  }
  return h;
}

std::vector<ConjugacyClass> conjugacy_classes(const PermGroup& g) {
  const auto& elems = g.elements();
  std::vector<Permutation> gens, gens_inv;
  for (const auto& s : g.generators()) {
    gens.push_back(s);
    gens_inv.push_back(s.inverse());
  }
  std::vector<char> assigned(elems.size(), 0);
  std::vector<ConjugacyClass> classes;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> members{i};
    assigned[i] = 1;
    for (std::size_t j = 0; j < members.size(); ++j) {
      const Permutation& x = elems[members[j]];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::size_t y = *g.index_of(gens[k] * x * gens_inv[k]);
        if (!assigned[y]) {
          assigned[y] = 1;
          members.push_back(y);
        }
      }
    }
    std::sort(members.begin(), members.end());
    ConjugacyClass cls;
    cls.representative = elems[i];
    cls.size = members.size();
    for (std::size_t m : members) cls.members.push_back(elems[m]);
    classes.push_back(std::move(cls));
  }
  return classes;
}

PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> seeds) {
  std::vector<Permutation> gens;
  for (const auto& s : seeds) {
    if (!g.contains(s)) throw Error(ErrorCode::SeedNotInGroup, s.to_cycle_string());
    if (!s.is_identity()) gens.push_back(s);
  }
  if (gens.empty()) return PermGroup::trivial(g.degree(), g.options());
  PermGroup n = PermGroup::build(gens, g.options());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& x : g.generators()) {
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Permutation c = conjugate(x, gens[k]);
        if (n.contains(c)) continue;
        gens.push_back(std::move(c));
        n = PermGroup::build(gens, g.options());
        changed = true;
      }
    }
  }
  return n;
}

bool is_subgroup(const PermGroup& g, const PermGroup& h) {
  if (g.degree() != h.degree()) return false;
  return std::all_of(h.generators().begin(), h.generators().end(), [&](const Permutation& x) { return g.contains(x); });
}

bool is_normal(const PermGroup& g, const PermGroup& h) {
  if (!is_subgroup(g, h)) return false;
  for (const auto& x : g.generators())
    for (const auto& y : h.generators())
      if (!h.contains(conjugate(x, y))) return false;
  return true;
}

bool is_simple(const PermGroup& g) {
  if (g.order() <= 1) return false;
  const std::uint64_t n = g.order();
  for (const auto& cls : conjugacy_classes(g)) {
    if (cls.representative.is_identity()) continue;
    Permutation seed[] = {cls.representative};
    if (normal_closure(g, seed).order() != n) return false;
  }
  return true;
}

namespace {

std::vector<std::uint32_t> index_set(const PermGroup& g, std::span<const Permutation> members) {
  std::vector<std::uint32_t> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(static_cast<std::uint32_t>(*g.index_of(m)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> sylow_subgroups(const PermGroup& g, std::uint32_t l) {
  if (!is_prime(l)) throw Error(ErrorCode::NotPrime, std::to_string(l));
  const std::uint64_t n = g.order();
  if (n % l != 0)
    throw Error(ErrorCode::PrimeDoesNotDivideOrder, std::to_string(l) + " does not divide " + std::to_string(n));
  std::uint64_t sylow_order = 1;
  for (std::uint64_t m = n; m % l == 0; m /= l) sylow_order *= l;

  const auto& elems = g.elements();
  std::set<std::vector<std::uint32_t>> found;

  if (sylow_order == l) {
    for (const auto& x : elems) {
      if (x.order() != l) continue;
      std::vector<Permutation> powers;
      Permutation y = Permutation::identity(g.degree());
      for (std::uint32_t k = 0; k < l; ++k) {
        powers.push_back(y);
        y = y * x;
      }
      found.insert(index_set(g, powers));
    }
    return {found.begin(), found.end()};
  }

  // Grow an l-subgroup inside its normalizer until it reaches Sylow order.
  const Permutation* start = nullptr;
  for (const auto& x : elems)
    if (x.order() == l) {
      start = &x;
      break;
    }
  std::vector<Permutation> pgens{*start};
  PermGroup p = PermGroup::build(pgens, g.options());
  while (p.order() < sylow_order) {
    bool grown = false;
    for (const auto& y : elems) {
      if (p.contains(y) || !p.contains(power(y, l))) continue;
      bool normalizes = std::all_of(pgens.begin(), pgens.end(), [&](const Permutation& s) { return p.contains(conjugate(y, s)); });
      if (!normalizes) continue;
      pgens.push_back(y);
      p = PermGroup::build(pgens, g.options());
      grown = true;
      break;
    }
    if (!grown) throw Error(ErrorCode::InvalidArgument, "could not extend l-subgroup; chain inconsistent");
  }
  const auto& pel = p.elements();
  for (const auto& x : elems) {
    std::vector<Permutation> conj;
    conj.reserve(pel.size());
    for (const auto& y : pel) conj.push_back(conjugate(x, y));
    found.insert(index_set(g, conj));
  }
  return {found.begin(), found.end()};
}

std::uint64_t sylow_count(const PermGroup& g, std::uint32_t l) { return sylow_subgroups(g, l).size(); }

bool same_elements(const PermGroup& a, const PermGroup& b) {
  return a.degree() == b.degree() && a.order() == b.order() && is_subgroup(a, b);
}

}  // namespace projgrp
