#pragma once

// Permutation groups on a few dozen points, held as a stabilizer chain built
// by deterministic Schreier-Sims. Base points are chosen as the smallest
// point moved by the generator that forces a new level.
//
// Anything that needs the full element list (conjugacy classes, setwise
// stabilizers, simplicity, Sylow counts) refuses to run above the group's
// enumeration cap instead of falling back to something slower.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "projgrp/projline.hpp"

namespace projgrp {

inline constexpr std::size_t kDefaultEnumerationCap = 20000;

struct GroupOptions {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

class PermGroup {
 public:
  /// Throws DomainMismatch on mixed degrees and InvalidArgument on an empty list.
  static PermGroup build(std::span<const Permutation> gens, GroupOptions opts = {});
  static PermGroup build(std::initializer_list<Permutation> gens, GroupOptions opts = {}) {
    return build(std::span<const Permutation>(gens.begin(), gens.size()), opts);
  }
  /// As build(), but gives up (nullopt) once the order provably exceeds `order_limit`.
  static std::optional<PermGroup> build_bounded(std::span<const Permutation> gens, std::uint64_t order_limit,
                                                GroupOptions opts = {});
  static PermGroup trivial(std::size_t degree, GroupOptions opts = {});

  std::size_t degree() const { return degree_; }
  std::size_t enumeration_cap() const { return opts_.enumeration_cap; }
  GroupOptions options() const { return opts_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  std::vector<Point> base() const;
  /// Strong generators, deduplicated, in insertion order.
  std::vector<Permutation> strong_generators() const;
  /// Orbit sizes along the chain; their product is the order.
  std::vector<std::size_t> transversal_sizes() const;

  std::uint64_t order() const;
  bool contains(const Permutation& g) const;
  bool is_trivial() const { return levels_.empty(); }

  /// Sorted orbit of a point under the generators.
  std::vector<Point> orbit(Point pt) const;
  bool is_transitive() const;
  bool is_doubly_transitive() const;

  PermGroup point_stabilizer(Point pt) const;
  /// Filters the element list; needs order <= enumeration cap.
  PermGroup setwise_stabilizer(std::span<const Point> set) const;

  /// Every element once, sorted lexicographically by image sequence.
  const std::vector<Permutation>& elements() const;
  /// Position of g in elements(); nullopt if g is not in the group.
  std::optional<std::size_t> index_of(const Permutation& g) const;

 private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> slot;  // point -> index into orbit, or -1
    std::vector<Point> orbit;
    std::vector<Permutation> transversal;  // transversal[i](base) == orbit[i]
    std::vector<Permutation> transversal_inv;
  };
  struct EnumerationCache;

  PermGroup(std::size_t degree, GroupOptions opts);
  static std::optional<PermGroup> schreier_sims(std::span<const Permutation> gens, std::optional<std::uint64_t> limit,
                                                GroupOptions opts);
  void rebuild_orbit(Level& level) const;
  // Residue of g after sifting from `from`, with the level where it stopped.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const;
  void ensure_enumerable() const;

  std::size_t degree_ = 0;
  GroupOptions opts_;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
  std::shared_ptr<EnumerationCache> cache_;
};

/// Smallest subgroup containing the given elements, with a small generating set
/// picked greedily from them.
PermGroup subgroup_from_elements(std::size_t degree, std::span<const Permutation> elems, GroupOptions opts = {});

struct ConjugacyClass {
  Permutation representative;  // smallest member
  std::size_t size = 0;
  std::vector<Permutation> members;  // sorted
};

std::vector<ConjugacyClass> conjugacy_classes(const PermGroup& g);

/// Smallest normal subgroup of g containing the seeds. Throws SeedNotInGroup.
PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> seeds);
bool is_subgroup(const PermGroup& g, const PermGroup& h);
bool is_normal(const PermGroup& g, const PermGroup& h);
bool is_simple(const PermGroup& g);

/// Element-index sets (into g.elements()) of the Sylow l-subgroups. When l
/// divides |g| exactly once these are the cyclic subgroups generated by
/// elements of order l; otherwise the conjugates of one Sylow subgroup.
std::vector<std::vector<std::uint32_t>> sylow_subgroups(const PermGroup& g, std::uint32_t l);
std::uint64_t sylow_count(const PermGroup& g, std::uint32_t l);

/// True when both groups have the same element set.
bool same_elements(const PermGroup& a, const PermGroup& b);

}  // namespace projgrp
