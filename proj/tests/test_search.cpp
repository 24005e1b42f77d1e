#include <fstream>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "projgrp/error.hpp"
#include "projgrp/search.hpp"
#include "projgrp/verifier.hpp"

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

oracle::Perm plain(const Permutation& g) { return {g.images().begin(), g.images().end()}; }

std::set<oracle::Perm> plain_set(const std::vector<Permutation>& elems) {
  std::set<oracle::Perm> out;
  for (const auto& e : elems) out.insert(plain(e));
  return out;
}

std::set<oracle::Perm> oracle_psl2(long p) {
  return oracle::closure({oracle::moebius(1, 1, 0, 1, p), oracle::moebius(0, p - 1, 1, 0, p)});
}

bool is_square(long z, long p) {
  for (long x = 1; x < p; ++x)
    if (oracle::mod(x * x, p) == z) return true;
  return false;
}

long power(long z, long n, long p) {
  long r = 1;
  for (long i = 0; i < n; ++i) r = oracle::mod(r * z, p);
  return r;
}

Json golden(std::uint32_t p) {
  std::ifstream in(std::string(PROJGRP_GOLDEN_DIR) + "/search_p" + std::to_string(p) + ".json");
  REQUIRE(in.good());
  return Json::parse(in);
}

}  // namespace

TEST_CASE("full search finds exactly the predicted groups") {
  const auto five = full_search(5);
  CHECK(five.candidates_examined == 24);
  CHECK(five.non_bijective_candidates == 0);
  REQUIRE(five.groups.size() == 1);
  CHECK(five.groups[0].contains_negative_inversion);
  CHECK(plain_set(five.groups[0].elements) == oracle_psl2(5));
  CHECK(five.matches_prediction());

  const auto seven = full_search(7);
  CHECK(seven.candidates_examined == 720);
  REQUIRE(seven.groups.size() == 3);
  std::set<std::set<oracle::Perm>> found;
  for (const auto& g : seven.groups) found.insert(plain_set(g.elements));
  const std::set<std::set<oracle::Perm>> expected{oracle_psl2(7), plain_set(build_exceptional(3).elements()),
                                                  plain_set(build_exceptional(5).elements())};
  CHECK(found == expected);
  for (const auto& g : seven.groups) {
    CHECK(g.all_checks_pass);
    CHECK(g.verdict == (g.contains_negative_inversion ? Verdict::kContainsNegativeInversion : Verdict::kExceptional));
  }
  CHECK(seven.matches_prediction());
}

TEST_CASE("every swap of a found group is found, and only once per group") {
  // A group has exactly (p - 1)/2 elements swapping 0 and ∞, each a candidate of the full search.
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto s = full_search(p);
    for (const auto& g : s.groups) CHECK(g.producing_candidates == (p - 1) / 2);
    CHECK(s.target_order_hits == s.groups.size() * (p - 1) / 2);
  }
}

TEST_CASE("constrained search agrees with full search") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto full = full_search(p);
    const auto con = constrained_search(p);
    CHECK(same_groups(full, con));
    CHECK(con.mode == SearchMode::kConstrained);
  }
}

TEST_CASE("constrained candidate counts match direct enumeration") {
  for (long p : {5L, 7L, 11L, 13L}) {
    std::vector<std::set<oracle::Perm>> groups{oracle_psl2(p)};
    if (p == 7) {
      groups.push_back(plain_set(build_exceptional(3).elements()));
      groups.push_back(plain_set(build_exceptional(5).elements()));
    }
    std::uint64_t examined = 0, non_bijective = 0, hits = 0;
    for (long n = 1; n <= p - 2; n += 2) {
      if ((n * n - 1) % ((p - 1) / 2) != 0) continue;
      for (long c = 1; c < p; ++c)
        for (long d = 1; d < p; ++d) {
          ++examined;
          oracle::Perm lambda(static_cast<std::size_t>(p + 1));
          lambda[0] = static_cast<int>(p);
          lambda[static_cast<std::size_t>(p)] = 0;
          std::set<int> image;
          for (long z = 1; z < p; ++z) {
            const long v = oracle::mod((is_square(z, p) ? c : d) * power(z, n, p), p);
            lambda[static_cast<std::size_t>(z)] = static_cast<int>(v);
            image.insert(static_cast<int>(v));
          }
          if (image.size() != static_cast<std::size_t>(p - 1)) {
            ++non_bijective;
            continue;
          }
          for (const auto& g : groups) hits += g.count(lambda);
        }
    }
    const auto s = constrained_search(static_cast<std::uint32_t>(p));
    CHECK(s.candidates_examined == examined);
    CHECK(s.non_bijective_candidates == non_bijective);
    CHECK(s.target_order_hits == hits);
  }
}

TEST_CASE("constrained search up to 31 finds only PSL2") {
  for (std::uint32_t p : {11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    CAPTURE(p);
    const auto s = constrained_search(p);
    REQUIRE(s.groups.size() == 1);
    const auto& g = s.groups[0];
    CHECK(g.order == (std::uint64_t{p} * p * p - p) / 2);
    CHECK(g.hypotheses);
    CHECK(g.all_checks_pass);
    CHECK(g.contains_negative_inversion);
    CHECK(g.equals_two_generator_group);
    CHECK(g.verdict == Verdict::kContainsNegativeInversion);
    CHECK(g.order_without_swap == std::uint64_t{p} * (p - 1) / 2);
    CHECK(s.matches_prediction());
  }
  CHECK(plain_set(constrained_search(11).groups[0].elements) == oracle_psl2(11));
}

TEST_CASE("found groups contain the translations and drop to the point stabilizer without the swap") {
  for (std::uint32_t p : {5u, 7u, 13u}) {
    const auto s = constrained_search(p);
    const auto line = ProjLine::over_prime(p);
    const oracle::Perm t = plain(translation(line, FieldElem{1}));
    for (const auto& g : s.groups) {
      CHECK(plain_set(g.elements).count(t) == 1);
      CHECK(g.order_without_swap * (p + 1) == g.order);
      std::vector<oracle::Perm> without{plain(g.generators[0]), plain(g.generators[1])};
      CHECK(oracle::closure(without).size() == g.order_without_swap);
    }
  }
}

TEST_CASE("outcomes are deterministic and match the golden files") {
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    CAPTURE(p);
    const Json j = to_json(constrained_search(p));
    CHECK(j == to_json(constrained_search(p)));
    CHECK_FALSE(j.contains("seconds"));
    CHECK(j == golden(p));
  }
}

TEST_CASE("text output") {
  const std::string t = to_text(full_search(7));
  CHECK(t.find("distinct groups: 3") != std::string::npos);
  CHECK(t.find("matches prediction: yes") != std::string::npos);
  CHECK(t.find("wall clock") != std::string::npos);
}

TEST_CASE("search errors") {
  CHECK(code_of([] { constrained_search(9); }) == ErrorCode::NotOddPrime);
  CHECK(code_of([] { constrained_search(2); }) == ErrorCode::NotOddPrime);
  CHECK(code_of([] { constrained_search(37); }) == ErrorCode::PTooLarge);
  CHECK(code_of([] { full_search(11); }) == ErrorCode::PTooLarge);
  CHECK(code_of([] { full_search(1); }) == ErrorCode::NotOddPrime);
}
