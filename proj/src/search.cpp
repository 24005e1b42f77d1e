#include "projgrp/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "projgrp/error.hpp"
#include "projgrp/verifier.hpp"

namespace projgrp {

namespace {

constexpr std::uint32_t kMaxConstrainedPrime = 31;
constexpr std::uint32_t kMaxFullPrime = 7;

void check_prime(std::uint32_t p, std::uint32_t limit) {
  if (!is_prime(p) || p == 2) throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
  if (p > limit) throw Error(ErrorCode::PTooLarge, "p = " + std::to_string(p) + " exceeds " + std::to_string(limit));
}

std::uint64_t element_hash(const std::vector<Permutation>& elems) {
  std::vector<std::uint8_t> bytes;
  for (const auto& e : elems)
    for (Point x : e.images()) {
      bytes.push_back(static_cast<std::uint8_t>(x & 0xff));
      bytes.push_back(static_cast<std::uint8_t>(x >> 8));
    }
  return fnv1a(bytes);
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class Searcher {
 public:
  Searcher(std::uint32_t p, SearchMode mode) : line_(ProjLine::over_prime(p)), start_(std::chrono::steady_clock::now()) {
    out_.p = p;
    out_.mode = mode;
    out_.target_order = (std::uint64_t{p} * p * p - p) / 2;
    const Field& f = line_.field();
    const FieldElem g = primitive_root(p);
    base_ = {translation(line_, f.one()), scaling(line_, f.mul(g, g))};
  }

  // Units images: images[z] for z = 1 .. p-1 (index 0 unused).
  void offer(const std::vector<Point>& unit_images) {
    ++out_.candidates_examined;
    const std::uint32_t p = out_.p;
    std::vector<Point> im(p + 1);
    im[0] = static_cast<Point>(p);
    im[p] = 0;
    std::vector<char> seen(p + 1, 0);
    for (std::uint32_t z = 1; z < p; ++z) {
      Point y = unit_images[z];
      if (y == 0 || y >= p || seen[y]) {
        ++out_.non_bijective_candidates;
        return;
      }
      seen[y] = 1;
      im[z] = y;
    }
    Permutation lambda = Permutation::from_images(im);
    std::vector<Permutation> gens = base_;
    gens.push_back(lambda);
    auto g = PermGroup::build_bounded(gens, out_.target_order);
    if (!g || g->order() != out_.target_order) return;
    ++out_.target_order_hits;
    const auto& elems = g->elements();
    const std::uint64_t h = element_hash(elems);
    for (auto i : by_hash_[h])
      if (found_[i].elements == elems) {
        ++found_[i].producing_candidates;
        return;
      }
    by_hash_[h].push_back(found_.size());
    FoundGroup fg;
    fg.hash = h;
    fg.order = g->order();
    fg.first_swap = lambda;
    fg.generators = gens;
    fg.producing_candidates = 1;
    fg.elements = elems;
    found_.push_back(std::move(fg));
    groups_.push_back(std::move(*g));
  }

  SearchOutcome finish() {
    const std::uint32_t p = out_.p;
    const PermGroup without = PermGroup::build(base_);
    const Permutation neg_inv = negative_inversion(line_);
    const PermGroup two_gen = PermGroup::build({translation(line_, line_.field().one()), neg_inv});
    for (std::size_t i = 0; i < found_.size(); ++i) {
      FoundGroup& fg = found_[i];
      const PermGroup& g = groups_[i];
      const VerificationReport r = run_classification(g, p);
      fg.verdict = r.verdict;
      fg.all_checks_pass = r.all_passed();
      fg.hypotheses = r.hypotheses_passed();
      fg.contains_negative_inversion = g.contains(neg_inv);
      fg.equals_two_generator_group = same_elements(g, two_gen);
      fg.order_without_swap = without.order();
    }
    std::vector<std::size_t> idx(found_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return found_[a].elements < found_[b].elements; });
    for (auto i : idx) out_.groups.push_back(std::move(found_[i]));
    out_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(out_);
  }

 private:
  ProjLine line_;
  std::chrono::steady_clock::time_point start_;
  SearchOutcome out_;
  std::vector<Permutation> base_;
  std::vector<FoundGroup> found_;
  std::vector<PermGroup> groups_;
  std::map<std::uint64_t, std::vector<std::size_t>> by_hash_;
};

}  // namespace

std::string_view to_string(SearchMode m) { return m == SearchMode::kFull ? "full" : "constrained"; }

bool SearchOutcome::matches_prediction() const {
  for (const auto& g : groups)
    if (!g.hypotheses || !g.all_checks_pass || g.order != target_order || g.order_without_swap * (p + 1) != target_order)
      return false;
  if (p != 7) {
    return groups.size() == 1 && groups.front().contains_negative_inversion && groups.front().equals_two_generator_group &&
           groups.front().verdict == Verdict::kContainsNegativeInversion;
  }
  if (groups.size() != 3) return false;
  std::size_t a = 0, b = 0;
  for (const auto& g : groups) {
    a += g.verdict == Verdict::kContainsNegativeInversion && g.equals_two_generator_group;
    b += g.verdict == Verdict::kExceptional && !g.contains_negative_inversion;
  }
  return a == 1 && b == 2;
}

SearchOutcome constrained_search(std::uint32_t p) {
  check_prime(p, kMaxConstrainedPrime);
  Searcher s(p, SearchMode::kConstrained);
  const Field f = Field::prime(p);
  const auto qc = quadratic_classes(p);
  const std::int64_t half = (p - 1) / 2;
  std::vector<Point> im(p);
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(p) - 2; n += 2) {
    if ((n * n - 1) % half != 0) continue;
    for (std::uint32_t c = 1; c < p; ++c)
      for (std::uint32_t d = 1; d < p; ++d) {
        for (std::uint32_t z = 1; z < p; ++z) {
          const FieldElem zn = f.pow(FieldElem{z}, n);
          const FieldElem k{qc.is_residue(z) ? c : d};
          im[z] = static_cast<Point>(f.mul(k, zn).index);
        }
        s.offer(im);
      }
  }
  return s.finish();
}

SearchOutcome full_search(std::uint32_t p) {
  check_prime(p, kMaxFullPrime);
  Searcher s(p, SearchMode::kFull);
  std::vector<Point> perm(p - 1);
  std::iota(perm.begin(), perm.end(), Point{1});
  std::vector<Point> im(p);
  do {
    std::copy(perm.begin(), perm.end(), im.begin() + 1);
    s.offer(im);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s.finish();
}

bool same_groups(const SearchOutcome& a, const SearchOutcome& b) {
  if (a.p != b.p || a.groups.size() != b.groups.size()) return false;
  for (std::size_t i = 0; i < a.groups.size(); ++i)
    if (a.groups[i].hash != b.groups[i].hash || a.groups[i].elements != b.groups[i].elements) return false;
  return true;
}

Json to_json(const SearchOutcome& s) {
  Json j;
  j["p"] = s.p;
  j["mode"] = std::string(to_string(s.mode));
  j["target_order"] = s.target_order;
  j["candidates_examined"] = s.candidates_examined;
  j["non_bijective_candidates"] = s.non_bijective_candidates;
  j["target_order_hits"] = s.target_order_hits;
  Json groups = Json::array();
  for (const auto& g : s.groups) {
    Json x;
    x["hash"] = hex(g.hash);
    x["order"] = g.order;
    x["verdict"] = std::string(to_string(g.verdict));
    x["all_checks_pass"] = g.all_checks_pass;
    x["hypotheses"] = g.hypotheses;
    x["contains_negative_inversion"] = g.contains_negative_inversion;
    x["equals_two_generator_group"] = g.equals_two_generator_group;
    x["order_without_swap"] = g.order_without_swap;
    x["swap"] = g.first_swap.to_cycle_string();
    Json gens = Json::array();
    for (const auto& p : g.generators) gens.push_back(p.to_cycle_string());
    x["generators"] = gens;
    x["producing_candidates"] = g.producing_candidates;
    groups.push_back(x);
  }
  j["groups"] = groups;
  j["group_count"] = s.groups.size();
  j["matches_prediction"] = s.matches_prediction();
  return j;
}

std::string to_text(const SearchOutcome& s) {
  std::ostringstream out;
  out << "p = " << s.p << ", mode " << to_string(s.mode) << "\n";
  out << "candidates examined: " << s.candidates_examined << " (" << s.non_bijective_candidates
      << " not bijective), hits of order " << s.target_order << ": " << s.target_order_hits << "\n";
  out << "distinct groups: " << s.groups.size() << "\n";
  for (const auto& g : s.groups) {
    out << "  " << hex(g.hash) << "  order " << g.order << "  verdict " << to_string(g.verdict)
        << (g.all_checks_pass ? "  all checks pass" : "  CHECK FAILURES")
        << (g.contains_negative_inversion ? "  contains z -> -1/z" : "") << "\n";
    out << "    swap " << g.first_swap.to_cycle_string() << "  (" << g.producing_candidates << " candidates)\n";
  }
  out << "matches prediction: " << (s.matches_prediction() ? "yes" : "no") << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", s.seconds);
  out << "wall clock: " << buf << " s\n";
  return out.str();
}

}  // namespace projgrp
