#include "projgrp/cli.hpp"

#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "projgrp/error.hpp"
#include "projgrp/psl2.hpp"
#include "projgrp/search.hpp"
#include "projgrp/verifier.hpp"

namespace projgrp {

namespace {

struct Config {
  std::string format = "text";
  std::string out_path;
  std::size_t max_order = kDefaultEnumerationCap;
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::uint32_t variant = 0;
  std::string group = "psl2";
  std::string mode = "constrained";
  std::string check = "order";

  GroupOptions options() const { return GroupOptions{max_order}; }
  bool json() const { return format == "json"; }
};

struct Result {
  int code = kExitOk;
  std::string body;
};

std::string render_flat(const Json& j) {
  std::ostringstream out;
  for (const auto& [key, value] : j.items()) out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  return out.str();
}

Result emit(const Config& cfg, const Json& j, const std::string& text, int code) {
  return {code, cfg.json() ? j.dump(2) + "\n" : text};
}

int report_code(const VerificationReport& r) {
  if (!r.hypotheses_passed()) return kExitHypotheses;
  const bool decided = r.verdict == Verdict::kContainsNegativeInversion || r.verdict == Verdict::kExceptional;
  return decided && r.all_passed() ? kExitOk : kExitCheckFailed;
}

struct GeneratorsFile {
  std::uint32_t p = 0;
  std::vector<std::string> cycles;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

GeneratorsFile read_generators(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  GeneratorsFile f;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line.rfind("p=", 0) != 0) throw Error(ErrorCode::ParseError, "first line must be p=<prime>");
      const std::string digits = trim(line.substr(2));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
        throw Error(ErrorCode::ParseError, "bad prime '" + digits + "'");
      f.p = static_cast<std::uint32_t>(std::stoul(digits));
      header = true;
      continue;
    }
    f.cycles.push_back(line);
  }
  if (!header) throw Error(ErrorCode::ParseError, path + " is empty");
  return f;
}

Result cmd_classify(const Config& cfg) {
  std::uint32_t p = cfg.p;
  std::optional<PermGroup> group;
  const std::string& src = cfg.group;
  if (src == "psl2") {
    if (p == 0) throw Error(ErrorCode::InvalidArgument, "--p is required");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
    group = psl2_perm_group(p, cfg.options());
  } else if (src.rfind("exceptional:", 0) == 0) {
    const std::string v = src.substr(12);
    if (v != "3" && v != "5") throw Error(ErrorCode::BadVariant, "variant must be 3 or 5");
    if (p != 0 && p != 7) throw Error(ErrorCode::InvalidArgument, "the exceptional groups act on 8 points; use --p 7");
    p = 7;
    group = build_exceptional(static_cast<std::uint32_t>(std::stoul(v)), cfg.options());
  } else if (src.rfind("file:", 0) == 0) {
    const GeneratorsFile f = read_generators(src.substr(5));
    if (p != 0 && p != f.p) throw Error(ErrorCode::InvalidArgument, "--p does not match the file header");
    p = f.p;
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
    const ProjLine line = ProjLine::over_prime(p);
    std::vector<Permutation> gens;
    for (const auto& c : f.cycles) gens.push_back(perm_from_cycles(line, c));
    group = gens.empty() ? PermGroup::trivial(p + 1, cfg.options()) : PermGroup::build(gens, cfg.options());
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown group source '" + src + "'");
  }
  const VerificationReport r = run_classification(*group, p);
  return emit(cfg, to_json(r), to_text(r), report_code(r));
}

Result cmd_search(const Config& cfg) {
  SearchOutcome s;
  if (cfg.mode == "full")
    s = full_search(cfg.p);
  else
    s = constrained_search(cfg.p);
  return emit(cfg, to_json(s), to_text(s), s.matches_prediction() ? kExitOk : kExitCheckFailed);
}

Json order_check(std::uint32_t q, const GroupOptions& opts) {
  const std::uint64_t expected = (std::uint64_t{q} * q * q - q) / std::gcd(2u, q - 1);
  const std::uint64_t order = psl2_perm_group(q, opts).order();
  Json j;
  j["q"] = q;
  j["check"] = "order";
  j["order"] = order;
  j["expected"] = expected;
  j["pass"] = order == expected;
  return j;
}

Json simplicity_check(std::uint32_t q, const GroupOptions& opts) {
  if (q > kMaxMatrixFieldOrder)
    throw Error(ErrorCode::FieldTooLarge, "simplicity certificates stop at q = " + std::to_string(kMaxMatrixFieldOrder));
  const bool brute = is_simple(psl2_perm_group(q, opts));
  Json j;
  j["q"] = q;
  j["check"] = "simplicity";
  j["brute_force_simple"] = brute;
  bool agree = true;
  if (q > 3) {
    const SimplicityCertificate cert = certify_simplicity(q);
    const bool verified = verify_certificate(cert);
    Json c;
    c["verdict"] = cert.verdict;
    c["verified"] = verified;
    c["normal_closures"] = cert.entries.size();
    j["certificate"] = c;
    agree = verified && cert.verdict == brute;
  } else {
    j["certificate"] = nullptr;
  }
  j["simple"] = brute;
  j["pass"] = agree;
  return j;
}

Json generation_check(std::uint32_t q, const GroupOptions& opts) {
  Json j;
  j["q"] = q;
  j["check"] = "generation";
  bool pass = true;
  if (q <= kMaxMatrixFieldOrder) {
    const SL2 sl2(q);
    const auto gens = sl2.generators();
    const std::size_t order = MatrixSubgroup::generated_by(sl2, gens).order();
    const std::uint64_t expected = std::uint64_t{q} * q * q - q;
    j["unipotents_generate_sl2"] = {{"order", order}, {"expected", expected}};
    pass = pass && order == expected;
  }
  if (is_prime(q)) {
    const ProjLine line = ProjLine::over_prime(q);
    const std::vector<Permutation> two{translation(line, line.field().one()), negative_inversion(line)};
    const PermGroup g = PermGroup::build(two, opts);
    const std::uint64_t expected = psl2_order(q);
    j["two_generators"] = {{"generators", {two[0].to_cycle_string(), two[1].to_cycle_string()}},
                           {"order", g.order()},
                           {"expected", expected}};
    pass = pass && g.order() == expected;
  } else if (q > kMaxMatrixFieldOrder) {
    const std::uint64_t order = psl2_perm_group(q, opts).order();
    j["unipotent_images"] = {{"order", order}, {"expected", psl2_order(q)}};
    pass = pass && order == psl2_order(q);
  }
  j["pass"] = pass;
  return j;
}

Result cmd_psl2(const Config& cfg) {
  Json j;
  if (cfg.check == "order")
    j = order_check(cfg.q, cfg.options());
  else if (cfg.check == "simplicity")
    j = simplicity_check(cfg.q, cfg.options());
  else
    j = generation_check(cfg.q, cfg.options());
  std::string text = render_flat(j);
  if (cfg.check == "simplicity") text += std::string("PSL2(") + std::to_string(cfg.q) + ") is " + (j["simple"].get<bool>() ? "simple" : "not simple") + "\n";
  return emit(cfg, j, text, j["pass"].get<bool>() ? kExitOk : kExitCheckFailed);
}

Result report_result(const Config& cfg, const VerificationReport& r) {
  return emit(cfg, to_json(r), to_text(r), r.all_passed() ? kExitOk : kExitCheckFailed);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Permutation groups on the projective line: construction, verification and search", "projgrp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", cfg.out_path, "write the report here instead of stdout");
  app.add_option("--max-order", cfg.max_order, "largest group order to enumerate")->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "run the classification chain on a group");
  classify->add_option("--p", cfg.p, "prime");
  classify->add_option("--group", cfg.group, "psl2 | exceptional:3 | exceptional:5 | file:PATH");

  auto* search = app.add_subcommand("search", "rediscover the groups of order (p^3 - p)/2 by brute force");
  search->add_option("--p", cfg.p, "odd prime")->required();
  search->add_option("--mode", cfg.mode, "full or constrained")->check(CLI::IsMember({"full", "constrained"}));

  auto* psl2 = app.add_subcommand("psl2", "order, simplicity or generation of PSL2(q)");
  psl2->add_option("--q", cfg.q, "field order")->required();
  psl2->add_option("--check", cfg.check, "order | simplicity | generation")
      ->check(CLI::IsMember({"order", "simplicity", "generation"}));

  auto* corollary = app.add_subcommand("corollary", "PSL2(p) through its Sylow p-subgroups");
  corollary->add_option("--p", cfg.p, "prime, 3 < p <= 13")->required();

  auto* exceptional = app.add_subcommand("exceptional", "the two exceptional groups of order 168");
  exceptional->add_option("--variant", cfg.variant, "3 or 5")->required();

  auto* p3 = app.add_subcommand("p3", "the case p = 3");

  std::vector<std::string> argv_store{"projgrp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  Result r;
  try {
    if (classify->parsed())
      r = cmd_classify(cfg);
    else if (search->parsed())
      r = cmd_search(cfg);
    else if (psl2->parsed())
      r = cmd_psl2(cfg);
    else if (corollary->parsed())
      r = report_result(cfg, corollary_check(cfg.p, cfg.options()));
    else if (exceptional->parsed())
      r = report_result(cfg, check_exceptional(cfg.variant));
    else if (p3->parsed())
      r = report_result(cfg, p3_case_check());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cfg.out_path.empty()) {
    out << r.body;
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) {
      err << "error: cannot write " << cfg.out_path << "\n";
      return kExitUsage;
    }
    f << r.body;
  }
  return r.code;
}

}  // namespace projgrp
