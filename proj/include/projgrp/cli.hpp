#pragma once

// Command-line front end. Exit codes: 0 success, 2 hypotheses fail,
// 3 a check fails, 4 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace projgrp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitHypotheses = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitUsage = 4;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projgrp
