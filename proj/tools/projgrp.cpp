#include <iostream>

#include "projgrp/cli.hpp"

int main(int argc, char** argv) {
  return projgrp::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
