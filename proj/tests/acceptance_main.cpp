// Acceptance gate: runs the full validation suite and prints one PASS or
// FAIL line per criterion. Exit status 0 only if every criterion passes.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "spinchain/validation.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 7;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[i + 1], nullptr, 10);
      ++i;
    } else {
      std::cerr << "usage: " << argv[0] << " [--seed <value>]\n";
      return 2;
    }
  }
  const spinchain::validation::Report report =
      spinchain::validation::run_acceptance(seed);
  std::cout << report.text;
  return report.all_pass ? 0 : 1;
}
