// Acceptance gate: runs every check of the core suite and prints one
// pass/fail line per criterion. Exit code 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "recordkit/verify.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 3;
  const auto rep = recordkit::verify::run_suite("core", seed);

  bool all = true;
  for (int c = 1; c <= 11; ++c) {
    bool pass = true;
    std::string detail;
    for (const auto& chk : rep.checks) {
      if (chk.criterion != c) continue;
      pass = pass && chk.pass;
      if (!detail.empty()) detail += " | ";
      detail += chk.id + ": " + chk.detail;
    }
    std::printf("criterion %02d %s  %s\n", c, pass ? "PASS" : "FAIL", detail.c_str());
    all = all && pass;
  }
  std::printf("%s (suite=core seed=%llu)\n", all ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
              static_cast<unsigned long long>(seed));
  return all ? 0 : 1;
}
