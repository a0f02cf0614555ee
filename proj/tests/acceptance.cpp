// One line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <iostream>

#include "cvgme/reference_checks.hpp"

using namespace cvgme::reference;

int main() {
  using Fn = CheckReport (*)();
  const Fn groups[] = {
      check_ppt_tables,       check_printed_witnesses,
      check_sdp_reproduction, check_decomposition,
      check_circuits,         check_noise_tolerance,
      [] { return check_search(20, 1); },
      check_solver,           check_invariants,
  };
  bool all = true;
  for (int c = 1; c <= 9; ++c) {
    const auto t0 = std::chrono::steady_clock::now();
    const CheckReport rep = groups[c - 1]();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = rep.criterion_passed(c);
    all &= ok;
    std::printf("criterion %d %-18s %s  (%zu checks, %.2f s)\n", c, criterion_name(c).c_str(),
                ok ? "PASS" : "FAIL", rep.items.size(), secs);
    for (const auto& i : rep.items)
      if (!i.passed) std::printf("    failed: %s: %s (expected %s)\n", i.name.c_str(),
                                 i.measured.c_str(), i.expected.c_str());
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? 0 : 1;
}
