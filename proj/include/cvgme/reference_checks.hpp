#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

// Regression suite against the embedded reference data. Failures are report
// entries, never exceptions.
namespace cvgme::reference {

struct CheckItem {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string measured;
  std::string expected;
  double seconds = 0.0;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool all_passed() const;
  bool criterion_passed(int criterion) const;
  void append(const CheckReport& other);
};

CheckReport check_ppt_tables();          // 1
CheckReport check_printed_witnesses();   // 2
CheckReport check_sdp_reproduction();    // 3
CheckReport check_decomposition();       // 4
CheckReport check_circuits();            // 5
CheckReport check_noise_tolerance();     // 6
CheckReport check_search(int restarts = 20, std::uint64_t seed = 1);  // 7
CheckReport check_solver();              // 8
CheckReport check_invariants();          // 9

std::string criterion_name(int criterion);

/// Runs every group in order; `search_restarts` <= 0 skips group 7.
CheckReport verify_all(int search_restarts = 20, std::uint64_t seed = 1);

nlohmann::json to_json(const CheckReport& r);

}  // namespace cvgme::reference
