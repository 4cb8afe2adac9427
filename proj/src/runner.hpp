#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "script.hpp"

namespace tcw {

inline constexpr const char* kWorkbenchVersion = "0.1.0";

// Global defaults from the command line; task words override them.
struct RunnerOptions {
  bool json = false;
  bool timings = false;
  uint32_t threads = 1;
  std::optional<uint32_t> e_max;
  std::optional<uint32_t> k_power;
  std::optional<int64_t> bound;
  std::optional<uint32_t> s_max;
  std::string order = "grevlex";
  std::vector<uint32_t> primes;
  std::optional<std::string> assert_test_element;
};

struct RunOutcome {
  std::string text;
  nlohmann::ordered_json doc;
  int exit_code = 0;  // 0 done, 1 error, 2 done with UNDETERMINED verdicts
};

RunOutcome run_script(const WorkbenchScript& script, const RunnerOptions& opt);

}  // namespace tcw
