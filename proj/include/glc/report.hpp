#pragma once

#include <string>
#include <vector>

namespace glc {

/// One checked instance of an identity: both sides rendered as exact text.
struct VerifyRecord {
  std::string context;
  std::string theorem;
  std::string instance;
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

inline bool all_pass(const std::vector<VerifyRecord>& records) {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

}  // namespace glc
