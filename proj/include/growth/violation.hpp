#pragma once

#include <cstdint>
#include <string>

namespace growth {

// Machine-readable description of one failed invariant or inequality.
struct Violation {
  std::string code;     // short kebab-case identifier, e.g. "unknown-rule-target"
  std::string detail;   // human-readable explanation
  std::int64_t index = -1;  // offending function/component index, -1 if n/a
};

}  // namespace growth
