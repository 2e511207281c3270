#pragma once

#include <cstdint>
#include <string>

namespace pgl {

enum class Verdict { yes, no, unknown };

struct StageVerdict {
  Verdict value = Verdict::unknown;
  std::uint64_t stage = 0;
};

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    default:
      return "unknown";
  }
}

}  // namespace pgl
