#pragma once

#include <string>

namespace nodal {

/// Outcome of a certification. The CLI maps these to exit codes 0, 1, 2.
enum class Verdict { Certified, Refuted, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

inline int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Certified: return 0;
    case Verdict::Refuted: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

/// Combines stage verdicts: any Refuted wins, then Inconclusive.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Refuted || b == Verdict::Refuted) return Verdict::Refuted;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Certified;
}

}  // namespace nodal
