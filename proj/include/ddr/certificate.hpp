#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ddr/core.hpp"

namespace ddr {

enum class Verdict {
  CertifiedDrAwayFrom,
  CertifiedDrAllDirections,
  DecidedDr,
  DecidedNotDr,
  Refuted,
  Unknown,
};

const char* to_string(Verdict v);

bool is_positive(Verdict v);
bool is_negative(Verdict v);

struct Consequence {
  std::string code;
  std::string statement;

  friend bool operator==(const Consequence&, const Consequence&) = default;
};

/// A verdict about one (P, S) pair together with re-checkable evidence.
struct Certificate {
  std::string presentation_digest;
  GeneratorSet s;
  bool all_directions = false;
  Verdict verdict = Verdict::Unknown;
  std::string method;
  nlohmann::json evidence = nlohmann::json::object();
  std::vector<Consequence> consequences;
  std::string note;
};

/// FNV-1a 64 over the serialized presentation, as 16 hex digits.
std::string presentation_digest(const Presentation& p);

/// Statements that follow from a positive certificate. `subpresentation_dr`
/// records that P_S itself was shown DR; a relator-free P_S counts as DR.
std::vector<Consequence> derive_consequences(const Certificate& cert, const Presentation& p,
                                             bool subpresentation_dr = false);

}  // namespace ddr
