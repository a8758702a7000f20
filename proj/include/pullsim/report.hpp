#pragma once

#include <string>

#include "json.hpp"

namespace pullsim {

/// One checked statement: `observed` compared against `bound_or_target`.
struct VerificationReport {
  std::string name;
  double observed = 0.0;
  double bound_or_target = 0.0;
  bool passed = false;
  nlohmann::json metadata = nlohmann::json::object();

  nlohmann::json to_json() const;
  /// Single JSON object on one line.
  std::string to_json_line() const;
};

}  // namespace pullsim
