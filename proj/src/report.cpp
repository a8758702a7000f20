#include "pullsim/report.hpp"

#include <cmath>

namespace pullsim {

namespace {
// JSON has no NaN/inf; write them as strings so lines stay parseable.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}
}  // namespace

nlohmann::json VerificationReport::to_json() const {
  return nlohmann::json{{"name", name},
                        {"observed", number(observed)},
                        {"bound_or_target", number(bound_or_target)},
                        {"passed", passed},
                        {"metadata", metadata}};
}

std::string VerificationReport::to_json_line() const { return to_json().dump(); }

}  // namespace pullsim
