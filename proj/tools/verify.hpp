#pragma once

#include "config.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace riesz::app {

struct CheckResult
{
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport
{
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_pass() const;
};

/// Invariant suite on the configured scenario plus two small built-in
/// fixtures. Numerical tolerances are multiplied by cfg.tolerance_scale.
[[nodiscard]] VerifyReport run_verify(const RunConfig& cfg, const PointMeasure& mu);

[[nodiscard]] nlohmann::json verify_to_json(const VerifyReport& rep);

} // namespace riesz::app
