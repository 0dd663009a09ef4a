#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "caz/experiment.hpp"

namespace caz {

enum class VerifyLevel { Exact, FastMc, FullMc };

std::string_view to_string(VerifyLevel level);
VerifyLevel parse_verify_level(std::string_view text);

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  nlohmann::json data;
  double seconds = 0.0;  // not part of the JSON (reports stay byte-identical)

  nlohmann::json to_json() const;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  int threads = 0;
};

/// Shared state for one verification run; Monte Carlo experiments used by
/// several criteria are computed once.
class VerifyContext {
 public:
  explicit VerifyContext(VerifyOptions options = {}) : options_(options) {}

  const VerifyOptions& options() const { return options_; }
  /// Flat L = 100, bump (0,0,1,3), M = 2000.
  const ExperimentReport& flat_l100();
  /// Flat L = 50, same bump, M = 2000, independent seed.
  const ExperimentReport& flat_l50();

 private:
  VerifyOptions options_;
  std::optional<ExperimentReport> flat_l100_;
  std::optional<ExperimentReport> flat_l50_;
};

CriterionResult check_ac1(VerifyContext& ctx);  // diagram counts
CriterionResult check_ac2(VerifyContext& ctx);  // Wick coefficients, Parseval, kappa
CriterionResult check_ac3(VerifyContext& ctx);  // zero counts and mean
CriterionResult check_ac4(VerifyContext& ctx);  // variance and normality at L = 100
CriterionResult check_ac5(VerifyContext& ctx);  // 1/L variance decay
CriterionResult check_ac6(VerifyContext& ctx);  // diagram moments vs sampling
CriterionResult check_ac7(VerifyContext& ctx);  // geometry identities
CriterionResult check_ac8(VerifyContext& ctx);  // toy models
CriterionResult check_ac9(VerifyContext& ctx);  // irregular-diagram decay

/// Criteria run at a level: exact -> AC-1, 2, 7, 9; fast-mc adds AC-3, 6;
/// full-mc adds AC-4, 5, 8.
std::vector<std::string> criteria_for(VerifyLevel level);

/// Runs one criterion by id ("AC-1" .. "AC-9").
CriterionResult run_criterion(const std::string& id, VerifyContext& ctx);

std::vector<CriterionResult> verify_suite(VerifyLevel level, const VerifyOptions& options = {});
nlohmann::json verify_report(VerifyLevel level, const VerifyOptions& options,
                             const std::vector<CriterionResult>& results);

}  // namespace caz
