#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuserl/util/jsonx.hpp"

namespace fuserl::cli {

struct EvaluationRow {
  std::string checkpoint;
  std::optional<double> ncis;
  std::optional<double> mtfGauc;
  double rolloutReturn = 0.0;
  double uvc = 0.0;
  double udt = 0.0;
  double ciLow = 0.0;
  double ciHigh = 0.0;
  int sessions = 0;
};

inline constexpr const char* kBaselineRowName = "baseline-constant";

Json evaluationReportJson(const std::vector<EvaluationRow>& rows, const std::string& datasetPath);
std::vector<EvaluationRow> evaluationRowsFromJson(const Json& j);

/// CSV columns: checkpoint,ncis,mtf_gauc,rollout_return,uvc,udt,ci_low,ci_high
std::string evaluationCsv(const std::vector<EvaluationRow>& rows);

/// Baseline-relative percentage deltas (rollout metrics); one row per policy.
std::string reportOnlineCsv(const std::vector<EvaluationRow>& rows);
std::string reportOfflineCsv(const std::vector<EvaluationRow>& rows);
std::string reportMarkdown(const std::vector<EvaluationRow>& rows, const Json* lineage,
                           const Json* efficiency);

}  // namespace fuserl::cli
