#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fuserl/core/types.hpp"

namespace fuserl::eval {

struct ImpressionRecord {
  std::int64_t userId = 0;
  int label = 0;          // valid consumption
  double sampleWeight = 0.0;
  double prediction = 0.0;
};

/// Weighted pairwise AUC of one user's impressions; nullopt when the group
/// has only positive or only negative labels (excluded from MTF-GAUC).
std::optional<double> weightedAuc(std::span<const ImpressionRecord> records);

/// Impression-count-weighted mean of per-user weighted AUCs; excluded groups
/// drop out of both numerator and denominator. Throws DegenerateEstimateError
/// when every group is excluded.
double mtfGauc(const std::vector<std::vector<ImpressionRecord>>& userGroups);

/// Spearman rank correlation (average ranks on ties).
double spearmanCorrelation(std::span<const double> a, std::span<const double> b);

}  // namespace fuserl::eval
