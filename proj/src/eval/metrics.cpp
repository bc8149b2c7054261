#include "fuserl/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fuserl::eval {

std::optional<double> weightedAuc(std::span<const ImpressionRecord> records) {
  FUSERL_CHECK(!records.empty(), "weightedAuc: empty impression group");
  double totalPos = 0.0;
  double totalNeg = 0.0;
  for (const auto& r : records) {
    FUSERL_CHECK(r.label == 0 || r.label == 1, "weightedAuc: labels must be 0 or 1");
    FUSERL_CHECK(r.sampleWeight >= 0.0, "weightedAuc: sample weights must be >= 0");
    (r.label == 1 ? totalPos : totalNeg) += r.sampleWeight;
  }
  if (totalPos <= 0.0 || totalNeg <= 0.0) return std::nullopt;

  // Sort by prediction ascending and sweep tie blocks: a negative in a block
  // forms strict pairs with all positives above the block and half pairs with
  // positives inside it.
  std::vector<const ImpressionRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const ImpressionRecord* a, const ImpressionRecord* b) {
              return a->prediction < b->prediction;
            });

  std::vector<double> posInBlock;
  std::vector<double> negInBlock;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    double pos = 0.0;
    double neg = 0.0;
    while (j < sorted.size() && sorted[j]->prediction == sorted[i]->prediction) {
      (sorted[j]->label == 1 ? pos : neg) += sorted[j]->sampleWeight;
      ++j;
    }
    posInBlock.push_back(pos);
    negInBlock.push_back(neg);
    i = j;
  }
  // suffix sums keep "no positives above" exactly zero
  std::vector<double> posAbove(posInBlock.size(), 0.0);
  for (std::size_t b = posInBlock.size() - 1; b-- > 0;) {
    posAbove[b] = posAbove[b + 1] + posInBlock[b + 1];
  }
  double numerator = 0.0;
  for (std::size_t b = 0; b < posInBlock.size(); ++b) {
    numerator += negInBlock[b] * posAbove[b] + 0.5 * negInBlock[b] * posInBlock[b];
  }
  return numerator / (totalPos * totalNeg);
}

double mtfGauc(const std::vector<std::vector<ImpressionRecord>>& userGroups) {
  double weighted = 0.0;
  double totalWeight = 0.0;
  for (const auto& group : userGroups) {
    std::optional<double> auc = weightedAuc(group);
    if (!auc) continue;
    double w = static_cast<double>(group.size());  // impressions in the group
    weighted += w * *auc;
    totalWeight += w;
  }
  if (totalWeight <= 0.0) {
    throw DegenerateEstimateError("mtfGauc: every user group was excluded");
  }
  return weighted / totalWeight;
}

namespace {

std::vector<double> averagedRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    double rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j - 1)) + 1.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace

double spearmanCorrelation(std::span<const double> a, std::span<const double> b) {
  FUSERL_CHECK(a.size() == b.size() && a.size() >= 2,
               "spearmanCorrelation: need two equally sized samples");
  std::vector<double> ra = averagedRanks(a);
  std::vector<double> rb = averagedRanks(b);
  double meanA = std::accumulate(ra.begin(), ra.end(), 0.0) / ra.size();
  double meanB = std::accumulate(rb.begin(), rb.end(), 0.0) / rb.size();
  double cov = 0.0;
  double varA = 0.0;
  double varB = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    double da = ra[i] - meanA;
    double db = rb[i] - meanB;
    cov += da * db;
    varA += da * da;
    varB += db * db;
  }
  FUSERL_CHECK(varA > 0.0 && varB > 0.0, "spearmanCorrelation: constant input has no rank order");
  return cov / std::sqrt(varA * varB);
}

}  // namespace fuserl::eval
