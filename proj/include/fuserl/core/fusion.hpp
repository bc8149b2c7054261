#pragma once

#include <vector>

#include "fuserl/core/types.hpp"

namespace fuserl {

/// Floor applied to (score + bias) before exponentiation so fractional powers
/// stay real when a negative bias pushes the base non-positive.
inline constexpr double kFusionBaseFloor = 1e-6;

/// Combined ranking score: prod_i (score_i + bias_i)^power_i.
double fuseScore(const PredScores& scores, const FusionAction& action);

/// Indices of the listLength highest-scoring candidates, descending; ties
/// break toward the lower candidate index.
std::vector<int> rankCandidates(const std::vector<PredScores>& candidates,
                                const FusionAction& action, int listLength);

}  // namespace fuserl
