#pragma once

#include <span>
#include <vector>

#include "fuserl/core/types.hpp"

namespace fuserl::agent {

/// Columnized mini-batch view over transitions (rows are samples).
struct TransitionBatch {
  Matrix states;             // B x F
  Matrix actions;            // B x 2k
  Matrix nextStates;         // B x F
  Matrix rewardComponents;   // B x q
  Vector rewardTotals;       // B
  std::vector<char> terminal;
  std::vector<const BehaviorMeta*> meta;

  int size() const { return static_cast<int>(states.rows()); }

  static TransitionBatch fromTransitions(std::span<const Transition* const> transitions);
};

}  // namespace fuserl::agent
