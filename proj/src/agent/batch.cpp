#include "fuserl/agent/batch.hpp"

namespace fuserl::agent {

TransitionBatch TransitionBatch::fromTransitions(std::span<const Transition* const> transitions) {
  FUSERL_CHECK(!transitions.empty(), "TransitionBatch: empty batch");
  const Transition& first = *transitions.front();
  int batch = static_cast<int>(transitions.size());
  int stateDim = first.state.dim();
  int actionDim = first.action.dim();
  int groupCount = static_cast<int>(first.rewardComponents.size());

  TransitionBatch out;
  out.states.resize(batch, stateDim);
  out.actions.resize(batch, actionDim);
  out.nextStates.resize(batch, stateDim);
  out.rewardComponents.resize(batch, groupCount);
  out.rewardTotals.resize(batch);
  out.terminal.resize(batch);
  out.meta.resize(batch);
  for (int i = 0; i < batch; ++i) {
    const Transition& t = *transitions[i];
    FUSERL_CHECK(t.state.dim() == stateDim && t.action.dim() == actionDim &&
                     static_cast<int>(t.rewardComponents.size()) == groupCount,
                 "TransitionBatch: inconsistent transition shapes");
    out.states.row(i) = t.state.features.transpose();
    out.actions.row(i) = t.action.flat().transpose();
    out.nextStates.row(i) = t.nextState.features.transpose();
    out.rewardComponents.row(i) = t.rewardComponents.transpose();
    out.rewardTotals[i] = t.rewardTotal;
    out.terminal[i] = t.terminal ? 1 : 0;
    out.meta[i] = &t.behaviorMeta;
  }
  return out;
}

}  // namespace fuserl::agent
