"""Session-level fusion-weight reinforcement learning on a synthetic recommender.

The heavy lifting lives in the compiled extension; this package re-exports its
public surface.
"""

from ._fuserl import (
    ContractViolation,
    DegenerateEstimate,
    __version__,
    bootstrap_gate,
    bound_penalty,
    cumulative_reward,
    explore_bounded,
    explore_gaussian,
    fuse_score,
    instant_reward,
    mtf_gauc,
    rank_candidates,
    run_collect,
    run_evaluate,
    run_progressive,
    run_report,
    run_train,
    weighted_auc,
)

__all__ = [
    "ContractViolation",
    "DegenerateEstimate",
    "__version__",
    "bootstrap_gate",
    "bound_penalty",
    "cumulative_reward",
    "explore_bounded",
    "explore_gaussian",
    "fuse_score",
    "instant_reward",
    "mtf_gauc",
    "rank_candidates",
    "run_collect",
    "run_evaluate",
    "run_progressive",
    "run_report",
    "run_train",
    "weighted_auc",
]
