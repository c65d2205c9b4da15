"""Ablation baselines: the main pipeline with the cross-core assignment swapped out."""

from __future__ import annotations

import enum
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .model import FlowAssignment, Workload, flows_in_priority_order
from .scheduler import SchedulerOutput, greedy_assign, run_pipeline

RNG_NAME = "numpy.random.Philox (4x64 counter-based)"


class BaselineKind(str, enum.Enum):
    RHO_ASSIGN = "rho"
    RAND_ASSIGN = "rand"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def assign_rho(workload: Workload, order: Sequence[int]) -> FlowAssignment:
    """Place each flow on the core with the smallest prefix port load / rate."""
    return greedy_assign(workload, order, 0.0)


def assign_rand(workload: Workload, order: Sequence[int], seed: int) -> FlowAssignment:
    """Place each flow on core k with probability rate_k / total rate."""
    cfg = workload.config
    rng = make_rng(seed)
    cum = np.cumsum(cfg.rates) / cfg.total_rate
    core_of: Dict[Tuple[int, int, int], int] = {}
    for m in order:
        for i, j, _ in flows_in_priority_order(workload.coflows[m].demand):
            # one uniform draw per flow, inverted through the cumulative rate shares
            k = int(np.searchsorted(cum, rng.random(), side="right"))
            core_of[(m, i, j)] = min(k, cfg.k - 1)
    return FlowAssignment.from_cores(workload, core_of)


def run_baseline(kind: BaselineKind, workload: Workload, seed: Optional[int] = None) -> SchedulerOutput:
    kind = BaselineKind(kind)
    if kind is BaselineKind.RHO_ASSIGN:
        return run_pipeline(workload, assign_rho, check_assignment_bound=False)
    if seed is None:
        raise ValueError("RAND_ASSIGN requires a seed")
    return run_pipeline(
        workload, lambda w, order: assign_rand(w, order, seed), check_assignment_bound=False
    )
