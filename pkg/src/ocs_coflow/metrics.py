"""Evaluation metrics: total weighted CCT, NormW and nearest-rank tail CCT."""

from __future__ import annotations

import math
from typing import Mapping, Sequence

from .model import Schedule, Workload

PERCENTILE_METHOD = "nearest-rank"


class MetricError(ValueError):
    pass


def total_weighted_cct(cct: Mapping[int, float], weights: Mapping[int, float]) -> float:
    """Sum of ``weights[id] * cct[id]`` over all coflow ids in ``weights``."""
    missing = [cid for cid in weights if cid not in cct]
    if missing:
        raise MetricError(f"no completion time for coflows {missing}")
    return math.fsum(w * cct[cid] for cid, w in weights.items())


def schedule_weighted_cct(schedule: Schedule, workload: Workload) -> float:
    return total_weighted_cct(schedule.cct(), {c.id: c.weight for c in workload.coflows})


def norm_w(candidate: float, ours: float) -> float:
    if not ours > 0:
        raise MetricError("reference total weighted CCT must be positive")
    return candidate / ours


def tail_cct(ccts: Sequence[float], p: float) -> float:
    """Nearest-rank percentile: the ``ceil(p/100 * n)``-th smallest value."""
    if not ccts:
        raise MetricError("tail_cct of an empty list")
    if not 0 < p < 100:
        raise MetricError(f"percentile must be in (0, 100), got {p}")
    values = sorted(ccts)
    rank = math.ceil(p * len(values) / 100)
    return values[max(rank, 1) - 1]
