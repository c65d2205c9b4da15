"""Exhaustive search over list schedules for desk-sized instances.

The search enumerates every flow-to-core assignment and every per-core
priority order, simulating each with its own event loop (kept separate from
``scheduler.schedule_core`` so the two can check each other). Only active
list schedules are searched, so the result is an upper bound on the optimum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .bounds import global_lb
from .model import Workload
from .scheduler import run

DEFAULT_MAX_FLOWS = 6
MAX_CORES = 3


class OracleLimitError(ValueError):
    pass


# (coflow_id, ingress, egress, size)
_Flow = Tuple[int, int, int, float]


def simulate_list(flows: Sequence[_Flow], rate: float, delta: float) -> List[Tuple[_Flow, float, float]]:
    """Replay a priority list; returns ``(flow, establish, finish)`` per flow."""
    active: List[Tuple[float, int, int]] = []
    remaining = list(flows)
    out = []
    now = 0.0
    while remaining:
        active = [a for a in active if a[0] > now]
        busy_in = {a[1] for a in active}
        busy_out = {a[2] for a in active}
        still = []
        for f in remaining:
            _, i, j, size = f
            if i in busy_in or j in busy_out:
                still.append(f)
                continue
            finish = (now + delta) + size / rate
            active.append((finish, i, j))
            busy_in.add(i)
            busy_out.add(j)
            out.append((f, now, finish))
        remaining = still
        if remaining:
            now = min(a[0] for a in active if a[0] > now)
    return out


@dataclass(frozen=True)
class OracleResult:
    value: float
    # flow -> core, flows indexed as in ``flows``
    flows: Tuple[_Flow, ...]
    cores: Tuple[int, ...]
    # per-core priority order, as indices into ``flows``
    orders: Tuple[Tuple[int, ...], ...]
    weighted_lb: float

    @property
    def lb_ratio(self) -> float:
        return self.value / self.weighted_lb

    def core_lists(self) -> List[List[_Flow]]:
        return [[self.flows[f] for f in order] for order in self.orders]


def _instance_flows(workload: Workload) -> List[_Flow]:
    return [(c.id, i, j, size) for c in workload.coflows for i, j, size in c.demand.flows()]


def best_list_schedule(workload: Workload, max_flows: int = DEFAULT_MAX_FLOWS) -> OracleResult:
    cfg = workload.config
    flows = _instance_flows(workload)
    if len(flows) > max_flows or cfg.k > MAX_CORES:
        raise OracleLimitError(
            f"instance has {len(flows)} flows on {cfg.k} cores; oracle limits are "
            f"{max_flows} flows and {MAX_CORES} cores"
        )
    weight = {c.id: c.weight for c in workload.coflows}
    weighted_lb = math.fsum(c.weight * global_lb(c.demand, cfg) for c in workload.coflows)

    @lru_cache(maxsize=None)
    def options(k: int, subset: Tuple[int, ...]) -> Tuple[Tuple[Tuple[Tuple[int, float], ...], Tuple[int, ...]], ...]:
        # distinct per-coflow finish vectors reachable on core k, with a witness order each
        seen: Dict[Tuple[Tuple[int, float], ...], Tuple[int, ...]] = {}
        for perm in itertools.permutations(subset):
            done: Dict[int, float] = {}
            for f, _, finish in simulate_list([flows[x] for x in perm], cfg.rates[k], cfg.delta):
                done[f[0]] = max(done.get(f[0], 0.0), finish)
            seen.setdefault(tuple(sorted(done.items())), perm)
        return tuple(seen.items())

    best: Optional[Tuple[float, Tuple[int, ...], Tuple[Tuple[int, ...], ...]]] = None
    for cores in itertools.product(range(cfg.k), repeat=len(flows)):
        per_core = [tuple(x for x in range(len(flows)) if cores[x] == k) for k in range(cfg.k)]
        for combo in itertools.product(*(options(k, s) for k, s in enumerate(per_core))):
            cct: Dict[int, float] = {}
            for vec, _ in combo:
                for cid, t in vec:
                    cct[cid] = max(cct.get(cid, 0.0), t)
            value = math.fsum(weight[cid] * cct[cid] for cid in weight)
            if best is None or value < best[0]:
                best = (value, cores, tuple(order for _, order in combo))
    assert best is not None
    return OracleResult(best[0], tuple(flows), best[1], best[2], weighted_lb)


@dataclass(frozen=True)
class OracleComparison:
    algorithm: float
    oracle: float
    weighted_lb: float

    @property
    def algorithm_ratio(self) -> float:
        return self.algorithm / self.oracle

    @property
    def lb_ratio(self) -> float:
        return self.oracle / self.weighted_lb


def compare(workload: Workload, max_flows: int = DEFAULT_MAX_FLOWS) -> OracleComparison:
    res = best_list_schedule(workload, max_flows)
    return OracleComparison(run(workload).total_weighted_cct, res.value, res.weighted_lb)
