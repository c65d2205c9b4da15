"""Three-phase coflow scheduler for multi-core OCS (and EPS) fabrics.

1. order coflows by ``weight / global_lb`` (non-increasing),
2. place every flow whole on the core whose per-core prefix bound grows least,
3. list-schedule each core independently under not-all-stop reconfiguration.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .bounds import BoundAudit, audit, global_lb
from .model import (
    CircuitEvent,
    FlowAssignment,
    Mode,
    ModelError,
    Schedule,
    Workload,
    flows_in_priority_order,
)

# (coflow_id, ingress, egress, size)
Flow = Tuple[int, int, int, float]


@dataclass(frozen=True)
class SchedulerOutput:
    order: Tuple[int, ...]
    assignment: FlowAssignment
    schedule: Schedule
    audit: BoundAudit

    @property
    def cct(self) -> Dict[int, float]:
        return self.schedule.cct()

    @property
    def total_weighted_cct(self) -> float:
        return self.audit.weighted_cct


def order_coflows(workload: Workload) -> List[int]:
    """Coflow indices by non-increasing ``w / global_lb``; ties keep input order."""
    if workload.m == 0:
        raise ModelError("cannot order an empty workload")
    scores = [c.weight / global_lb(c.demand, workload.config) for c in workload.coflows]
    return sorted(range(workload.m), key=lambda m: -scores[m])


class _CoreLoads:
    """Incremental row/column loads and circuit counts of one core's prefix matrix."""

    __slots__ = ("rate", "rows", "cols", "row_cnt", "col_cnt", "occupied", "bound")

    def __init__(self, n: int, rate: float) -> None:
        self.rate = rate
        self.rows = [0.0] * n
        self.cols = [0.0] * n
        self.row_cnt = [0] * n
        self.col_cnt = [0] * n
        self.occupied: set = set()
        self.bound = 0.0

    def tentative(self, i: int, j: int, size: float, delta: float) -> Tuple[float, float, float]:
        new = (i, j) not in self.occupied
        li = (self.rows[i] + size) / self.rate + (self.row_cnt[i] + new) * delta
        lj = (self.cols[j] + size) / self.rate + (self.col_cnt[j] + new) * delta
        return max(self.bound, li, lj), li, lj

    def add(self, i: int, j: int, size: float, delta: float) -> None:
        bound, _, _ = self.tentative(i, j, size, delta)
        if (i, j) not in self.occupied:
            self.occupied.add((i, j))
            self.row_cnt[i] += 1
            self.col_cnt[j] += 1
        self.rows[i] += size
        self.cols[j] += size
        self.bound = bound


def greedy_assign(workload: Workload, order: Sequence[int], delta: float) -> FlowAssignment:
    """Greedy bound-minimising placement with reconfiguration weight ``delta``.

    ``delta = config.delta`` is the main rule; ``delta = 0`` scores cores by
    port load over rate only.
    """
    cfg = workload.config
    cores = [_CoreLoads(cfg.n, r) for r in cfg.rates]
    core_of: Dict[Tuple[int, int, int], int] = {}
    for m in order:
        for i, j, size in flows_in_priority_order(workload.coflows[m].demand):
            scores = [c.tentative(i, j, size, delta)[0] for c in cores]
            best = min(range(cfg.k), key=scores.__getitem__)
            cores[best].add(i, j, size, delta)
            core_of[(m, i, j)] = best
    return FlowAssignment.from_cores(workload, core_of)


def assign_flows(workload: Workload, order: Sequence[int]) -> FlowAssignment:
    return greedy_assign(workload, order, workload.config.delta)


def core_flow_lists(
    workload: Workload, order: Sequence[int], assignment: FlowAssignment
) -> List[List[Flow]]:
    """Per-core flows in total priority order: order position, then size desc, then (i, j)."""
    lists: List[List[Flow]] = [[] for _ in range(workload.config.k)]
    for m in order:
        c = workload.coflows[m]
        for i, j, size in flows_in_priority_order(c.demand):
            lists[assignment.core_of[(m, i, j)]].append((c.id, i, j, size))
    return lists


def schedule_core(flows: Sequence[Flow], rate: float, delta: float, core: int = 0) -> List[CircuitEvent]:
    """Non-preemptive, work-conserving list schedule of one core.

    At each decision time every pending flow is scanned in priority order and
    started if both its ports are free; time then jumps to the next circuit
    completion. Only flows touching a port freed at that instant can have
    become startable, so later scans visit just those.
    """
    by_in: Dict[int, List[int]] = {}
    by_out: Dict[int, List[int]] = {}
    for idx, (_, i, j, _) in enumerate(flows):
        by_in.setdefault(i, []).append(idx)
        by_out.setdefault(j, []).append(idx)
    in_free: Dict[int, float] = {}
    out_free: Dict[int, float] = {}
    started = [False] * len(flows)
    releases: List[Tuple[float, int, int]] = []
    events: List[CircuitEvent] = []
    candidates: Sequence[int] = range(len(flows))
    left = len(flows)
    t = 0.0
    while True:
        for idx in candidates:
            if started[idx]:
                continue
            cid, i, j, size = flows[idx]
            if in_free.get(i, 0.0) <= t and out_free.get(j, 0.0) <= t:
                start = t + delta
                finish = start + size / rate
                in_free[i] = out_free[j] = finish
                heapq.heappush(releases, (finish, i, j))
                events.append(CircuitEvent(cid, core, i, j, t, start, finish, size))
                started[idx] = True
                left -= 1
        if not left:
            return events
        t = releases[0][0]
        touched = set()
        while releases and releases[0][0] <= t:
            _, i, j = heapq.heappop(releases)
            touched.update(by_in[i])
            touched.update(by_out[j])
        candidates = sorted(touched)


def schedule_all(
    workload: Workload, order: Sequence[int], assignment: FlowAssignment
) -> Schedule:
    cfg = workload.config
    events: List[CircuitEvent] = []
    for k, flows in enumerate(core_flow_lists(workload, order, assignment)):
        events.extend(schedule_core(flows, cfg.rates[k], cfg.delta, core=k))
    return Schedule(tuple(events))


def run_pipeline(
    workload: Workload,
    assign: Callable[[Workload, Sequence[int]], FlowAssignment],
    *,
    check_assignment_bound: bool,
) -> SchedulerOutput:
    order = order_coflows(workload)
    assignment = assign(workload, order)
    schedule = schedule_all(workload, order, assignment)
    report = audit(workload, order, assignment, schedule, check_assignment_bound=check_assignment_bound)
    return SchedulerOutput(tuple(order), assignment, schedule, report)


def run(workload: Workload) -> SchedulerOutput:
    """Order, assign and schedule ``workload``; the result carries a full bound audit."""
    return run_pipeline(workload, assign_flows, check_assignment_bound=True)


def run_eps(workload: Workload) -> SchedulerOutput:
    if workload.config.mode is not Mode.EPS:
        raise ModelError("run_eps requires an EPS network config")
    return run(workload)
