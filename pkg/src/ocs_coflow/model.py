"""Domain types for multi-core OCS coflow scheduling.

Ports are 0-based everywhere in this module; file formats and the CLI use
1-based ports and convert at the boundary.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np

TIME_TOL = 1e-9


class ModelError(ValueError):
    """Malformed domain object."""


class EmptyCoflowError(ModelError):
    """A coflow (or a bound argument) has an all-zero demand matrix."""


class Mode(str, enum.Enum):
    OCS = "OCS"
    EPS = "EPS"


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DemandMatrix:
    """Square matrix of nonnegative flow sizes, ``entries[i, j]`` from ingress i to egress j."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ModelError(f"demand matrix must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ModelError("demand matrix has non-finite entries")
        if np.any(a < 0):
            raise ModelError("demand matrix has negative entries")
        object.__setattr__(self, "entries", _readonly(a))

    @classmethod
    def zeros(cls, n: int) -> "DemandMatrix":
        return cls(np.zeros((n, n)))

    @classmethod
    def from_flows(cls, n: int, flows: Mapping[Tuple[int, int], float]) -> "DemandMatrix":
        a = np.zeros((n, n))
        for (i, j), size in flows.items():
            a[i, j] += size
        return cls(a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def is_zero(self) -> bool:
        return not np.any(self.entries > 0)

    def flows(self) -> List[Tuple[int, int, float]]:
        """Nonzero entries as ``(i, j, size)`` in row-major order."""
        ii, jj = np.nonzero(self.entries > 0)
        return [(int(i), int(j), float(self.entries[i, j])) for i, j in zip(ii, jj)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DemandMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __add__(self, other: "DemandMatrix") -> "DemandMatrix":
        if other.n != self.n:
            raise ModelError("dimension mismatch")
        return DemandMatrix(self.entries + other.entries)


@dataclass(frozen=True)
class Loads:
    rows: np.ndarray
    cols: np.ndarray
    row_counts: np.ndarray
    col_counts: np.ndarray

    @property
    def rho(self) -> float:
        """Largest port load (row or column sum)."""
        return float(max(self.rows.max(initial=0.0), self.cols.max(initial=0.0)))

    @property
    def tau(self) -> int:
        """Largest number of nonzero entries in any row or column."""
        return int(max(self.row_counts.max(initial=0), self.col_counts.max(initial=0)))


def row_col_loads(d: DemandMatrix) -> Loads:
    a = d.entries
    nz = a > 0
    return Loads(
        rows=a.sum(axis=1),
        cols=a.sum(axis=0),
        row_counts=nz.sum(axis=1),
        col_counts=nz.sum(axis=0),
    )


def add_entry(d: DemandMatrix, i: int, j: int, amount: float) -> DemandMatrix:
    """Return ``d`` with ``amount`` added to entry (i, j)."""
    if not amount > 0:
        raise ModelError(f"amount must be positive, got {amount}")
    if not (0 <= i < d.n and 0 <= j < d.n):
        raise ModelError(f"index ({i}, {j}) out of range for n={d.n}")
    a = d.entries.copy()
    a[i, j] += amount
    return DemandMatrix(a)


@dataclass(frozen=True)
class NetworkConfig:
    n: int
    rates: Tuple[float, ...]
    delta: float = 0.0
    mode: Mode = Mode.OCS

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))
        if self.n < 1:
            raise ModelError(f"port count must be >= 1, got {self.n}")
        if not self.rates:
            raise ModelError("rates must be non-empty")
        if any(not (r > 0 and np.isfinite(r)) for r in self.rates):
            raise ModelError(f"rates must be strictly positive, got {self.rates}")
        if not (self.delta >= 0 and np.isfinite(self.delta)):
            raise ModelError(f"delta must be >= 0, got {self.delta}")
        if self.mode is Mode.EPS and self.delta != 0:
            raise ModelError("EPS mode requires delta = 0")
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def k(self) -> int:
        return len(self.rates)

    @property
    def total_rate(self) -> float:
        return float(sum(self.rates))

    @property
    def r_max(self) -> float:
        return max(self.rates)


@dataclass(frozen=True)
class CoflowSpec:
    id: int
    weight: float
    demand: DemandMatrix

    def __post_init__(self) -> None:
        if not (self.weight > 0 and np.isfinite(self.weight)):
            raise ModelError(f"coflow {self.id}: weight must be > 0, got {self.weight}")
        if self.demand.is_zero():
            raise EmptyCoflowError(f"coflow {self.id} has no positive demand")


@dataclass(frozen=True)
class Workload:
    coflows: Tuple[CoflowSpec, ...]
    config: NetworkConfig

    def __post_init__(self) -> None:
        object.__setattr__(self, "coflows", tuple(self.coflows))
        ids = [c.id for c in self.coflows]
        if len(set(ids)) != len(ids):
            raise ModelError("coflow ids must be unique")
        for c in self.coflows:
            if c.demand.n != self.config.n:
                raise ModelError(
                    f"coflow {c.id}: demand is {c.demand.n}x{c.demand.n}, network has n={self.config.n}"
                )

    @property
    def m(self) -> int:
        return len(self.coflows)

    @property
    def weights(self) -> List[float]:
        return [c.weight for c in self.coflows]

    def with_config(self, config: NetworkConfig) -> "Workload":
        return Workload(self.coflows, config)


@dataclass(frozen=True)
class FlowAssignment:
    """Per-coflow, per-core demand: ``parts[m][k]`` for coflow index m (workload order)."""

    parts: Tuple[Tuple[DemandMatrix, ...], ...]
    # core of each flow, keyed by (coflow index, i, j)
    core_of: Mapping[Tuple[int, int, int], int] = field(default_factory=dict)

    @classmethod
    def from_cores(cls, workload: Workload, core_of: Mapping[Tuple[int, int, int], int]) -> "FlowAssignment":
        n, k = workload.config.n, workload.config.k
        parts = []
        for m, c in enumerate(workload.coflows):
            mats = [np.zeros((n, n)) for _ in range(k)]
            for i, j, size in c.demand.flows():
                mats[core_of[(m, i, j)]][i, j] = size
            parts.append(tuple(DemandMatrix(a) for a in mats))
        return cls(tuple(parts), dict(core_of))

    def check(self, workload: Workload) -> List[str]:
        errors = []
        if len(self.parts) != workload.m:
            return [f"assignment covers {len(self.parts)} coflows, workload has {workload.m}"]
        for m, c in enumerate(workload.coflows):
            stack = np.stack([p.entries for p in self.parts[m]])
            if not np.array_equal(stack.sum(axis=0), c.demand.entries):
                errors.append(f"coflow {c.id}: per-core parts do not sum to demand")
            if np.any((stack > 0).sum(axis=0) > 1):
                errors.append(f"coflow {c.id}: a flow is split across cores")
        return errors


@dataclass(frozen=True)
class CircuitEvent:
    coflow_id: int
    core: int
    ingress: int
    egress: int
    establish: float
    start: float
    finish: float
    size: float


@dataclass(frozen=True)
class Schedule:
    events: Tuple[CircuitEvent, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))

    def cct(self) -> Dict[int, float]:
        """Completion time of each coflow that has at least one event."""
        out: Dict[int, float] = {}
        for e in self.events:
            if e.finish > out.get(e.coflow_id, -np.inf):
                out[e.coflow_id] = e.finish
        return out

    def core_cct(self) -> Dict[Tuple[int, int], float]:
        out: Dict[Tuple[int, int], float] = {}
        for e in self.events:
            key = (e.coflow_id, e.core)
            out[key] = max(out.get(key, 0.0), e.finish)
        return out

    def by_core(self) -> Dict[int, List[CircuitEvent]]:
        out: Dict[int, List[CircuitEvent]] = defaultdict(list)
        for e in self.events:
            out[e.core].append(e)
        return out


# -- verification -----------------------------------------------------------


def _covered(intervals: Iterable[Tuple[float, float]], until: float, tol: float) -> bool:
    """True if the union of half-open intervals covers [0, until)."""
    reach = 0.0
    for lo, hi in sorted(intervals):
        if lo > reach + tol:
            break
        reach = max(reach, hi)
        if reach >= until - tol:
            return True
    return reach >= until - tol


def verify_schedule(
    schedule: Schedule,
    assignment: FlowAssignment,
    workload: Workload,
    tol: float = TIME_TOL,
) -> List[str]:
    """Return every feasibility violation found; an empty list means the schedule is legal.

    Messages number cores and ports from 1.

    Checks coverage of the assignment, port exclusivity per core, the start and
    finish arithmetic, and that no event could have been established earlier
    (at every instant before it, one of its two ports was occupied).
    """
    cfg = workload.config
    if len(assignment.parts) != workload.m or any(len(p) != cfg.k for p in assignment.parts):
        raise ModelError("assignment does not match workload/config dimensions")

    violations = [f"assignment: {msg}" for msg in assignment.check(workload)]
    index_of = {c.id: m for m, c in enumerate(workload.coflows)}

    expected: Dict[Tuple[int, int, int, int], float] = {}
    for m, per_core in enumerate(assignment.parts):
        for k, d in enumerate(per_core):
            for i, j, size in d.flows():
                expected[(m, k, i, j)] = size

    seen: Dict[Tuple[int, int, int, int], int] = defaultdict(int)
    for e in schedule.events:
        where = f"coflow {e.coflow_id} core {e.core + 1} ({e.ingress + 1},{e.egress + 1})"
        if e.coflow_id not in index_of:
            violations.append(f"coverage: {where} belongs to no coflow")
            continue
        if not (0 <= e.core < cfg.k and 0 <= e.ingress < cfg.n and 0 <= e.egress < cfg.n):
            violations.append(f"range: {where} out of range")
            continue
        key = (index_of[e.coflow_id], e.core, e.ingress, e.egress)
        seen[key] += 1
        if key not in expected:
            violations.append(f"coverage: {where} has no assigned demand")
        elif abs(expected[key] - e.size) > tol:
            violations.append(f"coverage: {where} size {e.size} != assigned {expected[key]}")
        if e.size <= 0:
            violations.append(f"timing: {where} has non-positive size")
        if e.establish < -tol:
            violations.append(f"timing: {where} establishes before 0")
        if abs((e.start - e.establish) - cfg.delta) > tol:
            violations.append(f"timing: {where} start - establish != delta")
        rate = cfg.rates[e.core]
        if abs(e.finish - (e.start + e.size / rate)) > tol:
            violations.append(f"timing: {where} finish != start + size/rate")
    for key in expected:
        if seen.get(key, 0) != 1:
            m, k, i, j = key
            violations.append(
                f"coverage: coflow {workload.coflows[m].id} core {k + 1} ({i + 1},{j + 1}) "
                f"has {seen.get(key, 0)} events"
            )

    for k, events in schedule.by_core().items():
        ports: Dict[Tuple[str, int], List[CircuitEvent]] = defaultdict(list)
        for e in events:
            ports[("ingress", e.ingress)].append(e)
            ports[("egress", e.egress)].append(e)
        for (side, port), evs in ports.items():
            evs = sorted(evs, key=lambda e: (e.establish, e.finish))
            for a, b in zip(evs, evs[1:]):
                if b.establish < a.finish - tol:
                    violations.append(
                        f"exclusivity: core {k + 1} {side} {port + 1}: coflow {a.coflow_id} "
                        f"[{a.establish}, {a.finish}) overlaps coflow {b.coflow_id} "
                        f"[{b.establish}, {b.finish})"
                    )

        for e in events:
            if e.establish <= tol:
                continue
            busy = [
                (o.establish, o.finish)
                for o in ports[("ingress", e.ingress)] + ports[("egress", e.egress)]
                if o is not e and o.establish <= e.establish + tol
            ]
            if not _covered(busy, e.establish, tol):
                violations.append(
                    f"greedy: coflow {e.coflow_id} core {k + 1} ({e.ingress + 1},{e.egress + 1}) "
                    f"could have been established before {e.establish}"
                )
    return violations


def flows_in_priority_order(d: DemandMatrix) -> List[Tuple[int, int, float]]:
    """Nonzero flows sorted by non-increasing size, ties by (i, j)."""
    return sorted(d.flows(), key=lambda f: (-f[2], f[0], f[1]))
