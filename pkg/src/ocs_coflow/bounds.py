"""Completion-time lower bounds and the audit of the approximation inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .model import (
    TIME_TOL,
    DemandMatrix,
    EmptyCoflowError,
    FlowAssignment,
    Mode,
    ModelError,
    NetworkConfig,
    Schedule,
    Workload,
    row_col_loads,
)


def _require_nonzero(d: DemandMatrix) -> None:
    if d.is_zero():
        raise EmptyCoflowError("lower bound is undefined for the zero matrix")


def per_core_lb(d: DemandMatrix, rate: float, delta: float) -> float:
    """Largest per-port service time on one core: port load / rate + circuits * delta."""
    _require_nonzero(d)
    if not rate > 0:
        raise ModelError(f"rate must be positive, got {rate}")
    if delta < 0:
        raise ModelError(f"delta must be >= 0, got {delta}")
    loads = row_col_loads(d)
    row = loads.rows / rate + loads.row_counts * delta
    col = loads.cols / rate + loads.col_counts * delta
    return float(max(row.max(), col.max()))


def global_lb(d: DemandMatrix, config: NetworkConfig) -> float:
    """Assignment-independent lower bound on a coflow's completion time."""
    _require_nonzero(d)
    bound = row_col_loads(d).rho / config.total_rate
    if config.mode is Mode.OCS:
        bound += config.delta
    return bound


def relaxed_global_lb_floor(d: DemandMatrix, config: NetworkConfig, psi: float) -> float:
    _require_nonzero(d)
    loads = row_col_loads(d)
    if psi < max(config.k, loads.tau):
        raise ModelError(f"psi={psi} is below max(K, tau)={max(config.k, loads.tau)}")
    return (loads.rho / config.r_max + loads.tau * config.delta) / psi


def gamma_w(weights: Sequence[float]) -> float:
    """Weight concentration ``M * sum(w^2) / sum(w)^2``; 1 for equal weights, up to M."""
    w = np.asarray(weights, dtype=np.float64)
    if w.size == 0:
        raise ValueError("gamma_w needs at least one weight")
    if np.any(w <= 0):
        raise ValueError("weights must be positive")
    return w.size * math.fsum(w * w) / math.fsum(w) ** 2


def tau_max(workload: Workload) -> int:
    return max(row_col_loads(c.demand).tau for c in workload.coflows)


def psi(workload: Workload) -> int:
    return max(workload.config.k, tau_max(workload))


@dataclass(frozen=True)
class PrefixAggregates:
    """Running aggregates over the first m coflows of an order (index m-1)."""

    rho: Tuple[float, ...]
    tau: Tuple[int, ...]
    # max over cores of the per-core bound of the prefix matrix on that core
    core_lb_max: Tuple[float, ...]
    core_lb: Tuple[Tuple[float, ...], ...]


def prefix_aggregates(
    workload: Workload, order: Sequence[int], assignment: FlowAssignment
) -> PrefixAggregates:
    cfg = workload.config
    if sorted(order) != list(range(workload.m)):
        raise ModelError("order is not a permutation of coflow indices")
    if len(assignment.parts) != workload.m or any(len(p) != cfg.k for p in assignment.parts):
        raise ModelError("assignment does not match workload")
    n = cfg.n
    total = np.zeros((n, n))
    per_core = np.zeros((cfg.k, n, n))
    rho, tau, lb_max, lb = [], [], [], []
    for m in order:
        total += workload.coflows[m].demand.entries
        for k in range(cfg.k):
            per_core[k] += assignment.parts[m][k].entries
        loads = row_col_loads(DemandMatrix(total))
        rho.append(loads.rho)
        tau.append(loads.tau)
        core = tuple(
            per_core_lb(DemandMatrix(per_core[k]), cfg.rates[k], cfg.delta) if np.any(per_core[k] > 0) else 0.0
            for k in range(cfg.k)
        )
        lb.append(core)
        lb_max.append(max(core))
    return PrefixAggregates(tuple(rho), tuple(tau), tuple(lb_max), tuple(lb))


@dataclass(frozen=True)
class BoundAudit:
    """Lower bounds and the slack of every proven inequality for one schedule.

    Slacks are ``lhs - rhs``; an inequality holds when its slack is <= ``tol``.
    Ratios are ``lhs / rhs``.
    """

    global_lb: Tuple[float, ...]
    prefix: PrefixAggregates
    tau_max: int
    psi: int
    gamma_w: float
    weighted_cct: float
    weighted_lb: float
    lemma1_slack: float
    lemma2_slack: Optional[float]
    lemma3_slack: float
    theorem1_ratio: float
    theorem3_ratio: float
    eps_prefix_slack: Optional[float] = None
    theorem2_ratio: Optional[float] = None
    tol: float = TIME_TOL
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> List[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict:
        return {
            "global_lb": list(self.global_lb),
            "prefix_rho": list(self.prefix.rho),
            "prefix_tau": list(self.prefix.tau),
            "prefix_core_lb_max": list(self.prefix.core_lb_max),
            "tau_max": self.tau_max,
            "psi": self.psi,
            "gamma_w": self.gamma_w,
            "weighted_cct": self.weighted_cct,
            "weighted_lb": self.weighted_lb,
            "lemma1_slack": self.lemma1_slack,
            "lemma2_slack": self.lemma2_slack,
            "lemma3_slack": self.lemma3_slack,
            "theorem1_ratio": self.theorem1_ratio,
            "theorem3_ratio": self.theorem3_ratio,
            "eps_prefix_slack": self.eps_prefix_slack,
            "theorem2_ratio": self.theorem2_ratio,
            "checks": dict(self.checks),
        }


def audit(
    workload: Workload,
    order: Sequence[int],
    assignment: FlowAssignment,
    schedule: Schedule,
    *,
    check_assignment_bound: bool = True,
    tol: float = TIME_TOL,
) -> BoundAudit:
    """Evaluate every bound inequality on a finished schedule.

    ``check_assignment_bound`` is off for baselines whose assignment rule is not
    the bound-minimising one; the prefix bound for the assignment phase is then
    reported but not counted as a check.
    """
    cfg = workload.config
    cct_by_id = schedule.cct()
    missing = [c.id for c in workload.coflows if c.id not in cct_by_id]
    if missing:
        raise ModelError(f"schedule has no events for coflows {missing}")
    cct = np.array([cct_by_id[c.id] for c in workload.coflows])
    w = np.array(workload.weights)
    lbs = np.array([global_lb(c.demand, cfg) for c in workload.coflows])
    pre = prefix_aggregates(workload, order, assignment)
    t_max = tau_max(workload)
    ps = max(cfg.k, t_max)
    gw = gamma_w(w)
    weighted = math.fsum(float(x) for x in w * cct)
    weighted_lb = math.fsum(float(x) for x in w * lbs)
    m_count = workload.m
    spread = float(w.max() / w.min())

    lemma1 = float(np.max(lbs - cct))
    lemma2 = max(
        lb - (rho / cfg.r_max + tau * cfg.delta) for lb, rho, tau in zip(pre.core_lb_max, pre.rho, pre.tau)
    )
    lemma3 = max(cct[m] - 2 * lb for m, lb in zip(order, pre.core_lb_max))
    theorem1 = weighted / (2 * m_count * spread * ps * weighted_lb)
    theorem3 = weighted / (2 * ps * gw * weighted_lb)

    checks = {
        "lemma1": lemma1 <= tol,
        "lemma3": lemma3 <= tol,
        "theorem1": weighted <= 2 * m_count * spread * ps * weighted_lb + tol,
        "theorem3": weighted <= 2 * ps * gw * weighted_lb + tol,
    }
    if check_assignment_bound:
        checks["lemma2"] = lemma2 <= tol

    eps_prefix = theorem2 = None
    if cfg.mode is Mode.EPS:
        eps_prefix = max(cct[m] - 2 * rho / cfg.r_max for m, rho in zip(order, pre.rho))
        bound2 = 2 * m_count * cfg.k * spread * weighted_lb
        theorem2 = weighted / bound2
        checks["theorem2_prefix"] = eps_prefix <= tol
        checks["theorem2"] = weighted <= bound2 + tol

    return BoundAudit(
        global_lb=tuple(float(x) for x in lbs),
        prefix=pre,
        tau_max=t_max,
        psi=ps,
        gamma_w=gw,
        weighted_cct=weighted,
        weighted_lb=weighted_lb,
        lemma1_slack=lemma1,
        lemma2_slack=float(lemma2),
        lemma3_slack=float(lemma3),
        theorem1_ratio=theorem1,
        theorem3_ratio=theorem3,
        eps_prefix_slack=None if eps_prefix is None else float(eps_prefix),
        theorem2_ratio=theorem2,
        tol=tol,
        checks=checks,
    )
