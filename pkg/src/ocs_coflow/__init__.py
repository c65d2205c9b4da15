"""Coflow scheduling and simulation for multi-core optical circuit switches."""

from .baselines import BaselineKind, assign_rand, assign_rho, run_baseline
from .bounds import BoundAudit, gamma_w, global_lb, per_core_lb, prefix_aggregates, relaxed_global_lb_floor
from .model import (
    CircuitEvent,
    CoflowSpec,
    DemandMatrix,
    EmptyCoflowError,
    FlowAssignment,
    Mode,
    ModelError,
    NetworkConfig,
    Schedule,
    Workload,
    add_entry,
    row_col_loads,
    verify_schedule,
)
from .scheduler import SchedulerOutput, assign_flows, order_coflows, run, run_eps, schedule_core

__version__ = "0.1.0"
