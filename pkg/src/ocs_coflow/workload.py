"""Workload ingestion and generation.

Trace CSV format (UTF-8, LF, header required)::

    coflow_id,weight,src,dst,size

Ports are 1-based. Rows with the same (coflow_id, src, dst) are summed. All
rows of a coflow must carry the same weight.

All random draws go through ``numpy.random.Generator(Philox(seed))``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .model import CoflowSpec, DemandMatrix, EmptyCoflowError, ModelError, NetworkConfig, Workload

TRACE_HEADER = ("coflow_id", "weight", "src", "dst", "size")
NORMAL_FLOOR = 1e-6


class TraceError(ValueError):
    pass


class TraceFormatError(TraceError):
    pass


class TraceRangeError(TraceError):
    pass


class TraceWeightError(TraceError):
    pass


class EmptyTraceCoflowError(TraceError, EmptyCoflowError):
    pass


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


# -- weights -----------------------------------------------------------------


class WeightKind(str, enum.Enum):
    CONSTANT = "constant"
    UNIFORM = "uniform"
    NORMAL = "normal"


@dataclass(frozen=True)
class WeightModel:
    kind: WeightKind = WeightKind.CONSTANT
    value: float = 1.0
    lo: float = 1.0
    hi: float = 1.0
    mu: float = 1.0
    sigma: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", WeightKind(self.kind))
        if self.kind is WeightKind.CONSTANT and not self.value > 0:
            raise ValueError("constant weight must be > 0")
        if self.kind is WeightKind.UNIFORM and not (0 < self.lo <= self.hi):
            raise ValueError("uniform weights need 0 < lo <= hi")
        if self.kind is WeightKind.NORMAL and not (self.mu > 0 and self.sigma >= 0):
            raise ValueError("normal weights need mu > 0 and sigma >= 0")

    @classmethod
    def constant(cls, value: float = 1.0) -> "WeightModel":
        return cls(WeightKind.CONSTANT, value=value)

    @classmethod
    def uniform(cls, lo: float, hi: float) -> "WeightModel":
        return cls(WeightKind.UNIFORM, lo=lo, hi=hi)

    @classmethod
    def normal(cls, mu: float, sigma: float) -> "WeightModel":
        return cls(WeightKind.NORMAL, mu=mu, sigma=sigma)

    def to_dict(self) -> dict:
        if self.kind is WeightKind.CONSTANT:
            return {"model": "constant", "value": self.value}
        if self.kind is WeightKind.UNIFORM:
            return {"model": "uniform", "lo": self.lo, "hi": self.hi}
        return {"model": "normal", "mu": self.mu, "sigma": self.sigma}


def sample_weights(model: WeightModel, m: int, seed: int) -> List[float]:
    """Draw ``m`` strictly positive weights.

    Normal draws are truncated from below at ``NORMAL_FLOOR * mu``.
    """
    if model.kind is WeightKind.CONSTANT:
        return [float(model.value)] * m
    rng = rng_for(seed)
    if model.kind is WeightKind.UNIFORM:
        w = rng.uniform(model.lo, model.hi, size=m)
    else:
        w = np.maximum(rng.normal(model.mu, model.sigma, size=m), NORMAL_FLOOR * model.mu)
    return [float(x) for x in w]


# -- receiver-level records ----------------------------------------------------


@dataclass(frozen=True)
class ReceiverRecord:
    coflow_id: int
    receiver: int
    bytes: float
    senders: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "senders", tuple(self.senders))
        if not self.senders:
            raise TraceError(f"coflow {self.coflow_id} receiver {self.receiver}: empty sender list")
        if not self.bytes > 0:
            raise TraceError(f"coflow {self.coflow_id} receiver {self.receiver}: bytes must be > 0")


def split_receiver(record: ReceiverRecord, eps: float, rng: np.random.Generator) -> Dict[int, float]:
    """Share of the receiver's bytes per sender; shares sum to the receiver total."""
    u = rng.uniform(1.0 - eps, 1.0 + eps, size=len(record.senders)) if eps > 0 else np.ones(len(record.senders))
    shares = record.bytes * u / u.sum()
    # pin the last share so the sum is exact in floating point
    shares[-1] = record.bytes - shares[:-1].sum()
    out: Dict[int, float] = {}
    for s, b in zip(record.senders, shares):
        out[s] = out.get(s, 0.0) + float(b)
    return out


def expand_receivers(
    records: Iterable[ReceiverRecord], n: int, eps: float = 0.1, seed: int = 0
) -> "OrderedDict[int, DemandMatrix]":
    """Convert receiver-level records into one demand matrix per coflow.

    Each receiver's bytes are split over its senders in proportion to draws
    from U[1 - eps, 1 + eps]. Ports in records are 0-based.
    """
    if not 0 <= eps < 1:
        raise ValueError(f"eps must be in [0, 1), got {eps}")
    rng = rng_for(seed)
    mats: "OrderedDict[int, np.ndarray]" = OrderedDict()
    for rec in records:
        a = mats.setdefault(rec.coflow_id, np.zeros((n, n)))
        for sender, b in split_receiver(rec, eps, rng).items():
            a[sender, rec.receiver] += b
    return OrderedDict((cid, DemandMatrix(a)) for cid, a in mats.items())


# -- trace files -------------------------------------------------------------------


def parse_trace(text: str, n: int, source: str = "<trace>") -> List[CoflowSpec]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise TraceFormatError(f"{source}: empty file") from None
    if tuple(h.strip() for h in header) != TRACE_HEADER:
        raise TraceFormatError(f"{source}:1: header must be {','.join(TRACE_HEADER)}")
    flows: "OrderedDict[int, Dict[Tuple[int, int], float]]" = OrderedDict()
    weights: Dict[int, float] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not x.strip() for x in row):
            continue
        if len(row) != 5:
            raise TraceFormatError(f"{source}:{lineno}: expected 5 fields, got {len(row)}")
        try:
            cid, src, dst = int(row[0]), int(row[2]), int(row[3])
            weight, size = float(row[1]), float(row[4])
        except ValueError as exc:
            raise TraceFormatError(f"{source}:{lineno}: {exc}") from None
        if not (math.isfinite(size) and size >= 0):
            raise TraceFormatError(f"{source}:{lineno}: size must be a finite number >= 0")
        if not (math.isfinite(weight) and weight > 0):
            raise TraceWeightError(f"{source}:{lineno}: weight must be > 0")
        for name, port in (("src", src), ("dst", dst)):
            if not 1 <= port <= n:
                raise TraceRangeError(f"{source}:{lineno}: {name}={port} outside 1..{n}")
        if weights.setdefault(cid, weight) != weight:
            raise TraceWeightError(
                f"{source}:{lineno}: coflow {cid} weight {weight} differs from earlier {weights[cid]}"
            )
        cell = flows.setdefault(cid, {})
        key = (src - 1, dst - 1)
        cell[key] = cell.get(key, 0.0) + size
    coflows = []
    for cid, cells in flows.items():
        d = DemandMatrix.from_flows(n, cells)
        if d.is_zero():
            raise EmptyTraceCoflowError(f"{source}: coflow {cid} has no positive demand")
        coflows.append(CoflowSpec(cid, weights[cid], d))
    return coflows


def load_trace(path: Union[str, Path], config: NetworkConfig) -> Workload:
    path = Path(path)
    coflows = parse_trace(path.read_text(encoding="utf-8"), config.n, source=str(path))
    return Workload(tuple(coflows), config)


def format_trace(coflows: Sequence[CoflowSpec]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_HEADER)
    for c in coflows:
        for i, j, size in c.demand.flows():
            w.writerow([c.id, repr(float(c.weight)), i + 1, j + 1, repr(size)])
    return buf.getvalue()


def write_trace(path: Union[str, Path], coflows: Sequence[CoflowSpec]) -> None:
    Path(path).write_text(format_trace(coflows), encoding="utf-8", newline="\n")


# -- synthetic workloads ---------------------------------------------------------


@dataclass(frozen=True)
class SynthParams:
    """Heavy-tailed stand-in for a MapReduce coflow trace.

    Each coflow picks its mapper and reducer counts independently and uniformly
    from ``[min_width, max_width]`` (capped at ``n``); every reducer receives
    ``size_scale * (1 + Pareto(size_shape))`` units spread over the mappers.
    """

    size_shape: float = 1.2
    size_scale: float = 10.0
    min_width: int = 1
    max_width: int = 4
    eps: float = 0.1

    def __post_init__(self) -> None:
        if not (self.size_shape > 0 and self.size_scale > 0):
            raise ValueError("synthetic workload parameters must be positive")
        if not 1 <= self.min_width <= self.max_width:
            raise ValueError("need 1 <= min_width <= max_width")


def _width(rng: np.random.Generator, params: SynthParams, n: int) -> int:
    return int(rng.integers(min(n, params.min_width), min(n, params.max_width) + 1))


def synth_receivers(n: int, m: int, params: SynthParams, rng: np.random.Generator) -> List[ReceiverRecord]:
    records = []
    for cid in range(1, m + 1):
        senders = rng.choice(n, size=_width(rng, params, n), replace=False)
        receivers = rng.choice(n, size=_width(rng, params, n), replace=False)
        for r in receivers:
            size = params.size_scale * (1.0 + rng.pareto(params.size_shape))
            records.append(ReceiverRecord(cid, int(r), float(size), tuple(int(s) for s in senders)))
    return records


def synth_workload(
    config: NetworkConfig,
    m: int,
    seed: int,
    params: SynthParams = SynthParams(),
    weights: WeightModel = WeightModel.constant(),
) -> Workload:
    """Reproducible synthetic workload of ``m`` nonempty coflows."""
    if m < 1:
        raise ValueError("m must be >= 1")
    rng = rng_for(seed)
    records = synth_receivers(config.n, m, params, rng)
    split_seed = int(rng.integers(2**63))
    weight_seed = int(rng.integers(2**63))
    mats = expand_receivers(records, config.n, params.eps, split_seed)
    w = sample_weights(weights, m, weight_seed)
    coflows = tuple(CoflowSpec(cid, w[idx], d) for idx, (cid, d) in enumerate(mats.items()))
    return Workload(coflows, config)


def random_workload(
    rng: np.random.Generator,
    config: NetworkConfig,
    m: int,
    *,
    max_flows: Optional[int] = None,
    weights: WeightModel = WeightModel.constant(),
    integer_sizes: bool = False,
) -> Workload:
    """Unstructured random instance for property suites: uniform support, log-uniform sizes."""
    n = config.n
    cap = n * n if max_flows is None else min(max_flows, n * n)
    coflows = []
    w = sample_weights(weights, m, int(rng.integers(2**63)))
    for idx in range(m):
        count = int(rng.integers(1, cap + 1))
        cells = rng.choice(n * n, size=count, replace=False)
        if integer_sizes:
            sizes = rng.integers(1, 21, size=count).astype(float)
        else:
            sizes = np.exp(rng.uniform(0.0, math.log(1000.0), size=count))
        a = np.zeros((n, n))
        a[cells // n, cells % n] = sizes
        coflows.append(CoflowSpec(idx + 1, w[idx], DemandMatrix(a)))
    return Workload(tuple(coflows), config)
