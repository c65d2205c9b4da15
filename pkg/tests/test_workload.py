import math

import numpy as np
import pytest

from ocs_coflow.bounds import gamma_w
from ocs_coflow.model import EmptyCoflowError, NetworkConfig
from ocs_coflow.workload import (
    EmptyTraceCoflowError,
    ReceiverRecord,
    SynthParams,
    TraceError,
    TraceFormatError,
    TraceRangeError,
    TraceWeightError,
    WeightModel,
    expand_receivers,
    format_trace,
    load_trace,
    parse_trace,
    sample_weights,
    synth_workload,
    write_trace,
)

HEADER = "coflow_id,weight,src,dst,size\n"


def test_uniform_split_without_perturbation():
    mats = expand_receivers([ReceiverRecord(1, 0, 100.0, (0, 1))], n=2, eps=0.0)
    assert mats[1].entries[:, 0].tolist() == [50.0, 50.0]


def test_split_conserves_receiver_totals():
    rng = np.random.default_rng(0)
    records = []
    for cid in range(20):
        for r in range(3):
            senders = tuple(int(s) for s in rng.choice(8, size=int(rng.integers(1, 8)), replace=False))
            records.append(ReceiverRecord(cid, r, float(rng.uniform(1, 1e6)), senders))
    mats = expand_receivers(records, n=8, eps=0.3, seed=4)
    for rec in records:
        assert math.isclose(mats[rec.coflow_id].entries[:, rec.receiver].sum(), rec.bytes, rel_tol=1e-12)


def test_split_shares_stay_within_perturbation_interval():
    for seed in range(200):
        m = expand_receivers([ReceiverRecord(1, 0, 100.0, (0, 1))], n=2, eps=0.1, seed=seed)[1]
        # u / (u + u') with u, u' in [0.9, 1.1] lies in [0.45, 0.55]
        assert 45.0 - 1e-9 <= m.entries[0, 0] <= 55.0 + 1e-9
        assert m.entries[0, 0] + m.entries[1, 0] == pytest.approx(100.0, abs=1e-12)


def test_receiver_record_validation():
    with pytest.raises(TraceError):
        ReceiverRecord(1, 0, 10.0, ())
    with pytest.raises(ValueError):
        expand_receivers([], n=2, eps=1.0)


def test_parse_simple_trace():
    coflows = parse_trace(HEADER + "1,1.0,1,1,10\n1,1.0,2,2,5\n", n=2)
    assert len(coflows) == 1
    assert coflows[0].demand.entries.tolist() == [[10, 0], [0, 5]]


@pytest.mark.parametrize(
    "body,error",
    [
        ("1,1.0,0,1,10\n", TraceRangeError),
        ("1,1.0,1,3,10\n", TraceRangeError),
        ("1,1.0,1,1,10\n1,2.0,2,2,5\n", TraceWeightError),
        ("1,1.0,1,1,0\n", EmptyTraceCoflowError),
        ("1,1.0,1,1\n", TraceFormatError),
        ("1,abc,1,1,3\n", TraceFormatError),
        ("1,1.0,1,1,-3\n", TraceFormatError),
    ],
)
def test_parse_errors(body, error):
    with pytest.raises(error):
        parse_trace(HEADER + body, n=2)


def test_empty_coflow_error_is_model_error_too():
    with pytest.raises(EmptyCoflowError):
        parse_trace(HEADER + "4,1.0,1,1,0\n", n=2)


def test_bad_header():
    with pytest.raises(TraceFormatError):
        parse_trace("a,b,c,d,e\n1,1,1,1,1\n", n=2)


def test_duplicates_are_summed_and_round_trip(tmp_path):
    coflows = parse_trace(HEADER + "3,2.0,1,2,4\n3,2.0,1,2,6\n5,1.0,2,1,1.5\n", n=2)
    assert coflows[0].demand.entries[0, 1] == 10.0
    path = tmp_path / "t.csv"
    write_trace(path, coflows)
    back = load_trace(path, NetworkConfig(2, (1.0,), 1.0))
    assert [c.id for c in back.coflows] == [3, 5]
    assert all(a.demand == b.demand and a.weight == b.weight for a, b in zip(coflows, back.coflows))
    assert "\r" not in path.read_text()


def test_synthetic_workload_is_reproducible():
    cfg = NetworkConfig(16, (10.0, 20.0, 30.0), 8.0)
    a = synth_workload(cfg, 40, seed=3)
    b = synth_workload(cfg, 40, seed=3)
    assert format_trace(a.coflows) == format_trace(b.coflows)
    assert format_trace(a.coflows) != format_trace(synth_workload(cfg, 40, seed=4).coflows)


def test_synthetic_workload_shape():
    cfg = NetworkConfig(8, (1.0,), 0.0)
    w = synth_workload(cfg, 25, seed=1, params=SynthParams(max_width=3), weights=WeightModel.uniform(1, 2))
    assert w.m == 25
    for c in w.coflows:
        assert c.demand.entries.shape == (8, 8)
        assert np.all(c.demand.entries >= 0) and not c.demand.is_zero()
        assert np.count_nonzero(c.demand.entries) <= 9
        assert 1 <= c.weight <= 2


def test_constant_weights():
    assert sample_weights(WeightModel.constant(1.0), 5, seed=0) == [1.0] * 5


def test_normal_weights_positive_and_reproducible():
    w = sample_weights(WeightModel.normal(10, 2), 1000, seed=3)
    assert min(w) > 0
    assert w == sample_weights(WeightModel.normal(10, 2), 1000, seed=3)
    heavy = sample_weights(WeightModel.normal(1, 5), 1000, seed=3)
    assert min(heavy) == pytest.approx(1e-6)


def test_normal_weight_concentration_limit():
    g = gamma_w(sample_weights(WeightModel.normal(10, 2), 10_000, seed=2024))
    assert abs(g - 1.04) / 1.04 < 0.05


def test_weight_model_validation():
    with pytest.raises(ValueError):
        WeightModel.uniform(0, 1)
    with pytest.raises(ValueError):
        WeightModel.normal(-1, 1)
    with pytest.raises(ValueError):
        WeightModel.constant(0)
