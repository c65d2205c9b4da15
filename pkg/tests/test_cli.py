import csv
import json

import pytest

from ocs_coflow.cli import CSV_COLUMNS, main, parse_config, ConfigError
from ocs_coflow.model import NetworkConfig
from ocs_coflow.workload import SynthParams, format_trace, synth_workload

LEMMA3_TRACE = "coflow_id,weight,src,dst,size\n1,10.0,2,1,10\n1,10.0,1,1,1\n2,1.0,1,2,100\n"


def write_config(path, **fields):
    path.write_text(json.dumps(fields, indent=2))
    return str(path)


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def small_config(tmp_path, **extra):
    fields = {"n": 6, "rates": [1, 2], "delta": 1, "workload": {"synthetic": {"m": 8}}, "seeds": [0, 1]}
    fields.update(extra)
    return write_config(tmp_path / "cfg.json", **fields)


def test_run_writes_one_row_per_algorithm_and_seed(tmp_path):
    out = tmp_path / "out"
    assert main(["run", "--config", small_config(tmp_path), "--out", str(out)]) == 0
    rows = read_rows(out / "results.csv")
    assert (out / "results.csv").read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    assert [(r["algorithm"], r["seed"]) for r in rows] == [
        ("ours", "0"), ("rho", "0"), ("rand", "0"), ("ours", "1"), ("rho", "1"), ("rand", "1")
    ]
    assert all(r["norm_w"] == "1.0" for r in rows if r["algorithm"] == "ours")
    assert {r["K"] for r in rows} == {"2"} and {r["M"] for r in rows} == {"8"}


def test_sidecar_carries_audit_and_metadata(tmp_path):
    out = tmp_path / "out"
    main(["run", "--config", small_config(tmp_path), "--out", str(out)])
    side = json.loads((out / "results.json").read_text())
    meta = side["metadata"]
    assert meta["percentile_method"] == "nearest-rank"
    assert "Philox" in meta["rng"] and meta["generated_at"]
    assert len(side["runs"]) == 6
    for run in side["runs"]:
        assert (out / run["schedule"]).exists() and (out / run["workload"]).exists()
        checks = run["audit"]["checks"]
        assert checks["lemma1"] and checks["theorem1"]
        if run["algorithm"] == "ours":
            assert checks["lemma2"]


def test_delta_sweep_produces_one_row_per_point(tmp_path):
    cfg = small_config(tmp_path, seeds=[3], sweep={"axis": "delta", "values": [2, 4, 6, 8, 10, 12]})
    out = tmp_path / "out"
    main(["run", "--config", cfg, "--out", str(out)])
    rows = read_rows(out / "results.csv")
    for algo in ("ours", "rho", "rand"):
        assert [r["delta"] for r in rows if r["algorithm"] == algo] == ["2.0", "4.0", "6.0", "8.0", "10.0", "12.0"]


def test_baseline_and_seed_overrides(tmp_path):
    out = tmp_path / "out"
    main(["run", "--config", small_config(tmp_path), "--seed", "7", "--baseline", "rand", "--out", str(out)])
    assert [(r["algorithm"], r["seed"]) for r in read_rows(out / "results.csv")] == [("ours", "7"), ("rand", "7")]


def _strip_runtime(text):
    return [line.rsplit(",", 1)[0] for line in text.splitlines()]


def test_report_is_deterministic_across_worker_counts(tmp_path, monkeypatch):
    cfg = small_config(tmp_path, seeds=[0, 1, 2], sweep={"axis": "m", "values": [3, 9]})
    texts = []
    for threads in ("1", "3", "1"):
        monkeypatch.setenv("COFLOW_SIM_THREADS", threads)
        out = tmp_path / f"out{len(texts)}"
        main(["run", "--config", cfg, "--out", str(out)])
        texts.append((out / "results.csv").read_text())
    assert _strip_runtime(texts[0]) == _strip_runtime(texts[1]) == _strip_runtime(texts[2])


def test_bad_thread_setting(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("COFLOW_SIM_THREADS", "-2")
    assert main(["run", "--config", small_config(tmp_path), "--out", str(tmp_path / "o")]) == 2
    assert "COFLOW_SIM_THREADS" in capsys.readouterr().err


def test_eps_with_delay_is_rejected_with_location(tmp_path, capsys):
    cfg = write_config(tmp_path / "eps.json", mode="EPS", n=4, delta=3)
    assert main(["run", "--config", cfg]) == 2
    err = capsys.readouterr().err
    assert "eps.json:4: field 'delta'" in err


def test_schema_errors_report_line_and_field():
    text = '{\n  "n": 4,\n  "workload": {\n    "synthetic": {"m": 0}\n  },\n  "seeds": [-1]\n}'
    with pytest.raises(ConfigError) as exc:
        parse_config(text, "c.json")
    msg = str(exc.value)
    assert "c.json:4: field 'workload.synthetic.m'" in msg
    assert "c.json:6: field 'seeds.0'" in msg


@pytest.mark.parametrize(
    "text,needle",
    [
        ('{"n": 4,\n "bogus": 1}', "Additional properties"),
        ('{"weights": {"model": "normal", "mu": 1}}', "needs ['sigma']"),
        ('{"workload": {"trace": "t.csv"}, "sweep": {"axis": "m", "values": [3]}}', "fixed number of coflows"),
        ('{"sweep": {"axis": "n", "values": [2.5]}}', "positive integers"),
        ('{"n": 4,\n "rates": [1, 2\n}', "invalid JSON"),
    ],
)
def test_config_rejections(text, needle):
    with pytest.raises(ConfigError) as exc:
        parse_config(text, "c.json")
    assert needle in str(exc.value)


def test_verify_accepts_own_output_and_flags_tampering(tmp_path, capsys):
    trace = tmp_path / "t.csv"
    trace.write_text("coflow_id,weight,src,dst,size\n1,1.0,1,1,4\n1,1.0,2,2,6\n2,2.0,1,2,3\n")
    cfg = write_config(tmp_path / "c.json", n=2, rates=[1, 2], delta=1, workload={"trace": "t.csv"}, seeds=[0])
    out = tmp_path / "out"
    main(["run", "--config", cfg, "--out", str(out)])
    sched = out / "schedules" / "p0_s0_ours.json"
    capsys.readouterr()
    assert main(["verify", str(trace), str(sched)]) == 0

    doc = json.loads(sched.read_text())
    doc["events"][0]["finish"] += 0.5
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["verify", str(trace), str(bad)]) == 1
    assert "timing:" in capsys.readouterr().out


def test_verify_reports_failed_bound_audit(tmp_path, capsys):
    (tmp_path / "t.csv").write_text(LEMMA3_TRACE)
    cfg = write_config(tmp_path / "c.json", n=2, rates=[1], delta=0, workload={"trace": "t.csv"}, algorithms=["ours"])
    out = tmp_path / "out"
    main(["run", "--config", cfg, "--out", str(out)])
    capsys.readouterr()
    assert main(["verify", str(tmp_path / "t.csv"), str(out / "schedules" / "p0_s0_ours.json")]) == 1
    assert "audit: lemma3 bound violated" in capsys.readouterr().out


def test_verify_unreadable_schedule(tmp_path, capsys):
    (tmp_path / "t.csv").write_text(LEMMA3_TRACE)
    (tmp_path / "s.json").write_text("{}")
    assert main(["verify", str(tmp_path / "t.csv"), str(tmp_path / "s.json")]) == 2
    assert "cannot read schedule" in capsys.readouterr().err


def test_oracle_singleton_ratio_is_one(tmp_path, capsys):
    (tmp_path / "t.csv").write_text("coflow_id,weight,src,dst,size\n1,1.0,1,2,5\n")
    cfg = write_config(tmp_path / "c.json", n=2, rates=[1, 3], delta=2, workload={"trace": "t.csv"})
    assert main(["oracle", "--config", cfg, "--out", str(tmp_path / "o")]) == 0
    row = read_rows(tmp_path / "o" / "oracle.csv")[0]
    assert row["algorithm_ratio"] == "1.0"


def test_oracle_batch_ratios_at_least_one(tmp_path, capsys):
    cfg = write_config(
        tmp_path / "c.json",
        n=3,
        rates=[1, 2, 3],
        delta=1,
        workload={"random": {"m": 3, "max_flows": 2, "integer_sizes": True}},
        seeds=list(range(10)),
    )
    assert main(["oracle", "--config", cfg]) == 0
    out = capsys.readouterr().out
    rows = list(csv.DictReader(out.splitlines()[:-1]))
    assert len(rows) == 10
    assert all(float(r["algorithm_ratio"]) >= 1.0 for r in rows)
    assert "max algorithm/oracle" in out.splitlines()[-1]


def test_oracle_refuses_large_instances(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.json", n=8, workload={"synthetic": {"m": 10}})
    assert main(["oracle", "--config", cfg]) == 2
    assert "error:" in capsys.readouterr().err


def test_gen_workload_matches_generator(tmp_path):
    cfg = write_config(tmp_path / "c.json", n=8, rates=[1], delta=0, workload={"synthetic": {"m": 12, "max_width": 3}})
    assert main(["gen-workload", "--config", cfg, "--seed", "5", "--out", str(tmp_path / "g")]) == 0
    expected = synth_workload(NetworkConfig(8, (1.0,), 0.0), 12, 5, SynthParams(max_width=3))
    assert (tmp_path / "g" / "workload_s5.csv").read_text() == format_trace(expected.coflows)
