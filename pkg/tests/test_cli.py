import json

import pytest
import yaml

from bislab.cli import main

BASE = {
    "schema_version": 1,
    "seed": 1234,
    "model": {
        "source": [0.5, 0.5],
        "enroll": [[0.9, 0.1], [0.1, 0.9]],
        "identify": [[0.8, 0.2], [0.2, 0.8]],
    },
    "aux": {
        "u_given_y": [[0.95, 0.05], [0.05, 0.95]],
        "v_given_u": [[1.0, 0.0], [0.0, 1.0]],
    },
    "region": {
        "variant": "A1",
        "grid_steps": 4,
        "r_i_grid": [0.0, 0.05, 0.1],
    },
    "simulate": {
        "n": 4,
        "delta_rate": 0.1,
        "typicality_delta": 0.2,
        "trials": 25,
    },
    "equiv": {"grid_steps": 2},
    "reduce": {"grid_steps": 4},
}


def write_config(tmp_path, overrides=None, drop=()):
    cfg = json.loads(json.dumps(BASE))
    for key in drop:
        cfg.pop(key, None)
    if overrides:
        for key, value in overrides.items():
            if isinstance(value, dict) and isinstance(cfg.get(key), dict):
                cfg[key].update(value)
            else:
                cfg[key] = value
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(cfg))
    return str(path)


def run(args):
    return main(args)


def test_rates_json(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert run(["rates", "--config", cfg]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["command"] == "rates"
    assert doc["schema_version"] == 1
    assert "tool_version" in doc
    assert doc["extreme_tuple_a2"]["r_s"] == 0.0  # V = U
    assert doc["config"]["model"]["source"] == [0.5, 0.5]
    # closed forms for the cascade of symmetric binary channels
    import math

    def h(p):
        return -p * math.log2(p) - (1 - p) * math.log2(1 - p)

    def conv(a, b):
        return a * (1 - b) + b * (1 - a)

    assert doc["summary"]["i_yu"] == pytest.approx(1 - h(0.05), abs=1e-9)
    assert doc["summary"]["i_xu"] == pytest.approx(1 - h(conv(0.05, 0.1)), abs=1e-9)
    assert doc["summary"]["i_zu"] == pytest.approx(
        1 - h(conv(conv(0.05, 0.1), 0.2)), abs=1e-9
    )


def test_rates_requires_aux(tmp_path, capsys):
    cfg = write_config(tmp_path, drop=("aux",))
    assert run(["rates", "--config", cfg]) == 2


def test_malformed_matrix_exit_2_with_row(tmp_path, capsys):
    cfg = write_config(tmp_path, {"model": {"enroll": [[0.9, 0.1], [0.51, 0.5]]}})
    assert run(["rates", "--config", cfg]) == 2
    assert "row 1" in capsys.readouterr().err


def test_missing_schema_version(tmp_path):
    cfg = write_config(tmp_path, {"schema_version": 99})
    assert run(["rates", "--config", cfg]) == 2


def test_region_csv_deterministic(tmp_path):
    cfg = write_config(tmp_path)
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    out3 = tmp_path / "c.csv"
    assert run(["region", "--config", cfg, "--out", str(out1)]) == 0
    assert run(["region", "--config", cfg, "--out", str(out2)]) == 0
    assert run(["region", "--config", cfg, "--out", str(out3), "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes() == out3.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0].startswith("# config:")
    assert lines[1] == "r_i,max_r_s,min_r_j,min_r_l,feasible,grid_steps,variant"
    assert len(lines) == 2 + 3


def test_region_single_point_grid(tmp_path):
    cfg = write_config(tmp_path, {"region": {"r_i_grid": [0.0]}})
    out = tmp_path / "r.csv"
    assert run(["region", "--config", cfg, "--out", str(out)]) == 0
    rows = out.read_text().splitlines()[2:]
    assert len(rows) == 1
    assert rows[0].split(",")[4] == "1"  # feasible


def test_region_variants_agree(tmp_path):
    cfg1 = write_config(tmp_path)
    out1 = tmp_path / "a1.csv"
    assert run(["region", "--config", cfg1, "--out", str(out1)]) == 0
    cfg2 = write_config(tmp_path, {"region": {"variant": "A2", "v_cardinality": 2}})
    out2 = tmp_path / "a2.csv"
    assert run(["region", "--config", cfg2, "--out", str(out2)]) == 0
    rows1 = [r.split(",") for r in out1.read_text().splitlines()[2:]]
    rows2 = [r.split(",") for r in out2.read_text().splitlines()[2:]]
    for r1, r2 in zip(rows1, rows2):
        assert abs(float(r1[1]) - float(r2[1])) <= 1e-6


def test_region_json_format(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert run(["region", "--config", cfg, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["rows"]) == 3


def test_region_missing_grid(tmp_path):
    cfg = write_config(tmp_path, {"region": {"r_i_grid": None}})
    assert run(["region", "--config", cfg]) == 2


def test_csv_rejected_for_non_tabular(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert run(["rates", "--config", cfg, "--format", "csv"]) == 2


def test_simulate_stable_fixture(tmp_path):
    cfg = write_config(tmp_path, {"simulate": {"trials": 1}})
    out1 = tmp_path / "s1.json"
    out2 = tmp_path / "s2.json"
    out3 = tmp_path / "s3.json"
    assert run(["simulate", "--config", cfg, "--out", str(out1)]) == 0
    assert run(["simulate", "--config", cfg, "--out", str(out2)]) == 0
    assert run(["simulate", "--config", cfg, "--out", str(out3), "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes() == out3.read_bytes()
    doc = json.loads(out1.read_text())
    assert doc["report"]["trials"] == 1
    assert doc["config"]["seed"] == 1234
    assert doc["report"]["params_echo"]["n"] == 4


def test_simulate_requires_seed(tmp_path):
    cfg = write_config(tmp_path, drop=("seed",))
    assert run(["simulate", "--config", cfg]) == 2


def test_simulate_trend(tmp_path, capsys):
    cfg = write_config(
        tmp_path, {"simulate": {"n_list": [4, 5], "trials": 10, "exact": "skip"}}
    )
    assert run(["simulate", "--config", cfg]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [row["n"] for row in doc["trend"]["rows"]] == [4, 5]


def test_equiv_guard_exit_codes(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert run(["equiv", "--config", cfg]) == 0

    ternary = {
        "model": {
            "source": [0.4, 0.3, 0.3],
            "enroll": [[0.8, 0.1, 0.1], [0.1, 0.8, 0.1], [0.1, 0.1, 0.8]],
            "identify": [[0.8, 0.1, 0.1], [0.1, 0.8, 0.1], [0.1, 0.1, 0.8]],
        },
        "equiv": {"grid_steps": 2},
    }
    cfg3 = write_config(tmp_path, ternary)
    assert run(["equiv", "--config", cfg3]) == 0

    quaternary = {
        "model": {
            "source": [0.25, 0.25, 0.25, 0.25],
            "enroll": [[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 1.0]],
            "identify": [[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 1.0, 0], [0, 0, 0, 1.0]],
        },
    }
    cfg4 = write_config(tmp_path, quaternary)
    capsys.readouterr()
    assert run(["equiv", "--config", cfg4]) == 3
    assert "alphabet" in capsys.readouterr().err


def test_equiv_deterministic_and_threaded(tmp_path):
    cfg = write_config(tmp_path)
    outs = []
    for name, threads in (("e1", "1"), ("e2", "1"), ("e3", "4")):
        out = tmp_path / f"{name}.json"
        assert run(["equiv", "--config", cfg, "--out", str(out), "--threads", threads]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_reduce_matches(tmp_path, capsys):
    cfg = write_config(tmp_path)
    assert run(["reduce", "--config", cfg]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["report"]["matches_noiseless_enroll"] is True
    assert doc["report"]["matches_single_individual"] is True
    assert doc["report"]["max_dev_noiseless_enroll"] <= 1e-6


def test_reduce_deterministic(tmp_path):
    cfg = write_config(tmp_path)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert run(["reduce", "--config", cfg, "--out", str(out1)]) == 0
    assert run(["reduce", "--config", cfg, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_rates_deterministic(tmp_path):
    cfg = write_config(tmp_path)
    out1 = tmp_path / "x.json"
    out2 = tmp_path / "y.json"
    assert run(["rates", "--config", cfg, "--out", str(out1)]) == 0
    assert run(["rates", "--config", cfg, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_simulate_exact_budget_exit_3(tmp_path, capsys):
    cfg = write_config(
        tmp_path, {"simulate": {"exact": "require", "exact_budget": 3, "trials": 2}}
    )
    assert run(["simulate", "--config", cfg]) == 3
    assert "enumeration" in capsys.readouterr().err


def test_unreadable_config():
    assert run(["rates", "--config", "/nonexistent/nope.yaml"]) == 2
