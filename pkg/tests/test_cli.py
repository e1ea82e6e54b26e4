"""CLI contract: exit codes, schema validation, CSV determinism."""

import json
import os

from ffode.cli import (
    CSV_COLUMNS, EXIT_MISMATCH, EXIT_OK, EXIT_SCHEMA, main,
)


def write_config(tmp_path, cfg, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return str(path)


def strip_wall_time(csv_text):
    lines = csv_text.strip().split("\n")
    assert lines[0].split(",")[-1] == "wall_time_ms"
    return "\n".join(",".join(line.split(",")[:-1]) for line in lines)


HEAT_CAMPAIGN = {
    "version": 1,
    "campaign": "demo-heat",
    "solver": "eigen",
    "seed": 5,
    "sweep": {"T": [0.01, 0.1, 1.0], "eps": [1e-08]},
    "problems": [
        {"id": "heat-1d-8", "type": "pde", "kind": "heat", "d": 1, "n": 8,
         "u0": {"name": "one-plus-cos"}},
    ],
}


def test_solve_heat_sweep(tmp_path, capsys):
    cfg = write_config(tmp_path, HEAT_CAMPAIGN)
    rc = main(["solve", "--config", cfg, "--out", str(tmp_path)])
    assert rc == EXIT_OK
    csv_path = tmp_path / "demo-heat.csv"
    text = csv_path.read_text(encoding="utf-8")
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 3  # header + one row per horizon
    err_col = CSV_COLUMNS.index("error_vs_reference")
    for line in lines[1:]:
        assert float(line.split(",")[err_col]) <= 1e-8


def test_solve_empty_sweep_is_schema_error(tmp_path, capsys):
    bad = dict(HEAT_CAMPAIGN, sweep={"T": []})
    cfg = write_config(tmp_path, bad)
    assert main(["solve", "--config", cfg, "--out", str(tmp_path)]) \
        == EXIT_SCHEMA


def test_solve_missing_config_schema_error(tmp_path):
    assert main(["solve", "--config", str(tmp_path / "nope.json")]) \
        == EXIT_SCHEMA


def test_solve_bad_version(tmp_path):
    bad = dict(HEAT_CAMPAIGN, version=2)
    cfg = write_config(tmp_path, bad)
    assert main(["solve", "--config", cfg]) == EXIT_SCHEMA


def test_solver_problem_mismatch(tmp_path):
    bad = {
        "version": 1, "campaign": "bad", "solver": "eigen", "seed": 0,
        "sweep": {"T": [1.0]},
        "problems": [{"id": "nn", "type": "ode", "family": "nonnormal"}],
    }
    cfg = write_config(tmp_path, bad)
    assert main(["solve", "--config", cfg, "--out", str(tmp_path)]) \
        == EXIT_MISMATCH


def test_solve_determinism(tmp_path):
    cfg_obj = {
        "version": 1, "campaign": "det", "solver": "eigen", "seed": 123,
        "sweep": {"T": [0.1, 0.7]},
        "problems": [
            {"id": "rn", "type": "ode", "family": "random-normal", "N": 6},
            {"id": "heat", "type": "pde", "kind": "heat", "n": 8,
             "u0": {"name": "one-plus-cos"}},
        ],
    }
    texts = []
    for run in ("a", "b"):
        out_dir = tmp_path / run
        cfg = write_config(tmp_path, cfg_obj, name=f"cfg-{run}.json")
        assert main(["solve", "--config", cfg, "--out", str(out_dir)]) \
            == EXIT_OK
        texts.append((out_dir / "det.csv").read_text(encoding="utf-8"))
    assert strip_wall_time(texts[0]) == strip_wall_time(texts[1])


def test_solve_negdef_campaign(tmp_path):
    cfg_obj = {
        "version": 1, "campaign": "nd", "solver": "negdef", "seed": 3,
        "sweep": {"T": [1.0], "eps": [1e-4]},
        "problems": [{"id": "r0", "type": "ode", "family": "random-negdef",
                      "N": 2, "delta": 0.5}],
    }
    cfg = write_config(tmp_path, cfg_obj)
    assert main(["solve", "--config", cfg, "--out", str(tmp_path)]) == EXIT_OK
    text = (tmp_path / "nd.csv").read_text(encoding="utf-8")
    row = text.strip().split("\n")[1].split(",")
    assert float(row[CSV_COLUMNS.index("error_vs_reference")]) <= 1e-4
    assert int(row[CSV_COLUMNS.index("q_U_A")]) > 0


def test_solve_other_solver_paths(tmp_path):
    campaigns = [
        {"version": 1, "campaign": "ref", "solver": "reference-only",
         "seed": 1, "sweep": {"T": [0.5]},
         "problems": [{"id": "h", "type": "pde", "kind": "heat", "n": 4,
                       "u0": {"name": "one-plus-cos"}}]},
        {"version": 1, "campaign": "sq", "solver": "sqrt", "seed": 2,
         "sweep": {"T": [1.0], "eps": [1e-4]},
         "problems": [{"id": "s", "type": "ode", "family": "random-sqrt",
                       "N": 2}]},
        {"version": 1, "campaign": "td", "solver": "eigen-td", "seed": 3,
         "sweep": {"T": [0.5], "eps": [1e-3], "M": [20000]},
         "problems": [{"id": "t", "type": "ode", "family": "random-normal",
                       "N": 4}]},
    ]
    for cfg_obj in campaigns:
        cfg = write_config(tmp_path, cfg_obj, name=f"{cfg_obj['campaign']}.json")
        assert main(["solve", "--config", cfg, "--out", str(tmp_path)]) \
            == EXIT_OK
        text = (tmp_path / f"{cfg_obj['campaign']}.csv").read_text("utf-8")
        row = text.strip().split("\n")[1].split(",")
        err = float(row[CSV_COLUMNS.index("error_vs_reference")])
        assert err <= float(cfg_obj["sweep"].get("eps", [1e-6])[0])


def test_solve_tolerance_gate(tmp_path):
    cfg_obj = {
        "version": 1, "campaign": "tg", "solver": "eigen-td", "seed": 4,
        "sweep": {"T": [1.0], "eps": [0.5], "M": [50]},  # coarse quadrature
        "problems": [{"id": "t", "type": "ode", "family": "random-normal",
                      "N": 4}],
    }
    cfg = write_config(tmp_path, cfg_obj)
    # an unreachable tolerance turns the run into a numeric failure (exit 4)
    rc = main(["solve", "--config", cfg, "--out", str(tmp_path),
               "--tolerance", "1e-14"])
    assert rc == 4


def test_solve_parallel_jobs_deterministic(tmp_path):
    cfg_obj = {
        "version": 1, "campaign": "par", "solver": "eigen", "seed": 6,
        "sweep": {"T": [0.1, 0.3, 0.9]},
        "problems": [
            {"id": "a", "type": "ode", "family": "random-normal", "N": 4},
            {"id": "b", "type": "pde", "kind": "transport", "n": 8,
             "a_prime": [1.0], "u0": {"name": "one-plus-cos"}},
        ],
    }
    texts = []
    for run, jobs in (("serial", 1), ("parallel", 3)):
        out_dir = tmp_path / run
        cfg = write_config(tmp_path, cfg_obj, name=f"{run}.json")
        assert main(["solve", "--config", cfg, "--out", str(out_dir),
                     "--jobs", str(jobs)]) == EXIT_OK
        texts.append((out_dir / "par.csv").read_text(encoding="utf-8"))
    assert strip_wall_time(texts[0]) == strip_wall_time(texts[1])


def test_lb_families(capsys):
    assert main(["lb", "--family", "realpart-gap", "--eps", "0.01"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out
    assert main(["lb", "--family", "nonnormal-homo", "--delta", "0.5"]) \
        == EXIT_OK
    out = capsys.readouterr().out
    assert "perturbed_trace_distance_floor" in out
    assert main(["lb", "--family", "linear-system", "--kappa", "10"]) == EXIT_OK
    assert main(["lb", "--family", "amplifier", "--eps", "0.01",
                 "--trials", "5"]) == EXIT_OK
    capsys.readouterr()


def test_lb_bad_params(capsys):
    assert main(["lb", "--family", "nonnormal-homo", "--delta", "2.0"]) \
        == EXIT_SCHEMA
    assert main(["lb", "--family", "realpart-gap", "--eps", "1.5"]) \
        == EXIT_SCHEMA
    capsys.readouterr()


def test_degree_scan_csv(tmp_path, capsys):
    rc = main(["degree-scan", "--target", "gaussian",
               "--grid", "16,64,256,1024", "--eps", "1e-5",
               "--out", str(tmp_path)])
    assert rc == EXIT_OK
    capsys.readouterr()
    text = (tmp_path / "degree_scan_gaussian.csv").read_text(encoding="utf-8")
    lines = text.strip().split("\n")
    assert lines[0] == "param,degree"
    assert lines[-1].startswith("fitted_exponent,")
    exponent = float(lines[-1].split(",")[1])
    assert 0.40 <= exponent <= 0.65
    degrees = [int(l.split(",")[1]) for l in lines[1:-1]]
    assert degrees == sorted(degrees)


def test_degree_scan_needs_four_points(capsys):
    assert main(["degree-scan", "--target", "gaussian",
                 "--grid", "16,64"]) == EXIT_SCHEMA
    capsys.readouterr()


def test_selftest_deterministic(tmp_path, capsys):
    texts = []
    for run in ("x", "y"):
        out_dir = tmp_path / run
        os.makedirs(out_dir, exist_ok=True)
        assert main(["selftest", "--out", str(out_dir), "--seed", "7"]) \
            == EXIT_OK
        texts.append((out_dir / "selftest.csv").read_text(encoding="utf-8"))
    capsys.readouterr()
    assert strip_wall_time(texts[0]) == strip_wall_time(texts[1])
