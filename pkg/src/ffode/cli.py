"""Command-line entry point.

Subcommands
-----------
solve        run a solver campaign from a JSON config, emit one CSV row per
             (problem, sweep point)
lb           certify a lower-bound witness family, print PASS/FAIL lines
degree-scan  minimal certified approximant degrees over a parameter grid
selftest     deterministic built-in campaign (CSV + PASS lines)

Exit codes: 0 ok, 1 certification/selftest failure, 2 config/schema
violation, 3 solver/problem mismatch, 4 numeric failure.  The environment
variable FFODE_LOG in {error, info, debug} controls logging.  CSV output is
deterministic for a fixed config and seed (the wall_time_ms column aside):
fixed column order, '.' decimal separator, 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .block_encoding import LEDGER_KEYS, QueryLedger
from .linalg import EigenSystem
from .eigen_solvers import (
    EigenOracleSet, solve_eigen_homogeneous, solve_eigen_inhomogeneous,
    solve_eigen_timedep,
)
from .lower_bounds import (
    AmplifierCircuit, amplifier_bound_check,
    shifting_equivalence_check, witness_imaginary_time, witness_linear_system,
    witness_nonnormal_homogeneous, witness_nonnormal_inhomogeneous,
    witness_realpart_gap, witness_realpart_gap_inhomogeneous,
    worst_case_oracle_pair,
)
from .pde import KINDS, PdeSpec, solve_pde
from .poly_approx import TARGETS, certified_degree_scan
from .qsvt_solvers import solve_negdef, solve_sqrt_access
from .reference import OdeProblem, SampledSource
from .block_encoding import exact_dilation

log = logging.getLogger("ffode")

CSV_VERSION = 1
CSV_COLUMNS = (
    ["format_version", "campaign", "problem_id", "solver", "T", "n", "d",
     "eps", "success_prob", "repeats_noAA", "repeats_AA",
     "error_vs_reference"]
    + [f"q_{k}" for k in LEDGER_KEYS]
    + ["wall_time_ms"]
)

SOLVERS = ("negdef", "sqrt", "eigen", "eigen-td", "reference-only")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SCHEMA = 2
EXIT_MISMATCH = 3
EXIT_NUMERIC = 4


class SchemaError(Exception):
    pass


class MismatchError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


# ---------------------------------------------------------------------------
# named samplers for PDE initial data and sources

def _sampler_u(spec_json: dict):
    name = spec_json.get("name")
    k = float(spec_json.get("k", 1.0))
    if name == "one-plus-cos":
        return lambda x: 1.0 + np.cos(2.0 * np.pi * k * x[0])
    if name == "cos":
        return lambda x: np.cos(2.0 * np.pi * k * x[0])
    if name == "sin":
        return lambda x: np.sin(2.0 * np.pi * k * x[0])
    if name == "gaussian-bump":
        w = float(spec_json.get("width", 0.1))
        return lambda x: math.exp(-((x[0] - 0.5) ** 2) / w ** 2)
    if name == "constant":
        v = float(spec_json.get("value", 1.0))
        return lambda x: v
    raise SchemaError(f"unknown sampler {name!r}")


def _sampler_b(spec_json: dict):
    """Returns (b(x,t), db/dt(x,t)) callables."""
    name = spec_json.get("name")
    if name == "constant":
        v = float(spec_json.get("value", 1.0))
        return (lambda x, t: v), (lambda x, t: 0.0)
    if name == "cos-drive":
        k = float(spec_json.get("k", 1.0))
        om = float(spec_json.get("omega", 1.0))
        return (lambda x, t: np.cos(2 * np.pi * k * x[0]) * np.cos(om * t),
                lambda x, t: -om * np.cos(2 * np.pi * k * x[0]) * np.sin(om * t))
    if name == "spatial":
        inner = _sampler_u(spec_json.get("profile", {"name": "constant"}))
        return (lambda x, t: inner(x)), (lambda x, t: 0.0)
    raise SchemaError(f"unknown source sampler {name!r}")


# ---------------------------------------------------------------------------
# config parsing and validation

def _require(cond, msg):
    if not cond:
        raise SchemaError(msg)


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read config: {exc}") from exc
    _require(isinstance(cfg, dict), "config must be a JSON object")
    _require(cfg.get("version") == 1, "config version must be 1")
    _require(isinstance(cfg.get("campaign"), str) and cfg["campaign"],
             "campaign name required")
    _require(cfg.get("solver") in SOLVERS,
             f"solver must be one of {SOLVERS}")
    sweep = cfg.get("sweep", {})
    _require(isinstance(sweep, dict), "sweep must be an object")
    for axis, values in sweep.items():
        _require(axis in ("T", "eps", "n", "d", "M"),
                 f"unknown sweep axis {axis!r}")
        _require(isinstance(values, list) and len(values) > 0,
                 f"sweep axis {axis!r} must be a nonempty list")
    problems = cfg.get("problems")
    _require(isinstance(problems, list) and problems, "problems list required")
    for prob in problems:
        _require(isinstance(prob, dict), "each problem must be an object")
        _require(isinstance(prob.get("id"), str) and prob["id"],
                 "each problem needs a string id")
        _require(prob.get("type") in ("pde", "ode"),
                 "problem type must be 'pde' or 'ode'")
        if prob["type"] == "pde":
            _require(prob.get("kind") in KINDS, f"unknown PDE kind")
        else:
            _require(prob.get("family") in (
                "random-negdef", "random-normal", "random-sqrt", "nonnormal"),
                "unknown ode family")
    cfg.setdefault("seed", 0)
    cfg.setdefault("sweep", {})
    return cfg


def _build_pde_spec(prob: dict, n: int | None, d: int | None,
                    T: float) -> PdeSpec:
    u0 = _sampler_u(prob.get("u0", {"name": "one-plus-cos"}))
    w0 = None
    if prob.get("w0") is not None:
        w0 = _sampler_u(prob["w0"])
    b = b_dt = None
    if prob.get("b") is not None:
        b, b_dt = _sampler_b(prob["b"])
    kwargs = dict(
        kind=prob["kind"],
        d=int(d if d is not None else prob.get("d", 1)),
        n=int(n if n is not None else prob.get("n", 8)),
        T=float(T),
        c=float(prob.get("c", 0.0)),
        u0=u0, w0=w0, b=b, b_dt=b_dt,
    )
    if prob.get("a") is not None:
        kwargs["a"] = prob["a"]
    if prob.get("a_prime") is not None:
        kwargs["a_prime"] = prob["a_prime"]
    if prob.get("m") is not None:
        kwargs["mass"] = float(prob["m"])
    try:
        return PdeSpec(**kwargs)
    except ValueError as exc:
        raise SchemaError(f"bad PDE problem {prob['id']}: {exc}") from exc


def _build_ode_problem(prob: dict, T: float, rng: np.random.Generator):
    """Returns (OdeProblem, aux) where aux carries solver-specific pieces."""
    family = prob["family"]
    N = int(prob.get("N", 4))
    if family == "random-negdef":
        delta = float(prob.get("delta", 0.25))
        q = np.linalg.qr(rng.standard_normal((N, N))
                         + 1j * rng.standard_normal((N, N)))[0]
        w = rng.uniform(-1.0, -delta, N)
        a = (q * w) @ q.conj().T
        a = (a + a.conj().T) / 2.0
        u0 = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        b = None
        if prob.get("b", "random") is not None:
            b = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        return OdeProblem(a, u0, T, b), {"delta": delta}
    if family == "random-sqrt":
        q = np.linalg.qr(rng.standard_normal((N, N))
                         + 1j * rng.standard_normal((N, N)))[0]
        hw = rng.uniform(0.0, 1.0, N)
        h = (q * hw) @ q.conj().T
        h = (h + h.conj().T) / 2.0
        u0 = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        b = None
        if prob.get("b", "random") is not None:
            b = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        return OdeProblem(-(h @ h), u0, T, b), {"h": h}
    if family == "random-normal":
        q = np.linalg.qr(rng.standard_normal((N, N))
                         + 1j * rng.standard_normal((N, N)))[0]
        lam = rng.uniform(-1.0, 0.0, N) + 1j * rng.uniform(-2.0, 2.0, N)
        lam[0] = 1j * lam[0].imag  # keep a zero-real-part mode
        es = EigenSystem(q, lam)
        u0 = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        b = None
        if prob.get("b", "random") is not None:
            b = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        return OdeProblem(es, u0, T, b), {"eigen": es}
    if family == "nonnormal":
        delta = float(prob.get("delta", 0.5))
        a = np.array([[1j, 1j / delta, 0], [0, 2j, 0], [0, 0, 3j]])
        u0 = np.array([0.0, 0.0, 1.0], dtype=complex)
        return OdeProblem(a, u0, T), {}
    raise SchemaError(f"unknown ode family {family!r}")


def _validate_compat(cfg: dict) -> None:
    """Solver/problem structural compatibility, before any execution."""
    solver = cfg["solver"]
    for prob in cfg["problems"]:
        pid = prob["id"]
        if prob["type"] == "pde":
            if solver in ("negdef", "sqrt"):
                raise MismatchError(
                    f"{pid}: PDE problems use the eigen solvers, not {solver}")
            continue
        family = prob["family"]
        if solver == "negdef" and family != "random-negdef":
            raise MismatchError(f"{pid}: negdef solver needs a negative-"
                                f"definite family, got {family}")
        if solver == "sqrt" and family != "random-sqrt":
            raise MismatchError(f"{pid}: sqrt solver needs square-root access")
        if solver in ("eigen", "eigen-td") and family == "nonnormal":
            raise MismatchError(
                f"{pid}: eigen solvers need a unitarily diagonalizable "
                "coefficient; the nonnormal family is not")


def _run_point(cfg: dict, prob: dict, T: float, eps: float,
               n: int | None, d: int | None, M, seed: int) -> dict:
    solver = cfg["solver"]
    rng = np.random.default_rng(seed)
    started = time.perf_counter()

    if prob["type"] == "pde":
        spec = _build_pde_spec(prob, n, d, T)
        if solver == "reference-only":
            report = None
            ref_dim = spec.N
        else:
            report = solve_pde(spec, eps)
        n_out, d_out = spec.n, spec.d
    else:
        problem, aux = _build_ode_problem(prob, T, rng)
        n_out, d_out = problem.dim, 1
        if solver == "reference-only":
            report = None
        elif solver == "negdef":
            report = solve_negdef(problem, aux["delta"], eps)
        elif solver == "sqrt":
            u_h = exact_dilation(aux["h"], 1.0)
            report = solve_sqrt_access(problem, u_h, eps)
        elif solver in ("eigen", "eigen-td"):
            eigen = aux.get("eigen")
            if eigen is None:
                eigen = EigenSystem.from_matrix(problem.matrix)
            variant = "nonneg" if solver == "eigen-td" else "plain"
            oracle = EigenOracleSet.from_eigensystem(eigen, variant=variant)
            if solver == "eigen-td":
                src = problem.inhomogeneous
                if src is not None and not isinstance(src, SampledSource):
                    const = np.asarray(src)
                    src = SampledSource(lambda t: const,
                                        derivative=lambda t: 0.0 * const)
                problem = OdeProblem(eigen, problem.u0, T, src)
                report = solve_eigen_timedep(problem, oracle, eps,
                                             M=int(M) if M else None)
            elif problem.is_homogeneous:
                report = solve_eigen_homogeneous(problem, oracle)
            else:
                report = solve_eigen_inhomogeneous(problem, oracle)
        else:  # pragma: no cover
            raise MismatchError(f"unhandled solver {solver}")

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    row = {
        "format_version": CSV_VERSION,
        "campaign": cfg["campaign"],
        "problem_id": prob["id"],
        "solver": solver,
        "T": float(T),
        "n": n_out,
        "d": d_out,
        "eps": float(eps),
        "wall_time_ms": elapsed_ms,
    }
    if report is None:
        row.update({"success_prob": 1.0, "repeats_noAA": 1, "repeats_AA": 1,
                    "error_vs_reference": 0.0})
        ledger = QueryLedger()
    else:
        row.update({
            "success_prob": report.success_probability,
            "repeats_noAA": report.repeats_no_aa,
            "repeats_AA": report.repeats_aa,
            "error_vs_reference": report.error_vs_reference,
        })
        ledger = report.ledger
    for key in LEDGER_KEYS:
        row[f"q_{key}"] = ledger[key]
    return row


def run_campaign(cfg: dict, jobs: int = 1) -> list[dict]:
    _validate_compat(cfg)
    sweep = cfg["sweep"]
    t_values = sweep.get("T", [1.0])
    eps_values = sweep.get("eps", [1e-6])
    n_values = sweep.get("n", [None])
    d_values = sweep.get("d", [None])
    m_values = sweep.get("M", [None])
    points = []
    for prob in cfg["problems"]:
        for T in t_values:
            for eps in eps_values:
                for n in n_values:
                    for d in d_values:
                        for m in m_values:
                            points.append((prob, float(T), float(eps), n, d, m))
    seed = int(cfg.get("seed", 0))

    def work(item):
        prob, T, eps, n, d, m = item
        return _run_point(cfg, prob, T, eps, n, d, m, seed)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(work, points))
    else:
        rows = [work(item) for item in points]
    return rows


def write_csv(rows: list[dict], path: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(row[c]) for c in CSV_COLUMNS) + "\n")


# ---------------------------------------------------------------------------
# lb subcommand

LB_FAMILIES = ("realpart-gap", "nonnormal-homo", "realpart-gap-inhomo",
               "nonnormal-inhomo", "imaginary-time", "linear-system",
               "amplifier", "shifting")


def _print_certified(pair) -> int:
    failures = 0
    for name, (measured, bound, direction) in sorted(pair.certified.items()):
        ok = measured <= bound + 1e-10 if direction == "<=" \
            else measured >= bound - 1e-10
        word = "PASS" if ok else "FAIL"
        failures += 0 if ok else 1
        print(f"{word} {pair.family}.{name}: measured {measured:.8g} "
              f"{direction} bound {bound:.8g}")
    return failures


def cmd_lb(args) -> int:
    rng = np.random.default_rng(args.seed)
    try:
        if args.family == "realpart-gap":
            if not (0 < args.eps < 1):
                raise SchemaError("eps must lie in (0,1)")
            basis = np.eye(args.dim, dtype=complex)
            lam = np.linspace(1.0, -1.0, args.dim) + 0j
            pair = witness_realpart_gap(basis, lam, args.eps)
            return EXIT_FAIL if _print_certified(pair) else EXIT_OK
        if args.family == "nonnormal-homo":
            if not (0 < args.delta < 1):
                raise SchemaError("delta must lie in (0,1)")
            pair = witness_nonnormal_homogeneous(args.delta)
            return EXIT_FAIL if _print_certified(pair) else EXIT_OK
        if args.family == "realpart-gap-inhomo":
            if not (0 < args.eps < 1):
                raise SchemaError("eps must lie in (0,1)")
            basis = np.eye(args.dim, dtype=complex)
            lam = np.linspace(1.0, -1.0, args.dim) + 0j
            pair = witness_realpart_gap_inhomogeneous(basis, lam, args.eps)
            return EXIT_FAIL if _print_certified(pair) else EXIT_OK
        if args.family == "nonnormal-inhomo":
            if not (0 < args.delta < 1):
                raise SchemaError("delta must lie in (0,1)")
            pair = witness_nonnormal_inhomogeneous(args.delta)
            return EXIT_FAIL if _print_certified(pair) else EXIT_OK
        if args.family == "imaginary-time":
            h = np.diag(np.linspace(0.0, 1.0, args.dim)).astype(complex)
            pair = witness_imaginary_time(h, args.T)
            return EXIT_FAIL if _print_certified(pair) else EXIT_OK
        if args.family == "linear-system":
            if args.kappa <= 1:
                raise SchemaError("kappa must exceed 1")
            u = np.linalg.qr(rng.standard_normal((args.dim, args.dim))
                             + 1j * rng.standard_normal((args.dim, args.dim)))[0]
            v = np.linalg.qr(rng.standard_normal((args.dim, args.dim))
                             + 1j * rng.standard_normal((args.dim, args.dim)))[0]
            pair = witness_linear_system(args.kappa, u, v)
            return EXIT_FAIL if _print_certified(pair) else EXIT_OK
        if args.family == "amplifier":
            if not (0 < args.eps < 1):
                raise SchemaError("eps must lie in (0,1)")
            psi = np.zeros(args.dim, dtype=complex)
            psi[0] = 1.0
            phi = psi * (1.0 - args.eps)
            phi[1] = math.sqrt(1.0 - (1.0 - args.eps) ** 2)
            pair = worst_case_oracle_pair(psi, phi)
            worst = 0.0
            for trial in range(args.trials):
                q = int(rng.integers(1, 9))
                inter = [np.linalg.qr(
                    rng.standard_normal((2 * args.dim, 2 * args.dim))
                    + 1j * rng.standard_normal((2 * args.dim, 2 * args.dim)))[0]
                    for _ in range(q + 1)]
                kinds = [str(rng.choice(["oracle", "inverse", "controlled",
                                         "controlled-inverse"]))
                         for _ in range(q)]
                circ = AmplifierCircuit(inter, kinds, ancilla_qubits=1)
                worst = max(worst, amplifier_bound_check(pair, circ))
            ok = worst <= 1.0
            print(f"{'PASS' if ok else 'FAIL'} amplifier.ratio_max: measured "
                  f"{worst:.8g} <= bound 1")
            return EXIT_OK if ok else EXIT_FAIL
        if args.family == "shifting":
            n = args.dim
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            u0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            ok = shifting_equivalence_check(a, args.shift, u0, args.T)
            print(f"{'PASS' if ok else 'FAIL'} shifting.normalized_invariance")
            return EXIT_OK if ok else EXIT_FAIL
        raise SchemaError(f"unknown family {args.family!r}")
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ValueError as exc:
        print(f"FAIL {args.family}: {exc}", file=sys.stderr)
        return EXIT_FAIL


# ---------------------------------------------------------------------------
# degree-scan subcommand

def cmd_degree_scan(args) -> int:
    grid = [float(x) for x in args.grid.split(",") if x.strip()]
    if len(grid) < 4:
        print("error: degree scan needs at least 4 grid points",
              file=sys.stderr)
        return EXIT_SCHEMA
    if args.target not in TARGETS:
        print(f"error: target must be one of {TARGETS}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        scan = certified_degree_scan(args.target, grid, args.eps)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    lines = ["param,degree"]
    for param, degree in scan.rows():
        lines.append(f"{_fmt(param)},{degree}")
    lines.append(f"fitted_exponent,{_fmt(scan.fitted_exponent)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, f"degree_scan_{args.target}.csv")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# selftest subcommand

SELFTEST_CONFIG = {
    "version": 1,
    "campaign": "selftest",
    "solver": "eigen",
    "seed": 11,
    "sweep": {"T": [0.01, 0.1, 1.0], "eps": [1e-08]},
    "problems": [
        {"id": "heat-1d", "type": "pde", "kind": "heat", "d": 1, "n": 8,
         "u0": {"name": "one-plus-cos"}},
        {"id": "transport-1d", "type": "pde", "kind": "transport", "d": 1,
         "n": 8, "a_prime": [1.0], "u0": {"name": "one-plus-cos"}},
        {"id": "random-normal", "type": "ode", "family": "random-normal",
         "N": 8},
    ],
}


def cmd_selftest(args) -> int:
    tol = args.tolerance if args.tolerance else 1e-9
    failures = 0
    cfg = dict(SELFTEST_CONFIG)
    cfg["seed"] = args.seed if args.seed is not None else cfg["seed"]
    rows = run_campaign(cfg, jobs=args.jobs)
    for row in rows:
        ok = row["error_vs_reference"] <= tol
        failures += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'} solve {row['problem_id']} "
              f"T={row['T']}: error {row['error_vs_reference']:.3e} <= {tol}")
    for family, kwargs in (
            (witness_nonnormal_homogeneous, {"delta": 0.5}),
            (witness_nonnormal_inhomogeneous, {"delta": 0.5})):
        try:
            pair = family(**kwargs)
            failures += _print_certified(pair)
        except ValueError as exc:
            print(f"FAIL {family.__name__}: {exc}")
            failures += 1
    if args.out:
        path = os.path.join(args.out, "selftest.csv")
        write_csv(rows, path)
        print(f"wrote {path}")
    print(f"selftest: {'OK' if failures == 0 else f'{failures} failures'}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def cmd_solve(args) -> int:
    try:
        cfg = load_config(args.config)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    if args.seed is not None:
        cfg["seed"] = args.seed
    try:
        rows = run_campaign(cfg, jobs=args.jobs)
    except MismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ValueError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    out_dir = args.out or "."
    path = os.path.join(out_dir, f"{cfg['campaign']}.csv")
    write_csv(rows, path)
    print(f"wrote {path} ({len(rows)} rows)")
    if args.tolerance is not None:
        bad = [r for r in rows if r["error_vs_reference"] > args.tolerance]
        if bad:
            print(f"numeric failure: {len(bad)} rows exceed the tolerance "
                  f"{args.tolerance}", file=sys.stderr)
            return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffode",
        description="simulate and verify fast-forwarded quantum ODE solvers")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run a campaign from a JSON config")
    p_solve.add_argument("--config", required=True)
    p_solve.add_argument("--out", default=None)
    p_solve.add_argument("--jobs", type=int, default=1)
    p_solve.add_argument("--seed", type=int, default=None)
    p_solve.add_argument("--tolerance", type=float, default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_lb = sub.add_parser("lb", help="certify a lower-bound witness family")
    p_lb.add_argument("--family", required=True, choices=LB_FAMILIES)
    p_lb.add_argument("--eps", type=float, default=0.01)
    p_lb.add_argument("--delta", type=float, default=0.5)
    p_lb.add_argument("--kappa", type=float, default=10.0)
    p_lb.add_argument("--dim", type=int, default=4)
    p_lb.add_argument("--T", type=float, default=1.0)
    p_lb.add_argument("--shift", type=float, default=0.7)
    p_lb.add_argument("--trials", type=int, default=25)
    p_lb.add_argument("--seed", type=int, default=0)
    p_lb.set_defaults(func=cmd_lb)

    p_scan = sub.add_parser("degree-scan",
                            help="certified approximant degree scan")
    p_scan.add_argument("--target", required=True)
    p_scan.add_argument("--grid", required=True,
                        help="comma-separated parameter values")
    p_scan.add_argument("--eps", type=float, default=1e-6)
    p_scan.add_argument("--out", default=None)
    p_scan.set_defaults(func=cmd_degree_scan)

    p_self = sub.add_parser("selftest", help="deterministic built-in campaign")
    p_self.add_argument("--out", default=None)
    p_self.add_argument("--jobs", type=int, default=1)
    p_self.add_argument("--seed", type=int, default=None)
    p_self.add_argument("--tolerance", type=float, default=None)
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("FFODE_LOG", "error").upper()
    logging.basicConfig(level=getattr(logging, level, logging.ERROR))
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
