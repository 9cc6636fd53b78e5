"""Command-line front end.

One entry point (``zetasolve``) with subcommands::

    zeta     evaluate Epstein / weighted / lattice / vector zeta values
    theta    evaluate theta series
    residue  analytic and contour residues of the zeta families
    funceq   functional-equation residuals
    solve    solve A x = b via residues / sphere integrals / contour residues
    verify   run the built-in identity suite (or user cases)
    bench    crude timings of the main evaluators
    scan     CSV of zeta values along a segment in the s-plane

All numerical configuration lives in the JSON input file; flags only select
paths, output format, and the random seed.  Records are emitted on stdout
(JSON lines or CSV), diagnostics on stderr.

Exit codes: 0 ok; 2 validation error; 3 pole; 4 verification or tolerance
failure; 5 singular matrix.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .errors import (
    DegenerateGrid,
    DegenerateQuadrature,
    DimensionMismatch,
    EvaluationFailure,
    NonFiniteIntegrand,
    NonPositiveX,
    NotPositiveDefinite,
    NotSymmetric,
    OutsideConvergence,
    PoleOfGamma,
    SingularMatrix,
    TooCloseToPole,
    TooManyPoints,
    ValidationError,
)
from .quadforms import Lattice, matrix_from_json, vector_from_json
from .solver import (
    numeric_residue_solve,
    solve_via_integrals,
    solve_via_residues,
)
from .spherequad import QuadratureSpec
from .theta import theta_star_gaussian, theta_star_weighted
from .verify import run_default_suite, run_user_cases
from .zeta import (
    epstein_continued,
    funceq_residual_lattice,
    funceq_residual_vector,
    funceq_residual_weighted,
    lattice_weighted_zeta,
    lattice_zeta,
    residue_epstein,
    residue_numeric,
    residue_vector,
    residue_weighted,
    vector_zeta,
    weighted_continued,
)

_EXIT_OK = 0
_EXIT_VALIDATION = 2
_EXIT_POLE = 3
_EXIT_TOLERANCE = 4
_EXIT_SINGULAR = 5

_VALIDATION_ERRORS = (
    ValidationError,
    DimensionMismatch,
    NotSymmetric,
    NotPositiveDefinite,
    OutsideConvergence,
    NonPositiveX,
    DegenerateGrid,
    NonFiniteIntegrand,
    TooManyPoints,
)
_POLE_ERRORS = (TooCloseToPole, PoleOfGamma)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _load_input(path: str) -> dict:
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError("input must be a JSON object")
    return data


def _check_keys(data: dict, allowed: set[str], command: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ValidationError(f"unknown fields for {command}: {sorted(unknown)}")


def _parse_s(obj) -> complex:
    if isinstance(obj, bool):
        raise ValidationError("s must be a number or {re, im}")
    if isinstance(obj, (int, float)):
        return complex(float(obj), 0.0)
    if isinstance(obj, list) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, dict) and set(obj) <= {"re", "im"} and "re" in obj:
        return complex(float(obj["re"]), float(obj.get("im", 0.0)))
    raise ValidationError(f"cannot parse s value: {obj!r}")


def _s_points(data: dict) -> list[complex]:
    if ("s" in data) == ("s_list" in data):
        raise ValidationError("provide exactly one of 's' or 's_list'")
    if "s" in data:
        return [_parse_s(data["s"])]
    if not isinstance(data["s_list"], list) or not data["s_list"]:
        raise ValidationError("s_list must be a non-empty list")
    return [_parse_s(v) for v in data["s_list"]]


def _parse_tolerance(data: dict, default: float) -> float:
    tol = data.get("tolerance", default)
    if isinstance(tol, bool) or not isinstance(tol, (int, float)):
        raise ValidationError("tolerance must be a number")
    tol = float(tol)
    if not 1e-14 <= tol <= 1e-2:
        raise ValidationError(f"tolerance must lie in [1e-14, 1e-2], got {tol}")
    return tol


def _parse_quadrature(obj, n: int, seed_override: int | None) -> QuadratureSpec:
    if obj is None:
        if n == 2:
            method, nodes = "circle_trapezoid", 1024
        elif 3 <= n <= 5:
            method, nodes = "product_gauss", 48
        else:
            method, nodes = "monte_carlo", 10 ** 6
        obj = {"method": method, "nodes": nodes}
    if not isinstance(obj, dict):
        raise ValidationError("quadrature must be an object")
    _check_keys(obj, {"method", "nodes", "seed"}, "quadrature")
    if "method" not in obj or "nodes" not in obj:
        raise ValidationError("quadrature needs 'method' and 'nodes'")
    seed = obj.get("seed", 0)
    if seed_override is not None:
        seed = seed_override
    return QuadratureSpec(method=obj["method"], nodes=obj["nodes"], seed=seed)


def _emit_records(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
        return
    if not records:
        return
    cols = list(records[0].keys())
    out.write(",".join(cols) + "\n")
    for rec in records:
        cells = []
        for c in cols:
            v = rec.get(c, "")
            if isinstance(v, float):
                cells.append(_fmt(v))
            elif isinstance(v, (list, tuple)):
                cells.append(";".join(_fmt(x) for x in v))
            else:
                cells.append(str(v))
        out.write(",".join(cells) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _cmd_zeta(args) -> int:
    data = _load_input(args.input)
    _check_keys(data, {"Q", "B", "lattice", "A", "b", "s", "s_list", "tolerance"},
                "zeta")
    points = _s_points(data)
    records = []
    if "A" in data:
        if "Q" in data or "B" in data or "lattice" in data:
            raise ValidationError("vector zeta takes A and b only")
        if "b" not in data:
            raise ValidationError("vector zeta needs 'b'")
        a = matrix_from_json(data["A"])
        b = vector_from_json(data["b"])
        for s in points:
            vals = vector_zeta(a, b, s)
            for j, zv in enumerate(vals):
                records.append({
                    "s": [s.real, s.imag], "component": j + 1,
                    "value_re": zv.value.real, "value_im": zv.value.imag,
                    "abs_error": zv.abs_error,
                })
    else:
        if "Q" not in data:
            raise ValidationError("zeta needs 'Q' (or 'A' and 'b')")
        q = matrix_from_json(data["Q"])
        bmat = matrix_from_json(data["B"]) if "B" in data else None
        lat = Lattice(matrix_from_json(data["lattice"])) if "lattice" in data else None
        for s in points:
            if bmat is not None and lat is not None:
                zv = lattice_weighted_zeta(lat, q, bmat, s)
            elif bmat is not None:
                zv = weighted_continued(q, bmat, s)
            elif lat is not None:
                zv = lattice_zeta(lat, q, s)
            else:
                zv = epstein_continued(q, s)
            records.append({
                "s": [s.real, s.imag],
                "value_re": zv.value.real, "value_im": zv.value.imag,
                "abs_error": zv.abs_error,
            })
    _emit_records(records, args.format, sys.stdout)
    return _EXIT_OK


def _cmd_theta(args) -> int:
    data = _load_input(args.input)
    _check_keys(data, {"Q", "B", "t", "t_list", "tol"}, "theta")
    if "Q" not in data:
        raise ValidationError("theta needs 'Q'")
    q = matrix_from_json(data["Q"])
    bmat = matrix_from_json(data["B"]) if "B" in data else None
    if ("t" in data) == ("t_list" in data):
        raise ValidationError("provide exactly one of 't' or 't_list'")
    ts = [data["t"]] if "t" in data else data["t_list"]
    if not isinstance(ts, list):
        ts = [ts]
    tol = float(data.get("tol", 1e-12))
    records = []
    for t in ts:
        t = float(t)
        if bmat is None:
            value = theta_star_gaussian(q, t, tol)
        else:
            value = theta_star_weighted(q, bmat, t, tol)
        records.append({"t": t, "value": value, "tol": tol})
    _emit_records(records, args.format, sys.stdout)
    return _EXIT_OK


def _cmd_residue(args) -> int:
    data = _load_input(args.input)
    _check_keys(data, {"Q", "B", "lattice", "A", "b", "numeric"}, "residue")
    want_numeric = bool(data.get("numeric", True))
    records = []
    if "A" in data:
        a = matrix_from_json(data["A"])
        b = vector_from_json(data.get("b", {"v": [0.0] * a.shape[0]}))
        rep = residue_vector(a, b)
        records.append({
            "family": "vector", "location": rep.location,
            "residue": [float(v) for v in np.asarray(rep.residue).real],
            "source": rep.source,
        })
        if want_numeric:
            n = a.shape[0]
            vals_cache: dict[complex, list] = {}

            def comp(j):
                def ev(s):
                    got = vals_cache.get(s)
                    if got is None:
                        got = vector_zeta(a, b, s)
                        vals_cache[s] = got
                    return got[j].value
                return ev

            num = [residue_numeric(comp(j), n / 2.0 + 1.0).residue.real
                   for j in range(n)]
            records.append({"family": "vector", "location": n / 2.0 + 1.0,
                            "residue": num, "source": "numeric"})
    else:
        if "Q" not in data:
            raise ValidationError("residue needs 'Q' (or 'A')")
        q = matrix_from_json(data["Q"])
        n = q.shape[0]
        lat = (Lattice(matrix_from_json(data["lattice"]))
               if "lattice" in data else Lattice(np.eye(n)))
        if "B" in data:
            bmat = matrix_from_json(data["B"])
            rep = residue_weighted(lat, q, bmat)
            records.append({"family": "weighted", "location": rep.location,
                            "residue": complex(rep.residue).real,
                            "source": rep.source})
            if want_numeric:
                num = residue_numeric(
                    lambda s: lattice_weighted_zeta(lat, q, bmat, s), rep.location
                )
                records.append({"family": "weighted", "location": rep.location,
                                "residue": num.residue.real, "source": "numeric"})
        else:
            rep = residue_epstein(lat, q)
            records.append({"family": "epstein", "location": rep.location,
                            "residue": complex(rep.residue).real,
                            "source": rep.source})
            if want_numeric:
                num = residue_numeric(
                    lambda s: lattice_zeta(lat, q, s), rep.location
                )
                records.append({"family": "epstein", "location": rep.location,
                                "residue": num.residue.real, "source": "numeric"})
    _emit_records(records, args.format, sys.stdout)
    return _EXIT_OK


def _cmd_funceq(args) -> int:
    data = _load_input(args.input)
    _check_keys(data, {"family", "Q", "B", "lattice", "A", "b", "c", "s", "s_list"},
                "funceq")
    family = data.get("family")
    if family not in ("lattice", "weighted", "vector"):
        raise ValidationError("family must be one of lattice / weighted / vector")
    points = _s_points(data)
    records = []
    for s in points:
        if family == "vector":
            a = matrix_from_json(data["A"])
            b = vector_from_json(data["b"])
            c = vector_from_json(data["c"])
            r = funceq_residual_vector(a, b, c, s)
        else:
            q = matrix_from_json(data["Q"])
            lat = (Lattice(matrix_from_json(data["lattice"]))
                   if "lattice" in data else Lattice(np.eye(q.shape[0])))
            if family == "weighted":
                bmat = matrix_from_json(data["B"])
                r = funceq_residual_weighted(lat, q, bmat, s)
            else:
                r = funceq_residual_lattice(lat, q, s)
        records.append({
            "family": family, "s": [s.real, s.imag],
            "lhs_re": r.lhs.real, "lhs_im": r.lhs.imag,
            "rhs_re": r.rhs.real, "rhs_im": r.rhs.imag,
            "residual": r.residual,
        })
    _emit_records(records, args.format, sys.stdout)
    return _EXIT_OK


def _cmd_solve(args) -> int:
    data = _load_input(args.input)
    _check_keys(data, {"A", "b", "route", "quadrature", "tolerance"}, "solve")
    if "A" not in data or "b" not in data:
        raise ValidationError("solve needs 'A' and 'b'")
    a = matrix_from_json(data["A"])
    b = vector_from_json(data["b"])
    route = data.get("route", "residues")
    tol = _parse_tolerance(data, 1e-8)
    if route == "residues":
        report = solve_via_residues(a, b)
    elif route == "integrals":
        spec = _parse_quadrature(data.get("quadrature"), a.shape[0], args.seed)
        report = solve_via_integrals(a, b, spec)
    elif route == "numeric_residue":
        report = numeric_residue_solve(a, b)
    else:
        raise ValidationError(
            "route must be one of residues / integrals / numeric_residue"
        )
    sys.stdout.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
    if report.max_rel_err >= tol:
        sys.stderr.write(
            f"max relative error {report.max_rel_err:.3e} exceeds tolerance {tol:.3e}\n"
        )
        return _EXIT_TOLERANCE
    return _EXIT_OK


def _cmd_verify(args) -> int:
    data = _load_input(args.input) if args.input else {}
    _check_keys(data, {"tolerance", "cases"}, "verify")
    override = None
    if "tolerance" in data:
        override = float(data["tolerance"])
    if "cases" in data:
        rows = run_user_cases(data["cases"], override)
    else:
        rows = run_default_suite(override)
    records = [{
        "check": name, "measured": measured, "bound": bound,
        "status": "pass" if measured < bound else "FAIL",
    } for name, measured, bound in rows]
    _emit_records(records, args.format, sys.stdout)
    failures = sum(1 for r in records if r["status"] == "FAIL")
    if failures:
        sys.stderr.write(f"{failures} of {len(records)} checks failed\n")
        return _EXIT_TOLERANCE
    return _EXIT_OK


def _cmd_bench(args) -> int:
    data = _load_input(args.input) if args.input else {}
    _check_keys(data, {"repeat"}, "bench")
    repeat = int(data.get("repeat", 3))
    if repeat < 1:
        raise ValidationError("repeat must be >= 1")
    eye2 = np.eye(2)
    a3 = np.array([[3.0, 1.0, 0.0], [1.0, 4.0, 1.0], [0.0, 1.0, 5.0]])
    b3 = np.array([1.0, 2.0, 3.0])
    tasks = [
        ("epstein_continued", lambda: epstein_continued(eye2, 2.5)),
        ("weighted_continued", lambda: weighted_continued(eye2, eye2, 3.5)),
        ("theta_star", lambda: theta_star_gaussian(eye2, 0.05, 1e-12)),
        ("solve_residues", lambda: solve_via_residues(a3, b3)),
        ("solve_integrals_mc", lambda: solve_via_integrals(
            a3, b3, QuadratureSpec("monte_carlo", 100000, seed=args.seed or 0))),
        ("numeric_residue_solve", lambda: numeric_residue_solve(a3, b3)),
    ]
    records = []
    for name, fn in tasks:
        start = time.perf_counter()
        for _ in range(repeat):
            fn()
        total = time.perf_counter() - start
        records.append({"task": name, "runs": repeat, "seconds_total": total,
                        "ms_per_run": 1000.0 * total / repeat})
    _emit_records(records, args.format, sys.stdout)
    return _EXIT_OK


def _cmd_scan(args) -> int:
    data = _load_input(args.input)
    _check_keys(data, {"Q", "B", "lattice", "s_start", "s_end", "steps"}, "scan")
    if "Q" not in data or "s_start" not in data or "s_end" not in data:
        raise ValidationError("scan needs 'Q', 's_start', 's_end'")
    q = matrix_from_json(data["Q"])
    bmat = matrix_from_json(data["B"]) if "B" in data else None
    lat = Lattice(matrix_from_json(data["lattice"])) if "lattice" in data else None
    start = _parse_s(data["s_start"])
    end = _parse_s(data["s_end"])
    steps = data.get("steps", 2)
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
        raise ValidationError("steps must be a positive integer")

    def evaluate(s):
        if bmat is not None and lat is not None:
            return lattice_weighted_zeta(lat, q, bmat, s)
        if bmat is not None:
            return weighted_continued(q, bmat, s)
        if lat is not None:
            return lattice_zeta(lat, q, s)
        return epstein_continued(q, s)

    out = sys.stdout
    out.write("re_s,im_s,re_zeta,im_zeta,abs_err,flag\n")
    for k in range(steps):
        frac = k / (steps - 1) if steps > 1 else 0.0
        s = start + frac * (end - start)
        try:
            zv = evaluate(s)
        except _POLE_ERRORS:
            out.write(f"{_fmt(s.real)},{_fmt(s.imag)},,,,1\n")
            continue
        out.write(
            f"{_fmt(s.real)},{_fmt(s.imag)},{_fmt(zv.value.real)},"
            f"{_fmt(zv.value.imag)},{_fmt(zv.abs_error)},0\n"
        )
    return _EXIT_OK


# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetasolve",
        description="Zeta/theta machinery for quadratic forms and the "
                    "residue/sphere-integral linear solvers built on it.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "zeta": (_cmd_zeta, True),
        "theta": (_cmd_theta, True),
        "residue": (_cmd_residue, True),
        "funceq": (_cmd_funceq, True),
        "solve": (_cmd_solve, True),
        "verify": (_cmd_verify, False),
        "bench": (_cmd_bench, False),
        "scan": (_cmd_scan, True),
    }
    for name, (fn, needs_input) in specs.items():
        p = sub.add_parser(name)
        p.add_argument("-i", "--input", required=needs_input, default=None,
                       help="input JSON file ('-' for stdin)")
        p.add_argument("-o", "--format", choices=("json", "csv"), default="json",
                       help="output format (default json)")
        p.add_argument("--seed", type=int, default=None,
                       help="override the Monte Carlo seed")
        p.set_defaults(handler=fn)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _POLE_ERRORS as exc:
        sys.stderr.write(f"pole: {exc}\n")
        return _EXIT_POLE
    except SingularMatrix as exc:
        sys.stderr.write(f"singular matrix: {exc}\n")
        return _EXIT_SINGULAR
    except _VALIDATION_ERRORS as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return _EXIT_VALIDATION
    except (DegenerateQuadrature, EvaluationFailure) as exc:
        sys.stderr.write(f"evaluation failed: {exc}\n")
        return _EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
