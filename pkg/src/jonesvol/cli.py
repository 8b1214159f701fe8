"""Command-line interface.

    jonesvol jones --braid "1 -2 1 -2" --color 3 --root 3
    jonesvol volume-limit --knot fig8 --n 1000:10000:100 --fit 1000:10000
    jonesvol deform --u 0.05,0
    jonesvol check yb --color-max 5

Exit codes: 0 ok, 1 check failed, 2 bad input, 3 math/branch error,
4 resource guard.  Output is deterministic: sorted keys, floats printed with
17 significant digits, complex numbers as {"re", "im"}.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time

from . import asympt, checks
from .braid import BraidWord, components, parse_braid
from .errors import (
    BraidParseError,
    BranchCutError,
    BranchError,
    EvaluationError,
    ResourceGuardError,
)
from .hypgeom import fig8_complete_volume
from .invariants import colored_jones, kashaev, tangle_scalar
from .tensorq import QExponent, qnum

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_MATH, EXIT_GUARD = 0, 1, 2, 3, 4
STATE_SUM_GUARD = 10 ** 7
THREADS_ENV = "JONESVOL_THREADS"


# -- serialization -------------------------------------------------------------

def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return f"{x:.17g}"


def to_plain(obj):
    """Replace complex numbers by {"re", "im"} dicts, recursively."""
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return to_plain(obj.item())
    return obj


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    obj = to_plain(obj)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{dumps(k)}: {dumps(obj[k], indent, _level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    obj = to_plain(obj)
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out += _flatten(obj[k], f"{prefix}.{k}" if prefix else k)
        return out
    if isinstance(obj, list):
        out = []
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}.{i}")
        return out
    return [(prefix, obj)]


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "" if not math.isfinite(v) else f"{v:.17g}"
    return str(v)


def emit(result: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(dumps(result) + "\n")
        return
    rows = result.get("outputs", {}).get("series")
    if rows is not None:
        out.write("N,value\n")
        for row in rows:
            out.write(f"{row['N']},{_csv_cell(row['value'])}\n")
        rest = {k: v for k, v in result["outputs"].items() if k != "series"}
        rest["diagnostics"] = result.get("diagnostics", {})
        for key, val in _flatten(rest):
            out.write(f"# {key},{_csv_cell(val)}\n")
        return
    flat = _flatten({"command": result["command"], **result.get("outputs", {}),
                     "diagnostics": result.get("diagnostics", {})})
    out.write(",".join(k for k, _ in flat) + "\n")
    out.write(",".join(_csv_cell(v) for _, v in flat) + "\n")


# -- argument types -------------------------------------------------------------

def complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}")
    try:
        re, im = float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im but got {text!r}") from None
    if not (math.isfinite(re) and math.isfinite(im)):
        raise argparse.ArgumentTypeError(f"non-finite complex value {text!r}")
    return complex(re, im)


def int_range(text: str) -> list[int]:
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b or a:b:step, got {text!r}") from None
    if len(nums) == 2:
        nums.append(1)
    if len(nums) != 3 or nums[2] <= 0 or nums[0] < 1 or nums[1] < nums[0]:
        raise argparse.ArgumentTypeError(f"expected a:b or a:b:step with 1 <= a <= b, got {text!r}")
    a, b, step = nums
    return list(range(a, b + 1, step))


def window(text: str) -> tuple[int, int]:
    parts = text.split(":")
    try:
        lo, hi = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty window {text!r}")
    return lo, hi


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


# -- commands -------------------------------------------------------------------

def _braid_from_args(args) -> BraidWord:
    return parse_braid(args.braid, args.strands)


def cmd_jones(args) -> dict:
    b = _braid_from_args(args)
    N = args.color
    if N < 1:
        raise BraidParseError("--color must be >= 1")
    if args.root is not None:
        if args.root < 1:
            raise BraidParseError("--root must be >= 1")
        q = QExponent.root_of_unity(args.root)
        qspec = {"root": args.root}
    elif args.h is not None:
        q = QExponent(args.h)
        qspec = {"h": args.h}
    else:
        q = QExponent(args.theta / N)
        qspec = {"theta": args.theta}
    knot = components(b) == 1
    singular = abs(qnum(N, q)) < 1e-12
    if knot and (singular or args.root is not None):
        val = tangle_scalar(b, N, q)
    else:
        val = colored_jones(b, N, q)
    return {
        "command": "jones",
        "inputs": {"braid": str(b), "strands": b.strands, "color": N, **qspec},
        "outputs": {"value": complex(val.value), "method": val.method.value,
                    "components": components(b), "h": q.h},
        "diagnostics": {},
    }


def cmd_volume_limit(args) -> dict:
    N_list = args.n
    if args.knot == "fig8":
        evaluator = asympt.fig8_log_kashaev
        source = {"knot": "fig8"}
    else:
        b = _braid_from_args(args)
        if components(b) != 1:
            raise EvaluationError(f"closure of {str(b)!r} is not a knot")
        largest = max(N_list) ** b.strands
        if largest > STATE_SUM_GUARD:
            raise ResourceGuardError(
                f"state sum size N^n = {max(N_list)}^{b.strands} exceeds {STATE_SUM_GUARD}")

        def evaluator(N, b=b):
            val = abs(kashaev(b, N))
            return math.log(val) if val > 0 else -math.inf

        source = {"braid": str(b), "strands": b.strands}
    series = asympt.volume_limit_series(evaluator, N_list, workers=_threads(args))
    fit = None
    if args.fit is not None and len(series) >= 3:
        f = asympt.fit_limit(series, args.fit)
        fit = {"a": f.a, "b": f.b, "c": f.c, "rms": f.rms, "window": list(f.window)}
    outputs = {
        "series": [{"N": n, "value": v} for n, v in zip(series.N, series.values)],
        "gaps": list(series.gaps),
        "fit": fit,
    }
    diagnostics = {}
    if fit is not None and args.knot == "fig8":
        diagnostics["complete_volume"] = fig8_complete_volume()
        diagnostics["fit_error"] = fit["a"] - fig8_complete_volume()
    return {
        "command": "volume-limit",
        "inputs": {**source, "n": [N_list[0], N_list[-1], len(N_list)],
                   "fit": list(args.fit) if args.fit else None},
        "outputs": outputs,
        "diagnostics": diagnostics,
    }


def cmd_deform(args) -> dict:
    u = args.u
    st = asympt.DeformationState.at(u)
    filling = asympt.dehn_filling(u, st.v)
    tetra = st.tetra_volume_sum()
    numeric = asympt.dH_du_numeric(u)
    closed = (st.v + asympt.TWO_PI_I) / 2
    combo = asympt.vol_cs_combination(u)
    residuals = st.residuals()
    residuals.update({
        "volume_vs_tetrahedra": abs(st.volume - tetra),
        "derivative_closed_vs_numeric": abs(closed - numeric),
        "vol_cs_real_vs_volume": abs(combo.real - st.volume),
    })
    return {
        "command": "deform",
        "inputs": {"u": complex(u)},
        "outputs": {
            "state": {"u": st.u, "theta": st.theta, "x": st.x, "y": st.y, "log_y": st.log_y,
                      "z": st.z, "w": st.w, "v": st.v, "H": st.H},
            "volume": st.volume,
            "tetrahedra_volume": tetra,
            "core_length": filling.core_length,
            "dehn": None if filling.is_cusp else {"p": filling.p, "q": filling.q},
            "kappa": filling.kappa,
            "vol_cs_combination": combo,
        },
        "diagnostics": {"residuals": residuals},
    }


def cmd_check(args) -> dict:
    fn = checks.SUITES[args.suite]
    kwargs = {}
    if args.suite in ("yb", "fig8-formulas") and args.color_max is not None:
        kwargs["color_max"] = args.color_max
    if args.seed is not None and args.suite != "alexander":
        kwargs["seed"] = args.seed
    results = fn(**kwargs)
    return {
        "command": "check",
        "inputs": {"suite": args.suite, **kwargs},
        "outputs": {
            "results": [{"name": r.name, "residual": r.residual, "tolerance": r.tolerance,
                         "passed": r.passed} for r in results],
            "passed": all(r.passed for r in results),
        },
        "diagnostics": {},
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--timings", action="store_true",
                        help="add wall-clock seconds to diagnostics (breaks byte-identical output)")
    p = argparse.ArgumentParser(prog="jonesvol", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    j = sub.add_parser("jones", parents=[common], help="colored Jones polynomial of a braid closure")
    j.add_argument("--braid", required=True)
    j.add_argument("--strands", type=int)
    j.add_argument("--color", type=int, required=True, help="dimension N")
    qs = j.add_mutually_exclusive_group(required=True)
    qs.add_argument("--root", type=int, help="q = exp(2 pi i / M)")
    qs.add_argument("--h", type=complex_pair, help="q = exp(h), h given as re,im")
    qs.add_argument("--theta", type=complex_pair, help="q = exp(theta / N)")
    j.set_defaults(func=cmd_jones)

    v = sub.add_parser("volume-limit", parents=[common], help="2 pi log|J_N(exp(2 pi i/N))| / N and its fit")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--knot", choices=("fig8",))
    src.add_argument("--braid")
    v.add_argument("--strands", type=int)
    v.add_argument("--n", type=int_range, required=True, help="a:b[:step]")
    v.add_argument("--fit", type=window, help="lo:hi")
    v.add_argument("--threads", type=int)
    v.set_defaults(func=cmd_volume_limit)

    d = sub.add_parser("deform", parents=[common], help="figure-eight deformation at meridian log-holonomy u")
    d.add_argument("--u", type=complex_pair, required=True)
    d.set_defaults(func=cmd_deform)

    c = sub.add_parser("check", parents=[common], help="run an invariant suite")
    c.add_argument("suite", choices=sorted(checks.SUITES))
    c.add_argument("--color-max", type=int)
    c.add_argument("--seed", type=int)
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        result = args.func(args)
    except BraidParseError as exc:
        print(f"jonesvol: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceGuardError as exc:
        print(f"jonesvol: error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (EvaluationError, BranchError, BranchCutError, ValueError, ArithmeticError) as exc:
        print(f"jonesvol: error: {exc}", file=sys.stderr)
        return EXIT_MATH
    if args.timings:
        result.setdefault("diagnostics", {})["seconds"] = time.perf_counter() - start
    emit(result, args.format)
    if result["command"] == "check" and not result["outputs"]["passed"]:
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
