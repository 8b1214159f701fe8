"""Golden-file tests for the command line.

Regenerate the files after an intended output change with

    python tests/test_cli.py --regen
"""

import contextlib
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from jonesvol import checks, cli
from jonesvol.checks import CheckResult

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "jones_fig8_root2.json": ["jones", "--braid", "1 -2 1 -2", "--color", "2", "--root", "2"],
    "jones_fig8_root5.json": ["jones", "--braid", "1 -2 1 -2", "--color", "5", "--root", "5"],
    "jones_unknot_h.csv": ["jones", "--braid", "1", "--strands", "2", "--color", "7",
                           "--h", "0.1,0.2", "--format", "csv"],
    "jones_trefoil_theta.json": ["jones", "--braid", "1 1 1", "--color", "3", "--theta", "0.5,0.25"],
    "volume_limit_fig8.csv": ["volume-limit", "--knot", "fig8", "--n", "1000:10000:100",
                              "--fit", "1000:10000", "--format", "csv"],
    "volume_limit_single.json": ["volume-limit", "--knot", "fig8", "--n", "2:2"],
    "volume_limit_trefoil.json": ["volume-limit", "--braid", "1 1 1", "--n", "2:8", "--fit", "2:8",
                                  "--threads", "2"],
    "deform_cusp.json": ["deform", "--u", "0,0"],
    "deform_small.json": ["deform", "--u", "0.05,0"],
    "deform_complex.csv": ["deform", "--u", "0.1,0.07", "--format", "csv"],
    "check_yb.json": ["check", "yb", "--color-max", "5"],
    "check_skein.json": ["check", "skein"],
    "check_lobachevsky.json": ["check", "lobachevsky"],
}

ERRORS = [
    (["jones", "--braid", "0", "--color", "2", "--root", "2"], 2),
    (["jones", "--braid", "1 a", "--color", "2", "--root", "2"], 2),
    (["jones", "--braid", "3", "--strands", "2", "--color", "2", "--h", "0,1"], 2),
    (["jones", "--braid", "1", "--color", "2"], 2),                 # no q given
    (["jones", "--braid", "1", "--color", "2", "--h", "1"], 2),     # malformed complex
    (["frobnicate"], 2),
    (["jones", "--braid", "1 1", "--color", "2", "--root", "2"], 3),  # link at a root of unity
    (["jones", "--braid", "1", "--color", "3", "--h", "0,0"], 3),     # q = 1
    (["deform", "--u", "10,0"], 3),
    (["deform", "--u", "0,0.6"], 3),
    (["volume-limit", "--braid", "1 -2 1 -2", "--n", "200:300"], 4),
    (["volume-limit", "--braid", "1 1 1", "--n", "2:10000"], 4),
]


def run(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = cli.main(argv)
    return code, buf.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out = run(CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


@pytest.mark.parametrize("name", ["jones_fig8_root5.json", "deform_small.json", "volume_limit_trefoil.json"])
def test_byte_identical_subprocess(name):
    outs = [subprocess.run([sys.executable, "-m", "jonesvol", *CASES[name]],
                           capture_output=True, text=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] == (GOLDEN / name).read_text()


@pytest.mark.parametrize("argv,code", ERRORS)
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_check_failure_exits_one(monkeypatch):
    monkeypatch.setitem(checks.SUITES, "skein", lambda **kw: [CheckResult("forced", 1.0, 0.5)])
    code, out = run(["check", "skein"])
    assert code == 1
    assert json.loads(out)["outputs"]["passed"] is False


def test_golden_values():
    """The stored outputs carry the expected numbers, not just stable bytes."""
    load = lambda n: json.loads((GOLDEN / n).read_text())
    v = load("jones_fig8_root2.json")["outputs"]["value"]
    assert abs(v["re"] - 5) < 1e-10 and abs(v["im"]) < 1e-10
    v = load("jones_fig8_root5.json")["outputs"]["value"]
    want = sum(math.prod(4 * math.sin(k * math.pi / 5) ** 2 for k in range(1, j + 1)) for j in range(5))
    assert abs(v["re"] - want) < 1e-9
    cusp = load("deform_cusp.json")
    assert cusp["outputs"]["dehn"] is None
    assert abs(cusp["outputs"]["volume"] - 2.0298832128193072) < 1e-12
    small = load("deform_small.json")
    assert all(r <= 1e-8 for r in small["diagnostics"]["residuals"].values())
    assert small["outputs"]["dehn"] is not None
    single = load("volume_limit_single.json")["outputs"]
    assert len(single["series"]) == 1 and single["fit"] is None
    for name in ("check_yb.json", "check_skein.json", "check_lobachevsky.json"):
        assert load(name)["outputs"]["passed"] is True
    fit_line = [l for l in (GOLDEN / "volume_limit_fig8.csv").read_text().splitlines()
                if l.startswith("# fit.a,")][0]
    assert abs(float(fit_line.split(",")[1]) - 2.0298832128193072) < 1e-3


def test_csv_unknot_value():
    header, row = (GOLDEN / "jones_unknot_h.csv").read_text().splitlines()
    rec = dict(zip(header.split(","), row.split(",")))
    assert abs(float(rec["value.re"]) - 1) < 1e-12 and abs(float(rec["value.im"])) < 1e-12


def test_dumps_format():
    s = cli.dumps({"b": 0.1, "a": [1, complex(0.5, -2)], "c": None, "d": math.inf})
    assert s.index('"a"') < s.index('"b"')
    assert "0.10000000000000001" in s
    assert '"re": 0.5' in s and '"im": -2' in s
    assert '"d": null' in s


if __name__ == "__main__":
    if "--regen" in sys.argv:
        GOLDEN.mkdir(exist_ok=True)
        for name, argv in CASES.items():
            code, out = run(argv)
            assert code == 0, (name, code)
            (GOLDEN / name).write_text(out)
            print("wrote", name)
