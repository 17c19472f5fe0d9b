import subprocess
import sys

import pytest

from cli_cases import GOLDEN, ROOT, cases, run, spec

CASES = cases()


@pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv):
    assert run(argv) == (GOLDEN / f"{name}.txt").read_text()


def test_every_subcommand_covered():
    covered = {argv[0] for _, argv in CASES}
    assert covered == {"generate", "spectrum", "hull", "member", "divhull", "essential",
                       "extend", "functor", "adjoint", "pwl"}


def test_repeat_runs_identical():
    for _, argv in CASES[::7]:
        assert run(argv) == run(argv)


def test_spec_examples():
    assert "a=(1/2,0) n=2" in run(["essential", spec("six"), "--vector", "1/3,0"])
    assert "result=not-in-hull" in run(["member", spec("diag2"), "1/3,1/2"])
    assert run(["pwl", "mcnaughton", "x (+) x"]).splitlines()[2] == "true"


def test_positional_and_flag_forms_agree():
    a = run(["extend", spec("luk2"), spec("diag2"), "tests/data/maps/luk2_to_diag.map"])
    b = run(["extend", "--spec", spec("luk2"), "--spec", spec("diag2"),
             "--map", "tests/data/maps/luk2_to_diag.map"])
    assert a == b and a.startswith("exit=0")


@pytest.mark.parametrize("argv,code", [
    (["member", spec("six")], 3),
    (["hull", "tests/data/specs/missing.yaml"], 3),
    (["functor", spec("luk2"), spec("bool2"), "--map", "tests/data/maps/six_to_luk2.map"], 3),
])
def test_error_codes(argv, code):
    out = run(argv)
    assert out.startswith(f"exit={code}")
    assert out.rstrip().splitlines()[-1].startswith("error=")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rieszhull.cli", "essential", spec("six"), "--vector", "1/3,0"],
                          cwd=ROOT, capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "a=(1/2,0) n=2\n"
