import io
import json
import subprocess
import sys

import pytest

from ainfsurf.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, run
from ainfsurf.report import Report


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


PENTAGON_GOLDEN = """\
command: polygon
params: n=5 t=5 k=3 coefficients=Z
Δ3(P) = e1⊗e2⊗e3 + e1⊗e2⊗e4 + e1⊗e3⊗e4 + e2⊗e3⊗e4
status: ok
"""

SEVEN_GON_GOLDEN = """\
command: polygon
params: n=7 t=5 k=2 coefficients=Z
∂ P = e1 + e2 + e3 + e4 - e5 - e6 - e7
Δ2(P) = v1⊗P + e1⊗e2 + e1⊗e3 + e1⊗e4 + e2⊗e3 + e2⊗e4 + e3⊗e4 - e6⊗e5 - e7⊗e5 - e7⊗e6 + P⊗v5
status: ok
"""

X3_GOLDEN = """\
command: surface
params: genus=3 orientable=false word=e1 e1 e3 e3 E2 E2 t=5 k=4 coefficients=Z
projected Δ4(X) = e1⊗e1⊗e3⊗e3
closed-form Δ4(X) = e1⊗e1⊗e3⊗e3
agreement Δ4(X) = 0  holds: true
status: ok
"""

CUP_GOLDEN = """\
command: cup
params: genus=2 orientable=true word=e1 e2 e3 e4 E3 E4 E1 E2 t=5
cup X ranks=1,4,1 basis=e1,e2,e3,e4 = [0 1 0 0; 1 0 0 0; 0 0 0 1; 0 0 1 0]
status: ok
"""


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["polygon", "--n", "5", "--k", "3"], PENTAGON_GOLDEN),
        (["polygon", "--n", "7", "--t", "5", "--k", "2", "--boundary"], SEVEN_GON_GOLDEN),
        (["surface", "--genus", "3", "--k", "4"], X3_GOLDEN),
        (["cup", "--genus", "2", "--orientable"], CUP_GOLDEN),
    ],
)
def test_golden_text(argv, golden):
    assert call(*argv) == (EXIT_OK, golden)


def test_polygon_top_index_prints_zero():
    code, out = call("polygon", "--n", "5", "--t", "5", "--k", "5")
    assert code == EXIT_OK
    assert "Δ5(P) = 0\n" in out


def test_surface_mod2_view():
    code, out = call("surface", "--genus", "3", "--k", "2", "--mod2")
    assert code == EXIT_OK
    assert "projected Δ2(X) = v⊗X + e1⊗e1 + e2⊗e2 + e3⊗e3 + X⊗v" in out


def test_failed_agreement_gets_its_own_exit_code():
    # over Z the projected Δ2(X3) carries 4 e1⊗e3 beyond the closed form
    code, out = call("surface", "--genus", "3", "--k", "2")
    assert code == EXIT_FAILED
    assert "agreement Δ2(X) = 4 e1⊗e3  holds: false" in out
    assert out.endswith("status: FAILED\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["polygon", "--n", "2", "--k", "2"],
        ["polygon", "--n", "5", "--t", "7", "--k", "2"],
        ["polygon", "--n", "5", "--k", "1"],
        ["surface", "--k", "2"],
        ["surface", "--word", "a b a", "--t", "2", "--k", "2"],
        ["surface", "--word", "a a b b"],
        ["surface", "--word", "a b a b", "--t", "3", "--k", "2"],
        ["verify", "--n", "5", "--relation-min", "4", "--relation-max", "3"],
        ["sweep", "--n-max", "2"],
        ["cup", "--word", "a b B A", "--t", "3"],
        ["frobnicate"],
    ],
)
def test_invalid_parameters(argv, capsys):
    code, out = call(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert capsys.readouterr().err


def test_verify_polygon():
    code, out = call("verify", "--n", "7", "--t", "5")
    assert code == EXIT_OK
    assert "relation 8 at P" in out
    assert "holds: false" not in out


def test_verify_surface_mod2():
    code, out = call("verify", "--genus", "2", "--orientable", "--mod2", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["params"]["coefficients"] == "Z2"
    assert {r["relation"] for r in data["results"]} == set(range(2, 10))


def test_special_surface():
    code, out = call("surface", "--special", "projective_plane", "--k", "3", "--mod2")
    assert code == EXIT_OK
    assert "projected Δ3(X) = 0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["polygon", "--n", "9", "--t", "4", "--k", "3", "--all-cells", "--boundary"],
        ["surface", "--genus", "4", "--orientable", "--k", "3", "--all-cells"],
        ["verify", "--n", "6"],
        ["cup", "--genus", "5"],
    ],
)
def test_json_round_trip_and_determinism(argv):
    code, first = call(*argv, "--format", "json")
    _, second = call(*argv, "--format", "json")
    assert first == second
    assert Report.from_json(first).to_json() == first
    _, text1 = call(*argv)
    _, text2 = call(*argv)
    assert text1 == text2


def test_json_schema():
    _, out = call("surface", "--genus", "3", "--k", "3", "--format", "json")
    data = json.loads(out)
    assert list(data) == ["command", "params", "results"]
    for r in data["results"]:
        assert r["cell"] == "X"
        assert "k" in r
        assert all(set(t) == {"coeff", "word"} for t in r["terms"])
        assert all(isinstance(t["word"], list) for t in r["terms"])
    assert data["results"][0]["terms"] == [
        {"coeff": 2, "word": ["e1", "e1", "e3"]},
        {"coeff": 2, "word": ["e1", "e3", "e3"]},
    ]
    assert data["results"][-1]["holds"] is True


def test_output_file(tmp_path):
    target = tmp_path / "report.json"
    code, out = call("polygon", "--n", "4", "--k", "3", "--format", "json", "--output", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["command"] == "polygon"


def test_sweep_order_does_not_depend_on_workers():
    _, serial = call("sweep", "--n-max", "6", "--format", "json")
    _, parallel = call("sweep", "--n-max", "6", "--jobs", "3", "--format", "json")
    assert serial == parallel


def test_sweep_full_grid():
    code, out = call("sweep", "--n-max", "12", "--format", "json", "--jobs", "4")
    assert code == EXIT_OK
    rows = json.loads(out)["results"]
    assert all(r["holds"] for r in rows)
    assert {(r["n"], r["t"]) for r in rows} == {(n, t) for n in range(3, 13) for t in range(2, n + 1)}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ainfsurf", "polygon", "--n", "5", "--k", "3"],
        capture_output=True,
        text=True,
        encoding="utf-8",
    )
    assert proc.returncode == 0
    assert proc.stdout == PENTAGON_GOLDEN
