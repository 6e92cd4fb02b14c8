import json
import shutil
import subprocess

import pytest

from linkgrp.cli import RunConfig, main, run


def call(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_conjugate_fixture(capsys):
    status, out, _ = call(capsys, "conjugate", "trefoil.pres", "x3^-1 x4 x0^-1 x2",
                          "x2^-1 x3 x0^-1 x4")
    assert status == 0
    assert out.startswith("conjugate\ncertificate: ") and "conjugator=" in out


def test_not_conjugate(capsys):
    status, out, _ = call(capsys, "conjugate", "trefoil.pres", "x1 x3^-1", "x4^-1 x0")
    assert status == 1 and out.startswith("not conjugate")


def test_empty_word_is_identity(capsys):
    assert call(capsys, "word", "trefoil.pres", "")[0] == 0
    assert call(capsys, "word", "trefoil.pres", "x1")[0] == 1


@pytest.mark.parametrize("colour", ["white", "black", "both"])
def test_word_colours(capsys, colour):
    rel = "x1 x4^-1 x2 x0^-1"
    assert call(capsys, "word", "fig8.pres", rel, "--colour", colour)[0] == 0
    assert call(capsys, "word", "fig8.pres", "x1 x0^-1", "--colour", colour)[0] == 1


def test_check_sc(capsys):
    status, out, _ = call(capsys, "check-sc", "fig8.pres")
    assert status == 0 and out == "C''(4): pass, T(4): pass\n"
    status, out, _ = call(capsys, "check-sc", "nonalt_sc.pres")
    assert status == 1 and "witness: x1 x2^-1" in out


def test_check_sc_json(capsys):
    status, out, _ = call(capsys, "check-sc", "t4_violation.pres", "--json")
    data = json.loads(out)
    assert status == 1 and data["T(4)"] is False and len(data["T(4) witness"]) == 3


def test_present_from_diagram(capsys):
    status, out, _ = call(capsys, "present", "trefoil.pd", "--json")
    data = json.loads(out)
    assert status == 0 and len(data["generators"]) == 5 and data["symmetrized"] == 24


def test_geodesic_trace(capsys):
    status, out, _ = call(capsys, "geodesic", "trefoil.pres", "x1 x0^-1 x3", "--trace")
    lines = out.splitlines()
    assert status == 0 and lines[0] == "x4"
    assert json.loads(lines[1])["step"] == "chain-collapse"


def test_classes(capsys):
    status, out, _ = call(capsys, "classes", "trefoil.pres", "x1 x3^-1")
    reps = out.split("\n")
    assert status == 0 and "x2^-1 x3" in reps and "x4^-1 x0" not in reps


def test_nontrivial_json(capsys):
    status, out, _ = call(capsys, "nontrivial", "hopf.pd", "--json")
    data = json.loads(out)
    assert status == 0 and data["nontrivial"]
    assert [c["parity_changes"] for c in data["components"]] == [1, 1]


def test_nontrivial_needs_diagram(capsys):
    status, out, _ = call(capsys, "nontrivial", "trefoil.pres", "--json")
    assert status == 2 and json.loads(out)["error"] == "UsageError"


def test_errors_exit_two(capsys, tmp_path):
    status, out, _ = call(capsys, "word", "trefoil.pres", "x9", "--json")
    assert status == 2 and json.loads(out)["error"] == "ParseError"
    status, _, err = call(capsys, "word", str(tmp_path / "missing.pres"), "x1")
    assert status == 2 and "no such file" in err
    status, out, _ = call(capsys, "word", "nonalt_sc.pres", "x1", "--json")
    assert json.loads(out)["error"] == "NotSmallCancellation"
    bad = tmp_path / "bad.pd"
    bad.write_text("X[1,4,2,5] X[3,6,4,1]\n")
    status, out, _ = call(capsys, "present", str(bad), "--json")
    assert status == 2 and json.loads(out)["error"] == "DanglingEdge"


def test_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate", "trefoil.pres"])
    assert info.value.code == 2


def test_oracle_flag(capsys):
    status, out, _ = call(capsys, "conjugate", "trefoil.pres", "x1 x3^-1", "x2^-1 x3",
                          "--oracle")
    assert status == 0 and "oracle: agrees (yes" in out
    status, out, _ = call(capsys, "word", "trefoil.pres", "x1 x0^-1 x3 x4^-1", "--oracle",
                          "--json")
    assert json.loads(out)["oracle"]["agrees"]


def test_tiling_outputs(capsys, tmp_path):
    svg = tmp_path / "t.svg"
    status, out, _ = call(capsys, "conjugate", "trefoil.pres", "x3^-1 x4 x0^-1 x2",
                          "x2^-1 x3 x0^-1 x4", "--json", "--svg", str(svg))
    data = json.loads(out)
    assert data["tiling"]["squares"] and svg.read_text().startswith("<svg")


def test_deterministic(capsys):
    runs = [call(capsys, "classes", "fig8.pres", "x2^-1 x1 x5^-1 x3", "--json")[1]
            for _ in range(2)]
    assert runs[0] == runs[1]


def test_run_config_directly(capsys):
    assert run(RunConfig("check-sc", "trefoil.pd")) == 0
    capsys.readouterr()


@pytest.mark.skipif(shutil.which("linkgrp") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["linkgrp", "check-sc", "fig8.pres"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "C''(4): pass, T(4): pass"
