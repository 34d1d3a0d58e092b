import json
from pathlib import Path

import pytest

from jumploci.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_betti(capsys):
    assert run(capsys, "betti", "--lie", DATA / "aff1.json")[1].strip() == "1 1 0"
    assert run(capsys, "betti", "--lie", DATA / "heis3.json")[1].strip() == "1 2 2 1"
    assert run(capsys, "betti", "--cdga", DATA / "free2.json")[1].strip() == "1 2"
    assert run(capsys, "betti", "--lie", "sl2")[1].strip() == "1 0 0 1"


def test_malformed_input_exits_nonzero(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"basis": ["H", "Xp", "Xm"], "brackets": [
        {"left": 0, "right": 1, "value": {"1": 3}}, {"left": 0, "right": 2, "value": {"2": -2}},
        {"left": 1, "right": 2, "value": {"0": 1}}]}))
    code, _, err = run(capsys, "betti", "--lie", bad)
    assert code == 2 and "Jacobi" in err
    (tmp_path / "junk.json").write_text("{not json")
    assert run(capsys, "betti", "--cdga", tmp_path / "junk.json")[0] == 2
    assert run(capsys, "betti", "--lie", tmp_path / "missing.json")[0] == 2


def test_resonance(capsys):
    code, out, _ = run(capsys, "resonance", "--lie", DATA / "aff1.json", "--rep", "2", "--degree", 1, "--seed", 7)
    assert code == 0 and "cone" in out and "nilpotent cone" in out and "exceptions = 0/30" in out
    code, out, _ = run(capsys, "resonance", "--lie", DATA / "sl2.json", "--rep", "2", "--degree", 1)
    assert out.strip() == "degree 1: empty"
    code, out, _ = run(capsys, "resonance", "--lie", DATA / "heis3.json", "--rep", "3", "--degree", 1, "--seed", 7)
    assert "V(det theta) = sl2" in out


def test_charvar(capsys):
    assert run(capsys, "charvar", "--bundle", DATA / "sol.json", "--degree", 1)[1].strip() == \
        "degree 1: {1, roots(x^2-3x+1)}"
    assert run(capsys, "charvar", "--bundle", DATA / "nil.json", "--degree", 1)[1].strip() == "degree 1: {1}"
    code, _, err = run(capsys, "charvar", "--bundle", DATA / "sol.json", "--degree", 5)
    assert code == 2 and "out of range" in err


def test_charvar_json(capsys):
    code, out, _ = run(capsys, "charvar", "--bundle", DATA / "sol.json", "--format", "json")
    data = json.loads(out)
    assert [d["degree"] for d in data["degrees"]] == [0, 1, 2, 3]
    assert data["character_torus"]["torus"] == "C*"


def test_mc_check_and_pi_locus(capsys):
    code, out, _ = run(capsys, "mc-check", "--lie", "aff1", "--omega", '[["1/2",0,0],[0,1,0]]', "--rep", "2")
    assert code == 0 and "flat: yes" in out and "twisted cohomology: 0 0 0" in out
    code, out, _ = run(capsys, "mc-check", "--lie", "aff1", "--omega", "[[1,0,0],[0,1,0]]")
    assert code == 1 and "flat: no" in out
    code, out, _ = run(capsys, "mc-check", "--lie", "aff1", "--omega", "[[1,0,0]]")
    assert code == 2
    code, out, _ = run(capsys, "pi-locus", "--lie", "aff1", "--rep", "2", "--omega", "[[0,1,0],[0,0,0]]")
    assert code == 0 and "omega in Pi: yes" in out
    code, out, _ = run(capsys, "pi-locus", "--lie", "aff1", "--rep", "2", "--omega", "[[1,0,0],[0,0,0]]")
    assert code == 1


def test_rep_scan(capsys):
    code, out, _ = run(capsys, "rep-scan", "--lie", "aff1", "--section", DATA / "aff1_section.json")
    assert code == 0 and out.strip() == "section 0: (0) rank-one, (1) rank-2"
    code, out, _ = run(capsys, "rep-scan", "--jordan", "2:1", "--section", DATA / "aff1_section.json",
                       "--format", "json")
    # basis z, u with [u, z] = 2z: the line z -> tH/2, u -> tX+ is a hom only at t = 0
    sols = json.loads(out)["sections"][0]["solutions"]
    assert [s["class"]["kind"] for s in sols] == ["rank-one"]


def test_certify(capsys):
    code, out, _ = run(capsys, "certify", "--cdga", DATA / "free2.json", "--degree", 1)
    assert out.strip() == "degree 1: certified_nontrivial"
    code, out, _ = run(capsys, "certify", "--lie", "heis3", "--degree", 1, "--seed", 2)
    assert out.strip() == "degree 1: probabilistically_trivial (50 lines, seed 2)"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "euler")
    assert code == 0 and out.startswith("euler: pass")
    code, out, _ = run(capsys, "verify", "rigidity", "--format", "json")
    assert json.loads(out)["results"][0]["notes"] == {"adjoint": 0, "defining": 0}


@pytest.mark.parametrize("argv", [
    ("resonance", "--lie", "heis3", "--rep", "2", "--seed", "3", "--format", "json"),
    ("certify", "--lie", "heis5", "--seed", "4", "--format", "json"),
    ("verify", "charvar", "--seed", "2", "--format", "json"),
])
def test_byte_identical_reruns(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
