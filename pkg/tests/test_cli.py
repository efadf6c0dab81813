from __future__ import annotations

import json
from pathlib import Path

import pytest

from l1bubble.cli import main
from l1bubble.geometry import Configuration
from l1bubble.gridio import write_grid


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cubes(tmp_path):
    p = tmp_path / "cubes.grid"
    write_grid(Configuration.from_cells([(0, 0, 0)], [(1, 0, 0)]), p)
    return str(p)


def test_planar(capsys):
    code, out, _ = run(capsys, "planar", "--a", "2", "--b", "4")
    d = json.loads(out)
    assert code == 0
    assert d["regime"] == "Rectangles" and d["energy"] == 12
    assert d["schema_version"] == 1


def test_emin(capsys):
    code, out, _ = run(capsys, "emin", "--va", "6", "--vb", "6")
    d = json.loads(out)
    assert (d["M"], d["E"]) == (4, 36)
    assert d["cuboids"]["energy"] == 36


def test_emin_outside_range_has_no_cuboids(capsys):
    code, out, _ = run(capsys, "emin", "--va", "1", "--vb", "5")
    assert code == 0 and json.loads(out)["cuboids"] is None


def test_energy_text_and_json(capsys, cubes):
    code, out, _ = run(capsys, "energy", "--input", cubes)
    assert code == 0 and "E=11" in out
    code, out, _ = run(capsys, "energy", "--input", cubes, "--json")
    assert json.loads(out)["energy"] == 11


def test_bound_auto_records_all_p(capsys, cubes):
    code, out, _ = run(capsys, "bound", "--input", cubes)
    d = json.loads(out)
    assert code == 0
    assert d["all_p"] == {"1": "1", "2": "0", "3": "0"}
    assert d["report"]["axis"] == 2


def test_bound_hypothesis_exit(capsys, cubes):
    code, _, err = run(capsys, "bound", "--input", cubes, "--axis", "1")
    assert code == 2
    assert err.startswith("error hypothesis_violation[overlap]:")
    assert len(err.strip().splitlines()) == 1


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.grid"
    bad.write_text("AX\n")
    code, _, err = run(capsys, "energy", "--input", str(bad))
    assert code == 3 and err.startswith("error parse_error:")
    code, _, _ = run(capsys, "energy", "--input", str(tmp_path / "missing.grid"))
    assert code == 3


def test_check_slicing(capsys, cubes):
    code, out, _ = run(capsys, "check-slicing", "--input", cubes, "--axis", "3")
    assert code == 0 and json.loads(out)["report"]["holds"] is True


def test_search_writes_witnesses_and_manifest(capsys, tmp_path):
    outdir = tmp_path / "run"
    code, out, _ = run(capsys, "--outdir", str(outdir), "search3d", "--va", "2", "--vb", "2")
    d = json.loads(out)
    assert code == 0 and d["result"]["energy"] == 18
    man = json.loads((outdir / "manifest.json").read_text())
    assert man["command"] == "search3d"
    for p in man["outputs"]:
        assert Path(p).exists()
    assert any(p.endswith("witness_000.grid") for p in man["outputs"])


def test_reports_are_reproducible(capsys, tmp_path):
    for k in (1, 2):
        run(capsys, "--outdir", str(tmp_path / f"r{k}"), "search2d", "--va", "3", "--vb", "4")
    a = (tmp_path / "r1" / "search2d.json").read_text()
    b = (tmp_path / "r2" / "search2d.json").read_text()
    assert a == b.replace(str(tmp_path / "r2"), str(tmp_path / "r1"))


def test_guardrail_exit(capsys, monkeypatch):
    monkeypatch.delenv("L1BUBBLE_MAX_CELLS", raising=False)
    code, _, err = run(capsys, "search2d", "--va", "10", "--vb", "10")
    assert code == 2 and err.startswith("error guardrail:")


def test_sweep(capsys, tmp_path):
    csv_path = tmp_path / "s.csv"
    code, out, _ = run(capsys, "sweep", "--dim", "2", "--max-total", "6", "--out", str(csv_path))
    assert code == 0
    assert csv_path.read_text().splitlines()[0] == "a,b,discrete_min,continuous_value,equal,witness_path"
    assert [2, 4] in json.loads(out)["equal_rows"]


def test_verify_lemmas_exit_matches_reports(capsys):
    code, out, _ = run(capsys, "verify-lemmas", "--grid", "fast")
    d = json.loads(out)
    assert code == (0 if d["passed"] else 4)
    assert set(d["failed"]) == {r["check_id"] for r in d["reports"] if r["verdict"] == "fail"}


def test_float_formatting(capsys):
    _, out, _ = run(capsys, "planar", "--a", "4", "--b", "1")
    assert json.loads(out)["energy"] == 10.8284271247
