from __future__ import annotations

import json

import pytest

from orchard.cli import cli, profile_report
from orchard.formats import parse_records


def run(capsys, *argv):
    code = cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_profile(capsys):
    code, out, _ = run(capsys, "check-profile", "--n", "9", "--t", "3:12")
    assert code == 0 and "infeasible (Melchior deficit 3)" in out
    code, out, _ = run(capsys, "check-profile", "--n", "12", "--t", "2:9,3:19")
    assert code == 0 and "feasible (Melchior slack 0)" in out


def test_check_profile_pair_count():
    ok, lines = profile_report(12, {3: 19})
    assert ok and "t2=9 inferred" in lines[0]
    ok, lines = profile_report(5, {3: 4})
    assert not ok and lines[-1] == "infeasible (pair count)"
    ok, lines = profile_report(12, {2: 10, 3: 19})
    assert not ok


def test_check_profile_advisory():
    # pair count and Melchior hold, but t3 exceeds the extremal count
    ok, lines = profile_report(7, {3: 7})
    assert any(l.startswith("advisory") for l in lines)


def test_catalog(capsys):
    code, out, _ = run(capsys, "check-profile", "--catalog")
    assert code == 0
    table = dict(l.split(":", 1) for l in out.strip().splitlines())
    assert "infeasible (Melchior deficit 24)" in table["klein"]
    assert "infeasible (Melchior deficit 120)" in table["wiman"]
    assert ": feasible" in table["boroczky-12"]


def test_boroczky(capsys, tmp_path):
    svg = tmp_path / "b.svg"
    code, out, _ = run(capsys, "boroczky", "--n", "12", "--svg", str(svg))
    assert code == 0
    assert "profile t2=9 t3=19" in out and "isomorphic to C6" in out
    assert svg.read_text().startswith("<?xml")


def test_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "boroczky", "--n", "7")
    assert code == 2 and err.startswith("orchard boroczky: error:")
    bad = tmp_path / "bad.txt"
    bad.write_text("[[1,2,3],[1,4]]")
    code, _, err = run(capsys, "classify", str(bad))
    assert code == 2 and "line 1, column 14" in err
    code, _, err = run(capsys, "check-profile", "--n", "9")
    assert code == 2


def test_enumerate_classify_realize_render(capsys, tmp_path):
    recs = tmp_path / "c.json"
    code, out, _ = run(capsys, "enumerate", "--n", "7", "--target-t3", "6", "--jobs", "1",
                       "--out", str(recs))
    assert code == 0
    records, meta = parse_records(recs.read_text())
    assert meta["command"] == "enumerate" and len(records) >= 1
    assert all(r.profile.t3 == 6 for r in records)
    code, out, _ = run(capsys, "classify", str(recs))
    assert code == 0 and "Melchior" in out
    svg = tmp_path / "w.svg"
    code, _, _ = run(capsys, "render", str(recs), "--svg", str(svg))
    assert code == 0 and "polyline" in svg.read_text()
    real = tmp_path / "r.json"
    code, out, _ = run(capsys, "realize", str(recs), "--seed", "0", "--restarts", "3",
                       "--samples", "200", "--jobs", "1", "--out", str(real))
    assert code == 0
    got, _ = parse_records(real.read_text())
    assert all(r.verdict in ("Realizable", "Obstructed", "Unknown") for r in got)
    for r in got:
        if r.verdict == "Realizable":
            code, _, _ = run(capsys, "render", str(real), "--svg", str(svg), "--kind", "lines")
            assert code == 0
            break
    json.loads(real.read_text())


def test_realize_requires_seed(capsys, tmp_path):
    f = tmp_path / "t.txt"
    f.write_text("[[1,2,3]]")
    with pytest.raises(SystemExit):
        cli(["realize", str(f)])
