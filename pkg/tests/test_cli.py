from __future__ import annotations

import json

import pytest

from khobs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kh_trefoil_grid(capsys):
    code, out, _ = run(capsys, "kh", "corpus:trefoil", "--backend", "naive")
    assert code == 0
    assert "total rank: 3" in out
    assert "width: 1" in out


def test_kh_10_124_json(capsys):
    code, out, _ = run(capsys, "kh", "corpus:10_124", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["entries"]) == 7
    assert data["width"] == 2


def test_kh_unknot(capsys):
    code, out, _ = run(capsys, "kh", "corpus:unknot", "--format", "json")
    assert json.loads(out)["entries"] == [[0, 0, 1]]


def test_goeritz_fig8_tau0(capsys):
    code, out, _ = run(capsys, "goeritz", "corpus:fig8-tau0")
    assert code == 0
    assert "determinant: 0" in out


def test_jones_trefoil(capsys):
    code, out, _ = run(capsys, "jones", "corpus:trefoil")
    assert code == 0
    assert "|V(-1)| = 3" in out


def test_tau_fig8_zero_is_13_crossings(capsys):
    code, out, _ = run(capsys, "tau", "corpus:fig8", "0/1", "--format", "json")
    assert code == 0
    assert json.loads(out)["crossings"] == 13


def test_tau_trivial_five(capsys):
    # the 5/1 closure of the trivial tangle is the (2,5) torus link diagram
    code, out, _ = run(capsys, "tau", "corpus:trivial", "5/1")
    assert code == 0
    assert len([l for l in out.splitlines() if l and ":" not in l and l != "pd"]) == 5


def test_tau_meridian_unknot(capsys):
    code, out, _ = run(capsys, "tau", "corpus:fig8", "1/0", "--format", "json")
    assert code == 0
    from khobs.formats import parse_link
    from khobs.khovanov import reduced_kh

    d = parse_link(json.loads(out)["pd"])
    assert reduced_kh(d).total_rank() == 1


def test_obstruct_trivial_all_inconclusive(capsys):
    code, out, _ = run(capsys, "obstruct", "corpus:trivial", "--mode", "lens",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["overall"] == "Inconclusive"
    assert all(r["status"] == "Inconclusive" for r in data["intervals"])


def test_obstruct_fig8_lens_all_obstructed(capsys):
    code, out, _ = run(capsys, "obstruct", "corpus:fig8", "--mode", "lens",
                       "--format", "json")
    data = json.loads(out)
    assert data["overall"] == "Obstructed"
    assert all(r["status"] == "Obstructed" for r in data["intervals"])


def test_unknot_check_trivial(capsys):
    code, out, _ = run(capsys, "unknot-check", "corpus:trivial")
    assert code == 0
    assert out.startswith("is-trivial-pattern")


def test_scan_deterministic(capsys):
    _, out1, _ = run(capsys, "scan", "corpus:fig8", "--format", "json")
    _, out2, _ = run(capsys, "scan", "corpus:fig8", "--format", "json")
    assert out1 == out2
    data = json.loads(out1)
    assert data["genericity"] == "decay-generic"
    assert data["ell"] == 0


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "kh", "corpus:not-a-fixture")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "tau", "corpus:trivial", "bogus")
    assert code == 2
    code, _, err = run(capsys, "scan", "corpus:trivial", "--window", "5..1")
    assert code == 2


def test_capacity_exit_code(capsys):
    code, _, err = run(capsys, "kh", "corpus:10_124", "--capacity", "2")
    assert code == 3 and "capacity" in err


def test_untranscribed_fixture_exit_code(capsys):
    code, _, err = run(capsys, "unknot-check", "corpus:14n11893")
    assert code == 2
