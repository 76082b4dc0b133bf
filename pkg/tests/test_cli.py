import os
from pathlib import Path

import pytest

from genusone.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "cohom": ["cohom", "1,-3"],
    "curve_ghost_core": ["curve", "ghost_core.fam"],
    "family_rtail3_ranks": ["family", "rtail3.fam", "--m", "1,1,1", "--fiber-ranks"],
    "family_oabc_ranks": ["family", "oabc.fam", "--fiber-ranks"],
    "family_rtail3_kv": ["--format", "kv", "family", "rtail3.fam", "--m", "2,1,1"],
    "blowup_rtail3_center": ["blowup", "rtail3.fam", "--center", "t1,t2,t3"],
    "blowup_rtail3_none": ["blowup", "rtail3.fam"],
    "blowup_oabc_two_steps": ["blowup", "oabc.fam", "--center", "tb,tc", "--center", "ta,tb"],
    "extend_m2": ["extend", "--m", "2", "--twist", "none", "--kmax", "5"],
    "extend_fixture": ["extend", "extend2.fam"],
    "extend_twist_kv": ["--format", "kv", "extend", "--m", "3", "--twist", "d0-d1", "--kmax", "3"],
}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, _ = run(CASES[name], capsys)
    assert code == 0
    path = GOLDEN / f"{name}.txt"
    if os.environ.get("GENUSONE_UPDATE_GOLDEN"):
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


def test_output_is_repeatable(capsys):
    first = run(CASES["family_oabc_ranks"], capsys)
    assert run(CASES["family_oabc_ranks"], capsys) == first


def test_origin_rank_closes_the_table(capsys):
    _, out, _ = run(CASES["family_rtail3_ranks"], capsys)
    last = out.strip().splitlines()[-1].split()
    assert last[0] == "{t1,t2,t3}" and last[1] == "4"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["family", "missing.fam"],
        ["family", "rtail3.fam", "--m", "1,x"],
        ["family", "rtail3.fam", "--m", "1,1"],
        ["curve", "rtail3.fam"],
        ["extend", "--twist", "sideways"],
        ["blowup", "rtail3.fam", "--center", "t7"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_parse_error_is_positioned(tmp_path, capsys):
    bad = tmp_path / "bad.fam"
    bad.write_text("meta.kind = family\nfamily.bogus = 1\nfamily.base = local\nfamily.tails = a\ntail.a.m = 1\n")
    code, _, err = run(["family", str(bad)], capsys)
    assert code == 2
    assert "line 2" in err and "family.bogus" in err


def test_computation_error_exits_1(tmp_path, capsys):
    curve = tmp_path / "c.fam"
    curve.write_text(
        "meta.kind = curve\ncurve.components = o, a\ncomponent.o.genus = 1\ncomponent.o.degree = 0\n"
        "component.a.genus = 0\ncomponent.a.degree = 1\nnode.q = a:0, o:q\n"
    )
    code, _, err = run(["curve", str(curve)], capsys)
    assert code == 1
    assert "triviality" in err


def test_selftest_reports_each_criterion(monkeypatch, capsys):
    from genusone import acceptance

    monkeypatch.setattr(acceptance, "CRITERIA", [c for c in acceptance.CRITERIA if c[0] in (1, 7)])
    code, out, _ = run(["selftest"], capsys)
    assert code == 0
    assert "criterion.1" in out and "criterion.7" in out and "2/2" in out


def test_selftest_fails_when_a_criterion_fails(monkeypatch, capsys):
    from genusone import acceptance

    monkeypatch.setattr(acceptance, "CRITERIA", [(9, "always false", lambda: (False, "by construction"))])
    code, out, _ = run(["selftest"], capsys)
    assert code == 1
    assert "FAIL" in out
