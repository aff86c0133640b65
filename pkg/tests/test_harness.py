import csv
import io
import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from convexorder.catalog import FunctionalSpec as S
from convexorder.cli import main
from convexorder.harness import (
    T_TARGETS,
    T_GRID,
    NoBracket,
    SuiteResult,
    bisect_flip,
    emit_report,
    find_threshold,
    moment_threshold,
    regime_report,
    render_report,
    run_theorem_suite,
    sample_g,
    simplest_between,
    threshold_problems,
    verdict_holds,
)
from convexorder.polynomial import Poly


@pytest.fixture(scope="module")
def suite():
    return run_theorem_suite()


def test_suite_all_pass(suite):
    failed = [c.claim_id for c in suite.claims if not c.passed]
    assert failed == []
    ids = [c.claim_id for c in suite.claims]
    assert len(ids) == len(set(ids))


def test_suite_examples(suite):
    by_id = {c.claim_id: c for c in suite.claims}
    assert by_id["T-family: T_2 vs mid"].computed == "GreaterOrEqual"
    assert by_id["S2 bands: S2<=S1 alpha=2/5"].computed == "Incomparable"
    assert by_id["S2 bands: S2<=S1 alpha=2/5"].counterexample is not None
    assert by_id["chain: mid<=uniform"].computed == "LessOrEqual"
    assert by_id["chain: uniform<=trap"].computed == "LessOrEqual"


def test_suite_deterministic(suite):
    assert render_report(run_theorem_suite(), "json") == render_report(suite, "json")


def test_suite_json_roundtrip(suite):
    text = render_report(suite, "json")
    back = SuiteResult.from_dict(json.loads(text))
    assert back == suite
    assert render_report(back, "json") == text


def test_suite_text_and_csv(suite):
    lines = render_report(suite, "text").splitlines()
    assert len(lines) == len(suite.claims) + 1
    rows = list(csv.reader(io.StringIO(render_report(suite, "csv"))))
    assert rows[0][0] == "claim_id" and len(rows) == len(suite.claims) + 1


@given(st.fractions(min_value=-20, max_value=20, max_denominator=500),
       st.fractions(min_value=0, max_value=3, max_denominator=500))
def test_simplest_between(lo, w):
    hi = lo + w
    s = simplest_between(lo, hi)
    assert lo <= s <= hi
    # nothing with a smaller denominator fits
    for q in range(1, s.denominator):
        k = -(-lo.numerator * q // lo.denominator)  # ceil(lo * q)
        assert Fr(k, q) > hi


def test_bisect_flip_exact_and_irrational():
    b = bisect_flip(lambda x: x < Fr(3, 7), 0, 1)
    assert b.exact == Fr(3, 7) and b.holds_at_lo
    b = bisect_flip(lambda x: x * x < 2, 1, 2, Fr(1, 10**9))
    assert b.exact is None and b.lo * b.lo < 2 < b.hi * b.hi
    with pytest.raises(NoBracket):
        bisect_flip(lambda x: True, 0, 1)


@pytest.mark.parametrize("cid, search, expected", threshold_problems(), ids=lambda x: str(x)[:30])
def test_thresholds_exact(cid, search, expected):
    b = search()
    assert b.exact == expected
    assert b.width <= Fr(1, 10**10)
    # the verdict really differs across the bracket
    assert b.lo <= expected <= b.hi


def test_threshold_verdicts_reverified():
    b = find_threshold(S.T, S.midpoint(), "GE", 0, 4)
    assert verdict_holds(S.T(b.lo), S.midpoint(), "GE")
    assert not verdict_holds(S.T(b.hi), S.midpoint(), "GE")
    with pytest.raises(NoBracket):
        find_threshold(S.T, S.midpoint(), "GE", 3, 4)
    with pytest.raises(ValueError):
        verdict_holds(S.T(0), S.midpoint(), "XX")


def test_moment_threshold():
    b = moment_threshold(Fr(1, 10**10))
    q = Poly([1, -6, 6])
    assert q(b.lo) * q(b.hi) < 0
    assert b.width <= Fr(1, 10**9)
    assert float(b.lo) == pytest.approx(0.2113248654, abs=1e-9)


def test_regime_csv_has_27_rows():
    rep = regime_report("T", S.T, list(T_TARGETS.values()), T_GRID)
    rows = list(csv.reader(io.StringIO(render_report(rep, "csv"))))
    assert len(rows) == 1 + 27
    flips = {(t, a, b) for t, a, b in rep.thresholds}
    assert ("mid", Fr(2), Fr(4)) in flips and ("mid", Fr(4), Fr(6)) in flips
    assert ("trap", Fr(-10), Fr(-6)) in flips
    with pytest.raises(ValueError):
        regime_report("T", S.T, [S.midpoint()], [1, 0])


def test_g_curve(tmp_path):
    g = sample_g(S.midpoint(), S.uniform())
    path = tmp_path / "g.csv"
    emit_report(g, "csv", path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["x", "G"] and len(rows) == 1025
    assert all(float(v) >= 0 for _, v in rows[1:])


def test_render_rejects_unknown():
    with pytest.raises(ValueError):
        render_report(sample_g(S.midpoint(), S.uniform(), 3), "xml")
    with pytest.raises(TypeError):
        render_report(object(), "text")


# -- command line ----------------------------------------------------------------
def test_cli_compare(capsys):
    assert main(["compare", "T:a=4", "mid"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Incomparable") and "hinge" in out
    assert main(["--format", "json", "compare", "mid", "uniform"]) == 0
    assert json.loads(capsys.readouterr().out)["relation"] == "LessOrEqual"


def test_cli_compare_samples(capsys):
    assert main(["--seed", "3", "compare", "mid", "uniform", "--samples", "20"]) == 0
    line = capsys.readouterr().out.splitlines()[-1]
    assert float(line.split("min ")[1].split(",")[0]) >= -1e-12


def test_cli_suite(capsys, tmp_path):
    assert main(["suite"]) == 0
    assert "claims passed" in capsys.readouterr().out
    out = tmp_path / "suite.json"
    assert main(["--format", "json", "-o", str(out), "suite"]) == 0
    assert json.loads(out.read_text())["all_passed"] is True


def test_cli_threshold(capsys):
    assert main(["--format", "json", "threshold", "T:a=p", "trap", "LE", "-10", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["exact"] == "-6/1"
    assert main(["threshold", "S2:alpha=p", "eval:alpha=p", "GE", "1/10", "1/2"]) == 0
    assert "exact: 1/3" in capsys.readouterr().out


def test_cli_sample_g(capsys):
    assert main(["sample-g", "davg", "uniform", "--points", "5"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "x,G" and len(rows) == 6


def test_cli_errors(capsys):
    assert main(["compare", "nonsense", "mid"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["threshold", "T:a=p", "mid", "GE", "3", "4"]) == 2
    with pytest.raises(SystemExit):
        main(["bogus"])
