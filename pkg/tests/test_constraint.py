import pytest

from tautrel.constraint import (
    EliminationFailure,
    constraint_analysis,
    constraint_slice,
)
from tautrel.mpoly import MPoly
from tautrel.rat import Rat


def test_slice_rejects_degenerate_b():
    with pytest.raises(ValueError):
        constraint_slice(6, 3)
    with pytest.raises(ValueError):
        constraint_slice(5, 0)


def test_slice_structure_d5():
    s = constraint_slice(5, 2)
    assert s.num1.degree_in("chi1") == 6
    assert s.num2.degree_in("chi1") == 4
    assert s.leftover_count == 2


def test_symbolic_report_d5():
    rep = constraint_analysis(5)
    assert rep.P1 == MPoly.from_dict(
        ("chi1",),
        {(4,): 1705, (3,): -17050, (2,): 55772, (1,): -65735, (0,): 16200},
    )
    assert rep.ok()
    assert all(rep.P1_checks.values())
    assert rep.P1_checks["both_coordinates_agree"]


def test_P1_range():
    for d in (5, 6, 7):
        rep = constraint_analysis(d)
        P1 = rep.P1
        x = MPoly.variable("chi1")
        dd = MPoly.constant(d, ("chi1",))
        assert P1.degree_in("chi1") == 4
        assert P1.eval({"chi1": dd - x}) == P1
        assert P1.eval({"chi1": 0}) > 0
        assert P1.eval({"chi1": 1}) < 0


def test_concrete_pair_reports():
    rep = constraint_analysis(5, 1, 2)
    assert rep["vanishes"] is False
    (branch,) = rep["branches"]
    assert branch["uv_solvable"] is False
    assert branch["necessity_holds"] is True

    rep = constraint_analysis(5, 1, 4)
    rational = next(r for r in rep["branches"] if r["branch"].startswith("t +"))
    assert rational["uv_solvable"] and rational["pair_compatible"]
    assert rational["resultant_vanishes"]


def test_congruent_pair_agreement_rows():
    rep = constraint_analysis(5)
    assert len(rep.pair_agreement) == 6  # 4 diagonal + 2 antidiagonal
    assert all(r["agrees"] for r in rep.pair_agreement)
