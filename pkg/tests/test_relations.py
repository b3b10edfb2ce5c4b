import math

import pytest

from tautrel.mpoly import PolyDomain
from tautrel.rat import QQ, Rat
from tautrel.ratfunc import FracField
from tautrel.relations import (
    PartitionTuple,
    SingularCheckpoint,
    UnsupportedEll,
    build_relation_set,
    det1_formula,
    det2_formula,
    enumerate_partitions,
    expand_relation,
    expand_relation_by_partitions,
    mon1,
    mon2,
    partition_count,
    relation_factor,
    truncation_filter,
    verify_rank12,
    _coeff_matrix,
    _rref_relations,
)
from tautrel.tautalg import GradedPoly, TautContext, concrete_context, mono_key


def test_enumerate_partitions_small():
    parts = {p.parts() for p in enumerate_partitions(3)}
    assert parts == {(3,), (2, 1), (1, 1, 1)}
    for p in enumerate_partitions(6):
        assert p.ell == 6


def test_partition_count_oracle():
    # independent brute-force counter
    def brute(n, largest):
        if n == 0:
            return 1
        return sum(brute(n - p, p) for p in range(min(largest, n), 0, -1))

    assert partition_count(7) == brute(7, 7) == 15


def test_partition_coefficient():
    pt = PartitionTuple((0, 0, 0, 0, 0, 1))  # single part of size 6
    assert pt.coefficient() == Rat(math.factorial(5))
    pt = PartitionTuple((2, 2, 0, 0, 0, 0))  # 1+1+2+2
    assert pt.coefficient() == Rat(1, 2) * Rat(1, 2)


def test_truncation_filter_seven_partitions():
    d = 5
    kept = {
        p.parts() for p in enumerate_partitions(d + 1, truncation_filter(d, d + 1))
    }
    expected = {
        (6,),
        (5, 1),
        (4, 1, 1),
        (4, 2),
        (3, 2, 1),
        (3, 3),
        (3, 1, 1, 1),
    }
    assert kept == expected
    assert len(kept) == 7


def test_relation_factor_coefficients():
    # coefficient of c_s(1) in the beta^0 part carries the (-1)^(s+1) twist
    ctx = concrete_context(5)
    f = relation_factor(1, 1, 5, 1, ctx)
    # s=1: c_1(1) resolves to zero, so only the c_0(2) term survives
    assert list(f.b0.terms) == [((0, 2),)]
    # beta^1 part at s=1 is the constant (n-2)d + chi = -4
    assert f.b1 == GradedPoly.const(ctx, -4)
    assert f.b2.is_zero()
    # the c_{s-1}(2) coefficient of B_s at (n,d,chi)=(1,5,1) is 39/200;
    # in B_1 it multiplies ct_0(2) = -c_0(2)
    f2 = relation_factor(2, 1, 5, 1, ctx)
    assert f2.b1.coeff(((0, 2),)) == -Rat(39, 200)


def test_factor_reassembles_top_coefficient():
    # the beta^0 part plus the next factor's beta^1 part reassembles the
    # full top combination: its c_2(1)-coefficient at (n,d,chi)=(1,5,1)
    # is -(3 - n - chi/d) = -9/5 in the sign-twisted convention
    ctx = concrete_context(5)
    a2 = relation_factor(2, 1, 5, 1, ctx).b0 + relation_factor(3, 1, 5, 1, ctx).b1
    assert a2.coeff(((2, 1),)) == -Rat(9, 5)


def test_single_generator_term_comes_from_one_partition():
    # the lone degree-ell generator in the beta^1 component can only
    # arise from the single-part partition, with coefficient (ell-1)!
    d, ell = 5, 6
    ctx = concrete_context(d)
    x = expand_relation(ell, 1, d, 1, ctx)
    sign = Rat(-1) ** (ell + 1)
    assert x.b1.coeff(((ell, 0),)) == sign * Rat(math.factorial(ell - 1))


def test_expand_relation_requires_valid_ell():
    ctx = concrete_context(5)
    with pytest.raises(UnsupportedEll):
        expand_relation(5, 1, 5, 1, ctx)
    with pytest.raises(UnsupportedEll):
        expand_relation(8, 1, 5, 1, ctx)


@pytest.mark.parametrize("d,ell", [(5, 6), (5, 7), (6, 7), (6, 8)])
def test_expand_relation_matches_partition_sum_oracle(d, ell):
    ctx = concrete_context(d)
    for n in (1, 2, 3):
        fast = expand_relation(ell, n, d, 1, ctx)
        naive = expand_relation_by_partitions(ell, n, d, 1, ctx)
        assert fast == naive


def test_beta2_component_degree():
    d = 5
    ctx = concrete_context(d)
    x = expand_relation(d + 1, 1, d, 1, ctx)
    assert x.b2.degree() == d - 1
    assert x.b1.degree() == d
    assert x.b0.degree() == d + 1


def test_det_checkpoints_examples():
    rel = build_relation_set(5, 1)
    assert rel.det1 == -972
    assert rel.det2 == 116640000
    assert build_relation_set(5, 2).det1 == -486
    assert det2_formula(5) == 116640000


def test_relations_echelon_structure():
    d = 5
    rel = build_relation_set(d, 1)
    leads = [R.leading_term() for R in rel.relations]
    assert leads[0] == (((d - 1, 0), (3, 0)), Rat(1))
    assert leads[1] == (((d - 1, 0), (2, 1)), Rat(1))
    assert leads[2] == (((d - 1, 0), (1, 2)), Rat(1))
    for R in rel.relations:
        assert R.degree() == d
        # eliminated monomials are gone
        for m in mon1(d) + mon2(d)[:3]:
            assert R.coeff(m) == 0


def test_build_relation_set_validation():
    with pytest.raises(ValueError):
        build_relation_set(4, 1)
    with pytest.raises(ValueError):
        build_relation_set(6, 2)
    with pytest.raises(ValueError):
        build_relation_set(5, 7)


def test_verify_rank12():
    ok, trace = verify_rank12(5, 1)
    assert ok
    assert trace["rank"] == 12
    assert trace["mon1_minor_det"] == Rat(-972) ** 2 == Rat(944784)
    assert trace["mon2_minor_det"] != 0


def test_verify_rank12_zero_relations_guard():
    rel = build_relation_set(5, 1)
    import copy

    broken = copy.copy(rel)
    z = GradedPoly.zero(rel.ctx)
    broken.Ra = {1: z, 2: z, 3: z}
    ok, trace = verify_rank12(5, 1, broken)
    assert not ok
    assert trace["rank"] < 12


def test_rank12_full_matrix_rank():
    rel = build_relation_set(5, 1)
    rows = rel.twelve_relations()
    monos = sorted({m for p in rows for m in p.terms}, key=mono_key, reverse=True)
    assert _coeff_matrix(rows, monos, QQ).rank() == 12


def test_rref_uniqueness_under_row_permutation():
    import random

    rel = build_relation_set(5, 2)
    rows = rel.twelve_relations()
    rng = random.Random(3)
    for _ in range(3):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        reduced, pivots, _ = _rref_relations(shuffled, QQ)
        assert reduced[9:12] == list(rel.relations)


def test_duality_covariance_of_relation_span():
    for (d, chi) in [(5, 1), (5, 2), (7, 2), (8, 3)]:
        rel = build_relation_set(d, chi)
        rel2 = build_relation_set(d, d - chi)
        rows = [R.dual_involution() for R in rel.relations] + list(rel2.relations)
        monos = sorted({m for p in rows for m in p.terms}, key=mono_key, reverse=True)
        assert _coeff_matrix(rows, monos, QQ).rank() == 3


def test_symbolic_chi_mode_consistency():
    rel = build_relation_set(5, symbolic_chi=True)
    conc = build_relation_set(5, 2)
    # evaluating the symbolic determinants at chi=2 matches concrete mode
    assert rel.det1.eval({"chi1": 2}) == conc.det1
    assert rel.det2.eval({"chi1": 2}) == conc.det2
    for Rs, Rc in zip(rel.relations, conc.relations):
        assert set(Rs.terms) >= set(Rc.terms)
        for m, c in Rs.terms.items():
            assert c.eval({"chi1": 2}) == Rc.coeff(m)


def test_det1_formula_range():
    for d in range(5, 9):
        for chi in range(1, d):
            if math.gcd(d, chi) != 1:
                continue
            rel = build_relation_set(d, chi)
            assert rel.det1 == det1_formula(d, chi)
            assert rel.det2 == det2_formula(d)
