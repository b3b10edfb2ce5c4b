import math

import pytest

from tautrel.obstruction import (
    BadTriple,
    NotCoprime,
    NotNodal,
    a33_coefficient_formula,
    analyze_node,
    coeff_equation,
    congruent,
    cubic_det,
    decide,
    solve_AB,
    solve_S,
    solve_UV,
)
from tautrel.rat import QQ, Rat
from tautrel.relations import build_relation_set
from tautrel.truncation import matrices_M, matrices_N


def blocks(d, chi):
    rel = build_relation_set(d, chi)
    return matrices_M(rel), matrices_N(rel)


def test_cubic_det_two_algorithms_agree():
    M, _ = blocks(5, 1)
    fast = cubic_det(M)
    # Leibniz-style oracle over explicit permutations
    from itertools import permutations

    oracle = {}
    names = [0, 1, 2]
    for rows in [(a, b, c) for a in names for b in names for c in names]:
        term = QQ.zero
        for perm in permutations(range(3)):
            sign = Rat(1)
            seen = list(perm)
            # permutation parity
            swaps = 0
            p = list(perm)
            for i in range(3):
                while p[i] != i:
                    j = p[i]
                    p[i], p[j] = p[j], p[i]
                    swaps += 1
            sign = Rat(-1) ** swaps
            prod = sign
            for r in range(3):
                prod = prod * M[rows[r]][r, perm[r]]
            term = term + prod
        key = (rows.count(0), rows.count(1), rows.count(2))
        oracle[key] = oracle.get(key, QQ.zero) + term
    oracle = {k: v for k, v in oracle.items() if v != 0}
    assert fast == oracle


def test_nodal_coefficient_examples():
    for (d, chi, want) in [(5, 1, Rat(-1, 25)), (7, 3, Rat(-3, 245))]:
        M, _ = blocks(d, chi)
        rep = analyze_node(cubic_det(M), QQ)
        assert rep["coefficient"] == want
        assert rep["coefficient"] == -Rat(chi * (d - chi) * (d - 2 * chi)) / Rat(
            4 * (d - 2) * d * d
        )


def test_not_nodal_guard():
    # the cubic x1^3 alone
    with pytest.raises(NotNodal):
        analyze_node({(3, 0, 0): Rat(1)}, QQ)


def test_coeff_equation_triples():
    M, _ = blocks(5, 1)
    Mp, _ = blocks(5, 2)
    C, Cp = cubic_det(M), cubic_det(Mp)
    with pytest.raises(BadTriple):
        coeff_equation(2, 2, 0, C, Cp, QQ)
    eq = coeff_equation(0, 2, 1, C, Cp, QQ)
    reduced = eq.eval({"s31": 0, "s32": 0})
    exps = {
        tuple(sorted(v for v, p in zip(reduced.vars, e) for _ in range(p)))
        for e in reduced.terms
    }
    assert exps == {("s21", "s22", "s33")}


def test_solve_S_type_II_witness_values():
    M, _ = blocks(5, 1)
    # chi = chi': rational candidate is the identity
    cands = solve_S("II", M, M)
    assert len(cands) == 2
    ident = cands[0]
    assert ident.r == 1
    E = ident.field
    assert ident.S == __import__("tautrel.linalg", fromlist=["ExactMatrix"]).ExactMatrix.identity(E, 3)
    # chi + chi' = d: the sign matrix
    Mp, _ = blocks(5, 4)
    cands = solve_S("II", M, Mp)
    sign = cands[0]
    assert sign.r == -1
    E = sign.field
    want = [[1, 0, 0], [0, -1, 0], [0, 0, 1]]
    assert sign.S == __import__("tautrel.linalg", fromlist=["ExactMatrix"]).ExactMatrix(E, want)


def test_solve_S_irreducible_case():
    M, _ = blocks(5, 1)
    Mp, _ = blocks(5, 2)
    cands = solve_S("II", M, Mp)
    assert len(cands) == 1
    assert cands[0].r == 2
    assert cands[0].field.deg == 3


def test_solve_AB_type_II_witnesses():
    from tautrel.linalg import ExactMatrix

    M, N = blocks(5, 1)
    cands = solve_S("II", M, M)
    ab = solve_AB(cands[0], M, M)
    assert ab.status == "solution" and ab.kernel_dim == 1
    E = cands[0].field
    assert ab.A == ExactMatrix.identity(E, 3)
    assert ab.B == ExactMatrix.identity(E, 3)
    Mp, Np = blocks(5, 4)
    cands = solve_S("II", M, Mp)
    ab = solve_AB(cands[0], M, Mp)
    E = cands[0].field
    want = ExactMatrix(E, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    assert ab.A == want and ab.B == want


def test_solve_AB_type_I_contradiction():
    M, _ = blocks(5, 1)
    Mp, _ = blocks(5, 2)
    for cand in solve_S("I", M, Mp):
        ab = solve_AB(cand, M, Mp)
        assert ab.status == "no_invertible" and ab.kernel_dim == 0
        fc = ab.certificate["forcing_coefficient"]
        assert fc.is_base()
        want = a33_coefficient_formula(5, 1, 2) * Rat(2, 1)  # 2/(d-4) at d=5
        assert fc.base_part() == want


def test_solve_UV_identity_and_inconsistent():
    from tautrel.linalg import ExactMatrix

    M, N = blocks(5, 1)
    cands = solve_S("II", M, M)
    ab = solve_AB(cands[0], M, M)
    uv = solve_UV(cands[0], ab.A, M, N, N)
    assert uv.status == "solvable"
    # U = 0, V = Id is among the solutions: verify directly
    E = cands[0].field
    At = ab.A.transpose()
    from tautrel.obstruction import _lift_matrix, _s_combination

    Ps = _s_combination(cands[0], N)
    for i in range(3):
        assert (At * _lift_matrix(N[i], E)) == Ps[i]
    # inconsistent case
    Mp, Np = blocks(5, 2)
    cand = solve_S("II", M, Mp)[0]
    ab = solve_AB(cand, M, Mp)
    uv = solve_UV(cand, ab.A, M, N, Np)
    assert uv.status == "inconsistent"
    assert uv.certificate is not None


def test_decide_examples():
    assert decide(5, 1, 6).verdict == "NoObstruction"  # 6 = 1 mod 5
    assert decide(5, 2, 3).verdict == "NoObstruction"  # 2 + 3 = 5
    assert decide(7, 1, 2).verdict == "ObstructionFound"
    assert decide(5, 1, 2).verdict == "ObstructionFound"
    v = decide(3, 1, 2)
    assert v.verdict == "NoObstruction" and v.note


def test_decide_not_coprime():
    with pytest.raises(NotCoprime):
        decide(6, 2, 1)


def test_decide_is_symmetric():
    for (d, a, b) in [(5, 1, 2), (5, 1, 4), (7, 2, 3)]:
        assert decide(d, a, b).verdict == decide(d, b, a).verdict


def test_congruence_predicate():
    assert congruent(5, 1, 6) and congruent(5, 1, 4) and not congruent(5, 1, 2)


def test_kernel_dims_recorded():
    v = decide(5, 1, 1)
    assert any(k.startswith("type_II") and dim == 1 for k, dim in v.kernel_dims.items())
    assert any(k.startswith("type_I") and dim == 0 for k, dim in v.kernel_dims.items())
