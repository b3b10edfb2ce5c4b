"""Truncated relation computation with d symbolic.

Only monomials with exactly one generator of degree d-2, d-1 or d and a
small remainder of degree <= 2 can reach the coefficient blocks, so the
expansion is restricted to partitions with a single large part (>= d-2):
seven partitions for ell = d+1, twelve for ell = d+2.

Internally everything is written in the sign-twisted generator basis
(ct_k(j) = (-1)^(k+1) c_k(j)), whose structure constants are rational in
d; each extracted monomial carries exactly one symbolic-index generator,
so the global parity factor of the conversion back to the plain basis
cancels against the echelon normalization and only per-column signs
remain.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .linalg import ExactMatrix
from .rat import Rat
from .ratfunc import FracField
from .tautalg import gen_key

SYM_FIELD = FracField(("d", "chi1"))
_D = SYM_FIELD.gen("d")
_CHI = SYM_FIELD.gen("chi1")
_ZERO = SYM_FIELD.zero
_ONE = SYM_FIELD.one

# generators: ("top", a, j) means index d+a; ("sm", k, j) a concrete index.
# Terms: {(large_or_None, small_tuple, beta): RatFunc}

_SMALL_DEGREE_CAP = 2


def _small_gen_key(g):
    _, k, j = g
    return gen_key((k, j))


def _small_degree(small) -> int:
    return sum(k + j - 1 for _, k, j in small)


def _trunc_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (l1, s1, b1), c1 in p.items():
        for (l2, s2, b2), c2 in q.items():
            if l1 is not None and l2 is not None:
                continue
            b = b1 + b2
            if b > 2:
                continue
            small = tuple(sorted(s1 + s2, key=_small_gen_key, reverse=True))
            if _small_degree(small) > _SMALL_DEGREE_CAP:
                continue
            key = (l1 if l1 is not None else l2, small, b)
            c = c1 * c2
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _add_term(poly: dict, key, coeff) -> None:
    if coeff.is_zero():
        return
    prev = poly.get(key)
    val = coeff if prev is None else prev + coeff
    if val.is_zero():
        poly.pop(key, None)
    else:
        poly[key] = val


def _small_ct(poly: dict, beta: int, coeff, k: int, j: int) -> None:
    """Append coeff * ct_k(j) (small index) to the beta-component."""
    if (k, j) == (0, 1):
        _add_term(poly, (None, (), beta), coeff * (-_D))
        return
    if (k, j) in ((1, 0), (1, 1)) or k + j - 1 <= 0:
        return
    if k + j - 1 > _SMALL_DEGREE_CAP:
        return
    _add_term(poly, (None, (("sm", k, j),), beta), coeff)


def _top_ct(poly: dict, beta: int, coeff, a: int, j: int) -> None:
    """Append coeff * ct_{d+a}(j); kept only in the target degree window."""
    if a + j - 1 in (-2, -1, 0):
        _add_term(poly, (("top", a, j), (), beta), coeff)


def _coeff_c1(n: int):
    return SYM_FIELD.coerce(2 - n) - _CHI / _D


def _coeff_q(n: int):
    ha = SYM_FIELD.coerce(Rat(2 * n - 5, 2)) * _D + _CHI
    hb = SYM_FIELD.coerce(Rat(2 * n - 3, 2)) * _D + _CHI
    return ha * hb / (_D * _D * 2)


def _small_factor(n: int, s: int) -> dict:
    """Truncation of the beta-class factor with small index s."""
    poly: dict = {}
    ha = SYM_FIELD.coerce(Rat(2 * n - 5, 2)) * _D + _CHI
    _small_ct(poly, 0, _ONE, s, 1)
    _small_ct(poly, 0, -ha / _D, s - 1, 2)
    c1, q = _coeff_c1(n), _coeff_q(n)
    _small_ct(poly, 1, _ONE, s, 0)
    _small_ct(poly, 1, c1, s - 1, 1)
    _small_ct(poly, 1, q, s - 2, 2)
    half = SYM_FIELD.coerce(Rat(-1, 2))
    _small_ct(poly, 2, half, s - 1, 0)
    _small_ct(poly, 2, half * c1, s - 2, 1)
    _small_ct(poly, 2, half * q, s - 3, 2)
    return poly


def _large_factor(n: int, a: int) -> dict:
    """Truncation of the factor with symbolic index d + a."""
    poly: dict = {}
    ha = SYM_FIELD.coerce(Rat(2 * n - 5, 2)) * _D + _CHI
    c1, q = _coeff_c1(n), _coeff_q(n)
    _top_ct(poly, 0, _ONE, a, 1)
    _top_ct(poly, 0, -ha / _D, a - 1, 2)
    _top_ct(poly, 1, _ONE, a, 0)
    _top_ct(poly, 1, c1, a - 1, 1)
    _top_ct(poly, 1, q, a - 2, 2)
    half = SYM_FIELD.coerce(Rat(-1, 2))
    _top_ct(poly, 2, half, a - 1, 0)
    _top_ct(poly, 2, half * c1, a - 2, 1)
    _top_ct(poly, 2, half * q, a - 3, 2)
    return poly


def truncated_partition_parts(delta: int) -> list:
    """Contributing partitions of ell = d + delta: a symbolic large part
    ("d", a) followed by concrete small parts, largest first."""
    out = []
    for restsum in range(0, delta + 3):
        a = delta - restsum
        for small in _small_partitions(restsum):
            out.append((("d", a),) + small)
    return out


def _small_partitions(n: int, largest: int = None) -> list:
    if n == 0:
        return [()]
    largest = n if largest is None else largest
    out = []
    for p in range(min(largest, n), 0, -1):
        for rest in _small_partitions(n - p, p):
            out.append((p,) + rest)
    return out


def _large_ratio(a: int):
    """(d+a-1)! / (d-3)! as a polynomial in d."""
    acc = _ONE
    for off in range(-2, a):
        acc = acc * (_D + SYM_FIELD.coerce(off))
    return acc


@lru_cache(maxsize=None)
def _sym_relation(kind: str, n: int) -> tuple:
    """Truncated relation as a tuple of (key, RatFunc) pairs, in the
    twisted basis.  kind: 'a' (beta^2 of d+1), 'b' (beta^1 of d+1),
    'c' (beta^2 of d+2, with the orientation sign)."""
    delta = 1 if kind in ("a", "b") else 2
    want_beta = 1 if kind == "b" else 2
    sign = Rat(1) if delta == 1 else Rat(-1)
    total: dict = {}
    smalls = {s: _small_factor(n, s) for s in (1, 2, 3, 4)}
    for parts in truncated_partition_parts(delta):
        (_, a), small_parts = parts[0], parts[1:]
        coeff = _large_ratio(a) * sign
        mults: dict = {}
        for s in small_parts:
            mults[s] = mults.get(s, 0) + 1
        num, den = 1, 1
        for s, m in mults.items():
            num *= math.factorial(s - 1) ** m
            den *= math.factorial(m)
        coeff = coeff * SYM_FIELD.coerce(Rat(num, den))
        poly = _large_factor(n, a)
        for s in small_parts:
            poly = _trunc_mul(poly, smalls[s])
        for (large, small, beta), c in poly.items():
            if beta != want_beta:
                continue
            _add_term(total, (large, small), c * coeff)
    return tuple(total.items())


# -- extraction of the block matrices ------------------------------------


def _column_keys():
    """The 27 tracked degree-d monomials in descending order, as
    (large (a, j), small tuple of plain (k, j) gens)."""
    cols = []
    for a, j in [(1, 0), (0, 1), (-1, 2)]:
        cols.append(((a, j), ()))
    for a, j in [(0, 0), (-1, 1), (-2, 2)]:
        for u in [(2, 0), (0, 2)]:
            cols.append(((a, j), (u,)))
    deg2 = [(3, 0), (2, 1), (1, 2)]
    sym2 = [((2, 0), (2, 0)), ((2, 0), (0, 2)), ((0, 2), (0, 2))]
    for a, j in [(-1, 0), (-2, 1), (-3, 2)]:
        for u in deg2:
            cols.append(((a, j), (u,)))
        for pair in sym2:
            cols.append(((a, j), tuple(sorted(pair, key=gen_key, reverse=True))))
    ordered = []
    seen = set()
    for large, small in cols:
        if (large, small) not in seen:
            seen.add((large, small))
            ordered.append((large, small))
    # within each large-index group the M columns precede the N columns,
    # matching the lexicographic monomial order
    def key(col):
        (a, j), small = col
        return ((a + j - 1, a), tuple(gen_key(g) for g in small))

    ordered.sort(key=key, reverse=True)
    return ordered


def _col_sign(large, small) -> Rat:
    """Twisted-to-plain conversion sign, global parity factor dropped."""
    a, _j = large
    s = (a + 1) & 1
    for k, _ in small:
        s ^= (k + 1) & 1
    return Rat(-1) if s else Rat(1)


def _coeff_at(rel: dict, large, small):
    a, j = large
    key = (("top", a, j), tuple(("sm", k, jj) for k, jj in small))
    return rel.get(key, _ZERO)


@lru_cache(maxsize=1)
def symbolic_MN() -> tuple:
    """(M_1..M_3, N_1..N_3) as 3x3 matrices of rational functions in
    (d, chi1), from the truncated symbolic pipeline."""
    cols = _column_keys()
    rels = {
        (kind, n): dict(_sym_relation(kind, n))
        for kind in ("a", "b", "c")
        for n in (1, 2, 3)
    }
    rows = []
    # c2(0)*Ra and c0(2)*Ra rows: multiplying by a degree-1 generator
    # shifts the needed coefficient down by that generator
    for n in (1, 2, 3):
        ra = rels[("a", n)]
        for mult in [(2, 0), (0, 2)]:
            row = []
            for large, small in cols:
                if mult in small:
                    reduced = list(small)
                    reduced.remove(mult)
                    row.append(
                        _coeff_at(ra, large, tuple(reduced)) * _col_sign(large, small)
                    )
                else:
                    row.append(_ZERO)
            rows.append(row)
    for kind in ("b", "c"):
        for n in (1, 2, 3):
            rel = rels[(kind, n)]
            rows.append(
                [_coeff_at(rel, large, small) * _col_sign(large, small) for large, small in cols]
            )
    mat = ExactMatrix(SYM_FIELD, rows)
    R, pivots = mat.rref()
    if len(pivots) != 12 or pivots[9:12] != [9, 10, 11]:
        raise AssertionError(f"unexpected symbolic echelon pivots: {pivots}")
    col_index = {col: i for i, col in enumerate(cols)}
    deg2 = [(3, 0), (2, 1), (1, 2)]
    sym2 = [
        ((2, 0), (2, 0)),
        tuple(sorted(((2, 0), (0, 2)), key=gen_key, reverse=True)),
        ((0, 2), (0, 2)),
    ]
    larges = [(-1, 0), (-2, 1), (-3, 2)]
    M, N = [], []
    for i in range(3):
        row = R.data[9 + i]
        M.append(
            ExactMatrix(
                SYM_FIELD,
                [[row[col_index[(lg, (u,))]] for u in deg2] for lg in larges],
            )
        )
        N.append(
            ExactMatrix(
                SYM_FIELD,
                [[row[col_index[(lg, pair)]] for pair in sym2] for lg in larges],
            )
        )
    return M, N


def symbolic_matrices_at(d: int, chi) -> tuple:
    """Evaluate the symbolic blocks at concrete d (chi concrete or left
    symbolic): returns (M, N) over the rationals or over QQ(chi1)."""
    Msym, Nsym = symbolic_MN()
    assignment = {"d": d}
    if chi is not None:
        assignment["chi1"] = chi
    if chi is not None:
        from .rat import QQ as field
    else:
        field = FracField(("chi1",))

    def ev(mat):
        return ExactMatrix(
            field, [[x.eval(assignment) for x in row] for row in mat.data]
        )

    return [ev(m) for m in Msym], [ev(n) for n in Nsym]
