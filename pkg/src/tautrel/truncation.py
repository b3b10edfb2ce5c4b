"""Projection of the canonical relations to the two coefficient blocks:
the 3x3 matrices M_i on (degree-2 generator) x (degree-(d-2) generator)
monomials and N_i on (squares of degree-1 generators) x (degree-(d-2)
generator) monomials.

The M_i have known closed forms which are kept here as templates and
checked entry by entry; the N_i are produced by the pipeline itself
and validated by an independent elimination path plus their downstream
behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import ExactMatrix
from .rat import QQ
from .relations import RelationSet, build_relation_set
from .tautalg import gen_key, project_block


class CheckpointMismatch(AssertionError):
    pass


def t2_basis(d: int) -> list:
    """Ordered basis of the degree-2 generator block: rows s = 0, 1, 2."""
    return [((3 - s, s),) for s in range(3)]


def tk_basis(d: int, k: int) -> list:
    """Ordered basis of the degree-k generator block (k >= 2)."""
    return [((k + 1 - t, t),) for t in range(3)]


def sym2_basis(d: int) -> list:
    """Ordered basis of squares of degree-1 generators."""
    a, b = (2, 0), (0, 2)
    mk = lambda u, v: tuple(sorted((u, v), key=gen_key, reverse=True))
    return [mk(a, a), mk(a, b), mk(b, b)]


def matrices_M(rel: RelationSet) -> list:
    """Rows indexed by the degree-(d-2) basis, columns by the degree-2
    basis: M_i[s][t] = [c_{d-1-s}(s) c_{3-t}(t)] R_i.  This is the
    orientation under which the change-of-relations equation reads
    A^T M_i B = sum_j s_ij M'_j."""
    left = tk_basis(rel.d, rel.d - 2)
    right = t2_basis(rel.d)
    return [project_block(R, left, right) for R in rel.relations]


def matrices_N(rel: RelationSet) -> list:
    left = tk_basis(rel.d, rel.d - 2)
    right = sym2_basis(rel.d)
    return [project_block(R, left, right) for R in rel.relations]


@dataclass
class TruncationBlock:
    d: int
    chi: object
    M: list
    N: list

    def to_json(self) -> dict:
        return {
            "schema": "tautrel/matrices/1",
            "d": self.d,
            "chi": str(self.chi),
            "M": [[[str(x) for x in row] for row in Mi.data] for Mi in self.M],
            "N": [[[str(x) for x in row] for row in Ni.data] for Ni in self.N],
        }


def truncation_block(rel: RelationSet) -> TruncationBlock:
    return TruncationBlock(rel.d, rel.chi, matrices_M(rel), matrices_N(rel))


# -- reference templates -------------------------------------------------------


def reference_M_templates(d, chi, field=QQ):
    """The known closed forms of M_1, M_2, M_3 as field elements.

    d and chi may be numbers or field generators (symbolic check).
    """
    d = field.coerce(d)
    x = field.coerce(chi)

    M1 = [
        [field.one, field.zero, field.zero],
        [
            field.zero,
            field.zero,
            # (x - d) orientation, matching entry [2][1]: forced by the
            # x1*x2*x3 coefficient of det(sum x_i M_i)
            (d - 2) * (d - 2 * x) * x * (x - d) / (8 * d**3),
        ],
        [
            (d - 4) / (8 * d - 16),
            (d - 2 * x) * x * (x - d) / (2 * (d - 2) * d**3),
            (
                (-6 * x - 1) * d**5
                + (6 * x**2 + 6 * x + 3) * d**4
                + 18 * x**2 * d**3
                - (48 * x**3 + 48 * x**2) * d**2
                + (24 * x**4 + 96 * x**3) * d
                - 48 * x**4
            )
            / (32 * (d - 2) * d**4),
        ],
    ]
    M2 = [
        [field.zero, field.one, field.zero],
        [
            field.one,
            field.zero,
            ((-6 * x - 1) * d**2 + (6 * x**2 + 12 * x) * d - 12 * x**2) / (8 * d**2),
        ],
        [
            field.zero,
            (24 * x**2 - 24 * x * d - d**3 + 2 * d**2) / (8 * (d - 2) * d**2),
            x * (d**2 + 8 * d - 16) * (2 * x - d) * (d - x) / (8 * (d - 2) * d**3),
        ],
    ]
    M3 = [
        [field.zero, field.zero, field.one],
        [field.zero, field.zero, field.zero],
        [
            2 / (d - 2) * field.one,
            field.zero,
            (12 * x**2 - 12 * x * d - d**2) / (8 * (d - 2) * d),
        ],
    ]
    return [ExactMatrix(field, M) for M in (M1, M2, M3)]


def checkpoint_reference_M(d: int, chi: int, rel: RelationSet = None) -> dict:
    """Compare computed M_i with the reference templates at (d, chi).

    Returns a report dict; raises CheckpointMismatch on any differing
    entry, identifying (i, s, t) and both values.
    """
    if rel is None:
        rel = build_relation_set(d, chi)
    computed = matrices_M(rel)
    templates = reference_M_templates(d, chi, rel.ctx.domain)
    checked = 0
    for i in range(3):
        for s in range(3):
            for t in range(3):
                a = computed[i][s, t]
                b = templates[i][s, t]
                if a != b:
                    raise CheckpointMismatch(
                        f"M{i+1}[{s}][{t}] at (d,chi)=({d},{chi}): "
                        f"computed {a}, reference {b}"
                    )
                checked += 1
    return {"d": d, "chi": chi, "entries_checked": checked, "status": "pass"}
