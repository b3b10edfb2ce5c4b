"""Production of the degree-d relations.

For each n in {1,2,3} the generating identity is a sum over partition
tuples of products of beta-twisted linear factors; summed over all
partitions it is the degree-ell piece of exp(sum_k (k-1)! F_k), so the
full expansion is computed by the standard recurrence
m*E_m = sum_k k!*F_k*E_{m-k}.  Pushing forward the degree d+1 and d+2
pieces yields the nine relations R_a^n, R_b^n, R_c^n; eliminating the
nine monomials that involve generators of degree d-1 and d leaves the
three canonical relations R_1, R_2, R_3 in row echelon form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .linalg import ExactMatrix
from .mpoly import MPoly, PolyDomain
from .rat import QQ, Rat
from .ratfunc import FracField, RatFunc
from .tautalg import (
    BetaClass,
    GradedPoly,
    TautContext,
    beta_pushforward,
    gen_key,
    mono_key,
    mono_str,
)


class UnsupportedEll(ValueError):
    pass


class SingularCheckpoint(ArithmeticError):
    """A determinant checkpoint vanished: invalid input or an upstream bug."""


# -- partitions -------------------------------------------------------------


@dataclass(frozen=True)
class PartitionTuple:
    """Multiplicity vector (m_1, ..., m_ell) with sum s*m_s = ell."""

    m: tuple

    @property
    def ell(self) -> int:
        return sum((s + 1) * ms for s, ms in enumerate(self.m))

    def parts(self) -> tuple:
        out = []
        for s in range(len(self.m), 0, -1):
            out.extend([s] * self.m[s - 1])
        return tuple(out)

    def coefficient(self):
        """prod_s ((s-1)!)^{m_s} / (m_s)! as an exact rational."""
        num = 1
        den = 1
        for s, ms in enumerate(self.m, start=1):
            if ms:
                num *= math.factorial(s - 1) ** ms
                den *= math.factorial(ms)
        return Rat(num, den)


def enumerate_partitions(ell: int, predicate=None) -> list:
    """All partition tuples of ell, optionally filtered on their parts."""
    if ell < 1:
        raise ValueError("ell must be positive")
    out = []

    def descend(parts, largest, remaining):
        if remaining == 0:
            m = [0] * ell
            for p in parts:
                m[p - 1] += 1
            pt = PartitionTuple(tuple(m))
            if predicate is None or predicate(pt):
                out.append(pt)
            return
        for p in range(min(largest, remaining), 0, -1):
            parts.append(p)
            descend(parts, p, remaining - p)
            parts.pop()

    descend([], ell, ell)
    return out


def partition_count(ell: int) -> int:
    return len(enumerate_partitions(ell))


def truncation_filter(d: int, ell: int):
    """Parts filter keeping partitions that can reach monomials with one
    generator of degree >= d-2 and small rest: a largest part >= d-2
    with the remaining parts summing to at most ell - (d-2)."""

    def keep(pt: PartitionTuple) -> bool:
        parts = pt.parts()
        return bool(parts) and parts[0] >= d - 2 and sum(parts[1:]) <= ell - (d - 2)

    return keep


# -- the beta-twisted factors -----------------------------------------------


def _d_inverse(ctx: TautContext):
    d = ctx.d
    if isinstance(d, MPoly):
        if not d.is_constant():
            raise TypeError("polynomial-domain context requires concrete d")
        return ctx.domain.coerce(Rat(1) / d.constant_value())
    return ctx.domain.one / d


def _ctilde(ctx, coeff, k, j) -> GradedPoly:
    """coeff * (-1)^(k+1) c_k(j), degenerate symbols resolved."""
    if (k + 1) & 1:
        coeff = -coeff
    return GradedPoly.term(ctx, coeff, [(k, j)])


def _b_class(ctx, m: int, n: int, chi, d_inv) -> GradedPoly:
    """B_m = ct_{m+1}(0) + (2-n-chi/d) ct_m(1) + q ct_{m-1}(2)."""
    dom = ctx.domain
    one = dom.one
    c1 = dom.coerce(2 - n) - chi * d_inv
    half_a = dom.coerce(Rat(2 * n - 5, 2)) * ctx.d + chi
    half_b = dom.coerce(Rat(2 * n - 3, 2)) * ctx.d + chi
    q = half_a * half_b * d_inv * d_inv * dom.coerce(Rat(1, 2))
    out = _ctilde(ctx, one, m + 1, 0)
    out = out + _ctilde(ctx, c1, m, 1)
    out = out + _ctilde(ctx, q, m - 1, 2)
    return out


def relation_factor(s: int, n: int, d, chi, ctx: TautContext) -> BetaClass:
    """The beta-class factor attached to index s:
    (A_s - B_s) + B_{s-1}*beta - (1/2)B_{s-2}*beta^2."""
    if s < 1:
        raise ValueError("s must be >= 1")
    dom = ctx.domain
    chi = dom.coerce(chi)
    d_inv = _d_inverse(ctx)
    half_a = dom.coerce(Rat(2 * n - 5, 2)) * ctx.d + chi
    diff = _ctilde(ctx, dom.one, s, 1) + _ctilde(ctx, -half_a * d_inv, s - 1, 2)
    b1 = _b_class(ctx, s - 1, n, chi, d_inv)
    b2 = _b_class(ctx, s - 2, n, chi, d_inv).scale(Rat(-1, 2))
    return BetaClass(diff, b1, b2)


def _exp_series(n: int, d: int, chi, ctx: TautContext, upto: int) -> list:
    """E_0..E_upto with E = exp(sum_k (k-1)! F_k), graded pieces."""
    E = [BetaClass.one(ctx)]
    kfact_F = [None]
    for k in range(1, upto + 1):
        kfact_F.append(relation_factor(k, n, d, chi, ctx) * Rat(math.factorial(k)))
    for m in range(1, upto + 1):
        acc = BetaClass.zero(ctx)
        for k in range(1, m + 1):
            acc = acc + kfact_F[k] * E[m - k]
        E.append(acc.scale_div(m))
    return E


def expand_relation(ell: int, n: int, d: int, chi, ctx: TautContext) -> BetaClass:
    """The full left-hand side of the generating identity in degree ell."""
    if ell not in (d + 1, d + 2):
        raise UnsupportedEll(f"ell must be d+1 or d+2, got {ell} for d={d}")
    return _exp_series(n, d, chi, ctx, ell)[ell]


def expand_relation_by_partitions(ell: int, n: int, d: int, chi, ctx: TautContext) -> BetaClass:
    """Independent expander: the literal sum over partition tuples of
    scaled factor powers (test oracle for expand_relation)."""
    total = BetaClass.zero(ctx)
    factors: dict = {}
    for pt in enumerate_partitions(ell):
        term = BetaClass.one(ctx)
        for s, ms in enumerate(pt.m, start=1):
            if not ms:
                continue
            f = factors.get(s)
            if f is None:
                f = relation_factor(s, n, d, chi, ctx)
                factors[s] = f
            term = term * f**ms
        total = total + term * pt.coefficient()
    return total


# -- relation sets -----------------------------------------------------------


def high_generators(d: int) -> dict:
    return {
        "deg_d_minus_1": [(d, 0), (d - 1, 1), (d - 2, 2)],
        "deg_d": [(d + 1, 0), (d, 1), (d - 1, 2)],
    }


def mon1(d: int) -> list:
    out = []
    for g in [(d, 0), (d - 1, 1), (d - 2, 2)]:
        for u in [(2, 0), (0, 2)]:
            out.append(tuple(sorted((g, u), key=gen_key, reverse=True)))
    return out


def mon2(d: int) -> list:
    singles = [((d + 1, 0),), ((d, 1),), ((d - 1, 2),)]
    pairs = [
        tuple(sorted(((d - 1, 0), u), key=gen_key, reverse=True))
        for u in [(3, 0), (2, 1), (1, 2)]
    ]
    return singles + pairs


@dataclass
class RelationSet:
    d: int
    chi: object
    ctx: TautContext
    Ra: dict
    Rb: dict
    Rc: dict
    R1: GradedPoly
    R2: GradedPoly
    R3: GradedPoly
    det1: object
    det2: object

    @property
    def relations(self):
        return (self.R1, self.R2, self.R3)

    def twelve_relations(self) -> list:
        """The 12 degree-d relations in their canonical order:
        c2(0)Ra^n, c0(2)Ra^n (n = 1..3 interleaved), then Rb^n, Rc^n."""
        ctx = self.ctx
        c2 = GradedPoly.term(ctx, 1, [(2, 0)])
        c0 = GradedPoly.term(ctx, 1, [(0, 2)])
        rows = []
        for n in (1, 2, 3):
            rows.append(c2 * self.Ra[n])
            rows.append(c0 * self.Ra[n])
        for n in (1, 2, 3):
            rows.append(self.Rb[n])
        for n in (1, 2, 3):
            rows.append(self.Rc[n])
        return rows

    def to_json(self) -> dict:
        return {
            "schema": "tautrel/relations/1",
            "d": self.d,
            "chi": str(self.chi),
            "det1": str(self.det1),
            "det2": str(self.det2),
            "R1": str(self.R1),
            "R2": str(self.R2),
            "R3": str(self.R3),
        }


def _field_context(d: int, symbolic_chi: bool):
    if symbolic_chi:
        field = FracField(("chi1",))
        ctx = TautContext(field, d)
        chi = field.gen("chi1")
    else:
        ctx = TautContext(QQ, d)
        chi = None
    return ctx, chi


def _coeff_matrix(polys, monos, field) -> ExactMatrix:
    return ExactMatrix(field, [[p.coeff(m) for m in monos] for p in polys])


def _rref_relations(rows, field):
    """RREF of relation vectors over the occurring degree-d monomials.

    Returns (reduced GradedPolys, pivot monomials, ordered monomials).
    """
    monos = sorted({m for p in rows for m in p.terms}, key=mono_key, reverse=True)
    mat = _coeff_matrix(rows, monos, field)
    R, pivots = mat.rref()
    ctx = rows[0].ctx
    reduced = []
    for i in range(len(pivots)):
        terms = {}
        for j, m in enumerate(monos):
            c = R.data[i][j]
            if not field.is_zero(c):
                terms[m] = c
        reduced.append(GradedPoly(ctx, terms))
    return reduced, [monos[p] for p in pivots], monos


_REL_CACHE: dict = {}


def build_relation_set(d: int, chi=None, symbolic_chi: bool = False) -> RelationSet:
    """Compute the relation set at (d, chi); chi symbolic when requested.

    Concrete mode requires d >= 5, gcd(d, chi) = 1 and 0 < chi < d.
    """
    if d < 5:
        raise ValueError("d >= 5 required")
    key = (d, "sym" if symbolic_chi else int(chi))
    hit = _REL_CACHE.get(key)
    if hit is not None:
        return hit
    if not symbolic_chi:
        chi = int(chi)
        if math.gcd(d, chi) != 1:
            raise ValueError(f"chi={chi} not coprime to d={d}")
        if not 0 < chi < d:
            raise ValueError("0 < chi < d required")

    # expansion over a polynomial coefficient ring (no divisions), then
    # lifted into the fraction field for the elimination
    if symbolic_chi:
        ring = PolyDomain(("chi1",))
        ctx_ring = TautContext(ring, d)
        chi_ring = ring.gen("chi1")
        field = FracField(("chi1",))
        ctx = TautContext(field, d)

        def lift(p: GradedPoly) -> GradedPoly:
            return p.map_coeffs(lambda c: RatFunc(c), ctx)

    else:
        ctx_ring = TautContext(QQ, d)
        chi_ring = Rat(chi)
        field = QQ
        ctx = ctx_ring

        def lift(p: GradedPoly) -> GradedPoly:
            return p

    # Relations are rescaled by (-1)^(ell-d-1) (d-3)!: the smallest
    # factorial occurring among the contributing partitions, with the
    # sign that orients the ell = d+2 construction consistently.  This
    # is the normalization under which det1 and det2 take their
    # canonical closed forms (verified across d = 5..10).
    fact = Rat(math.factorial(d - 3))
    Ra, Rb, Rc = {}, {}, {}
    for n in (1, 2, 3):
        E = _exp_series(n, d, chi_ring, ctx_ring, d + 2)
        Ra[n] = lift(beta_pushforward(E[d + 1], 0).scale_div(fact))
        Rb[n] = lift(beta_pushforward(E[d + 1], 1).scale_div(fact))
        Rc[n] = lift(beta_pushforward(E[d + 2], 0).scale_div(-fact))

    det1 = _coeff_matrix(
        [Ra[n] for n in (1, 2, 3)], [(g,) for g in high_generators(d)["deg_d_minus_1"]], field
    ).det()
    det2 = _coeff_matrix(
        [Rb[1], Rb[2], Rb[3], Rc[1], Rc[2], Rc[3]], mon2(d), field
    ).det()
    if field.is_zero(det1) or field.is_zero(det2):
        raise SingularCheckpoint(f"det1={det1}, det2={det2} at (d,chi)=({d},{chi})")

    rel = RelationSet(d, chi if not symbolic_chi else "chi1", ctx, Ra, Rb, Rc,
                      None, None, None, det1, det2)
    reduced, pivot_monos, _ = _rref_relations(rel.twelve_relations(), field)
    if len(reduced) != 12:
        raise SingularCheckpoint(
            f"relation span has rank {len(reduced)} != 12 at (d,chi)=({d},{chi})"
        )
    expected_pivots = [
        tuple(sorted(((d - 1, 0), u), key=gen_key, reverse=True))
        for u in [(3, 0), (2, 1), (1, 2)]
    ]
    if pivot_monos[9:12] != expected_pivots:
        raise SingularCheckpoint(
            "echelon leading monomials differ from the canonical ones: "
            + ", ".join(mono_str(m) for m in pivot_monos[9:12])
        )
    rel.R1, rel.R2, rel.R3 = reduced[9], reduced[10], reduced[11]
    _REL_CACHE[key] = rel
    return rel


def verify_rank12(d: int, chi: int, rel: RelationSet = None):
    """Rank and minor checkpoints on the 12 degree-d relations.

    Returns (ok, trace).  trace records the rank, the Mon1 minor
    determinant (must be det1^2) and the Mon2 minor determinant.
    """
    if rel is None:
        rel = build_relation_set(d, chi)
    field = rel.ctx.domain
    rows = rel.twelve_relations()
    monos = sorted({m for p in rows for m in p.terms}, key=mono_key, reverse=True)
    rank = _coeff_matrix(rows, monos, field).rank()
    # Mon1 minor: rows c2(0)Ra^n, c0(2)Ra^n interleaved match the column
    # pairing of Mon1, giving a block structure with determinant det1^2.
    m1 = _coeff_matrix(rows[0:6], mon1(d), field).det()
    m2 = _coeff_matrix(rows[6:12], mon2(d), field).det()
    ok = rank == 12 and m1 == rel.det1 * rel.det1 and not field.is_zero(m2)
    trace = {
        "rank": rank,
        "mon1_minor_det": m1,
        "det1_squared": rel.det1 * rel.det1,
        "mon2_minor_det": m2,
        "det2": rel.det2,
    }
    return ok, trace


def det1_formula(d: int, chi: int):
    """(-1)^d (d-2)^4 (d-1)/4 * chi (d-chi)(d-2chi)."""
    return (
        Rat((-1) ** d)
        * Rat((d - 2) ** 4 * (d - 1), 4)
        * Rat(chi * (d - chi) * (d - 2 * chi))
    )


def det2_formula(d: int):
    """4 (d-2)^6 (d-1)^3 d^4."""
    return Rat(4 * (d - 2) ** 6 * (d - 1) ** 3 * d**4)
