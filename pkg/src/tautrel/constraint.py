"""Compatibility constraint for the extended system at concrete d,
symbolic in chi.

For a Type II candidate, the extended system's first column is
normalized by (A^-1)^T so the unknown-side coefficient block consists of
the chi-side matrices M_i, N_i only.  Five designated equations express
u11, u21, u31, v11, v21 in terms of v31; the held-back pair reads
AA*v31 + BB = 0 and CC*v31 + DD = 0, and eliminating v31 leaves the
resultant Constraint := AA*DD - BB*CC, free of the cube root.

Because the pivot block depends only on chi, specializing chi' to a
number commutes with the whole elimination: running the pipeline over
QQ(chi) with chi' = b produces the exact chi'-slice of the bivariate
constraint.  The quartic P1 (the factor depending on chi alone) is the
stable common divisor of the slice numerators; the remaining factor is
analyzed slice by slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from .linalg import ExactMatrix
from .mpoly import MPoly
from .obstruction import CandidateS, _lift_matrix, _s_combination, solve_S
from .rat import Rat
from .ratfunc import FracField, RatFunc, mpoly_gcd
from .symbolic import symbolic_matrices_at


class EliminationFailure(ArithmeticError):
    pass


UNI_FIELD = FracField(("chi1",))


def _row_cleared(row: list, E) -> list:
    """Scale an extension-valued row to denominator-free, content-free
    form (kernels are scale-invariant row by row)."""
    lcm = None
    for e in row:
        for c in e.coeffs:
            if c.is_zero() or c.den.is_constant():
                continue
            if lcm is None:
                lcm = c.den
            else:
                g = mpoly_gcd(lcm, c.den)
                lcm = lcm * c.den.exact_div(g) if not g.is_constant() else lcm * c.den
    if lcm is not None:
        scale = E.coerce(RatFunc(lcm))
        row = [e * scale for e in row]
    content = None
    for e in row:
        for c in e.coeffs:
            if c.is_zero():
                continue
            p = c.num
            content = p if content is None else mpoly_gcd(content, p)
            if content.is_constant():
                content = None
                break
        if content is None and e is not row[0]:
            break
    if content is not None and not content.is_constant():
        inv = RatFunc._raw(MPoly.constant(1, content.vars), content)
        scale = E.coerce(inv)
        row = [e * scale for e in row]
    return row


def _kernel_corank1(rows: list, ncols: int, E) -> list:
    """Kernel vector of a system expected to have corank exactly 1,
    via primitive fraction-free elimination with early verification."""
    pivots = []  # (col, cleared row), mutually reduced on insert order
    for raw in rows:
        row = _row_cleared(raw, E)
        for col, prow in pivots:
            f = row[col]
            if f.is_zero():
                continue
            lead = prow[col]
            row = [lead * a - f * b for a, b in zip(row, prow)]
            row = _row_cleared(row, E)
        lead_col = next((c for c in range(ncols) if not row[c].is_zero()), None)
        if lead_col is None:
            continue
        pivots.append((lead_col, row))
        if len(pivots) == ncols - 1:
            break
    if len(pivots) != ncols - 1:
        raise EliminationFailure(
            f"system rank {len(pivots)} != {ncols - 1}: kernel not one-dimensional"
        )
    free = next(c for c in range(ncols) if c not in {p for p, _ in pivots})
    v = [E.zero] * ncols
    v[free] = E.one
    for col, prow in sorted(pivots, key=lambda cr: cr[0], reverse=True):
        acc = E.zero
        for c in range(col + 1, ncols):
            if not v[c].is_zero() and not prow[c].is_zero():
                acc = acc + prow[c] * v[c]
        v[col] = -acc / prow[col]
    for raw in rows:
        acc = E.zero
        for a, b in zip(raw, v):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        if not acc.is_zero():
            raise EliminationFailure("kernel vector fails a residual equation")
    return v


def solve_AB_reduced(cand: CandidateS, M: list, Mp: list):
    """(A, B^-1) for a Type II candidate via the i=1 block:
    A^T = (sum_j s_1j M'_j) B^-1 M_1^-1, leaving an 18x9 homogeneous
    system in the entries of B^-1 alone.  The result is canonical: the
    solution line is normalized by a11 = s22."""
    E = cand.field
    Ms = [_lift_matrix(m, E) for m in M]
    Ps = _s_combination(cand, Mp)
    M1_inv = Ms[0].inverse()
    rows = []
    for i in (1, 2):
        Q = M1_inv * Ms[i]
        for r in range(3):
            for c in range(3):
                row = [E.zero] * 9
                for k in range(3):
                    for l in range(3):
                        coeff = Ps[0][r, k] * Q[l, c]
                        if l == c:
                            coeff = coeff - Ps[i][r, k]
                        row[3 * k + l] = row[3 * k + l] + coeff
                rows.append(row)
    bt = _kernel_corank1(rows, 9, E)
    Bt = ExactMatrix(E, [[bt[3 * s + t] for t in range(3)] for s in range(3)])
    At = Ps[0] * Bt * M1_inv
    A = At.transpose()
    anchor = A[0, 0]
    if anchor.is_zero():
        raise EliminationFailure("reduced solution has a11 = 0")
    mu = cand.S[1, 1] / anchor
    A = A.scale(mu)
    Bt = Bt.scale(mu)
    if A.det() != E.one or Bt.det() != E.one:
        raise EliminationFailure("normalized solution does not have unit determinants")
    At = A.transpose()
    for i in range(3):
        if not (At * Ms[i]) == (Ps[i] * Bt):
            raise AssertionError("reduced A,B verification failed")
    return A, Bt


def _column0_elimination(cand: CandidateS, A: ExactMatrix, M, N, Np):
    """Residuals of the two held-back equations after expressing
    (u0, u1, u2, v0, v1) in terms of v2 := the bottom entry of V's first
    column.  Returns ((AA, BB), (CC, DD)) and the leftover residuals of
    the unused designated equations."""
    E = cand.field
    Ps = _s_combination(cand, Np)
    A_inv_t = A.inverse().transpose()
    w = [A_inv_t * Ps[i] for i in range(3)]
    Ms = [_lift_matrix(m, E) for m in M]
    Ns = [_lift_matrix(n, E) for n in N]

    def equation(i, r):
        coeffs = [Ms[i][r, 0], Ms[i][r, 1], Ms[i][r, 2], Ns[i][r, 0], Ns[i][r, 1]]
        return coeffs, Ns[i][r, 2], -w[i][r, 0]

    # designated pivot equations: the first two rows of the i=2 block
    # and the full i=3 block eliminate the five unknowns, leaving four
    # equations, of which the first two rows of the i=1 block are the
    # residual pair.  (This split makes the chi-only content of the two
    # residual-resultant coordinates agree; the other two leftovers are
    # reported, not folded in.)
    pivot_eqs = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
    held_back = [(0, 0), (0, 1)]
    leftover_eqs = [(0, 2), (1, 2)]
    pivots = []  # list of (pivot_col, row of length 7), mutually reduced
    for i, r in pivot_eqs:
        coeffs, cv, const = equation(i, r)
        row = coeffs + [cv, const]
        for col, prow in pivots:
            f = row[col]
            if not E.is_zero(f):
                row = [a - f * b for a, b in zip(row, prow)]
        lead = next((c for c in range(5) if not E.is_zero(row[c])), None)
        if lead is None:
            raise EliminationFailure(f"designated pivot equation ({i},{r}) degenerate")
        inv = E.one / row[lead]
        row = [x * inv for x in row]
        for j, (col, prow) in enumerate(pivots):
            f = prow[lead]
            if not E.is_zero(f):
                pivots[j] = (col, [a - f * b for a, b in zip(prow, row)])
        pivots.append((lead, row))
    if sorted(col for col, _ in pivots) != [0, 1, 2, 3, 4]:
        raise EliminationFailure(
            f"designated pivot equations degenerate: pivots {[c for c, _ in pivots]}"
        )
    solution = {col: (prow[5], prow[6]) for col, prow in pivots}

    def residual_of(i, r):
        coeffs, cv, const = equation(i, r)
        lin = cv
        cst = const
        for col in range(5):
            pv, pc = solution[col]
            lin = lin - coeffs[col] * pv
            cst = cst - coeffs[col] * pc
        return lin, cst

    residuals = [residual_of(i, r) for i, r in held_back]
    leftovers = [residual_of(i, r) for i, r in leftover_eqs]
    leftovers = [
        (lin, cst)
        for lin, cst in leftovers
        if not (E.is_zero(lin) and E.is_zero(cst))
    ]
    return residuals, leftovers


# -- chi'-slices ---------------------------------------------------------------


@dataclass
class ConstraintSlice:
    """chi'-slice of the compatibility resultant AA*DD - BB*CC.

    Its coordinate along 1 vanishes identically; the t and t^2
    coordinates are rational functions whose common vanishing is the
    compatibility condition of the held-back pair (num1, num2 are their
    canonical numerators)."""

    d: int
    b: int
    num1: MPoly
    num2: MPoly
    leftover_count: int


_SLICE_CACHE: dict = {}


def _uni_blocks(d: int):
    M, N = symbolic_matrices_at(d, None)
    return M, N


def _evaluated(mat: ExactMatrix, b: int) -> ExactMatrix:
    return ExactMatrix(
        UNI_FIELD,
        [[UNI_FIELD.coerce(x.eval({"chi1": Rat(b)})) for x in row] for row in mat.data],
    )


def constraint_slice(d: int, b: int) -> ConstraintSlice:
    """The exact chi'-slice of the compatibility constraint at chi' = b."""
    key = (d, b)
    if key in _SLICE_CACHE:
        return _SLICE_CACHE[key]
    if b <= 0 or b >= d or 2 * b == d:
        raise ValueError(f"slice value b={b} degenerate for d={d}")
    M, N = _uni_blocks(d)
    Mp = [_evaluated(m, b) for m in M]
    Np = [_evaluated(n, b) for n in N]
    cands = solve_S("II", M, Mp, base=UNI_FIELD)
    if len(cands) != 1:
        raise EliminationFailure(f"{len(cands)} slice candidates at chi'={b}")
    cand = cands[0]
    A, _Bt = solve_AB_reduced(cand, M, Mp)
    residuals, leftovers = _column0_elimination(cand, A, M, N, Np)
    (AA, BB), (CC, DD) = residuals
    constraint = AA * DD - BB * CC
    c0, c1, c2 = constraint.coeffs
    if not c0.is_zero():
        raise EliminationFailure(
            "slice constraint has an unexpected rational coordinate"
        )
    if c1.is_zero() and c2.is_zero():
        raise EliminationFailure(f"slice constraint vanished identically at chi'={b}")
    out = ConstraintSlice(d, b, c1.num, c2.num, len(leftovers))
    _SLICE_CACHE[key] = out
    return out


# -- recovery of the factors -----------------------------------------------------


def _strip_factors(poly: MPoly, factors: list) -> tuple:
    counts = {}
    for name, f in factors:
        n = 0
        while True:
            try:
                poly = poly.exact_div(f)
                n += 1
            except Exception:
                break
        if n:
            counts[name] = n
    return poly, counts


def _chi1_junk_factors(d: int) -> list:
    x = MPoly.variable("chi1")
    dd = MPoly.constant(d, ("chi1",))
    return [("chi1", x), ("d-chi1", dd - x), ("d-2chi1", dd - 2 * x)]


@dataclass
class ConstraintReport:
    d: int
    slice_values: list
    P1: MPoly = None
    P1_checks: dict = dc_field(default_factory=dict)
    structure_checks: dict = dc_field(default_factory=dict)
    slice_constants: dict = dc_field(default_factory=dict)
    stripped: dict = dc_field(default_factory=dict)
    pair_agreement: list = dc_field(default_factory=list)
    leftover_counts: dict = dc_field(default_factory=dict)

    def ok(self) -> bool:
        return (
            all(self.P1_checks.values())
            and all(self.structure_checks.values())
            and all(row["agrees"] for row in self.pair_agreement)
        )

    def to_json(self) -> dict:
        return {
            "schema": "tautrel/constraint/1",
            "d": self.d,
            "slices": self.slice_values,
            "P1": str(self.P1),
            "P1_checks": self.P1_checks,
            "structure_checks": self.structure_checks,
            "slice_constants": {k: str(v) for k, v in self.slice_constants.items()},
            "stripped": self.stripped,
            "pairs_checked": len(self.pair_agreement),
            "pairs_agree": all(r["agrees"] for r in self.pair_agreement),
        }


_REPORT_CACHE: dict = {}


def _recover_P1(d: int, nums: list) -> tuple:
    """Strip the chi-only trivial factors from the common divisor of the
    given slice numerators and normalize the sign at 0."""
    acc = None
    for p in nums:
        acc = p if acc is None else mpoly_gcd(acc, p)
        if acc.is_constant():
            break
    P1, counts = _strip_factors(acc.rational_content()[1], _chi1_junk_factors(d))
    P1 = P1.rational_content()[1]
    if not P1.is_constant() and P1.eval({"chi1": 0}) < 0:
        P1 = -P1
    return P1, counts


def _branch_pair_compatibility(d: int, a: int, b: int) -> list:
    """For each Type II candidate at the concrete pair: is the held-back
    residual pair compatible, and is the full extended system solvable?
    Solvability must imply compatibility (the pair is a necessary
    condition)."""
    from .obstruction import solve_AB, solve_UV
    from .relations import build_relation_set
    from .truncation import matrices_M, matrices_N

    rel1 = build_relation_set(d, a)
    rel2 = build_relation_set(d, b)
    M, N = matrices_M(rel1), matrices_N(rel1)
    Mp, Np = matrices_M(rel2), matrices_N(rel2)
    rows = []
    for cand in solve_S("II", M, Mp):
        ab = solve_AB(cand, M, Mp)
        if ab.status != "solution":
            rows.append({"branch": cand.root_label, "ab": ab.status})
            continue
        E = cand.field
        residuals, _ = _column0_elimination(cand, ab.A, M, N, Np)
        (AA, BB), (CC, DD) = residuals
        resultant = AA * DD - BB * CC
        # compatibility of the 2x1 affine pair in v31
        if AA.is_zero() and CC.is_zero():
            compatible = BB.is_zero() and DD.is_zero()
        elif not AA.is_zero():
            v = -BB / AA
            compatible = (CC * v + DD).is_zero()
        else:
            v = -DD / CC
            compatible = (AA * v + BB).is_zero()
        solvable = solve_UV(cand, ab.A, M, N, Np).status == "solvable"
        rows.append(
            {
                "branch": cand.root_label,
                "resultant_vanishes": resultant.is_zero(),
                "pair_compatible": compatible,
                "uv_solvable": solvable,
                "necessity_holds": (not solvable) or compatible,
            }
        )
    return rows


def constraint_analysis(d: int, chi1: int = None, chi2: int = None):
    """Symbolic (chi1 = chi2 = None) or concrete constraint analysis.

    Symbolic mode recovers the quartic P1 and verifies the structure of
    the slice constraints; concrete mode reports, per cube-root branch,
    the compatibility of the held-back residual pair against the direct
    solvability of the extended system.
    """
    if chi1 is not None:
        a = chi1 % d
        b = chi2 % d
        s = constraint_slice(d, b)
        v1 = s.num1.eval({"chi1": Rat(a)})
        v2 = s.num2.eval({"chi1": Rat(a)})
        return {
            "d": d,
            "chi1": chi1,
            "chi2": chi2,
            "slice_constraint_values": (v1, v2),
            "vanishes": v1 == 0 and v2 == 0,
            "branches": _branch_pair_compatibility(d, a, b),
        }
    if d in _REPORT_CACHE:
        return _REPORT_CACHE[d]

    valid_bs = [b for b in range(1, d) if 2 * b != d]
    slice_values = valid_bs[:3]
    slices = [constraint_slice(d, b) for b in slice_values]
    report = ConstraintReport(d=d, slice_values=slice_values)
    report.leftover_counts = {s.b: s.leftover_count for s in slices}

    # P1 from the t^2 coordinate, cross-validated against the t one
    P1, stripped2 = _recover_P1(d, [s.num2 for s in slices])
    P1_alt, stripped1 = _recover_P1(d, [s.num1 for s in slices])
    report.P1 = P1
    report.stripped = {"from_num2": stripped2, "from_num1": stripped1}
    x = MPoly.variable("chi1")
    dd = MPoly.constant(d, ("chi1",))
    report.P1_checks = {
        "degree_4": P1.degree_in("chi1") == 4,
        "symmetric": P1.eval({"chi1": dd - x}) == P1,
        "positive_at_0": P1.eval({"chi1": 0}) > 0,
        "negative_at_1": P1.eval({"chi1": 1}) < 0,
        "both_coordinates_agree": P1 == P1_alt,
    }

    # slice structure: num2 = c_b * P1 and num1 = c_b' * chi (d - chi) P1
    structure_ok = True
    constants_nonzero = True
    for s in slices:
        try:
            c2 = s.num2.exact_div(P1)
            c1 = s.num1.exact_div(P1 * x * (dd - x))
        except Exception:
            structure_ok = False
            continue
        if not (c2.is_constant() and c1.is_constant()):
            structure_ok = False
            continue
        report.slice_constants[s.b] = (c1.constant_value(), c2.constant_value())
        if c1.constant_value() == 0 or c2.constant_value() == 0:
            constants_nonzero = False

    # rejection of non-congruent pairs: the slice constraint pair is
    # nonzero at every valid non-congruent integer pair
    chis = [c for c in range(1, d) if math.gcd(c, d) == 1]
    reject_ok = True
    for b in [s.b for s in slices if math.gcd(s.b, d) == 1]:
        s = constraint_slice(d, b)
        for a in chis:
            if a == b or a + b == d:
                continue
            if s.num1.eval({"chi1": Rat(a)}) == 0 and s.num2.eval(
                {"chi1": Rat(a)}
            ) == 0:
                reject_ok = False
    report.structure_checks = {
        "slice_shape_P1_times_constant": structure_ok,
        "slice_constants_nonzero": constants_nonzero,
        "rejects_noncongruent_pairs": reject_ok,
    }

    # per-branch necessity at the congruent pairs (where witnesses exist)
    congruent_pairs = [(a, a) for a in chis] + [
        (a, d - a) for a in chis if a < d - a
    ]
    for (a, b) in congruent_pairs:
        rows = _branch_pair_compatibility(d, a, b)
        ok = all(r.get("necessity_holds", True) for r in rows)
        report.pair_agreement.append(
            {"chi1": a, "chi2": b, "branches": rows, "agrees": ok}
        )
    _REPORT_CACHE[d] = report
    return report
