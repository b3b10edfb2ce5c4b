"""The free graded commutative algebra on the tautological generators
c_k(j), the total ordering on them, and the beta-nilpotent extension
used to model classes on the product with the dual plane.

Generators are (k, j) pairs with j in {0, 1, 2} and cohomological degree
k + j - 1.  The degenerate symbols are resolved eagerly whenever a term
is built: c_1(0) and c_1(1) vanish, c_0(1) is the scalar d, and any
other symbol of non-positive degree is zero (such symbols only arise
from out-of-range indices in the relation factors, where the underlying
pushforward vanishes).
"""

from __future__ import annotations

from .linalg import ExactMatrix
from .rat import QQ


class FieldMismatch(TypeError):
    pass


class ZeroPolynomial(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


# -- generators and monomials -------------------------------------------


def gen_degree(gen) -> int:
    k, j = gen
    return k + j - 1


def gen_key(gen):
    """Sort key realizing the total order: degree first, then Chern index."""
    k, j = gen
    return (k + j - 1, k)


def gen_compare(a, b) -> int:
    """-1, 0 or 1 according to the ordering of two generators."""
    ka, kb = gen_key(a), gen_key(b)
    return (ka > kb) - (ka < kb)


def gen_str(gen) -> str:
    k, j = gen
    return f"c{k}({j})"


def mono_mul(m1: tuple, m2: tuple) -> tuple:
    """Merge two monomials (tuples of generators sorted descending)."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = list(m1) + list(m2)
    out.sort(key=gen_key, reverse=True)
    return tuple(out)


def mono_degree(mono: tuple) -> int:
    return sum(gen_degree(g) for g in mono)


def mono_key(mono: tuple):
    return tuple(gen_key(g) for g in mono)


def mono_str(mono: tuple) -> str:
    if not mono:
        return "1"
    parts = []
    i = 0
    while i < len(mono):
        g = mono[i]
        run = 1
        while i + run < len(mono) and mono[i + run] == g:
            run += 1
        parts.append(gen_str(g) if run == 1 else f"{gen_str(g)}^{run}")
        i += run
    return "*".join(parts)


def monomial_basis(degree: int, max_gen_degree: int) -> list:
    """All monomials of the given degree over generators of degree
    <= max_gen_degree, sorted descending under the ordering."""
    gens_desc = []
    for deg in range(max_gen_degree, 0, -1):
        if deg == 1:
            gens_desc += [(2, 0), (0, 2)]
        else:
            gens_desc += [(deg + 1, 0), (deg, 1), (deg - 1, 2)]
    gens_desc.sort(key=gen_key, reverse=True)
    out = []

    def build(prefix, start, remaining):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for i in range(start, len(gens_desc)):
            g = gens_desc[i]
            if gen_degree(g) <= remaining:
                prefix.append(g)
                build(prefix, i, remaining - gen_degree(g))
                prefix.pop()

    build([], 0, degree)
    out.sort(key=mono_key, reverse=True)
    return out


# -- the graded algebra ----------------------------------------------------


class TautContext:
    """Coefficient domain plus the value of d used by degenerate symbols."""

    __slots__ = ("domain", "d")

    def __init__(self, domain, d):
        self.domain = domain
        self.d = domain.coerce(d)

    def __eq__(self, other):
        return (
            isinstance(other, TautContext)
            and other.domain == self.domain
            and other.d == self.d
        )

    def __hash__(self):
        return hash(("TautContext", id(self.domain)))

    def __repr__(self):
        return f"TautContext({self.domain!r}, d={self.d})"


def concrete_context(d: int) -> TautContext:
    return TautContext(QQ, d)


class GradedPoly:
    """Element of the free graded algebra over a pluggable coefficient
    domain; terms map monomials to nonzero coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: TautContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    @classmethod
    def zero(cls, ctx) -> "GradedPoly":
        return cls(ctx, {})

    @classmethod
    def const(cls, ctx, value) -> "GradedPoly":
        value = ctx.domain.coerce(value)
        if ctx.domain.is_zero(value):
            return cls(ctx, {})
        return cls(ctx, {(): value})

    @classmethod
    def term(cls, ctx, coeff, gens) -> "GradedPoly":
        """coeff * product of c_k(j) symbols, degenerate ones resolved."""
        coeff = ctx.domain.coerce(coeff)
        if ctx.domain.is_zero(coeff):
            return cls(ctx, {})
        mono = []
        for k, j in gens:
            deg = k + j - 1
            if (k, j) == (0, 1):
                coeff = coeff * ctx.d
                continue
            if (k, j) in ((1, 0), (1, 1)) or deg <= 0:
                return cls(ctx, {})
            mono.append((k, j))
        mono.sort(key=gen_key, reverse=True)
        return cls(ctx, {tuple(mono): coeff})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, mono: tuple):
        return self.terms.get(tuple(mono), self.ctx.domain.zero)

    def is_homogeneous(self):
        degs = {mono_degree(m) for m in self.terms}
        return len(degs) <= 1

    def degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no degree")
        degs = {mono_degree(m) for m in self.terms}
        if len(degs) != 1:
            raise DegreeMismatch(f"inhomogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def leading_term(self):
        """(monomial, coefficient) maximal under the lexicographic
        extension of the generator ordering."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        m = max(self.terms, key=mono_key)
        return m, self.terms[m]

    def monomials_desc(self) -> list:
        return sorted(self.terms, key=mono_key, reverse=True)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.ctx != other.ctx:
            raise FieldMismatch("operands over different coefficient contexts")

    def __add__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        self._check(other)
        dom = self.ctx.domain
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if dom.is_zero(s):
                    del terms[m]
                else:
                    terms[m] = s
        return GradedPoly(self.ctx, terms)

    def __neg__(self):
        return GradedPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedPoly):
            self._check(other)
            dom = self.ctx.domain
            a, b = self.terms, other.terms
            if len(a) < len(b):
                a, b = b, a
            terms: dict = {}
            for m2, c2 in b.items():
                for m1, c1 in a.items():
                    m = mono_mul(m1, m2)
                    p = c1 * c2
                    s = terms.get(m)
                    terms[m] = p if s is None else s + p
            return GradedPoly(
                self.ctx, {m: c for m, c in terms.items() if not dom.is_zero(c)}
            )
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "GradedPoly":
        c = self.ctx.domain.coerce(c)
        if self.ctx.domain.is_zero(c):
            return GradedPoly(self.ctx, {})
        return GradedPoly(self.ctx, {m: v * c for m, v in self.terms.items()})

    def scale_div(self, c) -> "GradedPoly":
        c = self.ctx.domain.coerce(c)
        return GradedPoly(self.ctx, {m: v / c for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, fn, new_ctx=None) -> "GradedPoly":
        ctx = new_ctx if new_ctx is not None else self.ctx
        dom = ctx.domain
        out = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not dom.is_zero(v):
                out[m] = v
        return GradedPoly(ctx, out)

    def dual_involution(self) -> "GradedPoly":
        """The algebra involution c_k(j) -> (-1)^k c_k(j)."""
        out = {}
        for m, c in self.terms.items():
            sign = sum(k for k, _ in m) & 1
            out[m] = -c if sign else c
        return GradedPoly(self.ctx, out)

    def __str__(self):
        if not self.terms:
            return "0"
        from .mpoly import _signed_term

        parts = []
        for m in self.monomials_desc():
            parts.append(_signed_term(self.terms[m], mono_str(m) if m else "", bool(parts)))
        return "".join(parts)

    def __repr__(self):
        return f"GradedPoly({self.__str__()!r})"


# -- the beta-nilpotent extension ------------------------------------------


class BetaClass:
    """b0 + b1*beta + b2*beta^2 with beta^3 = 0."""

    __slots__ = ("b0", "b1", "b2")

    def __init__(self, b0: GradedPoly, b1: GradedPoly, b2: GradedPoly):
        self.b0 = b0
        self.b1 = b1
        self.b2 = b2

    @classmethod
    def zero(cls, ctx) -> "BetaClass":
        z = GradedPoly.zero(ctx)
        return cls(z, z, z)

    @classmethod
    def one(cls, ctx) -> "BetaClass":
        z = GradedPoly.zero(ctx)
        return cls(GradedPoly.const(ctx, 1), z, z)

    @property
    def ctx(self):
        return self.b0.ctx

    def is_zero(self) -> bool:
        return self.b0.is_zero() and self.b1.is_zero() and self.b2.is_zero()

    def __add__(self, other):
        return BetaClass(self.b0 + other.b0, self.b1 + other.b1, self.b2 + other.b2)

    def __sub__(self, other):
        return BetaClass(self.b0 - other.b0, self.b1 - other.b1, self.b2 - other.b2)

    def __neg__(self):
        return BetaClass(-self.b0, -self.b1, -self.b2)

    def __mul__(self, other):
        if isinstance(other, BetaClass):
            b0 = self.b0 * other.b0
            b1 = self.b0 * other.b1 + self.b1 * other.b0
            b2 = self.b0 * other.b2 + self.b1 * other.b1 + self.b2 * other.b0
            return BetaClass(b0, b1, b2)
        return BetaClass(self.b0 * other, self.b1 * other, self.b2 * other)

    __rmul__ = __mul__

    def scale_div(self, c) -> "BetaClass":
        return BetaClass(self.b0.scale_div(c), self.b1.scale_div(c), self.b2.scale_div(c))

    def __pow__(self, m: int):
        if m < 0:
            raise ValueError("negative beta power")
        result = BetaClass.one(self.ctx)
        base = self
        while m:
            if m & 1:
                result = result * base
            if m > 1:
                base = base * base
            m >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, BetaClass):
            return NotImplemented
        return self.b0 == other.b0 and self.b1 == other.b1 and self.b2 == other.b2

    def __str__(self):
        return f"({self.b0}) + ({self.b1})*beta + ({self.b2})*beta^2"


def beta_pushforward(x: BetaClass, j: int) -> GradedPoly:
    """Pushforward along the dual-plane factor of x * beta^j: the
    coefficient of beta^2 survives and integrates to 1."""
    if j == 0:
        return x.b2
    if j == 1:
        return x.b1
    if j == 2:
        return x.b0
    raise ValueError("j must be 0, 1 or 2")


def project_block(p: GradedPoly, left_basis, right_basis) -> ExactMatrix:
    """Matrix of coefficients of (left monomial)*(right monomial) in p.

    Basis entries may be generators (k, j) or full monomials; the
    degrees must tile the degree of p.
    """
    left = [_as_mono(b) for b in left_basis]
    right = [_as_mono(b) for b in right_basis]
    if p.terms:
        deg = p.degree()
        for l in left:
            for r in right:
                if mono_degree(l) + mono_degree(r) != deg:
                    raise DegreeMismatch(
                        f"{mono_str(l)}*{mono_str(r)} does not match degree {deg}"
                    )
    rows = [[p.coeff(mono_mul(l, r)) for r in right] for l in left]
    return ExactMatrix(p.ctx.domain, rows)


def _as_mono(b) -> tuple:
    if b and isinstance(b[0], int):
        return (tuple(b),)
    return tuple(b)
