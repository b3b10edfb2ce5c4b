"""Rational functions: the fraction field of the rational-coefficient
polynomial ring, normalized so equality is representational.

The gcd underneath is a subresultant polynomial remainder sequence on
the last live variable, recursing through contents variable by
variable; no factorization is ever needed.
"""

from __future__ import annotations

from .mpoly import MPoly, canonical_vars
from .rat import QQ, Rat, is_rational, rat


def _prem(A: dict, B: dict) -> dict:
    """Pseudo-remainder of univariate-over-MPoly dicts: lc(B)^(dA-dB+1)*A mod B."""
    dA, dB = max(A), max(B)
    lcB = B[dB]
    R = dict(A)
    e = dA - dB + 1
    while R:
        dR = max(R)
        if dR < dB:
            break
        lcR = R[dR]
        newR = {}
        for k, c in R.items():
            if k != dR:
                newR[k] = c * lcB
        for k, c in B.items():
            if k == dB:
                continue
            kk = k + dR - dB
            prev = newR.get(kk)
            term = lcR * c
            newR[kk] = -term if prev is None else prev - term
        R = {k: c for k, c in newR.items() if not c.is_zero()}
        e -= 1
    if e > 0 and R:
        f = lcB**e
        R = {k: c * f for k, c in R.items()}
    return R


def _dict_content(coeffs: dict) -> MPoly:
    acc = None
    for c in coeffs.values():
        acc = c if acc is None else mpoly_gcd(acc, c)
        if acc.is_constant():
            break
    _, prim = acc.rational_content()
    return prim


def _dict_exact_div(coeffs: dict, divisor: MPoly) -> dict:
    return {k: c.exact_div(divisor) for k, c in coeffs.items()}


def _subresultant_pp_gcd(A: dict, B: dict, one: MPoly) -> dict:
    """Gcd of primitive univariate-over-MPoly polys, up to content."""
    if max(A) < max(B):
        A, B = B, A
    g = one
    h = one
    while True:
        delta = max(A) - max(B)
        R = _prem(A, B)
        if not R:
            return B
        if max(R) == 0:
            return {0: one}
        divisor = g * h**delta
        A, B = B, _dict_exact_div(R, divisor)
        g = A[max(A)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g**delta).exact_div(h ** (delta - 1))


def mpoly_gcd(f: MPoly, g: MPoly) -> MPoly:
    """Primitive, positive-leading gcd of two rational-coefficient MPolys."""
    if f.domain is not QQ or g.domain is not QQ:
        raise TypeError("gcd is defined over the rational coefficient domain")
    vars = canonical_vars(f.vars + g.vars)
    f = f.with_vars(vars)
    g = g.with_vars(vars)
    if f.is_zero() and g.is_zero():
        return MPoly.constant(0, vars)
    if f.is_zero():
        return g.rational_content()[1]
    if g.is_zero():
        return f.rational_content()[1]
    if f.is_constant() or g.is_constant():
        return MPoly.constant(1, vars)
    main = None
    for name in reversed(vars):
        if f.degree_in(name) > 0 or g.degree_in(name) > 0:
            main = name
            break
    fu = f.as_univariate(main)
    gu = g.as_univariate(main)
    if f.degree_in(main) == 0:
        return mpoly_gcd(f, _dict_content(gu))
    if g.degree_in(main) == 0:
        return mpoly_gcd(_dict_content(fu), g)
    cf = _dict_content(fu)
    cg = _dict_content(gu)
    cont = mpoly_gcd(cf, cg)
    ppf = _dict_exact_div(fu, cf)
    ppg = _dict_exact_div(gu, cg)
    one = MPoly.constant(1, tuple(v for v in vars if v != main))
    chain_tail = _subresultant_pp_gcd(ppf, ppg, one)
    # the final chain element carries junk content in the lower variables
    pp_gcd = _dict_exact_div(chain_tail, _dict_content(chain_tail))
    raw = MPoly.from_univariate(main, pp_gcd) * cont
    return raw.with_vars(vars).rational_content()[1]


class RatFunc:
    """Canonical num/den pair: poly gcd cancelled, both parts integer
    primitive with coprime contents, denominator leading coefficient
    positive under graded lex."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = MPoly.constant(1, num.vars if isinstance(num, MPoly) else ())
        if not isinstance(num, MPoly):
            num = MPoly.constant(rat(num))
        if not isinstance(den, MPoly):
            den = MPoly.constant(rat(den))
        vars = canonical_vars(num.vars + den.vars)
        num = num.with_vars(vars)
        den = den.with_vars(vars)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num = num
            self.den = MPoly.constant(1, vars)
            return
        # constant numerator or denominator needs no polynomial gcd
        if not (num.is_constant() or den.is_constant()):
            g = mpoly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        cn, pn = num.rational_content()
        cd, pd = den.rational_content()
        ratio = cn / cd
        self.num = pn * Rat(ratio.numerator)
        self.den = pd * Rat(ratio.denominator)

    @classmethod
    def _raw(cls, num: MPoly, den: MPoly) -> "RatFunc":
        """Internal: wrap an already-canonical pair."""
        out = cls.__new__(cls)
        out.num = num
        out.den = den
        return out

    # -- queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def as_rational(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Rat(0)
        return self.num.constant_value() / self.den.constant_value()

    @property
    def vars(self):
        return self.num.vars

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MPoly):
            return RatFunc(other)
        if is_rational(other):
            return RatFunc(MPoly.constant(rat(other), self.vars))
        return NotImplemented

    def _den_is_one(self) -> bool:
        return self.den.is_constant()

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc(MPoly.constant(0, self.vars))
        # cross-cancel before multiplying to keep intermediates small
        a, b, c, d = self.num, self.den, o.num, o.den
        if not (a.is_constant() or d.is_constant()):
            g = mpoly_gcd(a, d)
            if not g.is_constant():
                a = a.exact_div(g)
                d = d.exact_div(g)
        if not (c.is_constant() or b.is_constant()):
            g = mpoly_gcd(c, b)
            if not g.is_constant():
                c = c.exact_div(g)
                b = b.exact_div(g)
        num = a * c
        den = b * d
        cn, pn = num.rational_content()
        cd, pd = den.rational_content()
        ratio = cn / cd
        return RatFunc._raw(pn * Rat(ratio.numerator), pd * Rat(ratio.denominator))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFunc._raw(o.den, o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("inverting zero")
            return RatFunc(self.den, self.num) ** (-n)
        if n == 0:
            return RatFunc(MPoly.constant(1, self.vars))
        # powers of a canonical pair are canonical (Gauss's lemma)
        return RatFunc._raw(self.num**n, self.den**n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- substitution -------------------------------------------------------

    def eval(self, assignment: dict):
        """Substitute rationals (or polynomials) for variables.

        A full rational assignment returns a Rat; otherwise a RatFunc in
        the remaining variables.
        """
        num = self.num.eval(assignment)
        den = self.den.eval(assignment)
        if isinstance(num, MPoly) or isinstance(den, MPoly):
            if not isinstance(num, MPoly):
                num = MPoly.constant(num)
            if not isinstance(den, MPoly):
                den = MPoly.constant(den)
            return RatFunc(num, den)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the given point")
        return num / den

    def rename_vars(self, mapping: dict) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num = self.num.rename_vars(mapping)
        out.den = self.den.rename_vars(mapping)
        return out

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return self.num.to_str()
        num = self.num.to_str()
        den = self.den.to_str()
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({self.__str__()!r})"


class FracField:
    """Field descriptor for rational functions in a fixed variable set."""

    def __init__(self, vars):
        self.vars = canonical_vars(vars)
        self.zero = RatFunc(MPoly.constant(0, self.vars))
        self.one = RatFunc(MPoly.constant(1, self.vars))

    def coerce(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MPoly):
            return RatFunc(x)
        if is_rational(x):
            return RatFunc(MPoly.constant(rat(x), self.vars))
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def gen(self, name: str) -> RatFunc:
        return RatFunc(MPoly.variable(name, self.vars))

    @staticmethod
    def is_zero(x) -> bool:
        return x.is_zero()

    def __repr__(self):
        return f"QQ({', '.join(self.vars)})"

    def __eq__(self, other):
        return isinstance(other, FracField) and other.vars == self.vars

    def __hash__(self):
        return hash(("FracField", self.vars))
