"""Cubic extensions of an exact field: quotients base[t]/(m(t)) with
m dividing t^3 - r.

When r is a perfect cube c^3 over the base, t^3 - r splits as
(t - c)(t^2 + c t + c^2) and each irreducible factor yields its own
extension; solvability questions downstream are invariant under the
choice within a Galois orbit, so one representative per factor is
enough.
"""

from __future__ import annotations

from .rat import QQ, rat, rational_cube_root


class NotInvertible(ArithmeticError):
    """The element is zero (or a zero divisor) in the quotient ring."""


# -- dense univariate helpers over a field descriptor (tiny degrees) ----


def _trim(coeffs: list) -> tuple:
    while coeffs and _is_zero_elt(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def _is_zero_elt(x) -> bool:
    z = getattr(x, "is_zero", None)
    if callable(z):
        return z()
    return x == 0


def upoly_add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else None
        y = b[i] if i < len(b) else None
        if x is None:
            out.append(y)
        elif y is None:
            out.append(x)
        else:
            out.append(x + y)
    return _trim(out)


def upoly_mul(a, b, zero):
    if not a or not b:
        return ()
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def upoly_divmod(a, b, monic=False):
    """Division with remainder over a field; b nonzero (monic skips the
    leading-coefficient division)."""
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    lead = b[-1]
    db = len(b) - 1
    q = [None] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] if monic else a[-1] / lead
        pos = len(a) - 1 - db
        q[pos] = c
        for i in range(db):
            a[pos + i] = a[pos + i] - c * b[i]
        a.pop()
        a = list(_trim(a))
        if not a:
            break
    qq = _trim([x if x is not None else lead - lead for x in q]) if q else ()
    return qq, tuple(a)


def upoly_xgcd(a, b, one):
    """(g, u, v) with u*a + v*b = g over a field (g not normalized)."""
    zero = one - one
    r0, r1 = tuple(a), tuple(b)
    s0, s1 = (one,), ()
    t0, t1 = (), (one,)
    while r1:
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, upoly_add(s0, _upoly_neg(upoly_mul(q, s1, zero)))
        t0, t1 = t1, upoly_add(t0, _upoly_neg(upoly_mul(q, t1, zero)))
    return r0, s0, t0


def _upoly_neg(a):
    return tuple(-x for x in a)


# -- the extension field -------------------------------------------------


class CubicField:
    """Descriptor for base[t]/(m(t)), m monic dividing t^3 - r."""

    def __init__(self, base, r, modulus):
        self.base = base
        self.r = base.coerce(r)
        modulus = tuple(base.coerce(c) for c in modulus)
        if not (2 <= len(modulus) <= 4):
            raise ValueError("modulus degree must be 1, 2 or 3")
        if modulus[-1] != base.one:
            raise ValueError("modulus must be monic")
        self.modulus = modulus
        self.deg = len(modulus) - 1
        # m | t^3 - r, exactly
        t3 = [base.zero - self.r, base.zero, base.zero, base.one]
        _, rem = upoly_divmod(tuple(t3), modulus, monic=True)
        if rem:
            raise ValueError("modulus does not divide t^3 - r")
        self.zero = CubicExt(self, (base.zero,) * self.deg)
        self.one = CubicExt(self, (base.one,) + (base.zero,) * (self.deg - 1))

    def coerce(self, x) -> "CubicExt":
        if isinstance(x, CubicExt):
            if x.field is not self and x.field != self:
                raise TypeError("element from a different extension")
            return x
        c = self.base.coerce(x)
        return CubicExt(self, (c,) + (self.base.zero,) * (self.deg - 1))

    def from_coeffs(self, coeffs) -> "CubicExt":
        coeffs = [self.base.coerce(c) for c in coeffs]
        _, rem = upoly_divmod(tuple(coeffs), self.modulus, monic=True)
        padded = list(rem) + [self.base.zero] * (self.deg - len(rem))
        return CubicExt(self, tuple(padded))

    @property
    def t(self) -> "CubicExt":
        """The distinguished cube root of r in this extension."""
        return self.from_coeffs([self.base.zero, self.base.one])

    @staticmethod
    def is_zero(x) -> bool:
        return x.is_zero()

    def modulus_str(self) -> str:
        names = {1: "t", 2: "t^2", 3: "t^3"}
        parts = []
        for p in range(self.deg, -1, -1):
            c = self.modulus[p]
            if _is_zero_elt(c):
                continue
            body = names.get(p, "")
            if p == 0:
                parts.append(str(c))
            elif c == self.base.one:
                parts.append(body)
            else:
                parts.append(f"({c})*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"{self.base!r}[t]/({self.modulus_str()})"

    def __eq__(self, other):
        return (
            isinstance(other, CubicField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("CubicField", id(self.base), len(self.modulus)))


class CubicExt:
    """Element of a CubicField, stored as coefficients of 1, t, t^2."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = tuple(coeffs)

    def is_zero(self) -> bool:
        return all(_is_zero_elt(c) for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _other(self, x):
        return self.field.coerce(x)

    def __add__(self, other):
        o = self._other(other)
        return CubicExt(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CubicExt(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        zero = self.field.base.zero
        prod = upoly_mul(_trim(list(self.coeffs)), _trim(list(o.coeffs)), zero)
        _, rem = upoly_divmod(prod, self.field.modulus, monic=True)
        padded = list(rem) + [zero] * (self.field.deg - len(rem))
        return CubicExt(self.field, tuple(padded))

    __rmul__ = __mul__

    def inverse(self) -> "CubicExt":
        if self.is_zero():
            raise NotInvertible("zero is not invertible")
        base = self.field.base
        g, u, _ = upoly_xgcd(_trim(list(self.coeffs)), self.field.modulus, base.one)
        if len(g) != 1:
            raise NotInvertible(f"{self} is a zero divisor mod {self.field.modulus_str()}")
        scale = g[0]
        inv = tuple(c / scale for c in u)
        padded = list(inv) + [base.zero] * (self.field.deg - len(inv))
        return CubicExt(self.field, tuple(padded[: self.field.deg]))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __rtruediv__(self, other):
        return self._other(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash(self.coeffs)

    def base_part(self):
        """The coefficient of 1 (useful when the element is known rational)."""
        return self.coeffs[0]

    def is_base(self) -> bool:
        return all(_is_zero_elt(c) for c in self.coeffs[1:])

    def __str__(self):
        names = ["", "t", "t^2"]
        parts = []
        for i, c in enumerate(self.coeffs):
            if _is_zero_elt(c):
                continue
            if i == 0:
                parts.append(str(c))
            else:
                parts.append(f"({c})*{names[i]}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CubicExt({self.__str__()!r})"


def ext_invert(e: CubicExt) -> CubicExt:
    """Inverse in the quotient ring, via extended gcd with the modulus."""
    return e.inverse()


def factor_t3_minus_r(r, base):
    """Moduli of the irreducible factors of t^3 - r over the base field.

    Over the rationals, a perfect cube r = c^3 splits off (t - c) and the
    quadratic (t^2 + c t + c^2) (irreducible: its discriminant -3c^2 < 0).
    Function-field bases keep t^3 - r whole; if r were secretly a cube
    the quotient would expose itself as NotInvertible during solving.
    """
    r = base.coerce(r)
    if base is QQ or isinstance(base, type(QQ)):
        c = rational_cube_root(rat(r))
        if c is not None:
            linear = (-c, rat(1))
            quadratic = (c * c, c, rat(1))
            return [CubicField(base, r, linear), CubicField(base, r, quadratic)]
    one = base.one
    zero = base.zero
    return [CubicField(base, r, (zero - r, zero, zero, one))]
