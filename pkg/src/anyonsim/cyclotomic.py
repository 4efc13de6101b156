"""Exact arithmetic in the 24th cyclotomic field Q(zeta_24).

Every recoupling scalar of the level-4 theory (quantum integers, loop values,
theta and tetrahedral nets, 6j-symbols, R-symbols) is a rational expression in
``A = exp(i*pi/12) = zeta_24``, so it lives in this field.  Elements are stored
as rational coefficient vectors over the power basis ``1, z, ..., z^7`` modulo
the cyclotomic polynomial ``Phi_24(z) = z^8 - z^4 + 1``.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from numbers import Rational

ORDER = 24
DEGREE = 8  # Euler phi(24)

_ZETA = cmath.exp(2j * cmath.pi / ORDER)


def _reduce(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    # z^8 = z^4 - 1
    c = list(coeffs)
    for k in range(len(c) - 1, DEGREE - 1, -1):
        top = c[k]
        if top:
            c[k] = Fraction(0)
            c[k - 4] += top
            c[k - 8] -= top
    c = c[:DEGREE] + [Fraction(0)] * (DEGREE - len(c))
    return tuple(c)


class Cyclo24:
    """An element of Q(zeta_24), immutable and hashable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        object.__setattr__(self, "coeffs", _reduce(c))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclo24 is immutable")

    @classmethod
    def root(cls, k: int) -> Cyclo24:
        """``zeta_24 ** k`` for any integer ``k``."""
        k %= ORDER
        c = [Fraction(0)] * (k + 1)
        c[k] = Fraction(1)
        return cls(c)

    @classmethod
    def coerce(cls, x) -> Cyclo24:
        if isinstance(x, Cyclo24):
            return x
        if isinstance(x, (int, Rational)):
            return cls([x])
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclo24")

    # arithmetic
    def __add__(self, other):
        try:
            o = Cyclo24.coerce(other)
        except TypeError:
            return NotImplemented
        return Cyclo24([a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo24([-a for a in self.coeffs])

    def __sub__(self, other):
        try:
            o = Cyclo24.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return Cyclo24.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Cyclo24.coerce(other)
        except TypeError:
            return NotImplemented
        prod = [Fraction(0)] * (2 * DEGREE - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return Cyclo24(prod)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Cyclo24([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        try:
            o = Cyclo24.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Cyclo24.coerce(other) * self.inverse()

    def inverse(self) -> Cyclo24:
        """Multiplicative inverse, by solving ``M x = e_0`` over Q.

        ``M`` is the matrix of multiplication by ``self`` in the power basis.
        """
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        cols = [(self * Cyclo24.root(k)).coeffs for k in range(DEGREE)]
        m = [[cols[j][i] for j in range(DEGREE)] + [Fraction(int(i == 0))] for i in range(DEGREE)]
        for col in range(DEGREE):
            piv = next(r for r in range(col, DEGREE) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            p = m[col][col]
            m[col] = [v / p for v in m[col]]
            for r in range(DEGREE):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return Cyclo24([m[i][DEGREE] for i in range(DEGREE)])

    def conjugate(self) -> Cyclo24:
        """Complex conjugation, ``zeta -> zeta^-1``."""
        out = Cyclo24()
        for k, a in enumerate(self.coeffs):
            if a:
                out = out + a * Cyclo24.root(-k)
        return out

    def __complex__(self) -> complex:
        return complex(sum(float(a) * _ZETA**k for k, a in enumerate(self.coeffs)))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            o = Cyclo24.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{a}*z^{k}" for k, a in enumerate(self.coeffs) if a]
        return f"Cyclo24({' + '.join(terms) or '0'})"


ZETA24 = Cyclo24.root(1)
OMEGA = Cyclo24.root(8)  # exp(2 pi i / 3)
