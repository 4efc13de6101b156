"""Recoupling data for the Kauffman-Jones SU(2) theory at level 4.

Labels are twice-spin integers ``0..4``.  All nets follow the Kauffman-Lins
conventions at ``A = exp(i pi / 12)``, a primitive 24th root of unity, so that
the loop value of label ``a`` is ``(-1)^a [a+1]``.

Scalar functions accept ``exact=True`` to return elements of
:class:`~anyonsim.cyclotomic.Cyclo24` instead of floating point numbers.
:func:`f_matrix` and :func:`f_symbol` are unitary-normalized and therefore
involve square roots; they are floating point only.
"""
from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .cyclotomic import Cyclo24
from .errors import AdmissibilityError, DomainError

LEVEL = 4
LABELS = tuple(range(LEVEL + 1))


@dataclass(frozen=True)
class TheoryParams:
    level: int = LEVEL
    r: int = LEVEL + 2
    # A = zeta_{4r} ** a_power
    a_power: int = 1

    @property
    def A(self) -> complex:
        return cmath.exp(1j * cmath.pi * self.a_power / (2 * self.r))


THEORY = TheoryParams()
A = THEORY.A


def _a_pow(k: int, exact: bool):
    if exact:
        return Cyclo24.root(k * THEORY.a_power)
    return cmath.exp(1j * cmath.pi * k * THEORY.a_power / (2 * THEORY.r))


def check_label(a: int) -> int:
    if not isinstance(a, (int, np.integer)) or not 0 <= a <= LEVEL:
        raise AdmissibilityError(f"label {a!r} outside 0..{LEVEL}")
    return int(a)


def admissible(a: int, b: int, c: int) -> bool:
    """Level-4 admissibility of a trivalent vertex."""
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c <= 2 * LEVEL


def _require(*triples):
    for t in triples:
        if not admissible(*t):
            raise AdmissibilityError(f"inadmissible triple {t}")


def fusion_channels(a: int, b: int) -> tuple[int, ...]:
    """All ``c`` with ``(a, b, c)`` admissible, ascending."""
    return tuple(c for c in LABELS if admissible(a, b, c))


@lru_cache(maxsize=None)
def quantum_int(n: int, exact: bool = False):
    """``[n] = (A^2n - A^-2n) / (A^2 - A^-2)``."""
    if n < 0:
        raise ValueError("quantum_int needs n >= 0")
    num = _a_pow(2 * n, exact) - _a_pow(-2 * n, exact)
    den = _a_pow(2, exact) - _a_pow(-2, exact)
    val = num / den
    return val if exact else val.real


@lru_cache(maxsize=None)
def quantum_factorial(n: int, exact: bool = False):
    out = Cyclo24([1]) if exact else 1.0
    for k in range(1, n + 1):
        out = out * quantum_int(k, exact)
    return out


def loop_value(a: int, exact: bool = False):
    """Value of an unknotted loop colored ``a``: ``(-1)^a [a+1]``."""
    check_label(a)
    return (-1) ** a * quantum_int(a + 1, exact)


@lru_cache(maxsize=None)
def theta(a: int, b: int, c: int, exact: bool = False):
    """Theta-net evaluation ``theta(a, b, c)``."""
    _require((a, b, c))
    m, n, p = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    qf = lambda k: quantum_factorial(k, exact)  # noqa: E731
    return (-1) ** (m + n + p) * qf(m + n + p + 1) * qf(m) * qf(n) * qf(p) / (qf(m + n) * qf(n + p) * qf(m + p))


@lru_cache(maxsize=None)
def tet(a: int, b: int, c: int, d: int, e: int, f: int, exact: bool = False):
    """Tetrahedral net with faces ``(a,d,e), (b,c,e), (a,b,f), (c,d,f)``.

    ``e`` and ``f`` sit on opposite edges.  Evaluated with the Kauffman-Lins
    sum over ``max(faces) <= s <= min(opposite-pair sums)``.
    """
    _require((a, d, e), (b, c, e), (a, b, f), (c, d, f))
    qf = lambda k: quantum_factorial(k, exact)  # noqa: E731
    faces = [(a + d + e) // 2, (b + c + e) // 2, (a + b + f) // 2, (c + d + f) // 2]
    pairs = [(b + d + e + f) // 2, (a + c + e + f) // 2, (a + b + c + d) // 2]
    inner = Cyclo24([1]) if exact else 1.0
    for i in faces:
        for j in pairs:
            inner = inner * qf(j - i)
    edges = qf(a) * qf(b) * qf(c) * qf(d) * qf(e) * qf(f)
    total = Cyclo24() if exact else 0.0
    for s in range(max(faces), min(pairs) + 1):
        den = Cyclo24([1]) if exact else 1.0
        for i in faces:
            den = den * qf(s - i)
        for j in pairs:
            den = den * qf(j - s)
        total = total + (-1) ** s * qf(s + 1) / den
    return inner / edges * total


@lru_cache(maxsize=None)
def sixj(a: int, b: int, m: int, c: int, d: int, n: int, exact: bool = False):
    """Kauffman-Lins 6j-symbol taking the ``(a,b)_m`` channel to the ``(b,c)_n`` channel.

    Vertices ``(a,b,m), (c,d,m)`` on one side and ``(a,d,n), (b,c,n)`` on the
    other; equals ``tet * loop(n) / (theta(a,d,n) theta(b,c,n))``.
    """
    _require((a, b, m), (c, d, m), (a, d, n), (b, c, n))
    return tet(a, b, c, d, n, m, exact) * loop_value(n, exact) / (theta(a, d, n, exact) * theta(b, c, n, exact))


def _vertex_norm(x: int, y: int, z: int) -> complex:
    # rescales a KL vertex so that its bubble is sqrt(d_x d_y / d_z) id_z
    dz = loop_value(z)
    return cmath.sqrt(dz / theta(x, y, z) * cmath.sqrt(loop_value(x) * loop_value(y) / dz))


@lru_cache(maxsize=None)
def f_symbol(a: int, b: int, c: int, d: int, e: int, f: int) -> complex:
    """Unitary ``[F^{abc}_d]_{ef}``: ``|((ab)_e c)_d> = sum_f F_ef |(a(bc)_f)_d>``.

    Zero when any vertex is inadmissible.
    """
    if not (admissible(a, b, e) and admissible(e, c, d) and admissible(b, c, f) and admissible(a, f, d)):
        return 0.0
    g = _vertex_norm(a, b, e) * _vertex_norm(e, c, d) / (_vertex_norm(b, c, f) * _vertex_norm(a, f, d))
    return complex(sixj(a, b, e, c, d, f)) * g


class FMatrix(NamedTuple):
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    matrix: np.ndarray


@lru_cache(maxsize=None)
def _f_matrix(a: int, b: int, c: int, d: int) -> FMatrix:
    rows = tuple(m for m in fusion_channels(a, b) if admissible(m, c, d))
    cols = tuple(n for n in fusion_channels(b, c) if admissible(a, n, d))
    if not rows or not cols:
        raise DomainError(f"no admissible channels for F^{{{a}{b}{c}}}_{d}")
    mat = np.array([[f_symbol(a, b, c, d, m, n) for n in cols] for m in rows], dtype=complex)
    mat.setflags(write=False)
    return FMatrix(rows, cols, mat)


def f_matrix(a: int, b: int, c: int, d: int) -> FMatrix:
    """Change-of-tree matrix ``F[m, n]`` for ``((ab)_m c)_d -> (a(bc)_n)_d``.

    Rows and columns are admissible channels in ascending order.
    """
    for x in (a, b, c, d):
        check_label(x)
    return _f_matrix(a, b, c, d)


@lru_cache(maxsize=None)
def r_symbol(a: int, b: int, c: int, exact: bool = False):
    """Eigenvalue of the positive half-twist of ``a``, ``b`` in channel ``c``.

    ``(-1)^((a+b-c)/2) A^((a(a+2) + b(b+2) - c(c+2)) / 2)``.
    """
    _require((a, b, c))
    k = (a * (a + 2) + b * (b + 2) - c * (c + 2)) // 2
    return (-1) ** ((a + b - c) // 2) * _a_pow(k, exact)


def twist(a: int, exact: bool = False):
    """Topological spin compatible with :func:`r_symbol`.

    Satisfies ``R^{ab}_c R^{ba}_c = twist(c) / (twist(a) twist(b))``.
    """
    check_label(a)
    return (-1) ** a * _a_pow(-a * (a + 2), exact)


def sixj_table():
    """All admissible ``(a,b,m,c,d,n)`` with their 6j values, lexicographic."""
    for a, b, m, c, d, n in itertools.product(LABELS, repeat=6):
        if admissible(a, b, m) and admissible(c, d, m) and admissible(a, d, n) and admissible(b, c, n):
            yield (a, b, m, c, d, n), complex(sixj(a, b, m, c, d, n))


def f_table():
    for a, b, c, d in itertools.product(LABELS, repeat=4):
        try:
            fm = f_matrix(a, b, c, d)
        except DomainError:
            continue
        for i, m in enumerate(fm.rows):
            for j, n in enumerate(fm.cols):
                yield (a, b, c, d, m, n), complex(fm.matrix[i, j])


def r_table():
    for a, b, c in itertools.product(LABELS, repeat=3):
        if admissible(a, b, c):
            yield (a, b, c), complex(r_symbol(a, b, c))


def _chan(a, b):
    return fusion_channels(a, b)


def pentagon_residual() -> float:
    """Largest violation of the pentagon identity over all admissible labels.

    ``F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]``.
    """
    worst = 0.0
    for a, b, c, d in itertools.product(LABELS, repeat=4):
        for f in _chan(a, b):
            for g in _chan(f, c):
                for e in _chan(g, d):
                    for l in _chan(c, d):
                        for k in _chan(b, l):
                            if not admissible(a, k, e):
                                continue
                            lhs = f_symbol(f, c, d, e, g, l) * f_symbol(a, b, l, e, f, k)
                            rhs = sum(
                                f_symbol(a, b, c, g, f, h) * f_symbol(a, h, d, e, g, k) * f_symbol(b, c, d, k, h, l)
                                for h in _chan(b, c)
                            )
                            worst = max(worst, abs(lhs - rhs))
    return worst


def hexagon_residual() -> float:
    """Largest violation of both hexagon identities over all admissible labels.

    ``R^{ca}_e F^{acb}_d[e,g] R^{cb}_g = sum_f F^{cab}_d[e,f] R^{cf}_d F^{abc}_d[f,g]``,
    and the same with every ``R`` replaced by its inverse.
    """
    worst = 0.0
    for a, b, c, d in itertools.product(LABELS, repeat=4):
        for e in _chan(c, a):
            if not admissible(e, b, d):
                continue
            for g in _chan(c, b):
                if not admissible(a, g, d):
                    continue
                for inv in (False, True):
                    r = (lambda x, y, z: np.conj(r_symbol(y, x, z))) if inv else r_symbol
                    lhs = r(c, a, e) * f_symbol(a, c, b, d, e, g) * r(c, b, g)
                    rhs = sum(
                        f_symbol(c, a, b, d, e, f) * r(c, f, d) * f_symbol(a, b, c, d, f, g)
                        for f in _chan(a, b)
                        if admissible(c, f, d)
                    )
                    worst = max(worst, abs(lhs - rhs))
    return worst


def unitarity_residual() -> float:
    """Largest deviation of any F-matrix from unitarity."""
    worst = 0.0
    for a, b, c, d in itertools.product(LABELS, repeat=4):
        try:
            m = f_matrix(a, b, c, d).matrix
        except DomainError:
            continue
        worst = max(worst, float(np.abs(m @ m.conj().T - np.eye(len(m))).max()))
    return worst
