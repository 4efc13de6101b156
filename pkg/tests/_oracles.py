"""Reference computations that share no code with the package."""
import math

import numpy as np

K = 4


def qint(n):
    return math.sin(n * math.pi / (K + 2)) / math.sin(math.pi / (K + 2))


def qfact(n):
    out = 1.0
    for m in range(1, n + 1):
        out *= qint(m)
    return out


def ok(a, b, c):
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c <= 2 * K


def _delta(a, b, c):
    return math.sqrt(qfact((a + b - c) // 2) * qfact((a - b + c) // 2) * qfact((b + c - a) // 2) / qfact((a + b + c) // 2 + 1))


def racah_f(a, b, c, d, e, f):
    """Unitary F^{abc}_d[e, f] from the quantum Racah formula (twice-spin labels)."""
    if not (ok(a, b, e) and ok(e, c, d) and ok(b, c, f) and ok(a, f, d)):
        return 0.0
    alphas = [(a + b + e) // 2, (e + c + d) // 2, (b + c + f) // 2, (a + f + d) // 2]
    betas = [(a + b + c + d) // 2, (a + e + c + f) // 2, (b + e + d + f) // 2]
    total = 0.0
    for z in range(max(alphas), min(betas) + 1):
        den = 1.0
        for x in alphas:
            den *= qfact(z - x)
        for y in betas:
            den *= qfact(y - z)
        total += (-1) ** z * qfact(z + 1) / den
    six = _delta(a, b, e) * _delta(e, c, d) * _delta(b, c, f) * _delta(a, f, d) * total
    return (-1) ** ((a + b + c + d) // 2) * math.sqrt(qint(e + 1) * qint(f + 1)) * six


def transfer_count(leaves, total):
    """Number of fusion paths by multiplying fusion-rule adjacency matrices."""
    v = np.zeros(K + 1, dtype=int)
    v[leaves[0]] = 1
    for leaf in leaves[1:]:
        n = np.array([[int(ok(x, leaf, y)) for y in range(K + 1)] for x in range(K + 1)])
        v = v @ n
    return int(v[total])


def standard_spin(a):
    """exp(2 pi i h_a) with h_a = a(a+2) / (4(K+2)) for twice-spin ``a``."""
    return np.exp(2j * np.pi * a * (a + 2) / (4 * (K + 2)))
