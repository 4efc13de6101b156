"""Gates on the logical 2-qutrit: reference matrices, projective comparison, entangling test."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..cyclotomic import OMEGA as _OMEGA_EXACT
from ..cyclotomic import Cyclo24
from ..errors import DomainError
from ..fusionspace import LOGICAL_LABELS, QUTRITS

LOGICAL_BASIS = tuple(QUTRITS.labels)
OMEGA = np.exp(2j * np.pi / 3)


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """A 9x9 matrix over the logical basis ``00, 02, 04, 20, ..., 44``."""

    matrix: np.ndarray
    labels: tuple = LOGICAL_BASIS
    # outcome words of the branches the gate was extracted from
    words: tuple = field(default=())

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (len(self.labels), len(self.labels)):
            raise DomainError(f"gate shape {m.shape} does not match {len(self.labels)} labels")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other: GateMatrix) -> GateMatrix:
        return GateMatrix(self.matrix @ _mat(other), self.labels)

    def is_unitary(self, tol: float = 1e-9) -> bool:
        m = self.matrix
        return bool(np.abs(m.conj().T @ m - np.eye(len(m))).max() <= tol)

    def is_diagonal(self, tol: float = 1e-9) -> bool:
        m = self.matrix
        return bool(np.abs(m - np.diag(np.diag(m))).max() <= tol)

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix)


def _mat(g) -> np.ndarray:
    return g.matrix if isinstance(g, GateMatrix) else np.asarray(g, dtype=complex)


# diagonal exponents of omega in logical-basis order
_GATE1_POW = [1 if (a == 2) == (b == 2) else 0 for a, b in LOGICAL_BASIS]
_GATE2_POW = [2 if 2 in (a, b) else 0 for a, b in LOGICAL_BASIS]
_D_POW = [1 if a == b == 2 else 0 for a, b in LOGICAL_BASIS]
_T_POW = [(a == 2) + (b == 2) for a, b in LOGICAL_BASIS]


def _numeric(pows) -> GateMatrix:
    return GateMatrix(np.diag(OMEGA ** np.array(pows, dtype=float)))


GATE1 = _numeric(_GATE1_POW)
GATE2 = _numeric(_GATE2_POW)
D_GATE = _numeric(_D_POW)
T_GATE = _numeric(_T_POW)
IDENTITY = GateMatrix(np.eye(9))


class ExactMatrix:
    """Square matrix over Q(zeta_24) with exact products."""

    def __init__(self, rows):
        self.rows = tuple(tuple(Cyclo24.coerce(x) for x in r) for r in rows)

    @classmethod
    def diagonal(cls, entries) -> ExactMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls.diagonal([1] * n)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        n = len(self.rows)
        cols = list(zip(*other.rows))
        return ExactMatrix(
            [[sum((self.rows[i][k] * cols[j][k] for k in range(n)), Cyclo24()) for j in range(n)] for i in range(n)]
        )

    def scale(self, c) -> ExactMatrix:
        c = Cyclo24.coerce(c)
        return ExactMatrix([[c * x for x in r] for r in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in r] for r in self.rows])


class PaperGates:
    """Reference gates as printed, numerically and over exact cyclotomic arithmetic."""

    omega = OMEGA
    gate1, gate2, d, t = GATE1, GATE2, D_GATE, T_GATE

    @staticmethod
    def exact(name: str) -> ExactMatrix:
        pows = {"gate1": _GATE1_POW, "gate2": _GATE2_POW, "d": _D_POW, "t": _T_POW}[name]
        return ExactMatrix.diagonal([_OMEGA_EXACT ** p for p in pows])

    exact_omega = _OMEGA_EXACT


def recovery_identities() -> dict[str, bool]:
    """The three exact identities relating the branch gates and the recovery twists."""
    g1, g2, d, t = (PaperGates.exact(k) for k in ("gate1", "gate2", "d", "t"))
    w = PaperGates.exact_omega
    eye = ExactMatrix.identity(9)
    return {
        "gate2*T == D": g2 @ t == d,
        "gate2*D == conj(omega)*gate1": g2 @ d == g1.scale(w.conjugate()),
        "gate1*D*T == omega*I": g1 @ d @ t == eye.scale(w),
    }


def compare_projective(G, H, tol: float = 1e-9) -> tuple[bool, complex]:
    """Whether ``G = lambda H`` for a unit phase ``lambda`` within ``tol`` (max-norm).

    The returned phase maximizes ``Re(conj(lambda) <H, G>)``, i.e. minimizes the
    Frobenius distance.
    """
    g, h = _mat(G), _mat(H)
    if g.shape != h.shape:
        raise DomainError(f"shape mismatch {g.shape} vs {h.shape}")
    ip = np.vdot(h, g)
    lam = ip / abs(ip) if abs(ip) > 1e-300 else 1.0 + 0j
    return bool(np.abs(g - lam * h).max() <= tol), complex(lam)


def projective_distance(G, H) -> float:
    """``min over unit lambda`` (approximately) of ``||G - lambda H||_max``."""
    g, h = _mat(G), _mat(H)
    _, lam = compare_projective(g, h)
    return float(np.abs(g - lam * h).max())


def entangling_rank(G, d: int = 3, tol: float = 1e-9) -> int:
    """Rank of the ``d x d`` matrix of diagonal phases ``M[a][b] = G[ab, ab]``."""
    m = _mat(G)
    if m.shape != (d * d, d * d):
        raise DomainError(f"expected a {d * d}x{d * d} gate")
    if np.abs(m - np.diag(np.diag(m))).max() > tol:
        raise DomainError("entangling_rank needs a diagonal gate")
    return int(np.linalg.matrix_rank(np.diag(m).reshape(d, d), tol=tol))


def is_product_vector(vec, dims: tuple[int, int] = (3, 3), tol: float = 1e-9) -> bool:
    """Whether a two-party vector factorizes as ``u (x) w``."""
    v = np.asarray(vec, dtype=complex).reshape(dims)
    s = np.linalg.svd(v, compute_uv=False)
    return bool(s[1:].max(initial=0.0) <= tol * max(s[0], 1.0))


def logical_vector(amplitudes: dict) -> np.ndarray:
    """Vector over the logical basis from ``{(a, b): amplitude}``."""
    unknown = set(amplitudes) - set(LOGICAL_BASIS)
    if unknown:
        raise DomainError(f"labels {sorted(unknown)} are not logical")
    return np.array([amplitudes.get(lab, 0) for lab in LOGICAL_BASIS], dtype=complex)


def parse_logical_label(text: str) -> tuple[int, int]:
    """``"02" -> (0, 2)``."""
    if len(text) != 2 or any(ch not in "024" for ch in text):
        raise DomainError(f"logical label must be two of 0,2,4, got {text!r}")
    return int(text[0]), int(text[1])


__all__ = [
    "GateMatrix", "PaperGates", "ExactMatrix", "GATE1", "GATE2", "D_GATE", "T_GATE", "IDENTITY",
    "OMEGA", "LOGICAL_BASIS", "LOGICAL_LABELS", "compare_projective", "projective_distance",
    "entangling_rank", "is_product_vector", "logical_vector", "parse_logical_label",
    "recovery_identities",
]
