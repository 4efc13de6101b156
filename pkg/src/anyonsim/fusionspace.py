"""Standard (left-associated) fusion-tree bases and states over them.

A row of anyons ``l_0, ..., l_{n-1}`` is expanded in comb trees: ``interior[k]``
is the total charge of ``l_0 .. l_k``, so ``interior[0] == l_0`` and
``interior[-1]`` is the total charge of the row.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError
from .recoupling import LABELS, admissible, check_label

LOGICAL_LABELS = (0, 2, 4)


@dataclass(frozen=True, order=True)
class FusionPath:
    leaves: tuple[int, ...]
    interior: tuple[int, ...]

    def __post_init__(self):
        if len(self.leaves) != len(self.interior) or not self.leaves:
            raise DomainError("leaves and interior must be nonempty and of equal length")
        if self.interior[0] != self.leaves[0]:
            raise DomainError("interior[0] must equal leaves[0]")
        for k in range(1, len(self.leaves)):
            if not admissible(self.interior[k - 1], self.leaves[k], self.interior[k]):
                raise DomainError(f"inadmissible vertex at position {k} in {self.interior}")

    @property
    def total(self) -> int:
        return self.interior[-1]


@lru_cache(maxsize=None)
def _basis(leaves: tuple[int, ...], total: int) -> tuple[FusionPath, ...]:
    paths = [(leaves[0],)]
    for leaf in leaves[1:]:
        paths = [p + (c,) for p in paths for c in LABELS if admissible(p[-1], leaf, c)]
    # lexicographic in the interior sequence
    paths = sorted(p for p in paths if p[-1] == total)
    return tuple(FusionPath(leaves, p) for p in paths)


@lru_cache(maxsize=None)
def _index(leaves: tuple[int, ...], total: int) -> dict[tuple[int, ...], int]:
    return {p.interior: i for i, p in enumerate(_basis(leaves, total))}


def enumerate_basis(leaves: Iterable[int], total: int) -> list[FusionPath]:
    """All admissible comb paths for ``leaves`` ending in ``total``, in lexicographic order."""
    leaves = tuple(check_label(x) for x in leaves)
    if not leaves:
        raise DomainError("a row needs at least one leaf")
    return list(_basis(leaves, check_label(total)))


def dimension(leaves: Iterable[int], total: int) -> int:
    return len(enumerate_basis(leaves, total))


def path_index(leaves: tuple[int, ...], total: int, interior: tuple[int, ...]) -> int:
    return _index(tuple(leaves), total)[tuple(interior)]


@dataclass(frozen=True, eq=False)
class AnyonState:
    """A normalized vector over ``enumerate_basis(leaves, total)``.

    States are immutable; every operation returns a new state.
    """

    leaves: tuple[int, ...]
    total: int
    vector: np.ndarray = field(repr=False)

    def __post_init__(self):
        leaves = tuple(int(x) for x in self.leaves)
        object.__setattr__(self, "leaves", leaves)
        vec = np.array(self.vector, dtype=complex)
        if vec.shape != (len(_basis(leaves, self.total)),):
            raise DomainError(f"vector of shape {vec.shape} does not match row {leaves} / {self.total}")
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)

    @classmethod
    def from_amplitudes(cls, leaves, total: int, amplitudes: Mapping, normalize: bool = True) -> AnyonState:
        """Build a state from ``{FusionPath or interior tuple: amplitude}``."""
        leaves = tuple(leaves)
        vec = np.zeros(len(_basis(leaves, total)), dtype=complex)
        idx = _index(leaves, total)
        for key, amp in amplitudes.items():
            interior = key.interior if isinstance(key, FusionPath) else tuple(key)
            vec[idx[interior]] += amp
        state = cls(leaves, total, vec)
        return state.normalized() if normalize else state

    @property
    def basis(self) -> tuple[FusionPath, ...]:
        return _basis(self.leaves, self.total)

    @property
    def amplitudes(self) -> dict[FusionPath, complex]:
        return {p: complex(a) for p, a in zip(self.basis, self.vector) if a != 0}

    @property
    def dim(self) -> int:
        return len(self.vector)

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def normalized(self) -> AnyonState:
        n = self.norm()
        if n == 0:
            raise DomainError("cannot normalize the zero vector")
        return AnyonState(self.leaves, self.total, self.vector / n)

    def with_vector(self, vector) -> AnyonState:
        return AnyonState(self.leaves, self.total, vector)

    def same_row(self, other: AnyonState) -> bool:
        return self.leaves == other.leaves and self.total == other.total


def basis_state(path: FusionPath) -> AnyonState:
    vec = np.zeros(len(_basis(path.leaves, path.total)), dtype=complex)
    vec[_index(path.leaves, path.total)[path.interior]] = 1.0
    return AnyonState(path.leaves, path.total, vec)


def inner_product(s1: AnyonState, s2: AnyonState) -> complex:
    """``<s1|s2>``, conjugate-linear in ``s1``."""
    if not s1.same_row(s2):
        raise DomainError(f"rows differ: {s1.leaves}/{s1.total} vs {s2.leaves}/{s2.total}")
    return complex(np.vdot(s1.vector, s2.vector))


@dataclass(frozen=True)
class LogicalEncoding:
    """Two qutrits, each four charge-2 anyons with total charge 0.

    The logical label of a block is the channel of its first pair; the idle
    row is eight charge-2 leaves with total charge 0.
    """

    block_size: int = 4
    n_blocks: int = 2
    charge: int = 2

    @property
    def idle_leaves(self) -> tuple[int, ...]:
        return (self.charge,) * (self.block_size * self.n_blocks)

    @property
    def labels(self) -> list[tuple[int, ...]]:
        """Logical basis labels in matrix order: 00, 02, 04, 20, ..., 44."""
        return list(product(LOGICAL_LABELS, repeat=self.n_blocks))

    def block_interior(self, x: int) -> tuple[int, ...]:
        # pair charge x, three-leaf charge 2, block total 0
        return (self.charge, x, self.charge, 0)

    def path(self, label: tuple[int, ...]) -> FusionPath:
        interior = sum((self.block_interior(x) for x in label), ())
        return FusionPath(self.idle_leaves, interior)

    def basis_state(self, label: tuple[int, ...]) -> AnyonState:
        return basis_state(self.path(label))

    def encode(self, amplitudes: Mapping[tuple[int, ...], complex]) -> AnyonState:
        return AnyonState.from_amplitudes(
            self.idle_leaves, 0, {self.path(k): v for k, v in amplitudes.items()}
        )

    def isometry(self) -> np.ndarray:
        """Columns are the logical basis states in the idle row's basis."""
        return np.stack([self.basis_state(lab).vector for lab in self.labels], axis=1)


QUTRITS = LogicalEncoding()


def logical_decode(state: AnyonState, enc: LogicalEncoding = QUTRITS):
    """Logical amplitudes ``{(a, b): amp}`` and the norm of the leaked part."""
    if state.leaves != enc.idle_leaves or state.total != 0:
        raise DomainError(f"state row {state.leaves}/{state.total} is not the idle configuration")
    idx = _index(state.leaves, 0)
    amps = {}
    rest = state.vector.copy()
    for lab in enc.labels:
        i = idx[enc.path(lab).interior]
        amps[lab] = complex(state.vector[i])
        rest[i] = 0
    return amps, float(np.linalg.norm(rest))
