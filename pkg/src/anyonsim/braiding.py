"""Braid generators, full twists and F-move regroupings on comb bases.

Strand positions are 1-based: ``sigma_i`` exchanges leaves ``i`` and ``i+1``.
A positive generator acts on the channel ``f`` of the exchanged pair by
``r_symbol(b, c, f)``; the negative one by its inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .fusionspace import AnyonState, _basis, _index
from .recoupling import LABELS, admissible, f_symbol, r_symbol

BraidWord = Sequence[tuple[int, int]]


@dataclass(frozen=True, eq=False)
class RowUnitary:
    """A unitary from the basis of ``(leaves_in, total)`` to that of ``(leaves_out, total)``."""

    leaves_in: tuple[int, ...]
    leaves_out: tuple[int, ...]
    total: int
    matrix: np.ndarray

    def __matmul__(self, other: RowUnitary) -> RowUnitary:
        # self after other
        if other.leaves_out != self.leaves_in or other.total != self.total:
            raise DomainError("row mismatch in RowUnitary composition")
        return RowUnitary(other.leaves_in, self.leaves_out, self.total, self.matrix @ other.matrix)

    def apply(self, state: AnyonState) -> AnyonState:
        if state.leaves != self.leaves_in or state.total != self.total:
            raise DomainError(f"operator for row {self.leaves_in} applied to {state.leaves}")
        return AnyonState(self.leaves_out, self.total, self.matrix @ state.vector)

    @property
    def H(self) -> RowUnitary:
        return RowUnitary(self.leaves_out, self.leaves_in, self.total, self.matrix.conj().T)


def _check_position(leaves, i):
    if not isinstance(i, (int, np.integer)) or not 1 <= i <= len(leaves) - 1:
        raise DomainError(f"braid position {i} out of range for {len(leaves)} strands")


@lru_cache(maxsize=None)
def _generator(leaves: tuple[int, ...], total: int, i: int, sign: int) -> RowUnitary:
    p = i - 1
    out_leaves = leaves[:p] + (leaves[p + 1], leaves[p]) + leaves[p + 2:]
    rows, cols = _basis(out_leaves, total), _basis(leaves, total)
    out_idx = _index(out_leaves, total)
    mat = np.zeros((len(rows), len(cols)), dtype=complex)
    b, c = leaves[p], leaves[p + 1]
    for k, path in enumerate(cols):
        x = path.interior
        a = x[p - 1] if p > 0 else 0
        e, d = x[p], x[p + 1]
        for e2 in LABELS:
            if not (admissible(a, c, e2) and admissible(e2, b, d)):
                continue
            new = x[:p] + (e2,) + x[p + 1:]
            amp = 0j
            for f in LABELS:
                if admissible(b, c, f) and admissible(a, f, d):
                    r = r_symbol(b, c, f)
                    r = r if sign > 0 else np.conj(r_symbol(c, b, f))
                    amp += f_symbol(a, b, c, d, e, f) * r * np.conj(f_symbol(a, c, b, d, e2, f))
            if amp != 0:
                mat[out_idx[new], k] = amp
    mat.setflags(write=False)
    return RowUnitary(leaves, out_leaves, total, mat)


def braid_generator(leaves: Iterable[int], total: int, i: int, sign: int = 1) -> RowUnitary:
    """``sigma_i^sign`` on the comb basis of ``(leaves, total)``."""
    leaves = tuple(leaves)
    _check_position(leaves, i)
    if sign not in (1, -1):
        raise DomainError(f"braid sign must be +1 or -1, got {sign}")
    return _generator(leaves, total, int(i), int(sign))


def word_unitary(leaves: Iterable[int], total: int, word: BraidWord) -> RowUnitary:
    """Composite unitary of a word; the first letter acts first."""
    leaves = tuple(leaves)
    n = len(_basis(leaves, total))
    u = RowUnitary(leaves, leaves, total, np.eye(n, dtype=complex))
    for i, s in word:
        u = braid_generator(u.leaves_out, total, i, s) @ u
    return u


def apply_braid(state: AnyonState, word: BraidWord) -> AnyonState:
    for i, s in word:
        state = braid_generator(state.leaves, state.total, i, s).apply(state)
    return state


def full_twist(state: AnyonState, i: int, sign: int = 1) -> AnyonState:
    """``sigma_i^(2 sign)``: a phase ``R^{bc}_f R^{cb}_f`` per channel of strands ``i, i+1``."""
    return apply_braid(state, [(i, sign), (i, sign)])


def pair_exchange_word(i: int, sign: int = 1) -> list[tuple[int, int]]:
    """Exchange the pair at ``(i, i+1)`` with the pair at ``(i+2, i+3)`` as rigid units."""
    return [(i + 1, sign), (i, sign), (i + 2, sign), (i + 1, sign)]


def pair_full_twist(state: AnyonState, i: int, sign: int = 1) -> AnyonState:
    """Pure-braid full twist of the pair ``(i, i+1)`` around the pair ``(i+2, i+3)``."""
    if i + 3 > len(state.leaves):
        raise DomainError(f"pair full twist at {i} needs four strands")
    return apply_braid(state, pair_exchange_word(i, sign) * 2)


@dataclass(frozen=True, eq=False)
class Regrouping:
    """Orthonormal change of basis that fuses the leaves ``start..stop`` first.

    Positions are 0-based and inclusive.  Row ``r`` of :attr:`matrix` is the
    grouped basis vector ``labels[r] = (outer, inner)`` where ``outer`` is the
    comb interior with the charges inside the range removed, and ``inner`` the
    group's own comb labels after its first leaf (``inner[-1]`` is the group's
    total charge).
    """

    leaves: tuple[int, ...]
    total: int
    start: int
    stop: int
    labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    matrix: np.ndarray

    def group_charges(self) -> np.ndarray:
        return np.array([inner[-1] if inner else self.leaves[self.start] for _, inner in self.labels])


@lru_cache(maxsize=None)
def regroup(leaves: tuple[int, ...], total: int, start: int, stop: int) -> Regrouping:
    if not 0 <= start <= stop < len(leaves):
        raise DomainError(f"range {start}..{stop} invalid for {len(leaves)} leaves")
    cols = _basis(leaves, total)
    rows: dict = {}
    entries = []
    for k, path in enumerate(cols):
        x = path.interior
        a = x[start - 1] if start > 0 else 0
        outer = x[:start] + x[stop:]
        # walk the group's comb labels, multiplying F-moves
        partial = [((), leaves[start], 1.0 + 0j)]
        for m in range(start, stop):
            nxt = []
            for inner, y, amp in partial:
                for y2 in LABELS:
                    if admissible(y, leaves[m + 1], y2) and admissible(a, y2, x[m + 1]):
                        f = f_symbol(a, y, leaves[m + 1], x[m + 1], x[m], y2)
                        if f != 0:
                            nxt.append((inner + (y2,), y2, amp * f))
            partial = nxt
        for inner, _, amp in partial:
            key = (outer, inner)
            r = rows.setdefault(key, len(rows))
            entries.append((r, k, amp))
    labels = tuple(sorted(rows, key=rows.get))
    mat = np.zeros((len(labels), len(cols)), dtype=complex)
    for r, k, amp in entries:
        mat[r, k] += amp
    mat.setflags(write=False)
    return Regrouping(leaves, total, start, stop, labels, mat)
