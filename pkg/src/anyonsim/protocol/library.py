"""Script generators: the entangling protocol and small utility scripts.

Row layout of the entangling protocol (1-based): leaves 1-4 are the left
qutrit, a pair of charge-1 ancillas is created at 5-6, leaves 7-10 are the
right qutrit.  Every step on the left is emitted together with its mirror
image on the right.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from itertools import product
from typing import Literal

from ..fusionspace import QUTRITS
from .script import (
    FFO,
    ApplyRecoveryTwists,
    Braid,
    Comment,
    CreatePair,
    Fuse,
    FullTwist,
    MeasureCharge,
    OnOutcome,
    PairFullTwist,
    ProtocolScript,
    RepeatUntil,
    Unfuse,
)

ROW_WITH_ANCILLA = 10


@dataclass(frozen=True)
class ScriptParams:
    """Free conventions of the entangling protocol.

    Signs belong to the six braiding steps in order; ``mirror`` says whether
    the right-hand copy uses the same or the inverted sign, and
    ``line_twist`` whether the charge lines are made by twisting a single
    strand around its neighbour or a block's inner pair around the ancilla pair.
    """

    line: int = 1
    sigma: int = 1
    transmit: int = 1
    entangle: int = 1
    reset: int = 1
    restore: int = 1
    mirror: Literal["same", "inverted"] = "same"
    line_twist: Literal["strand", "pair"] = "strand"

    def meta(self) -> dict[str, str]:
        return {k: (f"{v:+d}" if isinstance(v, int) else v) for k, v in asdict(self).items()}

    @classmethod
    def from_meta(cls, meta: dict) -> ScriptParams:
        kw = {}
        for f in fields(cls):
            if f.name in meta:
                v = meta[f.name]
                kw[f.name] = v if f.name in ("mirror", "line_twist") else int(v)
        return cls(**kw)


CALIBRATED = ScriptParams()


def _mirrored(op, i: int, sign: int, p: ScriptParams, width: int = 1):
    # right-hand copy of a step that touches strands i .. i+width
    j = ROW_WITH_ANCILLA - i - width + 1
    s2 = sign if p.mirror == "same" else -sign
    return [op(i, sign), op(j, s2)]


def protocol_instructions(p: ScriptParams = CALIBRATED) -> list:
    body = [Comment("ancilla pair of charge-1 anyons between the qutrits"), CreatePair(5, 1)]
    body.append(Comment("charge lines between each qutrit and the ancilla"))
    if p.line_twist == "strand":
        body += _mirrored(FullTwist, 4, p.line, p)
    else:
        body += _mirrored(PairFullTwist, 3, p.line, p, width=3)
    body += [Comment("move the charge line inside each block")] + _mirrored(Braid, 3, p.sigma, p)
    body += [Comment("transmit the logical label to the edge")] + _mirrored(FullTwist, 4, p.transmit, p)
    body += [Comment("entangle through the ancilla pair"), Braid(5, p.entangle)]
    body += [Comment("reset the edges next to the ancilla")] + _mirrored(FullTwist, 4, p.reset, p)
    body += [Comment("restore the block shape")] + _mirrored(Braid, 3, p.restore, p)
    body += [
        Comment("fuse the ancilla pair: outcome 2 or 0, independent of the input"),
        Fuse(5),
        Comment("outcome 2: split the fused anyon; outcome 0: fresh pair of 2s"),
        OnOutcome((2,), (Unfuse(5),)),
        OnOutcome((0,), (CreatePair(5, 2),)),
        Comment("collective charge of the right block and its new neighbour"),
        MeasureCharge(6, 10),
        RepeatUntil((0, 4), (Braid(5, 1), MeasureCharge(6, 10))),
        OnOutcome((4,), (FFO(5, 6),)),
        Comment("absorb the ancillas into the blocks"),
        Fuse(4),
        Fuse(5),
    ]
    return body


def default_script(p: ScriptParams = CALIBRATED, name: str = "default") -> ProtocolScript:
    return ProtocolScript(QUTRITS.idle_leaves, 0, tuple(protocol_instructions(p)), name, p.meta())


def empty_script(name: str = "empty") -> ProtocolScript:
    return ProtocolScript(QUTRITS.idle_leaves, 0, (), name)


def recovery_script(name: str = "recovery") -> ProtocolScript:
    return ProtocolScript(QUTRITS.idle_leaves, 0, (ApplyRecoveryTwists(),), name)


def default_grid() -> list[ScriptParams]:
    """Signs of the six steps, both mirror rules and both charge-line constructions."""
    grid = []
    for twist_kind in ("strand", "pair"):
        for mirror in ("same", "inverted"):
            for signs in product((1, -1), repeat=6):
                grid.append(ScriptParams(*signs, mirror=mirror, line_twist=twist_kind))
    return grid
