"""Protocol scripts: instruction set, text format and static validation.

A script is line oriented::

    name default
    leaves 2 2 2 2 2 2 2 2
    total 0
    meta mirror=same
    # comment lines are kept
    create_pair 5 1
    full_twist 4 +1
    fuse 5 expect=2
    measure_charge 6 10
    on_outcome 4: ffo 5 6
    repeat_until 0,4: braid 5 +1; measure_charge 6 10

``on_outcome`` and ``repeat_until`` test the outcome of the most recent
fusion or charge measurement (unfusion does not count).  ``repeat_until``
runs its body while that outcome is not in the label set.  Bodies are
``;``-separated simple instructions; control forms do not nest.

Fusions performed by the executor drop a resulting vacuum leaf.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..errors import ScriptError
from ..recoupling import LABELS, fusion_channels


def _sign(s: int) -> str:
    return "+1" if s > 0 else "-1"


@dataclass(frozen=True)
class CreatePair:
    pos: int
    charge: int

    def text(self):
        return f"create_pair {self.pos} {self.charge}"


@dataclass(frozen=True)
class Braid:
    i: int
    sign: int = 1

    def text(self):
        return f"braid {self.i} {_sign(self.sign)}"


@dataclass(frozen=True)
class FullTwist:
    i: int
    sign: int = 1

    def text(self):
        return f"full_twist {self.i} {_sign(self.sign)}"


@dataclass(frozen=True)
class PairFullTwist:
    i: int
    sign: int = 1

    def text(self):
        return f"pair_full_twist {self.i} {_sign(self.sign)}"


@dataclass(frozen=True)
class Fuse:
    i: int
    expect: int | None = None

    def text(self):
        return f"fuse {self.i}" + ("" if self.expect is None else f" expect={self.expect}")


@dataclass(frozen=True)
class MeasureCharge:
    i: int
    j: int
    expect: int | None = None

    def text(self):
        return f"measure_charge {self.i} {self.j}" + ("" if self.expect is None else f" expect={self.expect}")


@dataclass(frozen=True)
class Unfuse:
    i: int

    def text(self):
        return f"unfuse {self.i}"


@dataclass(frozen=True)
class FFO:
    i: int
    j: int

    def text(self):
        return f"ffo {self.i} {self.j}"


@dataclass(frozen=True)
class Expect:
    labels: tuple[int, ...]

    def text(self):
        return "expect " + ",".join(map(str, self.labels))


@dataclass(frozen=True)
class ApplyRecoveryTwists:
    def text(self):
        return "apply_recovery_twists"


@dataclass(frozen=True)
class OnOutcome:
    labels: tuple[int, ...]
    body: tuple

    def text(self):
        return f"on_outcome {','.join(map(str, self.labels))}: " + "; ".join(b.text() for b in self.body)


@dataclass(frozen=True)
class RepeatUntil:
    labels: tuple[int, ...]
    body: tuple

    def text(self):
        return f"repeat_until {','.join(map(str, self.labels))}: " + "; ".join(b.text() for b in self.body)


@dataclass(frozen=True)
class Comment:
    body: str

    def text(self):
        return f"# {self.body}" if self.body else "#"


Simple = Union[CreatePair, Braid, FullTwist, PairFullTwist, Fuse, MeasureCharge, Unfuse, FFO, Expect, ApplyRecoveryTwists]
Instruction = Union[Simple, OnOutcome, RepeatUntil, Comment]


@dataclass(frozen=True)
class ProtocolScript:
    leaves: tuple[int, ...]
    total: int
    instructions: tuple = ()
    name: str = "unnamed"
    meta: dict = field(default_factory=dict, compare=False)

    def to_text(self) -> str:
        lines = [f"name {self.name}", "leaves " + " ".join(map(str, self.leaves)), f"total {self.total}"]
        if self.meta:
            lines.append("meta " + " ".join(f"{k}={v}" for k, v in sorted(self.meta.items())))
        lines += [ins.text() for ins in self.instructions]
        return "\n".join(lines) + "\n"

    def executable(self):
        return [ins for ins in self.instructions if not isinstance(ins, Comment)]

    @property
    def postselects(self) -> bool:
        """Whether some branch can be discarded by an expect directive."""
        def hit(ins):
            if isinstance(ins, (OnOutcome, RepeatUntil)):
                return any(hit(b) for b in ins.body)
            return isinstance(ins, Expect) or getattr(ins, "expect", None) is not None
        return any(hit(ins) for ins in self.instructions)


# parsing

_INT = re.compile(r"^[+-]?\d+$")


def _int(tok: str, lineno: int) -> int:
    if not _INT.match(tok):
        raise ScriptError(f"line {lineno}: expected an integer, got {tok!r}")
    return int(tok)


def _labels(tok: str, lineno: int) -> tuple[int, ...]:
    return tuple(_int(t, lineno) for t in tok.split(","))


def _kw(tokens, lineno):
    kw, pos = {}, []
    for t in tokens:
        if "=" in t:
            k, v = t.split("=", 1)
            kw[k] = _int(v, lineno)
        else:
            pos.append(_int(t, lineno))
    return pos, kw


_ARITY = {
    "create_pair": (CreatePair, 2),
    "braid": (Braid, 2),
    "full_twist": (FullTwist, 2),
    "pair_full_twist": (PairFullTwist, 2),
    "fuse": (Fuse, 1),
    "measure_charge": (MeasureCharge, 2),
    "unfuse": (Unfuse, 1),
    "ffo": (FFO, 2),
}


def _parse_simple(text: str, lineno: int):
    tokens = text.split()
    if not tokens:
        raise ScriptError(f"line {lineno}: empty instruction")
    op, args = tokens[0], tokens[1:]
    if op == "apply_recovery_twists":
        if args:
            raise ScriptError(f"line {lineno}: apply_recovery_twists takes no arguments")
        return ApplyRecoveryTwists()
    if op == "expect":
        if len(args) != 1:
            raise ScriptError(f"line {lineno}: expect takes one label list")
        return Expect(_labels(args[0], lineno))
    if op not in _ARITY:
        raise ScriptError(f"line {lineno}: unknown instruction {op!r}")
    cls, n = _ARITY[op]
    pos, kw = _kw(args, lineno)
    if op in ("braid", "full_twist", "pair_full_twist") and len(pos) == 1:
        pos.append(1)
    if len(pos) != n:
        raise ScriptError(f"line {lineno}: {op} takes {n} positional arguments, got {len(pos)}")
    bad = set(kw) - ({"expect"} if cls in (Fuse, MeasureCharge) else set())
    if bad:
        raise ScriptError(f"line {lineno}: unknown option(s) {sorted(bad)} for {op}")
    if op in ("braid", "full_twist", "pair_full_twist") and pos[1] not in (1, -1):
        raise ScriptError(f"line {lineno}: sign must be +1 or -1")
    return cls(*pos, **kw)


def parse_script(text: str) -> ProtocolScript:
    """Parse the text format; raises :class:`ScriptError` with line numbers."""
    name, leaves, total, meta, instrs = "unnamed", None, None, {}, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            instrs.append(Comment(line[1:].strip()))
            continue
        line = line.split("#", 1)[0].strip()
        head, _, rest = line.partition(" ")
        if head == "name":
            name = rest.strip() or name
        elif head == "leaves":
            leaves = tuple(_int(t, lineno) for t in rest.split())
        elif head == "total":
            total = _int(rest.strip(), lineno)
        elif head == "meta":
            for t in rest.split():
                k, _, v = t.partition("=")
                meta[k] = v
        elif head in ("on_outcome", "repeat_until"):
            lab, colon, body = rest.partition(":")
            if not colon:
                raise ScriptError(f"line {lineno}: {head} needs 'labels: body'")
            parts = [p.strip() for p in body.split(";") if p.strip()]
            if not parts:
                raise ScriptError(f"line {lineno}: {head} has an empty body")
            sub = []
            for p in parts:
                if p.split()[0] in ("on_outcome", "repeat_until"):
                    raise ScriptError(f"line {lineno}: control forms do not nest")
                sub.append(_parse_simple(p, lineno))
            cls = OnOutcome if head == "on_outcome" else RepeatUntil
            instrs.append(cls(_labels(lab.strip(), lineno), tuple(sub)))
        else:
            instrs.append(_parse_simple(line, lineno))
    if leaves is None or total is None:
        raise ScriptError("script must declare 'leaves' and 'total'")
    return ProtocolScript(leaves, total, tuple(instrs), name, meta)


def load_script(path) -> ProtocolScript:
    with open(path) as fh:
        return parse_script(fh.read())


# static validation

def _range_charges(row, i, j):
    acc = {row[i - 1]}
    for leaf in row[i:j]:
        acc = {c for a in acc for c in fusion_channels(a, leaf)}
    return tuple(sorted(acc))


def _step(ins, row, last, errors, where):
    """Abstract transition: returns the list of ``(row, last_outcome)`` successors."""
    n = len(row)

    def err(msg):
        errors.append(f"{where}: {ins.text()}: {msg}")
        return []

    if isinstance(ins, CreatePair):
        if not 1 <= ins.pos <= n + 1:
            return err(f"position out of range for {n} leaves")
        if ins.charge not in LABELS:
            return err("charge outside 0..4")
        s = ins.pos - 1
        return [(row[:s] + (ins.charge, ins.charge) + row[s:], last)]
    if isinstance(ins, (Braid, FullTwist)):
        if not 1 <= ins.i <= n - 1:
            return err(f"position out of range for {n} leaves")
        if isinstance(ins, Braid):
            p = ins.i - 1
            return [(row[:p] + (row[p + 1], row[p]) + row[p + 2:], last)]
        return [(row, last)]
    if isinstance(ins, PairFullTwist):
        if not 1 <= ins.i <= n - 3:
            return err(f"needs strands {ins.i}..{ins.i + 3} within {n} leaves")
        return [(row, last)]
    if isinstance(ins, Fuse):
        if not 1 <= ins.i <= n - 1:
            return err(f"position out of range for {n} leaves")
        chans = fusion_channels(row[ins.i - 1], row[ins.i])
        if ins.expect is not None:
            if ins.expect not in chans:
                return err(f"expected outcome {ins.expect} is not a fusion channel {chans}")
            chans = (ins.expect,)
        s = ins.i - 1
        out = []
        for c in chans:
            new = row[:s] + ((c,) if c else ()) + row[s + 2:]
            out.append((new or (0,), c))
        return out
    if isinstance(ins, MeasureCharge):
        if not 1 <= ins.i <= ins.j <= n:
            return err(f"range out of bounds for {n} leaves")
        chans = _range_charges(row, ins.i, ins.j)
        if ins.expect is not None:
            if ins.expect not in chans:
                return err(f"expected outcome {ins.expect} is not a possible charge {chans}")
            chans = (ins.expect,)
        return [(row, c) for c in chans]
    if isinstance(ins, Unfuse):
        if not 1 <= ins.i <= n:
            return err(f"position out of range for {n} leaves")
        if row[ins.i - 1] != 2:
            return err(f"leaf {ins.i} has charge {row[ins.i - 1]}, not 2")
        s = ins.i - 1
        return [(row[:s] + (2, 2) + row[s + 1:], last)]
    if isinstance(ins, FFO):
        if not 1 <= ins.i < ins.j <= n:
            return err(f"need 1 <= i < j <= {n}")
        new = list(row)
        new[ins.i - 1], new[ins.j - 1] = 4 - row[ins.i - 1], 4 - row[ins.j - 1]
        return [(tuple(new), last)]
    if isinstance(ins, Expect):
        if last is None:
            return err("no preceding measurement")
        return [(row, last)] if last in ins.labels else []
    if isinstance(ins, ApplyRecoveryTwists):
        if row != (2,) * 8:
            return err("recovery twists need the idle eight-anyon row")
        return [(row, last)]
    raise ScriptError(f"unsupported instruction {ins!r}")


def validate(script: ProtocolScript, max_loop: int = 16) -> list[str]:
    """Static position and charge checks under every branch.

    Returns the list of problems found (empty when the script is valid).
    """
    errors: list[str] = []
    if any(x not in LABELS for x in script.leaves):
        return ["leaves must be labels 0..4"]
    states = {(tuple(script.leaves), None)}
    for k, ins in enumerate(script.executable(), 1):
        where = f"instruction {k}"
        if isinstance(ins, OnOutcome):
            nxt = set()
            for row, last in states:
                if last in ins.labels:
                    cur = {(row, last)}
                    for b in ins.body:
                        cur = {t for r, l in cur for t in _step(b, r, l, errors, where)}
                    nxt |= cur
                else:
                    nxt.add((row, last))
            states = nxt
        elif isinstance(ins, RepeatUntil):
            done = {(r, l) for r, l in states if l in ins.labels}
            pending = states - done
            seen = set()
            for _ in range(max_loop):
                if not pending:
                    break
                seen |= pending
                cur = pending
                for b in ins.body:
                    cur = {t for r, l in cur for t in _step(b, r, l, errors, where)}
                done |= {(r, l) for r, l in cur if l in ins.labels}
                pending = {(r, l) for r, l in cur if l not in ins.labels} - seen
            states = done | pending
        else:
            states = {t for r, l in states for t in _step(ins, r, l, errors, where)}
        if errors:
            break
    return errors


def check(script: ProtocolScript) -> ProtocolScript:
    errors = validate(script)
    if errors:
        raise ScriptError(errors)
    return script
