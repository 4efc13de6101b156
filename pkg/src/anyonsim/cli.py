"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage, parse or validation error.
``ANYONSIM_TOL`` overrides the default comparison tolerance of 1e-9.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import recoupling
from .errors import AnyonSimError, DomainError, ScriptError
from .fusionspace import QUTRITS, basis_state, enumerate_basis
from .protocol import (
    GATE1,
    GATE2,
    IDENTITY,
    calibrate_script,
    compare_projective,
    default_grid,
    default_script,
    empty_script,
    entangling_rank,
    execute_branches,
    execute_sampled,
    extract_gate,
    is_product_vector,
    logical_vector,
    parse_logical_label,
    parse_script,
    projective_distance,
    recovery_identities,
    recovery_script,
    run_recovery_algorithm,
    validate,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_TOL = 1e-9
BUILTIN_SCRIPTS = {"default": default_script, "empty": empty_script, "recovery": recovery_script}


def tolerance() -> float:
    raw = os.environ.get("ANYONSIM_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise DomainError(f"ANYONSIM_TOL={raw!r} is not a number") from None
    if not tol > 0:
        raise DomainError("ANYONSIM_TOL must be positive")
    return tol


def fmt_complex(z: complex, digits: int = 9) -> str:
    re, im = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
    return f"{re:.{digits}f}{im:+.{digits}f}i"


def fmt_matrix(m: np.ndarray) -> list[str]:
    return ["  " + " ".join(fmt_complex(z) for z in row) for row in np.asarray(m)]


def _sig(x: float) -> str:
    x = 0.0 if abs(x) < 1e-13 else x
    return f"{x + 0.0:.12g}"


def load(name: str):
    path = Path(name)
    if path.exists():
        return parse_script(path.read_text())
    if name in BUILTIN_SCRIPTS:
        return BUILTIN_SCRIPTS[name]()
    raise ScriptError(f"no such script file: {name}")


@dataclass
class RunReport:
    script: str
    mode: str
    input: str
    branches: list
    gates: dict = field(default_factory=dict)
    # verdicts[group][reference] in {"match", "mismatch", "not-applicable"}
    verdicts: dict = field(default_factory=dict)
    seconds: float | None = None

    def lines(self) -> list[str]:
        out = [f"script: {self.script}", f"mode: {self.mode}", f"input: {self.input}", f"branches: {len(self.branches)}"]
        for k, b in enumerate(self.branches, 1):
            word = " ".join(map(str, b.outcomes)) or "-"
            out.append(f"branch {k}: outcomes {word} weight {b.weight:.12f} row {' '.join(map(str, b.state.leaves))}")
            for r in b.transcript:
                extra = f" tries={r.tries}" if r.kind == "unfuse" else ""
                out.append(f"  {r.kind} {r.start}-{r.stop} -> {r.outcome} p={r.probability:.12f}{extra}")
        out.append(f"total weight: {sum(b.weight for b in self.branches):.12f}")
        for group, gate in self.gates.items():
            out.append(f"gate {group}:")
            out += fmt_matrix(gate.matrix)
        for group, verdicts in self.verdicts.items():
            for ref, (verdict, phase) in verdicts.items():
                tail = f" phase {fmt_complex(phase)}" if verdict == "match" else ""
                out.append(f"verdict {group} {ref}: {verdict}{tail}")
        if self.seconds is not None:
            out.append(f"seconds: {self.seconds:.3f}")
        return out


def _gate_groups(script, tol):
    """Extracted gate per first outcome, with verdicts against the reference gates."""
    refs = {"gate1": GATE1, "gate2": GATE2, "identity": IDENTITY}
    gates, verdicts = {}, {}
    if tuple(script.leaves) != QUTRITS.idle_leaves or script.total != 0:
        return gates, {"-": {k: ("not-applicable", 1) for k in refs}}
    words = {b.outcomes for lab in QUTRITS.labels for b in execute_branches(script, QUTRITS.basis_state(lab))}
    for prefix in sorted({w[:1] for w in words}):
        name = "".join(map(str, prefix)) or "-"
        try:
            g = extract_gate(script, prefix, tol)
        except AnyonSimError:
            verdicts[name] = {k: ("not-applicable", 1) for k in refs}
            continue
        gates[name] = g
        verdicts[name] = {}
        for k, ref in refs.items():
            ok, lam = compare_projective(g, ref, tol)
            verdicts[name][k] = ("match", lam) if ok else ("mismatch", lam)
    return gates, verdicts


def cmd_run(args) -> int:
    tol = tolerance()
    script = load(args.script)
    errors = validate(script)
    if errors:
        raise ScriptError(errors)
    t0 = time.perf_counter()
    if tuple(script.leaves) == QUTRITS.idle_leaves and script.total == 0:
        label = parse_logical_label(args.input)
        state = QUTRITS.basis_state(label)
    else:
        state = basis_state(enumerate_basis(script.leaves, script.total)[0])
        args.input = "first-basis-path"
    if args.mode == "branches":
        branches = execute_branches(script, state)
    else:
        branches = [execute_sampled(script, state, seed=args.seed)]
    gates, verdicts = _gate_groups(script, tol)
    report = RunReport(script.name, args.mode, args.input, branches, gates, verdicts)
    if args.timing:
        report.seconds = time.perf_counter() - t0
    print("\n".join(report.lines()))
    if args.mode == "branches" and abs(sum(b.weight for b in branches) - 1) > tol and not script.postselects:
        return EXIT_FAIL
    return EXIT_OK


# verification targets; each returns (passed, lines)

def _verify_gate(prefix, ref, tol):
    g = extract_gate(default_script(), prefix)
    ok, lam = compare_projective(g, ref, tol)
    return ok, [f"distance {projective_distance(g, ref):.3e}", f"phase {fmt_complex(lam)}"]


def _verify_algebra(tol):
    res = recovery_identities()
    return all(res.values()), [f"{k}: {'exact' if v else 'fails'}" for k, v in res.items()]


def _verify_entangling(tol):
    r1, r2 = entangling_rank(GATE1, tol=tol), entangling_rank(GATE2, tol=tol)
    v = logical_vector({(0, 0): 1, (0, 2): 1, (0, 4): 1, (2, 0): 1, (2, 2): 1, (2, 4): 1})
    product_image = is_product_vector(GATE1.matrix @ v, tol=tol)
    lines = [f"ranks {r1} {r2}", f"gate1 image of test vector is a product: {product_image}"]
    return r1 == 2 and r2 == 2 and not product_image, lines


def _verify_sixj(tol):
    val = complex(recoupling.sixj(2, 2, 2, 2, 2, 2))
    exact = recoupling.sixj(2, 2, 2, 2, 2, 2, exact=True)
    return abs(val) < 1e-12 and not exact, [f"residual {abs(val):.3e}", f"exact value zero: {not exact}"]


def _verify_pentagon(tol):
    p, h, u = recoupling.pentagon_residual(), recoupling.hexagon_residual(), recoupling.unitarity_residual()
    return max(p, h, u) <= tol, [f"pentagon residual {p:.3e}", f"hexagon residual {h:.3e}", f"unitarity residual {u:.3e}"]


def _verify_recovery(tol):
    paths = run_recovery_algorithm((0, 0))
    bad = [p.fusion_word for p in paths if p.terminated and not compare_projective(p.gate, GATE1, tol)[0]]
    open_weight = sum(p.weight for p in paths if not p.terminated)
    return not bad, [f"terminated words checked {sum(p.terminated for p in paths)}", f"open weight {open_weight:.6f}"]


TARGETS = {
    "gate1": lambda tol: _verify_gate((2,), GATE1, tol),
    "gate2": lambda tol: _verify_gate((0,), GATE2, tol),
    "recovery-algebra": _verify_algebra,
    "entangling": _verify_entangling,
    "sixj-zero": _verify_sixj,
    "pentagon": _verify_pentagon,
    "recovery": _verify_recovery,
}


def cmd_verify(args) -> int:
    tol = tolerance()
    targets = list(TARGETS) if args.target == "all" else [args.target]
    status = EXIT_OK
    for name in targets:
        ok, lines = TARGETS[name](tol)
        print(f"{name}: {'pass' if ok else 'fail'}")
        for line in lines:
            print(f"  {line}")
        status = status if ok else EXIT_FAIL
    return status


def cmd_tables(args) -> int:
    if args.what == "sixj":
        print("a\tb\tm\tc\td\tn\tre\tim")
        for key, v in recoupling.sixj_table():
            print("\t".join(map(str, key)) + f"\t{_sig(v.real)}\t{_sig(v.imag)}")
    elif args.what == "f":
        print("a\tb\tc\td\te\tf\tre\tim")
        for key, v in recoupling.f_table():
            print("\t".join(map(str, key)) + f"\t{_sig(v.real)}\t{_sig(v.imag)}")
    else:
        print("a\tb\tc\tre\tim\tmonodromy_ratio_re\tmonodromy_ratio_im")
        for (a, b, c), v in recoupling.r_table():
            c0 = recoupling.fusion_channels(a, b)[0]
            ratio = (v * recoupling.r_symbol(b, a, c)) / (recoupling.r_symbol(a, b, c0) * recoupling.r_symbol(b, a, c0))
            print(f"{a}\t{b}\t{c}\t{_sig(v.real)}\t{_sig(v.imag)}\t{_sig(ratio.real)}\t{_sig(ratio.imag)}")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    grid = default_grid() if args.grid == "default" else []
    report = calibrate_script(grid)
    b = report.best
    print(f"candidates: {len(report.candidates)}")
    print("best: " + " ".join(f"{k}={v}" for k, v in b.params.meta().items()))
    print(f"distance gate1: {b.distance_gate1:.3e}")
    print(f"distance gate2: {b.distance_gate2:.3e}")
    print(f"input-independence defect: {b.defect:.3e}")
    print(f"meets tolerance: {report.meets_tolerance}")
    print("params\tdistance_gate1\tdistance_gate2\tweights\tdefect\terror")
    for c in report.candidates:
        p = ",".join(f"{k}={v}" for k, v in c.params.meta().items())
        w = ",".join(f"{o}:{x:.6f}" for o, x in c.weights)
        print(f"{p}\t{c.distance_gate1:.3e}\t{c.distance_gate2:.3e}\t{w}\t{c.defect:.3e}\t{c.error or '-'}")
    return EXIT_OK if report.meets_tolerance else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="anyonsim", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a protocol script")
    run.add_argument("script", help="script file, or one of: " + ", ".join(BUILTIN_SCRIPTS))
    run.add_argument("--mode", choices=("branches", "sample"), default="branches")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--input", default="00", help="logical label pair such as 02")
    run.add_argument("--timing", action="store_true", help="append the wall-clock time")
    run.set_defaults(func=cmd_run)

    ver = sub.add_parser("verify", help="run one acceptance check")
    ver.add_argument("--target", choices=(*TARGETS, "all"), required=True)
    ver.set_defaults(func=cmd_verify)

    tab = sub.add_parser("tables", help="dump recoupling tables")
    tab.add_argument("--what", choices=("sixj", "f", "r"), required=True)
    tab.add_argument("--format", choices=("tsv",), default="tsv")
    tab.set_defaults(func=cmd_tables)

    cal = sub.add_parser("calibrate", help="search the protocol conventions")
    cal.add_argument("--grid", choices=("default", "empty"), default="default")
    cal.set_defaults(func=cmd_calibrate)

    st = sub.add_parser("selftest", help="run every verification target")
    st.set_defaults(func=cmd_verify, target="all")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ScriptError as exc:
        for e in exc.errors:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AnyonSimError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
