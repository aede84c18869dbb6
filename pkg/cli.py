"""Command-line front end for the HOCA mobility engine.

Every command prints a JSON report (``"schema": "1"``), an ASCII rendering,
or both. Exit status is 0 on success, 1 on a domain error or a failed
verification and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import random
import sys
from typing import Dict, List, Optional, Sequence, Union

from dotenv import dotenv_values

import config
from errors import HocaError
from fusion import check_fusion
from hoca import HocaRule, SpacetimePattern, evolve, parse_initial_condition, pattern_poly, validate_rule
from mobility import E_ANYON_MOBILITY, MobilityClass, MobilityKind, Shift, characteristic_poly, classify, string_operator
from oracle import (
    margin,
    mobility_bruteforce,
    random_excitation,
    slab_violations,
    symmetry_generators,
    torus_code,
    torus_code_from_generators,
)
from paper_examples import run_paper_examples
from pauli import bare_toric_generators, build_stabilizers, decompose_pq, symplectic, synthesize_circuit
from polyring import LaurentPoly2, add, bounding_box, gcd2, mul, parse, render

logger = logging.getLogger(__name__)

SCHEMA = "1"
COMMANDS = ("classify", "fuse", "decompose", "circuit", "evolve", "gsd", "verify", "paper-examples")


class UsageError(Exception):
    """Bad invocation that argparse itself cannot detect."""


def render_ascii(item: Union[LaurentPoly2, SpacetimePattern], legend: bool = False) -> str:
    """Dot grid of a support: x to the right, y downwards, 'X' for set cells.

    The grid always contains the origin so that patterns can be compared by
    eye.
    """
    p = pattern_poly(item) if isinstance(item, SpacetimePattern) else item
    if not p.support:
        return "(empty)"
    imin, imax, jmin, jmax = bounding_box(p)
    imin, imax, jmin, jmax = min(imin, 0), max(imax, 0), min(jmin, 0), max(jmax, 0)
    lines = [
        "".join("X" if (i, j) in p.support else "." for i in range(imin, imax + 1))
        for j in range(jmin, jmax + 1)
    ]
    if legend:
        lines.append(f"origin: column {-imin}, row {-jmin}; x right, y down")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _shift_arg(text: str) -> Shift:
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j, got {text!r}")
    return (i, j)


def _shared_options(suppress: bool) -> argparse.ArgumentParser:
    """Options accepted both before and after the command name."""
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", metavar="FILE", default=default(None),
                        help="key=value file whose keys mirror the long flags")
    shared.add_argument("--format", choices=("json", "ascii", "both"), default=default(config.OUTPUT_FORMAT))
    shared.add_argument("--seed", type=int, default=default(config.DEFAULT_SEED))
    shared.add_argument("-v", "--verbose", action="store_true", default=default(False))
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoca-mobility",
        description="Mobility of excitations in HOCA-generated symmetry-enriched toric codes.",
        parents=[_shared_options(suppress=False)],
    )
    shared = _shared_options(suppress=True)
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    classify_cmd = commands.add_parser("classify", parents=[shared], help="mobility class of one excitation")
    classify_cmd.add_argument("--rule", required=True)
    classify_cmd.add_argument("--m", required=True, help="m-excitation pattern")
    classify_cmd.add_argument(
        "--shift", type=_shift_arg, default=None,
        help="i,j translation for the witness (use --shift=-1,0 for negative i); defaults to one period along the axis",
    )

    fuse_cmd = commands.add_parser("fuse", parents=[shared], help="fusion channels of two excitations")
    fuse_cmd.add_argument("--rule", required=True)
    fuse_cmd.add_argument("--m1", required=True)
    fuse_cmd.add_argument("--m2", required=True)
    fuse_cmd.add_argument("--window", type=int, default=None, help="placements range over [-W, W]^2")

    decompose_cmd = commands.add_parser("decompose", parents=[shared], help="f = (1+x)P + (1+y)Q")
    decompose_cmd.add_argument("--rule", required=True)
    decompose_cmd.add_argument("--cap", type=int, default=config.DECOMPOSE_CAP)

    circuit_cmd = commands.add_parser("circuit", parents=[shared], help="CZ circuit of the symmetric model")
    circuit_cmd.add_argument("--rule", required=True)

    evolve_cmd = commands.add_parser("evolve", parents=[shared], help="spacetime history of an initial condition")
    evolve_cmd.add_argument("--rule", required=True)
    evolve_cmd.add_argument("--w", required=True, help='comma-separated rows, e.g. "1, x^-1"')
    evolve_cmd.add_argument("--depth", type=int, default=config.DEPTH)

    gsd_cmd = commands.add_parser("gsd", parents=[shared], help="ground-state degeneracy on an L x L torus")
    gsd_cmd.add_argument("--rule")
    gsd_cmd.add_argument("--L", type=int, required=True)
    gsd_cmd.add_argument("--bare", action="store_true", help="undressed toric code with a vertex X field")

    verify_cmd = commands.add_parser("verify", parents=[shared], help="oracle checks for one rule")
    verify_cmd.add_argument("--rule", required=True)
    verify_cmd.add_argument("--m", help="excitation to compare against the brute-force oracle")
    verify_cmd.add_argument("--w", default="1", help="initial condition for the slab symmetry check")
    verify_cmd.add_argument("--depth", type=int, default=config.DEPTH)
    verify_cmd.add_argument("--width", type=int, default=config.SLAB_WIDTH)
    verify_cmd.add_argument("--L", type=int, default=None)
    verify_cmd.add_argument("--shift-bound", type=int, default=config.SHIFT_BOUND)
    verify_cmd.add_argument("--window", type=int, default=None)
    verify_cmd.add_argument("--samples", type=int, default=0, help="random excitations to cross-check")

    commands.add_parser("paper-examples", parents=[shared], help="run the built-in worked examples")
    return parser


def _config_flags(path: str) -> List[str]:
    flags: List[str] = []
    for key, value in dotenv_values(path).items():
        flag = "--" + key.strip().replace("_", "-")
        if value is None or value.lower() == "true":
            flags.append(flag)
        elif value.lower() != "false":
            flags.extend([flag, value])
    logger.debug("config %s contributed %s", path, flags)
    return flags


def expand_config(argv: Sequence[str]) -> List[str]:
    """Insert --config entries right after the command so explicit flags win."""
    argv = list(argv)
    pre_parser = argparse.ArgumentParser(add_help=False)
    pre_parser.add_argument("--config")
    known, _ = pre_parser.parse_known_args(argv)
    if not known.config:
        return argv
    if not os.path.isfile(known.config):
        raise UsageError(f"config file {known.config} does not exist")
    position = next((k + 1 for k, token in enumerate(argv) if token in COMMANDS), len(argv))
    return argv[:position] + _config_flags(known.config) + argv[position:]


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _rule(args) -> HocaRule:
    return validate_rule(parse(args.rule))


def _excitation(text: str, flag: str) -> LaurentPoly2:
    m = parse(text)
    if not m.support:
        raise UsageError(f"{flag} is the vacuum (0); give a nonzero excitation pattern")
    return m


def _representative_shift(mobility: MobilityClass) -> Optional[Shift]:
    if mobility.is_lineon:
        return (mobility.period * mobility.direction.u, mobility.period * mobility.direction.v)
    if mobility.kind is MobilityKind.FULLY_MOBILE:
        return (1, 0)
    return None


def _classify(args):
    rule = _rule(args)
    m = _excitation(args.m, "--m")
    mobility, polynomial = classify(rule, m)
    g = characteristic_poly(rule, m)
    report = {"rule": render(rule.f), "m": render(m)}
    report.update(mobility.to_json())
    report.update({"g": render(g), "mobility_polynomial": str(polynomial), "e_anyon": E_ANYON_MOBILITY.kind.value})
    shift = _representative_shift(mobility) if args.shift is None else args.shift
    witness = None if shift is None else string_operator(rule, m, shift)
    report.update({
        "shift": None if shift is None else list(shift),
        "witness": None if witness is None else render(witness),
    })
    text = f"{mobility}\nm:\n{render_ascii(m, legend=True)}\ng:\n{render_ascii(g)}"
    if witness is not None:
        text += f"\nwitness for shift {shift}: {render(witness)}"
    return report, text, True


def _fuse(args):
    rule = _rule(args)
    m1 = _excitation(args.m1, "--m1")
    m2 = _excitation(args.m2, "--m2")
    report = check_fusion(rule, m1, m2, args.window)
    lines = [f"{report.first} x {report.second}: {'PASS' if report.passed else 'FAIL'}"]
    for mobility, placements in report.observed.channels:
        lines.append(f"  {mobility}: {len(placements)} placements, e.g. {placements[0]}")
    if report.observed.includes_vacuum:
        lines.append(f"  vacuum: {list(report.observed.vacuum_placements)}")
    return report.to_json(), "\n".join(lines), report.passed


def _decompose(args):
    rule = _rule(args)
    p, q = decompose_pq(rule, args.cap)
    identity = add(mul(parse("1 + x"), p), mul(parse("1 + y"), q)) == rule.f
    report = {"rule": render(rule.f), "P": render(p), "Q": render(q), "identity": identity, "gcd": render(gcd2(p, q))}
    text = f"P:\n{render_ascii(p)}\nQ:\n{render_ascii(q)}"
    return report, text, identity


def _circuit(args):
    stabs = build_stabilizers(_rule(args))
    circuit = synthesize_circuit(stabs.P, stabs.Q)
    report = dict(circuit.to_json(), rule=render(stabs.rule.f), P=render(stabs.P), Q=render(stabs.Q),
                  gates_per_vertex=len(circuit.gates), stabilizers=stabs.to_json())
    text = (
        f"horizontal-edge targets:\n{render_ascii(circuit.offsets(2), legend=True)}\n"
        f"vertical-edge targets:\n{render_ascii(circuit.offsets(3), legend=True)}"
    )
    return report, text, True


def _evolve(args):
    rule = _rule(args)
    pattern = evolve(rule, parse_initial_condition(args.w, rule.order_n), args.depth)
    return pattern.to_json(), render_ascii(pattern, legend=True), True


def _gsd(args):
    if args.bare:
        code = torus_code_from_generators(bare_toric_generators(), args.L)
        report = dict(code.to_json(), rule=None)
    else:
        if not args.rule:
            raise UsageError("gsd needs --rule unless --bare is given")
        code = torus_code(_rule(args), args.L)
        report = dict(code.to_json(), rule=args.rule)
    return report, f"L={code.L}: GSD = {code.gsd}", True


def _check(name: str, passed: bool, detail: str) -> Dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _agreement(rule: HocaRule, m: LaurentPoly2, bound: int, window: Optional[int]) -> Dict:
    w = margin(rule, m, bound) if window is None else window
    expected = classify(rule, m)[1].truncate(bound)
    observed = mobility_bruteforce(rule, m, bound, w)
    return _check(
        f"classifier-oracle m={render(m)}",
        expected == observed,
        f"{len(observed)} shifts within |shift| <= {bound} (window {w})",
    )


def _verify(args):
    rule = _rule(args)
    checks: List[Dict] = []
    if rule.circuit_realizable:
        stabs = build_stabilizers(rule)
        named = {"A": stabs.A, "B": stabs.B, "C": stabs.C}
        clashes = [
            f"{a}{b}" for (a, x), (b, y) in itertools.combinations_with_replacement(named.items(), 2)
            if symplectic(x, y).support
        ]
        checks.append(_check("stabilizers-commute", not clashes, "anticommuting: " + ",".join(clashes) if clashes else "A, B, C commute"))
        checks.append(_check("symmetric-block", not symplectic(stabs.C, stabs.D).support, "D commutes with C"))
        if args.L is not None:
            code = torus_code(rule, args.L)
            checks.append(_check("gsd", code.gsd == 4, f"L={args.L}: GSD {code.gsd}"))
    else:
        checks.append(_check("stabilizers-commute", True, "odd number of terms: no circuit, A and B only"))
    w = parse_initial_condition(args.w, rule.order_n)
    history = pattern_poly(evolve(rule, w, args.depth))
    violations = slab_violations(symmetry_generators(rule), history, args.depth, args.width)
    checks.append(_check("symmetry-slab", not violations, f"{len(violations)} interior violations"))
    if args.m:
        checks.append(_agreement(rule, _excitation(args.m, "--m"), args.shift_bound, args.window))
    rng = random.Random(args.seed)
    for _ in range(args.samples):
        checks.append(_agreement(rule, random_excitation(rng), args.shift_bound, args.window))
    passed = all(c["passed"] for c in checks)
    report = {"rule": render(rule.f), "seed": args.seed, "passed": passed, "checks": checks}
    text = "\n".join(f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['detail']}" for c in checks)
    return report, text, passed


def _paper_examples(args):
    report = run_paper_examples()
    report.pop("schema")
    lines = [f"{'PASS' if e['passed'] else 'FAIL'} {e['name']}: {e['claim']}" for e in report["examples"]]
    lines.append(f"{report['passed']}/{len(report['examples'])} examples passed")
    return report, "\n".join(lines), not report["failed"]


HANDLERS = {
    "classify": _classify,
    "fuse": _fuse,
    "decompose": _decompose,
    "circuit": _circuit,
    "evolve": _evolve,
    "gsd": _gsd,
    "verify": _verify,
    "paper-examples": _paper_examples,
}


def _emit(report: Dict, text: str, fmt: str, stream=None):
    stream = stream or sys.stdout
    if fmt in ("json", "both"):
        print(json.dumps(dict({"schema": SCHEMA}, **report), indent=2), file=stream)
    if fmt in ("ascii", "both"):
        print(text, file=stream)


def run(args: argparse.Namespace) -> int:
    """Dispatch a parsed command line and return the exit status."""
    try:
        report, text, ok = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except HocaError as exc:
        logger.info("%s failed: %s", args.command, exc)
        print(json.dumps({"schema": SCHEMA, "error": exc.to_dict()}, indent=2))
        return 1
    _emit(report, text, args.format)
    return 0 if ok else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(expand_config(argv))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
