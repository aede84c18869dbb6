"""Built-in suite of the reference worked examples.

Each example recomputes a reference value from scratch and raises
AssertionError on any mismatch. ``run_paper_examples`` collects the
outcomes into a report; the CLI's ``paper-examples`` command prints it.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List

from fusion import allowed_channels, check_fusion, fuse
from hoca import InitialCondition, evolution_operator, validate_rule
from mobility import MobilityClass, characteristic_poly, classify, period
from oracle import gsd, mobility_bruteforce, string_operator_exists, verify_symmetry_slab
from pauli import build_stabilizers, decompose_pq, excitation_map, symplectic, synthesize_circuit
from polyring import (
    LaurentPoly2,
    PrimitiveDirection,
    add,
    antipode,
    collinear_profile,
    divides,
    div_exact,
    gcd2,
    mul,
    newton,
    parse,
    power,
)

logger = logging.getLogger(__name__)

SIX_TERM_RULE = "1 + x^-1*y + y + x*y + y^2 + x^-1*y^2"
DIAGONAL_RULE = "1 + y + x*y^2 + x^2*y^2"
PERIOD_TWO_RULE = "1 + y + x*y + x^-2*y^2 + x^-2*y^3 + x^-1*y^3"
PLAQUETTE_RULE = "1 + x + y + x*y"
LINE_M = "1 + y + x*y"

ANTI_DIAGONAL = PrimitiveDirection(1, -1)


@dataclass(frozen=True)
class WorkedExample:
    name: str
    claim: str
    check: Callable[[], None]


EXAMPLES: List[WorkedExample] = []


def example(name: str, claim: str):
    def register(check: Callable[[], None]):
        EXAMPLES.append(WorkedExample(name, claim, check))
        return check
    return register


def _rule(text: str):
    return validate_rule(parse(text))


def _expect(condition: bool, message: str):
    if not condition:
        raise AssertionError(message)


@example("parse-six-term", "the six-term rule parses to its six exponents")
def _parse_six_term():
    expected = {(0, 0), (-1, 1), (0, 1), (1, 1), (0, 2), (-1, 2)}
    _expect(parse(SIX_TERM_RULE).support == expected, "six-term rule support mismatch")


@example("fracton-sum", "x + y plus 1 + x*y is (1 + x)(1 + y)")
def _fracton_sum():
    total = add(parse("x + y"), parse("1 + x*y"))
    _expect(total == parse(PLAQUETTE_RULE), "sum mismatch")
    _expect(mul(parse("1 + x"), parse("1 + y")) == parse(PLAQUETTE_RULE), "product mismatch")


@example("lineon-gcd", "gcd(f, 1 + y + x*y) = 1 + y + x*y for the six-term rule")
def _lineon_gcd():
    f = parse(SIX_TERM_RULE)
    m = parse(LINE_M)
    _expect(gcd2(f, m) == m, "gcd mismatch")
    _expect(divides(parse("1 + x^-1*y"), f), "1 + x^-1*y must divide f")
    _expect(div_exact(f, parse("1 + x^-1*y")) == m, "quotient mismatch")


@example("newton", "the six-term rule has a 2D Newton polygon; 1 + x^-1*y is a segment")
def _newton():
    _expect(newton(parse(SIX_TERM_RULE)).dim == 2, "the six-term rule must be two-dimensional")
    segment = newton(parse("1 + x^-1*y"))
    _expect(segment.dim == 1 and set(segment.vertices) == {(0, 0), (-1, 1)}, "segment mismatch")


@example("profiles", "1 + x^-1*y and 1 + x^-2*y^2 lie on the (-1, 1) axis")
def _profiles():
    _expect(collinear_profile(parse("1 + x^-1*y")) == (ANTI_DIAGONAL, [1, 1]), "1 + q profile")
    _expect(collinear_profile(parse("1 + x^-2*y^2")) == (ANTI_DIAGONAL, [1, 0, 1]), "1 + q^2 profile")


@example("rules", "the six-term rule and 1 + y + x*y^2 + x^2*y^2 are order-2 realizable rules")
def _rules():
    six_term = _rule(SIX_TERM_RULE)
    _expect((six_term.order_n, six_term.radius, six_term.circuit_realizable) == (2, 1, True), "six-term rule rule data")
    diagonal = _rule(DIAGONAL_RULE)
    _expect((diagonal.order_n, diagonal.circuit_realizable) == (2, True), "diagonal rule data")


@example("evolution-operators", "E^(1) = (f_n..f_1), E^(2) ends in f_2 + f_1^2, E^(3) ends in f_1^3 + f_3")
def _evolution_operators():
    rule = _rule(SIX_TERM_RULE)
    f1, f2 = rule.coefficient_row(1), rule.coefficient_row(2)
    _expect(evolution_operator(rule, 1) == [f2, f1], "E^(1) mismatch")
    _expect(evolution_operator(rule, 2) == [mul(f1, f2), add(f2, power(f1, 2))], "E^(2) mismatch")
    order_three = _rule(PERIOD_TWO_RULE)
    g1, g3 = order_three.coefficient_row(1), order_three.coefficient_row(3)
    _expect(evolution_operator(order_three, 3)[-1] == add(power(g1, 3), g3), "E^(3) last entry mismatch")


@example("decomposition", "f = (1 + x)P + (1 + y)Q with gcd(P, Q) = 1")
def _decomposition():
    rule = _rule(SIX_TERM_RULE)
    p, q = decompose_pq(rule)
    identity = add(mul(parse("1 + x"), p), mul(parse("1 + y"), q))
    _expect(identity == rule.f and gcd2(p, q) == LaurentPoly2.one(), "six-term rule decomposition")
    reference = add(mul(parse("1 + x"), parse("y + x^-1*y + x^-1*y^2")), mul(parse("1 + y"), LaurentPoly2.one()))
    _expect(reference == rule.f, "reference P, Q must reproduce the six-term rule")
    _expect(decompose_pq(_rule("1 + x^2*y")) == (parse("1 + x"), parse("x^2")), "staircase pair")


@example("circuit", "the six-term rule circuit places four CZ gates per vertex")
def _circuit():
    circuit = synthesize_circuit(parse("y + x^-1*y + x^-1*y^2"), LaurentPoly2.one())
    _expect(len(circuit.gates) == 4, "reference decomposition gate count")
    _expect(len(synthesize_circuit(*decompose_pq(_rule(SIX_TERM_RULE))).gates) == 4, "engine decomposition gate count")


@example("stabilizers", "the dressed stabilizers commute and D commutes with C")
def _stabilizers():
    stabs = build_stabilizers(_rule(SIX_TERM_RULE))
    for first, second in ((stabs.A, stabs.B), (stabs.A, stabs.C), (stabs.B, stabs.C), (stabs.C, stabs.D)):
        _expect(not symplectic(first, second).support, "nonzero symplectic product")
    other = build_stabilizers(_rule(DIAGONAL_RULE))
    _expect(other.B == stabs.B, "B must not depend on the rule")


@example("symmetric-block", "a single symmetric block D excites m = f(1/x, 1/y)")
def _symmetric_block():
    stabs = build_stabilizers(_rule(SIX_TERM_RULE))
    excitation = excitation_map(stabs, stabs.D)
    _expect(excitation.m == antipode(stabs.rule.f), "m-component mismatch")
    _expect(not excitation.e.support and not excitation.c.support, "D must only excite plaquettes")


@example("classify", "the four reference mobility classifications")
def _classify():
    six_term = _rule(SIX_TERM_RULE)
    m = parse(LINE_M)
    _expect(classify(six_term, LaurentPoly2.one())[0] == MobilityClass.fracton(), "(a) single m is immobile")
    _expect(classify(six_term, m)[0] == MobilityClass.lineon(ANTI_DIAGONAL, 1), "(b) period-1 lineon")
    _expect(
        classify(_rule(DIAGONAL_RULE), m)[0] == MobilityClass.lineon(PrimitiveDirection(1, 1), 1),
        "(c) diagonal lineon",
    )
    _expect(
        classify(_rule(PERIOD_TWO_RULE), m)[0] == MobilityClass.lineon(ANTI_DIAGONAL, 2),
        "(d) period-2 lineon",
    )
    for text in (SIX_TERM_RULE, DIAGONAL_RULE, PERIOD_TWO_RULE):
        rule = _rule(text)
        _expect(classify(rule, rule.f)[0] == MobilityClass.fully_mobile(), "(e) f is fully mobile")


@example("periods", "1 + q has period 1 and 1 + q^2 has period 2")
def _periods():
    _expect(period([1, 1]) == 1 and period([1, 0, 1]) == 2, "period mismatch")


@example("characteristic", "g = 1 for m = f, g = f for m = 1, g = 1 + x^-1*y for the lineon")
def _characteristic():
    rule = _rule(SIX_TERM_RULE)
    _expect(characteristic_poly(rule, rule.f) == LaurentPoly2.one(), "g(f) must be 1")
    _expect(characteristic_poly(rule, LaurentPoly2.one()) == parse("x + y + x*y + x^2*y + y^2 + x*y^2"), "g(1) = f")
    _expect(characteristic_poly(rule, parse(LINE_M)) == parse("x + y"), "g(lineon)")


@example("fusion-worked", "fractons of (1 + x)(1 + y) fuse into both lineons, a fracton and alpha")
def _fusion_worked():
    rule = _rule(PLAQUETTE_RULE)
    one = LaurentPoly2.one()
    channels = fuse(rule, one, one, 3)
    vertical = MobilityClass.lineon(PrimitiveDirection(0, 1), 1)
    horizontal = MobilityClass.lineon(PrimitiveDirection(1, 0), 1)
    _expect((1, 0) in channels.witnesses(vertical), "gamma1 + gamma2 = beta1")
    _expect((0, 1) in channels.witnesses(horizontal), "gamma1 + gamma3 = beta2")
    _expect((1, 1) in channels.witnesses(MobilityClass.fracton()), "gamma1 + gamma4 = gamma6")
    _expect((0, 0) in channels.vacuum_placements, "vacuum at zero displacement")
    alpha = fuse(rule, parse("x + y"), parse("1 + x*y"), 2)
    _expect((0, 0) in alpha.witnesses(MobilityClass.fully_mobile()), "gamma5 + gamma6 = alpha")


@example("fusion-lineons", "lineons along different axes only fuse to fractons")
def _fusion_lineons():
    report = check_fusion(_rule(PLAQUETTE_RULE), parse("1 + x"), parse("1 + y"))
    _expect(report.passed, "fusion rule violated")
    _expect(report.observed.classes() == [MobilityClass.fracton()], "only fractons expected")


@example("fusion-rules", "alpha is the identity; lineon products obey the lcm rule")
def _fusion_rules():
    rule = _rule(PLAQUETTE_RULE)
    alpha, gamma = MobilityClass.fully_mobile(), MobilityClass.fracton()
    x_axis, y_axis = PrimitiveDirection(1, 0), PrimitiveDirection(0, 1)
    identity = allowed_channels(rule, alpha, gamma)
    _expect(identity(gamma) and not identity(alpha), "alpha x gamma = gamma")
    same = allowed_channels(rule, MobilityClass.lineon(x_axis, 2), MobilityClass.lineon(x_axis, 3))
    allowed_periods = [t for t in range(1, 8) if same(MobilityClass.lineon(x_axis, t))]
    _expect(allowed_periods == [1, 2, 3, 6] and same(alpha) and not same(gamma), "lcm rule")
    crossed = allowed_channels(rule, MobilityClass.lineon(x_axis, 1), MobilityClass.lineon(y_axis, 1))
    _expect(crossed(gamma) and not crossed(alpha), "crossed lineons give fractons")


@example("string-operators", "the lineon hops by (-1, 1); the single m cannot move")
def _string_operators():
    rule = _rule(SIX_TERM_RULE)
    _expect(string_operator_exists(rule, parse(LINE_M), (-1, 1), 8) is not None, "lineon hop witness")
    _expect(string_operator_exists(rule, LaurentPoly2.one(), (1, 0), 8) is None, "fracton must not move")


@example("mobility-bruteforce", "the brute-force shift sets of the lineon, the fracton and f")
def _mobility_bruteforce():
    rule = _rule(SIX_TERM_RULE)
    line = {(k, -k) for k in range(-3, 4)}
    _expect(mobility_bruteforce(rule, parse(LINE_M), 3, 12) == line, "lineon shifts")
    _expect(mobility_bruteforce(rule, LaurentPoly2.one(), 3, 12) == {(0, 0)}, "fracton shifts")
    _expect(len(mobility_bruteforce(rule, rule.f, 2, 12)) == 25, "f moves everywhere")


@example("gsd", "the ground-state degeneracy is 4, as for the toric code")
def _gsd():
    _expect(gsd(_rule(SIX_TERM_RULE), 6) == 4, "six-term rule at L=6")
    _expect(gsd(_rule(PLAQUETTE_RULE), 5) == 4, "(1 + x)(1 + y) at L=5")


@example("symmetry-slab", "the three displayed initial conditions generate symmetries")
def _symmetry_slab():
    rule = _rule(SIX_TERM_RULE)
    for rows in ([[0], [-1]], [[0], [0, 1]], [[], [0]]):
        _expect(verify_symmetry_slab(rule, InitialCondition.from_supports(rows), 7, 15), f"w={rows}")


@example("render", "the six-term rule stencil as a dot grid")
def _render():
    from cli import render_ascii

    _expect(render_ascii(parse(SIX_TERM_RULE)) == ".X.\nXXX\nXX.", "stencil grid mismatch")


def run_paper_examples() -> Dict:
    started = time.perf_counter()
    outcomes = []
    failed = []
    for item in EXAMPLES:
        try:
            item.check()
            outcomes.append({"name": item.name, "claim": item.claim, "passed": True})
        except AssertionError as exc:
            logger.error("paper example %s failed: %s", item.name, exc)
            outcomes.append({"name": item.name, "claim": item.claim, "passed": False, "detail": str(exc)})
            failed.append(item.name)
    return {
        "schema": "1",
        "passed": len(outcomes) - len(failed),
        "failed": failed,
        "seconds": round(time.perf_counter() - started, 3),
        "examples": outcomes,
    }
