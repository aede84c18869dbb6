"""Translation-invariant Pauli operators in the polynomial (symplectic) picture.

Each unit cell carries three qubits: 1 = vertex, 2 = horizontal edge,
3 = vertical edge. A Pauli operator is the vector (a1, a2, a3 | b1, b2, b3)
of Laurent polynomials giving its X and Z supports per sublattice. Axes are
x to the right and y downwards; a plaquette is referenced by its top-left
vertex.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import config
from errors import DecompositionError, NotRealizableError
from hoca import HocaRule, InitialCondition, evolve, pattern_poly
from polyring import LaurentPoly2, add, antipode, gcd2, mul, render, shift

logger = logging.getLogger(__name__)

Triple = Tuple[LaurentPoly2, LaurentPoly2, LaurentPoly2]

ONE = LaurentPoly2.one()
ZERO = LaurentPoly2.zero()
X = LaurentPoly2.monomial(1, 0)
Y = LaurentPoly2.monomial(0, 1)
ONE_PLUS_X = ONE + X
ONE_PLUS_Y = ONE + Y


@dataclass(frozen=True)
class PauliVector:
    x_part: Triple
    z_part: Triple

    def __post_init__(self):
        object.__setattr__(self, "x_part", tuple(self.x_part))
        object.__setattr__(self, "z_part", tuple(self.z_part))
        if len(self.x_part) != 3 or len(self.z_part) != 3:
            raise ValueError("a Pauli vector has three X and three Z entries")

    @classmethod
    def identity(cls) -> "PauliVector":
        return cls((ZERO, ZERO, ZERO), (ZERO, ZERO, ZERO))

    def __add__(self, other: "PauliVector") -> "PauliVector":
        return PauliVector(
            tuple(add(a, b) for a, b in zip(self.x_part, other.x_part)),
            tuple(add(a, b) for a, b in zip(self.z_part, other.z_part)),
        )

    def scale(self, d: LaurentPoly2) -> "PauliVector":
        """The product of the translates of self by the monomials of d."""
        return PauliVector(
            tuple(mul(d, a) for a in self.x_part),
            tuple(mul(d, b) for b in self.z_part),
        )

    def is_identity(self) -> bool:
        return not any(p.support for p in self.x_part + self.z_part)

    def to_json(self):
        return {
            "x": [render(p) for p in self.x_part],
            "z": [render(p) for p in self.z_part],
        }


def symplectic(o1: PauliVector, o2: PauliVector) -> LaurentPoly2:
    """sum_i bar(a1_i) b2_i + bar(b1_i) a2_i.

    The coefficient of x^i y^j is 1 iff o1 translated by (i, j) anticommutes
    with o2.
    """
    total = ZERO
    for a1, b2 in zip(o1.x_part, o2.z_part):
        if a1.support and b2.support:
            total = add(total, mul(antipode(a1), b2))
    for b1, a2 in zip(o1.z_part, o2.x_part):
        if b1.support and a2.support:
            total = add(total, mul(antipode(b1), a2))
    return total


# ---------------------------------------------------------------------------
# f = (1+x) P + (1+y) Q
# ---------------------------------------------------------------------------

def _run(k: int, axis: int) -> LaurentPoly2:
    """(1 + v^k) / (1 + v) for v = x (axis 0) or y (axis 1)."""
    steps = range(0, k) if k > 0 else range(k, 0)
    if axis == 0:
        return LaurentPoly2(frozenset((i, 0) for i in steps))
    return LaurentPoly2(frozenset((0, j) for j in steps))


def _staircase(start: Tuple[int, int], end: Tuple[int, int]) -> Tuple[LaurentPoly2, LaurentPoly2]:
    """P, Q for the pair x^a y^b + x^c y^d: a horizontal run, then a vertical one."""
    (a, b), (c, d) = start, end
    p = shift(_run(c - a, 0), a, b)
    q = shift(_run(d - b, 1), c, b)
    return p, q


def _matchings(items: Sequence) -> Iterator[List[Tuple]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for idx, partner in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for tail in _matchings(remaining):
            yield [(first, partner)] + tail


def _kernel_shifts(reach: int = 2) -> List[LaurentPoly2]:
    monomials = sorted(
        ((a, b) for a in range(-reach, reach + 1) for b in range(-reach, reach + 1)),
        key=lambda e: (abs(e[0]) + abs(e[1]), e),
    )
    return [ZERO] + [LaurentPoly2.monomial(a, b) for a, b in monomials]


def iter_decompositions(rule: HocaRule, cap: Optional[int] = None) -> Iterator[Tuple[LaurentPoly2, LaurentPoly2]]:
    """Valid (P, Q) pairs in a fixed order.

    Candidates come from pairing the monomials of f, orienting each pair,
    and adding (1+y)h to P and (1+x)h to Q for small monomials h (which
    leaves (1+x)P + (1+y)Q unchanged). Only pairs with gcd(P, Q) = 1 are
    yielded; at most ``cap`` candidates are examined.
    """
    if not rule.circuit_realizable:
        raise NotRealizableError(f"{render(rule.f)} has an odd number of terms")
    cap = config.DECOMPOSE_CAP if cap is None else cap
    terms = sorted(rule.f.support, key=lambda e: (e[1], e[0]))
    shifts = _kernel_shifts()
    examined = 0
    for matching in _matchings(terms):
        for orientation in itertools.product((False, True), repeat=len(matching)):
            p0, q0 = ZERO, ZERO
            for (start, end), flipped in zip(matching, orientation):
                p, q = _staircase(end, start) if flipped else _staircase(start, end)
                p0, q0 = add(p0, p), add(q0, q)
            for h in shifts:
                if examined >= cap:
                    logger.info("decomposition search for %s stopped at cap %d", render(rule.f), cap)
                    return
                examined += 1
                p = add(p0, mul(ONE_PLUS_Y, h))
                q = add(q0, mul(ONE_PLUS_X, h))
                if gcd2(p, q) == ONE:
                    logger.debug("decomposition found after %d candidates", examined)
                    yield p, q


def decompose_pq(rule: HocaRule, cap: Optional[int] = None) -> Tuple[LaurentPoly2, LaurentPoly2]:
    """First (P, Q) with (1+x)P + (1+y)Q = f and gcd(P, Q) = 1."""
    for p, q in iter_decompositions(rule, cap):
        return p, q
    raise DecompositionError(f"no coprime decomposition of {render(rule.f)} within the search cap")


# ---------------------------------------------------------------------------
# CZ circuit
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CzGate:
    """CZ between the vertex of cell (0, 0) and an edge qubit of cell (dx, dy)."""

    target_sublattice: int
    dx: int
    dy: int


@dataclass(frozen=True)
class CzCircuit:
    gates: FrozenSet[CzGate]

    def offsets(self, sublattice: int) -> LaurentPoly2:
        return LaurentPoly2(frozenset((g.dx, g.dy) for g in self.gates if g.target_sublattice == sublattice))

    def to_json(self):
        return {
            "gates": [
                {"target_sublattice": g.target_sublattice, "dx": g.dx, "dy": g.dy}
                for g in sorted(self.gates)
            ]
        }


def synthesize_circuit(p: LaurentPoly2, q: LaurentPoly2) -> CzCircuit:
    """One gate per term of P (horizontal edges) and of Q (vertical edges).

    Both kinds of gate sit one row below the monomial that produced it, so the
    Z blocks of the field term come out as y^-1 P and y^-1 Q. Vertical targets
    land on the usual half-integer positions (i, j - 1/2). Horizontal targets
    are read in the same lowered frame: where cell (i, j) owns edge
    (i + 1/2, j), the decomposition P = y + x^-1 y + x^-1 y^2 puts them at
    (0, 1), (-1, 1), (-1, 2), and here they are (0, 0), (-1, 0), (-1, 1).
    Moving every horizontal target up one row converts between the two.
    """
    gates = {CzGate(2, i, j - 1) for i, j in p.support}
    gates |= {CzGate(3, i, j - 1) for i, j in q.support}
    return CzCircuit(frozenset(gates))


def apply_circuit(circuit: CzCircuit, op: PauliVector) -> PauliVector:
    """Conjugate op by the CZ template tiled over every vertex.

    CZ maps X on one end to X Z, so X on a vertex adds Z on its targets and X
    on a target edge adds Z on every vertex wired to it.
    """
    g2, g3 = circuit.offsets(2), circuit.offsets(3)
    a1, a2, a3 = op.x_part
    b1, b2, b3 = op.z_part
    b1 = add(b1, add(mul(a2, antipode(g2)), mul(a3, antipode(g3))))
    b2 = add(b2, mul(a1, g2))
    b3 = add(b3, mul(a1, g3))
    return PauliVector(op.x_part, (b1, b2, b3))


# ---------------------------------------------------------------------------
# Stabilizers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerSet:
    A: PauliVector
    B: PauliVector
    C: PauliVector
    D: PauliVector
    rule: HocaRule
    P: LaurentPoly2
    Q: LaurentPoly2

    def generators(self) -> Tuple[PauliVector, PauliVector, PauliVector]:
        return (self.A, self.B, self.C)

    def to_json(self):
        return {
            "rule": render(self.rule.f),
            "P": render(self.P),
            "Q": render(self.Q),
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "C": self.C.to_json(),
            "D": self.D.to_json(),
        }


def vertex_term(rule: HocaRule) -> PauliVector:
    """Dressed star (0, 1+1/x, 1+1/y | y f(1/x,1/y), 0, 0)."""
    x_bar, y_bar = LaurentPoly2.monomial(-1, 0), LaurentPoly2.monomial(0, -1)
    return PauliVector(
        (ZERO, ONE + x_bar, ONE + y_bar),
        (shift(antipode(rule.f), 0, 1), ZERO, ZERO),
    )


def plaquette_term() -> PauliVector:
    return PauliVector((ZERO, ZERO, ZERO), (ZERO, ONE_PLUS_Y, ONE_PLUS_X))


def bare_toric_generators() -> Tuple[PauliVector, PauliVector, PauliVector]:
    """Undressed star, plaquette and vertex X field."""
    star = PauliVector(
        (ZERO, ONE + LaurentPoly2.monomial(-1, 0), ONE + LaurentPoly2.monomial(0, -1)),
        (ZERO, ZERO, ZERO),
    )
    field = PauliVector((ONE, ZERO, ZERO), (ZERO, ZERO, ZERO))
    return star, plaquette_term(), field


def build_stabilizers(rule: HocaRule, decomposition: Optional[Tuple[LaurentPoly2, LaurentPoly2]] = None) -> StabilizerSet:
    p, q = decomposition if decomposition is not None else decompose_pq(rule)
    y_bar = LaurentPoly2.monomial(0, -1)
    c = PauliVector((ONE, ZERO, ZERO), (ZERO, mul(y_bar, p), mul(y_bar, q)))
    d = PauliVector((ZERO, antipode(q), antipode(p)), (ZERO, ZERO, ZERO))
    return StabilizerSet(A=vertex_term(rule), B=plaquette_term(), C=c, D=d, rule=rule, P=p, Q=q)


@dataclass(frozen=True)
class Excitation:
    e: LaurentPoly2
    m: LaurentPoly2
    c: LaurentPoly2

    def to_json(self):
        return {"e": render(self.e), "m": render(self.m), "c": render(self.c)}


def excitation_map(stabs: StabilizerSet, op: PauliVector) -> Excitation:
    return Excitation(
        e=symplectic(stabs.A, op),
        m=symplectic(stabs.B, op),
        c=symplectic(stabs.C, op),
    )


def symmetry_operator(rule: HocaRule, w: InitialCondition, depth: int) -> PauliVector:
    """X on the vertex qubits of the valid history generated by w."""
    history = pattern_poly(evolve(rule, w, depth))
    return PauliVector((history, ZERO, ZERO), (ZERO, ZERO, ZERO))
