"""Brute-force verifiers built on F2 linear algebra.

None of these use the GCD machinery: string operators are found by solving
d * f(1/x,1/y) = target on a finite window, divisors by enumerating
candidate supports, and ground-state degeneracies by ranking the stabilizer
matrix on a torus. They are the ground truth the classifier is tested
against.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

import config
from errors import (
    CapExceededError,
    NonAbelianError,
    TorusSizeError,
    WindowMarginError,
    ZeroPolynomialError,
)
from gf2 import LinearSystemF2, rank, symplectic_products
from hoca import HocaRule, InitialCondition, evolve, pattern_poly, validate_rule
from pauli import (
    PauliVector,
    build_stabilizers,
    plaquette_term,
    symplectic,
    vertex_term,
)
from polyring import (
    LaurentPoly2,
    add,
    antipode,
    bounding_box,
    canonicalize,
    degree_spread,
    divides,
    mul,
    render,
    shift,
)

logger = logging.getLogger(__name__)

Shift = Tuple[int, int]


# ---------------------------------------------------------------------------
# String operators on a finite window
# ---------------------------------------------------------------------------

def _window_system(rule: HocaRule, window: int):
    """Multiplication by f(1/x,1/y) on unknowns d supported in [-W, W]^2."""
    f_bar = antipode(rule.f)
    fi0, fi1, fj0, fj1 = bounding_box(f_bar)
    cells = [(i, j) for i in range(-window, window + 1) for j in range(-window, window + 1)]
    imin, jmin = -window + fi0, -window + fj0
    height = 2 * window + 1 + fj1 - fj0
    width = 2 * window + 1 + fi1 - fi0
    unknowns = np.array(cells, dtype=np.int64)
    offsets = np.array(sorted(f_bar.support), dtype=np.int64)
    products = unknowns[:, None, :] + offsets[None, :, :]
    rows = (products[..., 0] - imin) * height + (products[..., 1] - jmin)
    matrix = np.zeros((width * height, len(cells)), dtype=np.uint8)
    columns = np.repeat(np.arange(len(cells)), len(offsets))
    matrix[rows.ravel(), columns] = 1
    return f_bar, cells, matrix, (imin, jmin, width, height)


def _centered(target: LaurentPoly2, f_bar: LaurentPoly2) -> Optional[Tuple[Shift, LaurentPoly2]]:
    """Monomial shift putting the only possible quotient box around the origin."""
    ti0, ti1, tj0, tj1 = bounding_box(target)
    fi0, fi1, fj0, fj1 = bounding_box(f_bar)
    lo_i, hi_i, lo_j, hi_j = ti0 - fi0, ti1 - fi1, tj0 - fj0, tj1 - fj1
    if lo_i > hi_i or lo_j > hi_j:
        return None
    ci, cj = (lo_i + hi_i) // 2, (lo_j + hi_j) // 2
    return (ci, cj), shift(target, -ci, -cj)


def _solve_shifts(rule: HocaRule, m: LaurentPoly2, shifts: Sequence[Shift], window: int) -> Dict[Shift, Optional[LaurentPoly2]]:
    """Witness d (or None) for every shift, from one elimination."""
    if not m.support:
        raise ZeroPolynomialError("the vacuum has no string operators")
    f_bar, cells, matrix, (imin, jmin, width, height) = _window_system(rule, window)
    # the plaquette pattern of a string operator is the antipode of m
    m_phys = antipode(m)
    results: Dict[Shift, Optional[LaurentPoly2]] = {}
    pending: List[Tuple[Shift, LaurentPoly2]] = []
    columns: List[np.ndarray] = []
    for move in shifts:
        target = mul(add(LaurentPoly2.one(), LaurentPoly2.monomial(*move)), m_phys)
        if not target.support:
            results[move] = LaurentPoly2.zero()
            continue
        centered = _centered(target, f_bar)
        if centered is None:
            results[move] = None
            continue
        _, goal = centered
        rhs = np.zeros(width * height, dtype=np.uint8)
        inside = True
        for i, j in goal.support:
            if not (0 <= i - imin < width and 0 <= j - jmin < height):
                inside = False
                break
            rhs[(i - imin) * height + (j - jmin)] = 1
        if not inside:
            results[move] = None
            continue
        pending.append((move, goal))
        columns.append(rhs)
    if pending:
        system = LinearSystemF2(matrix=matrix, rhs=np.stack(columns, axis=1), column_labels=cells)
        for (move, goal), solution in zip(pending, system.solve()):
            if solution is None:
                results[move] = None
                continue
            d = LaurentPoly2(frozenset(system.labelled(solution)))
            if mul(d, f_bar) != goal:
                raise RuntimeError(f"solver returned an invalid witness for shift {move}")
            results[move] = d
    logger.debug(
        "window %d: %d of %d shifts admit a witness",
        window, sum(d is not None for d in results.values()), len(results),
    )
    return results


def string_operator_exists(rule: HocaRule, m: LaurentPoly2, shift_vector: Shift, window: int) -> Optional[LaurentPoly2]:
    """d in the window with d f(1/x,1/y) = (monomial)(1 + x^i y^j) m(1/x,1/y), or None."""
    if window < 1:
        raise WindowMarginError("the window must be at least 1")
    return _solve_shifts(rule, m, [tuple(shift_vector)], window)[tuple(shift_vector)]


def margin(rule: HocaRule, m: LaurentPoly2, bound: int) -> int:
    """Smallest window that makes "no witness" a reliable answer."""
    return bound + degree_spread(rule.f) + degree_spread(m) + 2


def mobility_bruteforce(rule: HocaRule, m: LaurentPoly2, bound: int, window: int) -> Set[Shift]:
    required = margin(rule, m, bound)
    if window < required:
        raise WindowMarginError(f"window {window} is below the margin {required} for shift bound {bound}")
    shifts = [(i, j) for i in range(-bound, bound + 1) for j in range(-bound, bound + 1)]
    witnesses = _solve_shifts(rule, m, shifts, window)
    return {move for move, d in witnesses.items() if d is not None}


# ---------------------------------------------------------------------------
# Divisors
# ---------------------------------------------------------------------------

def divisors_bruteforce(p: LaurentPoly2, term_cap: Optional[int] = None) -> Set[LaurentPoly2]:
    """Every canonical divisor of p, by exhaustive search over its bounding box."""
    if not p.support:
        raise ZeroPolynomialError("the zero polynomial has no finite divisor set")
    cap = config.DIVISOR_CAP if term_cap is None else term_cap
    target = canonicalize(p)
    _, imax, _, jmax = bounding_box(target)
    points = [(i, j) for i in range(imax + 1) for j in range(jmax + 1)]
    if 2 ** len(points) > cap:
        raise CapExceededError(f"{2 ** len(points)} candidate supports exceed the cap {cap}")
    odd = len(target.support) % 2 == 1
    found: Set[LaurentPoly2] = set()
    for mask in range(1, 2 ** len(points)):
        support = [points[k] for k in range(len(points)) if mask >> k & 1]
        # a divisor of a polynomial with an odd number of terms has odd length
        if odd and len(support) % 2 == 0:
            continue
        if min(i for i, _ in support) or min(j for _, j in support):
            continue
        candidate = LaurentPoly2(frozenset(support))
        if divides(candidate, target):
            found.add(candidate)
    logger.debug("%s has %d canonical divisors", render(target), len(found))
    return found


# ---------------------------------------------------------------------------
# Torus ground-state degeneracy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusCode:
    L: int
    matrix: np.ndarray
    rank: int
    gsd_log2: int

    @property
    def qubits(self) -> int:
        return 3 * self.L * self.L

    @property
    def gsd(self) -> int:
        return 2 ** self.gsd_log2

    def to_json(self):
        return {"L": self.L, "qubits": self.qubits, "rank": self.rank, "gsd": self.gsd}


def _reach(generators: Sequence[PauliVector]) -> int:
    return max(
        (max(abs(i), abs(j)) for g in generators for p in g.x_part + g.z_part for i, j in p.support),
        default=0,
    )


def torus_code_from_generators(generators: Sequence[PauliVector], L: int, min_size: Optional[int] = None) -> TorusCode:
    """All L^2 translates of each generator, wrapped onto an L x L torus."""
    smallest = 2 * _reach(generators) + 1 if min_size is None else min_size
    if L < smallest:
        raise TorusSizeError(f"L={L} is below the admissible size {smallest}")
    cells = L * L
    translations = np.array([(i, j) for i in range(L) for j in range(L)], dtype=np.int64)
    counts = np.zeros((len(generators) * cells, 6 * cells), dtype=np.int64)
    for g, generator in enumerate(generators):
        rows = g * cells + np.arange(cells)
        for component, p in enumerate(generator.x_part + generator.z_part):
            for i, j in p.support:
                wrapped_i = (translations[:, 0] + i) % L
                wrapped_j = (translations[:, 1] + j) % L
                np.add.at(counts, (rows, component * cells + wrapped_i * L + wrapped_j), 1)
    matrix = (counts % 2).astype(np.uint8)
    half = 3 * cells
    products = symplectic_products(matrix[:, :half], matrix[:, half:])
    if products.any():
        raise NonAbelianError(f"torus reduction at L={L} produced anticommuting stabilizers")
    r = rank(matrix)
    logger.info("torus L=%d: %d generators, rank %d", L, matrix.shape[0], r)
    return TorusCode(L=L, matrix=matrix, rank=r, gsd_log2=half - r)


def torus_code(rule: HocaRule, L: int) -> TorusCode:
    smallest = 2 * max(rule.radius, rule.order_n) + 1
    if L < smallest:
        raise TorusSizeError(f"L={L} is below L_min={smallest} for {render(rule.f)}")
    return torus_code_from_generators(build_stabilizers(rule).generators(), L, min_size=smallest)


def gsd(rule: HocaRule, L: int) -> int:
    return torus_code(rule, L).gsd


# ---------------------------------------------------------------------------
# Subsystem symmetries on a finite slab
# ---------------------------------------------------------------------------

def _slab_columns(width: int) -> Tuple[int, int]:
    x0 = -(width // 2)
    return x0, x0 + width - 1


def _support_box(op: PauliVector) -> Tuple[int, int, int, int]:
    points = [e for p in op.x_part + op.z_part for e in p.support]
    xs = [i for i, _ in points]
    ys = [j for _, j in points]
    return min(xs), max(xs), min(ys), max(ys)


def symmetry_generators(rule: HocaRule) -> List[Tuple[str, PauliVector]]:
    """Stabilizer terms a symmetry operator must commute with."""
    if rule.circuit_realizable:
        stabs = build_stabilizers(rule)
        return [("A", stabs.A), ("B", stabs.B), ("C", stabs.C)]
    return [("A", vertex_term(rule)), ("B", plaquette_term())]


def slab_violations(generators: Sequence[Tuple[str, PauliVector]], pattern: LaurentPoly2, depth: int, width: int) -> List[Tuple[str, Shift]]:
    """Interior translates that anticommute with X on the slab-truncated pattern."""
    x0, x1 = _slab_columns(width)
    truncated = LaurentPoly2(
        frozenset((i, j) for i, j in pattern.support if x0 <= i <= x1 and 0 <= j < depth)
    )
    operator = PauliVector((truncated, LaurentPoly2.zero(), LaurentPoly2.zero()), (LaurentPoly2.zero(),) * 3)
    violations: List[Tuple[str, Shift]] = []
    for name, generator in generators:
        imin, imax, jmin, jmax = _support_box(generator)
        for ki, kj in sorted(symplectic(generator, operator).support):
            if x0 - imin <= ki <= x1 - imax and -jmin <= kj <= depth - 1 - jmax:
                violations.append((name, (ki, kj)))
    return violations


def verify_symmetry_slab(rule: HocaRule, w: InitialCondition, depth: int, width: int) -> bool:
    history = pattern_poly(evolve(rule, w, depth))
    violations = slab_violations(symmetry_generators(rule), history, depth, width)
    if violations:
        logger.info("symmetry check failed at %d interior translates", len(violations))
    return not violations


# ---------------------------------------------------------------------------
# Seeded random instances
# ---------------------------------------------------------------------------

def random_rule(rng: random.Random, max_terms: int = 8, x_range: int = 3, max_order: int = 3, even: Optional[bool] = None) -> HocaRule:
    """Rule with the constant term, at most ``max_terms`` terms in [-x_range, x_range] x [0, max_order]."""
    points = [
        (i, j)
        for i in range(-x_range, x_range + 1)
        for j in range(max_order + 1)
        if (i, j) != (0, 0)
    ]
    while True:
        chosen = rng.sample(points, rng.randint(1, max_terms - 1))
        if not any(j for _, j in chosen):
            continue
        if even is not None and (len(chosen) % 2 == 1) != even:
            continue
        return validate_rule(LaurentPoly2(frozenset(chosen + [(0, 0)])))


def random_excitation(rng: random.Random, max_terms: int = 5, box: int = 2) -> LaurentPoly2:
    """Nonzero pattern with at most ``max_terms`` terms in [-box, box]^2."""
    points = [(i, j) for i in range(-box, box + 1) for j in range(-box, box + 1)]
    return LaurentPoly2(frozenset(rng.sample(points, rng.randint(1, max_terms))))
