"""Higher-order cellular automata (HOCA) over F2.

A rule f(x, y) = 1 + sum_{k=1..n} f_k(x) y^k updates a line of cells from
the previous n rows: r_j = sum_k r_{j-k} f_k. Rows are univariate Laurent
polynomials (every exponent has y = 0).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from errors import (
    DepthError,
    InitialConditionError,
    InvalidRuleError,
    PolynomialSyntaxError,
    ZeroPolynomialError,
)
from polyring import LaurentPoly2, add, mul, newton, parse, render, shift

logger = logging.getLogger(__name__)

Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]

IDENTITY: Matrix2 = ((1, 0), (0, 1))


@dataclass(frozen=True)
class HocaRule:
    f: LaurentPoly2
    order_n: int
    circuit_realizable: bool
    radius: int

    @classmethod
    def trivial(cls) -> "HocaRule":
        """The constant rule 1: no dynamics, order 0."""
        return cls(f=LaurentPoly2.one(), order_n=0, circuit_realizable=False, radius=0)

    def coefficient_row(self, k: int) -> LaurentPoly2:
        """f_k(x), the coefficient of y^k."""
        return LaurentPoly2(frozenset((i, 0) for i, j in self.f.support if j == k))

    def __str__(self):
        return render(self.f)


def validate_rule(p: LaurentPoly2) -> HocaRule:
    if not p.support:
        raise InvalidRuleError("the zero polynomial is not a HOCA rule")
    if (0, 0) not in p.support:
        raise InvalidRuleError(f"{render(p)} has no constant term")
    if any(j < 0 for _, j in p.support):
        raise InvalidRuleError(f"{render(p)} has a negative y-exponent")
    order = max(j for _, j in p.support)
    if order == 0 and len(p.support) > 1:
        raise InvalidRuleError(f"{render(p)} has order 0; a HOCA rule needs a y-dependent term")
    return HocaRule(
        f=p,
        order_n=order,
        circuit_realizable=len(p.support) % 2 == 0,
        radius=max(abs(i) for i, _ in p.support),
    )


def _is_row(p: LaurentPoly2) -> bool:
    return all(j == 0 for _, j in p.support)


@dataclass(frozen=True)
class InitialCondition:
    """Rows r_0 .. r_{n-1} of a history, each a univariate polynomial."""

    rows: Tuple[LaurentPoly2, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            if not _is_row(row):
                raise InitialConditionError(f"row {render(row)} is not univariate in x")

    @classmethod
    def from_supports(cls, supports: Sequence[Sequence[int]]) -> "InitialCondition":
        return cls(tuple(LaurentPoly2(frozenset((i, 0) for i in row)) for row in supports))

    @classmethod
    def empty(cls, order: int) -> "InitialCondition":
        return cls(tuple(LaurentPoly2.zero() for _ in range(order)))


@dataclass(frozen=True)
class SpacetimePattern:
    rows: Tuple[LaurentPoly2, ...]
    rule: HocaRule

    @property
    def depth(self) -> int:
        return len(self.rows)

    def to_json(self):
        return {
            "rule": render(self.rule.f),
            "depth": self.depth,
            "rows": [sorted(i for i, _ in row.support) for row in self.rows],
        }


def parse_initial_condition(text: str, order: int) -> InitialCondition:
    """Comma-separated univariate rows, e.g. "1, x^-1"; short inputs are padded."""
    rows: List[LaurentPoly2] = []
    start = 0
    for segment in text.split(","):
        try:
            row = parse(segment)
        except PolynomialSyntaxError as exc:
            raise PolynomialSyntaxError("invalid initial-condition row", start + exc.offset) from exc
        rows.append(row)
        start += len(segment.encode("utf-8")) + 1
    if len(rows) > order:
        raise InitialConditionError(f"{len(rows)} rows given for a rule of order {order}")
    rows.extend(LaurentPoly2.zero() for _ in range(order - len(rows)))
    return InitialCondition(tuple(rows))


def evolve(rule: HocaRule, w: InitialCondition, depth: int) -> SpacetimePattern:
    n = rule.order_n
    if depth < n:
        raise DepthError(f"depth {depth} is smaller than the rule order {n}")
    if len(w.rows) != n:
        raise InitialConditionError(f"initial condition has {len(w.rows)} rows, rule order is {n}")
    coefficients = [rule.coefficient_row(k) for k in range(n + 1)]
    rows = list(w.rows)
    for j in range(n, depth):
        row = LaurentPoly2.zero()
        for k in range(1, n + 1):
            if coefficients[k].support and rows[j - k].support:
                row = add(row, mul(rows[j - k], coefficients[k]))
        rows.append(row)
    return SpacetimePattern(rows=tuple(rows[:depth]), rule=rule)


def evolution_operator(rule: HocaRule, k: int) -> List[LaurentPoly2]:
    """E^(k): row n-1+k of any history equals sum_i r_i * E^(k)_i."""
    if k < 1:
        raise DepthError("evolution operators are defined for k >= 1")
    n = rule.order_n
    coefficients = [rule.coefficient_row(s) for s in range(n + 1)]
    # each symbolic row is a vector of coefficients on the unit initial rows
    symbolic: List[List[LaurentPoly2]] = [
        [LaurentPoly2.one() if i == r else LaurentPoly2.zero() for i in range(n)]
        for r in range(n)
    ]
    for j in range(n, n + k):
        vector = [LaurentPoly2.zero() for _ in range(n)]
        for s in range(1, n + 1):
            for i in range(n):
                if symbolic[j - s][i].support:
                    vector[i] = add(vector[i], mul(symbolic[j - s][i], coefficients[s]))
        symbolic.append(vector)
    return symbolic[n - 1 + k]


def pattern_poly(pattern: SpacetimePattern) -> LaurentPoly2:
    support = set()
    for j, row in enumerate(pattern.rows):
        support.update(shift(row, 0, j).support)
    return LaurentPoly2(frozenset(support))


# ---------------------------------------------------------------------------
# Lattice changes of coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalizedRule:
    translation: Tuple[int, int]
    basis: Matrix2
    rule: HocaRule

    @property
    def determinant(self) -> int:
        (a, b), (c, d) = self.basis
        return a * d - b * c


def transform_exponents(p: LaurentPoly2, basis: Matrix2, translation: Tuple[int, int] = (0, 0)) -> LaurentPoly2:
    """Apply e -> basis * (e + translation) to every exponent."""
    (a, b), (c, d) = basis
    ti, tj = translation
    return LaurentPoly2(
        frozenset((a * (i + ti) + b * (j + tj), c * (i + ti) + d * (j + tj)) for i, j in p.support)
    )


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def _normals(bound: int):
    """Integer vectors ordered by |c1| + |c2|, then lexicographically."""
    for size in range(1, bound + 1):
        ring = sorted(
            (c1, c2)
            for c1 in range(-size, size + 1)
            for c2 in (size - abs(c1), -(size - abs(c1)))
        )
        seen = set()
        for normal in ring:
            if normal not in seen:
                seen.add(normal)
                yield normal


def normalize_rule(p: LaurentPoly2) -> NormalizedRule:
    """Unimodular change of coordinates turning p into a valid rule."""
    if not p.support:
        raise ZeroPolynomialError("cannot normalize the zero polynomial")
    vertex = min(newton(p).vertices)
    translation = (-vertex[0], -vertex[1])
    if len(p.support) == 1:
        return NormalizedRule(translation=translation, basis=IDENTITY, rule=HocaRule.trivial())
    points = [(i - vertex[0], j - vertex[1]) for i, j in p.support]
    spread = max(max(abs(i), abs(j)) for i, j in points)
    for c1, c2 in _normals(2 * spread + 2):
        g, d1, d2 = _ext_gcd(c1, c2)
        if g != 1:
            continue
        heights = [c1 * i + c2 * j for i, j in points]
        if min(heights) < 0 or max(heights) == 0:
            continue
        basis: Matrix2 = ((d2, -d1), (c1, c2))
        transformed = transform_exponents(p, basis, translation)
        logger.debug("normalized %s with normal (%d, %d)", render(p), c1, c2)
        return NormalizedRule(translation=translation, basis=basis, rule=validate_rule(transformed))
    raise RuntimeError(f"no supporting normal found for {render(p)}")
