"""Exact arithmetic over F2[x, y, 1/x, 1/y].

A Laurent polynomial over F2 is stored as the set of its exponent pairs; the
set *is* the polynomial, so addition is symmetric difference and the zero
polynomial is the empty set. Univariate F2[x] helpers work on integer
bitmasks (bit i = coefficient of x^i) and back the bivariate GCD.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from math import gcd
from typing import FrozenSet, Iterable, List, Optional, Tuple

import config
from errors import (
    ExponentOverflowError,
    NotDivisibleError,
    PolynomialSyntaxError,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, int]

# 32-bit signed exponents
_INT32_MAX = 2 ** 31 - 1


def _order_key(e: Exponent) -> Tuple[int, int]:
    # rendering order: y-exponent first, then x-exponent
    return (e[1], e[0])


@dataclass(frozen=True)
class LaurentPoly2:
    """Element of F2[x, y, 1/x, 1/y] given by its set of exponents."""

    support: FrozenSet[Exponent] = frozenset()

    def __post_init__(self):
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls(frozenset({(0, 0)}))

    @classmethod
    def monomial(cls, i: int, j: int = 0) -> "LaurentPoly2":
        return cls(frozenset({(i, j)}))

    @classmethod
    def from_terms(cls, terms: Iterable[Exponent]) -> "LaurentPoly2":
        """Sum of monomials; repeated exponents cancel mod 2."""
        acc = set()
        for term in terms:
            acc ^= {tuple(term)}
        return cls(frozenset(acc))

    def __bool__(self):
        return bool(self.support)

    def __len__(self):
        return len(self.support)

    def __iter__(self):
        return iter(sorted(self.support, key=_order_key))

    def __contains__(self, exponent):
        return exponent in self.support

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return mul(self, other)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly2({render(self)!r})"


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------

_DIGITS = re.compile(r"[0-9]+")
_WHITESPACE = " \t\r\n"


class _Parser:
    """Recursive-descent parser for the polynomial grammar.

    poly   := ws term (ws '+' ws term)* ws | '0'
    term   := '1' | factor ('*'? factor)*
    factor := ('x'|'y') ('^' '-'? digits)?
    """

    def __init__(self, text: str, bound: int):
        self.text = text
        self.pos = 0
        self.bound = bound

    def _offset(self) -> int:
        return len(self.text[: self.pos].encode("utf-8"))

    def fail(self, message: str):
        raise PolynomialSyntaxError(message, self._offset())

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self):
        while self.peek() and self.peek() in _WHITESPACE:
            self.pos += 1

    def parse(self) -> LaurentPoly2:
        self.skip_ws()
        if self.peek() == "0":
            self.pos += 1
            self.skip_ws()
            if self.pos != len(self.text):
                self.fail("unexpected input after '0'")
            return LaurentPoly2.zero()
        terms = [self.term()]
        while True:
            self.skip_ws()
            if self.pos == len(self.text):
                break
            if self.peek() != "+":
                self.fail("expected '+'")
            self.pos += 1
            self.skip_ws()
            terms.append(self.term())
        return LaurentPoly2.from_terms(terms)

    def term(self) -> Exponent:
        if self.peek() == "1":
            self.pos += 1
            return (0, 0)
        i, j = self.factor()
        while True:
            if self.peek() == "*":
                self.pos += 1
                di, dj = self.factor()
            elif self.peek() in ("x", "y") and self.peek():
                di, dj = self.factor()
            else:
                break
            i, j = i + di, j + dj
            self._check(i)
            self._check(j)
        return (i, j)

    def factor(self) -> Exponent:
        var = self.peek()
        if var not in ("x", "y") or not var:
            self.fail("expected 'x', 'y' or '1'")
        self.pos += 1
        exponent = 1
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                sign = -1
                self.pos += 1
            match = _DIGITS.match(self.text, self.pos)
            if match is None:
                self.fail("expected exponent digits")
            exponent = sign * int(match.group(0))
            self.pos = match.end()
            self._check(exponent)
        return (exponent, 0) if var == "x" else (0, exponent)

    def _check(self, exponent: int):
        if abs(exponent) > self.bound:
            raise ExponentOverflowError(
                f"exponent {exponent} exceeds bound {self.bound} (byte {self._offset()})"
            )


def parse(text: str) -> LaurentPoly2:
    """Parse a polynomial written in the engine grammar."""
    return _Parser(text, config.EXPONENT_BOUND).parse()


def _render_term(i: int, j: int) -> str:
    factors = []
    for var, e in (("x", i), ("y", j)):
        if e == 1:
            factors.append(var)
        elif e != 0:
            factors.append(f"{var}^{e}")
    return "*".join(factors) if factors else "1"


def render(p: LaurentPoly2) -> str:
    if not p.support:
        return "0"
    return " + ".join(_render_term(i, j) for i, j in p)


# ---------------------------------------------------------------------------
# Ring operations
# ---------------------------------------------------------------------------

def _check_exponents(support: Iterable[Exponent]):
    for i, j in support:
        if abs(i) > _INT32_MAX or abs(j) > _INT32_MAX:
            raise ExponentOverflowError(f"exponent ({i}, {j}) exceeds 32-bit range")


def add(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    return LaurentPoly2(a.support ^ b.support)


def mul(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    if len(a.support) > len(b.support):
        a, b = b, a
    acc = set()
    for i1, j1 in a.support:
        for i2, j2 in b.support:
            term = (i1 + i2, j1 + j2)
            if term in acc:
                acc.remove(term)
            else:
                acc.add(term)
    _check_exponents(acc)
    return LaurentPoly2(frozenset(acc))


def power(p: LaurentPoly2, k: int) -> LaurentPoly2:
    result = LaurentPoly2.one()
    for _ in range(k):
        result = mul(result, p)
    return result


def antipode(p: LaurentPoly2) -> LaurentPoly2:
    """p(1/x, 1/y)."""
    _check_exponents(p.support)
    return LaurentPoly2(frozenset((-i, -j) for i, j in p.support))


def shift(p: LaurentPoly2, di: int, dj: int) -> LaurentPoly2:
    """Multiply by the monomial x^di y^dj."""
    moved = frozenset((i + di, j + dj) for i, j in p.support)
    _check_exponents(moved)
    return LaurentPoly2(moved)


def is_monomial(p: LaurentPoly2) -> bool:
    return len(p.support) == 1


def bounding_box(p: LaurentPoly2) -> Tuple[int, int, int, int]:
    """(min_i, max_i, min_j, max_j) of a nonzero polynomial."""
    if not p.support:
        raise ZeroPolynomialError("the zero polynomial has no bounding box")
    xs = [i for i, _ in p.support]
    ys = [j for _, j in p.support]
    return min(xs), max(xs), min(ys), max(ys)


def degree_spread(p: LaurentPoly2) -> int:
    """Largest coordinate spread of the support (the Newton diameter)."""
    if not p.support:
        return 0
    imin, imax, jmin, jmax = bounding_box(p)
    return max(imax - imin, jmax - jmin)


def canonicalize(p: LaurentPoly2) -> LaurentPoly2:
    """Unit multiple of p with minimum x- and y-exponent both 0."""
    if not p.support:
        raise ZeroPolynomialError("cannot canonicalize the zero polynomial")
    imin, _, jmin, _ = bounding_box(p)
    return shift(p, -imin, -jmin)


def monomial_ratio(a: LaurentPoly2, b: LaurentPoly2) -> Optional[Exponent]:
    """Exponent (i, j) with a = x^i y^j * b, or None."""
    if len(a.support) != len(b.support) or not a.support:
        return None
    ai, _, aj, _ = bounding_box(a)
    bi, _, bj, _ = bounding_box(b)
    di, dj = ai - bi, aj - bj
    return (di, dj) if shift(b, di, dj) == a else None


# ---------------------------------------------------------------------------
# Univariate F2[x] on integer bitmasks
# ---------------------------------------------------------------------------

def f2x_degree(a: int) -> int:
    return a.bit_length() - 1


def f2x_mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def f2x_divmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    m, n = f2x_degree(a), f2x_degree(b)
    if m < n:
        return 0, a
    b <<= m - n
    q = 0
    for k in range(m - n + 1):
        q <<= 1
        if (a >> (m - k)) & 1:
            a ^= b
            q ^= 1
        b >>= 1
    return q, a


def f2x_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, f2x_divmod(a, b)[1]
    return a


# ---------------------------------------------------------------------------
# Bivariate division and GCD in F2[x][y]
# ---------------------------------------------------------------------------
# A canonical polynomial becomes a list of F2[x] bitmasks indexed by the
# y-exponent: rows[j] holds the x-coefficients of y^j.

def _to_rows(p: LaurentPoly2) -> List[int]:
    _, _, _, jmax = bounding_box(p)
    rows = [0] * (jmax + 1)
    for i, j in p.support:
        rows[j] |= 1 << i
    return rows


def _from_rows(rows: List[int]) -> LaurentPoly2:
    support = set()
    for j, coefficient in enumerate(rows):
        i = 0
        while coefficient:
            if coefficient & 1:
                support.add((i, j))
            coefficient >>= 1
            i += 1
    return LaurentPoly2(frozenset(support))


def _trim(rows: List[int]) -> List[int]:
    while rows and rows[-1] == 0:
        rows.pop()
    return rows


def _content(rows: List[int]) -> int:
    c = 0
    for coefficient in rows:
        c = f2x_gcd(c, coefficient)
    return c


def _primitive(rows: List[int]) -> List[int]:
    c = _content(rows)
    return [f2x_divmod(coefficient, c)[0] for coefficient in rows]


def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder of a by b in F2[x][y]."""
    db = len(b) - 1
    lead = b[-1]
    r = list(a)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [f2x_mul(lead, coefficient) for coefficient in r]
        for idx, coefficient in enumerate(b):
            r[idx + k] ^= f2x_mul(lr, coefficient)
        _trim(r)
    return r


def _gcd_rows(a: List[int], b: List[int]) -> List[int]:
    c = f2x_gcd(_content(a), _content(b))
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    steps = 0
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else [])
        steps += 1
    logger.debug("primitive remainder sequence finished after %d steps", steps)
    return [f2x_mul(c, coefficient) for coefficient in a]


def _divide_rows(b: List[int], a: List[int]) -> Optional[List[int]]:
    """Exact quotient b / a in F2[x][y], or None when a does not divide b."""
    da = len(a) - 1
    lead = a[-1]
    r = list(b)
    q = [0] * max(len(b) - da, 0)
    while r and len(r) - 1 >= da:
        k = len(r) - 1 - da
        qc, rem = f2x_divmod(r[-1], lead)
        if rem:
            return None
        q[k] ^= qc
        for idx, coefficient in enumerate(a):
            r[idx + k] ^= f2x_mul(qc, coefficient)
        _trim(r)
    if r:
        return None
    return _trim(q)


def _try_div(b: LaurentPoly2, a: LaurentPoly2) -> Optional[LaurentPoly2]:
    if not a.support:
        raise ZeroPolynomialError("division by the zero polynomial")
    if not b.support:
        return LaurentPoly2.zero()
    ai, _, aj, _ = bounding_box(a)
    bi, _, bj, _ = bounding_box(b)
    quotient = _divide_rows(_to_rows(canonicalize(b)), _to_rows(canonicalize(a)))
    if quotient is None:
        return None
    return shift(_from_rows(quotient), bi - ai, bj - aj)


def divides(a: LaurentPoly2, b: LaurentPoly2) -> bool:
    """True iff b = a * c for some Laurent polynomial c."""
    return _try_div(b, a) is not None


def div_exact(b: LaurentPoly2, a: LaurentPoly2) -> LaurentPoly2:
    quotient = _try_div(b, a)
    if quotient is None:
        raise NotDivisibleError(f"{render(a)} does not divide {render(b)}")
    return quotient


def gcd2(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    """Canonical greatest common divisor in the Laurent ring."""
    if not a.support and not b.support:
        raise ZeroPolynomialError("gcd of two zero polynomials is undefined")
    if not b.support:
        return canonicalize(a)
    if not a.support:
        return canonicalize(b)
    rows = _gcd_rows(_to_rows(canonicalize(a)), _to_rows(canonicalize(b)))
    return canonicalize(_from_rows(rows))


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    vertices: Tuple[Exponent, ...]
    dim: int


@dataclass(frozen=True)
class PrimitiveDirection:
    """Unsigned lattice axis; (u, v) and (-u, -v) are the same direction."""

    u: int
    v: int

    def __post_init__(self):
        if (self.u, self.v) == (0, 0) or gcd(abs(self.u), abs(self.v)) != 1:
            raise ValueError(f"({self.u}, {self.v}) is not a primitive vector")
        if not (self.u > 0 or (self.u == 0 and self.v > 0)):
            raise ValueError(f"({self.u}, {self.v}) is not in canonical sign")

    @classmethod
    def of(cls, u: int, v: int) -> "PrimitiveDirection":
        """Canonical direction of the line through (0,0) and (u, v)."""
        g = gcd(abs(u), abs(v))
        if g == 0:
            raise ValueError("the zero vector has no direction")
        u, v = u // g, v // g
        if u < 0 or (u == 0 and v < 0):
            u, v = -u, -v
        return cls(u, v)

    @property
    def axis(self) -> Tuple[Exponent, Exponent]:
        return ((self.u, self.v), (-self.u, -self.v))

    def monomial(self) -> LaurentPoly2:
        return LaurentPoly2.monomial(self.u, self.v)


def _cross(o: Exponent, a: Exponent, b: Exponent) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Exponent]) -> List[Exponent]:
    """Extreme points in counterclockwise order, starting at the smallest."""
    points = sorted(set(points))
    lower: List[Exponent] = []
    for p in points:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Exponent] = []
    for p in reversed(points):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower + upper[1:-1]


def newton(p: LaurentPoly2) -> NewtonPolygon:
    if not p.support:
        raise ZeroPolynomialError("the zero polynomial has no Newton polygon")
    vertices = tuple(convex_hull(p.support))
    dim = min(len(vertices) - 1, 2)
    return NewtonPolygon(vertices=vertices, dim=dim)


def minkowski_vertices(a: Iterable[Exponent], b: Iterable[Exponent]) -> Tuple[Exponent, ...]:
    """Extreme points of the Minkowski sum of two point sets."""
    b = list(b)
    return tuple(convex_hull((i1 + i2, j1 + j2) for i1, j1 in a for i2, j2 in b))


def collinear_profile(p: LaurentPoly2) -> Optional[Tuple[PrimitiveDirection, List[int]]]:
    """Write a collinear support as t(q) with q = x^u y^v.

    Returns the canonical direction and the coefficient list t_0..t_N with
    t_0 = t_N = 1, or None for a two-dimensional Newton polygon.
    """
    polygon = newton(p)
    if polygon.dim == 0:
        return PrimitiveDirection(1, 0), [1]
    if polygon.dim == 2:
        return None
    (i0, j0), (i1, j1) = polygon.vertices
    di, dj = i1 - i0, j1 - j0
    steps = gcd(abs(di), abs(dj))
    direction = PrimitiveDirection.of(di, dj)
    if (direction.u, direction.v) == (di // steps, dj // steps):
        start = (i0, j0)
    else:
        start = (i1, j1)
    t = [
        1 if (start[0] + k * direction.u, start[1] + k * direction.v) in p.support else 0
        for k in range(steps + 1)
    ]
    return direction, t
