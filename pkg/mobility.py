"""Mobility classification of m-type excitations.

For a rule f and an excitation pattern m, the characteristic polynomial
g = f / gcd(f, m) decides everything: g a unit means fully mobile, g
supported on a line means a lineon along that line, and a two-dimensional
Newton polygon means a fracton. Patterns here are given in the frame of the
ideal <f>; the physical plaquette pattern of a string operator is its
antipode.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

import config
from errors import InvalidProfileError, PeriodTooLargeError, ZeroPolynomialError
from hoca import HocaRule
from polyring import (
    LaurentPoly2,
    PrimitiveDirection,
    add,
    antipode,
    canonicalize,
    collinear_profile,
    div_exact,
    f2x_divmod,
    gcd2,
    is_monomial,
    mul,
    render,
)

logger = logging.getLogger(__name__)

Shift = Tuple[int, int]


class MobilityKind(enum.Enum):
    FULLY_MOBILE = "fully_mobile"
    LINEON = "lineon"
    FRACTON = "fracton"


@dataclass(frozen=True)
class MobilityClass:
    kind: MobilityKind
    direction: Optional[PrimitiveDirection] = None
    period: Optional[int] = None

    def __post_init__(self):
        if self.kind is MobilityKind.LINEON:
            if self.direction is None or self.period is None or self.period < 1:
                raise ValueError("a lineon needs a direction and a period >= 1")
        elif self.direction is not None or self.period is not None:
            raise ValueError(f"{self.kind.value} carries no parameters")

    @classmethod
    def fully_mobile(cls) -> "MobilityClass":
        return cls(MobilityKind.FULLY_MOBILE)

    @classmethod
    def fracton(cls) -> "MobilityClass":
        return cls(MobilityKind.FRACTON)

    @classmethod
    def lineon(cls, direction: PrimitiveDirection, period: int) -> "MobilityClass":
        return cls(MobilityKind.LINEON, direction, period)

    @property
    def is_lineon(self) -> bool:
        return self.kind is MobilityKind.LINEON

    def sort_key(self):
        order = {MobilityKind.FULLY_MOBILE: 0, MobilityKind.LINEON: 1, MobilityKind.FRACTON: 2}
        if self.is_lineon:
            return (order[self.kind], self.direction.u, self.direction.v, self.period)
        return (order[self.kind], 0, 0, 0)

    def __str__(self):
        if self.is_lineon:
            return f"lineon({self.direction.u},{self.direction.v};T={self.period})"
        return self.kind.value

    def to_json(self):
        data = {"class": self.kind.value}
        if self.is_lineon:
            data["axis"] = [self.direction.u, self.direction.v]
            data["directions"] = [list(d) for d in self.direction.axis]
            data["period"] = self.period
        return data


# e-anyons always move freely.
E_ANYON_MOBILITY = MobilityClass.fully_mobile()


class MobilityPolynomialForm(enum.Enum):
    ONE = "one"
    LINE_SUM = "line_sum"
    FULL_PLANE = "full_plane"


@dataclass(frozen=True)
class MobilityPolynomial:
    """Formal sum of every shift a symmetric string operator can realize."""

    form: MobilityPolynomialForm
    direction: Optional[PrimitiveDirection] = None
    period: Optional[int] = None

    @classmethod
    def of(cls, mobility: MobilityClass) -> "MobilityPolynomial":
        if mobility.kind is MobilityKind.FULLY_MOBILE:
            return cls(MobilityPolynomialForm.FULL_PLANE)
        if mobility.kind is MobilityKind.FRACTON:
            return cls(MobilityPolynomialForm.ONE)
        return cls(MobilityPolynomialForm.LINE_SUM, mobility.direction, mobility.period)

    def contains(self, shift: Shift) -> bool:
        i, j = shift
        if self.form is MobilityPolynomialForm.FULL_PLANE:
            return True
        if self.form is MobilityPolynomialForm.ONE:
            return (i, j) == (0, 0)
        step_i, step_j = self.period * self.direction.u, self.period * self.direction.v
        # (i, j) must be an integer multiple of the step vector
        if i * step_j != j * step_i:
            return False
        k = i // step_i if step_i else j // step_j
        return (k * step_i, k * step_j) == (i, j)

    def truncate(self, bound: int) -> Set[Shift]:
        return {
            (i, j)
            for i in range(-bound, bound + 1)
            for j in range(-bound, bound + 1)
            if self.contains((i, j))
        }

    def __str__(self):
        if self.form is MobilityPolynomialForm.ONE:
            return "1"
        if self.form is MobilityPolynomialForm.FULL_PLANE:
            return "sum_{i,j} x^i*y^j"
        step = render(LaurentPoly2.monomial(self.direction.u, self.direction.v))
        return f"sum_k ({step})^({self.period}k)"


def _characteristic(f: LaurentPoly2, m: LaurentPoly2) -> LaurentPoly2:
    if not m.support:
        raise ZeroPolynomialError("the vacuum has no characteristic polynomial")
    return canonicalize(div_exact(f, gcd2(f, m)))


def characteristic_poly(rule: HocaRule, m: LaurentPoly2) -> LaurentPoly2:
    """canonicalize(f / gcd(f, m))."""
    return _characteristic(rule.f, m)


def _bits(coefficients: List[int]) -> int:
    return sum(1 << k for k, c in enumerate(coefficients) if c)


def period(t: List[int]) -> int:
    """Minimal T >= 1 with t(q) dividing 1 + q^T.

    Runs the shift register b_k = sum_{i=1..N} t_i b_{k-i} from the impulse
    state until the state recurs; t_N = 1 makes the state map invertible.
    """
    coefficients = [c % 2 for c in t]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    if not coefficients or coefficients[0] != 1:
        raise InvalidProfileError(f"profile {t} must start with coefficient 1")
    n = len(coefficients) - 1
    if n == 0:
        return 1
    if n > config.PERIOD_MAX_DEGREE:
        raise PeriodTooLargeError(f"period too large: register length {n} exceeds {config.PERIOD_MAX_DEGREE}")
    taps = sum(1 << (i - 1) for i in range(1, n + 1) if coefficients[i])
    mask = (1 << n) - 1
    start = 1
    state = start
    steps = 0
    while True:
        feedback = bin(state & taps).count("1") & 1
        state = ((state << 1) | feedback) & mask
        steps += 1
        if state == start:
            break
    if f2x_divmod((1 << steps) | 1, _bits(coefficients))[1]:
        raise RuntimeError(f"register cycle {steps} does not satisfy t | 1 + q^T for {t}")
    logger.debug("period of %s is %d", coefficients, steps)
    return steps


def classify_poly(f: LaurentPoly2, m: LaurentPoly2) -> Tuple[MobilityClass, MobilityPolynomial]:
    """Classification for any nonzero annihilator polynomial f."""
    g = _characteristic(f, m)
    if is_monomial(g):
        mobility = MobilityClass.fully_mobile()
    else:
        profile = collinear_profile(g)
        if profile is None:
            mobility = MobilityClass.fracton()
        else:
            direction, t = profile
            mobility = MobilityClass.lineon(direction, period(t))
    logger.debug("classified m=%s under f=%s as %s (g=%s)", render(m), render(f), mobility, render(g))
    return mobility, MobilityPolynomial.of(mobility)


def classify(rule: HocaRule, m: LaurentPoly2) -> Tuple[MobilityClass, MobilityPolynomial]:
    return classify_poly(rule.f, m)


def string_operator(rule: HocaRule, m: LaurentPoly2, shift: Shift) -> Optional[LaurentPoly2]:
    """Symmetric-block combination d moving m by ``shift``, or None.

    When the shift belongs to the mobility polynomial, (1 + q) m lies in <f>
    and d = antipode((1 + q) m / f) satisfies d f(1/x,1/y) = (1 + 1/q) m(1/x,1/y).
    """
    _, polynomial = classify(rule, m)
    if not polynomial.contains(shift):
        return None
    hop = add(LaurentPoly2.one(), LaurentPoly2.monomial(*shift))
    return antipode(div_exact(mul(hop, m), rule.f))
