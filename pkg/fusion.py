"""Fusion of two excitations: which mobility classes their composites take."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from errors import ZeroPolynomialError
from hoca import HocaRule
from mobility import MobilityClass, MobilityKind, classify
from polyring import LaurentPoly2, add, bounding_box, render, shift

logger = logging.getLogger(__name__)

Placement = Tuple[int, int]


@dataclass(frozen=True)
class FusionChannelSet:
    channels: Tuple[Tuple[MobilityClass, Tuple[Placement, ...]], ...]
    includes_vacuum: bool
    vacuum_placements: Tuple[Placement, ...] = ()
    window: int = 0

    def classes(self) -> List[MobilityClass]:
        return [mobility for mobility, _ in self.channels]

    def witnesses(self, mobility: MobilityClass) -> Tuple[Placement, ...]:
        for candidate, placements in self.channels:
            if candidate == mobility:
                return placements
        return ()

    def to_json(self):
        return {
            "window": self.window,
            "channels": [
                dict(mobility.to_json(), witnesses=[list(p) for p in placements])
                for mobility, placements in self.channels
            ],
            "vacuum": [list(p) for p in self.vacuum_placements],
        }


def _spreads(p: LaurentPoly2) -> Tuple[int, int]:
    imin, imax, jmin, jmax = bounding_box(p)
    return imax - imin, jmax - jmin


def default_window(rule: HocaRule, m1: LaurentPoly2, m2: LaurentPoly2) -> int:
    """2 (diam_x + diam_y) of the Minkowski sum Newt(f) + Newt(m1) + Newt(m2)."""
    dx = dy = 0
    for p in (rule.f, m1, m2):
        sx, sy = _spreads(p)
        dx, dy = dx + sx, dy + sy
    return max(1, 2 * (dx + dy))


def fuse(rule: HocaRule, m1: LaurentPoly2, m2: LaurentPoly2, window: Optional[int] = None) -> FusionChannelSet:
    """Classify m1 + x^a y^b m2 for every placement in [-W, W]^2."""
    if not m1.support or not m2.support:
        raise ZeroPolynomialError("fusion operands must be nonzero excitations")
    w = default_window(rule, m1, m2) if window is None else window
    found: Dict[MobilityClass, List[Placement]] = {}
    vacuum: List[Placement] = []
    for a in range(-w, w + 1):
        for b in range(-w, w + 1):
            composite = add(m1, shift(m2, a, b))
            if not composite.support:
                vacuum.append((a, b))
                continue
            mobility, _ = classify(rule, composite)
            found.setdefault(mobility, []).append((a, b))
    channels = tuple(
        (mobility, tuple(found[mobility])) for mobility in sorted(found, key=MobilityClass.sort_key)
    )
    logger.debug("fused %s with %s over W=%d: %d channels", render(m1), render(m2), w, len(channels))
    return FusionChannelSet(
        channels=channels,
        includes_vacuum=bool(vacuum),
        vacuum_placements=tuple(vacuum),
        window=w,
    )


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _allowed(c1: MobilityClass, c2: MobilityClass, outcome: MobilityClass) -> bool:
    fully, lineon, fracton = MobilityKind.FULLY_MOBILE, MobilityKind.LINEON, MobilityKind.FRACTON
    if c1.kind is fully:
        return outcome == c2
    if c2.kind is fully:
        return outcome == c1
    if c1.kind is lineon and c2.kind is lineon:
        if c1.direction != c2.direction:
            return outcome.kind is fracton
        if outcome.kind is fully:
            return True
        return (
            outcome.kind is lineon
            and outcome.direction == c1.direction
            and _lcm(c1.period, c2.period) % outcome.period == 0
        )
    if fracton in (c1.kind, c2.kind) and lineon in (c1.kind, c2.kind):
        line = c1 if c1.kind is lineon else c2
        if outcome.kind is fracton:
            return True
        return outcome.kind is lineon and outcome.direction != line.direction
    # fracton x fracton
    return True


def allowed_channels(rule: HocaRule, c1: MobilityClass, c2: MobilityClass) -> Callable[[MobilityClass], bool]:
    """Membership test for the outcomes the fusion rules permit for c1 x c2.

    The predicate depends only on the two classes.
    """
    logger.debug("allowed channels for %s x %s under %s", c1, c2, render(rule.f))
    return lambda outcome: _allowed(c1, c2, outcome)


@dataclass(frozen=True)
class FusionReport:
    first: MobilityClass
    second: MobilityClass
    observed: FusionChannelSet
    violations: Tuple[MobilityClass, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self):
        data = {
            "m1": self.first.to_json(),
            "m2": self.second.to_json(),
            "verdict": "PASS" if self.passed else "FAIL",
            "violations": [v.to_json() for v in self.violations],
        }
        data.update(self.observed.to_json())
        return data


def check_fusion(rule: HocaRule, m1: LaurentPoly2, m2: LaurentPoly2, window: Optional[int] = None) -> FusionReport:
    c1, _ = classify(rule, m1)
    c2, _ = classify(rule, m2)
    observed = fuse(rule, m1, m2, window)
    allowed = allowed_channels(rule, c1, c2)
    violations = tuple(mobility for mobility in observed.classes() if not allowed(mobility))
    if violations:
        logger.warning("fusion %s x %s produced forbidden channels %s", c1, c2, [str(v) for v in violations])
    else:
        logger.info("fusion %s x %s: %d channels, all allowed", c1, c2, len(observed.channels))
    return FusionReport(first=c1, second=c2, observed=observed, violations=violations)
