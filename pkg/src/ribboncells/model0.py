r"""The genus-zero algebraic model: degree-1 rational maps separating
marked-point configurations.

For n distinct marked points on the projective line, the i-th map sends a
configuration to the value vector of the unique (up to scale) degree-1
rational function with a simple pole at the i-th point whose values at the
other points sum to zero.  The collection of all n maps is invariant under
fractional-linear changes of coordinate, so it descends to the moduli of
configurations; for n = 4 it separates exactly the cross-ratio classes.

All arithmetic happens in Q(i): complex numbers with exact rational parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class QQi:
    """Exact rational complex number."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "QQi":
        return QQi(Fraction(re), Fraction(im))

    def __add__(self, o):
        return QQi(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QQi(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return QQi(self.re * o, self.im * o)
        return QQi(self.re * o.re - self.im * o.im,
                   self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return QQi(self.re / o, self.im / o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return QQi((self.re * o.re + self.im * o.im) / d,
                   (self.im * o.re - self.re * o.im) / d)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


ZERO = QQi.of(0)
ONE = QQi.of(1)

#: marker for the point at infinity in a configuration
INFINITY = "inf"


@dataclass(frozen=True)
class PointConfig:
    """n >= 3 pairwise distinct marked points on the projective line; at
    most one may be the point at infinity."""

    points: tuple

    @staticmethod
    def create(points: Sequence) -> "PointConfig":
        pts = tuple(points)
        if len(pts) < 3:
            raise ValueError("need at least three marked points")
        inf_count = sum(1 for p in pts if p == INFINITY)
        if inf_count > 1:
            raise ValueError("at most one point at infinity")
        finite = [p for p in pts if p != INFINITY]
        for i, a in enumerate(finite):
            for b in finite[i + 1:]:
                if (a - b).is_zero():
                    raise ValueError("marked points must be pairwise distinct")
        return PointConfig(pts)

    @property
    def n(self) -> int:
        return len(self.points)

    def has_infinity(self) -> bool:
        return INFINITY in self.points


@dataclass(frozen=True)
class ProjectivePoint:
    """Nonzero coordinate vector up to complex scale; coordinates sum to
    zero exactly."""

    coords: tuple[QQi, ...]

    @staticmethod
    def create(coords: Sequence[QQi]) -> "ProjectivePoint":
        cs = tuple(coords)
        if all(c.is_zero() for c in cs):
            raise ValueError("projective point needs a nonzero coordinate")
        s = ZERO
        for c in cs:
            s = s + c
        if not s.is_zero():
            raise ValueError("coordinates must sum to zero")
        return ProjectivePoint(cs)

    def same_point(self, other: "ProjectivePoint") -> bool:
        if len(self.coords) != len(other.coords):
            return False
        for a, b in zip(self.coords, other.coords):
            if a.is_zero() != b.is_zero():
                return False
        ia = next(i for i, c in enumerate(self.coords) if not c.is_zero())
        a0, b0 = self.coords[ia], other.coords[ia]
        for a, b in zip(self.coords, other.coords):
            lhs = a * b0
            rhs = b * a0
            if not (lhs - rhs).is_zero():
                return False
        return True


def mobius_apply(coeffs: tuple[QQi, QQi, QQi, QQi], config: PointConfig) -> PointConfig:
    """Apply z -> (a z + b) / (c z + d) with ad - bc nonzero."""
    a, b, c, d = coeffs
    if (a * d - b * c).is_zero():
        raise ValueError("singular fractional-linear map")
    out = []
    for p in config.points:
        if p == INFINITY:
            out.append(INFINITY if c.is_zero() else a / c)
        else:
            denom = c * p + d
            out.append(INFINITY if denom.is_zero() else (a * p + b) / denom)
    return PointConfig.create(out)


def _normalize_finite(config: PointConfig) -> PointConfig:
    """A fractional-linear change of coordinate making every point finite
    (legal because the full map is invariant under such changes)."""
    if not config.has_infinity():
        return config
    finite = [p for p in config.points if p != INFINITY]
    k = 0
    while True:
        cand = QQi.of(k)
        if all(not (p - cand).is_zero() for p in finite):
            break
        k += 1
    # z -> 1/(z - cand) sends infinity to 0 and nothing to infinity
    return mobius_apply((ZERO, ONE, ONE, -cand), config)


def f_map(config: PointConfig, i: int) -> ProjectivePoint:
    """Values at the other marked points of the degree-1 function with a
    pole at point ``i`` (1-based) and zero value sum; the result is a
    projective point independent of coordinate choices."""
    n = config.n
    if not (1 <= i <= n):
        raise ValueError(f"index {i} out of range")
    cfg = _normalize_finite(config)
    xi = cfg.points[i - 1]
    others = [p for j, p in enumerate(cfg.points) if j != i - 1]
    inv = [ONE / (p - xi) for p in others]
    s = ZERO
    for v in inv:
        s = s + v
    b = -(s / (n - 1))
    return ProjectivePoint.create(tuple(v + b for v in inv))


def full_map(config: PointConfig) -> tuple[ProjectivePoint, ...]:
    """All n projective value vectors of the configuration."""
    return tuple(f_map(config, i) for i in range(1, config.n + 1))


def full_maps_agree(a: Sequence[ProjectivePoint], b: Sequence[ProjectivePoint]) -> bool:
    return len(a) == len(b) and all(x.same_point(y) for x, y in zip(a, b))
