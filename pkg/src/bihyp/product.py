"""Geometry of the product of two hyperbolic planes.

Distance vectors, slopes, directional distance, product and weighted
Busemann cocycles, Weyl chambers and the distance to a chamber.
"""

import math
from dataclasses import dataclass

from . import halfplane as hp
from .errors import DomainError

HALF_PI = math.pi / 2.0

REGULAR = "regular"
SING1 = "sing1"
SING2 = "sing2"


class PPoint:
    """Point of the product space: one point per factor."""

    __slots__ = ("p1", "p2")

    def __init__(self, p1, p2):
        self.p1 = p1
        self.p2 = p2

    def __eq__(self, other):
        if not isinstance(other, PPoint):
            return NotImplemented
        return self.p1 == other.p1 and self.p2 == other.p2

    def __hash__(self):
        return hash((self.p1, self.p2))

    def __repr__(self):
        return f"PPoint({self.p1!r}, {self.p2!r})"


class PIsometry:
    """Pair of Moebius matrices acting factorwise."""

    __slots__ = ("m1", "m2")

    def __init__(self, m1, m2):
        self.m1 = m1
        self.m2 = m2

    def apply(self, x):
        return PPoint(hp.apply(self.m1, x.p1), hp.apply(self.m2, x.p2))

    def apply_boundary(self, xi):
        if xi.kind == REGULAR:
            return PBoundaryPoint.regular(
                hp.apply_boundary(self.m1, xi.xi1),
                hp.apply_boundary(self.m2, xi.xi2),
                xi.theta,
            )
        if xi.kind == SING1:
            return PBoundaryPoint.sing1(hp.apply_boundary(self.m1, xi.xi1))
        return PBoundaryPoint.sing2(hp.apply_boundary(self.m2, xi.xi2))

    def mul(self, other):
        return PIsometry(self.m1.mul(other.m1), self.m2.mul(other.m2))

    def inv(self):
        return PIsometry(self.m1.inv(), self.m2.inv())

    def __repr__(self):
        return f"PIsometry({self.m1!r}, {self.m2!r})"


@dataclass(frozen=True)
class DistanceVector:
    """Pair of factor distances; its Euclidean norm is the product distance."""

    h1: float
    h2: float

    def __post_init__(self):
        if self.h1 < 0.0 or self.h2 < 0.0:
            raise DomainError("distance vector components must be nonnegative")

    def norm(self):
        return math.hypot(self.h1, self.h2)


@dataclass(frozen=True)
class Slope:
    """Direction angle in [0, pi/2]: arctan of factor-2 speed over factor-1 speed."""

    theta: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= HALF_PI:
            raise DomainError(f"slope must lie in [0, pi/2], got {self.theta}")

    @property
    def is_interior(self):
        return 0.0 < self.theta < HALF_PI


@dataclass(frozen=True)
class BVector:
    """Weight vector for the weighted Busemann cocycle; signs unconstrained."""

    b1: float
    b2: float


class PBoundaryPoint:
    """Boundary point of the product: a regular triple or a singular factor point.

    Regular points carry one boundary point per factor plus an interior
    slope; singular points keep only the factor-1 (slope 0) or factor-2
    (slope pi/2) coordinate.
    """

    __slots__ = ("kind", "xi1", "xi2", "theta")

    def __init__(self, kind, xi1, xi2, theta):
        self.kind = kind
        self.xi1 = xi1
        self.xi2 = xi2
        self.theta = theta

    @classmethod
    def regular(cls, xi1, xi2, theta):
        if not isinstance(theta, Slope):
            theta = Slope(float(theta))
        if not theta.is_interior:
            raise DomainError("regular boundary points need a slope strictly inside (0, pi/2)")
        return cls(REGULAR, xi1, xi2, theta)

    @classmethod
    def sing1(cls, xi1):
        return cls(SING1, xi1, None, Slope(0.0))

    @classmethod
    def sing2(cls, xi2):
        return cls(SING2, None, xi2, Slope(HALF_PI))

    @property
    def slope(self):
        return self.theta

    def __eq__(self, other):
        if not isinstance(other, PBoundaryPoint):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.xi1 == other.xi1
            and self.xi2 == other.xi2
            and self.theta == other.theta
        )

    def __hash__(self):
        return hash((self.kind, self.xi1, self.xi2, self.theta))

    def __repr__(self):
        if self.kind == REGULAR:
            return f"Regular({self.xi1!r}, {self.xi2!r}, {self.theta.theta!r})"
        if self.kind == SING1:
            return f"Sing1({self.xi1!r})"
        return f"Sing2({self.xi2!r})"


Regular = PBoundaryPoint.regular
Sing1 = PBoundaryPoint.sing1
Sing2 = PBoundaryPoint.sing2


def distance_vector(x, z):
    return DistanceVector(hp.h_distance(x.p1, z.p1), hp.h_distance(x.p2, z.p2))


def p_distance(x, z):
    return distance_vector(x, z).norm()


def slope_of(x, z):
    """Direction of z seen from x; equal points get slope 0 by convention."""
    h = distance_vector(x, z)
    return Slope(math.atan2(h.h2, h.h1))


def directional_distance(theta, x, y):
    """Inner product of the direction vector of theta with the distance vector.

    A genuine metric on the product for interior slopes; collapses to the
    factor distances at the endpoint slopes.
    """
    if not isinstance(theta, Slope):
        theta = Slope(float(theta))
    h = distance_vector(x, y)
    return math.cos(theta.theta) * h.h1 + math.sin(theta.theta) * h.h2


def product_busemann(xi, x, y):
    """Busemann function of the product, split by boundary stratum."""
    if xi.kind == REGULAR:
        t = xi.theta.theta
        return math.cos(t) * hp.busemann(xi.xi1, x.p1, y.p1) + math.sin(t) * hp.busemann(
            xi.xi2, x.p2, y.p2
        )
    if xi.kind == SING1:
        return hp.busemann(xi.xi1, x.p1, y.p1)
    return hp.busemann(xi.xi2, x.p2, y.p2)


def b_busemann(b, xi, x, y):
    """Weighted Busemann cocycle: b1*B1 + b2*B2, single term on singular strata."""
    if xi.kind == REGULAR:
        return b.b1 * hp.busemann(xi.xi1, x.p1, y.p1) + b.b2 * hp.busemann(xi.xi2, x.p2, y.p2)
    if xi.kind == SING1:
        return b.b1 * hp.busemann(xi.xi1, x.p1, y.p1)
    return b.b2 * hp.busemann(xi.xi2, x.p2, y.p2)


def chamber_point(x, xi, t1, t2):
    """Point of the Weyl chamber with apex x: factor rays at parameters (t1, t2).

    For singular strata the free coordinate stays at the apex; t2 (resp. t1)
    is ignored there.
    """
    if xi.kind == REGULAR:
        return PPoint(hp.ray_point(x.p1, xi.xi1, t1), hp.ray_point(x.p2, xi.xi2, t2))
    if xi.kind == SING1:
        return PPoint(hp.ray_point(x.p1, xi.xi1, t1), x.p2)
    return PPoint(x.p1, hp.ray_point(x.p2, xi.xi2, t2))


def p_ray_point(x, xi, t):
    """Geodesic ray of slope theta toward a boundary point, at time t >= 0.

    Regular rays advance t*cos(theta) in factor 1 and t*sin(theta) in
    factor 2; singular rays move in their single factor at unit speed.
    """
    if xi.kind == REGULAR:
        th = xi.theta.theta
        return chamber_point(x, xi, t * math.cos(th), t * math.sin(th))
    if xi.kind == SING1:
        return chamber_point(x, xi, t, 0.0)
    return chamber_point(x, xi, 0.0, t)


def dist_to_chamber(y, apex, xi):
    """Distance from y to the Weyl chamber with the given apex and direction.

    The chamber splits coordinatewise, so the squared distance is the sum
    of squared factor distances to the factor rays; singular strata
    constrain a single factor.
    """
    if xi.kind == REGULAR:
        d1 = hp.dist_to_ray(y.p1, apex.p1, xi.xi1)
        d2 = hp.dist_to_ray(y.p2, apex.p2, xi.xi2)
        return math.hypot(d1, d2)
    if xi.kind == SING1:
        return hp.dist_to_ray(y.p1, apex.p1, xi.xi1)
    return hp.dist_to_ray(y.p2, apex.p2, xi.xi2)


def in_chamber(x, xi, y, tol=1e-9):
    """Whether y lies within tol of the Weyl chamber with apex x toward xi."""
    return dist_to_chamber(y, x, xi) <= tol
