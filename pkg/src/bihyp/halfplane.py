"""Upper half-plane model of the hyperbolic plane.

Points, boundary points, Moebius isometries, geodesic rays, and Busemann
functions for a single factor. All operations are pure and exact closed
forms; the two-factor product layer builds on these in product.py.
"""

import math

from .errors import DomainError

TRACE_TOL = 1e-9
IDENTITY_TOL = 1e-12

ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
HYPERBOLIC = "hyperbolic"
IDENTITY = "identity"


class HPoint:
    """Point of the upper half-plane; im must be strictly positive."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        re = float(re)
        im = float(im)
        if not im > 0.0 or not math.isfinite(im) or not math.isfinite(re):
            raise DomainError(f"HPoint needs finite re and finite im > 0, got ({re}, {im})")
        self.re = re
        self.im = im

    def as_complex(self):
        return complex(self.re, self.im)

    def __eq__(self, other):
        if not isinstance(other, HPoint):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"HPoint({self.re!r}, {self.im!r})"


class HBoundaryPoint:
    """Boundary point: a real number or the point at infinity.

    value is None exactly when the point is at infinity.
    """

    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = None if value is None else float(value)

    @property
    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, HBoundaryPoint):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return "Infinity" if self.value is None else f"Finite({self.value!r})"


def Finite(value):
    return HBoundaryPoint(value)


INFINITY = HBoundaryPoint()


class Moebius:
    """Orientation-preserving isometry as a 2x2 real matrix, det normalized to 1.

    (M, -M) act identically and are treated as equal; equality normalizes sign.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = float(a), float(b), float(c), float(d)
        det = a * d - b * c
        if not det > 0.0:
            raise DomainError(f"matrix must have positive determinant, got {det}")
        s = 1.0 / math.sqrt(det)
        self.a = a * s
        self.b = b * s
        self.c = c * s
        self.d = d * s

    @property
    def trace(self):
        return self.a + self.d

    def mul(self, other):
        return Moebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __matmul__ = mul

    def inv(self):
        return Moebius(self.d, -self.b, -self.c, self.a)

    def _signed(self):
        # canonical sign: first entry of (a, b, c, d) larger than tolerance is positive
        for v in (self.a, self.b, self.c, self.d):
            if abs(v) > IDENTITY_TOL:
                if v < 0.0:
                    return (-self.a, -self.b, -self.c, -self.d)
                break
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self._signed() == other._signed()

    def __hash__(self):
        return hash(self._signed())

    def __repr__(self):
        return f"Moebius({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


IDENTITY_MOEBIUS = Moebius(1.0, 0.0, 0.0, 1.0)


def apply(m, x):
    """Fractional-linear action of m on an interior point."""
    cr = m.c * x.re + m.d
    ci = m.c * x.im
    den = cr * cr + ci * ci
    if den == 0.0 or math.isinf(den):
        raise DomainError("isometry application lost precision (entries too large)")
    ar = m.a * x.re + m.b
    ai = m.a * x.im
    re = (ar * cr + ai * ci) / den
    im = (ai * cr - ar * ci) / den
    if not im > 0.0:
        raise DomainError("isometry application underflowed to the boundary")
    return HPoint(re, im)


def apply_boundary(m, xi):
    """Continuous extension of the action to the boundary circle."""
    if xi.is_infinity:
        if m.c == 0.0:
            return INFINITY
        return Finite(m.a / m.c)
    t = m.c * xi.value + m.d
    if t == 0.0:
        return INFINITY
    return Finite((m.a * xi.value + m.b) / t)


def _is_identity(m):
    a, b, c, d = m._signed()
    return (
        abs(a - 1.0) <= IDENTITY_TOL
        and abs(b) <= IDENTITY_TOL
        and abs(c) <= IDENTITY_TOL
        and abs(d - 1.0) <= IDENTITY_TOL
    )


def classify(m):
    """One of 'identity', 'parabolic', 'elliptic', 'hyperbolic' by |trace|."""
    if _is_identity(m):
        return IDENTITY
    t = abs(m.trace)
    if abs(t - 2.0) <= TRACE_TOL:
        return PARABOLIC
    return HYPERBOLIC if t > 2.0 else ELLIPTIC


def translation_length(m):
    if classify(m) != HYPERBOLIC:
        raise DomainError("translation_length requires a hyperbolic element")
    return 2.0 * math.acosh(abs(m.trace) / 2.0)


def fixed_points(m):
    """Boundary fixed points of a hyperbolic element, attractive first."""
    if classify(m) != HYPERBOLIC:
        raise DomainError("fixed_points requires a hyperbolic element")
    if m.c == 0.0:
        # fixed at infinity and at b/(d-a); infinity attracts iff |a| > |d|
        finite = Finite(m.b / (m.d - m.a))
        if abs(m.a) > abs(m.d):
            return INFINITY, finite
        return finite, INFINITY
    disc = math.sqrt(m.trace * m.trace - 4.0)
    p = (m.a - m.d + disc) / (2.0 * m.c)
    q = (m.a - m.d - disc) / (2.0 * m.c)
    # derivative 1/(c x + d)^2 is contracting at the attractive point
    if abs(m.c * p + m.d) > 1.0:
        return Finite(p), Finite(q)
    return Finite(q), Finite(p)


def h_distance(x, z):
    """Hyperbolic distance, numerically stable for close and distant pairs."""
    dre = x.re - z.re
    dim = x.im - z.im
    chord = math.hypot(dre, dim)
    # split square roots: the product of two tiny heights can underflow to 0
    return 2.0 * math.asinh(0.5 * chord / (math.sqrt(x.im) * math.sqrt(z.im)))


def busemann(xi, x, y):
    """Busemann function B_xi(x, y) = lim_s d(x, sigma(s)) - d(y, sigma(s)).

    Closed form; the ray-marching evaluation busemann_ray_limit is the
    independent oracle that pins the sign convention.
    """
    if xi.is_infinity:
        return math.log(y.im / x.im)
    v = xi.value
    dx = (x.re - v) ** 2 + x.im * x.im
    dy = (y.re - v) ** 2 + y.im * y.im
    return math.log((dx / x.im) / (dy / y.im))


def ray_point(x, xi, t):
    """Unit-speed geodesic ray from x toward boundary point xi, at time t >= 0."""
    if t < 0.0:
        raise DomainError("ray parameter must be nonnegative")
    if xi.is_infinity:
        # guard exp overflow; heights above e^709 are not representable
        if t + math.log(x.im) > 709.0:
            raise DomainError("ray parameter out of floating-point range toward Infinity")
        return HPoint(x.re, x.im * math.exp(t))
    v = xi.value
    # conjugate by S(z) = -1/(z - v), which sends v to infinity
    w0 = -1.0 / (x.as_complex() - v)
    r0, h0 = w0.real, w0.imag
    # undo the conjugation at height h0*e^t without forming e^t, which
    # overflows for t beyond ~709; scale by the larger component first
    m = max(abs(r0), h0)
    rs, hs = r0 / m, h0 / m
    u = math.exp(-t)
    den = (rs * u) * (rs * u) + hs * hs
    return HPoint(v - (rs * u) * u / (den * m), hs * u / (den * m))


def busemann_ray_limit(xi, x, y, s_max):
    """Definition of the Busemann function truncated at parameter s_max.

    Converges to busemann(xi, x, y) exponentially fast in s_max.
    """
    if s_max < 1.0:
        raise DomainError("s_max must be at least 1")
    sigma = ray_point(x, xi, s_max)
    return s_max - h_distance(y, sigma)


def ray_endpoint(x, z):
    """Boundary endpoint of the ray from x through z; requires z != x."""
    if x.re == z.re and x.im == z.im:
        raise DomainError("ray_endpoint needs two distinct points")
    if abs(x.re - z.re) <= 1e-12:
        # vertical geodesic
        return INFINITY if z.im > x.im else Finite(x.re)
    nx = x.re * x.re + x.im * x.im
    nz = z.re * z.re + z.im * z.im
    center = (nx - nz) / (2.0 * (x.re - z.re))
    radius = math.hypot(x.re - center, x.im)
    return Finite(center + radius if z.re > x.re else center - radius)


def dist_to_ray(z, x, xi):
    """Distance from z to the ray from x toward xi (ray, not the full geodesic)."""
    if z.re == x.re and z.im == x.im:
        return 0.0
    if xi.is_infinity:
        w = z.as_complex()
        r0, h0 = x.re, x.im
    else:
        v = xi.value
        w = -1.0 / (z.as_complex() - v)
        x1 = -1.0 / (x.as_complex() - v)
        r0, h0 = x1.real, x1.imag
    # after conjugation the ray ascends vertically from height h0 over r0;
    # the foot of the perpendicular to the full line sits at Euclidean
    # height |w - r0|, and lies on the ray iff that height clears h0
    foot = math.hypot(w.real - r0, w.imag)
    if foot >= h0:
        return math.asinh(abs(w.real - r0) / w.imag)
    return h_distance(HPoint(w.real, w.imag), HPoint(r0, h0))
