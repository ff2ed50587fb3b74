"""Randomized property suites shared by the unit tests and the acceptance run.

Each suite draws its own seeded generator, checks n cases, and returns the
number of failures, so callers assert the count is zero. Keeping them here
lets the acceptance criteria re-run the exact same checks.
"""

import math

import numpy as np

from bihyp.halfplane import (
    INFINITY,
    Finite,
    HPoint,
    Moebius,
    apply,
    apply_boundary,
    busemann,
    busemann_ray_limit,
    dist_to_ray,
    h_distance,
    ray_endpoint,
    ray_point,
)
from bihyp.product import (
    PIsometry,
    PPoint,
    Regular,
    Sing1,
    Sing2,
    chamber_point,
    directional_distance,
    dist_to_chamber,
    distance_vector,
    p_ray_point,
    product_busemann,
    b_busemann,
    slope_of,
)

SUITE_SEED = 20260822

HALF_PI = 0.5 * math.pi


def rand_hpoint(rng, re_lo=-5.0, re_hi=5.0):
    im = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
    return HPoint(rng.uniform(re_lo, re_hi), im)


def rand_boundary(rng, p_inf=0.125, lo=-10.0, hi=10.0):
    if rng.random() < p_inf:
        return INFINITY
    return Finite(rng.uniform(lo, hi))


def rand_moebius(rng, lo=-5.0, hi=5.0):
    # rejection keeps the determinant away from 0 so normalization is stable
    while True:
        a, b, c, d = rng.uniform(lo, hi, size=4)
        if a * d - b * c > 0.05:
            return Moebius(a, b, c, d)


def rand_ppoint(rng):
    return PPoint(rand_hpoint(rng), rand_hpoint(rng))


def rand_pisometry(rng):
    return PIsometry(rand_moebius(rng), rand_moebius(rng))


def hpoint_at_distance(rng, y, rho):
    """Uniform-angle point at exact hyperbolic distance rho from y."""
    if rho == 0.0:
        return y
    phi = rng.uniform(0.0, 2.0 * math.pi)
    ce = y.im * math.cosh(rho)
    ra = y.im * math.sinh(rho)
    return HPoint(y.re + ra * math.cos(phi), ce + ra * math.sin(phi))


def rand_regular_boundary(rng, theta=None):
    th = rng.uniform(0.05, HALF_PI - 0.05) if theta is None else theta
    return Regular(rand_boundary(rng), rand_boundary(rng), th)


def rand_pboundary(rng):
    kind = rng.random()
    if kind < 0.7:
        return rand_regular_boundary(rng)
    if kind < 0.85:
        return Sing1(rand_boundary(rng))
    return Sing2(rand_boundary(rng))


def p_busemann_ray_limit(xi, x, y, s_max):
    """Product Busemann by marching the chamber ray in the directional premetric.

    Independent of product_busemann: only factor rays and directional_distance
    enter. Converges exponentially in s_max for interior slopes.
    """
    sigma = p_ray_point(x, xi, s_max)
    return s_max - directional_distance(xi.slope, y, sigma)


# ---------------------------------------------------------------- halfplane

def metric_axiom_failures(n=10_000, seed=SUITE_SEED):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, y, z = rand_hpoint(rng), rand_hpoint(rng), rand_hpoint(rng)
        dxy = h_distance(x, y)
        if dxy != h_distance(y, x):
            bad += 1
        if dxy + h_distance(y, z) < h_distance(x, z) - 1e-12:
            bad += 1
        if h_distance(x, x) != 0.0:
            bad += 1
        if (x.re, x.im) != (y.re, y.im) and not dxy > 0.0:
            bad += 1
    return bad


def isometry_invariance_failures(n=10_000, seed=SUITE_SEED + 1):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, z = rand_hpoint(rng), rand_hpoint(rng)
        m = rand_moebius(rng)
        if abs(h_distance(apply(m, x), apply(m, z)) - h_distance(x, z)) > 1e-10:
            bad += 1
    return bad


def busemann_property_failures(n=10_000, seed=SUITE_SEED + 2):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        xi = rand_boundary(rng)
        x, y, z = rand_hpoint(rng), rand_hpoint(rng), rand_hpoint(rng)
        m = rand_moebius(rng)
        bxy = busemann(xi, x, y)
        if abs(bxy + busemann(xi, y, x)) > 1e-10:
            bad += 1
        if abs(bxy + busemann(xi, y, z) - busemann(xi, x, z)) > 1e-10:
            bad += 1
        if abs(bxy) > h_distance(x, y) + 1e-10:
            bad += 1
        gxy = busemann(apply_boundary(m, xi), apply(m, x), apply(m, y))
        if abs(gxy - bxy) > 1e-10:
            bad += 1
    return bad


def busemann_oracle_failures(n=10_000, seed=SUITE_SEED + 3, s_max=30.0, tol=1e-6):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        xi = rand_boundary(rng)
        x, y = rand_hpoint(rng), rand_hpoint(rng)
        if abs(busemann(xi, x, y) - busemann_ray_limit(xi, x, y, s_max)) > tol:
            bad += 1
    return bad


def lemma_ray_interval_failures(n=10_000, seed=SUITE_SEED + 4):
    # 0 <= d(x,z) - B_xi(x,z) < 2c whenever z lies within c of the ray from x
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x = rand_hpoint(rng)
        xi = rand_boundary(rng)
        c = rng.uniform(0.2, 2.0)
        t = rng.uniform(0.0, 6.0)
        rho = rng.uniform(1e-3, c * 0.999)
        z = hpoint_at_distance(rng, ray_point(x, xi, t), rho)
        gap = h_distance(x, z) - busemann(xi, x, z)
        if not (0.0 <= gap < 2.0 * c):
            bad += 1
    return bad


def on_ray_characterization_failures(n=10_000, seed=SUITE_SEED + 5):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x = rand_hpoint(rng)
        xi = rand_boundary(rng)
        z = ray_point(x, xi, rng.uniform(0.1, 8.0))
        if abs(busemann(xi, x, z) - h_distance(x, z)) > 1e-10:
            bad += 1
        w = rand_hpoint(rng)
        if dist_to_ray(w, x, xi) > 0.05:
            if not h_distance(x, w) - busemann(xi, x, w) > 1e-10:
                bad += 1
    return bad


# ------------------------------------------------------------------ product

def product_invariance_failures(n=10_000, seed=SUITE_SEED + 6):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, z = rand_ppoint(rng), rand_ppoint(rng)
        g = rand_pisometry(rng)
        h0 = distance_vector(x, z)
        h1 = distance_vector(g.apply(x), g.apply(z))
        if abs(h0.h1 - h1.h1) > 1e-10 or abs(h0.h2 - h1.h2) > 1e-10:
            bad += 1
        if abs(slope_of(x, z).theta - slope_of(g.apply(x), g.apply(z)).theta) > 1e-10:
            bad += 1
    return bad


def directional_metric_failures(n=10_000, seed=SUITE_SEED + 7,
                                slopes=(0.1, math.pi / 6, math.pi / 4,
                                        math.pi / 3, HALF_PI - 0.1)):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, y, z = rand_ppoint(rng), rand_ppoint(rng), rand_ppoint(rng)
        for th in slopes:
            dxy = directional_distance(th, x, y)
            if dxy != directional_distance(th, y, x):
                bad += 1
            if dxy + directional_distance(th, y, z) < directional_distance(th, x, z) - 1e-12:
                bad += 1
            if directional_distance(th, x, x) != 0.0:
                bad += 1
            if x != y and not dxy > 0.0:
                bad += 1
    return bad


def chamber_characterization_failures(n=10_000, seed=SUITE_SEED + 8):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x = rand_ppoint(rng)
        xi = rand_pboundary(rng)
        th = xi.slope
        t1 = rng.uniform(0.1, 5.0)
        t2 = rng.uniform(0.1, 5.0)
        y = chamber_point(x, xi, t1, t2)
        if abs(directional_distance(th, x, y) - product_busemann(xi, x, y)) > 1e-9:
            bad += 1
        w = rand_ppoint(rng)
        if dist_to_chamber(w, x, xi) > 1e-3:
            if not product_busemann(xi, x, w) < directional_distance(th, x, w):
                bad += 1
    return bad


def slope_limit_failures(n=1_000, seed=SUITE_SEED + 9):
    # slope measured from the apex converges to the declared slope; t = 1e3
    # where float64 can represent the point, else the deepest representable t
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x = rand_ppoint(rng)
        th = rng.uniform(0.05, HALF_PI - 0.05)
        xi = rand_regular_boundary(rng, theta=th)
        t = min(1e3, 690.0 / max(math.cos(th), math.sin(th)))
        sigma = p_ray_point(x, xi, t)
        if abs(slope_of(x, sigma).theta - th) > 1e-6:
            bad += 1
    return bad


def max_characterization_failures(n=200, m=1_000, seed=SUITE_SEED + 10):
    # sup over boundary points of slope theta of B_xi(x,y) equals B_theta(x,y)
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, y = rand_ppoint(rng), rand_ppoint(rng)
        th = rng.uniform(0.05, HALF_PI - 0.05)
        dd = directional_distance(th, x, y)
        for _ in range(m):
            xi = Regular(rand_boundary(rng, lo=-30.0, hi=30.0),
                         rand_boundary(rng, lo=-30.0, hi=30.0), th)
            if product_busemann(xi, x, y) > dd + 1e-9:
                bad += 1
        if x.p1 != y.p1 and x.p2 != y.p2:
            xistar = Regular(ray_endpoint(x.p1, y.p1), ray_endpoint(x.p2, y.p2), th)
            if abs(product_busemann(xistar, x, y) - dd) > 1e-9:
                bad += 1
    return bad


def product_busemann_identity_failures(n=10_000, seed=SUITE_SEED + 11):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, y = rand_ppoint(rng), rand_ppoint(rng)
        xi = rand_regular_boundary(rng)
        want = (math.cos(xi.theta.theta) * busemann(xi.xi1, x.p1, y.p1)
                + math.sin(xi.theta.theta) * busemann(xi.xi2, x.p2, y.p2))
        if abs(product_busemann(xi, x, y) - want) > 1e-12:
            bad += 1
    return bad


def product_busemann_oracle_failures(n=2_000, seed=SUITE_SEED + 12,
                                     s_max=30.0, tol=1e-5):
    # exponential convergence needs both ray components deep, so slopes stay
    # in a band where min(cos, sin)*s_max is large enough
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, y = rand_ppoint(rng), rand_ppoint(rng)
        th = rng.uniform(0.46, HALF_PI - 0.46)
        xi = rand_regular_boundary(rng, theta=th)
        if abs(product_busemann(xi, x, y) - p_busemann_ray_limit(xi, x, y, s_max)) > tol:
            bad += 1
        sing = Sing1(rand_boundary(rng)) if rng.random() < 0.5 else Sing2(rand_boundary(rng))
        if abs(product_busemann(sing, x, y) - p_busemann_ray_limit(sing, x, y, s_max)) > tol:
            bad += 1
    return bad


def b_busemann_specialization_failures(n=10_000, seed=SUITE_SEED + 13):
    from bihyp.product import BVector
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(n):
        x, y = rand_ppoint(rng), rand_ppoint(rng)
        xi = rand_regular_boundary(rng)
        delta = rng.uniform(0.1, 2.0)
        b = BVector(delta * math.cos(xi.theta.theta), delta * math.sin(xi.theta.theta))
        if abs(b_busemann(b, xi, x, y) - delta * product_busemann(xi, x, y)) > 1e-12:
            bad += 1
    return bad
