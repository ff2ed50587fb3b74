"""Schottky groups on the half-plane and orbit-ball enumeration for products.

A factor group is given by paired boundary disks and hyperbolic generators
mapping the exterior of one disk of each pair into the other. certify()
checks the ping-pong configuration numerically; factor_ball/orbit_ball
enumerate orbit points by pruned depth-first search over reduced words.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import halfplane as hp
from .errors import (
    AtomBudgetExceeded,
    DomainError,
    IntegrityError,
    OrbitParseError,
    ValidationError,
)
from .halfplane import HYPERBOLIC, IDENTITY_MOEBIUS, INFINITY, HPoint, Moebius
from .product import DistanceVector, PPoint, PIsometry, Slope

FULL_PRODUCT = "full_product"
DIAGONAL = "diagonal"

DEFAULT_MAX_ATOMS = 5_000_000

# completeness guards for the depth-first enumeration
SCAN_DEPTH = 6
GAIN_RELAX = 0.8
PRUNE_SLACK = 2.0

PING_PONG_SAMPLES = 720
# paired-circle generators carry boundary onto boundary, so the sampled
# margin is legitimately zero up to rounding; disjointness of the closed
# disks supplies the actual separation
PING_PONG_TOL = 1e-9
ATOM_TOL = 1e-9

CSV_HEADER = ("word1,word2,dist,h1,h2,theta,bnd1_kind,bnd1_val,bnd2_kind,"
              "bnd2_val,p1_re,p1_im,p2_re,p2_im")


class Disk:
    """Closed half-disk over a boundary interval, or the complement of one.

    With around_infinity the disk is {v: |v - center| >= radius} plus the
    point at infinity; otherwise it is |v - center| <= radius.
    """

    __slots__ = ("center", "radius", "around_infinity")

    def __init__(self, center, radius, around_infinity=False):
        center = float(center)
        radius = float(radius)
        if not (math.isfinite(center) and math.isfinite(radius) and radius > 0.0):
            raise DomainError(f"Disk needs finite center and radius > 0, got ({center}, {radius})")
        self.center = center
        self.radius = radius
        self.around_infinity = bool(around_infinity)

    def margin(self, z):
        """Signed containment margin of a point of the closed half-plane.

        Positive strictly inside, zero on the boundary circle. z is complex
        with nonnegative imaginary part, or None for the point at infinity.
        """
        if z is None:
            return math.inf if self.around_infinity else -math.inf
        d = abs(z - self.center)
        return d - self.radius if self.around_infinity else self.radius - d

    def contains_boundary(self, xi):
        if xi.is_infinity:
            return self.around_infinity
        return self.margin(complex(xi.value, 0.0)) >= 0.0

    def boundary_samples(self, n):
        """n points on the semicircular arc bounding the disk."""
        out = []
        for j in range(n):
            a = math.pi * (j + 0.5) / n
            out.append(complex(self.center + self.radius * math.cos(a),
                               self.radius * math.sin(a)))
        return out

    def disjoint_from(self, other):
        if self.around_infinity and other.around_infinity:
            return False
        if not self.around_infinity and not other.around_infinity:
            return abs(self.center - other.center) > self.radius + other.radius
        fin, inf_ = (self, other) if other.around_infinity else (other, self)
        return abs(fin.center - inf_.center) + fin.radius < inf_.radius

    def __repr__(self):
        tag = ", around_infinity=True" if self.around_infinity else ""
        return f"Disk({self.center!r}, {self.radius!r}{tag})"


def paired_generator(c_minus, r_minus, c_plus, r_plus):
    """Hyperbolic generator mapping the exterior of the minus disk onto the
    interior of the plus disk: z -> c_plus - r_minus*r_plus/(z - c_minus).

    Returns (matrix, minus_disk, plus_disk).
    """
    minus = Disk(c_minus, r_minus)
    plus = Disk(c_plus, r_plus)
    m = Moebius(c_plus, -(c_plus * c_minus + r_minus * r_plus), 1.0, -c_minus)
    return m, minus, plus


class SchottkyFactor:
    """Generators with their pairing disks; k = 0 is the trivial factor."""

    def __init__(self, generators, pairing_disks):
        generators = list(generators)
        pairing_disks = [tuple(p) for p in pairing_disks]
        if len(generators) != len(pairing_disks):
            raise ValidationError(
                ["pairing_disks: need one (minus, plus) pair per generator, "
                 f"got {len(pairing_disks)} for {len(generators)} generators"])
        for p in pairing_disks:
            if len(p) != 2:
                raise ValidationError(["pairing_disks: each entry must be a (minus, plus) pair"])
        self.generators = generators
        self.pairing_disks = pairing_disks
        self._mats = {}
        for i, g in enumerate(generators, start=1):
            self._mats[i] = g
            self._mats[-i] = g.inv()
        self._scan_cache = {}

    @property
    def k(self):
        return len(self.generators)

    def letter_matrix(self, letter):
        return self._mats[letter]

    def letters(self):
        out = []
        for i in range(1, self.k + 1):
            out.append(i)
            out.append(-i)
        return out


def schottky_factor_from_intervals(specs):
    """Factor from (c_minus, r_minus, c_plus, r_plus) rows."""
    gens, disks = [], []
    for cm, rm, cp, rp in specs:
        m, dm, dp = paired_generator(cm, rm, cp, rp)
        gens.append(m)
        disks.append((dm, dp))
    return SchottkyFactor(gens, disks)


DEFAULT_FACTOR_SPECS = (
    (-5.0, 0.95, -3.0, 0.82),
    (-1.0, 0.90, 1.0, 0.93),
    (3.0, 0.84, 5.0, 0.90),
)


class ProductGroup:
    """Product of two Schottky factors, either the full product or the
    diagonal graph coupling pairing the i-th generators."""

    def __init__(self, factor1, factor2, coupling=FULL_PRODUCT):
        problems = []
        if coupling not in (FULL_PRODUCT, DIAGONAL):
            problems.append(f"coupling: unknown value {coupling!r}")
        if coupling == DIAGONAL and factor1.k != factor2.k:
            problems.append(
                f"coupling: diagonal pairing needs equal generator counts, got {factor1.k} and {factor2.k}")
        if problems:
            raise ValidationError(problems)
        self.factor1 = factor1
        self.factor2 = factor2
        self.coupling = coupling
        self._scan_cache = {}


def default_product_group():
    """The repo's frozen test group: identical 3-generator factors."""
    return ProductGroup(schottky_factor_from_intervals(DEFAULT_FACTOR_SPECS),
                        schottky_factor_from_intervals(DEFAULT_FACTOR_SPECS),
                        FULL_PRODUCT)


def calibration_group():
    """Cyclic z -> 4z in factor 1, trivial factor 2. Degenerate (k < 2, not
    certifiable); used for calibration of counting code paths only."""
    g = Moebius(2.0, 0.0, 0.0, 0.5)
    factor1 = SchottkyFactor([g], [(Disk(0.0, 0.5), Disk(0.0, 2.0, around_infinity=True))])
    factor2 = SchottkyFactor([], [])
    return ProductGroup(factor1, factor2, FULL_PRODUCT)


# -------------------------------------------------------------------- words

@dataclass(frozen=True)
class Word:
    """Reduced word in signed generator indices (1-based)."""

    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(l) for l in self.letters))
        prev = 0
        for l in self.letters:
            if l == 0:
                raise ValidationError(["letters: 0 is not a generator index"])
            if l == -prev:
                raise ValidationError([f"letters: not reduced at {prev},{l}"])
            prev = l

    def __len__(self):
        return len(self.letters)

    def encode(self):
        if not self.letters:
            return "e"
        return ".".join(str(l) for l in self.letters)

    @classmethod
    def decode(cls, text):
        if text == "e":
            return cls(())
        try:
            letters = tuple(int(p) for p in text.split("."))
        except ValueError:
            raise ValidationError([f"word: cannot parse {text!r}"]) from None
        return cls(letters)


EMPTY_WORD = Word(())


def _word_sort_key(letters):
    return tuple((abs(l), 0 if l > 0 else 1) for l in letters)


def matrix_of_word(factor, word):
    m = IDENTITY_MOEBIUS
    for l in word.letters:
        m = m.mul(factor.letter_matrix(l))
    return m


def group_isometry(group, word1, word2):
    return PIsometry(matrix_of_word(group.factor1, word1),
                     matrix_of_word(group.factor2, word2))


# -------------------------------------------------------------------- atoms

@dataclass(frozen=True)
class FactorAtom:
    word: Word
    matrix: Moebius
    point: HPoint
    dist: float


@dataclass(frozen=True)
class OrbitAtom:
    """One orbit point gamma*o with its derived coordinates.

    bnd1/bnd2 are the endpoints of the factor rays from o_i through the
    factor coordinates of the point; a factor fixed by gamma (identity
    factor word) gets Infinity as its conventional endpoint.
    """

    word1: Word
    word2: Word
    point: PPoint
    hvec: DistanceVector
    slope: Slope
    dist: float
    bnd1: hp.HBoundaryPoint
    bnd2: hp.HBoundaryPoint

    def __post_init__(self):
        if abs(self.dist - self.hvec.norm()) > ATOM_TOL:
            raise IntegrityError(
                f"atom dist {self.dist!r} disagrees with |hvec| {self.hvec.norm()!r}")
        want = math.atan2(self.hvec.h2, self.hvec.h1)
        if abs(self.slope.theta - want) > ATOM_TOL:
            raise IntegrityError(
                f"atom slope {self.slope.theta!r} disagrees with hvec slope {want!r}")

    @property
    def is_identity(self):
        return not self.word1.letters and not self.word2.letters


def _atom_sort_key(atom):
    return (atom.dist, _word_sort_key(atom.word1.letters), _word_sort_key(atom.word2.letters))


# ------------------------------------------------------------- enumeration

def _scan_displacements(letters, mat_of, dist_of, depth):
    """Exhaustive reduced-word scan: yields (depth, dist, parent_dist)."""
    out = []
    stack = [((l,), mat_of(l), 0.0) for l in letters]
    while stack:
        word, m, parent_dist = stack.pop()
        d = dist_of(m)
        out.append((len(word), d, parent_dist))
        if len(word) < depth:
            last = word[-1]
            for l in letters:
                if l != -last:
                    stack.append((word + (l,), m.mul(mat_of(l)), d))
    return out


def _pruning_constants(letters, mat_of, dist_of):
    """(min_gain, lambda_min, shift) from the depth-limited exhaustive scan.

    d(o, w*o) >= lambda_min*|w| - shift is the completeness model backing
    the length cutoff; min_gain must be positive for safe enumeration.
    """
    rows = _scan_displacements(letters, mat_of, dist_of, SCAN_DEPTH)
    min_gain = min(d - pd for _, d, pd in rows)
    if min_gain <= 0.0:
        raise IntegrityError(
            f"per-letter displacement gain {min_gain!r} is not positive; "
            "pruned enumeration would be unsound for this group")
    lam = GAIN_RELAX * min_gain
    shift = max(0.0, max(lam * depth - d for depth, d, _ in rows))
    return min_gain, lam, shift


def _factor_constants(factor, o1):
    key = (o1.re, o1.im)
    if key not in factor._scan_cache:
        def dist_of(m):
            return hp.h_distance(o1, hp.apply(m, o1))
        factor._scan_cache[key] = _pruning_constants(factor.letters(), factor.letter_matrix, dist_of)
    return factor._scan_cache[key]


def _enumerate_words(letters, mat_of, dist_of, R, lam, shift, budget, emit,
                     start_count=0):
    """Depth-first reduced-word enumeration with distance pruning.

    Branches are cut once the displacement exceeds R + PRUNE_SLACK, or once
    the word length guarantees (under the scan model) that no extension can
    re-enter the ball.  An atom emitted beyond the model's length bound
    (R + shift)/lambda_min raises IntegrityError: the scan lied.
    """
    atom_cut = math.ceil((R + shift) / lam)
    explore_cut = math.ceil((R + PRUNE_SLACK + shift) / lam)
    emitted = start_count
    stack = [((l,), mat_of(l)) for l in reversed(letters)]
    while stack:
        word, m = stack.pop()
        d = dist_of(m)
        if d <= R:
            if len(word) > atom_cut:
                raise IntegrityError(
                    f"atom at word length {len(word)} beyond the pruning bound {atom_cut}; "
                    "scan model violated, enumeration aborted")
            emitted += 1
            if emitted > budget:
                raise AtomBudgetExceeded(emitted, budget)
            emit(word, m, d)
        if d > R + PRUNE_SLACK:
            continue
        if len(word) >= explore_cut:
            # extensions are provably outside the ball under the scan model
            continue
        last = word[-1]
        for l in reversed(letters):
            if l != -last:
                stack.append((word + (l,), m.mul(mat_of(l))))
    return emitted


def factor_ball(factor, o1, R, max_atoms=DEFAULT_MAX_ATOMS):
    """All factor orbit points within distance R of o1, identity included,
    sorted by (dist, word)."""
    if not R > 0.0:
        raise ValidationError([f"R: must be positive, got {R!r}"])
    atoms = [FactorAtom(EMPTY_WORD, IDENTITY_MOEBIUS, o1, 0.0)]
    if factor.k == 0:
        return atoms
    _, lam, shift = _factor_constants(factor, o1)

    def dist_of(m):
        return hp.h_distance(o1, hp.apply(m, o1))

    def emit(word, m, d):
        atoms.append(FactorAtom(Word(word), m, hp.apply(m, o1), d))

    _enumerate_words(factor.letters(), factor.letter_matrix, dist_of,
                     float(R), lam, shift, max_atoms, emit, start_count=1)
    atoms.sort(key=lambda a: (a.dist, _word_sort_key(a.word.letters)))
    return atoms


def _ray_endpoint_or_convention(o1, point):
    if point.re == o1.re and point.im == o1.im:
        return INFINITY
    return hp.ray_endpoint(o1, point)


def _pair_atom(fa1, fa2, o, dist=None):
    d = math.hypot(fa1.dist, fa2.dist) if dist is None else dist
    return OrbitAtom(
        word1=fa1.word,
        word2=fa2.word,
        point=PPoint(fa1.point, fa2.point),
        hvec=DistanceVector(fa1.dist, fa2.dist),
        slope=Slope(math.atan2(fa2.dist, fa1.dist)),
        dist=d,
        bnd1=_ray_endpoint_or_convention(o.p1, fa1.point),
        bnd2=_ray_endpoint_or_convention(o.p2, fa2.point),
    )


def orbit_ball(group, o, R, max_atoms=DEFAULT_MAX_ATOMS):
    """All orbit atoms with d(o, gamma*o) <= R, sorted by (dist, words).

    Certification is the caller's validity gate; enumeration recomputes its
    own pruning constants, so degenerate calibration groups (k < 2) are
    still enumerable.
    """
    if not R > 0.0:
        raise ValidationError([f"R: must be positive, got {R!r}"])
    R = float(R)
    if group.coupling == FULL_PRODUCT:
        ball1 = factor_ball(group.factor1, o.p1, R, max_atoms)
        ball2 = factor_ball(group.factor2, o.p2, R, max_atoms)
        d1 = np.array([a.dist for a in ball1])
        d2 = np.array([a.dist for a in ball2])
        dd = np.hypot(d1[:, None], d2[None, :])
        mask = dd <= R
        count = int(mask.sum())
        if count > max_atoms:
            raise AtomBudgetExceeded(count, max_atoms)
        atoms = []
        ii, jj = np.nonzero(mask)
        for i, j in zip(ii.tolist(), jj.tolist()):
            atoms.append(_pair_atom(ball1[i], ball2[j], o, dist=float(dd[i, j])))
        atoms.sort(key=_atom_sort_key)
        return atoms

    # diagonal coupling: one reduced word drives both factors
    key = (o.p1.re, o.p1.im, o.p2.re, o.p2.im)
    letters = group.factor1.letters()

    def mat_of(letter):
        return _PairMat(group.factor1.letter_matrix(letter),
                        group.factor2.letter_matrix(letter))

    def dist_of(pm):
        return math.hypot(hp.h_distance(o.p1, hp.apply(pm.m1, o.p1)),
                          hp.h_distance(o.p2, hp.apply(pm.m2, o.p2)))

    if key not in group._scan_cache:
        group._scan_cache[key] = _pruning_constants(letters, mat_of, dist_of)
    _, lam, shift = group._scan_cache[key]

    atoms = [_pair_atom(FactorAtom(EMPTY_WORD, IDENTITY_MOEBIUS, o.p1, 0.0),
                        FactorAtom(EMPTY_WORD, IDENTITY_MOEBIUS, o.p2, 0.0), o)]

    def emit(word, pm, d):
        w = Word(word)
        p1 = hp.apply(pm.m1, o.p1)
        p2 = hp.apply(pm.m2, o.p2)
        atoms.append(_pair_atom(FactorAtom(w, pm.m1, p1, hp.h_distance(o.p1, p1)),
                                FactorAtom(w, pm.m2, p2, hp.h_distance(o.p2, p2)),
                                o, dist=d))

    _enumerate_words(letters, mat_of, dist_of, R, lam, shift, max_atoms, emit,
                     start_count=1)
    atoms.sort(key=_atom_sort_key)
    return atoms


class _PairMat:
    __slots__ = ("m1", "m2")

    def __init__(self, m1, m2):
        self.m1 = m1
        self.m2 = m2

    def mul(self, other):
        return _PairMat(self.m1.mul(other.m1), self.m2.mul(other.m2))


# ------------------------------------------------------------ certification

@dataclass(frozen=True)
class CertificateCheck:
    name: str
    passed: bool
    witness: str


@dataclass(frozen=True)
class FactorCertificate:
    passed: bool
    checks: tuple
    min_gain: float | None
    lambda_min: float | None
    length_shift: float | None
    min_translation: float | None
    ping_pong_margin: float | None


@dataclass(frozen=True)
class CertificateReport:
    passed: bool
    checks: tuple
    factor1: FactorCertificate
    factor2: FactorCertificate


def _apply_to_boundary_complex(m, z):
    """Moebius action on a complex boundary-circle sample; None is infinity."""
    if z is None:
        if m.c == 0.0:
            return None
        return complex(m.a / m.c, 0.0)
    den = m.c * z + m.d
    if den == 0:
        return None
    w = (m.a * z + m.b) / den
    # closed half-plane samples stay in the closed half-plane up to rounding
    return complex(w.real, max(w.imag, 0.0))


def _fixed_point_list(m):
    plus, minus = hp.fixed_points(m)
    return [plus, minus]


def _boundary_close(a, b, tol=1e-9):
    if a.is_infinity or b.is_infinity:
        return a.is_infinity and b.is_infinity
    return abs(a.value - b.value) <= tol


def _certify_factor(factor, o1):
    checks = []
    k = factor.k

    checks.append(CertificateCheck(
        "generator_count", k >= 2,
        f"k = {k}" if k >= 2 else f"k = {k}, need at least 2 generators"))

    all_hyperbolic = True
    for i, g in enumerate(factor.generators, start=1):
        kind = hp.classify(g)
        if kind != HYPERBOLIC:
            all_hyperbolic = False
            checks.append(CertificateCheck(
                "hyperbolic", False,
                f"generator {i} {kind}, |tr| = {abs(g.trace):.6g}"))
    if all_hyperbolic and k > 0:
        checks.append(CertificateCheck("hyperbolic", True, f"all {k} generators hyperbolic"))

    independent = all_hyperbolic
    if all_hyperbolic:
        fixed = [_fixed_point_list(g) for g in factor.generators]
        for i in range(k):
            for j in range(i + 1, k):
                shared = any(_boundary_close(p, q) for p in fixed[i] for q in fixed[j])
                if shared:
                    independent = False
                    checks.append(CertificateCheck(
                        "independent_fixed_points", False,
                        f"generators {i + 1} and {j + 1} share a fixed point"))
        if independent and k >= 2:
            checks.append(CertificateCheck(
                "independent_fixed_points", True, "all fixed-point sets disjoint"))

    flat = [d for pair in factor.pairing_disks for d in pair]
    disks_ok = True
    for i in range(len(flat)):
        for j in range(i + 1, len(flat)):
            if not flat[i].disjoint_from(flat[j]):
                disks_ok = False
                checks.append(CertificateCheck(
                    "disks_disjoint", False,
                    f"disks {i} and {j} intersect: {flat[i]!r}, {flat[j]!r}"))
    if disks_ok and flat:
        checks.append(CertificateCheck("disks_disjoint", True,
                                       f"all {len(flat)} disks pairwise disjoint"))

    margin = math.inf
    ping_ok = disks_ok and all_hyperbolic and k > 0
    if ping_ok:
        for i, g in enumerate(factor.generators, start=1):
            dm, dp = factor.pairing_disks[i - 1]
            for mat, src, dst in ((g, dm, dp), (g.inv(), dp, dm)):
                worst = math.inf
                for z in src.boundary_samples(PING_PONG_SAMPLES):
                    worst = min(worst, dst.margin(_apply_to_boundary_complex(mat, z)))
                # one witness strictly inside the exterior of src
                wit = None if not src.around_infinity else complex(src.center, 0.0)
                worst = min(worst, dst.margin(_apply_to_boundary_complex(mat, wit)))
                if worst < -PING_PONG_TOL:
                    ping_ok = False
                    checks.append(CertificateCheck(
                        "ping_pong", False,
                        f"generator {i} leaks by {-worst:.6g} outside its target disk"))
                margin = min(margin, worst)
        if ping_ok:
            checks.append(CertificateCheck(
                "ping_pong", True,
                f"{PING_PONG_SAMPLES} samples per disk, min margin {margin:.6g}"))

    passed = (k >= 2) and all_hyperbolic and independent and disks_ok and ping_ok
    min_gain = lam = shift = min_tl = None
    if passed:
        try:
            def dist_of(m):
                return hp.h_distance(o1, hp.apply(m, o1))
            min_gain, lam, shift = _pruning_constants(
                factor.letters(), factor.letter_matrix, dist_of)
            min_tl = min(hp.translation_length(g) for g in factor.generators)
            checks.append(CertificateCheck(
                "pruning_scan", True,
                f"min per-letter gain {min_gain:.6g}, lambda_min {lam:.6g}, shift {shift:.6g}"))
        except IntegrityError as exc:
            passed = False
            checks.append(CertificateCheck("pruning_scan", False, str(exc)))

    return FactorCertificate(
        passed=passed,
        checks=tuple(checks),
        min_gain=min_gain,
        lambda_min=lam,
        length_shift=shift,
        min_translation=min_tl,
        ping_pong_margin=(margin if margin != math.inf else None),
    )


def certify(group, o=None):
    """Numerical Schottky certificate for both factors plus coupling checks.

    Failures come back as a failing report with witnesses, not exceptions.
    """
    if o is None:
        o = PPoint(HPoint(0.0, 1.0), HPoint(0.0, 1.0))
    f1 = _certify_factor(group.factor1, o.p1)
    f2 = _certify_factor(group.factor2, o.p2)
    checks = []
    if group.coupling == DIAGONAL:
        ok = group.factor1.k == group.factor2.k
        checks.append(CertificateCheck(
            "coupling_arity", ok,
            f"factor generator counts {group.factor1.k} and {group.factor2.k}"))
    else:
        checks.append(CertificateCheck("coupling_arity", True, "full product"))
    passed = f1.passed and f2.passed and all(c.passed for c in checks)
    return CertificateReport(passed=passed, checks=tuple(checks), factor1=f1, factor2=f2)


# -------------------------------------------------------------- persistence

def _fmt(v):
    return f"{v:.17g}"


def _bnd_fields(b):
    if b.is_infinity:
        return "INF", ""
    return "F", _fmt(b.value)


def save_orbit(atoms, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for a in atoms:
            k1, v1 = _bnd_fields(a.bnd1)
            k2, v2 = _bnd_fields(a.bnd2)
            fh.write(",".join((
                a.word1.encode(), a.word2.encode(), _fmt(a.dist),
                _fmt(a.hvec.h1), _fmt(a.hvec.h2), _fmt(a.slope.theta),
                k1, v1, k2, v2,
                _fmt(a.point.p1.re), _fmt(a.point.p1.im),
                _fmt(a.point.p2.re), _fmt(a.point.p2.im),
            )) + "\n")


def _parse_bnd(kind, val, lineno):
    if kind == "INF":
        return INFINITY
    if kind == "F":
        return hp.Finite(float(val))
    raise OrbitParseError(f"line {lineno}: unknown boundary kind {kind!r}")


def load_orbit(path):
    atoms = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != CSV_HEADER:
            raise OrbitParseError(f"line 1: bad header {header!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 14:
                raise OrbitParseError(f"line {lineno}: expected 14 fields, got {len(parts)}")
            try:
                w1 = Word.decode(parts[0])
                w2 = Word.decode(parts[1])
                dist, h1, h2, theta = (float(parts[i]) for i in range(2, 6))
                bnd1 = _parse_bnd(parts[6], parts[7], lineno)
                bnd2 = _parse_bnd(parts[8], parts[9], lineno)
                p1 = HPoint(float(parts[10]), float(parts[11]))
                p2 = HPoint(float(parts[12]), float(parts[13]))
            except OrbitParseError:
                raise
            except (ValueError, ValidationError, DomainError) as exc:
                raise OrbitParseError(f"line {lineno}: {exc}") from None
            try:
                atoms.append(OrbitAtom(
                    word1=w1, word2=w2, point=PPoint(p1, p2),
                    hvec=DistanceVector(h1, h2), slope=Slope(theta),
                    dist=dist, bnd1=bnd1, bnd2=bnd2))
            except (IntegrityError, DomainError) as exc:
                raise IntegrityError(f"line {lineno}: {exc}") from None
    return atoms
