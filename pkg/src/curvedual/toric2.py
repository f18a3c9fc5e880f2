"""Plane affine semigroups: saturation, hulls, monomial duality data.

A semigroup S here is given by finitely many integer points spanning a
pointed two-dimensional cone.  Writing d1, d2 for the primitive ray
directions and n1(w) = cross(d1, w), n2(w) = cross(w, d2) for the two
edge functionals (nonnegative exactly on the cone), every semigroup
element splits into its on-ray and off-ray generator parts, which is
what makes the localization at a ray decidable without any search
window:

  u lies in the localization M_ray of a monomial module M
  iff for some generator h of M and some combo s of off-ray
  generators with the same edge level as u - h, the remainder
  u - h - s is a multiple of the ray direction divisible by the
  gcd of the on-ray generator multipliers.

(The on-ray multipliers form a numerical semigroup whose differences
are exactly the multiples of that gcd, and adding enough on-ray
generators always repairs any such remainder.)  The hull off the
origin is the intersection of the two ray localizations with the
group; its new generators are collected in an explicit corner window
with a rim consistency check.
"""

from __future__ import annotations

import math

from .curvering import semigroup_oracle
from .errors import (InvariantViolation, NotMember, NotSaturated,
                     OwnerMismatch, ParseError)


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _egcd(a, b):
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _lattice_basis(vectors):
    """Hermite form (d, e, m) of the group generated: rows (d, e) and
    (0, m) with d, m > 0 for a rank-two lattice."""
    d = e = m = 0
    for (a, b) in vectors:
        if d == 0:
            if a:
                d, e = (a, b) if a > 0 else (-a, -b)
            else:
                m = math.gcd(m, b)
            continue
        g, x, y = _egcd(d, a)
        leftover = (d // g) * b - (a // g) * e
        d, e = g, x * e + y * b
        m = math.gcd(m, leftover)
    if m:
        e %= m
    return d, e, m


def _extremal_pair(gens):
    for a in gens:
        for b in gens:
            if _cross(a, b) <= 0:
                continue
            if all(_cross(a, g) >= 0 and _cross(g, b) >= 0 for g in gens):
                return a, b
    raise InvariantViolation(
        "generators do not span a pointed two-dimensional cone")


def _primitive(v):
    g = math.gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


class AffineSemigroup2:
    """Finitely generated subsemigroup of Z^2 with a pointed 2d cone.

    Stores the canonical minimal generator list, the two primitive ray
    directions (counterclockwise), and the Hermite form of the group
    generated.  Membership is an exact level-descent search, memoised
    per instance.
    """

    def __init__(self, generators):
        raw = []
        for g in generators:
            pt = (int(g[0]), int(g[1]))
            if pt != (0, 0) and pt not in raw:
                raw.append(pt)
        if not raw:
            raise InvariantViolation("at least one nonzero generator needed")
        lo, hi = _extremal_pair(raw)
        self.ray_directions = (_primitive(lo), _primitive(hi))
        self._det = _cross(*self.ray_directions)
        self._hnf = _lattice_basis(raw)
        if self._hnf[0] == 0 or self._hnf[2] == 0:
            raise InvariantViolation("group of the semigroup has rank < 2")
        self._memo = {}
        self._dp_gens = list(raw)
        minimal = []
        for g in sorted(raw, key=self._sort_key):
            if not any(self.contains(_sub(g, h)) and _sub(g, h) != (0, 0)
                       for h in raw):
                minimal.append(g)
        self.generators = tuple(minimal)
        self._dp_gens = minimal
        self._init_ray_data()

    def _sort_key(self, pt):
        a, b = self.normal_values(pt)
        return (a + b, pt[0], pt[1])

    def _init_ray_data(self):
        self._ray_gcds = []
        self._ray_conductors = []
        self._offray = []
        self._off_other_max = []
        self._levels = []
        for ray in (0, 1):
            d = self.ray_directions[ray]
            ks, off, omax = [], [], 0
            for g in self.generators:
                nv = self.normal_values(g)
                if nv[ray] == 0:
                    k = g[0] // d[0] if d[0] else g[1] // d[1]
                    if k < 1 or (k * d[0], k * d[1]) != g:
                        raise InvariantViolation("bad on-ray generator")
                    ks.append(k)
                else:
                    off.append(g)
                    omax = max(omax, nv[1 - ray])
            if not ks:
                # the extremal ray of the cone always carries a generator
                raise InvariantViolation("extremal ray without a generator")
            ga = math.gcd(*ks) if len(ks) > 1 else ks[0]
            self._ray_gcds.append(ga)
            scaled = sorted({k // ga for k in ks})
            self._ray_conductors.append(
                ga * semigroup_oracle(scaled).conductor)
            self._offray.append(off)
            self._off_other_max.append(omax)
            self._levels.append([frozenset({(0, 0)})])

    # -- basic predicates ----------------------------------------------------

    def normal_values(self, pt):
        """(n1, n2): the two edge functionals, nonnegative on the cone,
        each vanishing on its own ray."""
        d1, d2 = self.ray_directions
        return (_cross(d1, pt), _cross(pt, d2))

    def level(self, pt):
        a, b = self.normal_values(pt)
        return a + b

    def in_group(self, pt):
        d, e, m = self._hnf
        if pt[0] % d:
            return False
        return (pt[1] - (pt[0] // d) * e) % m == 0

    def in_cone(self, pt):
        a, b = self.normal_values(pt)
        return a >= 0 and b >= 0

    def contains(self, point):
        w = (int(point[0]), int(point[1]))
        if w == (0, 0):
            return True
        if not self.in_cone(w) or not self.in_group(w):
            return False
        return self._member(w)

    def _member(self, w):
        hit = self._memo.get(w)
        if hit is not None:
            return hit
        out = False
        for g in self._dp_gens:
            z = _sub(w, g)
            if z == (0, 0):
                out = True
                break
            a, b = self.normal_values(z)
            if a < 0 or b < 0:
                continue
            if self._member(z):
                out = True
                break
        self._memo[w] = out
        return out

    def _reachable(self, ray, t):
        """Vectors reachable by off-ray generator combos at edge level
        exactly t; computed level by level and cached."""
        lv = self._levels[ray]
        while len(lv) <= t:
            ell = len(lv)
            cur = set()
            for g in self._offray[ray]:
                ng = self.normal_values(g)[ray]
                if ng <= ell:
                    for v in lv[ell - ng]:
                        cur.add((v[0] + g[0], v[1] + g[1]))
            lv.append(frozenset(cur))
        return lv[t]

    @property
    def ray_group_primitives(self):
        """Smallest positive multiple of each ray direction inside the
        group; these frame the fundamental parallelogram."""
        cached = getattr(self, "_ray_prims", None)
        if cached is not None:
            return cached
        d, _, m = self._hnf
        index = d * m
        out = []
        for dirv in self.ray_directions:
            for k in range(1, index + 1):
                if self.in_group((k * dirv[0], k * dirv[1])):
                    out.append((k * dirv[0], k * dirv[1]))
                    break
            else:
                raise InvariantViolation("ray misses the group")
        self._ray_prims = tuple(out)
        return self._ray_prims

    def __eq__(self, other):
        if not isinstance(other, AffineSemigroup2):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"<plane semigroup on {list(self.generators)}>"


class MonomialModule2:
    """Module of lattice points over a plane semigroup, stored by its
    minimal generators (unique because the cone is pointed)."""

    def __init__(self, semigroup, generators):
        self.semigroup = semigroup
        pts = []
        for g in generators:
            pt = (int(g[0]), int(g[1]))
            if not semigroup.in_group(pt):
                raise NotMember(f"generator {pt} lies outside the group")
            if pt not in pts:
                pts.append(pt)
        if not pts:
            raise InvariantViolation("a module needs at least one generator")
        keep = []
        for g in sorted(pts, key=semigroup._sort_key):
            if not any(semigroup.contains(_sub(g, h)) for h in keep):
                keep.append(g)
        self.generators = tuple(keep)

    def contains(self, point):
        pt = (int(point[0]), int(point[1]))
        return any(self.semigroup.contains(_sub(pt, h))
                   for h in self.generators)

    def in_ray_localization(self, point, ray):
        """Exact ray-localization membership (docstring at module top)."""
        S = self.semigroup
        pt = (int(point[0]), int(point[1]))
        if not S.in_group(pt):
            return False
        d = S.ray_directions[ray]
        ga = S._ray_gcds[ray]
        det = S._det
        rmax = S._off_other_max[ray]
        for h in self.generators:
            z = _sub(pt, h)
            nz = S.normal_values(z)
            t = nz[ray]
            if t < 0:
                continue
            reach = S._reachable(ray, t)
            if not reach:
                continue
            other = nz[1 - ray]
            hi = other // det
            lo = -((t * rmax - other) // det)
            mu = hi - (hi % ga)
            while mu >= lo:
                sigma = (z[0] - mu * d[0], z[1] - mu * d[1])
                if sigma in reach:
                    return True
                mu -= ga
        return False

    def hull_contains(self, point):
        return (self.semigroup.in_group(point)
                and self.in_ray_localization(point, 0)
                and self.in_ray_localization(point, 1))

    def translate(self, vec):
        return MonomialModule2(
            self.semigroup,
            [(g[0] + vec[0], g[1] + vec[1]) for g in self.generators])

    def __eq__(self, other):
        if not isinstance(other, MonomialModule2):
            return NotImplemented
        return (self.semigroup == other.semigroup
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.semigroup, self.generators))

    def __repr__(self):
        return f"<monomial module on {list(self.generators)}>"


# -- operations -----------------------------------------------------------------

def _corner_points(S, b1, b2, size):
    """Group points whose edge coordinates lie in the given corner box,
    recovered from (n1, n2) by exact Cramer division."""
    (d1x, d1y), (d2x, d2y) = S.ray_directions
    det = S._det
    for a in range(b1, b1 + size + 1):
        for b in range(b2, b2 + size + 1):
            px = a * d2x + b * d1x
            py = a * d2y + b * d1y
            if px % det or py % det:
                continue
            u = (px // det, py // det)
            if S.in_group(u):
                yield u


def saturation(S: AffineSemigroup2) -> AffineSemigroup2:
    """Hilbert basis of cone(S) intersected with group(S).

    Every irreducible lies in the fundamental parallelogram spanned by
    the two in-group ray primitives (anything beyond an edge can shed
    that primitive and stay in the saturation), so the candidate list
    is finite and exact.
    """
    v1, v2 = S.ray_group_primitives
    dv = _cross(v1, v2)
    xs = [0, v1[0], v2[0], v1[0] + v2[0]]
    ys = [0, v1[1], v2[1], v1[1] + v2[1]]
    pts = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            z = (x, y)
            if z == (0, 0) or not S.in_group(z):
                continue
            if 0 <= _cross(z, v2) <= dv and 0 <= _cross(v1, z) <= dv:
                pts.append(z)

    def in_saturation(w):
        return S.in_cone(w) and S.in_group(w)

    keep = [z for z in pts
            if not any(c != z and _sub(z, c) != (0, 0)
                       and in_saturation(_sub(z, c)) for c in pts)]
    out = AffineSemigroup2(keep)
    if out._hnf != S._hnf:
        raise InvariantViolation("saturation changed the group")
    return out


def s2_hull(module: MonomialModule2) -> MonomialModule2:
    """Intersection of the two ray localizations with the group.

    Pointwise membership is exact; the finitely many generators beyond
    the module itself are collected in a corner window sized from the
    generator data, then a rim band around the window is checked for
    agreement between pointwise hull membership and the extracted
    module.  Disagreement grows the window; persistent disagreement is
    an invariant violation rather than a wrong answer.
    """
    S = module.semigroup
    gens = module.generators
    coords = [S.normal_values(h) for h in gens]
    b1 = min(c[0] for c in coords)
    b2 = min(c[1] for c in coords)
    span = max(max(S.normal_values(g)) for g in S.generators)
    mspan = max(c[0] - b1 + c[1] - b2 for c in coords)
    reach = S._det * (S._ray_gcds[0] * max(S._ray_conductors[0], 1)
                      + S._ray_gcds[1] * max(S._ray_conductors[1], 1))
    size = 2 * (span + mspan + reach) + 8
    for _ in range(3):
        pts = list(gens)
        for u in _corner_points(S, b1, b2, size):
            if module.hull_contains(u):
                pts.append(u)
        out = MonomialModule2(S, pts)
        rim_ok = True
        for u in _corner_points(S, b1, b2, size + span + 2):
            a, b = S.normal_values(u)
            if a <= b1 + size and b <= b2 + size:
                continue
            if module.hull_contains(u) != out.contains(u):
                rim_ok = False
                break
        if rim_ok:
            return out
        size *= 2
    raise InvariantViolation("hull corner window failed to stabilize")


def canonical_module_toric(S: AffineSemigroup2) -> MonomialModule2:
    """Module of interior lattice points of a saturated semigroup.

    Its minimal generators lie in the fundamental parallelogram: an
    interior point beyond an edge coordinate 1 sheds that in-group ray
    primitive and stays interior, hence is reducible.
    """
    if saturation(S) != S:
        raise NotSaturated("interior-point recipe needs a saturated input")
    v1, v2 = S.ray_group_primitives
    dv = _cross(v1, v2)
    xs = [0, v1[0], v2[0], v1[0] + v2[0]]
    ys = [0, v1[1], v2[1], v1[1] + v2[1]]
    pts = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            z = (x, y)
            if not S.in_group(z):
                continue
            if 0 < _cross(z, v2) <= dv and 0 < _cross(v1, z) <= dv:
                pts.append(z)
    return MonomialModule2(S, pts)


def monomial_iso(mod_a: MonomialModule2, mod_b: MonomialModule2):
    """Translation vector u with mod_a + u = mod_b, or None.

    Minimal generators are unique and their canonical order is
    translation-equivariant, so the difference of the leading
    generators is the only possible u.
    """
    if mod_a.semigroup != mod_b.semigroup:
        raise OwnerMismatch("modules live over different semigroups")
    ga, gb = mod_a.generators, mod_b.generators
    if len(ga) != len(gb):
        return None
    u = _sub(gb[0], ga[0])
    if all(gb[i] == (ga[i][0] + u[0], ga[i][1] + u[1])
           for i in range(len(ga))):
        return u
    return None


# -- named models -----------------------------------------------------------------

MODELS = {
    # full smooth quadrant
    "plane": ((1, 0), (0, 1)),
    # coordinate sums divisible by three
    "diagonal-mod3": ((3, 0), (2, 1), (1, 2), (0, 3)),
    # all of the quadrant except the two degree-one points
    "pinched-plane": ((2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)),
}


def model(name: str) -> AffineSemigroup2:
    try:
        gens = MODELS[name]
    except KeyError:
        raise ParseError(
            f"unknown model {name!r}; choose from {sorted(MODELS)}") from None
    return AffineSemigroup2(gens)
