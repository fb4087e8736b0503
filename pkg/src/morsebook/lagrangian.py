"""The generalized Lagrangian projection on a planar ribbon page.

The page is a round disc with untwisted rectangular bands, so the
constant horizontal field trivializes its tangent bundle; a Legendrian
contained in the cylinder over the page projects to an immersed
polygonal curve with over/under data.  Thurston-Bennequin is the
writhe, the rotation number is the turning number in the constant
trivialization, and the correction term against the Morse vector field
is the winding around the critical points, index +1 at the centre
source and -1 at each band saddle.

All computations are exact: turning and winding numbers come from
signed ray crossings, and the direct field-relative rotation uses
Sturm chains on rational polynomials.
"""

from __future__ import annotations

from fractions import Fraction

from .geometry import det, sub
from .validation import InvalidInput, ValidationReport


class Band:
    """An untwisted rectangular band attached along two edges.

    Corners are listed so that edges corner[0]-corner[1] and
    corner[2]-corner[3] are the attaching edges (overlapping the disc);
    the saddle point sits at the centroid.
    """

    def __init__(self, corners):
        self.corners = [(Fraction(x), Fraction(y)) for x, y in corners]
        if len(self.corners) != 4:
            raise ValueError("a band needs exactly four corners")

    @property
    def saddle(self):
        xs = sum(c[0] for c in self.corners)
        ys = sum(c[1] for c in self.corners)
        return (xs / 4, ys / 4)

    @property
    def core(self):
        a = _midpoint(self.corners[0], self.corners[1])
        b = _midpoint(self.corners[2], self.corners[3])
        return (a, b)

    @property
    def transverse_arc(self):
        """The arc across the band; signed crossings count band passes."""
        a = _midpoint(self.corners[1], self.corners[2])
        b = _midpoint(self.corners[3], self.corners[0])
        return (a, b)

    def contains(self, p):
        return _in_convex(self.corners, p)


def _midpoint(a, b):
    return ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)


def _in_convex(corners, p):
    sign = 0
    n = len(corners)
    for i in range(n):
        a, b = corners[i], corners[(i + 1) % n]
        c = det(sub(b, a), sub(p, a))
        if c == 0:
            continue
        if sign == 0:
            sign = 1 if c > 0 else -1
        elif (c > 0) != (sign > 0):
            return False
    return True


class PageModel:
    def __init__(self, center, radius, bands=()):
        self.center = (Fraction(center[0]), Fraction(center[1]))
        self.radius = Fraction(radius)
        self.bands = list(bands)

    @property
    def source(self):
        return self.center

    @property
    def marked_points(self):
        return [self.center] + [b.saddle for b in self.bands]

    def in_disc(self, p):
        dx = p[0] - self.center[0]
        dy = p[1] - self.center[1]
        return dx * dx + dy * dy < self.radius * self.radius

    def containing_pieces(self, p):
        out = []
        if self.in_disc(p):
            out.append("disc")
        for i, b in enumerate(self.bands):
            if b.contains(p):
                out.append(i)
        return out


class LagrangianDiagram:
    """Oriented immersed polygonal curves with crossing over/under data.

    ``over_under`` lists entries {"over": [comp, seg], "under": [comp,
    seg]}, one per geometric crossing.
    """

    def __init__(self, components, over_under=()):
        self.components = [
            [(Fraction(x), Fraction(y)) for x, y in comp] for comp in components
        ]
        self.over_under = [dict(e) for e in over_under]

    def segments(self):
        for ci, comp in enumerate(self.components):
            n = len(comp)
            for i in range(n):
                yield (ci, i, comp[i], comp[(i + 1) % n])


def diagram_crossings(c):
    """All transverse self-intersections with their segment pairs."""
    segs = list(c.segments())
    out = []
    for i in range(len(segs)):
        ci1, s1, a1, b1 = segs[i]
        for j in range(i + 1, len(segs)):
            ci2, s2, a2, b2 = segs[j]
            if ci1 == ci2:
                n = len(c.components[ci1])
                if (s1 - s2) % n in (0, 1) or (s2 - s1) % n in (0, 1):
                    continue
            d1 = sub(b1, a1)
            d2 = sub(b2, a2)
            denom = det(d1, d2)
            w = sub(a2, a1)
            if denom == 0:
                if det(w, d1) == 0 and _collinear_overlap(a1, b1, a2, b2):
                    raise InvalidInput("collinear overlapping segments")
                continue
            s = Fraction(det(w, d2), denom)
            u = Fraction(det(w, d1), denom)
            if 0 < s < 1 and 0 < u < 1:
                pt = (a1[0] + s * d1[0], a1[1] + s * d1[1])
                out.append(((ci1, s1), (ci2, s2), pt))
            elif (s in (0, 1) and 0 <= u <= 1) or (u in (0, 1) and 0 <= s <= 1):
                raise InvalidInput("segments touch at an endpoint; perturb input")
    return out


def _collinear_overlap(a1, b1, a2, b2):
    axis = 0 if a1[0] != b1[0] else 1
    lo1, hi1 = sorted((a1[axis], b1[axis]))
    lo2, hi2 = sorted((a2[axis], b2[axis]))
    return max(lo1, lo2) <= min(hi1, hi2)


def band_pass_counts(p, c):
    """Signed traversals of each band: crossings with its transverse arc."""
    out = []
    for band in p.bands:
        a, b = band.transverse_arc
        total = 0
        d2 = sub(b, a)
        for _, _, q1, q2 in c.segments():
            d1 = sub(q2, q1)
            denom = det(d1, d2)
            if denom == 0:
                continue
            w = sub(a, q1)
            s = Fraction(det(w, d2), denom)
            u = Fraction(det(w, d1), denom)
            if 0 < s < 1 and 0 < u < 1:
                total += 1 if det(d1, d2) > 0 else -1
            elif (s in (0, 1) and 0 <= u <= 1) or (u in (0, 1) and 0 <= s <= 1):
                raise InvalidInput("curve touches a band core endpoint; perturb")
        out.append(total)
    return out


def validate_lagrangian(p, c):
    """Check the diagram against the page and its own transversality."""
    report = ValidationReport()
    for ci, comp in enumerate(c.components):
        loc = "component %d" % ci
        if len(comp) < 3:
            report.add(loc, "component needs at least three vertices")
            continue
        for i, v in enumerate(comp):
            if not p.containing_pieces(v):
                report.add(loc, "vertex %d outside the page" % i)
        n = len(comp)
        for i in range(n):
            a, b = comp[i], comp[(i + 1) % n]
            if a == b:
                report.add(loc, "zero-length edge at vertex %d" % i)
                continue
            common = set(p.containing_pieces(a)) & set(p.containing_pieces(b))
            if not common:
                report.add(loc, "segment %d leaves the page pieces" % i)
        # reversals make the turning number ill-defined
        for i in range(n):
            u = sub(comp[(i + 1) % n], comp[i])
            v = sub(comp[(i + 2) % n], comp[(i + 1) % n])
            if det(u, v) == 0 and (u[0] * v[0] + u[1] * v[1]) < 0:
                report.add(loc, "tangent reversal at vertex %d" % ((i + 1) % n))
    if not report.ok:
        return report

    marked = p.marked_points + [
        corner for band in p.bands for corner in band.corners
    ]
    for _, i, a, b in c.segments():
        for m in marked:
            if _on_segment(a, b, m):
                report.add("page", "curve passes through a marked or corner point")

    try:
        found = diagram_crossings(c)
    except InvalidInput as e:
        report.add("crossings", str(e))
        return report
    pts = {}
    for _, _, pt in found:
        pts[pt] = pts.get(pt, 0) + 1
    for pt, cnt in pts.items():
        if cnt > 1:
            report.add("crossings", "triple point at %s" % (pt,))
    keys = {frozenset([tuple(e["over"]), tuple(e["under"])]) for e in c.over_under}
    if len(keys) != len(c.over_under):
        report.add("crossings", "duplicate over/under entries")
    want = {frozenset([k1, k2]) for k1, k2, _ in found}
    if keys != want:
        report.add("crossings", "over/under table does not match the crossings")
    return report


def _on_segment(a, b, m):
    if det(sub(b, a), sub(m, a)) != 0:
        return False
    lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
    lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
    return lo_x <= m[0] <= hi_x and lo_y <= m[1] <= hi_y


def require_null_homologous(p, c):
    passes = band_pass_counts(p, c)
    if any(passes):
        raise InvalidInput(
            "curve is not null-homologous in the page: band passes %r" % (passes,)
        )


def tb_writhe(p, c, validate=True):
    """Thurston-Bennequin number: the writhe of the projection."""
    if validate:
        validate_lagrangian(p, c).raise_if_invalid("lagrangian diagram")
    require_null_homologous(p, c)
    table = {
        frozenset([tuple(e["over"]), tuple(e["under"])]): (
            tuple(e["over"]),
            tuple(e["under"]),
        )
        for e in c.over_under
    }
    total = 0
    for k1, k2, _ in diagram_crossings(c):
        over, under = table[frozenset([k1, k2])]
        d_over = _seg_dir(c, over)
        d_under = _seg_dir(c, under)
        total += 1 if det(d_over, d_under) > 0 else -1
    return total


def _seg_dir(c, key):
    ci, si = key
    comp = c.components[ci]
    n = len(comp)
    return sub(comp[(si + 1) % n], comp[si])


def _edge_dirs(comp):
    n = len(comp)
    return [sub(comp[(i + 1) % n], comp[i]) for i in range(n)]


def _ray_ok_for_dirs(rho, dirs):
    return all(det(rho, d) != 0 for d in dirs)


# deterministic fallback directions: simple ones first, then slopes
# with a large prime denominator that miss structured rational data
_FALLBACK_RAYS = [
    (Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(-1)),
    (Fraction(2), Fraction(1)),
    (Fraction(1), Fraction(2)),
    (Fraction(3), Fraction(1)),
] + [
    (Fraction(1), Fraction((-1) ** k * (2 * k + 1), 257)) for k in range(48)
]


def turning_number(p, c, validate=True):
    """Whitney index of the tangent direction, summed over components."""
    if validate:
        validate_lagrangian(p, c).raise_if_invalid("lagrangian diagram")
    total = 0
    for comp in c.components:
        dirs = _edge_dirs(comp)
        rho = None
        for cand in _FALLBACK_RAYS:
            if _ray_ok_for_dirs(cand, dirs):
                rho = cand
                break
        if rho is None:
            raise InvalidInput("could not select a reference direction")
        total += _direction_winding(dirs, rho)
    return total


def _direction_winding(dirs, rho):
    """Signed crossings of the cyclic direction sequence through rho."""
    total = 0
    n = len(dirs)
    for i in range(n):
        u, v = dirs[i], dirs[(i + 1) % n]
        c = det(u, v)
        if c == 0:
            continue  # straight continuation
        if c > 0:
            if det(u, rho) > 0 and det(rho, v) > 0:
                total += 1
        else:
            if det(v, rho) > 0 and det(rho, u) > 0:
                total -= 1
    return total


def winding_numbers(p, c, validate=True):
    """Winding of the curve around each marked point, exactly."""
    if validate:
        validate_lagrangian(p, c).raise_if_invalid("lagrangian diagram")
    require_null_homologous(p, c)
    return [_winding_around(c, m) for m in p.marked_points]


def _winding_around(c, m):
    for rho in _FALLBACK_RAYS:
        val = _try_ray(c, m, rho)
        if val is not None:
            return val
    raise InvalidInput("no admissible ray around %r; perturb input" % (m,))


def _try_ray(c, m, rho):
    total = 0
    for _, _, a, b in c.segments():
        d = sub(b, a)
        denom = det(rho, d)
        w = sub(a, m)
        if denom == 0:
            if det(w, d) == 0:
                return None  # segment collinear with the ray
            continue
        # m + s*rho = a + u*d
        s = Fraction(det(w, d), denom)
        u = Fraction(det(w, rho), denom)
        if u in (0, 1) and s >= 0:
            return None  # vertex on the ray: reselect
        if s == 0:
            return None
        if s > 0 and 0 < u < 1:
            total += 1 if det(rho, d) > 0 else -1
    return total


# --- the Morse field: a source at the centre, a saddle per band -------


class Poly:
    """Dense rational-coefficient polynomials, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.c = c

    def __add__(self, o):
        n = max(len(self.c), len(o.c))
        return Poly(
            [
                (self.c[i] if i < len(self.c) else 0)
                + (o.c[i] if i < len(o.c) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, o):
        return self + o.scale(-1)

    def scale(self, k):
        return Poly([k * x for x in self.c])

    def __mul__(self, o):
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return Poly(out)

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def deriv(self):
        if len(self.c) == 1:
            return Poly([0])
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return self.c == [0]


def _poly_rem(a, b):
    ra = list(a.c)
    db = b.degree()
    lead = b.c[-1]
    while len(ra) - 1 >= db and any(x != 0 for x in ra):
        da = len(ra) - 1
        if ra[-1] == 0:
            ra.pop()
            continue
        q = ra[-1] / lead
        shift = da - db
        for i in range(db + 1):
            ra[shift + i] -= q * b.c[i]
        ra.pop()
    return Poly(ra if ra else [0])


def _primitive(p):
    """Scale to primitive integer coefficients; signs are unchanged."""
    from math import gcd

    if p.is_zero():
        return p
    denom = 1
    for c in p.c:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in p.c]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return Poly(ints)


def _sturm_chain(p):
    chain = [_primitive(p), _primitive(p.deriv())]
    while not chain[-1].is_zero() and chain[-1].degree() > 0:
        r = _poly_rem(chain[-2], chain[-1])
        if r.is_zero():
            break
        chain.append(_primitive(r.scale(-1)))
    return chain


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        v = p(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _roots_in_open_interval(p, lo, hi):
    """Isolated simple roots of p in (lo, hi), as isolating intervals.

    Fails (returns None) when p has a multiple root there, detected via
    a vanishing sign change or gcd considerations; the caller reselects
    its ray.
    """
    if p(lo) == 0 or p(hi) == 0:
        return None
    chain = _sturm_chain(p)
    count = _sign_changes(chain, lo) - _sign_changes(chain, hi)
    if count == 0:
        return []
    stack = [(lo, hi, count)]
    out = []
    guard = 0
    while stack:
        guard += 1
        if guard > 10000:
            return None
        a, b, k = stack.pop()
        if k == 1 and p(a) * p(b) < 0:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if p(mid) == 0:
            # split just off the root; if the root is multiple the
            # counts will fail to settle and the guard trips
            mid += (b - a) / (2 ** 10)
            if p(mid) == 0:
                return None
        ka = _sign_changes(chain, a) - _sign_changes(chain, mid)
        kb = _sign_changes(chain, mid) - _sign_changes(chain, b)
        if ka + kb != k or (k == 1 and p(a) * p(b) > 0):
            return None
        if ka:
            stack.append((a, mid, ka))
        if kb:
            stack.append((mid, b, kb))
    return sorted(out)


def morse_field_components(p):
    """The product field with a source at c0 and a saddle per band.

    Returns a function mapping an edge (a, b) to the pair of
    polynomials (X(s), Y(s)) of the field along it: (z - c0) times the
    product of conj(z - c_j), exact in s.
    """
    c0 = p.source
    saddles = [b.saddle for b in p.bands]

    def along(a, b):
        dx = b[0] - a[0]
        dy = b[1] - a[1]
        re = Poly([a[0] - c0[0], dx])
        im = Poly([a[1] - c0[1], dy])
        for s in saddles:
            fre = Poly([a[0] - s[0], dx])
            fim = Poly([-(a[1] - s[1]), -dy])  # conjugate factor
            re, im = re * fre - im * fim, re * fim + im * fre
        return re, im

    return along


def field_relative_turning(p, c, validate=True):
    """Rotation of the tangent against the Morse field, directly.

    Computed as turning(tangent) minus the exact winding of the field
    direction along the curve, the latter by Sturm-counted crossings of
    a reference direction.
    """
    if validate:
        validate_lagrangian(p, c).raise_if_invalid("lagrangian diagram")
    along = morse_field_components(p)
    total = turning_number(p, c, validate=False)
    for comp in c.components:
        total -= _field_winding(comp, along)
    return total


def _field_winding(comp, along):
    n = len(comp)
    edges = [(comp[i], comp[(i + 1) % n]) for i in range(n)]
    for rho in _FALLBACK_RAYS:
        val = _field_winding_ray(edges, along, rho)
        if val is not None:
            return val
    raise InvalidInput("no admissible reference direction for the field winding")


def _field_winding_ray(edges, along, rho):
    total = 0
    last_sign = None
    first_sign = None
    for a, b in edges:
        re, im = along(a, b)
        # det(rho, V(s)) and dot(rho, V(s))
        dpol = im.scale(rho[0]) - re.scale(rho[1])
        qpol = re.scale(rho[0]) + im.scale(rho[1])
        v0 = dpol(Fraction(0))
        if v0 == 0:
            return None  # field aligned with rho at a vertex
        roots = _roots_in_open_interval(dpol, Fraction(0), Fraction(1))
        if roots is None:
            return None
        for lo, hi in roots:
            # refine the isolating interval until the dot sign settles
            for _ in range(128):
                q_lo, q_hi = qpol(lo), qpol(hi)
                if q_lo != 0 and q_hi != 0 and (q_lo > 0) == (q_hi > 0):
                    break
                mid = (lo + hi) / 2
                v_mid = dpol(mid)
                if v_mid == 0:
                    return None  # crossing exactly at a binary point
                if (dpol(lo) > 0) != (v_mid > 0):
                    hi = mid
                else:
                    lo = mid
            else:
                return None
            if q_lo < 0:
                continue  # passes the opposite direction -rho
            before = dpol(lo)
            after = dpol(hi)
            total += 1 if (before < 0 and after > 0) else -1
    return total


class LagrangianRotation:
    """The rotation number with its Morse-field decomposition."""

    def __init__(self, rot, surface_term, rot_v0, windings):
        self.rot = rot
        self.surface_term = surface_term
        self.rot_v0 = rot_v0
        self.windings = windings

    def as_dict(self):
        return {
            "rot": self.rot,
            "L_dot_H": self.surface_term,
            "rot_V0": self.rot_v0,
            "windings": self.windings,
        }


def rot_lagrangian(p, c):
    """Rotation number from the page projection.

    rot equals the turning number in the constant trivialization; the
    surface term is winding(c0) minus the saddle windings, and the
    field-relative rotation is cross-checked against an independent
    direct computation along the curve.
    """
    validate_lagrangian(p, c).raise_if_invalid("lagrangian diagram")
    w = winding_numbers(p, c, validate=False)
    rot = turning_number(p, c, validate=False)
    surface = w[0] - sum(w[1:])
    rot_v0 = rot - surface
    direct = field_relative_turning(p, c, validate=False)
    if direct != rot_v0:
        raise AssertionError(
            "field-relative rotation mismatch: direct %d vs decomposition %d"
            % (direct, rot_v0)
        )
    return LagrangianRotation(rot, surface, rot_v0, w)
