"""Front projections of Legendrian links on the Morse diagram.

A front is an oriented closed multicurve drawn in the torus charts:
straight segments of nonpositive dt/dx slope, cusp vertices where the
x-direction of travel reverses, and teleport vertex pairs where the
curve enters the skeleton on one trace curve and re-emerges on its
partner at the same page parameter.  Coordinates are lifted rationals;
each component carries explicit integer closure offsets so windings in
x and t are recorded exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import (
    curve_orientation,
    h1_presentation,
    propagate_labels,
    validate_diagram,
)
from .geometry import (
    DegenerateGeometry,
    det,
    cusp_direction,
    integer_crossings,
    segment_meet_torus,
    slope,
    slope_closer_to_zero,
    sub,
)
from .validation import InvalidInput, ValidationReport

PLAIN = "plain"
CUSP = "cusp"
TELEPORT = "teleport"
EXIT = "exit"
ENTER = "enter"


class Vertex:
    __slots__ = ("x", "t", "kind", "pair", "side", "role")

    def __init__(self, x, t, kind=PLAIN, pair=None, side=None, role=None):
        self.x = Fraction(x)
        self.t = Fraction(t)
        self.kind = kind
        self.pair = pair
        self.side = side
        self.role = role

    @property
    def point(self):
        return (self.x, self.t)

    def shifted(self, dx, dt):
        return Vertex(self.x + dx, self.t + dt, self.kind, self.pair, self.side, self.role)

    def __repr__(self):
        extra = "" if self.kind == PLAIN else " %s" % self.kind
        return "Vertex(%s, %s%s)" % (self.x, self.t, extra)


class FrontComponent:
    """One oriented closed curve: cyclic vertices plus closure winding."""

    def __init__(self, torus, vertices, closure=(0, 0)):
        self.torus = int(torus)
        self.vertices = list(vertices)
        self.closure = (int(closure[0]), int(closure[1]))

    def __len__(self):
        return len(self.vertices)

    def vertex(self, i):
        return self.vertices[i % len(self.vertices)]

    def neighbor_points(self, i):
        """Previous and next geometric points around vertex i (lift-corrected)."""
        n = len(self.vertices)
        prev = self.vertices[(i - 1) % n]
        nxt = self.vertices[(i + 1) % n]
        p = prev.point
        q = nxt.point
        if i == 0:
            p = (p[0] - self.closure[0], p[1] - self.closure[1])
        if i == n - 1:
            q = (q[0] + self.closure[0], q[1] + self.closure[1])
        return p, q

    def segments(self):
        """Oriented segments (i, a, b); teleport jumps are skipped."""
        n = len(self.vertices)
        for i in range(n):
            v = self.vertices[i]
            w = self.vertices[(i + 1) % n]
            if v.kind == TELEPORT and v.role == EXIT:
                continue  # the jump to the re-entry point is not drawn
            b = w.point
            if i == n - 1:
                b = (b[0] + self.closure[0], b[1] + self.closure[1])
            yield (i, v.point, b)

    def reversed(self):
        verts = []
        for v in reversed(self.vertices):
            role = None
            if v.kind == TELEPORT:
                role = EXIT if v.role == ENTER else ENTER
            verts.append(Vertex(v.x, v.t, v.kind, v.pair, v.side, role))
        return FrontComponent(
            self.torus, verts, (-self.closure[0], -self.closure[1])
        )


class FrontProjection:
    def __init__(self, components):
        self.components = list(components)

    def reversed(self):
        return FrontProjection([c.reversed() for c in self.components])

    def union(self, other):
        return FrontProjection(self.components + other.components)

    def all_segments(self):
        for ci, comp in enumerate(self.components):
            for i, a, b in comp.segments():
                yield (ci, i, comp.torus, a, b)


class Crossing:
    """A transverse double point with depth and sign.

    The over strand is the one whose slope is closer to zero; the sign
    is +1 when (over direction, under direction) is a positively
    oriented frame of the chart.
    """

    def __init__(self, torus, point, over, under, sign):
        self.torus = torus
        self.point = point
        self.over = over  # (component index, segment index)
        self.under = under
        self.sign = sign

    def __repr__(self):
        return "Crossing(%s %s over=%r under=%r sign=%+d)" % (
            self.torus,
            self.point,
            self.over,
            self.under,
            self.sign,
        )


def validate_front(d, f):
    """Check every FrontProjection invariant against the diagram."""
    report = ValidationReport()
    diag_report = validate_diagram(d)
    if not diag_report.ok:
        report.add("diagram", "underlying diagram is invalid")
        return report
    pair_ids = {p.id for p in d.trace_pairs}

    for ci, comp in enumerate(f.components):
        loc = "component %d" % ci
        if not (0 <= comp.torus < d.binding_count):
            report.add(loc, "torus index out of range")
            continue
        n = len(comp.vertices)
        if n < 2:
            report.add(loc, "component needs at least two vertices")
            continue

        # teleport vertices pair up as exit followed by enter
        for i, v in enumerate(comp.vertices):
            if v.kind != TELEPORT:
                continue
            if v.role == EXIT:
                w = comp.vertex(i + 1)
                if w.kind != TELEPORT or w.role != ENTER:
                    report.add(loc, "teleport exit not followed by an enter vertex")
                    continue
                if v.pair not in pair_ids or v.pair != w.pair:
                    report.add(loc, "teleport pair ids missing or mismatched")
                    continue
                if v.side == w.side:
                    report.add(loc, "teleport must re-enter on the partner curve")
                if v.t != w.t:
                    report.add(loc, "teleport exit and entry at different t")
            elif v.role == ENTER:
                w = comp.vertex(i - 1)
                if w.kind != TELEPORT or w.role != EXIT:
                    report.add(loc, "teleport enter not preceded by an exit vertex")
            else:
                report.add(loc, "teleport vertex without exit/enter role")

        # slope constraint and vertex-local structure
        segs = dict((i, (a, b)) for i, a, b in comp.segments())
        for i, (a, b) in segs.items():
            dx = b[0] - a[0]
            dt = b[1] - a[1]
            if dx == 0 and dt == 0:
                report.add(loc, "zero-length segment at vertex %d" % i)
                continue
            if dx * dt > 0:
                report.add(loc, "slope constraint violated at segment %d" % i)
            if dx == 0:
                v1 = comp.vertices[i]
                v2 = comp.vertex(i + 1)
                if v1.kind != CUSP and v2.kind != CUSP:
                    report.add(loc, "vertical segment not adjacent to a cusp")
        for i, v in enumerate(comp.vertices):
            if v.kind == TELEPORT:
                continue
            prev_pt, next_pt = comp.neighbor_points(i)
            prev_v = comp.vertex(i - 1)
            next_v = comp.vertex(i + 1)
            if prev_v.kind == TELEPORT and prev_v.role == EXIT:
                report.add(loc, "vertex %d follows a teleport exit directly" % i)
                continue
            try:
                from .geometry import branch_side

                side_in = branch_side(v.point, prev_pt)
                side_out = branch_side(v.point, next_pt)
            except DegenerateGeometry:
                continue  # zero-length segment already reported
            if v.kind == CUSP and side_in != side_out:
                report.add(loc, "cusp vertex %d does not reverse x-direction" % i)
            if v.kind == PLAIN and side_in == side_out:
                report.add(loc, "plain vertex %d reverses x-direction" % i)

        # teleport coincidences with the trace curves
        for i, v in enumerate(comp.vertices):
            if v.kind != TELEPORT or v.pair is None:
                continue
            try:
                pair = d.trace_pairs[d.pair_index(v.pair)]
            except KeyError:
                continue
            curve = pair.curve(v.side)
            if curve.torus != comp.torus:
                report.add(loc, "teleport vertex %d on the wrong torus" % i)
                continue
            t_pos = v.t % 1
            try:
                x_curve = curve.x_at(t_pos)
            except ValueError:
                report.add(loc, "teleport vertex %d at a broken trace t" % i)
                continue
            if (v.x - x_curve) % 1 != 0:
                report.add(loc, "teleport vertex %d not on its trace curve" % i)

    if not report.ok:
        return report

    # transversality against trace curves, away from teleport endpoints
    teleport_pts = set()
    for comp in f.components:
        for v in comp.vertices:
            if v.kind == TELEPORT:
                teleport_pts.add((comp.torus, v.x % 1, v.t % 1))
    trace_segs = []
    for pi, side, curve in d.curves():
        for _, a, b in curve.segments():
            trace_segs.append((curve.torus, a, b))
    for ci, i, torus, a, b in f.all_segments():
        for tt, q1, q2 in trace_segs:
            if tt != torus:
                continue
            try:
                segment_meet_torus(a, b, q1, q2)
            except DegenerateGeometry:
                ok = any(
                    (torus, p[0] % 1, p[1] % 1) in teleport_pts for p in (a, b, q1, q2)
                )
                if not ok:
                    report.add(
                        "component %d" % ci,
                        "front touches a trace curve non-transversally at segment %d" % i,
                    )

    # self-crossings: transverse, no triple points
    try:
        pts = [c.point for c in crossings_raw(f)]
    except DegenerateGeometry as e:
        report.add("front", "degenerate crossing: %s" % e)
        return report
    seen = {}
    for p in pts:
        key = (p[0] % 1, p[1] % 1)
        seen[key] = seen.get(key, 0) + 1
    for key, cnt in seen.items():
        if cnt > 1:
            report.add("front", "triple point at %s" % (key,))
    return report


def crossings_raw(f):
    """All transverse crossings among front segments (exact, unsorted)."""
    segs = list(f.all_segments())
    out = []
    for a_idx in range(len(segs)):
        for b_idx in range(a_idx + 1, len(segs)):
            ci1, i1, t1, a1, b1 = segs[a_idx]
            ci2, i2, t2, a2, b2 = segs[b_idx]
            if t1 != t2:
                continue
            if ci1 == ci2 and _adjacent_segments(f.components[ci1], i1, i2):
                continue
            try:
                hits = segment_meet_torus(a1, b1, a2, b2)
            except DegenerateGeometry:
                if ci1 == ci2 and i1 == i2:
                    continue
                raise
            for s, u, point in hits:
                out.append(_make_crossing(t1, point, (ci1, i1, a1, b1), (ci2, i2, a2, b2)))
    return out


def _adjacent_segments(comp, i1, i2):
    n = len(comp.vertices)
    return (i1 - i2) % n in (0, 1) or (i2 - i1) % n in (0, 1)


def _make_crossing(torus, point, seg1, seg2):
    ci1, i1, a1, b1 = seg1
    ci2, i2, a2, b2 = seg2
    s1 = slope(a1, b1)
    s2 = slope(a2, b2)
    if s1 == s2:
        raise DegenerateGeometry("crossing of equal slopes")
    if slope_closer_to_zero(s1, s2):
        over, under = seg1, seg2
    else:
        over, under = seg2, seg1
    d_over = sub(over[3], over[2])
    d_under = sub(under[3], under[2])
    sign = 1 if det(d_over, d_under) > 0 else -1
    return Crossing(torus, point, (over[0], over[1]), (under[0], under[1]), sign)


def crossings(f):
    """Transverse double points with depth and sign, canonically ordered."""
    out = crossings_raw(f)
    out.sort(key=lambda c: (c.torus, c.point[0] % 1, c.point[1] % 1, c.over, c.under))
    return out


def cusp_counts(f):
    """(D, U): cusps traversed downward and upward."""
    down = up = 0
    for comp in f.components:
        for i, v in enumerate(comp.vertices):
            if v.kind != CUSP:
                continue
            prev_pt, next_pt = comp.neighbor_points(i)
            if cusp_direction(prev_pt, v.point, next_pt) == "down":
                down += 1
            else:
                up += 1
    return down, up


def lk_binding(f):
    """Signed crossings of the horizontal curve t = 0, +1 when t increases."""
    total = 0
    for ci, i, torus, a, b in f.all_segments():
        for pt in (a, b):
            if pt[1] % 1 == 0:
                raise InvalidInput("front vertex on t=0; perturb input")
        for _, direction in integer_crossings(a[1], b[1]):
            total += direction
    return total


def trace_crossings(d, f):
    """Transverse crossings of the front with the labeled trace curves.

    Yields (pair_index, sign, t_mod) per crossing, the sign being +1
    when the front crosses the oriented trace curve from its left to
    its right.
    """
    trace_segs = []
    for pi, side, curve in d.curves():
        orient = curve_orientation(side)
        for _, a, b in curve.segments():
            trace_segs.append((curve.torus, pi, orient, a, b))
    out = []
    for ci, i, torus, a, b in f.all_segments():
        for tt, pi, orient, q1, q2 in trace_segs:
            if tt != torus:
                continue
            # degenerate contacts are teleport junctions on valid fronts
            hits = segment_meet_torus(a, b, q1, q2, skip_degenerate=True)
            for s, u, point in hits:
                front_dir = sub(b, a)
                trace_dir = sub(q2, q1)
                if orient < 0:
                    trace_dir = (-trace_dir[0], -trace_dir[1])
                sign = 1 if det(front_dir, trace_dir) > 0 else -1
                out.append((pi, sign, point[1] % 1, (torus, point[0] % 1, point[1] % 1)))
    return out


def cylinder_class(d, f, labeled=None):
    """Unreduced signed label sum over trace crossings (class in the cylinder)."""
    report = validate_front(d, f)
    report.raise_if_invalid("front")
    _require_no_page_crossings(f)
    if labeled is None:
        labeled = propagate_labels(d)
    k = d.k
    coeffs = [0] * k
    for pi, sign, t_mod, _ in trace_crossings(d, f):
        lab = labeled.pair_label_at(pi, t_mod)
        for j in range(k):
            coeffs[j] += sign * lab.coeffs[j]
    return tuple(coeffs)


def front_class(d, f, group=None, labeled=None):
    """The class of the front in H_1(M), via the label counting rule."""
    if labeled is None:
        labeled = propagate_labels(d)
    if group is None:
        group = h1_presentation(d, labeled)
    vec = cylinder_class(d, f, labeled)
    return group.reduce(vec)


def _require_no_page_crossings(f):
    for ci, i, torus, a, b in f.all_segments():
        if a[1] % 1 == 0 or b[1] % 1 == 0:
            raise InvalidInput("front vertex on t=0; perturb input")
        if integer_crossings(a[1], b[1]):
            raise InvalidInput(
                "front crosses the page t=0; not contained in the cylinder"
            )
