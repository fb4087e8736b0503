"""Local rewrites of front projections: the front Reidemeister moves.

Every move is a deterministic pattern-to-replacement rewrite at a
user-addressed site, built in exact rational coordinates and checked
for validity afterwards.  Quantitative contracts: r1 inserts a kink
with one up and one down cusp and a single new crossing; k2 wraps the
front once around the binding direction, trading one horizontal curve
of the resolution against a same-direction cusp pair; b1 folds the
front once around the page direction, trading one binding crossing
against a same-direction cusp pair; cusp_trace passes a cusp across a
trace curve; s1 nudges a cusp tip within its face; k3 exchanges a cusp
poked through a trace curve for a cusp teleported behind the partner
curve.  stabilize inserts a same-direction cusp pair and is the one
move that changes the Legendrian class.

Sites are never searched for: the caller addresses a component, a
segment or vertex, and parameters.  A site that does not match a
move's input pattern raises PatternNotFound.
"""

from __future__ import annotations

from fractions import Fraction

from .diagram import MINUS, PLUS
from .front import (
    CUSP,
    ENTER,
    EXIT,
    PLAIN,
    TELEPORT,
    FrontComponent,
    FrontProjection,
    Vertex,
    validate_front,
)
from .geometry import DegenerateGeometry, branch_side, cusp_direction, det
from .validation import InvalidInput


class PatternNotFound(InvalidInput):
    """The addressed site does not match the move's input pattern."""


MOVE_NAMES = ("r1", "r1_inv", "stabilize", "cusp_trace", "s1", "k2", "b1", "k3")

# moves whose instances are Legendrian isotopies; stabilize changes the
# knot and is excluded from the invariance suites
ISOTOPY_MOVES = ("r1", "r1_inv", "cusp_trace", "s1", "k2", "b1", "k3")


def apply_move(d, f, move, site):
    """Apply one named move at the given site; the output is re-validated."""
    if move not in MOVE_NAMES:
        raise InvalidInput("unknown move %r" % (move,))
    out = globals()["_move_" + move](d, f, dict(site))
    report = validate_front(d, out)
    if not report.ok:
        raise PatternNotFound(
            "move %s yields an invalid front here: %s" % (move, report.issues[0][1])
        )
    return out


def apply_script(d, f, script):
    """Apply an ordered list of {move, site} records."""
    cur = f
    for step in script:
        cur = apply_move(d, cur, step["move"], step.get("site", {}))
    return cur


# --------------------------------------------------------------- helpers


def _replace_component(f, ci, comp):
    comps = list(f.components)
    comps[ci] = comp
    return FrontProjection(comps)


def _segment_endpoints(comp, si):
    n = len(comp.vertices)
    a = comp.vertices[si]
    b = comp.vertices[(si + 1) % n]
    if a.kind == TELEPORT and a.role == EXIT:
        raise PatternNotFound("site addresses a teleport jump, not a segment")
    b_pt = b.point
    if si == n - 1:
        b_pt = (b.x + comp.closure[0], b.t + comp.closure[1])
    return a.point, b_pt


def _insert_vertices(comp, si, new_vertices, shift=(0, 0)):
    """Splice vertices in after vertex si, shifting the rest of the lift."""
    out = []
    for i, v in enumerate(comp.vertices):
        if i <= si:
            out.append(v)
        else:
            out.append(v.shifted(shift[0], shift[1]))
        if i == si:
            out.extend(new_vertices)
    closure = (comp.closure[0] + shift[0], comp.closure[1] + shift[1])
    return FrontComponent(comp.torus, out, closure)


def _site_point(comp, site, key="u"):
    si = int(site["segment"])
    u = Fraction(site.get(key, Fraction(1, 2)))
    if not (0 < u < 1):
        raise PatternNotFound("parameter %s must lie strictly inside the segment" % key)
    a, b = _segment_endpoints(comp, si)
    p = (a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1]))
    return si, u, a, b, p


def _box_is_clear(d, f, torus, x_lo, x_hi, t_lo, t_hi, skip=()):
    """True when no trace or front segment meets the open box.

    Comparison is modulo the torus lattice; ``skip`` lists (component,
    segment) pairs belonging to the site itself.
    """

    def hits(a, b):
        alo, ahi = min(a[0], b[0]), max(a[0], b[0])
        tlo, thi = min(a[1], b[1]), max(a[1], b[1])
        import math

        for nx in range(math.floor(x_lo - ahi), math.ceil(x_hi - alo) + 1):
            for nt in range(math.floor(t_lo - thi), math.ceil(t_hi - tlo) + 1):
                pa = (a[0] + nx, a[1] + nt)
                pb = (b[0] + nx, b[1] + nt)
                if max(pa[0], pb[0]) <= x_lo or min(pa[0], pb[0]) >= x_hi:
                    continue
                if max(pa[1], pb[1]) <= t_lo or min(pa[1], pb[1]) >= t_hi:
                    continue
                if _segment_meets_box(pa, pb, x_lo, x_hi, t_lo, t_hi):
                    return True
        return False

    for _, _, curve in d.curves():
        if curve.torus != torus:
            continue
        for _, a, b in curve.segments():
            if hits(a, b):
                return False
    for ci, comp in enumerate(f.components):
        if comp.torus != torus:
            continue
        for si, a, b in comp.segments():
            if (ci, si) in skip:
                continue
            if hits(a, b):
                return False
        for vi, v in enumerate(comp.vertices):
            px, pt = v.x, v.t
            keep = any((ci, s) in skip for s in ((vi - 1) % len(comp.vertices), vi))
            if keep:
                continue
            for nx in (-1, 0, 1):
                for nt in (-1, 0, 1):
                    if x_lo < px + nx < x_hi and t_lo < pt + nt < t_hi:
                        return False
    return True


def _segment_meets_box(a, b, x_lo, x_hi, t_lo, t_hi):
    """Closed segment versus open axis box, exactly."""
    for p in (a, b):
        if x_lo < p[0] < x_hi and t_lo < p[1] < t_hi:
            return True
    corners = [(x_lo, t_lo), (x_hi, t_lo), (x_hi, t_hi), (x_lo, t_hi)]
    for c1, c2 in zip(corners, corners[1:] + corners[:1]):
        d1 = (b[0] - a[0], b[1] - a[1])
        d2 = (c2[0] - c1[0], c2[1] - c1[1])
        denom = det(d1, d2)
        w = (c1[0] - a[0], c1[1] - a[1])
        if denom == 0:
            continue
        s = Fraction(det(w, d2), denom)
        u = Fraction(det(w, d1), denom)
        if 0 <= s <= 1 and 0 < u < 1:
            return True
    return False


def _cusp_dir_at(comp, vi):
    prev_pt, next_pt = comp.neighbor_points(vi)
    return cusp_direction(prev_pt, comp.vertices[vi].point, next_pt)


# ------------------------------------------------------------------- r1
# Template in units of (h, h*|s|) around the insertion point; the kink
# carries one down cusp, one up cusp and one positive crossing with the
# strand just behind the insertion point.

_R1_V1 = (Fraction(1, 2), Fraction(-2))
_R1_V2 = (Fraction(-3, 2), Fraction(2))
_R1_Q = (Fraction(1), Fraction(-1))
_R1_X = (Fraction(-8, 5), Fraction(11, 10))
_R1_T = (Fraction(-21, 10), Fraction(21, 10))


def _move_r1(d, f, site):
    ci = int(site["component"])
    comp = f.components[ci]
    si, u, a, b, p = _site_point(comp, site)
    dx, dt = b[0] - a[0], b[1] - a[1]
    if dx <= 0 or dt >= 0:
        raise PatternNotFound("r1 wants a rightward strictly descending segment")
    s_abs = Fraction(-dt, dx)

    scales = (
        [Fraction(site["scale"])]
        if "scale" in site
        else [min(p[0] - a[0], b[0] - p[0]) / (4 * 2 ** k) for k in range(12)]
    )
    for h in scales:
        if h <= 0:
            continue
        span_lo, span_hi = p[0] + _R1_X[0] * h, p[0] + _R1_X[1] * h
        if not (a[0] < span_lo and span_hi < b[0]):
            continue
        if not _box_is_clear(
            d,
            f,
            comp.torus,
            span_lo,
            span_hi,
            p[1] + _R1_T[0] * h * s_abs,
            p[1] + _R1_T[1] * h * s_abs,
            skip={(ci, si)},
        ):
            continue

        def world(tpl):
            return (p[0] + tpl[0] * h, p[1] + tpl[1] * h * s_abs)

        verts = [
            Vertex(*p, PLAIN),
            Vertex(*world(_R1_V1), CUSP),
            Vertex(*world(_R1_V2), CUSP),
            Vertex(*world(_R1_Q), PLAIN),
        ]
        return _replace_component(f, ci, _insert_vertices(comp, si, verts))
    raise PatternNotFound("no clear room for the r1 kink at this site")


def _move_r1_inv(d, f, site):
    """Remove a kink: a plain-cusp-cusp-plain splice collapses to a segment."""
    ci = int(site["component"])
    comp = f.components[ci]
    i = int(site["vertex"])
    n = len(comp.vertices)
    if n < 6:
        raise PatternNotFound("component too small to carry a kink")
    if any((i + k) % n == 0 for k in range(1, 4)):
        raise PatternNotFound("kink wraps the list start; re-address the site")
    quad = [comp.vertices[(i + k) % n] for k in range(4)]
    if [v.kind for v in quad] != [PLAIN, CUSP, CUSP, PLAIN]:
        raise PatternNotFound("site is not a kink (plain, cusp, cusp, plain)")
    prev_v = comp.vertices[(i - 1) % n]
    next_v = comp.vertices[(i + 4) % n]
    p, q = quad[0].point, quad[3].point
    d1 = (q[0] - p[0], q[1] - p[1])
    d0 = (p[0] - prev_v.x, p[1] - prev_v.t)
    d2 = (next_v.x - q[0], next_v.t - q[1])
    if det(d0, d1) != 0 or det(d1, d2) != 0:
        raise PatternNotFound("kink endpoints are not collinear with the strand")
    out = [v for k, v in enumerate(comp.vertices) if not (0 <= (k - i) % n < 4)]
    return _replace_component(f, ci, FrontComponent(comp.torus, out, comp.closure))


# ----------------------------------------------------------- stabilize
# one template per cusp direction; neither introduces a crossing

_STAB_TPL = {
    "down": [(Fraction(1), Fraction(-4)), (Fraction(-1), Fraction(-7, 2)), (Fraction(8), Fraction(-8))],
    "up": [(Fraction(1), Fraction(-1, 4)), (Fraction(7, 8), Fraction(1, 2)), (Fraction(9, 4), Fraction(-9, 4))],
}


def _move_stabilize(d, f, site):
    """Insert a same-direction cusp pair: variant 'down' (default) or 'up'."""
    ci = int(site["component"])
    comp = f.components[ci]
    variant = site.get("variant", "down")
    if variant not in _STAB_TPL:
        raise PatternNotFound("stabilize variant must be 'down' or 'up'")
    si, u, a, b, p = _site_point(comp, site)
    dx, dt = b[0] - a[0], b[1] - a[1]
    if dx <= 0 or dt >= 0:
        raise PatternNotFound("stabilize wants a rightward strictly descending segment")
    s_abs = Fraction(-dt, dx)
    v1, v2, tq = _STAB_TPL[variant]
    x_ext = [Fraction(0), v1[0], v2[0], tq[0]]
    t_ext = [Fraction(0), v1[1], v2[1], tq[1]]
    margin = Fraction(1, 10)

    scales = (
        [Fraction(site["scale"])]
        if "scale" in site
        else [min(p[0] - a[0], b[0] - p[0]) / (16 * 2 ** k) for k in range(12)]
    )
    for h in scales:
        if h <= 0:
            continue
        lo = p[0] + (min(x_ext) - margin) * h
        hi = p[0] + (max(x_ext) + margin) * h
        if not (a[0] < lo and hi < b[0]):
            continue
        if not _box_is_clear(
            d, f, comp.torus, lo, hi,
            p[1] + (min(t_ext) - margin) * h * s_abs,
            p[1] + (max(t_ext) + margin) * h * s_abs,
            skip={(ci, si)},
        ):
            continue

        def world(tpl):
            return (p[0] + tpl[0] * h, p[1] + tpl[1] * h * s_abs)

        verts = [Vertex(*p, PLAIN)]
        verts += [Vertex(*world(v1), CUSP), Vertex(*world(v2), CUSP)]
        verts.append(Vertex(*world(tq), PLAIN))
        return _replace_component(f, ci, _insert_vertices(comp, si, verts))
    raise PatternNotFound("no clear room for the stabilization at this site")


# ----------------------------------------------------------- cusp_trace


def _move_cusp_trace(d, f, site):
    """Pass a cusp tip across a trace curve (the curve must be vertical
    over the cusp's t-extent and the swept strip otherwise clear)."""
    ci = int(site["component"])
    vi = int(site["vertex"])
    comp = f.components[ci]
    v = comp.vertices[vi]
    if v.kind != CUSP:
        raise PatternNotFound("site vertex is not a cusp")
    pair = d.trace_pairs[d.pair_index(site["pair"])]
    side = site["side"]
    curve = pair.curve(side)
    if curve.torus != comp.torus:
        raise PatternNotFound("target trace curve lives on another torus")
    prev_pt, next_pt = comp.neighbor_points(vi)
    t_lo = min(prev_pt[1], v.t, next_pt[1])
    t_hi = max(prev_pt[1], v.t, next_pt[1])
    x_line = _constant_x_on(curve, (t_lo, t_hi))
    tip_side = branch_side(v.point, prev_pt)
    gap = _gap_to_line(v.x, x_line)
    if gap is None:
        raise PatternNotFound("cusp tip sits on the trace curve")
    dist, direction = gap
    if direction == tip_side:
        raise PatternNotFound("cusp points away from the trace curve")
    depth = Fraction(site["depth"]) if "depth" in site else dist / 2
    new_x = v.x - tip_side * (dist + depth)
    before = _cusp_dir_at(comp, vi)
    verts = list(comp.vertices)
    verts[vi] = Vertex(new_x, v.t, CUSP)
    out_comp = FrontComponent(comp.torus, verts, comp.closure)
    if _cusp_dir_at(out_comp, vi) != before:
        raise PatternNotFound("crossing would flip the cusp; change depth")
    return _replace_component(f, ci, out_comp)


def _constant_x_on(curve, t_span):
    span_lo = t_span[0] % 1
    span_hi = span_lo + (t_span[1] - t_span[0])
    xs = set()
    for strand in curve.strands:
        for (x1, t1), (x2, t2) in zip(strand, strand[1:]):
            if t2 <= span_lo or t1 >= span_hi:
                continue
            if x1 != x2:
                raise PatternNotFound("trace curve is not vertical over the site band")
            xs.add(x1 % 1)
    if len(xs) != 1:
        raise PatternNotFound("trace curve is not constant over the site band")
    return xs.pop()


def _gap_to_line(x, x_line):
    delta = (x_line - x) % 1
    if delta == 0:
        return None
    if delta <= Fraction(1, 2):
        return (delta, 1)
    return (1 - delta, -1)


# ------------------------------------------------------------------- s1


def _move_s1(d, f, site):
    """Nudge a cusp tip along its pointing direction within its face."""
    ci = int(site["component"])
    vi = int(site["vertex"])
    comp = f.components[ci]
    v = comp.vertices[vi]
    if v.kind != CUSP:
        raise PatternNotFound("site vertex is not a cusp")
    prev_pt, _ = comp.neighbor_points(vi)
    tip_side = branch_side(v.point, prev_pt)
    depth = Fraction(site.get("depth", Fraction(1, 1024)))
    new_x = v.x - tip_side * depth
    before = _cusp_dir_at(comp, vi)
    verts = list(comp.vertices)
    verts[vi] = Vertex(new_x, v.t, CUSP)
    out_comp = FrontComponent(comp.torus, verts, comp.closure)
    if _cusp_dir_at(out_comp, vi) != before:
        raise PatternNotFound("nudge would flip the cusp; reduce depth")
    return _replace_component(f, ci, out_comp)


# ------------------------------------------------------------------- k2


def _move_k2(d, f, site):
    """Wrap the front once around the binding direction.

    Variant 'left' inserts an ascending leftward wrap (x-winding -1,
    two down cusps); 'right' a descending rightward wrap (+1, two up
    cusps).  The wrap teleports through each trace pair it meets and
    crosses the seam; it needs a clean horizontal band with all trace
    curves vertical across it, and a partner walk that meets every
    trace curve at most once (which also makes it land back at the
    detach position exactly).
    """
    ci = int(site["component"])
    comp = f.components[ci]
    variant = site.get("variant", "left")
    if variant not in ("left", "right"):
        raise PatternNotFound("k2 variant must be 'left' or 'right'")
    si, u, a, b, p = _site_point(comp, site)
    u2 = Fraction(site.get("u2", u + (1 - u) / 4))
    if not (u < u2 < 1):
        raise PatternNotFound("u2 must lie strictly between u and 1")
    q = (a[0] + u2 * (b[0] - a[0]), a[1] + u2 * (b[1] - a[1]))
    dx, dt = b[0] - a[0], b[1] - a[1]
    if dx <= 0 or dt >= 0:
        raise PatternNotFound("k2 wants a rightward strictly descending segment")
    s_abs = Fraction(-dt, dx)
    w = q[0] - p[0]

    if variant == "left":
        height = Fraction(site.get("band", min(s_abs, Fraction(1, 32)) / 8))
        if not height < s_abs:
            raise PatternNotFound("band must be flatter than the host segment")
        t_lo, t_hi = p[1] % 1, p[1] % 1 + height
    else:
        height = Fraction(site.get("band", (w * s_abs) * 2))
        if not (w * s_abs < height < s_abs):
            raise PatternNotFound("band height must sit between the chord drop and the slope")
        t_lo, t_hi = p[1] % 1 - height, p[1] % 1
    if not (0 < t_lo and t_hi < 1):
        raise PatternNotFound("band crosses the page t=0; choose another site")
    _require_clear_band(d, f, comp.torus, t_lo, t_hi, ci, si)
    stations = _vertical_stations(d, comp.torus, (t_lo, t_hi))
    sign = -1 if variant == "left" else 1
    eta = Fraction(site.get("overshoot", Fraction(1, 2 ** 14)))
    for x_st, _, _ in stations:
        if (x_st - p[0]) % 1 <= (q[0] - p[0] + eta) % 1:
            raise PatternNotFound("a trace curve foot sits between detach and attach")
    extra = Fraction(0) if variant == "left" else (w + eta)
    legs, end_lift, revisit = _partner_walk(p[0], stations, sign, extra)
    if revisit:
        raise PatternNotFound("partner walk revisits a trace curve; site ineligible")
    if (end_lift - p[0]) % 1 != (0 if variant == "left" else (w + eta) % 1):
        raise PatternNotFound("partner walk does not land at the detach position")

    total = sum(l for l, _ in legs)
    verts = []
    travelled = Fraction(0)
    for length, event in legs:
        travelled += length
        if event is None:
            continue
        lift_exit, pid, side, lift_enter, partner = event
        t_here = p[1] - sign * height * travelled / total
        verts.append(Vertex(lift_exit, t_here, TELEPORT, pair=pid, side=side, role=EXIT))
        verts.append(Vertex(lift_enter, t_here, TELEPORT, pair=pid, side=partner, role=ENTER))
    t_far = p[1] - sign * height

    if variant == "left":
        q_final = Vertex(end_lift + w, q[1], PLAIN)
        new_vertices = (
            [Vertex(p[0], p[1], CUSP)]
            + verts
            + [Vertex(end_lift, t_far, CUSP), q_final]
        )
        shift_x = (end_lift + w) - q[0]
    else:
        q_final = Vertex(end_lift - eta, q[1], CUSP)
        new_vertices = (
            [Vertex(p[0], p[1], PLAIN)]
            + verts
            + [Vertex(end_lift, t_far, CUSP), q_final]
        )
        shift_x = (end_lift - eta) - q[0]
    if shift_x % 1 != 0:
        raise AssertionError("k2 wrap shift is not integral")
    return _replace_component(
        f, ci, _insert_vertices(comp, si, new_vertices, (int(shift_x), 0))
    )


def _require_clear_band(d, f, torus, t_lo, t_hi, ci, si):
    # other front strands may cross the wrap transversally; only handle
    # slides inside the band break the construction
    for pair in d.trace_pairs:
        for tp in pair.teleports:
            if t_lo < tp.t < t_hi:
                raise PatternNotFound("a handle slide sits in the wrap band")


def _vertical_stations(d, torus, band):
    out = []
    for pair in d.trace_pairs:
        for side in (PLUS, MINUS):
            curve = pair.curve(side)
            if curve.torus != torus:
                continue
            xs = set()
            for strand in curve.strands:
                for (x1, t1), (x2, t2) in zip(strand, strand[1:]):
                    if t2 <= band[0] or t1 >= band[1]:
                        continue
                    if x1 != x2:
                        raise PatternNotFound("trace curve not vertical in the band")
                    xs.add(x1 % 1)
            if len(xs) != 1:
                raise PatternNotFound("trace curve not constant in the band")
            out.append((xs.pop(), pair.id, side))
    return out


def _partner_walk(start_lift, stations, sign, extra=Fraction(0)):
    """Walk around the torus once (plus ``extra``), teleporting through
    every trace curve met; returns (legs, final lift, revisit flag).

    Each leg is (length, event) where event is None for the final run
    or (exit lift, pair id, side, enter lift, partner side).
    """
    pos = {}
    for x, pid, side in stations:
        pos[(pid, side)] = x
    total = Fraction(1) + (extra if sign > 0 else Fraction(0))
    start_mod = start_lift % 1
    legs = []
    visited = set()
    travelled = Fraction(0)
    cur_mod = start_mod
    cur_lift = start_lift
    revisit = False
    while True:
        remaining = total - travelled
        gap_next = None
        best = None
        for x, pid, side in stations:
            g = ((cur_mod - x) % 1) if sign < 0 else ((x - cur_mod) % 1)
            if g == 0:
                g = Fraction(1)
            if gap_next is None or g < gap_next:
                gap_next = g
                best = (x, pid, side)
        if gap_next is None or gap_next >= remaining:
            cur_lift += sign * remaining
            legs.append((remaining, None))
            break
        travelled += gap_next
        cur_lift += sign * gap_next
        x, pid, side = best
        if (pid, side) in visited:
            revisit = True
        visited.add((pid, side))
        partner = MINUS if side == PLUS else PLUS
        px = pos.get((pid, partner))
        if px is None:
            raise PatternNotFound("partner curve lives on another torus")
        jump = ((cur_lift % 1) - px) % 1 if sign < 0 else (px - (cur_lift % 1)) % 1
        enter_lift = cur_lift - sign * 0 + (sign * jump if False else (-jump if sign < 0 else jump))
        enter_lift = cur_lift + (jump if sign > 0 else -jump)
        legs.append((gap_next, (cur_lift, pid, side, enter_lift, partner)))
        cur_lift = enter_lift
        cur_mod = px
    return legs, cur_lift, revisit


# ------------------------------------------------------------------- b1


def _move_b1(d, f, site):
    """Fold the front once around the page direction.

    Variant 'down' dives rightward through t=0 a full turn and climbs
    shallowly back onto the strand, adding two down cusps and lowering
    lk(B) by one; 'up' is the mirror (two up cusps, lk(B) + 1).  The
    dive crosses trace curves transversally; each pair is crossed with
    cancelling labels, so the front's class is unchanged.
    """
    ci = int(site["component"])
    comp = f.components[ci]
    variant = site.get("variant", "down")
    if variant not in ("down", "up"):
        raise PatternNotFound("b1 variant must be 'down' or 'up'")
    si, u, a, b, p = _site_point(comp, site)
    dx, dt = b[0] - a[0], b[1] - a[1]
    if dx <= 0 or dt >= 0:
        raise PatternNotFound("b1 wants a rightward strictly descending segment")
    s_abs = Fraction(-dt, dx)
    width = Fraction(site.get("width", Fraction(1, 64)))
    # keep the shallow leg flatter than the host so the re-entry cusp
    # direction matches the dive's
    sigma = Fraction(site.get("sigma", min(Fraction(1, 512), s_abs * width / 4)))
    u2_default = u + min((1 - u) / 16, sigma / (8 * -dt), width / (8 * dx))
    u2 = Fraction(site.get("u2", u2_default))
    if not (u < u2 < 1):
        raise PatternNotFound("u2 must lie strictly between u and 1")
    q = (a[0] + u2 * (b[0] - a[0]), a[1] + u2 * (b[1] - a[1]))
    w = q[0] - p[0]
    drop = p[1] - q[1]
    if width <= 4 * w:
        raise PatternNotFound("width must well exceed the strand chord at this site")
    if sigma <= 4 * drop:
        raise PatternNotFound("sigma must well exceed the strand drop at this site")
    if not (sigma < p[1] % 1 < 1):
        raise PatternNotFound("detach point too close to the page t=0")

    if variant == "down":
        # plain detach, steep dive right, tip cusp, shallow climb left
        # back onto the strand one page-turn lower
        new_vertices = [
            Vertex(p[0], p[1], PLAIN),
            Vertex(p[0] + width, p[1] - 1 - sigma, CUSP),
            Vertex(q[0], q[1] - 1, CUSP),
        ]
        shift = (0, -1)
    else:
        if not (0 < p[1] % 1 < 1 - sigma):
            raise PatternNotFound("detach point too close to the page t=1")
        # cusp detach, steep climb left, tip cusp, shallow dive right
        # back onto the strand one page-turn higher
        new_vertices = [
            Vertex(p[0], p[1], CUSP),
            Vertex(p[0] - width, p[1] + 1 + sigma, CUSP),
            Vertex(q[0], q[1] + 1, PLAIN),
        ]
        shift = (0, 1)
    return _replace_component(f, ci, _insert_vertices(comp, si, new_vertices, shift))


# ------------------------------------------------------------------- k3


def _move_k3(d, f, site):
    """Exchange a cusp poked through a trace curve for a teleported cusp.

    The site cusp's two incident segments must each cross the named
    trace curve exactly once, with both neighbour vertices on the far
    side; the replacement truncates the poke at the curve, teleports to
    the partner, reproduces the cusp there with the same direction, and
    teleports back.
    """
    ci = int(site["component"])
    vi = int(site["vertex"])
    comp = f.components[ci]
    v = comp.vertices[vi]
    if v.kind != CUSP:
        raise PatternNotFound("site vertex is not a cusp")
    pair = d.trace_pairs[d.pair_index(site["pair"])]
    side = site["side"]
    partner_side = MINUS if side == PLUS else PLUS
    curve = pair.curve(side)
    partner = pair.curve(partner_side)
    if curve.torus != comp.torus or partner.torus != comp.torus:
        raise PatternNotFound("trace pair does not live on the site torus")
    prev_pt, next_pt = comp.neighbor_points(vi)
    t_lo = min(prev_pt[1], v.t, next_pt[1])
    t_hi = max(prev_pt[1], v.t, next_pt[1])
    x_line = _constant_x_on(curve, (t_lo, t_hi))
    x_part = _constant_x_on(partner, (t_lo, t_hi))

    hit_in = _line_crossing(prev_pt, v.point, x_line)
    hit_out = _line_crossing(v.point, next_pt, x_line)
    if hit_in is None or hit_out is None:
        raise PatternNotFound("cusp branches do not both cross the trace curve")
    (xe1, te1) = hit_in
    (xe2, te2) = hit_out
    depth = abs(v.x - xe1)

    before = _cusp_dir_at(comp, vi)
    tip_side = branch_side(v.point, prev_pt)  # branches side; tip points -side
    for new_tip_side in (-tip_side, tip_side):
        # rebuild the poke behind the partner curve
        enter1_lift = x_part + (xe1 - xe1)  # partner lift at its own x
        tip_x = x_part - new_tip_side * depth
        cand = [
            Vertex(xe1, te1, TELEPORT, pair=pair.id, side=side, role=EXIT),
            Vertex(x_part, te1, TELEPORT, pair=pair.id, side=partner_side, role=ENTER),
            Vertex(tip_x, v.t, CUSP),
            Vertex(x_part, te2, TELEPORT, pair=pair.id, side=partner_side, role=EXIT),
            Vertex(xe2, te2, TELEPORT, pair=pair.id, side=side, role=ENTER),
        ]
        verts = list(comp.vertices)
        verts[vi: vi + 1] = cand
        out_comp = FrontComponent(comp.torus, verts, comp.closure)
        try:
            new_dir = _cusp_dir_at(out_comp, vi + 2)
        except DegenerateGeometry:
            continue
        if new_dir != before:
            continue
        out = _replace_component(f, ci, out_comp)
        if validate_front(d, out).ok:
            return out
    raise PatternNotFound("no direction-preserving teleported poke fits here")


def _line_crossing(a, b, x_line):
    """Where the segment crosses the vertical line x = x_line (mod 1)."""
    import math

    lo, hi = min(a[0], b[0]), max(a[0], b[0])
    hits = []
    for n in range(math.floor(lo - x_line), math.ceil(hi - x_line) + 1):
        xv = x_line + n
        if lo < xv < hi:
            s = Fraction(xv - a[0], b[0] - a[0])
            hits.append((xv, a[1] + s * (b[1] - a[1])))
    if len(hits) != 1:
        return None
    return hits[0]
