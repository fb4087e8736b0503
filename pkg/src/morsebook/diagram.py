"""Morse diagrams: binding tori decorated with paired trace curves.

A diagram records, for each index-1 handle of the page, the pair of
curves traced on the boundary tori by the two co-core flowlines, with
handle slides appearing as teleport events that break one curve and
re-attach it across another pair.  Homology labels are propagated up
the t-coordinate and assembled into a presentation of H_1 of the
ambient manifold.
"""

from __future__ import annotations

from fractions import Fraction

from .abelian import AbelianGroup
from .geometry import (
    DegenerateGeometry,
    eval_piecewise,
    integer_crossings,
    param_at_value,
    segment_meet_torus,
)
from .validation import ValidationReport

PLUS = "plus"
MINUS = "minus"

# Sign of a trace strand crossing an upward vertical line while moving in
# +x, for an up-oriented curve.  Calibrated once against the annulus
# example (left edge difference = -A for the left-handed twist fixture).
LINE_CROSSING_SIGN = 1


class TraceCurve:
    """One co-core trace: strands of strictly increasing t on one torus."""

    def __init__(self, torus, strands):
        self.torus = int(torus)
        self.strands = [
            [(Fraction(x), Fraction(t)) for (x, t) in strand] for strand in strands
        ]

    @property
    def start(self):
        return self.strands[0][0]

    @property
    def end(self):
        return self.strands[-1][-1]

    def segments(self):
        for si, strand in enumerate(self.strands):
            for a, b in zip(strand, strand[1:]):
                yield (si, a, b)

    def x_at(self, t):
        """x on the lifted curve at page parameter t (within one strand)."""
        for strand in self.strands:
            if strand[0][1] <= t <= strand[-1][1]:
                return eval_piecewise(strand, t)
        raise ValueError("t=%s not covered by a single strand" % (t,))


class Teleport:
    """A handle slide: one curve of the pair breaks across a target pair."""

    def __init__(self, t, side, target_pair, target_side, orientation_sign):
        self.t = Fraction(t)
        self.side = side
        self.target_pair = int(target_pair)
        self.target_side = target_side
        self.orientation_sign = int(orientation_sign)


class TracePair:
    def __init__(self, pair_id, plus, minus, teleports=()):
        self.id = int(pair_id)
        self.plus = plus
        self.minus = minus
        self.teleports = list(teleports)

    def curve(self, side):
        return self.plus if side == PLUS else self.minus


def curve_orientation(side):
    """Vertical orientation: the plus curve points up, the minus down."""
    return 1 if side == PLUS else -1


class MorseDiagram:
    """The combinatorial presentation of an open book with Morse structure."""

    def __init__(self, binding_count, trace_pairs):
        self.binding_count = int(binding_count)
        self.trace_pairs = list(trace_pairs)

    @property
    def k(self):
        return len(self.trace_pairs)

    def pair_index(self, pair_id):
        for i, p in enumerate(self.trace_pairs):
            if p.id == pair_id:
                return i
        raise KeyError("no trace pair with id %r" % (pair_id,))

    def curves(self):
        """All (pair_index, side, curve) triples."""
        for i, pair in enumerate(self.trace_pairs):
            yield (i, PLUS, pair.plus)
            yield (i, MINUS, pair.minus)

    def events(self):
        """All teleport events as records sorted by t."""
        evs = []
        for i, pair in enumerate(self.trace_pairs):
            for tp in pair.teleports:
                evs.append(
                    Event(
                        t=tp.t,
                        slider=(i, tp.side),
                        target=(self.pair_index(tp.target_pair), tp.target_side),
                        sign=tp.orientation_sign,
                    )
                )
        evs.sort(key=lambda e: e.t)
        return evs


class Event:
    def __init__(self, t, slider, target, sign):
        self.t = t
        self.slider = slider  # (pair_index, side)
        self.target = target  # (pair_index, exit side)
        self.sign = sign

    @property
    def target_entry(self):
        i, side = self.target
        return (i, MINUS if side == PLUS else PLUS)


def validate_diagram(d):
    """Check every MorseDiagram invariant; report violations, never raise."""
    report = ValidationReport()
    if d.binding_count < 1:
        report.add("diagram", "binding_count must be positive")
    ids = [p.id for p in d.trace_pairs]
    if len(set(ids)) != len(ids):
        report.add("diagram", "duplicate trace pair ids")

    for i, pair in enumerate(d.trace_pairs):
        for side in (PLUS, MINUS):
            loc = "pair %d %s" % (pair.id, side)
            curve = pair.curve(side)
            if not (0 <= curve.torus < d.binding_count):
                report.add(loc, "torus index out of range")
            if not curve.strands or any(len(s) < 2 for s in curve.strands):
                report.add(loc, "curve needs strands of at least two vertices")
                continue
            for strand in curve.strands:
                for (x1, t1), (x2, t2) in zip(strand, strand[1:]):
                    if t2 <= t1:
                        report.add(loc, "t not strictly increasing along a strand")
            if curve.start[1] != 0:
                report.add(loc, "curve must start at t=0")
            if curve.end[1] != 1:
                report.add(loc, "curve must end at t=1")
            if (curve.end[0] - curve.start[0]) % 1 != 0:
                report.add(loc, "trace curve does not close up")
            for strand in curve.strands:
                for x, t in strand:
                    if x % 1 == 0:
                        report.add(loc, "vertex on the left-edge seam; perturb")

    events = d.events()
    ts = [e.t for e in events]
    if len(set(ts)) != len(ts):
        report.add("diagram", "two handle slides share a t-value")
    for e in events:
        if not (0 < e.t < 1):
            report.add("teleport", "event t must lie strictly inside (0,1)")
        if e.slider[0] == e.target[0]:
            report.add("teleport", "a pair cannot slide across itself")

    # strand breaks must match teleport events one-to-one
    for i, pair in enumerate(d.trace_pairs):
        for side in (PLUS, MINUS):
            curve = pair.curve(side)
            loc = "pair %d %s" % (pair.id, side)
            break_ts = []
            for s1, s2 in zip(curve.strands, curve.strands[1:]):
                if s1[-1][1] != s2[0][1]:
                    report.add(loc, "strand break with mismatched t")
                break_ts.append(s1[-1][1])
            event_ts = sorted(tp.t for tp in pair.teleports if tp.side == side)
            if sorted(break_ts) != event_ts:
                report.add(loc, "strand breaks do not match teleport events")

    if not report.ok:
        return report

    # teleport coincidences: exit on the target-side curve, entry on its partner
    for i, pair in enumerate(d.trace_pairs):
        for tp in pair.teleports:
            loc = "pair %d teleport t=%s" % (pair.id, tp.t)
            slider = pair.curve(tp.side)
            strand_idx = None
            for si, strand in enumerate(slider.strands[:-1]):
                if strand[-1][1] == tp.t:
                    strand_idx = si
                    break
            if strand_idx is None:
                report.add(loc, "sliding curve has no break at event t")
                continue
            exit_pt = slider.strands[strand_idx][-1]
            entry_pt = slider.strands[strand_idx + 1][0]
            try:
                tgt_pair = d.trace_pairs[d.pair_index(tp.target_pair)]
            except KeyError:
                report.add(loc, "teleport target pair does not exist")
                continue
            exit_curve = tgt_pair.curve(tp.target_side)
            entry_curve = tgt_pair.curve(MINUS if tp.target_side == PLUS else PLUS)
            if exit_curve.torus != slider.torus or entry_curve.torus != slider.torus:
                report.add(loc, "teleport target on a different torus")
                continue
            try:
                if (exit_curve.x_at(tp.t) - exit_pt[0]) % 1 != 0:
                    report.add(loc, "exit point not on the target trace curve")
                if (entry_curve.x_at(tp.t) - entry_pt[0]) % 1 != 0:
                    report.add(loc, "entry point not on the partner trace curve")
            except ValueError:
                report.add(loc, "target curve broken at event t")
            want = 1 if curve_orientation(tp.side) == curve_orientation(tp.target_side) else -1
            if tp.orientation_sign != want:
                report.add(loc, "orientation sign inconsistent with curve orientations")

    # disjointness: distinct curves meet only at teleport contact points
    contacts = _teleport_contacts(d)
    curves = list(d.curves())
    for a in range(len(curves)):
        for b in range(a, len(curves)):
            i1, s1, c1 = curves[a]
            i2, s2, c2 = curves[b]
            if c1.torus != c2.torus:
                continue
            segs1 = list(c1.segments())
            segs2 = list(c2.segments())
            for n1, (si1, p1, p2) in enumerate(segs1):
                for n2, (si2, q1, q2) in enumerate(segs2):
                    if a == b and n2 <= n1:
                        continue
                    if a == b and n2 == n1 + 1:
                        continue  # consecutive segments share a vertex
                    if a == b and n1 == 0 and n2 == len(segs1) - 1:
                        continue  # cyclically adjacent through the t=1 closure
                    try:
                        hits = segment_meet_torus(p1, p2, q1, q2)
                    except DegenerateGeometry:
                        pt = (p1, p2, q1, q2)
                        if not _is_contact(contacts, c1.torus, pt):
                            report.add(
                                "pair %d/%d" % (d.trace_pairs[i1].id, d.trace_pairs[i2].id),
                                "trace curves touch degenerately away from teleports",
                            )
                        continue
                    if hits:
                        report.add(
                            "pair %d/%d" % (d.trace_pairs[i1].id, d.trace_pairs[i2].id),
                            "trace curves cross transversally",
                        )
    return report


def _teleport_contacts(d):
    pts = set()
    for pair in d.trace_pairs:
        for tp in pair.teleports:
            slider = pair.curve(tp.side)
            for s1, s2 in zip(slider.strands, slider.strands[1:]):
                if s1[-1][1] == tp.t:
                    pts.add((slider.torus, s1[-1][0] % 1, tp.t % 1))
                    pts.add((slider.torus, s2[0][0] % 1, tp.t % 1))
    return pts


def _is_contact(contacts, torus, segs):
    for seg in segs:
        if (torus, seg[0] % 1, seg[1] % 1) in contacts:
            return True
    return False


class LabelVector:
    """Integer combination of the core generators, plus an optional P_i marker."""

    __slots__ = ("coeffs", "marker")

    def __init__(self, coeffs, marker=None):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.marker = marker

    @classmethod
    def unit(cls, k, j):
        return cls(tuple(1 if i == j else 0 for i in range(k)))

    @classmethod
    def zero(cls, k, marker=None):
        return cls((0,) * k, marker)

    def plus(self, other, scale=1):
        if self.marker is not None and other.marker is not None:
            raise ValueError("cannot add two marked labels")
        marker = self.marker if self.marker is not None else other.marker
        return LabelVector(
            tuple(a + scale * b for a, b in zip(self.coeffs, other.coeffs)), marker
        )

    def minus(self, other):
        if self.marker != other.marker:
            raise ValueError("marker mismatch in label difference")
        return LabelVector(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)), None
        )

    def __eq__(self, other):
        return (
            isinstance(other, LabelVector)
            and self.coeffs == other.coeffs
            and self.marker == other.marker
        )

    def __hash__(self):
        return hash((self.coeffs, self.marker))

    def __repr__(self):
        if self.marker is None:
            return "LabelVector%r" % (self.coeffs,)
        return "LabelVector(%r, P%d)" % (self.coeffs, self.marker)


class LabeledDiagram:
    """A Morse diagram with propagated trace-curve and edge labels.

    ``pair_labels``: per pair, list of (t_from, t_to, LabelVector), the
    common label of both curves of the pair on that t-range.
    ``edge_labels``: per torus, list of (t_from, t_to, LabelVector with
    P marker).  ``edge_diffs``: top minus bottom label per torus.
    """

    def __init__(self, diagram, pair_labels, edge_labels):
        self.diagram = diagram
        self.pair_labels = pair_labels
        self.edge_labels = edge_labels

    def pair_label_at(self, pair_index, t):
        for t0, t1, lab in self.pair_labels[pair_index]:
            if t0 <= t < t1:
                return lab
        return self.pair_labels[pair_index][-1][2]

    def top_label(self, pair_index):
        return self.pair_labels[pair_index][-1][2]

    @property
    def edge_diffs(self):
        return [
            spans[-1][2].minus(spans[0][2]) for spans in self.edge_labels
        ]

    def curve_intervals(self, pair_index, side):
        """Label intervals of one curve, cut at breaks and trivalent points."""
        d = self.diagram
        curve = d.trace_pairs[pair_index].curve(side)
        cuts = set()
        for e in d.events():
            if e.slider == (pair_index, side):
                cuts.add(e.t)
            if e.target == (pair_index, side) or e.target_entry == (pair_index, side):
                cuts.add(e.t)
        ts = [Fraction(0)] + sorted(cuts) + [Fraction(1)]
        return [
            (t0, t1, self.pair_label_at(pair_index, t0))
            for t0, t1 in zip(ts, ts[1:])
            if t0 != t1
        ]


def propagate_labels(d):
    """Run the teleport and edge label rules up the diagram.

    The sliding curve keeps its label; the crossed pair's label gains
    (orientation sign) times the slider's label above the event.  Left
    edges start at P_i and change by the signed label of each trace
    strand crossing the seam, the sign being the transverse crossing
    sign of the oriented curve with the upward edge.
    """
    report = validate_diagram(d)
    report.raise_if_invalid("diagram")
    k = d.k
    current = [LabelVector.unit(k, j) for j in range(k)]
    histories = [[(Fraction(0), None, current[j])] for j in range(k)]

    for e in d.events():
        tgt = e.target[0]
        new_label = current[tgt].plus(current[e.slider[0]], e.sign)
        histories[tgt][-1] = (histories[tgt][-1][0], e.t, current[tgt])
        histories[tgt].append((e.t, None, new_label))
        current[tgt] = new_label

    pair_labels = []
    for j in range(k):
        spans = [
            (t0, t1 if t1 is not None else Fraction(1), lab)
            for (t0, t1, lab) in histories[j]
        ]
        pair_labels.append(spans)

    # seam crossings, per torus, in t order
    crossings = [[] for _ in range(d.binding_count)]
    for pi, side, curve in d.curves():
        orient = curve_orientation(side)
        for _, a, b in curve.segments():
            for n, direction in integer_crossings(a[0], b[0]):
                s = param_at_value(a[0], b[0], Fraction(n))
                t_c = a[1] + s * (b[1] - a[1])
                sign = LINE_CROSSING_SIGN * orient * direction
                crossings[curve.torus].append((t_c, sign, pi))

    edge_labels = []
    for torus in range(d.binding_count):
        label = LabelVector.zero(k, marker=torus)
        spans = [(Fraction(0), None, label)]
        for t_c, sign, pi in sorted(crossings[torus]):
            inc = _label_at(histories[pi], t_c)
            new = label.plus(inc, sign)
            spans[-1] = (spans[-1][0], t_c, label)
            spans.append((t_c, None, new))
            label = new
        spans = [
            (t0, t1 if t1 is not None else Fraction(1), lab) for (t0, t1, lab) in spans
        ]
        edge_labels.append(spans)

    return LabeledDiagram(d, pair_labels, edge_labels)


def _label_at(history, t):
    lab = history[0][2]
    for t0, t1, label in history:
        if t0 <= t:
            lab = label
    return lab


def vertical_line_class_sum(labeled, torus, x_line):
    """Signed label sum of trace-curve crossings with a vertical line.

    The line {x = x_line} on the given torus is counted against every
    oriented, labeled trace curve with the same sign rule as the left
    edge; used for the index-1 link classes.
    """
    d = labeled.diagram
    total = LabelVector.zero(d.k)
    for pi, side, curve in d.curves():
        if curve.torus != torus:
            continue
        orient = curve_orientation(side)
        for _, a, b in curve.segments():
            for n, direction in integer_crossings(a[0] - x_line, b[0] - x_line):
                s = param_at_value(a[0], b[0], x_line + Fraction(n))
                t_c = a[1] + s * (b[1] - a[1])
                lab = labeled.pair_label_at(pi, t_c)
                total = total.plus(lab, LINE_CROSSING_SIGN * orient * direction)
    return total


def h1_presentation(d, labeled=None):
    """H_1 of the ambient manifold, presented on the core generators.

    Relations: for each pair, its top label minus its generator (the
    monodromy closure of the dual core class), plus all pairwise
    differences of edge label changes between binding components.
    """
    if labeled is None:
        labeled = propagate_labels(d)
    k = d.k
    relations = []
    for j in range(k):
        top = labeled.top_label(j)
        rel = top.minus(LabelVector.unit(k, j))
        relations.append(rel.coeffs)
    diffs = labeled.edge_diffs
    for i in range(len(diffs)):
        for j in range(i + 1, len(diffs)):
            relations.append(diffs[i].minus(diffs[j]).coeffs)
    relations = [r for r in relations if any(r)]
    return AbelianGroup(k, relations)


def reduce_class(group, vector):
    """Canonical coordinates of an integer vector in the presented group."""
    return group.reduce(vector)
