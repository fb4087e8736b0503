"""Built-in diagrams and fronts reproducing the worked examples.

Each fixture is constructed in exact rational coordinates and is the
reference input for the acceptance suite: the disc-page three-sphere,
the annulus open book with one left-handed twist, the once-punctured
torus book with a handle slide followed by a boundary-parallel twist,
and the two-front linking example drawn on the latter diagram.
"""

from __future__ import annotations

from fractions import Fraction as F

from .diagram import MINUS, PLUS, MorseDiagram, Teleport, TraceCurve, TracePair
from .front import CUSP, ENTER, EXIT, PLAIN, TELEPORT, FrontComponent, FrontProjection, Vertex


def disk_s3():
    """Disc page: one binding component, no index-1 handles."""
    return MorseDiagram(binding_count=1, trace_pairs=[])


def disk_s3_unknot():
    """Standard Legendrian unknot front: an almond with two cusps."""
    comp = FrontComponent(
        0,
        [
            Vertex(F(1, 10), F(7, 10), CUSP),
            Vertex(F(3, 10), F(4, 10), PLAIN),
            Vertex(F(5, 10), F(3, 10), CUSP),
            Vertex(F(3, 10), F(6, 10), PLAIN),
        ],
    )
    return FrontProjection([comp])


def fig6_annulus():
    """Annulus page, one left-handed boundary Dehn twist (S^3).

    The single pair's upward curve winds once around the binding on
    torus 0; its partner on torus 1 is vertical.  The left-edge label
    difference on torus 0 is -A.
    """
    plus = TraceCurve(0, [[(F(1, 2), F(0)), (F(-1, 2), F(1))]])
    minus = TraceCurve(1, [[(F(1, 2), F(0)), (F(1, 2), F(1))]])
    return MorseDiagram(binding_count=2, trace_pairs=[TracePair(1, plus, minus)])


def fig1_torus():
    """Once-punctured torus page: one handle slide, then a boundary twist.

    Pair 1 (label A) and pair 2 (label B) alternate around the binding.
    The downward curve of pair 1 slides across pair 2 at t=1/4 (exit on
    the upward curve, re-entry on the downward one), and all four
    curves ride a rigid -x rotation over [1/2, 1].  H_1 comes out as
    Z generated by B, with A dying.
    """
    a_plus = TraceCurve(
        0, [[(F(1, 8), F(0)), (F(1, 8), F(1, 2)), (F(-7, 8), F(1))]]
    )
    a_minus = TraceCurve(
        0,
        [
            [(F(5, 8), F(0)), (F(5, 8), F(1, 8)), (F(3, 8), F(1, 4))],
            [(F(7, 8), F(1, 4)), (F(5, 8), F(1, 2)), (F(-3, 8), F(1))],
        ],
    )
    b_plus = TraceCurve(
        0, [[(F(3, 8), F(0)), (F(3, 8), F(1, 2)), (F(-5, 8), F(1))]]
    )
    b_minus = TraceCurve(
        0, [[(F(7, 8), F(0)), (F(7, 8), F(1, 2)), (F(-1, 8), F(1))]]
    )
    pair_a = TracePair(
        1,
        a_plus,
        a_minus,
        teleports=[Teleport(F(1, 4), MINUS, 2, PLUS, -1)],
    )
    pair_b = TracePair(2, b_plus, b_minus)
    return MorseDiagram(binding_count=1, trace_pairs=[pair_a, pair_b])


def fig5_diagram():
    """The linking example reuses the punctured-torus diagram."""
    return fig1_torus()


def fig5_lambda():
    """The surface owner: null-homologous in the cylinder.

    Two teleport events through pair 1 (A) at t = 72/1024 and 80/1024
    bound a band in which both curves of the pair carry multiplicity
    of absolute value one.
    """
    t_lo = F(72, 1024)
    t_hi = F(80, 1024)
    comp = FrontComponent(
        0,
        [
            Vertex(F(10, 16), t_lo, TELEPORT, pair=1, side=MINUS, role=ENTER),
            Vertex(F(39, 64), F(85, 1024), CUSP),
            Vertex(F(10, 16), t_hi, TELEPORT, pair=1, side=MINUS, role=EXIT),
            Vertex(F(2, 16), t_hi, TELEPORT, pair=1, side=PLUS, role=ENTER),
            Vertex(F(9, 64), F(71, 1024), CUSP),
            Vertex(F(2, 16), t_lo, TELEPORT, pair=1, side=PLUS, role=EXIT),
        ],
    )
    return FrontProjection([comp])


def fig5_lambda_prime():
    """The probe front: generates H_1(M) and dives through the band.

    Oriented so that its crossings over the total resolution of the
    owner front sum to -1.
    """
    forward = FrontComponent(
        0,
        [
            Vertex(F(6, 16), F(92, 1024), TELEPORT, pair=2, side=PLUS, role=ENTER),
            Vertex(F(4, 16), F(124, 1024), CUSP),
            Vertex(F(10, 16), F(76, 1024), TELEPORT, pair=1, side=MINUS, role=EXIT),
            Vertex(F(2, 16), F(76, 1024), TELEPORT, pair=1, side=PLUS, role=ENTER),
            Vertex(F(3, 16), F(68, 1024), CUSP),
            Vertex(F(1, 16), F(86, 1024), PLAIN),
            Vertex(F(-2, 16), F(92, 1024), TELEPORT, pair=2, side=MINUS, role=EXIT),
        ],
    )
    return FrontProjection([forward.reversed()])


def disk_s3_lagr():
    """Lagrangian projection of the standard unknot: tb = -1, rot = 0.

    A counterclockwise round loop with one clockwise curl; the curl's
    vertical strand passes over, making the single crossing negative.
    """
    from .lagrangian import LagrangianDiagram, PageModel

    page = PageModel((0, 0), 8)
    poly = [
        (0, 4),
        (-4, 0),
        (0, -4),
        (1, -3),
        (4, -3),
        (4, -5),
        (2, -5),
        (2, -2),
        (5, -2),
        (5, 2),
    ]
    diagram = LagrangianDiagram([poly], [{"over": [0, 6], "under": [0, 3]}])
    return page, diagram


def fig5_expected_multiplicities():
    """Hand-propagated interval multiplicities for the owner front.

    Keyed by (pair id, side); each value lists (t_from, t_to, m).
    """
    t_lo = F(72, 1024)
    t_hi = F(80, 1024)
    return {
        (1, PLUS): [(F(0), t_lo, 0), (t_lo, t_hi, 1), (t_hi, F(1), 0)],
        (1, MINUS): [(F(0), t_lo, 0), (t_lo, t_hi, -1), (t_hi, F(1), 0)],
        (2, PLUS): [(F(0), F(1), 0)],
        (2, MINUS): [(F(0), F(1), 0)],
    }
