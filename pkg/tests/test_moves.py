from fractions import Fraction as F

import random

import pytest

from morsebook.fixtures import disk_s3, disk_s3_unknot, fig1_torus
from morsebook.front import CUSP, PLAIN, FrontComponent, FrontProjection, Vertex, cusp_counts, lk_binding
from morsebook.invariants import rot_front
from morsebook.moves import PatternNotFound, apply_move
from morsebook.validation import InvalidInput


def small_almond(d1=None):
    return FrontProjection(
        [
            FrontComponent(
                0,
                [
                    Vertex(F(3, 16), F(7, 100), CUSP),
                    Vertex(F(4, 16), F(5, 100), PLAIN),
                    Vertex(F(5, 16), F(3, 100), CUSP),
                    Vertex(F(4, 16), F(6, 100), PLAIN),
                ],
            )
        ]
    )


def test_r1_then_inverse_restores_bit_exactly():
    d = disk_s3()
    f = disk_s3_unknot()
    kinked = apply_move(d, f, "r1", {"component": 0, "segment": 0, "u": F(1, 3)})
    back = apply_move(d, kinked, "r1_inv", {"component": 0, "vertex": 1})
    orig = [(v.x, v.t, v.kind) for v in f.components[0].vertices]
    rest = [(v.x, v.t, v.kind) for v in back.components[0].vertices]
    assert orig == rest
    assert back.components[0].closure == f.components[0].closure


def test_r1_adds_one_up_one_down_and_one_positive_crossing():
    from morsebook.front import crossings

    d = disk_s3()
    f = disk_s3_unknot()
    out = apply_move(d, f, "r1", {"component": 0, "segment": 0, "u": F(1, 2)})
    d0, u0 = cusp_counts(f)
    d1, u1 = cusp_counts(out)
    assert (d1 - d0, u1 - u0) == (1, 1)
    found = crossings(out)
    assert len(found) == 1 and found[0].sign == 1


def test_k2_changes_horizontal_count_against_cusp_pair():
    d = fig1_torus()
    f = small_almond()
    base = rot_front(d, f)
    for variant, want_l0, want_cusps in (("left", -1, 2), ("right", 1, -2)):
        out = apply_move(
            d, f, "k2", {"component": 0, "segment": 0, "u": F(1, 2), "variant": variant}
        )
        rep = rot_front(d, out)
        assert rep.L0_dot_H - base.L0_dot_H == want_l0
        assert (rep.D - rep.U) - (base.D - base.U) == want_cusps
        assert rep.rot == base.rot


def test_b1_changes_lk_against_cusp_pair():
    d = disk_s3()
    f = disk_s3_unknot()
    D0, U0 = cusp_counts(f)
    lk0 = lk_binding(f)
    for variant, want_lk, want_cusps in (("down", -1, 2), ("up", 1, -2)):
        out = apply_move(
            d, f, "b1", {"component": 0, "segment": 0, "u": F(1, 2), "variant": variant}
        )
        D1, U1 = cusp_counts(out)
        assert lk_binding(out) - lk0 == want_lk
        assert (D1 - U1) - (D0 - U0) == want_cusps


def test_composite_pass_sequence_preserves_rotation():
    d = fig1_torus()
    f = small_almond()
    base = rot_front(d, f).rot
    script = [
        {"move": "r1", "site": {"component": 0, "segment": 0, "u": F(1, 2)}},
        {"move": "cusp_trace", "site": {"component": 0, "vertex": 6, "pair": 2, "side": "plus"}},
        {"move": "r1", "site": {"component": 0, "segment": 5, "u": F(1, 2)}},
        {"move": "s1", "site": {"component": 0, "vertex": 10, "depth": F(1, 2048)}},
        {"move": "k3", "site": {"component": 0, "vertex": 10, "pair": 2, "side": "plus"}},
    ]
    cur = f
    for step in script:
        cur = apply_move(d, cur, step["move"], step["site"])
        assert rot_front(d, cur).rot == base
    assert sum(1 for v in cur.components[0].vertices if v.kind == "teleport") == 4


def test_k3_exchanges_poke_for_teleports():
    d = fig1_torus()
    f = small_almond()
    poked = apply_move(
        d, f, "cusp_trace", {"component": 0, "vertex": 2, "pair": 2, "side": "plus"}
    )
    out = apply_move(d, poked, "k3", {"component": 0, "vertex": 2, "pair": 2, "side": "plus"})
    teleports = [v for v in out.components[0].vertices if v.kind == "teleport"]
    assert len(teleports) == 4
    assert cusp_counts(out) == cusp_counts(poked)
    assert rot_front(d, out).rot == rot_front(d, poked).rot


def test_pattern_not_found_on_bad_sites():
    d = disk_s3()
    f = disk_s3_unknot()
    with pytest.raises(PatternNotFound):
        apply_move(d, f, "r1_inv", {"component": 0, "vertex": 0})
    with pytest.raises(PatternNotFound):
        apply_move(d, f, "cusp_trace", {"component": 0, "vertex": 1, "pair": 1, "side": "plus"})
    with pytest.raises(InvalidInput):
        apply_move(d, f, "nonsense", {})


from conftest import random_move_sites as _random_site_instances


def test_every_isotopy_move_preserves_rotation_on_random_sites():
    rng = random.Random(1234)
    per_move = 12
    for move in ("r1", "cusp_trace", "s1", "k2", "k3"):
        for d, f, site, out in _random_site_instances(rng, per_move, move):
            before = rot_front(d, f)
            after = rot_front(d, out)
            assert after.rot == before.rot, (move, site)


def test_b1_deltas_on_random_sites():
    rng = random.Random(4321)
    for variant, want_lk in (("down", -1), ("up", 1)):
        for d, f, site, out in _random_site_instances(rng, 10, "b1", variant):
            want_cusps = -2 * want_lk
            d0, u0 = cusp_counts(f)
            d1, u1 = cusp_counts(out)
            assert lk_binding(out) - lk_binding(f) == want_lk
            assert (d1 - u1) - (d0 - u0) == want_cusps


def test_lk_binding_invariant_under_all_moves_except_b1():
    rng = random.Random(777)
    for move in ("r1", "cusp_trace", "s1", "k2", "k3"):
        for d, f, site, out in _random_site_instances(rng, 5, move):
            assert lk_binding(out) == lk_binding(f), move
