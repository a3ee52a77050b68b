import random
from fractions import Fraction as F

import pytest

from origamilab.errors import WordTooShort
from origamilab.flow import Segment, cutting_sequence
from origamilab.origami import SurfacePoint, builtin_genus2_L, builtin_ornithorynque
from origamilab.verify import (MAIN_CONES, NEG_INFINITY,
                               asserted_next_up, compare_relation,
                               criterion_classify, genus2_control_pair,
                               intersection_property_harness,
                               next_letter_relation, oriented_word,
                               point_on_segment, single_square_crossing_intersects,
                               tiles_crossed, two_square_point_location,
                               verified_next_up, _sample_segment)


def test_transition_relation_up_cone():
    xo = builtin_ornithorynque()
    rel = next_letter_relation(xo, sample_budget=600, seed=1)
    # complete agreement with the exhaustively verified table
    assert not compare_relation(rel, verified_next_up())
    assert not rel.non_converged
    # the narrow table is violated exactly on the three B rows, by the
    # B-letter one index down (nearly vertical climbs of the B column)
    excess = compare_relation(rel, asserted_next_up())
    assert sorted((v.letter, v.successor) for v in excess) == [
        (("B", 0), ("B", 2)), (("B", 1), ("B", 0)), (("B", 2), ("B", 1))]
    assert all(v.kind == "excess" for v in excess)
    # explicit witness from the analysis: B_2 at t=1/2, s=1/10 exits at B_1
    from origamilab.verify import _next_letter
    assert _next_letter(xo, ("B", 2), F(1, 2), F(1, 10)) == ("B", 1)
    assert _next_letter(xo, ("B", 2), F(15, 16), F(1, 10)) == ("D", 1)
    assert _next_letter(xo, ("C", 1), F(1, 2), F(1, 2)) == ("A", 2)


def test_exclusion_chain_still_closes():
    # with the corrected B row, the no-tile-0 exclusion argument still rules
    # out every letter for words of length >= 6
    succ = verified_next_up()
    tile0_letters = {("A", 0), ("B", 0), ("C", 0), ("D", 0),
                     ("A", 2), ("B", 1), ("C", 2), ("D", 1)}
    excluded = {l: 1 for l in tile0_letters}    # excluded for k <= n-1
    # repeatedly exclude letters whose successors are all excluded
    changed = True
    while changed:
        changed = False
        for letter in succ:
            if letter in excluded:
                continue
            costs = [excluded.get(s) for s in succ[letter]]
            if all(c is not None for c in costs):
                excluded[letter] = max(costs) + 1
                changed = True
    assert len(excluded) == 12
    assert max(excluded.values()) <= 5          # so n >= 6 is a contradiction


def test_h_cone_relation():
    xo = builtin_ornithorynque()
    rel = next_letter_relation(xo, cone=(NEG_INFINITY, F(-1)),
                               sample_budget=500, seed=2)
    succ = rel.successors
    for i in range(3):
        assert succ[("A", i)] == {("D", (i - 1) % 3)}
        assert succ[("B", i)] == {("C", (i + 1) % 3), ("D", i)}
        assert succ[("C", i)] == {("A", i), ("B", i), ("C", (i - 1) % 3)}
        assert succ[("D", i)] == {("A", i), ("C", (i - 1) % 3),
                                  ("D", (i + 1) % 3)}


def test_evidence_recorded():
    xo = builtin_ornithorynque()
    rel = next_letter_relation(xo, sample_budget=200, seed=3)
    ev = rel.evidence[(("C", 1), ("A", 2))]
    assert ev.count > 0 and ev.witness is not None
    assert ev.t_min <= ev.t_max and ev.s_min <= ev.s_max


def test_tiles_crossed():
    xo = builtin_ornithorynque()
    seg = Segment(xo, SurfacePoint(0, F(1, 3), F(1, 3)), F(1, 5), F(1, 4))
    assert tiles_crossed(seg) == {0}
    rng = random.Random(12)
    for cone in MAIN_CONES:
        checked = 0
        while checked < 40:
            seg = _sample_segment(xo, rng, cone, 17)
            if len(cutting_sequence(seg).word) < 6:
                continue
            checked += 1
            assert tiles_crossed(seg) == {0, 1, 2}


def test_classifier_vectors():
    filler_v = tuple(("A", k % 3) for k in range(12))
    # triple (C_2, C_0, C_1) for i = 0
    word = (("A", 1), ("C", 2), ("C", 0), ("C", 1)) + tuple(
        ("B", k % 3) for k in range(8))
    v = criterion_classify(word, filler_v)
    assert v.kind == "triple" and v.i == 0
    # D-triple (D_1, D_0, D_2) for i = 1
    word = (("D", 1), ("D", 0), ("D", 2)) + tuple(
        ("B", k % 3) for k in range(9))
    v = criterion_classify(word, filler_v)
    assert v.kind == "triple" and v.i == 1
    # pair (A_0, D_0) at an interior position, i = 0
    word = (("C", 0), ("A", 0), ("D", 0)) + tuple(
        ("B", k % 3) for k in range(9))
    v = criterion_classify(word, filler_v)
    assert v.kind == "pair" and v.i == 0 and v.position == 2
    # the pair must not match at position 1
    word = (("A", 0), ("D", 0)) + tuple(("B", k % 3) for k in range(10))
    v = criterion_classify(word, filler_v)
    assert v.kind != "pair" or v.position != 1
    with pytest.raises(WordTooShort):
        criterion_classify((("A", 0),) * 5, filler_v)
    v = criterion_classify(tuple(("B", k % 3) for k in range(12)), filler_v,
                           slope_h=F(-3, 2))
    assert v.kind == "unclassified" and v.slope_audit_ok


def test_word_pairs_satisfy_next_relation():
    # consecutive letters of any upward (0,1)-cone word are successor pairs
    xo = builtin_ornithorynque()
    succ = verified_next_up()
    rng = random.Random(20)
    # a slope-1/2 upward segment of length 3*sqrt(5) (rise 27/5 covers it)
    seg = Segment(xo, SurfacePoint(0, F(17, 32), F(1, 32)), F(1, 2), F(27, 5))
    word = cutting_sequence(seg).word
    assert len(word) >= 3
    segs = [seg]
    for _ in range(25):
        segs.append(_sample_segment(xo, rng, (F(0), F(1)), 10))
    for s in segs:
        w = cutting_sequence(s).word
        for a, b in zip(w, w[1:]):
            assert b in succ[a], (a, b)


def test_oriented_word():
    xo = builtin_ornithorynque()
    seg = Segment(xo, SurfacePoint(0, F(1, 3), F(1, 5)), F(-7, 3), F(3))
    w = cutting_sequence(seg).word
    assert oriented_word(seg) == tuple(reversed(w))   # dx < 0 going up
    seg_v = Segment(xo, SurfacePoint(0, F(1, 3), F(1, 5)), F(1, 3), F(3))
    assert oriented_word(seg_v) == cutting_sequence(seg_v).word


def test_harness_small():
    xo = builtin_ornithorynque()
    for pair in ("main", "reflected"):
        rep = intersection_property_harness(xo, 17, 150, pair, seed=5,
                                            name="xo")
        assert rep.failures == 0
        assert not rep.classifier_conflicts
        assert not rep.slope_audit_failures
        assert rep.witness_recheck_failures == 0
    rep34 = intersection_property_harness(xo, 34, 80, "main", seed=6)
    assert rep34.failures == 0 and rep34.word_too_short == 0
    assert rep34.verdicts.get("triple", 0) + rep34.verdicts.get("pair", 0) > 0


def test_genus2_control():
    g2 = builtin_genus2_L()
    for K in (17, 34, 50):
        seg_h, seg_v, witness = genus2_control_pair(g2, K)
        assert witness is None
        assert seg_h.length_squared >= K * K
        assert seg_v.length_squared >= K * K
        assert seg_h.slope < -1 and 0 < seg_v.slope < 1


def test_two_square_point_location():
    # slope -2 and slope 1/2 lines both crossing the shared side {1} x [0,1]
    assert two_square_point_location((F(1), F(1, 4)), F(-2),
                                     (F(1), F(3, 4)), F(1, 2))
    rng = random.Random(10)
    for _ in range(300):
        sh = -1 - F(rng.randrange(1, 200), 37)
        sv = F(rng.randrange(1, 36), 37)
        yh = F(rng.randrange(0, 64), 64)
        yv = F(rng.randrange(0, 64), 64)
        # anchor both lines on the shared side {1} x [0,1]
        assert two_square_point_location((F(1), yh), sh, (F(1), yv), sv)
    with pytest.raises(ValueError):
        two_square_point_location((F(1, 2), F(1, 2)), F(-2),
                                  (F(1, 2), F(1, 2)), F(3, 2))
    with pytest.raises(ValueError):
        # H-line through (10, 1/2) misses the shared side
        two_square_point_location((F(10), F(1, 2)), F(-2),
                                  (F(1), F(1, 2)), F(1, 2))


def test_single_square_crossing():
    rng = random.Random(11)
    for _ in range(300):
        sh = -1 - F(rng.randrange(1, 150), 41)
        sv = F(rng.randrange(1, 40), 41)
        # both pass through an interior point and extend well beyond
        xh = F(rng.randrange(1, 63), 64)
        yh = F(rng.randrange(1, 63), 64)
        xv = F(rng.randrange(1, 63), 64)
        yv = F(rng.randrange(1, 63), 64)
        h_seg = ((xh + sh * (-2 - yh), F(-2)), (xh + sh * (3 - yh), F(3)))
        v_seg = ((xv + sv * (-2 - yv), F(-2)), (xv + sv * (3 - yv), F(3)))
        assert single_square_crossing_intersects(h_seg, v_seg)
    with pytest.raises(ValueError):
        single_square_crossing_intersects(((F(5), F(0)), (F(6), F(1))),
                                          ((F(0), F(0)), (F(1), F(1))))
