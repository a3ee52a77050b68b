import random
from fractions import Fraction as F

import pytest

from origamilab.errors import ConeVertexInInterior, HitsConeVertex, StartOnSingularLeaf
from origamilab.flow import (INFINITY, Segment, cutting_sequence,
                             segments_intersect, span_for_length_at_least,
                             trace)
from origamilab.origami import (TR, SurfacePoint, builtin_genus2_L,
                                builtin_ornithorynque, builtin_torus,
                                canonical_point)
from origamilab.sl2 import ReflectionMap
from origamilab.verify import point_on_segment


def test_torus_half_slope_pattern():
    # slope 1/2 upward: x advances 1/2 per unit y, so two top crossings per
    # right crossing, cyclically
    t = builtin_torus()
    res = trace(t, F(1, 2), SurfacePoint(0, F(1, 8), F(1, 8)), crossings=12)
    kinds = [e.kind for e in res.events if not e.initial]
    assert len(kinds) == 12
    assert kinds.count("top") == 8 and kinds.count("right") == 4
    for i in range(len(kinds) - 3):
        window = kinds[i:i + 3]
        assert window.count("top") == 2 and window.count("right") == 1


def test_zero_span_trace():
    xo = builtin_ornithorynque()
    res = trace(xo, F(1, 3), SurfacePoint(2, F(1, 3), F(1, 3)), span=F(0))
    assert res.events == [] and res.span_done == 0


def test_xo_vertical_closed_geodesic():
    xo = builtin_ornithorynque()
    a0 = xo.class_of_label(("A", 0))
    (top_sq, _), _ = a0.incidences
    start = canonical_point(xo, top_sq, F(1, 2), F(1))
    res = trace(xo, F(0), start, span=F(6), collect_pieces=True)
    assert res.end == start
    letters = [e.label for e in res.events if e.label is not None]
    assert letters == [("A", 0), ("A", 1), ("A", 2), ("A", 0)]
    assert sum(p[4] - p[2] for p in res.pieces) == 6


def test_piece_count_slope_third():
    # start on a bottom edge, rise exactly 6: 6 horizontal + 2 vertical
    # crossings cut the segment into 8 pieces
    xo = builtin_ornithorynque()
    seg = Segment(xo, SurfacePoint(0, F(1, 5), F(0)), F(1, 3), F(6))
    assert len(seg.pieces) == 8
    kinds = [e.kind for e in seg.events if not e.initial]
    assert kinds.count("top") == 6 and kinds.count("right") == 2
    assert sum(p[4] - p[2] for p in seg.pieces) == 6
    assert seg.length_squared == 36 * F(10, 9)


def test_single_piece_short_segment():
    xo = builtin_ornithorynque()
    seg = Segment(xo, SurfacePoint(0, F(1, 2), F(1, 2)), F(1, 3), F(1, 4))
    assert len(seg.pieces) == 1
    assert cutting_sequence(seg).word == ()


def test_cone_vertex_interior_rejected():
    xo = builtin_ornithorynque()
    j = next(j for j in range(12) if xo.cone_at(j, TR))
    with pytest.raises(ConeVertexInInterior):
        Segment(xo, SurfacePoint(j, F(1, 2), F(1, 2)), F(1), F(1))
    # endpoint exactly at the cone is allowed
    seg = Segment(xo, SurfacePoint(j, F(1, 2), F(1, 2)), F(1), F(1, 2))
    assert len(seg.pieces) == 1


def test_regular_vertex_passthrough():
    # tile centers are regular: the diagonal through one continues
    xo = builtin_ornithorynque()
    j = next(j for j in range(12) if not xo.cone_at(j, TR))
    res = trace(xo, F(1), SurfacePoint(j, F(1, 4), F(1, 4)), span=F(3, 2),
                collect_pieces=True)
    assert res.status == "ok"
    corner = [e for e in res.events if e.kind == "corner"]
    assert corner and not corner[0].is_cone


def test_singular_start_rejected():
    xo = builtin_ornithorynque()
    j = next(j for j in range(12) if xo.cone_at(j, "BL"))
    with pytest.raises(StartOnSingularLeaf):
        trace(xo, F(1, 3), SurfacePoint(j, F(0), F(0)), span=F(1))
    res = trace(xo, F(1, 3), SurfacePoint(j, F(0), F(0)), span=F(1),
                allow_singular_start=True, raise_on_cone=False)
    assert res.span_done == 1


def test_hits_cone_vertex_truncated():
    xo = builtin_ornithorynque()
    j = next(j for j in range(12) if xo.cone_at(j, TR))
    with pytest.raises(HitsConeVertex) as exc:
        trace(xo, F(1), SurfacePoint(j, F(1, 2), F(1, 2)), span=F(4))
    tr = exc.value.trace
    assert tr.status == "cone"
    assert tr.span_done == F(1, 2)


def test_span_for_length():
    s = span_for_length_at_least(F(1, 2), 17)
    assert s * s * (1 + F(1, 4)) >= 289
    assert (s - F(1, 8)) ** 2 * (1 + F(1, 4)) < 289
    assert span_for_length_at_least(INFINITY, F(7, 2)) == F(7, 2)


def test_reversal_word():
    xo = builtin_ornithorynque()
    rng = random.Random(6)
    for _ in range(20):
        slope = F(rng.randrange(1, 12), rng.randrange(12, 24))
        seg = Segment(xo, SurfacePoint(rng.randrange(12),
                                       F(rng.randrange(1, 32), 32),
                                       F(rng.randrange(1, 32), 32)),
                      slope, F(rng.randrange(3, 9)))
        rev = seg.reversed()
        w = cutting_sequence(seg).word
        wr = cutting_sequence(rev).word
        assert wr == tuple(reversed(w))
        assert rev.end == seg.start


def test_reflection_conjugates_words():
    xo = builtin_ornithorynque()
    f = ReflectionMap(xo)
    # induced letter relabeling: horizontal class of top(j) maps to the
    # class of top(sigma(j)); vertical class of right(j) to left(sigma(j))
    letter_map = {}
    for c in xo.edge_classes:
        if c.label is None:
            continue
        (j, side), _ = c.incidences
        if side == "top":
            img = xo.edge_class_of(f.sigma(j), "top")
        else:
            img = xo.edge_class_of(f.sigma(j), "left")
        letter_map[c.label] = img.label
    assert sorted(letter_map) == sorted(letter_map.values())
    rng = random.Random(9)
    for _ in range(15):
        slope = F(rng.randrange(1, 20), rng.randrange(4, 24))
        seg = Segment(xo, SurfacePoint(rng.randrange(12),
                                       F(rng.randrange(1, 16), 16),
                                       F(rng.randrange(1, 16), 16)),
                      slope, F(rng.randrange(2, 7)))
        img = Segment(xo, f.map_point(seg.start), -slope, seg.span, up=seg.up)
        w = cutting_sequence(seg).word
        wi = cutting_sequence(img).word
        assert wi == tuple(letter_map[l] for l in w)


def test_intersection_basics():
    xo = builtin_ornithorynque()
    d1 = Segment(xo, SurfacePoint(0, F(0), F(0)), F(1), F(1))
    d2 = Segment(xo, SurfacePoint(0, F(1), F(0)), F(-1), F(1))
    w = segments_intersect(d1, d2)
    assert w == SurfacePoint(0, F(1, 2), F(1, 2))
    assert segments_intersect(d1, d1) is not None
    assert point_on_segment(d1, w) and point_on_segment(d2, w)


def test_intersection_witness_on_both():
    xo = builtin_ornithorynque()
    rng = random.Random(14)
    found = 0
    for _ in range(40):
        try:
            s1 = Segment(xo, SurfacePoint(rng.randrange(12),
                                          F(rng.randrange(1, 16), 16),
                                          F(rng.randrange(1, 16), 16)),
                         F(rng.randrange(1, 10), 11), F(rng.randrange(2, 6)))
            s2 = Segment(xo, SurfacePoint(rng.randrange(12),
                                          F(rng.randrange(1, 16), 16),
                                          F(rng.randrange(1, 16), 16)),
                         F(-rng.randrange(12, 30), 11), F(rng.randrange(2, 6)))
        except ConeVertexInInterior:
            continue
        w = segments_intersect(s1, s2)
        if w is not None:
            found += 1
            assert point_on_segment(s1, w) and point_on_segment(s2, w)
    assert found > 5


def test_shadowing_on_torus():
    # two nearby slopes from one start stay within delta * span of each other
    t = builtin_torus()
    s1, s2 = F(3, 8), F(3, 8) + F(1, 1024)
    start = SurfacePoint(0, F(1, 7), F(2, 7))
    span = F(40)
    r1 = trace(t, s1, start, span=span)
    r2 = trace(t, s2, start, span=span)
    delta = s2 - s1
    dx = (r2.end.x - r1.end.x) % 1
    dist = min(dx, 1 - dx)
    assert dist <= delta * span
    assert r1.end.y == r2.end.y


def test_horizontal_trace():
    g2 = builtin_genus2_L()
    res = trace(g2, INFINITY, SurfacePoint(0, F(1, 3), F(1, 2)), span=F(4),
                collect_pieces=True)
    assert all(e.kind in ("right", "left") for e in res.events if not e.initial)
    assert sum(p[3] - p[1] for p in res.pieces) == 4


def test_down_orientation():
    xo = builtin_ornithorynque()
    start = SurfacePoint(3, F(1, 3), F(2, 3))
    up = trace(xo, F(2, 5), start, span=F(5), collect_pieces=True)
    down_back = trace(xo, F(2, 5), up.end, up=False, span=F(5),
                      collect_pieces=True)
    assert down_back.end == start
