"""Exact linear-flow tracing, straight segments, cutting sequences.

Slope convention is Slope = dx/dy: 0 is vertical, INFINITY horizontal. The
core tracer moves upward (dy > 0, or dx > 0 for horizontal) on an integer
grid: with slope p/q and start coordinates of denominator d, every edge
crossing has coordinates in (1/M)Z for M = lcm-denominator * q * max(1,|p|),
so the hot loop is pure integer arithmetic. Downward motion is traced on the
half-turn rotated origami (h,v) -> (h^-1, v^-1) and mapped back.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import (ConeVertexInInterior, HitsConeVertex, OutOfRange,
                     StartOnSingularLeaf)
from .origami import BL, BR, TL, TR, Origami, SurfacePoint, canonical_point

INFINITY = float("inf")


@dataclass(frozen=True)
class DirectionSpec:
    """slope dx/dy (Fraction, or INFINITY for horizontal) plus orientation:
    up means dy > 0 (dx > 0 for horizontal)."""
    slope: object
    up: bool = True


@dataclass(frozen=True)
class Event:
    s: Fraction            # span parameter: |dy| progressed (|dx| horizontal)
    kind: str              # top / bottom / left / right / corner
    square_from: int
    square_to: int
    edge_class: object     # EdgeClass, None for corner events
    pos: object            # coordinate along the crossed edge, None for corner
    vertex_id: object = None
    is_cone: bool = False
    initial: bool = False  # start point already on this edge (s = 0)

    @property
    def label(self):
        return self.edge_class.label if self.edge_class is not None else None


@dataclass
class TraceResult:
    events: list
    pieces: list           # (square, x0, y0, x1, y1) exact Fractions
    status: str            # "ok" | "cone"
    end: SurfacePoint
    span_done: Fraction
    crossings: int


def _exact_div(a, b):
    q, r = divmod(a, b)
    assert r == 0, "grid invariant violated"
    return q


def _rotated(origami):
    """Half-turn image (h^-1, v^-1); cached on the instance."""
    rot = getattr(origami, "_rot_cache", None)
    if rot is None:
        rot = Origami(origami.h.inv(), origami.v.inv(), names=origami.names)
        origami._rot_cache = rot
    return rot


def _common_denominator(slope, start, span):
    d = 1
    for f in (start.x, start.y, span if span is not None else Fraction(0)):
        f = Fraction(f)
        d = d * f.denominator // gcd(d, f.denominator)
    if slope == INFINITY:
        return d
    p, q = slope.numerator, slope.denominator
    return d * q * max(1, abs(p))


def trace(origami, slope, start, *, up=True, span=None, crossings=None,
          collect_pieces=False, allow_singular_start=False,
          raise_on_cone=True):
    """Trace the flow from start, stopping after an exact span (|dy| units,
    |dx| for horizontal) or a number of crossings, whichever comes first.

    Hitting a conical point strictly before the stop raises HitsConeVertex
    carrying the truncated TraceResult (or returns it with status "cone"
    when raise_on_cone is false). A cone hit exactly at the requested span
    is a legal segment endpoint.
    """
    if span is None and crossings is None:
        raise ValueError("need a span or a crossing cap")
    if slope != INFINITY:
        slope = Fraction(slope)
    if span is not None:
        span = Fraction(span)
        if span < 0:
            raise OutOfRange("span must be >= 0")

    if up:
        result = _trace_up(origami, slope, start, span, crossings,
                           collect_pieces, allow_singular_start)
    else:
        rot = _rotated(origami)
        rstart = canonical_point(rot, start.square, 1 - start.x, 1 - start.y)
        rres = _trace_up(rot, slope, rstart, span, crossings,
                         collect_pieces, allow_singular_start)
        result = _unrotate(origami, rres)
    if result.status == "cone" and raise_on_cone:
        raise HitsConeVertex(result, result.events[-1].vertex_id)
    return result


_KIND_ROT = {"top": "bottom", "bottom": "top", "left": "right",
             "right": "left", "corner": "corner"}
_CORNER_ROT = {TR: BL, BL: TR, TL: BR, BR: TL}


def _unrotate(origami, rres):
    events = []
    for e in rres.events:
        kind = _KIND_ROT[e.kind]
        if e.kind == "corner":
            ec, pos = None, None
        else:
            ec = origami.edge_class_of(e.square_from, kind)
            pos = 1 - e.pos
        events.append(Event(s=e.s, kind=kind, square_from=e.square_from,
                            square_to=e.square_to, edge_class=ec, pos=pos,
                            vertex_id=e.vertex_id, is_cone=e.is_cone,
                            initial=e.initial))
    pieces = [(j, 1 - x0, 1 - y0, 1 - x1, 1 - y1)
              for (j, x0, y0, x1, y1) in rres.pieces]
    end = canonical_point(origami, rres.end.square, 1 - rres.end.x,
                          1 - rres.end.y)
    return TraceResult(events=events, pieces=pieces, status=rres.status,
                       end=end, span_done=rres.span_done,
                       crossings=rres.crossings)


def _trace_up(origami, slope, start, span, crossings, collect_pieces,
              allow_singular_start):
    h, v, hinv, vinv = origami.h, origami.v, origami.hinv, origami.vinv
    M = _common_denominator(slope, start, span)
    j = start.square
    X = int(start.x * M)
    Y = int(start.y * M)
    span_int = None if span is None else int(span * M)

    horizontal = slope == INFINITY
    if horizontal:
        p = q = None
    else:
        p, q = slope.numerator, slope.denominator

    events = []
    pieces = []

    # start exactly at a grid vertex
    if X == 0 and Y == 0:
        if origami.cone_at(j, BL) and not allow_singular_start:
            raise StartOnSingularLeaf(f"start is the cone at corner of square {j}")

    def frac(a):
        return Fraction(a, M)

    # initial on-edge events (transversal crossings at s = 0 count)
    if Y == 0 and not (X == 0 and Y == 0) and not horizontal:
        events.append(Event(s=Fraction(0), kind="bottom", square_from=j,
                            square_to=j, edge_class=origami.edge_class_of(j, "bottom"),
                            pos=frac(X), initial=True))
    if not horizontal and p is not None and p < 0 and X == 0:
        j, X = hinv(j), M
    if X == 0 and Y != 0 and (horizontal or (p is not None and p > 0)):
        events.append(Event(s=Fraction(0), kind="left", square_from=j,
                            square_to=j, edge_class=origami.edge_class_of(j, "left"),
                            pos=frac(Y), initial=True))
    if not horizontal and p is not None and p < 0 and X == M and Y != 0:
        events.append(Event(s=Fraction(0), kind="right", square_from=j,
                            square_to=j, edge_class=origami.edge_class_of(j, "right"),
                            pos=frac(Y), initial=True))

    s = 0
    ncross = 0
    status = "ok"
    end = None

    def emit_piece(X1, Y1):
        if collect_pieces:
            pieces.append((j, frac(X), frac(Y), frac(X1), frac(Y1)))

    while True:
        if crossings is not None and ncross >= crossings:
            end = canonical_point(origami, j, frac(X), frac(Y))
            break

        # next crossing inside the current square
        if horizontal:
            dS = M - X
            kind = "corner" if Y == 0 else "right"
            X1, Y1 = M, Y
        elif p == 0:
            dS = M - Y
            kind = "corner" if X == 0 else "top"
            X1, Y1 = X, M
        elif p > 0:
            lhs, rhs = p * (M - Y), q * (M - X)
            if lhs < rhs:
                dS = M - Y
                kind = "top"
                X1, Y1 = X + _exact_div(p * (M - Y), q), M
            elif lhs > rhs:
                dS = _exact_div(q * (M - X), p)
                kind = "right"
                X1, Y1 = M, Y + dS
            else:
                dS = M - Y
                kind = "corner"
                X1, Y1 = M, M
        else:
            ap = -p
            lhs, rhs = ap * (M - Y), q * X
            if lhs < rhs:
                dS = M - Y
                kind = "top"
                X1, Y1 = X - _exact_div(ap * (M - Y), q), M
            elif lhs > rhs:
                dS = _exact_div(q * X, ap)
                kind = "left"
                X1, Y1 = 0, Y + dS
            else:
                dS = M - Y
                kind = "corner"
                X1, Y1 = 0, M

        if span_int is not None and s + dS > span_int:
            # stop strictly inside the square
            rem = span_int - s
            if horizontal:
                Xe, Ye = Fraction(X + rem, M), frac(Y)
            else:
                Xe = Fraction(X * q + p * rem, q * M)
                Ye = Fraction(Y + rem, M)
            if collect_pieces and rem > 0:
                pieces.append((j, frac(X), frac(Y), Xe, Ye))
            end = canonical_point(origami, j, Xe, Ye)
            s = span_int
            break

        emit_piece(X1, Y1)
        s += dS
        ncross += 1

        if kind == "corner":
            if horizontal:
                corner, j_next, Xn, Yn = BR, h(j), 0, 0
            elif p == 0:
                corner, j_next, Xn, Yn = TL, v(j), 0, 0
            elif p > 0:
                corner, j_next, Xn, Yn = TR, v(h(j)), 0, 0
            else:
                corner, j_next, Xn, Yn = TL, hinv(v(j)), M, 0
            vid = origami.vertex_at(j, corner)
            cone = origami.vertex_is_cone[vid]
            events.append(Event(s=frac(s), kind="corner", square_from=j,
                                square_to=(j if cone else j_next),
                                edge_class=None, pos=None, vertex_id=vid,
                                is_cone=cone))
            if cone:
                end = canonical_point(origami, j, frac(X1), frac(Y1))
                if span_int is not None and s == span_int:
                    status = "ok"       # endpoint exactly at the cone
                else:
                    status = "cone"
                break
            j, X, Y = j_next, Xn, Yn
        else:
            if kind == "top":
                j_next, Xn, Yn = v(j), X1, 0
                pos = frac(X1)
            elif kind == "right":
                j_next, Xn, Yn = h(j), 0, Y1
                pos = frac(Y1)
            else:
                j_next, Xn, Yn = hinv(j), M, Y1
                pos = frac(Y1)
            events.append(Event(s=frac(s), kind=kind, square_from=j,
                                square_to=j_next,
                                edge_class=origami.edge_class_of(j, kind),
                                pos=pos))
            j, X, Y = j_next, Xn, Yn

        if span_int is not None and s == span_int:
            if end is None:
                end = canonical_point(origami, j, frac(X), frac(Y))
            break

    if end is None:
        end = canonical_point(origami, j, frac(X), frac(Y))
    return TraceResult(events=events, pieces=pieces, status=status, end=end,
                       span_done=frac(s), crossings=ncross)


def flow_trace(origami, direction, start, *, span=None, crossings=None,
               allow_singular_start=False):
    """Spec-level entry point: events of the linear flow in the given
    direction until a span/crossing stop."""
    return trace(origami, direction.slope, start, up=direction.up, span=span,
                 crossings=crossings, collect_pieces=True,
                 allow_singular_start=allow_singular_start)


# -- segments -------------------------------------------------------------------

def ceil_sqrt_fraction(t):
    """Smallest integer k with k*k >= t (t a nonnegative Fraction)."""
    t = Fraction(t)
    if t <= 0:
        return 0
    k = isqrt(t.numerator // t.denominator)
    while k * k * t.denominator < t.numerator:
        k += 1
    return k


def span_for_length_at_least(slope, length, denominator=None):
    """Smallest rational span k/D whose segment of the given slope has
    Euclidean length >= length; exact via squared lengths."""
    length = Fraction(length)
    if slope == INFINITY:
        return length
    slope = Fraction(slope)
    D = denominator or max(8, slope.denominator)
    # span^2 (1 + slope^2) >= length^2
    t = length ** 2 / (1 + slope ** 2) * D ** 2
    return Fraction(ceil_sqrt_fraction(t), D)


class Segment:
    """A straight segment with no conical point in its interior, as exact
    per-square pieces. The extent is stored as the rational span (|dy|, or
    |dx| for horizontal); Euclidean length is exposed squared (exact) and
    as a float."""

    def __init__(self, origami, start, slope, span, up=True):
        self.origami = origami
        self.start = start
        self.slope = slope if slope == INFINITY else Fraction(slope)
        self.span = Fraction(span)
        self.up = up
        res = trace(origami, self.slope, start, up=up, span=self.span,
                    collect_pieces=True, raise_on_cone=False)
        if res.status == "cone":
            raise ConeVertexInInterior(
                f"cone vertex at span {res.span_done} < {self.span}")
        self.events = res.events
        self.pieces = res.pieces
        self.end = res.end

    @property
    def length_squared(self):
        if self.slope == INFINITY:
            return self.span ** 2
        return self.span ** 2 * (1 + self.slope ** 2)

    @property
    def length(self):
        return float(self.length_squared) ** 0.5

    def reversed(self):
        return Segment(self.origami, self.end, self.slope, self.span,
                       up=not self.up)

    def squares(self):
        out = {p[0] for p in self.pieces}
        if self.events:
            out.add(self.events[-1].square_to)
        return out

    def __repr__(self):
        return (f"Segment(start={self.start}, slope={self.slope}, "
                f"span={self.span}, up={self.up})")


def make_segment(origami, start, slope, *, span=None, length_at_least=None,
                 up=True):
    if (span is None) == (length_at_least is None):
        raise ValueError("exactly one of span / length_at_least")
    if span is None:
        span = span_for_length_at_least(slope, length_at_least)
    return Segment(origami, start, slope, span, up=up)


@dataclass
class CuttingSequence:
    word: tuple               # labels, e.g. ("A", 0)
    times: tuple              # strictly increasing span parameters

    def __len__(self):
        return len(self.word)


def cutting_sequence(segment):
    """Labeled crossings in parameter order; dotted classes are skipped."""
    if not segment.origami.labelled:
        raise ValueError("origami has no letter labels")
    word = []
    times = []
    for e in segment.events:
        if e.edge_class is not None and e.edge_class.label is not None:
            word.append(e.edge_class.label)
            times.append(e.s)
    return CuttingSequence(word=tuple(word), times=tuple(times))


# -- exact closed-segment intersection ---------------------------------------------

def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def _on_segment(px, py, ax, ay, bx, by):
    if _cross(bx - ax, by - ay, px - ax, py - ay) != 0:
        return False
    return (min(ax, bx) <= px <= max(ax, bx)
            and min(ay, by) <= py <= max(ay, by))


def _segments_common_point(a, b, c, d):
    """A common point of closed planar segments ab and cd, or None."""
    (ax, ay), (bx, by), (cx, cy), (dx, dy) = a, b, c, d
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    denom = _cross(rx, ry, sx, sy)
    qpx, qpy = cx - ax, cy - ay
    if denom != 0:
        t = Fraction(_cross(qpx, qpy, sx, sy), denom)
        u = Fraction(_cross(qpx, qpy, rx, ry), denom)
        if 0 <= t <= 1 and 0 <= u <= 1:
            return (ax + t * rx, ay + t * ry)
        return None
    # parallel
    if _cross(qpx, qpy, rx, ry) != 0:
        return None
    # collinear: overlap of parameter ranges along the longer direction
    if rx == 0 and ry == 0:
        return (ax, ay) if _on_segment(ax, ay, cx, cy, dx, dy) else None
    if sx == 0 and sy == 0:
        return (cx, cy) if _on_segment(cx, cy, ax, ay, bx, by) else None
    dot_r = rx * rx + ry * ry
    t0 = Fraction((cx - ax) * rx + (cy - ay) * ry, dot_r)
    t1 = Fraction((dx - ax) * rx + (dy - ay) * ry, dot_r)
    lo, hi = min(t0, t1), max(t0, t1)
    lo = max(lo, Fraction(0))
    hi = min(hi, Fraction(1))
    if lo > hi:
        return None
    return (ax + lo * rx, ay + lo * ry)


def segments_intersect(seg1, seg2):
    """Witness SurfacePoint of an intersection (closed segments; a shared
    endpoint counts), or None. Exact rational arithmetic, bucketed by square."""
    by_square = {}
    for piece in seg1.pieces:
        by_square.setdefault(piece[0], []).append(piece)
    for piece in seg2.pieces:
        j = piece[0]
        if j not in by_square:
            continue
        c = (piece[1], piece[2])
        d = (piece[3], piece[4])
        for other in by_square[j]:
            a = (other[1], other[2])
            b = (other[3], other[4])
            pt = _segments_common_point(a, b, c, d)
            if pt is not None:
                return canonical_point(seg1.origami, j, pt[0], pt[1])
    return None
