"""Cylinder decompositions, the transversal length bound and the trapping
window for nearly-parallel flow.

Vertical cylinders are maximal unions of width-1 strips (cycles of v) merged
across vertical edge lines that carry no conical point. Decompositions in a
rational slope p/q are never searched directly: they are carried over from
the vertical decomposition of Y = A^-1 . X through the affine chart.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParallelToDecomposition, PreconditionViolated
from .flow import INFINITY, Segment, trace
from .origami import BR, Origami
from .sl2 import AffineChart, decompose, invert_word, projective_slope


@dataclass(frozen=True)
class Cylinder:
    index: int
    slope: object              # Fraction p/q, or INFINITY
    length: int                # integer length L (periods of the core curve)
    width: int                 # integer width W (number of merged strips)
    squares: frozenset
    strips: tuple              # strips left to right, each a tuple of squares

    @property
    def area(self):
        return self.length * self.width

    def geometric_length_squared(self, p, q):
        return self.length ** 2 * (q * q + p * p)


class VerticalDecomposition:
    """Vertical (slope 0) cylinders of an origami, with strip offsets."""

    def __init__(self, origami):
        self.origami = origami
        strips = origami.v.cycles(include_fixed=True)
        strip_of = {}
        for si, strip in enumerate(strips):
            for sq in strip:
                strip_of[sq] = si

        def right_line_singular(si):
            return any(origami.cone_at(sq, BR) for sq in strips[si])

        def right_neighbor(si):
            imgs = {strip_of[origami.h(sq)] for sq in strips[si]}
            assert len(imgs) == 1, "non-singular line must join two strips"
            (ni,) = imgs
            assert len(strips[ni]) == len(strips[si])
            return ni

        singular = [right_line_singular(si) for si in range(len(strips))]
        merged = [False] * len(strips)
        cylinders = []
        for si in range(len(strips)):
            if merged[si]:
                continue
            # walk left to the start of the merged block (or all the way round)
            start = si
            seen = {si}
            while True:
                lefts = [lj for lj in range(len(strips))
                         if not singular[lj] and right_neighbor(lj) == start]
                if not lefts or lefts[0] in seen:
                    break
                start = lefts[0]
                seen.add(start)
            block = [start]
            merged[start] = True
            cur = start
            while not singular[cur]:
                nxt = right_neighbor(cur)
                if merged[nxt]:
                    break
                block.append(nxt)
                merged[nxt] = True
                cur = nxt
            cylinders.append(block)

        self.cylinders = []
        self.position = {}        # square -> (cylinder index, strip offset)
        for ci, block in enumerate(sorted(cylinders, key=lambda b: min(
                min(strips[si]) for si in b))):
            block_strips = tuple(strips[si] for si in block)
            squares = frozenset(sq for st in block_strips for sq in st)
            self.cylinders.append(Cylinder(
                index=ci, slope=Fraction(0), length=len(block_strips[0]),
                width=len(block_strips), squares=squares, strips=block_strips))
            for off, st in enumerate(block_strips):
                for sq in st:
                    self.position[sq] = (ci, off)
        assert sum(c.area for c in self.cylinders) == origami.n

    def cylinder_of_square(self, sq):
        return self.position[sq][0]

    def transversal_x(self, pt):
        """Offset-adjusted horizontal coordinate inside the containing
        cylinder."""
        ci, off = self.position[pt.square]
        return ci, off + pt.x

    def is_boundary_point(self, pt):
        """True when the point sits on a vertical line bounding a cylinder."""
        if pt.x != 0:
            return False
        ci, off = self.position[pt.square]
        return off == 0


def vertical_cylinders(origami):
    return VerticalDecomposition(origami).cylinders


def horizontal_cylinders(origami):
    """Cylinders in the horizontal direction via the diagonal swap
    (h,v) -> (v,h); squares keep their indices."""
    swapped = Origami(origami.v, origami.h, names=origami.names)
    out = []
    for c in VerticalDecomposition(swapped).cylinders:
        out.append(Cylinder(index=c.index, slope=INFINITY, length=c.length,
                            width=c.width, squares=c.squares, strips=c.strips))
    return out


class InducedDecomposition:
    """Decomposition of X in slope A.0 (vertical base) or A.infinity
    (horizontal base), carried by the affine chart from Y = A^-1 . X."""

    def __init__(self, origami, matrix, base="vertical"):
        if base not in ("vertical", "horizontal"):
            raise ValueError(base)
        word = decompose(matrix)
        y_origami = None
        # Y = A^-1 . X; the chart then maps Y back onto X exactly.
        chart_inv_word = invert_word(word)
        from .sl2 import act_word
        y_origami = act_word(chart_inv_word, origami)
        self.chart = AffineChart(y_origami, word)
        assert self.chart.codomain == origami, "chart must land back on X"
        self.origami = origami
        self.matrix = matrix
        self.base = base
        if base == "vertical":
            self.vertical = VerticalDecomposition(y_origami)
            self.slope = projective_slope(matrix, Fraction(0))
        else:
            swapped = Origami(y_origami.v, y_origami.h, names=y_origami.names)
            self.vertical = VerticalDecomposition(swapped)
            self.slope = projective_slope(matrix, INFINITY)
        self.y_origami = y_origami

    @property
    def cylinders(self):
        s = self.slope
        return tuple(Cylinder(index=c.index, slope=s, length=c.length,
                              width=c.width, squares=c.squares,
                              strips=c.strips)
                     for c in self.vertical.cylinders)

    def slope_pq(self):
        if self.slope == INFINITY:
            return (1, 0)
        return (self.slope.numerator, self.slope.denominator)

    def pull_back_segment(self, segment):
        """The segment in Y-coordinates (same point set under the chart).

        The direction vector (per unit span) maps by the inverse matrix; the
        new span is its |dy| component times the old span (|dx| when the
        image is horizontal)."""
        inv = self.chart.inverse()
        m = inv.matrix
        if segment.slope == INFINITY:
            vx, vy = Fraction(m.a), Fraction(m.c)
        else:
            vx = m.a * segment.slope + m.b
            vy = m.c * segment.slope + m.d
        if not segment.up:
            vx, vy = -vx, -vy
        start = inv.map_point(segment.start)
        if vy == 0:
            return Segment(self.y_origami, start, INFINITY,
                           abs(vx) * segment.span, up=vx > 0)
        return Segment(self.y_origami, start, vx / vy,
                       abs(vy) * segment.span, up=vy > 0)

    def crossing_sequence(self, segment):
        """Cylinder indices crossed by the segment, with multiplicity.
        For the horizontal base, membership lives on the diagonal-swapped
        surface, which shares square indices."""
        pulled = self.pull_back_segment(segment)
        seq = []
        for piece in pulled.pieces:
            ci = self.vertical.cylinder_of_square(piece[0])
            if not seq or seq[-1] != ci:
                seq.append(ci)
        return seq, pulled


def identity_decomposition(origami):
    from .sl2 import MAT_ID
    return InducedDecomposition(origami, MAT_ID, base="vertical")


@dataclass
class TransversalBound:
    crossed: tuple             # cylinder indices with multiplicity
    width_sum: int
    cos_squared: Fraction
    bound_squared: Fraction
    length_squared: Fraction
    holds: bool

    @property
    def bound(self):
        return float(self.bound_squared) ** 0.5


def transversal_bound(segment, decomposition):
    """Exact upper bound for the length of a segment crossing cylinders:
    sum of crossed widths over (sqrt(q^2+p^2) cos angle-to-orthogonal)."""
    p, q = decomposition.slope_pq()
    s = segment.slope
    if s == INFINITY:
        cos2_num, cos2_den = q * q, q * q + p * p
    else:
        cos2_num = (s.numerator * q - p * s.denominator) ** 2
        cos2_den = (s.numerator ** 2 + s.denominator ** 2) * (q * q + p * p)
    if cos2_num == 0:
        raise ParallelToDecomposition(f"slope {s} parallel to {p}/{q}")
    cos2 = Fraction(cos2_num, cos2_den)
    crossed, _ = decomposition.crossing_sequence(segment)
    widths = {c.index: c.width for c in decomposition.cylinders}
    wsum = sum(widths[ci] for ci in crossed)
    bound2 = Fraction(wsum * wsum) / ((q * q + p * p) * cos2)
    ls = segment.length_squared
    return TransversalBound(crossed=tuple(crossed), width_sum=wsum,
                            cos_squared=cos2, bound_squared=bound2,
                            length_squared=ls, holds=ls <= bound2)


@dataclass
class TrappingResult:
    cylinder_index: int
    window_span: Fraction      # |dy| extent W_i / alpha
    exit_span: object          # Fraction or None if never left within margin
    stayed_through_window: bool


def trapping_window(origami, decomposition, alpha, boundary_point,
                    margin=Fraction(1, 8)):
    """Verify by exact trace that the orbit of a cylinder-boundary point in
    a small slope alpha stays inside one vertical cylinder while it drifts
    across it: Euclidean window W_i sqrt(1+alpha^2)/alpha, i.e. |dy| span
    W_i/alpha."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise PreconditionViolated("need alpha > 0")
    for c in decomposition.cylinders:
        if alpha * c.length >= 1:
            raise PreconditionViolated(
                f"alpha {alpha} >= 1/L for cylinder of length {c.length}")
    if not decomposition.is_boundary_point(boundary_point):
        raise PreconditionViolated("start point is not on a cylinder boundary")

    first = trace(origami, alpha, boundary_point, span=Fraction(1, 1000),
                  collect_pieces=True, raise_on_cone=False)
    ci = decomposition.cylinder_of_square(first.pieces[0][0])
    cyl = decomposition.cylinders[ci]
    window = Fraction(cyl.width) / alpha
    res = trace(origami, alpha, boundary_point, span=window * (1 + margin),
                collect_pieces=True, raise_on_cone=False)
    exit_span = None
    s_done = Fraction(0)
    for piece in res.pieces:
        if piece[0] not in cyl.squares:
            exit_span = s_done
            break
        s_done += piece[4] - piece[2]
    stayed = exit_span is None or exit_span >= window
    return TrappingResult(cylinder_index=ci, window_span=window,
                          exit_span=exit_span, stayed_through_window=stayed)
