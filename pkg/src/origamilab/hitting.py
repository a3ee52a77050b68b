"""Hitting-time measurements: r-dense times, the special-radius upper bound,
the synthesized-slope lower bound with its audits, and exponent fits.

Density is certified on square cells of side 1/m <= r/sqrt(2), one bit per
cell (a cell never straddles a square, which only tightens the requirement).
Irrational slopes enter as exact convergents under the shadowing guard
|alpha - p_N/q_N| * T_cap < r/10. Times are tracked as exact rational rises
(|dy|); Euclidean times are compared through their exact squares.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cfrac import (SlopeSpec, ceil_power, g_matrix, parse_slope_spec,
                    rational_lt_power, slope_with_type)
from .cylinders import InducedDecomposition, trapping_window
from .errors import (CapTooSmall, ExponentTooSmall, InsufficientSpan,
                     OutOfRange, StartOnSingularLeaf)
from .flow import ceil_sqrt_fraction, trace
from .origami import SurfacePoint
from .sl2 import projective_slope, stretch_factor_squared

DEFAULT_MEM_BUDGET = 256 * 2 ** 20


# -- cell grid -------------------------------------------------------------------

class CellGrid:
    """One bit per cell, cells per square in an m x m grid."""

    def __init__(self, n_squares, m):
        self.n_squares = n_squares
        self.m = m
        self.row_bytes = (m + 7) // 8
        self.bits = np.zeros((n_squares, m, self.row_bytes), dtype=np.uint8)
        self.total = n_squares * m * m
        self.remaining = self.total

    def snapshot(self):
        return self.bits.copy()

    def _stamp(self, j, rows, cols, want_new):
        bytecols = cols >> 3
        bitmask = (1 << (cols & 7)).astype(np.uint8)
        vals = self.bits[j, rows, bytecols]
        newmask = (vals & bitmask) == 0
        self.bits[j, rows, bytecols] = vals | bitmask
        n_new = int(newmask.sum())
        self.remaining -= n_new
        if want_new and n_new:
            return n_new, rows[newmask], cols[newmask]
        return n_new, None, None

    def stamp_piece(self, j, X0, Y0, X1, Y1, M, p, q, want_new=False):
        """Stamp every cell the closed piece touches. Requires |p| <= q
        (at most two cell columns per cell row)."""
        m = self.m
        r0 = Y0 * m // M
        r1 = min(Y1 * m // M, m - 1)
        rows = np.arange(r0, r1 + 1, dtype=np.int64)
        if r1 > r0:
            ks = np.arange(r0 + 1, r1 + 1, dtype=np.int64)
            inner = (X0 * q * m + p * (ks * M - Y0 * m)) // (q * M)
        else:
            inner = np.empty(0, dtype=np.int64)
        c_start = min(X0 * m // M, m - 1)
        c_end = min(X1 * m // M, m - 1)
        los = np.concatenate(([c_start], inner))
        his = np.concatenate((inner, [c_end]))
        np.clip(los, 0, m - 1, out=los)
        np.clip(his, 0, m - 1, out=his)
        total_new = 0
        new_cells = []
        for cols in (los, his):
            n_new, nr, nc = self._stamp(j, rows, cols, want_new)
            total_new += n_new
            if nr is not None:
                new_cells.extend(zip(nr.tolist(), nc.tolist()))
        return total_new, new_cells

def cell_entry_span(X0, Y0, M, p, q, m, row, col):
    """Exact |dy| offset (from the piece start) at which the piece first
    touches cell (row, col); the piece is assumed to touch it."""
    y0 = Fraction(Y0, M)
    x0 = Fraction(X0, M)
    cands = [Fraction(0)]
    row_y = Fraction(row, m)
    if row_y > y0:
        cands.append(row_y - y0)
    if p > 0:
        xb = Fraction(col, m)
        if xb > x0:
            cands.append((xb - x0) * q / p)
    elif p < 0:
        xb = Fraction(col + 1, m)
        if xb < x0:
            cands.append((x0 - xb) * q / (-p))
    return max(cands)


# -- slope realization ---------------------------------------------------------------

@dataclass
class RealizedSlope:
    spec_text: str
    value: Fraction            # exact slope used by the tracer
    pN: int
    qN: int
    depth: object              # convergent depth, None for exact rationals
    error_bound: Fraction      # strict bound on |alpha - value| (0 if exact)


def realize_slope(spec, r2, time_cap2):
    """Convergent deep enough for the shadowing guard
    |alpha - p_N/q_N|^2 * T_cap^2 < r^2/100, all exact."""
    if isinstance(spec, str):
        spec = parse_slope_spec(spec)
    if spec.kind == "rational":
        v = spec.value
        return RealizedSlope(spec_text=spec.text, value=v, pN=v.numerator,
                             qN=v.denominator, depth=None,
                             error_bound=Fraction(0))
    if spec.kind != "cf":
        raise OutOfRange(f"cannot realize slope spec {spec.text!r}")
    cf = spec.cf
    n = 1
    while True:
        if cf.finite and n >= cf.depth_available:
            v = cf.value_exact()
            return RealizedSlope(spec_text=spec.text, value=v,
                                 pN=v.numerator, qN=v.denominator,
                                 depth=cf.depth_available,
                                 error_bound=Fraction(0))
        bound = cf.error_bound(n)
        if bound * bound * time_cap2 < r2 / 100:
            v = cf.convergent(n)
            return RealizedSlope(spec_text=spec.text, value=v,
                                 pN=v.numerator, qN=v.denominator, depth=n,
                                 error_bound=bound)
        n += 1


# -- r-dense time ----------------------------------------------------------------------

@dataclass
class HittingRecord:
    spec_text: str
    origami_name: str
    pN: int
    qN: int
    square: int
    x: Fraction
    y: Fraction
    r2: Fraction
    r: float
    cells_per_side: int
    T_span: object             # Fraction |dy| rise at completion, or None
    T2: object                 # exact squared Euclidean time, or None
    T: object                  # float, or None when capped
    capped: bool
    crossings: int
    seed: object = None

    def per_point_exponent(self):
        if self.T is None or self.r >= 1:
            return None
        return math.log(self.T) / -math.log(self.r)


def _euclid2(span, p, q):
    return span * span * Fraction(p * p + q * q, q * q)


def r_dense_time(origami, slope_spec, start, r2, *, time_cap,
                 mem_budget=DEFAULT_MEM_BUDGET, cells_per_side=None,
                 window2=None, seed=None, origami_name="origami",
                 chunk_span=32, backward_check=True):
    """First-visit density measurement: trace the flow, stamping cells, until
    every cell is visited at a time > r (T = the last first-visit) or the
    time cap is reached (record flagged capped).

    window2, when given, is an exact squared time: the grid is snapshotted
    once the trace passes it (used by the tube audit). Returns
    (record, grid, snapshot).
    """
    r2 = Fraction(r2)
    if r2 <= 0:
        raise OutOfRange("need r > 0")
    time_cap2 = Fraction(time_cap) ** 2
    if time_cap2 <= r2:
        raise CapTooSmall("time cap below the radius threshold")
    real = realize_slope(slope_spec, r2, time_cap2)
    alpha = real.value
    p, q = alpha.numerator, alpha.denominator
    if abs(p) > q:
        raise OutOfRange("density kernel needs |slope| <= 1")

    m = cells_per_side or max(1, ceil_sqrt_fraction(2 / r2))
    grid = CellGrid(origami.n, m)
    if grid.total > mem_budget * 8:
        raise CapTooSmall(
            f"cell store needs {grid.total} bits > budget {mem_budget * 8}")
    # every event coordinate lives on the (1/Mrun)-grid
    d0 = start.x.denominator * start.y.denominator // math.gcd(
        start.x.denominator, start.y.denominator)
    Mrun = d0 * q * max(1, abs(p))
    assert q * Mrun * m < 2 ** 61, "stamping would overflow int64"

    # span caps: S^2 (p^2+q^2)/q^2 >= cap^2  <=>  S >= S_cap
    pq2 = Fraction(p * p + q * q, q * q)
    span_cap = Fraction(ceil_sqrt_fraction(time_cap2 / pq2 * 64 ** 2), 64)
    skip2 = r2 / pq2               # pieces starting at S with S^2 <= skip2 skip
    window_span2 = None if window2 is None else Fraction(window2) / pq2

    if backward_check:
        back = trace(origami, alpha, start, up=False, span=span_cap,
                     collect_pieces=False, raise_on_cone=False)
        if back.status == "cone":
            raise StartOnSingularLeaf("backward orbit hits a cone vertex")

    S = Fraction(0)
    crossings = 0
    T_span = None
    snapshot = None
    cur = start
    capped = False
    while True:
        res = trace(origami, alpha, cur, span=chunk_span, collect_pieces=True,
                    raise_on_cone=False)
        if res.status == "cone":
            raise StartOnSingularLeaf("forward orbit hits a cone vertex")
        crossings += res.crossings
        done = False
        for (j, x0, y0, x1, y1) in res.pieces:
            if snapshot is None and window_span2 is not None \
                    and S * S >= window_span2:
                snapshot = grid.snapshot()
            dspan = y1 - y0
            if S * S <= skip2:
                S += dspan
                continue
            pc = [x0 * Mrun, y0 * Mrun, x1 * Mrun, y1 * Mrun]
            assert all(v.denominator == 1 for v in pc), "off-grid piece"
            X0, Y0, X1, Y1 = (int(v) for v in pc)
            want_new = grid.remaining <= 2 * (m + 2)
            n_new, new_cells = grid.stamp_piece(j, X0, Y0, X1, Y1, Mrun, p, q,
                                                want_new=want_new)
            if grid.remaining == 0:
                entries = [cell_entry_span(X0, Y0, Mrun, p, q, m, r, c)
                           for (r, c) in new_cells]
                T_span = S + max(entries)
                done = True
                break
            S += dspan
        if done:
            break
        cur = res.end
        if S >= span_cap:
            capped = True
            break
    if snapshot is None and window_span2 is not None:
        snapshot = grid.snapshot()

    if capped:
        T2 = None
        T = None
        T_span = None
    else:
        T2 = _euclid2(T_span, p, q)
        T = float(T2) ** 0.5
    record = HittingRecord(
        spec_text=slope_spec if isinstance(slope_spec, str) else slope_spec.text,
        origami_name=origami_name, pN=real.pN, qN=real.qN,
        square=start.square, x=start.x, y=start.y, r2=r2,
        r=float(r2) ** 0.5, cells_per_side=m, T_span=T_span, T2=T2, T=T,
        capped=capped, crossings=crossings, seed=seed)
    return record, grid, snapshot


def _start_candidates(origami, start, tries=16):
    """The requested start plus deterministic perturbations with a coprime
    denominator, for retrying exact singular-leaf coincidences."""
    yield start
    for t in range(1, tries):
        x = (start.x + Fraction(16 * t, 257)) % 1
        y = (start.y + Fraction(48 * t, 257)) % 1
        if x == 0 or y == 0:
            continue
        yield SurfacePoint((start.square + t) % origami.n, x, y)


def _measure_with_retry(origami, spec, start, r2, **kw):
    last = None
    for cand in _start_candidates(origami, start):
        try:
            return r_dense_time(origami, spec, cand, r2, **kw)
        except StartOnSingularLeaf as exc:
            last = exc
    raise last


# -- the special-radius upper bound ---------------------------------------------------

@dataclass
class SpecialTimesRow:
    n: int
    q_n: int
    r: float
    record: HittingRecord
    bound: int                 # 4 K q_n
    ratio: object              # float T / bound, None when capped
    ok: bool


@dataclass
class SpecialTimesResult:
    K: int
    rows: list
    all_ok: bool


def special_times_check(origami, slope_spec, start, n_values, K=17,
                        mem_budget=DEFAULT_MEM_BUDGET, origami_name="origami"):
    """Measure T at the radii r_n = 2(K+1)/q_n and check T <= 4 K q_n."""
    spec = parse_slope_spec(slope_spec) if isinstance(slope_spec, str) else slope_spec
    if spec.kind != "cf":
        raise OutOfRange("need a continued-fraction slope spec")
    rows = []
    for n in sorted(n_values):
        q_n = spec.cf.q(n)
        r_n = Fraction(2 * (K + 1), q_n)
        bound = 4 * K * q_n
        rec, _, _ = _measure_with_retry(origami, spec, start, r_n ** 2,
                                        time_cap=2 * bound,
                                        mem_budget=mem_budget,
                                        origami_name=origami_name)
        ok = (not rec.capped) and rec.T2 <= Fraction(bound) ** 2
        ratio = None if rec.capped else rec.T / bound
        rows.append(SpecialTimesRow(n=n, q_n=q_n, r=float(r_n), record=rec,
                                    bound=bound, ratio=ratio, ok=ok))
    return SpecialTimesResult(K=K, rows=rows, all_ok=all(r.ok for r in rows))


# -- the synthesized-slope lower bound and its audits -----------------------------------

@dataclass
class TubeAudit:
    performed: bool
    clearance: object = None       # exact orbit distance to the core line
    clearance_ok: bool = False
    cylinder: object = None
    core_x: object = None
    tube_cells: int = 0
    stamped_tube_cells: int = 0
    ok: bool = False
    note: str = ""


@dataclass
class LowerBoundRow:
    k: int
    q2k: int
    p2k: int
    quotient_ok: bool          # a_{2k+1} >= ceil(q_2k^(w-1))
    record: HittingRecord
    threshold2_num: int        # ceil(q^(2w)); threshold^2 = this / 8
    lower_ok: bool             # T >= q^w / sqrt(8)
    kappa2: object
    kappa_ok: bool             # kappa^2 > q^2/2
    trapping_ok: object        # None when the precondition fails at this level
    tube: TubeAudit = None


@dataclass
class LowerBoundResult:
    w: Fraction
    rows: list
    all_ok: bool


def _renormalized_clearance(decomp, chart_inv_start, beta, span, core_candidates=64):
    """Trace the renormalized orbit and find a vertical core line at exact
    distance > 1/4 from its transversal sweep; returns (cyl, x*, clearance)."""
    yo = decomp.vertical.origami
    res = trace(yo, beta, chart_inv_start, up=True, span=span,
                collect_pieces=True, raise_on_cone=False)
    sweeps = {}
    for (j, x0, _, x1, _) in res.pieces:
        ci, off = decomp.vertical.position[j]
        lo, hi = min(x0, x1) + off, max(x0, x1) + off
        if ci in sweeps:
            sweeps[ci] = (min(sweeps[ci][0], lo), max(sweeps[ci][1], hi))
        else:
            sweeps[ci] = (lo, hi)
    best = None
    quarter = Fraction(1, 4)
    for cyl in decomp.vertical.cylinders:
        W = cyl.width
        lo_hi = sweeps.get(cyl.index)
        for i in range(1, core_candidates):
            x = Fraction(i * W, core_candidates)
            if not quarter <= x <= W - quarter:
                continue
            if lo_hi is None:
                clearance = Fraction(W)      # cylinder never visited
            else:
                lo, hi = lo_hi
                if lo <= x <= hi:
                    continue
                clearance = min(abs(x - lo), abs(x - hi))
            if best is None or clearance > best[2]:
                best = (cyl.index, x, clearance)
    return best, res


def _tube_cells(origami, chart, decomp, cyl_index, core_x, grid_bits, m, p, q):
    """Cells lying entirely inside the 1/4-slabs around the chords of the
    core closed geodesic (the image of the vertical line at core_x), and how
    many of them are stamped in the given bit snapshot."""
    cyl = decomp.vertical.cylinders[cyl_index]
    strip_idx = int(core_x)        # offset of the strip containing the line
    anchor_sq = cyl.strips[strip_idx][0]
    anchor = SurfacePoint(anchor_sq, core_x - strip_idx, Fraction(1, 2))
    z0 = chart.map_point(anchor)
    span = cyl.length * q
    core = trace(origami, Fraction(p, q), z0, span=span, collect_pieces=True,
                 raise_on_cone=False)
    assert core.status == "ok" and core.end == z0, "core geodesic must close"

    per_square = {}
    for (j, x0, y0, x1, y1) in core.pieces:
        kappa = q * x0 - p * y0
        assert q * x1 - p * y1 == kappa
        per_square.setdefault(j, set()).add(kappa)

    total = 0
    stamped = 0
    rows = np.arange(m, dtype=np.int64)
    for j, kappas in per_square.items():
        for kappa in kappas:
            D = 4 * kappa.denominator
            ks = int(kappa * D)             # kappa in units of 1/D
            quarter = D // 4
            Q = D * q
            # cell fully inside the open slab kappa-1/4 < f < kappa+1/4:
            #   q*c/m - p*(r+1)/m > kappa - 1/4  and  q*(c+1)/m - p*r/m < kappa + 1/4
            t_lo = (ks - quarter) * m + D * p * (rows + 1)
            t_hi = (ks + quarter) * m + D * p * rows
            c_min = t_lo // Q + 1
            c_max = -((-t_hi) // Q) - 1 - 1
            c_min = np.maximum(c_min, 0)
            c_max = np.minimum(c_max, m - 1)
            for r in np.nonzero(c_min <= c_max)[0].tolist():
                lo, hi = int(c_min[r]), int(c_max[r])
                cols = np.arange(lo, hi + 1, dtype=np.int64)
                bytecols = cols >> 3
                bitmask = (1 << (cols & 7)).astype(np.uint8)
                vals = grid_bits[j, r, bytecols]
                total += len(cols)
                stamped += int(((vals & bitmask) != 0).sum())
    return total, stamped


def lower_bound_experiment(origami, w, k_values, start,
                           mem_budget=DEFAULT_MEM_BUDGET, cap_factor=48,
                           audits=True, origami_name="origami",
                           trapping_points=4):
    """For a slope synthesized with type w > 1, measure T at the special
    radii r_k = 1/(q_2k sqrt(32)) and check T >= q_2k^w / sqrt(8), plus the
    stretch-factor, trapping-window and avoided-tube audits."""
    w = Fraction(w)
    if w <= 1:
        raise ExponentTooSmall("the construction needs w > 1")
    spec = SlopeSpec(text=f"type:w={w}", kind="cf", cf=slope_with_type(w))
    cf = spec.cf
    rows = []
    for k in sorted(k_values):
        n2k = 2 * k
        cf.ensure(n2k + 2)
        q2k, p2k = cf.q(n2k), cf.p(n2k)
        quotient_ok = cf.quotient(n2k + 1) >= ceil_power(q2k, w - 1)
        r2 = Fraction(1, 32 * q2k * q2k)
        thr2_num = ceil_power(q2k, 2 * w)       # threshold^2 <= thr2_num/8
        window2 = Fraction(thr2_num, 8)
        # density needs at least ~area/(2r) time; keep the cap well above both
        time_cap = cap_factor * (ceil_power(q2k, w) + 6 * 6 * q2k + 1)
        rec, grid, snapshot = _measure_with_retry(
            origami, spec, start, r2, time_cap=time_cap,
            mem_budget=mem_budget, window2=window2,
            origami_name=origami_name)
        if rec.capped:
            lower_ok = True        # not dense by the cap >= threshold
        else:
            lower_ok = not rational_lt_power(8 * rec.T2, q2k, 2 * w)

        if k == 0:
            mat = g_matrix(())
        else:
            mat = g_matrix(cf.quotients(n2k))
        alpha_n = Fraction(rec.pN, rec.qN)
        beta = projective_slope(mat.inv(), alpha_n)
        kappa2 = stretch_factor_squared(mat, beta)
        kappa_ok = kappa2 > Fraction(q2k * q2k, 2)

        trapping_ok = None
        tube = TubeAudit(performed=False, note="k = 0 is the vertical base")
        if audits and k >= 1:
            decomp = InducedDecomposition(origami, mat, base="vertical")
            vd = decomp.vertical
            if all(beta * c.length < 1 for c in vd.cylinders):
                trapping_ok = True
                yo = vd.origami
                for t in range(trapping_points):
                    cylt = vd.cylinders[t % len(vd.cylinders)]
                    sq = cylt.strips[0][t % len(cylt.strips[0])]
                    ptb = SurfacePoint(sq, Fraction(0),
                                       Fraction(2 * t + 1, 2 * trapping_points + 1))
                    try:
                        tr = trapping_window(yo, vd, beta, ptb)
                        trapping_ok = trapping_ok and tr.stayed_through_window
                    except StartOnSingularLeaf:
                        continue
            used_start = SurfacePoint(rec.square, rec.x, rec.y)
            inv_start = decomp.chart.inverse().map_point(used_start)
            span_min2 = window2 / (kappa2 * (1 + beta * beta))
            span_y = Fraction(ceil_sqrt_fraction(span_min2 * 64 ** 2), 64)
            best, _ = _renormalized_clearance(decomp, inv_start, beta, span_y)
            if best is None:
                tube = TubeAudit(performed=True, ok=False,
                                 note="no core line with positive clearance")
            else:
                ci, core_x, clearance = best
                total, stamped = _tube_cells(origami, decomp.chart, decomp,
                                             ci, core_x, snapshot,
                                             rec.cells_per_side, p2k, q2k)
                tube = TubeAudit(performed=True, clearance=clearance,
                                 clearance_ok=clearance > Fraction(1, 4),
                                 cylinder=ci, core_x=core_x, tube_cells=total,
                                 stamped_tube_cells=stamped,
                                 ok=clearance > Fraction(1, 4) and stamped == 0
                                 and total > 0)
        rows.append(LowerBoundRow(k=k, q2k=q2k, p2k=p2k,
                                  quotient_ok=quotient_ok, record=rec,
                                  threshold2_num=thr2_num, lower_ok=lower_ok,
                                  kappa2=kappa2, kappa_ok=kappa_ok,
                                  trapping_ok=trapping_ok, tube=tube))
    all_ok = all(r.quotient_ok and r.lower_ok and r.kappa_ok
                 and (r.trapping_ok is not False)
                 and (not r.tube.performed or r.tube.ok) for r in rows)
    return LowerBoundResult(w=w, rows=rows, all_ok=all_ok)


# -- exponent fit -----------------------------------------------------------------------

@dataclass
class ExponentFit:
    h_hat: float
    envelope: list             # (x, y) points on the upper hull
    per_point: list            # (r, T, exponent or None)
    n_records: int


def exponent_estimate(records, min_records=5, min_decades=1.5):
    """Least-squares slope through the upper convex hull of
    (-log r, log T); per-point exponents log T / -log r reported alongside."""
    usable = [rec for rec in records if not rec.capped and rec.T is not None]
    if len(usable) < min_records:
        raise InsufficientSpan(f"need >= {min_records} records, have {len(usable)}")
    rs = [rec.r for rec in usable]
    if math.log10(max(rs) / min(rs)) < min_decades:
        raise InsufficientSpan("records span fewer than "
                               f"{min_decades} decades of r")
    pts = sorted({(-math.log(rec.r), math.log(rec.T)) for rec in usable})
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) >= (pt[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(pt)
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    n = len(hull)
    if n == 1:
        raise InsufficientSpan("degenerate envelope")
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    denom = sum((x - xbar) ** 2 for x in xs)
    slope = sum((x - xbar) * (y - ybar) for x, y in hull) / denom
    per_point = [(rec.r, rec.T, rec.per_point_exponent()) for rec in usable]
    return ExponentFit(h_hat=slope, envelope=hull, per_point=per_point,
                       n_records=len(usable))


# -- record CSV -------------------------------------------------------------------------

RECORD_FIELDS = ("slope_spec", "pN", "qN", "square", "x", "y", "r", "cells",
                 "T", "capped", "crossings", "seed")


def record_row(rec):
    return (rec.spec_text, str(rec.pN), str(rec.qN), str(rec.square),
            str(rec.x), str(rec.y), repr(rec.r), str(rec.cells_per_side),
            "" if rec.T is None else repr(rec.T),
            "1" if rec.capped else "0", str(rec.crossings),
            "" if rec.seed is None else str(rec.seed))


def write_records(path, records):
    with open(path, "w") as fh:
        fh.write(",".join(RECORD_FIELDS) + "\n")
        for rec in records:
            fh.write(",".join(record_row(rec)) + "\n")


def read_records(path):
    out = []
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        assert header == list(RECORD_FIELDS), f"bad header {header}"
        for line in fh:
            vals = dict(zip(RECORD_FIELDS, line.rstrip("\n").split(",")))
            r = float(vals["r"])
            out.append(HittingRecord(
                spec_text=vals["slope_spec"], origami_name="",
                pN=int(vals["pN"]), qN=int(vals["qN"]),
                square=int(vals["square"]), x=Fraction(vals["x"]),
                y=Fraction(vals["y"]), r2=Fraction(r) ** 2, r=r,
                cells_per_side=int(vals["cells"]),
                T_span=None, T2=None,
                T=None if vals["T"] == "" else float(vals["T"]),
                capped=vals["capped"] == "1",
                crossings=int(vals["crossings"]),
                seed=None if vals["seed"] == "" else int(vals["seed"])))
    return out
