"""Shapes carved out of curved strips: the strip itself, capped substrips,
corner-cut variants, and the feasibility scan for cap placements.

For a spine gamma with left normal nu, the strip is Psi([0, L] x [-1, 1]),
Psi(s, t) = gamma(s) + t nu(s).  A "topped substrip" anchored at s0 is
Psi([s0, s0+M] x [-1, 1]) together with two unit half-disks centered at
gamma(s0) and gamma(s0+M) on the outward sides.  Whatever the spine's
curvature, its area is 2M + pi and its perimeter 2M + 2pi: the linear
curvature term integrates to zero across the width, and the two offset
lengths (1-kappa) ds + (1+kappa) ds cancel.  A placement is feasible when
both caps lie inside the strip and the caps do not collide with each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import CurveKind, StripCurve
from .geometry import (PolyShape, STRAIGHT, first_segment_intersection,
                       signed_area)

__all__ = [
    "FitResult",
    "build_cut_corner_strip",
    "build_strip_polygon",
    "build_topped_substrip_on_curve",
    "fit_topped_substrip",
]

# Containment slack for exact-resolution tests is CONTAINMENT_RTOL * length.
CONTAINMENT_RTOL = 1e-9

DEFAULT_SCAN_CAP_POINTS = 128


def _ccw(vertices: np.ndarray) -> np.ndarray:
    return vertices if signed_area(vertices) > 0.0 else vertices[::-1]


def _unique_offset(curve: StripCurve, level: float) -> np.ndarray:
    """Offset polyline without the duplicated closing sample of an annulus."""
    pts = curve.offset(level)
    return pts[:-1] if curve.kind is CurveKind.ANNULUS else pts


def build_strip_polygon(curve: StripCurve,
                        max_boundary_points: int | None = None,
                        check: bool = True) -> PolyShape:
    """Polygon bounded by the offsets at t = +-1 (plus end segments if open).

    For an annulus spine the result has one hole (outer and inner offset
    loops).  ``max_boundary_points`` caps the vertex count per offset side by
    striding the curve's samples; endpoints of open spines are always kept.
    With ``check`` (default) the offset polylines are tested for injectivity
    of the offset map and the build is rejected naming the first crossing
    segment pair; pass check=False for curves that already passed validate().
    """
    lo = _unique_offset(curve, -1.0)
    hi = _unique_offset(curve, +1.0)
    n = len(lo)
    if max_boundary_points is not None and n > max_boundary_points:
        stride = int(math.ceil(n / max_boundary_points))
        idx = np.arange(0, n, stride)
        if curve.kind is not CurveKind.ANNULUS and idx[-1] != n - 1:
            idx = np.append(idx, n - 1)
        lo, hi = lo[idx], hi[idx]
    if check:
        closed = curve.kind is CurveKind.ANNULUS
        for label, path in (("lower", lo), ("upper", hi)):
            pair = first_segment_intersection(path, closed_a=closed)
            if pair is not None:
                raise ValueError(
                    f"offset map is not injective: the {label} offset "
                    f"polyline self-intersects at segment pair {pair}")
        pair = first_segment_intersection(lo, hi, closed_a=closed,
                                          closed_b=closed)
        if pair is not None:
            raise ValueError(
                "offset map is not injective: the two offset polylines "
                f"cross at segment pair {pair}")
    if curve.kind is CurveKind.ANNULUS:
        area_lo, area_hi = abs(signed_area(lo)), abs(signed_area(hi))
        outer, inner = (lo, hi) if area_lo >= area_hi else (hi, lo)
        return PolyShape(_ccw(outer), holes=(_ccw(inner),),
                         arc_tags=((len(outer), STRAIGHT),),
                         segments_per_arc=len(lo))
    boundary = np.vstack([lo, hi[::-1]])
    return PolyShape(_ccw(boundary), arc_tags=((len(boundary), STRAIGHT),),
                     segments_per_arc=len(lo))


def _offset_run(curve: StripCurve, level: float, s_a: float,
                s_b: float) -> np.ndarray:
    """Offset polyline from s_a to s_b inclusive: exact frames at both ends,
    the curve's stored samples strictly in between.  s_b may exceed the spine
    length on annulus spines (wraps)."""
    if s_b < s_a:
        raise ValueError(f"need s_a <= s_b, got [{s_a}, {s_b}]")
    ds = curve.ds
    off = _unique_offset(curve, level)
    n = len(off)
    i_lo = int(math.floor(s_a / ds + 1e-9)) + 1
    i_hi = int(math.ceil(s_b / ds - 1e-9)) - 1
    if i_hi >= i_lo:
        idx = np.arange(i_lo, i_hi + 1)
        mid = off[idx % n] if curve.kind is CurveKind.ANNULUS else off[idx]
    else:
        mid = np.empty((0, 2))
    p_a, _, n_a = curve.frame_at(s_a)
    p_b, _, n_b = curve.frame_at(s_b)
    return np.vstack([[p_a + level * n_a], mid, [p_b + level * n_b]])


def _cap_boundary(center: np.ndarray, tangent: np.ndarray, normal: np.ndarray,
                  outward: float, n_points: int) -> np.ndarray:
    """Sampled half-circle boundary of a unit cap (flat side excluded).

    ``outward`` is +1 for a cap pointing along the tangent (forward end),
    -1 for one pointing against it.  Runs from center - normal to
    center + normal through center + outward * tangent.
    """
    phi = np.linspace(-0.5 * math.pi, 0.5 * math.pi, n_points)
    return (center
            + outward * np.outer(np.cos(phi), tangent)
            + np.outer(np.sin(phi), normal))


def _check_tags(vertices: np.ndarray, tags: tuple[tuple[int, object], ...]) -> None:
    covered = sum(n for n, _ in tags)
    if covered != len(vertices):
        raise AssertionError(f"edge tags cover {covered} edges, loop has {len(vertices)}")


def build_topped_substrip_on_curve(curve: StripCurve, s0: float, m: float,
                                   segments: int = 256) -> PolyShape:
    """Polygon of the capped substrip anchored at arclength s0.

    Offsets are taken at the curve's own sample resolution; each half-disk
    cap gets ``segments`` edges.  On annulus spines s0 + M may wrap.
    """
    if m < 0.0:
        raise ValueError(f"substrip length must be >= 0, got {m}")
    if segments < 4:
        raise ValueError(f"need >= 4 segments per cap, got {segments}")
    wrap = curve.kind is CurveKind.ANNULUS
    s1 = s0 + m
    if not wrap and (s0 < -1e-9 or s1 > curve.length + 1e-9):
        raise ValueError(f"substrip [{s0}, {s1}] outside spine [0, {curve.length}]")
    p0, t0, n0 = curve.frame_at(s0)
    p1, t1, n1 = curve.frame_at(s1)
    bottom = _offset_run(curve, -1.0, s0, s1)
    top = _offset_run(curve, +1.0, s0, s1)
    cap_fwd = _cap_boundary(p1, t1, n1, +1.0, segments + 1)[1:]
    cap_back = _cap_boundary(p0, t0, n0, -1.0, segments + 1)[::-1][1:-1]
    boundary = np.vstack([bottom, cap_fwd, top[::-1][1:], cap_back])
    tags = ((len(bottom) - 1, STRAIGHT),
            (segments, ((float(p1[0]), float(p1[1])), 1.0)),
            (len(top) - 1, STRAIGHT),
            (segments, ((float(p0[0]), float(p0[1])), 1.0)))
    _check_tags(boundary, tags)
    area = signed_area(boundary)
    if area <= 0.0:
        raise ValueError(f"degenerate capped substrip (signed area {area})")
    return PolyShape(boundary, arc_tags=tags, segments_per_arc=segments)


def _end_offset_crossing(curve: StripCurve, end: int, level: float,
                         depth: float) -> float:
    """Arclength s where the offset polyline Psi(s, level) reaches signed
    distance ``depth`` from the end line, measured along the inward tangent.

    ``end`` is 0 for the s=0 end, 1 for the s=L end.  Monotone near the ends
    for admissible spines; solved on the samples with linear interpolation.
    """
    pts = curve.offset(level)
    if end == 0:
        base, tan, _ = curve.frame_at(0.0)
        inward = tan
    else:
        base, tan, _ = curve.frame_at(curve.length)
        inward = -tan
        pts = pts[::-1]
    g = (pts - base) @ inward
    idx = int(np.argmax(g >= depth))
    if g[idx] < depth:
        raise ValueError(f"spine too short to cut a corner of depth {depth}")
    if idx == 0:
        return 0.0 if end == 0 else curve.length
    g0, g1 = g[idx - 1], g[idx]
    w = (depth - g0) / (g1 - g0)
    s_from_end = (idx - 1 + w) * curve.ds
    return s_from_end if end == 0 else curve.length - s_from_end


def _arc_between(center: np.ndarray, radius: float, p_from: np.ndarray,
                 p_to: np.ndarray, segments: int) -> np.ndarray:
    """Inscribed arc from p_from to p_to around center, short way, with
    segments+1 points (both endpoints included)."""
    a0 = math.atan2(p_from[1] - center[1], p_from[0] - center[0])
    a1 = math.atan2(p_to[1] - center[1], p_to[0] - center[0])
    sweep = (a1 - a0 + math.pi) % (2.0 * math.pi) - math.pi
    ang = a0 + sweep * np.linspace(0.0, 1.0, segments + 1)
    return center + radius * np.column_stack([np.cos(ang), np.sin(ang)])


def build_cut_corner_strip(curve: StripCurve, t: float,
                           segments: int = 256) -> PolyShape:
    """The strip with its four corners cut by arcs of radius t (0 < t <= 1).

    Each corner arc is tangent both to the end segment and to the offset
    boundary: its center sits on the level +-(1-t) offset at inward distance
    t from the end line.  Reduces to the cut-corner rectangle for a straight
    spine.  Finite open spines only.
    """
    if curve.kind is not CurveKind.FINITE:
        raise ValueError(f"corner cutting needs a finite open spine, got {curve.kind}")
    if not (0.0 < t <= 1.0):
        raise ValueError(f"corner radius must be in (0, 1], got {t}")
    if segments < 4:
        raise ValueError(f"need >= 4 segments per arc, got {segments}")

    corners = {}
    for end in (0, 1):
        s_end = 0.0 if end == 0 else curve.length
        e_pt, e_tan, _ = curve.frame_at(s_end)
        inward = e_tan if end == 0 else -e_tan
        for side in (-1.0, +1.0):
            level = side * (1.0 - t)
            s_c = _end_offset_crossing(curve, end, level, t)
            c_pt, _, c_nor = curve.frame_at(s_c)
            center = c_pt + level * c_nor
            # tangency foot on the end line: drop the inward component
            foot = center - ((center - e_pt) @ inward) * inward
            touch = c_pt + side * c_nor  # tangency on the offset boundary
            corners[(end, side)] = (center, foot, touch, s_c)

    c_bl, f_bl, o_bl, s_bl = corners[(0, -1.0)]
    c_br, f_br, o_br, s_br = corners[(1, -1.0)]
    c_tr, f_tr, o_tr, s_tr = corners[(1, +1.0)]
    c_tl, f_tl, o_tl, s_tl = corners[(0, +1.0)]
    if s_bl >= s_br or s_tl >= s_tr:
        raise ValueError(f"spine too short for corner radius {t}")

    bottom = _offset_run(curve, -1.0, s_bl, s_br)
    top = _offset_run(curve, +1.0, s_tl, s_tr)
    arc_br = _arc_between(c_br, t, o_br, f_br, segments)[1:]
    arc_tr = _arc_between(c_tr, t, f_tr, o_tr, segments)
    arc_tl = _arc_between(c_tl, t, o_tl, f_tl, segments)[1:]
    arc_bl = _arc_between(c_bl, t, f_bl, o_bl, segments)[:-1]
    boundary = np.vstack([bottom, arc_br, arc_tr, top[::-1][1:], arc_tl, arc_bl])

    def tag(c):
        return ((float(c[0]), float(c[1])), t)

    tags = ((len(bottom) - 1, STRAIGHT), (segments, tag(c_br)),
            (1, STRAIGHT), (segments, tag(c_tr)),
            (len(top) - 1, STRAIGHT), (segments, tag(c_tl)),
            (1, STRAIGHT), (segments, tag(c_bl)))
    _check_tags(boundary, tags)
    area = signed_area(boundary)
    if area <= 0.0:
        raise ValueError(f"degenerate corner-cut strip (signed area {area})")
    return PolyShape(boundary, arc_tags=tags, segments_per_arc=segments)


@dataclass(frozen=True)
class FitResult:
    """Outcome of scanning cap placements along a spine.

    ``candidates`` holds the scanned anchor values s0, ``feasible`` the
    verdict per candidate, ``step`` the scan resolution.  On annulus spines a
    feasible run that wraps past s = 0 shows up as two intervals.
    """

    candidates: np.ndarray
    feasible: np.ndarray
    step: float
    cap_points: int

    @property
    def any_feasible(self) -> bool:
        return bool(self.feasible.any())

    @property
    def feasible_s0(self) -> np.ndarray:
        return self.candidates[self.feasible]

    @property
    def intervals(self) -> list[tuple[float, float]]:
        out: list[tuple[float, float]] = []
        run_start = prev = None
        for s, ok in zip(self.candidates, self.feasible):
            if ok:
                if run_start is None:
                    run_start = s
                prev = s
            elif run_start is not None:
                out.append((float(run_start), float(prev)))
                run_start = None
        if run_start is not None:
            out.append((float(run_start), float(prev)))
        return out


def _caps_collide(c_a: np.ndarray, u_a: np.ndarray, c_b: np.ndarray,
                  u_b: np.ndarray, n_probe: int = 64) -> bool:
    """Do two unit half-disk caps (centers c, outward flat-side directions u)
    overlap?  Probes each cap's sampled closure against the other's
    half-disk inequalities."""
    gap = float(np.hypot(*(c_a - c_b)))
    if gap >= 2.0:
        return False
    if gap <= 1e-12:
        # coincident centers: complementary half-disks (opposite flat
        # normals) share only their diameter, anything else overlaps
        return float(u_a @ u_b) > -1.0 + 1e-9
    phi = np.linspace(-0.5 * math.pi, 0.5 * math.pi, n_probe)
    for c_this, u_this, c_other, u_other in ((c_a, u_a, c_b, u_b),
                                             (c_b, u_b, c_a, u_a)):
        nor = np.array([-u_this[1], u_this[0]])
        for rad in (1.0, 0.5, 0.25):
            pts = c_this + rad * (np.outer(np.cos(phi), u_this)
                                  + np.outer(np.sin(phi), nor))
            rel = pts - c_other
            inside = (np.hypot(rel[:, 0], rel[:, 1]) < 1.0 - 1e-9) \
                & (rel @ u_other > 1e-9)
            if inside.any():
                return True
    return False


class _TubeProbe:
    """Containment test against the strip as a tubular neighborhood.

    For an admissible spine (injective offset map) the strip is exactly the
    set of points within distance 1 of the spine, minus, for open spines, the
    two half-disk regions beyond the end lines.  A point passes when its
    clamped distance to the spine polyline is <= 1 + tol and it is not
    strictly behind an end line while within unit reach of that endpoint.
    The spine polyline is decimated to at most ``max_points`` vertices; with
    |curvature| <= 1 the inscribed polyline sags below the smooth spine by at
    most eff_step^2 / 8, which the caller folds into the tolerance.
    """

    def __init__(self, curve: StripCurve, max_points: int):
        pts = curve.points
        closed = curve.kind is CurveKind.ANNULUS
        if closed:
            pts = pts[:-1]
        n = len(pts)
        stride = max(int(math.ceil(n / max_points)), 1)
        idx = np.arange(0, n, stride)
        if not closed and idx[-1] != n - 1:
            idx = np.append(idx, n - 1)
        sp = pts[idx]
        if closed:
            self.a = sp
            self.b = np.roll(sp, -1, axis=0)
        else:
            self.a = sp[:-1]
            self.b = sp[1:]
        self.closed = closed
        self.eff_step = stride * curve.ds
        ab = self.b - self.a
        self.ab = ab
        self.ab2 = np.maximum(np.einsum("ij,ij->i", ab, ab), 1e-300)
        self.mid = 0.5 * (self.a + self.b)
        self.half = 0.5 * np.sqrt(self.ab2)
        if not closed:
            self.p_start, t_start, _ = curve.frame_at(0.0)
            self.t_start = t_start
            self.p_end, t_end, _ = curve.frame_at(curve.length)
            self.t_end = t_end

    def contains(self, pts: np.ndarray, centers: np.ndarray,
                 tol: float) -> bool:
        """Are all pts inside the strip?  ``centers`` are reference points
        (cap centers) used to prefilter spine segments: every tested point
        lies within distance 1 of one of them."""
        reach = 2.0 + float(self.half.max()) + 0.1
        local = np.zeros(len(self.a), dtype=bool)
        for c in centers:
            local |= np.hypot(*(self.mid - c).T) <= reach
        sel = np.flatnonzero(local)
        if len(sel) == 0:
            return False
        a, ab, ab2 = self.a[sel], self.ab[sel], self.ab2[sel]
        ap = pts[:, None, :] - a[None, :, :]
        tt = np.clip(np.einsum("pij,ij->pi", ap, ab) / ab2, 0.0, 1.0)
        closest = a[None, :, :] + tt[:, :, None] * ab[None, :, :]
        d = np.hypot(*(pts[:, None, :] - closest).transpose(2, 0, 1)).min(axis=1)
        if (d > 1.0 + tol).any():
            return False
        if not self.closed:
            rel0 = pts - self.p_start
            in_d0 = (rel0 @ self.t_start < -tol) \
                & (np.hypot(rel0[:, 0], rel0[:, 1]) <= 1.0 + tol)
            rel1 = pts - self.p_end
            in_d1 = (rel1 @ self.t_end > tol) \
                & (np.hypot(rel1[:, 0], rel1[:, 1]) <= 1.0 + tol)
            if in_d0.any() or in_d1.any():
                return False
        return True


def fit_topped_substrip(curve: StripCurve, m: float, *,
                        scan_step: float | None = None,
                        cap_points: int = DEFAULT_SCAN_CAP_POINTS,
                        spine_points: int = 2048,
                        tol: float | None = None) -> FitResult:
    """Scan anchor positions s0 at which the capped substrip fits the strip.

    The substrip itself is a subset of the strip by construction, so only the
    caps are tested: every sampled cap-boundary point must lie within the
    strip (tubular-neighborhood distance test, see _TubeProbe), and the two
    caps must not collide (relevant on closed spines when M approaches the
    spine length).  The tolerance absorbs the spine decimation sag
    (eff_step^2 / 8) plus 1e-9 * L; caps touching the boundary tangentially,
    which they always do along their flat-side endpoints, stay feasible.
    """
    if m < 0.0:
        raise ValueError(f"substrip length must be >= 0, got {m}")
    wrap = curve.kind is CurveKind.ANNULUS
    length = curve.length
    if scan_step is None:
        scan_step = max(curve.ds, length / 256.0)

    no_room = (m >= length - 1e-12) if wrap else (m > length + 1e-12)
    if no_room:
        return FitResult(np.array([0.0]), np.array([False]), float(scan_step),
                         cap_points)

    if wrap:
        n = max(int(round(length / scan_step)), 1)
        candidates = (length / n) * np.arange(n)
        scan_step = length / n
    else:
        span = length - m
        n = max(int(math.floor(span / scan_step + 1e-12)), 0)
        candidates = np.unique(np.concatenate([np.arange(n + 1) * scan_step,
                                               [span]]))

    probe = _TubeProbe(curve, spine_points)
    if tol is None:
        tol = CONTAINMENT_RTOL * length + probe.eff_step ** 2 / 8.0

    feasible = np.zeros(len(candidates), dtype=bool)
    for i, s0 in enumerate(candidates):
        p0, t0, n0 = curve.frame_at(s0)
        p1, t1, n1 = curve.frame_at(s0 + m)
        caps = np.vstack([_cap_boundary(p0, t0, n0, -1.0, cap_points),
                          _cap_boundary(p1, t1, n1, +1.0, cap_points)])
        if not probe.contains(caps, np.array([p0, p1]), tol):
            continue
        if _caps_collide(p0, -t0, p1, t1):
            continue
        feasible[i] = True
    return FitResult(candidates, feasible, float(scan_step), cap_points)
