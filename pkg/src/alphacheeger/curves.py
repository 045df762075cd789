"""Spine curves for strips and annuli.

An open strip (or generalized annulus) of half-width 1 is the image of
Psi(s, t) = gamma(s) + t nu(s) for a unit-speed C^{1,1} spine gamma with
|curvature| <= 1, where nu is the left unit normal.  This module carries the
sampled representation of such spines: uniform-arclength samples with
tangents and normals, plus analytic sources for the primitive spines
(segment, circular arc, full circle, piecewise arc/line paths), a JSON file
loader, and the invariant validator that rejects spines the structure
theorems do not cover.

Curve kinds: "finite", "semi_infinite", "infinite" (open strips; the
infinite ones are realized on a finite window and re-truncated on demand)
and "annulus" (closed spine).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .geometry import first_segment_intersection

__all__ = [
    "Annulus",
    "ArcSpec",
    "CircleSpec",
    "CurveKind",
    "CurveValidationError",
    "PathSpec",
    "SegmentSpec",
    "StripCurve",
    "curve_from_samples",
    "curve_from_source",
    "load_curve",
    "parse_curve",
]

DEFAULT_SAMPLE_COUNT = 2048  # default arclength step is length / 2048

CURVATURE_SLACK = 1e-6   # |kappa| <= 1 + slack passes the admissibility check
FRAME_TOL = 1e-8         # unit-tangent / closure tolerance


class CurveKind(str, Enum):
    FINITE = "finite"
    SEMI_INFINITE = "semi_infinite"
    INFINITE = "infinite"
    ANNULUS = "annulus"


class CurveValidationError(ValueError):
    """Raised when a spine violates the admissibility invariants."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid spine curve: " + "; ".join(self.violations))


# ---------------------------------------------------------------------------
# Analytic sources.  Each provides length, kind and an exact frame(s).

@dataclass(frozen=True)
class SegmentSpec:
    """Straight spine along +x from the origin."""

    length: float
    kind: CurveKind = CurveKind.FINITE

    def frame(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        pts = np.column_stack([s, np.zeros_like(s)])
        tan = np.tile([1.0, 0.0], (len(s), 1))
        return pts, tan


@dataclass(frozen=True)
class CircleSpec:
    """Full circle of radius R traversed CCW; spine length 2 pi R."""

    radius: float

    @property
    def length(self) -> float:
        return 2.0 * math.pi * self.radius

    @property
    def kind(self) -> CurveKind:
        return CurveKind.ANNULUS

    def frame(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        ang = s / self.radius
        pts = self.radius * np.column_stack([np.cos(ang), np.sin(ang)])
        tan = np.column_stack([-np.sin(ang), np.cos(ang)])
        return pts, tan


@dataclass(frozen=True)
class ArcSpec:
    """Circular arc of radius R and signed subtended angle (CCW positive)."""

    radius: float
    angle: float

    @property
    def length(self) -> float:
        return self.radius * abs(self.angle)

    @property
    def kind(self) -> CurveKind:
        return CurveKind.FINITE

    def frame(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        # starts at the origin heading +x; center at (0, sgn * R)
        s = np.asarray(s, dtype=float)
        sgn = 1.0 if self.angle >= 0 else -1.0
        phi = s / self.radius
        pts = np.column_stack([self.radius * np.sin(phi),
                               sgn * self.radius * (1.0 - np.cos(phi))])
        tan = np.column_stack([np.cos(phi), sgn * np.sin(phi)])
        return pts, tan


@dataclass(frozen=True)
class PathSpec:
    """C^{1,1} concatenation of line and arc pieces, starting at the origin
    heading +x.  Pieces: ("line", length) or ("arc", radius, signed_angle)."""

    pieces: tuple[tuple, ...]
    kind: CurveKind = CurveKind.FINITE

    @property
    def length(self) -> float:
        total = 0.0
        for p in self.pieces:
            if p[0] == "line":
                total += p[1]
            elif p[0] == "arc":
                total += p[1] * abs(p[2])
            else:
                raise ValueError(f"unknown path piece {p[0]!r}")
        return total

    def frame(self, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        pts = np.empty((len(s), 2))
        tan = np.empty((len(s), 2))
        start = np.zeros(2)
        heading = 0.0
        s0 = 0.0
        remaining = np.ones(len(s), dtype=bool)
        for p in self.pieces:
            plen = p[1] if p[0] == "line" else p[1] * abs(p[2])
            local = remaining & (s <= s0 + plen + 1e-9 * (1.0 + s0 + plen))
            u = s[local] - s0
            if p[0] == "line":
                direction = np.array([math.cos(heading), math.sin(heading)])
                pts[local] = start + u[:, None] * direction
                tan[local] = direction
                start = start + plen * direction
            else:
                radius, angle = p[1], p[2]
                sgn = 1.0 if angle >= 0 else -1.0
                center = start + radius * sgn * np.array([-math.sin(heading),
                                                          math.cos(heading)])
                phi0 = math.atan2(start[1] - center[1], start[0] - center[0])
                phi = phi0 + sgn * u / radius
                pts[local] = center + radius * np.column_stack([np.cos(phi), np.sin(phi)])
                tan[local] = np.column_stack([-sgn * np.sin(phi), sgn * np.cos(phi)])
                phi_end = phi0 + angle
                start = center + radius * np.array([math.cos(phi_end), math.sin(phi_end)])
                heading += angle
            remaining &= ~local
            s0 += plen
        if remaining.any():
            raise ValueError(f"arclength {s[remaining][0]} beyond path length {s0}")
        return pts, tan


# ---------------------------------------------------------------------------
# The sampled curve.

def _left_normal(tangents: np.ndarray) -> np.ndarray:
    return np.column_stack([-tangents[:, 1], tangents[:, 0]])


@dataclass(frozen=True)
class StripCurve:
    """Uniform-arclength samples of a spine: points, unit tangents, left normals.

    For kind ANNULUS the first and last samples coincide (the closing point is
    stored explicitly).  ``source`` keeps the analytic description when one
    exists, so frames at arbitrary arclength and re-truncation stay exact.
    ``half_width`` is fixed at 1: all widths are normalized away upstream.
    """

    points: np.ndarray
    tangents: np.ndarray
    normals: np.ndarray
    ds: float
    length: float
    kind: CurveKind
    half_width: float = 1.0
    source: object = None

    def __post_init__(self) -> None:
        if self.half_width != 1.0:
            raise ValueError("strip half-width is fixed at 1 (rescale the domain)")
        n = len(self.points)
        if n < 8:
            raise ValueError(f"need >= 8 samples, got {n}")
        if self.tangents.shape != (n, 2) or self.normals.shape != (n, 2):
            raise ValueError("points/tangents/normals must have matching shapes")

    @property
    def s_values(self) -> np.ndarray:
        return self.ds * np.arange(len(self.points))

    def frame_at(self, s: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(point, tangent, normal) at arclength s; analytic when possible."""
        if self.kind is CurveKind.ANNULUS:
            s = s % self.length
        if self.source is not None:
            pts, tan = self.source.frame(np.array([s]))
            t = tan[0] / np.hypot(*tan[0])
            return pts[0], t, np.array([-t[1], t[0]])
        if not (-1e-12 <= s <= self.length + 1e-12):
            raise ValueError(f"arclength {s} outside [0, {self.length}]")
        x = min(max(s, 0.0) / self.ds, len(self.points) - 1.0)
        i = min(int(x), len(self.points) - 2)
        w = x - i
        p = (1.0 - w) * self.points[i] + w * self.points[i + 1]
        t = (1.0 - w) * self.tangents[i] + w * self.tangents[i + 1]
        t = t / np.hypot(*t)
        return p, t, np.array([-t[1], t[0]])

    def offset(self, level: float) -> np.ndarray:
        """The parallel polyline Psi(s, level) at all samples."""
        return self.points + level * self.normals

    def curvature(self) -> np.ndarray:
        """Signed discrete curvature via circumscribed circles of sample triples.

        Exact for circular arcs (three points determine the circle); endpoint
        values are copied from their neighbors (wrapped for annuli).
        """
        p = self.points
        if self.kind is CurveKind.ANNULUS:
            # drop the duplicated closing point, wrap around
            q = p[:-1]
            a, b, c = np.roll(q, 1, axis=0), q, np.roll(q, -1, axis=0)
            kappa = _menger(a, b, c)
            return np.append(kappa, kappa[0])
        a, b, c = p[:-2], p[1:-1], p[2:]
        kappa = _menger(a, b, c)
        return np.concatenate([[kappa[0]], kappa, [kappa[-1]]])

    def validate(self) -> list[str]:
        """Violated admissibility invariants (empty list = valid spine)."""
        bad: list[str] = []
        tnorm = np.hypot(self.tangents[:, 0], self.tangents[:, 1])
        if np.abs(tnorm - 1.0).max() > FRAME_TOL:
            bad.append(f"unit-speed violated: max | |tangent|-1 | = "
                       f"{np.abs(tnorm - 1.0).max():.3e}")
        dot = np.abs(np.einsum("ij,ij->i", self.tangents, self.normals))
        if dot.max() > FRAME_TOL:
            bad.append(f"normals not perpendicular to tangents: max |t.n| = {dot.max():.3e}")
        kappa = np.abs(self.curvature())
        if kappa.max() > 1.0 + CURVATURE_SLACK:
            i = int(kappa.argmax())
            bad.append(f"curvature bound violated: |kappa| = {kappa.max():.6f} "
                       f"at s = {i * self.ds:.6f} (must be <= 1)")
        if self.kind is CurveKind.ANNULUS:
            gap = np.hypot(*(self.points[0] - self.points[-1]))
            tgap = np.hypot(*(self.tangents[0] - self.tangents[-1]))
            if gap > FRAME_TOL or tgap > FRAME_TOL:
                bad.append(f"annulus spine not closed: position gap {gap:.3e}, "
                           f"tangent gap {tgap:.3e}")
        # The offset map is injective iff the two boundary offsets are simple
        # and disjoint; report the first offending segment pair.
        if not bad:
            closed = self.kind is CurveKind.ANNULUS
            lo = self.offset(-1.0)
            hi = self.offset(+1.0)
            if closed:
                lo, hi = lo[:-1], hi[:-1]
            for name, path in (("t=-1", lo), ("t=+1", hi)):
                pair = first_segment_intersection(path, closed_a=closed)
                if pair is not None:
                    bad.append(f"offset {name} self-intersects: segments "
                               f"{pair[0]} and {pair[1]}")
            pair = first_segment_intersection(lo, hi, closed_a=closed, closed_b=closed)
            if pair is not None:
                bad.append(f"offsets t=-1 and t=+1 intersect: segments "
                           f"{pair[0]} and {pair[1]}")
        return bad


def _menger(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Signed inverse circumradius of point triples (positive = left turn)."""
    ab = b - a
    bc = c - b
    ac = c - a
    cross = ab[:, 0] * bc[:, 1] - ab[:, 1] * bc[:, 0]
    denom = (np.hypot(*ab.T) * np.hypot(*bc.T) * np.hypot(*ac.T))
    denom = np.where(denom == 0.0, np.inf, denom)
    return 2.0 * cross / denom


def curve_from_source(source, ds: float | None = None,
                      n_samples: int | None = None) -> StripCurve:
    """Sample an analytic source at uniform arclength."""
    length = source.length
    if not (length > 0.0) or not math.isfinite(length):
        raise ValueError(f"source must have finite positive length, got {length}")
    if ds is None:
        n = n_samples if n_samples is not None else DEFAULT_SAMPLE_COUNT
        ds = length / n
    n_steps = max(int(round(length / ds)), 8)
    ds = length / n_steps
    s = ds * np.arange(n_steps + 1)
    pts, tan = source.frame(s)
    tan = tan / np.hypot(*tan.T)[:, None]
    curve = StripCurve(points=pts, tangents=tan, normals=_left_normal(tan),
                       ds=ds, length=length, kind=source.kind, source=source)
    return curve


def densify(curve: StripCurve, n_samples: int) -> StripCurve:
    """Rebuild an analytic-source curve with at least ``n_samples`` steps.

    Sampled spines (``source is None``) are returned unchanged: linear
    interpolation would add vertices but no geometric information.
    """
    if curve.source is None or len(curve.points) - 1 >= n_samples:
        return curve
    return curve_from_source(curve.source, n_samples=n_samples)


def curve_from_samples(samples: np.ndarray, kind: CurveKind,
                       ds: float | None = None) -> StripCurve:
    """Resample an ordered point sequence to uniform arclength.

    Chord-length parametrization with linear interpolation; tangents by
    central differences.  For kind ANNULUS the sequence is treated as closed
    (a duplicated endpoint is accepted and normalized away).
    """
    pts = np.asarray(samples, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 4:
        raise ValueError(f"need an (n, 2) array with n >= 4, got {pts.shape}")
    closed = kind is CurveKind.ANNULUS
    if closed and np.hypot(*(pts[0] - pts[-1])) > 1e-12:
        pts = np.vstack([pts, pts[0]])
    chord = np.hypot(*(np.diff(pts, axis=0)).T)
    if (chord <= 0.0).any():
        raise ValueError("input samples contain coincident consecutive points")
    cum = np.concatenate([[0.0], np.cumsum(chord)])
    length = float(cum[-1])
    if ds is None:
        ds = length / DEFAULT_SAMPLE_COUNT
    n_steps = max(int(round(length / ds)), 8)
    ds = length / n_steps
    s = ds * np.arange(n_steps + 1)
    x = np.interp(s, cum, pts[:, 0])
    y = np.interp(s, cum, pts[:, 1])
    p = np.column_stack([x, y])
    if closed:
        t = np.empty_like(p)
        core = p[:-1]
        t[:-1] = np.roll(core, -1, axis=0) - np.roll(core, 1, axis=0)
        t[-1] = t[0]
    else:
        t = np.empty_like(p)
        t[1:-1] = p[2:] - p[:-2]
        t[0] = p[1] - p[0]
        t[-1] = p[-1] - p[-2]
    t = t / np.hypot(*t.T)[:, None]
    return StripCurve(points=p, tangents=t, normals=_left_normal(t),
                      ds=ds, length=length, kind=kind, source=None)


@dataclass(frozen=True)
class Annulus:
    """A generalized annulus: the width-2 strip around a closed spine."""

    spine: StripCurve

    def __post_init__(self) -> None:
        if self.spine.kind is not CurveKind.ANNULUS:
            raise ValueError(f"annulus needs a closed spine, got kind={self.spine.kind}")

    @property
    def spine_length(self) -> float:
        return self.spine.length


# ---------------------------------------------------------------------------
# File format: a JSON object, either a primitive or a sample list.
#
#   {"primitive": "segment", "length": 20}
#   {"primitive": "segment", "kind": "infinite"}          (window chosen later)
#   {"primitive": "circle", "radius": 5}                  (an annulus)
#   {"primitive": "arc", "radius": 8, "angle": 1.2}
#   {"primitive": "path", "pieces": [["arc", 1.3, 1.5], ["line", 9.0]]}
#   {"samples": [[x, y], ...], "kind": "finite"}

PROVISIONAL_WINDOW = 64.0  # realized length for infinite spines until re-truncation


def parse_curve(spec: dict, ds: float | None = None) -> StripCurve:
    """Build a StripCurve from a parsed JSON object (see module docstring)."""
    if not isinstance(spec, dict):
        raise ValueError(f"curve spec must be a JSON object, got {type(spec).__name__}")
    if "primitive" in spec:
        prim = spec["primitive"]
        kind = CurveKind(spec.get("kind", "finite")) if prim != "circle" else CurveKind.ANNULUS
        if prim == "segment":
            if kind in (CurveKind.SEMI_INFINITE, CurveKind.INFINITE):
                length = float(spec.get("length", PROVISIONAL_WINDOW))
            else:
                length = float(spec["length"])
            source = SegmentSpec(length=length, kind=kind)
        elif prim == "circle":
            source = CircleSpec(radius=float(spec["radius"]))
        elif prim == "arc":
            source = ArcSpec(radius=float(spec["radius"]), angle=float(spec["angle"]))
        elif prim == "path":
            pieces = tuple(tuple(p) for p in spec["pieces"])
            source = PathSpec(pieces=pieces, kind=kind)
        else:
            raise ValueError(f"unknown primitive {prim!r}")
        return curve_from_source(source, ds=ds)
    if "samples" in spec:
        kind = CurveKind(spec.get("kind", "finite"))
        return curve_from_samples(np.asarray(spec["samples"], dtype=float),
                                  kind=kind, ds=ds)
    raise ValueError("curve spec needs a 'primitive' or 'samples' entry")


def load_curve(path: str, ds: float | None = None) -> StripCurve:
    """Load and validate a spine curve file; raises CurveValidationError."""
    with open(path, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    curve = parse_curve(spec, ds=ds)
    violations = curve.validate()
    if violations:
        raise CurveValidationError(violations)
    return curve


def retruncate(curve: StripCurve, target_length: float) -> tuple[StripCurve, float]:
    """Realize a semi-infinite/infinite spine on a window of the given length.

    Analytic sources are rebuilt exactly; sampled spines are cut down (from
    s=0 for semi-infinite, centered for infinite).  Returns (curve, realized
    length).  Finite and annulus spines are returned untouched.
    """
    if curve.kind not in (CurveKind.SEMI_INFINITE, CurveKind.INFINITE):
        return curve, curve.length
    if isinstance(curve.source, SegmentSpec):
        src = SegmentSpec(length=target_length, kind=curve.kind)
        return curve_from_source(src, n_samples=DEFAULT_SAMPLE_COUNT), target_length
    if target_length >= curve.length:
        return curve, curve.length
    n_keep = max(int(round(target_length / curve.ds)), 8)
    if curve.kind is CurveKind.INFINITE:
        start = (len(curve.points) - 1 - n_keep) // 2
    else:
        start = 0
    sl = slice(start, start + n_keep + 1)
    return (StripCurve(points=curve.points[sl], tangents=curve.tangents[sl],
                       normals=curve.normals[sl], ds=curve.ds,
                       length=n_keep * curve.ds, kind=curve.kind, source=None),
            n_keep * curve.ds)
