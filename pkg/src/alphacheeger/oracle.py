"""Independent numerical verification layer.

Everything here re-derives answers from polygonal measures and generic
one-dimensional minimization, never from the closed forms, so agreement
between this module and ``analytic`` is a real check rather than an echo.
Two helpers (min_cut_corner_ratio, min_stadium_ratio) minimize the exact
ratio formulas at extended precision; they exist because the double-precision
golden-section noise floor sqrt(eps * f / f'') sits near 5e-8, above the
1e-8 agreement targets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath as mp
import numpy as np

from .analytic import CheegerSolution, SolutionKind, _alpha_value
from .curves import CurveKind, StripCurve, densify
from .geometry import (DEFAULT_SEGMENTS, PolyShape, build_cut_corner_rectangle,
                       build_topped_substrip, contains_points, measure)
from .strips import (build_cut_corner_strip, build_strip_polygon,
                     build_topped_substrip_on_curve, fit_topped_substrip)

__all__ = [
    "NonUnimodalError",
    "RatioProblem",
    "golden_section_min",
    "min_cut_corner_ratio",
    "min_stadium_ratio",
    "monte_carlo_area",
    "oracle_annulus",
    "oracle_rectangle",
    "oracle_strip",
    "ratio",
    "solve_ratio_problem",
]

GOLDEN_MAX_ITER = 200
PRESCAN_SAMPLES = 64
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class NonUnimodalError(ValueError):
    """The 64-sample pre-scan saw the function rise and then fall again."""

    def __init__(self, x_rise: float, x_fall: float):
        self.x_rise = x_rise
        self.x_fall = x_fall
        super().__init__(
            f"pre-scan found a rise near x={x_rise!r} followed by a fall "
            f"near x={x_fall!r}; the function is not unimodal on the bracket")


def ratio(shape: PolyShape, alpha) -> float:
    """The shape's alpha-Cheeger ratio, perimeter / area^(1/alpha)."""
    a = _alpha_value(alpha, hi_open=False)
    area, perim = measure(shape)
    return perim / area ** (1.0 / a)


def golden_section_min(f: Callable, a, b, tol, *,
                       max_iter: int = GOLDEN_MAX_ITER,
                       prescan: int = PRESCAN_SAMPLES):
    """Minimize a unimodal function on [a, b]; returns (x*, f(x*)).

    Unimodality is checked empirically first: ``prescan`` equispaced samples
    must fall (weakly) and then rise (weakly); a second descent raises
    NonUnimodalError.  Arithmetic stays in the type of a and b, so mpmath
    intervals keep their precision.  |x* - argmin| <= tol under unimodality.
    """
    if not (b > a):
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if not (tol > 0):
        raise ValueError(f"tolerance must be positive, got {tol}")

    if prescan >= 3:
        xs = [a + (b - a) * i / (prescan - 1) for i in range(prescan)]
        fs = [f(x) for x in xs]
        band = 1e-12 * max(abs(float(v)) for v in fs)
        rising_from = None
        for i in range(len(fs) - 1):
            d = float(fs[i + 1] - fs[i])
            if d > band:
                rising_from = xs[i]
            elif d < -band and rising_from is not None:
                raise NonUnimodalError(float(rising_from), float(xs[i]))

    lo, hi = a, b
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    x_star = (lo + hi) / 2
    return x_star, f(x_star)


@dataclass(frozen=True)
class RatioProblem:
    """One-parameter ratio-minimization task: a shape builder, an exponent,
    parameter bounds, and a minimizer tolerance."""

    build: Callable[[float], PolyShape]
    alpha: object
    lower: float
    upper: float
    tolerance: float = 1e-9

    def __post_init__(self):
        if not (self.upper > self.lower):
            raise ValueError(f"need lower < upper, got "
                             f"[{self.lower}, {self.upper}]")
        if not (self.tolerance > 0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")

    @classmethod
    def cut_corner(cls, length: float, alpha, segments: int,
                   tolerance: float = 1e-9) -> "RatioProblem":
        hi = min(1.0, length / 2.0)
        return cls(lambda t: build_cut_corner_rectangle(length, t, segments),
                   alpha, 1e-9 * hi, hi, tolerance)

    @classmethod
    def topped_substrip(cls, alpha, upper: float, segments: int,
                        tolerance: float = 1e-9) -> "RatioProblem":
        return cls(lambda m: build_topped_substrip(m, segments),
                   alpha, 0.0, upper, tolerance)


def solve_ratio_problem(problem: RatioProblem) -> tuple[float, float]:
    """(best parameter, best ratio) by golden section over the family."""
    return golden_section_min(
        lambda x: ratio(problem.build(x), problem.alpha),
        problem.lower, problem.upper, problem.tolerance)


def min_cut_corner_ratio(length: float, alpha, tol: float = 1e-10,
                         dps: int = 30) -> tuple[float, float]:
    """Golden-section minimum of the corner-cut ratio from its exact
    perimeter/area expressions, at ``dps`` decimal digits.

    Returns (t*, ratio*).  Serves as the reference for the corner-radius
    closed form; extended precision pushes the golden-section noise floor
    far below the 1e-8 comparisons made against it.
    """
    a = _alpha_value(alpha)
    if length < 2.0:
        raise ValueError(f"normalized length must be >= 2, got {length}")
    with mp.workdps(dps):
        L = mp.mpf(length)
        av = mp.mpf(a)
        pi = mp.pi

        def f(t):
            perim = 2 * L + 4 - (8 - 2 * pi) * t
            area = 2 * L - (4 - pi) * t * t
            return perim / area ** (1 / av)

        hi = min(mp.mpf(1), L / 2)
        t_star, f_star = golden_section_min(f, mp.mpf(0), hi, mp.mpf(tol))
        return float(t_star), float(f_star)


def min_stadium_ratio(alpha, tol: float = 1e-10, dps: int = 30,
                      upper: float = 100.0) -> tuple[float, float]:
    """Golden-section minimum of m -> (2m+2pi)/(2m+pi)^(1/alpha) at ``dps``
    digits, expanding the bracket upward until the minimum is interior.

    Returns (m*, ratio*); the reference for the optimal stadium length.
    """
    a = _alpha_value(alpha)
    with mp.workdps(dps):
        av = mp.mpf(a)
        pi = mp.pi

        def f(m):
            return (2 * m + 2 * pi) / (2 * m + pi) ** (1 / av)

        hi = mp.mpf(upper)
        while f(hi) <= f(hi * (1 - mp.mpf("1e-6"))) and hi < 1e9:
            hi *= 2
        m_star, f_star = golden_section_min(f, mp.mpf(0), hi, mp.mpf(tol))
        return float(m_star), float(f_star)


def _search_segments(segments: int) -> int:
    return max(segments // 10, 64)


def oracle_rectangle(length: float, alpha,
                     segments: int = DEFAULT_SEGMENTS) -> CheegerSolution:
    """Best alpha-Cheeger ratio of R_length found by searching both candidate
    families on polygonal measures alone.

    The corner-cut family is minimized over t in (0, min(1, L/2)] and the
    stadium family over its length m in [0, L-2]; the search runs at a tenth
    of ``segments`` and the winner is re-measured at full resolution.  No
    closed form enters: this output is what the formulas are tested against.
    """
    a = _alpha_value(alpha)
    if length < 2.0:
        raise ValueError(f"normalized length must be >= 2, got {length}")
    coarse = _search_segments(segments)

    t_star, _ = solve_ratio_problem(RatioProblem.cut_corner(length, a, coarse))
    cut_shape = build_cut_corner_rectangle(length, t_star, segments)
    cut_area, cut_perim = measure(cut_shape)
    h_cut = cut_perim / cut_area ** (1.0 / a)

    m_hi = length - 2.0
    if m_hi > 1e-9:
        m_star, _ = solve_ratio_problem(
            RatioProblem.topped_substrip(a, m_hi, coarse))
    else:
        m_star = 0.0
    top_shape = build_topped_substrip(m_star, segments)
    top_area, top_perim = measure(top_shape)
    h_top = top_perim / top_area ** (1.0 / a)

    if h_cut <= h_top:
        return CheegerSolution(kind=SolutionKind.CUT_CORNERS, h_alpha=h_cut,
                               area=cut_area, perimeter=cut_perim,
                               unique=True, radius=min(t_star, 1.0))
    return CheegerSolution(kind=SolutionKind.TOPPED_SUBSTRIP, h_alpha=h_top,
                           area=top_area, perimeter=top_perim,
                           unique=False, stadium_length=m_star)


def _canonical_anchor(fit) -> float:
    """Middle of the widest feasible run, or the single best candidate."""
    best = None
    for lo, hi in fit.intervals:
        if best is None or (hi - lo) > (best[1] - best[0]):
            best = (lo, hi)
    if best is None:
        raise ValueError("no feasible placement")
    return 0.5 * (best[0] + best[1])


def _coarse_fit(curve: StripCurve, m: float):
    return fit_topped_substrip(curve, m, scan_step=curve.length / 64.0,
                               cap_points=96, spine_points=1024)


def _best_feasible_stadium(curve: StripCurve, a: float, coarse: int,
                           bisect_steps: int = 12):
    """(m, fit) minimizing the capped-substrip ratio subject to fitting.

    The measures of a capped substrip do not depend on the spine, so the
    unconstrained minimizer comes from the straight stadium family; when that
    length does not fit, the largest feasible length is bisected (feasibility
    shrinks monotonically in m) and taken, since the ratio decreases up to
    the unconstrained minimizer.  Returns (None, None) if nothing fits.
    """
    m_free, _ = solve_ratio_problem(
        RatioProblem.topped_substrip(a, curve.length, coarse))
    fit = _coarse_fit(curve, m_free)
    if fit.any_feasible:
        return m_free, fit
    lo, hi = 0.0, m_free  # m = 0 (a disk on the spine) always fits
    fit_lo = _coarse_fit(curve, lo)
    if not fit_lo.any_feasible:
        return None, None
    for _ in range(bisect_steps):
        mid = 0.5 * (lo + hi)
        f = _coarse_fit(curve, mid)
        if f.any_feasible:
            lo, fit_lo = mid, f
        else:
            hi = mid
    return lo, fit_lo


def oracle_strip(curve: StripCurve, alpha,
                 segments: int = DEFAULT_SEGMENTS) -> CheegerSolution:
    """Best ratio over the candidate families living on a strip spine.

    The corner-cut family (finite open spines) is golden-searched over the
    corner radius; closed spines contribute the whole annulus; the
    capped-substrip family is searched over its length with fit feasibility
    enforced, then evaluated at one feasible anchor (all placements share the
    same measures).  Purely polygonal, mirroring oracle_rectangle.
    """
    a = _alpha_value(alpha)
    curve = densify(curve, segments)
    coarse = _search_segments(segments)
    best: CheegerSolution | None = None

    if curve.kind is CurveKind.FINITE:
        def g(t):
            return ratio(build_cut_corner_strip(curve, t, coarse), a)

        t_star, _ = golden_section_min(g, 1e-9, 1.0, 1e-9)
        shape = build_cut_corner_strip(curve, t_star, segments)
        area, perim = measure(shape)
        best = CheegerSolution(kind=SolutionKind.CUT_CORNERS,
                               h_alpha=perim / area ** (1.0 / a),
                               area=area, perimeter=perim, unique=True,
                               radius=min(t_star, 1.0))
    elif curve.kind is CurveKind.ANNULUS:
        shape = build_strip_polygon(curve)
        area, perim = measure(shape)
        best = CheegerSolution(kind=SolutionKind.WHOLE_DOMAIN,
                               h_alpha=perim / area ** (1.0 / a),
                               area=area, perimeter=perim, unique=True)

    m_star, fit = _best_feasible_stadium(curve, a, coarse)
    if m_star is not None:
        s0 = _canonical_anchor(fit)
        shape = build_topped_substrip_on_curve(curve, s0, m_star, segments)
        area, perim = measure(shape)
        h_top = perim / area ** (1.0 / a)
        if best is None or h_top < best.h_alpha:
            best = CheegerSolution(kind=SolutionKind.TOPPED_SUBSTRIP,
                                   h_alpha=h_top, area=area, perimeter=perim,
                                   unique=False, stadium_length=m_star)
    if best is None:
        raise ValueError(f"no candidate family applies to kind {curve.kind}")
    return best


def oracle_annulus(curve: StripCurve, alpha,
                   segments: int = DEFAULT_SEGMENTS) -> CheegerSolution:
    """oracle_strip specialized to closed spines (whole domain vs substrip)."""
    if curve.kind is not CurveKind.ANNULUS:
        raise ValueError(f"need an annulus spine, got {curve.kind}")
    return oracle_strip(curve, alpha, segments)


def monte_carlo_area(shape: PolyShape, samples: int,
                     seed: int) -> tuple[float, float]:
    """Rejection-sampling area estimate over the bounding box.

    Uses the counter-based Philox generator so a seed pins the exact sample
    stream.  Returns (estimate, standard error of the estimate).
    """
    if samples < 1000:
        raise ValueError(f"need >= 1000 samples, got {samples}")
    rng = np.random.Generator(np.random.Philox(seed))
    x0, y0, x1, y1 = shape.bounds()
    pts = rng.random((samples, 2))
    pts[:, 0] = x0 + (x1 - x0) * pts[:, 0]
    pts[:, 1] = y0 + (y1 - y0) * pts[:, 1]
    hits = int(contains_points(shape, pts).sum())
    box = (x1 - x0) * (y1 - y0)
    p = hits / samples
    return box * p, box * math.sqrt(max(p * (1.0 - p), 0.0) / samples)
