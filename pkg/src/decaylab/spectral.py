"""Radial frequency profiles, periodic grid fields, and shared numerics.

Whole-space initial data enters the library through its frequency-radial
magnitude r -> |u0_hat|(r).  Every quantity the decay analysis needs
(energy, gradient energy, low-frequency ball mass, heat-multiplier
integrals) depends only on that radial distribution, so one-dimensional
adaptive quadrature is all the machinery required; non-radial data is
admitted only through its spherical-average magnitude.

The discrete side lives on periodic boxes.  The forward transform carries
the full (2*pi)**-n, so the induced Parseval constant shows up once, in
``spectral_energy``, and nowhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy import integrate
from scipy.special import gamma


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge; carries QUADPACK's diagnosis."""

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 200

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


def _quad(f, a, b, spec, points=None):
    # Gauss-Kronrod nodes are interior, so integrable endpoint singularities
    # (e.g. r**(2q) with -n/2 < q < 0) never get sampled at r = 0.
    if points is not None:
        points = sorted({p for p in points if a < p < b})
        if not points:
            points = None
    if b == math.inf and points is not None:
        points = None
    out = integrate.quad(
        f,
        a,
        b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        points=points,
        full_output=1,
    )
    value, err = out[0], out[1]
    if len(out) > 3:
        raise QuadratureError(out[3], value=value, error_estimate=err)
    return value


def sphere_area(n: int) -> float:
    """Surface measure of the unit (n-1)-sphere, 2*pi**(n/2)/Gamma(n/2)."""
    if n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / gamma(n / 2.0)


@dataclass(frozen=True)
class TailBound:
    """Assertion about a profile beyond ``radius``.

    ``vanishes`` means the magnitude is identically zero past the radius, in
    which case every tail integral is exactly zero; otherwise the tail is
    integrated numerically on [radius, inf).
    """

    radius: float
    description: str = ""
    vanishes: bool = False

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("tail radius must be positive")


@dataclass(frozen=True)
class RadialSpectralProfile:
    """Frequency-radial magnitude of whole-space initial data.

    ``magnitude(r)`` is |u0_hat| at radius r >= 0 and must be nonnegative.
    ``support_lower`` declares that the magnitude vanishes identically below
    that radius (high-pass data); ``breakpoints`` are optional radii where
    the magnitude has kinks, passed to the quadrature as split points.
    """

    n: int
    magnitude: Callable[[float], float]
    tail_bound: TailBound | None = None
    support_lower: float | None = None
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.support_lower is not None and self.support_lower < 0:
            raise ValueError("support_lower must be nonnegative")

    def squared(self, r: float) -> float:
        m = self.magnitude(r)
        if m < 0:
            raise ValueError(f"magnitude({r}) = {m} is negative")
        return m * m


def _split_points(p: RadialSpectralProfile, extra=()):
    pts = list(p.breakpoints) + list(extra)
    if p.support_lower:
        pts.append(p.support_lower)
    if p.tail_bound is not None:
        pts.append(p.tail_bound.radius)
    return pts


def radial_weighted_integral(
    p: RadialSpectralProfile,
    weight: Callable[[float], float] | None = None,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
    lower: float = 0.0,
    upper: float = math.inf,
    extra_points: Sequence[float] = (),
) -> float:
    """omega_{n-1} * integral of |u0_hat|^2(r) * weight(r) * r**(n-1) dr.

    The radial volume factor and sphere area are supplied here; callers pass
    only the extra weight (heat multiplier, |xi|^2, ...).  Infinite upper
    limits use the profile's tail bound when available: a vanishing tail is
    dropped exactly, otherwise [radius, inf) is integrated by QUADPACK's
    infinite-interval transformation.
    """
    npow = p.n - 1
    if weight is None:
        f = lambda r: p.squared(r) * r**npow
    else:
        f = lambda r: p.squared(r) * weight(r) * r**npow

    lo = max(lower, p.support_lower or 0.0)
    area = sphere_area(p.n)
    pts = _split_points(p, extra_points)

    if upper != math.inf:
        if upper <= lo:
            return 0.0
        return area * _quad(f, lo, upper, spec, points=pts)

    tb = p.tail_bound
    if tb is not None and tb.vanishes:
        if tb.radius <= lo:
            return 0.0
        return area * _quad(f, lo, tb.radius, spec, points=pts)
    if tb is not None and tb.radius > lo:
        inner = _quad(f, lo, tb.radius, spec, points=pts)
        outer = _quad(f, tb.radius, math.inf, spec)
        return area * (inner + outer)
    return area * _quad(f, lo, math.inf, spec)


def radial_energy(p: RadialSpectralProfile, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Total energy ||u||_2^2 of the profile (Parseval on the radial side)."""
    return radial_weighted_integral(p, None, spec)


def gradient_energy(p: RadialSpectralProfile, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """||grad u||_2^2, the energy with the |xi|^2 weight."""
    return radial_weighted_integral(p, lambda r: r * r, spec)


def low_ball_mass(p: RadialSpectralProfile, K: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Energy inside the frequency ball of radius K."""
    if K <= 0:
        raise ValueError("ball radius must be positive")
    return radial_weighted_integral(p, None, spec, upper=K)


def band_energy(
    p: RadialSpectralProfile,
    lo: float,
    hi: float = math.inf,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Energy carried by frequencies with lo <= |xi| <= hi."""
    return radial_weighted_integral(p, None, spec, lower=lo, upper=hi)


def heat_energy(p: RadialSpectralProfile, t: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Energy of the heat evolution at time t: multiplier exp(-2 r^2 t).

    At large t the integrand concentrates on r ~ (1+2t)**-0.5; those scales
    are passed to the quadrature as split points so adaptivity finds the
    peak.
    """
    if t < 0:
        raise ValueError("time must be nonnegative")
    if t == 0:
        return radial_energy(p, spec)
    s = 1.0 / math.sqrt(1.0 + 2.0 * t)
    return radial_weighted_integral(
        p,
        lambda r: math.exp(-2.0 * t * r * r),
        spec,
        extra_points=(s, 3.0 * s, 10.0 * s, 30.0 * s),
    )


# ---------------------------------------------------------------------------
# periodic grid fields and the discrete transform


@dataclass(frozen=True)
class GridField:
    """Real field sampled on a periodic box, row-major storage."""

    n: int
    shape: tuple[int, ...]
    box_length: tuple[float, ...]
    samples: np.ndarray

    def __post_init__(self):
        if self.n not in (1, 2):
            raise ValueError("grid fields support n = 1 or 2")
        if len(self.shape) != self.n or len(self.box_length) != self.n:
            raise ValueError("shape/box_length must have one entry per axis")
        if any(L <= 0 for L in self.box_length):
            raise ValueError("box lengths must be positive")
        arr = np.ascontiguousarray(self.samples, dtype=np.float64)
        if arr.shape != tuple(self.shape):
            raise ValueError(f"samples shape {arr.shape} != declared {self.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", arr)

    @classmethod
    def from_samples(cls, samples, box_length):
        samples = np.asarray(samples, dtype=np.float64)
        if np.isscalar(box_length) or isinstance(box_length, float):
            box_length = (float(box_length),) * samples.ndim
        return cls(samples.ndim, samples.shape, tuple(float(L) for L in box_length), samples)


@dataclass(frozen=True)
class SpectralField:
    """Forward-transformed field; coefficients in numpy fftn layout."""

    shape: tuple[int, ...]
    box_length: tuple[float, ...]
    coeffs: np.ndarray

    def frequencies(self):
        """Per-axis angular frequencies xi_j matching the coefficient layout."""
        return [
            2.0 * math.pi * np.fft.fftfreq(N, d=L / N)
            for N, L in zip(self.shape, self.box_length)
        ]


def _forward_constant(shape, box_length):
    n = len(shape)
    cell = math.prod(L / N for L, N in zip(box_length, shape))
    return cell / (2.0 * math.pi) ** n


def dft_forward(f: GridField) -> SpectralField:
    """Discretization of u_hat(xi) = (2 pi)^-n * integral e^{-i x xi} u dx."""
    c = _forward_constant(f.shape, f.box_length)
    return SpectralField(f.shape, f.box_length, np.fft.fftn(f.samples) * c)


def dft_inverse(F: SpectralField) -> GridField:
    if F.coeffs.shape != tuple(F.shape):
        raise ValueError(f"coefficient shape {F.coeffs.shape} != declared {F.shape}")
    c = _forward_constant(F.shape, F.box_length)
    samples = np.fft.ifftn(F.coeffs / c)
    return GridField(len(F.shape), tuple(F.shape), tuple(F.box_length), samples.real)


def grid_energy(f: GridField) -> float:
    """Box integral of |u|^2 (trapezoid on the periodic grid is exact)."""
    cell = math.prod(L / N for L, N in zip(f.box_length, f.shape))
    return cell * float(np.sum(f.samples**2))


def spectral_energy(F: SpectralField) -> float:
    """(2 pi)^n * sum |u_hat|^2 * dxi, the spectral side of Parseval."""
    n = len(F.shape)
    dxi = math.prod(2.0 * math.pi / L for L in F.box_length)
    return (2.0 * math.pi) ** n * dxi * float(np.sum(np.abs(F.coeffs) ** 2))


# ---------------------------------------------------------------------------
# energy traces and slope fitting


class TraceSource(str, Enum):
    EXACT_SEMIGROUP = "exact-semigroup"
    NSE_SOLVER = "nse-solver"
    HEAT_ON_GRID = "heat-on-grid"


@dataclass(frozen=True)
class EnergyTrace:
    """Ordered (time, energy) samples with provenance."""

    times: np.ndarray
    values: np.ndarray
    source: TraceSource

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if t.ndim != 1 or t.shape != v.shape:
            raise ValueError("times and values must be matching 1-d arrays")
        if len(t) and t[0] < 0:
            raise ValueError("times must be nonnegative")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if np.any(v < 0):
            raise ValueError("energies must be nonnegative")
        if self.source is TraceSource.EXACT_SEMIGROUP:
            # the exact multiplier is pointwise decreasing in t; allow
            # quadrature-level jitter only
            scale = v[0] if len(v) else 0.0
            if np.any(np.diff(v) > 1e-9 * scale):
                raise ValueError("exact-semigroup trace must be nonincreasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.times)


def loglog_slope(tr: EnergyTrace, window: tuple[float, float]) -> float:
    """Least-squares slope of log(energy) against log(1+t) inside the window.

    log(1+t) rather than log(t) matches the (1+t)**-p normal form of the
    algebraic decay statements, and keeps t = 0 admissible.
    """
    t_lo, t_hi = window
    mask = (tr.times >= t_lo) & (tr.times <= t_hi)
    if int(mask.sum()) < 5:
        raise ValueError(f"window [{t_lo}, {t_hi}] holds {int(mask.sum())} samples; need >= 5")
    vals = tr.values[mask]
    if np.any(vals <= 0):
        raise ValueError("slope fit requires positive energies inside the window")
    x = np.log1p(tr.times[mask])
    y = np.log(vals)
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
