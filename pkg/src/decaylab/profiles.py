"""Profile families used across the inequality and decay experiments.

The Gaussian family is the workhorse: constant energy beta for every scale
alpha, with closed forms for every integral the library computes, so it
doubles as a quadrature oracle.  Power-law cutoffs probe the decay
character machinery at known exponents, and ring profiles provide
high-pass data (zero near the frequency origin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .spectral import RadialSpectralProfile, TailBound


@dataclass(frozen=True)
class GaussianFamily:
    """Frequency profile sqrt(beta) * pi**(-n/4) * alpha**(-n/2) * exp(-r^2/(2 alpha^2)).

    Normalized so the total energy is beta for every alpha; in n = 2 this is
    the classical optimality family for the whole-space inequality.  The
    spatial-side family concentrates as alpha grows and spreads out as
    alpha -> 0, which is what defeats any uniform decay profile.
    """

    beta: float
    alpha: float
    n: int = 2

    def __post_init__(self):
        if self.beta <= 0 or self.alpha <= 0:
            raise ValueError("beta and alpha must be positive")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")

    def profile(self) -> RadialSpectralProfile:
        amp = math.sqrt(self.beta) * math.pi ** (-self.n / 4.0) * self.alpha ** (-self.n / 2.0)
        a2 = 2.0 * self.alpha**2
        return RadialSpectralProfile(
            n=self.n,
            magnitude=lambda r, amp=amp, a2=a2: amp * math.exp(-r * r / a2),
            tail_bound=TailBound(8.0 * self.alpha + 1.0, "gaussian tail"),
        )

    # closed forms (independent oracles for the quadrature path)

    def energy(self) -> float:
        return self.beta

    def gradient_energy(self) -> float:
        return self.beta * self.alpha**2 * self.n / 2.0

    def ball_mass(self, K: float) -> float:
        """Energy inside |xi| <= K: beta * P(n/2, K^2/alpha^2).

        P is the regularized lower incomplete gamma; for n = 2 it reduces to
        beta * (1 - exp(-K^2/alpha^2)).
        """
        return self.beta * float(gammainc(self.n / 2.0, (K / self.alpha) ** 2))

    def heat_energy(self, t: float) -> float:
        return self.beta * (1.0 + 2.0 * self.alpha**2 * t) ** (-self.n / 2.0)


def power_cutoff_profile(q0: float, n: int, cutoff: float = 1.0) -> RadialSpectralProfile:
    """Magnitude r**q0 on [0, cutoff], zero beyond.

    For q0 > -n/2 the energy is finite and the decay character is exactly
    q0, which makes this the reference family for character recovery.
    """
    if 2.0 * q0 + n <= 0:
        raise ValueError("need q0 > -n/2 for finite energy")

    def magnitude(r, q0=q0, cutoff=cutoff):
        if r > cutoff:
            return 0.0
        if r == 0.0:
            return 0.0 if q0 > 0 else (1.0 if q0 == 0 else math.inf)
        return r**q0

    return RadialSpectralProfile(
        n=n,
        magnitude=magnitude,
        tail_bound=TailBound(cutoff, "compact support", vanishes=True),
        breakpoints=(cutoff,),
    )


def ring_profile(rho0: float, n: int, width: float = 1.0, amplitude: float = 1.0) -> RadialSpectralProfile:
    """High-pass data: zero below rho0, a smooth bump on [rho0, rho0 + width]."""
    if rho0 <= 0 or width <= 0:
        raise ValueError("rho0 and width must be positive")
    hi = rho0 + width

    def magnitude(r, lo=rho0, hi=hi, amp=amplitude):
        if r <= lo or r >= hi:
            return 0.0
        # C^inf bump, vanishing to all orders at both edges
        u = (r - lo) / (hi - lo)
        return amp * math.exp(-1.0 / (u * (1.0 - u)))

    return RadialSpectralProfile(
        n=n,
        magnitude=magnitude,
        tail_bound=TailBound(hi, "compact support", vanishes=True),
        support_lower=rho0,
        breakpoints=(rho0, hi),
    )


def bump_profile(centers, widths, amps, n: int) -> RadialSpectralProfile:
    """Sum of Gaussian bumps exp(-((r-c)/w)^2), truncated where they are negligible."""
    centers = np.asarray(centers, dtype=float)
    widths = np.asarray(widths, dtype=float)
    amps = np.asarray(amps, dtype=float)
    radius = float(np.max(centers + 9.0 * widths))

    def magnitude(r):
        return float(np.sum(amps * np.exp(-(((r - centers) / widths) ** 2))))

    return RadialSpectralProfile(
        n=n,
        magnitude=magnitude,
        tail_bound=TailBound(radius, "super-exponential bump tails"),
        breakpoints=tuple(float(c) for c in centers),
    )


def random_band_limited(rng: np.random.Generator, n: int, band: float = 2.0) -> RadialSpectralProfile:
    """Random nonnegative profile supported (numerically) inside [0, band]."""
    k = int(rng.integers(1, 4))
    centers = rng.uniform(0.05 * band, 0.75 * band, size=k)
    widths = rng.uniform(0.03 * band, 0.12 * band, size=k)
    amps = rng.uniform(0.2, 2.0, size=k)
    radius = float(np.max(centers + 9.0 * widths))

    def magnitude(r):
        return float(np.sum(amps * np.exp(-(((r - centers) / widths) ** 2))))

    return RadialSpectralProfile(
        n=n,
        magnitude=magnitude,
        tail_bound=TailBound(min(radius, 1.5 * band), "gaussian bump tails"),
        breakpoints=tuple(float(c) for c in centers),
    )


def riesz_reference_profile(beta: float, n: int) -> RadialSpectralProfile:
    """Magnitude r**(beta/2) * exp(-r^2): squared magnitude ~ r**beta near 0."""
    if beta < 0:
        raise ValueError("beta must be nonnegative")

    def magnitude(r, h=beta / 2.0):
        if r == 0.0:
            return 0.0 if h > 0 else 1.0
        return r**h * math.exp(-r * r)

    return RadialSpectralProfile(n=n, magnitude=magnitude, tail_bound=TailBound(8.0, "gaussian tail"))


def zero_profile(n: int) -> RadialSpectralProfile:
    return RadialSpectralProfile(
        n=n,
        magnitude=lambda r: 0.0,
        tail_bound=TailBound(1.0, "identically zero", vanishes=True),
    )


def classification_corpus(n: int = 2, seed: int = 7):
    """20 profiles: 10 with a spectral gap (support_lower > 0), 10 without.

    Used to exercise both directions of the exponential-decay
    characterization at corpus scale.
    """
    rng = np.random.default_rng(seed)
    gapped = [
        ring_profile(rho0=float(r0), n=n, width=float(w), amplitude=float(a))
        for r0, w, a in zip(
            rng.uniform(0.3, 3.0, size=10),
            rng.uniform(0.5, 2.0, size=10),
            rng.uniform(0.5, 2.0, size=10),
        )
    ]
    gapless = [
        GaussianFamily(beta=1.0, alpha=0.5, n=n).profile(),
        GaussianFamily(beta=2.0, alpha=1.0, n=n).profile(),
        GaussianFamily(beta=0.5, alpha=2.0, n=n).profile(),
        power_cutoff_profile(0.0, n),
        power_cutoff_profile(0.5, n),
        power_cutoff_profile(1.0, n),
        power_cutoff_profile(2.0, n, cutoff=2.0),
        riesz_reference_profile(0.0, n),
        riesz_reference_profile(1.0, n),
        riesz_reference_profile(2.0, n),
    ]
    return gapped, gapless
