"""Whole-space substitutes for the Poincare inequality.

On R^n the Dirichlet spectrum fills [0, inf) and the classical inequality
fails, but splitting frequency space at a cutoff gives, for every
Lambda > 0,

    ||grad u||^2 >= Lambda^2 ||u||^2 - integral_{|xi|<=Lambda} (Lambda^2 - |xi|^2) |u_hat|^2

an identity-derived bound whose correction term lives entirely inside the
low-frequency ball.  This module verifies that bound, probes its
optimality along the constant-energy Gaussian family (no additive constant
smaller than the total energy can work uniformly), derives the
"fake" Poincare inequality (1 - alpha) ||u||^2 <= K^-2 ||grad u||^2, and
applies it to data arising from Poisson-type equations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .profiles import GaussianFamily
from .spectral import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    RadialSpectralProfile,
    TailBound,
    gradient_energy,
    low_ball_mass,
    radial_energy,
    radial_weighted_integral,
    sphere_area,
)

#: relative tolerance below which a computed slack counts as a violation
SLACK_REL_TOL = 1e-10


class DivergentIntegralError(ValueError):
    """Raised for inputs whose defining integrals provably diverge."""


@dataclass(frozen=True)
class PoincareReport:
    """Terms of the cutoff inequality at one Lambda, plus the verdict.

    ``slack`` is lhs - rhs; since the bound is an identity minus a
    nonnegative remainder, slack < -tolerance can only mean the quadrature
    failed.
    """

    gradient_energy: float
    total_energy: float
    ball_mass: float
    correction: float
    cutoff: float
    slack: float
    holds: bool


def _surplus(p: RadialSpectralProfile, cutoff: float, spec: QuadratureSpec) -> float:
    # lhs - rhs collapses to the single integral of (r^2 - Lambda^2)_+
    # |u_hat|^2; evaluating it directly avoids the catastrophic cancellation
    # of forming grad - Lambda^2 * total + correction from three quadratures.
    return radial_weighted_integral(
        p,
        lambda r: r * r - cutoff * cutoff,
        spec,
        lower=cutoff,
    )


def modified_poincare_check(
    p: RadialSpectralProfile,
    cutoff: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> PoincareReport:
    """Evaluate the whole-space inequality at frequency cutoff Lambda."""
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    grad = gradient_energy(p, spec)
    total = radial_energy(p, spec)
    ball = low_ball_mass(p, cutoff, spec)
    correction = radial_weighted_integral(
        p, lambda r: cutoff * cutoff - r * r, spec, upper=cutoff
    )
    slack = _surplus(p, cutoff, spec)
    holds = slack >= -SLACK_REL_TOL * max(grad, spec.abs_tol)
    return PoincareReport(grad, total, ball, correction, cutoff, slack, holds)


def optimality_probe(K: float, beta: float, alpha: float) -> tuple[float, float, float]:
    """(mu_required, ball_mass, gradient_term) for the Gaussian family member.

    Plugging the constant-energy family into ||u||^2 <= K^-2 ||grad u||^2 + mu
    forces mu >= beta - beta * alpha^2 / K^2, which sweeps up to beta as
    alpha -> 0: no additive constant below the total energy works for the
    whole family.  In n = 2 the terms are closed-form.
    """
    if K <= 0 or beta <= 0 or alpha <= 0:
        raise ValueError("K, beta, alpha must all be positive")
    fam = GaussianFamily(beta=beta, alpha=alpha, n=2)
    ball = fam.ball_mass(K)
    grad_term = beta * alpha**2 / K**2
    mu_required = max(0.0, beta - grad_term)
    return mu_required, ball, grad_term


def fpi_alpha(
    p: RadialSpectralProfile,
    K: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Low-frequency mass fraction alpha = ball_mass(K) / energy.

    Whenever alpha < 1 this yields (1 - alpha) ||u||^2 <= K^-2 ||grad u||^2,
    a Poincare inequality with no additive constant at the price of the
    factor (1 - alpha).
    """
    energy = radial_energy(p, spec)
    if energy <= 0:
        raise ValueError("fpi_alpha requires a profile with positive energy")
    return low_ball_mass(p, K, spec) / energy


def fpi_consequence_slack(
    p: RadialSpectralProfile,
    K: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """K^-2 ||grad u||^2 - (1 - alpha) ||u||^2, evaluated without cancellation.

    Equals K^-2 * integral over |xi| > K of (|xi|^2 - K^2) |u_hat|^2, hence
    nonnegative; returned for callers that want to assert the guarantee.
    """
    return _surplus(p, K, spec) / K**2


@dataclass(frozen=True)
class PoissonExampleReport:
    beta0: float
    holds: bool
    u_energy: float
    u_gradient_energy: float
    f_energy: float
    fpi_fraction: float


def poisson_example_profiles(m: float, k: float, beta_cut: float, M: float, n: int):
    """Representative source f_hat and solution u_hat = f_hat / r**(2k).

    f_hat is M r**m up to beta_cut with the tail M beta_cut**m
    exp(-(r - beta_cut)^2) beyond; any square-integrable tail works.
    """

    def f_mag(r, m=m, M=M, bc=beta_cut):
        if r <= bc:
            if r == 0.0:
                return 0.0 if m > 0 else M
            return M * r**m
        return M * bc**m * math.exp(-((r - bc) ** 2))

    def u_mag(r, p=m - 2.0 * k, M=M, bc=beta_cut):
        if r <= bc:
            if r == 0.0:
                return 0.0 if p > 0 else (M if p == 0 else math.inf)
            return M * r**p
        return M * bc**m * math.exp(-((r - bc) ** 2)) / r ** (2.0 * k)

    tail = TailBound(beta_cut + 8.0, "gaussian tail")
    f_prof = RadialSpectralProfile(n=n, magnitude=f_mag, tail_bound=tail, breakpoints=(beta_cut,))
    u_prof = RadialSpectralProfile(n=n, magnitude=u_mag, tail_bound=tail, breakpoints=(beta_cut,))
    return f_prof, u_prof


def poisson_example_check(
    m: float,
    k: float,
    beta_cut: float,
    M: float,
    n: int,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> PoissonExampleReport:
    """Verify ||u||^2 <= 2 ||grad u||^2 for u solving a Poisson-type equation.

    The source satisfies |f_hat| <= M |xi|^m below beta_cut and the solution
    is defined Fourier-side by u_hat = f_hat / |xi|^(2k) (operator symbol
    |xi|^(2k)).  beta0 is the largest radius whose low-frequency solution
    mass is certified below half the source energy via
    M_o * beta0^(2m-2k+n) <= ||f||^2 / 2 with M_o = M * |sphere|.
    """
    if m < k:
        raise ValueError("need m >= k")
    if 2.0 * m - 2.0 * k + n <= 0:
        raise ValueError("need 2m - 2k + n > 0")
    if M == 0.0:
        return PoissonExampleReport(0.0, True, 0.0, 0.0, 0.0, 0.0)
    if 2.0 * m - 4.0 * k + n <= 0:
        raise DivergentIntegralError(
            "solution energy diverges at the frequency origin: "
            f"2m - 4k + n = {2.0 * m - 4.0 * k + n:g} <= 0"
        )

    f_prof, u_prof = poisson_example_profiles(m, k, beta_cut, M, n)
    f_energy = radial_energy(f_prof, spec)
    M_o = M * sphere_area(n)
    beta0 = (f_energy / (2.0 * M_o)) ** (1.0 / (2.0 * m - 2.0 * k + n))

    u_energy = radial_energy(u_prof, spec)
    u_grad = gradient_energy(u_prof, spec)
    frac = fpi_alpha(u_prof, beta0, spec)
    holds = u_energy <= 2.0 * u_grad * (1.0 + 1e-9)
    return PoissonExampleReport(beta0, holds, u_energy, u_grad, f_energy, frac)
