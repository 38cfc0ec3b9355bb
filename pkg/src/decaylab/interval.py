"""Dirichlet spectral theory on the interval (-R, R), made explicit.

The Dirichlet Laplacian on (-R, R) has the orthonormal eigenbasis

    (1/sqrt(R)) sin(k pi x / R),          k = 1, 2, ...
    (1/sqrt(R)) cos((2k+1) pi x / (2R)),  k = 0, 1, ...

with eigenvalues (k pi / R)^2 and ((2k+1) pi / (2R))^2.  (Each family
averages to 1/2 over the length-2R interval, hence the 1/sqrt(R); the
familiar sqrt(2/R) belongs to the half interval.)  The union of the two
frequency families is every nonzero multiple of pi/(2R), so the spectrum
is discrete with gap (pi/(2R))^2 and the derivative-energy identity gives
the interval Poincare inequality with that sharp constant.  Only n = 1 is
implemented; on the box (-R, R)^n the eigenfunctions are products of these
and add no new algorithmic content.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from heapq import merge
from itertools import count, islice

import numpy as np

from .spectral import DEFAULT_QUADRATURE, QuadratureSpec, _quad


class BasisKind(Enum):
    SINE = "sine"
    COSINE = "cosine"


@dataclass(frozen=True)
class IntervalBasisElement:
    """One normalized Dirichlet eigenfunction on (-R, R)."""

    kind: BasisKind
    index: int
    R: float

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("R must be positive")
        lo = 1 if self.kind is BasisKind.SINE else 0
        if self.index < lo:
            raise ValueError(f"{self.kind.value} index must be >= {lo}")

    @property
    def frequency(self) -> float:
        if self.kind is BasisKind.SINE:
            return self.index * math.pi / self.R
        return (2 * self.index + 1) * math.pi / (2.0 * self.R)

    @property
    def eigenvalue(self) -> float:
        return self.frequency**2


def basis_eval(e: IntervalBasisElement, x: float) -> float:
    """Pointwise value of the normalized eigenfunction; requires |x| <= R."""
    if abs(x) > e.R:
        raise ValueError(f"|x| = {abs(x)} exceeds R = {e.R}")
    norm = 1.0 / math.sqrt(e.R)
    if e.kind is BasisKind.SINE:
        return norm * math.sin(e.index * math.pi * x / e.R)
    return norm * math.cos((2 * e.index + 1) * math.pi * x / (2.0 * e.R))


def eigenvalues(R: float, count_: int) -> list[float]:
    """The smallest `count_` Dirichlet eigenvalues on (-R, R), ascending.

    Merged from the sine family (k pi / R)^2 and the cosine family
    ((2k+1) pi / (2R))^2; the first entry is always (pi / (2R))^2.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    if count_ < 1:
        raise ValueError("count must be >= 1")
    sines = ((k * math.pi / R) ** 2 for k in count(1))
    cosines = (((2 * k + 1) * math.pi / (2.0 * R)) ** 2 for k in count(0))
    return list(islice(merge(sines, cosines), count_))


@dataclass(frozen=True)
class IntervalSpectrum:
    """Finite prefix of the (symmetric) frequency set of the eigenbasis.

    Stores the positive representatives; the set itself is symmetric about
    zero and never contains zero, so min |xi| = pi / (2R).
    """

    R: float
    frequencies: tuple[float, ...]

    @classmethod
    def build(cls, R: float, count_: int) -> "IntervalSpectrum":
        sines = (k * math.pi / R for k in count(1))
        cosines = ((2 * k + 1) * math.pi / (2.0 * R) for k in count(0))
        return cls(R, tuple(islice(merge(sines, cosines), count_)))

    @property
    def gap(self) -> float:
        return min(self.frequencies)


def basis_elements(R: float, max_index: int) -> list[IntervalBasisElement]:
    """Sine(1..max_index) and Cosine(0..max_index)."""
    out = [IntervalBasisElement(BasisKind.SINE, k, R) for k in range(1, max_index + 1)]
    out += [IntervalBasisElement(BasisKind.COSINE, k, R) for k in range(0, max_index + 1)]
    return out


def orthonormality_check(R: float, max_index: int, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Max over pairs of |<e_i, e_j> - delta_ij|, inner products by quadrature."""
    if max_index < 1:
        raise ValueError("max_index must be >= 1")
    elems = basis_elements(R, max_index)
    worst = 0.0
    for i, ei in enumerate(elems):
        for j in range(i, len(elems)):
            ej = elems[j]
            ip = _quad(lambda x: basis_eval(ei, x) * basis_eval(ej, x), -R, R, spec)
            worst = max(worst, abs(ip - (1.0 if i == j else 0.0)))
    return worst


@dataclass(frozen=True)
class IntervalFunction:
    """Finite expansion in the orthonormal eigenbasis.

    sine_coeffs[k] multiplies Sine(k+1); cosine_coeffs[k] multiplies
    Cosine(k).  Working in the real orthonormal basis makes the conjugate
    symmetry of the equivalent complex-exponential expansion automatic.
    """

    R: float
    sine_coeffs: np.ndarray
    cosine_coeffs: np.ndarray

    def __post_init__(self):
        s = np.atleast_1d(np.asarray(self.sine_coeffs, dtype=np.float64))
        c = np.atleast_1d(np.asarray(self.cosine_coeffs, dtype=np.float64))
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(c))):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "sine_coeffs", s)
        object.__setattr__(self, "cosine_coeffs", c)

    def energy(self) -> float:
        return float(np.sum(self.sine_coeffs**2) + np.sum(self.cosine_coeffs**2))

    def __call__(self, x: float) -> float:
        val = 0.0
        for k, a in enumerate(self.sine_coeffs, start=1):
            if a:
                val += a * basis_eval(IntervalBasisElement(BasisKind.SINE, k, self.R), x)
        for k, b in enumerate(self.cosine_coeffs):
            if b:
                val += b * basis_eval(IntervalBasisElement(BasisKind.COSINE, k, self.R), x)
        return val


def poincare_interval_check(u: IntervalFunction) -> tuple[float, float, float]:
    """(derivative energy, gap * energy, their ratio) for the expansion u.

    The derivative energy is the eigenvalue-weighted coefficient sum, so
    lhs >= (pi/(2R))^2 * ||u||^2 holds term by term; ratio 1 is attained
    exactly on the lowest cosine mode.
    """
    energy = u.energy()
    if energy == 0.0:
        raise ValueError("zero function: Poincare ratio undefined")
    R = u.R
    lhs = 0.0
    for k, a in enumerate(u.sine_coeffs, start=1):
        lhs += (k * math.pi / R) ** 2 * a * a
    for k, b in enumerate(u.cosine_coeffs):
        lhs += ((2 * k + 1) * math.pi / (2.0 * R)) ** 2 * b * b
    rhs = (math.pi / (2.0 * R)) ** 2 * energy
    return lhs, rhs, lhs / rhs
