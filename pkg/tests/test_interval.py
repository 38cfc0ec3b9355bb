import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from decaylab.interval import (
    BasisKind,
    IntervalBasisElement,
    IntervalFunction,
    IntervalSpectrum,
    basis_elements,
    basis_eval,
    eigenvalues,
    orthonormality_check,
    poincare_interval_check,
)
from decaylab.spectral import DEFAULT_QUADRATURE, _quad


def shooting_eigenvalues(R, count):
    """Independent oracle: solve w'' + lam w = 0, w(-R) = 0, find lam with w(R) = 0."""

    def end_value(lam):
        sol = solve_ivp(
            lambda x, y: [y[1], -lam * y[0]],
            (-R, R),
            [0.0, 1.0],
            rtol=1e-10,
            atol=1e-12,
            dense_output=False,
        )
        return sol.y[0, -1]

    found = []
    lam = 1e-6
    step = 0.05 / R**2
    prev = end_value(lam)
    while len(found) < count:
        nxt = end_value(lam + step)
        if prev == 0.0 or (prev > 0) != (nxt > 0):
            lo, hi = lam, lam + step
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if (end_value(lo) > 0) != (end_value(mid) > 0):
                    hi = mid
                else:
                    lo = mid
            found.append(0.5 * (lo + hi))
        lam += step
        prev = nxt
    return found


class TestEigenvalues:
    def test_R_pi_first_four(self):
        assert eigenvalues(math.pi, 4) == pytest.approx([0.25, 1.0, 2.25, 4.0], rel=1e-14)

    def test_first_is_squared_gap(self):
        for R in (0.5, 1.0, 3.7):
            assert eigenvalues(R, 1)[0] == pytest.approx((math.pi / (2 * R)) ** 2, rel=1e-14)

    def test_R_one_single(self):
        assert eigenvalues(1.0, 1) == [pytest.approx(math.pi**2 / 4.0, rel=1e-14)]

    def test_shooting_oracle(self):
        R = math.pi
        got = eigenvalues(R, 4)
        oracle = shooting_eigenvalues(R, 4)
        assert got == pytest.approx(oracle, rel=1e-6)

    @given(R=st.floats(0.1, 10.0), k=st.integers(1, 12))
    def test_diameter_scaling(self, R, k):
        small = eigenvalues(R, k)
        large = eigenvalues(2.0 * R, k)
        assert large == pytest.approx([x / 4.0 for x in small], rel=1e-12)

    def test_count_validated(self):
        with pytest.raises(ValueError):
            eigenvalues(1.0, 0)


class TestBasisEval:
    def test_sine_odd_at_origin(self):
        e = IntervalBasisElement(BasisKind.SINE, 1, 2.0)
        assert basis_eval(e, 0.0) == 0.0

    def test_cosine_ground_at_origin(self):
        for R in (0.5, 1.0, 2.0):
            e = IntervalBasisElement(BasisKind.COSINE, 0, R)
            assert basis_eval(e, 0.0) == pytest.approx(1.0 / math.sqrt(R), rel=1e-14)

    def test_sine_two_quarter_point(self):
        # sin(2 pi x / R) at x = R/4 peaks: value = 1/sqrt(R)
        e = IntervalBasisElement(BasisKind.SINE, 2, 1.0)
        assert basis_eval(e, 0.25) == pytest.approx(1.0, rel=1e-14)

    def test_vanishes_at_endpoints(self):
        for e in basis_elements(1.3, 5):
            assert abs(basis_eval(e, 1.3)) <= 1e-12
            assert abs(basis_eval(e, -1.3)) <= 1e-12

    def test_outside_domain_rejected(self):
        e = IntervalBasisElement(BasisKind.SINE, 1, 1.0)
        with pytest.raises(ValueError):
            basis_eval(e, 1.5)

    def test_index_bounds(self):
        with pytest.raises(ValueError):
            IntervalBasisElement(BasisKind.SINE, 0, 1.0)
        IntervalBasisElement(BasisKind.COSINE, 0, 1.0)


class TestOrthonormality:
    def test_max_deviation_small(self):
        assert orthonormality_check(1.0, 6) <= 1e-10

    def test_self_product_normalized(self):
        e = IntervalBasisElement(BasisKind.SINE, 3, 2.0)
        ip = _quad(lambda x: basis_eval(e, x) ** 2, -2.0, 2.0, DEFAULT_QUADRATURE)
        assert ip == pytest.approx(1.0, abs=1e-12)

    def test_sine_cosine_cross_term(self):
        s = IntervalBasisElement(BasisKind.SINE, 1, 1.0)
        c = IntervalBasisElement(BasisKind.COSINE, 0, 1.0)
        ip = _quad(lambda x: basis_eval(s, x) * basis_eval(c, x), -1.0, 1.0, DEFAULT_QUADRATURE)
        assert abs(ip) <= 1e-12


class TestIntervalSpectrum:
    def test_gap(self):
        sp = IntervalSpectrum.build(2.0, 10)
        assert sp.gap == pytest.approx(math.pi / 4.0, rel=1e-14)
        assert 0.0 not in sp.frequencies

    def test_prefix_is_all_half_multiples(self):
        sp = IntervalSpectrum.build(1.0, 6)
        want = [j * math.pi / 2.0 for j in range(1, 7)]
        assert list(sp.frequencies) == pytest.approx(want, rel=1e-14)


class TestPoincare:
    def test_ground_mode_attains_gap(self):
        u = IntervalFunction(1.0, [0.0], [1.0])
        lhs, rhs, ratio = poincare_interval_check(u)
        assert ratio == pytest.approx(1.0, abs=1e-10)

    def test_first_sine_weight(self):
        R = 1.7
        u = IntervalFunction(R, [2.0], [0.0])
        lhs, _, _ = poincare_interval_check(u)
        assert lhs / u.energy() == pytest.approx((math.pi / R) ** 2, rel=1e-12)

    def test_zero_function_rejected(self):
        with pytest.raises(ValueError):
            poincare_interval_check(IntervalFunction(1.0, [0.0], [0.0]))

    def test_seeded_random_vectors(self, rng):
        for _ in range(200):
            u = IntervalFunction(1.0, rng.standard_normal(8), rng.standard_normal(8))
            lhs, rhs, _ = poincare_interval_check(u)
            assert lhs >= rhs * (1.0 - 1e-12)

    @given(
        sines=st.lists(st.floats(-5, 5), min_size=1, max_size=6),
        cosines=st.lists(st.floats(-5, 5), min_size=1, max_size=6),
    )
    def test_inequality_is_structural(self, sines, cosines):
        u = IntervalFunction(1.0, sines, cosines)
        if u.energy() == 0.0:
            return
        lhs, rhs, _ = poincare_interval_check(u)
        assert lhs >= rhs * (1.0 - 1e-12)

    def test_parseval_against_quadrature(self):
        u = IntervalFunction(1.0, [0.7, -0.4, 0.1], [1.1, 0.0, -0.3])
        quad_energy = _quad(lambda x: u(x) ** 2, -1.0, 1.0, DEFAULT_QUADRATURE)
        assert quad_energy == pytest.approx(u.energy(), rel=1e-9)
