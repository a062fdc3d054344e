import math
from fractions import Fraction as F

import numpy as np
import pytest

from bicoeff.class_operator import (
    ArgFamily,
    ClassParams,
    ParameterError,
    ReFamily,
    check_condition,
    operator_coefficients_symbolic,
    operator_series,
    polar_grid,
    symbolic_normalized,
)
from bicoeff.polyring import symbols
from bicoeff.series import NormalizedSeries, SeriesDomainError, TruncatedSeries, derivative, geometric


def test_params_validation_messages():
    with pytest.raises(ParameterError, match="lambda must be >= 1"):
        ClassParams(F(1, 2), 0, 0)
    with pytest.raises(ParameterError, match="mu must be >= 0"):
        ClassParams(1, -1, 0)
    with pytest.raises(ParameterError, match="delta must be >= 0"):
        ClassParams(1, 0, "-1/3")
    with pytest.raises(ParameterError, match="0 < alpha <= 1"):
        ArgFamily(0)
    with pytest.raises(ParameterError, match="0 <= beta < 1"):
        ReFamily(1)


def test_xi_is_derived():
    p = ClassParams(2, F(1, 2), 1)
    assert p.xi == F(9, 2) / 5


def test_operator_collapses_to_derivative():
    p = ClassParams(1, 1, 0)
    f = NormalizedSeries.from_tail([1, 1])
    h = operator_series(f, p)
    assert h.coeffs[: h.valid + 1] == (1, 2, 3)


def test_operator_equals_derivative_symbolically():
    p = ClassParams(1, 1, 0)
    f = symbolic_normalized(4)
    assert operator_series(f, p).close_to(derivative(f), 0)


def test_first_two_coefficients_of_operator():
    a2, a3 = symbols("a2", "a3")
    rng = np.random.default_rng(0)
    for _ in range(25):
        p = ClassParams(F(int(rng.integers(60, 181)), 60), F(int(rng.integers(0, 181)), 60),
                        F(int(rng.integers(0, 121)), 60))
        co = operator_coefficients_symbolic(p, 2)
        k = 1 + 6 * p.delta / (2 * p.lam + 1)
        assert co.z_side[0] == 1
        assert co.z_side[1] == (p.lam + p.mu + 2 * p.xi * p.delta) * a2
        assert co.z_side[2] == (2 * p.lam + p.mu) * ((p.mu - 1) / 2 * a2 ** 2 + k * a3)
        assert co.w_side[1] == -(p.lam + p.mu + 2 * p.xi * p.delta) * a2


def test_mu_one_removes_a2_squared_term():
    a3 = symbols("a3")[0]
    for lam, delta in [(1, 0), (F(5, 2), F(1, 3)), (3, 2)]:
        p = ClassParams(lam, 1, delta)
        z2 = operator_coefficients_symbolic(p, 2).z_side[2]
        assert z2 == (2 * p.lam + 1) * (1 + 6 * p.delta / (2 * p.lam + 1)) * a3
        assert z2.degree("a2") == 0


def test_symbolic_order_limits():
    with pytest.raises(ValueError):
        operator_coefficients_symbolic(ClassParams(1, 1, 0), 4)
    assert len(operator_coefficients_symbolic(ClassParams(1, 1, 0), 3).z_side) == 4


def test_constant_condition_margins():
    one = TruncatedSeries.constant(1.0, 4)
    r = check_condition(one, ArgFamily(F(1, 2)))
    assert r.satisfied and r.worst_margin == pytest.approx(math.pi / 4, abs=1e-15)
    r = check_condition(one, ReFamily(F(9, 10)))
    assert r.satisfied and r.worst_margin == pytest.approx(0.1, abs=1e-15)


def test_caratheodory_kernel_has_positive_real_part():
    # truncation of (1+z)/(1-z); closed form Re = (1-r^2)/|1-z|^2
    kernel = TruncatedSeries(tuple(1.0 if k == 0 else 2.0 for k in range(65)))
    radii = (0.1, 0.3, 0.5, 0.7, 0.9)
    r = check_condition(kernel, ReFamily(0), radii, 360)
    assert r.satisfied
    _, _, z = polar_grid(radii, 360)
    exact = ((1 + z) / (1 - z)).real.min()
    tail = 2 * 0.9 ** 65 / 0.1
    assert abs(r.worst_margin - exact) <= tail


def test_radius_cap_and_constant_term():
    with pytest.raises(SeriesDomainError):
        check_condition(TruncatedSeries.constant(1.0, 3), ArgFamily(1), radii=(0.5, 0.96))
    with pytest.raises(SeriesDomainError):
        check_condition(TruncatedSeries((2.0, 0.0)), ArgFamily(1))


def test_worst_point_tie_breaks_lexicographically():
    r = check_condition(TruncatedSeries.constant(1.0, 3), ArgFamily(1), radii=(0.2, 0.4), angles=8)
    assert r.worst_point == pytest.approx(0.2)


def test_satisfied_is_monotone_in_order_parameter():
    h = TruncatedSeries(tuple(geometric(32, 0.9 + 0.3j).coeffs))
    flags = [check_condition(h, ArgFamily(F(k, 20))).satisfied for k in range(1, 21)]
    assert flags == sorted(flags)
    flags = [check_condition(h, ReFamily(F(k, 20))).satisfied for k in range(0, 20)]
    assert flags == sorted(flags, reverse=True)


def test_non_finite_values_count_as_failures():
    h = TruncatedSeries((1.0, float("nan")))
    r = check_condition(h, ArgFamily(1), radii=(0.5,), angles=4)
    assert not r.satisfied and r.worst_margin == -math.inf
