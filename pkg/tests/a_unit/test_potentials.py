"""Tests for potential families and derivative checks."""

from __future__ import annotations

import numpy as np
import pytest

from kostin.errors import DomainError, ParameterError
from kostin.potentials import (
    Free,
    Harmonic,
    TimeFunction,
    UniformForce,
    UserCallable,
    UserPolynomial,
    check_derivatives,
    potential_eval,
)


class TestTimeFunction:
    """Test scalar functions of time."""

    def test_constant(self):
        f = TimeFunction.of(2.5)
        assert f.is_constant
        assert f(10.0) == 2.5

    def test_callable(self):
        f = TimeFunction.of(lambda t: 2.0 * t)
        assert not f.is_constant
        assert f(1.5) == 3.0

    def test_table_interpolates_and_holds(self):
        f = TimeFunction.from_table([0.0, 1.0], [0.0, 2.0])
        assert f(0.5) == pytest.approx(1.0)
        assert f(-1.0) == 0.0
        assert f(5.0) == 2.0

    def test_requires_exactly_one_kind(self):
        with pytest.raises(ParameterError, match="exactly one"):
            TimeFunction()

    def test_table_times_increasing(self):
        with pytest.raises(ParameterError, match="strictly increasing"):
            TimeFunction.from_table([1.0, 0.0], [0.0, 1.0])


class TestFamilies:
    """Test (V, V', V'') of the built-in families."""

    def test_free(self):
        pot = Free()
        assert potential_eval(pot, 3.0) == (0.0, 0.0, 0.0)
        v, v1, v2 = pot.evaluate(np.linspace(-1, 1, 5))
        assert v.shape == v1.shape == v2.shape == (5,)
        assert pot.is_curvature_free
        assert pot.is_quadratic

    def test_harmonic_from_omega(self):
        pot = Harmonic.from_omega(2.0, 3.0)
        assert pot.k(0.0) == 18.0
        assert potential_eval(pot, 1.0) == (9.0, 18.0, 18.0)
        assert pot.omega0(2.0) == pytest.approx(3.0)
        assert not pot.is_curvature_free
        assert pot.is_quadratic

    def test_harmonic_array(self):
        x = np.array([-1.0, 0.0, 2.0])
        v, v1, v2 = Harmonic(2.0).evaluate(x)
        np.testing.assert_allclose(v, [1.0, 0.0, 4.0])
        np.testing.assert_allclose(v1, [-2.0, 0.0, 4.0])
        np.testing.assert_allclose(v2, [2.0, 2.0, 2.0])

    def test_harmonic_time_dependent(self):
        pot = Harmonic(TimeFunction.from_table([0.0, 2.0], [1.0, 3.0]))
        assert potential_eval(pot, 1.0, t=1.0) == (1.0, 2.0, 2.0)

    def test_non_confining_harmonic(self):
        with pytest.raises(DomainError, match="non-confining"):
            Harmonic(-1.0).omega0(1.0)

    def test_uniform_force(self):
        pot = UniformForce(TimeFunction.from_table([0.0, 1.0], [0.0, 2.0]))
        assert potential_eval(pot, 3.0, t=0.5) == (-3.0, -1.0, 0.0)
        assert pot.is_curvature_free

    def test_polynomial(self):
        pot = UserPolynomial((1.0, 0.0, 0.5))
        assert potential_eval(pot, 2.0) == pytest.approx((3.0, 2.0, 1.0))
        assert pot.degree == 2
        assert pot.is_quadratic
        assert not pot.is_curvature_free

    def test_quartic_is_not_quadratic(self):
        pot = UserPolynomial((0.0, 0.0, -1.0, 0.0, 0.25))
        assert not pot.is_quadratic
        assert potential_eval(pot, 2.0) == pytest.approx((0.0, 4.0, 10.0))

    def test_polynomial_degree_limit(self):
        with pytest.raises(ParameterError, match="degree must be <= 4"):
            UserPolynomial((1.0,) * 6)


class TestUserCallable:
    """Test user-supplied potentials."""

    def test_consistent_derivatives(self):
        pot = UserCallable(
            v=lambda x, t: np.sin(x),
            dv=lambda x, t: np.cos(x),
            d2v=lambda x, t: -np.sin(x),
        )
        assert potential_eval(pot, 0.0) == pytest.approx((0.0, 1.0, 0.0))

    def test_inconsistent_derivatives(self):
        with pytest.raises(ParameterError, match="finite differences"):
            UserCallable(
                v=lambda x, t: x**3,
                dv=lambda x, t: 3 * x**2,
                d2v=lambda x, t: 3 * x,
            )

    def test_domain(self):
        pot = UserCallable(
            v=lambda x, t: np.log(x),
            dv=lambda x, t: 1.0 / x,
            d2v=lambda x, t: -1.0 / x**2,
            domain=(0.5, 4.0),
        )
        assert potential_eval(pot, 1.0)[0] == 0.0
        with pytest.raises(DomainError, match="outside the potential domain"):
            pot.evaluate(np.array([1.0, 5.0]))

    def test_empty_domain(self):
        with pytest.raises(ParameterError, match="empty domain"):
            UserCallable(
                v=lambda x, t: x, dv=lambda x, t: 1.0, d2v=lambda x, t: 0.0, domain=(1.0, 1.0)
            )


class TestCheckDerivatives:
    """Test the finite-difference consistency measure."""

    def test_exact_families_are_consistent(self):
        xs = (-2.0, 0.0, 1.3)
        for pot in (Harmonic(3.0), UniformForce(2.0), UserPolynomial((0, 1, 2, 3, 4))):
            assert check_derivatives(pot, xs) < 1e-6
