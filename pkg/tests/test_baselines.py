import math

import numpy as np
import pytest

from bgmo.baselines import (
    Exponential,
    ExponentiatedPareto,
    ExtendedWeibull,
    Frechet,
    Gompertz,
    Lomax,
    ModifiedWeibull,
    Weibull,
    ZFunction,
    make_baseline,
)

ALL_FAMILIES = [
    Exponential(1.3),
    Weibull(0.8, 2.2),
    Lomax(2.5, 1.4),
    Frechet(2.0, 1.5),
    Gompertz(0.7, 0.9),
    ExtendedWeibull(1.2, ZFunction("square")),
    ModifiedWeibull(0.5, 0.8, 2.3),
    ExponentiatedPareto(0.8, 1.7, 2.4),
]


@pytest.mark.parametrize("b", ALL_FAMILIES, ids=lambda b: b.tag)
class TestCommonContracts:
    def test_pdf_matches_cdf_derivative(self, b):
        ts = b.quantile(np.linspace(0.05, 0.95, 15))
        h = 1e-6 * np.maximum(np.abs(ts), 1.0)
        num = (b.cdf(ts + h) - b.cdf(ts - h)) / (2 * h)
        np.testing.assert_allclose(num, b.pdf(ts), rtol=1e-6)

    def test_cdf_plus_sf_is_one(self, b):
        ts = b.quantile(np.linspace(0.01, 0.99, 30))
        np.testing.assert_allclose(b.cdf(ts) + b.sf(ts), 1.0, atol=1e-12)

    def test_quantile_right_inverse(self, b):
        us = np.linspace(0.01, 0.99, 49)
        np.testing.assert_allclose(b.cdf(b.quantile(us)), us, atol=1e-10)

    def test_isf_right_inverse(self, b):
        qs = np.array([1e-3, 1e-2, 0.1, 0.5, 0.9])
        np.testing.assert_allclose(b.sf(b.isf(qs)), qs, rtol=1e-9)

    def test_cdf_monotone(self, b):
        ts = np.linspace(b.support_low, float(b.quantile(0.999)), 200)
        vals = b.cdf(ts)
        assert np.all(np.diff(vals) >= -1e-15)

    def test_outside_support(self, b):
        below = b.support_low - 1.0
        assert b.pdf(below) == 0.0
        assert b.cdf(below) == 0.0
        assert b.sf(below) == 1.0

    def test_log_forms_consistent(self, b):
        ts = b.quantile(np.linspace(0.1, 0.9, 9))
        np.testing.assert_allclose(np.exp(b.log_pdf(ts)), b.pdf(ts), rtol=1e-12)
        np.testing.assert_allclose(np.exp(b.log_sf(ts)), b.sf(ts), rtol=1e-12)
        np.testing.assert_allclose(np.exp(b.log_cdf(ts)), b.cdf(ts), rtol=1e-10)


class TestSpotValues:
    def test_exponential_pdf_at_zero(self):
        assert Exponential(1.0).pdf(0.0) == pytest.approx(1.0)

    def test_exponential_cdf_ln2(self):
        assert Exponential(1.0).cdf(math.log(2)) == pytest.approx(0.5, abs=1e-15)

    def test_exponential_quantile(self):
        assert Exponential(2.0).quantile(0.5) == pytest.approx(math.log(2) / 2, rel=1e-14)

    def test_weibull_pdf(self):
        assert Weibull(1.0, 2.0).pdf(1.0) == pytest.approx(2 * math.exp(-1), rel=1e-14)

    def test_weibull_quantile_inverts_cdf_example(self):
        assert Weibull(1.0, 2.0).quantile(1 - math.exp(-1)) == pytest.approx(1.0, rel=1e-12)

    def test_lomax_cdf(self):
        assert Lomax(1.0, 1.0).cdf(1.0) == pytest.approx(0.5, abs=1e-15)

    def test_frechet_cdf_vanishes_at_origin(self):
        assert Frechet(1.0, 1.0).cdf(1e-12) == 0.0

    def test_gompertz_closed_form_quantile(self):
        b = Gompertz(0.9, 1.7)
        u = 0.37
        t = b.quantile(u)
        expected = math.log1p(-(1.7 / 0.9) * math.log1p(-u)) / 1.7
        assert t == pytest.approx(expected, rel=1e-13)

    def test_modified_weibull_quantile_oracle(self):
        # root of sigma*t + beta*t^gamma = ln 2, independent bisection
        sigma, beta, gamma = 1.0, 1.0, 2.0
        b = ModifiedWeibull(sigma, beta, gamma)
        target = math.log(2)
        lo, hi = 0.0, 10.0
        for _ in range(200):
            mid = (lo + hi) / 2
            if sigma * mid + beta * mid**gamma < target:
                lo = mid
            else:
                hi = mid
        assert b.quantile(0.5) == pytest.approx((lo + hi) / 2, abs=1e-10)

    def test_exponentiated_pareto_support(self):
        b = ExponentiatedPareto(2.0, 1.5, 0.7)
        assert b.support_low == 2.0
        assert b.pdf(1.9) == 0.0
        assert b.cdf(b.quantile(0.7)) == pytest.approx(0.7, abs=1e-12)


class TestParameterValidation:
    def test_positive_params(self):
        with pytest.raises(ValueError):
            Exponential(0.0)
        with pytest.raises(ValueError):
            Weibull(1.0, -1.0)
        with pytest.raises(ValueError):
            Frechet(-1.0, 1.0)

    def test_modified_weibull_constraints(self):
        with pytest.raises(ValueError):
            ModifiedWeibull(0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            ModifiedWeibull(-0.5, 1.0, 1.0)
        # sigma = 0 is allowed when beta > 0
        ModifiedWeibull(0.0, 1.0, 2.0)

    def test_quantile_domain(self):
        with pytest.raises(ValueError):
            Exponential(1.0).quantile(0.0)
        with pytest.raises(ValueError):
            Weibull(1.0, 1.0).quantile(1.0)


class TestExtendedWeibullReductions:
    """The pluggable-hazard family collapses onto named families."""

    def check(self, ew, other, lo=0.05, hi=0.95):
        ts = other.quantile(np.linspace(lo, hi, 50))
        np.testing.assert_allclose(ew.cdf(ts), other.cdf(ts), atol=1e-12)
        np.testing.assert_allclose(ew.pdf(ts), other.pdf(ts), rtol=1e-10)

    def test_linear_is_exponential(self):
        self.check(ExtendedWeibull(1.7, ZFunction("linear")), Exponential(1.7))

    def test_square_is_rayleigh(self):
        self.check(ExtendedWeibull(0.8, ZFunction("square")), Weibull(0.8, 2.0))

    def test_log_ratio_is_pareto(self):
        # survival (t/k)^-delta matches the power cdf with unit exponent
        ew = ExtendedWeibull(2.5, ZFunction("log_ratio", k=1.5))
        pareto = ExponentiatedPareto(1.5, 2.5, 1.0)
        self.check(ew, pareto)

    def test_gompertz_link_is_gompertz(self):
        ew = ExtendedWeibull(1.5, ZFunction("gompertz_link", beta=2.0))
        self.check(ew, Gompertz(1.5, 2.0))


class TestFactory:
    def test_cli_spellings(self):
        b = make_baseline("weibull", **{"lambda": 1.0, "beta": 2.0})
        assert isinstance(b, Weibull)
        assert b.lam == 1.0 and b.beta == 2.0

    def test_extended_weibull_variant(self):
        b = make_baseline("extended_weibull", delta=2.0, z="log_ratio", k=3.0)
        assert b.support_low == 3.0

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            make_baseline("cauchy", gamma=1.0)

    def test_bad_parameter_name(self):
        with pytest.raises(ValueError):
            make_baseline("exponential", rate=1.0)
