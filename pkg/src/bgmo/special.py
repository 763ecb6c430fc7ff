"""Self-contained special functions used throughout the package.

Everything here is scalar, pure, and dependency-free (stdlib ``math`` only):
log-beta, the regularized incomplete beta function and its inverse, a small-u
power-series approximation of the beta quantile, and the digamma function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ToleranceConfig",
    "ConvergenceError",
    "log_beta",
    "reg_inc_beta",
    "beta_quantile",
    "beta_quantile_series",
    "digamma",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Absolute/relative tolerances and iteration cap for iterative routines."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_TOL = ToleranceConfig()


class ConvergenceError(ArithmeticError):
    """Iteration budget exhausted; ``estimate`` carries the best value found."""

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate


def log_beta(m: float, n: float) -> float:
    """Return ln B(m, n) = ln Γ(m) + ln Γ(n) - ln Γ(m+n) for m, n > 0."""
    if m <= 0 or n <= 0:
        raise ValueError(f"log_beta requires positive arguments, got ({m}, {n})")
    return math.lgamma(m) + math.lgamma(n) - math.lgamma(m + n)


def _beta_contfrac(x: float, a: float, b: float, tol: ToleranceConfig) -> float:
    """Continued fraction for the incomplete beta (modified Lentz iteration).

    Converges rapidly for x < (a + 1)/(a + b + 2); callers switch to the
    complementary tail otherwise.
    """
    tiny = 1e-300
    # a handful of extra iterations buys machine precision, so never stop
    # coarser than ~4 ulp even when the caller's tolerance is loose
    stop = min(tol.rel_tol, 1e-15)
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for i in range(1, tol.max_iter + 1):
        m2 = 2 * i
        # even step
        aa = i * (b - i) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + i) * (qab + i) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < stop:
            return h
    raise ConvergenceError(
        f"incomplete beta continued fraction stalled for x={x}, a={a}, b={b}", h
    )


def reg_inc_beta(x: float, m: float, n: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Regularized incomplete beta function I_x(m, n).

    I_x(m, n) = (1/B(m, n)) * integral_0^x t^(m-1) (1-t)^(n-1) dt, evaluated
    via the continued fraction on whichever tail converges fast.
    """
    if m <= 0 or n <= 0:
        raise ValueError(f"reg_inc_beta requires positive shapes, got ({m}, {n})")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"reg_inc_beta requires x in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        m * math.log(x) + n * math.log1p(-x) - log_beta(m, n)
    )
    front = math.exp(log_front)
    if x < (m + 1.0) / (m + n + 2.0):
        return front * _beta_contfrac(x, m, n, tol) / m
    return 1.0 - front * _beta_contfrac(1.0 - x, n, m, tol) / n


def beta_quantile(u: float, m: float, n: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Inverse of ``reg_inc_beta`` in x: the z with I_z(m, n) = u.

    Bisection brackets the root, then safeguarded Newton steps (the integrand
    x^(m-1)(1-x)^(n-1)/B(m,n) is the exact derivative) polish it.  Roots in
    the upper half are found through the mirrored problem so that a root
    crowding 1 stays resolvable.
    """
    if m <= 0 or n <= 0:
        raise ValueError(f"beta_quantile requires positive shapes, got ({m}, {n})")
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"beta_quantile requires u in [0, 1], got {u}")
    if u == 0.0:
        return 0.0
    if u == 1.0:
        return 1.0
    if u > 0.5:
        return 1.0 - _beta_quantile_low(1.0 - u, n, m, tol)
    return _beta_quantile_low(u, m, n, tol)


def _beta_quantile_low(u: float, m: float, n: float, tol: ToleranceConfig) -> float:
    # safeguarded Newton: a sign bracket always shrinks (midpoint fallback),
    # and convergence is judged on the bracket in x, not on the residual,
    # which is uninformative where the incomplete beta is nearly flat
    lo, hi = 0.0, 1.0
    x = 0.5
    lbeta = log_beta(m, n)
    for _ in range(max(tol.max_iter, 80)):
        f = reg_inc_beta(x, m, n, tol) - u
        if f > 0:
            hi = x
        else:
            lo = x
        if hi - lo <= lo * min(tol.rel_tol, 1e-13) + 1e-290:
            return 0.5 * (lo + hi)
        log_pdf = (m - 1.0) * math.log(x) + (n - 1.0) * math.log1p(-x) - lbeta
        step = f * math.exp(-log_pdf) if log_pdf > -700 else 0.0
        x_new = x - step
        if step == 0.0 or not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        x = x_new
    raise ConvergenceError(f"beta_quantile stalled for u={u}, m={m}, n={n}", x)


def _quantile_series_coeffs(m: float, n: float) -> tuple[float, float, float, float]:
    """Coefficients d_1..d_4 of the small-u beta quantile expansion."""
    d1 = 1.0
    d2 = (n - 1.0) / (m + 1.0)
    d3 = (n - 1.0) * (m * m + 3.0 * m * n - m + 5.0 * n - 4.0) / (
        2.0 * (m + 1.0) ** 2 * (m + 2.0)
    )
    d4 = (
        (n - 1.0)
        * (
            m**4
            + (6.0 * n - 1.0) * m**3
            + (n + 2.0) * (8.0 * n - 5.0) * m**2
            + (33.0 * n * n - 30.0 * n + 4.0) * m
            + n * (31.0 * n - 47.0)
            + 18.0
        )
        / (3.0 * (m + 1.0) ** 3 * (m + 2.0) * (m + 3.0))
    )
    return d1, d2, d3, d4


def beta_quantile_series(u: float, m: float, n: float, order: int = 4) -> float:
    """Small-u power series for the beta quantile.

    Q_{m,n}(u) ~ sum_i d_i w^i with w = [m B(m, n) u]^(1/m), so the i-th term
    scales as [m B(m, n)]^(i/m) u^(i/m).  Valid only as u -> 0; the exact
    ``beta_quantile`` should be used elsewhere.
    """
    if not 1 <= order <= 4:
        raise ValueError(f"order must be in [1, 4], got {order}")
    if m <= 0 or n <= 0:
        raise ValueError(f"beta_quantile_series requires positive shapes, got ({m}, {n})")
    if not 0.0 <= u < 1.0:
        raise ValueError(f"beta_quantile_series requires u in [0, 1), got {u}")
    if u == 0.0:
        return 0.0
    d = _quantile_series_coeffs(m, n)
    w = (m * math.exp(log_beta(m, n)) * u) ** (1.0 / m)
    return sum(d[i] * w ** (i + 1) for i in range(order))


# Coefficients of the asymptotic series psi(x) ~ ln x - 1/(2x) - sum B_2k/(2k x^2k).
_DIGAMMA_ASYMPT = (
    -1.0 / 12.0,
    1.0 / 120.0,
    -1.0 / 252.0,
    1.0 / 240.0,
    -1.0 / 132.0,
    691.0 / 32760.0,
    -1.0 / 12.0,
)


def digamma(x: float) -> float:
    """Digamma psi(x) for x > 0 via upward recurrence plus asymptotic series."""
    if x <= 0:
        raise ValueError(f"digamma requires a positive argument, got {x}")
    result = 0.0
    while x < 10.0:
        result -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for coeff in _DIGAMMA_ASYMPT:
        series += coeff * power
        power *= inv2
    return result + math.log(x) - 0.5 / x + series
