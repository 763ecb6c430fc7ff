"""Series expansions and integral functionals of the family.

The density and distribution function admit mixture expansions in powers of
the tilted survival S(t) = alpha*sf_G/(1-(1-alpha)*sf_G) or of its complement
C(t) = 1 - S(t).  For integer shape m the expansions are finite and exact;
for real m they are generalized-binomial series truncated by a
``TruncationPolicy``.  Everything here is cross-checkable against the direct
evaluations in ``family``; quadrature-based functionals (PWMs, moments, mgf,
entropy) use adaptive Gauss-Kronrod integration over the baseline support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from . import special
from .baselines import Baseline
from .family import BgmoDistribution
from .gmo import GmoParams, gmo_log_sf, mo_log_pdf

__all__ = [
    "TruncationPolicy",
    "SeriesEval",
    "DivergenceError",
    "ExpansionCoeffs",
    "expansion_coefficients",
    "delta_coeffs",
    "pdf_via_expansion",
    "cdf_via_expansion",
    "order_stat_pdf",
    "pwm_mo",
    "moment_series",
    "moment_direct",
    "order_stat_moment",
    "mgf",
    "mgf_series",
    "renyi_entropy",
    "asymptote",
    "TailApproximant",
]


@dataclass(frozen=True)
class TruncationPolicy:
    """Term cap and relative tail tolerance for the infinite expansions."""

    max_terms: int = 60
    tail_tol: float = 1e-10

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if self.tail_tol <= 0:
            raise ValueError("tail_tol must be positive")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class SeriesEval:
    """A truncated-series value with a convergence flag and tail estimate."""

    value: float
    converged: bool
    tail: float = 0.0

    def __float__(self):
        return self.value


class DivergenceError(ArithmeticError):
    """An integral functional fails its tail-decay convergence check."""


@dataclass(frozen=True)
class ExpansionCoeffs:
    """All coefficient tables of the series machinery for one parameter set.

    ``delta``/``delta_prime`` weight powers of the tilted survival, ``phi``
    and ``chi`` weight powers of its complement, ``psi`` is the integer-shape
    cdf table, and ``xi``/``d_table`` appear only when an order-statistic
    context (r, sample_n) is supplied.
    """

    delta: np.ndarray
    delta_prime: np.ndarray
    phi: np.ndarray
    chi: np.ndarray
    psi: np.ndarray | None = None
    xi: np.ndarray | None = None
    d_table: np.ndarray | None = None


def expansion_coefficients(
    m: float,
    n: float,
    theta: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    r: int | None = None,
    sample_n: int | None = None,
) -> ExpansionCoeffs:
    """Bundle every coefficient table for the given shape parameters.

    The integer-shape cdf table ``psi`` is included when m and n are integer;
    ``xi`` (rows l, columns k, the order-statistic weights) and the cdf-power
    tables ``d_table`` (powers of the chi series, one row per power) require
    both ``r`` and ``sample_n``.
    """
    delta, delta_prime = delta_coeffs(m, n, theta, policy)
    phi = _phi_coeffs(m, n, theta, policy)
    chi = _chi_coeffs(m, n, theta, policy)
    psi = _psi_cdf_coeffs(m, n, theta, policy) if _is_int(m) and _is_int(n) else None
    xi = d_table = None
    if r is not None and sample_n is not None:
        if not 1 <= r <= sample_n:
            raise ValueError(f"need 1 <= r <= sample_n, got r={r}, sample_n={sample_n}")
        K = policy.max_terms
        rows = []
        for j in range(sample_n - r + 1):
            power = j + r - 1
            chi_pow = np.zeros(K)
            chi_pow[0] = 1.0
            for _ in range(power):
                chi_pow = np.convolve(chi_pow, chi[:K])[:K]
            rows.append(chi_pow)
        d_table = np.vstack(rows)
        const = math.factorial(sample_n) / (
            math.factorial(r - 1) * math.factorial(sample_n - r)
        )
        weights = np.array(
            [(-1.0) ** j * math.comb(sample_n - r, j) for j in range(sample_n - r + 1)]
        )
        # xi[l, k] = const * sum_j w_j * phi_l * d_table[j, k]
        xi = const * np.outer(phi[:K], weights @ d_table)
    return ExpansionCoeffs(
        delta=delta, delta_prime=delta_prime, phi=phi, chi=chi, psi=psi, xi=xi, d_table=d_table
    )


def _is_int(x: float) -> bool:
    return abs(x - round(x)) < 1e-9


def _binom_row(r: float, length: int) -> np.ndarray:
    """Generalized binomial coefficients C(r, j) for j = 0..length-1."""
    out = np.empty(length)
    out[0] = 1.0
    for j in range(1, length):
        out[j] = out[j - 1] * (r - (j - 1)) / j
    return out


def _sum_with_policy(terms, policy: TruncationPolicy) -> SeriesEval:
    """Sum a term sequence, stopping after two consecutive negligible terms.

    Leading zero terms (power series often start with vanishing coefficients)
    do not count toward the stopping rule.
    """
    total = 0.0
    small_run = 0
    last = 0.0
    seen_nonzero = False
    for term in terms:
        total += term
        last = abs(term)
        if not seen_nonzero:
            seen_nonzero = term != 0.0
            continue
        if last <= policy.tail_tol * max(abs(total), 1e-300):
            small_run += 1
            if small_run >= 2:
                return SeriesEval(total, True, last)
        else:
            small_run = 0
    return SeriesEval(total, small_run > 0, last)


# --- coefficient tables ----------------------------------------------------


def delta_coeffs(m: float, n: float, theta: float, policy: TruncationPolicy = DEFAULT_POLICY):
    """Mixture weights of the survival-power expansion of the density.

    delta[j]  = (-1)^j * theta * C(m-1, j) / B(m, n)
    delta'[j] = (-1)^(j+1) * C(m-1, j) / (B(m, n) * (j + n))

    so that delta[j] = -delta'[j] * theta * (j + n).  For integer m there are
    exactly m nonzero terms; otherwise the table is truncated by ``policy``.
    """
    if m <= 0 or n <= 0 or theta <= 0:
        raise ValueError("shape parameters must be positive")
    count = int(round(m)) if _is_int(m) else policy.max_terms
    binom = _binom_row(m - 1.0, count)
    inv_beta = math.exp(-special.log_beta(m, n))
    j = np.arange(count)
    signs = np.where(j % 2 == 0, 1.0, -1.0)
    delta = signs * theta * binom * inv_beta
    delta_prime = -signs * binom * inv_beta / (j + n)
    return delta, delta_prime


def _phi_coeffs(m, n, theta, policy):
    """Weights of the cdf-power expansion: phi[l] = sum_j delta_j (-1)^l C(theta(j+n)-1, l)."""
    delta, _ = delta_coeffs(m, n, theta, policy)
    L = policy.max_terms
    phi = np.zeros(L)
    for j, dj in enumerate(delta):
        expo = theta * (j + n) - 1.0
        row = _binom_row(expo, L)
        signs = np.where(np.arange(L) % 2 == 0, 1.0, -1.0)
        phi += dj * signs * row
    return phi


def _chi_coeffs(m, n, theta, policy):
    """Coefficients of F = sum_k chi_k C^k from the incomplete-beta series."""
    K = policy.max_terms
    i_count = int(round(n)) if _is_int(n) else policy.max_terms
    inv_beta = math.exp(-special.log_beta(m, n))
    chi = np.zeros(K)
    binom_n = _binom_row(n - 1.0, i_count)
    for i in range(i_count):
        mi = m + i
        j_count = int(round(mi)) + 1 if _is_int(mi) else K + policy.max_terms
        binom_mi = _binom_row(mi, j_count)
        w_i = binom_n[i] * inv_beta / mi * (-1.0) ** i
        for j_idx in range(j_count):
            if binom_mi[j_idx] == 0.0:
                continue
            theta_j = theta * j_idx
            kmax = min(K, int(round(theta_j)) + 1 if _is_int(theta_j) else K)
            row = _binom_row(theta_j, kmax)
            for k in range(kmax):
                chi[k] += w_i * (-1.0) ** (j_idx + k) * binom_mi[j_idx] * row[k]
    return chi


def _psi_cdf_coeffs(m, n, theta, policy):
    """Coefficients of C^r in the order-statistic-identity cdf expansion.

    Derivation relies on integer beta shapes; the identity expands
    I_z(m, n) as a binomial sum over m..m+n-1.
    """
    if not (_is_int(m) and _is_int(n)):
        raise ValueError("this cdf expansion requires integer m and n")
    mi, ni = int(round(m)), int(round(n))
    top = mi + ni - 1
    R = policy.max_terms
    coeffs = np.zeros(R)
    for p in range(mi, top + 1):
        c_top_p = math.comb(top, p)
        for q in range(p + 1):
            expo = theta * (top - p + q)
            r_count = min(R, int(round(expo)) + 1 if _is_int(expo) else R)
            row = _binom_row(expo, r_count)
            w = (-1.0) ** q * math.comb(p, q) * c_top_p
            for r_idx in range(r_count):
                coeffs[r_idx] += w * (-1.0) ** r_idx * row[r_idx]
    return coeffs


# --- building blocks at a point ---------------------------------------------


def _mo_parts(dist: BgmoDistribution, t: float):
    """(f_MO, S_MO, C_MO) of the plain tilt at a point, in linear scale."""
    alpha = dist.params.alpha
    mo = GmoParams(alpha=alpha, theta=1.0)
    log_s = gmo_log_sf(mo, dist.baseline, t)
    s = math.exp(log_s)
    f = math.exp(mo_log_pdf(alpha, dist.baseline, t))
    return f, s, 1.0 - s


def pdf_via_expansion(
    dist: BgmoDistribution,
    t: float,
    form: str = "survival_powers",
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> SeriesEval:
    """Density via its mixture expansion at a single point.

    ``survival_powers``: f_MO * sum_j delta_j S^(theta(j+n)-1)
    ``cdf_powers``:      f_MO * sum_l phi_l C^l
    """
    p = dist.params
    f_mo, s_mo, c_mo = _mo_parts(dist, t)
    if form == "survival_powers":
        delta, _ = delta_coeffs(p.m, p.n, p.theta, policy)
        exact = _is_int(p.m)
        log_s = math.log(s_mo) if s_mo > 0 else -math.inf

        def terms():
            for j, dj in enumerate(delta):
                expo = p.theta * (j + p.n) - 1.0
                yield dj * math.exp(expo * log_s) if log_s > -math.inf or expo == 0 else 0.0

        ev = _sum_with_policy(terms(), policy)
        return SeriesEval(f_mo * ev.value, exact or ev.converged, f_mo * ev.tail)
    if form == "cdf_powers":
        phi = _phi_coeffs(p.m, p.n, p.theta, policy)
        ev = _sum_with_policy((phi[l] * c_mo**l for l in range(len(phi))), policy)
        exact_outer = _is_int(p.m) and _is_int(p.theta * (p.m - 1 + p.n))
        return SeriesEval(f_mo * ev.value, exact_outer or ev.converged, f_mo * ev.tail)
    raise ValueError(f"unknown pdf expansion form {form!r}")


def cdf_via_expansion(
    dist: BgmoDistribution,
    t: float,
    form: str = "cdf_powers",
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> SeriesEval:
    """Distribution function via a power series in C = 1 - S.

    ``cdf_powers``: the incomplete-beta series re-expanded in C (real shapes
    allowed, truncated); ``order_stat_identity``: the finite binomial-sum form,
    valid only for integer m and n.
    """
    p = dist.params
    _, _, c_mo = _mo_parts(dist, t)
    if form == "cdf_powers":
        chi = _chi_coeffs(p.m, p.n, p.theta, policy)
    elif form == "order_stat_identity":
        chi = _psi_cdf_coeffs(p.m, p.n, p.theta, policy)
    else:
        raise ValueError(f"unknown cdf expansion form {form!r}")
    ev = _sum_with_policy((chi[k] * c_mo**k for k in range(len(chi))), policy)
    return SeriesEval(ev.value, ev.converged, ev.tail)


# --- order statistics --------------------------------------------------------


def _order_stat_poly(dist: BgmoDistribution, r: int, sample_n: int, policy):
    """Coefficients W_w of f_{r:n} = f_MO * sum_w W_w C^w (constants folded in)."""
    p = dist.params
    K = policy.max_terms
    phi = _phi_coeffs(p.m, p.n, p.theta, policy)[:K]
    chi = _chi_coeffs(p.m, p.n, p.theta, policy)[:K]
    const = math.factorial(sample_n) / (
        math.factorial(r - 1) * math.factorial(sample_n - r)
    )
    total = np.zeros(K)
    for j in range(sample_n - r + 1):
        power = j + r - 1
        chi_pow = np.zeros(K)
        chi_pow[0] = 1.0
        for _ in range(power):
            chi_pow = np.convolve(chi_pow, chi)[:K]
        combined = np.convolve(phi, chi_pow)[:K]
        total += (-1.0) ** j * math.comb(sample_n - r, j) * combined
    return const * total


def order_stat_pdf(
    dist: BgmoDistribution,
    r: int,
    sample_n: int,
    t: float,
    method: str = "direct",
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """Density of the r-th smallest of ``sample_n`` iid draws at a point.

    ``direct`` combines the family pdf/cdf through the classical order
    statistic formula; ``series`` evaluates the power-series form, with the
    needed powers of the cdf series built by repeated truncated Cauchy
    products.
    """
    if not 1 <= r <= sample_n:
        raise ValueError(f"need 1 <= r <= sample_n, got r={r}, sample_n={sample_n}")
    if method == "direct":
        f = dist.pdf(t)
        F = dist.cdf(t)
        const = math.factorial(sample_n) / (
            math.factorial(r - 1) * math.factorial(sample_n - r)
        )
        return float(const * f * F ** (r - 1) * (1.0 - F) ** (sample_n - r))
    if method == "series":
        f_mo, _, c_mo = _mo_parts(dist, t)
        w = _order_stat_poly(dist, r, sample_n, policy)
        powers = c_mo ** np.arange(len(w))
        return float(f_mo * np.dot(w, powers))
    raise ValueError(f"unknown order statistic method {method!r}")


# --- quadrature over the support ---------------------------------------------

_QUAD_OPTS = dict(limit=200, epsabs=1e-10, epsrel=1e-9)


def _support_quad(fn: Callable[[float], float], baseline: Baseline) -> float:
    """Adaptive integral of fn over the support.

    Substituting t = Q_G(v) maps the support onto (0, 1) and turns both tails
    into power-type endpoint behaviour, which the Gauss-Kronrod extrapolation
    handles uniformly well (heavy-tailed baselines included).
    """
    import warnings
    from scipy.integrate import IntegrationWarning

    def integrand(v: float) -> float:
        t = float(baseline.quantile(v))
        g = float(baseline.pdf(t))
        if not math.isfinite(t) or not math.isfinite(g) or g <= 0.0:
            return 0.0
        w = fn(t) / g
        return w if math.isfinite(w) else 0.0

    with np.errstate(all="ignore"), warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        value, _ = quad(
            integrand, 0.0, 1.0, points=(0.05, 0.25, 0.5, 0.75, 0.95), **_QUAD_OPTS
        )
    return value


def _check_tail_decay(weight, baseline, what: str):
    """Reject integrands whose far-tail contribution is not shrinking."""
    t1 = float(baseline.isf(1e-8))
    t2 = float(baseline.isf(1e-11))
    with np.errstate(all="ignore"):
        w1 = abs(weight(t1)) * t1
        w2 = abs(weight(t2)) * t2
    if not (np.isfinite(w1) and np.isfinite(w2)):
        raise DivergenceError(f"{what}: integrand not finite in the upper tail")
    if w2 > 0.9 * w1 and w2 > 1e-280:
        raise DivergenceError(
            f"{what}: upper-tail contribution is not decaying "
            f"({w1:.3g} at sf=1e-8 vs {w2:.3g} at sf=1e-11)"
        )


def pwm_mo(alpha: float, baseline: Baseline, p: int, q: float, r: float) -> float:
    """Probability weighted moment E[t^p F^q S^r] of the plain tilt.

    F and S are the tilted cdf/survival; the density weight is
    alpha*g/(1-(1-alpha)*sf_G)^2.  Raises ``DivergenceError`` when the
    integrand fails its tail-decay check (heavy-tailed baselines with p too
    large).
    """
    if p < 0 or q < 0 or r < 0:
        raise ValueError("pwm orders must be nonnegative")
    mo = GmoParams(alpha=alpha, theta=1.0)

    def integrand(t):
        log_s = gmo_log_sf(mo, baseline, t)
        s = math.exp(log_s)
        log_f = mo_log_pdf(alpha, baseline, t)
        out = log_f
        if q:
            c = 1.0 - s
            if c <= 0.0:
                return 0.0
            out += q * math.log(c)
        if r:
            out += r * log_s
        if p:
            out += p * math.log(t) if t > 0 else -math.inf
        return math.exp(out) if out > -700 else 0.0

    if p > 0:
        _check_tail_decay(integrand, baseline, f"pwm({p},{q},{r})")
    return _support_quad(integrand, baseline)


def moment_series(
    dist: BgmoDistribution, s: int, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """E[T^s] as the delta-weighted sum of tilted-survival PWMs."""
    if s < 1:
        raise ValueError("moment order must be a positive integer")
    p = dist.params
    delta, _ = delta_coeffs(p.m, p.n, p.theta, policy)
    total = 0.0
    for j, dj in enumerate(delta):
        if dj == 0.0:
            continue
        gamma_j = pwm_mo(p.alpha, dist.baseline, s, 0.0, p.theta * (j + p.n) - 1.0)
        term = dj * gamma_j
        total += term
        if abs(term) <= policy.tail_tol * max(abs(total), 1e-300) and j > 0:
            break
    return total


def moment_direct(dist: BgmoDistribution, s: float) -> float:
    """E[T^s] by direct quadrature of t^s against the density."""

    def integrand(t):
        lp = dist.log_pdf(t)
        out = lp + s * math.log(t) if t > 0 else -math.inf
        return math.exp(out) if out > -700 else 0.0

    _check_tail_decay(integrand, dist.baseline, f"moment({s})")
    return _support_quad(integrand, dist.baseline)


def order_stat_moment(
    dist: BgmoDistribution,
    r: int,
    sample_n: int,
    s: int,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """E[T_{r:n}^s] through the order-statistic series and tilted PWMs."""
    if not 1 <= r <= sample_n:
        raise ValueError(f"need 1 <= r <= sample_n, got r={r}, sample_n={sample_n}")
    w = _order_stat_poly(dist, r, sample_n, policy)
    alpha = dist.params.alpha
    total = 0.0
    for k, wk in enumerate(w):
        if wk == 0.0:
            continue
        term = wk * pwm_mo(alpha, dist.baseline, s, float(k), 0.0)
        total += term
        if k > 0 and abs(term) <= policy.tail_tol * max(abs(total), 1e-300):
            break
    return total


def mgf(dist: BgmoDistribution, s: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Moment generating function E[e^(sT)] by direct quadrature.

    Raises ``DivergenceError`` when s sits at or beyond the abscissa of
    convergence of the baseline tail.
    """

    def integrand(t):
        out = dist.log_pdf(t) + s * t
        return math.exp(out) if out > -700 else 0.0

    if s > 0:
        _check_tail_decay(integrand, dist.baseline, f"mgf({s})")
    return _support_quad(integrand, dist.baseline)


def mgf_series(
    dist: BgmoDistribution, s: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """E[e^(sT)] decomposed over exponentiated-tilt components.

    Each term is the mgf of a variable with survival S^(theta(j+n)), weighted
    by delta_j/(theta(j+n)); the weights sum to one for integer m.
    """
    p = dist.params
    delta, _ = delta_coeffs(p.m, p.n, p.theta, policy)
    mo = GmoParams(alpha=p.alpha, theta=1.0)
    total = 0.0
    for j, dj in enumerate(delta):
        if dj == 0.0:
            continue
        c = p.theta * (j + p.n)

        def integrand(t, c=c):
            log_s = gmo_log_sf(mo, dist.baseline, t)
            out = math.log(c) + (c - 1.0) * log_s + mo_log_pdf(p.alpha, dist.baseline, t) + s * t
            return math.exp(out) if out > -700 else 0.0

        if s > 0:
            _check_tail_decay(integrand, dist.baseline, f"mgf_series({s})")
        total += dj / c * _support_quad(integrand, dist.baseline)
    return total


def renyi_entropy(
    dist: BgmoDistribution,
    delta: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    method: str = "series",
) -> float:
    """Order-delta Renyi entropy (1-delta)^(-1) * log integral f^delta.

    ``series`` expands f^delta over powers of the tilted survival;
    ``direct`` integrates f^delta as-is.  The two agree wherever the
    expansion converges.
    """
    if delta <= 0 or delta == 1.0:
        raise ValueError("entropy order must be positive and different from 1")
    p = dist.params
    if method == "direct":

        def integrand(t):
            out = delta * dist.log_pdf(t)
            return math.exp(out) if out > -700 else 0.0

        total = _support_quad(integrand, dist.baseline)
        return math.log(total) / (1.0 - delta)
    if method != "series":
        raise ValueError(f"unknown entropy method {method!r}")

    expo_top = delta * (p.m - 1.0)
    count = int(round(expo_top)) + 1 if _is_int(expo_top) else policy.max_terms
    binom = _binom_row(expo_top, count)
    z_front = delta * (math.log(p.theta) - special.log_beta(p.m, p.n))
    mo = GmoParams(alpha=p.alpha, theta=1.0)
    total = 0.0
    for j in range(count):
        if binom[j] == 0.0:
            continue
        zj = math.exp(z_front) * binom[j] * (-1.0) ** j
        expo_s = p.theta * j + delta * (p.theta * p.n - 1.0)

        def integrand(t, expo_s=expo_s):
            log_s = gmo_log_sf(mo, dist.baseline, t)
            out = delta * mo_log_pdf(p.alpha, dist.baseline, t) + expo_s * log_s
            return math.exp(out) if out > -700 else 0.0

        term = zj * _support_quad(integrand, dist.baseline)
        total += term
        if j > 0 and abs(term) <= policy.tail_tol * max(abs(total), 1e-300):
            break
    if total <= 0:
        raise DivergenceError("entropy series produced a non-positive integral sum")
    return math.log(total) / (1.0 - delta)


# --- leading-order tail approximants ------------------------------------------


@dataclass(frozen=True)
class TailApproximant:
    """Leading-order forms of the density, tail probability and hazard.

    For the lower tail ``tail_prob`` approximates F(t); for the upper tail it
    approximates 1 - F(t).
    """

    tail: str
    pdf: Callable
    tail_prob: Callable
    hrf: Callable


def asymptote(dist: BgmoDistribution, end: str) -> TailApproximant:
    """Evaluable leading-order approximants at either end of the support.

    Lower tail (baseline cdf -> 0):
        f ~ theta^m * g * G^(m-1) / (B(m,n) * alpha^m)
        F ~ (theta*G/alpha)^m / (m * B(m,n))
        h ~ f
    Upper tail (t -> infinity):
        f ~ theta * alpha^(theta*n) * g * sf_G^(theta*n - 1) / B(m,n)
        1-F ~ (alpha*sf_G)^(theta*n) / (n * B(m,n))
        h ~ theta * n * g / sf_G
    """
    p = dist.params
    b = dist.baseline
    log_b = special.log_beta(p.m, p.n)
    if end == "lower":

        def f_approx(t):
            with np.errstate(all="ignore"):
                logG = np.log(b.cdf(t))
                out = (
                    p.m * math.log(p.theta)
                    + b.log_pdf(t)
                    + _zmul0(p.m - 1.0, logG)
                    - log_b
                    - p.m * math.log(p.alpha)
                )
            return np.exp(out)

        def F_approx(t):
            with np.errstate(all="ignore"):
                out = p.m * (math.log(p.theta) + np.log(b.cdf(t)) - math.log(p.alpha))
            return np.exp(out - math.log(p.m) - log_b)

        return TailApproximant("lower", f_approx, F_approx, f_approx)
    if end == "upper":
        tn = p.theta * p.n

        def f_approx(t):
            with np.errstate(all="ignore"):
                out = (
                    math.log(p.theta)
                    + tn * math.log(p.alpha)
                    + b.log_pdf(t)
                    + (tn - 1.0) * b.log_sf(t)
                    - log_b
                )
            return np.exp(out)

        def sf_approx(t):
            with np.errstate(all="ignore"):
                out = tn * (math.log(p.alpha) + b.log_sf(t))
            return np.exp(out - math.log(p.n) - log_b)

        def h_approx(t):
            with np.errstate(all="ignore"):
                return p.theta * p.n * np.exp(b.log_pdf(t) - b.log_sf(t))

        return TailApproximant("upper", f_approx, sf_approx, h_approx)
    raise ValueError(f"end must be 'lower' or 'upper', got {end!r}")


def _zmul0(c, v):
    return 0.0 if c == 0.0 else c * v
