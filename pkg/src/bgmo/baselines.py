"""Baseline lifetime distributions feeding the tilt and beta layers.

Each family exposes the density, distribution/survival functions (plus their
logarithms, which the upper layers need for deep-tail work), the quantile, and
the lower end of its support.  Families are immutable after construction and
all methods accept scalars or numpy arrays.

CLI-facing names use the conventional greek spellings (``lambda``, ``beta``,
...); see ``make_baseline``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Baseline",
    "Exponential",
    "Weibull",
    "Lomax",
    "Frechet",
    "Gompertz",
    "ZFunction",
    "ExtendedWeibull",
    "ModifiedWeibull",
    "ExponentiatedPareto",
    "make_baseline",
    "BASELINE_FAMILIES",
    "PARAM_ALIASES",
]


def _maybe_scalar(out, scalar_in: bool):
    return float(out) if scalar_in else out


def _require_positive(**params):
    for name, value in params.items():
        if not value > 0:
            raise ValueError(f"parameter {name} must be positive, got {value}")


class Baseline:
    """Common behaviour for the concrete families below.

    Subclasses implement ``_log_pdf``, ``_log_sf``, ``_cdf`` and ``_quantile``
    on arrays already clipped to the support; this class handles support
    masking and scalar passthrough.
    """

    tag = ""
    param_names: tuple[str, ...] = ()
    support_low = 0.0

    def params(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.param_names}

    def __repr__(self):
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{type(self).__name__}({inner})"

    # --- public API -----------------------------------------------------

    def pdf(self, t):
        scalar = np.isscalar(t)
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            out = np.where(t >= self.support_low, np.exp(self._log_pdf(np.maximum(t, self._eval_floor()))), 0.0)
        return _maybe_scalar(out, scalar)

    def log_pdf(self, t):
        scalar = np.isscalar(t)
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            out = np.where(t >= self.support_low, self._log_pdf(np.maximum(t, self._eval_floor())), -np.inf)
        return _maybe_scalar(out, scalar)

    def cdf(self, t):
        scalar = np.isscalar(t)
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            out = np.where(t >= self.support_low, self._cdf(np.maximum(t, self._eval_floor())), 0.0)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), scalar)

    def sf(self, t):
        scalar = np.isscalar(t)
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            out = np.where(t >= self.support_low, np.exp(self._log_sf(np.maximum(t, self._eval_floor()))), 1.0)
        return _maybe_scalar(np.clip(out, 0.0, 1.0), scalar)

    def log_sf(self, t):
        scalar = np.isscalar(t)
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            out = np.where(t >= self.support_low, self._log_sf(np.maximum(t, self._eval_floor())), 0.0)
        return _maybe_scalar(out, scalar)

    def log_cdf(self, t):
        scalar = np.isscalar(t)
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            out = np.where(t >= self.support_low, self._log_cdf(np.maximum(t, self._eval_floor())), -np.inf)
        return _maybe_scalar(out, scalar)

    def _log_cdf(self, t):
        with np.errstate(all="ignore"):
            return np.log(self._cdf(t))

    def hrf(self, t):
        scalar = np.isscalar(t)
        t = np.asarray(t, dtype=float)
        with np.errstate(all="ignore"):
            out = np.exp(self.log_pdf(t) - self.log_sf(t))
        return _maybe_scalar(out, scalar)

    def quantile(self, u):
        scalar = np.isscalar(u)
        u = np.asarray(u, dtype=float)
        if np.any((u <= 0.0) | (u >= 1.0)):
            raise ValueError("quantile requires u in (0, 1)")
        return _maybe_scalar(self._quantile(u), scalar)

    def isf(self, q):
        """Inverse survival: the t with sf(t) = q."""
        scalar = np.isscalar(q)
        q = np.asarray(q, dtype=float)
        out = self._isf(q)
        return _maybe_scalar(out, scalar)

    def _isf(self, q):
        return self._quantile(1.0 - q)

    def _eval_floor(self):
        # evaluation points are nudged just above the support edge so that
        # formulas with t**negative stay finite; masks zero them out anyway
        return self.support_low + 1e-300 if self.support_low > 0 else 1e-300


@dataclass(frozen=True, repr=False)
class Exponential(Baseline):
    lam: float

    tag = "exponential"
    param_names = ("lam",)

    def __post_init__(self):
        _require_positive(lam=self.lam)

    def _log_pdf(self, t):
        return math.log(self.lam) - self.lam * t

    def _log_sf(self, t):
        return -self.lam * t

    def _cdf(self, t):
        return -np.expm1(-self.lam * t)

    def _quantile(self, u):
        return -np.log1p(-u) / self.lam

    def _isf(self, q):
        return -np.log(q) / self.lam

    def cdf_partials(self, t):
        """dG/d(param) for the analytic score."""
        return {"lam": t * np.exp(-self.lam * t)}

    def log_pdf_partials(self, t):
        """d(log g)/d(param) for the analytic score."""
        return {"lam": 1.0 / self.lam - t}


@dataclass(frozen=True, repr=False)
class Weibull(Baseline):
    lam: float
    beta: float

    tag = "weibull"
    param_names = ("lam", "beta")

    def __post_init__(self):
        _require_positive(lam=self.lam, beta=self.beta)

    def _log_pdf(self, t):
        return (
            math.log(self.lam)
            + math.log(self.beta)
            + (self.beta - 1.0) * np.log(t)
            - self.lam * t**self.beta
        )

    def _log_sf(self, t):
        return -self.lam * t**self.beta

    def _cdf(self, t):
        return -np.expm1(-self.lam * t**self.beta)

    def _quantile(self, u):
        return (-np.log1p(-u) / self.lam) ** (1.0 / self.beta)

    def _isf(self, q):
        return (-np.log(q) / self.lam) ** (1.0 / self.beta)

    def cdf_partials(self, t):
        tb = t**self.beta
        sf = np.exp(-self.lam * tb)
        return {"lam": tb * sf, "beta": self.lam * tb * np.log(t) * sf}

    def log_pdf_partials(self, t):
        tb = t**self.beta
        lt = np.log(t)
        return {
            "lam": 1.0 / self.lam - tb,
            "beta": 1.0 / self.beta + lt - self.lam * tb * lt,
        }


@dataclass(frozen=True, repr=False)
class Lomax(Baseline):
    beta: float
    delta: float

    tag = "lomax"
    param_names = ("beta", "delta")

    def __post_init__(self):
        _require_positive(beta=self.beta, delta=self.delta)

    def _log_pdf(self, t):
        return (
            math.log(self.beta)
            - math.log(self.delta)
            - (self.beta + 1.0) * np.log1p(t / self.delta)
        )

    def _log_sf(self, t):
        return -self.beta * np.log1p(t / self.delta)

    def _cdf(self, t):
        return -np.expm1(self._log_sf(t))

    def _quantile(self, u):
        return self.delta * np.expm1(-np.log1p(-u) / self.beta)

    def _isf(self, q):
        return self.delta * np.expm1(-np.log(q) / self.beta)


@dataclass(frozen=True, repr=False)
class Frechet(Baseline):
    lam: float
    delta: float

    tag = "frechet"
    param_names = ("lam", "delta")

    def __post_init__(self):
        _require_positive(lam=self.lam, delta=self.delta)

    def _log_pdf(self, t):
        z = (self.delta / t) ** self.lam
        return (
            math.log(self.lam)
            + self.lam * math.log(self.delta)
            - (self.lam + 1.0) * np.log(t)
            - z
        )

    def _cdf(self, t):
        return np.exp(-((self.delta / t) ** self.lam))

    def _log_cdf(self, t):
        return -((self.delta / t) ** self.lam)

    def _log_sf(self, t):
        # for tiny z, log(1 - e^-z) ~ log z; the log form survives the
        # underflow of z itself at huge t
        log_z = self.lam * (math.log(self.delta) - np.log(t))
        z = np.exp(log_z)
        with np.errstate(all="ignore"):
            return np.where(z < 1e-12, log_z, np.log(-np.expm1(-np.maximum(z, 1e-300))))

    def _quantile(self, u):
        return self.delta * (-np.log(u)) ** (-1.0 / self.lam)

    def _isf(self, q):
        return self.delta * (-np.log1p(-q)) ** (-1.0 / self.lam)


@dataclass(frozen=True, repr=False)
class Gompertz(Baseline):
    beta: float
    lam: float

    tag = "gompertz"
    param_names = ("beta", "lam")

    def __post_init__(self):
        _require_positive(beta=self.beta, lam=self.lam)

    def _cum_hazard(self, t):
        return (self.beta / self.lam) * np.expm1(self.lam * t)

    def _log_pdf(self, t):
        return math.log(self.beta) + self.lam * t - self._cum_hazard(t)

    def _log_sf(self, t):
        return -self._cum_hazard(t)

    def _cdf(self, t):
        return -np.expm1(-self._cum_hazard(t))

    def _quantile(self, u):
        return np.log1p(-(self.lam / self.beta) * np.log1p(-u)) / self.lam

    def _isf(self, q):
        return np.log1p(-(self.lam / self.beta) * np.log(q)) / self.lam


@dataclass(frozen=True)
class ZFunction:
    """Monotone cumulative-hazard shape Z(t) for the extended Weibull family.

    Supported kinds: ``linear`` (Z = t), ``square`` (Z = t^2), ``log_ratio``
    (Z = ln(t/k), support t >= k) and ``gompertz_link``
    (Z = (e^(beta t) - 1)/beta).
    """

    kind: str
    k: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if self.kind not in ("linear", "square", "log_ratio", "gompertz_link"):
            raise ValueError(f"unknown Z-function kind {self.kind!r}")
        _require_positive(k=self.k, beta=self.beta)

    @property
    def support_low(self):
        return self.k if self.kind == "log_ratio" else 0.0

    def value(self, t):
        if self.kind == "linear":
            return t
        if self.kind == "square":
            return t * t
        if self.kind == "log_ratio":
            return np.log(t / self.k)
        return np.expm1(self.beta * t) / self.beta

    def deriv(self, t):
        if self.kind == "linear":
            return np.ones_like(np.asarray(t, dtype=float))
        if self.kind == "square":
            return 2.0 * t
        if self.kind == "log_ratio":
            return 1.0 / t
        return np.exp(self.beta * t)

    def inverse(self, y):
        if self.kind == "linear":
            return y
        if self.kind == "square":
            return np.sqrt(y)
        if self.kind == "log_ratio":
            return self.k * np.exp(y)
        return np.log1p(self.beta * y) / self.beta


@dataclass(frozen=True, repr=False)
class ExtendedWeibull(Baseline):
    """Survival exp(-delta Z(t)) for a pluggable increasing Z."""

    delta: float
    z: ZFunction = ZFunction("linear")

    tag = "extended_weibull"
    param_names = ("delta",)

    def __post_init__(self):
        _require_positive(delta=self.delta)

    @property
    def support_low(self):
        return self.z.support_low

    def params(self):
        out = {"delta": self.delta, "z": self.z.kind}
        if self.z.kind == "log_ratio":
            out["k"] = self.z.k
        if self.z.kind == "gompertz_link":
            out["beta"] = self.z.beta
        return out

    def _log_pdf(self, t):
        return math.log(self.delta) - self.delta * self.z.value(t) + np.log(self.z.deriv(t))

    def _log_sf(self, t):
        return -self.delta * self.z.value(t)

    def _cdf(self, t):
        return -np.expm1(-self.delta * self.z.value(t))

    def _quantile(self, u):
        return self.z.inverse(-np.log1p(-u) / self.delta)

    def _isf(self, q):
        return self.z.inverse(-np.log(q) / self.delta)


@dataclass(frozen=True, repr=False)
class ModifiedWeibull(Baseline):
    """Cumulative hazard sigma*t + beta*t^gamma (sigma, beta >= 0, not both 0)."""

    sigma: float
    beta: float
    gamma: float

    tag = "modified_weibull"
    param_names = ("sigma", "beta", "gamma")

    def __post_init__(self):
        if self.sigma < 0 or self.beta < 0 or self.sigma + self.beta <= 0:
            raise ValueError("need sigma, beta >= 0 with sigma + beta > 0")
        _require_positive(gamma=self.gamma)

    def _cum_hazard(self, t):
        return self.sigma * t + self.beta * t**self.gamma

    def _log_pdf(self, t):
        rate = self.sigma + self.beta * self.gamma * t ** (self.gamma - 1.0)
        return np.log(rate) - self._cum_hazard(t)

    def _log_sf(self, t):
        return -self._cum_hazard(t)

    def _cdf(self, t):
        return -np.expm1(-self._cum_hazard(t))

    def _quantile(self, u):
        # no closed form: bisect the increasing cumulative hazard
        target = np.atleast_1d(-np.log1p(-u))
        hi = np.ones_like(target)
        for _ in range(200):
            need = self._cum_hazard(hi) < target
            if not need.any():
                break
            hi = np.where(need, hi * 2.0, hi)
        lo = np.zeros_like(target)
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            below = self._cum_hazard(mid) < target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        out = 0.5 * (lo + hi)
        return out.reshape(np.shape(u)) if np.shape(u) else out[0]


@dataclass(frozen=True, repr=False)
class ExponentiatedPareto(Baseline):
    """cdf [1 - (theta_p/t)^k]^gamma on t > theta_p."""

    theta_p: float
    k: float
    gamma: float

    tag = "exponentiated_pareto"
    param_names = ("theta_p", "k", "gamma")

    def __post_init__(self):
        _require_positive(theta_p=self.theta_p, k=self.k, gamma=self.gamma)

    @property
    def support_low(self):
        return self.theta_p

    def _log_base(self, t):
        # log[1 - (theta_p/t)^k]
        return np.log1p(-((self.theta_p / t) ** self.k))

    def _log_pdf(self, t):
        out = (
            math.log(self.gamma)
            + math.log(self.k)
            + self.k * math.log(self.theta_p)
            - (self.k + 1.0) * np.log(t)
        )
        if self.gamma != 1.0:
            out = out + (self.gamma - 1.0) * self._log_base(t)
        return out

    def _cdf(self, t):
        return np.exp(self.gamma * self._log_base(t))

    def _log_cdf(self, t):
        return self.gamma * self._log_base(t)

    def _log_sf(self, t):
        # sf ~ gamma * (theta_p/t)^k far out; the log form survives underflow
        log_w = self.k * (math.log(self.theta_p) - np.log(t))
        inner = self.gamma * np.log1p(-np.exp(log_w))
        with np.errstate(all="ignore"):
            return np.where(
                np.exp(log_w) < 1e-12,
                math.log(self.gamma) + log_w,
                np.log(-np.expm1(np.minimum(inner, -1e-300))),
            )

    def _quantile(self, u):
        base = -np.expm1(np.log(u) / self.gamma)  # 1 - u^(1/gamma)
        return self.theta_p * base ** (-1.0 / self.k)

    def _isf(self, q):
        base = -np.expm1(np.log1p(-q) / self.gamma)
        return self.theta_p * base ** (-1.0 / self.k)


BASELINE_FAMILIES = {
    cls.tag: cls
    for cls in (
        Exponential,
        Weibull,
        Lomax,
        Frechet,
        Gompertz,
        ExtendedWeibull,
        ModifiedWeibull,
        ExponentiatedPareto,
    )
}

# CLI spelling -> constructor keyword, per family
PARAM_ALIASES = {"lambda": "lam"}
_Z_KINDS = ("linear", "square", "log_ratio", "gompertz_link")


def make_baseline(tag: str, **params) -> Baseline:
    """Construct a baseline from its family tag and named parameters.

    Accepts the CLI spellings (``lambda=...``) as well as the Python attribute
    names.  For ``extended_weibull`` pass ``z=<kind>`` plus any variant
    parameter (``k`` for log_ratio, ``beta`` for gompertz_link).
    """
    tag = tag.lower()
    if tag not in BASELINE_FAMILIES:
        known = ", ".join(sorted(BASELINE_FAMILIES))
        raise ValueError(f"unknown baseline family {tag!r} (known: {known})")
    cls = BASELINE_FAMILIES[tag]
    kwargs = {}
    for name, value in params.items():
        kwargs[PARAM_ALIASES.get(name, name)] = value
    if cls is ExtendedWeibull:
        kind = kwargs.pop("z", "linear")
        if isinstance(kind, ZFunction):
            z = kind
        else:
            if kind not in _Z_KINDS:
                raise ValueError(f"unknown Z-function kind {kind!r} (known: {_Z_KINDS})")
            zargs = {}
            if "k" in kwargs:
                zargs["k"] = float(kwargs.pop("k"))
            if "beta" in kwargs:
                zargs["beta"] = float(kwargs.pop("beta"))
            z = ZFunction(kind, **zargs)
        return ExtendedWeibull(delta=float(kwargs.pop("delta")), z=z, **kwargs)
    try:
        return cls(**{k: float(v) for k, v in kwargs.items()})
    except TypeError as exc:
        raise ValueError(f"bad parameters for {tag}: {exc}") from None
