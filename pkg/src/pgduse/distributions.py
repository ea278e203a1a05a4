"""Distribution surface for the five DUS-family lifetime models.

All models are built from the exponential baseline F(x) = 1 - exp(-rate*x):

======  ==========================================================  ======
model   cdf G(x)                                                    params
======  ==========================================================  ======
PGDUSE  ((exp(1 - exp(-lam*x)) - 1) / (e - 1))**theta               lam, theta
GDUSE   (exp((1 - exp(-beta*x))**alpha) - 1) / (e - 1)              alpha, beta
DUSE    PGDUSE with theta = 1                                       a
KME     (e / (e - 1)) * (1 - exp(-(1 - exp(-theta*x))))             theta
ED      1 - exp(-theta*x)                                           theta
======  ==========================================================  ======

Every function here is pure and accepts scalar or array-like evaluation
points, returning a ``float`` for scalar input and an ``ndarray`` otherwise.
Values of x below 0 follow the plotting-friendly convention cdf = 0,
pdf = 0, survival = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from .errors import (
    ArityMismatch,
    DomainError,
    EmptyDataset,
    NonPositiveObservation,
    NonPositiveParameter,
)

__all__ = [
    "ModelKind",
    "PgduseParams",
    "GduseParams",
    "ScalarParam",
    "ParamVector",
    "Dataset",
    "validate_params",
    "cdf",
    "pdf",
    "log_pdf",
    "survival",
    "hazard",
    "quantile",
    "median",
    "sample",
]

_E = math.e
_EM1 = math.e - 1.0
_LOG_EM1 = math.log(math.e - 1.0)

ArrayLike = Union[float, Sequence[float], np.ndarray]


class ModelKind(Enum):
    """Tags for the five candidate lifetime models."""

    PGDUSE = "pgduse"
    GDUSE = "gduse"
    DUSE = "duse"
    KME = "kme"
    ED = "ed"

    @property
    def arity(self) -> int:
        return 2 if self in (ModelKind.PGDUSE, ModelKind.GDUSE) else 1

    @property
    def param_names(self) -> tuple[str, ...]:
        return _PARAM_NAMES[self]

    @classmethod
    def parse(cls, name: str) -> "ModelKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(k.value for k in cls)
            raise DomainError(f"unknown model {name!r}; expected one of: {valid}") from None


_PARAM_NAMES = {
    ModelKind.PGDUSE: ("lambda", "theta"),
    ModelKind.GDUSE: ("alpha", "beta"),
    ModelKind.DUSE: ("a",),
    ModelKind.KME: ("theta",),
    ModelKind.ED: ("theta",),
}


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise NonPositiveParameter(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PgduseParams:
    """Rate lam (1/time) and shape theta (dimensionless), both > 0."""

    lam: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "lam", _require_positive("lambda", self.lam))
        object.__setattr__(self, "theta", _require_positive("theta", self.theta))

    def as_tuple(self) -> tuple[float, ...]:
        return (self.lam, self.theta)


@dataclass(frozen=True)
class GduseParams:
    """Shape alpha (dimensionless) and rate beta (1/time), both > 0."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _require_positive("alpha", self.alpha))
        object.__setattr__(self, "beta", _require_positive("beta", self.beta))

    def as_tuple(self) -> tuple[float, ...]:
        return (self.alpha, self.beta)


@dataclass(frozen=True)
class ScalarParam:
    """Single positive rate parameter (1/time) for DUSE, KME, and ED."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _require_positive("parameter", self.value))

    def as_tuple(self) -> tuple[float, ...]:
        return (self.value,)


ParamVector = Union[PgduseParams, GduseParams, ScalarParam]

_PARAM_CLASS = {
    ModelKind.PGDUSE: PgduseParams,
    ModelKind.GDUSE: GduseParams,
    ModelKind.DUSE: ScalarParam,
    ModelKind.KME: ScalarParam,
    ModelKind.ED: ScalarParam,
}


def validate_params(kind: ModelKind, raw: Sequence[float]) -> ParamVector:
    """Build a typed, positivity-checked parameter vector for ``kind``.

    Raises
    ------
    ArityMismatch
        If ``raw`` does not have exactly ``kind.arity`` entries.
    NonPositiveParameter
        If any entry is <= 0 or non-finite.
    """
    raw = tuple(float(v) for v in raw)
    if len(raw) != kind.arity:
        raise ArityMismatch(
            f"{kind.value} takes {kind.arity} parameter(s), got {len(raw)}"
        )
    return _PARAM_CLASS[kind](*raw)


def _coerce(kind: ModelKind, p) -> tuple[float, ...]:
    """Accept either a typed parameter vector or a raw sequence."""
    if isinstance(p, (PgduseParams, GduseParams, ScalarParam)):
        expected = _PARAM_CLASS[kind]
        if not isinstance(p, expected):
            raise ArityMismatch(
                f"{kind.value} expects {expected.__name__}, got {type(p).__name__}"
            )
        return p.as_tuple()
    return validate_params(kind, p).as_tuple()


class Dataset:
    """Validated sample of strictly positive, finite failure times.

    Attributes
    ----------
    observations : ndarray
        The sample in input order (read-only view).
    sorted_values : ndarray
        Nondecreasing copy of the sample.
    n : int
        Sample size.
    total : float
        Arithmetic sum of the sample.
    """

    __slots__ = ("observations", "sorted_values", "n", "total")

    def __init__(self, observations: ArrayLike):
        obs = np.atleast_1d(np.asarray(observations, dtype=float)).copy()
        if obs.ndim != 1:
            raise NonPositiveObservation("observations must form a one-dimensional sample")
        if obs.size == 0:
            raise EmptyDataset("dataset contains no observations")
        if not np.all(np.isfinite(obs)) or np.any(obs <= 0.0):
            bad = obs[~(np.isfinite(obs) & (obs > 0.0))][0]
            raise NonPositiveObservation(f"observations must be positive and finite, got {bad!r}")
        obs.setflags(write=False)
        srt = np.sort(obs)
        srt.setflags(write=False)
        self.observations = obs
        self.sorted_values = srt
        self.n = int(obs.size)
        self.total = float(obs.sum())

    @property
    def mean(self) -> float:
        return self.total / self.n

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return (
            f"Dataset(n={self.n}, min={self.sorted_values[0]:g}, "
            f"max={self.sorted_values[-1]:g}, total={self.total:g})"
        )


# ----------------------------------------------------------------------
# stable building blocks
# ----------------------------------------------------------------------

def _pg_log_ratio(lam: float, x: np.ndarray) -> np.ndarray:
    """log((exp(1 - exp(-lam*x)) - 1) / (e - 1)), accurate at both tails.

    Below t = 1 - exp(-lam*x) = 1/2 the direct log(expm1(t)) keeps the
    x -> 0 behaviour exact; above it the ratio is rewritten as
    1 + e*expm1(-exp(-lam*x))/(e-1) so the x -> inf end never cancels.
    Returns -inf at x = 0.
    """
    lx = lam * x
    t = -np.expm1(-lx)
    out = np.empty_like(t)
    small = t < 0.5
    with np.errstate(divide="ignore"):
        out[small] = np.log(np.expm1(t[small])) - _LOG_EM1
    big = ~small
    z = _E * np.expm1(-np.exp(-lx[big])) / _EM1
    # float rounding can land a hair below -1 at x = 0
    out[big] = np.log1p(np.maximum(z, -1.0))
    return out


def _pg_log_em1(lam: float, x: np.ndarray) -> np.ndarray:
    """log(exp(1 - exp(-lam*x)) - 1); the repeated log-likelihood term."""
    return _pg_log_ratio(lam, x) + _LOG_EM1


def _split_input(x: ArrayLike) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return np.atleast_1d(arr.astype(float, copy=True)), arr.ndim == 0


def _wrap_output(values: np.ndarray, scalar: bool):
    return float(values[0]) if scalar else values


# ----------------------------------------------------------------------
# per-model kernels (x restricted to >= 0 by the dispatchers)
# ----------------------------------------------------------------------

def _cdf_kernel(kind: ModelKind, params: tuple[float, ...], x: np.ndarray) -> np.ndarray:
    if kind is ModelKind.PGDUSE or kind is ModelKind.DUSE:
        lam, theta = params if kind is ModelKind.PGDUSE else (params[0], 1.0)
        with np.errstate(over="ignore"):
            return np.exp(theta * _pg_log_ratio(lam, x))
    if kind is ModelKind.GDUSE:
        alpha, beta = params
        return np.exp(_gduse_log_ratio(alpha, beta, x))
    if kind is ModelKind.KME:
        (theta,) = params
        # 1 - G = expm1(exp(-theta x))/(e-1); the complement below stays
        # accurate for small x where G itself is tiny
        fm = np.expm1(-theta * x)  # = exp(-theta x) - 1 = -F
        return -_E * np.expm1(fm) / _EM1
    (theta,) = params  # ED
    return -np.expm1(-theta * x)


def _gduse_log_ratio(alpha: float, beta: float, x: np.ndarray) -> np.ndarray:
    """log G for GDUSE, branched at F**alpha = 1/2 like _pg_log_ratio."""
    with np.errstate(divide="ignore"):
        log_fa = alpha * np.log(-np.expm1(-beta * x))  # log(F**alpha)
    out = np.empty_like(log_fa)
    small = log_fa < -math.log(2.0)
    with np.errstate(divide="ignore"):
        out[small] = np.log(np.expm1(np.exp(log_fa[small]))) - _LOG_EM1
    big = ~small
    z = _E * np.expm1(np.expm1(log_fa[big])) / _EM1
    out[big] = np.log1p(np.maximum(z, -1.0))
    return out


def _survival_kernel(kind: ModelKind, params: tuple[float, ...], x: np.ndarray) -> np.ndarray:
    if kind is ModelKind.PGDUSE or kind is ModelKind.DUSE:
        lam, theta = params if kind is ModelKind.PGDUSE else (params[0], 1.0)
        return -np.expm1(theta * _pg_log_ratio(lam, x))
    if kind is ModelKind.GDUSE:
        alpha, beta = params
        return -np.expm1(_gduse_log_ratio(alpha, beta, x))
    if kind is ModelKind.KME:
        (theta,) = params
        return np.expm1(np.exp(-theta * x)) / _EM1
    (theta,) = params  # ED
    return np.exp(-theta * x)


def _log_pdf_kernel(kind: ModelKind, params: tuple[float, ...], x: np.ndarray) -> np.ndarray:
    if kind is ModelKind.PGDUSE or kind is ModelKind.DUSE:
        lam, theta = params if kind is ModelKind.PGDUSE else (params[0], 1.0)
        d = np.exp(-lam * x)
        out = math.log(theta) + math.log(lam) - theta * _LOG_EM1 + 1.0 - lam * x - d
        if theta != 1.0:
            # (theta-1)*(-inf) at x=0 encodes the 0 / +inf density limit
            out = out + (theta - 1.0) * _pg_log_em1(lam, x)
        return out
    if kind is ModelKind.GDUSE:
        alpha, beta = params
        with np.errstate(divide="ignore"):
            log_f = np.log(-np.expm1(-beta * x))
        fa = np.exp(alpha * log_f)
        out = math.log(alpha) + math.log(beta) - _LOG_EM1 - beta * x + fa
        if alpha != 1.0:
            out = out + (alpha - 1.0) * log_f
        return out
    if kind is ModelKind.KME:
        (theta,) = params
        return 1.0 - _LOG_EM1 + math.log(theta) - theta * x + np.expm1(-theta * x)
    (theta,) = params  # ED
    return math.log(theta) - theta * x


def _quantile_kernel(kind: ModelKind, params: tuple[float, ...], q: np.ndarray) -> np.ndarray:
    # q within an ulp of 1 saturates to inf through log1p(-1); that is the
    # correct limit, so the divide warning is noise
    if kind is ModelKind.PGDUSE or kind is ModelKind.DUSE:
        lam, theta = params if kind is ModelKind.PGDUSE else (params[0], 1.0)
        w = np.log1p(np.power(q, 1.0 / theta) * _EM1)
        return -np.log1p(-w) / lam
    if kind is ModelKind.GDUSE:
        alpha, beta = params
        w = np.log1p(q * _EM1)
        f = np.power(w, 1.0 / alpha)
        return -np.log1p(-f) / beta
    if kind is ModelKind.KME:
        (theta,) = params
        f = -np.log1p(-q * _EM1 / _E)
        return -np.log1p(-f) / theta
    (theta,) = params  # ED
    return -np.log1p(-q) / theta


# ----------------------------------------------------------------------
# public surface
# ----------------------------------------------------------------------

def cdf(kind: ModelKind, p, x: ArrayLike):
    """Cumulative distribution function of ``kind`` at ``x``.

    Parameters
    ----------
    kind : ModelKind
    p : ParamVector or sequence of float
        Typed parameters or raw values (validated on the fly).
    x : float or array-like
        Evaluation points; values below 0 return 0 by convention.
    """
    params = _coerce(kind, p)
    arr, scalar = _split_input(x)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        out[pos] = _cdf_kernel(kind, params, arr[pos])
    out[np.isnan(arr)] = np.nan
    return _wrap_output(np.clip(out, 0.0, 1.0), scalar)


def pdf(kind: ModelKind, p, x: ArrayLike):
    """Probability density of ``kind`` at ``x``.

    Defined as ``exp(log_pdf(...))`` so the two agree to the last bit.
    For shape parameters below 1 the density diverges at x = 0; the
    integrable singularity is reported as ``inf`` rather than an error.
    """
    params = _coerce(kind, p)
    arr, scalar = _split_input(x)
    out = np.zeros_like(arr)
    nonneg = arr >= 0.0
    if np.any(nonneg):
        with np.errstate(over="ignore"):
            out[nonneg] = np.exp(_log_pdf_kernel(kind, params, arr[nonneg]))
    out[np.isnan(arr)] = np.nan
    return _wrap_output(out, scalar)


def log_pdf(kind: ModelKind, p, x: ArrayLike):
    """Log-density of ``kind`` at ``x``, computed without overflow.

    Returns -inf wherever the density is zero (including x < 0).
    """
    params = _coerce(kind, p)
    arr, scalar = _split_input(x)
    out = np.full_like(arr, -np.inf)
    nonneg = arr >= 0.0
    if np.any(nonneg):
        out[nonneg] = _log_pdf_kernel(kind, params, arr[nonneg])
    out[np.isnan(arr)] = np.nan
    return _wrap_output(out, scalar)


def survival(kind: ModelKind, p, x: ArrayLike):
    """Survival function 1 - cdf, kept accurate where the cdf is near 1."""
    params = _coerce(kind, p)
    arr, scalar = _split_input(x)
    out = np.ones_like(arr)
    pos = arr > 0.0
    if np.any(pos):
        out[pos] = _survival_kernel(kind, params, arr[pos])
    out[np.isnan(arr)] = np.nan
    return _wrap_output(np.clip(out, 0.0, 1.0), scalar)


def hazard(kind: ModelKind, p, x: ArrayLike):
    """Failure-rate function pdf / survival.

    Where the survival function underflows to exactly 0 the hazard is
    reported as ``inf``.
    """
    params = _coerce(kind, p)
    arr, scalar = _split_input(x)
    g = np.atleast_1d(np.asarray(pdf(kind, params, arr)))
    s = np.atleast_1d(np.asarray(survival(kind, params, arr)))
    out = np.empty_like(g)
    dead = s == 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out[~dead] = g[~dead] / s[~dead]
    out[dead] = np.inf
    out[np.isnan(arr)] = np.nan
    return _wrap_output(out, scalar)


def quantile(kind: ModelKind, p, q: ArrayLike):
    """Quantile function; closed form for every model.

    ``q`` must lie in [0, 1); the essential supremum at q = 1 is infinite
    and raises :class:`DomainError`, as do negative probabilities.
    """
    params = _coerce(kind, p)
    arr, scalar = _split_input(q)
    valid = np.isnan(arr) | ((arr >= 0.0) & (arr < 1.0))
    if not np.all(valid):
        bad = float(arr[~valid][0])
        raise DomainError(f"quantile requires 0 <= q < 1, got {bad!r}")
    with np.errstate(divide="ignore"):
        out = _quantile_kernel(kind, params, arr)
    out[arr == 0.0] = 0.0
    return _wrap_output(out, scalar)


def median(p: PgduseParams) -> float:
    """Median of the two-parameter PGDUSE model; quantile at q = 0.5."""
    return quantile(ModelKind.PGDUSE, p, 0.5)


def sample(kind: ModelKind, p, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` variates by inverse-transform sampling.

    Deterministic for a fixed ``seed``; every returned value is strictly
    positive.  The closed-form quantile makes rejection schemes unnecessary.
    """
    params = _coerce(kind, p)
    if n < 0:
        raise DomainError(f"sample size must be >= 0, got {n}")
    rng = np.random.default_rng(seed)
    u = rng.random(int(n))
    # open the lower endpoint so the transform stays positive
    while np.any(u == 0.0):
        zeros = u == 0.0
        u[zeros] = rng.random(int(zeros.sum()))
    return np.asarray(quantile(kind, params, u))
