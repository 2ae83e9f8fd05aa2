"""Discrete heavy-tailed distribution fitting and model comparison.

Four model families are fit to integer degree data by maximizing the
tail-conditioned discrete log-likelihood on k >= x_min:

    power_law            p(k) ~ k^-gamma
    truncated_power_law  p(k) ~ k^-gamma * exp(-lambda*k)
    lognormal            p(k) ~ exp(-(ln k - mu)^2 / (2 sigma^2)) / k
    exponential          p(k) ~ exp(-lambda*k)

Normalization constants are infinite discrete sums evaluated to an absolute
tolerance of ~1e-12: Hurwitz zeta for the pure power law, a closed-form
geometric sum for the exponential, chunked partial sums with a geometric
remainder bound (Lerch transcendent for very small lambda) for the truncated
family, and partial sums plus a midpoint-integral remainder for the
lognormal. When x_min is not supplied it is chosen by scanning the observed
degrees up to the 90th percentile and keeping the candidate whose fitted
model is closest to the empirical tail in Kolmogorov-Smirnov distance
(smallest x_min wins ties).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import optimize, special

from .errors import (
    DegenerateTailError,
    FitConvergenceError,
    FitError,
    InsufficientTailError,
)

FAMILIES = ("power_law", "truncated_power_law", "lognormal", "exponential")

# one- and two-parameter MLE on fewer points than this is not stable enough
# to report; the x_min scan skips such candidates
MIN_TAIL_POINTS = 5

_SUM_RTOL = 1e-12
_LERCH_LAMBDA = 1e-5  # below this, direct summation is slower than mpmath
_GAMMA_BOUNDS = (1.0001, 20.0)
_LAMBDA_BOUNDS = (0.0, 10.0)
_EXP_LAMBDA_BOUNDS = (1e-9, 20.0)
_SIGMA_BOUNDS = (1e-3, 10.0)
# both tolerances must hold for Nelder-Mead to stop; xatol carries the
# parameter precision, fatol merely needs to sit above float noise in the
# objective (|loglik| can reach ~1e6, with ~1e-15 relative evaluation noise)
_NM_OPTIONS = {"xatol": 1e-8, "fatol": 1e-6, "maxiter": 4000, "maxfev": 8000}
_SQRT2 = math.sqrt(2.0)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class TailFit:
    """A fitted tail model; parameters not belonging to the family are None."""

    family: str
    x_min: int
    n_tail: int
    log_likelihood: float
    ks_distance: float
    gamma: float | None = None
    gamma_stderr: float | None = None
    lam: float | None = None
    mu: float | None = None
    sigma: float | None = None


@dataclass(frozen=True)
class FitComparison:
    family_a: str
    family_b: str
    normalized_lr: float  # positive favors family_a
    p_value: float
    preferred: str  # family name or "inconclusive"


# ----------------------------------------------------------------- tail sums


def _powerlaw_tail_sum(gamma: float, a: int) -> float:
    return float(special.zeta(gamma, a))


def _exponential_tail_sum(lam: float, a: int) -> float:
    # sum_{k=a}^inf e^-(lam k) = e^-(lam a) / (1 - e^-lam)
    return math.exp(-lam * a) / -math.expm1(-lam)


def _truncated_tail_sum(gamma: float, lam: float, a: int) -> float:
    """sum_{k=a}^inf k^-gamma e^-(lam k), to ~1e-12 relative."""
    if lam <= 0.0:
        return _powerlaw_tail_sum(gamma, a)
    if lam < _LERCH_LAMBDA:
        z = mpmath.exp(-lam)
        return float(mpmath.lerchphi(z, gamma, a) * mpmath.exp(-lam * a))
    total = 0.0
    k = a
    chunk = 65536
    while True:
        ks = np.arange(k, k + chunk, dtype=np.float64)
        total += float(np.sum(ks**-gamma * np.exp(-lam * ks)))
        k += chunk
        # terms beyond k are bounded by a geometric series
        bound = k**-gamma * math.exp(-lam * k) / -math.expm1(-lam)
        if bound < _SUM_RTOL * total:
            return total


def _lognormal_tail_sum(mu: float, sigma: float, a: int) -> float:
    """sum_{k=a}^inf exp(-(ln k - mu)^2/(2 sigma^2))/k.

    Direct summation over the head plus the remainder as a midpoint-rule
    integral, which is exact in closed form under u = ln x. The seam error
    is O(f'(K)/24), far below 1e-12 of the total anywhere near a maximum
    of the likelihood.
    """
    two_s2 = 2.0 * sigma * sigma
    K = max(a + 32768, 100_000)
    ks = np.arange(a, K + 1, dtype=np.float64)
    logs = np.log(ks)
    total = float(np.sum(np.exp(-((logs - mu) ** 2) / two_s2) / ks))
    z = (math.log(K + 0.5) - mu) / sigma
    remainder = sigma * _SQRT_2PI * 0.5 * math.erfc(z / _SQRT2)
    return total + remainder


# ------------------------------------------------------------- tail handling


def _as_degree_array(degrees) -> np.ndarray:
    arr = np.asarray(degrees, dtype=np.int64)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size == 0:
        raise InsufficientTailError("no degree observations supplied")
    if arr.min() < 1:
        raise ValueError("degrees must be positive integers (drop zero-degree nodes first)")
    return arr


def _tail(arr: np.ndarray, x_min: int) -> np.ndarray:
    if x_min < 1:
        raise ValueError(f"x_min must be >= 1, got {x_min}")
    tail = np.sort(arr[arr >= x_min])
    if tail.size < 2:
        raise InsufficientTailError(
            f"{tail.size} observation(s) at or above x_min={x_min}; need at least 2"
        )
    if tail[0] == tail[-1]:
        raise DegenerateTailError(
            f"all {tail.size} tail observations equal {int(tail[0])}; estimate diverges"
        )
    if tail.size < MIN_TAIL_POINTS:
        raise InsufficientTailError(
            f"{tail.size} tail points at x_min={x_min} is below the stability "
            f"minimum of {MIN_TAIL_POINTS}"
        )
    return tail


def _ks_distance(tail: np.ndarray, model_cdf: np.ndarray, uniq: np.ndarray) -> float:
    counts = np.searchsorted(tail, uniq, side="right")
    ecdf = counts / tail.size
    return float(np.abs(ecdf - model_cdf).max())


def _minimize(fun, x0, bounds):
    res = optimize.minimize(fun, x0, method="Nelder-Mead", bounds=bounds, options=_NM_OPTIONS)
    if not res.success:
        raise FitConvergenceError(f"optimizer did not converge: {res.message}", diagnostics=res)
    return res


# ------------------------------------------------------------- family fits


def _fit_power_law_at(arr: np.ndarray, x_min: int) -> TailFit:
    tail = _tail(arr, x_min)
    n = tail.size
    sum_log = float(np.log(tail).sum())

    def neg_loglik(params):
        gamma = params[0]
        return gamma * sum_log + n * math.log(_powerlaw_tail_sum(gamma, x_min))

    # continuous-approximation closed form seeds the search
    g0 = 1.0 + n / float(np.log(tail / (x_min - 0.5)).sum())
    g0 = min(max(g0, 1.05), 19.0)
    res = _minimize(neg_loglik, [g0], [_GAMMA_BOUNDS])
    gamma = float(res.x[0])

    uniq = np.unique(tail)
    z0 = _powerlaw_tail_sum(gamma, x_min)
    cdf = 1.0 - special.zeta(gamma, uniq + 1) / z0
    return TailFit(
        family="power_law",
        x_min=int(x_min),
        n_tail=n,
        log_likelihood=-neg_loglik([gamma]),
        ks_distance=_ks_distance(tail, cdf, uniq),
        gamma=gamma,
        gamma_stderr=(gamma - 1.0) / math.sqrt(n),
    )


def _fit_truncated_at(arr: np.ndarray, x_min: int) -> TailFit:
    tail = _tail(arr, x_min)
    n = tail.size
    sum_log = float(np.log(tail).sum())
    sum_k = float(tail.sum())

    def neg_loglik(params):
        gamma, lam = params
        return gamma * sum_log + lam * sum_k + n * math.log(_truncated_tail_sum(gamma, lam, x_min))

    try:
        pure = _fit_power_law_at(arr, x_min)
    except FitError:
        pure = None
    x0 = [pure.gamma if pure else 2.0, 0.01]
    res = _minimize(neg_loglik, x0, [_GAMMA_BOUNDS, _LAMBDA_BOUNDS])
    candidates = [(float(res.x[0]), float(res.x[1]))]
    if pure is not None:
        # the pure power law is the lam = 0 boundary; never report worse
        candidates.append((pure.gamma, 0.0))
    gamma, lam = min(candidates, key=lambda c: neg_loglik(c))

    uniq = np.unique(tail)
    z0 = _truncated_tail_sum(gamma, lam, x_min)
    ks_grid = np.arange(x_min, int(uniq[-1]) + 1, dtype=np.float64)
    pmf = ks_grid**-gamma * np.exp(-lam * ks_grid) / z0
    cdf = np.cumsum(pmf)[(uniq - x_min).astype(np.int64)]
    return TailFit(
        family="truncated_power_law",
        x_min=int(x_min),
        n_tail=n,
        log_likelihood=-neg_loglik((gamma, lam)),
        ks_distance=_ks_distance(tail, cdf, uniq),
        gamma=gamma,
        lam=lam,
    )


def _fit_lognormal_at(arr: np.ndarray, x_min: int) -> TailFit:
    tail = _tail(arr, x_min)
    n = tail.size
    logs = np.log(tail.astype(np.float64))
    sum_log = float(logs.sum())

    def neg_loglik(params):
        mu, sigma = params
        ss = float(np.sum((logs - mu) ** 2)) / (2.0 * sigma * sigma)
        return ss + sum_log + n * math.log(_lognormal_tail_sum(mu, sigma, x_min))

    mu0 = float(logs.mean())
    sigma0 = max(float(logs.std()), 0.05)
    mu_bounds = (mu0 - 20.0, float(logs.max()) + 5.0)
    res = _minimize(neg_loglik, [mu0, sigma0], [mu_bounds, _SIGMA_BOUNDS])
    mu, sigma = float(res.x[0]), float(res.x[1])

    uniq = np.unique(tail)
    z0 = _lognormal_tail_sum(mu, sigma, x_min)
    ks_grid = np.arange(x_min, int(uniq[-1]) + 1, dtype=np.float64)
    pmf = np.exp(-((np.log(ks_grid) - mu) ** 2) / (2.0 * sigma * sigma)) / ks_grid / z0
    cdf = np.cumsum(pmf)[(uniq - x_min).astype(np.int64)]
    return TailFit(
        family="lognormal",
        x_min=int(x_min),
        n_tail=n,
        log_likelihood=-neg_loglik((mu, sigma)),
        ks_distance=_ks_distance(tail, cdf, uniq),
        mu=mu,
        sigma=sigma,
    )


def _fit_exponential_at(arr: np.ndarray, x_min: int) -> TailFit:
    tail = _tail(arr, x_min)
    n = tail.size
    sum_k = float(tail.sum())

    def neg_loglik(params):
        lam = params[0]
        return lam * sum_k + n * math.log(_exponential_tail_sum(lam, x_min))

    mean_excess = sum_k / n - x_min
    lam0 = math.log1p(1.0 / mean_excess) if mean_excess > 0 else 1.0
    lam0 = min(max(lam0, 1e-6), 19.0)
    res = _minimize(neg_loglik, [lam0], [_EXP_LAMBDA_BOUNDS])
    lam = float(res.x[0])

    uniq = np.unique(tail)
    cdf = 1.0 - np.exp(-lam * (uniq + 1 - x_min))
    return TailFit(
        family="exponential",
        x_min=int(x_min),
        n_tail=n,
        log_likelihood=-neg_loglik([lam]),
        ks_distance=_ks_distance(tail, cdf, uniq),
        lam=lam,
    )


_FIT_AT = {
    "power_law": _fit_power_law_at,
    "truncated_power_law": _fit_truncated_at,
    "lognormal": _fit_lognormal_at,
    "exponential": _fit_exponential_at,
}


# ------------------------------------------------------------- x_min scan


def xmin_candidates(arr: np.ndarray) -> list[int]:
    """Distinct observed degrees from 1 up to the 90th percentile.

    Larger candidates would leave under 10% of the data in the tail, which
    is treated as unfittable. The maximum observed degree is excluded since
    its tail is degenerate.
    """
    srt = np.sort(arr)
    n = srt.size
    p90 = int(srt[min(n - 1, max(0, math.ceil(0.9 * n) - 1))])
    uniq = np.unique(srt)
    top = int(srt[-1])
    return [int(u) for u in uniq if 1 <= u <= p90 and u < top]


def _scan_xmin(fit_at, arr: np.ndarray, threads: int) -> TailFit:
    candidates = xmin_candidates(arr)

    def attempt(c: int) -> TailFit | None:
        try:
            return fit_at(arr, c)
        except FitError:
            return None

    if threads > 1 and len(candidates) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            fits = list(pool.map(attempt, candidates))
    else:
        fits = [attempt(c) for c in candidates]
    fits = [f for f in fits if f is not None]
    if not fits:
        raise InsufficientTailError("no x_min candidate admits a stable fit")
    return min(fits, key=lambda f: (f.ks_distance, f.x_min))


def _fit(family: str, degrees, x_min: int | None, threads: int) -> TailFit:
    arr = _as_degree_array(degrees)
    fit_at = _FIT_AT[family]
    if x_min is None:
        return _scan_xmin(fit_at, arr, threads)
    return fit_at(arr, int(x_min))


def fit_power_law(degrees, x_min: int | None = None, threads: int = 1) -> TailFit:
    """MLE power-law tail fit; scans x_min by KS distance when not given."""
    return _fit("power_law", degrees, x_min, threads)


def fit_truncated_power_law(degrees, x_min: int | None = None, threads: int = 1) -> TailFit:
    """MLE power law with exponential cutoff; lambda >= 0, lambda = 0 recovers
    the pure power law, and the reported likelihood never falls below it."""
    return _fit("truncated_power_law", degrees, x_min, threads)


def fit_lognormal(degrees, x_min: int | None = None, threads: int = 1) -> TailFit:
    return _fit("lognormal", degrees, x_min, threads)


def fit_exponential(degrees, x_min: int | None = None, threads: int = 1) -> TailFit:
    return _fit("exponential", degrees, x_min, threads)


def fit_all(degrees, x_min: int | None = None, threads: int = 1) -> dict[str, TailFit]:
    """Fit every family at a shared x_min.

    When x_min is not supplied the power-law scan chooses it and the other
    families are fit at the same value, keeping all fits comparable.
    """
    power = fit_power_law(degrees, x_min=x_min, threads=threads)
    shared = power.x_min
    fits = {"power_law": power}
    for family in FAMILIES[1:]:
        fits[family] = _fit(family, degrees, shared, threads)
    return fits


# ------------------------------------------------------------- comparison


def _pointwise_loglik(fit: TailFit, tail: np.ndarray) -> np.ndarray:
    k = tail.astype(np.float64)
    if fit.family == "power_law":
        return -fit.gamma * np.log(k) - math.log(_powerlaw_tail_sum(fit.gamma, fit.x_min))
    if fit.family == "truncated_power_law":
        z = _truncated_tail_sum(fit.gamma, fit.lam, fit.x_min)
        return -fit.gamma * np.log(k) - fit.lam * k - math.log(z)
    if fit.family == "lognormal":
        z = _lognormal_tail_sum(fit.mu, fit.sigma, fit.x_min)
        return -((np.log(k) - fit.mu) ** 2) / (2.0 * fit.sigma**2) - np.log(k) - math.log(z)
    if fit.family == "exponential":
        return -fit.lam * k - math.log(_exponential_tail_sum(fit.lam, fit.x_min))
    raise ValueError(f"unknown family {fit.family!r}")


def compare(fit_a: TailFit, fit_b: TailFit, degrees, alpha: float = 0.05) -> FitComparison:
    """Vuong normalized log-likelihood ratio between two fits of the same tail.

    Positive values favor ``fit_a``; the two-sided p-value comes from a
    standard normal. A family is preferred only when p <= alpha, otherwise
    the comparison is inconclusive.
    """
    if fit_a.x_min != fit_b.x_min:
        raise ValueError(f"fits disagree on x_min: {fit_a.x_min} vs {fit_b.x_min}")
    arr = _as_degree_array(degrees)
    tail = _tail(arr, fit_a.x_min)
    if fit_a.n_tail != tail.size or fit_b.n_tail != tail.size:
        raise ValueError("fits were produced from different data than supplied")
    diff = _pointwise_loglik(fit_a, tail) - _pointwise_loglik(fit_b, tail)
    sd = float(diff.std())
    if sd < 1e-12:
        normalized = 0.0
        p_value = 1.0
    else:
        normalized = float(diff.sum()) / (sd * math.sqrt(diff.size))
        p_value = math.erfc(abs(normalized) / _SQRT2)
    if p_value <= alpha and normalized != 0.0:
        preferred = fit_a.family if normalized > 0 else fit_b.family
    else:
        preferred = "inconclusive"
    return FitComparison(
        family_a=fit_a.family,
        family_b=fit_b.family,
        normalized_lr=normalized,
        p_value=p_value,
        preferred=preferred,
    )


def compare_all(fits: dict[str, TailFit], degrees, alpha: float = 0.05) -> list[FitComparison]:
    """Pairwise comparisons in canonical family order."""
    out = []
    names = [f for f in FAMILIES if f in fits]
    for i, fa in enumerate(names):
        for fb in names[i + 1 :]:
            out.append(compare(fits[fa], fits[fb], degrees, alpha=alpha))
    return out


def scale_invariance_check(fit: TailFit, x: float, k: float) -> float:
    """Relative residual of p(xk) = x^-gamma p(k) on the unnormalized form.

    Analytically zero for a power law; nonzero values only measure floating
    point noise in the implementation.
    """
    if fit.family != "power_law":
        raise ValueError("scale invariance holds for the power_law family only")
    if k < fit.x_min:
        raise ValueError(f"k={k} is below the fitted x_min={fit.x_min}")
    if x <= 0:
        raise ValueError("the rescale factor x must be positive")
    gamma = fit.gamma
    left = (x * k) ** -gamma
    right = x**-gamma * k**-gamma
    return abs(left - right) / left


# ------------------------------------------------------------- sampling


def _tail_sum_fn(family: str, params: dict):
    if family == "power_law":
        return lambda a: _powerlaw_tail_sum(params["gamma"], a)
    if family == "truncated_power_law":
        return lambda a: _truncated_tail_sum(params["gamma"], params["lam"], a)
    if family == "lognormal":
        return lambda a: _lognormal_tail_sum(params["mu"], params["sigma"], a)
    if family == "exponential":
        return lambda a: _exponential_tail_sum(params["lam"], a)
    raise ValueError(f"unknown family {family!r}")


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def _sample_discrete(family: str, params: dict, x_min: int, size: int, rng) -> np.ndarray:
    """Exact inverse-CDF sampling from a discrete tail family.

    A cumulative table covers all but ~0.5 expected draws; the rare extreme
    draws are inverted exactly by bisection on the tail-sum function.
    """
    rng = _as_rng(rng)
    tail_sum = _tail_sum_fn(family, params)
    z = tail_sum(x_min)
    eps = min(1e-6, 0.5 / size)

    # grow the table until the not-covered mass drops below eps; shallow
    # exponents hit the size cap instead and lean on exact bisection below
    hi = x_min + 1024
    while tail_sum(hi + 1) / z > eps and (hi - x_min) < 2**24:
        hi = x_min + (hi - x_min) * 2
    ks = np.arange(x_min, hi + 1, dtype=np.float64)
    if family == "power_law":
        pmf = ks ** -params["gamma"]
    elif family == "truncated_power_law":
        pmf = ks ** -params["gamma"] * np.exp(-params["lam"] * ks)
    elif family == "lognormal":
        pmf = np.exp(-((np.log(ks) - params["mu"]) ** 2) / (2 * params["sigma"] ** 2)) / ks
    else:
        pmf = np.exp(-params["lam"] * ks)
    cdf = np.cumsum(pmf / z)

    u = rng.random(size)
    samples = x_min + np.searchsorted(cdf, u, side="left")
    overflow = samples > hi
    for i in np.nonzero(overflow)[0]:
        samples[i] = _invert_exact(tail_sum, z, x_min, hi, float(u[i]))
    return samples.astype(np.int64)


def _invert_exact(tail_sum, z: float, x_min: int, lo: int, u: float) -> int:
    def cdf(k: int) -> float:
        return 1.0 - tail_sum(k + 1) / z

    hi = lo * 2
    while cdf(hi) < u:
        lo = hi
        hi *= 2
        if hi > 2**50:
            return hi
    while lo < hi:
        mid = (lo + hi) // 2
        if cdf(mid) >= u:
            hi = mid
        else:
            lo = mid + 1
    return lo


def sample_power_law(gamma: float, x_min: int, size: int, rng=None) -> np.ndarray:
    """Draw integer samples from the exact discrete power-law tail."""
    return _sample_discrete("power_law", {"gamma": gamma}, x_min, size, rng)


def sample_truncated_power_law(
    gamma: float, lam: float, x_min: int, size: int, rng=None
) -> np.ndarray:
    return _sample_discrete(
        "truncated_power_law", {"gamma": gamma, "lam": lam}, x_min, size, rng
    )


def sample_lognormal(mu: float, sigma: float, x_min: int, size: int, rng=None) -> np.ndarray:
    return _sample_discrete("lognormal", {"mu": mu, "sigma": sigma}, x_min, size, rng)


def sample_exponential(lam: float, x_min: int, size: int, rng=None) -> np.ndarray:
    return _sample_discrete("exponential", {"lam": lam}, x_min, size, rng)


# ------------------------------------------------------------- serialization


def render_fits_csv(fits: list[TailFit]) -> str:
    lines = ["family,gamma,lambda,mu,sigma,x_min,n_tail,loglik,ks"]

    def fmt(v):
        return "" if v is None else repr(float(v))

    for f in fits:
        lines.append(
            ",".join(
                [
                    f.family,
                    fmt(f.gamma),
                    fmt(f.lam),
                    fmt(f.mu),
                    fmt(f.sigma),
                    str(f.x_min),
                    str(f.n_tail),
                    repr(f.log_likelihood),
                    repr(f.ks_distance),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def render_comparisons_csv(comparisons: list[FitComparison]) -> str:
    lines = ["family_a,family_b,lr,p,preferred"]
    for c in comparisons:
        lines.append(
            f"{c.family_a},{c.family_b},{c.normalized_lr!r},{c.p_value!r},{c.preferred}"
        )
    return "\n".join(lines) + "\n"
