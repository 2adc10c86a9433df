"""The named weighted-norm quantities: finite-p norms with enclosures, the
sup norms, closed forms, the Gamma-function upper bound U, the lower bound
on the degree-zero norm, and the argmax-over-degree search.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .quadrature import (
    DEFAULT_QUAD_CONFIG,
    Enclosure,
    QuadConfig,
    integrate_weighted_power,
    tail_bound,
    zero_order_tail_bound,
)
from .specfun import (
    BesselOrder,
    SpecfunDomainError,
    bessel_j_array,
    landau_constant,
    log_gamma,
    sup_critical_point,
)

__all__ = [
    "INFINITY",
    "NormKey",
    "NormValue",
    "Method",
    "Status",
    "BestKResult",
    "lambda_finite",
    "lambda_power",
    "lambda_sup",
    "lambda_sup_zero_closed",
    "lambda4_zero",
    "weighted_l2_identity",
    "upper_bound_U",
    "lower_bound_L0",
    "validity_strip",
    "stein_tomas_exponent",
    "best_k",
    "default_radius",
    "clear_memo_cache",
]

INFINITY = math.inf


class Method(str, Enum):
    QUADRATURE_TAIL = "QUADRATURE_TAIL"
    CLOSED_FORM = "CLOSED_FORM"
    SUP_SCAN = "SUP_SCAN"


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class NormKey:
    """Identifies the weighted norm of order d/2 - 1 + k at exponent p."""

    d: int
    p: float
    k: int

    def __post_init__(self):
        if self.d < 2 or self.k < 0:
            raise SpecfunDomainError(f"need d >= 2 and k >= 0, got d={self.d}, k={self.k}")
        if not self.p > 2.0 * self.d / (self.d - 1):
            raise SpecfunDomainError(
                f"inadmissible exponent p={self.p} for d={self.d} "
                f"(need p > {2.0*self.d/(self.d-1)})"
            )

    @property
    def nu(self) -> float:
        return self.d / 2.0 - 1.0 + self.k

    @property
    def is_sup(self) -> bool:
        return math.isinf(self.p)


@dataclass(frozen=True)
class NormValue:
    key: NormKey
    enclosure: Enclosure
    R_used: float
    method: Method

    def __post_init__(self):
        if self.enclosure.lower <= 0:
            raise ValueError("norm enclosures must be strictly positive")
        if self.method is Method.CLOSED_FORM:
            if self.enclosure.width > 1e-12 * self.enclosure.upper:
                raise ValueError("closed-form enclosure wider than 1e-12 relative")


def stein_tomas_exponent(d: int) -> float:
    """The endpoint exponent 2(d+1)/(d-1)."""
    return 2.0 * (d + 1) / (d - 1)


def default_radius(d: int, k: int) -> float:
    """Default truncation radius: max(200, 3*nu)."""
    return max(200.0, 3.0 * (d / 2.0 - 1.0 + k))


class GuardScanError(RuntimeError):
    """The dense scan found a value above the critical-point candidate."""


# memoises (key, R, cfg) -> NormValue; duplicate concurrent computation of the
# same pure value is harmless, the lock only protects dict integrity.
_memo: dict = {}
_memo_lock = threading.Lock()


def clear_memo_cache() -> None:
    with _memo_lock:
        _memo.clear()


def _tail_for(key: NormKey, R: float) -> float:
    if key.d == 2 and key.k == 0:
        return zero_order_tail_bound(key.p, R)
    return tail_bound(key.d, key.p, key.k, R)


def lambda_power(
    key: NormKey, R: float | None = None, cfg: QuadConfig = DEFAULT_QUAD_CONFIG
) -> Enclosure:
    """Enclosure of the p-th power of the norm: truncated integral plus tail."""
    if key.is_sup:
        raise SpecfunDomainError("lambda_power needs a finite exponent")
    R = default_radius(key.d, key.k) if R is None else R
    cache_key = ("power", key, R, cfg.key())
    with _memo_lock:
        if cache_key in _memo:
            return _memo[cache_key]
    enc = integrate_weighted_power(key.d, key.p, key.k, R, cfg).with_tail(_tail_for(key, R))
    with _memo_lock:
        _memo[cache_key] = enc
    return enc


def lambda_finite(
    key: NormKey, R: float | None = None, cfg: QuadConfig = DEFAULT_QUAD_CONFIG
) -> NormValue:
    """The finite-p norm as an enclosure (p-th root of the power enclosure)."""
    R = default_radius(key.d, key.k) if R is None else R
    power = lambda_power(key, R, cfg)
    return NormValue(key=key, enclosure=power.powered(1.0 / key.p), R_used=R, method=Method.QUADRATURE_TAIL)


def lambda_sup_zero_closed(d: int) -> float:
    """Closed form 1 / (2^(d/2-1) Gamma(d/2)) for the degree-zero sup norm."""
    if d < 2:
        raise SpecfunDomainError(f"need d >= 2, got {d}")
    return math.exp((1.0 - d / 2.0) * math.log(2.0) - log_gamma(d / 2.0))


def _sup_guard_scan(d: int, k: int, candidate: float) -> None:
    """Dense-grid check that no radial value beats the critical-point value."""
    nu = d / 2.0 - 1.0 + k
    r_end = 3.0 * nu + 20.0
    grid = np.arange(0.01, r_end + 0.005, 0.01)
    values = np.abs(bessel_j_array(BesselOrder.from_dim_degree(d, k), grid) * grid ** (1.0 - d / 2.0))
    scan_max = float(values.max())
    if scan_max > candidate + 1e-9:
        raise GuardScanError(
            f"scan maximum {scan_max} exceeds critical-point value {candidate} for d={d}, k={k}"
        )
    # beyond the grid the profile is dominated by a decreasing envelope
    decay = r_end ** (1.0 - d / 2.0) * min(r_end**-0.5, landau_constant() * r_end ** (-1.0 / 3.0))
    if decay > candidate + 1e-9:
        raise GuardScanError(f"decay bound {decay} at r={r_end} exceeds {candidate} for d={d}, k={k}")


def lambda_sup(d: int, k: int) -> NormValue:
    """The sup norm: closed form for degree zero, critical point otherwise."""
    key = NormKey(d, INFINITY, k)
    if k == 0:
        value = lambda_sup_zero_closed(d)
        return NormValue(key=key, enclosure=Enclosure.point(value), R_used=0.0, method=Method.CLOSED_FORM)
    r_star = sup_critical_point(d, k)
    order = BesselOrder.from_dim_degree(d, k)
    value = float(abs(bessel_j_array(order, np.array([r_star]))[0]) * r_star ** (1.0 - d / 2.0))
    _sup_guard_scan(d, k, value)
    slack = 1e-11 * value
    enc = Enclosure(value - slack, value + slack, truncation_bound=slack)
    return NormValue(key=key, enclosure=enc, R_used=r_star, method=Method.SUP_SCAN)


def lambda4_zero(d: int) -> float:
    """Closed form of the degree-zero norm at p = 4, for d >= 3.

    The fourth power equals Gamma(nu) Gamma(2 nu) / (2 pi Gamma(nu+1/2)^2
    Gamma(3 nu)) with nu = d/2 - 1.
    """
    if d < 3:
        raise SpecfunDomainError(f"need d >= 3 (the p=4, d=2 case is inadmissible), got {d}")
    nu = d / 2.0 - 1.0
    log_val = (
        log_gamma(nu)
        + log_gamma(2.0 * nu)
        - math.log(2.0 * math.pi)
        - 2.0 * log_gamma(nu + 0.5)
        - log_gamma(3.0 * nu)
    )
    return math.exp(0.25 * log_val)


def weighted_l2_identity(nu: BesselOrder, lam: float) -> float:
    """Closed form of the integral of J_nu(r)^2 r^(-lam) over (0, infinity).

    Valid for 0 < lam < 2 nu + 1.
    """
    v = nu.nu
    if not 0.0 < lam < 2.0 * v + 1.0:
        raise SpecfunDomainError(f"need 0 < lam < 2nu+1, got lam={lam}, nu={v}")
    log_val = (
        log_gamma(lam)
        + log_gamma(v + (1.0 - lam) / 2.0)
        - lam * math.log(2.0)
        - 2.0 * log_gamma((1.0 + lam) / 2.0)
        - log_gamma(v + (1.0 + lam) / 2.0)
    )
    return math.exp(log_val)


def validity_strip(d: int) -> tuple[float, float]:
    """Exponent range on which the upper bound U is valid for every k >= 1."""
    return (6.0 * d - 2.0) / (3.0 * d - 4.0), (12.0 * d + 4.0) / (3.0 * d - 4.0)


def upper_bound_U(d: int, p: float, k: int) -> float:
    """Gamma-function upper bound for the p-th power of the degree-k norm.

    Decreasing in k; valid on the exponent strip given by validity_strip(d).
    """
    if k < 1:
        raise SpecfunDomainError(f"need k >= 1, got {k}")
    lo, hi = validity_strip(d)
    if not lo < p < hi:
        raise SpecfunDomainError(f"p={p} outside the validity strip ({lo}, {hi}) for d={d}")
    lam = p * (d / 2.0 - 2.0 / 3.0) - d + 1.0 / 3.0
    nu = d / 2.0 - 1.0 + k
    return landau_constant() ** (p - 2.0) * math.exp(
        log_gamma(lam)
        + log_gamma(nu + (1.0 - lam) / 2.0)
        - lam * math.log(2.0)
        - 2.0 * log_gamma((1.0 + lam) / 2.0)
        - log_gamma(nu + (1.0 + lam) / 2.0)
    )


def lower_bound_L0(d: int, p: float) -> float:
    """Strict lower bound on the degree-zero norm at exponent p."""
    if d < 2:
        raise SpecfunDomainError(f"need d >= 2, got {d}")
    if not p > 2.0 * d / (d - 1):
        raise SpecfunDomainError(f"inadmissible p={p} for d={d}")
    log_prefactor = ((d - 1) * math.log(2.0) + (d / 2.0) * math.log(d / 2.0)) / p
    log_prefactor -= (d / 2.0 - 1.0) * math.log(2.0) + log_gamma(d / 2.0)
    log_ratio = (log_gamma(p + 1.0) + log_gamma(d / 2.0) - log_gamma(p + d / 2.0 + 1.0)) / p
    return math.exp(log_prefactor + log_ratio)


@dataclass
class BestKResult:
    d: int
    p: float
    K_explicit: int
    argmax_k: int
    status: Status
    margins: list = field(default_factory=list)
    dominated_from: int | None = None
    notes: list = field(default_factory=list)


def best_k(
    d: int,
    p: float,
    K_explicit: int,
    R: float | None = None,
    cfg: QuadConfig = DEFAULT_QUAD_CONFIG,
) -> BestKResult:
    """Locate the degree maximizing the norm at exponent p.

    Explicit enclosures for degrees up to K_explicit; larger degrees are
    dominated through the decreasing upper bound U.  Overlapping enclosures
    at the top yield INCONCLUSIVE, never a forced PASS.
    """
    if math.isinf(p):
        values = [lambda_sup(d, k) for k in range(K_explicit + 1)]
        encs = [v.enclosure for v in values]
        notes = ["degrees beyond K dominated by the proven strict decrease of the sup norm"]
        dominated_from = K_explicit + 1
    else:
        lo_strip, hi_strip = validity_strip(d)
        if not lo_strip < p < hi_strip:
            raise SpecfunDomainError(
                f"best_k needs p inside the U-bound strip ({lo_strip}, {hi_strip}) or p=inf"
            )
        encs = [lambda_power(NormKey(d, p, k), R, cfg) for k in range(K_explicit + 1)]
        notes = []
        dominated_from = None

    best_idx = max(range(len(encs)), key=lambda i: encs[i].lower)
    best_enc = encs[best_idx]
    margins = []
    status = Status.PASS
    for k, enc in enumerate(encs):
        if k == best_idx:
            margins.append(0.0)
            continue
        margins.append(best_enc.lower - enc.upper)
        if enc.upper >= best_enc.lower:
            status = Status.INCONCLUSIVE

    if not math.isinf(p):
        # U is decreasing in k, so beating it at K_explicit+1 settles all larger k
        u_next = upper_bound_U(d, p, K_explicit + 1)
        if u_next < best_enc.lower:
            dominated_from = K_explicit + 1
            notes.append(f"U(d,p,{K_explicit+1}) = {u_next} < best explicit lower {best_enc.lower}")
        else:
            status = Status.INCONCLUSIVE
            notes.append(f"U(d,p,{K_explicit+1}) = {u_next} does not fall below {best_enc.lower}")

    return BestKResult(
        d=d,
        p=p,
        K_explicit=K_explicit,
        argmax_k=best_idx,
        status=status,
        margins=margins,
        dominated_from=dominated_from,
        notes=notes,
    )
