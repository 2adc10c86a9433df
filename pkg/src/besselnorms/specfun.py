"""Bessel functions of integer and half-integer order, log-Gamma, and the
first local maximum of the weighted radial profile r^{1-d/2} J_nu(r).

Orders are carried around as exact integers (twice the order), which covers
every order nu = d/2 - 1 + k arising from a dimension d >= 2 and a degree
k >= 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import jv

__all__ = [
    "BesselOrder",
    "EvalAccuracy",
    "DEFAULT_ACCURACY",
    "bessel_j",
    "bessel_j_array",
    "log_gamma",
    "landau_constant",
    "sup_critical_point",
    "first_zero_estimate",
    "SpecfunDomainError",
    "RootBracketError",
]

# sup over nu > 0, r > 0 of |r^(1/3) J_nu(r)|, a classical constant.
_LANDAU_CONSTANT = 0.785746


class SpecfunDomainError(ValueError):
    """Argument outside the supported domain."""


class RootBracketError(RuntimeError):
    """No sign change found below the search cap."""


@dataclass(frozen=True)
class BesselOrder:
    """Order nu stored exactly as the integer 2*nu."""

    twice_nu: int

    def __post_init__(self):
        if not isinstance(self.twice_nu, int) or self.twice_nu < 0:
            raise SpecfunDomainError(f"twice_nu must be a non-negative integer, got {self.twice_nu!r}")

    @property
    def nu(self) -> float:
        return self.twice_nu / 2.0

    @classmethod
    def from_dim_degree(cls, d: int, k: int) -> "BesselOrder":
        """Order nu = d/2 - 1 + k for dimension d >= 2 and degree k >= 0."""
        if d < 2 or k < 0:
            raise SpecfunDomainError(f"need d >= 2 and k >= 0, got d={d}, k={k}")
        return cls(d - 2 + 2 * k)

    def shifted(self, by: int) -> "BesselOrder":
        return BesselOrder(self.twice_nu + 2 * by)


@dataclass(frozen=True)
class EvalAccuracy:
    """Evaluation limits; defaults cover every computation in this package."""

    target_rel_error: float = 1e-12
    max_argument: float = 1000.0
    max_twice_nu: int = 120

    def __post_init__(self):
        if self.target_rel_error <= 0 or self.max_argument <= 0:
            raise SpecfunDomainError("target_rel_error and max_argument must be positive")


DEFAULT_ACCURACY = EvalAccuracy()


def bessel_j(nu: BesselOrder, r: float, accuracy: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """J_nu(r) for r >= 0.

    Exact at r = 0 (1 for nu = 0, 0 otherwise); elsewhere delegated to
    scipy's jv, which is well within the target accuracy for the moderate
    orders and arguments admitted here.
    """
    if r < 0:
        raise SpecfunDomainError(f"negative argument r={r}")
    if r > accuracy.max_argument:
        raise SpecfunDomainError(f"argument r={r} exceeds max_argument={accuracy.max_argument}")
    if nu.twice_nu > accuracy.max_twice_nu:
        raise SpecfunDomainError(f"order 2nu={nu.twice_nu} exceeds max_twice_nu={accuracy.max_twice_nu}")
    if r == 0.0:
        return 1.0 if nu.twice_nu == 0 else 0.0
    return float(jv(nu.nu, r))


def bessel_j_array(nu: BesselOrder, r: np.ndarray) -> np.ndarray:
    """Vectorized J_nu over a non-negative array (no limit checks)."""
    return jv(nu.nu, r)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if x <= 0:
        raise SpecfunDomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def landau_constant() -> float:
    """The constant L = sup_{nu>0, r>0} |r^(1/3) J_nu(r)| = 0.785746..."""
    return _LANDAU_CONSTANT


def first_zero_estimate(nu: float) -> float:
    """McMahon-type upper estimate for the first positive zero of J_nu."""
    # j_{nu,1} ~ nu + 1.8557571 nu^(1/3) for large nu; small-order floor keeps
    # the estimate above j_{0,1} ~ 2.4048.
    return nu + 1.8557571 * max(nu, 1.0) ** (1.0 / 3.0) + 2.5


def sup_critical_point(d: int, k: int, search_cap: float | None = None) -> float:
    """Smallest r* > 0 where r^(1-d/2) J_nu(r), nu = d/2 - 1 + k, peaks.

    Critical points solve k*J_nu(r) = r*J_{nu+1}(r); the first sign change of
    that residual is bracketed on a scan grid and then bisected to 1e-12.
    """
    if d < 2 or k < 1:
        raise SpecfunDomainError(f"need d >= 2 and k >= 1, got d={d}, k={k}")
    order = BesselOrder.from_dim_degree(d, k)
    nu = order.nu
    cap = search_cap if search_cap is not None else first_zero_estimate(nu) + 2.0
    if cap < first_zero_estimate(nu):
        raise SpecfunDomainError(f"search_cap={cap} is below the first-zero estimate for nu={nu}")

    def residual(r: np.ndarray) -> np.ndarray:
        return k * jv(nu, r) - r * jv(nu + 1.0, r)

    grid = np.linspace(1e-3, cap, 4096)
    vals = residual(grid)
    sign = np.sign(vals)
    # residual is positive near 0 for k >= 1; find the first strict sign flip
    flips = np.nonzero((sign[:-1] > 0) & (sign[1:] < 0))[0]
    if flips.size == 0:
        raise RootBracketError(f"no sign change below search_cap={cap} for d={d}, k={k}")
    lo, hi = float(grid[flips[0]]), float(grid[flips[0] + 1])
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if residual(np.array([mid]))[0] > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
