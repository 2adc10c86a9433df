"""Exponent sweeps certifying, per dimension, the threshold beyond which the
interpolated upper bound on every positive-degree norm falls below the
closed-form lower bound on the degree-zero norm.

All upper bounds use enclosure upper ends and all lower bounds the closed
form, so a positive margin cannot be an artifact of optimistic rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .norms import (
    NormKey,
    lambda_power,
    lambda_sup,
    lambda_sup_zero_closed,
    lower_bound_L0,
    stein_tomas_exponent,
)
from .quadrature import DEFAULT_QUAD_CONFIG, QuadConfig

__all__ = [
    "Regime",
    "SweepResult",
    "sweep_d2",
    "sweep_step1",
    "sweep_step2",
    "p0_report",
    "PUBLISHED_THRESHOLDS",
]

# published certified thresholds, d = 2..10
PUBLISHED_THRESHOLDS = {2: 6.0, 3: 4.0, 4: 3.48, 5: 3.50, 6: 3.58, 7: 3.7, 8: 3.86, 9: 4.06, 10: 4.46}

_MARGIN_FLOOR = 1e-8
# beyond this exponent both sides are within 1e-6 of their limits; the sweep
# defers to the explicit limit comparison
_P_LIMIT_SWITCH = 60.0


class Regime(str, Enum):
    D2_SIX_INF = "D2_SIX_INF"
    STEP1_FOUR_INF = "STEP1_FOUR_INF"
    STEP2_PST_FOUR = "STEP2_PST_FOUR"


@dataclass
class SweepResult:
    d: int
    regime: Regime
    p_grid: list
    margins: list
    certified_threshold: float | None
    published_threshold: float
    limit_margin: float | None = None
    notes: list = field(default_factory=list)

    @property
    def all_positive(self) -> bool:
        return all(m > _MARGIN_FLOOR for m in self.margins)


def _threshold_from_grid(p_grid, margins) -> float | None:
    """Smallest grid exponent from which every later margin stays positive."""
    last_bad = None
    for i, m in enumerate(margins):
        if m <= _MARGIN_FLOOR:
            last_bad = i
    if last_bad is None:
        return p_grid[0]
    if last_bad + 1 >= len(p_grid):
        return None
    return p_grid[last_bad + 1]


def _ascending_grid(p_min: float, p_max: float, step: float) -> list[float]:
    grid = []
    n = 0
    while True:
        p = round(p_min + n * step, 12)
        if p > p_max + 1e-12:
            break
        grid.append(p)
        n += 1
    return grid


def sweep_d2(
    p_min: float = 6.0,
    p_max: float = _P_LIMIT_SWITCH,
    step: float = 0.01,
    cfg: QuadConfig = DEFAULT_QUAD_CONFIG,
) -> SweepResult:
    """Dimension-2 sweep interpolating between the sixth-power norm (with its
    1/3 degree-domination constant) and the sup norm."""
    if p_min < 6.0:
        raise ValueError(f"need p_min >= 6, got {p_min}")
    lam6_upper = lambda_power(NormKey(2, 6.0, 0), cfg=cfg).upper  # sixth power, degree 0
    sup1_upper = lambda_sup(2, 1).enclosure.upper
    grid = _ascending_grid(p_min, p_max, step)
    margins = []
    for p in grid:
        upper = (1.0 / 3.0) ** (1.0 / p) * lam6_upper ** (1.0 / p) * sup1_upper ** (1.0 - 6.0 / p)
        margins.append(lower_bound_L0(2, p) - upper)
    limit_margin = lambda_sup_zero_closed(2) - sup1_upper
    threshold = _threshold_from_grid(grid, margins)
    if limit_margin <= _MARGIN_FLOOR:
        threshold = None
    return SweepResult(
        d=2,
        regime=Regime.D2_SIX_INF,
        p_grid=grid,
        margins=margins,
        certified_threshold=threshold,
        published_threshold=PUBLISHED_THRESHOLDS[2],
        limit_margin=limit_margin,
    )


def sweep_step1(
    d: int,
    p_min: float = 4.0,
    p_max: float = _P_LIMIT_SWITCH,
    step: float = 0.01,
    cfg: QuadConfig = DEFAULT_QUAD_CONFIG,
) -> SweepResult:
    """Sweep on [4, p_max] interpolating between the fourth-power norm at
    degree one (upper estimate on [0, 40] plus tail) and the sup norm."""
    if not 3 <= d <= 10:
        raise ValueError(f"need 3 <= d <= 10, got {d}")
    if p_min < 4.0:
        raise ValueError(f"need p_min >= 4, got {p_min}")
    lam41_upper = lambda_power(NormKey(d, 4.0, 1), R=40.0, cfg=cfg).upper  # fourth power
    sup1_upper = lambda_sup(d, 1).enclosure.upper
    grid = _ascending_grid(p_min, p_max, step)
    margins = []
    for p in grid:
        upper = lam41_upper ** (1.0 / p) * sup1_upper ** (1.0 - 4.0 / p)
        margins.append(lower_bound_L0(d, p) - upper)
    limit_margin = lambda_sup_zero_closed(d) - sup1_upper
    threshold = _threshold_from_grid(grid, margins)
    if limit_margin <= _MARGIN_FLOOR:
        threshold = None
    return SweepResult(
        d=d,
        regime=Regime.STEP1_FOUR_INF,
        p_grid=grid,
        margins=margins,
        certified_threshold=threshold,
        published_threshold=PUBLISHED_THRESHOLDS[d],
        limit_margin=limit_margin,
    )


def sweep_step2(d: int, step: float = 0.01, cfg: QuadConfig = DEFAULT_QUAD_CONFIG) -> SweepResult:
    """Sweep on [p_st(d), 4] interpolating between the endpoint norm and the
    fourth-power norm, both at degree one with truncated-plus-tail uppers.

    The grid is anchored at p = 4 and descends, so it shares the seam point
    with the step-1 grid and hits the published thresholds exactly.
    """
    if not 4 <= d <= 8:
        raise ValueError(f"need 4 <= d <= 8, got {d}")
    pst = stein_tomas_exponent(d)
    lam41_upper = lambda_power(NormKey(d, 4.0, 1), R=40.0, cfg=cfg).upper
    lampst1_upper = lambda_power(NormKey(d, pst, 1), R=50.0, cfg=cfg).upper
    grid = []
    n = 0
    while True:
        p = round(4.0 - n * step, 12)
        if p < pst - 1e-12:
            break
        grid.append(p)
        n += 1
    if abs(grid[-1] - pst) > 1e-12:
        grid.append(pst)
    grid.reverse()
    margins = []
    for p in grid:
        theta = (4.0 / p) * (p - pst) / (4.0 - pst)
        upper = lampst1_upper ** ((1.0 - theta) / pst) * lam41_upper ** (theta / 4.0)
        margins.append(lower_bound_L0(d, p) - upper)
    threshold = _threshold_from_grid(grid, margins)
    return SweepResult(
        d=d,
        regime=Regime.STEP2_PST_FOUR,
        p_grid=grid,
        margins=margins,
        certified_threshold=threshold,
        published_threshold=PUBLISHED_THRESHOLDS[d],
    )


def p0_report(d: int, step: float = 0.01, cfg: QuadConfig = DEFAULT_QUAD_CONFIG) -> tuple[float, list[SweepResult]]:
    """Combined certified threshold for one dimension, with the sweeps used.

    Stitches the two interpolation regimes at the shared seam p = 4 for the
    middle dimensions; raises if any constituent sweep fails to certify.
    """
    if not 2 <= d <= 10:
        raise ValueError(f"need 2 <= d <= 10, got {d}")
    if d == 2:
        res = sweep_d2(step=step, cfg=cfg)
        results = [res]
        threshold = res.certified_threshold
    elif d in (3, 9, 10):
        res = sweep_step1(d, step=step, cfg=cfg)
        results = [res]
        threshold = res.certified_threshold
    else:
        res1 = sweep_step1(d, step=step, cfg=cfg)
        res2 = sweep_step2(d, step=step, cfg=cfg)
        results = [res1, res2]
        if res1.certified_threshold is None or res1.certified_threshold > 4.0:
            threshold = res1.certified_threshold
        else:
            threshold = res2.certified_threshold
    if threshold is None:
        raise RuntimeError(f"no certified threshold for d={d}")
    return threshold, results
