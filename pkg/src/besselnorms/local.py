"""Second-order local-maximality checks: the cross-norm integrals, the
Hölder chain bounding them by the degree-zero power, and the positivity of
the quadratic-form coefficients in the spherical-harmonic expansion of the
deficit.

The common (2 pi)^(p d / 2) prefactor cancels in every comparison made
here, so all quantities are the normalized radial integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .hierarchy import ClaimId, VerificationRecord
from .norms import (
    NormKey,
    Status,
    best_k,
    default_radius,
    lambda_finite,
    lambda_power,
    lambda_sup_zero_closed,
)
from .quadrature import (
    DEFAULT_QUAD_CONFIG,
    Enclosure,
    QuadConfig,
    cross_tail_bound,
    integrate_cross_term,
)

__all__ = [
    "DeficitCoefficients",
    "cross_norm",
    "deficit_coefficients",
    "verify_holder_chain",
    "verify_second_order_positivity",
    "extension_constant",
]

_BEST_K_DEPTH = 6


@dataclass(frozen=True)
class DeficitCoefficients:
    """Worst-case-rounded quadratic coefficients for one degree k."""

    d: int
    p: float
    k: int
    cross_norm: Enclosure
    lambda0_p: Enclosure
    coeff_real_part: float
    coeff_modulus: float


def cross_norm(
    d: int, p: float, k: int, R: float | None = None, cfg: QuadConfig = DEFAULT_QUAD_CONFIG
) -> Enclosure:
    """Enclosure of the cross integral M(k): truncated part plus tail bound."""
    R = default_radius(d, k) if R is None else R
    return integrate_cross_term(d, p, k, R, cfg).with_tail(cross_tail_bound(d, p, k, R))


def deficit_coefficients(
    d: int, p: float, k: int, R: float | None = None, cfg: QuadConfig = DEFAULT_QUAD_CONFIG
) -> DeficitCoefficients:
    """Quadratic deficit coefficients for degree k >= 1 under worst-case ends.

    The real-part group carries the sign flip (-1)^k of the degree; the
    modulus group does not.  Both are evaluated at the enclosure ends that
    minimize them, so positivity survives the rounding.
    """
    if k < 1:
        raise ValueError(f"deficit coefficients are defined for k >= 1, got {k}")
    m = cross_norm(d, p, k, R, cfg)
    lam0p = lambda_power(NormKey(d, p, 0), R, cfg)
    signed_m_worst = m.upper if k % 2 == 0 else -m.lower
    coeff_real = (p * (p - 2.0) / 4.0) * (lam0p.lower - signed_m_worst)
    coeff_mod = (p / 4.0) * (lam0p.lower - m.upper)
    return DeficitCoefficients(
        d=d, p=p, k=k, cross_norm=m, lambda0_p=lam0p,
        coeff_real_part=coeff_real, coeff_modulus=coeff_mod,
    )


def _argmax_zero_certified(d: int, p: float, cfg: QuadConfig) -> bool:
    result = best_k(d, p, _BEST_K_DEPTH, cfg=cfg)
    return result.status is Status.PASS and result.argmax_k == 0


def verify_holder_chain(
    d: int, p: float, k: int, R: float | None = None, cfg: QuadConfig = DEFAULT_QUAD_CONFIG
) -> VerificationRecord:
    """Check M(k) < L0^(p-2) Lk^2 < L0^p with enclosure-separated strictness,
    where L0, Lk are the degree-0 and degree-k norms."""
    record = VerificationRecord(
        claim_id=ClaimId.HOLDER_CHAIN, params={"d": d, "p": p, "k": k}, status=Status.PASS
    )
    if not _argmax_zero_certified(d, p, cfg):
        record.status = Status.INCONCLUSIVE
        record.notes.append("hypothesis not certified: argmax over degrees is not settled at 0")
        return record
    record.notes.append("hypothesis certified: degree 0 maximizes the norm")

    m = cross_norm(d, p, k, R, cfg)
    lam0 = lambda_finite(NormKey(d, p, 0), R, cfg).enclosure
    lamk = lambda_finite(NormKey(d, p, k), R, cfg).enclosure
    lam0p = lambda_power(NormKey(d, p, 0), R, cfg)
    product = Enclosure(
        lam0.lower ** (p - 2.0) * lamk.lower**2,
        lam0.upper ** (p - 2.0) * lamk.upper**2,
        truncation_bound=0.5
        * (lam0.upper ** (p - 2.0) * lamk.upper**2 - lam0.lower ** (p - 2.0) * lamk.lower**2),
    )
    record.add("cross norm M(k)", m)
    record.add("Holder product L0^(p-2) Lk^2", product)
    record.add("degree-0 power L0^p", lam0p)
    if not m.upper < product.lower:
        record.status = Status.INCONCLUSIVE
        record.notes.append(f"first link not separated: {m.upper} vs {product.lower}")
    if not product.upper < lam0p.lower:
        record.status = Status.INCONCLUSIVE
        record.notes.append(f"second link not separated: {product.upper} vs {lam0p.lower}")
    return record


def verify_second_order_positivity(
    d: int, p: float, K: int, R: float | None = None, cfg: QuadConfig = DEFAULT_QUAD_CONFIG
) -> VerificationRecord:
    """Check positivity of both quadratic coefficient groups for k = 1..K.

    Degree zero is excluded: there the perturbation renormalizes the constant
    itself and the coefficient question degenerates.
    """
    record = VerificationRecord(
        claim_id=ClaimId.SECOND_ORDER_POSITIVITY,
        params={"d": d, "p": p, "K": K},
        status=Status.PASS,
        k_explicit=K,
    )
    if not _argmax_zero_certified(d, p, cfg):
        record.status = Status.INCONCLUSIVE
        record.notes.append("hypothesis not certified: argmax over degrees is not settled at 0")
        return record
    record.notes.append("hypothesis certified: degree 0 maximizes the norm")
    record.notes.append("first-order vanishing assumed (constants are critical points)")

    for k in range(1, K + 1):
        coeffs = deficit_coefficients(d, p, k, R, cfg)
        record.add(f"coefficients at k={k}", coeffs)
        modulus_group = coeffs.lambda0_p.lower - coeffs.cross_norm.upper
        signed_worst = (
            coeffs.cross_norm.upper if k % 2 == 0 else -coeffs.cross_norm.lower
        )
        combined = (p - 2.0) * (coeffs.lambda0_p.lower - signed_worst) + modulus_group
        if not (modulus_group > 0.0 and combined > 0.0):
            record.status = Status.INCONCLUSIVE
            record.notes.append(
                f"k={k}: modulus group {modulus_group}, combined group {combined}"
            )
    return record


def extension_constant(
    d: int, p: float, R: float | None = None, cfg: QuadConfig = DEFAULT_QUAD_CONFIG
) -> Enclosure:
    """The sharp-candidate constant (2 pi)^(d/2) times the degree-zero norm."""
    factor = (2.0 * math.pi) ** (d / 2.0)
    if math.isinf(p):
        return Enclosure.point(lambda_sup_zero_closed(d)).scaled(factor)
    return lambda_finite(NormKey(d, p, 0), R, cfg).enclosure.scaled(factor)
