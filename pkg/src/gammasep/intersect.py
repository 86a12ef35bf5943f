"""
Exact intersection points of two gamma densities.

Equating the two log densities gives

    (k_p - k_q) ln x - (1/theta_p - 1/theta_q) x = C,
    C = [ln Gamma(k_p) + k_p ln theta_p] - [ln Gamma(k_q) + k_q ln theta_q],

which is solved in closed form for each of four parameter cases. In the
general case (both shape and scale differ) it rearranges to
x exp(alpha x) = beta and hence x = W(alpha beta) / alpha, where W is a
real Lambert-W branch: W0 alone when alpha beta >= 0, W0 and W-1 when
-1/e < alpha beta < 0.

The trivial root at x = 0 is never reported.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .distribution import log_pdf
from .errors import NumericDomainError
from .specfun import (
    BRANCH_CLAMP,
    BRANCH_POINT,
    lambert_w0,
    lambert_w0_log,
    lambert_wm1,
    lambert_wm1_log,
    log_gamma,
)

__all__ = [
    "IntersectionCase",
    "GeneralCaseCoefficients",
    "IntersectionResult",
    "classify",
    "general_coefficients",
    "intersections",
    "verify_intersections",
]

# two general-case roots closer than this (relative) are one tangency
MERGE_RTOL = 1e-9
# |ln(alpha beta)| beyond which the argument is handled in log space
_LOG_SAFE = 700.0


class IntersectionCase(str, enum.Enum):
    IDENTICAL = "Identical"
    EQUAL_SHAPE_DISTINCT_SCALE = "EqualShapeDistinctScale"
    EQUAL_SCALE_DISTINCT_SHAPE = "EqualScaleDistinctShape"
    GENERAL = "General"


@dataclass(frozen=True)
class GeneralCaseCoefficients:
    """alpha, beta and their product for the Lambert-W case.

    ``beta`` and ``product`` are ``inf`` or 0 when they leave the double
    range; ``log_beta`` and ``log_abs_product`` are always finite.
    """

    alpha: float
    beta: float
    product: float
    log_beta: float
    log_abs_product: float


@dataclass(frozen=True)
class IntersectionResult:
    case: IntersectionCase
    points: Tuple[float, ...]
    tangent: bool = False
    coefficients: Optional[GeneralCaseCoefficients] = None


def classify(pair, rel_tol=1e-9):
    """Assign ``pair`` to one of the four intersection cases.

    Shapes and scales are compared separately with relative tolerance
    ``rel_tol``; near-equal parameters go to the degenerate closed forms.
    """
    p, q = pair.p, pair.q
    same_shape = math.isclose(p.shape, q.shape, rel_tol=rel_tol)
    same_scale = math.isclose(p.scale, q.scale, rel_tol=rel_tol)
    if same_shape and same_scale:
        return IntersectionCase.IDENTICAL
    if same_shape:
        return IntersectionCase.EQUAL_SHAPE_DISTINCT_SCALE
    if same_scale:
        return IntersectionCase.EQUAL_SCALE_DISTINCT_SHAPE
    return IntersectionCase.GENERAL


def _safe_exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def _log_norm_offset(pair):
    # C; written as a difference so swapping p and q negates it exactly
    p, q = pair.p, pair.q
    return ((log_gamma(p.shape) + p.shape * math.log(p.scale))
            - (log_gamma(q.shape) + q.shape * math.log(q.scale)))


def general_coefficients(pair):
    """alpha, beta and alpha*beta for a general-case pair.

    beta is built from its logarithm C / (k_p - k_q), so Gamma(k) theta^k
    is never formed directly.
    """
    p, q = pair.p, pair.q
    dk = p.shape - q.shape
    alpha = (p.scale - q.scale) / (dk * p.scale * q.scale)
    log_beta = _log_norm_offset(pair) / dk
    log_abs_product = math.log(abs(alpha)) + log_beta
    product = math.copysign(_safe_exp(log_abs_product), alpha)
    return GeneralCaseCoefficients(
        alpha=alpha,
        beta=_safe_exp(log_beta),
        product=product,
        log_beta=log_beta,
        log_abs_product=log_abs_product,
    )


def _polish(pair, x):
    """Newton steps on the log-density difference; keeps only improvements."""
    p, q = pair.p, pair.q
    dk = p.shape - q.shape
    dr = 1.0 / p.scale - 1.0 / q.scale
    best = x
    best_res = abs(log_pdf(p, x) - log_pdf(q, x))
    for _ in range(3):
        if best_res == 0.0:
            break
        g = log_pdf(p, best) - log_pdf(q, best)
        slope = dk / best - dr
        if slope == 0.0:
            break
        cand = best - g / slope
        if not (cand > 0.0 and math.isfinite(cand)):
            break
        res = abs(log_pdf(p, cand) - log_pdf(q, cand))
        if res >= best_res:
            break
        best, best_res = cand, res
    return best


def _general_points(coef):
    """Roots from the Lambert-W branches, as (points, tangent)."""
    alpha = coef.alpha
    if alpha > 0.0:
        if coef.log_abs_product < _LOG_SAFE:
            w = lambert_w0(coef.product)
        else:
            w = lambert_w0_log(coef.log_abs_product)
        if w == 0.0 or abs(w) < 1e-300:
            return [_safe_exp(coef.log_beta - w)], False
        return [w / alpha], False

    if coef.product < BRANCH_POINT - BRANCH_CLAMP:
        raise NumericDomainError(
            f"alpha*beta = {coef.product!r} lies below -1/e; no real intersection")
    if coef.product <= BRANCH_POINT:
        return [-1.0 / alpha], True

    # x = W/alpha = beta exp(-W); the second form survives a vanishing W0
    w0 = lambert_w0(coef.product)
    if abs(w0) < 1e-300:
        x0 = _safe_exp(coef.log_beta - w0)
    else:
        x0 = w0 / alpha
    if coef.log_abs_product > -_LOG_SAFE:
        wm1 = lambert_wm1(coef.product)
    else:
        wm1 = lambert_wm1_log(coef.log_abs_product)
    xm1 = wm1 / alpha
    return [x0, xm1], False


def intersections(pair):
    """All strictly positive x at which the densities of ``pair`` are equal.

    Returns
    -------
    IntersectionResult
        ``points`` ascending; empty for identical distributions, one point
        when only the shape or only the scale differs, one or two points
        in the general case (one with ``tangent=True`` at the branch point).

    Notes
    -----
    Roots that underflow to zero or overflow to infinity in double
    precision are dropped; both CDFs agree to machine precision there.
    """
    case = classify(pair)
    p, q = pair.p, pair.q
    coef = None
    tangent = False

    if case is IntersectionCase.IDENTICAL:
        return IntersectionResult(case, ())
    if case is IntersectionCase.EQUAL_SHAPE_DISTINCT_SCALE:
        k = 0.5 * (p.shape + q.shape)
        u = (p.scale - q.scale) / q.scale
        raw = [k * p.scale * math.log1p(u) / u]
    elif case is IntersectionCase.EQUAL_SCALE_DISTINCT_SHAPE:
        theta = 0.5 * (p.scale + q.scale)
        exponent = (log_gamma(p.shape) - log_gamma(q.shape)) / (p.shape - q.shape)
        raw = [theta * _safe_exp(exponent)]
    else:
        coef = general_coefficients(pair)
        raw, tangent = _general_points(coef)

    points = sorted(_polish(pair, x) for x in raw if x > 0.0 and math.isfinite(x))
    if len(points) == 2 and points[1] - points[0] <= MERGE_RTOL * points[1]:
        points = [0.5 * (points[0] + points[1])]
        tangent = True
    return IntersectionResult(case, tuple(points), tangent, coef)


def verify_intersections(pair, result):
    """Largest |ln p(x*) - ln q(x*)| over the reported points (0 if none)."""
    return max(
        (abs(log_pdf(pair.p, x) - log_pdf(pair.q, x)) for x in result.points),
        default=0.0,
    )
