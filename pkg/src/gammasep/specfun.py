"""
Scalar special functions used by the gamma-distribution metrics.

All functions are pure maps on Python floats with no caching:

* :func:`log_gamma`: ln Gamma(x)
* :func:`digamma`: Psi(x) = d/dx ln Gamma(x)
* :func:`reg_lower_inc_gamma`: P(k, x) = gamma(k, x) / Gamma(k)
* :func:`reg_upper_inc_gamma`: Q(k, x) = 1 - P(k, x)
* :func:`lambert_w0`, :func:`lambert_wm1`: the two real branches of W

plus log-argument variants of the Lambert-W branches for arguments whose
magnitude does not fit in a double.
"""

import math

from .errors import DomainError

__all__ = [
    "BRANCH_POINT",
    "BRANCH_CLAMP",
    "log_gamma",
    "digamma",
    "reg_lower_inc_gamma",
    "reg_upper_inc_gamma",
    "lambert_w0",
    "lambert_wm1",
    "lambert_w0_log",
    "lambert_wm1_log",
]

_EPS = 2.220446049250313e-16
_FPMIN = 1e-300
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

#: -1/e, the common branch point of W0 and W-1.
BRANCH_POINT = -math.exp(-1.0)
#: Arguments this far below -1/e are treated as rounding noise and clamped.
BRANCH_CLAMP = 1e-12
# distance from -1/e inside which both branches start from the branch series
_SERIES_WINDOW = 1e-4

_MAX_ITER_W = 64
_MAX_ITER_IGAM = 100_000


def _require_finite(name, x):
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")


# zeta(n) - 1 for n = 2..31, coefficients of the ln Gamma series about 2
_ZETA_MINUS_ONE = (
    0.6449340668482264, 0.2020569031595943, 0.08232323371113819,
    0.03692775514336993, 0.01734306198444914, 0.008349277381922827,
    0.00407735619794434, 0.0020083928260822143, 0.0009945751278180853,
    0.0004941886041194645, 0.0002460865533080483, 0.00012271334757848915,
    6.124813505870483e-05, 3.058823630702049e-05, 1.528225940865187e-05,
    7.637197637899763e-06, 3.81729326499984e-06, 1.908212716553939e-06,
    9.539620338727962e-07, 4.769329867878064e-07, 2.38450502727733e-07,
    1.1921992596531106e-07, 5.960818905125948e-08, 2.980350351465228e-08,
    1.4901554828365043e-08, 7.45071178983543e-09, 3.725334024788457e-09,
    1.862659723513049e-09, 9.313274324196682e-10, 4.656629065033784e-10,
)
_ONE_MINUS_EULER = 0.42278433509846713


def _log_gamma_near_two(z):
    # ln Gamma(2 + z) = (1 - euler) z + sum_{n>=2} (-1)^n (zeta(n) - 1) z^n / n, |z| <= 1/2
    total = 0.0
    for n in range(len(_ZETA_MINUS_ONE) + 1, 1, -1):
        total = z * (total + (-1) ** n * _ZETA_MINUS_ONE[n - 2] / n)
    return z * (_ONE_MINUS_EULER + total)


def log_gamma(x):
    """Natural log of the gamma function for positive real ``x``.

    On [0.5, 2.5] a power series about x = 2 keeps full relative precision
    through the zeros at 1 and 2; elsewhere the C library ``lgamma`` is
    used, whose relative error there stays near 1e-15.
    """
    x = float(x)
    _require_finite("x", x)
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    if 1.5 <= x <= 2.5:
        return _log_gamma_near_two(x - 2.0)
    if 0.5 <= x < 1.5:
        z = x - 1.0
        return _log_gamma_near_two(z) - math.log1p(z)
    return math.lgamma(x)


# Bernoulli coefficients B_2n / (2n) for the digamma asymptotic series
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x):
    """Digamma function Psi(x) for x > 0.

    Shifts the argument up to x >= 10 with Psi(x) = Psi(x + 1) - 1/x and
    then sums the asymptotic expansion
    ln x - 1/(2x) - sum_n B_2n / (2n x^2n).
    """
    x = float(x)
    _require_finite("x", x)
    if x <= 0.0:
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    shift = 0.0
    while x < 10.0:
        shift += 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    for coeff in reversed(_DIGAMMA_ASYMPTOTIC):
        tail = (tail + coeff) * inv2
    return math.log(x) - 0.5 / x - tail - shift


def _stirling_correction(k):
    # ln Gamma(k) - [(k - 1/2) ln k - k + ln sqrt(2 pi)], valid for k >= 10
    inv = 1.0 / k
    inv2 = inv * inv
    return inv * (
        1.0 / 12.0
        - inv2 * (1.0 / 360.0
                  - inv2 * (1.0 / 1260.0
                            - inv2 * (1.0 / 1680.0
                                      - inv2 * (1.0 / 1188.0
                                                - inv2 * (691.0 / 360360.0)))))
    )


def _log_igam_prefactor(k, x):
    """ln(x^k e^-x / Gamma(k)), stable for large k.

    For large k the direct form cancels terms of size k ln k; rewriting it
    around x = k with log1p keeps the absolute error near eps * |x - k|.
    """
    t = (x - k) / k
    if k < 10.0 or abs(t) > 0.5:
        return k * math.log(x) - x - log_gamma(k)
    return (k * (math.log1p(t) - t) + 0.5 * math.log(k) - _LN_SQRT_2PI
            - _stirling_correction(k))


def _inc_gamma_pq(k, x, name):
    """(P(k, x), Q(k, x)), each computed without cancellation on its own side."""
    k = float(k)
    x = float(x)
    _require_finite("k", k)
    if k <= 0.0:
        raise DomainError(f"{name} requires k > 0, got {k!r}")
    if math.isnan(x) or x < 0.0:
        raise DomainError(f"{name} requires x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0

    log_pre = _log_igam_prefactor(k, x)
    if x < k + 1.0:
        term = 1.0 / k
        total = term
        denom = k
        for _ in range(_MAX_ITER_IGAM):
            denom += 1.0
            term *= x / denom
            total += term
            if term < total * _EPS:
                break
        else:
            raise ArithmeticError(f"series for P({k}, {x}) did not converge")
        p = min(1.0, math.exp(log_pre) * total)
        return p, 1.0 - p

    # upper function by continued fraction (modified Lentz)
    b = x + 1.0 - k
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER_IGAM):
        an = -i * (i - k)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"continued fraction for Q({k}, {x}) did not converge")
    q = min(1.0, max(0.0, math.exp(log_pre) * h))
    return 1.0 - q, q


def reg_lower_inc_gamma(k, x):
    """Regularized lower incomplete gamma function P(k, x).

    Uses the power series for x < k + 1 and the modified Lentz continued
    fraction for the upper function otherwise; P = 1 - Q on that side.

    Parameters
    ----------
    k : float
        Shape, k > 0.
    x : float
        Upper integration limit, x >= 0 (``inf`` gives 1).

    Returns
    -------
    float
        Value in [0, 1].
    """
    return _inc_gamma_pq(k, x, "reg_lower_inc_gamma")[0]


def reg_upper_inc_gamma(k, x):
    """Regularized upper incomplete gamma function Q(k, x) = 1 - P(k, x).

    Computed directly in the tail, so values far below machine epsilon
    keep their relative precision.
    """
    return _inc_gamma_pq(k, x, "reg_upper_inc_gamma")[1]


def _check_w_arg(z):
    z = float(z)
    if math.isnan(z) or math.isinf(z):
        raise DomainError(f"Lambert W requires a finite argument, got {z!r}")
    if z < BRANCH_POINT - BRANCH_CLAMP:
        raise DomainError(f"Lambert W argument {z!r} is below -1/e")
    return z


def _branch_series(z, sign):
    # W = -1 + s p - p^2/3 + 11/72 s p^3 - 43/540 p^4, p = sqrt(2(ez + 1))
    p = math.sqrt(max(0.0, 2.0 * (math.e * z + 1.0)))
    return -1.0 + sign * p - p * p / 3.0 + sign * 11.0 / 72.0 * p ** 3 - 43.0 / 540.0 * p ** 4


def _halley(z, w):
    for _ in range(_MAX_ITER_W):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 4.0 * _EPS * (1.0 + abs(w)):
            break
    return w


def lambert_w0(z):
    """Principal branch W0(z) for real z >= -1/e.

    Arguments up to ``BRANCH_CLAMP`` below -1/e are clamped to the branch
    point and return -1.
    """
    z = _check_w_arg(z)
    if z <= BRANCH_POINT:
        return -1.0
    if z == 0.0:
        return 0.0
    if z - BRANCH_POINT <= _SERIES_WINDOW or z < 0.0:
        w = _branch_series(z, 1.0)
    elif z < 3.0:
        lz = math.log1p(z)
        w = lz * (1.0 - math.log1p(lz) / (2.0 + lz))
    elif z > 1e100:
        return lambert_w0_log(math.log(z))
    else:
        l1 = math.log(z)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    return _halley(z, w)


def lambert_wm1(z):
    """Lower branch W-1(z) for real z in [-1/e, 0)."""
    z = _check_w_arg(z)
    if z >= 0.0:
        raise DomainError(f"lambert_wm1 requires z < 0, got {z!r}")
    if z <= BRANCH_POINT:
        return -1.0
    if z > -1e-280:
        return lambert_wm1_log(math.log(-z))
    if z - BRANCH_POINT <= _SERIES_WINDOW or z < -0.25:
        w = _branch_series(z, -1.0)
    else:
        l1 = math.log(-z)
        l2 = math.log(-l1)
        w = l1 - l2 + l2 / l1
    return _halley(z, w)


def lambert_w0_log(log_z):
    """W0(exp(log_z)) for a positive argument given by its logarithm.

    Solves w + ln w = log_z by Newton's method, so arguments far beyond
    the double range are fine.
    """
    log_z = float(log_z)
    _require_finite("log_z", log_z)
    if log_z < 1.0:
        return lambert_w0(math.exp(log_z))
    w = log_z - math.log(log_z) + math.log(log_z) / log_z
    for _ in range(_MAX_ITER_W):
        dw = (w + math.log(w) - log_z) * w / (w + 1.0)
        w -= dw
        if abs(dw) <= 4.0 * _EPS * abs(w):
            break
    return w


def lambert_wm1_log(log_negz):
    """W-1(-exp(log_negz)) for log_negz < -1, i.e. argument in (-1/e, 0).

    Solves ln(-w) + w = log_negz with w < -1 by Newton's method.
    """
    log_negz = float(log_negz)
    _require_finite("log_negz", log_negz)
    if log_negz > -5.0:
        return lambert_wm1(-math.exp(log_negz))
    l2 = math.log(-log_negz)
    w = log_negz - l2 + l2 / log_negz
    for _ in range(_MAX_ITER_W):
        dw = (math.log(-w) + w - log_negz) * w / (w + 1.0)
        w -= dw
        if abs(dw) <= 4.0 * _EPS * abs(w):
            break
    return w
