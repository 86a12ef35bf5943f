"""Adaptive quadrature helper shared by the JS estimator and the oracles."""

import math

from scipy import integrate

from .errors import QuadratureError


def log_space_quad(func, x_lo, x_hi, breaks=(), quad_tol=1e-10):
    """Integrate ``func`` over [x_lo, x_hi] in the variable u = ln x.

    Returns ``(value, abserr)``; raises :class:`QuadratureError` when the
    error estimate is more than 100 times the tolerance.
    """
    u_lo, u_hi = math.log(x_lo), math.log(x_hi)
    u_breaks = sorted({math.log(b) for b in breaks if x_lo < b < x_hi})

    def integrand(u):
        x = math.exp(u)
        return func(x) * x

    value, abserr, *_ = integrate.quad(
        integrand, u_lo, u_hi, points=u_breaks or None,
        epsabs=quad_tol, epsrel=1e-10, limit=400, full_output=1,
    )
    if abserr > 100.0 * max(quad_tol, 1e-10 * abs(value)):
        raise QuadratureError(
            f"quadrature reached only {abserr:.3g} (requested {quad_tol:.3g})",
            achieved=abserr,
        )
    return value, abserr
