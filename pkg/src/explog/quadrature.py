"""Double-exponential quadrature in ``mpfr`` arithmetic.

``tanh_sinh`` integrates over a finite interval and tolerates integrable
algebraic or logarithmic endpoint singularities.  ``exp_sinh`` integrates
over ``[a, inf)`` for integrands that decay at least exponentially.

Both halve the step until two successive levels agree to ``tol`` (absolute
when the integral is below one in magnitude, relative otherwise).  The
reported error is the last level difference, which for double-exponential
rules overstates the true error by a wide margin.
"""

from __future__ import annotations

from typing import Callable

import gmpy2
from gmpy2 import mpfr

from .errors import QuadratureError

__all__ = ["tanh_sinh", "exp_sinh"]

Integrand = Callable[[mpfr], mpfr]


def _half_pi() -> mpfr:
    return gmpy2.const_pi() / 2


def _negligible(term, total, eps) -> bool:
    return abs(term) <= eps * max(abs(total), mpfr(1))


def _levels(evaluate, t_lo, t_hi, h0, tol, max_level, label):
    """Run the level-doubling trapezoid in ``t`` over ``[t_lo, t_hi]``."""
    h = mpfr(h0)
    count = int((t_hi - t_lo) / h)
    total = sum((evaluate(t_lo + i * h) for i in range(count + 1)), mpfr(0))
    estimate = h * total
    err = None
    for _ in range(max_level):
        h /= 2
        count *= 2
        fresh = sum((evaluate(t_lo + i * h) for i in range(1, count, 2)), mpfr(0))
        total += fresh
        new = h * total
        err = abs(new - estimate)
        estimate = new
        if err <= tol * max(abs(estimate), mpfr(1)):
            return estimate, err
    raise QuadratureError(f"{label}: no convergence after {max_level} halvings "
                          f"(estimate {estimate}, last difference {err})", estimate, err)


def tanh_sinh(f: Integrand, a, b, tol: float = 1e-20, max_level: int = 12) -> tuple[mpfr, mpfr]:
    """Integrate ``f`` over ``[a, b]``; returns ``(value, error)``.

    Nodes that round onto an endpoint are dropped, so ``f`` is never called
    at ``a`` or ``b`` themselves.
    """
    a, b = mpfr(a), mpfr(b)
    if not b > a:
        raise ValueError("tanh_sinh needs a < b")
    width = b - a
    half_pi = _half_pi()
    prec = gmpy2.get_context().precision
    # Past this |u| the node sits within 2**-prec (relative) of an endpoint.
    t_max = gmpy2.asinh(prec * gmpy2.log(mpfr(2)) / half_pi)

    def evaluate(t):
        u = half_pi * gmpy2.sinh(t)
        e = gmpy2.exp(-2 * abs(u))
        near = e / (1 + e)  # distance to the closer endpoint, in units of width
        x = a + width * near if u < 0 else b - width * near
        if x <= a or x >= b:
            return mpfr(0)
        weight = 2 * width * half_pi * gmpy2.cosh(t) * near * (1 - near)
        return weight * f(x)

    return _levels(evaluate, -t_max, t_max, mpfr(1) / 2, tol, max_level, "tanh-sinh")


def exp_sinh(f: Integrand, a=0, tol: float = 1e-20, max_level: int = 12,
             t_cap: float = 6.0) -> tuple[mpfr, mpfr]:
    """Integrate ``f`` over ``[a, inf)``; returns ``(value, error)``.

    The upper end of the ``t`` range is found by walking outward until the
    weighted integrand is negligible, capped at ``t_cap``.
    """
    a = mpfr(a)
    half_pi = _half_pi()
    prec = gmpy2.get_context().precision
    eps = mpfr(2) ** (-prec)
    # Below t_lo the offset from a is under 2**-prec and the weight with it.
    t_lo = -gmpy2.asinh(prec * gmpy2.log(mpfr(2)) / half_pi)

    def evaluate(t):
        u = half_pi * gmpy2.sinh(t)
        offset = gmpy2.exp(u)
        x = a + offset
        if x <= a:
            return mpfr(0)
        return offset * half_pi * gmpy2.cosh(t) * f(x)

    h0 = mpfr(1) / 4
    scale = abs(evaluate(mpfr(0)))
    t_hi = mpfr(0)
    quiet = 0
    while t_hi < t_cap and quiet < 3:
        t_hi += h0
        quiet = quiet + 1 if _negligible(evaluate(t_hi), scale, eps) else 0
    # Land on the coarse grid anchored at t_lo.
    span = gmpy2.ceil((t_hi - t_lo) / h0)
    return _levels(evaluate, t_lo, t_lo + span * h0, h0, tol, max_level, "exp-sinh")
