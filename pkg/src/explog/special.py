"""Special functions: exponential integral, Lambert W, and the tanh root."""

from __future__ import annotations

import gmpy2
from gmpy2 import mpfr

__all__ = ["EULER_GAMMA", "euler_gamma", "exp_integral", "lambert_w_principal", "solve_xi"]

EULER_GAMMA = "0.5772156649015328606065120900824024310422"

# Below this argument the power series is used, above it the continued fraction.
SERIES_CUTOFF = mpfr("1.2")

_GUARD_BITS = 32


def euler_gamma() -> mpfr:
    """Euler's constant at the current context precision (40-digit literal)."""
    return mpfr(EULER_GAMMA)


def _series(x: mpfr) -> mpfr:
    # E(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    eps = mpfr(2) ** (-gmpy2.get_context().precision)
    term = mpfr(1)
    total = mpfr(0)
    k = 0
    while True:
        k += 1
        term = -term * x / k
        piece = term / k
        total += piece
        if abs(piece) <= eps * abs(total):
            break
    return -euler_gamma() - gmpy2.log(x) - total


def _continued_fraction(x: mpfr) -> mpfr:
    # Modified Lentz on E(x) = e^-x / (x+1 - 1/(x+3 - 4/(x+5 - ...)))
    eps = mpfr(2) ** (-gmpy2.get_context().precision)
    tiny = mpfr(2) ** (-gmpy2.get_context().precision * 4)
    b = x + 1
    c = 1 / tiny
    d = 1 / b
    h = d
    i = 0
    while True:
        i += 1
        an = -i * i
        b += 2
        d = 1 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1) <= eps:
            break
    return h * gmpy2.exp(-x)


def exp_integral(x, precision: int = 128) -> mpfr:
    """``E(x) = int_x^inf e^-t / t dt`` for ``x > 0``.

    Alternating power series up to ``x = 1.2`` and a modified-Lentz
    continued fraction beyond, both carried with 32 guard bits.
    """
    with gmpy2.context(gmpy2.get_context(), precision=precision + _GUARD_BITS):
        x = mpfr(x)
        if not x > 0:
            raise ValueError(f"exp_integral needs x > 0, got {x}")
        value = _series(x) if x <= SERIES_CUTOFF else _continued_fraction(x)
    return mpfr(value, precision)


def lambert_w_principal(z, precision: int = 128) -> mpfr:
    """Principal branch ``W(z)`` for ``-1/e < z < 0`` by Halley iteration."""
    with gmpy2.context(gmpy2.get_context(), precision=precision + _GUARD_BITS):
        z = mpfr(z)
        branch = -1 / gmpy2.exp(mpfr(1))
        if not branch < z < 0:
            raise ValueError(f"lambert_w_principal needs -1/e < z < 0, got {z}")
        if z < mpfr("-0.25"):
            # Series about the branch point in p = sqrt(2 (e z + 1)).
            p = gmpy2.sqrt(2 * (gmpy2.exp(mpfr(1)) * z + 1))
            w = -1 + p - p * p / 3 + 11 * p ** 3 / 72
        else:
            w = z * (1 - z)
        eps = mpfr(2) ** (-(precision + 8))
        for _ in range(100):
            ew = gmpy2.exp(w)
            f = w * ew - z
            wp1 = w + 1
            step = f / (ew * wp1 - (w + 2) * f / (2 * wp1))
            w -= step
            if abs(step) <= eps * (1 + abs(w)):
                break
    return mpfr(w, precision)


def solve_xi(precision: int = 128) -> mpfr:
    """Positive root of ``tanh(xi) = xi - 1/6`` (safeguarded Newton)."""
    with gmpy2.context(gmpy2.get_context(), precision=precision + _GUARD_BITS):
        sixth = mpfr(1) / 6

        def g(t):
            return gmpy2.tanh(t) - t + sixth

        lo, hi = mpfr("0.1"), mpfr(2)  # g(lo) > 0 > g(hi)
        xi = mpfr(1)
        eps = mpfr(2) ** (-(precision + 8))
        for _ in range(200):
            value = g(xi)
            if value > 0:
                lo = xi
            else:
                hi = xi
            slope = -gmpy2.tanh(xi) ** 2
            step = value / slope
            candidate = xi - step
            if not lo < candidate < hi:
                candidate = (lo + hi) / 2
            if abs(candidate - xi) <= eps:
                xi = candidate
                break
            xi = candidate
    return mpfr(xi, precision)
