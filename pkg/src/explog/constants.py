"""Limiting constants: moment integrals, median limits and closed forms.

The largest-component moments are

    LG_a(r, h) = Gamma(a+1) a^(r-1) / (Gamma(a+h) (r-1)!)
                 * int_0^inf x^(h-1) E(x)^(r-1) exp(-a E(x) - x) dx

and the smallest-component ones, for permutations,

    SG_P(r, 1) = e^-gamma / r!
    SG_P(r, h) = 1 / ((h-1)! (r-1)!) * int_0^inf x^(h-1) exp(E(x) - x) dx,   h >= 2

with ``SG_D = e * SG_P`` for derangements.  The median limit ``x`` solves
``a int_x^1 (1-y)^(a-1) / y dy = 1/2``.

Integrals over ``(0, inf)`` are split at 1.  On ``(0, 1]`` the substitution
``x = exp(-u)`` turns the logarithmic behaviour of ``E`` at the origin into
exponential decay in ``u``; both halves then go through :func:`exp_sinh`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import gmpy2
from gmpy2 import mpfr

from .catalog import StructureSpec, get_structure
from .errors import UnsupportedStructureError
from .formatting import format_fixed, format_significant
from .quadrature import exp_sinh, tanh_sinh
from .special import euler_gamma, exp_integral, lambert_w_principal, solve_xi

__all__ = [
    "ConstantResult",
    "g_largest",
    "g_smallest",
    "median_limit",
    "median_closed_form",
    "derangement_limits_from_kappa",
    "richardson_limit",
    "estimate_kappa",
    "limit_summary",
    "EMPIRICAL_LIMITS",
]

DEFAULT_PRECISION = 128


@dataclass(frozen=True)
class ConstantResult:
    name: str
    value: mpfr
    error_estimate: mpfr
    method: str  # quadrature | closed-form | root-find | empirical
    quantity: str = ""  # what the constant is the limit of, e.g. "L-mean"

    def __float__(self) -> float:
        return float(self.value)

    def digits(self, count: int = 20) -> str:
        """Value cut (not rounded) to ``count`` significant digits, as tabulated.

        Empirical limits are only known to two decimals and print as such.
        """
        if self.method == "empirical":
            return format_fixed(self.value, 2)
        return format_significant(self.value, count, truncate=True)

    def format(self, digits: int = 20) -> str:
        head = f"{self.quantity}: " if self.quantity else ""
        return (f"{head}{self.name} = {self.digits(digits)}"
                f"  (+/- {float(self.error_estimate):.1e}, {self.method})")


def _as_fraction(a) -> Fraction:
    a = Fraction(a)
    if a <= 0:
        raise ValueError(f"exp-log parameter must be positive, got {a}")
    return a


def _mp(q: Fraction) -> mpfr:
    return mpfr(gmpy2.mpq(q.numerator, q.denominator))


def _context(tol: float, precision: int):
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    bits = max(precision, int(-math.log2(tol)) + 40)
    return gmpy2.context(gmpy2.get_context(), precision=bits), bits


def _half_line(integrand, tol):
    """``int_0^inf integrand`` split at ``x = 1``; returns ``(value, error)``."""
    near, err_near = exp_sinh(lambda u: gmpy2.exp(-u) * integrand(gmpy2.exp(-u)), 0, tol / 4)
    far, err_far = exp_sinh(lambda v: integrand(1 + v), 0, tol / 4)
    return near + far, err_near + err_far


def g_largest(a, r: int, h: int, tol: float = 1e-12, precision: int = DEFAULT_PRECISION) -> ConstantResult:
    """``LG_a(r, h)``, the scaled ``h``-th moment of the ``r``-th largest component."""
    a = _as_fraction(a)
    if r < 1 or h < 1:
        raise ValueError("rank and height must be positive")
    ctx, bits = _context(tol, precision)
    with ctx:
        am = _mp(a)

        def integrand(x):
            e = exp_integral(x, bits)
            return x ** (h - 1) * e ** (r - 1) * gmpy2.exp(-am * e - x)

        integral, err = _half_line(integrand, tol)
        pref = gmpy2.gamma(am + 1) * am ** (r - 1) / (gmpy2.gamma(am + h) * math.factorial(r - 1))
        value, err = pref * integral, abs(pref) * err
    return ConstantResult(f"_L G_{a}({r},{h})", value, err, "quadrature")


def g_smallest(variant: str, r: int, h: int, tol: float = 1e-12,
               precision: int = DEFAULT_PRECISION) -> ConstantResult:
    """``SG_P(r, h)`` (permutations) or ``SG_D(r, h) = e * SG_P(r, h)`` (derangements)."""
    variant = variant.upper()
    if variant not in ("P", "D"):
        raise ValueError("variant must be 'P' or 'D'")
    if r < 1 or h < 1:
        raise ValueError("rank and height must be positive")
    ctx, bits = _context(tol, precision)
    with ctx:
        if h == 1:
            value = gmpy2.exp(-euler_gamma()) / math.factorial(r)
            err, method = mpfr(2) ** (-bits + 4) * value, "closed-form"
        else:
            def integrand(x):
                return x ** (h - 1) * gmpy2.exp(exp_integral(x, bits) - x)

            integral, err = _half_line(integrand, tol)
            scale = mpfr(1) / (math.factorial(h - 1) * math.factorial(r - 1))
            value, err, method = scale * integral, scale * err, "quadrature"
        if variant == "D":
            e = gmpy2.exp(mpfr(1))
            value, err = e * value, e * err
    return ConstantResult(f"_S G_{variant}({r},{h})", value, err, method)


def _median_mass(a: mpfr, x: mpfr, tol):
    # a int_x^1 (1-y)^(a-1)/y dy with z = 1 - y; the z^(a-1) end is singular for a < 1.
    return tanh_sinh(lambda z: a * z ** (a - 1) / (1 - z), 0, 1 - x, tol)


def median_limit(a, tol: float = 1e-12, precision: int = DEFAULT_PRECISION) -> ConstantResult:
    """Root ``x`` of ``a int_x^1 (1-y)^(a-1)/y dy = 1/2`` by bracketed Newton.

    The derivative of the left side is ``-a (1-x)^(a-1) / x`` in closed
    form, so every Newton step costs one quadrature.
    """
    a_frac = _as_fraction(a)
    ctx, bits = _context(tol, precision)
    with ctx:
        am = _mp(a_frac)
        quad_tol = mpfr(2) ** (-(bits - 24))
        half = mpfr(1) / 2
        lo, hi = mpfr(0), mpfr(1)  # mass(lo+) = inf > 1/2 > 0 = mass(1)
        x = half
        step = mpfr(1)
        quad_err = mpfr(0)
        for _ in range(200):
            mass, quad_err = _median_mass(am, x, quad_tol)
            value = mass - half
            if value > 0:
                lo = x
            else:
                hi = x
            slope = -am * (1 - x) ** (am - 1) / x
            candidate = x - value / slope
            if not lo < candidate < hi:
                candidate = (lo + hi) / 2
            step = abs(candidate - x)
            x = candidate
            if step <= mpfr(2) ** (-(bits - 16)):
                break
        slope = am * (1 - x) ** (am - 1) / x
        err = step + quad_err / slope
    return ConstantResult(f"median_limit(a={a_frac})", x, err, "root-find")


def median_closed_form(a, precision: int = DEFAULT_PRECISION) -> mpfr:
    """Closed forms of the median limit for ``a`` in ``{1/2, 1, 3/2, 2}``."""
    a = _as_fraction(a)
    with gmpy2.context(gmpy2.get_context(), precision=precision):
        e = gmpy2.exp(mpfr(1))
        if a == Fraction(1, 2):
            return 4 * e / (1 + e) ** 2
        if a == 1:
            return 1 / gmpy2.sqrt(e)
        if a == Fraction(3, 2):
            return 1 / gmpy2.cosh(solve_xi(precision)) ** 2
        if a == 2:
            return -lambert_w_principal(-gmpy2.exp(mpfr(-5) / 4), precision)
    raise ValueError(f"no closed form known for a = {a}")


def derangement_limits_from_kappa(kappa, precision: int = DEFAULT_PRECISION) -> tuple[mpfr, mpfr]:
    """Smallest-cycle limits for colored derangements from ``kappa``.

    Colored permutations put mass ``e^-2`` on the derangement subset, so
    ``mean_D e^-2 + (1 - e^-2) ~ kappa`` and the variance scale becomes
    ``e^(2 - 2 gamma)``.
    """
    with gmpy2.context(gmpy2.get_context(), precision=precision):
        kappa = mpfr(kappa)
        if not kappa >= 1:
            raise ValueError("kappa must be at least 1")
        w = gmpy2.exp(mpfr(-2))
        mean_limit = (kappa - 1 + w) / w
        variance_scale = gmpy2.exp(2 - 2 * euler_gamma())
    return mean_limit, variance_scale


def richardson_limit(points: Sequence[tuple[int, object]], precision: int = DEFAULT_PRECISION
                     ) -> tuple[mpfr, mpfr]:
    """Extrapolate ``value(n)`` to ``n -> inf`` assuming a power series in ``1/n``.

    Neville's scheme at ``1/n = 0``; the error bar is the change contributed
    by the highest order.  Needs at least two points.
    """
    if len(points) < 2:
        raise ValueError("need at least two points")
    with gmpy2.context(gmpy2.get_context(), precision=precision):
        xs = [mpfr(1) / n for n, _ in points]
        ps = [mpfr(v) for _, v in points]
        lower = None
        for level in range(1, len(xs)):
            lower = ps[0]
            ps = [
                (xs[i + level] * ps[i] - xs[i] * ps[i + 1]) / (xs[i + level] - xs[i])
                for i in range(len(ps) - 1)
            ]
        return ps[0], abs(ps[0] - lower)


def estimate_kappa(rows: Sequence[tuple[int, object]]) -> ConstantResult:
    """Empirical ``kappa`` from colored-permutation mean smallest cycles.

    ``rows`` holds ``(n, mean)`` pairs, typically ``n = 1000..4000``.  The
    result is an extrapolation with an error bar, not a proven value.
    """
    value, err = richardson_limit(sorted(rows))
    return ConstantResult("kappa", value, err, "empirical")


# Limits known only to two or three printed digits; the error bar is one unit
# in the last printed place.
EMPIRICAL_LIMITS: dict[str, dict[str, str]] = {
    "colored-perms": {"S-mean": "1.29"},
    "colored-derangements": {"S-mean": "3.13"},
    "colored-mappings": {"S-mean": "2.61", "S-variance": "6.50"},
    "ev-perms": {"S-mean": "2.06", "S-variance": "1.40"},
    "od-perms": {
        "S-mean (n even)": "0.55",
        "S-mean (n odd)": "1.50",
        "S-variance (n even)": "0.12",
        "S-variance (n odd)": "1.27",
    },
}


def _empirical(structure: str, label: str, precision: int, tag: str = "") -> ConstantResult:
    value = EMPIRICAL_LIMITS[structure][label]
    quantity = f"{label} [{tag}]" if tag else label
    return ConstantResult("empirical", mpfr(value, precision), mpfr("0.01", precision), "empirical",
                          quantity)


def _closed(quantity: str, name: str, value: mpfr, precision: int) -> ConstantResult:
    return ConstantResult(name, value, mpfr(2) ** (-precision + 4) * abs(value), "closed-form",
                          quantity)


def _labelled(quantity: str, item: ConstantResult) -> ConstantResult:
    return replace(item, quantity=quantity)


def _variance_limit(quantity: str, second: ConstantResult, first: ConstantResult) -> ConstantResult:
    value = second.value - first.value ** 2
    err = second.error_estimate + 2 * abs(first.value) * first.error_estimate
    return ConstantResult(f"{second.name} - {first.name}^2", value, err, "quadrature", quantity)


def limit_summary(spec: StructureSpec | str, tol: float = 1e-12,
                  precision: int = DEFAULT_PRECISION) -> list[ConstantResult]:
    """Every known limiting constant of one structure family.

    Largest-component limits are always computed.  Smallest-component limits
    are computed where a closed form or integral exists and otherwise
    returned as ``empirical`` entries carrying the printed digits.
    """
    spec = get_structure(spec)
    if spec.a is None:
        raise UnsupportedStructureError(f"{spec.name}: exp-log parameter is unknown")
    a = spec.a
    out: list[ConstantResult] = []
    with gmpy2.context(gmpy2.get_context(), precision=precision):
        m1 = g_largest(a, 1, 1, tol, precision)
        m2 = g_largest(a, 1, 2, tol, precision)
        out.append(_labelled("L-mean", m1))
        out.append(_variance_limit("L-variance", m2, m1))
        med = median_limit(a, tol, precision)
        out.append(_labelled("L-median", med))

        gamma = euler_gamma()
        name = spec.name
        if name == "rounds":
            out.append(_closed("S-mean", "e^-gamma", gmpy2.exp(-gamma), precision))
            sv = g_smallest("P", 1, 2, tol, precision)
            out.append(_labelled("S-variance", sv))
        elif name == "rounds-variant":
            out.append(_closed("S-mean", "e^(1-gamma)", gmpy2.exp(1 - gamma), precision))
            sv = g_smallest("D", 1, 2, tol, precision)
            out.append(_labelled("S-variance", sv))
        elif name == "colored-perms":
            out.append(_empirical(name, "S-mean", precision))
            out.append(_closed("S-variance", "e^(-2gamma)", gmpy2.exp(-2 * gamma), precision))
        elif name == "colored-derangements":
            out.append(_empirical(name, "S-mean", precision))
            out.append(_closed("S-variance", "e^(2-2gamma)", gmpy2.exp(2 - 2 * gamma), precision))
        elif name == "colored-mappings":
            out.append(_empirical(name, "S-mean", precision))
            out.append(_empirical(name, "S-variance", precision))
            # Components left after removing the largest one.
            r1 = g_largest(a, 2, 1, tol, precision)
            r2 = g_largest(a, 2, 2, tol, precision)
            out.append(_labelled("L2-mean", r1))
            out.append(_variance_limit("L2-variance", r2, r1))
        elif name in ("ev-perms", "od-perms"):
            # One joint display covers both parity families, so both report all of it.
            for family in ("ev-perms", "od-perms"):
                tag = "EV" if family == "ev-perms" else "OD"
                for label in EMPIRICAL_LIMITS[family]:
                    out.append(_empirical(family, label, precision, tag))
    return out
