from fractions import Fraction

import gmpy2
import mpmath
import pytest
from gmpy2 import mpfr

from explog.constants import (
    EMPIRICAL_LIMITS,
    ConstantResult,
    derangement_limits_from_kappa,
    estimate_kappa,
    g_largest,
    g_smallest,
    limit_summary,
    median_closed_form,
    median_limit,
    richardson_limit,
)
from explog.errors import UnsupportedStructureError

mpmath.mp.dps = 40
A_VALUES = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)]


def mp_g_largest(a, r, h):
    """Reference value of the largest-component moment via mpmath."""
    a = mpmath.mpf(a.numerator) / a.denominator

    def f(x):
        e = mpmath.e1(x)
        return x ** (h - 1) * e ** (r - 1) * mpmath.exp(-a * e - x)

    integral = mpmath.quad(f, [0, 1, mpmath.inf])
    return mpmath.gamma(a + 1) * a ** (r - 1) / (mpmath.gamma(a + h) * mpmath.factorial(r - 1)) * integral


@pytest.fixture(autouse=True)
def precision():
    with gmpy2.context(gmpy2.get_context(), precision=128):
        yield


@pytest.mark.parametrize("a", A_VALUES + [Fraction(1, 3), Fraction(5, 4)])
@pytest.mark.parametrize("r,h", [(1, 1), (1, 2), (2, 1)])
def test_g_largest_against_mpmath(a, r, h):
    got = g_largest(a, r, h, tol=1e-14)
    assert got.method == "quadrature"
    ref = mp_g_largest(a, r, h)
    assert abs(mpmath.mpf(str(got.value)) - ref) < mpmath.mpf("1e-14")


def test_g_smallest_closed_form_and_derangement_factor():
    p = g_smallest("P", 1, 1)
    assert p.method == "closed-form"
    assert abs(p.value - gmpy2.exp(-mpfr("0.5772156649015328606065120900824024310422"))) < mpfr("1e-30")
    e = gmpy2.exp(mpfr(1))
    for r, h in [(1, 1), (1, 2), (2, 2), (1, 3)]:
        sp = g_smallest("P", r, h)
        sd = g_smallest("D", r, h)
        assert abs(sd.value - e * sp.value) <= mpfr("1e-25") * sd.value


def test_g_smallest_against_mpmath():
    got = g_smallest("P", 1, 2, tol=1e-14)
    ref = mpmath.quad(lambda x: x * mpmath.exp(mpmath.e1(x) - x), [0, 1, mpmath.inf])
    assert abs(mpmath.mpf(str(got.value)) - ref) < mpmath.mpf("1e-14")


def test_second_largest_is_smaller():
    for a in A_VALUES:
        assert g_largest(a, 2, 1).value < g_largest(a, 1, 1).value


@pytest.mark.parametrize("a", A_VALUES)
def test_median_limit_matches_closed_form(a):
    numeric = median_limit(a, tol=1e-14)
    closed = median_closed_form(a)
    assert abs(numeric.value - closed) < mpfr("1e-14")
    assert numeric.method == "root-find"


def test_median_limit_decreases_in_a():
    values = [median_limit(a).value for a in A_VALUES]
    assert values == sorted(values, reverse=True)


def test_median_limit_general_a_against_mpmath():
    a = mpmath.mpf(5) / 4
    ref = mpmath.findroot(lambda x: a * mpmath.quad(lambda y: (1 - y) ** (a - 1) / y, [x, 1]) - 0.5, 0.5)
    got = median_limit(Fraction(5, 4), tol=1e-14).value
    assert abs(mpmath.mpf(str(got)) - ref) < mpmath.mpf("1e-14")


def test_median_identities():
    x = median_limit(2).value
    assert abs(-gmpy2.log(x) + x - mpfr(5) / 4) < mpfr("1e-12")
    x = median_limit(Fraction(3, 2)).value
    s = gmpy2.sqrt(1 - x)
    assert abs(gmpy2.atanh(s) - s - mpfr(1) / 6) < mpfr("1e-12")


def test_tighter_tolerance_agrees():
    loose = g_largest(1, 1, 1, tol=1e-10).value
    tight = g_largest(1, 1, 1, tol=1e-16).value
    assert abs(loose - tight) < mpfr("1e-10")


def test_argument_errors():
    with pytest.raises(ValueError):
        g_largest(0, 1, 1)
    with pytest.raises(ValueError):
        g_largest(1, 0, 1)
    with pytest.raises(ValueError):
        g_smallest("Q", 1, 1)
    with pytest.raises(ValueError):
        g_largest(1, 1, 1, tol=0)
    with pytest.raises(ValueError):
        median_closed_form(Fraction(1, 3))


def test_derangement_limits_from_kappa():
    mean, scale = derangement_limits_from_kappa(mpfr("1.29"))
    assert float(mean) == pytest.approx(3.14, abs=0.01)
    assert float(scale) == pytest.approx(2.329302, abs=1e-6)
    with pytest.raises(ValueError):
        derangement_limits_from_kappa(0.5)


def test_richardson_recovers_power_series():
    points = [(n, 3 + mpfr(2) / n - mpfr(5) / n ** 2) for n in (1000, 2000, 3000)]
    value, err = richardson_limit(points)
    assert abs(value - 3) < mpfr("1e-25")
    with pytest.raises(ValueError):
        richardson_limit(points[:1])
    kappa = estimate_kappa(points)
    assert kappa.method == "empirical" and kappa.name == "kappa"


def test_constant_result_formatting():
    item = ConstantResult("_L G_2(1,1)", g_largest(2, 1, 1).value, mpfr("1e-13"), "quadrature", "L-mean")
    assert item.digits(20) == "0.47563939666525000670"
    assert item.format().startswith("L-mean: _L G_2(1,1) = 0.47563939666525000670  (+/- 1.0e-13, quadrature)")
    assert float(item) == pytest.approx(0.4756393966652500)
    empirical = ConstantResult("empirical", mpfr("1.29"), mpfr("0.01"), "empirical")
    assert empirical.digits() == "1.29"


def test_limit_summary_contents():
    rounds = {c.quantity: c for c in limit_summary("rounds")}
    assert set(rounds) == {"L-mean", "L-variance", "L-median", "S-mean", "S-variance"}
    assert rounds["S-mean"].name == "e^-gamma"
    assert rounds["S-variance"].name == "_S G_P(1,2)"

    mappings = {c.quantity: c for c in limit_summary("colored-mappings")}
    assert mappings["S-mean"].method == mappings["S-variance"].method == "empirical"
    assert mappings["S-mean"].digits() == "2.61"
    assert mappings["S-variance"].digits() == "6.50"
    assert mappings["L2-mean"].name == "_L G_3/2(2,1)"

    od = [c for c in limit_summary("od-perms") if c.method == "empirical"]
    assert [c.digits() for c in od] == ["2.06", "1.40", "0.55", "1.50", "0.12", "1.27"]
    assert len(EMPIRICAL_LIMITS["od-perms"]) == 4

    with pytest.raises(UnsupportedStructureError):
        limit_summary("square-perms")
