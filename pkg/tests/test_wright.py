import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from oracles import BESSEL_HALF_AT_1, BESSEL_MINUS_THREE_HALVES_AT_10
from wrightturan.series import coloured_partition_series, log_coeff, shifted_pochhammer_series
from wrightturan.wright import (
    PrecisionError,
    WrightProfile,
    bessel_asymp_coeff,
    bessel_I,
    growth_model,
    profile_coloured_partitions,
    profile_shifted_pochhammer,
    wright_estimate,
)

mpf = mpmath.mpf


def test_bessel_closed_forms():
    assert abs(bessel_I(mpf(1) / 2, 1) - BESSEL_HALF_AT_1) < 1e-15
    v = bessel_I(mpf(-3) / 2, 10)
    assert abs(v / BESSEL_MINUS_THREE_HALVES_AT_10 - 1) < 1e-14
    z = mpf(10)
    closed = mpmath.sqrt(2 / (mpmath.pi * z)) * (mpmath.sinh(z) - mpmath.cosh(z) / z)
    assert abs(v / closed - 1) < 1e-20


def test_bessel_small_argument():
    assert abs(bessel_I(0, mpf("1e-8")) - 1) < 1e-15
    assert bessel_I(2, mpf("1e-6")) < 1e-12


def test_bessel_errors():
    with pytest.raises(ValueError):
        bessel_I(0, 0)
    with pytest.raises(ValueError):
        bessel_I(0, -1)
    with pytest.raises(PrecisionError):
        bessel_I(mpf(1) / 3, 2, mode="asymptotic")
    with pytest.raises(ValueError):
        bessel_I(0, 1, mode="nope")


@pytest.mark.parametrize("v", [0, Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(-3, 2),
                               Fraction(1, 2) - Fraction(1, 3) + 1, Fraction(1, 2) - Fraction(2, 3) + 1,
                               Fraction(-7, 6), Fraction(-4, 3)])
@pytest.mark.parametrize("z", [30, 41, 60])
def test_series_and_asymptotic_overlap(v, z):
    vm = mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else mpf(v)
    s = bessel_I(vm, z, "series")
    a = bessel_I(vm, z, "asymptotic")
    assert abs(s / a - 1) < 1e-10
    assert abs(s / mpmath.besseli(vm, z) - 1) < 1e-20


@settings(max_examples=40, deadline=None)
@given(st.floats(-4, 4), st.floats(0.05, 80))
def test_bessel_against_mpmath(v, z):
    ours = bessel_I(v, z)
    ref = mpmath.besseli(v, z)
    assert abs(ours - ref) <= 1e-10 * abs(ref) + 1e-25


def test_asymptotic_coefficients():
    assert bessel_asymp_coeff(Fraction(7, 3), 0) == 1
    for v in (Fraction(0), Fraction(1, 3), Fraction(5, 2)):
        assert bessel_asymp_coeff(v, 1) == (4 * v * v - 1) / 8
    assert bessel_asymp_coeff(Fraction(1, 2), 2) == 0
    # a_k(v) = prod_{i<k} (4v^2 - (2i+1)^2) / (8^k k!)
    v = Fraction(2, 7)
    for k in range(6):
        prod = Fraction(1)
        for i in range(k):
            prod *= 4 * v * v - (2 * i + 1) ** 2
        assert bessel_asymp_coeff(v, k) == prod / (8**k * math.factorial(k))
    assert abs(bessel_asymp_coeff(mpf("0.3"), 2) - bessel_asymp_coeff(Fraction(3, 10), 2)) < 1e-25


def test_partition_profile():
    pr = profile_coloured_partitions(1, 1)
    assert abs(pr.A - mpmath.pi**2 / 6) < 1e-25 and pr.B == mpf(1) / 2 and pr.K == 1
    assert abs(pr.alphas[0] - 1 / mpmath.sqrt(2 * mpmath.pi)) < 1e-25
    pr2 = profile_coloured_partitions(2, 1)
    assert abs(pr2.A - mpmath.pi**2 / 3) < 1e-25 and pr2.B == 1
    assert abs(profile_coloured_partitions(3, 4).A - profile_coloured_partitions(3, 1).A / 4) < 1e-25
    assert abs(pr.kappa - (1 - 1 / mpmath.sqrt(2))) < 1e-25


def test_hardy_ramanujan_reduction():
    # with N = 1 the uniform main term behaves like exp(pi sqrt(2n/3)) / (4 n sqrt 3)
    pr = profile_coloured_partitions(1, 1)
    n = 10**6
    hr = mpmath.pi * mpmath.sqrt(mpf(2 * n) / 3) - mpmath.log(4 * n * mpmath.sqrt(3))
    assert abs(wright_estimate(pr, n).log_value - hr) < 2 / mpmath.sqrt(n)


def test_shifted_profile():
    g = profile_shifted_pochhammer(1, 2)
    assert g.B == 0 and abs(g.alphas[0] - 1 / mpmath.sqrt(2)) < 1e-25
    assert abs(g.A - mpmath.pi**2 / 12) < 1e-25
    assert profile_shifted_pochhammer(2, 3).B == mpf(2) / 3 - mpf(1) / 2
    assert profile_shifted_pochhammer(2, 3, convention="transcribed").B == mpf(1) / 2 - mpf(2) / 3
    with pytest.raises(ValueError):
        profile_shifted_pochhammer(1, 4)


def test_profile_validation_and_json(tmp_path):
    with pytest.raises(ValueError):
        WrightProfile(-1, 0, 1, (1,), 1)
    with pytest.raises(ValueError):
        WrightProfile(1, 0, 0, (1,), 1)
    with pytest.raises(ValueError):
        WrightProfile(1, 0, 1, (1,), 0)
    pr = profile_coloured_partitions(2, 3).with_alphas([1, mpmath.mpc(0.5, -0.25)])
    back = WrightProfile.from_json(pr.to_json())
    assert back.K == 3 and abs(back.A - pr.A) < 1e-15 and back.alphas[1] == mpmath.mpc(0.5, -0.25)
    pr.save(tmp_path / "p.json")
    assert WrightProfile.load(tmp_path / "p.json").B == pr.B


def test_estimate_errors():
    pr = profile_coloured_partitions(1, 1)
    with pytest.raises(ValueError):
        wright_estimate(pr, 0)
    with pytest.raises(ValueError):
        wright_estimate(pr, 10, terms=2)
    est = wright_estimate(pr, 10)
    assert est.terms == 1 and est.error_exponent == -(1 + pr.B + 1) / 2
    assert mpmath.isfinite(wright_estimate(pr, 1).log_value)


@pytest.fixture(scope="module")
def partitions():
    return coloured_partition_series(1, 1, 10000)


def test_partition_estimate_at_100(partitions):
    est = wright_estimate(profile_coloured_partitions(1, 1), 100)
    assert abs(est.log_value / log_coeff(partitions, 100) - 1) < 0.005


def test_second_term_helps(partitions):
    pr = profile_coloured_partitions(1, 1)
    # modular transformation gives alpha_j = (2 pi)^(-1/2) (-1/24)^j / j!
    pr2 = pr.with_alphas([pr.alphas[0], -pr.alphas[0] / 24])
    r1 = abs(mpmath.exp(wright_estimate(pr2, 10000, 1).log_value - log_coeff(partitions, 10000)) - 1)
    r2 = abs(mpmath.exp(wright_estimate(pr2, 10000, 2).log_value - log_coeff(partitions, 10000)) - 1)
    assert r2 < r1 and r2 < 1e-6


def test_odd_parts_trend():
    b = shifted_pochhammer_series(1, 2, 10000)
    pr = profile_shifted_pochhammer(1, 2)
    errs = [abs(mpmath.exp(wright_estimate(pr, n).log_value - log_coeff(b, n)) - 1) for n in (1000, 10000)]
    assert errs[1] < errs[0]


def test_negative_alpha_sign_handling():
    pr = WrightProfile(mpmath.pi**2 / 6, mpf(1) / 2, 1, (1, -mpf(1) / 2), 1)
    both = wright_estimate(pr, 50, 2).value
    a0 = wright_estimate(pr, 50, 1).value
    a1 = pr.alphas[1] * (pr.A / 50) ** ((1 + pr.B + 1) / 2) * bessel_I(-(1 + pr.B + 1), 2 * mpmath.sqrt(pr.A * 50))
    assert abs(both - (a0 + a1)) < 1e-20 * a0


def test_growth_model():
    pr = profile_coloured_partitions(1, 1)
    gp = growth_model(pr, "transcribed")
    assert abs(gp.width(100) - mpmath.sqrt(2) * (mpmath.pi**2 / 6) ** 0.25 * mpf(100) ** -0.75) < 1e-25
    gd = growth_model(pr)
    assert abs(gd.width(100) * 2 * mpmath.sqrt(2) - gp.width(100)) < 1e-25
    for g in (gp, gd):
        assert g.drift(10**8) < 1e-3 and g.width(10**8) < 1e-5 and g.width(5) > 0
        assert abs(g.higher(1, 37) * 37 - (-2 * pr.B - 3) / 4) < 1e-25
    assert abs(gd.drift(100) - (mpmath.sqrt(pr.A / 100) - (2 * pr.B + 3) / 400)) < 1e-25
    with pytest.raises(ValueError):
        growth_model(pr, "other")


def test_growth_model_tracks_log_ratios(partitions):
    # log(C(n+k)/C(n)) - (A(n) k - delta(n)^2 k^2) should be small for the derived model
    g = growth_model(profile_coloured_partitions(1, 1))
    n = 5000
    for k in (1, 2, 3):
        lhs = log_coeff(partitions, n + k) - log_coeff(partitions, n)
        model = g.drift(n) * k - g.width(n) ** 2 * k * k
        # the first neglected correction is of order n^(-3/2)
        assert abs(lhs - model) < 2 * n ** -1.5
        transcribed = growth_model(profile_coloured_partitions(1, 1), "transcribed")
        assert abs(lhs - (transcribed.drift(n) * k - transcribed.width(n) ** 2 * k * k)) > 1e-4
