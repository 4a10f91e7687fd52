r"""Special functions and numeric checks of the Euler-Maclaurin expansion
for ``Log G_{a,p}`` near roots of unity.

The summand is ``f(u) = e^{-au} / (u (1 - e^{-pu}))`` with Laurent expansion
``f(u) = sum_{n>=-2} d(n) u^n``, ``d(n-2) = B_n(1 - a/p) p^(n-1) / n!``.
For ``q = zeta_p^h e^{-z}`` one has

.. math::
    \operatorname{Log} G_{a,p}(q) = \sum_{\alpha=1}^{p} \zeta_p^{h a \alpha}\,
        z \sum_{\ell \ge 0} f\bigl(pz(\ell + \alpha/p)\bigr),

and each inner sum is expanded with Hurwitz zeta values, digamma values and
the regularized integral ``I*``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from numbers import Rational

import mpmath
from mpmath import mpf

from .checks import Check
from .series import ProductSpec

__all__ = [
    "hurwitz_zeta",
    "digamma",
    "bernoulli_number",
    "bernoulli_poly",
    "lerch_phi_unit",
    "lerch_real_part_formula",
    "digamma_rootofunity_sum",
    "digamma_rootofunity_closed",
    "IStar",
    "i_star",
    "LaurentData",
    "laurent_data",
    "fit_laurent_leading",
    "EMResult",
    "em_verify_logG",
    "major_arc_constant",
    "em_report_csv",
    "specfun_checks",
]


# -- Bernoulli ---------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """``B_n`` with ``B_1 = -1/2``, from ``sum_{k<=n} binom(n+1, k) B_k = 0``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    acc = sum(comb(n + 1, k) * bernoulli_number(k) for k in range(n))
    return -acc / (n + 1)


def bernoulli_poly(n: int, x):
    """``B_n(x) = sum_k binom(n, k) B_k x^(n-k)``; exact for rational x."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if isinstance(x, Rational):
        x = Fraction(x)
        acc = Fraction(0)
    else:
        x = mpmath.mpmathify(x)
        acc = mpf(0)
    for k in range(n + 1):
        b = bernoulli_number(k)
        if b:
            coef = comb(n, k) * b
            if not isinstance(x, Fraction):
                coef = mpf(coef.numerator) / coef.denominator
            acc += coef * x ** (n - k)
    return acc


def _bern_mpf(n: int):
    b = bernoulli_number(n)
    return mpf(b.numerator) / b.denominator


# -- Hurwitz zeta and digamma ----------------------------------------------

def hurwitz_zeta(s, a):
    """``zeta(s, a) = sum_{k>=0} (k + a)^(-s)`` for real s > 1, a > 0.

    A short head sum followed by the Euler-Maclaurin tail.
    """
    s = mpf(s)
    a = mpf(a)
    if s <= 1:
        raise ValueError(f"hurwitz_zeta needs s > 1, got {s}")
    if a <= 0:
        raise ValueError(f"hurwitz_zeta needs a > 0, got {a}")
    dps = mpmath.mp.dps
    with mpmath.workdps(dps + 15):
        N = max(20, dps + int(s))
        J = dps // 2 + 6
        head = mpmath.fsum((k + a) ** (-s) for k in range(N))
        x = N + a
        tail = x ** (1 - s) / (s - 1) + x ** (-s) / 2
        rising = s  # s (s+1) ... (s+2j-2)
        xp = x ** (-s - 1)
        x2 = x * x
        for j in range(1, J + 1):
            term = _bern_mpf(2 * j) / mpmath.factorial(2 * j) * rising * xp
            tail += term
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            xp /= x2
        return +(head + tail)


def digamma(x):
    """``psi(x) = Gamma'(x)/Gamma(x)`` for real x > 0 (recurrence plus Stirling tail)."""
    x = mpf(x)
    if x <= 0:
        raise ValueError(f"digamma is only provided for x > 0, got {x}")
    dps = mpmath.mp.dps
    with mpmath.workdps(dps + 15):
        N = max(20, dps)
        head = mpmath.fsum(1 / (x + k) for k in range(N))
        y = x + N
        acc = mpmath.log(y) - 1 / (2 * y)
        y2 = y * y
        yp = y2
        for k in range(1, dps // 2 + 6):
            acc -= _bern_mpf(2 * k) / (2 * k * yp)
            yp *= y2
        return +(acc - head)


# -- roots of unity ----------------------------------------------------------

def _root(j: int, p: int):
    """``exp(2 pi i j / p)``."""
    return mpmath.expjpi(mpf(2 * (j % p)) / p)


def lerch_phi_unit(m: int, p: int):
    r"""Lerch ``Phi(zeta_p^m, 2, 1) = sum_{n>=0} zeta_p^{mn} / (n+1)^2``.

    The series is regrouped along residues mod p,
    ``zeta Phi(zeta, 2, 1) = p^-2 sum_alpha zeta^alpha zeta(2, alpha/p)``,
    which converges at Hurwitz-zeta speed instead of like 1/n.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    total = mpmath.fsum(_root(m * al, p) * hurwitz_zeta(2, mpf(al) / p) for al in range(1, p + 1))
    return total / p**2 / _root(m, p)


def lerch_real_part_formula(m: int, p: int):
    """``Re(zeta Phi(zeta, 2, 1)) = pi^2/6 - pi^2 m/p + pi^2 m^2/p^2`` with m reduced into [0, p)."""
    mbar = m % p
    x = mpf(mbar) / p
    return mpmath.pi**2 * (mpf(1) / 6 - x + x * x)


def digamma_rootofunity_sum(h: int, a: int, p: int):
    """``sum_{alpha=1}^{p} zeta_p^{h a alpha} psi(alpha/p)`` summed term by term."""
    j = (h * a) % p
    return mpmath.fsum(_root(j * al, p) * digamma(mpf(al) / p) for al in range(1, p + 1))


def digamma_rootofunity_closed(h: int, a: int, p: int):
    """Closed form: ``p Log(1 - zeta_p^{ha})``, or ``-p (gamma + log p)`` when p | ha."""
    j = (h * a) % p
    if j == 0:
        return mpmath.mpc(-p * (mpmath.euler + mpmath.log(p)))
    return p * mpmath.log(1 - _root(j, p))


# -- the regularized integral ----------------------------------------------

def _validate(a: int, p: int) -> None:
    ProductSpec.shifted(a, p, 0)


@dataclass(frozen=True)
class IStar:
    closed_form: object
    quadrature: object

    @property
    def difference(self):
        return abs(self.closed_form - self.quadrature)


def _i_star_closed(a: int, p: int):
    c = mpf(a) / p
    return mpmath.loggamma(c) + (mpf(1) / 2 - c) * mpmath.log(c) - mpmath.log(2 * mpmath.pi) / 2


def i_star(a: int, p: int, quad: bool = True) -> IStar:
    r"""Regularized integral ``int_0^inf (f(u) - u^-2/p - (1/2 - a/p) e^{-au}/u) du``.

    Closed form ``log Gamma(a/p) + (1/2 - a/p) log(a/p) - log(2 pi)/2``, and
    an independent quadrature of the integrand.  Near ``u = 0`` the integrand
    is a difference of terms of size ``u^-2``, so it is evaluated with
    ``expm1`` at roughly triple the working precision.
    """
    _validate(a, p)
    closed = _i_star_closed(a, p)
    if not quad:
        return IStar(closed, None)
    dps = mpmath.mp.dps
    c = mpf(a) / p
    d_m1 = mpf(1) / 2 - c

    def integrand(u):
        with mpmath.workdps(3 * dps + 30):
            u = mpf(u)
            f = mpmath.exp(-a * u) / (-u * mpmath.expm1(-p * u))
            return f - 1 / (p * u * u) - d_m1 * mpmath.exp(-a * u) / u

    with mpmath.workdps(dps + 10):
        value = mpmath.quad(integrand, [0, mpf("1e-6"), mpf("0.1"), 1, 8, mpmath.inf])
    return IStar(+closed, +value)


# -- Laurent data --------------------------------------------------------------

@dataclass(frozen=True)
class LaurentData:
    """Laurent coefficients ``d(n0), d(n0+1), ...`` (contiguous)."""

    n0: int
    coeffs: tuple

    def d(self, n: int):
        k = n - self.n0
        if not 0 <= k < len(self.coeffs):
            raise IndexError(f"d({n}) not stored (have {self.n0}..{self.n0 + len(self.coeffs) - 1})")
        return self.coeffs[k]


def laurent_data(a: int, p: int, upto: int = 4) -> LaurentData:
    """Exact ``d(-2), ..., d(upto)`` of ``e^{-au}/(u (1 - e^{-pu}))``."""
    _validate(a, p)
    x = 1 - Fraction(a, p)
    coeffs = tuple(bernoulli_poly(n, x) * Fraction(p) ** (n - 1) / factorial(n) for n in range(upto + 3))
    return LaurentData(-2, coeffs)


def fit_laurent_leading(a: int, p: int, x=None):
    """Numerical limits ``x^2 f(x)`` and ``x (f(x) - d(-2)/x^2)`` at tiny x.

    Returns ``(d(-2), d(-1))`` estimates with error O(x).
    """
    _validate(a, p)
    dps = mpmath.mp.dps
    with mpmath.workdps(3 * dps + 40):
        x = mpf(10) ** (-(dps + 5)) if x is None else mpf(x)
        f = mpmath.exp(-a * x) / (-x * mpmath.expm1(-p * x))
        d2 = x * x * f
        d1 = x * (f - mpf(1) / (p * x * x))
    return +d2, +d1


# -- Euler-Maclaurin verification for Log G ------------------------------------

@dataclass(frozen=True)
class EMResult:
    a: int
    p: int
    h: int
    z: object
    direct: object
    expansion: object

    @property
    def difference(self):
        return self.direct - self.expansion

    @property
    def abs_diff(self):
        return abs(self.direct - self.expansion)


def _direct_logG(a: int, p: int, h: int, z, tol):
    """``sum_{k>=1} zeta_p^{hak} z f(zk)``, i.e. the double series regrouped by k."""
    j = (h * a) % p
    re = mpmath.re(z)
    # terms decay like exp(-a Re(z) k) / k
    kmax = int(mpmath.ceil((-mpmath.log(tol)) / (a * re))) + 10
    if kmax > 5_000_000:
        raise ArithmeticError(f"direct sum needs {kmax} terms at z={z}: |z| too small")
    roots = [_root(j * r, p) for r in range(p)]
    ea = mpmath.exp(-a * z)
    ep = mpmath.exp(-p * z)
    acc = mpmath.mpc(0)
    pa, pp = mpmath.mpc(1), mpmath.mpc(1)
    for k in range(1, kmax + 1):
        pa *= ea
        pp *= ep
        acc += roots[k % p] * pa / (k * (1 - pp))
    return acc


def _expansion_logG(a: int, p: int, h: int, z, order: int):
    j = (h * a) % p
    c = mpf(a) / p
    w = p * z
    L = laurent_data(a, p, max(order, 0))
    istar = i_star(a, p, quad=False).closed_form
    d_m1 = mpf(1) / 2 - c
    log_term = mpmath.log(a * w) + mpmath.euler
    total = mpmath.mpc(0)
    for al in range(1, p + 1):
        x = mpf(al) / p
        inner = hurwitz_zeta(2, x) / (p * p * p * z)
        inner += istar / p
        inner -= d_m1 / p * (log_term + digamma(x))
        for n in range(order):
            dn = L.d(n)
            bn = bernoulli_poly(n + 1, Fraction(al, p))
            coef = Fraction(dn) * bn / (n + 1)
            inner -= z * (mpf(coef.numerator) / coef.denominator) * w**n
        total += _root(j * al, p) * inner
    return total


def em_verify_logG(a: int, p: int, h: int, z, order: int = 0) -> EMResult:
    """Compare ``Log G_{a,p}(zeta_p^h e^{-z})`` with its small-z expansion.

    ``order`` counts the nonnegative powers of z kept after the constant
    term; with ``order=0`` the difference is ``O(|z|)``.
    """
    _validate(a, p)
    z = mpmath.mpmathify(z)
    if mpmath.re(z) <= 0:
        raise ValueError(f"z must have positive real part, got {z}")
    tol = mpf(10) ** (-(mpmath.mp.dps + 5))
    direct = _direct_logG(a, p, h, z, tol)
    expansion = _expansion_logG(a, p, h, z, order)
    return EMResult(a, p, h, z, direct, expansion)


def major_arc_constant(a: int, p: int):
    """Constant term of ``Log G_{a,p}(e^{-z}) - pi^2/(6pz) - (a/p - 1/2) log z``.

    Assembled from the h = p expansion; equals the log of the leading
    coefficient ``alpha_0`` of the major-arc profile.
    """
    z = mpf(1)
    total = mpmath.re(_expansion_logG(a, p, p, z, 0))
    return total - mpmath.pi**2 / (6 * p * z) - (mpf(a) / p - mpf(1) / 2) * mpmath.log(z)


def em_report_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "p", "h", "z", "direct", "expansion", "abs_diff"])
    for r in results:
        w.writerow([r.a, r.p, r.h, mpmath.nstr(r.z, 15), mpmath.nstr(r.direct, 20),
                    mpmath.nstr(r.expansion, 20), mpmath.nstr(r.abs_diff, 6)])
    return buf.getvalue()


# -- verification suite --------------------------------------------------------

PRIMES = (2, 3, 5, 7)


def specfun_checks(primes=PRIMES, z0="0.01") -> list[Check]:
    """Identity checks behind the shifted-Pochhammer asymptotics."""
    out: list[Check] = []
    with mpmath.workdps(30):
        worst = mpf(0)
        for p in primes:
            for a in range(1, p):
                worst = max(worst, i_star(a, p).difference)
        out.append(Check("i_star closed form = quadrature", worst < mpf("1e-8"), f"max diff {mpmath.nstr(worst, 3)}"))

        worst = mpf(0)
        for p in primes:
            for a in range(1, p):
                for h in range(1, p):
                    worst = max(worst, abs(digamma_rootofunity_sum(h, a, p) - digamma_rootofunity_closed(h, a, p)))
        out.append(Check("digamma root-of-unity sum = p Log(1 - zeta^ha)", worst < mpf("1e-12"),
                         f"max diff {mpmath.nstr(worst, 3)}"))

        worst = mpf(0)
        strict = True
        for p in primes:
            for m in range(1, p):
                li2 = _root(m, p) * lerch_phi_unit(m, p)
                worst = max(worst, abs(mpmath.re(li2) - lerch_real_part_formula(m, p)))
                strict &= mpmath.re(li2) < mpmath.pi**2 / 6
        out.append(Check("Lerch real-part quadratic formula", worst < mpf("1e-12"), f"max diff {mpmath.nstr(worst, 3)}"))
        out.append(Check("Lerch real part below pi^2/6 off the major arc", bool(strict)))

        worst = mpf(0)
        for p in primes:
            for a in range(1, p):
                worst = max(worst, abs(major_arc_constant(a, p) - _log_alpha0(a, p)))
        out.append(Check("major-arc constant = log alpha_0", worst < mpf("1e-8"), f"max diff {mpmath.nstr(worst, 3)}"))

        z0 = mpf(z0)
        ratios = []
        for (a, p, h) in ((1, 2, 2), (1, 3, 3), (1, 3, 1), (2, 5, 2)):
            r1 = em_verify_logG(a, p, h, z0)
            r2 = em_verify_logG(a, p, h, z0 / 2)
            ratios.append(r1.abs_diff / r2.abs_diff)
        ok = all(mpf("1.7") <= r <= mpf("2.3") for r in ratios)
        out.append(Check("Euler-Maclaurin difference is O(|z|) (halving ratio)", ok,
                         "ratios " + ", ".join(mpmath.nstr(r, 4) for r in ratios)))
    return out


def _log_alpha0(a: int, p: int):
    c = mpf(a) / p
    return mpmath.loggamma(c) + (c - mpf(1) / 2) * mpmath.log(p) - mpmath.log(2 * mpmath.pi) / 2
