r"""Circle-method main terms built from I-Bessel functions.

A :class:`WrightProfile` records the behaviour of a generating function near
its dominant roots of unity,

.. math::
    F(e^{-z}) = z^B e^{A/z} \Bigl(\sum_{j<N} \alpha_j z^j + O(|z|^N)\Bigr),

together with the minor-arc deficit ``kappa`` and the cone aperture ``M``.
The coefficients ``C(n) = c(Kn)`` are then approximated by

.. math::
    C(n) \approx K \sum_{j<N} \alpha_j \Bigl(\frac{A}{Kn}\Bigr)^{(j+B+1)/2}
        I_{-(j+B+1)}\bigl(2\sqrt{AKn}\bigr),

the factor K accounting for the K equivalent major arcs.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import mpmath
from mpmath import mpf

__all__ = [
    "PrecisionError",
    "WrightProfile",
    "AsymptoticEstimate",
    "GrowthModel",
    "bessel_I",
    "bessel_asymp_coeff",
    "wright_estimate",
    "profile_coloured_partitions",
    "profile_shifted_pochhammer",
    "profile_for",
    "growth_model",
]


class PrecisionError(ArithmeticError):
    """Raised when an asymptotic series cannot reach the requested accuracy."""


# -- I-Bessel ----------------------------------------------------------------

def bessel_asymp_coeff(v, k: int):
    """Coefficient ``a_k(v) = (1/2 - v)_k (1/2 + v)_k / ((-2)^k k!)``.

    Pochhammer symbols have k factors, so ``a_0 = 1``.  Exact
    (:class:`~fractions.Fraction`) for rational ``v``, mpmath otherwise.
    """
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if isinstance(v, Rational):
        v = Fraction(v)
        half = Fraction(1, 2)
        out = Fraction(1)
    else:
        v = mpf(v)
        half = mpf(1) / 2
        out = mpf(1)
    for i in range(k):
        out *= (half - v + i) * (half + v + i)
        out /= -2 * (i + 1)
    return out


def _bessel_series(v, z, prec: int):
    with mpmath.workprec(prec + 30):
        v = mpf(v)
        z = mpf(z)
        h = z / 2
        h2 = h * h
        lead = h**v
        total = mpf(0)
        k = 0
        term_base = mpf(1)  # h^(2k)/k!
        eps = mpf(2) ** (-(prec + 10))
        while True:
            term = term_base * mpmath.rgamma(k + v + 1)
            total += term
            k += 1
            term_base *= h2 / k
            if k > h + abs(v) + 5 and abs(term_base) * abs(mpmath.rgamma(k + v + 1)) <= eps * abs(total):
                break
        return lead * total


def _bessel_asymptotic(v, z, prec: int):
    """Sum the large-z expansion up to its smallest term.

    Returns ``(value, relative error estimate)``.
    """
    with mpmath.workprec(prec + 30):
        v = mpf(v)
        z = mpf(z)
        four_v2 = 4 * v * v
        total = mpf(1)
        term = mpf(1)
        eps = mpf(2) ** (-(prec + 10))
        k = 0
        while True:
            # ratio of consecutive terms (-1)^k a_k(v) / z^k
            nxt = -term * (four_v2 - (2 * k + 1) ** 2) / (8 * (k + 1) * z)
            if nxt == 0:
                err = mpf(0)
                break
            if abs(nxt) >= abs(term) and k > 0:
                err = abs(nxt)
                break
            total += nxt
            term = nxt
            k += 1
            if abs(term) <= eps * abs(total):
                err = abs(term)
                break
        value = mpmath.exp(z) / mpmath.sqrt(2 * mpmath.pi * z) * total
        return value, err / abs(total)


def bessel_I(v, z, mode: str = "auto"):
    """Modified Bessel function ``I_v(z)`` for real order v and real z > 0.

    ``mode="series"`` sums the ascending series, ``"asymptotic"`` the
    large-argument expansion truncated at its smallest term, and ``"auto"``
    switches to the expansion once ``z >= max(30, 2 v^2)``.
    """
    z = mpf(z)
    if z <= 0:
        raise ValueError(f"bessel_I needs z > 0, got {z}")
    prec = mpmath.mp.prec
    if mode == "auto":
        mode = "asymptotic" if z >= max(30, 2 * mpf(v) ** 2) else "series"
    if mode == "series":
        return +_bessel_series(v, z, prec)
    if mode == "asymptotic":
        value, rel = _bessel_asymptotic(v, z, prec)
        if rel > mpf("1e-10"):
            raise PrecisionError(
                f"asymptotic I_{v}({mpmath.nstr(z, 6)}) stalls at relative error {mpmath.nstr(rel, 3)}"
            )
        return +value
    raise ValueError(f"unknown mode {mode!r}")


# -- profiles ----------------------------------------------------------------

def _num(x):
    if isinstance(x, (list, tuple)):
        return mpmath.mpc(_num(x[0]), _num(x[1]))
    if isinstance(x, dict):
        return mpmath.mpc(_num(x["re"]), _num(x["im"]))
    if isinstance(x, (mpmath.mpc, complex)):
        return mpmath.mpc(x)
    return mpf(x) if not isinstance(x, str) else mpf(x)


@dataclass(frozen=True)
class WrightProfile:
    """Major/minor arc data ``(A, B, K, alphas, kappa, M)``.

    ``B`` may be any real number.
    """

    A: object
    B: object
    K: int
    alphas: tuple
    kappa: object
    M: object = 1
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "A", mpf(self.A))
        object.__setattr__(self, "B", mpf(self.B))
        object.__setattr__(self, "kappa", mpf(self.kappa))
        object.__setattr__(self, "M", mpf(self.M))
        object.__setattr__(self, "alphas", tuple(_num(a) for a in self.alphas))
        if self.A <= 0:
            raise ValueError(f"A must be positive, got {self.A}")
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"K must be a positive integer, got {self.K}")
        object.__setattr__(self, "K", int(self.K))
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.M <= 0:
            raise ValueError(f"M must be positive, got {self.M}")

    def with_alphas(self, alphas: Sequence) -> "WrightProfile":
        return WrightProfile(self.A, self.B, self.K, tuple(alphas), self.kappa, self.M, self.name)

    def to_json(self) -> str:
        def enc(x):
            if isinstance(x, mpmath.mpc):
                return [float(x.real), float(x.imag)]
            return float(x)

        doc = {
            "A": enc(self.A),
            "B": enc(self.B),
            "K": self.K,
            "alphas": [enc(a) for a in self.alphas],
            "kappa": enc(self.kappa),
            "M": enc(self.M),
        }
        if self.name:
            doc["name"] = self.name
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "WrightProfile":
        doc = json.loads(text)
        return cls(doc["A"], doc["B"], doc["K"], tuple(doc["alphas"]), doc["kappa"], doc.get("M", 1), doc.get("name", ""))

    def save(self, path: str | os.PathLike) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json() + "\n")

    @classmethod
    def load(cls, path: str | os.PathLike) -> "WrightProfile":
        with open(path) as fh:
            return cls.from_json(fh.read())


def profile_coloured_partitions(r: int, t: int, M=1) -> WrightProfile:
    """Profile of ``1/(q^t; q^t)_inf^r``: ``(tz/2pi)^(r/2) exp(pi^2 r/(6tz))`` near q = 1."""
    if r < 1 or t < 1:
        raise ValueError(f"need r, t >= 1, got r={r}, t={t}")
    pi = mpmath.pi
    M = mpf(M)
    A = pi**2 * r / (6 * t)
    B = mpf(r) / 2
    alpha0 = (mpf(t) / (2 * pi)) ** (mpf(r) / 2)
    kappa = r * (1 - 1 / mpmath.sqrt(M**2 + 1)) / t
    return WrightProfile(A, B, t, (alpha0,), kappa, M, f"H {r} {t}")


def profile_shifted_pochhammer(a: int, p: int, M=1, convention: str = "derived") -> WrightProfile:
    r"""Profile of ``1/(q^a; q^p)_inf`` near q = 1, with K = 1.

    ``convention="derived"`` uses the expansion

    .. math:: G(e^{-z}) \sim \frac{\Gamma(a/p)}{\sqrt{2\pi}} (pz)^{a/p-1/2} e^{\pi^2/(6pz)},

    i.e. ``B = a/p - 1/2``.  ``convention="transcribed"`` keeps the
    alternative constants ``B = 1/2 - a/p`` and
    ``alpha_0 = Gamma(a/p) (a/p)^(1/2-a/p) p^(1/2-a/p) / sqrt(2 pi)``; they
    coincide with the derived ones only when ``a/p = 1/2``.
    """
    from .series import ProductSpec

    ProductSpec.shifted(a, p, 0)  # validates a, p
    pi = mpmath.pi
    M = mpf(M)
    c = mpf(a) / p
    A = pi**2 / (6 * p)
    if convention == "derived":
        B = c - mpf(1) / 2
        alpha0 = mpmath.gamma(c) * mpf(p) ** B / mpmath.sqrt(2 * pi)
    elif convention == "transcribed":
        B = mpf(1) / 2 - c
        alpha0 = mpmath.gamma(c) * c**B * mpf(p) ** B / mpmath.sqrt(2 * pi)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    kappa = (1 - 1 / mpmath.sqrt(M**2 + 1)) / p
    return WrightProfile(A, B, 1, (alpha0,), kappa, M, f"G {a} {p}")


def profile_for(spec, M=1) -> WrightProfile:
    """Built-in profile for an ``H`` or ``G`` :class:`~wrightturan.series.ProductSpec`."""
    if spec.kind == "H":
        return profile_coloured_partitions(*spec.params, M=M)
    if spec.kind == "G":
        return profile_shifted_pochhammer(*spec.params, M=M)
    raise ValueError(f"no built-in profile for {spec.canonical()}")


# -- main-term estimate ------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticEstimate:
    log_value: object
    terms: int
    error_exponent: object

    @property
    def value(self):
        return mpmath.exp(self.log_value)


def _log_abs_bessel(order, x):
    val = bessel_I(order, x)
    if val == 0:
        return mpmath.ninf, 1
    return mpmath.log(abs(val)), (1 if val > 0 else -1)


def wright_estimate(profile: WrightProfile, n: int, terms: int = 1) -> AsymptoticEstimate:
    """Log of the main-term sum for ``C(n)``, combined in the log domain.

    Each term contributes ``log|alpha_j| + log K + ((j+B+1)/2) log(A/(Kn))
    + log|I_{-(j+B+1)}(2 sqrt(AKn))|`` with its phase; the terms are added
    with a max-shift so signs and complex alphas are handled exactly.
    """
    if n < 1:
        raise ValueError(f"asymptotic estimate needs n >= 1, got {n}")
    if terms < 1 or terms > len(profile.alphas):
        raise ValueError(f"terms must be in 1..{len(profile.alphas)}, got {terms}")
    A, B, K = profile.A, profile.B, profile.K
    x = 2 * mpmath.sqrt(A * K * n)
    log_ratio = mpmath.log(A / (K * n))
    logs, phases = [], []
    for j in range(terms):
        alpha = profile.alphas[j]
        if alpha == 0:
            continue
        order = -(j + B + 1)
        lb, sb = _log_abs_bessel(order, x)
        if lb == mpmath.ninf:
            continue
        logs.append(mpmath.log(abs(alpha)) + mpmath.log(K) + (j + B + 1) / 2 * log_ratio + lb)
        phases.append(sb * alpha / abs(alpha))
    if not logs:
        raise ValueError("every main term vanishes")
    top = max(logs)
    total = mpmath.fsum(ph * mpmath.exp(L - top) for L, ph in zip(logs, phases))
    real = mpmath.re(total)
    if real <= 0:
        raise ValueError(f"main-term sum is not positive at n={n}")
    return AsymptoticEstimate(top + mpmath.log(real), terms, -(terms + B + 1) / 2)


# -- growth model for the Hermite normalization ------------------------------

@dataclass(frozen=True)
class GrowthModel:
    """Drift ``A(n)``, width ``delta(n)`` and higher terms ``g_j(n)``.

    They model ``log(C(n+k)/C(n)) = A(n) k - delta(n)^2 k^2 + sum_j g_j(n) k^j``
    for ``C(n) ~ const * n^(-(2B+3)/4) exp(2 sqrt(AKn))``.

    ``convention="derived"`` takes the leading terms of that expansion:
    ``A(n) = sqrt(AK/n) - (2B+3)/(4n)``, ``delta(n) = (AK)^(1/4) / (2 n^(3/4))``.
    ``convention="transcribed"`` uses the alternative ``A(n) = sqrt(AK/n) + (2B+3)/(4n)``
    and ``delta(n) = sqrt(2) (AK)^(1/4) n^(-3/4)``, whose normalized Jensen
    polynomials settle on ``c^-d H_d(c X)`` with ``c = 2 sqrt(2)`` rather
    than on ``H_d``.
    """

    profile: WrightProfile
    convention: str = "derived"

    def __post_init__(self):
        if self.convention not in ("derived", "transcribed"):
            raise ValueError(f"unknown convention {self.convention!r}")

    def _growth(self):
        return self.profile.A * self.profile.K

    def drift(self, n):
        n = mpf(n)
        lin = (2 * self.profile.B + 3) / (4 * n)
        root = mpmath.sqrt(self._growth() / n)
        return root - lin if self.convention == "derived" else root + lin

    def width(self, n):
        n = mpf(n)
        scale = mpf(1) / 2 if self.convention == "derived" else mpmath.sqrt(2)
        return scale * self._growth() ** (mpf(1) / 4) * n ** (-mpf(3) / 4)

    def higher(self, j: int, n):
        """``g_j(n) = (-2B-3) (-1)^(j-1) / (4 j n^j)``."""
        n = mpf(n)
        return (-2 * self.profile.B - 3) * (-1) ** (j - 1) / (4 * j * n**j)


def growth_model(profile: WrightProfile, convention: str = "derived") -> GrowthModel:
    return GrowthModel(profile, convention)
