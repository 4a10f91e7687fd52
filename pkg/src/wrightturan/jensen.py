"""Jensen polynomials, Hermite polynomials and the Hermite normalization."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath
from mpmath import mpf

from .polynomial import IntPolynomial

__all__ = [
    "jensen_polynomial",
    "hermite_polynomial",
    "normalized_jensen_eval",
    "normalized_jensen_curve",
    "hermite_distance",
    "DEFAULT_GRID",
    "NORMALIZATION_DIGITS",
]

DEFAULT_GRID = (-3, 3, 600)
NORMALIZATION_DIGITS = 60


def jensen_polynomial(seq: Sequence[int], d: int, n: int) -> IntPolynomial:
    """``sum_j binom(d, j) C(n+j) X^j`` with exact coefficients."""
    if d < 0:
        raise ValueError(f"degree d must be >= 0, got {d}")
    if n < 0 or n + d >= len(seq):
        raise IndexError(f"J^({d},{n}) needs C({n})..C({n + d}); sequence has {len(seq)} terms")
    return IntPolynomial(comb(d, j) * seq[n + j] for j in range(d + 1))


_HERMITE = [IntPolynomial([1]), IntPolynomial([0, 1])]


def hermite_polynomial(d: int) -> IntPolynomial:
    """Hermite polynomial with generating function ``exp(-t^2 + X t)``.

    Built from ``H_{d+1} = X H_d - 2d H_{d-1}``; note this is the
    normalization with ``H_2 = X^2 - 2``.
    """
    if d < 0:
        raise ValueError(f"degree must be >= 0, got {d}")
    X = IntPolynomial([0, 1])
    while len(_HERMITE) <= d:
        k = len(_HERMITE) - 1
        _HERMITE.append(X * _HERMITE[k] - _HERMITE[k - 1] * (2 * k))
    return _HERMITE[d]


def _ratios(seq, d: int, n: int) -> list:
    if n < 0 or n + d >= len(seq):
        raise IndexError(f"normalization at n={n}, d={d} needs C({n})..C({n + d})")
    base = seq[n]
    if base == 0:
        raise ZeroDivisionError(f"C({n}) = 0: normalization undefined")
    # exact ratios first, rounded only once at working precision
    out = []
    for j in range(d + 1):
        r = Fraction(comb(d, j) * seq[n + j], base)
        out.append(mpf(r.numerator) / r.denominator)
    return out


def _normalizer(seq, d, n, growth):
    weights = _ratios(seq, d, n)
    delta = growth.width(n)
    shift = mpmath.exp(growth.drift(n))
    scale = delta ** (-d)

    def value(X):
        Y = (delta * mpf(X) - 1) / shift
        acc = mpf(0)
        for w in reversed(weights):
            acc = acc * Y + w
        return scale * acc

    return value


def normalized_jensen_eval(seq, d: int, n: int, X, growth):
    """``delta^-d / C(n) * J^{d,n}((delta X - 1) / exp(A(n)))``.

    ``growth`` supplies ``A(n)`` (:meth:`drift`) and ``delta(n)``
    (:meth:`width`).  Evaluated at no fewer than 60 significant digits.
    """
    with mpmath.workdps(max(NORMALIZATION_DIGITS, mpmath.mp.dps)):
        return +_normalizer(seq, d, n, growth)(X)


def _grid_points(grid):
    lo, hi, steps = grid
    steps = int(steps)
    if steps < 0:
        raise ValueError("grid needs steps >= 0")
    lo, hi = mpf(lo), mpf(hi)
    if steps == 0:
        return [lo]
    return [lo + (hi - lo) * i / steps for i in range(steps + 1)]


def normalized_jensen_curve(seq, d: int, n: int, growth, grid=DEFAULT_GRID):
    """Rows ``(X, normalized value, H_d(X))`` on ``steps + 1`` grid points."""
    with mpmath.workdps(max(NORMALIZATION_DIGITS, mpmath.mp.dps)):
        f = _normalizer(seq, d, n, growth)
        H = hermite_polynomial(d)
        return [(X, f(X), H(X)) for X in _grid_points(grid)]


def hermite_distance(seq, d: int, n: int, growth, grid=DEFAULT_GRID):
    """Sup over the grid of ``|normalized Jensen - H_d|``."""
    rows = normalized_jensen_curve(seq, d, n, growth, grid)
    return max(abs(v - h) for _, v, h in rows)
