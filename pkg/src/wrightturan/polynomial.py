"""Dense univariate polynomials with exact integer or rational coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable

__all__ = ["IntPolynomial"]


def _exact(c):
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be exact integers or rationals, got {type(c).__name__}")


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients in ascending degree order; trailing zeros are stripped."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = [_exact(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "IntPolynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-_exact(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(self[j] + other[j] for j in range(n))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self), len(other))
        return IntPolynomial(self[j] - other[j] for j in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other) -> "IntPolynomial":
        if not isinstance(other, IntPolynomial):
            return IntPolynomial(c * _exact(other) for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(j * c for j, c in enumerate(self.coeffs) if j)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPolynomial":
        """Integer polynomial with coprime coefficients and the same roots.

        The overall sign is preserved.
        """
        if self.is_zero():
            return self
        den = reduce(lcm, (Fraction(c).denominator for c in self.coeffs), 1)
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        return IntPolynomial(c // g for c in ints)

    def pseudo_remainder(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """``lc(divisor)^(deg a - deg b + 1) * a mod divisor`` over the integers."""
        if divisor.is_zero():
            raise ZeroDivisionError("pseudo-division by the zero polynomial")
        r = list(self.coeffs)
        b = divisor.coeffs
        db = len(b) - 1
        lc = b[-1]
        steps = len(r) - db
        if steps <= 0:
            return self
        for _ in range(steps):
            if len(r) - 1 < db:
                r = [c * lc for c in r]
                continue
            top = r[-1]
            shift = len(r) - 1 - db
            r = [c * lc for c in r]
            for j, bj in enumerate(b):
                r[shift + j] -= top * bj
            r.pop()
        return IntPolynomial(r)

    def exact_quotient(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Quotient over the rationals; raises if the division leaves a remainder."""
        r = [Fraction(c) for c in self.coeffs]
        b = [Fraction(c) for c in divisor.coeffs]
        db = len(b) - 1
        if len(r) - 1 < db:
            if any(r):
                raise ArithmeticError("non-exact polynomial division")
            return IntPolynomial()
        q = [Fraction(0)] * (len(r) - db)
        for shift in range(len(r) - 1 - db, -1, -1):
            coef = r[shift + db] / b[-1]
            q[shift] = coef
            for j, bj in enumerate(b):
                r[shift + j] -= coef * bj
        if any(r[:db]):
            raise ArithmeticError("non-exact polynomial division")
        return IntPolynomial(q)

    def __repr__(self) -> str:
        if self.is_zero():
            return "IntPolynomial(0)"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if j == 0 else f"{c}*X" if j == 1 else f"{c}*X^{j}")
        return "IntPolynomial(" + " + ".join(terms) + ")"
