"""Exact real-rootedness certificates and higher order Turan inequalities.

Two independent routes decide whether a polynomial is hyperbolic (all roots
real):

* a Sturm chain on the squarefree part (authoritative);
* the Hankel matrix of Newton power sums, whose leading principal minors are
  the higher order Turan expressions when the polynomial is a Jensen
  polynomial.

No floating point enters either route.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .jensen import jensen_polynomial
from .polynomial import IntPolynomial

__all__ = [
    "HankelReport",
    "SturmCertificate",
    "TuranRow",
    "TuranScan",
    "power_sums",
    "hankel_minors",
    "sturm_chain",
    "count_real_roots",
    "squarefree_part",
    "is_hyperbolic",
    "turan_scan",
    "log_concavity_check",
]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _check_poly(poly: IntPolynomial) -> IntPolynomial:
    if not isinstance(poly, IntPolynomial):
        poly = IntPolynomial(poly)
    if poly.is_zero():
        raise ValueError("the zero polynomial has no power sums")
    return poly


# -- Newton sums and Hankel minors ------------------------------------------

def _scaled_power_sums(poly: IntPolynomial, kmax: int) -> list[int]:
    """Integers ``T_k = lc^k * S_k`` for an integer polynomial."""
    n = poly.degree
    a = poly.coeffs
    lc = a[n]

    def e(i):  # coefficient of X^(n-i)
        return a[n - i] if i <= n else 0

    T = [n]
    lc_pow = [1]
    for _ in range(kmax):
        lc_pow.append(lc_pow[-1] * lc)
    for k in range(1, kmax + 1):
        # lc*S_k = -sum_{i=1}^{k-1} e_i S_{k-i} - k e_k  (e_k = 0 for k > n)
        acc = -k * e(k) * lc_pow[k - 1]
        for i in range(1, min(k - 1, n) + 1):
            acc -= e(i) * lc_pow[i - 1] * T[k - i]
        T.append(acc)
    return T


def power_sums(poly: IntPolynomial, upto: int) -> list[Fraction]:
    """Exact power sums ``S_0, ..., S_upto`` of the roots, via Newton's identities.

    ``S_0`` is the degree.  Roots are never computed.
    """
    poly = _check_poly(poly).primitive()
    if poly.degree < 1:
        raise ValueError("power sums need a nonconstant polynomial")
    T = _scaled_power_sums(poly, upto)
    lc = poly.leading
    return [Fraction(t, lc**k) for k, t in enumerate(T)]


def _det(rows: list[list[int]]) -> int:
    """Bareiss fraction-free determinant with row pivoting."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _leading_minors(T: Sequence[int], n: int) -> list[int]:
    """Leading principal minors of the Hankel matrix ``[T_{i+j}]``.

    One Bareiss pass yields all of them while pivots stay nonzero; after a
    zero pivot each remaining minor is computed on its own.
    """
    m = [[T[i + j] for j in range(n)] for i in range(n)]
    minors = []
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    for k in range(len(minors) + 1, n + 1):
        minors.append(_det([[T[i + j] for j in range(k)] for i in range(k)]))
    return minors


@dataclass(frozen=True)
class HankelReport:
    """Power sums ``S_0..S_{2n-2}``, minors ``Delta_1..Delta_n`` and the verdict."""

    degree: int
    power_sums: tuple
    minors: tuple
    hyperbolic: bool

    @property
    def rank(self) -> int:
        """Number of distinct roots: the last index with a nonzero minor."""
        nz = [k + 1 for k, d in enumerate(self.minors) if d != 0]
        return nz[-1] if nz else 0

    @property
    def signs(self) -> str:
        return "".join("+" if d > 0 else "-" if d < 0 else "0" for d in self.minors)


def hankel_minors(poly: IntPolynomial) -> HankelReport:
    """Hankel-matrix test for real-rootedness with exact minors.

    With r distinct roots, ``Delta_k = 0`` for k > r and ``Delta_r != 0``.
    The roots are all real exactly when ``Delta_1, ..., Delta_r`` are all
    positive: the leading r-by-r block carries the full signature, and a
    repeated real root only lowers the rank.
    """
    poly = _check_poly(poly).primitive()
    n = poly.degree
    if n < 1:
        raise ValueError("Hankel minors need a nonconstant polynomial")
    T = _scaled_power_sums(poly, 2 * n - 2)
    lc = poly.leading
    S = tuple(Fraction(t, lc**k) for k, t in enumerate(T))
    raw = _leading_minors(T, n)
    # det[T_{i+j}]_{k x k} = lc^(k(k-1)) * det[S_{i+j}]
    minors = tuple(Fraction(d, lc ** (k * (k - 1))) for k, d in zip(range(1, n + 1), raw))
    rank = max((k + 1 for k, d in enumerate(minors) if d != 0), default=0)
    hyperbolic = all(d > 0 for d in minors[:rank])
    return HankelReport(n, S, minors, hyperbolic)


# -- Sturm chains -------------------------------------------------------------

def _primitive_signed(p: IntPolynomial) -> IntPolynomial:
    g = p.content()
    return IntPolynomial(c // abs(g) for c in p.coeffs) if g else p


def sturm_chain(poly: IntPolynomial) -> list[IntPolynomial]:
    """Sturm sequence ``p, p', -rem(p, p'), ...`` kept in primitive integer form.

    Pseudo-remainders are sign-corrected by ``sign(lc)^(delta+1)`` so every
    member has the sign of the true Euclidean remainder.
    """
    p = _check_poly(poly).primitive()
    chain = [p, _primitive_signed(p.derivative())]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        delta = a.degree - b.degree
        r = a.pseudo_remainder(b)
        if _sign(b.leading) ** (delta + 1) > 0:
            r = -r
        if r.is_zero():
            break
        chain.append(_primitive_signed(r))
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for x, y in zip(nz, nz[1:]) if x != y)


def count_real_roots(poly: IntPolynomial) -> int:
    """Number of distinct real roots, from sign limits at -inf and +inf."""
    chain = sturm_chain(poly)
    at_pos = [_sign(q.leading) for q in chain]
    at_neg = [_sign(q.leading) * (-1) ** q.degree for q in chain]
    return _variations(at_neg) - _variations(at_pos)


def polynomial_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        a, b = b, _primitive_signed(a.pseudo_remainder(b))
    return a.primitive()


def squarefree_part(poly: IntPolynomial) -> IntPolynomial:
    p = _check_poly(poly).primitive()
    if p.degree < 1:
        return p
    g = polynomial_gcd(p, p.derivative())
    return p.exact_quotient(g).primitive()


@dataclass(frozen=True)
class SturmCertificate:
    """Distinct real roots found versus degree of the squarefree part."""

    hyperbolic: bool
    real_roots: int
    squarefree_degree: int
    degree: int

    def __bool__(self) -> bool:
        return self.hyperbolic


def is_hyperbolic(poly: IntPolynomial) -> SturmCertificate:
    """Certify real-rootedness with a Sturm chain on the squarefree part.

    The result is truthy exactly when the polynomial is hyperbolic; its
    fields record both root counts.
    """
    p = _check_poly(poly)
    sq = squarefree_part(p)
    if sq.degree < 1:
        return SturmCertificate(True, 0, max(sq.degree, 0), p.degree)
    real = count_real_roots(sq)
    return SturmCertificate(real == sq.degree, real, sq.degree, p.degree)


# -- scans over Jensen polynomials -------------------------------------------

@dataclass(frozen=True)
class TuranRow:
    n: int
    hyperbolic: bool
    delta_signs: str
    hankel_agrees: bool


@dataclass
class TuranScan:
    d: int
    rows: list[TuranRow] = field(default_factory=list)

    @property
    def failures(self) -> list[int]:
        return [row.n for row in self.rows if not row.hyperbolic]

    @property
    def last_failure(self) -> int | None:
        """Largest shift in range whose Jensen polynomial is not hyperbolic."""
        f = self.failures
        return f[-1] if f else None

    @property
    def disagreements(self) -> list[int]:
        return [row.n for row in self.rows if not row.hankel_agrees]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "hyperbolic", "delta_signs"])
        for row in self.rows:
            w.writerow([row.n, int(row.hyperbolic), row.delta_signs])
        return buf.getvalue()


def _inclusive(n_range) -> range:
    if isinstance(n_range, range):
        return n_range
    lo, hi = n_range
    return range(int(lo), int(hi) + 1)


def turan_scan(seq, d: int, n_range) -> TuranScan:
    """Exact verdicts for ``J^{d,n}`` of ``seq`` over a range of shifts n.

    ``n_range`` is a ``range`` or an inclusive ``(lo, hi)`` pair.  Each row
    carries the Sturm verdict, the signs of ``Delta_1..Delta_d`` and whether
    the Hankel criterion agrees.
    """
    if d < 1:
        raise ValueError(f"degree d must be >= 1, got {d}")
    shifts = _inclusive(n_range)
    if shifts and (shifts[0] < 0 or shifts[-1] + d >= len(seq)):
        raise ValueError(
            f"shifts {shifts[0]}..{shifts[-1]} with d={d} need {shifts[-1] + d + 1} terms, "
            f"series has {len(seq)}"
        )
    scan = TuranScan(d)
    for n in shifts:
        poly = jensen_polynomial(seq, d, n)
        if poly.is_zero():
            scan.rows.append(TuranRow(n, False, "", False))
            continue
        cert = is_hyperbolic(poly)
        if poly.degree < 1:
            scan.rows.append(TuranRow(n, cert.hyperbolic, "", True))
            continue
        report = hankel_minors(poly)
        scan.rows.append(TuranRow(n, cert.hyperbolic, report.signs, report.hyperbolic == cert.hyperbolic))
    return scan


def log_concavity_check(seq, n_range) -> list[int]:
    """Indices n in range with ``a_n^2 < a_{n-1} a_{n+1}`` (exact comparison)."""
    idx = _inclusive(n_range)
    if idx and (idx[0] < 1 or idx[-1] + 1 >= len(seq)):
        raise ValueError(f"log-concavity at {idx[0]}..{idx[-1]} needs neighbours inside the series")
    return [n for n in idx if seq[n] * seq[n] < seq[n - 1] * seq[n + 1]]
