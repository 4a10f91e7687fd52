"""Exact power-series coefficients of products ``prod_m (1 - q^m)^(-e_m)``.

The two families studied throughout the package are

* ``H r t``: ``1/(q^t; q^t)_inf^r``, r-coloured partitions into multiples of t;
* ``G a p``: ``1/(q^a; q^p)_inf``, partitions into parts congruent to a mod p.

Arbitrary finite exponent maps are written ``P {m:e,...}``.
"""
from __future__ import annotations

import ast
import os
import tempfile
from dataclasses import dataclass
from operator import add, sub
from typing import Mapping, Sequence

import mpmath

__all__ = [
    "ProductSpec",
    "CoeffSeries",
    "expand_product",
    "coloured_partition_series",
    "shifted_pochhammer_series",
    "dilate_extract",
    "log_coeff",
    "series_for",
    "write_cache",
    "read_cache",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class ProductSpec:
    """A product ``prod_m (1 - q^m)^(-e_m)`` truncated at order ``N``.

    ``kind`` is ``"H"`` (params ``(r, t)``), ``"G"`` (params ``(a, p)``) or
    ``"P"`` (params: sorted ``((m, e), ...)`` pairs).  The family kinds define
    ``e_m`` for every m, which :mod:`wrightturan.contour` relies on when it
    needs more factors than ``N``.
    """

    kind: str
    params: tuple
    N: int

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"truncation N must be >= 0, got {self.N}")
        if self.kind == "H":
            r, t = self.params
            if r <= 0 or t <= 0:
                raise ValueError(f"H r t needs r, t >= 1, got r={r}, t={t}")
        elif self.kind == "G":
            a, p = self.params
            if not _is_prime(p):
                raise ValueError(f"G a p needs p prime, got p={p}")
            if a == 0:
                raise ValueError("G 0 p is degenerate: the factor 1 - q^0 vanishes")
            if not 1 <= a < p:
                raise ValueError(f"G a p needs 1 <= a < p, got a={a}, p={p}")
        elif self.kind == "P":
            for m, e in self.params:
                if m == 0:
                    raise ValueError("modulus m = 0 gives the zero factor 1 - q^0")
                if m < 0:
                    raise ValueError(f"moduli must be positive, got {m}")
        else:
            raise ValueError(f"unknown product kind {self.kind!r}")

    @classmethod
    def coloured(cls, r: int, t: int, N: int) -> "ProductSpec":
        return cls("H", (int(r), int(t)), int(N))

    @classmethod
    def shifted(cls, a: int, p: int, N: int) -> "ProductSpec":
        return cls("G", (int(a), int(p)), int(N))

    @classmethod
    def custom(cls, exponents: Mapping[int, int], N: int) -> "ProductSpec":
        items = tuple(sorted((int(m), int(e)) for m, e in exponents.items() if e != 0))
        if any(m == 0 for m, _ in items) or 0 in exponents:
            raise ValueError("modulus m = 0 gives the zero factor 1 - q^0")
        return cls("P", items, int(N))

    @classmethod
    def parse(cls, text: str | Sequence[str], N: int) -> "ProductSpec":
        """Parse a canonical spec: ``"H 1 1"``, ``"G 1 2"`` or ``"P {1:1,2:-1}"``."""
        tokens = text.split(None, 1) if isinstance(text, str) else list(text)
        if not tokens:
            raise ValueError("empty product spec")
        kind = tokens[0].upper()
        rest = " ".join(tokens[1:]).strip()
        if kind in ("H", "G"):
            parts = rest.split()
            if len(parts) != 2:
                raise ValueError(f"{kind} needs two integer parameters, got {rest!r}")
            x, y = (int(v) for v in parts)
            return cls.coloured(x, y, N) if kind == "H" else cls.shifted(x, y, N)
        if kind == "P":
            try:
                mapping = ast.literal_eval(rest) if rest else {}
            except (ValueError, SyntaxError) as exc:
                raise ValueError(f"cannot parse exponent map {rest!r}") from exc
            if not isinstance(mapping, dict):
                raise ValueError(f"P needs a {{m:e}} map, got {rest!r}")
            return cls.custom(mapping, N)
        raise ValueError(f"unknown product kind {tokens[0]!r}")

    def canonical(self) -> str:
        if self.kind in ("H", "G"):
            return f"{self.kind} {self.params[0]} {self.params[1]}"
        body = ",".join(f"{m}:{e}" for m, e in self.params)
        return "P {" + body + "}"

    def with_N(self, N: int) -> "ProductSpec":
        return ProductSpec(self.kind, self.params, int(N))

    def exponent(self, m: int) -> int:
        """Exponent ``e_m`` of ``(1 - q^m)^(-e_m)``, for any m >= 1."""
        if self.kind == "H":
            r, t = self.params
            return r if m % t == 0 else 0
        if self.kind == "G":
            a, p = self.params
            return 1 if m >= a and m % p == a else 0
        return dict(self.params).get(m, 0)

    def exponents_upto(self, M: int) -> dict[int, int]:
        if self.kind == "P":
            return {m: e for m, e in self.params if m <= M}
        return {m: e for m in range(1, M + 1) if (e := self.exponent(m))}

    @property
    def exponents(self) -> dict[int, int]:
        """The finite exponent map restricted to moduli ``m <= N``."""
        return self.exponents_upto(self.N)

    @property
    def dilation(self) -> int:
        """Natural K: the coloured family only has coefficients at multiples of t."""
        return self.params[1] if self.kind == "H" else 1

    def max_exponent(self) -> int:
        if self.kind == "H":
            return self.params[0]
        if self.kind == "G":
            return 1
        return max((abs(e) for _, e in self.params), default=0)


@dataclass(frozen=True)
class CoeffSeries:
    """Exact integer coefficients ``c(0), ..., c(N)``.

    ``K`` records a dilation already applied, i.e. ``coeffs[n] = c(K n)``.
    """

    coeffs: tuple[int, ...]
    origin: ProductSpec | str = "external"
    K: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if self.K < 1:
            raise ValueError(f"dilation K must be >= 1, got {self.K}")

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, item):
        return self.coeffs[item]

    def __iter__(self):
        return iter(self.coeffs)

    def label(self) -> str:
        return self.origin.canonical() if isinstance(self.origin, ProductSpec) else str(self.origin)


def _geometric(c: list[int], m: int, N: int) -> None:
    # c <- c / (1 - q^m); block b only reads block b-1, which is already final.
    for lo in range(m, N + 1, m):
        hi = min(N + 1, lo + m)
        c[lo:hi] = map(add, c[lo:hi], c[lo - m:hi - m])


def _linear(c: list[int], m: int, N: int) -> None:
    # c <- c * (1 - q^m); walk blocks downward so reads see old values.
    starts = list(range(m, N + 1, m))
    for lo in reversed(starts):
        hi = min(N + 1, lo + m)
        c[lo:hi] = map(sub, c[lo:hi], c[lo - m:hi - m])


def expand_product(spec: ProductSpec) -> CoeffSeries:
    """Coefficients of ``prod_{m <= N} (1 - q^m)^(-e_m)`` up to ``q^N``.

    Each factor is applied by exact convolution: ``e_m`` passes of the
    geometric series ``1/(1 - q^m)`` for positive exponents, ``|e_m|``
    multiplications by ``1 - q^m`` for negative ones.
    """
    N = spec.N
    c = [1] + [0] * N
    for m, e in sorted(spec.exponents.items()):
        step = _geometric if e > 0 else _linear
        for _ in range(abs(e)):
            step(c, m, N)
    return CoeffSeries(tuple(c), spec, 1)


def coloured_partition_series(r: int, t: int, N: int) -> CoeffSeries:
    """Coefficients ``c_{r,t}(n)`` of ``1/(q^t; q^t)_inf^r`` for ``n <= N``."""
    return expand_product(ProductSpec.coloured(r, t, N))


def shifted_pochhammer_series(a: int, p: int, N: int) -> CoeffSeries:
    """Coefficients ``b_{a,p}(n)`` of ``1/(q^a; q^p)_inf`` for ``n <= N``."""
    return expand_product(ProductSpec.shifted(a, p, N))


def dilate_extract(series: CoeffSeries, K: int) -> CoeffSeries:
    """Return ``C(n) = c(K n)`` for every n with ``K n <= N``."""
    if K < 1:
        raise ValueError(f"dilation K must be >= 1, got {K}")
    return CoeffSeries(series.coeffs[::K], series.origin, series.K * K)


def series_for(spec: ProductSpec, count: int, K: int | None = None) -> CoeffSeries:
    """Dilated sequence ``C(0..count-1)`` of ``spec``, sized so nothing is missing.

    ``K`` defaults to the family's natural dilation (t for ``H r t``).
    """
    K = spec.dilation if K is None else K
    full = expand_product(spec.with_N(K * (count - 1)))
    return dilate_extract(full, K)


def log_coeff(series: CoeffSeries | Sequence[int], n: int, prec: int = 200):
    """Natural log of the exact integer ``c(n)`` as an mpmath float.

    Only the top ``prec`` bits enter the logarithm; the remaining bit length
    contributes ``shift * log 2`` exactly, so very large coefficients cost
    the same as small ones.
    """
    c = series[n]
    if c <= 0:
        raise ValueError(f"log_coeff needs c({n}) > 0, got {c}")
    shift = max(0, c.bit_length() - prec)
    with mpmath.workprec(prec + 20):
        value = mpmath.log(mpmath.mpf(c >> shift)) + shift * mpmath.ln2
    return +value


# -- cache files ------------------------------------------------------------

def _atomic_write(path: str | os.PathLike, text: str) -> None:
    path = os.fspath(path)
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_cache(series: CoeffSeries, path: str | os.PathLike) -> None:
    """Persist ``series`` as a header line plus one decimal integer per line."""
    if isinstance(series.origin, ProductSpec):
        label = series.origin.canonical()
        N = series.origin.N
    else:
        label = str(series.origin)
        N = series.N * series.K
    lines = [f"#product {label} N={N} K={series.K}"]
    lines.extend(str(c) for c in series.coeffs)
    _atomic_write(path, "\n".join(lines) + "\n")


def read_cache(path: str | os.PathLike) -> CoeffSeries:
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith("#product "):
            raise ValueError(f"{path}: missing '#product' header")
        body = header[len("#product "):]
        head, _, tail = body.rpartition(" K=")
        label, _, n_text = head.rpartition(" N=")
        if not label or not n_text or not tail:
            raise ValueError(f"{path}: malformed header {header!r}")
        coeffs = tuple(int(line) for line in fh if line.strip())
    origin = label if label == "external" else ProductSpec.parse(label, int(n_text))
    return CoeffSeries(coeffs, origin, int(tail))
