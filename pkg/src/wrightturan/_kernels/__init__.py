"""Backend selection for the circle kernel.

The compiled extension is used when it imports; set
``WRIGHTTURAN_BACKEND=python`` to force the pure-Python implementation.
"""
from __future__ import annotations

import os
from array import array

import mpmath
from mpmath import mpf

from . import _circle_py

__all__ = ["BACKEND", "available_backends", "log_series_on_circle"]

try:
    from . import _circle as _compiled
except ImportError:  # extension not built
    _compiled = None


def available_backends() -> list[str]:
    return (["compiled"] if _compiled is not None else []) + ["python"]


def _select() -> str:
    want = os.environ.get("WRIGHTTURAN_BACKEND", "").strip().lower()
    if want in ("python", "py", "pure"):
        return "python"
    if want in ("compiled", "cython", "c"):
        if _compiled is None:
            raise ImportError("WRIGHTTURAN_BACKEND=compiled but the extension is not built")
        return "compiled"
    return "compiled" if _compiled is not None else "python"


BACKEND = _select()


def _dd(values):
    hi, lo = array("d"), array("d")
    with mpmath.workprec(160):
        for v in values:
            h = float(v)
            hi.append(h)
            lo.append(float(v - h))
    return hi, lo


def _fix(values):
    bits = _circle_py.FRAC_BITS
    with mpmath.workprec(bits + 40):
        return [int(mpmath.nint(mpmath.ldexp(v, bits))) for v in values]


def log_series_on_circle(coeffs, cos_table, sin_table, ks, backend: str | None = None):
    """``sum_{N>=1} coeffs[N] omega^(kN)`` for every k in ks, as mpc values.

    ``coeffs`` are real mpf (``coeffs[0]`` is ignored); ``cos_table`` and
    ``sin_table`` hold ``cos, sin(2 pi t / nn)`` for t in range(nn).
    """
    backend = backend or BACKEND
    ks = list(ks)
    if backend == "compiled":
        if _compiled is None:
            raise ImportError("compiled circle kernel is not available")
        c_hi, c_lo = _dd(coeffs)
        cos_hi, cos_lo = _dd(cos_table)
        sin_hi, sin_lo = _dd(sin_table)
        re_hi, re_lo, im_hi, im_lo = _compiled.circle_sums(
            c_hi, c_lo, cos_hi, cos_lo, sin_hi, sin_lo, array("l", ks)
        )
        return [mpmath.mpc(mpf(a) + mpf(b), mpf(c) + mpf(d)) for a, b, c, d in zip(re_hi, re_lo, im_hi, im_lo)]
    if backend == "python":
        raw = _circle_py.circle_sums(_fix(coeffs), _fix(cos_table), _fix(sin_table), ks)
        shift = -2 * _circle_py.FRAC_BITS
        return [mpmath.mpc(mpmath.ldexp(mpf(re), shift), mpmath.ldexp(mpf(im), shift)) for re, im in raw]
    raise ValueError(f"unknown backend {backend!r}")
