"""Pure-Python twin of the compiled circle kernel, in fixed-point integers.

Values are integers scaled by ``2**FRAC_BITS``; each product is exact and the
sums are exact, so the only rounding is the input quantization.
"""
from __future__ import annotations

from operator import itemgetter, mul

FRAC_BITS = 120


def circle_sums(coeffs: list[int], cos_fix: list[int], sin_fix: list[int], ks) -> list[tuple[int, int]]:
    """``(Re, Im)`` of ``sum_{N>=1} c_N omega^(kN)`` scaled by ``2**(2*FRAC_BITS)``."""
    nn = len(cos_fix)
    D = len(coeffs)
    active = [N for N in range(1, D) if coeffs[N]]
    cs = [coeffs[N] for N in active]
    out = []
    for k in ks:
        k %= nn
        if not active:
            out.append((0, 0))
            continue
        idx = [(k * N) % nn for N in active]
        pick = itemgetter(*idx)
        cos_k, sin_k = pick(cos_fix), pick(sin_fix)
        if len(active) == 1:
            cos_k, sin_k = (cos_k,), (sin_k,)
        out.append((sum(map(mul, cs, cos_k)), sum(map(mul, cs, sin_k))))
    return out
