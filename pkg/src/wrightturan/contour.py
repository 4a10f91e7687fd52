r"""Coefficient extraction by trapezoidal quadrature of the Cauchy integral.

On the circle ``|q| = e^{-lambda}``, ``lambda = sqrt(A/(Kn))``, the nodes are
``q_k = e^{-lambda} omega^k`` with ``omega = e^{2 pi i/nn}`` and

.. math::
    C(n) = c(Kn) \approx \frac{1}{nn} \sum_k F(q_k) q_k^{-Kn}.

``Log F`` is summed as the power series ``sum_N (s_N / N) q^N`` with
``s_N = sum_{m | N} e_m m``; that inner loop is the compiled kernel.  Nodes are
assigned to the major arc around ``e^{2 pi i h/K}`` when their angle is within
``lambda M`` of it, and to the minor arc otherwise.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import mpmath
from mpmath import mpf

from . import _kernels
from .checks import Check
from .series import ProductSpec, series_for
from .wright import WrightProfile, profile_for

__all__ = [
    "IntegrationError",
    "ContourConfig",
    "CauchyResult",
    "ArcReport",
    "evaluate_F",
    "cauchy_integral",
    "quadrature_at",
    "cauchy_coefficient",
    "arc_split_report",
    "contour_checks",
]

CONTOUR_DIGITS = 40
TAIL_TOL = mpf("1e-30")


class IntegrationError(ArithmeticError):
    """Quadrature did not converge or left a non-negligible imaginary part."""


def _tail_bound(r, D: int, E: int):
    # sum_{N>D} E (1 + ln N) r^N, bounded by a geometric-type majorant
    D1 = D + 1
    return E * (1 + mpmath.log(D1)) * r**D1 * (D1 - D * r) / (1 - r) ** 2 / D1


def _series_length(spec: ProductSpec, r) -> int:
    """Smallest D with the dropped tail of Log F below TAIL_TOL at radius r."""
    E = max(spec.max_exponent(), 1)
    if spec.kind == "P":
        top = max((m for m, _ in spec.params), default=1)
        E *= top  # s_N/N <= sum |e_m| m / N for a finite map
    D = 8
    while _tail_bound(r, D, E) > TAIL_TOL:
        D = int(D * 1.25) + 1
    lo, hi = D // 2, D
    while lo < hi:
        mid = (lo + hi) // 2
        if _tail_bound(r, mid, E) > TAIL_TOL:
            lo = mid + 1
        else:
            hi = mid
    return hi


@dataclass(frozen=True)
class ContourConfig:
    """Quadrature setup for ``C(n)`` of ``spec`` with the given profile.

    ``nodes`` defaults to ``8 K n + 512`` rounded up to a multiple of
    ``8 K``; ``truncation`` defaults to the series length whose tail is
    below ``1e-30`` on the circle.
    """

    spec: ProductSpec
    profile: WrightProfile
    n: int
    nodes: int | None = None
    truncation: int | None = None
    tol: object = mpf("1e-9")
    max_nodes: int = 1 << 17
    backend: str | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        K = self.profile.K
        step = 8 * K
        nodes = self.nodes if self.nodes is not None else 8 * K * self.n + 512
        nodes = max(64, -(-nodes // step) * step)
        object.__setattr__(self, "nodes", int(nodes))
        if self.truncation is None:
            with mpmath.workdps(CONTOUR_DIGITS):
                object.__setattr__(self, "truncation", _series_length(self.spec, self.radius))
        elif self.truncation < 1:
            raise ValueError("truncation must be >= 1")

    @classmethod
    def for_family(cls, spec: ProductSpec, n: int, M=1, **kw) -> "ContourConfig":
        return cls(spec, profile_for(spec, M=M), n, **kw)

    @property
    def K(self) -> int:
        return self.profile.K

    @property
    def m(self) -> int:
        """Exponent ``K n`` of the extracted coefficient."""
        return self.K * self.n

    @property
    def lam(self):
        with mpmath.workdps(CONTOUR_DIGITS):
            return mpmath.sqrt(self.profile.A / (self.K * max(self.n, 1)))

    @property
    def radius(self):
        with mpmath.workdps(CONTOUR_DIGITS):
            return mpmath.exp(-self.lam)


# -- F in factor form ------------------------------------------------------

def evaluate_F(spec: ProductSpec, q):
    """Principal ``Log F(q) = -sum_m e_m Log(1 - q^m)`` for ``|q| < 1``.

    Family specs have infinitely many factors; they are summed until the
    remaining ones change the result by less than ``1e-30``.
    """
    q = mpmath.mpmathify(q)
    aq = abs(q)
    if aq >= 1:
        raise ValueError(f"evaluate_F needs |q| < 1, got |q| = {mpmath.nstr(aq, 6)}")
    if aq == 0:
        return mpmath.mpc(0)
    if spec.kind == "P":
        factors = spec.params
    else:
        E = spec.max_exponent()
        # |Log(1 - q^m)| <= |q|^m / (1 - |q|); total tail <= E |q|^(M+1) / (1-|q|)^2
        M = 1
        while E * aq ** (M + 1) / (1 - aq) ** 2 > TAIL_TOL:
            M += 1
        factors = spec.exponents_upto(M).items()
    total = mpmath.mpc(0)
    for m, e in factors:
        total -= e * mpmath.log(1 - q**m)
    return total


# -- nodes and quadrature --------------------------------------------------

def _root_tables(nn: int):
    """``cos, sin(2 pi t / nn)`` for t < nn, from one eighth of the circle."""
    if nn % 8:
        raise ValueError("node count must be a multiple of 8")
    e = nn // 8
    c8 = [mpmath.cospi(mpf(2 * t) / nn) for t in range(e + 1)]
    s8 = [mpmath.sinpi(mpf(2 * t) / nn) for t in range(e + 1)]
    q = nn // 4
    cq, sq = [mpf(0)] * (q + 1), [mpf(0)] * (q + 1)
    for t in range(q + 1):
        if t <= e:
            cq[t], sq[t] = c8[t], s8[t]
        else:
            cq[t], sq[t] = s8[q - t], c8[q - t]
    cos, sin = [mpf(0)] * nn, [mpf(0)] * nn
    for t in range(nn):
        quad, u = divmod(t, q)
        c, s = cq[u], sq[u]
        for _ in range(quad):
            c, s = -s, c
        cos[t], sin[t] = c, s
    return cos, sin


def _log_series(spec: ProductSpec, D: int, r):
    """``coeffs[N] = (s_N / N) r^N`` for ``N < D``."""
    s = [0] * D
    for m in range(1, D):
        e = spec.exponent(m)
        if e:
            for N in range(m, D, m):
                s[N] += e * m
    out = [mpf(0)] * D
    rp = mpf(1)
    for N in range(1, D):
        rp *= r
        if s[N]:
            out[N] = mpf(s[N]) / N * rp
    return out


@dataclass
class _Level:
    nn: int
    logs: dict  # node index -> Log F(q_k)
    weights: list  # node index -> F(q_k) q_k^{-m}
    total: object = None


class _Integrator:
    def __init__(self, config: ContourConfig):
        self.config = config
        self.lam = config.lam
        self.r = config.radius
        self.coeffs = _log_series(config.spec, config.truncation + 1, self.r)
        self.symmetric = all(N % config.K == 0 for N, c in enumerate(self.coeffs) if c)

    def level(self, nn: int, parent: _Level | None = None) -> _Level:
        cfg = self.config
        cos, sin = _root_tables(nn)
        logs = {}
        if parent is not None:
            for k, v in parent.logs.items():
                logs[2 * k] = v
        # Log F has real coefficients, so L_{nn-k} = conj(L_k); when every
        # active power is a multiple of K it is also periodic with period nn/K.
        period = nn // cfg.K if self.symmetric else nn
        need = [k for k in range(period // 2 + 1) if k not in logs]
        if need:
            vals = _kernels.log_series_on_circle(self.coeffs, cos, sin, need, cfg.backend)
            logs.update(zip(need, vals))
        full = {}
        for k in range(nn):
            j = k % period
            if j in logs:
                full[k] = logs[j]
            else:
                full[k] = mpmath.conj(logs[period - j])
        m = cfg.m
        shift = m * self.lam
        weights = []
        for k in range(nn):
            t = (k * m) % nn
            rot = mpmath.mpc(cos[t], -sin[t])
            weights.append(mpmath.exp(full[k] + shift) * rot)
        lvl = _Level(nn, full, weights)
        lvl.total = mpmath.fsum(weights) / nn
        return lvl


@dataclass(frozen=True)
class CauchyResult:
    value: object
    imag_residual: object
    nodes: int
    refinements: int
    difference: object


def _integrate(config: ContourConfig):
    with mpmath.workdps(CONTOUR_DIGITS):
        integ = _Integrator(config)
        coarse = integ.level(config.nodes)
        fine = integ.level(2 * config.nodes, coarse)
        refinements = 1
        while True:
            diff = abs(fine.total - coarse.total)
            scale = max(abs(fine.total), mpf(1))
            if diff <= config.tol * scale:
                break
            if 2 * fine.nn > config.max_nodes:
                raise IntegrationError(
                    f"quadrature not converged with {fine.nn} nodes (difference {mpmath.nstr(diff, 3)})"
                )
            coarse, fine = fine, integ.level(2 * fine.nn, fine)
            refinements += 1
        value = mpmath.re(fine.total)
        resid = abs(mpmath.im(fine.total))
        if resid >= mpf("1e-8") * abs(value):
            raise IntegrationError(
                f"imaginary residual {mpmath.nstr(resid, 3)} is not small against {mpmath.nstr(value, 6)}"
            )
        return integ, fine, CauchyResult(+value, +resid, fine.nn, refinements, +diff)


def quadrature_at(config: ContourConfig, nodes: int):
    """Trapezoidal value (complex) with exactly ``nodes`` nodes, no refinement."""
    with mpmath.workdps(CONTOUR_DIGITS):
        return _Integrator(config).level(nodes).total


def cauchy_integral(config: ContourConfig) -> CauchyResult:
    """Quadrature with node doubling until two levels agree to ``config.tol``."""
    return _integrate(config)[2]


def cauchy_coefficient(config: ContourConfig):
    """Real part of the converged trapezoidal Cauchy integral for ``C(n)``."""
    return cauchy_integral(config).value


# -- arcs -----------------------------------------------------------------------

@dataclass(frozen=True)
class ArcReport:
    K: int
    n: int
    nodes: int
    major: tuple
    minor: object
    total: object
    imag_residual: object
    symmetry_error: object
    additivity_error: object
    minor_arc_nodes: int
    max_minor_log: object
    minor_bound: object

    @property
    def minor_to_major(self):
        return abs(self.minor) / abs(self.major[0]) if self.major[0] != 0 else mpmath.inf

    @property
    def minor_bound_holds(self) -> bool:
        return self.minor_arc_nodes == 0 or self.max_minor_log <= self.minor_bound

    def to_json(self) -> str:
        def lg(x):
            return float(mpmath.log(abs(x))) if x != 0 else None

        doc = {
            "K": self.K,
            "n": self.n,
            "nodes": self.nodes,
            "major_log_magnitude": [lg(x) for x in self.major],
            "minor_log_magnitude": lg(self.minor),
            "total": mpmath.nstr(mpmath.re(self.total), 30),
            "residual_imag": float(self.imag_residual),
            "symmetry_error": float(self.symmetry_error),
            "additivity_error": float(self.additivity_error),
            "minor_arc_nodes": self.minor_arc_nodes,
            "max_minor_log_F": float(self.max_minor_log) if self.minor_arc_nodes else None,
            "minor_bound": float(self.minor_bound),
        }
        return json.dumps(doc, indent=2)


def _slack(profile: WrightProfile, lam):
    # room for the power of Re(z) and constants in the minor-arc estimate
    return (abs(profile.B) + 1) * abs(mpmath.log(lam)) + 2


def arc_split_report(config: ContourConfig) -> ArcReport:
    """Split the converged quadrature into the K major arcs and the minor arc."""
    integ, lvl, res = _integrate(config)
    with mpmath.workdps(CONTOUR_DIGITS):
        K, nn = config.K, lvl.nn
        width = integ.lam * config.profile.M
        major_w = [[] for _ in range(K)]
        minor_w, minor_logs = [], []
        for k in range(nn):
            # angle distance to the nearest K-th root of unity, in units of node spacing
            h = round(k * K / nn) % K
            off = k - h * nn // K
            if off > nn // 2:
                off -= nn
            elif off < -(nn // 2):
                off += nn
            theta = 2 * mpmath.pi * abs(off) / nn
            if theta <= width:
                major_w[h].append(lvl.weights[k])
            else:
                minor_w.append(lvl.weights[k])
                minor_logs.append(mpmath.re(lvl.logs[k]))
        major = tuple(mpmath.fsum(w) / nn for w in major_w)
        minor = mpmath.fsum(minor_w) / nn if minor_w else mpmath.mpc(0)
        total = lvl.total
        parts = mpmath.fsum(major) + minor
        # relative to the size of the pieces: the total itself can vanish (b(1) = 0 for G 2 5)
        scale = max(abs(total), mpmath.fsum(abs(x) for x in major) + abs(minor))
        add_err = abs(parts - total) / scale
        # integral over C_h equals zeta_K^{-hm} times the one over C_0; m = Kn so the phases are 1
        sym_err = max((abs(major[h] - major[0]) / abs(major[0]) for h in range(1, K)), default=mpf(0))
        bound = (config.profile.A - config.profile.kappa) / integ.lam + _slack(config.profile, integ.lam)
        max_minor = max(minor_logs) if minor_logs else mpmath.ninf
        return ArcReport(K, config.n, nn, major, minor, total, res.imag_residual, sym_err, add_err,
                         len(minor_w), max_minor, bound)


# -- suite ---------------------------------------------------------------------

DEFAULT_FAMILIES = ("H 1 1", "H 1 2", "G 1 2", "G 1 3")


def contour_checks(families: Sequence[str] = DEFAULT_FAMILIES, n: int = 50) -> list[Check]:
    """Recover exact coefficients and test the arc decomposition."""
    out: list[Check] = []
    for text in families:
        spec = ProductSpec.parse(text, 0)
        exact = series_for(spec, n + 1)[n]
        cfg = ContourConfig.for_family(spec, n)
        rep = arc_split_report(cfg)
        value = mpmath.re(rep.total)
        err = abs(value - exact)
        out.append(Check(f"{text}: C({n}) = {exact} recovered", err < mpf("0.5"),
                         f"quadrature {mpmath.nstr(value, 20)}, error {mpmath.nstr(err, 3)}"))
        out.append(Check(f"{text}: major + minor = total", rep.additivity_error < mpf("1e-10"),
                         f"{mpmath.nstr(rep.additivity_error, 3)}"))
        if rep.K > 1:
            out.append(Check(f"{text}: K-fold major-arc symmetry", rep.symmetry_error < mpf("1e-10"),
                             f"{mpmath.nstr(rep.symmetry_error, 3)}"))
        out.append(Check(f"{text}: minor-arc growth bound", rep.minor_bound_holds,
                         f"max Re Log F {mpmath.nstr(rep.max_minor_log, 6)} vs {mpmath.nstr(rep.minor_bound, 6)}"))
    return out
