"""The mystery weight and double-exponential quadrature against it.

The weight on the real line, with s = sqrt(|x|):

    x >= 0:  W(x) = (1/2) / (cos(s K) + cosh(s K'))
    x <  0:  W(x) = (1/2) / (cosh(s K) + cos(s K'))

Both denominators are strictly positive (the cosh term dominates), W decays
like exp(-sqrt(|x|) K') on the right and exp(-sqrt(|x|) K) on the left, and
W integrates to 1.

Integrals of f against W split the line at 0 and substitute x = s^2 on the
right and x = -s^2 on the left (dx = +-2s ds), which removes the sqrt cusp
at the origin and maps the defining sine transform

    (1/2) int_R sin(sqrt(x) u)/sqrt(x) W(x) dx

onto the pair of smooth half-line integrands

    sin(s u) / (cos(s K) + cosh(s K'))      on the right,
    sinh(s u) / (cosh(s K) + cos(s K'))     on the left.

Each half-line integral is truncated at S solving
exp(-S K_eff (1 - rho)) = tail_cut, where K_eff is K' on the right and K on
the left and rho = |Im u|/K' (resp. |Re u|/K) accounts for the growth of
the sine factor; polynomial growth of f (moments) enlarges S through a
fixed-point correction.  The finite interval [0, S] is then handled by a
tanh-sinh rule whose node density doubles per level until two successive
levels differ by less than rel_tol |I| + abs_tol.

All kernels are evaluated in scaled-exponential form, e.g.

    sin(s u) e^{-s K'} = (e^{s(iu - K')} - e^{-s(iu + K')}) / (2i),

so no intermediate overflows even when u approaches the pole margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .elliptic import ModulusData, modulus_data
from .errors import AccuracyError, DomainError

_TANH_SINH_CUTOFF = 3.8  # abscissa |t| beyond which node weights are < 1e-30


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_level: int = 12
    tail_cut: float = 1e-16
    pole_margin: float = 0.02

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol and 0.0 < self.abs_tol):
            raise DomainError("quadrature tolerances must be positive")
        if not 3 <= self.max_level <= 16:
            raise DomainError(f"max_level must lie in [3, 16], got {self.max_level}")
        if not 0.0 < self.tail_cut < 1e-6:
            raise DomainError(f"tail_cut must lie in (0, 1e-6), got {self.tail_cut}")
        if not 0.0 < self.pole_margin < 0.5:
            raise DomainError(
                f"pole_margin must lie in (0, 0.5), got {self.pole_margin}"
            )


@dataclass(frozen=True)
class WeightPoint:
    """One sample of the weight; w includes the leading 1/2."""

    x: float
    w: float


def mystery_weight(x, k: float):
    """The weight W(x); accepts scalars or arrays, strictly positive."""
    md = modulus_data(k)
    xa = np.asarray(x, dtype=float)
    s = np.sqrt(np.abs(xa))
    pos = 0.5 / (np.cos(s * md.K) + np.cosh(s * md.K_prime))
    neg = 0.5 / (np.cosh(s * md.K) + np.cos(s * md.K_prime))
    w = np.where(xa >= 0.0, pos, neg)
    return float(w) if np.isscalar(x) or xa.ndim == 0 else w


def _truncation_radius(decay: float, tail_cut: float, poly_degree: int = 0) -> float:
    """Solve S * decay - poly_degree * log(S) = log(1/tail_cut)."""
    target = -math.log(tail_cut)
    S = target / decay
    for _ in range(24):
        S_next = (target + poly_degree * math.log(max(S, 2.0))) / decay
        if abs(S_next - S) < 1e-9 * S:
            S = S_next
            break
        S = S_next
    return S


def _min_level(S: float, osc_rate: float, cfg: QuadratureConfig) -> int:
    """Coarsest level whose central node spacing resolves the oscillation.

    Central spacing at level l is about 2^-l * pi S / 4; convergence checks
    begin only once that is below a third of the oscillation half-period.
    """
    density = 0.75 * S * max(osc_rate, 1e-3)
    level = max(3, math.ceil(math.log2(max(density, 1.0))))
    return min(level, cfg.max_level - 1)


def _tanh_sinh(g: Callable, S: float, cfg: QuadratureConfig, min_level: int) -> complex:
    """Integrate g over (0, S) with level-doubling tanh-sinh nodes.

    g must be vectorized over a float ndarray of abscissas.  Raises
    AccuracyError carrying the best estimate if max_level is exhausted.
    """
    T = _TANH_SINH_CUTOFF
    total = None
    prev = None
    err = math.inf  # stays infinite if only one level fits the budget
    for level in range(min_level, cfg.max_level + 1):
        h = 2.0 ** (-level)
        if total is None:
            j = np.arange(-math.floor(T / h), math.floor(T / h) + 1)
            t = j * h
        else:
            # new nodes only: odd multiples of the current spacing
            j = np.arange(-math.floor(T / h), math.floor(T / h) + 1)
            j = j[j % 2 != 0]
            t = j * h
        y = 0.5 * math.pi * np.sinh(t)
        x = S / (1.0 + np.exp(-2.0 * y))
        w = (0.5 * S) * (0.5 * math.pi) * np.cosh(t) / np.cosh(y) ** 2
        contrib = h * np.sum(w * g(x))
        total = contrib if prev is None else 0.5 * prev + contrib
        if prev is not None:
            err = abs(total - prev)
            if err <= cfg.rel_tol * abs(total) + cfg.abs_tol:
                return total
        prev = total
    raise AccuracyError(
        f"tanh-sinh quadrature did not reach rel_tol={cfg.rel_tol:g} within "
        f"level {cfg.max_level}",
        best_estimate=total,
        error_estimate=float(err),
    )


def _pos_kernel(md: ModulusData):
    """Scaled right-side weight pieces: returns (e^{-s K'}, denominator).

    W(s^2) = (1/2) e^{-s K'} / den with den = cos(sK) e^{-sK'} + (1 + e^{-2sK'})/2.
    """
    def pieces(s: np.ndarray):
        e = np.exp(-s * md.K_prime)
        den = np.cos(s * md.K) * e + 0.5 * (1.0 + e * e)
        return e, den
    return pieces

def _neg_kernel(md: ModulusData):
    def pieces(s: np.ndarray):
        e = np.exp(-s * md.K)
        den = np.cos(s * md.K_prime) * e + 0.5 * (1.0 + e * e)
        return e, den
    return pieces


def integrate_weighted(f: Callable, k: float, cfg: QuadratureConfig | None = None) -> complex:
    """int_R f(x) W(x) dx for f growing slower than the weight decays.

    f must accept a float ndarray.  The two half-lines are substituted,
    truncated and integrated independently, then summed.
    """
    cfg = cfg or QuadratureConfig()
    md = modulus_data(k)
    pos = _pos_kernel(md)
    neg = _neg_kernel(md)

    # f(+-s^2) * 2s * W: the 2 from dx = 2s ds and the weight's 1/2 cancel
    def g_pos(s):
        e, den = pos(s)
        return f(s * s) * s * e / den

    def g_neg(s):
        e, den = neg(s)
        return f(-s * s) * s * e / den

    S_pos = _truncation_radius(md.K_prime, cfg.tail_cut, poly_degree=1)
    S_neg = _truncation_radius(md.K, cfg.tail_cut, poly_degree=1)
    right = _tanh_sinh(g_pos, S_pos, cfg, _min_level(S_pos, md.K, cfg))
    left = _tanh_sinh(g_neg, S_neg, cfg, _min_level(S_neg, md.K_prime, cfg))
    return right + left


def _check_rectangle(u: complex, md: ModulusData, margin_frac: float, op: str) -> None:
    if abs(u.real) >= md.K * (1.0 - margin_frac):
        raise DomainError(
            f"{op}: |Re u| = {abs(u.real):.6g} outside the margin-shrunk "
            f"rectangle |Re u| < {md.K * (1.0 - margin_frac):.6g}"
        )
    if abs(u.imag) >= md.K_prime * (1.0 - margin_frac):
        raise DomainError(
            f"{op}: |Im u| = {abs(u.imag):.6g} outside the margin-shrunk "
            f"rectangle |Im u| < {md.K_prime * (1.0 - margin_frac):.6g}"
        )


def lhs_theorem1(u: complex, k: float, cfg: QuadratureConfig | None = None) -> complex:
    """(1/2) int_R sin(sqrt(x) u)/sqrt(x) W(x) dx by half-line quadrature.

    u must lie in the open period rectangle shrunk by cfg.pole_margin.
    """
    cfg = cfg or QuadratureConfig()
    md = modulus_data(k)
    u = complex(u)
    _check_rectangle(u, md, cfg.pole_margin, "lhs_theorem1")
    real_input = u.imag == 0.0

    # sin(su) e^{-sK'} and sinh(su) e^{-sK}, overflow-free for u in rectangle
    def g_pos(s):
        num = (np.exp(s * (1j * u - md.K_prime)) - np.exp(-s * (1j * u + md.K_prime))) / 2j
        _, den = _pos_kernel(md)(s)
        return num / den

    def g_neg(s):
        num = (np.exp(s * (u - md.K)) - np.exp(-s * (u + md.K))) / 2.0
        _, den = _neg_kernel(md)(s)
        return num / den

    decay_pos = md.K_prime - abs(u.imag)
    decay_neg = md.K - abs(u.real)
    S_pos = _truncation_radius(decay_pos, cfg.tail_cut)
    S_neg = _truncation_radius(decay_neg, cfg.tail_cut)
    osc_pos = max(md.K, abs(u.real))
    osc_neg = max(md.K_prime, abs(u.imag))
    value = _tanh_sinh(g_pos, S_pos, cfg, _min_level(S_pos, osc_pos, cfg)) + _tanh_sinh(
        g_neg, S_neg, cfg, _min_level(S_neg, osc_neg, cfg)
    )
    return value.real if real_input and isinstance(value, complex) else value


_MAX_MOMENT_N = 12


def moment_quadrature(n: int, k: float, cfg: QuadratureConfig | None = None) -> float:
    """int_R x^n W(x) dx with half-line truncation aware of the x^n growth."""
    if not 0 <= n <= _MAX_MOMENT_N:
        raise DomainError(f"moment index must lie in [0, {_MAX_MOMENT_N}], got {n}")
    cfg = cfg or QuadratureConfig()
    md = modulus_data(k)
    pos = _pos_kernel(md)
    neg = _neg_kernel(md)
    p = 2 * n + 1

    def g_pos(s):
        e, den = pos(s)
        return s**p * e / den

    def g_neg(s):
        e, den = neg(s)
        return s**p * e / den

    S_pos = _truncation_radius(md.K_prime, cfg.tail_cut, poly_degree=p)
    S_neg = _truncation_radius(md.K, cfg.tail_cut, poly_degree=p)
    right = _tanh_sinh(g_pos, S_pos, cfg, _min_level(S_pos, md.K, cfg))
    left = _tanh_sinh(g_neg, S_neg, cfg, _min_level(S_neg, md.K_prime, cfg))
    value = right + left if n % 2 == 0 else right - left
    return float(value.real if isinstance(value, complex) else value)
