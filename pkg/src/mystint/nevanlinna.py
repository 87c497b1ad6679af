"""The two-parameter weight family sharing every moment with the base weight.

Built from two entire functions of x (s = sqrt(|x|) throughout):

    D(x) = -(4/pi) sin(sqrt(x) K/2) sinh(sqrt(x) K'/2)
    B(x) = (2/pi) log(k/k') sin(sqrt(x) K/2) sinh(sqrt(x) K'/2)
           + cos(sqrt(x) K/2) cosh(sqrt(x) K'/2)

For x < 0 both are evaluated through the real-analytic continuation
sqrt(x) = i s, under which

    sin(sqrt(x) K/2) sinh(sqrt(x) K'/2) -> -sinh(s K/2) sin(s K'/2)
    cos(sqrt(x) K/2) cosh(sqrt(x) K'/2) ->  cosh(s K/2) cos(s K'/2)

so D and B are real on all of R, with D(0) = 0, B(0) = 1 and
D(x) ~ -K K' x / pi near the origin.

The family itself:

    w(x; t, gamma) = (gamma/pi) / ((D(x) - t B(x))^2 + gamma^2 B(x)^2),
    gamma > 0.

The denominator is a sum of squares and D, B never vanish simultaneously,
so w is strictly positive.  At the canonical parameter point

    C = (2/pi) log(k/k'),  gamma* = 4/(pi (1 + C^2)),  t* = -C gamma*,

the denominator collapses to gamma*^2 (1 + C^2)(S^2 + P^2) with
S = sin(sK/2) sinh(s K'/2), P = cos(sK/2) cosh(s K'/2), and since
cos(sK) + cosh(sK') = 2 (S^2 + P^2), the family member w(x; t*, gamma*)
coincides with the base weight exactly.

Quadrature against w reuses the half-line substitution of the quadrature
module.  Because D and B carry half arguments K/2 and K'/2, the safe decay
constant is half the base one, which doubles the s-space truncation radius
(quadrupling it in x).  Kernels are evaluated with the exponential scaling
sinh(sk/2) e^{-sk/2} = (1 - e^{-sk})/2 and its cosh analogue, so the
squared denominators never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elliptic import ModulusData, modulus_data
from .errors import DomainError
from .quadrature import QuadratureConfig, _check_rectangle, _min_level, _tanh_sinh, _truncation_radius


@dataclass(frozen=True)
class WeightParams:
    """One member of the family: real t, positive gamma."""

    t: float
    gamma: float

    def __post_init__(self) -> None:
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"gamma must be positive and finite, got {self.gamma}")
        if not math.isfinite(self.t):
            raise DomainError(f"t must be finite, got {self.t}")


@dataclass(frozen=True)
class CanonicalParams:
    """The parameter point at which the family reproduces the base weight."""

    C: float
    gamma_star: float
    t_star: float


# Default parameter grid exercised by the verification suites, alongside the
# canonical point.
DEFAULT_PARAM_GRID = (
    WeightParams(t=0.0, gamma=1.0),
    WeightParams(t=1.0, gamma=0.5),
    WeightParams(t=-2.0, gamma=3.0),
)


def canonical_params(k: float) -> CanonicalParams:
    md = modulus_data(k)
    C = (2.0 / math.pi) * math.log(md.k / md.k_prime)
    gamma_star = 4.0 / (math.pi * (1.0 + C * C))
    return CanonicalParams(C=C, gamma_star=gamma_star, t_star=-C * gamma_star)


def _sin_sinh_pair(x, md: ModulusData):
    """(sin(sqrt(x)K/2) sinh(sqrt(x)K'/2), cos(sqrt(x)K/2) cosh(sqrt(x)K'/2)).

    Both entries real-analytic across 0; x may be a scalar or an ndarray.
    """
    xa = np.asarray(x, dtype=float)
    s = np.sqrt(np.abs(xa))
    pos_ss = np.sin(0.5 * s * md.K) * np.sinh(0.5 * s * md.K_prime)
    pos_cc = np.cos(0.5 * s * md.K) * np.cosh(0.5 * s * md.K_prime)
    neg_ss = -np.sinh(0.5 * s * md.K) * np.sin(0.5 * s * md.K_prime)
    neg_cc = np.cosh(0.5 * s * md.K) * np.cos(0.5 * s * md.K_prime)
    nonneg = xa >= 0.0
    return np.where(nonneg, pos_ss, neg_ss), np.where(nonneg, pos_cc, neg_cc)


def _to_scalar_like(x, value):
    return float(value) if np.isscalar(x) or np.asarray(x).ndim == 0 else value


def D_of_x(x, k: float):
    """D(x); odd-like entire combination with D(0) = 0, D'(0) = -K K'/pi."""
    md = modulus_data(k)
    ss, _ = _sin_sinh_pair(x, md)
    return _to_scalar_like(x, -(4.0 / math.pi) * ss)


def B_of_x(x, k: float):
    """B(x); entire with B(0) = 1."""
    md = modulus_data(k)
    ss, cc = _sin_sinh_pair(x, md)
    C = (2.0 / math.pi) * math.log(md.k / md.k_prime)
    return _to_scalar_like(x, C * ss + cc)


def weight_w(x, params: WeightParams, k: float):
    """w(x; t, gamma), strictly positive, same moments for every (t, gamma)."""
    md = modulus_data(k)
    ss, cc = _sin_sinh_pair(x, md)
    C = (2.0 / math.pi) * math.log(md.k / md.k_prime)
    D = -(4.0 / math.pi) * ss
    B = C * ss + cc
    den = (D - params.t * B) ** 2 + (params.gamma * B) ** 2
    assert np.all(den > 0.0), "weight_w denominator must be positive"
    return _to_scalar_like(x, params.gamma / math.pi / den)


def _scaled_DB(md: ModulusData, side: int):
    """Vectorized (D, B) scaled by e^{-s k_half} on one half-line.

    side +1: x = +s^2, scale e^{-s K'/2}; side -1: x = -s^2, scale e^{-s K/2}.
    Uses sinh(y) e^{-y} = (1 - e^{-2y})/2, cosh(y) e^{-y} = (1 + e^{-2y})/2.
    """
    C = (2.0 / math.pi) * math.log(md.k / md.k_prime)

    if side > 0:
        def scaled(s):
            e = np.exp(-s * md.K_prime)
            grow = 0.5 * (1.0 - e)   # sinh(sK'/2) e^{-sK'/2}
            damp = 0.5 * (1.0 + e)   # cosh(sK'/2) e^{-sK'/2}
            ss = np.sin(0.5 * s * md.K) * grow
            cc = np.cos(0.5 * s * md.K) * damp
            return -(4.0 / math.pi) * ss, C * ss + cc
    else:
        def scaled(s):
            e = np.exp(-s * md.K)
            grow = 0.5 * (1.0 - e)
            damp = 0.5 * (1.0 + e)
            ss = -grow * np.sin(0.5 * s * md.K_prime)
            cc = damp * np.cos(0.5 * s * md.K_prime)
            return -(4.0 / math.pi) * ss, C * ss + cc
    return scaled


def lhs_theorem2(u: complex, params: WeightParams, k: float,
                 cfg: QuadratureConfig | None = None) -> complex:
    """int_R sin(sqrt(x) u)/sqrt(x) w(x; t, gamma) dx (no leading 1/2)."""
    cfg = cfg or QuadratureConfig()
    md = modulus_data(k)
    u = complex(u)
    _check_rectangle(u, md, cfg.pole_margin, "lhs_theorem2")
    real_input = u.imag == 0.0
    t, gamma = params.t, params.gamma
    pos_DB = _scaled_DB(md, +1)
    neg_DB = _scaled_DB(md, -1)

    # integrand 2 sin(su) w(s^2) = (2 gamma/pi) sin(su) e^{-sK'} / den_scaled
    def g_pos(s):
        D, B = pos_DB(s)
        den = (D - t * B) ** 2 + (gamma * B) ** 2
        num = (np.exp(s * (1j * u - md.K_prime)) - np.exp(-s * (1j * u + md.K_prime))) / 2j
        return (2.0 * gamma / math.pi) * num / den

    def g_neg(s):
        D, B = neg_DB(s)
        den = (D - t * B) ** 2 + (gamma * B) ** 2
        num = (np.exp(s * (u - md.K)) - np.exp(-s * (u + md.K))) / 2.0
        return (2.0 * gamma / math.pi) * num / den

    # half arguments in D, B: use half the base decay constants
    decay_pos = 0.5 * (md.K_prime - abs(u.imag))
    decay_neg = 0.5 * (md.K - abs(u.real))
    S_pos = _truncation_radius(decay_pos, cfg.tail_cut)
    S_neg = _truncation_radius(decay_neg, cfg.tail_cut)
    value = _tanh_sinh(g_pos, S_pos, cfg, _min_level(S_pos, max(md.K, abs(u.real)), cfg)) \
        + _tanh_sinh(g_neg, S_neg, cfg, _min_level(S_neg, max(md.K_prime, abs(u.imag)), cfg))
    return value.real if real_input and isinstance(value, complex) else value


def _moment_w(n: int, params: WeightParams, k: float, cfg: QuadratureConfig) -> float:
    md = modulus_data(k)
    t, gamma = params.t, params.gamma
    pos_DB = _scaled_DB(md, +1)
    neg_DB = _scaled_DB(md, -1)
    p = 2 * n + 1

    def g_pos(s):
        D, B = pos_DB(s)
        den = (D - t * B) ** 2 + (gamma * B) ** 2
        return (2.0 * gamma / math.pi) * s**p * np.exp(-s * md.K_prime) / den

    def g_neg(s):
        D, B = neg_DB(s)
        den = (D - t * B) ** 2 + (gamma * B) ** 2
        return (2.0 * gamma / math.pi) * s**p * np.exp(-s * md.K) / den

    S_pos = _truncation_radius(0.5 * md.K_prime, cfg.tail_cut, poly_degree=p)
    S_neg = _truncation_radius(0.5 * md.K, cfg.tail_cut, poly_degree=p)
    right = _tanh_sinh(g_pos, S_pos, cfg, _min_level(S_pos, md.K, cfg))
    left = _tanh_sinh(g_neg, S_neg, cfg, _min_level(S_neg, md.K_prime, cfg))
    value = right + left if n % 2 == 0 else right - left
    return float(value.real if isinstance(value, complex) else value)


_MAX_INVARIANCE_N = 8


@dataclass(frozen=True)
class MomentInvarianceReport:
    """Moments of each family member plus the canonical point, side by side.

    moments[i][n] is moment n of params[i]; max_deviation[n] is the largest
    pairwise spread of moment n across all members.
    """

    k: float
    params: tuple
    n_max: int
    moments: tuple
    max_deviation: tuple


def moment_invariance_report(k: float, params: tuple = DEFAULT_PARAM_GRID,
                             n_max: int = 6,
                             cfg: QuadratureConfig | None = None) -> MomentInvarianceReport:
    """Moments 0..n_max for each (t, gamma) and the canonical member.

    Every column must agree across rows: the family shares all moments.
    """
    if not 0 <= n_max <= _MAX_INVARIANCE_N:
        raise DomainError(f"n_max must lie in [0, {_MAX_INVARIANCE_N}], got {n_max}")
    cfg = cfg or QuadratureConfig()
    cp = canonical_params(k)
    members = tuple(params) + (WeightParams(t=cp.t_star, gamma=cp.gamma_star),)
    table = tuple(
        tuple(_moment_w(n, p, k, cfg) for n in range(n_max + 1)) for p in members
    )
    deviation = tuple(
        max(table[i][n] for i in range(len(members)))
        - min(table[i][n] for i in range(len(members)))
        for n in range(n_max + 1)
    )
    return MomentInvarianceReport(
        k=k, params=members, n_max=n_max, moments=table, max_deviation=deviation
    )
