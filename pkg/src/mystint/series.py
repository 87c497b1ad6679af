"""Residue series, Fourier cross-check, and Taylor-coefficient machinery.

The residue series evaluates the integral as a sum over the simple poles
z_n = pi (n - 1/2) / (1 - tau) swept when the contour is pushed to the
right midway between consecutive poles:

    I(v) = (2 pi i / (K (1 - tau))) sum_{n>=1} (-1)^n
           sin(pi (n-1/2) t v) / cos(pi (n-1/2) t),

with tau = i K'/K and t = (1+tau)/(1-tau).  Terms are evaluated in the
overflow-free form

    sin(a t v)/cos(a t) = (e^{i a t (1+v)} - e^{i a t (1-v)}) / (i (1 + e^{2 i a t})),

valid for |v| < 1 since every exponent then has negative real part.  The
magnitude ratio of consecutive terms approaches exp(-pi Im(t) (1 - |v|)).

The Fourier identity used to collapse the series reads, for |zeta| < 1,

    pi sum_{n>=1} (-1)^n sin(pi (n-1/2) zeta) / cosh(pi (n-1/2) K'/K)
        = -K k k' sn(K zeta, k) / dn(K zeta, k)

and is checked here by summing the left side directly and evaluating the
right side through the Landen-based kernels.

Taylor coefficients of sn, cn, dn about 0 come from the defining system

    sn' = cn dn,  cn' = -sn dn,  dn' = -k^2 sn cn

via Cauchy-product recurrences.  Up to order 40 the arithmetic runs over
exact rationals in k^2 (k is converted exactly, so the coefficients are
exact rational functions of the binary64 modulus); beyond that it switches
to binary64.  Moments follow from the odd coefficients of sn/cd:

    m_n = (-1)^n (2n+1)! a_{2n+1}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .elliptic import jacobi_real, modulus_data
from .errors import ConvergenceError, DomainError
from .theta import chain_params

_MAX_RESIDUE_TERMS = 100_000
_MAX_FOURIER_TERMS = 100_000
_MAX_TAYLOR_ORDER = 64
_RATIONAL_ORDER_LIMIT = 40
_MAX_MOMENT_INDEX = 30


def residue_series_I(v: float, k: float, tol: float = 1e-12) -> complex:
    """Sum the residue series for the integral at u = v (K + iK')/2.

    Stops once |term| / (1 - ratio) < tol with ratio the geometric bound
    exp(-pi Im(t) (1 - |v|)).  Antisymmetric in v term by term.
    """
    if not -1.0 < v < 1.0:
        raise DomainError(f"v must lie in (-1, 1), got {v}")
    md = modulus_data(k)
    p = chain_params(k)
    t = p.t
    ratio = math.exp(-math.pi * t.imag * (1.0 - abs(v)))

    total = 0.0 + 0.0j
    n = 1
    while n <= _MAX_RESIDUE_TERMS:
        a = math.pi * (n - 0.5)
        iat = 1j * a * t
        term = (cmath.exp(iat * (1.0 + v)) - cmath.exp(iat * (1.0 - v))) / (
            1j * (1.0 + cmath.exp(2.0 * iat))
        )
        if n % 2:
            term = -term
        total += term
        if n >= 2 and abs(term) / (1.0 - ratio) < tol:
            break
        n += 1
    else:
        raise ConvergenceError(
            f"residue series did not converge within {_MAX_RESIDUE_TERMS} terms "
            f"(v={v}, k={k})"
        )
    return 2.0j * math.pi / (md.K * (1.0 - p.tau)) * total


class FourierCheck(NamedTuple):
    """Both sides of the Fourier identity; they must agree for |zeta| < 1."""

    series: float
    elliptic: float


def fourier_check_sn_dn(zeta: float, k: float, tol: float = 1e-13) -> FourierCheck:
    """Fourier side and elliptic side of the sn/dn expansion, both in binary64."""
    if not -1.0 < zeta < 1.0:
        raise DomainError(f"zeta must lie in (-1, 1), got {zeta}")
    md = modulus_data(k)
    rho = md.K_prime / md.K
    ratio = math.exp(-math.pi * rho)

    total = 0.0
    n = 1
    while n <= _MAX_FOURIER_TERMS:
        a = math.pi * (n - 0.5)
        # sech without overflow: 2 e^{-x} / (1 + e^{-2x})
        e = math.exp(-a * rho)
        sech = 2.0 * e / (1.0 + e * e)
        term = math.sin(a * zeta) * sech
        if n % 2:
            term = -term
        total += term
        if math.pi * sech / (1.0 - ratio) < tol:
            break
        n += 1
    else:
        raise ConvergenceError(
            f"Fourier series did not converge within {_MAX_FOURIER_TERMS} terms"
        )

    tr = jacobi_real(md.K * zeta, k)
    return FourierCheck(
        series=math.pi * total,
        elliptic=-md.K * md.k * md.k_prime * tr.sn / tr.dn,
    )


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor series about 0; coefficients[j] multiplies u**j.

    Coefficients are Fractions on the exact-rational path, floats otherwise.
    """

    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, u: complex) -> complex:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * u + float(c)
        return acc


def _convolve(a: Sequence, b: Sequence, n: int):
    """Coefficient n of the Cauchy product of a and b."""
    return sum(a[i] * b[n - i] for i in range(n + 1))


def _check_order(order: int) -> None:
    if not 0 <= order <= _MAX_TAYLOR_ORDER:
        raise DomainError(
            f"Taylor order must lie in [0, {_MAX_TAYLOR_ORDER}], got {order}"
        )


def taylor_sn_cn_dn(k: float, order: int) -> tuple[PowerSeries, PowerSeries, PowerSeries]:
    """Taylor coefficients of sn, cn, dn about u = 0, up to u**order."""
    if not (0.0 < k < 1.0):
        raise DomainError(f"modulus k must lie in (0, 1), got {k}")
    _check_order(order)
    if order <= _RATIONAL_ORDER_LIMIT:
        m = Fraction(k) ** 2
        zero, one = Fraction(0), Fraction(1)
    else:
        m = k * k
        zero, one = 0.0, 1.0

    s = [zero] * (order + 1)
    c = [zero] * (order + 1)
    d = [zero] * (order + 1)
    c[0] = one
    d[0] = one
    for n in range(order):
        s[n + 1] = _convolve(c, d, n) / (n + 1)
        c[n + 1] = -_convolve(s, d, n) / (n + 1)
        d[n + 1] = -m * _convolve(s, c, n) / (n + 1)
    return (
        PowerSeries(tuple(s)),
        PowerSeries(tuple(c)),
        PowerSeries(tuple(d)),
    )


def taylor_sn_over_cd(k: float, order: int) -> PowerSeries:
    """Taylor series of sn dn / cn about 0; odd, with leading term u."""
    s, c, d = taylor_sn_cn_dn(k, order)
    sc, cc, dc = s.coefficients, c.coefficients, d.coefficients

    num = [_convolve(sc, dc, n) for n in range(order + 1)]
    # divide by cn: cn(0) = 1, so plain long division
    out = list(num)
    for n in range(order + 1):
        for j in range(1, n + 1):
            out[n] -= cc[j] * out[n - j]
    return PowerSeries(tuple(out))


def moments_from_taylor(n: int, k: float, exact: bool = False):
    """Moment m_n = (-1)^n (2n+1)! a_{2n+1} of the sn/cd Taylor series.

    With exact=True (and 2n+1 within the rational-order window) the result
    is a Fraction; otherwise binary64.
    """
    if not 0 <= n <= _MAX_MOMENT_INDEX:
        raise DomainError(f"moment index must lie in [0, {_MAX_MOMENT_INDEX}], got {n}")
    series = taylor_sn_over_cd(k, 2 * n + 1)
    a = series.coefficients[2 * n + 1]
    value = math.factorial(2 * n + 1) * a
    if n % 2:
        value = -value
    if exact:
        if not isinstance(a, Fraction):
            raise DomainError(
                f"exact moments need order {2 * n + 1} <= {_RATIONAL_ORDER_LIMIT}"
            )
        return value
    return float(value)
