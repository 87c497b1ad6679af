"""Jacobi elliptic functions and complete elliptic integrals.

Real-argument sn, cn, dn are computed by the classical descending Landen
recursion seeded by the arithmetic-geometric mean: with a0 = 1, b0 = k',
c0 = k and

    a_{n+1} = (a_n + b_n)/2,  b_{n+1} = sqrt(a_n b_n),  c_{n+1} = (a_n - b_n)/2,

the amplitude phi_N = 2^N a_N u is pulled back through

    phi_{n-1} = (phi_n + asin((c_n/a_n) sin phi_n)) / 2,

after which sn = sin phi_0, cn = cos phi_0 and dn = sqrt(1 - k^2 sn^2)
(dn is positive for every real u, so the square root loses no sign).
The quarter period is K = pi / (2 agm(1, k')).

Complex argument is reached through the real and imaginary addition
decomposition: writing u = x + iy and abbreviating s = sn(x,k), c = cn(x,k),
d = dn(x,k), s1 = sn(y,k'), c1 = cn(y,k'), d1 = dn(y,k'),

    den = c1^2 + k^2 s^2 s1^2
    sn(u) = (s d1 + i c d s1 c1) / den
    cn(u) = (c c1 - i s d s1 d1) / den
    dn(u) = (d c1 d1 - i k^2 s c s1) / den.

Evaluation is restricted to the open period rectangle |Re u| < K,
|Im u| < K' minus a margin: sn has poles at +-iK' and cn vanishes at +-K,
both on the rectangle boundary, and values inside the margin would carry
inflated rounding error.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

from .errors import DomainError, PoleProximityError

_EPS = sys.float_info.epsilon
_MAX_AGM_ITER = 64
# Default pole margin as a fraction of min(K, K'); see jacobi_complex.
_POLE_MARGIN_FACTOR = 1e-3


@dataclass(frozen=True)
class ModulusData:
    """Modulus k with its complement and both quarter periods.

    Satisfies k^2 + k_prime^2 = 1 and K(k_prime) = K_prime up to rounding.
    """

    k: float
    k_prime: float
    K: float
    K_prime: float


@dataclass(frozen=True)
class JacobiTriple:
    """One evaluation of (sn, cn, dn) at a common argument.

    cd is derived, never stored: cd = cn/dn.
    """

    sn: complex
    cn: complex
    dn: complex

    @property
    def cd(self) -> complex:
        return self.cn / self.dn


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive reals."""
    if not (a > 0.0 and b > 0.0) or not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"agm requires positive finite inputs, got ({a}, {b})")
    for _ in range(_MAX_AGM_ITER):
        if abs(a - b) <= 4.0 * _EPS * abs(a):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def _check_modulus(k: float) -> None:
    if not (0.0 < k < 1.0):
        raise DomainError(f"modulus k must lie in the open interval (0, 1), got {k}")


def complete_K(k: float) -> float:
    """Complete elliptic integral of the first kind, K(k) = pi/(2 agm(1, k'))."""
    _check_modulus(k)
    k_prime = math.sqrt((1.0 - k) * (1.0 + k))
    return 0.5 * math.pi / agm(1.0, k_prime)


def modulus_data(k: float) -> ModulusData:
    """Bundle k, k' = sqrt(1 - k^2), K(k) and K'(k) = K(k')."""
    _check_modulus(k)
    k_prime = math.sqrt((1.0 - k) * (1.0 + k))
    return ModulusData(
        k=k,
        k_prime=k_prime,
        K=0.5 * math.pi / agm(1.0, k_prime),
        K_prime=0.5 * math.pi / agm(1.0, k),
    )


def jacobi_real(u: float, k: float) -> JacobiTriple:
    """sn, cn, dn for real argument via the AGM / Landen amplitude recursion."""
    _check_modulus(k)
    u = float(u)
    if not math.isfinite(u):
        raise DomainError(f"argument must be finite, got {u}")

    k_prime = math.sqrt((1.0 - k) * (1.0 + k))
    a_seq = [1.0]
    b = k_prime
    c_seq = [k]
    n = 0
    while abs(c_seq[n]) > _EPS * a_seq[n] and n < _MAX_AGM_ITER:
        a_next = 0.5 * (a_seq[n] + b)
        b_next = math.sqrt(a_seq[n] * b)
        c_seq.append(0.5 * (a_seq[n] - b))
        a_seq.append(a_next)
        b = b_next
        n += 1

    phi = math.ldexp(a_seq[n] * u, n)
    for i in range(n, 0, -1):
        ratio = c_seq[i] / a_seq[i]
        arg = ratio * math.sin(phi)
        # rounding can push |arg| marginally above 1 when ratio is near 1
        arg = max(-1.0, min(1.0, arg))
        phi = 0.5 * (phi + math.asin(arg))

    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(max(0.0, 1.0 - (k * sn) * (k * sn)))
    return JacobiTriple(sn=sn, cn=cn, dn=dn)


def _rectangle_check(u: complex, md: ModulusData, margin: float, op: str) -> None:
    x, y = u.real, u.imag
    if abs(y) > md.K_prime - margin:
        if abs(x) < margin:
            raise PoleProximityError(
                f"{op}: argument {u} within margin {margin:.3e} of the sn pole "
                f"at {1j * math.copysign(md.K_prime, y):+.6g}"
            )
        raise PoleProximityError(
            f"{op}: |Im u| = {abs(y):.6g} within margin {margin:.3e} of the "
            f"rectangle boundary K' = {md.K_prime:.6g}"
        )
    if abs(x) > md.K - margin:
        raise PoleProximityError(
            f"{op}: |Re u| = {abs(x):.6g} within margin {margin:.3e} of the "
            f"rectangle boundary K = {md.K:.6g}"
        )


def jacobi_complex(u: complex, k: float, margin: float | None = None) -> JacobiTriple:
    """sn, cn, dn for complex u inside the period rectangle.

    The argument must satisfy |Re u| < K - margin and |Im u| < K' - margin;
    margin defaults to 1e-3 * min(K, K').
    """
    md = modulus_data(k)
    u = complex(u)
    if margin is None:
        margin = _POLE_MARGIN_FACTOR * min(md.K, md.K_prime)
    _rectangle_check(u, md, margin, "jacobi_complex")

    if u.imag == 0.0:
        return jacobi_real(u.real, k)

    re = jacobi_real(u.real, k)
    im = jacobi_real(u.imag, md.k_prime)
    s, c, d = re.sn, re.cn, re.dn
    s1, c1, d1 = im.sn, im.cn, im.dn
    m = k * k
    den = c1 * c1 + m * s * s * s1 * s1
    return JacobiTriple(
        sn=complex(s * d1, c * d * s1 * c1) / den,
        cn=complex(c * c1, -s * d * s1 * d1) / den,
        dn=complex(d * c1 * d1, -m * s * c * s1) / den,
    )


def sn_over_cd(u: complex, k: float, margin: float | None = None) -> complex:
    """sn(u,k) / cd(u,k) = sn * dn / cn on the period rectangle.

    Odd in u; vanishes at 0 with unit derivative.
    """
    tr = jacobi_complex(u, k, margin=margin)
    if abs(tr.cn) < 1e-9:
        raise PoleProximityError(
            f"sn_over_cd: cn({u}) = {tr.cn:.3e} is too close to its zero at "
            "u = +-K (pole of sn/cd)"
        )
    value = tr.sn * tr.dn / tr.cn
    if isinstance(u, complex) and u.imag == 0.0:
        return value.real if isinstance(value, complex) else value
    return value
