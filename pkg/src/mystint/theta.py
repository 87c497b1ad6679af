"""Jacobi theta functions, modular transformations, and the lattice chain.

All four theta functions are summed directly from their q-series with nome
q = exp(i pi tau), Im tau > 0:

    theta1(z,tau) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)z)
    theta2(z,tau) = 2 sum_{n>=0} q^{(n+1/2)^2} cos((2n+1)z)
    theta3(z,tau) = 1 + 2 sum_{n>=1} q^{n^2} cos(2nz)
    theta4(z,tau) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2nz)

Truncation is driven by the envelope 2 |q|^{e(n)} exp(a(n) |Im z|), where
e(n) and a(n) are the quadratic exponent and trigonometric frequency of the
next term; summation stops once the envelope is past its maximum and falls
below tol * (|partial sum| + tol).

The chain ties five equivalent closed forms of one integral to each other.
Starting from tau = i K'/K it visits the lattices

    t  = (1+tau)/(1-tau)
    t1 = t + 1          (shift)
    t2 = t1 / 2         (halving)
    t3 = -1/t2 = tau - 1 (inversion)
    t4 = t3 + 1 = tau   (shift)

and at each lattice expresses the integral as a ratio of theta values; the
final stage collapses to sn/cd through the classical bridges

    k = theta2(0)^2/theta3(0)^2,  k' = theta4(0)^2/theta3(0)^2,
    K = (pi/2) theta3(0)^2.

The transformation helpers implement the three lattice moves as value-level
maps so each identity can be checked against the direct q-series:

    shift      theta_i(z, tau+1) from values at tau
    halving    theta1/theta4(z, tau) from values at tau/2
    inversion  theta_i(z, -1/tau) from values at tau

The residue series behind the chain converges on the contour midway between
consecutive poles z_n = pi (n - 1/2) / (1 - tau); no runtime object tracks
those midpoints, the chain works with the summed closed forms only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .elliptic import JacobiTriple, modulus_data, sn_over_cd
from .errors import ConvergenceError, DomainError

# Lattices with Im <= this bound put |q| too close to 1 for the series
# envelope to be meaningful; the chain never produces them for k in
# [0.05, 0.995].
MIN_LATTICE_IM = 0.05

_MAX_TERMS = 10_000
_DEFAULT_TOL = 1e-14


def _check_lattice(tau: complex) -> complex:
    tau = complex(tau)
    if tau.imag <= 0.0:
        raise DomainError(f"lattice parameter must have Im > 0, got {tau}")
    if tau.imag <= MIN_LATTICE_IM:
        raise DomainError(
            f"lattice parameter {tau} has Im <= {MIN_LATTICE_IM}; "
            "|q| is too close to 1 for reliable q-series truncation"
        )
    return tau


def theta(index: int, z: complex, tau: complex, tol: float = _DEFAULT_TOL) -> complex:
    """One Jacobi theta function by direct q-series summation."""
    if index not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1, 2, 3 or 4, got {index}")
    tau = _check_lattice(tau)
    z = complex(z)
    value, _ = _theta_sum(index, z, tau, tol)
    return value


def _theta_sum(index: int, z: complex, tau: complex, tol: float) -> tuple[complex, int]:
    """Return (value, truncation index).  Truncation is deterministic."""
    ipi_tau = 1j * math.pi * tau
    im_z = abs(z.imag)
    q_decay = math.pi * tau.imag
    # envelope exp(-q_decay*e(n) + a(n)*im_z) peaks near n* = im_z/(2*q_decay)
    n_peak = im_z / (2.0 * q_decay)

    total: complex = 1.0 + 0.0j if index in (3, 4) else 0.0 + 0.0j
    n = 1 if index in (3, 4) else 0
    while n <= _MAX_TERMS:
        if index == 1:
            term = 2.0 * cmath.exp(ipi_tau * (n + 0.5) ** 2) * cmath.sin((2 * n + 1) * z)
            if n % 2:
                term = -term
            envelope = 2.0 * math.exp(-q_decay * (n + 0.5) ** 2 + (2 * n + 1) * im_z)
        elif index == 2:
            term = 2.0 * cmath.exp(ipi_tau * (n + 0.5) ** 2) * cmath.cos((2 * n + 1) * z)
            envelope = 2.0 * math.exp(-q_decay * (n + 0.5) ** 2 + (2 * n + 1) * im_z)
        elif index == 3:
            term = 2.0 * cmath.exp(ipi_tau * n * n) * cmath.cos(2 * n * z)
            envelope = 2.0 * math.exp(-q_decay * n * n + 2 * n * im_z)
        else:
            term = 2.0 * cmath.exp(ipi_tau * n * n) * cmath.cos(2 * n * z)
            if n % 2:
                term = -term
            envelope = 2.0 * math.exp(-q_decay * n * n + 2 * n * im_z)
        total += term
        if n > n_peak and envelope < tol * (abs(total) + tol):
            return total, n
        n += 1
    raise ConvergenceError(
        f"theta{index}(z={z}, tau={tau}) did not converge within {_MAX_TERMS} terms"
    )


@dataclass(frozen=True)
class ThetaValue:
    """One theta evaluation together with the truncation index used."""

    index: int
    z: complex
    tau: complex
    value: complex
    terms: int

    @classmethod
    def compute(cls, index: int, z: complex, tau: complex, tol: float = _DEFAULT_TOL) -> "ThetaValue":
        if index not in (1, 2, 3, 4):
            raise ValueError(f"theta index must be 1, 2, 3 or 4, got {index}")
        tau = _check_lattice(tau)
        z = complex(z)
        value, terms = _theta_sum(index, z, tau, tol)
        return cls(index=index, z=z, tau=tau, value=value, terms=terms)


@dataclass(frozen=True)
class ThetaChainParams:
    """The five lattice parameters visited by the chain, plus tau itself."""

    tau: complex
    t: complex
    t1: complex
    t2: complex
    t3: complex
    t4: complex


def chain_params(k: float) -> ThetaChainParams:
    """Lattice chain for modulus k; every member lies in the upper half-plane."""
    md = modulus_data(k)
    tau = 1j * md.K_prime / md.K
    t = (1.0 + tau) / (1.0 - tau)
    t1 = t + 1.0
    t2 = 0.5 * t1
    t3 = -1.0 / t2
    t4 = t3 + 1.0
    for name, lattice in (("t", t), ("t1", t1), ("t2", t2), ("t3", t3), ("t4", t4)):
        if lattice.imag <= MIN_LATTICE_IM:
            raise DomainError(
                f"chain lattice {name} = {lattice} has Im <= {MIN_LATTICE_IM} at k = {k}"
            )
    return ThetaChainParams(tau=tau, t=t, t1=t1, t2=t2, t3=t3, t4=t4)


def transform_shift(z: complex, tau: complex, tol: float = _DEFAULT_TOL) -> tuple[complex, complex, complex, complex]:
    """theta_i(z, tau+1) predicted from values at tau.

    theta1 and theta2 pick up exp(i pi/4); theta3 and theta4 swap.
    """
    tau = _check_lattice(tau)
    phase = cmath.exp(0.25j * math.pi)
    return (
        phase * theta(1, z, tau, tol),
        phase * theta(2, z, tau, tol),
        theta(4, z, tau, tol),
        theta(3, z, tau, tol),
    )


class HalvedThetas(NamedTuple):
    """Predictions of transform_half: values at (z, tau) from lattice tau/2."""

    theta1: complex
    theta4: complex
    # theta2(0,tau)*theta3(0,tau), the even constant product the chain needs
    even_product: complex


def transform_half(z: complex, tau: complex, tol: float = _DEFAULT_TOL) -> HalvedThetas:
    """theta1, theta4 at (z, tau) assembled from the half lattice tau/2.

        theta1(z, tau) = theta1(z/2, tau/2) theta2(z/2, tau/2) / theta4(0, tau)
        theta4(z, tau) = theta3(z/2, tau/2) theta4(z/2, tau/2) / theta4(0, tau)
        theta2(0, tau) theta3(0, tau) = theta2(0, tau/2)^2 / 2

    The left-hand sides use the direct series only for the constant
    theta4(0, tau); everything z-dependent comes from tau/2.
    """
    tau = _check_lattice(tau)
    half = 0.5 * tau
    _check_lattice(half)
    w = 0.5 * z
    t4_0 = theta(4, 0.0, tau, tol)
    return HalvedThetas(
        theta1=theta(1, w, half, tol) * theta(2, w, half, tol) / t4_0,
        theta4=theta(3, w, half, tol) * theta(4, w, half, tol) / t4_0,
        even_product=0.5 * theta(2, 0.0, half, tol) ** 2,
    )


def transform_inversion(z: complex, tau: complex, tol: float = _DEFAULT_TOL) -> tuple[complex, complex, complex, complex]:
    """theta_i(z, -1/tau) predicted from values at tau.

    With A = sqrt(-i tau) (principal branch) and G = exp(i tau z^2 / pi):

        theta1(z, -1/tau) = -i A G theta1(tau z, tau)
        theta2(z, -1/tau) =    A G theta4(tau z, tau)
        theta3(z, -1/tau) =    A G theta3(tau z, tau)
        theta4(z, -1/tau) =    A G theta2(tau z, tau)

    For every lattice this package produces, -i tau lies in the right
    half-plane, so the principal square root never crosses its cut.
    """
    tau = _check_lattice(tau)
    minus_i_tau = -1j * tau
    assert minus_i_tau.real > 0.0, "sqrt branch: -i*tau must lie in the right half-plane"
    amp = cmath.sqrt(minus_i_tau) * cmath.exp(1j * tau * z * z / math.pi)
    w = tau * z
    return (
        -1j * amp * theta(1, w, tau, tol),
        amp * theta(4, w, tau, tol),
        amp * theta(3, w, tau, tol),
        amp * theta(2, w, tau, tol),
    )


def chain_expression(stage: int, v: float, k: float, tol: float = _DEFAULT_TOL) -> complex:
    """One of the five closed forms of the integral, all equal for |v| < 1.

    stage 0: lattice t,  -(i pi)/(K(1-tau)) th2(0) th4(0) th1(pi t v/2)/th3(pi t v/2)
    stage 1: lattice t1, -(pi)/(K(1-tau))  th2(0) th3(0) th1(pi t v/2)/th4(pi t v/2)
    stage 2: lattice t2, -(pi)/(2K(1-tau)) th2(0)^2 th1 th2/(th3 th4) at pi t v/4
    stage 3: lattice t3, -(pi)/(2K)        th4(0)^2 th1 th4/(th3 th2) at pi t v t3/4
    stage 4: lattice tau,-(pi)/(2K)        th3(0)^2 th1 th3/(th4 th2) at pi t v t3/4

    Stage 4 equals sn(w,k)/cd(w,k) at w = v (K + iK')/2.
    """
    if stage not in (0, 1, 2, 3, 4):
        raise ValueError(f"stage must be 0..4, got {stage}")
    if not -1.0 < v < 1.0:
        raise DomainError(f"v must lie in (-1, 1), got {v}")
    md = modulus_data(k)
    p = chain_params(k)
    K, tau, t = md.K, p.tau, p.t

    if stage == 0:
        z = 0.5 * math.pi * t * v
        return (
            -1j * math.pi / (K * (1.0 - tau))
            * theta(2, 0.0, p.t, tol) * theta(4, 0.0, p.t, tol)
            * theta(1, z, p.t, tol) / theta(3, z, p.t, tol)
        )
    if stage == 1:
        z = 0.5 * math.pi * t * v
        return (
            -math.pi / (K * (1.0 - tau))
            * theta(2, 0.0, p.t1, tol) * theta(3, 0.0, p.t1, tol)
            * theta(1, z, p.t1, tol) / theta(4, z, p.t1, tol)
        )
    if stage == 2:
        z = 0.25 * math.pi * t * v
        return (
            -0.5 * math.pi / (K * (1.0 - tau))
            * theta(2, 0.0, p.t2, tol) ** 2
            * theta(1, z, p.t2, tol) * theta(2, z, p.t2, tol)
            / (theta(3, z, p.t2, tol) * theta(4, z, p.t2, tol))
        )
    z = 0.25 * math.pi * t * v * p.t3
    if stage == 3:
        return (
            -0.5 * math.pi / K
            * theta(4, 0.0, p.t3, tol) ** 2
            * theta(1, z, p.t3, tol) * theta(4, z, p.t3, tol)
            / (theta(3, z, p.t3, tol) * theta(2, z, p.t3, tol))
        )
    return (
        -0.5 * math.pi / K
        * theta(3, 0.0, tau, tol) ** 2
        * theta(1, z, tau, tol) * theta(3, z, tau, tol)
        / (theta(4, z, tau, tol) * theta(2, z, tau, tol))
    )


class ThetaJacobi(NamedTuple):
    """Jacobi values reconstructed purely from theta series."""

    triple: JacobiTriple
    k: float
    k_prime: float
    K: float


def jacobi_via_theta(u: complex, k: float, tol: float = _DEFAULT_TOL) -> ThetaJacobi:
    """sn, cn, dn at u from theta ratios, with the reconstructed k, k', K.

        sn = (th3(0)/th2(0)) th1(zeta)/th4(zeta)
        cn = (th4(0)/th2(0)) th2(zeta)/th4(zeta)
        dn = (th4(0)/th3(0)) th3(zeta)/th4(zeta),   zeta = u / th3(0)^2

    Independent of the Landen-based route; the two must agree wherever both
    are defined.
    """
    md = modulus_data(k)
    tau = 1j * md.K_prime / md.K
    th2_0 = theta(2, 0.0, tau, tol)
    th3_0 = theta(3, 0.0, tau, tol)
    th4_0 = theta(4, 0.0, tau, tol)
    k_rec = abs(th2_0**2 / th3_0**2)
    k_prime_rec = abs(th4_0**2 / th3_0**2)
    K_rec = 0.5 * math.pi * abs(th3_0**2)

    zeta = complex(u) / (th3_0**2)
    th1 = theta(1, zeta, tau, tol)
    th2 = theta(2, zeta, tau, tol)
    th3 = theta(3, zeta, tau, tol)
    th4 = theta(4, zeta, tau, tol)
    triple = JacobiTriple(
        sn=(th3_0 / th2_0) * th1 / th4,
        cn=(th4_0 / th2_0) * th2 / th4,
        dn=(th4_0 / th3_0) * th3 / th4,
    )
    return ThetaJacobi(triple=triple, k=k_rec, k_prime=k_prime_rec, K=K_rec)


def chain_check(v: float, k: float, tol: float = _DEFAULT_TOL) -> tuple[list[complex], complex]:
    """All five stage values plus sn/cd at v (K + iK')/2, for comparison."""
    stages = [chain_expression(s, v, k, tol) for s in range(5)]
    md = modulus_data(k)
    w = 0.5 * v * (md.K + 1j * md.K_prime)
    return stages, sn_over_cd(w, k)
