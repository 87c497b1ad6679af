"""Shared helpers: independent oracles the library must agree with.

Both oracles deliberately avoid the algorithms used inside the package
(AGM iteration, Landen recursion) so agreement is evidence, not tautology.
"""

from __future__ import annotations

import math

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def hypergeometric_K(k: float, tol: float = 1e-18) -> float:
    """Complete elliptic integral via (pi/2) 2F1(1/2, 1/2; 1; k^2).

    Term ratio ((2n-1)/(2n))^2 k^2, so the series converges for any |k| < 1;
    slow near 1 but exact arithmetic-free.
    """
    m = k * k
    total = 1.0
    term = 1.0
    for n in range(1, 4000):
        term *= ((2 * n - 1) / (2 * n)) ** 2 * m
        total += term
        if term < tol * total:
            break
    else:
        raise RuntimeError(f"hypergeometric series stalled for k={k}")
    return 0.5 * math.pi * total


def sn_by_inversion(u: float, k: float) -> float:
    """sn(u) for 0 < u < K by inverting the incomplete integral F(phi, k).

    Uses adaptive quadrature and bracketing root search only, no AGM.
    """
    from scipy.integrate import quad
    from scipy.optimize import brentq

    def F(phi: float) -> float:
        val, _ = quad(
            lambda th: 1.0 / math.sqrt(1.0 - (k * math.sin(th)) ** 2),
            0.0, phi, epsabs=1e-14, epsrel=1e-13,
        )
        return val

    phi = brentq(lambda p: F(p) - u, 0.0, 0.5 * math.pi, xtol=1e-15, rtol=8.9e-16)
    return math.sin(phi)


@pytest.fixture(scope="session")
def k_grid() -> tuple:
    return (0.2, 0.5, 0.8)
