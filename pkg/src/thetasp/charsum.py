"""Power residue symbols, tame Hilbert symbols, Gauss sums and unit integrals.

The residue field is F_p with p = 1 mod n.  All values are exact elements
of Z[zeta_M] tagged with a rational power of p (a QScalar); the square
root of p in the normalised Gauss sum is never materialised.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclotomic import CycScalar, QScalar, factorize


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return factorize(p) == [(p, 1)]


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest positive primitive root mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return 1
    qs = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("no primitive root")


@dataclass(frozen=True)
class LocalFieldSpec:
    p: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.n < 1 or self.n % 2 == 0:
            raise ValueError(f"n must be odd and positive, got {self.n}")
        if (self.p - 1) % self.n:
            raise ValueError(f"need p = 1 mod n, got p={self.p}, n={self.n}")

    @property
    def omega(self) -> int:
        """Fixed primitive n-th root of unity mod p: g^((p-1)/n) for the smallest primitive root g."""
        return pow(primitive_root(self.p), (self.p - 1) // self.n, self.p)

    def residue_table(self) -> np.ndarray:
        return _residue_table(self.p, self.n)


@lru_cache(maxsize=None)
def _residue_table(p: int, n: int) -> np.ndarray:
    """table[e] = power residue exponent of e mod p (entry 0 unused)."""
    omega = pow(primitive_root(p), (p - 1) // n, p)
    dlog = {pow(omega, k, p): k for k in range(n)}
    table = np.zeros(p, dtype=np.int64)
    for e in range(1, p):
        table[e] = dlog[pow(e, (p - 1) // n, p)]
    table.setflags(write=False)
    return table


def power_residue(eps: int, spec: LocalFieldSpec) -> int:
    """k in Z/n with eps^((p-1)/n) = omega^k mod p."""
    eps %= spec.p
    if eps == 0:
        raise ValueError(f"{eps} is not a unit mod {spec.p}")
    return int(spec.residue_table()[eps])


def tame_hilbert(v1: int, u1: int, v2: int, u2: int, spec: LocalFieldSpec) -> int:
    """Exponent of (p^v1 u1, p^v2 u2) as the power residue of (-1)^(v1 v2) u1^v2 u2^-v1."""
    p = spec.p
    if u1 % p == 0 or u2 % p == 0:
        raise ValueError("unit parts must be prime to p")
    x = pow(-1, v1 * v2, p) * pow(u1, v2, p) * pow(u2, -v1, p)
    return power_residue(x % p, spec)


def _character_sum(m: int, t: int, spec: LocalFieldSpec) -> CycScalar:
    """sum over eps in (Z/p^m)^x of zeta_n^(t k(eps)) zeta_{p^m}^eps, in Z[zeta_{n p^m}]."""
    p, n = spec.p, spec.n
    pm = p ** m
    modulus = n * pm
    eps = np.arange(1, pm, dtype=np.int64)
    eps = eps[eps % p != 0]
    k = spec.residue_table()[eps % p]
    expo = ((t % n) * k * pm + eps * n) % modulus
    return CycScalar(modulus, np.bincount(expo, minlength=modulus))


def gauss_sum(t: int, spec: LocalFieldSpec) -> QScalar:
    """G_t = p^(-1/2) g_t; ``.value`` holds the unnormalised sum g_t."""
    return QScalar(_character_sum(1, t, spec), Fraction(-1, 2), spec.p)


def unit_integral(m: int, t: int, spec: LocalFieldSpec) -> QScalar:
    """Integral of chi^t(eps) psi(p^-m eps) over the units, vol(integers) = 1."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return QScalar(_character_sum(m, t, spec), -m, spec.p)
