"""Exact arithmetic in the cyclotomic integers Z[zeta_M].

An element sum_k a_k zeta_M^k is stored as a length-M integer vector.  The
canonical form writes zeta_M as a product of zeta_q over the prime powers
q = p^e exactly dividing M (Chinese remainder coordinates) and, along each
factor, eliminates the exponents d*p^(e-1) + s with d = p-1 using
Phi_q(x) = sum_{d<p} x^(d p^(e-1)).  The surviving monomials form a
Z-basis of Z[zeta_M], so two vectors represent the same number iff their
canonical forms agree.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np


def factorize(m: int) -> list[tuple[int, int]]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1
    if m > 1:
        out.append((m, 1))
    return out


@lru_cache(maxsize=32)
def _layout(m: int):
    """Prime-power factors of m and the CRT coordinates of every exponent."""
    factors = [(p, e, p ** e) for p, e in factorize(m)]
    ex = np.arange(m, dtype=np.int64)
    coords = []
    for p, e, q in factors:
        inv = pow((m // q) % q, -1, q) if q > 1 else 0
        coords.append((ex % q) * inv % q)
    return factors, tuple(coords)


def _canonical(m: int, vec: np.ndarray) -> np.ndarray:
    if m == 1:
        return vec.copy()
    factors, coords = _layout(m)
    shape = tuple(q for _, _, q in factors)
    tensor = np.zeros(shape, dtype=np.int64)
    tensor[coords] = vec
    for axis, (p, e, q) in enumerate(factors):
        t = np.moveaxis(tensor, axis, 0)
        rest = t.shape[1:]
        t = t.reshape((p, q // p) + rest)
        top = t[p - 1].copy()
        t[: p - 1] -= top
        t[p - 1] = 0
        tensor = np.moveaxis(t.reshape((q,) + rest), 0, axis)
    return tensor[coords]


class CycScalar:
    """Element of Z[zeta_M], always held in canonical form."""

    __slots__ = ("modulus", "_vec")

    def __init__(self, modulus: int, coeffs=None, _canon: bool = False):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        self.modulus = modulus
        vec = np.zeros(modulus, dtype=np.int64)
        if coeffs is not None:
            if isinstance(coeffs, dict):
                for k, c in coeffs.items():
                    vec[int(k) % modulus] += int(c)
            else:
                arr = np.asarray(coeffs, dtype=np.int64)
                if arr.shape != (modulus,):
                    raise ValueError(f"expected {modulus} coefficients, got shape {arr.shape}")
                vec += arr
        self._vec = vec if _canon else _canonical(modulus, vec)
        self._vec.setflags(write=False)

    @classmethod
    def from_int(cls, c: int, modulus: int = 1) -> CycScalar:
        return cls(modulus, {0: c})

    @classmethod
    def zeta(cls, modulus: int, k: int = 1) -> CycScalar:
        return cls(modulus, {k: 1})

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._vec)

    def sparse(self) -> list[list[int]]:
        nz = np.nonzero(self._vec)[0]
        return [[int(k), int(self._vec[k])] for k in nz]

    def lift(self, modulus: int) -> CycScalar:
        """The same number viewed in Z[zeta_modulus]; needs self.modulus | modulus."""
        if modulus % self.modulus:
            raise ValueError(f"cannot lift from zeta_{self.modulus} to zeta_{modulus}")
        if modulus == self.modulus:
            return self
        vec = np.zeros(modulus, dtype=np.int64)
        vec[np.arange(self.modulus) * (modulus // self.modulus)] = self._vec
        return CycScalar(modulus, vec)

    def _common(self, other) -> tuple[CycScalar, CycScalar]:
        if isinstance(other, int):
            other = CycScalar.from_int(other)
        if not isinstance(other, CycScalar):
            return NotImplemented, NotImplemented
        m = self.modulus * other.modulus // gcd(self.modulus, other.modulus)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CycScalar(a.modulus, a._vec + b._vec, _canon=True)

    __radd__ = __add__

    def __neg__(self) -> CycScalar:
        return CycScalar(self.modulus, -self._vec, _canon=True)

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return CycScalar(a.modulus, a._vec - b._vec, _canon=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycScalar(self.modulus, self._vec * other, _canon=True)
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        m = a.modulus
        ia, ib = np.nonzero(a._vec)[0], np.nonzero(b._vec)[0]
        out = np.zeros(m, dtype=np.int64)
        for k in ia:
            out[(k + ib) % m] += a._vec[k] * b._vec[ib]
        return CycScalar(m, out)

    __rmul__ = __mul__

    def conj(self) -> CycScalar:
        """Complex conjugation, zeta -> zeta^-1."""
        idx = (-np.arange(self.modulus)) % self.modulus
        vec = np.zeros(self.modulus, dtype=np.int64)
        vec[idx] = self._vec
        return CycScalar(self.modulus, vec)

    def is_zero(self) -> bool:
        return not self._vec.any()

    def as_int(self) -> int | None:
        """The rational integer this equals, if any."""
        if self._vec[1:].any():
            return None
        return int(self._vec[0])

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CycScalar.from_int(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        a, b = self._common(other)
        return bool(np.array_equal(a._vec, b._vec))

    __hash__ = None

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*z^{k}" for k, c in self.sparse()) or "0"
        return f"CycScalar[{self.modulus}]({terms})"

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "coefficients": self.sparse()}


def cyclotomic_polynomial(m: int) -> list[int]:
    """Integer coefficients of Phi_m, lowest degree first."""
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _divide_exact(poly, cyclotomic_polynomial(d))
    return poly


def _divide_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, dj in enumerate(den):
            num[k + j] -= c * dj
    if any(num):
        raise ArithmeticError("division is not exact")
    return out


def dense_remainder(m: int, coeffs) -> list[int]:
    """Remainder of sum coeffs[k] x^k modulo Phi_m (schoolbook division).

    Independent of the canonical form; used to cross-check it for small m.
    """
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rem = [int(c) for c in coeffs]
    for k in range(len(rem) - 1, deg - 1, -1):
        c = rem[k]
        if c:
            for j, pj in enumerate(phi):
                rem[k - deg + j] -= c * pj
    return rem[:deg] + [0] * max(0, deg - len(rem))


class QScalar:
    """value * q^q_exp with q a prime and q_exp rational; q is never raised to a fraction."""

    __slots__ = ("value", "q_exp", "q")

    def __init__(self, value: CycScalar, q_exp=0, q: int = 1):
        self.value = value
        self.q_exp = Fraction(q_exp) if not value.is_zero() else Fraction(0)
        self.q = q

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __mul__(self, other):
        if isinstance(other, QScalar):
            if self.q != other.q and 1 not in (self.q, other.q):
                raise ValueError("cannot multiply values over different primes")
            return QScalar(self.value * other.value, self.q_exp + other.q_exp, max(self.q, other.q))
        if isinstance(other, (int, CycScalar)):
            return QScalar(self.value * other, self.q_exp, self.q)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> QScalar:
        return QScalar(self.value.conj(), self.q_exp, self.q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QScalar):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        diff = self.q_exp - other.q_exp
        if diff.denominator != 1:
            raise ValueError("comparison would need a square root of q")
        k = int(diff)
        if k >= 0:
            return self.value * (self.q ** k) == other.value
        return self.value == other.value * (other.q ** -k)

    __hash__ = None

    def __repr__(self) -> str:
        return f"QScalar({self.value!r}, q^{self.q_exp}, q={self.q})"

    def to_json(self) -> dict:
        d = self.value.to_json()
        d["q_exp"] = _fs(self.q_exp)
        d["q"] = self.q
        return d


def _fs(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
