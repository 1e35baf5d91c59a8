"""Partition combinatorics for nilpotent orbits of sp_2n.

Orbits are labelled by symplectic partitions of 2n.  The theta orbit
attached to the r-fold cover is the symplectic collapse of (r^a b) where
2n = a*r + b, and its Gelfand-Kirillov dimension is compared with the
value n^2 - n + (r-1)/2 forced by the descent dimension count.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; zeros are dropped."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        parts = [p for p in parts if p]
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse ``"6,2"``; an exponent form ``"3^2,1"`` is accepted too."""
        parts: list[int] = []
        for tok in text.replace(" ", "").split(","):
            if not tok:
                continue
            if "^" in tok:
                base, mult = tok.split("^")
                parts.extend([int(base)] * int(mult))
            else:
                parts.append(int(tok))
        return cls(sorted(parts, reverse=True))

    @property
    def total(self) -> int:
        return sum(self)

    def transpose(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def partial_sums(self, length: int) -> list[int]:
        out, s = [], 0
        for i in range(length):
            s += self[i] if i < len(self) else 0
            out.append(s)
        return out

    def __str__(self) -> str:
        return ",".join(str(p) for p in self)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


class Order(enum.Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"


def is_symplectic(lam: Partition) -> bool:
    """Every odd part occurs with even multiplicity."""
    return all(m % 2 == 0 for p, m in Counter(lam).items() if p % 2)


def dominance_compare(lam: Partition, mu: Partition) -> Order:
    if lam.total != mu.total:
        raise ValueError(f"cannot compare partitions of {lam.total} and {mu.total}")
    length = max(len(lam), len(mu))
    a, b = lam.partial_sums(length), mu.partial_sums(length)
    ge = all(x >= y for x, y in zip(a, b))
    le = all(x <= y for x, y in zip(a, b))
    if ge and le:
        return Order.EQUAL
    if ge:
        return Order.GREATER
    if le:
        return Order.LESS
    return Order.INCOMPARABLE


def dominates(lam: Partition, mu: Partition) -> bool:
    """True when mu <= lam in dominance order."""
    return dominance_compare(lam, mu) in (Order.GREATER, Order.EQUAL)


def sp_collapse(lam: Partition) -> Partition:
    """Largest symplectic partition dominated by ``lam``.

    Repeatedly take the largest odd part q of odd multiplicity, lower its
    last occurrence to q-1 and raise the first later part below q-1 by one.
    """
    if lam.total % 2:
        raise ValueError(f"symplectic collapse needs an even total, got {lam.total}")
    parts = list(lam)
    while True:
        counts = Counter(parts)
        bad = [p for p, m in counts.items() if p % 2 and m % 2]
        if not bad:
            return Partition(parts)
        q = max(bad)
        last = max(i for i, p in enumerate(parts) if p == q)
        parts[last] = q - 1
        for i in range(last + 1, len(parts) + 1):
            if i == len(parts):
                parts.append(1)
                break
            if parts[i] < q - 1:
                parts[i] += 1
                break
        parts = [p for p in parts if p]


def partitions_of(total: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``total`` in reverse lexicographic order."""
    yield from (Partition(p) for p in _partitions(total, total if max_part is None else max_part))


@lru_cache(maxsize=None)
def _partitions(total: int, max_part: int) -> tuple:
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            out.append((first,) + rest)
    return tuple(out)


def sp_collapse_bruteforce(lam: Partition) -> Partition:
    """Oracle: maximum of all symplectic partitions dominated by ``lam``.

    Raises if the dominated symplectic set has no unique maximum.
    """
    if lam.total % 2:
        raise ValueError(f"symplectic collapse needs an even total, got {lam.total}")
    below = [mu for mu in partitions_of(lam.total) if is_symplectic(mu) and dominates(lam, mu)]
    tops = [mu for mu in below if all(dominates(mu, nu) for nu in below)]
    if len(tops) != 1:
        raise AssertionError(f"no unique maximal symplectic partition below {lam}")
    return tops[0]


def theta_orbit_pre_collapse(n: int, r: int) -> Partition:
    """The partition (r^a b) with 2n = a*r + b and 0 <= b < r."""
    _check_cover(n, r)
    a, b = divmod(2 * n, r)
    return Partition([r] * a + ([b] if b else []))


def conjectured_orbit(n: int, r: int) -> Partition:
    return sp_collapse(theta_orbit_pre_collapse(n, r))


def _check_cover(n: int, r: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if r < 1 or r % 2 == 0:
        raise ValueError(f"r must be an odd positive integer, got {r}")
    if r >= 2 * n:
        raise ValueError(f"r={r} >= 2n={2 * n}: the theta representation is generic, no orbit label")


def orbit_dimension(lam: Partition) -> int:
    """Dimension of the nilpotent sp_2n orbit with Jordan type ``lam``."""
    if lam.total % 2 or not is_symplectic(lam):
        raise ValueError(f"{lam} is not a symplectic partition")
    n = lam.total // 2
    sq = sum(s * s for s in lam.transpose())
    odd = sum(1 for p in lam if p % 2)
    twice = 2 * (2 * n * n + n) - sq - odd
    assert twice % 2 == 0
    return twice // 2


def gk_dimension(lam: Partition, n: int) -> Fraction:
    if lam.total != 2 * n:
        raise ValueError(f"{lam} is not a partition of 2n={2 * n}")
    d = orbit_dimension(lam)
    if d % 2:
        raise AssertionError(f"odd orbit dimension {d} for {lam}")
    return Fraction(d, 2)


def unipotent_radical_dim(n: int, k: int) -> int:
    """dim U_{2n,k}, the radical of the parabolic with Levi GL_1^k x Sp_2(n-k)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return k * (2 * n - k)


@dataclass(frozen=True)
class OrbitReport:
    n: int
    r: int
    orbit: Partition
    gk_dim: Fraction
    target_dim: Fraction
    # both sides of: dim(min rep) + dim(theta) = dim U + dim(generic)
    balance_lhs: Fraction
    balance_rhs: Fraction

    @property
    def satisfied(self) -> bool:
        return self.gk_dim == self.target_dim

    @property
    def balanced(self) -> bool:
        return self.balance_lhs == self.balance_rhs

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "orbit": list(self.orbit),
            "gk_dim": frac_str(self.gk_dim),
            "target_dim": frac_str(self.target_dim),
            "satisfied": self.satisfied,
            "balance": {"lhs": frac_str(self.balance_lhs), "rhs": frac_str(self.balance_rhs)},
        }


def dimension_equation_check(n: int, r: int) -> OrbitReport:
    orbit = conjectured_orbit(n, r)
    gk = gk_dimension(orbit, n)
    target = Fraction(n * n - n) + Fraction(r - 1, 2)
    m2 = 2 * n - r + 1
    lhs = Fraction(m2, 2) + gk
    rhs = unipotent_radical_dim(n, (r - 1) // 2) + Fraction(m2 * m2, 4)
    return OrbitReport(n, r, orbit, gk, target, lhs, rhs)


def closed_form_orbit(n: int, r: int) -> Partition:
    """Closed-form orbit for n <= r < 2n, split by the parity of n."""
    if not (r % 2 and n <= r < 2 * n):
        raise ValueError(f"closed form needs odd r with n <= r < 2n, got n={n}, r={r}")
    if n % 2 == 0:
        k = n // 2
        i = (4 * k - 1 - r) // 2
        return Partition([4 * k - 2 * i - 2, 2 * i + 2])
    k = (n - 1) // 2
    if r == 2 * k + 1:
        return Partition([2 * k + 1, 2 * k + 1])
    i = (4 * k + 1 - r) // 2
    return Partition([4 * k - 2 * i, 2 * i + 2])


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
