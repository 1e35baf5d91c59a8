"""Unipotent subgroups as Lie-algebra direction spans, plus linear characters.

A group is recorded by a list of nilpotent directions in sp_2n; group
statements (products, conjugates, commutators) become linear algebra on
the span.  A character psi(sum c_ij u_ij) is recorded by its weight
matrix C and evaluated on directions as sum C_ij D_ij.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from ..linalg import RationalMatrix, Span, as_fraction, bracket
from .symplectic import estar, in_lie_algebra, is_symplectic, mirror, root_rep, shift_entries


class UnipotentFamily:
    def __init__(self, n: int, directions: Iterable[RationalMatrix], name: str = ""):
        self.n = n
        dirs = list(directions)
        for d in dirs:
            if d.size != 2 * n:
                raise ValueError(f"direction of size {d.size} in a family for Sp_{2 * n}")
        self.span = Span([d.flat() for d in dirs], 4 * n * n)
        keep = {tuple(v) for v in self.span.basis}
        # independent directions, in the order given
        self.directions = []
        for d in dirs:
            if d.flat() in keep:
                keep.discard(d.flat())
                self.directions.append(d)
        self.name = name

    @classmethod
    def from_positions(cls, n: int, positions: Iterable[tuple[int, int]], name: str = "") -> UnipotentFamily:
        seen, dirs = set(), []
        for i, j in positions:
            rep = root_rep(n, i, j)
            if rep not in seen:
                seen.add(rep)
                dirs.append(estar(n, i, j))
        return cls(n, dirs, name)

    def __repr__(self) -> str:
        return f"UnipotentFamily({self.name!r}, n={self.n}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return self.span.dim

    @property
    def size(self) -> int:
        return 2 * self.n

    def contains(self, d: RationalMatrix) -> bool:
        return self.span.contains(d.flat())

    def same_span(self, other: UnipotentFamily) -> bool:
        return self.n == other.n and self.span == other.span

    def is_lie_algebra_valid(self) -> bool:
        return all(in_lie_algebra(d) for d in self.directions)

    def is_subalgebra(self) -> bool:
        ds = self.directions
        return all(self.contains(bracket(a, b)) for k, a in enumerate(ds) for b in ds[k + 1:])

    def is_abelian(self) -> bool:
        ds = self.directions
        return all(bracket(a, b).is_zero() for k, a in enumerate(ds) for b in ds[k + 1:])

    def is_nilpotent(self) -> bool:
        return all((d ** (2 * self.n)).is_zero() for d in self.directions)

    def element(self, params: Sequence) -> RationalMatrix:
        """exp(sum params_k D_k), exact since the sum is nilpotent."""
        if len(params) != len(self.directions):
            raise ValueError(f"expected {len(self.directions)} parameters")
        x = RationalMatrix.zero(self.size)
        for c, d in zip(params, self.directions):
            if c:
                x = x + d.scale(c)
        return exp_nilpotent(x)

    def random_element(self, rng: random.Random) -> RationalMatrix:
        params = [Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in self.directions]
        return self.element(params)

    def exponentiates_symplectically(self, rng: random.Random, points: int = 3) -> bool:
        return all(is_symplectic(self.random_element(rng)) for _ in range(points))

    def conjugate(self, w: RationalMatrix, name: str | None = None) -> UnipotentFamily:
        wi = w.inverse()
        return UnipotentFamily(self.n, [w @ d @ wi for d in self.directions], name or f"{self.name}^w")

    def structure_constants(self) -> list:
        """c[a][b] = coordinates of [D_a, D_b] in the direction basis."""
        out = []
        for a in self.directions:
            row = []
            for b in self.directions:
                coords = self.span.coordinates(bracket(a, b).flat())
                row.append(coords)
            out.append(row)
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "directions": [
                [[i, j, _fs(v)] for (i, j), v in sorted(d.support().items())] for d in self.directions
            ],
        }


def direct_sum(*families: UnipotentFamily, name: str = "") -> UnipotentFamily:
    n = families[0].n
    dirs = [d for f in families for d in f.directions]
    return UnipotentFamily(n, dirs, name or "*".join(f.name for f in families))


def exp_nilpotent(x: RationalMatrix) -> RationalMatrix:
    out = RationalMatrix.identity(x.size)
    term = RationalMatrix.identity(x.size)
    for k in range(1, x.size + 1):
        term = (term @ x).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
    return out


class CharacterFunctional:
    """psi(sum C_ij u_ij) on a unipotent family."""

    def __init__(self, family: UnipotentFamily, weights: dict | RationalMatrix, name: str = ""):
        self.family = family
        if isinstance(weights, RationalMatrix):
            self.weights = weights
        else:
            self.weights = RationalMatrix.from_entries(family.size, weights)
        self.name = name

    @classmethod
    def trivial(cls, family: UnipotentFamily) -> CharacterFunctional:
        return cls(family, {}, "1")

    def value(self, d: RationalMatrix) -> Fraction:
        return sum((c * x for c, x in zip(self.weights.flat(), d.flat()) if c), Fraction(0))

    def values(self) -> list[Fraction]:
        return [self.value(d) for d in self.family.directions]

    def is_trivial(self) -> bool:
        return not any(self.values())

    def is_character(self) -> bool:
        """Vanishes on all brackets of the family."""
        ds = self.family.directions
        return all(self.value(bracket(a, b)) == 0 for k, a in enumerate(ds) for b in ds[k + 1:])

    def transport(self, w: RationalMatrix, family: UnipotentFamily) -> CharacterFunctional:
        """chi'(X) = chi(w^-1 X w), carried by the conjugated family."""
        wi = w.inverse()
        return CharacterFunctional(family, wi.T @ self.weights @ w.T, f"{self.name}^w")

    def agrees_with(self, other: CharacterFunctional) -> bool:
        """Same values on every direction of this functional's family."""
        return all(self.value(d) == other.value(d) for d in self.family.directions)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "weights": [[i, j, _fs(v)] for (i, j), v in sorted(self.weights.support().items())],
        }


def _fs(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# named subgroups of Sp_2n

def positive_reps(n: int) -> list[tuple[int, int]]:
    """Representatives (i, j), i < j, i + j <= 2n + 1, of the positive roots."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, 2 * n + 2 - i)]


def _is_pos(n: int, pos: tuple[int, int]) -> tuple[int, int]:
    i, j = root_rep(n, *pos)
    if i >= j:
        raise ValueError(f"{pos} is not a positive root position")
    return i, j


def unipotent_from_reps(n: int, reps: Iterable[tuple[int, int]], name: str) -> UnipotentFamily:
    return UnipotentFamily.from_positions(n, sorted(set(reps)), name)


def max_unipotent(n: int) -> UnipotentFamily:
    return unipotent_from_reps(n, positive_reps(n), f"U_{2 * n},{n}")


def without(n: int, base: Iterable[tuple[int, int]], zeros: Iterable[tuple[int, int]]) -> list:
    """Positive reps of ``base`` minus the root orbits of positions forced to zero."""
    dead = {_is_pos(n, z) for z in zeros}
    return [p for p in base if p not in dead]


def u_radical(n: int, k: int) -> UnipotentFamily:
    """U_{2n,k}: radical of the parabolic with Levi GL_1^k x Sp_2(n-k)."""
    return unipotent_from_reps(n, [(i, j) for i, j in positive_reps(n) if i <= k], f"U_{2 * n},{k}")


def u_radical_1(n: int, k: int) -> UnipotentFamily:
    """U_{2n,k,1}: u_{k,j} = 0 for k < j <= n."""
    base = [(i, j) for i, j in positive_reps(n) if i <= k]
    reps = without(n, base, [(k, j) for j in range(k + 1, n + 1)])
    return unipotent_from_reps(n, reps, f"U_{2 * n},{k},1")


def levi_radical(n: int, a: int) -> UnipotentFamily:
    """L_{2n,a}: radical of the maximal parabolic with Levi GL_a x Sp_2(n-a)."""
    return unipotent_from_reps(n, [(i, j) for i, j in positive_reps(n) if i <= a < j], f"L_{2 * n},{a}")


def levi_radical_0(n: int, a: int) -> UnipotentFamily:
    base = [(i, j) for i, j in positive_reps(n) if i <= a < j]
    reps = without(n, base, [(i, a + 1) for i in range(1, a + 1)])
    return unipotent_from_reps(n, reps, f"L0_{2 * n},{a}")


def embed_family(n: int, fam: UnipotentFamily, name: str | None = None) -> UnipotentFamily:
    """Push a family of Sp_2m into the middle of Sp_2n."""
    off = n - fam.n
    dirs = [RationalMatrix.from_entries(2 * n, shift_entries(d.support(), off)) for d in fam.directions]
    return UnipotentFamily(n, dirs, name or f"i({fam.name})")


def embed_weights(n: int, m: int, weights: dict) -> dict:
    return shift_entries(weights, n - m)


def levi_blocks(n: int, singles: int) -> list[tuple[int, ...]]:
    """Blocks of GL_1^singles x GL_2^((n - singles)/2) on 1..n."""
    if (n - singles) % 2 or singles < 0:
        raise ValueError(f"cannot split GL_{n} as GL_1^{singles} x GL_2^*")
    blocks = [(i,) for i in range(1, singles + 1)]
    blocks += [(i, i + 1) for i in range(singles + 1, n + 1, 2)]
    return blocks


def u_prime(n: int, singles: int) -> UnipotentFamily:
    """Radical of the parabolic with Levi GL_1^singles x GL_2^pairs."""
    inside = {(b[0], b[1]) for b in levi_blocks(n, singles) if len(b) == 2}
    return unipotent_from_reps(n, [p for p in positive_reps(n) if p not in inside], "U'")


def y_group(n: int) -> UnipotentFamily:
    """[[I, 0], [y, I]] with y_ij = 0 for i >= j."""
    return UnipotentFamily.from_positions(
        n, [(n + i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)], f"Y_{2 * n}"
    )


def whittaker_weights(n: int, last: int | None = None) -> dict:
    """u_12 + u_23 + ... + u_{last-1,last} (default last = n)."""
    last = n if last is None else last
    return {(i, i + 1): 1 for i in range(1, last)}


# ---------------------------------------------------------------------------
# small helpers used by the identity catalog

def family_plus_character(parts: Sequence[tuple[UnipotentFamily, CharacterFunctional | None]]):
    """Direct sum of families with the piecewise-defined functional.

    Returns (family, evaluate) where evaluate(D) splits D along the parts
    and sums the part functionals on the components.
    """
    whole = direct_sum(*[f for f, _ in parts])
    owners: list[CharacterFunctional | None] = []
    basis: list[RationalMatrix] = []
    for fam, chi in parts:
        for d in fam.directions:
            basis.append(d)
            owners.append(chi)
    span = Span([d.flat() for d in basis], 4 * whole.n * whole.n)
    if span.dim != len(basis):
        raise ValueError("parts are not independent; the sum is not direct")

    def evaluate(d: RationalMatrix) -> Fraction | None:
        coords = span.coordinates(d.flat())
        if coords is None:
            return None
        total = Fraction(0)
        for c, b, chi in zip(coords, basis, owners):
            if c and chi is not None:
                total += c * chi.value(b)
        return total

    return whole, evaluate


def random_rationals(rng: random.Random, k: int) -> list[Fraction]:
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(k)]


__all__ = [
    "UnipotentFamily", "CharacterFunctional", "direct_sum", "exp_nilpotent",
    "positive_reps", "max_unipotent", "u_radical", "u_radical_1", "levi_radical",
    "levi_radical_0", "embed_family", "embed_weights", "levi_blocks", "u_prime",
    "y_group", "whittaker_weights", "family_plus_character", "without",
    "unipotent_from_reps", "mirror", "as_fraction",
]
