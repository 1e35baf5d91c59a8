"""Exact rational matrices and row-reduction helpers.

Everything here works over :class:`fractions.Fraction`; nothing is ever
converted to floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not allowed in exact matrices")
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


class RationalMatrix:
    """Square matrix with Fraction entries, immutable."""

    __slots__ = ("size", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        size = len(rows)
        if size == 0 or any(len(r) != size for r in rows):
            raise ValueError("matrix must be square and non-empty")
        self.size = size
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, size: int) -> RationalMatrix:
        return cls([[1 if i == j else 0 for j in range(size)] for i in range(size)])

    @classmethod
    def zero(cls, size: int) -> RationalMatrix:
        return cls([[0] * size for _ in range(size)])

    @classmethod
    def from_entries(cls, size: int, entries: dict) -> RationalMatrix:
        """Build from ``{(i, j): value}`` with 1-based indices."""
        m = [[Fraction(0)] * size for _ in range(size)]
        for (i, j), v in entries.items():
            if not (1 <= i <= size and 1 <= j <= size):
                raise IndexError(f"entry ({i}, {j}) outside a {size}x{size} matrix")
            m[i - 1][j - 1] += as_fraction(v)
        return cls(m)

    @classmethod
    def diag(cls, values: Sequence) -> RationalMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, *blocks: RationalMatrix) -> RationalMatrix:
        size = sum(b.size for b in blocks)
        m = [[Fraction(0)] * size for _ in range(size)]
        off = 0
        for b in blocks:
            for i in range(b.size):
                for j in range(b.size):
                    m[off + i][off + j] = b.rows[i][j]
            off += b.size
        return cls(m)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int) -> Fraction:
        """1-based access, matching the way the matrices are written down."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"RationalMatrix([{body}])"

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check(other)
        return RationalMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check(other)
        return RationalMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> RationalMatrix:
        c = as_fraction(c)
        return RationalMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        self._check(other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * col[k] for k, a in nz), Fraction(0)) for col in cols])
        return RationalMatrix(out)

    def _check(self, other: RationalMatrix) -> None:
        if not isinstance(other, RationalMatrix):
            raise TypeError(f"expected RationalMatrix, got {type(other).__name__}")
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    @property
    def T(self) -> RationalMatrix:
        return RationalMatrix(zip(*self.rows))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.size)), Fraction(0))

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def support(self) -> dict:
        """Nonzero entries as ``{(i, j): value}``, 1-based."""
        return {
            (i + 1, j + 1): x
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
            if x
        }

    def inverse(self) -> RationalMatrix:
        n = self.size
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if aug[i][c]), None)
            if p is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[p] = aug[p], aug[c]
            piv = aug[c][c]
            aug[c] = [x / piv for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return RationalMatrix([r[n:] for r in aug])

    def det(self) -> Fraction:
        n = self.size
        m = [list(r) for r in self.rows]
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] / m[c][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return d

    def __pow__(self, k: int) -> RationalMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalMatrix.identity(self.size)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def to_json(self) -> list:
        return [[_frac_str(x) for x in r] for r in self.rows]


def bracket(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return a @ b - b @ a


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [[as_fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of ``A x = b`` or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


class Span:
    """Rational subspace of a fixed ambient coordinate space.

    Keeps the original generators (used as coordinates for members) and an
    echelon basis (used for membership and equality).
    """

    def __init__(self, vectors: Iterable[Sequence], dim: int):
        self.ambient = dim
        gens = [[as_fraction(x) for x in v] for v in vectors]
        if any(len(v) != dim for v in gens):
            raise ValueError("vector length does not match ambient dimension")
        self.echelon, self.pivots = rref(gens) if gens else ([], [])
        # independent subset of the generators, in order
        basis: list[list[Fraction]] = []
        for v in gens:
            if rank(basis + [v]) > len(basis):
                basis.append(v)
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, v: Sequence) -> bool:
        w = [as_fraction(x) for x in v]
        for row, pc in zip(self.echelon, self.pivots):
            if w[pc]:
                f = w[pc]
                w = [a - f * b for a, b in zip(w, row)]
        return not any(w)

    def contains_span(self, other: Span) -> bool:
        return all(self.contains(v) for v in other.echelon)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Span):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.pivots == other.pivots
            and self.echelon == other.echelon
        )

    def __add__(self, other: Span) -> Span:
        return Span(self.basis + other.basis, self.ambient)

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Coefficients of ``v`` in terms of :attr:`basis`, or None."""
        if not self.basis:
            return [] if not any(v) else None
        cols = list(zip(*self.basis))
        return solve([list(c) for c in cols], list(v))
