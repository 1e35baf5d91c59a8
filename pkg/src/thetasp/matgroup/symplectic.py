"""Sp_2n in the antidiagonal model and the catalog of named elements.

The form is <x, y> = sum_i (x_i y_{2n-i+1} - x_{n+i} y_{n-i+1}); its Gram
matrix J has +1 at (i, 2n+1-i) for i <= n and -1 at (n+i, n+1-i).
Indices are 1-based throughout, as the matrices are written by hand.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from ..linalg import RationalMatrix, as_fraction


class NotSymplecticError(ValueError):
    pass


def form_matrix(n: int) -> RationalMatrix:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    entries = {}
    for i in range(1, n + 1):
        entries[(i, 2 * n - i + 1)] = 1
        entries[(n + i, n - i + 1)] = -1
    return RationalMatrix.from_entries(2 * n, entries)


def mirror(n: int, i: int) -> int:
    return 2 * n + 1 - i


def _side(n: int, i: int) -> int:
    # -1 on the first half, +1 on the second: J e_i = side(i) e_{i'}
    return -1 if i <= n else 1


def is_symplectic(g: RationalMatrix) -> bool:
    if g.size % 2:
        return False
    J = form_matrix(g.size // 2)
    return g.T @ J @ g == J


def in_lie_algebra(d: RationalMatrix) -> bool:
    """D^T J + J D == 0."""
    if d.size % 2:
        return False
    J = form_matrix(d.size // 2)
    return (d.T @ J + J @ d).is_zero()


def estar(n: int, i: int, j: int) -> RationalMatrix:
    """Root direction e_{i,j} completed to an element of sp_2n.

    For i, j in the same half this is e_{i,j} - e_{j',i'} with k' = 2n+1-k;
    across halves the mirror term enters with a plus sign, and a
    self-mirrored position (j = i') gives the bare e_{i,j}.
    """
    size = 2 * n
    if not (1 <= i <= size and 1 <= j <= size):
        raise IndexError(f"({i}, {j}) outside Sp_{size}")
    mi, mj = mirror(n, j), mirror(n, i)
    if (mi, mj) == (i, j):
        return RationalMatrix.from_entries(size, {(i, j): 1})
    c = -_side(n, i) * _side(n, j)
    return RationalMatrix.from_entries(size, {(i, j): 1, (mi, mj): c})


def root_rep(n: int, i: int, j: int) -> tuple[int, int]:
    """Canonical position among (i, j) and its mirror (j', i')."""
    m = (mirror(n, j), mirror(n, i))
    return min((i, j), m, key=lambda p: (p[0] + p[1], p))


def levi_gl(n: int, a: RationalMatrix) -> RationalMatrix:
    """diag(A, A*) with A* = w A^{-T} w, w the antidiagonal of ones."""
    if a.size != n:
        raise ValueError(f"expected a {n}x{n} block, got {a.size}")
    w = RationalMatrix.from_entries(n, {(i, n + 1 - i): 1 for i in range(1, n + 1)})
    star = w @ a.inverse().T @ w
    return RationalMatrix.block_diag(a, star)


def embed_sp(n: int, g: RationalMatrix) -> RationalMatrix:
    """g in Sp_2m placed as diag(I_k, g, I_k) in Sp_2n, k = n - m."""
    if g.size % 2 or g.size > 2 * n:
        raise ValueError(f"cannot embed a {g.size}x{g.size} matrix in Sp_{2 * n}")
    k = n - g.size // 2
    if k == 0:
        return g
    return RationalMatrix.block_diag(RationalMatrix.identity(k), g, RationalMatrix.identity(k))


def shift_entries(entries: dict, offset: int) -> dict:
    return {(i + offset, j + offset): v for (i, j), v in entries.items()}


def permutation_matrix(size: int, images: dict, signs: dict | None = None) -> RationalMatrix:
    """Matrix sending e_j to signs[j] * e_{images[j]}."""
    signs = signs or {}
    if sorted(images) != list(range(1, size + 1)) or sorted(images.values()) != list(range(1, size + 1)):
        raise ValueError("images must be a permutation of 1..size")
    return RationalMatrix.from_entries(size, {(images[j], j): signs.get(j, 1) for j in images})


def block_permutation(row_sizes: Sequence[int], col_sizes: Sequence[int], placement: dict) -> RationalMatrix:
    """Identity blocks at (row block, column block) positions (0-based)."""
    size = sum(row_sizes)
    if sum(col_sizes) != size:
        raise ValueError("row and column block sizes disagree")
    roff = [sum(row_sizes[:k]) for k in range(len(row_sizes))]
    coff = [sum(col_sizes[:k]) for k in range(len(col_sizes))]
    entries = {}
    for rb, cb in placement.items():
        if row_sizes[rb] != col_sizes[cb]:
            raise ValueError(f"block ({rb}, {cb}) is not square")
        for t in range(row_sizes[rb]):
            entries[(roff[rb] + t + 1, coff[cb] + t + 1)] = 1
    return RationalMatrix.from_entries(size, entries)


def complete_signed_weyl(n: int, fixed: dict) -> RationalMatrix:
    """Complete a partial signed permutation to the unique element of Sp_2n.

    ``fixed`` maps a column j to (row, sign).  The remaining columns are
    the mirrors of the fixed ones; their rows are forced by the form and
    every sign pattern for them is tried, requiring exactly one to work.
    """
    size = 2 * n
    rows = {j: r for j, (r, _) in fixed.items()}
    signs = {j: s for j, (_, s) in fixed.items()}
    free = []
    for j, r in list(rows.items()):
        mj = mirror(n, j)
        if mj not in rows:
            rows[mj] = mirror(n, r)
            free.append(mj)
    if sorted(rows) != list(range(1, size + 1)):
        raise ValueError("fixed columns do not determine a full permutation")
    found = []
    for choice in product((1, -1), repeat=len(free)):
        s = dict(signs)
        s.update(zip(free, choice))
        g = permutation_matrix(size, rows, s)
        if is_symplectic(g):
            found.append(g)
    if len(found) != 1:
        raise AssertionError(f"expected a unique symplectic completion, found {len(found)}")
    return found[0]


class SymplecticElement:
    """A matrix verified to preserve the form; ``name`` is informational."""

    __slots__ = ("mat", "name")

    def __init__(self, mat: RationalMatrix, name: str = ""):
        if not is_symplectic(mat):
            raise NotSymplecticError(f"{name or 'matrix'} is not symplectic")
        self.mat = mat
        self.name = name

    @property
    def n(self) -> int:
        return self.mat.size // 2

    def __matmul__(self, other: SymplecticElement) -> SymplecticElement:
        return SymplecticElement(self.mat @ other.mat, f"{self.name}*{other.name}")

    def inverse(self) -> SymplecticElement:
        return SymplecticElement(self.mat.inverse(), f"{self.name}^-1")

    def __eq__(self, other) -> bool:
        if isinstance(other, SymplecticElement):
            return self.mat == other.mat
        if isinstance(other, RationalMatrix):
            return self.mat == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mat)

    def __repr__(self) -> str:
        return f"SymplecticElement({self.name!r}, {self.mat!r})"

    def is_signed_permutation(self) -> bool:
        for row in self.mat.rows:
            nz = [x for x in row if x]
            if len(nz) != 1 or abs(nz[0]) != 1:
                return False
        return True


# ---------------------------------------------------------------------------
# catalog

def _mat2(a, b, c, d) -> RationalMatrix:
    return RationalMatrix([[a, b], [c, d]])


GAMMA_EVEN_FACTORS = (_mat2(1, 0, -1, 1), _mat2(1, Fraction(1, 2), 0, 1))
GAMMA_ODD_FACTORS = (_mat2(1, 0, 1, 1), _mat2(1, Fraction(-1, 2), 0, 1))
# unipotent * Weyl * unipotent splitting of the odd-rank gamma
GAMMA_ODD_BRUHAT = (_mat2(1, 1, 0, 1), _mat2(0, -1, 1, 0), _mat2(1, Fraction(1, 2), 0, 1))


def gamma_even() -> RationalMatrix:
    a, b = GAMMA_EVEN_FACTORS
    return a @ b


def gamma_odd() -> RationalMatrix:
    a, b = GAMMA_ODD_FACTORS
    return a @ b


def _gamma_blocks(n: int, block: RationalMatrix, leading_one: bool) -> RationalMatrix:
    lead = 1 if leading_one else 0
    if (n - lead) % 2 or n - lead < 0:
        raise ValueError(f"cannot tile GL_{n} with 2x2 blocks (leading one: {leading_one})")
    parts = [RationalMatrix.identity(1)] if leading_one else []
    parts += [block] * ((n - lead) // 2)
    return RationalMatrix.block_diag(*parts)


def gamma0(n: int, parity: str | None = None, block: RationalMatrix | None = None) -> RationalMatrix:
    """diag(gamma, ..., gamma, gamma*, ..., gamma*).

    For even n the gamma blocks tile GL_n; for odd n a leading 1 sits in
    front (the GL_1 x GL_2^(n-1)/2 Levi), with the mirrored 1 at the end.
    """
    parity = parity or ("even" if n % 2 == 0 else "odd")
    if parity == "even":
        blk = gamma_even() if block is None else block
        return levi_gl(n, _gamma_blocks(n, blk, leading_one=False))
    if parity == "odd":
        blk = gamma_odd() if block is None else block
        return levi_gl(n, _gamma_blocks(n, blk, leading_one=True))
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def gamma0_bruhat_factors(n: int) -> tuple[RationalMatrix, RationalMatrix, RationalMatrix]:
    """gamma0 = gamma0' * omega0 * gamma0'' induced by the 2x2 splitting (odd n)."""
    return tuple(gamma0(n, "odd", block=f) for f in GAMMA_ODD_BRUHAT)


def w_a(n: int, r: int, a: int) -> RationalMatrix:
    """Moves the GL_a block of the descent Levi to the top left."""
    rp = (r - 1) // 2
    b = n - rp - a
    if r % 2 == 0 or not (1 <= a <= n - rp) or b < 0:
        raise ValueError(f"inadmissible (n, r, a) = ({n}, {r}, {a})")
    rows = [a, rp, 2 * b, rp, a]
    cols = [rp, a, 2 * b, a, rp]
    keep = {k: v for k, v in {0: 1, 1: 0, 2: 2, 3: 4, 4: 3}.items() if rows[k]}
    return block_permutation(rows, cols, keep)


def nu_matrix(l: int) -> RationalMatrix:
    """The (2l-1)x(2l-1) permutation interleaving l and l-1 coordinates."""
    size = 2 * l - 1
    entries = {}
    for t in range(l):
        entries[(2 * t + 1, l + t)] = 1
    for t in range(1, l):
        entries[(2 * t, t)] = 1
    return RationalMatrix.from_entries(size, entries)


def w0(n: int, l: int) -> RationalMatrix:
    if not 1 <= l or 2 * l - 1 > n:
        raise ValueError(f"need 1 <= l and 2l-1 <= n, got n={n}, l={l}")
    head = n - 2 * l + 1
    parts = ([RationalMatrix.identity(head)] if head else []) + [nu_matrix(l)]
    return levi_gl(n, RationalMatrix.block_diag(*parts))


def w0_prime(n: int) -> RationalMatrix:
    """Entries (i, 2i-1) equal 1 for i <= n, the rest forced by the form."""
    return complete_signed_weyl(n, {2 * i - 1: (i, 1) for i in range(1, n + 1)})


def w0_star(n: int) -> RationalMatrix:
    if n < 2:
        raise ValueError("w0_star needs n >= 2")
    return embed_sp(n, w0_prime(n - 1))


def j_of_x(n: int, rp: int, x: Sequence) -> RationalMatrix:
    if len(x) != n - rp:
        raise ValueError(f"expected {n - rp} coordinates, got {len(x)}")
    m = RationalMatrix.identity(2 * n)
    for k, xk in enumerate(x, start=1):
        m = m + estar(n, rp, rp + k).scale(xk)
    return m


def k_of_y(n: int, r: int, a: int, y: Sequence[Sequence]) -> RationalMatrix:
    """y has n-a-b-1 rows and a columns (the zero bottom row is implicit)."""
    rp = (r - 1) // 2
    if len(y) != rp - 1 or any(len(row) != a for row in y):
        raise ValueError(f"y must be {rp - 1}x{a}")
    m = RationalMatrix.identity(2 * n)
    for i, row in enumerate(y, start=1):
        for j, v in enumerate(row, start=1):
            m = m + estar(n, a + i, j).scale(v)
    return m


def m_of_z(n: int, r: int, a: int, z: Sequence[Sequence]) -> RationalMatrix:
    """z is a x (n-a-b), given without its first (zero) column."""
    rp = (r - 1) // 2
    if len(z) != a or any(len(row) != rp - 1 for row in z):
        raise ValueError(f"z must be {a}x{rp - 1} (first column omitted)")
    m = RationalMatrix.identity(2 * n)
    for i, row in enumerate(z, start=1):
        for j, v in enumerate(row, start=2):
            m = m + estar(n, i, a + j).scale(v)
    return m


def y_of_h(n: int, h) -> RationalMatrix:
    h = as_fraction(h)
    if n < 2:
        raise ValueError("y(h) needs n >= 2")
    return RationalMatrix.diag([1, 1] + [1 / h] * (n - 2) + [h] * (n - 2) + [1, 1])


def torus(values: Sequence) -> RationalMatrix:
    """diag(a_1, ..., a_n, a_n^-1, ..., a_1^-1)."""
    vals = [as_fraction(v) for v in values]
    return RationalMatrix.diag(vals + [1 / v for v in reversed(vals)])


def t_of_ab(n: int, a, b) -> RationalMatrix:
    """diag(ab, b, I, b^-1, (ab)^-1) in Sp_2n."""
    a, b = as_fraction(a), as_fraction(b)
    return torus([a * b, b] + [1] * (n - 2))


def n_of_x(x) -> RationalMatrix:
    x = as_fraction(x)
    return RationalMatrix.from_entries(6, {**{(i, i): 1 for i in range(1, 7)}, (1, 2): x, (3, 4): x, (5, 6): -x})


def z_of_k(k) -> RationalMatrix:
    return RationalMatrix.identity(6) + RationalMatrix.from_entries(6, {(3, 4): k})


def y_of_m(m) -> RationalMatrix:
    return RationalMatrix.identity(6) + RationalMatrix.from_entries(6, {(2, 3): m, (4, 5): -as_fraction(m)})


def t_of_a(a) -> RationalMatrix:
    a = as_fraction(a)
    return RationalMatrix.diag([a, 1 / a, a, 1 / a, a, 1 / a])


def w1() -> RationalMatrix:
    return permutation_matrix(6, {1: 2, 2: 1, 3: 3, 4: 4, 5: 6, 6: 5})


def w2() -> RationalMatrix:
    return permutation_matrix(6, {1: 1, 2: 3, 3: 2, 4: 5, 5: 4, 6: 6})


def w3() -> RationalMatrix:
    # row 3 has +1 in column 4, row 4 has -1 in column 3
    return permutation_matrix(6, {1: 1, 2: 2, 3: 4, 4: 3, 5: 5, 6: 6}, {3: -1})


CATALOG = (
    "w_a", "w0", "w0_prime", "w0_star", "gamma_even", "gamma_odd", "gamma0",
    "j", "k", "m", "y_of_h", "n_of_x", "z_of_k", "y_of_m", "t", "t_of_a",
    "embed_sp", "w1", "w2", "w3",
)


def build_element(name: str, **params) -> SymplecticElement:
    """Build and verify a named element.

    Parameters by name: w_a(n, r, a); w0(n, r) or w0(n, l); w0_prime(n);
    w0_star(n); gamma0(n[, parity]); j(n, r, x); k(n, r, a, y);
    m(n, r, a, z); y_of_h(n, h); t(n, a, b) or t(values); embed_sp(n, g);
    n_of_x(x); z_of_k(k); y_of_m(m); t_of_a(a).  gamma_even / gamma_odd
    are the 2x2 blocks viewed in Sp_2 = SL_2.
    """
    try:
        mat = _build(name, params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None
    except KeyError as exc:
        raise ValueError(f"missing parameter {exc.args[0]!r} for {name}") from None
    return SymplecticElement(mat, name)


def _build(name: str, p: dict) -> RationalMatrix:
    if name == "w_a":
        return w_a(p["n"], p["r"], p["a"])
    if name == "w0":
        l = p["l"] if "l" in p else p["n"] - (p["r"] - 1) // 2
        return w0(p["n"], l)
    if name == "w0_prime":
        return w0_prime(p["n"])
    if name == "w0_star":
        return w0_star(p["n"])
    if name == "gamma_even":
        return gamma_even()
    if name == "gamma_odd":
        return gamma_odd()
    if name == "gamma0":
        return gamma0(p["n"], p.get("parity"))
    if name == "j":
        return j_of_x(p["n"], (p["r"] - 1) // 2, p["x"])
    if name == "k":
        return k_of_y(p["n"], p["r"], p["a"], p["y"])
    if name == "m":
        return m_of_z(p["n"], p["r"], p["a"], p["z"])
    if name == "y_of_h":
        return y_of_h(p["n"], p["h"])
    if name == "t":
        if "values" in p:
            return torus(p["values"])
        return t_of_ab(p["n"], p["a"], p["b"])
    if name == "embed_sp":
        return embed_sp(p["n"], p["g"])
    if name == "n_of_x":
        return n_of_x(p["x"])
    if name == "z_of_k":
        return z_of_k(p["k"])
    if name == "y_of_m":
        return y_of_m(p["m"])
    if name == "t_of_a":
        return t_of_a(p["a"])
    if name == "w1":
        return w1()
    if name == "w2":
        return w2()
    if name == "w3":
        return w3()
    raise ValueError(f"unknown element {name!r}; known: {', '.join(CATALOG)}")
