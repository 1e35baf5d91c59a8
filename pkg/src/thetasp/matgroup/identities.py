"""Group-theoretic identities checked as exact linear algebra.

Conjugation steps are verified on direction spans: the source group,
conjugated by the step element, must span exactly the target group, and
the transported character must agree with the target character on every
target direction.  Root exchanges use the Heisenberg-pair condition.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from ..linalg import RationalMatrix, Span, bracket, nullspace, rank
from .families import (
    CharacterFunctional,
    UnipotentFamily,
    embed_family,
    embed_weights,
    family_plus_character,
    levi_radical,
    max_unipotent,
    positive_reps,
    u_prime,
    u_radical,
    u_radical_1,
    unipotent_from_reps,
    whittaker_weights,
    without,
    y_group,
)
from .symplectic import estar, torus, w0, w0_prime, w0_star, w2, w3, w_a


class TransportError(ValueError):
    """The conjugated span is not closed under brackets."""


def conjugate_family(w: RationalMatrix, fam: UnipotentFamily, chi: CharacterFunctional | None = None):
    """(w fam w^-1, chi') with chi'(X) = chi(w^-1 X w)."""
    image = fam.conjugate(w)
    if not image.is_subalgebra():
        raise TransportError(f"conjugate of {fam.name} is not closed under brackets")
    if chi is None:
        return image, None
    return image, chi.transport(w, image)


def verify_product_decomposition(whole: UnipotentFamily, left: UnipotentFamily, right: UnipotentFamily) -> bool:
    """span(whole) = span(left) (+) span(right), both factors subalgebras."""
    if not (left.is_subalgebra() and right.is_subalgebra()):
        return False
    if left.dim + right.dim != whole.dim:
        return False
    joint = left.span + right.span
    return joint.dim == whole.dim and joint == whole.span


def exchange_pairing(x: UnipotentFamily, y: UnipotentFamily, chi: CharacterFunctional) -> list[list[Fraction]] | None:
    """Matrix chi([X_a, Y_b]); None if some bracket leaves chi's family."""
    out = []
    for a in x.directions:
        row = []
        for b in y.directions:
            c = bracket(a, b)
            if not chi.family.contains(c):
                return None
            row.append(chi.value(c))
        out.append(row)
    return out


def root_exchange_check(x: UnipotentFamily, y: UnipotentFamily, chi: CharacterFunctional) -> bool:
    if x.dim == 0 or x.dim != y.dim:
        return False
    if not (x.is_abelian() and y.is_abelian()):
        return False
    pairing = exchange_pairing(x, y, chi)
    return pairing is not None and rank(pairing) == x.dim


def stabilizer(levi: Sequence[RationalMatrix], chi: CharacterFunctional) -> list[RationalMatrix]:
    """Basis of {l in levi : chi([l, D]) = 0 for every direction D}."""
    if rank([m.flat() for m in levi]) != len(levi):
        raise ValueError("levi basis is linearly dependent")
    fam = chi.family
    cols = []
    for l in levi:
        col = []
        for d in fam.directions:
            c = bracket(l, d)
            if not fam.contains(c):
                raise ValueError(f"levi element does not normalize {fam.name}")
            col.append(chi.value(c))
        cols.append(col)
    rows = [list(r) for r in zip(*cols)] if fam.directions else []
    kernel = nullspace(rows, len(levi)) if rows else [
        [Fraction(int(i == k)) for i in range(len(levi))] for k in range(len(levi))
    ]
    out = []
    for v in kernel:
        m = RationalMatrix.zero(levi[0].size)
        for c, l in zip(v, levi):
            if c:
                m = m + l.scale(c)
        out.append(m)
    return out


def stabilizer_dimension(levi: Sequence[RationalMatrix], chi: CharacterFunctional) -> int:
    return len(stabilizer(levi, chi))


def levi_algebra(n: int, blocks: Sequence[Sequence[int]], sp_block: Sequence[int] = ()) -> list[RationalMatrix]:
    """Basis of gl(block) for each block of the first n indices, plus sp on ``sp_block``.

    ``sp_block`` lists middle indices forming a symplectic factor, e.g.
    (3, 4) for sl_2 = sp_2 in the middle of Sp_6.
    """
    out = []
    for blk in blocks:
        for i in blk:
            for j in blk:
                out.append(estar(n, i, j))
    if sp_block:
        seen = set()
        for i in sp_block:
            for j in sp_block:
                d = estar(n, i, j)
                key = d.flat()
                if d.is_zero() or key in seen or tuple(-x for x in key) in seen:
                    continue
                if rank([m.flat() for m in out] + [key]) > len(out):
                    seen.add(key)
                    out.append(d)
    return out


@dataclass
class HeisenbergReport:
    m: int
    k: int
    dim: int
    center_dim: int
    two_step: bool
    center: list = field(default_factory=list)
    pairs: list = field(default_factory=list)

    @property
    def expected_dim(self) -> int:
        return 2 * (self.m - self.k) + 1

    @property
    def ok(self) -> bool:
        return self.dim == self.expected_dim and self.center_dim == 1 and self.two_step

    def to_json(self) -> dict:
        return {
            "m": self.m, "k": self.k, "dim": self.dim, "expected_dim": self.expected_dim,
            "center_dim": self.center_dim, "two_step": self.two_step,
            "center": self.center, "pairs": self.pairs, "ok": self.ok,
        }


def heisenberg_structure(m: int, k: int) -> HeisenbergReport:
    """Structure of U_{2m,k} / U_{2m,k-1}, computed from brackets."""
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got m={m}, k={k}")
    big, small = u_radical(m, k), u_radical(m, k - 1)
    reps = [(i, j) for i, j in positive_reps(m) if i == k]
    dirs = [estar(m, i, j) for i, j in reps]
    sub = small.span
    quot = Span([d.flat() for d in small.directions] + [d.flat() for d in dirs], 4 * m * m)
    assert quot == big.span
    dim = len(dirs)

    def mod_small(x: RationalMatrix) -> bool:
        return sub.contains(x.flat())

    # brackets reduced modulo U_{k-1}: coefficient vector in the quotient basis
    qspan = Span([d.flat() for d in small.directions] + [d.flat() for d in dirs], 4 * m * m)

    def quotient_coords(x: RationalMatrix) -> list[Fraction]:
        full = qspan.coordinates(x.flat())
        return full[len(small.directions):]

    table = [[quotient_coords(bracket(a, b)) for b in dirs] for a in dirs]
    # center: combinations c with sum_a c_a [D_a, D_b] = 0 mod U_{k-1} for all b
    rows = []
    for b in range(dim):
        for coord in range(dim):
            rows.append([table[a][b][coord] for a in range(dim)])
    center_vecs = nullspace(rows, dim)
    center = [[list(reps[a]) for a in range(dim) if v[a]] for v in center_vecs]
    center_idx = {a for v in center_vecs for a in range(dim) if v[a]}
    # two-step: every bracket lies in the center
    cspan = Span(center_vecs, dim) if center_vecs else Span([], dim)
    two_step = all(cspan.contains(table[a][b]) for a in range(dim) for b in range(dim))
    pairs = []
    for a in range(dim):
        for b in range(a + 1, dim):
            if any(table[a][b]) and a not in center_idx and b not in center_idx:
                pairs.append([list(reps[a]), list(reps[b])])
    return HeisenbergReport(m, k, dim, len(center_vecs), two_step, center, pairs)


def modulus_character_exponent(n: int, a: int, torus_pattern: Sequence) -> Fraction:
    """Exponent of |t| in delta of P_{2n,a} on diag(t^e_1, ..., t^e_n, ...).

    Sums the weights e_i - e_j (with e extended by -e reversed) over the
    positive roots in the unipotent radical L_{2n,a}.
    """
    if not 0 <= a <= n:
        raise ValueError(f"need 0 <= a <= n, got a={a}")
    e = [Fraction(x) for x in torus_pattern]
    if len(e) != n:
        raise ValueError(f"torus pattern needs {n} entries, got {len(e)}")
    d = e + [-x for x in reversed(e)]
    total = Fraction(0)
    for i, j in positive_reps(n):
        if i <= a < j:
            total += d[i - 1] - d[j - 1]
    return total


# ---------------------------------------------------------------------------
# named groups of the descent and Whittaker computations

def descent_source(n: int, r: int, a: int):
    """U_{2n,r',1} with its character, and the embedded L_{2(n-r'),a} (trivial)."""
    rp = (r - 1) // 2
    m = n - rp
    u1 = u_radical_1(n, rp)
    psi = CharacterFunctional(u1, {**whittaker_weights(n, rp), (rp, 2 * n - rp + 1): 1}, "psi_U1")
    v = embed_family(n, levi_radical(m, a), "L")
    return [(u1, psi), (v, None)]


def descent_target(n: int, r: int, a: int):
    """U_0, V_0 with psi_{V_0}, and the k(y) group."""
    rp = (r - 1) // 2
    b = n - rp - a
    block = [(i, a + j) for i in range(1, a + 1) for j in range(1, rp + 1)]
    base = [(i, j) for i, j in positive_reps(n) if i <= a < j]
    u0 = unipotent_from_reps(n, without(n, base, block), "U0")
    v0 = embed_family(n, u_radical_1(n - a, rp), "V0")
    psi = {(i, i + 1): 1 for i in range(a + 1, n - b)}
    psi[(n - b, n + b + 1)] = 1
    return [(u0, None), (v0, CharacterFunctional(v0, psi, "psi_V0")), (k_group(n, r, a), None)]


def k_group(n: int, r: int, a: int) -> UnipotentFamily:
    rp = (r - 1) // 2
    return UnipotentFamily.from_positions(n, [(a + i, j) for i in range(1, rp) for j in range(1, a + 1)], "K")


def m_group(n: int, r: int, a: int) -> UnipotentFamily:
    rp = (r - 1) // 2
    return UnipotentFamily.from_positions(n, [(i, a + j) for i in range(1, a + 1) for j in range(2, rp + 1)], "M")


def whittaker_source(n: int, r: int, b=Fraction(-1, 4)):
    """U_{2n,r',1} with its character, plus the embedded maximal unipotent with psi_{U,b}."""
    rp = (r - 1) // 2
    m = n - rp
    u1 = u_radical_1(n, rp)
    psi = CharacterFunctional(u1, {**whittaker_weights(n, rp), (rp, 2 * n - rp + 1): 1}, "psi_U1")
    v = embed_family(n, max_unipotent(m), "U")
    w = {(i, i + 1): 1 for i in range(1, m)}
    w[(m, m + 1)] = b
    return [(u1, psi), (v, CharacterFunctional(v, embed_weights(n, m, w), "psi_U_b"))]


def whittaker_l(n: int, r: int) -> int:
    return (n + 1) // 2 if r == n and n % 2 else n - (r - 1) // 2


def _odd_case(n: int, r: int) -> bool:
    return r == n and n % 2 == 1


def z_positions(n: int, r: int) -> list[tuple[int, int]]:
    l = whittaker_l(n, r)
    if _odd_case(n, r):
        return [(2 * m - 1, 2 * k) for m in range(1, l) for k in range(m, l)]
    s = n - 2 * l
    return [(s + 2 * m, s + 2 * k + 1) for m in range(1, l) for k in range(m, l)]


def v1_positions(n: int, r: int) -> list[tuple[int, int]]:
    l = whittaker_l(n, r)
    if _odd_case(n, r):
        # the pair with k = 0 would sit at row 0 and is dropped
        return [(2 * k, 2 * m - 1) for m in range(1, l) for k in range(m - 1, l - 1) if k >= 1]
    s = n - 2 * l
    return [(s + 2 * k + 1, s + 2 * m) for m in range(1, l) for k in range(m - 1, l - 1)]


def u_prime_l(n: int, r: int) -> UnipotentFamily:
    l = whittaker_l(n, r)
    return u_prime(n, 1 if _odd_case(n, r) else n - 2 * l)


def u_prime_l1(n: int, r: int) -> UnipotentFamily:
    up = u_prime_l(n, r)
    reps = [p for p in positive_reps(n) if up.contains(estar(n, *p))]
    return unipotent_from_reps(n, without(n, reps, z_positions(n, r)), "U'_l,1")


def z_group(n: int, r: int) -> UnipotentFamily:
    pos = z_positions(n, r)
    if _odd_case(n, r):
        pos = [p for p in pos if p != (1, 2)]
    return UnipotentFamily.from_positions(n, pos, "Z_l")


def v1_group(n: int, r: int) -> UnipotentFamily:
    return UnipotentFamily.from_positions(n, v1_positions(n, r), "V_1")


def psi_u_prime_weights(n: int, r: int, a=1, b=Fraction(-1, 4)) -> dict:
    """Weights of psi_{U'_l,a,b}; in the odd r = n case the shifted version."""
    if _odd_case(n, r):
        w = {(i, i + 2): 1 for i in range(1, n - 1)}
    else:
        l = whittaker_l(n, r)
        w = {(i, i + 1): 1 for i in range(1, n - 2 * l + 1)}
        w.update({(j, j + 2): 1 for j in range(n - 2 * l + 1, n - 1)})
    w[(n - 1, n + 2)] = a
    w[(n, n + 1)] = b
    return w


def whittaker_target(n: int, r: int, b=Fraction(-1, 4)):
    up1 = u_prime_l1(n, r)
    psi = CharacterFunctional(up1, psi_u_prime_weights(n, r, 1, b), "psi_U'_l,1,b")
    return [(up1, psi), (v1_group(n, r), None)]


def siegel_type_source(n: int):
    """U'_l (Levi GL_2^(n/2)) with the character u13 + u24 + ... + u_{n-1,n+1}."""
    up = u_prime(n, 0)
    w = {(i, i + 2): 1 for i in range(1, n - 1)}
    w[(n - 1, n + 1)] = 1
    return [(up, CharacterFunctional(up, w, "psi_U'_l"))]


def odd_siegel_type_source(n: int):
    """U'_l (Levi GL_1 x GL_2^((n-1)/2)) with u12 + u24 + u35 + ... + u_{n-1,n+1}."""
    up = u_prime(n, 1)
    w = {(1, 2): 1}
    w.update({(i, i + 2): 1 for i in range(2, n - 1)})
    w[(n - 1, n + 1)] = 1
    return [(up, CharacterFunctional(up, w, "psi_U'_l"))]


def u_2n_n_0(n: int, odd: bool) -> UnipotentFamily:
    u = max_unipotent(n)
    reps = [p for p in positive_reps(n) if u.contains(estar(n, *p))]
    if odd:
        zeros = [(i, j) for i in range(2, n + 1) for j in range(n + 1, n + i)]
    else:
        zeros = [(i, j) for i in range(1, n + 1) for j in range(n + 1, n + i + 1)]
    return unipotent_from_reps(n, without(n, reps, zeros), "U_2n,n,0")


def siegel_type_target(n: int, odd: bool):
    u0 = u_2n_n_0(n, odd)
    psi = CharacterFunctional(u0, {(i, i + 1): 1 for i in range(1, n)}, "psi_U_2n,n")
    y = embed_family(n, y_group(n - 1), "Y_0") if odd else y_group(n)
    return [(u0, psi), (y, None)]


# the rank three groups of the (3^2) orbit argument

def sp6_v() -> UnipotentFamily:
    u = max_unipotent(3)
    reps = [p for p in positive_reps(3) if u.contains(estar(3, *p))]
    return unipotent_from_reps(3, without(3, reps, [(2, 3)]), "V")


def sp6_u1() -> UnipotentFamily:
    u = max_unipotent(3)
    reps = [p for p in positive_reps(3) if u.contains(estar(3, *p))]
    return unipotent_from_reps(3, without(3, reps, [(2, 4), (3, 4)]), "U_1")


def sp6_y() -> UnipotentFamily:
    return UnipotentFamily.from_positions(3, [(4, 3)], "Y")


def sp6_x() -> UnipotentFamily:
    return UnipotentFamily.from_positions(3, [(2, 4)], "X")


def sp6_r() -> UnipotentFamily:
    u = max_unipotent(3)
    reps = [p for p in positive_reps(3) if u.contains(estar(3, *p))]
    return unipotent_from_reps(3, without(3, reps, [(1, 2), (3, 4)]), "R")


def psi_r() -> CharacterFunctional:
    return CharacterFunctional(sp6_r(), {(1, 3): 1, (2, 4): 1}, "psi_R")


def psi_v(alphas: Sequence) -> CharacterFunctional:
    a1, a2, a3, a4 = alphas
    return CharacterFunctional(sp6_v(), {(1, 2): a1, (1, 3): a2, (3, 4): a3, (2, 5): a4}, "psi_V")


def sp6_levi_gl2_sl2() -> list[RationalMatrix]:
    return levi_algebra(3, [(1, 2)], (3, 4))


def sp6_levi_gl1_gl2() -> list[RationalMatrix]:
    return levi_algebra(3, [(1,), (2, 3)])


def diagonal_sl2() -> list[RationalMatrix]:
    """sl_2 acting on {1,2} and {3,4} simultaneously."""
    h = RationalMatrix.from_entries(6, {(1, 1): 1, (2, 2): -1, (5, 5): 1, (6, 6): -1, (3, 3): 1, (4, 4): -1})
    # e*_{1,2} - e*_{5,6} pattern: estar(3,1,2) = e12 - e56
    return [estar(3, 1, 2) + estar(3, 3, 4), estar(3, 2, 1) + estar(3, 4, 3), h]


# ---------------------------------------------------------------------------
# conjugation steps

@dataclass
class TransportReport:
    step_id: str
    n: int
    r: int
    a: int | None
    source_dim: int
    target_dim: int
    span_equal: bool
    character_equal: bool
    sign_torus: list | None
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.span_equal and (self.character_equal or self.sign_torus is not None)

    @property
    def exact(self) -> bool:
        return self.span_equal and self.character_equal

    def to_json(self) -> dict:
        return {
            "step_id": self.step_id, "n": self.n, "r": self.r, "a": self.a,
            "source_dim": self.source_dim, "target_dim": self.target_dim,
            "span_equal": self.span_equal, "character_equal": self.character_equal,
            "sign_torus": self.sign_torus, "passed": self.passed, "mismatches": self.mismatches,
        }


def _character_mismatches(w: RationalMatrix, ev_src: Callable, target: UnipotentFamily, ev_tgt: Callable) -> list:
    wi = w.inverse()
    bad = []
    for d in target.directions:
        got, want = ev_src(wi @ d @ w), ev_tgt(d)
        if got != want:
            bad.append(([[i, j, str(v)] for (i, j), v in sorted(d.support().items())], str(got), str(want)))
    return bad


def check_transport(step_id: str, w: RationalMatrix, source, target, n: int, r: int, a=None,
                    allow_sign_torus: bool = True) -> TransportReport:
    src, ev_src = family_plus_character(source)
    tgt, ev_tgt = family_plus_character(target)
    image = src.conjugate(w)
    span_ok = image.same_span(tgt)
    bad = _character_mismatches(w, ev_src, tgt, ev_tgt) if span_ok else []
    fix = None
    if span_ok and bad and allow_sign_torus:
        # t = diag(eps, eps reversed) fixes every span but can flip character signs
        for signs in itertools.product((1, -1), repeat=n - 1):
            eps = (1,) + signs
            tw = torus(eps) @ w
            if not _character_mismatches(tw, ev_src, tgt, ev_tgt):
                fix = list(eps)
                break
    return TransportReport(step_id, n, r, a, src.dim, tgt.dim, span_ok, span_ok and not bad, fix, bad)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _descent(n: int, r: int, a: int | None) -> TransportReport:
    rp = (r - 1) // 2
    a = 1 if a is None else a
    _need(r % 2 == 1 and 3 <= r < 2 * n, f"descent step needs odd 3 <= r < 2n, got r={r}")
    _need(1 <= a <= n - rp, f"need 1 <= a <= {n - rp}, got a={a}")
    return check_transport("descent-wa", w_a(n, r, a), descent_source(n, r, a), descent_target(n, r, a), n, r, a)


def _whittaker(n: int, r: int, a: int | None) -> TransportReport:
    _need(r % 2 == 1 and n <= r < 2 * n, f"Whittaker step needs odd n <= r < 2n, got n={n}, r={r}")
    l = whittaker_l(n, r)
    return check_transport("whittaker-w0", w0(n, l), whittaker_source(n, r), whittaker_target(n, r), n, r)


def _whittaker_prime(n: int, r: int, a: int | None) -> TransportReport:
    _need(n % 2 == 0 and r == n + 1, f"the w0' step needs n even and r = n+1, got n={n}, r={r}")
    return check_transport("whittaker-w0-prime", w0_prime(n), siegel_type_source(n), siegel_type_target(n, False), n, r)


def _whittaker_star(n: int, r: int, a: int | None) -> TransportReport:
    _need(n % 2 == 1 and r == n and n >= 3, f"the w0* step needs n = r odd >= 3, got n={n}, r={r}")
    return check_transport("whittaker-w0-star", w0_star(n), odd_siegel_type_source(n), siegel_type_target(n, True), n, r)


def _sp6(n: int, r: int, a: int | None) -> TransportReport:
    _need(n == 3, f"the V to U_1 Y step lives in Sp_6, got n={n}")
    src = [(sp6_v(), CharacterFunctional(sp6_v(), {(1, 3): 1, (2, 4): 1}, "psi_V"))]
    tgt = [(sp6_u1(), CharacterFunctional(sp6_u1(), {(1, 2): 1, (2, 3): 1}, "psi_U1")), (sp6_y(), None)]
    return check_transport("sp6-v-to-u1y", w3() @ w2(), src, tgt, n, r)


def _identity(n: int, r: int, a: int | None) -> TransportReport:
    u = max_unipotent(n)
    part = [(u, CharacterFunctional(u, whittaker_weights(n), "psi_U"))]
    return check_transport("identity", RationalMatrix.identity(2 * n), part, part, n, r)


TRANSPORT_STEPS = {
    "descent-wa": _descent,
    "whittaker-w0": _whittaker,
    "whittaker-w0-prime": _whittaker_prime,
    "whittaker-w0-star": _whittaker_star,
    "sp6-v-to-u1y": _sp6,
    "identity": _identity,
}


def verify_integral_transport(step_id: str, n: int, r: int, a: int | None = None) -> TransportReport:
    if step_id not in TRANSPORT_STEPS:
        raise ValueError(f"unknown step {step_id!r}; known: {', '.join(TRANSPORT_STEPS)}")
    if n > 5:
        raise ValueError(f"transport checks are limited to n <= 5, got n={n}")
    return TRANSPORT_STEPS[step_id](n, r, a)


# ---------------------------------------------------------------------------
# root exchange catalog

def descent_exchange(n: int = 3, r: int = 5, a: int = 1):
    target = descent_target(n, r, a)
    fam, _ = family_plus_character(target[:2])
    psi = CharacterFunctional(fam, target[1][1].weights, "psi_V0")
    return m_group(n, r, a), k_group(n, r, a), psi


def sp6_xy_exchange():
    u = max_unipotent(3)
    return sp6_x(), sp6_y(), CharacterFunctional(u, {(1, 2): 1, (2, 3): 1}, "psi_U1")


def sp6_zy_exchange():
    z = UnipotentFamily.from_positions(3, [(3, 4)], "z")
    y = UnipotentFamily.from_positions(3, [(2, 3)], "y")
    return z, y, psi_r()


def whittaker_exchange(n: int, r: int):
    up = u_prime_l(n, r)
    psi = CharacterFunctional(up, psi_u_prime_weights(n, r), "psi_U'_l,1,b")
    return z_group(n, r), v1_group(n, r), psi


EXCHANGES = {
    "descent m(z) with k(y), n=3 r=5 a=1": lambda: descent_exchange(3, 5, 1),
    "X=I+k(e24+e35) with Y=I+m e43 in Sp6": sp6_xy_exchange,
    "z(k)=I+k e34 with y(m)=I+m e*23 in Sp6": sp6_zy_exchange,
    "Z_l with V_1, n=4 r=5": lambda: whittaker_exchange(4, 5),
    "Z_l with V_1, n=5 r=7": lambda: whittaker_exchange(5, 7),
    "Z_l with V_1, n=5 r=5 (odd case)": lambda: whittaker_exchange(5, 5),
}
