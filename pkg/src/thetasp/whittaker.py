"""Exponent bookkeeping and assembly of the unramified Whittaker formula.

Everything is exact: exponents are Fractions, coefficients are cyclotomic
integers, and the GL_n Whittaker values enter only through an oracle.  The
default oracle returns opaque tokens T(k_1,...,k_n), so no number that was
not computed here can appear in an output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .charsum import LocalFieldSpec, gauss_sum, is_prime, unit_integral
from .cyclotomic import CycScalar
from .matgroup.identities import modulus_character_exponent
from .partitions import dimension_equation_check, frac_str, theta_orbit_pre_collapse, unipotent_radical_dim

ODD = "odd"    # the r-fold cover of Sp_2n
EVEN = "even"  # the 2r-fold cover of Sp_2m


def _check_r(r: int) -> None:
    if r < 3 or r % 2 == 0:
        raise ValueError(f"r must be odd and at least 3, got {r}")


def pole_point(n: int, r: int, cover: str = ODD) -> list[Fraction]:
    """Point (s_1, ..., s_n) where the theta residue is taken.

    Odd cover: r s_n = 1 and r(s_i - s_{i+1}) = 1.  Even (2r-fold) cover:
    2r s_n = 1 with the same differences.
    """
    _check_r(r)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if cover == ODD:
        s = [Fraction(n - i + 1, r) for i in range(1, n + 1)]
        assert r * s[-1] == 1
    elif cover == EVEN:
        s = [Fraction(n - i, r) + Fraction(1, 2 * r) for i in range(1, n + 1)]
        assert 2 * r * s[-1] == 1
    else:
        raise ValueError(f"cover must be {ODD!r} or {EVEN!r}, got {cover!r}")
    assert all(r * (a - b) == 1 for a, b in zip(s, s[1:]))
    return s


def theta_character_exponents(n: int, r: int, cover: str = ODD) -> list[Fraction]:
    """Exponent of |a_i| in the central character of the theta representation."""
    _check_r(r)
    if cover == ODD:
        return [Fraction((n - i + 1) * (r - 1), r) for i in range(1, n + 1)]
    if cover == EVEN:
        return [Fraction(2 * (n - i + 1) * r - (2 * (n - i + 1) - 1), 2 * r) for i in range(1, n + 1)]
    raise ValueError(f"cover must be {ODD!r} or {EVEN!r}, got {cover!r}")


def _beta_range(n: int, r: int, a: int) -> int:
    _check_r(r)
    if r >= 2 * n:
        raise ValueError(f"need r < 2n, got n={n}, r={r}")
    rp = (r - 1) // 2
    if not 0 <= a <= n - rp:
        raise ValueError(f"a must lie in 0..{n - rp}, got a={a}")
    return rp


def beta_exponent(n: int, r: int, a: int) -> Fraction:
    """beta = a(r-1)(2n-a+1)/(2r) - a/2 - a(n-a-b-1), with 2b = 2n-2a-r+1."""
    rp = _beta_range(n, r, a)
    b = n - a - rp
    return Fraction(a * (r - 1) * (2 * n - a + 1), 2 * r) - Fraction(a, 2) - a * (n - a - b - 1)


def beta_from_exponents(n: int, r: int, a: int) -> Fraction:
    """Sum of the first a theta exponents of the 2r-fold cover of Sp_(2n-r+1)."""
    _beta_range(n, r, a)
    m = (2 * n - r + 1) // 2
    return sum(theta_character_exponents(m, r, EVEN)[:a], Fraction(0))


def beta_crosscheck(n: int, r: int, a: int) -> bool:
    return beta_exponent(n, r, a) == beta_from_exponents(n, r, a)


def admissible_beta_triples(max_n: int) -> Iterable[tuple[int, int, int]]:
    for n in range(2, max_n + 1):
        for r in range(3, 2 * n, 2):
            for a in range(1, n - (r - 1) // 2 + 1):
                yield n, r, a


def smallest_split_prime(n: int) -> int:
    """Smallest prime p with p = 1 mod n."""
    p = n + 1
    while not is_prime(p):
        p += n
    return p


@dataclass
class PipelineReport:
    n: int
    factors: list = field(default_factory=list)
    total: Fraction = Fraction(0)
    expected: Fraction = Fraction(0)
    higher_m_vanish: bool = True

    @property
    def ok(self) -> bool:
        return self.total == self.expected and self.higher_m_vanish

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "factors": [{"name": k, "q_exp": frac_str(v)} for k, v in self.factors],
            "total": frac_str(self.total),
            "expected": frac_str(self.expected),
            "higher_m_vanish": self.higher_m_vanish,
            "ok": self.ok,
        }


def exponent_pipeline(n: int, check_higher_m: bool = True) -> PipelineReport:
    """Total q-exponent of the m = 1 term of the second Whittaker contribution."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")
    m = 1
    factors = [
        ("q^(m(1+(n-1)(n-3)/2)) at m=1", Fraction(m * (1 + (n - 1) * (n - 3) // 2))),
        ("unit integral p^-1 g = q^(-1/2) G", Fraction(-1, 2)),
    ]
    # y(p^-1) = diag(I_2, p I_(n-2), ...) and |p| = q^-1
    pattern = [0, 0] + [1] * (n - 2)
    delta = modulus_character_exponent(n, n, pattern)
    factors.append(("delta_Q^((n-1)/(2n)) at y(p^-1)", -delta * Fraction(n - 1, 2 * n)))
    total = sum((v for _, v in factors), Fraction(0))
    expected = -Fraction((n - 2) * (2 * n - 1), 2 * n)
    vanish = True
    if check_higher_m:
        spec = LocalFieldSpec(smallest_split_prime(n), n)
        vanish = unit_integral(2, 2 * (n - 2), spec).is_zero()
    return PipelineReport(n, factors, total, expected, vanish)


# ---------------------------------------------------------------------------
# formal scalars

class FormalScalar:
    """Finite sum of monomials gamma^w * q^e * c * (product of tokens).

    Terms are keyed by (w, e, tokens) with tokens a sorted tuple of names;
    coefficients are cyclotomic integers and zero terms are dropped.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            w, e, toks = key
            key = (int(w), Fraction(e), tuple(sorted(toks)))
            c = c if isinstance(c, CycScalar) else CycScalar.from_int(int(c))
            if key in clean:
                c = clean[key] + c
            if c.is_zero():
                clean.pop(key, None)
            else:
                clean[key] = c
        self.terms = clean

    @classmethod
    def monomial(cls, weil_exp: int = 0, q_exp=0, coeff=1, tokens: Sequence[str] = ()) -> FormalScalar:
        return cls({(weil_exp, q_exp, tuple(tokens)): coeff})

    @classmethod
    def token(cls, name: str) -> FormalScalar:
        return cls.monomial(tokens=(name,))

    @classmethod
    def zero(cls) -> FormalScalar:
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: FormalScalar) -> FormalScalar:
        if not isinstance(other, FormalScalar):
            return NotImplemented
        merged = dict(self.terms)
        out = FormalScalar(merged)
        for k, c in other.terms.items():
            if k in out.terms:
                s = out.terms[k] + c
                if s.is_zero():
                    del out.terms[k]
                else:
                    out.terms[k] = s
            else:
                out.terms[k] = c
        return out

    def __neg__(self) -> FormalScalar:
        return FormalScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: FormalScalar) -> FormalScalar:
        return self + (-other)

    def __mul__(self, other) -> FormalScalar:
        if isinstance(other, (int, CycScalar)):
            other = FormalScalar.monomial(coeff=other)
        if not isinstance(other, FormalScalar):
            return NotImplemented
        out = FormalScalar()
        for (w1, e1, t1), c1 in self.terms.items():
            for (w2, e2, t2), c2 in other.terms.items():
                out = out + FormalScalar({(w1 + w2, e1 + e2, t1 + t2): c1 * c2})
        return out

    __rmul__ = __mul__

    def shift(self, weil_exp: int = 0, q_exp=0) -> FormalScalar:
        return self * FormalScalar.monomial(weil_exp, q_exp)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalScalar):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][2], -kv[0][1], kv[0][0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_monomial_str(w, e, toks, c) for (w, e, toks), c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"FormalScalar({self})"

    def to_json(self) -> list:
        return [
            {"weil_exp": w, "q_exp": frac_str(e), "tokens": list(toks), "coeff": c.to_json()}
            for (w, e, toks), c in self.sorted_terms()
        ]


def _coeff_str(c: CycScalar) -> str | None:
    v = c.as_int()
    if v == 1:
        return None
    if v is not None:
        return str(v)
    return "(" + " + ".join(f"{a}*z{c.modulus}^{k}" for k, a in c.sparse()) + ")"


def _monomial_str(w: int, e: Fraction, toks: tuple, c: CycScalar) -> str:
    parts = []
    if w:
        parts.append(f"gamma^{w}")
    if e:
        parts.append(f"q^({frac_str(e)})")
    cs = _coeff_str(c)
    if cs is not None:
        parts.append(cs)
    parts.extend(toks)
    return "*".join(parts) or "1"


WhittakerOracle = Callable[[tuple], FormalScalar]


def token_oracle(k: tuple) -> FormalScalar:
    """Opaque placeholder for the GL_n Whittaker value at diag(p^k_1, ...)."""
    return FormalScalar.token("T(" + ",".join(str(x) for x in k) + ")")


@dataclass
class Theorem2Result:
    n: int
    n1: int
    n2: int
    weil_exp: int
    prefactor_q_exp: Fraction
    t0: tuple
    t1: tuple
    inner: FormalScalar
    gauss_p: int | None = None

    @property
    def value(self) -> FormalScalar:
        return self.inner.shift(self.weil_exp, self.prefactor_q_exp)

    def formula(self) -> str:
        head = f"gamma^{self.weil_exp}"
        if self.prefactor_q_exp:
            head += f" * q^({frac_str(self.prefactor_q_exp)})"
        return f"{head} * ({self.inner})"

    def to_json(self) -> dict:
        return {
            "n": self.n, "n1": self.n1, "n2": self.n2,
            "weil_exp": self.weil_exp,
            "weil_argument_valuation": self.n1,
            "prefactor_q_exp": frac_str(self.prefactor_q_exp),
            "t0": list(self.t0), "t1": list(self.t1),
            "gauss_factor_p": self.gauss_p,
            "inner": self.inner.to_json(),
            "expanded": self.value.to_json(),
            "formula": self.formula(),
        }


def theorem2_rhs(n: int, n1: int, n2: int, oracle: WhittakerOracle = token_oracle,
                 with_gauss_factor: bool = False, p: int | None = None) -> Theorem2Result:
    """gamma(a) |ab^2|^((2n-1)/(2n)) (W(t0) + q^(-(n-2)(2n-1)/(2n)) W(t1)) with a = p^n1, b = p^n2.

    With ``with_gauss_factor`` the second term also carries the normalised
    Gauss sum G_(n-2) over F_p.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")
    if n1 < 0 or n2 < 0:
        raise ValueError("valuations n1, n2 must be nonnegative")
    # gamma(1) = 1, otherwise one formal Weil factor
    weil = 0 if n1 == 0 else 1
    pre = -Fraction((n1 + 2 * n2) * (2 * n - 1), 2 * n)
    t0 = (n1 + n2, n2) + (0,) * (n - 2)
    t1 = (n1 + n2, n2) + (1,) * (n - 2)
    second = oracle(t1).shift(0, -Fraction((n - 2) * (2 * n - 1), 2 * n))
    gp = None
    if with_gauss_factor:
        gp = p if p is not None else smallest_split_prime(n)
        g = gauss_sum(n - 2, LocalFieldSpec(gp, n))
        second = second * FormalScalar.monomial(0, g.q_exp, g.value)
    return Theorem2Result(n, n1, n2, weil, pre, t0, t1, oracle(t0) + second, gp)


def descent_summary(n: int, r: int) -> dict:
    rep = dimension_equation_check(n, r)
    rp = (r - 1) // 2
    a, b = divmod(2 * n, r)
    return {
        "n": n,
        "r": r,
        "r_prime": rp,
        "descent_rank": (2 * n - r + 1) // 2,
        "a": a,
        "b": b,
        "pre_collapse": list(theta_orbit_pre_collapse(n, r)),
        "orbit": list(rep.orbit),
        "dim_U": unipotent_radical_dim(n, rp),
        "gk": frac_str(rep.gk_dim),
        "target_dim": frac_str(rep.target_dim),
        "dim_eq": rep.satisfied,
    }
