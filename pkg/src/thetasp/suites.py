"""Named verification suites: each check carries a short mathematical anchor."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .charsum import LocalFieldSpec, gauss_sum, power_residue, unit_integral
from .cyclotomic import QScalar
from .linalg import RationalMatrix, Span
from .matgroup import identities as ident
from .matgroup.families import direct_sum
from .matgroup.symplectic import (
    GAMMA_EVEN_FACTORS,
    GAMMA_ODD_BRUHAT,
    GAMMA_ODD_FACTORS,
    build_element,
    gamma0,
    gamma0_bruhat_factors,
    gamma_even,
    gamma_odd,
    is_symplectic,
)
from .partitions import (
    Partition,
    dimension_equation_check,
    conjectured_orbit,
    closed_form_orbit,
    partitions_of,
    sp_collapse,
    sp_collapse_bruteforce,
)
from .whittaker import (
    EVEN,
    ODD,
    admissible_beta_triples,
    beta_crosscheck,
    exponent_pipeline,
    pole_point,
    theta_character_exponents,
)


@dataclass
class Check:
    check_id: str
    anchor: str
    passed: bool
    detail: object = None

    def to_json(self) -> dict:
        return {"id": self.check_id, "anchor": self.anchor, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteResult:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check_id: str, anchor: str, passed: bool, detail=None) -> None:
        self.checks.append(Check(check_id, anchor, bool(passed), detail))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "total": len(self.checks),
            "failed": sum(not c.passed for c in self.checks),
            "checks": [c.to_json() for c in self.checks],
        }


# ---------------------------------------------------------------------------

def _catalog_samples():
    f = Fraction
    yield "w_a", dict(n=4, r=3, a=2)
    yield "w0", dict(n=4, r=5)
    yield "w0_prime", dict(n=4)
    yield "w0_star", dict(n=5)
    yield "gamma_even", {}
    yield "gamma_odd", {}
    yield "gamma0", dict(n=4)
    yield "gamma0", dict(n=5)
    yield "j", dict(n=4, r=5, x=[f(1, 2), f(-3)])
    yield "k", dict(n=4, r=5, a=1, y=[[f(2, 3)]])
    yield "m", dict(n=4, r=5, a=1, z=[[f(5, 7)]])
    yield "y_of_h", dict(n=4, h=f(3, 5))
    yield "t", dict(n=3, a=f(2), b=f(-1, 3))
    yield "n_of_x", dict(x=f(4, 9))
    yield "z_of_k", dict(k=f(-2))
    yield "y_of_m", dict(m=f(1, 3))
    yield "t_of_a", dict(a=f(7, 2))
    yield "embed_sp", dict(n=3, g=gamma0(2))
    yield "w1", {}
    yield "w2", {}
    yield "w3", {}


def identities_suite(n: int | None = None) -> SuiteResult:
    res = SuiteResult("identities")
    for name, params in _catalog_samples():
        el = build_element(name, **params)
        res.add(f"symplectic:{name}:{_params_id(params)}", "g^T J g = J", is_symplectic(el.mat))

    a, b = GAMMA_EVEN_FACTORS
    res.add("gamma:even-factors", "gamma = (1 0; -1 1)(1 1/2; 0 1)",
            a @ b == RationalMatrix([[1, Fraction(1, 2)], [-1, Fraction(1, 2)]]) and gamma_even() == a @ b)
    a, b = GAMMA_ODD_FACTORS
    res.add("gamma:odd-factors", "gamma = (1 0; 1 1)(1 -1/2; 0 1)", gamma_odd() == a @ b)
    u, w, v = GAMMA_ODD_BRUHAT
    res.add("gamma:odd-bruhat", "gamma = (1 1; 0 1)(0 -1; 1 0)(1 1/2; 0 1)", u @ w @ v == gamma_odd())
    for k in (3, 5):
        g1, om, g2 = gamma0_bruhat_factors(k)
        res.add(f"gamma0:bruhat:n={k}", "gamma_0 = gamma_0' w gamma_0''",
                g1 @ om @ g2 == gamma0(k) and all(is_symplectic(x) for x in (g1, om, g2)))
    for k in (2, 4):
        res.add(f"gamma0:symplectic:n={k}", "gamma_0 = diag(gamma, ..., gamma*)", is_symplectic(gamma0(k)))
    res.add("w3:square", "w_3^2 = diag(1,1,-1,-1,1,1)",
            build_element("w3").mat @ build_element("w3").mat == RationalMatrix.diag([1, 1, -1, -1, 1, 1]))
    for k in (2, 3, 4, 5):
        res.add(f"w0_prime:n={k}", "w0'_(i,2i-1) = 1, signed permutation", build_element("w0_prime", n=k).is_signed_permutation())

    image = ident.sp6_v().conjugate(build_element("w3").mat @ build_element("w2").mat)
    target = direct_sum(ident.sp6_u1(), ident.sp6_y()).span
    res.add("sp6:U1Y", "U_1 Y = (w_3 w_2) V (w_3 w_2)^-1", image.span == target)

    res.add("decomposition:even:n=4,r=5", "U'_l = Z_l U'_l,1",
            ident.verify_product_decomposition(ident.u_prime_l(4, 5), ident.z_group(4, 5), ident.u_prime_l1(4, 5)))
    for k in (3, 5):
        fails = not ident.verify_product_decomposition(ident.u_prime_l(k, k), ident.z_group(k, k), ident.u_prime_l1(k, k))
        res.add(f"decomposition:odd:n={k},r={k}", "U'_l != Z_l U'_l,1 when n = r odd", fails)

    levi = ident.sp6_levi_gl2_sl2()
    stab = ident.stabilizer(levi, ident.psi_r())
    diag = Span([m.flat() for m in ident.diagonal_sl2()], 36)
    res.add("stabilizer:psi_R", "Stab(psi_R) in GL_2 x SL_2 = diagonal SL_2",
            len(stab) == 3 and Span([m.flat() for m in stab], 36) == diag, {"dim": len(stab)})
    dim_v = ident.stabilizer_dimension(ident.sp6_levi_gl1_gl2(), ident.psi_v((1, 0, 1, -1)))
    res.add("stabilizer:psi_V", "Stab(psi_V,alpha) trivial, alpha_3 alpha_4 = -1", dim_v == 0, {"dim": dim_v})
    triv = ident.stabilizer_dimension(levi, ident.CharacterFunctional.trivial(ident.sp6_r()))
    res.add("stabilizer:trivial", "Stab(1) = whole Levi", triv == len(levi), {"dim": triv})

    for m in range(1, 5):
        for k in range(1, m + 1):
            h = ident.heisenberg_structure(m, k)
            res.add(f"heisenberg:m={m},k={k}", "U_2m,k / U_2m,k-1 Heisenberg in 2(m-k)+1 variables", h.ok,
                    {"dim": h.dim, "center_dim": h.center_dim})

    for label, make in ident.EXCHANGES.items():
        x, y, chi = make()
        ok = ident.root_exchange_check(x, y, chi) and ident.root_exchange_check(y, x, chi)
        res.add(f"exchange:{label}", "nondegenerate pairing chi([X, Y])", ok)

    res.add("modulus:n=3,a=1", "delta_P(diag(t, I, 1/t)) = |t|^(a(2n-a+1))",
            ident.modulus_character_exponent(3, 1, [1, 0, 0]) == 6)
    res.add("modulus:siegel:n=3", "delta_Q(diag(A, A*)) = |det A|^(n+1)",
            ident.modulus_character_exponent(3, 3, [1, 2, 3]) == 4 * 6)

    for step, nn, r, a in _transport_cases(n):
        rep = ident.verify_integral_transport(step, nn, r, a)
        res.add(f"transport:{step}:n={nn},r={r}" + (f",a={a}" if a else ""), _TRANSPORT_ANCHORS[step],
                rep.passed, {"exact": rep.exact, "sign_torus": rep.sign_torus})
    return res


_TRANSPORT_ANCHORS = {
    "descent-wa": "w_a U_2n,r',1 w_a^-1 = U_0 V_0 K",
    "whittaker-w0": "w_0 U_2n,r',1 w_0^-1 = U'_l,1 V_1",
    "whittaker-w0-prime": "w_0' U'_l w_0'^-1 = U_2n,n,0 Y",
    "whittaker-w0-star": "w_0* U'_l w_0*^-1 = U_2n,n,0 Y_0",
    "sp6-v-to-u1y": "U_1 Y = (w_3 w_2) V (w_3 w_2)^-1",
    "identity": "I U I^-1 = U",
}


def _transport_cases(n: int | None):
    ns = [n] if n is not None else [2, 3, 4]
    for k in ns:
        if k > 5:
            continue
        yield "identity", k, 3, None
        for r in range(3, 2 * k, 2):
            for a in range(1, k - (r - 1) // 2 + 1):
                yield "descent-wa", k, r, a
            if r >= k:
                yield "whittaker-w0", k, r, None
        if k % 2 == 0:
            yield "whittaker-w0-prime", k, k + 1, None
        elif k >= 3:
            yield "whittaker-w0-star", k, k, None
        if k == 3:
            yield "sp6-v-to-u1y", 3, 3, None


def _params_id(params: dict) -> str:
    keys = [k for k in ("n", "r", "a") if k in params]
    return ",".join(f"{k}={params[k]}" for k in keys) or "-"


# ---------------------------------------------------------------------------

def orbit_table(max_n: int = 6) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        for r in range(n if n % 2 else n + 1, 2 * n, 2):
            rep = dimension_equation_check(n, r)
            closed = closed_form_orbit(n, r)
            rows.append({
                "n": n, "r": r, "orbit": list(rep.orbit), "closed_form": list(closed),
                "gk": str(rep.gk_dim), "target": str(rep.target_dim),
                "ok": rep.orbit == closed and rep.satisfied and rep.balanced,
            })
    return rows


def collapse_disagreements(max_total: int = 16) -> list:
    bad = []
    for total in range(0, max_total + 1, 2):
        for lam in partitions_of(total):
            if sp_collapse(lam) != sp_collapse_bruteforce(lam):
                bad.append(list(lam))
    return bad


def orbits_suite(max_n: int = 6, collapse_total: int = 12) -> SuiteResult:
    res = SuiteResult("orbits")
    for row in orbit_table(max_n):
        res.add(f"orbit:n={row['n']},r={row['r']}", "O(Theta) = Sp collapse of (r^a b), dim = n^2-n+(r-1)/2",
                row["ok"], {"orbit": row["orbit"], "gk": row["gk"]})
    bad = collapse_disagreements(collapse_total)
    res.add(f"collapse:oracle:total<={collapse_total}", "greatest symplectic partition below lambda",
            not bad, {"disagreements": bad})
    named = [((7, 1), (6, 2)), ((5, 3), (4, 4)), ((3, 3), (3, 3)), ((3, 1), (2, 2))]
    for lam, want in named:
        res.add(f"collapse:{','.join(map(str, lam))}", "greatest symplectic partition below lambda",
                sp_collapse(Partition(lam)) == Partition(want))
    res.add("orbit:named:n=3,r=3", "O(Theta_6^(3)) = (3^2)", conjectured_orbit(3, 3) == Partition((3, 3)))
    return res


def exponents_suite(max_n: int = 8) -> SuiteResult:
    res = SuiteResult("exponents")
    triples = list(admissible_beta_triples(max_n))
    bad = [list(t) for t in triples if not beta_crosscheck(*t)]
    res.add(f"beta:n<={max_n}", "beta = sum of the first a theta exponents", not bad,
            {"checked": len(triples), "failures": bad})
    for n in range(3, 16, 2):
        rep = exponent_pipeline(n)
        res.add(f"pipeline:n={n}", "q-exponent = -(n-2)(2n-1)/(2n)", rep.ok, {"total": str(rep.total)})
    for n in range(1, 11):
        for r in (3, 5, 7):
            rho = [Fraction(n - i + 1) for i in range(1, n + 1)]
            ok = True
            for cover in (ODD, EVEN):
                s = pole_point(n, r, cover)
                ok &= all(r * (x - y) == 1 for x, y in zip(s, s[1:]))
                ok &= (r * s[-1] == 1) if cover == ODD else (2 * r * s[-1] == 1)
                ok &= [a - b for a, b in zip(rho, s)] == theta_character_exponents(n, r, cover)
            res.add(f"poles:n={n},r={r}", "r(s_i - s_i+1) = 1, theta exponent = rho - s", ok)
    return res


CHARSUM_PRIMES = (7, 13, 19, 31)


def charsums_suite(n: int = 3, primes=CHARSUM_PRIMES, max_m: int = 4) -> SuiteResult:
    res = SuiteResult("charsums")
    for p in primes:
        spec = LocalFieldSpec(p, n)
        hom = all(
            (power_residue(a * b, spec) - power_residue(a, spec) - power_residue(b, spec)) % n == 0
            for a in range(1, p) for b in range(1, p)
        )
        res.add(f"residue:hom:p={p}", "(e1 e2, p)_n = (e1, p)_n (e2, p)_n", hom)
        for t in range(n):
            g = gauss_sum(t, spec)
            if t % n:
                res.add(f"gauss:norm:p={p},t={t}", "|g_t|^2 = p", g.value * g.value.conj() == p)
            else:
                res.add(f"gauss:trivial:p={p}", "g_0 = -1", g.value == -1)
            res.add(f"unit:m=1:p={p},t={t}", "m = 1 integral = q^-1/2 G_t",
                    unit_integral(1, t, spec) == QScalar(g.value, -1, p))
            for m in range(2, max_m + 1):
                res.add(f"unit:m={m}:p={p},t={t}", "unit integral vanishes unless m = 1",
                        unit_integral(m, t, spec).is_zero())
    return res


SUITES = {
    "identities": identities_suite,
    "exponents": exponents_suite,
    "orbits": orbits_suite,
    "charsums": charsums_suite,
}
