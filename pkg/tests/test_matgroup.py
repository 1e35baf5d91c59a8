import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import modulus_exponent_oracle
from thetasp.linalg import RationalMatrix, Span, rank
from thetasp.matgroup import identities as ident
from thetasp.matgroup.families import (
    CharacterFunctional,
    UnipotentFamily,
    exp_nilpotent,
    max_unipotent,
    u_radical,
)
from thetasp.matgroup.symplectic import (
    CATALOG,
    GAMMA_EVEN_FACTORS,
    GAMMA_ODD_BRUHAT,
    GAMMA_ODD_FACTORS,
    NotSymplecticError,
    build_element,
    estar,
    form_matrix,
    gamma0,
    gamma0_bruhat_factors,
    gamma_even,
    gamma_odd,
    in_lie_algebra,
    is_symplectic,
    j_of_x,
)
from thetasp.suites import _catalog_samples

F = Fraction
I = RationalMatrix.identity


# --- form and directions --------------------------------------------------

def test_form_n1():
    assert form_matrix(1) == RationalMatrix([[0, 1], [-1, 0]])


def test_form_n2_antidiagonal():
    assert form_matrix(2).support() == {(1, 4): 1, (2, 3): 1, (3, 2): -1, (4, 1): -1}


def test_form_is_alternating_and_invertible():
    for n in range(1, 6):
        J = form_matrix(n)
        assert J.T == -J and J @ J == -I(2 * n)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_estar_in_lie_algebra(n):
    for i in range(1, 2 * n + 1):
        for j in range(1, 2 * n + 1):
            assert in_lie_algebra(estar(n, i, j))


def test_estar_out_of_range():
    with pytest.raises(IndexError):
        estar(2, 0, 1)


def test_estar_line_is_symplectic_for_all_x():
    # (I + xD)^T J (I + xD) = J + x(D^T J + J D) + x^2 D^T J D, both corrections vanish
    D, J = estar(2, 1, 2), form_matrix(2)
    assert (D.T @ J + J @ D).is_zero()
    assert (D.T @ J @ D).is_zero()
    for x in (F(1), F(-3, 7), F(22, 5)):
        assert is_symplectic(I(4) + D.scale(x))


def test_j_of_x_is_sum_of_estar():
    n, r = 4, 5
    rp = (r - 1) // 2
    x = [F(1, 2), F(-3)]
    expected = I(2 * n)
    for k, xk in enumerate(x, start=1):
        expected = expected + estar(n, rp, rp + k).scale(xk)
    assert j_of_x(n, rp, x) == expected


# --- catalog --------------------------------------------------------------

def test_catalog_samples_cover_catalog():
    assert {name for name, _ in _catalog_samples()} == set(CATALOG)


@pytest.mark.parametrize("name,params", list(_catalog_samples()))
def test_catalog_elements_symplectic(name, params):
    el = build_element(name, **params)
    assert is_symplectic(el.mat)


@pytest.mark.parametrize("name,params", [
    ("w_a", dict(n=4, r=3, a=2)), ("w0", dict(n=4, r=5)), ("w0_prime", dict(n=4)),
    ("w0_star", dict(n=5)), ("w1", {}), ("w2", {}), ("w3", {}),
])
def test_weyl_elements_are_signed_permutations(name, params):
    assert build_element(name, **params).is_signed_permutation()


def test_build_errors():
    with pytest.raises(ValueError):
        build_element("nope")
    with pytest.raises(ValueError):
        build_element("w_a", n=3)


def test_w3_square():
    w3 = build_element("w3").mat
    assert w3 @ w3 == RationalMatrix.diag([1, 1, -1, -1, 1, 1])


def test_gamma_factorizations():
    a, b = GAMMA_EVEN_FACTORS
    assert gamma_even() == a @ b == RationalMatrix([[1, F(1, 2)], [-1, F(1, 2)]])
    a, b = GAMMA_ODD_FACTORS
    assert gamma_odd() == a @ b
    u, w, v = GAMMA_ODD_BRUHAT
    assert u @ w @ v == gamma_odd()


@pytest.mark.parametrize("n", [3, 5])
def test_gamma0_bruhat(n):
    g1, om, g2 = gamma0_bruhat_factors(n)
    assert g1 @ om @ g2 == gamma0(n)


def test_symplectic_element_rejects():
    from thetasp.matgroup.symplectic import SymplecticElement
    with pytest.raises(NotSymplecticError):
        SymplecticElement(RationalMatrix.diag([2, 1]))


# --- families -------------------------------------------------------------

def test_maximal_unipotent_is_nilpotent_subalgebra():
    for n in (2, 3):
        u = max_unipotent(n)
        assert u.dim == n * n
        assert u.is_subalgebra() and u.is_nilpotent() and u.is_lie_algebra_valid()


def test_family_element_length_check():
    with pytest.raises(ValueError):
        max_unipotent(2).element([1])


def test_exp_nilpotent_inverse():
    d = estar(3, 1, 2) + estar(3, 2, 5)
    assert exp_nilpotent(d) @ exp_nilpotent(-d) == I(6)


def _families():
    yield max_unipotent(2)
    yield max_unipotent(3)
    yield u_radical(3, 1)
    yield ident.sp6_v()
    yield ident.sp6_u1()
    yield ident.u_prime_l(4, 5)
    yield ident.k_group(3, 5, 1)


@pytest.mark.parametrize("fam", list(_families()), ids=lambda f: f.name)
def test_families_exponentiate_symplectically(fam):
    assert fam.exponentiates_symplectically(random.Random(7), points=3)


fam_choice = st.sampled_from(list(_families()))
params = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=16, max_size=16)


@settings(max_examples=25, deadline=None)
@given(fam_choice, params)
def test_family_elements_symplectic_property(fam, ps):
    assert is_symplectic(fam.element(ps[: len(fam.directions)]))


def _random_symplectic(seed: int) -> RationalMatrix:
    rng = random.Random(seed)
    w = build_element("w0", n=3, r=3).mat
    return max_unipotent(3).random_element(rng) @ w @ u_radical(3, 2).random_element(rng)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([max_unipotent(3), u_radical(3, 1), ident.sp6_v(), ident.sp6_y()]), st.integers(0, 10**6))
def test_conjugation_preserves_structure(fam, seed):
    w = _random_symplectic(seed)
    image = fam.conjugate(w)
    assert image.dim == fam.dim
    assert image.structure_constants() == fam.structure_constants()


def test_conjugate_family_identity():
    u = max_unipotent(3)
    chi = CharacterFunctional(u, {(1, 2): 1, (2, 3): 1})
    image, chi2 = ident.conjugate_family(I(6), u, chi)
    assert image.same_span(u)
    assert chi2.values() == chi.values()


def test_conjugate_family_rejects_non_subalgebra():
    fam = UnipotentFamily(3, [estar(3, 1, 2), estar(3, 2, 1)])
    with pytest.raises(ident.TransportError):
        ident.conjugate_family(I(6), fam)


# --- product decomposition, exchanges, stabilizers --------------------------

def test_decomposition_even_case():
    assert ident.verify_product_decomposition(ident.u_prime_l(4, 5), ident.z_group(4, 5), ident.u_prime_l1(4, 5))


@pytest.mark.parametrize("n", [3, 5])
def test_decomposition_fails_odd_case(n):
    assert not ident.verify_product_decomposition(ident.u_prime_l(n, n), ident.z_group(n, n), ident.u_prime_l1(n, n))


def test_decomposition_with_trivial_factor():
    u = max_unipotent(3)
    assert ident.verify_product_decomposition(u, u, UnipotentFamily(3, []))


@pytest.mark.parametrize("label", list(ident.EXCHANGES))
def test_exchange_catalog(label):
    x, y, chi = ident.EXCHANGES[label]()
    assert ident.root_exchange_check(x, y, chi)
    assert ident.root_exchange_check(y, x, chi)


def test_exchange_degenerate_self_pairing():
    x, _, chi = ident.sp6_xy_exchange()
    assert not ident.root_exchange_check(x, x, chi)


positions6 = st.lists(st.tuples(st.integers(1, 3), st.integers(2, 6)).filter(lambda p: p[0] < p[1]), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(positions6, positions6, st.lists(st.integers(-2, 2), min_size=5, max_size=5))
def test_root_exchange_symmetric(px, py, ws):
    x = UnipotentFamily.from_positions(3, px)
    y = UnipotentFamily.from_positions(3, py)
    u = max_unipotent(3)
    weights = dict(zip([(1, 2), (2, 3), (1, 3), (3, 4), (2, 4)], ws))
    chi = CharacterFunctional(u, weights)
    assert ident.root_exchange_check(x, y, chi) == ident.root_exchange_check(y, x, chi)


def test_stabilizer_psi_r_is_diagonal_sl2():
    stab = ident.stabilizer(ident.sp6_levi_gl2_sl2(), ident.psi_r())
    assert len(stab) == 3
    assert Span([m.flat() for m in stab], 36) == Span([m.flat() for m in ident.diagonal_sl2()], 36)


def test_stabilizer_psi_v_trivial():
    assert ident.stabilizer_dimension(ident.sp6_levi_gl1_gl2(), ident.psi_v((1, 0, 1, -1))) == 0


def test_stabilizer_psi_v_other_alphas():
    # the condition alpha_3 alpha_4 = -1 alone does not force a trivial stabilizer
    levi = ident.sp6_levi_gl1_gl2()
    assert ident.stabilizer_dimension(levi, ident.psi_v((1, 1, 1, -1))) == 1
    assert ident.stabilizer_dimension(levi, ident.psi_v((0, 0, 1, -1))) == 2


def test_stabilizer_trivial_character():
    levi = ident.sp6_levi_gl2_sl2()
    chi = CharacterFunctional.trivial(ident.sp6_r())
    assert ident.stabilizer_dimension(levi, chi) == len(levi) == 7


def test_stabilizer_rejects_dependent_levi():
    levi = ident.sp6_levi_gl2_sl2()
    with pytest.raises(ValueError):
        ident.stabilizer(levi + [levi[0]], ident.psi_r())


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=49, max_size=49))
def test_stabilizer_dimension_basis_invariant(coeffs):
    levi = ident.sp6_levi_gl2_sl2()
    k = len(levi)
    mix = [coeffs[i * k:(i + 1) * k] for i in range(k)]
    if rank(mix) < k:
        return
    new = []
    for row in mix:
        m = RationalMatrix.zero(6)
        for c, l in zip(row, levi):
            m = m + l.scale(c)
        new.append(m)
    for chi in (ident.psi_r(), CharacterFunctional.trivial(ident.sp6_r())):
        assert ident.stabilizer_dimension(new, chi) == ident.stabilizer_dimension(levi, chi)


# --- Heisenberg quotients and modulus characters ---------------------------

def test_heisenberg_examples():
    h = ident.heisenberg_structure(2, 1)
    assert (h.dim, h.center_dim, h.ok) == (3, 1, True)
    assert ident.heisenberg_structure(3, 1).dim == 5
    for m in range(1, 5):
        assert ident.heisenberg_structure(m, m).dim == 1


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_heisenberg_dimensions(m):
    for k in range(1, m + 1):
        h = ident.heisenberg_structure(m, k)
        assert h.ok and h.dim == 2 * (m - k) + 1


def test_heisenberg_range():
    with pytest.raises(ValueError):
        ident.heisenberg_structure(2, 3)


def test_modulus_examples():
    assert ident.modulus_character_exponent(3, 1, [1, 0, 0]) == 6
    assert ident.modulus_character_exponent(4, 0, [5, 1, 2, 3]) == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_modulus_against_oracle(n):
    pats = [[1] * n, list(range(n)), [0, 0] + [1] * (n - 2), [F(1, 2)] + [0] * (n - 1)]
    for a in range(n + 1):
        for pat in pats:
            assert ident.modulus_character_exponent(n, a, pat) == modulus_exponent_oracle(n, a, pat)


# --- transport catalog -----------------------------------------------------

def test_transport_spec_examples():
    assert ident.verify_integral_transport("descent-wa", 3, 3, 1).passed
    assert ident.verify_integral_transport("whittaker-w0-prime", 4, 5).passed
    rep = ident.verify_integral_transport("identity", 3, 3)
    assert rep.passed and rep.exact


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_descent_transport_exact(n):
    for r in range(3, 2 * n, 2):
        for a in range(1, n - (r - 1) // 2 + 1):
            rep = ident.verify_integral_transport("descent-wa", n, r, a)
            assert rep.exact, rep.to_json()


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_whittaker_transport_exact(n):
    for r in range(n + (n % 2 == 0), 2 * n, 2):
        assert ident.verify_integral_transport("whittaker-w0", n, r).exact


def test_siegel_type_transports():
    assert ident.verify_integral_transport("whittaker-w0-prime", 2, 3).exact
    rep = ident.verify_integral_transport("whittaker-w0-prime", 4, 5)
    assert rep.passed and not rep.exact and rep.sign_torus == [1, 1, 1, -1]
    assert ident.verify_integral_transport("whittaker-w0-star", 3, 3).exact
    rep = ident.verify_integral_transport("whittaker-w0-star", 5, 5)
    assert rep.passed and rep.sign_torus == [1, 1, 1, 1, -1]
    assert ident.verify_integral_transport("sp6-v-to-u1y", 3, 3).exact


def test_transport_errors():
    with pytest.raises(ValueError):
        ident.verify_integral_transport("nope", 3, 3)
    with pytest.raises(ValueError):
        ident.verify_integral_transport("descent-wa", 6, 3)
    with pytest.raises(ValueError):
        ident.verify_integral_transport("whittaker-w0-prime", 3, 3)


def test_sp6_u1y_span():
    w = build_element("w3").mat @ build_element("w2").mat
    image = ident.sp6_v().conjugate(w)
    from thetasp.matgroup.families import direct_sum
    assert image.span == direct_sum(ident.sp6_u1(), ident.sp6_y()).span
