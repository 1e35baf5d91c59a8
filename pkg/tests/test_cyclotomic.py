import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import phi_remainder
from thetasp.cyclotomic import CycScalar, QScalar, cyclotomic_polynomial, dense_remainder, factorize

MODULI = [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 21, 25, 27, 36, 45, 63]


@st.composite
def element(draw, moduli=MODULI):
    m = draw(st.sampled_from(moduli))
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=m, max_size=m))
    return CycScalar(m, coeffs)


@st.composite
def triple(draw):
    m = draw(st.sampled_from(MODULI))
    return tuple(draw(element([m])) for _ in range(3))


def test_factorize():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(1) == []


@pytest.mark.parametrize("m", range(1, 40))
def test_cyclotomic_polynomial_matches_sympy(m):
    import sympy
    x = sympy.symbols("x")
    want = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())]
    assert cyclotomic_polynomial(m) == want


def test_sum_of_roots_is_zero():
    for m in (3, 5, 9, 21):
        assert CycScalar(m, np.ones(m, dtype=np.int64)).is_zero()
    assert CycScalar(1, [1]) == 1


def test_zeta_power_wraps():
    z = CycScalar.zeta(12)
    acc = CycScalar.from_int(1, 12)
    for _ in range(12):
        acc = acc * z
    assert acc == 1
    assert CycScalar.zeta(12, 6) == -1


def test_lift_and_mixed_moduli():
    z3 = CycScalar.zeta(3)
    z7 = CycScalar.zeta(7)
    assert z3 * z7 == CycScalar.zeta(21, 10)
    assert z3.lift(21) == CycScalar.zeta(21, 7)
    with pytest.raises(ValueError):
        z3.lift(10)


def test_bad_length():
    with pytest.raises(ValueError):
        CycScalar(5, [1, 2])
    with pytest.raises(ValueError):
        CycScalar(0)


def test_as_int_and_json():
    assert CycScalar.from_int(-3, 7).as_int() == -3
    assert CycScalar.zeta(7).as_int() is None
    assert CycScalar.zeta(7, 2).to_json() == {"modulus": 7, "coefficients": [[2, 1]]}


@settings(max_examples=150, deadline=None)
@given(element())
def test_canonical_form_matches_phi_remainder(a):
    # two independent reductions must agree on membership of zero
    m = a.modulus
    rem = dense_remainder(m, a.coefficients)
    assert (not any(rem)) == a.is_zero()


@settings(max_examples=40, deadline=None)
@given(element([6, 9, 12, 15, 21]), element([6, 9, 12, 15, 21]))
def test_equality_matches_sympy_remainder(a, b):
    if a.modulus != b.modulus:
        return
    m = a.modulus
    raw_a = phi_remainder(m, a.coefficients)
    raw_b = phi_remainder(m, b.coefficients)
    assert (a == b) == (raw_a == raw_b)


@settings(max_examples=40, deadline=None)
@given(element([6, 9, 12, 15, 21]), element([6, 9, 12, 15, 21]))
def test_product_matches_sympy(a, b):
    if a.modulus != b.modulus:
        return
    m = a.modulus
    prod = np.convolve(a.coefficients, b.coefficients)
    assert phi_remainder(m, (a * b).coefficients) == phi_remainder(m, list(prod))


@settings(max_examples=80, deadline=None)
@given(triple())
def test_ring_axioms(t):
    a, b, c = t
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert (a * 1) == a


@settings(max_examples=60, deadline=None)
@given(triple())
def test_conjugation_is_ring_involution(t):
    a, b, _ = t
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


def test_qscalar_equality():
    g = CycScalar.zeta(7) + CycScalar.zeta(7, 3)
    assert QScalar(g * 49, -2, 7) == QScalar(g, 0, 7)
    assert QScalar(CycScalar.from_int(0), 5, 7) == QScalar(CycScalar.from_int(0, 7), -1, 7)
    with pytest.raises(ValueError):
        QScalar(g, "1/2", 7) == QScalar(g, 0, 7)


def test_qscalar_product_adds_exponents():
    a = QScalar(CycScalar.zeta(3), "-1/2", 7)
    b = QScalar(CycScalar.zeta(3, 2), "-1/2", 7)
    c = a * b
    assert c.q_exp == -1 and c.value == 1
    assert c.to_json() == {"modulus": 3, "coefficients": [[0, 1]], "q_exp": "-1", "q": 7}
    with pytest.raises(ValueError):
        a * QScalar(CycScalar.zeta(3), 0, 13)
