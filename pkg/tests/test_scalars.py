"""Cyclotomic scalar layer: frozen small-case oracles plus field axioms.

The hand-derived values here were computed independently (minimal
polynomials, sin-ratio values of the symmetric brackets) before the
implementation existed; they must never be regenerated from the code.
"""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qads.scalars import Cyc, CycField, ClassicalField, cyclotomic_poly


# Phi_48 = x^16 - x^8 + 1, and friends
def test_cyclotomic_polys_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    c48 = [0] * 17
    c48[0], c48[8], c48[16] = 1, -1, 1
    assert cyclotomic_poly(48) == tuple(c48)


def test_field_degree(fld):
    assert fld.phi == 16
    assert fld.L == 48


def test_q_is_primitive_twelfth_root(fld):
    q = fld.q
    assert q ** 12 == fld.one
    assert q ** 6 == -fld.one
    for k in range(1, 12):
        assert q ** k != fld.one


def test_bracket_zeros_long_root(fld):
    # [x]_q vanishes exactly on multiples of 6 at m=12, n=1
    assert fld.is_zero(fld.bracket(6))
    assert fld.is_zero(fld.bracket(12))
    assert fld.is_zero(fld.bracket(-6))
    for k in range(1, 6):
        assert not fld.is_zero(fld.bracket(k))


def test_bracket_zeros_short_root(fld):
    # at q^(1/2) the wall doubles
    assert fld.is_zero(fld.bracket(12, d=Fraction(1, 2)))
    for k in range(1, 12):
        assert not fld.is_zero(fld.bracket(k, d=Fraction(1, 2)))


def test_bracket_values(fld):
    # [7] = -[1] = -1 past the wall
    assert fld.bracket(7) == -fld.one
    # [x+6] = -[x]
    for x in (1, 2, Fraction(7, 2)):
        assert fld.bracket(x + 6) == -fld.bracket(x)
    # half-integral arguments never vanish at the long root
    for twice in range(1, 24, 2):
        assert not fld.is_zero(fld.bracket(Fraction(twice, 2)))


def test_bracket_numeric_shadow(fld):
    # [2]_{q^(1/2)} = 2 cos(pi/12)
    val = fld.approx(fld.bracket(2, d=Fraction(1, 2)))
    assert abs(val.imag) < 1e-25
    assert abs(val.real - 2 * mpmath.cos(mpmath.pi / 12)) < 1e-12
    # [x]_q = 2 sin(pi x / 6) ... normalized by 2 sin(pi/6) = 1
    val3 = fld.approx(fld.bracket(3))
    assert abs(val3.real - 2.0) < 1e-12


def test_sum_of_q_and_inverse_squares_to_three(fld):
    x = fld.q + fld.q ** -1
    assert x * x == fld.from_int(3)
    assert fld.sign(x * x) == 1


def test_conjugation(fld):
    assert fld.conj(fld.q) == fld.q ** -1
    z = fld.zeta_pow(5)
    assert fld.conj(z) == fld.zeta_pow(-5)


def test_fractional_q_powers(fld):
    assert fld.qpow(Fraction(1, 4)) ** 4 == fld.q
    assert fld.qpow(Fraction(1, 2)) ** 2 == fld.q
    assert fld.qpow(Fraction(3, 2)) == fld.q * fld.qpow(Fraction(1, 2))
    with pytest.raises(AssertionError):
        fld.qpow(Fraction(1, 8))


def test_division_and_inverse(fld):
    x = fld.q + fld.from_int(3)
    assert x / x == fld.one
    y = fld.one / x
    assert x * y == fld.one


def test_certified_sign_basics(fld):
    assert fld.sign(fld.zero) == 0
    assert fld.sign(fld.from_int(-2)) == -1
    assert fld.sign(fld.bracket(1)) == 1
    # [13/2] = -[1/2] < 0
    assert fld.sign(fld.bracket(Fraction(13, 2))) == -1
    with pytest.raises(AssertionError):
        fld.sign(fld.q)  # not real


def test_classical_field():
    c = ClassicalField()
    assert c.bracket(5) == 5
    assert c.brk_binom(4, 2) == 6
    assert c.qpow(3) == 1
    assert c.sign(Fraction(-3, 7)) == -1
    assert c.bracket(Fraction(7, 2)) == Fraction(7, 2)


def test_brk_binom_small(fld):
    # [2 choose 1]_{q} = [2]; [3 choose 1]_{q^(1/2)} = [3]_{q^(1/2)}
    assert fld.brk_binom(2, 1) == fld.bracket(2)
    h = Fraction(1, 2)
    assert fld.brk_binom(3, 1, d=h) == fld.bracket(3, d=h)
    assert fld.brk_binom(3, 2, d=h) == fld.bracket(3, d=h)


# -- property tests ----------------------------------------------------------

def _elems(fld):
    coeff = st.integers(min_value=-9, max_value=9)
    return st.builds(
        lambda cs, d: Cyc(fld, tuple(cs), d),
        st.lists(coeff, min_size=fld.phi, max_size=fld.phi),
        st.integers(min_value=1, max_value=7),
    )


FLD = CycField(12, 1)


@settings(max_examples=60, deadline=None)
@given(_elems(FLD), _elems(FLD), _elems(FLD))
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * (y * z) == (x * y) * z
    assert x * y == y * x
    assert x + (-x) == FLD.zero


@settings(max_examples=40, deadline=None)
@given(_elems(FLD), _elems(FLD))
def test_conj_is_ring_involution(x, y):
    assert FLD.conj(x * y) == FLD.conj(x) * FLD.conj(y)
    assert FLD.conj(x + y) == FLD.conj(x) + FLD.conj(y)
    assert FLD.conj(FLD.conj(x)) == x


@settings(max_examples=40, deadline=None)
@given(_elems(FLD))
def test_field_inverse(x):
    if not FLD.is_zero(x):
        assert x * (FLD.one / x) == FLD.one


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=-30, max_value=30))
def test_bracket_antisymmetry(k):
    assert FLD.bracket(-k) == -FLD.bracket(k)
    assert FLD.is_real(FLD.bracket(k))


@settings(max_examples=25, deadline=None)
@given(_elems(FLD))
def test_certified_sign_against_highprec(x):
    # y conj(y) is real; compare certified sign with a 200-digit evaluation
    y = x * FLD.conj(x)
    s = FLD.sign(y)
    with mpmath.workdps(200):
        val = mpmath.mpf(0)
        for k, c in enumerate(y.num):
            if c:
                val += c * mpmath.cos(2 * mpmath.pi * k / FLD.L)
        val /= y.den
        if abs(val) > mpmath.mpf(10) ** -150:
            assert s == (1 if val > 0 else -1)
        else:
            assert s == 0
