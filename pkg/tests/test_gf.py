from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from kparallel.gf import (
    FieldError,
    extension_field,
    field_new,
    field_of_order,
    is_irreducible,
    prime_power,
)

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (7, 1), (2, 8)]


def digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, r = divmod(a, p)
        out.append(r)
    return out


def sympy_mul(F, a: int, b: int) -> int:
    """Product through sympy's dense polynomial arithmetic over F_p."""
    p, e = F.p, F.degree
    fa = list(reversed(digits(a, p, e)))
    fb = list(reversed(digits(b, p, e)))
    mod = [int(c) for c in reversed(F.modulus)]
    r = gf_rem(gf_mul(fa, fb, p, ZZ), mod, p, ZZ)
    r = [int(c) for c in reversed(r)] + [0] * e
    return sum(c * p**i for i, c in enumerate(r[:e]))


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_multiplication_matches_sympy(p, e):
    F = field_new(p, e)
    step = max(1, F.order // 23)
    for a in range(0, F.order, step):
        for b in range(0, F.order, max(1, F.order // 17)):
            assert F.mul(a, b) == sympy_mul(F, a, b)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_default_modulus_is_irreducible_and_primitive(p, e):
    F = field_new(p, e)
    if e > 1:
        assert gf_irreducible_p([int(c) for c in reversed(F.modulus)], p, ZZ)
    # alpha generates the multiplicative group
    seen = {F.exp(i) for i in range(F.order - 1)}
    assert len(seen) == F.order - 1 and 0 not in seen
    assert F.pow(F.alpha, F.order - 1) == 1


def test_gf8_alpha_is_x():
    F = field_new(2, 3)
    assert F.modulus == (1, 1, 0, 1)
    assert F.alpha == 2
    a3 = F.pow(F.alpha, 3)
    assert a3 == F.add(F.alpha, 1)


def test_gf4_frobenius_and_prime_field_alpha():
    F = field_new(2, 2)
    assert F.frobenius(F.alpha) == 3
    assert F.frobenius(0) == 0
    assert field_new(2).alpha == 1
    assert field_new(5).alpha == 2


def test_tower_field_has_expected_order():
    F4 = field_of_order(4)
    E = extension_field(F4, 2)
    assert E.order == 16 and E.base == F4 and E.e == 4
    x = E.alpha
    assert len({E.pow(x, i) for i in range(15)}) == 15


def test_errors():
    with pytest.raises(FieldError):
        field_new(4)
    with pytest.raises(FieldError):
        field_new(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2
    with pytest.raises(FieldError):
        field_of_order(6)
    with pytest.raises(FieldError):
        field_new(2, 40)
    assert prime_power(81) == (3, 4)
    assert not is_irreducible((1, 0, 1), p=2)
    assert is_irreducible((1, 1, 1), p=2)


def test_large_nonbinary_field_builds():
    F = field_new(3, 10)
    assert F.order == 3**10
    a = F.exp(12345)
    assert F.mul(a, F.inv(a)) == 1


@st.composite
def field_and_elements(draw, count=3):
    p, e = draw(st.sampled_from(SMALL_FIELDS))
    F = field_new(p, e)
    return F, [draw(st.integers(0, F.order - 1)) for _ in range(count)]


@settings(max_examples=200, deadline=None)
@given(field_and_elements())
def test_field_axioms(fe):
    F, (a, b, c) = fe
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.exp(F.log(a)) == a
        assert F.div(F.mul(a, b), a) == b


@settings(max_examples=100, deadline=None)
@given(field_and_elements(count=2))
def test_frobenius_is_additive_and_multiplicative(fe):
    F, (a, b) = fe
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(a, F.e) == a


@settings(max_examples=100, deadline=None)
@given(field_and_elements(count=2))
def test_vector_round_trip_is_linear(fe):
    F, (a, b) = fe
    assert F.from_vector(F.to_vector(a)) == a
    va, vb, vs = F.to_vector(a), F.to_vector(b), F.to_vector(F.add(a, b))
    assert vs == tuple((x + y) % F.p for x, y in zip(va, vb))


def test_field_element_operators():
    F = field_new(2, 4)
    a, b = F.element(5), F.element(9)
    assert int(a * b) == F.mul(5, 9)
    assert int(a + b) == F.add(5, 9)
    assert int(a / b) == F.div(5, 9)
    assert int(a**3) == F.pow(5, 3)
    assert (a * a.inv()) == F.element(1)
    with pytest.raises(Exception):
        F.element(16)


def test_describe_lists_modulus_and_alpha():
    d = field_new(2, 4).describe()
    assert d == {"p": 2, "e": 4, "modulus": [1, 1, 0, 0, 1], "alpha": 2}
