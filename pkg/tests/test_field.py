from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from germtools.errors import DivisionByZero, NonInvertible, ParseError
from germtools.field import (QQ, FieldElement, NumberField, Unsupported, conjugate_images,
                             field_arith)

SQRT2 = NumberField([-2, 0, 1])
GAUSS = NumberField([1, 0, 1])
CUBE = NumberField([-2, 0, 0, 1])


def el(F, *coords):
    return FieldElement(F, F.from_coords(coords))


def test_difference_of_squares():
    v = SQRT2.gen()
    assert field_arith("mul", 1 + v, 1 - v, SQRT2) == -1


def test_defining_relation():
    v = GAUSS.gen()
    assert field_arith("mul", v, v, GAUSS) == -1


def test_inverse_of_generator():
    v = SQRT2.gen()
    assert field_arith("div", 1, v, SQRT2) == v / 2


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_arith("div", SQRT2.gen(), 0, SQRT2)


def test_non_invertible_on_reducible_modulus():
    F = NumberField([-1, 0, 1])          # (v - 1)(v + 1), squarefree but reducible
    with pytest.raises(NonInvertible):
        field_arith("div", 1, F.gen() - 1, F)


def test_modulus_must_be_squarefree_and_monic():
    with pytest.raises(ValueError):
        NumberField([1, 2, 1])
    with pytest.raises(ValueError):
        NumberField([1, 0, 2])


def test_conjugates():
    v = SQRT2.gen()
    assert conjugate_images(SQRT2) == [v, -v]
    assert conjugate_images(NumberField([-3, 1])) == [FieldElement(NumberField([-3, 1]), 3)]
    assert isinstance(conjugate_images(CUBE), Unsupported)
    assert not conjugate_images(CUBE)


def test_conjugates_of_cyclotomic_field_are_roots():
    F = NumberField([1, 1, 1, 1, 1])     # 5th cyclotomic: splits in itself
    roots = conjugate_images(F)
    assert not isinstance(roots, Unsupported) and len(roots) == 4
    assert roots[0] == F.gen()
    for r in roots:
        assert r ** 5 == 1
    assert len({r.coords for r in roots}) == 4


def test_json_roundtrip():
    obj = SQRT2.to_json()
    assert obj == {"generator": "v", "min_poly": ["-2", "0", "1"]}
    assert NumberField.from_json(obj) == SQRT2
    with pytest.raises(ParseError):
        NumberField.from_json({"generator": "v"})


def test_rationals_are_the_degree_one_case():
    a = FieldElement(QQ, Fraction(3, 4))
    assert a * 4 == 3 and str(a) == "3/4"


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
elems = st.tuples(fracs, fracs, fracs).map(lambda c: el(CUBE, *c))


@settings(max_examples=60, deadline=None)
@given(elems, elems, elems)
def test_field_axioms_cubic(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if a != 0:
        assert field_arith("div", field_arith("mul", a, b, CUBE), a, CUBE) == b
        assert a * a.inverse() == 1
