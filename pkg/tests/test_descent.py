from fractions import Fraction
from math import comb

import pytest
from gmpy2 import mpq

from germtools.descent import (BranchPoint, basis_decompose, branch_residual, branch_taylor,
                               inverse_taylor, specialize_family, vandermonde_verify)
from germtools.errors import NotARoot, OnDiscriminantLocus, PoleAtPoint
from germtools.field import QQ, FieldElement, NumberField, Unsupported
from germtools.series import PolyRing, Series, parse_expr

K2 = NumberField([-2, 0, 1])
KX = PolyRing(["x"], K2)


def test_decompose_and_verify():
    f = parse_expr("v + (v + 1)*x + (v + 2)*x^2 + 3*x^3", KX).truncate(4)
    res = basis_decompose(f)
    Q = res.components[0].ring
    assert res.components[0] == parse_expr("x + 2*x^2 + 3*x^3", Q).truncate(4)
    assert res.components[1] == parse_expr("1 + x + x^2", Q).truncate(4)
    assert res.reassemble() == f
    assert vandermonde_verify(res) is True


def test_corrupted_component_rejected():
    res = basis_decompose(parse_expr("v + x", KX))
    Q = res.components[0].ring
    bad = type(res)((res.components[0] + Q.gen("x"), res.components[1]), res.field, res.source)
    assert vandermonde_verify(bad) is False


def test_cubic_field_unsupported():
    K3 = NumberField([-2, 0, 0, 1])
    res = basis_decompose(parse_expr("v + x", PolyRing(["x"], K3)))
    assert isinstance(vandermonde_verify(res), Unsupported)
    assert res.reassemble() == res.source


def binom_half(k):
    out = Fraction(1)
    for i in range(k):
        out *= (Fraction(1, 2) - i) / (i + 1)
    return out


def test_sqrt_branch_matches_binomial_series():
    P = parse_expr("v^2 - t", PolyRing(["t", "v"]))
    bp = BranchPoint(P, "v", {"t": mpq(1)}, FieldElement(QQ, mpq(1)), 10)
    w = branch_taylor(bp)
    for k in range(11):
        assert w.terms.get((k,), mpq(0)) == mpq(binom_half(k))
    assert branch_residual(bp, w).is_zero()


def test_branch_over_quadratic_field():
    P = parse_expr("w^2 - t", PolyRing(["t", "w"]))
    bp = BranchPoint(P, "w", {"t": mpq(2)}, FieldElement(K2, K2.gen().value), 6)
    w = branch_taylor(bp)
    assert branch_residual(bp, w).is_zero()
    assert (w * w).truncate(6) == parse_expr("2 + s", w.ring).truncate(6)


def test_branch_errors():
    P = parse_expr("v^2 - t", PolyRing(["t", "v"]))
    with pytest.raises(OnDiscriminantLocus):
        branch_taylor(BranchPoint(P, "v", {"t": mpq(0)}, FieldElement(QQ, mpq(0)), 4))
    with pytest.raises(NotARoot):
        branch_taylor(BranchPoint(P, "v", {"t": mpq(1)}, FieldElement(QQ, mpq(2)), 4))


def test_inverse_taylor():
    T = PolyRing(["t"])
    inv = inverse_taylor(parse_expr("t", T), {"t": mpq(1)}, 5)
    assert inv == Series(inv.ring, {(k,): mpq((-1) ** k) for k in range(6)}, 5)
    with pytest.raises(PoleAtPoint):
        inverse_taylor(parse_expr("t - 1", T), {"t": mpq(1)}, 3)


def test_specialize_family():
    R = PolyRing(["t", "x"])
    y = parse_expr("1 + t*x + t^2*x^2", R)
    out = specialize_family(y, {"t": mpq(3)})
    assert out == parse_expr("1 + 3*x + 9*x^2", out.ring)
