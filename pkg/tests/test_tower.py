import pytest
from gmpy2 import mpq

from germtools.errors import TruncationBudgetExhausted
from germtools.series import Series, parse_expr
from germtools.tower import InputGerm, Tower, build_tower, verify_tower
from germtools.weierstrass import WeierstrassPoly


def germ(kind, vars_, defining, trunc=12):
    return InputGerm.from_json({"kind": kind, "vars": vars_, "defining": defining,
                                "trunc": trunc})


def P(t, T):
    return parse_expr(t, T.ring)


def test_cusp_tower():
    T = build_tower(germ("set", ["x1", "x2"], ["x2^2 - x1^3"]))
    top, s1 = T.stage(2), T.stage(1)
    assert top.poly.to_series() == P("x2^2 - x1^3", T)
    assert s1.j == 1 and s1.p == 3 and s1.unit == P("4", T)
    assert s1.poly.to_series() == P("x2^0*x1^3", T)
    assert T.terminal["level"] == 0 and T.terminal["j"] == 3
    assert T.terminal["delta"] == P("3", T)
    assert verify_tower(T)["ok"]


def test_smooth_terminates_at_unit():
    T = build_tower(germ("set", ["x1", "x2"], ["x2 - x1^2"]))
    assert [s.p for s in T.stages] == [1, 0]


def test_surface_three_levels():
    T = build_tower(germ("set", ["x1", "x2", "x3"], ["x3^2 - x1*x2^2"], trunc=16))
    assert [s.i for s in T.stages] == [3, 2, 1]
    assert verify_tower(T)["ok"]


def test_function_pair():
    T = build_tower(germ("function", ["x1", "x2"], ["x2", "-x2"]))
    assert T.stage(1).q == 2 and T.stage(1).p == 0
    assert verify_tower(T)["ok"]


def test_json_roundtrip():
    T = build_tower(germ("function", ["x1", "x2"], ["x2^2"]))
    again = Tower.from_json(T.to_json())
    assert again.to_json() == T.to_json()


def test_tampered_tower_is_caught():
    T = build_tower(germ("set", ["x1", "x2"], ["x2^2 - x1^3"]))
    obj = T.to_json()
    # perturb a_2 of the top stage
    obj["stages"][0]["coeffs"][1]["terms"][0]["c"] = "-2"
    report = verify_tower(Tower.from_json(obj))
    assert not report["ok"]
    bad = [s for s in report["stages"] if not s["ok"]]
    assert bad[0]["i"] == 2


def test_budget_exhaustion_keeps_partial_tower():
    with pytest.raises(TruncationBudgetExhausted) as info:
        build_tower(germ("set", ["x1", "x2"], ["x2^5 - x1^7"], trunc=6))
    assert info.value.level is not None
