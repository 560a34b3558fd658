from fractions import Fraction as F
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shalika_cs.exactalg import TruncatedSeries
from shalika_cs.lfactor import (
    ORDER_ENV,
    default_order,
    euler_factor,
    euler_series,
    lfactor_series,
    random_regular_points,
    telescoping_check,
    verify_identity,
    zeta_series,
)
from shalika_cs.rootdata import symbols
from shalika_cs.satake import CharacterTriple, gsp4_from_uv, symbolic_gsp4
from shalika_cs.shalika import CSContext

from strategies import small_fraction

u, v, q = symbols()
TRIVIAL = CharacterTriple("GSp4", (F(1), F(1), F(1)))


def test_trivial_split_factor():
    ef = euler_factor(TRIVIAL, "trivial")
    assert ef.inverse == tuple(F((-1) ** k * comb(5, k)) for k in range(6))
    assert ef.series(4).coeffs == tuple(F(comb(k + 4, 4)) for k in range(5))


def test_trivial_inert_factor():
    ef = euler_factor(TRIVIAL, "quadratic")
    assert ef.inverse == tuple(F(comb(5, k)) for k in range(6))


def test_symbolic_weights():
    ef = euler_factor(symbolic_gsp4(), "trivial")
    expected = [u * v, u / v, 1, v / u, 1 / (u * v)]
    assert len(ef.weights) == 5
    for w in expected:
        assert any(w == x for x in ef.weights)
    assert ef.inverse[0] == 1


def test_lfactor_low_coefficients():
    s = lfactor_series(symbolic_gsp4(), "trivial", None, 3)
    assert s[0] == 1
    assert s[1] == u * v + u / v + 1 + v / u + 1 / (u * v)
    inert = lfactor_series(symbolic_gsp4(), "quadratic", None, 3)
    assert inert[1] == -s[1]


@pytest.mark.parametrize("twist", ["trivial", "quadratic"])
def test_two_paths_order8(twist):
    chi = symbolic_gsp4()
    assert euler_series(chi, twist, 8) == lfactor_series(chi, twist, None, 8)
    assert euler_factor(chi, twist).series(8) == euler_series(chi, twist, 8)


def test_zeta_constant_term():
    for case in ("split", "inert"):
        assert zeta_series(CSContext.build(case), 2).series[0] == 1


@pytest.mark.parametrize("case", ["split", "inert"])
def test_identity_order4_symbolic(case):
    r = verify_identity(case, order=4)
    assert r.equal
    assert r.to_json() == {"case": case, "order": 4, "equal": True}


def test_identity_numeric_point():
    r = verify_identity("split", gsp4_from_uv(F(6), F(2)), F(5), 10)
    assert r.equal
    r = verify_identity("inert", CharacterTriple("GSp4", (F(4), F(1, 9), F(3, 2))), F(3), 10)
    assert r.equal


@pytest.mark.parametrize(
    "case,signs,where",
    [("split", (1, -1), 0), ("split", (-1, 1), 1), ("inert", (-1, 1), 0), ("inert", (1, -1), 1)],
)
def test_mutation_mismatch_location(case, signs, where):
    r = verify_identity(case, order=4, short_signs=signs)
    assert not r.equal
    assert r.first_mismatch == where
    js = r.to_json()
    assert js["first_mismatch"] == where and js["lhs"] != js["rhs"]


@given(st.lists(small_fraction, min_size=11, max_size=11), st.sampled_from([3, 5, 7]))
def test_telescoping(a, qq):
    assert telescoping_check(a, 10, qq)


def test_random_points_deterministic_and_regular():
    pts = random_regular_points(10, seed=4)
    assert pts == random_regular_points(10, seed=4)
    for uu, vv, qq in pts:
        CSContext.build("split", gsp4_from_uv(uu, vv), qq)


def test_default_order(monkeypatch):
    monkeypatch.delenv(ORDER_ENV, raising=False)
    assert default_order("numeric") == 16
    assert default_order("symbolic") == 8
    monkeypatch.setenv(ORDER_ENV, "5")
    assert default_order("symbolic") == 5


def test_series_type():
    assert isinstance(lfactor_series(TRIVIAL, "trivial", None, 2), TruncatedSeries)
