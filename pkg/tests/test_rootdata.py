from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shalika_cs.rootdata import (
    A3,
    C2,
    EPS1,
    EPS2,
    RHO,
    Coweight,
    eval_coweight,
    gl4_root_restrictions,
    identification,
    longest_element,
    modulus_eval,
    simple_reflection,
    symbols,
    weyl_act,
    weyl_group,
)

coweights = st.builds(Coweight, st.integers(-5, 5), st.integers(-5, 5))


def test_group_orders():
    assert len(weyl_group("C2")) == 8
    assert len(weyl_group("A3")) == 24


@pytest.mark.parametrize("system", ["C2", "A3"])
def test_length_equals_reduced_word_length(system):
    for w in weyl_group(system):
        assert w.length == len(w.word)


def test_c2_reduced_words():
    words = {"".join(w.word) for w in weyl_group("C2")}
    assert words == {"", "s1", "s2", "s1s2", "s2s1", "s1s2s1", "s2s1s2", "s2s1s2s1"}


@pytest.mark.parametrize("system", ["C2", "A3"])
def test_group_axioms(system):
    G = weyl_group(system)
    e = next(w for w in G if w.is_identity())
    for x in G:
        assert (x * x.inverse()).is_identity()
        assert x * e == x
    for x in G[:6]:
        for y in G[:6]:
            for z in G[:6]:
                assert (x * y) * z == x * (y * z)


def test_simple_reflections():
    s1, s2 = simple_reflection("s1"), simple_reflection("s2")
    assert weyl_act(s1, Coweight(1, 0)) == Coweight(0, 1)
    assert weyl_act(s2, EPS2) == -EPS2


def test_longest_element():
    w0 = longest_element()
    assert w0.length == 4
    assert weyl_act(w0, RHO) == -RHO


def test_eval_coweight_examples():
    u, v, _ = symbols()
    g = (u, v)
    assert eval_coweight(EPS1, g) == u
    assert eval_coweight(EPS1 + EPS2, g) == u * v
    assert eval_coweight(RHO, g) == u * u * v


@given(coweights, st.sampled_from(range(8)))
def test_eval_coweight_equivariance(mu, i):
    # e^{w mu}(g) = e^{mu}(w^-1 g w); the conjugated torus has coordinates e^{w eps_i}(g)
    w = weyl_group("C2")[i]
    g = (Fraction(2), Fraction(3, 5))
    conj = (eval_coweight(w.act(EPS1), g), eval_coweight(w.act(EPS2), g))
    assert eval_coweight(w.act(mu), g) == eval_coweight(mu, conj)


def test_modulus_examples():
    q = Fraction(7)
    assert modulus_eval("B_G", {}, q) == 1
    assert modulus_eval("B_G", {"a": 1}, q) == q ** -6
    n = 3
    # inverse modulus at diag(I, varpi^-n I) is q^{3n}; with |mu|^{-(s+1)} this is q^{n(2-s)}
    assert 1 / modulus_eval("P_H", {"mu": -n}, q) == q ** (3 * n)


def test_modulus_gn_exponent():
    # g_n = diag(varpi^n, varpi^n, 1, 1) in GU(2,2): delta^{1/2} = q^{-2n}
    q = Fraction(5)
    for n in range(4):
        assert modulus_eval("B_G", {"a": n, "b": n, "nu": n}, q) == q ** (-4 * n)


def test_unknown_modulus_tag():
    with pytest.raises(KeyError):
        modulus_eval("B_X", {})


def test_identification_is_bijection_long_to_short():
    ident = identification()
    assert set(ident.values()) == set(C2.positive)
    long_relative = {(2, 0, -1), (0, 2, -1)}
    assert {ident[r] for r in long_relative} == set(C2.short)


def test_gl4_restriction_two_to_one_on_short():
    res = gl4_root_restrictions()
    assert len(res) == len(A3.positive) == 6
    for r in C2.short:
        assert res.count(r) == 2
    for r in C2.long:
        assert res.count(r) == 1
