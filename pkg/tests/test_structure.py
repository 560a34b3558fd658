import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shalika_cs.exactalg import LaurentPoly
from shalika_cs.structure import (
    PadicSampler,
    QuadExtScalar,
    comp1_closed_form,
    comp2_closed_form,
    excep_iso_check,
    excep_iso_matrix,
    lemfact1_check,
    padic_integral_comp1,
    padic_integral_comp2,
    s1_matrix,
    s2_matrix,
    shalika_element,
    smallest_nonresidue,
    stabilizer_check,
    stabilizer_sample,
    unitary_similitude,
    w_delta_matrix,
    word_matrix,
)
from shalika_cs.theta import ORBITS

from strategies import nonzero_fraction, small_fraction

D = F(3)
quad = st.builds(lambda a, b: QuadExtScalar(a, b, D), small_fraction, small_fraction)
nonzero_quad = quad.filter(lambda z: not z.is_zero())


def test_multiplication_law():
    x, y = QuadExtScalar(1, 2, D), QuadExtScalar(3, -1, D)
    assert x * y == QuadExtScalar(1 * 3 + 2 * -1 * 3, 1 * -1 + 2 * 3, D)
    assert x.conj() == QuadExtScalar(1, -2, D)
    assert x.norm() == 1 - 3 * 4


@given(quad, quad)
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()


@given(nonzero_quad)
def test_inverse(x):
    assert x * x.inverse() == 1


def test_lemfact1_examples():
    assert lemfact1_check(1, QuadExtScalar(1, 0, D))
    with pytest.raises(ValueError):
        lemfact1_check(1, QuadExtScalar(0, 0, D))


def test_lemfact1_symbolic():
    a, b, d = LaurentPoly.gens(("a", "b", "d"))
    assert lemfact1_check(1, QuadExtScalar(a, b, d))
    assert lemfact1_check(2, QuadExtScalar(a, b, d))


def test_lemfact2_excluded_locus():
    # y conj(y) + b_y = a^2 - d b^2 + b vanishes at a = 0, b = 1/d
    with pytest.raises(ValueError):
        lemfact1_check(2, QuadExtScalar(0, 1 / D, D))


@given(nonzero_quad)
def test_lemfact_numeric(y):
    assert lemfact1_check(1, y)
    if not (y * y.conj() + y.b).is_zero():
        assert lemfact1_check(2, y)


def test_generators_are_similitudes():
    for M in (s1_matrix(D), s2_matrix(D), w_delta_matrix(D)):
        assert unitary_similitude(M) == 1


def test_open_orbit_representative():
    M = word_matrix(("w_delta", "s2", "s1", "s2"), D)
    delta = QuadExtScalar(0, 1, D)
    expected = [[0, 0, 1, 0], [0, 0, delta, 1], [-1, 0, 0, 0], [-delta, -1, 0, 0]]
    for i in range(4):
        for j in range(4):
            assert M[i][j] == expected[i][j]


def test_excep_iso_identity():
    one = QuadExtScalar(1, 0, D)
    M = excep_iso_matrix(one, one, 1)
    assert all(M[i][j] == (1 if i == j else 0) for i in range(6) for j in range(6))


def test_excep_iso_delta():
    assert excep_iso_check(QuadExtScalar(0, 1, D), QuadExtScalar(1, 0, D), 1)


@given(nonzero_quad, nonzero_quad, nonzero_quad)
def test_excep_iso_random(a, b, x):
    assert excep_iso_check(a, b, x.norm())


def _mat_mul6(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(6)) for j in range(6)] for i in range(6)]


@given(nonzero_quad, nonzero_quad, nonzero_fraction, nonzero_quad, nonzero_quad, nonzero_fraction)
def test_excep_iso_homomorphism(a1, b1, n1, a2, b2, n2):
    lhs = excep_iso_matrix(a1 * a2, b1 * b2, n1 * n2)
    rhs = _mat_mul6(excep_iso_matrix(a1, b1, n1), excep_iso_matrix(a2, b2, n2))
    assert lhs == rhs


@pytest.mark.parametrize("orbit", ORBITS, ids=lambda o: f"orbit{o.index}")
def test_stabilizer_samples(orbit):
    rng = random.Random(orbit.index)
    for _ in range(5):
        assert stabilizer_check(orbit, stabilizer_sample(orbit, rng, D))


def test_open_orbit_rejects_unipotent():
    sample = shalika_element(((1, 0), (0, 1)), QuadExtScalar(0, 0, D), F(1), F(0), D)
    assert not stabilizer_check(ORBITS[7], sample)


def test_stabilizer_malformed():
    with pytest.raises(ValueError):
        stabilizer_check(ORBITS[0], ((QuadExtScalar(1, 0, D),),))


def test_sampler_basics():
    s = PadicSampler(5)
    assert s.d == smallest_nonresidue(5) == 2
    assert s.psi(7, 0) == 1
    assert abs(s.psi(1, 1) - 1) > 0.1
    with pytest.raises(ValueError):
        PadicSampler(4)


@pytest.mark.parametrize("p,z2", [(3, F(1)), (3, F(2)), (5, F(3, 2)), (5, F(1))])
def test_comp1(p, z2):
    res = padic_integral_comp1(PadicSampler(p, 3), z2)
    assert res["error"] < 1e-9
    assert res["closed_form"] == pytest.approx(comp1_closed_form(p, z2))


def test_comp1_first_shell_exact():
    res = padic_integral_comp1(PadicSampler(3, 3), F(1), Jmax=12)
    assert res["shells"][0] == pytest.approx(1 - 1 / 3, abs=1e-15)
    assert res["error"] < 1e-9


def test_comp1_rejects_divergent():
    with pytest.raises(ValueError):
        padic_integral_comp1(PadicSampler(3), F(0))


@pytest.mark.parametrize("p,z1,z0", [(3, F(1), F(1, 2)), (5, F(2), F(-1))])
def test_comp2(p, z1, z0):
    res = padic_integral_comp2(PadicSampler(p, 3), z1, z0)
    assert res["error"] < 1e-6
    assert res["strata"]["unit"] == pytest.approx(res["unit_closed_form"], abs=1e-6)
    assert res["closed_form"] == pytest.approx(comp2_closed_form(p, z1, z0))


def test_comp2_rejects_divergent():
    with pytest.raises(ValueError):
        padic_integral_comp2(PadicSampler(3), F(0), F(1))
