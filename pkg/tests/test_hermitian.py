import random
from fractions import Fraction

import pytest

from nilskt import sampling
from nilskt.complex_structures import RealLieAlgebra
from nilskt.forms import box, exterior_d, wedge
from nilskt.hermitian import (KAHLER, NEITHER, SKT, HermitianForm, NonPositiveMetricError,
                              bismut_torsion, is_positive, lee_form, metric_tensor,
                              primitive_defect, skt_status)
from nilskt.scalars import I
from nilskt.skt_family import SktParams, build_family
from nilskt import iwasawa


def test_skew_hermitian_symmetry_is_enforced():
    with pytest.raises(ValueError):
        HermitianForm([[I, 1, 0], [1, I, 0], [0, 0, I]])


@pytest.mark.parametrize("x, positive", [
    ([[I / 2, 0, 0], [0, I / 2, 0], [0, 0, I / 2]], True),
    ([[I, 2, 0], [-2, I, 0], [0, 0, I]], False),
    ([[-I, 0, 0], [0, I, 0], [0, 0, I]], False),
])
def test_positivity(x, positive):
    assert is_positive(HermitianForm(x)) is positive


def test_standard_form_matrix():
    W = HermitianForm.standard()
    assert W.hermitian_matrix() == [[Fraction(1, 2), 0, 0], [0, Fraction(1, 2), 0], [0, 0, Fraction(1, 2)]]


def test_metric_of_standard_form_on_J0_is_the_identity():
    g = metric_tensor(HermitianForm.standard(), iwasawa.make_J([[0, 0], [0, 0]]))
    assert g == [[1 if i == j else 0 for j in range(6)] for i in range(6)]


@pytest.mark.parametrize("p, status", [
    (SktParams(B=1), SKT),
    (SktParams(A=1), NEITHER),
    (SktParams(), KAHLER),
])
def test_skt_status_examples(p, status):
    assert skt_status(HermitianForm.standard(), build_family(p)) == status


def test_skt_status_refuses_indefinite_forms():
    W = HermitianForm([[-I, 0, 0], [0, I, 0], [0, 0, I]])
    with pytest.raises(NonPositiveMetricError):
        skt_status(W, build_family(SktParams(B=1)))
    assert skt_status(W, build_family(SktParams(B=1)), allow_indefinite=True) in (SKT, NEITHER)


def test_lee_form_examples():
    W = HermitianForm.standard()
    assert lee_form(W, build_family(SktParams(B=1, C=1))).is_zero()
    assert not lee_form(W, build_family(SktParams(C=1))).is_zero()
    assert lee_form(W, build_family(SktParams())).is_zero()


def test_lee_form_solves_its_equation():
    rng = random.Random(3)
    for _ in range(10):
        p, W = sampling.params(rng), sampling.positive_form(rng)
        cf = build_family(p)
        omega = W.form(cf)
        theta = lee_form(W, cf)
        sq = wedge(omega, omega)
        assert exterior_d(sq) == wedge(theta, sq)


def test_bismut_torsion_is_closed_for_skt():
    cf = build_family(SktParams(B=1))
    W = HermitianForm.standard()
    T = bismut_torsion(W, cf)
    assert not T.is_zero()
    assert exterior_d(T).is_zero()


def test_d_of_torsion_is_minus_two_i_box():
    rng = random.Random(4)
    for _ in range(10):
        cf = build_family(sampling.params(rng))
        W = sampling.positive_form(rng)
        assert exterior_d(bismut_torsion(W, cf)) == box(W.form(cf)) * (-2 * I)


def test_primitive_part_of_d_omega():
    rng = random.Random(5)
    for _ in range(10):
        cf = build_family(sampling.skt_params(rng))
        W = sampling.positive_form(rng)
        xi = primitive_defect(W, cf)
        assert wedge(xi, W.form(cf)).is_zero()
    cf = build_family(SktParams(B=1, C=1))
    W = HermitianForm.standard()
    assert primitive_defect(W, cf) == exterior_d(W.form(cf))


def test_metric_dependence_on_h3_times_s3():
    from nilskt.verify import h3s3_structure
    S = h3s3_structure()
    assert skt_status(HermitianForm.standard(), S) == SKT
    x = [[I, 0, Fraction(1, 3)], [0, I, 0], [Fraction(-1, 3), 0, I]]
    assert skt_status(HermitianForm(x), S) == NEITHER


def test_metric_tensor_is_symmetric_and_positive():
    S = iwasawa.make_J([[Fraction(1, 3), 0], [0, Fraction(1, 2)]])
    g = metric_tensor(sampling.positive_form(random.Random(1)), S)
    assert all(g[i][j] == g[j][i] for i in range(6) for j in range(6))
    from nilskt.linalg import signature
    assert signature(g)[:2] == (6, 0)


def test_abelian_algebra_is_kahler_for_every_form():
    from nilskt.complex_structures import ComplexStructure, standard_forms
    S = ComplexStructure(RealLieAlgebra.abelian(), standard_forms(3))
    W = sampling.positive_form(random.Random(2))
    assert skt_status(W, S) == KAHLER
    assert lee_form(W, S).is_zero()
