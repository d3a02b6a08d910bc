import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from nilskt import sampling
from nilskt.complex_structures import RealLieAlgebra, is_integrable
from nilskt.forms import apply_J, box, conjugate, jacobi_check, type_component, wedge
from nilskt.hermitian import SKT, skt_status
from nilskt.scalars import I, GaussianRational
from nilskt.skt_family import (LABELS, SKT_LABELS, AbelianAlgebraError, SktParams, adjugate,
                               b_matrix, balanced_residual, build_family, classify_from_gram,
                               classify_real, classify_two_step, gram_matrix, matrix_form,
                               skt2_residual, triple_identities, volume4)

from strategies import matrices2, params

SQRT2 = math.sqrt(2)


@settings(max_examples=30, deadline=None)
@given(params)
def test_every_tuple_is_a_lie_algebra_with_integrable_J(p):
    cf = build_family(p)
    assert jacobi_check(cf)
    assert is_integrable(cf)


@given(params)
def test_two_zero_part_and_J_flips_E(p):
    cf = build_family(p)
    da3 = cf.d(2)
    assert type_component(da3, 2, 0) == cf.monomial("a1 a2", p.E)
    flipped = build_family(SktParams(p.A, p.B, p.C, p.D, -p.E))
    assert apply_J(da3) == flipped.d(2)


def test_E_one_is_the_iwasawa_J0_coframe():
    cf = build_family(SktParams(E=1))
    assert cf.d(2) == cf.monomial("a1 a2")


@pytest.mark.parametrize("p, value", [
    (SktParams(0, 1, 0, 0, 0), 0),
    (SktParams(0, 0, 0, 0, 1), 1),
    (SktParams(0, 1, -1, 0, 2), 2),
])
def test_skt2_residual_exact(p, value):
    assert skt2_residual(p) == value


def test_skt2_residual_with_irrational_E():
    assert abs(skt2_residual(SktParams(0, 1, -1, 0, SQRT2))) < 1e-12


@given(matrices2, matrices2)
def test_wedge_trace_identities(M, N):
    cf = build_family(SktParams())
    tr = sum(a * b for a, b in zip((M[0][0], M[0][1], M[1][0], M[1][1]),
                                   (adjugate(N)[0][0], adjugate(N)[1][0], adjugate(N)[0][1], adjugate(N)[1][1])))
    assert wedge(matrix_form(M, cf), matrix_form(N, cf)) == volume4(cf) * tr
    Mbar = [[v.conjugate() for v in row] for row in M]
    tr2 = sum(M[i][k] * Mbar[k][i] for i in range(2) for k in range(2))
    assert wedge(matrix_form(M, cf), conjugate(matrix_form(M, cf))) == volume4(cf) * tr2


def test_conjugate_matrix_form_is_conjugate_adjugate():
    cf = build_family(SktParams())
    assert conjugate(matrix_form([[1, 0], [0, 0]], cf)) == matrix_form([[0, 0], [0, 1]], cf)


@pytest.mark.parametrize("p, triple", [
    (SktParams(A=1), (1, 1, 0)),
    (SktParams(E=1), (-1, 1, 0)),
])
def test_triple_identities(p, triple):
    assert tuple(triple_identities(p)) == triple


@given(params)
def test_triple_identities_closed_form(p):
    Y = p.Y
    tyy = sum(Y[i][k] * Y[k][i].conjugate() for i in range(2) for k in range(2))
    e2 = p.E.abs2()
    det = Y[0][0] * Y[1][1] - Y[0][1] * Y[1][0]
    assert tuple(triple_identities(p)) == (tyy - e2, tyy + e2, 2 * det)


def test_box_of_a3c3():
    cf = build_family(SktParams(A=1))
    assert box(cf.monomial("a3 c3")) == cf.monomial("a1 c1 a2 c2")
    cf = build_family(SktParams(B=1))
    assert box(cf.monomial("a3 c3")).is_zero()


@pytest.mark.parametrize("p, b", [
    (SktParams(0, 1, -1, 0, SQRT2), [[-1, 0], [0, -3]]),
    (SktParams(0, 1, complex(-1, 2), 0, SQRT2), [[-1, -2], [-2, -3]]),
    (SktParams(0, 1, 0, 0, 0), [[0, 0], [0, 0]]),
])
def test_b_matrix(p, b):
    got = b_matrix(p)
    assert all(abs(got[i][j] - b[i][j]) < 1e-12 for i in range(2) for j in range(2))


def test_b_matrix_equals_gram_matrix_on_skt_tuples():
    rng = random.Random(11)
    for _ in range(20):
        p = sampling.skt_params(rng)
        assert b_matrix(p) == gram_matrix(p)


@pytest.mark.parametrize("p, label", [
    (SktParams(0, 1, 0, 0, 0), LABELS["v"]),
    (SktParams(0, 0, 0, 0, 1), LABELS["ii"]),
    (SktParams(0, 1, complex(-1, 2), 0, SQRT2), LABELS["iv"]),
    (SktParams(0, 1, complex(-1, math.sqrt(3)), 0, SQRT2), LABELS["iii"]),
    (SktParams(0, 1, -1, 0, SQRT2), LABELS["ii"]),
    (SktParams(C=1), LABELS["v"]),
])
def test_classify_real_examples(p, label):
    assert classify_real(p) == label
    assert classify_from_gram(p) == label


@pytest.mark.parametrize("key", sorted(LABELS))
def test_classifier_recognizes_each_reference_algebra(key):
    assert classify_two_step(RealLieAlgebra.from_notation(LABELS[key])) == LABELS[key]


def test_abelian_tuple_is_rejected():
    with pytest.raises(AbelianAlgebraError, match="abelian"):
        classify_real(SktParams())


def test_skt_tuples_avoid_i_and_vi():
    rng = random.Random(12)
    for _ in range(50):
        assert classify_real(sampling.skt_params(rng)) in SKT_LABELS


def test_skt_equivalence_on_random_metrics():
    rng = random.Random(13)
    for _ in range(5):
        p = sampling.skt_params(rng)
        q = sampling.non_skt_params(rng)
        for _ in range(4):
            W = sampling.positive_form(rng)
            assert skt_status(W, build_family(p)) == SKT
            assert skt_status(W, build_family(q)) != SKT


@pytest.mark.parametrize("p, args, value", [
    (SktParams(B=I, C=I), (1, 1, 0), 0),
    (SktParams(C=1), (1, 1, 0), -I),
])
def test_balanced_residual(p, args, value):
    x, y, z = args
    assert balanced_residual(p, x, y, z if z else I * 0) == value


def test_balanced_residual_requires_positivity():
    with pytest.raises(ValueError):
        balanced_residual(SktParams(B=1), 1, 1, I * 2)


def test_no_balanced_metric_for_skt_tuple():
    # SKT (residual 0) with |A|^2 + |D|^2 + 2 Re(conj(B) C) = -4 < 0
    p = SktParams(A=0, B=1, C=-2, D=0, E=2)
    assert skt2_residual(p) == 0
    xs = [Fraction(k, 3) for k in range(1, 11)]
    zs = [GaussianRational(Fraction(a, 4), Fraction(b, 4)) for a, b in
          ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, 1), (2, -1), (-2, -2), (1, -2))]
    checked = 0
    for x in xs:
        for y in xs:
            for z in zs:
                if x * y > z.abs2():
                    assert balanced_residual(p, x, y, z) != 0
                    checked += 1
    assert checked > 900
