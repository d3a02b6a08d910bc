import random
from fractions import Fraction

import pytest

from nilskt.complex_structures import RealLieAlgebra
from nilskt.curvature import (DegenerateMetricError, admits_symplectic_form, closed_two_forms,
                              covariant_J, holomorphic_volume_closed, iwasawa_pseudo_kahler,
                              koszul, metric_from_form, metricity_defect, pseudo_kahler_check,
                              ricci, ricci_form, riemann, riemann_up, signature, torsion_defect)
from nilskt.forms import exterior_d
from nilskt.complex_structures import is_abelian, is_integrable

EXPECTED_METRIC = [
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, -1],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0],
    [0, -1, 0, 0, 0, 0],
]
ID6 = [[1 if i == j else 0 for j in range(6)] for i in range(6)]


def _zero(t):
    if isinstance(t, list):
        return all(_zero(x) for x in t)
    return t == 0


@pytest.fixture(scope="module")
def example():
    L, S, omega = iwasawa_pseudo_kahler()
    h = metric_from_form(omega, S.J_vectors)
    return L, S, omega, h


def test_example_metric_and_signature(example):
    L, S, omega, h = example
    assert h == EXPECTED_METRIC
    assert signature(h) == (4, 2)
    assert exterior_d(omega).is_zero()
    assert is_integrable(S) and is_abelian(S)


def test_example_is_ricci_flat_but_not_flat(example):
    L, S, omega, h = example
    rup = riemann_up(L, h)
    assert _zero(ricci(L, h, rup))
    R = riemann(L, h, rup)
    assert not _zero(R)
    assert abs(R[0][1][0][1]) == 2
    assert rup[1][0][1][4] == -2  # e_5 component of R(e2, e1) e2


def test_example_ricci_form_and_parallel_volume(example):
    L, S, omega, h = example
    assert _zero(ricci_form(L, h, S.J_vectors))
    assert _zero(covariant_J(L, h, S.J_vectors))
    assert holomorphic_volume_closed(S)


def test_example_passes_pseudo_kahler_check(example):
    L, S, omega, h = example
    report = pseudo_kahler_check(L, S, omega)
    assert report.ok and report.metric == EXPECTED_METRIC


def test_pseudo_kahler_check_reports_reasons(example):
    L, S, omega, h = example
    bad = omega + L.coframe.monomial("e1 e5")
    report = pseudo_kahler_check(L, S, bad)
    assert not report.ok and "not-closed" in report.reasons or "not-J-invariant" in report.reasons


@pytest.mark.parametrize("h, sig", [(ID6, (6, 0)), ([[-v for v in r] for r in ID6], (0, 6))])
def test_signature(h, sig):
    assert signature(h) == sig


def test_abelian_algebra_is_flat():
    L = RealLieAlgebra.abelian()
    assert _zero(koszul(L, ID6))
    assert _zero(riemann(L, ID6))


def test_heisenberg_is_not_ricci_flat():
    L = RealLieAlgebra.from_notation("(0,0,0,0,0,12)")
    ric = ricci(L, ID6)
    assert ric[0][0] == Fraction(-1, 2) and ric[5][5] == Fraction(1, 2)


def test_levi_civita_is_metric_and_torsion_free():
    L = RealLieAlgebra.from_notation("(0,0,0,0,13+42,14+23)")
    rng = random.Random(31)
    A = [[Fraction(rng.randint(-2, 2)) for _ in range(6)] for _ in range(6)]
    h = [[sum(A[k][i] * A[k][j] for k in range(6)) + (3 if i == j else 0) for j in range(6)] for i in range(6)]
    gamma = koszul(L, h)
    assert _zero(metricity_defect(h, gamma))
    assert _zero(torsion_defect(L, gamma))


def test_riemann_symmetries_on_random_metric():
    L = RealLieAlgebra.from_notation("(0,0,0,0,13+42,14+23)")
    h = [[(2 if i == j else 0) + (1 if abs(i - j) == 1 else 0) for j in range(6)] for i in range(6)]
    R = riemann(L, h)
    for i in range(6):
        for j in range(6):
            for k in range(6):
                for l in range(6):
                    assert R[i][j][k][l] == -R[j][i][k][l]
                    assert R[i][j][k][l] == -R[i][j][l][k]
                    assert R[i][j][k][l] == R[k][l][i][j]
                    assert R[i][j][k][l] + R[j][k][i][l] + R[k][i][j][l] == 0


def test_degenerate_metric_is_rejected():
    L = RealLieAlgebra.abelian()
    h = [row[:] for row in ID6]
    h[5][5] = 0
    with pytest.raises(DegenerateMetricError):
        koszul(L, h)


def test_no_symplectic_form_on_12_plus_34():
    L = RealLieAlgebra.from_notation("(0,0,0,0,0,12+34)")
    assert len(closed_two_forms(L)) == 10
    assert not admits_symplectic_form(L)
    assert admits_symplectic_form(RealLieAlgebra.from_notation("(0,0,0,0,13+42,14+23)"))
