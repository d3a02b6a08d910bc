from fractions import Fraction

import pytest

from nilskt import iwasawa
from nilskt.complex_structures import (ComplexStructure, RealLieAlgebra, betti_b1, echelon_basis,
                                       is_abelian, is_echelon, is_integrable,
                                       real_structure_constants, standard_forms)
from nilskt.forms import type_component
from nilskt.scalars import I
from nilskt.skt_family import SktParams, build_family


def test_notation_round_trip():
    text = "(0,0,0,0,13+42,14+23)"
    L = RealLieAlgebra.from_notation(text)
    assert L.d(4) == L.coframe.monomial("e1 e3") + L.coframe.monomial("e4 e2")
    assert L.notation() == RealLieAlgebra.from_notation(L.notation()).notation()


@pytest.mark.parametrize("text, b1", [
    ("(0,0,0,0,0,0)", 6),
    ("(0,0,0,0,13+42,14+23)", 4),
    ("(0,0,0,0,0,12)", 5),
])
def test_first_betti_number(text, b1):
    assert betti_b1(RealLieAlgebra.from_notation(text)) == b1


def test_bad_notation_is_rejected():
    with pytest.raises(ValueError):
        RealLieAlgebra.from_notation("(0,0,1x)")


def test_real_coframe_two_form_in_complex_terms():
    # e1 ^ e2 = (i/2) a1 ^ conj(a1) has no (2,0) part
    S = ComplexStructure(RealLieAlgebra.abelian(), standard_forms(3))
    f = S.to_complex(S.algebra.coframe.monomial("e1 e2"))
    assert f == S.coframe.monomial("a1 c1", I / 2)
    assert type_component(f, 2, 0).is_zero()


def test_family_is_integrable_and_abelian_iff_E_vanishes():
    assert is_integrable(build_family(SktParams(1, 2, 3, 4, 5)))
    assert is_abelian(build_family(SktParams(B=1)))
    assert not is_abelian(build_family(SktParams(E=1)))


def test_iwasawa_J0():
    S = iwasawa.make_J([[0, 0], [0, 0]])
    assert S.is_maximally_complex()
    assert is_integrable(S)
    assert not is_abelian(S)
    assert S.coframe.d(2) == S.coframe.monomial("a1 a2")


def test_integrability_needs_u_equal_minus_det():
    X = [[Fraction(1, 2), 1], [0, Fraction(1, 3)]]
    assert is_integrable(iwasawa.make_structure(X))
    u = -(X[0][0] * X[1][1] - X[0][1] * X[1][0]) + 1
    assert not is_integrable(iwasawa.make_structure(X, u=u))


def test_degenerate_iwasawa_structure():
    assert not iwasawa.make_structure([[0, 1], [1, 0]]).is_maximally_complex()
    assert iwasawa.make_structure([[2, 0], [0, 0]]).is_maximally_complex()


def test_real_structure_constants_of_C():
    L = real_structure_constants(build_family(SktParams(C=1)))
    assert L.d(4).is_zero()
    assert L.d(5) == L.coframe.monomial("e1 e2", -2)


def test_real_structure_constants_of_J0_is_iwasawa():
    from nilskt.skt_family import LABELS, classify_two_step
    L = real_structure_constants(build_family(SktParams(E=1)))
    assert classify_two_step(L) == LABELS["ii"]


def test_echelon_basis_resorts_swapped_forms():
    S = ComplexStructure.from_complex_coframe(build_family(SktParams(1, 0, 1, 0, 1)))
    assert is_echelon(S)
    swapped = S.with_forms([S.forms[2], S.forms[1], S.forms[0]])
    assert not is_echelon(swapped)
    assert is_echelon(echelon_basis(swapped))


def test_change_basis_preserves_jacobi_and_b1():
    L = RealLieAlgebra.from_notation("(0,0,0,0,13+42,14+23)")
    q = [[1, 1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 2, 0, 0, 0],
         [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 3], [0, 0, 0, 0, 0, 1]]
    M = L.change_basis(q)
    assert M.is_jacobi()
    assert betti_b1(M) == 4
