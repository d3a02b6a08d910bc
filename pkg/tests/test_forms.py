import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilskt.forms import (Coframe, apply_J, bidegree, box, conjugate, exterior_d, jacobi_check,
                          type_component, wedge)
from nilskt.scalars import I
from nilskt.skt_family import SktParams, build_family

from strategies import gaussians, params


def _forms(cf, degree):
    monos = st.lists(st.integers(0, cf.dim - 1), min_size=degree, max_size=degree, unique=True)
    terms = st.lists(st.tuples(monos, gaussians), min_size=1, max_size=4)
    return terms.map(lambda ts: sum((cf.monomial(tuple(sorted(m)), c) for m, c in ts), cf.zero()))


CF = Coframe.complex(3)


def test_wedge_sign_and_nilpotency():
    a1, a2 = CF.generator("a1"), CF.generator("a2")
    assert wedge(a1, a2) == -wedge(a2, a1)
    assert wedge(a1, a1).is_zero()


@given(_forms(CF, 1), _forms(CF, 2), _forms(CF, 2))
def test_wedge_associative_and_graded_commutative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    assert wedge(a, b) == wedge(b, a)  # 1-form with 2-form commutes
    assert wedge(b, c) == wedge(c, b)


@settings(max_examples=40, deadline=None)
@given(params, st.integers(1, 4), st.data())
def test_d_squared_vanishes(p, degree, data):
    cf = build_family(p)
    f = data.draw(_forms(cf, degree))
    assert exterior_d(exterior_d(f)).is_zero()


@settings(max_examples=40, deadline=None)
@given(params, st.integers(1, 3), st.integers(1, 3), st.data())
def test_leibniz(p, da, db, data):
    cf = build_family(p)
    a, b = data.draw(_forms(cf, da)), data.draw(_forms(cf, db))
    lhs = exterior_d(wedge(a, b))
    rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * (-1) ** da
    assert lhs == rhs


@given(_forms(CF, 2))
def test_J_squared_is_identity_on_two_forms(f):
    assert apply_J(apply_J(f)) == f


@given(_forms(CF, 3))
def test_conjugation_is_an_involution(f):
    assert conjugate(conjugate(f)) == f


def test_J_on_types():
    a1, c1 = CF.generator("a1"), CF.generator("c1")
    assert apply_J(a1) == a1 * I
    assert apply_J(c1) == c1 * (-I)
    assert apply_J(wedge(a1, c1)) == wedge(a1, c1)


def test_bidegree_and_type_components():
    f = CF.monomial("a1 a2") + CF.monomial("a1 c2") + CF.monomial("c1 c2")
    assert bidegree(CF, (0, 1)) == (2, 0)
    assert type_component(f, 1, 1) == CF.monomial("a1 c2")


def test_box_of_closed_form_is_zero():
    cf = build_family(SktParams(B=1))
    assert box(cf.monomial("a1 c1")).is_zero()


def test_jacobi_check_detects_bad_differentials():
    cf = Coframe.real(4)
    bad = cf.with_differentials([0, 0, cf.monomial("e1 e2"), cf.monomial("e3 e4")])
    assert not jacobi_check(bad)
    good = cf.with_differentials([0, 0, cf.monomial("e1 e2"), cf.monomial("e1 e3")])
    assert jacobi_check(good)


def test_mismatched_coframes_refuse_to_mix():
    with pytest.raises(ValueError):
        wedge(CF.generator(0), Coframe.real(6).generator(0))
