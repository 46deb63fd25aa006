from math import factorial

import pytest

from hkbordism.char_calculus import chern_ring
from hkbordism.graded_algebra import GradedRing
from hkbordism.torus_models import (
    TorusModel,
    c1_class,
    c1_power_integral,
    orientation,
    p1_class,
    p1_of_induced_su2,
    p1_power_integral,
    q_bundle_integral,
    q_bundle_integral_closed_form,
    tangent_pontryagin_class,
)


def test_c1_class():
    t1 = TorusModel(1)
    assert c1_class(t1) == t1.ring.parse("e1*f1")
    t3 = TorusModel(3)
    assert c1_class(t3) == t3.ring.parse("e1*f1 + e2*f2 + e3*f3")
    assert c1_class(TorusModel(0)) == 0
    with pytest.raises(ValueError):
        c1_class(TorusModel(2, "framed"))


def test_orientation_is_interleaved():
    ring = TorusModel(2).ring
    assert ring.format_monomial(orientation(2)) == "e1*f1*e2*f2"
    assert orientation(0).is_unit()


@pytest.mark.parametrize("n, y, value", [(3, 3, 6), (2, 1, 0), (8, 8, 40320), (0, 0, 1), (0, 1, 0)])
def test_c1_power_integral_examples(n, y, value):
    assert c1_power_integral(n, y) == value


def test_c1_power_integral_invariants():
    for n in range(9):
        assert c1_power_integral(n, n) == factorial(n)
        for y in range(n + 3):
            if y != n:
                assert c1_power_integral(n, y) == 0


def test_c1_square_has_no_repeated_indices():
    for n in range(1, 6):
        sq = c1_class(TorusModel(n)) ** 2
        for m, coef in sq.items():
            assert all(e <= 1 for e in m.exponents)
            assert coef == 2


def test_p1_of_induced_su2():
    t = TorusModel(2)
    assert p1_of_induced_su2(t.ring.zero().homogeneous_part(2)) == 0
    assert p1_of_induced_su2(c1_class(t)) == t.ring.term(-4, ("e1", "f1", "e2", "f2"))
    C = chern_ring(1)
    assert p1_of_induced_su2(C.gen("c1")) == C.parse("-2*c1^2")
    with pytest.raises(ValueError):
        p1_of_induced_su2(C.parse("c1 + 1"))


def test_su2_from_splitting():
    # independent path: H restricted to U(1) is O(1) + O(-1); p1 = c2 of its complexification
    C = chern_ring(1)
    c = C.gen("c1")
    total = C.one()
    for sign in (1, -1, -1, 1):
        total = total * (C.one() + c.scale(sign))
    assert total.homogeneous_part(4) == p1_of_induced_su2(c)


@pytest.mark.parametrize("n, value", [(0, 1), (1, -4), (2, 96)])
def test_q_bundle_examples(n, value):
    assert q_bundle_integral(n) == value


def test_q_bundle_two_paths():
    for n in range(5):
        expanded = q_bundle_integral(n)
        assert expanded == q_bundle_integral_closed_form(n) == (-2) ** n * factorial(2 * n)
        assert expanded != 0


def test_p1_power_integral_vanishes_off_degree():
    for y in range(4):
        for a in range(y + 2):
            if a != y:
                assert p1_power_integral(y, a) == 0


def test_h_torus_needs_dimension_divisible_by_four():
    with pytest.raises(ValueError):
        TorusModel(3, "h")
    t = TorusModel(4, "h")
    assert p1_class(t).is_homogeneous(4)
    with pytest.raises(ValueError):
        p1_class(TorusModel(2, "c"))


def test_framing_neutrality():
    t = TorusModel(3, "framed")
    assert tangent_pontryagin_class(t, 0) == 1
    for k in range(1, 4):
        assert tangent_pontryagin_class(t, k) == 0
        assert t.integrate(tangent_pontryagin_class(t, k)) == 0


def test_fubini_on_torus_product():
    # T^4 = T^2 x T^2; c1(L_4) = c1' + c1'' splits, int (c1' + c1'')^2 = 2 int c1' int c1''
    assert c1_power_integral(2, 2) == 2 * c1_power_integral(1, 1) * c1_power_integral(1, 1)
    assert c1_power_integral(5, 5) == 10 * c1_power_integral(2, 2) * c1_power_integral(3, 3)
