from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jumploci.exactnum.linalg import commutator, eigen_factors, mat_scale, to_matrix
from jumploci.poly import MultiPoly
from jumploci.sl2 import (NotARepresentation, Sl2Rep, casimir_value, det_theta, eigen_squares,
                          eigenvalues, parse_rep, sl2_irrep, sl2_rep, weights)

a, b, c = MultiPoly.gens(("a", "b", "c"))


def test_trivial_and_defining():
    t1 = sl2_irrep(1)
    assert t1.H == ((0,),) and t1.Xp == ((0,),)
    t2 = sl2_irrep(2)
    assert [list(r) for r in t2.H] == [[1, 0], [0, -1]]
    assert [list(r) for r in t2.Xp] == [[0, 1], [0, 0]]
    assert [list(r) for r in t2.Xm] == [[0, 0], [1, 0]]


@pytest.mark.parametrize("m", range(1, 9))
def test_bracket_relations(m):
    H, Xp, Xm = (to_matrix(X) for X in sl2_irrep(m).matrices())
    assert commutator(H, Xp) == mat_scale(Xp, 2)
    assert commutator(H, Xm) == mat_scale(Xm, -2)
    assert commutator(Xp, Xm) == H


def test_validate_rejects_broken_rep():
    bad = Sl2Rep((2,), ((1, 0), (0, -1)), ((0, 2), (0, 0)), ((0, 0), (1, 0)))
    with pytest.raises(NotARepresentation):
        bad.validate()


def test_det_theta_examples():
    assert det_theta(sl2_irrep(2)) == -a * a - b * c
    assert det_theta(sl2_irrep(3)).is_zero()
    assert det_theta(sl2_rep((2, 2))) == (a * a + b * c) ** 2


def test_eigen_squares_examples():
    assert sorted(eigen_squares(sl2_irrep(2), [1, 0, 0])) == [1, 1]
    assert sorted(eigen_squares(sl2_irrep(3), [1, 0, 0])) == [0, 4, 4]
    assert eigen_squares(sl2_irrep(2), [0, 1, 0]) == [0, 0]


def test_parse_rep():
    assert parse_rep("2,2").dims == (2, 2)
    assert parse_rep("3").dim == 3
    with pytest.raises(ValueError):
        parse_rep("0")


coord = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@given(st.integers(1, 5), coord, coord, coord)
def test_eigenvalues_are_weight_multiples(m, x, y, z):
    theta = sl2_irrep(m)
    g = [x, y, z]
    lams = eigenvalues(theta, g)
    assert len(lams) == m
    mu2 = casimir_value(g)
    assert sorted(l * l for l in lams) == sorted(F(w * w) * mu2 for w in weights(theta))
    # every computed eigenvalue is a root of the characteristic polynomial
    cp = eigen_factors(theta(g)).expand()
    assert all(cp(l) == 0 for l in lams)
