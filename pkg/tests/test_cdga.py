import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jumploci.cdga import CDGA, InvalidCDGA, betti, chevalley_eilenberg, free_model
from jumploci.liealg import abelian, aff1, catalog, heisenberg, metabelian, sl2


def test_ce_differentials():
    A = chevalley_eilenberg(aff1())  # basis u, x ; A^2 = span(u*^x*)
    assert A.degrees[1] == ("u*", "x*")
    assert A.d1_of([1, 0]) == [0]
    assert A.d1_of([0, 1]) == [-1]
    H = chevalley_eilenberg(heisenberg(1))  # x, y, z
    assert H.degrees[2] == ("x*^y*", "x*^z*", "y*^z*")
    assert H.d1_of([0, 0, 1]) == [-1, 0, 0]
    assert H.d1_of([1, 0, 0]) == [0, 0, 0] and H.d1_of([0, 1, 0]) == [0, 0, 0]
    Z = chevalley_eilenberg(abelian(3))
    assert all(x == 0 for M in Z.d for r in M for x in r)


def test_betti_numbers():
    assert betti(chevalley_eilenberg(aff1())) == [1, 1, 0]
    assert betti(chevalley_eilenberg(heisenberg(1))) == [1, 2, 2, 1]
    assert betti(chevalley_eilenberg(sl2())) == [1, 0, 0, 1]
    assert betti(chevalley_eilenberg(heisenberg(2))) == [1, 4, 5, 5, 4, 1]


@pytest.mark.parametrize("n", [1, 2, 5])
def test_free_model(n):
    A = free_model(n)
    assert A.dims == [1, n] and A.betti() == [1, n]
    with pytest.raises(ValueError):
        free_model(0)


def test_catalog_ce_algebras_are_cdgas():
    for name, h in catalog().items():
        A = chevalley_eilenberg(h)
        assert A.validate(check_assoc=h.dim <= 3), name
        assert A.euler_characteristic() == sum((-1) ** i * b for i, b in enumerate(A.betti()))


def test_graded_commutativity_completed():
    A = chevalley_eilenberg(aff1())
    assert A.basis_product(1, 0, 1, 1) == {0: 1}
    assert A.basis_product(1, 1, 1, 0) == {0: -1}
    assert A.product(1, {0: 1}, 1, {0: 1}) == {}


def test_json_round_trip():
    for A in (chevalley_eilenberg(heisenberg(1)), free_model(3), chevalley_eilenberg(aff1())):
        B = CDGA.from_json(json.loads(json.dumps(A.to_json())))
        assert B.dims == A.dims and B.d == A.d and B.mult == A.mult and B.betti() == A.betti()


def test_invalid_cdgas():
    with pytest.raises(InvalidCDGA, match=r"d\^2 d\^1"):  # d(a) = x, d(x) = y
        CDGA([["1"], ["a"], ["x"], ["y"]], {}, [None, [[1]], [[1]], None])
    with pytest.raises(InvalidCDGA, match="Leibniz"):  # ab = c with da = db = 0 but dc != 0
        CDGA([["1"], ["a", "b"], ["c", "e"], ["f"]], {(1, 0, 1, 1): {0: 1}},
             [None, None, [[1, 0]], None])
    with pytest.raises(InvalidCDGA):
        CDGA([["1", "extra"], ["a"]])
    with pytest.raises(InvalidCDGA):
        CDGA([["1"], ["a"], ["b"]], {}, [None, [[1, 2]], None])
    with pytest.raises(ValueError):
        free_model(2).d1_of([1])


def test_inconsistent_commutativity_rejected():
    with pytest.raises(InvalidCDGA):
        CDGA([["1"], ["a", "b"], ["ab"]], {(1, 0, 1, 1): {0: 1}, (1, 1, 1, 0): {0: 1}}, None)


vals = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@given(st.lists(st.tuples(vals, st.integers(1, 2)), min_size=1, max_size=2))
def test_metabelian_ce_is_valid(jd):
    A = chevalley_eilenberg(metabelian(jd))
    assert A.validate(check_assoc=False)
    assert A.betti()[0] == 1
    assert A.betti()[1] == metabelian(jd).h1_dim()
