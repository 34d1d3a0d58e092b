from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci.cdga import chevalley_eilenberg, free_model
from jumploci.conn import GOneForm, segre, zero_form
from jumploci.exactnum.linalg import inverse, matmul, rank
from jumploci.liealg import aff1, catalog, heisenberg, metabelian, sl2
from jumploci.reson import (NotAModule, NotFlat, adjoint_module, eigenvalue_criterion,
                            germ_report, lie_cohomology, pi_membership, rank1_resonance_on_line,
                            trivial_resonance, twisted_dims)
from jumploci.sl2 import sl2_irrep, sl2_rep, weights

T2, T3 = sl2_irrep(2), sl2_irrep(3)
AFF = chevalley_eilenberg(aff1())
HEIS = chevalley_eilenberg(heisenberg(1))


def weight_line_dims(A, eta, lam):
    """dim H^p(A, d + lam*eta^) by plain rank counts (no coupling with a representation)."""
    D = []
    for p in range(A.top + 1):
        if p == A.top:
            D.append([])
            continue
        L = A.left_mult_matrix(eta, p)
        D.append([[a + lam * b for a, b in zip(r1, r2)] for r1, r2 in zip(A.d[p], L)])
    rk = [rank(M) if M and M[0] else 0 for M in D]
    return [A.dims[p] - rk[p] - (rk[p - 1] if p else 0) for p in range(A.top + 1)]


def test_twisted_dims_examples():
    assert twisted_dims(AFF, T2, zero_form(2, 3)) == [2 * b for b in AFF.betti()]
    assert twisted_dims(AFF, T2, segre([1, 0], [1, 0, 0])) == [0, 1, 1]
    assert twisted_dims(AFF, T2, segre([1, 0], [F(1, 2), 0, 0])) == [0, 0, 0]


def test_twisted_dims_rejects_non_flat():
    with pytest.raises(NotFlat):
        twisted_dims(AFF, T2, GOneForm([[0, 0, 0], [1, 0, 0]]))


vals = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@given(st.sampled_from(["aff1", "heis3", "borel", "abelian2"]), st.integers(1, 4), vals, vals,
       st.sampled_from([F(1), F(1, 2), F(2), F(-3)]),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=60)
def test_twisted_dims_against_weight_lines(name, m, s1, s2, x, p):
    """For g conjugate to x*H, the twisted complex splits into weight lines."""
    P = [[p[0], p[1]], [p[2], p[3]]]
    if P[0][0] * P[1][1] - P[0][1] * P[1][0] == 0:
        return
    M = matmul(matmul(P, [[x, 0], [0, -x]]), inverse(P))
    g = [M[0][0], M[0][1], M[1][0]]
    A = chevalley_eilenberg(catalog(name))
    H1 = A.h1_basis()
    eta = [s1 * H1[0][i] + (s2 * H1[1][i] if len(H1) > 1 else 0) for i in range(A.dims[1])]
    theta = sl2_irrep(m)
    expected = [0] * (A.top + 1)
    for w in weights(theta):
        for i, d in enumerate(weight_line_dims(A, eta, w * x)):
            expected[i] += d
    assert twisted_dims(A, theta, segre(eta, g)) == expected


def test_lie_cohomology_examples():
    assert lie_cohomology(sl2(), adjoint_module(sl2()), 1) == 0
    assert lie_cohomology(sl2(), [T2.H, T2.Xp, T2.Xm], 1) == 0
    assert lie_cohomology(aff1(), [[[1]], [[0]]], 1) == 1
    assert lie_cohomology(heisenberg(1), [[[0]]] * 3) == HEIS.betti()
    with pytest.raises(NotAModule):
        lie_cohomology(sl2(), [[[1]], [[1]], [[0]]])


def test_line_resonance_examples():
    line = rank1_resonance_on_line(AFF, [1, 0], 1)
    assert not line.entire and sorted(line.roots()) == [0, 1]
    for c in (-1, 0, 1, 2):
        dim = weight_line_dims(AFF, [1, 0], c)[1]
        assert (dim >= 1) == line.contains(c)
    assert rank1_resonance_on_line(HEIS, [1, 2, 0], 1).roots() == [0]
    assert rank1_resonance_on_line(free_model(2), [1, 2], 1).entire


def test_eigenvalue_criterion_examples():
    assert eigenvalue_criterion(AFF, T2, [1, 0], [1, 0, 0], 1)
    assert not eigenvalue_criterion(AFF, T2, [1, 0], [F(1, 2), 0, 0], 1)
    for A in (AFF, HEIS, free_model(2)):
        for i, b in enumerate(A.betti()):
            if b:
                assert eigenvalue_criterion(A, T2, A.h1_basis()[0], [0, 1, 0], i)


@given(st.sampled_from(["aff1", "heis3", "metab21_31"]), st.sampled_from([(2,), (3,), (2, 2), (4,)]),
       vals, st.lists(vals, min_size=3, max_size=3))
@settings(max_examples=60)
def test_eigenvalue_criterion_against_oracle(name, dims, s, g):
    A = chevalley_eilenberg(catalog(name))
    eta = [s * x for x in A.h1_basis()[0]]
    theta = sl2_rep(dims)
    oracle = twisted_dims(A, theta, segre(eta, g))
    for i in range(A.top + 1):
        assert eigenvalue_criterion(A, theta, eta, g, i) == (oracle[i] >= 1)


def test_pi_membership_examples():
    assert pi_membership(AFF, T2, zero_form(2, 3))
    assert pi_membership(AFF, T2, segre([1, 0], [0, 1, 0]))
    assert not pi_membership(AFF, T2, segre([1, 0], [1, 0, 0]))
    assert pi_membership(AFF, T3, segre([1, 0], [1, 0, 0]))


def test_trivial_resonance_verdicts():
    v = trivial_resonance(AFF, 1)
    assert v.kind == "certified_trivial" and v.points == [[1, 0]]
    assert trivial_resonance(free_model(2), 1).kind == "certified_nontrivial"
    v = trivial_resonance(HEIS, 1, seed=3, n_lines=50)
    assert v.kind == "probabilistically_trivial" and v.n_lines == 50 and v.seed == 3
    assert trivial_resonance(AFF, 2).kind == "certified_trivial"
    assert trivial_resonance(chevalley_eilenberg(sl2()), 3).kind == "certified_trivial"


def test_germ_reports():
    S = chevalley_eilenberg(sl2())
    assert [germ_report(S, T2, i)["kind"] for i in range(4)] == ["origin-only", "empty", "empty", "origin-only"]
    assert germ_report(AFF, T2, 2)["kind"] == "empty"
    rep = germ_report(AFF, T2, 1, seed=7)
    assert rep["kind"] == "cone" and rep["cone"] == {"h1_dim": 1, "det_locus": "nilpotent cone"}
    assert rep["exceptions"] == 0 and len(rep["evidence"]) == 30
    rep3 = germ_report(HEIS, T3, 1, seed=7)
    assert rep3["cone"]["det_locus"] == "sl2" and rep3["exceptions"] == 0
    assert germ_report(free_model(2), T2, 1)["kind"] == "nontrivial-resonance"


def test_germ_report_is_deterministic():
    A = chevalley_eilenberg(metabelian([(2, 2)]))
    assert germ_report(A, T2, 1, seed=5) == germ_report(A, T2, 1, seed=5)
