import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci.cdga import chevalley_eilenberg, free_model
from jumploci.conn import (GOneForm, NilpotentInput, SectionError, classify_metabelian_hom,
                           form_to_values, hom_defect, in_F1, is_flat, is_hom, mc_defect,
                           metabelian_certificate, metabelian_family, rep_on_section,
                           section_point_form, segre, segre_factors, solvable_certificate,
                           zero_form)
from jumploci.exactnum.linalg import det, inverse, matmul, transpose, zeros
from jumploci.liealg import aff1, catalog, heisenberg, metabelian, sl2
from jumploci.poly import MultiPoly

K = sl2()
vals = st.fractions(min_value=-4, max_value=4, max_denominator=3)
vec3 = st.lists(vals, min_size=3, max_size=3)


def test_mc_defect_examples():
    A = chevalley_eilenberg(aff1())
    assert not any(x for r in mc_defect(A, K, zero_form(2, 3)) for x in r)
    D = mc_defect(A, K, GOneForm([[0, 0, 0], [1, 0, 0]]))  # x* (x) H
    assert D == [[-1, 0, 0]]
    assert is_flat(free_model(2), K, GOneForm([[1, 2, 3], [4, 5, 6]]))


@given(vec3, vec3)
def test_free_model_every_form_is_flat(r1, r2):
    assert is_flat(free_model(2), K, GOneForm([r1, r2]))


@given(st.sampled_from(["aff1", "heis3", "borel", "heis5", "abelian3"]), vals, vals, vals, vec3)
@settings(max_examples=40)
def test_rank_one_closed_forms_are_flat(name, s1, s2, s3, g):
    A = chevalley_eilenberg(catalog(name))
    H1 = A.h1_basis()
    eta = [sum((c * v[i] for c, v in zip((s1, s2, s3), H1)), F(0)) for i in range(A.dims[1])]
    omega = segre(eta, g)
    assert in_F1(A, omega)
    assert is_flat(A, K, omega)


def test_segre_examples():
    assert segre([0, 0], [1, 2, 3]).is_zero()
    w = segre([1, 0], [1, 0, 0])
    assert w.matrix == [[1, 0, 0], [0, 0, 0]]
    t = F(3, 7)
    assert segre([x / t for x in (1, 2)], [t * y for y in (3, 4, 5)]).matrix == segre([1, 2], [3, 4, 5]).matrix


@given(st.lists(vals, min_size=2, max_size=2), vec3)
def test_segre_fibres_are_torus_orbits(eta, g):
    w = segre(eta, g)
    if w.is_zero():
        return
    eta2, g2 = segre_factors(w)
    # recover t with (eta2, g2) = (eta / t, t g)
    i = next(k for k, x in enumerate(g) if x)
    t = g2[i] / g[i]
    assert [t * x for x in eta2] == [F(x) for x in eta]
    assert [t * y for y in g] == g2


def test_in_F1_examples():
    A = chevalley_eilenberg(aff1())
    assert in_F1(A, zero_form(2, 3))
    assert in_F1(A, segre([1, 0], [1, 0, 0]))
    assert not in_F1(A, segre([0, 1], [1, 0, 0]))
    assert not in_F1(A, GOneForm([[1, 0, 0], [0, 1, 0]]))  # rank two


def test_hom_defect_examples():
    assert not hom_defect(K, K, zero_form(3, 3))
    assert not hom_defect(K, K, GOneForm([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    assert hom_defect(K, K, GOneForm([[2, 0, 0], [0, 2, 0], [0, 0, 2]]))
    h = metabelian([(2, 1)])
    assert is_hom(h, K, GOneForm([[0, 1, 0], [1, 0, 0]]))


@given(st.lists(vec3, min_size=3, max_size=3))
@settings(max_examples=50)
def test_hom_defect_matches_matrix_route(rows):
    """hom_defect on forms agrees with LieAlgebra.is_hom_to on transposed matrices."""
    h = catalog("heis3")
    phi = GOneForm(rows)
    assert (not hom_defect(h, K, phi)) == h.is_hom_to(K, transpose(rows))


def test_metabelian_family_examples():
    assert metabelian_family([(2, 1)], 2, 1, [1]).matrix == [[0, 1, 0], [1, 0, 0]]
    assert metabelian_family([(2, 2)], 2, 1, [0, 1]).matrix == [[0, 0, 0], [0, 1, 0], [1, 0, 0]]
    assert metabelian_family([(2, 1)], 2, -1, [1]).matrix == [[0, 0, 1], [-1, 0, 0]]
    with pytest.raises(ValueError):
        metabelian_family([(2, 1)], 3, 1, [1])
    with pytest.raises(ValueError):
        metabelian_family([(2, 2)], 2, 1, [0, 0])
    with pytest.raises(ValueError):
        metabelian_family([(2, 2)], 2, 1, [1, 1])


@pytest.mark.parametrize("jd", [[(2, 1)], [(2, 2)], [(2, 1), (0, 1)], [(2, 1), (3, 1)], [(-1, 3)]])
def test_family_is_hom_and_certificate_vanishes(jd):
    rng = random.Random(0)
    h = metabelian(jd)
    f = metabelian_certificate(jd)
    assert f.constant_term() != 0
    layout = {}
    pos = 0
    for lam, r in jd:
        layout.setdefault(F(lam), []).append(r)
    for lam, sizes in layout.items():
        if not lam:
            continue
        for eps in (1, -1):
            t = []
            for r in sizes:
                t += [0] * (r - 1) + [F(rng.randint(1, 9), rng.randint(1, 5))]
            phi = metabelian_family(jd, lam, eps, t)
            assert is_hom(h, K, phi)
            assert phi.rank() == 2
            assert f(form_to_values(h, phi)) == 0
            assert classify_metabelian_hom(jd, phi).kind == "metabelian-normal-form"


def test_certificate_examples():
    h = metabelian([(2, 1)])
    f = metabelian_certificate([(2, 1)])
    U = MultiPoly.gens(("u.H", "u.Xp", "u.Xm"))
    detU = -U[0] * U[0] - U[1] * U[2]
    assert f == (detU + 1).with_vars(f.vars)
    assert f(form_to_values(h, GOneForm([[0, 0, 0], [1, 0, 0]]))) == 0
    two = metabelian_certificate([(2, 1), (3, 1)])
    assert two == ((detU + 1) * (detU + F(9, 4))).with_vars(two.vars)
    with pytest.raises(NilpotentInput):
        metabelian_certificate([(0, 2)])


def _conj(vec, P):
    M = [[vec[0], vec[1]], [vec[2], -vec[0]]]
    R = matmul(matmul(P, M), inverse(P))
    return [R[0][0], R[0][1], R[1][0]]


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.sampled_from([1, -1]))
@settings(max_examples=40)
def test_classification_undoes_conjugation(p, eps):
    P = [[p[0], p[1]], [p[2], p[3]]]
    if not det(P):
        return
    jd = [(2, 1), (3, 1)]
    phi = metabelian_family(jd, 3, eps, [F(5, 2)])
    moved = GOneForm([_conj(r, P) for r in phi.matrix])
    cls = classify_metabelian_hom(jd, moved)
    assert cls.kind == "metabelian-normal-form" and cls.lam == 3


def test_classification_of_non_homs_and_rank_one():
    jd = [(2, 1)]
    assert classify_metabelian_hom(jd, GOneForm([[1, 0, 0], [0, 1, 0]])).kind == "not-a-hom"
    assert classify_metabelian_hom(jd, GOneForm([[0, 0, 0], [1, 2, 3]])).kind == "rank-one"


# sections


def test_aff1_line_section():
    res = rep_on_section(aff1(), K, zeros(2, 3), [[[F(1, 2), 0, 0], [0, 1, 0]]])
    assert sorted(res.params()) == [0, 1]


def test_sl2_identity_line():
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert sorted(rep_on_section(K, K, zeros(3, 3), [I]).params()) == [0, 1]


def test_heisenberg_rank_two_line_only_origin():
    rng = random.Random(4)
    h = heisenberg(1)
    for _ in range(5):
        D = [[F(rng.randint(-9, 9)) for _ in range(3)] for _ in range(3)]
        if GOneForm(D).rank() < 2:
            continue
        assert rep_on_section(h, K, zeros(3, 3), [D]).params() == [0]


def test_section_solutions_are_homs():
    h = metabelian([(2, 1), (0, 1)])
    D1, D2 = zeros(3, 3), zeros(3, 3)
    D1[2][0] = F(1)  # u.H
    D2[0][1] = F(1)  # z1.Xp
    res = rep_on_section(h, K, zeros(3, 3), [D1, D2])
    pts = list(res.points) + [tuple(s) for c in res.curves for s in c["samples"]]
    assert pts
    for pt in pts:
        assert is_hom(h, K, section_point_form(zeros(3, 3), [D1, D2], pt))
    assert not res.unresolved


def test_section_parameter_limit():
    with pytest.raises(SectionError):
        rep_on_section(aff1(), K, zeros(2, 3), [zeros(2, 3)] * 3)


def test_solvable_certificates():
    f = solvable_certificate(aff1())
    assert f.constant_term() != 0
    phi = GOneForm([[F(1, 2), 0, 0], [0, 1, 0]])  # u -> H/2, x -> X+
    assert is_hom(aff1(), K, phi)
    assert f(form_to_values(aff1(), phi)) == 0
    assert solvable_certificate(heisenberg(1)).constant_term() == 1
    h = metabelian([(2, 1), (3, 1)])
    g = solvable_certificate(h)
    for lam in (2, 3):
        phi = metabelian_family([(2, 1), (3, 1)], lam, 1, [1])
        assert g(form_to_values(h, phi)) == 0
