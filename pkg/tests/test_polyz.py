from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci.exactnum.linalg import char_poly, det, exterior_power
from jumploci.exactnum.upoly import UPoly, quadratic_roots
from jumploci.polyz import (IrrationalIntermediateCharacter, TorusBundleGroup, character_torus,
                            charvar, charvar_oracle, fox_homology, tower_extend, tower_oracle)

SOL = TorusBundleGroup.of([[2, 1], [1, 1]])
NIL = TorusBundleGroup.of([[1, 1], [0, 1]])
GOLDEN = UPoly([1, -3, 1])


def test_group_validation():
    with pytest.raises(ValueError):
        TorusBundleGroup.of([[2, 0], [0, 1]])
    with pytest.raises(ValueError):
        TorusBundleGroup.of([[F(1, 2), 0], [0, 2]])
    assert TorusBundleGroup.from_json({"n": 2, "matrix": [[2, 1], [1, 1]]}) == SOL


def test_character_torus_examples():
    t = character_torus(SOL)
    assert t["coinvariants"]["group"] == "0" and t["torus"] == "C*"
    t = character_torus(TorusBundleGroup.of([[1]]))
    assert t["coinvariants"]["free_rank"] == 1 and t["torus_dim"] == 2
    t = character_torus(NIL)
    assert t["smith_diagonal"] == [1, 0] and t["coinvariants"]["group"] == "Z"
    t = character_torus(TorusBundleGroup.of([[-1, 0], [0, -1]]))
    assert t["coinvariants"]["torsion"] == [2, 2]


def test_charvar_examples():
    cv = charvar(SOL, 1)
    assert cv.rational_values() == [1]
    assert [p.lam for p in cv.points if not p.is_rational()] == [GOLDEN]
    assert charvar(SOL, 0).summary() == "{1}"
    # degree n: {det A} and eig(A); degree n + 1: only {det A} survives
    assert charvar(SOL, 2).contains(det(SOL.A())) and charvar(SOL, 2).contains(quadratic_roots(GOLDEN)[0])
    top = charvar(SOL, 3)
    assert top.summary() == "{1}"
    assert charvar_oracle(SOL, None, quadratic_roots(GOLDEN)[0], 3) == 0
    with pytest.raises(ValueError):
        charvar(SOL, 5)
    with pytest.raises(ValueError):
        charvar(SOL, -1)


def test_provenance_tags():
    cv = charvar(SOL, 1)
    tags = {str(p.lam) if p.is_rational() else "golden": p.provenance for p in cv.points}
    assert tags == {"1": ["Lambda^0"], "golden": ["Lambda^1"]}
    cv = charvar(NIL, 2)
    assert cv.points[0].provenance == ["Lambda^2", "Lambda^1"]


def test_json_shape():
    data = charvar(SOL, 1).to_json()
    assert {"chi": "trivial", "lambda": {"rational": "1"}, "provenance": ["Lambda^0"]} in data["points"]
    assert any(p["lambda"] == {"poly": "x^2-3x+1"} for p in data["points"])


def test_oracle_examples():
    for G in (SOL, NIL, TorusBundleGroup.of([[0, 1], [1, 0]])):
        assert charvar_oracle(G, None, F(1), 0) == 1
    assert charvar_oracle(SOL, None, F(2), 1) == 0
    assert charvar_oracle(SOL, None, F(1), 1) >= 1
    for lam in quadratic_roots(GOLDEN):
        assert charvar_oracle(SOL, None, lam, 1) == 1
    for lam in (2, 3, -1):
        assert charvar_oracle(SOL, None, F(lam), 1) == 0


def test_oracle_rejects_bad_characters():
    with pytest.raises(ValueError):
        charvar_oracle(SOL, [F(2), F(1)], F(1), 1)  # not invariant under A
    with pytest.raises(ValueError):
        charvar_oracle(SOL, None, F(0), 1)


def test_oracle_with_nontrivial_character():
    # A = I on Z^1: G = Z^2 and chi may be anything; a nontrivial chi kills all homology
    G = TorusBundleGroup.of([[1]])
    assert [charvar_oracle(G, [F(3)], F(1), i) for i in range(3)] == [0, 0, 0]
    assert [charvar_oracle(G, [F(1)], F(1), i) for i in range(3)] == [1, 2, 1]
    # -I on Z^2 admits chi = (-1, -1); twisted homology of Z^2 vanishes there
    G = TorusBundleGroup.of([[-1, 0], [0, -1]])
    assert all(charvar_oracle(G, [F(-1), F(-1)], lam, i) == 0 for lam in (F(1), F(-1)) for i in range(4))


def test_fox_calculus_fixes_the_convention():
    """Non-reciprocal spectrum: eig(A) = {phi, -1/phi} while eig(A^-1) = {1/phi, -phi}."""
    A = [[1, 1], [1, 0]]
    G = TorusBundleGroup.of(A)
    phi = quadratic_roots(UPoly([-1, -1, 1]))
    one = [F(1), F(1)]
    for lam in phi:
        assert fox_homology(A, one, lam)[1] == 1
        assert charvar(G, 1).contains(lam)
        assert charvar_oracle(G, None, lam, 1) == 1
    for lam in (x.inverse() for x in phi):
        assert fox_homology(A, one, lam)[1] == 0
        assert not charvar(G, 1).contains(lam)


unimodular = st.sampled_from([[[2, 1], [1, 1]], [[1, 1], [0, 1]], [[0, 1], [1, 0]], [[-1, 0], [0, 1]],
                              [[1, 1], [1, 0]], [[0, -1], [1, 0]], [[3, 2], [1, 1]],
                              [[1, 0, 0], [0, 2, 1], [0, 1, 1]], [[0, 0, 1], [1, 0, 1], [0, 1, 0]],
                              [[1, 1, 0], [0, 1, 1], [0, 0, 1]]])


@given(unimodular, st.integers(0, 4), st.fractions(min_value=-9, max_value=9, max_denominator=9))
@settings(max_examples=80)
def test_membership_matches_oracle(A, i, lam):
    G = TorusBundleGroup.of(A)
    if i > G.n + 1 or lam == 0:
        return
    cv = charvar(G, i)
    assert cv.contains(lam) == (charvar_oracle(G, None, lam, i) >= 1)


@given(unimodular)
@settings(max_examples=20)
def test_points_finite_members_and_tagged(A):
    G = TorusBundleGroup.of(A)
    for i in range(G.n + 2):
        cv = charvar(G, i)
        assert cv.is_finite() and len(cv.points) <= 2 ** (G.n + 1)
        for lam in cv.explicit_values():
            assert charvar_oracle(G, None, lam, i) >= 1
        for p in cv.points:
            assert p.provenance
            for tag in p.provenance:
                q = int(tag.split("^")[1])
                assert q in (i, i - 1)
                cp = char_poly(exterior_power(A, q))
                assert (cp(p.lam) == 0) if p.is_rational() else (cp % p.lam).is_zero()
    assert charvar(G, 0).contains(1)
    if det(A) == 1:
        assert charvar(G, G.n + 1).contains(1)


def test_tower_examples():
    Z = TorusBundleGroup.of([[1]])
    assert [charvar(Z, i).summary() for i in range(3)] == ["{1}", "{1}", "{1}"]
    for i in range(5):
        cv = tower_extend(NIL, [[1, 2], [0, 1]], i)
        assert all(p.lam == 1 and p.prefix == (1,) for p in cv.points)
    with pytest.raises(IrrationalIntermediateCharacter):
        tower_extend(SOL, [[-1, 0], [0, -1]], 1)
    with pytest.raises(ValueError):
        tower_extend(NIL, [[2, 1], [1, 1]], 1)  # does not commute


@pytest.mark.parametrize("A,B", [([[-1, 0], [0, 1]], [[1, 0], [0, -1]]),
                                 ([[1, 1], [0, 1]], [[-1, 0], [0, -1]]),
                                 ([[0, 1], [1, 0]], [[0, 1], [1, 0]])])
def test_tower_matches_double_mapping_torus(A, B):
    G = TorusBundleGroup.of(A)
    for i in range(5):
        cv = tower_extend(G, B, i)
        for lam in (F(1), F(-1), F(2)):
            for mu in (F(1), F(-1), F(3)):
                assert cv.contains(mu, (lam,)) == (tower_oracle(G, B, lam, mu, i) >= 1)
