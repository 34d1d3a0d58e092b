"""Finite-dimensional sl2 representations on weight bases.

Basis order of sl2 throughout: H, X+, X-, with [X+, X-] = H and [H, X+-] = +-2 X+-.
A vector (a, b, c) means a*H + b*X+ + c*X-.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum.linalg import block_diag, char_poly_coeffs, commutator, mat_add, mat_scale, mat_sub
from .exactnum.linalg import is_zero_matrix, zeros
from .exactnum.scalars import as_fraction, sqrt_rational
from .poly import SL2_COORDS, MultiPoly


class NotARepresentation(ValueError):
    pass


@dataclass(frozen=True)
class Sl2Rep:
    """theta: sl2 -> gl(V), a direct sum of irreducibles of the listed dimensions."""

    dims: tuple
    H: tuple
    Xp: tuple
    Xm: tuple

    @property
    def dim(self) -> int:
        return len(self.H)

    def matrices(self):
        return [self.H, self.Xp, self.Xm]

    def validate(self):
        H, P, M = ([list(r) for r in X] for X in self.matrices())
        if not is_zero_matrix(mat_sub(commutator(P, M), H)):
            raise NotARepresentation("[X+, X-] != H")
        if not is_zero_matrix(mat_sub(commutator(H, P), mat_scale(P, 2))):
            raise NotARepresentation("[H, X+] != 2 X+")
        if not is_zero_matrix(mat_sub(commutator(H, M), mat_scale(M, -2))):
            raise NotARepresentation("[H, X-] != -2 X-")
        return True

    def __call__(self, g):
        """theta(g) for a rational coordinate vector g = (a, b, c)."""
        a, b, c = (as_fraction(x) for x in g)
        out = mat_add(mat_scale([list(r) for r in self.H], a), mat_scale([list(r) for r in self.Xp], b))
        return mat_add(out, mat_scale([list(r) for r in self.Xm], c))

    def label(self) -> str:
        return "+".join(f"theta{m}" for m in self.dims)


def _freeze(M):
    return tuple(tuple(r) for r in M)


def _irrep_matrices(m: int):
    H, P, M = zeros(m, m), zeros(m, m), zeros(m, m)
    for k in range(m):
        H[k][k] = Fraction(m - 1 - 2 * k)
        if k + 1 < m:
            M[k + 1][k] = Fraction(k + 1)
        if k >= 1:
            P[k - 1][k] = Fraction(m - k)
    return H, P, M


def sl2_irrep(m: int) -> Sl2Rep:
    """Irreducible representation of dimension m on the weight basis v_0..v_{m-1}."""
    if m < 1:
        raise ValueError("irrep dimension must be >= 1")
    return sl2_rep([m])


def sl2_rep(dims) -> Sl2Rep:
    """Direct sum of irreducibles, e.g. [2, 2] for theta2 + theta2."""
    dims = tuple(int(m) for m in dims)
    if not dims or any(m < 1 for m in dims):
        raise ValueError("need at least one summand, each of dimension >= 1")
    blocks = [_irrep_matrices(m) for m in dims]
    mats = [block_diag([b[i] for b in blocks]) for i in range(3)]
    rep = Sl2Rep(dims, *(_freeze(X) for X in mats))
    rep.validate()
    return rep


def parse_rep(text: str) -> Sl2Rep:
    """'2' or '2,2' or '3' -> Sl2Rep."""
    return sl2_rep([int(x) for x in str(text).split(",") if x.strip()])


def theta_symbolic(theta: Sl2Rep):
    """theta(a*H + b*X+ + c*X-) with MultiPoly entries in (a, b, c)."""
    a, b, c = MultiPoly.gens(SL2_COORDS)
    n = theta.dim
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(a * theta.H[i][j] + b * theta.Xp[i][j] + c * theta.Xm[i][j])
        out.append(row)
    return out


def det_theta(theta: Sl2Rep) -> MultiPoly:
    """det theta(g) as a polynomial in the coordinates (a, b, c)."""
    one = MultiPoly.const(1, SL2_COORDS)
    cp = char_poly_coeffs(theta_symbolic(theta), one)
    return cp[0] * ((-1) ** theta.dim)


def casimir_value(g) -> Fraction:
    """a^2 + b*c = -det(g) in the defining representation."""
    a, b, c = (as_fraction(x) for x in g)
    return a * a + b * c


def weights(theta: Sl2Rep) -> list[int]:
    return [m - 1 - 2 * k for m in theta.dims for k in range(m)]


def eigen_squares(theta: Sl2Rep, g) -> list[Fraction]:
    """Squares of the eigenvalues of theta(g), with multiplicity."""
    mu2 = casimir_value(g)
    return [Fraction(w * w) * mu2 for w in weights(theta)]


def eigenvalues(theta: Sl2Rep, g) -> list:
    """Eigenvalues of theta(g): w*mu with mu^2 = a^2 + bc, as exact scalars."""
    mu = sqrt_rational(casimir_value(g))
    return [w * mu for w in weights(theta)]


def is_nilpotent_element(g) -> bool:
    return casimir_value(g) == 0
