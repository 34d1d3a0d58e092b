"""Twisted cohomology, rank-one resonance and the sl2 resonance loci of a CDGA.

Covariant derivative convention: for omega = sum_i e_i (x) g_i with e_i a basis of A^1,
    d_omega(a (x) v) = da (x) v + sum_i (e_i ^ a) (x) theta(g_i) v.
Its square is theta applied to the Maurer-Cartan defect of omega.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cdga import CDGA
from .conn import GOneForm, in_F1, mc_defect, segre, segre_factors
from .exactnum.linalg import identity, kron, mat_add, matmul, rank, zeros
from .exactnum.scalars import QuadScalar, as_fraction, sqrt_rational
from .exactnum.upoly import Factorization, UPoly, factor_rational
from .liealg import LieAlgebra, sl2
from .sl2 import (Sl2Rep, casimir_value, det_theta, eigen_squares, eigenvalues, sl2_irrep,
                  sl2_rep)

__all__ = [
    "Sl2Rep", "sl2_irrep", "sl2_rep", "det_theta", "eigen_squares", "eigenvalues",
    "NotFlat", "NotAModule", "twisted_differentials", "twisted_dims", "lie_cohomology",
    "LineResonance", "rank1_resonance_on_line", "eigenvalue_criterion", "Verdict",
    "trivial_resonance", "pi_membership", "germ_report", "describe_det_locus", "adjoint_module",
]


class NotFlat(ValueError):
    pass


class NotAModule(ValueError):
    pass


def _coupled_differentials(A: CDGA, mats, dimV: int):
    """D^p = d^p (x) I + sum_i L_{e_i} (x) mats[i], for p = 0..top."""
    I = identity(dimV)
    out = []
    for p in range(A.top + 1):
        rows = A.dims[p + 1] * dimV if p < A.top else 0
        if not rows:
            out.append(zeros(0, A.dims[p] * dimV))
            continue
        D = kron(A.d[p], I)
        for i, M in enumerate(mats):
            if not any(x for r in M for x in r):
                continue
            e = [Fraction(int(k == i)) for k in range(A.dims[1])]
            L = A.left_mult_matrix(e, p)
            if any(x for r in L for x in r):
                D = mat_add(D, kron(L, M))
        out.append(D)
    return out


def _check_square_zero(Ds):
    for p in range(len(Ds) - 1):
        if Ds[p + 1] and Ds[p] and Ds[p + 1][0] and Ds[p][0]:
            P = matmul(Ds[p + 1], Ds[p])
            if any(x for r in P for x in r):
                return False
    return True


def _dims_from(Ds, A: CDGA, dimV: int) -> list[int]:
    rk = [rank(D) if D and D[0] else 0 for D in Ds]
    return [A.dims[p] * dimV - rk[p] - (rk[p - 1] if p else 0) for p in range(A.top + 1)]


def twisted_differentials(A: CDGA, theta: Sl2Rep, omega: GOneForm, check: bool = True):
    m, n = omega.shape
    if m != A.dims[1] or n != 3:
        raise ValueError("omega must lie in A^1 (x) sl2")
    if check and any(x for r in mc_defect(A, sl2(), omega) for x in r):
        raise NotFlat("omega does not satisfy the Maurer-Cartan equation")
    mats = [theta(omega.matrix[i]) for i in range(m)]
    Ds = _coupled_differentials(A, mats, theta.dim)
    if check and not _check_square_zero(Ds):
        raise NotFlat("covariant derivative does not square to zero")
    return Ds


def twisted_dims(A: CDGA, theta: Sl2Rep, omega: GOneForm, check: bool = True) -> list[int]:
    """dim H^p(A (x) V, d_omega) for every degree p."""
    return _dims_from(twisted_differentials(A, theta, omega, check), A, theta.dim)


def lie_cohomology(h: LieAlgebra, module, degree: int | None = None):
    """dim H^i(h, U) for the module given by matrices rho(e_i); all degrees when degree is None."""
    from .cdga import chevalley_eilenberg

    mats = [[[as_fraction(x) for x in r] for r in M] for M in module]
    if len(mats) != h.dim:
        raise NotAModule("one matrix per basis element of h")
    dimU = len(mats[0]) if mats else 0
    for M in mats:
        if len(M) != dimU or any(len(r) != dimU for r in M):
            raise NotAModule("module matrices must be square of one size")
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            comm = [[a - b for a, b in zip(r1, r2)] for r1, r2 in
                    zip(matmul(mats[i], mats[j]), matmul(mats[j], mats[i]))]
            target = zeros(dimU, dimU)
            for k, c in enumerate(h.table[i][j]):
                if c:
                    target = [[t + c * x for t, x in zip(tr, xr)] for tr, xr in zip(target, mats[k])]
            if comm != target:
                raise NotAModule(f"bracket relation fails on ({h.basis[i]}, {h.basis[j]})")
    A = chevalley_eilenberg(h)
    Ds = _coupled_differentials(A, mats, dimU)
    dims = _dims_from(Ds, A, dimU)
    return dims if degree is None else (dims[degree] if 0 <= degree <= A.top else 0)


def adjoint_module(h: LieAlgebra):
    return [h.ad(h.unit(i)) for i in range(h.dim)]


# ---------------------------------------------------------------------------
# rank-one resonance along a line


@dataclass
class LineResonance:
    """{c : c * eta in R^i_1(A)} for a closed 1-form eta."""

    degree: int
    entire: bool
    condition: UPoly | None = None
    factorization: Factorization | None = None
    generic_dim: int = 0

    def roots(self) -> list:
        return self.factorization.explicit_roots() if self.factorization else []

    def higher(self) -> list:
        return [f for f, _ in self.factorization.higher] if self.factorization else []

    def contains(self, c) -> bool:
        if self.entire:
            return True
        return self.condition is not None and not self.condition(c)

    def to_json(self):
        if self.entire:
            return {"degree": self.degree, "entire_line": True}
        return {"degree": self.degree, "entire_line": False,
                "roots": [str(r) for r in self.roots()],
                "unresolved_factors": [f.to_str("c") for f in self.higher()]}


def _line_matrix(A: CDGA, eta, p: int):
    L = A.left_mult_matrix(eta, p)
    D = A.d[p]
    return [[UPoly([D[r][c], L[r][c]]) for c in range(A.dims[p])] for r in range(len(D))]


def _line_rank_data(A: CDGA, eta, p: int):
    from .exactnum.linalg import upoly_diagonal_form

    if p < 0 or p >= A.top:
        return 0, UPoly([1])
    M = _line_matrix(A, eta, p)
    if not M or not M[0]:
        return 0, UPoly([1])
    diag = upoly_diagonal_form(M)
    prod = UPoly([1])
    for d in diag:
        prod = prod * d
    return len(diag), prod


def rank1_resonance_on_line(A: CDGA, eta, degree: int) -> LineResonance:
    """Exact set of c with dim H^i(A, d + c*eta) >= 1, as a factored condition in c."""
    eta = [as_fraction(x) for x in eta]
    if not any(eta):
        raise ValueError("eta must be nonzero")
    if not A.is_closed(eta):
        raise ValueError("eta must be closed")
    if not 0 <= degree <= A.top:
        return LineResonance(degree, False, UPoly([1]), factor_rational(UPoly([1])))
    r_i, p_i = _line_rank_data(A, eta, degree)
    r_prev, p_prev = _line_rank_data(A, eta, degree - 1)
    generic = A.dims[degree] - r_i - r_prev
    if generic >= 1:
        return LineResonance(degree, True, generic_dim=generic)
    cond = p_i * p_prev
    return LineResonance(degree, False, cond, factor_rational(cond), generic)


def eigenvalue_criterion(A: CDGA, theta: Sl2Rep, eta, g, degree: int) -> bool:
    """Membership of eta (x) g in R^i_1(A, theta) through the eigenvalues of theta(g)."""
    eta = [as_fraction(x) for x in eta]
    g = [as_fraction(x) for x in g]
    if not A.is_closed(eta):
        raise ValueError("eta must be closed")
    if not any(eta) or not any(g):
        return A.betti()[degree] >= 1 if 0 <= degree <= A.top else False
    line = rank1_resonance_on_line(A, eta, degree)
    if line.entire:
        return True
    squares = set(eigen_squares(theta, g))
    for c in line.roots():
        sq = c * c
        if isinstance(sq, QuadScalar):
            if not sq.is_rational():
                continue
            sq = sq.to_fraction()
        if sq in squares:
            return True
    if line.higher():
        lams = eigenvalues(theta, g)
        for f in line.higher():
            if any(not f(lam) for lam in lams):
                return True
    return False


def pi_membership(A: CDGA, theta: Sl2Rep, omega: GOneForm) -> bool:
    """omega in P(H^1(A) x V(det theta))."""
    if omega.is_zero():
        return True
    if not in_F1(A, omega):
        return False
    _, g = segre_factors(omega)
    return det_theta(theta)(dict(zip(("a", "b", "c"), g))) == 0


# ---------------------------------------------------------------------------
# trivial resonance


@dataclass
class Verdict:
    kind: str              # certified_trivial | certified_nontrivial | probabilistically_trivial
    degree: int
    n_lines: int = 0
    seed: int | None = None
    points: list = field(default_factory=list)   # nonzero resonant points found (vectors)
    note: str = ""

    def is_trivial(self) -> bool:
        return self.kind != "certified_nontrivial"

    def to_json(self):
        out = {"verdict": self.kind, "degree": self.degree}
        if self.kind == "probabilistically_trivial":
            out.update(n_lines=self.n_lines, seed=self.seed)
        out["resonance_points"] = [[str(x) for x in p] for p in self.points]
        if self.note:
            out["note"] = self.note
        return out


def random_rational(rng: random.Random, bound: int = 9, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if x or not nonzero:
            return x


def random_combination(rng, basis, bound: int = 9):
    if not basis:
        return []
    while True:
        coeffs = [random_rational(rng, bound) for _ in basis]
        vec = [sum((c * b[k] for c, b in zip(coeffs, basis)), Fraction(0)) for k in range(len(basis[0]))]
        if any(vec):
            return vec


def _points_on_line(line: LineResonance, eta):
    pts = []
    for c in line.roots():
        if c:
            pts.append([c * x for x in eta])
    return pts


def trivial_resonance(A: CDGA, degree: int, seed: int = 0, n_lines: int = 50) -> Verdict:
    """Is 0 an isolated point of R^i_1(A)? Exact when dim H^1 <= 1, line probing otherwise."""
    betti = A.betti()
    H1 = A.h1_basis()
    if not 0 <= degree <= A.top or betti[degree] == 0:
        return Verdict("certified_trivial", degree, note="H^i(A) = 0, so 0 is not resonant")
    if not H1:
        return Verdict("certified_trivial", degree, note="H^1(A) = 0")
    if degree == 0:
        return Verdict("certified_trivial", degree, note="eta * 1 = eta is nonzero off the origin")
    if len(H1) == 1:
        eta = H1[0]
        line = rank1_resonance_on_line(A, eta, degree)
        if line.entire:
            return Verdict("certified_nontrivial", degree, points=[eta])
        return Verdict("certified_trivial", degree, points=_points_on_line(line, eta))
    rng = random.Random(seed)
    pts = []
    for _ in range(n_lines):
        eta = random_combination(rng, H1)
        line = rank1_resonance_on_line(A, eta, degree)
        if line.entire:
            return Verdict("certified_nontrivial", degree, seed=seed, points=[eta])
        pts.extend(_points_on_line(line, eta))
    return Verdict("probabilistically_trivial", degree, n_lines, seed, pts)


# ---------------------------------------------------------------------------
# germs at the origin


def describe_det_locus(theta: Sl2Rep) -> str:
    f = det_theta(theta)
    if f.is_zero():
        return "sl2"
    from .poly import MultiPoly

    a, b, c = MultiPoly.gens(("a", "b", "c"))
    q = a * a + b * c
    for e in range(1, theta.dim + 1):
        for sgn in (1, -1):
            if f == q**e * sgn:
                return "nilpotent cone"
    return str(f)


def random_sl2(rng: random.Random, nilpotent: bool | None = None, bound: int = 9):
    """Random nonzero g = (a, b, c); nilpotent ones satisfy a^2 + bc = 0."""
    if nilpotent is None:
        nilpotent = rng.random() < 0.5
    while True:
        if nilpotent:
            a = random_rational(rng, bound)
            b = random_rational(rng, bound, nonzero=True)
            g = [a, b, -a * a / b]
            if rng.random() < 0.5:
                g = [a, -a * a / b, b]
        else:
            g = [random_rational(rng, bound) for _ in range(3)]
        if any(g):
            return g


def normalized(vec):
    m = max(abs(x) for x in vec)
    return [x / m for x in vec]


def scaling_evidence(A: CDGA, theta: Sl2Rep, degree: int, samples: int, seed: int,
                     t_values=(Fraction(1, 8), Fraction(-1, 8), Fraction(1, 16), Fraction(-1, 16))):
    """t*(eta (x) g) for seeded directions (normalized to max entry 1 on each side)."""
    rng = random.Random(seed)
    H1 = A.h1_basis()
    det = det_theta(theta)
    out = []
    for _ in range(samples):
        eta = normalized(random_combination(rng, H1))
        g = normalized(random_sl2(rng))
        dv = det(dict(zip(("a", "b", "c"), g)))
        res = []
        for t in t_values:
            omega = segre([t * x for x in eta], g)
            res.append(twisted_dims(A, theta, omega, check=False)[degree] >= 1)
        out.append({"eta": eta, "g": g, "t_values": list(t_values), "resonant": res,
                    "det_theta": dv})
    return out


def germ_report(A: CDGA, theta: Sl2Rep, degree: int, seed: int = 0, samples: int = 30) -> dict:
    """Shape of the germ at 0 of R^i_1(A, theta), with sampled scaling evidence."""
    betti = A.betti()
    h1 = betti[1] if A.top >= 1 else 0
    report = {"degree": degree, "betti": betti, "h1_dim": h1, "rep": list(theta.dims)}
    if not 0 <= degree <= A.top or betti[degree] == 0:
        report.update(kind="empty", verdict="certified_trivial", resonance_points=[], evidence=[])
        return report
    if h1 == 0:
        report.update(kind="origin-only", verdict="certified_trivial", resonance_points=[], evidence=[])
        return report
    verdict = trivial_resonance(A, degree, seed)
    report["verdict"] = verdict.kind
    report["resonance_points"] = [[str(x) for x in p] for p in verdict.points]
    if not verdict.is_trivial():
        report.update(kind="nontrivial-resonance", evidence=[])
        return report
    evidence = scaling_evidence(A, theta, degree, samples, seed)
    report.update(kind="cone", cone={"h1_dim": h1, "det_locus": describe_det_locus(theta)})
    report["evidence"] = [
        {"eta": [str(x) for x in e["eta"]], "g": [str(x) for x in e["g"]],
         "t_values": [str(t) for t in e["t_values"]], "resonant": e["resonant"],
         "det_theta": str(e["det_theta"])} for e in evidence]
    report["exceptions"] = sum(1 for e in evidence
                               if any(r != (e["det_theta"] == 0) for r in e["resonant"]))
    return report
