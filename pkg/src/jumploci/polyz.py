"""Rank-one characteristic varieties of torus-bundle groups Z^n x|_A Z.

A character rho of G_A = Z^n x|_A Z is a pair (chi, lam): chi(t_k) on the fibre
generators and lam = rho(tau) on the stable letter. Relators: [t_i, t_j] and
tau t_j tau^-1 = A(t_j), where A(t_j) = prod_k t_k^(A_kj).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactnum.linalg import (det, eigen_factors, exterior_power, identity, inverse, kernel_basis,
                              matmul, rank, smith_normal_form, solve, to_matrix, zeros)
from .exactnum.scalars import QuadScalar, as_fraction
from .exactnum.upoly import UPoly


class IrrationalIntermediateCharacter(ValueError):
    pass


@dataclass(frozen=True)
class TorusBundleGroup:
    n: int
    matrix: tuple

    def __post_init__(self):
        M = [[int(as_fraction(x)) for x in r] for r in self.matrix]
        if any(as_fraction(x).denominator != 1 for r in self.matrix for x in r):
            raise ValueError("monodromy must be an integer matrix")
        if len(M) != self.n or any(len(r) != self.n for r in M):
            raise ValueError("monodromy must be n x n")
        if abs(det(M)) != 1:
            raise ValueError("monodromy must have determinant +-1")
        object.__setattr__(self, "matrix", tuple(tuple(r) for r in M))

    @classmethod
    def of(cls, M) -> TorusBundleGroup:
        return cls(len(M), tuple(tuple(r) for r in M))

    @classmethod
    def from_json(cls, data: dict) -> TorusBundleGroup:
        M = data["matrix"]
        if "n" in data and int(data["n"]) != len(M):
            raise ValueError("n does not match the matrix size")
        return cls.of(M)

    @classmethod
    def load(cls, path) -> TorusBundleGroup:
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def A(self):
        return [list(r) for r in self.matrix]

    def to_json(self):
        return {"n": self.n, "matrix": [list(r) for r in self.matrix]}


def character_torus(G: TorusBundleGroup) -> dict:
    """Abelianization (coinvariants of A) + Z and the resulting character torus."""
    n = G.n
    M = [[G.matrix[i][j] - (i == j) for j in range(n)] for i in range(n)]
    _, D, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(n)]
    torsion = [d for d in diag if d > 1]
    free = sum(1 for d in diag if d == 0)
    parts = [f"Z/{d}" for d in torsion] + ["Z"] * free
    torus_parts = [f"mu_{d}" for d in torsion] + ["C*"] * (free + 1)
    return {
        "smith_diagonal": diag,
        "coinvariants": {"torsion": torsion, "free_rank": free,
                         "group": " + ".join(parts) if parts else "0"},
        "abelianization_free_rank": free + 1,
        "torus": " x ".join(torus_parts),
        "torus_dim": free + 1,
    }


# ---------------------------------------------------------------------------
# character variety points


@dataclass
class CharPoint:
    """chi trivial; lam a rational or all roots of an irreducible factor over Q."""

    lam: object                    # Fraction or monic irreducible UPoly of degree >= 2
    provenance: list = field(default_factory=list)
    prefix: tuple = ()             # earlier coordinates (for towers)

    def is_rational(self) -> bool:
        return not isinstance(self.lam, UPoly)

    def contains(self, value) -> bool:
        if self.is_rational():
            return value == self.lam
        return not self.lam(value)

    def key(self):
        return (tuple(str(p) for p in self.prefix), _lam_str(self.lam))

    def to_json(self):
        out = {"chi": "trivial", "lambda": _lam_json(self.lam), "provenance": list(self.provenance)}
        if self.prefix:
            out["previous"] = [_lam_json(p) for p in self.prefix]
        return out


def _lam_str(lam) -> str:
    return lam.to_str("x").replace(" ", "").replace("*", "") if isinstance(lam, UPoly) else str(lam)


def _lam_json(lam):
    if isinstance(lam, UPoly):
        return {"poly": _lam_str(lam)}
    return {"rational": str(lam)}


@dataclass
class CharVariety:
    degree: int
    points: list = field(default_factory=list)

    def is_finite(self) -> bool:
        return True

    def contains(self, lam, prefix=()) -> bool:
        return any(p.contains(lam) and tuple(p.prefix) == tuple(prefix) for p in self.points)

    def rational_values(self):
        return [p.lam for p in self.points if p.is_rational()]

    def explicit_values(self):
        """Every lam expressible as Fraction or QuadScalar."""
        from .exactnum.upoly import quadratic_roots

        out = []
        for p in self.points:
            if p.is_rational():
                out.append(p.lam)
            elif p.lam.degree == 2:
                out.extend(quadratic_roots(p.lam))
        return out

    def to_json(self):
        return {"degree": self.degree, "points": [p.to_json() for p in self.points]}

    def summary(self) -> str:
        def show(p):
            last = _lam_str(p.lam) if p.is_rational() else f"roots({_lam_str(p.lam)})"
            return "(" + ", ".join([str(x) for x in p.prefix] + [last]) + ")" if p.prefix else last

        return "{" + ", ".join(show(p) for p in self.points) + "}"


def _add_factor_points(points: dict, M, tag: str, prefix=()):
    fac = eigen_factors(M)
    for r, _ in fac.linear:
        key = (prefix, str(r))
        points.setdefault(key, CharPoint(r, [], prefix)).provenance.append(tag)
    for f, _ in fac.quadratic + fac.higher:
        key = (prefix, _lam_str(f))
        points.setdefault(key, CharPoint(f, [], prefix)).provenance.append(tag)


def charvar(G: TorusBundleGroup, degree: int) -> CharVariety:
    """V^i_1(G_A): trivial chi and lam in eig(Lambda^i A) or eig(Lambda^(i-1) A)."""
    n = G.n
    if not 0 <= degree <= n + 1:
        raise ValueError(f"degree {degree} out of range 0..{n + 1}")
    A = G.A()
    points: dict = {}
    for q in (degree, degree - 1):
        if 0 <= q <= n:
            _add_factor_points(points, exterior_power(A, q), f"Lambda^{q}")
    pts = sorted(points.values(), key=lambda p: (not p.is_rational(), _sort_key(p.lam)))
    return CharVariety(degree, pts)


def _sort_key(lam):
    if isinstance(lam, UPoly):
        return (lam.degree, _lam_str(lam))
    return (0, lam)


# ---------------------------------------------------------------------------
# chain-level oracle: twisted Koszul complex + algebraic mapping torus


def _power(x, k: int):
    if k >= 0:
        return x**k
    return (1 / x if not isinstance(x, QuadScalar) else x.inverse()) ** (-k)


def fox_jacobian(A, chi):
    """F[k][j] = rho(d A(t_j) / d t_k), A(t_j) = t_1^A_1j ... t_n^A_nj, at the character chi."""
    n = len(A)
    F = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        prefix = Fraction(1)
        for k in range(n):
            v = A[k][j]
            x = chi[k]
            if x == 1:
                geo = Fraction(v)
            else:
                geo = (_power(x, v) - 1) * _inv(x - 1)
            F[k][j] = prefix * geo
            prefix = prefix * _power(x, v)
    return F


def _inv(x):
    return x.inverse() if isinstance(x, QuadScalar) else 1 / x


def koszul_complex(chi):
    """Twisted Koszul complex of Z^n: list of differentials d_q: K_q -> K_(q-1), q = 1..n."""
    n = len(chi)
    subsets = [list(combinations(range(n), q)) for q in range(n + 1)]
    index = [{S: i for i, S in enumerate(level)} for level in subsets]
    diffs = [None]
    for q in range(1, n + 1):
        M = zeros(len(subsets[q - 1]), len(subsets[q]))
        for col, S in enumerate(subsets[q]):
            for p, s in enumerate(S):
                rest = S[:p] + S[p + 1:]
                M[index[q - 1][rest]][col] = M[index[q - 1][rest]][col] + (-1) ** p * (chi[s] - 1)
        diffs.append(M)
    return [len(level) for level in subsets], diffs


def _is_invariant(A, chi) -> bool:
    n = len(A)
    for j in range(n):
        val = Fraction(1)
        for k in range(n):
            val = val * _power(chi[k], A[k][j])
        if val != chi[j]:
            return False
    return True


def total_complex(dims, diffs, ops):
    """Homology dimensions of the Koszul total complex of commuting chain maps 1 - T_k.

    ``ops[k][q]`` is T_k on K_q. Degree i collects K_(i-|S|) eps_S over S subset of the ops;
    D(w eps_S) = (-1)^|S| dw eps_S + sum_(s in S) sign * (1 - T_s) w eps_(S - s).
    """
    nk = len(ops)
    n = len(dims) - 1
    top = n + nk
    blocks = []
    for i in range(top + 1):
        bl = []
        off = 0
        for size in range(nk + 1):
            for S in combinations(range(nk), size):
                q = i - size
                if 0 <= q <= n:
                    bl.append((S, q, off))
                    off += dims[q]
        blocks.append((bl, off))

    def find(i, S, q):
        for S2, q2, off in blocks[i][0]:
            if S2 == S and q2 == q:
                return off
        return None

    Ds = [None]
    for i in range(1, top + 1):
        bl, width = blocks[i]
        height = blocks[i - 1][1]
        D = zeros(height, width)
        for S, q, off in bl:
            sgn = (-1) ** len(S)
            if q >= 1:
                tgt = find(i - 1, S, q - 1)
                M = diffs[q]
                for r in range(len(M)):
                    for c in range(len(M[0])):
                        if M[r][c]:
                            D[tgt + r][off + c] = D[tgt + r][off + c] + sgn * M[r][c]
            for pos, s in enumerate(S):
                S2 = S[:pos] + S[pos + 1:]
                tgt = find(i - 1, S2, q)
                T = ops[s][q]
                for r in range(dims[q]):
                    for c in range(dims[q]):
                        val = (1 if r == c else 0) - T[r][c]
                        if val:
                            D[tgt + r][off + c] = D[tgt + r][off + c] + (-1) ** pos * val
        Ds.append(D)
    ranks = [0] + [rank(D) if D and D[0] else 0 for D in Ds[1:]] + [0]
    return [blocks[i][1] - ranks[i] - ranks[i + 1] for i in range(top + 1)]


def _monodromy_ops(A, chi, lam, n):
    F = fox_jacobian(A, chi)
    Finv = inverse(to_matrix(F))
    return [[[lam * x for x in r] for r in exterior_power(Finv, q)] for q in range(n + 1)]


def charvar_oracle(G: TorusBundleGroup, chi, lam, degree: int) -> int:
    """dim H_i(G_A, C_rho) for rho = (chi, lam), from the twisted Koszul complex of Z^n and the
    algebraic mapping torus of lam * (induced chain map)^-1."""
    n = G.n
    A = G.A()
    chi = [Fraction(1)] * n if chi in (None, "trivial") else list(chi)
    if len(chi) != n:
        raise ValueError("chi needs one value per fibre generator")
    if any(not x for x in chi) or not lam:
        raise ValueError("characters take nonzero values")
    if not _is_invariant(A, chi):
        raise ValueError("chi is not invariant under the monodromy, so rho is not a character")
    dims, diffs = koszul_complex(chi)
    ops = _monodromy_ops(A, chi, lam, n)
    for q in range(1, n + 1):  # chain map check
        lhs = matmul(diffs[q], ops[q])
        rhs = matmul(ops[q - 1], diffs[q])
        if any(a != b for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb)):
            raise ArithmeticError("monodromy is not a chain map")
    out = total_complex(dims, diffs, [ops])
    return out[degree] if 0 <= degree < len(out) else 0


# ---------------------------------------------------------------------------
# independent degree <= 1 check from the group presentation (Fox calculus)


def presentation(A):
    """Generators t_1..t_n, tau (index n). Words are lists of (generator, +-1)."""
    n = len(A)
    rels = []
    for i, j in combinations(range(n), 2):
        rels.append([(i, 1), (j, 1), (i, -1), (j, -1)])
    for j in range(n):
        word = [(n, 1), (j, 1), (n, -1)]
        image = []
        for k in range(n):
            e = A[k][j]
            image += [(k, 1 if e > 0 else -1)] * abs(e)
        inv = [(g, -e) for g, e in reversed(image)]
        rels.append(word + inv)
    return n + 1, rels


def fox_homology(A, chi, lam) -> list[int]:
    """[dim H_0, dim H_1] of G_A with coefficients rho, from the presentation complex."""
    n = len(A)
    ngen, rels = presentation(A)
    rho = list(chi) + [lam]

    def deriv(word, x):
        acc = Fraction(0)
        prefix = Fraction(1)
        for g, e in word:
            if g == x:
                acc = acc + (prefix if e == 1 else -prefix * _inv(rho[g]))
            prefix = prefix * (rho[g] if e == 1 else _inv(rho[g]))
        return acc

    d2 = [[deriv(r, x) for r in rels] for x in range(ngen)]
    d1 = [[rho[x] - 1 for x in range(ngen)]]
    r1 = rank(d1)
    r2 = rank(d2)
    return [1 - r1, ngen - r1 - r2]


# ---------------------------------------------------------------------------
# one more step of a tower


def _homology_map(Dout, Din, dim, chain_map):
    """Matrix of the map induced on ker(Dout)/im(Din) by a chain-level endomorphism."""
    Z = kernel_basis(Dout, dim) if Dout else [[Fraction(int(i == j)) for i in range(dim)] for j in range(dim)]
    B = [list(col) for col in zip(*Din)] if Din and Din[0] else []
    from .exactnum.linalg import row_space_basis

    Bb = row_space_basis(B) if B else []
    # complete a basis of B to one of Z
    basis = list(Bb)
    reps = []
    for z in Z:
        if rank(basis + [z]) > len(basis):
            basis.append(z)
            reps.append(z)
    k = len(reps)
    if not k:
        return []
    cols = [list(x) for x in zip(*basis)]
    M = zeros(k, k)
    nb = len(Bb)
    for j, z in enumerate(reps):
        img = [sum((chain_map[r][c] * z[c] for c in range(dim)), Fraction(0)) for r in range(dim)]
        coeffs = solve(cols, img)
        if coeffs is None:
            raise ArithmeticError("chain map does not preserve cycles")
        for i in range(k):
            M[i][j] = coeffs[nb + i]
    return M


def _cone_complex(A, lam, n):
    """Differentials and block data of the mapping torus complex at chi = 1."""
    dims, diffs = koszul_complex([Fraction(1)] * n)
    ops = _monodromy_ops(A, [Fraction(1)] * n, lam, n)
    Ds = {}
    size = {}
    for i in range(n + 2):
        size[i] = (dims[i] if i <= n else 0) + (dims[i - 1] if 1 <= i <= n + 1 else 0)
    for i in range(1, n + 2):
        D = zeros(size[i - 1], size[i])
        # block (x in K_i, y in K_(i-1)) -> (x' in K_(i-1), y' in K_(i-2)); chi = 1 so d = 0
        if i <= n:
            off_y = dims[i]
        else:
            off_y = 0
        T = ops[i - 1]
        for r in range(dims[i - 1]):
            for c in range(dims[i - 1]):
                val = (1 if r == c else 0) - T[r][c]
                if val:
                    D[r][off_y + c] = val
        Ds[i] = D
    return dims, size, Ds


def tower_extend(G: TorusBundleGroup, B, degree: int, stage=None) -> CharVariety:
    """V^i_1 of (Z^n x|_A Z) x|_beta Z with beta = B on Z^n and beta(tau) = tau.

    Uses the eigenvalue description on top of the stage varieties: for each stage point
    (1, lam) in degree i or i-1, the eigenvalues of beta on H_*(G_A, C_(1, lam)).
    """
    n = G.n
    A = G.A()
    B = [[int(as_fraction(x)) for x in r] for r in B]
    if len(B) != n or abs(det(B)) != 1:
        raise ValueError("B must be an n x n integer matrix with determinant +-1")
    if matmul(A, B) != matmul(B, A):
        raise ValueError("B must commute with the monodromy")
    if not 0 <= degree <= n + 2:
        raise ValueError(f"degree {degree} out of range 0..{n + 2}")
    stage = stage or {q: charvar(G, q) for q in range(n + 2)}
    points: dict = {}
    for q in (degree, degree - 1):
        if q not in stage or not 0 <= q <= n + 1:
            continue
        for p in stage[q].points:
            if not p.is_rational():
                raise IrrationalIntermediateCharacter(
                    f"stage point roots({_lam_str(p.lam)}) in degree {q} is not rational")
            lam = p.lam
            dims, size, Ds = _cone_complex(A, lam, n)
            # beta acts by Lambda^q B on both blocks
            chain = zeros(size[q], size[q])
            blocks = []
            if q <= n:
                blocks.append((0, exterior_power(B, q)))
            if 1 <= q <= n + 1:
                blocks.append((dims[q] if q <= n else 0, exterior_power(B, q - 1)))
            for off, M in blocks:
                for r in range(len(M)):
                    for c in range(len(M)):
                        chain[off + r][off + c] = M[r][c]
            Hmap = _homology_map(Ds.get(q), Ds.get(q + 1), size[q], chain)
            if Hmap:
                _add_factor_points(points, Hmap, f"H_{q}", prefix=(lam,))
    pts = sorted(points.values(), key=lambda p: (str(p.prefix), not p.is_rational(), _sort_key(p.lam)))
    return CharVariety(degree, pts)


def tower_oracle(G: TorusBundleGroup, B, lam, mu, degree: int) -> int:
    """dim H_i of (Z^n x| Z) x| Z at the character (1, lam, mu) via two commuting operators."""
    n = G.n
    A = G.A()
    one = [Fraction(1)] * n
    dims, diffs = koszul_complex(one)
    T1 = _monodromy_ops(A, one, lam, n)
    T2 = _monodromy_ops([[int(x) for x in r] for r in B], one, mu, n)
    out = total_complex(dims, diffs, [T1, T2])
    return out[degree] if 0 <= degree < len(out) else 0
