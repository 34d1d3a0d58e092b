"""Finite-dimensional Lie algebras given by structure constants.

Brackets are stored for basis pairs i < j as ``{(i, j): {k: coeff}}`` meaning
[e_i, e_j] = sum_k coeff * e_k; antisymmetry is implicit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactnum.linalg import kernel_basis, matmul, rank, row_space_basis, rref, zeros
from .exactnum.scalars import as_fraction


class InvalidLieAlgebra(ValueError):
    def __init__(self, report):
        super().__init__(report.message)
        self.report = report


@dataclass
class ValidationReport:
    ok: bool
    triple: tuple | None = None
    message: str = "ok"

    def __bool__(self):
        return self.ok


class LieAlgebra:
    def __init__(self, basis, brackets=None, name: str = "", check: bool = True):
        self.basis = tuple(basis)
        self.name = name
        n = self.dim = len(self.basis)
        self.brackets = {}
        for (i, j), val in (brackets or {}).items():
            i, j = int(i), int(j)
            vec = {int(k): as_fraction(c) for k, c in val.items() if as_fraction(c)}
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in vec):
                raise ValueError(f"bracket index out of range at ({i}, {j})")
            if i == j:
                if vec:
                    raise ValueError("[e_i, e_i] must vanish")
                continue
            if i > j:
                i, j = j, i
                vec = {k: -c for k, c in vec.items()}
            if vec:
                self.brackets[(i, j)] = vec
        # dense table[i][j] = coordinate vector of [e_i, e_j]
        self.table = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in self.brackets.items():
            for k, c in vec.items():
                self.table[i][j][k] = c
                self.table[j][i][k] = -c
        if check:
            report = self.validate()
            if not report:
                raise InvalidLieAlgebra(report)

    # brackets ---------------------------------------------------------
    def bracket(self, u, v) -> list:
        n = self.dim
        out = [Fraction(0)] * n
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj or i == j:
                    continue
                row = self.table[i][j]
                s = ui * vj
                for k in range(n):
                    if row[k]:
                        out[k] += s * row[k]
        return out

    def unit(self, i: int) -> list:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def ad(self, x) -> list[list]:
        """Matrix of ad(x) (columns are images of basis vectors)."""
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def validate(self) -> ValidationReport:
        """Check the Jacobi identity on all basis triples."""
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            ei, ej, ek = self.unit(i), self.unit(j), self.unit(k)
            s1 = self.bracket(ei, self.bracket(ej, ek))
            s2 = self.bracket(ej, self.bracket(ek, ei))
            s3 = self.bracket(ek, self.bracket(ei, ej))
            if any(a + b + c for a, b, c in zip(s1, s2, s3)):
                names = (self.basis[i], self.basis[j], self.basis[k])
                return ValidationReport(False, names, f"Jacobi identity fails at {names}")
        return ValidationReport(True)

    # series -----------------------------------------------------------
    def bracket_span(self, U, W) -> list:
        vecs = [self.bracket(u, w) for u in U for w in W]
        return row_space_basis(vecs) if vecs else []

    def lower_central_series(self) -> list:
        full = [self.unit(i) for i in range(self.dim)]
        series = [full]
        cur = full
        while True:
            nxt = self.bracket_span(full, cur)
            series.append(nxt)
            if len(nxt) == len(cur):
                return series
            cur = nxt

    def derived_series(self) -> list:
        cur = [self.unit(i) for i in range(self.dim)]
        series = [cur]
        while True:
            nxt = self.bracket_span(cur, cur)
            series.append(nxt)
            if len(nxt) == len(cur):
                return series
            cur = nxt

    def is_nilpotent(self) -> bool:
        return not self.lower_central_series()[-1]

    def is_solvable(self) -> bool:
        return not self.derived_series()[-1]

    def h1(self):
        """(dim, basis of (h/[h,h])^*) with dual vectors in coordinates of h*."""
        D = self.bracket_span([self.unit(i) for i in range(self.dim)],
                              [self.unit(i) for i in range(self.dim)])
        if not D:
            return self.dim, [self.unit(i) for i in range(self.dim)]
        dual = kernel_basis(D, self.dim)
        return len(dual), dual

    def h1_dim(self) -> int:
        return self.h1()[0]

    def is_hom_to(self, other: LieAlgebra, phi) -> bool:
        """phi: matrix other.dim x self.dim."""
        for i, j in combinations(range(self.dim), 2):
            lhs = _apply(phi, self.table[i][j])
            rhs = other.bracket(_col(phi, i), _col(phi, j))
            if lhs != rhs:
                return False
        return True

    # json -------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": [
                {"left": i, "right": j, "value": {str(k): str(c) for k, c in sorted(v.items())}}
                for (i, j), v in sorted(self.brackets.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> LieAlgebra:
        basis = data.get("basis") or [f"e{i}" for i in range(data["dim"])]
        if "dim" in data and int(data["dim"]) != len(basis):
            raise ValueError("dim does not match basis length")
        brackets = {}
        for entry in data.get("brackets", []):
            key = (int(entry["left"]), int(entry["right"]))
            if key in brackets or key[::-1] in brackets:
                raise ValueError(f"duplicate bracket entry {key}")
            brackets[key] = {int(k): as_fraction(v) for k, v in entry["value"].items()}
        return cls(basis, brackets, name=data.get("name", ""), check=check)

    @classmethod
    def load(cls, path) -> LieAlgebra:
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        return f"LieAlgebra({self.name or self.basis})"


def _col(M, j):
    return [row[j] for row in M]


def _apply(M, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in M]


# ---------------------------------------------------------------------------
# catalog


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra([f"x{i + 1}" for i in range(n)], {}, name=f"abelian{n}")


def heisenberg(k: int = 1) -> LieAlgebra:
    """Dimension 2k+1: [x_i, y_i] = z."""
    if k == 1:
        basis = ["x", "y", "z"]
    else:
        basis = [f"x{i + 1}" for i in range(k)] + [f"y{i + 1}" for i in range(k)] + ["z"]
    br = {(i, k + i): {2 * k: 1} for i in range(k)}
    return LieAlgebra(basis, br, name=f"heis{2 * k + 1}")


def aff1() -> LieAlgebra:
    """[u, x] = x."""
    return LieAlgebra(["u", "x"], {(0, 1): {1: 1}}, name="aff1")


def sl2() -> LieAlgebra:
    """Basis H, X+, X- with [X+, X-] = H, [H, X+] = 2X+, [H, X-] = -2X-."""
    return LieAlgebra(["H", "Xp", "Xm"],
                      {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, name="sl2")


def borel() -> LieAlgebra:
    return LieAlgebra(["H", "Xp"], {(0, 1): {1: 2}}, name="borel")


def metabelian(jordan_data) -> LieAlgebra:
    """V x| C with u acting on V in Jordan form: [u, z_1] = lam z_1, [u, z_i] = lam z_i + z_{i-1}
    inside each block. Basis: the z's block by block, then u."""
    blocks = [(as_fraction(lam), int(r)) for lam, r in jordan_data]
    if not blocks or any(r < 1 for _, r in blocks):
        raise ValueError("need at least one Jordan block of positive size")
    names = []
    for b, (_, r) in enumerate(blocks):
        for i in range(r):
            names.append(f"z{i + 1}" if len(blocks) == 1 else f"z{b + 1}_{i + 1}")
    u = len(names)
    br = {}
    pos = 0
    for lam, r in blocks:
        for i in range(r):
            val = {}
            if lam:
                val[pos + i] = -lam
            if i:
                val[pos + i - 1] = Fraction(-1)
            if val:
                br[(pos + i, u)] = val  # [z, u] = -[u, z]
        pos += r
    label = ",".join(f"({lam},{r})" for lam, r in blocks)
    return LieAlgebra(names + ["u"], br, name=f"metabelian[{label}]")


def jordan_blocks_layout(jordan_data):
    """[(lam, [indices of z_1..z_r])] in the basis of metabelian(jordan_data)."""
    out, pos = [], 0
    for lam, r in jordan_data:
        out.append((as_fraction(lam), list(range(pos, pos + int(r)))))
        pos += int(r)
    return out


CATALOG = {
    "abelian1": lambda: abelian(1),
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "heis3": lambda: heisenberg(1),
    "heis5": lambda: heisenberg(2),
    "aff1": aff1,
    "sl2": sl2,
    "borel": borel,
    "metab21": lambda: metabelian([(2, 1)]),
    "metab22": lambda: metabelian([(2, 2)]),
    "metab02": lambda: metabelian([(0, 2)]),
    "metab21_01": lambda: metabelian([(2, 1), (0, 1)]),
    "metab21_31": lambda: metabelian([(2, 1), (3, 1)]),
}


def catalog(name: str | None = None):
    if name is None:
        return {k: f() for k, f in CATALOG.items()}
    if name not in CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {sorted(CATALOG)}")
    return CATALOG[name]()


# ---------------------------------------------------------------------------
# Levi-form input, semidirect products and the quotient by the action ideal


@dataclass
class LeviInput:
    """h = s x|_alpha g; ``action[y]`` is the matrix of alpha(e_y) on s."""

    s: LieAlgebra
    g: LieAlgebra
    action: list = field(default_factory=list)

    def __post_init__(self):
        self.action = [[[as_fraction(x) for x in row] for row in M] for M in self.action]
        if len(self.action) != self.g.dim:
            raise ValueError("one action matrix per basis element of g")
        n = self.s.dim
        for M in self.action:
            if len(M) != n or any(len(r) != n for r in M):
                raise ValueError("action matrices must be dim s x dim s")
        self.check()

    def check(self):
        s, g = self.s, self.g
        for y, D in enumerate(self.action):
            for i, j in combinations(range(s.dim), 2):
                lhs = _apply(D, s.table[i][j])
                rhs = [a + b for a, b in zip(s.bracket(_col(D, i), s.unit(j)),
                                              s.bracket(s.unit(i), _col(D, j)))]
                if lhs != rhs:
                    raise ValueError(f"alpha({g.basis[y]}) is not a derivation of s")
        for a, b in combinations(range(g.dim), 2):
            comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in
                    zip(matmul(self.action[a], self.action[b]), matmul(self.action[b], self.action[a]))]
            target = zeros(s.dim, s.dim)
            for k, c in enumerate(g.table[a][b]):
                if c:
                    target = [[t + c * x for t, x in zip(tr, xr)] for tr, xr in zip(target, self.action[k])]
            if comm != target:
                raise ValueError("alpha is not a Lie homomorphism into Der(s)")
        if not s.is_solvable():
            raise ValueError("s must be solvable")

    @classmethod
    def from_json(cls, data: dict) -> LeviInput:
        return cls(LieAlgebra.from_json(data["s"]), LieAlgebra.from_json(data["g"]),
                   [[[as_fraction(x) for x in row] for row in M] for M in data["action"]])


def semidirect(levi: LeviInput) -> LieAlgebra:
    """Basis: s then g; [y, x] = alpha(y) x."""
    s, g = levi.s, levi.g
    ns = s.dim
    br = {}
    for (i, j), v in s.brackets.items():
        br[(i, j)] = dict(v)
    for (i, j), v in g.brackets.items():
        br[(ns + i, ns + j)] = {ns + k: c for k, c in v.items()}
    for y, D in enumerate(levi.action):
        for x in range(ns):
            val = {k: -D[k][x] for k in range(ns) if D[k][x]}
            if val:
                br[(x, ns + y)] = val  # [x, y] = -alpha(y)x
    return LieAlgebra(list(s.basis) + list(g.basis), br, name=f"{s.name or 's'}x|{g.name or 'g'}")


def action_ideal(levi: LeviInput) -> list:
    """Basis of the ideal of s generated by all alpha(y)x."""
    s = levi.s
    gens = [_col(D, x) for D in levi.action for x in range(s.dim)]
    span = row_space_basis(gens) if gens else []
    full = [s.unit(i) for i in range(s.dim)]
    while True:
        bigger = row_space_basis(span + [s.bracket(a, b) for a in full for b in span]) if span else []
        if len(bigger) == len(span):
            return span
        span = bigger


def tilde_quotient(levi: LeviInput):
    """(s~, q) with s~ = s / (ideal generated by alpha(y)x) and q the quotient matrix."""
    s = levi.s
    ideal = action_ideal(levi)
    if ideal:
        R, pivots = rref(ideal)
        R = R[: len(pivots)]
    else:
        R, pivots = [], []
    free = [j for j in range(s.dim) if j not in pivots]

    def reduce(v):
        v = list(v)
        for row, p in zip(R, pivots):
            if v[p]:
                c = v[p]
                v = [a - c * b for a, b in zip(v, row)]
        return [v[j] for j in free]

    q = [[Fraction(0)] * s.dim for _ in free]
    for j in range(s.dim):
        col = reduce(s.unit(j))
        for a in range(len(free)):
            q[a][j] = col[a]
    br = {}
    for a, b in combinations(range(len(free)), 2):
        val = reduce(s.table[free[a]][free[b]])
        vec = {k: c for k, c in enumerate(val) if c}
        if vec:
            br[(a, b)] = vec
    st = LieAlgebra([s.basis[j] for j in free], br, name=f"{s.name or 's'}~")
    return st, q


def sl2_on_c2() -> LeviInput:
    """C^2 (abelian) with sl2 acting by the defining representation."""
    from .sl2 import sl2_irrep

    th = sl2_irrep(2)
    return LeviInput(abelian(2), sl2(), [[list(r) for r in X] for X in th.matrices()])


def sl2_on_c2_plus_c() -> LeviInput:
    """C^2 + C abelian, sl2 acting on the first summand only."""
    from .sl2 import sl2_irrep

    th = sl2_irrep(2)
    mats = []
    for X in th.matrices():
        M = zeros(3, 3)
        for i in range(2):
            for j in range(2):
                M[i][j] = X[i][j]
        mats.append(M)
    return LeviInput(abelian(3), sl2(), mats)


def quotient_is_hom(levi: LeviInput, st: LieAlgebra, q) -> bool:
    return levi.s.is_hom_to(st, q) and rank(q) == st.dim if st.dim else True
