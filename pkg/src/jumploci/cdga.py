"""Finite connected CDGAs, Chevalley-Eilenberg algebras and their cohomology.

An element of A^i is a coordinate vector on the degree-i basis. Products are stored
sparsely: ``mult[(p, a, q, b)] = {c: coeff}`` for basis element a of degree p times b
of degree q, landing in degree p+q. The differential is a list of matrices
``d[i]: A^i -> A^(i+1)`` (rows indexed by the target basis).
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .exactnum.linalg import rank, zeros
from .exactnum.scalars import as_fraction
from .liealg import LieAlgebra


class InvalidCDGA(ValueError):
    pass


def _add_into(acc: dict, vec: dict, s):
    for k, c in vec.items():
        v = acc.get(k, Fraction(0)) + s * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


class CDGA:
    def __init__(self, degrees, mult=None, diff=None, name: str = "", check: bool = True,
                 check_assoc: bool = True):
        self.degrees = [tuple(b) for b in degrees]
        self.name = name
        if not self.degrees or len(self.degrees[0]) != 1:
            raise InvalidCDGA("A^0 must be one-dimensional (connected)")
        self.top = len(self.degrees) - 1
        self.dims = [len(b) for b in self.degrees]
        self.mult = {}
        for (p, a, q, b), val in (mult or {}).items():
            if p == 0 or q == 0:
                continue
            if p + q > self.top:
                if any(as_fraction(c) for c in val.values()):
                    raise InvalidCDGA("product lands above the top degree")
                continue
            vec = {int(k): as_fraction(c) for k, c in val.items() if as_fraction(c)}
            key = (p, a, q, b)
            sign = -1 if (p * q) % 2 else 1
            rkey = (q, b, p, a)
            rvec = {k: sign * c for k, c in vec.items()}
            if key in self.mult and self.mult[key] != vec:
                raise InvalidCDGA(f"inconsistent product at {key}")
            if rkey in self.mult and self.mult[rkey] != rvec:
                raise InvalidCDGA(f"graded commutativity fails at {key}")
            self.mult[key] = vec
            self.mult[rkey] = rvec
        n = self.top
        self.d = []
        for i in range(n + 1):
            rows = self.dims[i + 1] if i < n else 0
            M = zeros(rows, self.dims[i])
            if diff is not None and i < len(diff) and diff[i] is not None:
                given = diff[i]
                if len(given) != rows or any(len(r) != self.dims[i] for r in given):
                    raise InvalidCDGA(f"differential d^{i} has the wrong shape")
                M = [[as_fraction(x) for x in r] for r in given]
            self.d.append(M)
        if check:
            self.validate(check_assoc=check_assoc)

    # elementary operations --------------------------------------------
    def basis_product(self, p, a, q, b) -> dict:
        if p == 0:
            return {b: Fraction(1)}
        if q == 0:
            return {a: Fraction(1)}
        return self.mult.get((p, a, q, b), {})

    def product(self, p, x: dict, q, y: dict) -> dict:
        acc: dict = {}
        if p + q > self.top:
            return acc
        for a, ca in x.items():
            for b, cb in y.items():
                _add_into(acc, self.basis_product(p, a, q, b), ca * cb)
        return acc

    def apply_d(self, p, x: dict) -> dict:
        acc: dict = {}
        if p >= self.top:
            return acc
        M = self.d[p]
        for a, c in x.items():
            for r in range(len(M)):
                if M[r][a]:
                    _add_into(acc, {r: M[r][a]}, c)
        return acc

    def left_mult_matrix(self, eta, p: int) -> list[list]:
        """Matrix of x -> eta * x from A^p to A^(p+1), eta in A^1 (coordinate list)."""
        rows = self.dims[p + 1] if p + 1 <= self.top else 0
        M = zeros(rows, self.dims[p])
        if not rows:
            return M
        e = {k: as_fraction(c) for k, c in enumerate(eta) if as_fraction(c)}
        for b in range(self.dims[p]):
            for r, c in self.product(1, e, p, {b: Fraction(1)}).items():
                M[r][b] = c
        return M

    def d1_of(self, eta) -> list:
        """d(eta) in A^2 for eta in A^1."""
        if len(eta) != self.dims[1]:
            raise ValueError(f"1-form needs {self.dims[1]} coordinates")
        if self.top < 2:
            return []
        M = self.d[1]
        return [sum((M[r][k] * as_fraction(eta[k]) for k in range(self.dims[1])), Fraction(0))
                for r in range(self.dims[2])]

    def is_closed(self, eta) -> bool:
        return not any(self.d1_of(eta))

    # validation ---------------------------------------------------------
    def validate(self, check_assoc: bool = True):
        for i in range(self.top + 1):
            if i + 2 <= self.top:
                M1, M2 = self.d[i], self.d[i + 1]
                for r in range(self.dims[i + 2]):
                    for c in range(self.dims[i]):
                        if sum((M2[r][k] * M1[k][c] for k in range(self.dims[i + 1])), Fraction(0)):
                            raise InvalidCDGA(f"d^{i + 1} d^{i} != 0")
        if self.top >= 1 and any(x for r in self.d[0] for x in r):
            raise InvalidCDGA("d(1) must vanish")
        elems = [(p, a) for p in range(1, self.top + 1) for a in range(self.dims[p])]
        for (p, a) in elems:
            for (q, b) in elems:
                if p + q > self.top:
                    continue
                ab = self.basis_product(p, a, q, b)
                lhs = self.apply_d(p + q, ab)
                rhs: dict = {}
                if p + 1 + q <= self.top:
                    _add_into(rhs, self.product(p + 1, self.apply_d(p, {a: 1}), q, {b: 1}), 1)
                    _add_into(rhs, self.product(p, {a: 1}, q + 1, self.apply_d(q, {b: 1})),
                              -1 if p % 2 else 1)
                if lhs != rhs:
                    raise InvalidCDGA(f"Leibniz rule fails on ({self.degrees[p][a]}, {self.degrees[q][b]})")
        if check_assoc:
            for (p, a) in elems:
                for (q, b) in elems:
                    if p + q >= self.top:
                        continue
                    ab = self.basis_product(p, a, q, b)
                    for (r, c) in elems:
                        if p + q + r > self.top:
                            continue
                        left = self.product(p + q, ab, r, {c: 1})
                        right = self.product(p, {a: 1}, q + r, self.basis_product(q, b, r, c))
                        if left != right:
                            raise InvalidCDGA("multiplication is not associative")
        return True

    # cohomology ---------------------------------------------------------
    def ranks(self) -> list[int]:
        return [rank(M) if M and M[0] else 0 for M in self.d]

    def betti(self) -> list[int]:
        rk = self.ranks()
        return [self.dims[i] - rk[i] - (rk[i - 1] if i else 0) for i in range(self.top + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.dims))

    def h1_basis(self) -> list:
        """Closed 1-forms spanning H^1 (exact 1-forms are zero since A^0 = C)."""
        from .exactnum.linalg import kernel_basis

        if self.top < 2:
            return kernel_basis([], self.dims[1]) if self.top >= 1 else []
        return kernel_basis(self.d[1], self.dims[1])

    # json -----------------------------------------------------------------
    def to_json(self) -> dict:
        prods = []
        for (p, a, q, b), v in sorted(self.mult.items()):
            if (p, a) <= (q, b) and v:
                prods.append({"left": [p, a], "right": [q, b],
                              "value": {str(k): str(c) for k, c in sorted(v.items())}})
        diff = []
        for i, M in enumerate(self.d):
            for src in range(self.dims[i]):
                val = {str(r): str(M[r][src]) for r in range(len(M)) if M[r][src]}
                if val:
                    diff.append({"degree": i, "source": src, "value": val})
        return {"name": self.name, "degrees": [list(b) for b in self.degrees],
                "products": prods, "differential": diff}

    @classmethod
    def from_json(cls, data: dict) -> CDGA:
        degrees = data["degrees"]
        mult = {}
        for e in data.get("products", []):
            p, a = e["left"]
            q, b = e["right"]
            mult[(int(p), int(a), int(q), int(b))] = {int(k): as_fraction(v) for k, v in e["value"].items()}
        dims = [len(b) for b in degrees]
        diff = [zeros(dims[i + 1] if i + 1 < len(dims) else 0, dims[i]) for i in range(len(dims))]
        for e in data.get("differential", []):
            i, src = int(e["degree"]), int(e["source"])
            if i + 1 >= len(dims):
                raise InvalidCDGA("differential out of the top degree")
            for k, v in e["value"].items():
                diff[i][int(k)][src] = as_fraction(v)
        return cls(degrees, mult, diff, name=data.get("name", ""))

    @classmethod
    def load(cls, path) -> CDGA:
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        return f"CDGA({self.name or self.dims})"


# ---------------------------------------------------------------------------
# exterior algebras


def _wedge_sign(S, T):
    """Sign and sorted union for e_S ^ e_T (0 when they overlap)."""
    if set(S) & set(T):
        return 0, None
    inv = sum(1 for s in S for t in T if s > t)
    return (-1) ** inv, tuple(sorted(S + T))


def chevalley_eilenberg(h: LieAlgebra) -> CDGA:
    """(Lambda h*, d) with d xi(x, y) = -xi([x, y]) on 1-forms, i.e.
    d xi^k = -sum_{i<j} c^k_ij xi^i ^ xi^j, extended as a derivation."""
    n = h.dim
    subsets = [list(combinations(range(n), k)) for k in range(n + 1)]
    index = [{S: i for i, S in enumerate(level)} for level in subsets]
    names = [["1"]] + [["^".join(f"{h.basis[i]}*" for i in S) for S in level] for level in subsets[1:]]
    mult = {}
    for p in range(1, n + 1):
        for a, S in enumerate(subsets[p]):
            for q in range(1, n - p + 1):
                for b, T in enumerate(subsets[q]):
                    sgn, U = _wedge_sign(S, T)
                    if sgn:
                        mult[(p, a, q, b)] = {index[p + q][U]: sgn}
    # differential of generators, as dicts on 2-subsets
    dgen = []
    for k in range(n):
        vec = {}
        for (i, j), v in h.brackets.items():
            c = v.get(k)
            if c:
                vec[(i, j)] = vec.get((i, j), Fraction(0)) - c
        dgen.append(vec)
    diff = []
    for p in range(n + 1):
        M = zeros(len(subsets[p + 1]) if p < n else 0, len(subsets[p]))
        if p < n:
            for col, S in enumerate(subsets[p]):
                for pos, s in enumerate(S):
                    before, after = S[:pos], S[pos + 1:]
                    sign0 = (-1) ** pos
                    for pair, c in dgen[s].items():
                        s1, U = _wedge_sign(before, pair)
                        if not s1:
                            continue
                        s2, W = _wedge_sign(U, after)
                        if not s2:
                            continue
                        M[index[p + 1][W]][col] += sign0 * s1 * s2 * c
        diff.append(M)
    A = CDGA(names, mult, diff, name=f"CE({h.name or 'h'})", check=False)
    A.validate(check_assoc=False)
    A.lie = h
    return A


def free_model(n: int) -> CDGA:
    """H^*(C minus n points) with zero differential: A^1 of dimension n, nothing above."""
    if n < 1:
        raise ValueError("need n >= 1")
    return CDGA([["1"], [f"a{i + 1}" for i in range(n)]], {}, None, name=f"free{n}")


def betti(A: CDGA) -> list[int]:
    return A.betti()
