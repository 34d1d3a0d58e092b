"""Flat g-valued connections, Lie representation varieties and exact section solving.

A GOneForm is a coefficient matrix: rows indexed by a basis of A^1 (or of a Lie
algebra h, for homomorphisms h -> g), columns by a basis of g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .cdga import CDGA
from .exactnum.linalg import rank, to_matrix, zeros
from .exactnum.scalars import QuadScalar, as_fraction, sqrt_rational
from .exactnum.upoly import UPoly, factor_rational, upoly_gcd
from .liealg import LieAlgebra, jordan_blocks_layout, metabelian, sl2
from .poly import MultiPoly


class NilpotentInput(ValueError):
    pass


class GOneForm:
    """omega = sum_i eta_i (x) g_i, stored as matrix[i][k] = g_i's k-th coordinate."""

    def __init__(self, matrix, rows=None, cols=None):
        self.matrix = [list(r) for r in matrix]
        self.rows = tuple(rows) if rows else None
        self.cols = tuple(cols) if cols else None

    @property
    def shape(self):
        return len(self.matrix), (len(self.matrix[0]) if self.matrix else 0)

    def row(self, i):
        return self.matrix[i]

    def rank(self) -> int:
        return rank(self.matrix) if self.matrix and self.matrix[0] else 0

    def is_zero(self) -> bool:
        return not any(x for r in self.matrix for x in r)

    def scaled(self, t) -> GOneForm:
        return GOneForm([[t * x for x in r] for r in self.matrix], self.rows, self.cols)

    def to_json(self):
        return [[str(x) for x in r] for r in self.matrix]

    def __repr__(self):
        return f"GOneForm({self.to_json()})"


def zero_form(m: int, n: int) -> GOneForm:
    return GOneForm(zeros(m, n))


def _bracket(k: LieAlgebra, u, v):
    """[u, v] in k for coordinate vectors with entries in any commutative ring."""
    n = k.dim
    out = [Fraction(0)] * n
    for i in range(n):
        ui = u[i]
        if not ui:
            continue
        for j in range(n):
            vj = v[j]
            if i == j or not vj:
                continue
            row = k.table[i][j]
            prod = None
            for t in range(n):
                if row[t]:
                    if prod is None:
                        prod = ui * vj
                    out[t] = out[t] + prod * row[t]
    return out


# ---------------------------------------------------------------------------
# flat connections on CDGAs


def mc_defect(A: CDGA, g: LieAlgebra, omega: GOneForm) -> list[list]:
    """d omega + 1/2 [omega, omega] in A^2 (x) g, as a (dim A^2) x (dim g) matrix."""
    m, n = omega.shape
    if m != A.dims[1] or n != g.dim:
        raise ValueError("omega does not live in A^1 (x) g")
    rows = A.dims[2] if A.top >= 2 else 0
    out = [[Fraction(0)] * n for _ in range(rows)]
    if not rows:
        return out
    d1 = A.d[1]
    W = omega.matrix
    for r in range(rows):
        for i in range(m):
            if d1[r][i]:
                for k in range(n):
                    out[r][k] = out[r][k] + d1[r][i] * W[i][k]
    for i, j in combinations(range(m), 2):
        prod = A.basis_product(1, i, 1, j)
        if not prod:
            continue
        br = _bracket(g, W[i], W[j])
        if not any(br):
            continue
        for r, c in prod.items():
            for k in range(n):
                out[r][k] = out[r][k] + c * br[k]
    return out


def is_flat(A: CDGA, g: LieAlgebra, omega: GOneForm) -> bool:
    return not any(x for r in mc_defect(A, g, omega) for x in r)


def segre(eta, gvec) -> GOneForm:
    """eta (x) g as a rank <= 1 coefficient matrix."""
    return GOneForm([[as_fraction(e) * as_fraction(x) for x in gvec] for e in eta])


def segre_factors(omega: GOneForm):
    """(eta, g) with omega = eta (x) g, or None when rank > 1. Zero gives (0, 0)."""
    W = omega.matrix
    m, n = omega.shape
    if omega.rank() > 1:
        return None
    for k in range(n):
        col = [W[i][k] for i in range(m)]
        if any(col):
            i0 = next(i for i in range(m) if col[i])
            g = [x / W[i0][k] for x in W[i0]]
            return col, g
    return [Fraction(0)] * m, [Fraction(0)] * n


def in_F1(A: CDGA, omega: GOneForm) -> bool:
    """Rank <= 1 and the A^1-side factor is closed."""
    fac = segre_factors(omega)
    if fac is None:
        return False
    return A.is_closed(fac[0])


# ---------------------------------------------------------------------------
# homomorphisms of Lie algebras


def hom_defect(h: LieAlgebra, k: LieAlgebra, phi: GOneForm) -> dict:
    """{(i, j): phi[e_i, e_j] - [phi e_i, phi e_j]} over basis pairs i < j (nonzero only)."""
    m, n = phi.shape
    if m != h.dim or n != k.dim:
        raise ValueError("phi must be a dim h x dim k matrix")
    W = phi.matrix
    out = {}
    for i, j in combinations(range(m), 2):
        lhs = [Fraction(0)] * n
        for t, c in enumerate(h.table[i][j]):
            if c:
                for col in range(n):
                    lhs[col] = lhs[col] + c * W[t][col]
        br = _bracket(k, W[i], W[j])
        vec = [a - b for a, b in zip(lhs, br)]
        if any(vec):
            out[(i, j)] = vec
    return out


def is_hom(h: LieAlgebra, k: LieAlgebra, phi: GOneForm) -> bool:
    return not hom_defect(h, k, phi)


SL2_NAMES = ("H", "Xp", "Xm")


def hom_var(hname: str, gname: str) -> str:
    return f"{hname}.{gname}"


def hom_vars(h: LieAlgebra, k_names=SL2_NAMES) -> tuple:
    return tuple(hom_var(b, g) for b in h.basis for g in k_names)


def form_to_values(h: LieAlgebra, phi: GOneForm, k_names=SL2_NAMES) -> dict:
    return {hom_var(b, g): phi.matrix[i][j] for i, b in enumerate(h.basis) for j, g in enumerate(k_names)}


def _det_sl2(vec):
    a, b, c = vec
    return -a * a - b * c


def _sl2_of(jordan_data):
    return metabelian(jordan_data), sl2()


def metabelian_family(jordan_data, lam, eps: int, t) -> GOneForm:
    """The rank-two homomorphism h -> sl2 with u -> (lam / 2eps) H and z_i -> t_i X_eps on
    the lam-blocks (``t`` lists their z's in order), zero on the other blocks."""
    lam = as_fraction(lam)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    layout = jordan_blocks_layout(jordan_data)
    if not lam or all(l != lam for l, _ in layout):
        raise ValueError(f"{lam} is not a nonzero eigenvalue of the Jordan data")
    h = metabelian(jordan_data)
    blocks = [idx for l, idx in layout if l == lam]
    t = [as_fraction(x) for x in t]
    if len(t) != sum(len(b) for b in blocks):
        raise ValueError("t must list one coefficient per z in the lam-blocks")
    M = zeros(h.dim, 3)
    pos = 0
    any_top = False
    for idx in blocks:
        r = len(idx)
        for i, zi in enumerate(idx):
            ti = t[pos + i]
            if ti and i < r - 1:
                raise ValueError("t_i must vanish below the top of each block")
            if ti and i == r - 1:
                any_top = True
            M[zi][1 if eps == 1 else 2] = ti
        pos += r
    if not any_top:
        raise ValueError("at least one block needs t_r != 0")
    M[h.dim - 1][0] = lam / (2 * eps)
    return GOneForm(M, h.basis, SL2_NAMES)


def metabelian_certificate(jordan_data) -> MultiPoly:
    """prod over distinct nonzero eigenvalues of (det U + lam^2/4), U = phi(u)."""
    h = metabelian(jordan_data)
    lams = sorted({l for l, _ in jordan_blocks_layout(jordan_data) if l})
    if not lams:
        raise NilpotentInput("metabelian algebra is nilpotent (no nonzero eigenvalue)")
    variables = hom_vars(h)
    a, b, c = (MultiPoly.var(hom_var("u", g), variables) for g in SL2_NAMES)
    detU = -a * a - b * c
    f = MultiPoly.const(1, variables)
    for lam in lams:
        f = f * (detU + lam * lam / 4)
    return f


# --- GL2 normal form -------------------------------------------------------


def _to_mat(vec):
    a, b, c = vec
    return [[a, b], [c, -a]]


def _from_mat(M):
    return [M[0][0], M[0][1], M[1][0]]


def _mul2(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def _eigvec(vec, mu):
    a, b, c = vec
    for v in ([b, mu - a], [mu + a, c]):
        if v[0] or v[1]:
            return v
    return [Fraction(1), Fraction(0)] if mu == a else [Fraction(0), Fraction(1)]


@dataclass
class Classification:
    kind: str                     # rank-one | metabelian-normal-form | other | not-a-hom
    lam: object = None
    eps: int | None = None
    t: list = field(default_factory=list)
    conjugator: list | None = None
    detail: str = ""

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "metabelian-normal-form":
            out.update(lam=str(self.lam), eps=self.eps, t=[str(x) for x in self.t])
        if self.detail:
            out["detail"] = self.detail
        return out


def classify_metabelian_hom(jordan_data, phi: GOneForm) -> Classification:
    """Rank-one, or the explicit rank-two normal form after GL2 conjugation, or other."""
    h, k = _sl2_of(jordan_data)
    if hom_defect(h, k, phi):
        return Classification("not-a-hom")
    if phi.rank() <= 1:
        return Classification("rank-one")
    W = phi.matrix
    U = W[h.dim - 1]
    mu2 = U[0] * U[0] + U[1] * U[2]
    if not mu2:
        return Classification("other", detail="phi(u) is nilpotent")
    try:
        mu2 = as_fraction(mu2)
    except (ValueError, TypeError):
        return Classification("other", detail="phi(u) has irrational determinant")
    mu = sqrt_rational(mu2)
    vp, vm = _eigvec(U, mu), _eigvec(U, -mu)
    P = [[vp[0], vm[0]], [vp[1], vm[1]]]
    det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    Pinv = [[P[1][1] / det, -P[0][1] / det], [-P[1][0] / det, P[0][0] / det]]

    def conj(vec):
        return _from_mat(_mul2(_mul2(Pinv, _to_mat(vec)), P))

    Uc = conj(U)
    if Uc[1] or Uc[2] or Uc[0] != mu:
        return Classification("other", detail="diagonalization failed")
    Z = [conj(W[i]) for i in range(h.dim - 1)]
    eps = None
    for z in Z:
        if z[0] or (z[1] and z[2]):
            return Classification("other", detail="z-image not on a root line")
        if z[1] or z[2]:
            e = 1 if z[1] else -1
            if eps is not None and e != eps:
                return Classification("other", detail="z-images on both root lines")
            eps = e
    if eps is None:
        return Classification("other", detail="phi vanishes on V")
    lam = 2 * eps * mu
    if isinstance(lam, QuadScalar) and not lam.is_rational():
        return Classification("other", detail="irrational weight")
    lam = as_fraction(lam)
    col = 1 if eps == 1 else 2
    t, any_top = [], False
    for l, idx in jordan_blocks_layout(jordan_data):
        for i, zi in enumerate(idx):
            ti = Z[zi][col]
            if l != lam:
                if ti:
                    return Classification("other", detail=f"nonzero on block {l}")
                continue
            if ti and i < len(idx) - 1:
                return Classification("other", detail="t_i nonzero below block top")
            any_top = any_top or (bool(ti) and i == len(idx) - 1)
            t.append(ti)
    if not any_top or not lam:
        return Classification("other", detail="no admissible block")
    return Classification("metabelian-normal-form", lam, eps, t, P)


# ---------------------------------------------------------------------------
# exact solving on low-dimensional affine sections


class SectionError(ValueError):
    pass


def _section_form(base, dirs, params):
    """phi = base + sum_p params[p] * dirs[p], entries MultiPoly in the parameters."""
    m = len(base)
    n = len(base[0]) if m else 0
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            e = MultiPoly.const(base[i][j], params)
            for p, D in zip(params, dirs):
                if D[i][j]:
                    e = e + MultiPoly.var(p, params) * D[i][j]
            row.append(e)
        out.append(row)
    return out


def _to_upoly(f: MultiPoly, var: str) -> UPoly:
    g = f.with_vars((var,))
    cs = [Fraction(0)] * (g.total_degree() + 1 if g.terms else 0)
    for (e,), c in g.terms.items():
        cs[e] = c
    return UPoly(cs)


def _bivariate(f: MultiPoly, s="s", w="w") -> dict:
    """Q[s][w] view: {w-degree: UPoly in s}."""
    g = f.with_vars((s, w))
    out: dict = {}
    for (es, ew), c in g.terms.items():
        cs = list(out.get(ew, UPoly()).coeffs) + [Fraction(0)] * (es + 1)
        cs[es] = cs[es] + c
        out[ew] = UPoly(cs)
    return {k: v for k, v in out.items() if v}


def _bdeg(P):
    return max(P) if P else -1


def _bmul_upoly(P, u):
    return {k: v * u for k, v in P.items() if v * u}


def _bsub(P, Q):
    out = dict(P)
    for k, v in Q.items():
        out[k] = out.get(k, UPoly()) - v
    return {k: v for k, v in out.items() if v}


def _bshift(P, d):
    return {k + d: v for k, v in P.items()}


def _content(P) -> UPoly:
    g = UPoly()
    for v in P.values():
        g = upoly_gcd(g, v) if g else v.monic()
    return g


def _primitive(P):
    c = _content(P)
    return {k: v.exact_div(c) for k, v in P.items()}


def _bgcd(A, B):
    """gcd in Q[s][w] (up to units) by the primitive remainder sequence."""
    if not A:
        return B
    if not B:
        return A
    c = upoly_gcd(_content(A), _content(B))
    A, B = _primitive(A), _primitive(B)
    if _bdeg(A) < _bdeg(B):
        A, B = B, A
    while B:
        if _bdeg(B) == 0:
            A = {0: UPoly([1])}
            break
        R = A
        lb = B[_bdeg(B)]
        while R and _bdeg(R) >= _bdeg(B):
            lr = R[_bdeg(R)]
            R = _bsub(_bmul_upoly(R, lb), _bshift(_bmul_upoly(B, lr), _bdeg(R) - _bdeg(B)))
        A, B = B, (_primitive(R) if R else {})
    return _bmul_upoly(_primitive(A), c)


def _bdiv(A, B):
    """Exact quotient A / B in Q[s][w]."""
    Q: dict = {}
    R = dict(A)
    db = _bdeg(B)
    lb = B[db]
    while R:
        dr = _bdeg(R)
        if dr < db:
            raise ArithmeticError("inexact bivariate division")
        q, rem = divmod(R[dr], lb)
        if rem:
            raise ArithmeticError("inexact bivariate division")
        Q[dr - db] = Q.get(dr - db, UPoly()) + q
        R = _bsub(R, _bshift(_bmul_upoly(B, q), dr - db))
    return {k: v for k, v in Q.items() if v}


def _upoly_det(M) -> UPoly:
    """Bareiss determinant over Q[s]."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return UPoly([1])
    sign = 1
    prev = UPoly([1])
    for k in range(n - 1):
        if not A[k][k]:
            piv = next((i for i in range(k + 1, n) if A[i][k]), None)
            if piv is None:
                return UPoly()
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def _resultant_w(P, Q) -> UPoly:
    dp, dq = _bdeg(P), _bdeg(Q)
    if dp == 0:
        return P[0] ** dq
    if dq == 0:
        return Q[0] ** dp
    size = dp + dq
    rows = []
    for i in range(dq):
        row = [UPoly()] * size
        for k, v in P.items():
            row[i + dp - k] = v
        rows.append(row)
    for i in range(dp):
        row = [UPoly()] * size
        for k, v in Q.items():
            row[i + dq - k] = v
        rows.append(row)
    return _upoly_det(rows)


def _roots_exact(p: UPoly):
    """(explicit roots, unresolved factor strings) of a rational polynomial."""
    fac = factor_rational(p)
    unresolved = [f.to_str("s") for f, _ in fac.higher]
    return fac.explicit_roots(), unresolved


def _roots_general(p: UPoly):
    """Roots of a polynomial with Fraction/QuadScalar coefficients, within one context."""
    p = p.monic()
    if p.degree <= 0:
        return [], []
    if p.is_rational():
        p = UPoly([as_fraction(c) for c in p.coeffs])
        return _roots_exact(p)
    if p.degree == 1:
        return [-p.coeffs[0]], []
    if p.degree == 2:
        c0, c1 = p.coeffs[0], p.coeffs[1]
        disc = c1 * c1 - 4 * c0
        if isinstance(disc, QuadScalar) and not disc.is_rational():
            return [], [f"quadratic over Q(sqrt {disc.d})"]
        try:
            r = sqrt_rational(as_fraction(disc))
            return [(-c1 + r) / 2, (-c1 - r) / 2], []
        except ValueError:
            return [], ["quadratic needing a second square root"]
    return [], [f"degree {p.degree} factor over a quadratic field"]


@dataclass
class SectionResult:
    nparams: int
    entire: bool = False
    points: list = field(default_factory=list)        # tuples of exact scalars
    curves: list = field(default_factory=list)        # [{"equation": str, "samples": [...]}]
    unresolved: list = field(default_factory=list)

    def params(self):
        return [p[0] if self.nparams == 1 else p for p in self.points]


def rep_on_section(h: LieAlgebra, k: LieAlgebra, base, dirs, curve_samples: int = 3, seed: int = 0):
    """Solve the homomorphism equations on phi = base + s*dirs[0] (+ w*dirs[1]) exactly."""
    import random

    if not 1 <= len(dirs) <= 2:
        raise SectionError("sections must have one or two parameters")
    params = ("s", "w")[: len(dirs)]
    base = to_matrix(base)
    dirs = [to_matrix(D) for D in dirs]
    phi = GOneForm(_section_form(base, dirs, params))
    eqs = [e for vec in hom_defect(h, k, phi).values() for e in vec if e]
    res = SectionResult(len(dirs))
    if not eqs:
        res.entire = True
        return res
    if len(dirs) == 1:
        g = UPoly()
        for e in eqs:
            g = upoly_gcd(g, _to_upoly(e, "s")) if g else _to_upoly(e, "s").monic()
        if g.degree <= 0:
            return res
        roots, unresolved = _roots_exact(g)
        res.points = sorted(((r,) for r in roots), key=lambda p: str(p[0]))
        res.unresolved = unresolved
        return res
    rng = random.Random(seed)
    polys = [_bivariate(e) for e in eqs]
    G = {}
    for P in polys:
        G = _bgcd(G, P) if G else P
    curve_part = G if _bdeg(G) > 0 or any(v.degree > 0 for v in G.values()) else {}
    rest = [_bdiv(P, G) for P in polys] if curve_part else polys
    if curve_part:
        cont = _content(curve_part)
        prim = _primitive(curve_part)
        if cont.degree >= 1:
            res.curves.append(_curve_samples({0: cont}, rng, curve_samples))
        if _bdeg(prim) >= 1:
            res.curves.append(_curve_samples(prim, rng, curve_samples))
    # isolated points of the residual system
    for attempt in range(6):
        c1 = [Fraction(rng.randint(-9, 9)) for _ in rest]
        c2 = [Fraction(rng.randint(-9, 9)) for _ in rest]
        Q1, Q2 = {}, {}
        for c, P in zip(c1, rest):
            Q1 = _bsub(Q1, _bmul_upoly(P, UPoly([-c])))
        for c, P in zip(c2, rest):
            Q2 = _bsub(Q2, _bmul_upoly(P, UPoly([-c])))
        if not Q1 or not Q2:
            continue
        if _bdeg(Q1) == 0 and _bdeg(Q2) == 0:
            R = upoly_gcd(Q1[0], Q2[0])
        else:
            R = _resultant_w(Q1, Q2)
        if R:
            break
    else:
        raise ArithmeticError("could not eliminate w")
    if R.degree <= 0:
        return res
    s_roots, unresolved = _roots_exact(R)
    res.unresolved.extend(f"s: {u}" for u in unresolved)
    pts = set()
    for s0 in s_roots:
        gw = UPoly()
        for P in rest:
            up = UPoly([P[d](s0) if d in P else 0 for d in range(_bdeg(P) + 1)])
            gw = upoly_gcd(gw, up) if gw else (up.monic() if up else up)
        if not gw:
            res.unresolved.append(f"vertical line s = {s0}")
            continue
        try:
            w_roots, un = _roots_general(gw)
        except ValueError as exc:
            res.unresolved.append(str(exc))
            continue
        res.unresolved.extend(un)
        for w0 in w_roots:
            if all(_beval(P, s0, w0) == 0 for P in rest):
                pts.add((s0, w0))
    res.points = sorted(pts, key=lambda p: (str(p[0]), str(p[1])))
    return res


def _beval(P, s0, w0):
    acc = Fraction(0)
    for d, v in P.items():
        acc = acc + v(s0) * w0**d
    return acc


def _bstr(P) -> str:
    terms = []
    for d in sorted(P, reverse=True):
        c = P[d].to_str("s")
        terms.append(f"({c})" + (f"*w^{d}" if d > 1 else ("*w" if d == 1 else "")))
    return " + ".join(terms) if terms else "0"


def _curve_samples(G, rng, count):
    """Points on the curve G(s, w) = 0, found by fixing s (or w on vertical components)."""
    samples = []
    if _bdeg(G) == 0:
        roots, _ = _roots_exact(G[0])
        for s0 in roots[:count]:
            samples.append((s0, Fraction(rng.randint(-9, 9), rng.randint(1, 9))))
        return {"equation": _bstr(G), "samples": samples}
    tries = 0
    while len(samples) < count and tries < 40:
        tries += 1
        s0 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        up = UPoly([G[d](s0) if d in G else 0 for d in range(_bdeg(G) + 1)])
        if up.degree <= 0:
            continue
        roots, _ = _roots_exact(up)
        for w0 in roots:
            try:
                samples.append((s0, w0))
            except ValueError:
                pass
    return {"equation": _bstr(G), "samples": samples}


def section_point_form(base, dirs, point) -> GOneForm:
    base = to_matrix(base)
    M = [list(r) for r in base]
    for p, D in zip(point, dirs):
        for i in range(len(M)):
            for j in range(len(M[0])):
                if D[i][j]:
                    M[i][j] = M[i][j] + p * D[i][j]
    return GOneForm(M)


# ---------------------------------------------------------------------------
# the certificate for solvable domains


def _sym_weight_poly(adV) -> UPoly:
    """q(x) whose roots are -lam^2/4 over the distinct nonzero eigenvalues lam of adV."""
    from .exactnum.linalg import char_poly
    from .exactnum.upoly import squarefree_part

    p = squarefree_part(char_poly(adV))
    while p.degree >= 1 and not p.coeffs[0]:
        p = UPoly(p.coeffs[1:])
    if p.degree <= 0:
        return UPoly([1])
    pm = UPoly([c * (-1) ** k for k, c in enumerate(p.coeffs)])
    even = p * pm  # even polynomial r(y^2)
    r = UPoly(even.coeffs[0::2])
    r = squarefree_part(r)
    return r.compose_scale(Fraction(-4)).monic()


def _upoly_on(u: UPoly, x: MultiPoly) -> MultiPoly:
    acc = MultiPoly.const(0, x.vars)
    for c in reversed(u.coeffs):
        acc = acc * x + c
    return acc


def solvable_certificate(s: LieAlgebra) -> MultiPoly:
    """Polynomial G on Hom(s, sl2), G(0) != 0, vanishing on every rank >= 2 homomorphism.

    Recursion on the derived series: V = last nonzero derived term, u_i = basis vectors of
    s completing V (free columns of its echelon form), and for each u_i with
    ad_V(u_i) not nilpotent a factor q_i(det phi(u_i)); the certificate of s / V is pulled
    back along the section spanned by the u_i.
    """
    from .exactnum.linalg import rref

    if not s.is_solvable():
        raise ValueError("solvable input required")
    variables = hom_vars(s)
    one = MultiPoly.const(1, variables)
    series = s.derived_series()
    nonzero = [D for D in series if D]
    if len(nonzero) <= 1 or s.is_nilpotent():
        return one
    V = nonzero[-1]
    R, pivots = rref(V)
    R = R[: len(pivots)]
    free = [j for j in range(s.dim) if j not in pivots]
    G = one
    # coordinates of V: the echelon rows
    for j in free:
        u = s.unit(j)
        # ad_V(u) in the echelon basis of V
        cols = []
        for v in R:
            img = s.bracket(u, v)
            cols.append([img[p] for p in pivots])
        adV = [[cols[c][r] for c in range(len(R))] for r in range(len(R))]
        q = _sym_weight_poly(adV)
        if q.degree >= 1:
            a, b, c = (MultiPoly.var(hom_var(s.basis[j], g), variables) for g in SL2_NAMES)
            G = G * _upoly_on(q, -a * a - b * c)
    # quotient s / V with basis the free vectors, and pull back its certificate
    br = {}

    def reduce(vec):
        vec = list(vec)
        for row, p in zip(R, pivots):
            if vec[p]:
                cc = vec[p]
                vec = [x - cc * y for x, y in zip(vec, row)]
        return [vec[j] for j in free]

    for a_, b_ in combinations(range(len(free)), 2):
        val = reduce(s.table[free[a_]][free[b_]])
        vec = {t: c for t, c in enumerate(val) if c}
        if vec:
            br[(a_, b_)] = vec
    quot = LieAlgebra([s.basis[j] for j in free], br, name=f"{s.name}/V")
    Gq = solvable_certificate(quot)
    return G * Gq.with_vars(variables) if Gq.vars else G
