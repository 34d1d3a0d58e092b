"""Sparse multivariate polynomials over Q, the Segre factorization of torus-invariant
polynomials, and reduction of symmetric polynomials to elementary symmetric ones."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exactnum.scalars import QuadScalar, as_fraction


class NotInvariant(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class MultiPoly:
    """Polynomial with rational coefficients in an ordered tuple of named variables.

    ``terms`` maps exponent tuples to nonzero Fractions. Binary operations between
    polynomials over different variable tuples work over the union of the variables.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.vars}")
        clean = {}
        n = len(self.vars)
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError("exponent vector does not match variable count")
            c = as_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
        self.terms = {e: c for e, c in clean.items() if c}

    # constructors -----------------------------------------------------
    @classmethod
    def var(cls, name: str, variables=None) -> MultiPoly:
        variables = tuple(variables) if variables is not None else (name,)
        exp = tuple(int(v == name) for v in variables)
        if sum(exp) != 1:
            raise ValueError(f"{name} not among {variables}")
        return cls(variables, {exp: 1})

    @classmethod
    def const(cls, c, variables=()) -> MultiPoly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def gens(cls, names):
        names = tuple(names)
        return [cls.var(n, names) for n in names]

    # variable bookkeeping ---------------------------------------------
    def with_vars(self, variables) -> MultiPoly:
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.vars, exp):
                if e:
                    if v not in index:
                        raise ValueError(f"variable {v} missing from {variables}")
                    new[index[v]] = e
            terms[tuple(new)] = c
        return MultiPoly(variables, terms)

    def _unify(self, other: MultiPoly):
        if self.vars == other.vars:
            return self, other
        merged = list(self.vars) + [v for v in other.vars if v not in self.vars]
        return self.with_vars(merged), other.with_vars(merged)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return self._unify(other)
        if isinstance(other, (int, Fraction)):
            return self, MultiPoly.const(other, self.vars)
        return None

    def used_vars(self) -> tuple:
        return tuple(v for i, v in enumerate(self.vars)
                     if any(exp[i] for exp in self.terms))

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MultiPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b + (-a)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.with_vars(sorted(self.used_vars())).terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def block_degrees(self, exp, block) -> int:
        idx = [self.vars.index(v) for v in block if v in self.vars]
        return sum(exp[i] for i in idx)

    # evaluation and substitution --------------------------------------
    def __call__(self, values):
        if isinstance(values, dict):
            vals = [values[v] for v in self.vars]
        else:
            vals = list(values)
            if len(vals) != len(self.vars):
                raise ValueError("wrong number of values")
        acc = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(vals, exp):
                if e:
                    term = term * x**e
            acc = acc + term
        return acc

    def subs(self, mapping) -> MultiPoly:
        """Substitute polynomials or scalars for some variables."""
        keep = [v for v in self.vars if v not in mapping]
        out_vars = list(keep)
        for v, p in mapping.items():
            if isinstance(p, MultiPoly):
                out_vars += [w for w in p.vars if w not in out_vars]
        out = MultiPoly.const(0, out_vars)
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                p = mapping[v]
                if not isinstance(p, MultiPoly):
                    p = MultiPoly.const(p, out_vars)
                powers[key] = p.with_vars(out_vars) ** e
            return powers[key]

        for exp, c in self.terms.items():
            kept = [0] * len(out_vars)
            term = None
            for v, e in zip(self.vars, exp):
                if not e:
                    continue
                if v in mapping:
                    f = power(v, e)
                    term = f if term is None else term * f
                else:
                    kept[out_vars.index(v)] = e
            mono = MultiPoly(out_vars, {tuple(kept): c})
            out = out + (mono if term is None else mono * term)
        return out

    # display ----------------------------------------------------------
    def _mono_str(self, exp) -> str:
        parts = []
        for v, e in zip(self.vars, exp):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return "*".join(parts)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self):
        """Canonical text: monomials by descending degree then exponent, explicit
        coefficients (``1*x1*y2 - 1*x2*y1``)."""
        if not self.terms:
            return "0"
        out = ""
        for k, (exp, c) in enumerate(self.sorted_terms()):
            mono = self._mono_str(exp)
            mag = abs(c)
            body = f"{mag}*{mono}" if mono else str(mag)
            if k == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"MultiPoly({self.vars}, {self})"


# ---------------------------------------------------------------------------
# torus invariance and the Segre map


def _check_blocks(f: MultiPoly, x_vars, y_vars):
    x_vars, y_vars = tuple(x_vars), tuple(y_vars)
    if set(x_vars) & set(y_vars):
        raise ValueError("x and y blocks overlap")
    stray = [v for v in f.used_vars() if v not in x_vars and v not in y_vars]
    if stray:
        raise ValueError(f"variables {stray} not assigned to a block")
    return x_vars, y_vars


def is_torus_invariant(f: MultiPoly, x_vars, y_vars) -> bool:
    """True iff every monomial has equal total degree in the x- and y-blocks, i.e. f is
    invariant under t.(x, y) = (x/t, t*y)."""
    x_vars, y_vars = _check_blocks(f, x_vars, y_vars)
    return all(f.block_degrees(e, x_vars) == f.block_degrees(e, y_vars) for e in f.terms)


def segre_name(i: int, j: int, m: int, n: int) -> str:
    if m < 10 and n < 10:
        return f"z{i + 1}{j + 1}"
    return f"z{i + 1}_{j + 1}"


def segre_vars(m: int, n: int) -> tuple:
    return tuple(segre_name(i, j, m, n) for i in range(m) for j in range(n))


def factor_through_segre(f: MultiPoly, x_vars, y_vars) -> MultiPoly:
    """Rewrite a torus-invariant f(x, y) as F(z) with z_ij = x_i*y_j.

    Each balanced monomial x^I y^J is matched by sorting the index multisets of I and J
    and pairing them positionally.
    """
    x_vars, y_vars = _check_blocks(f, x_vars, y_vars)
    if not is_torus_invariant(f, x_vars, y_vars):
        raise NotInvariant("polynomial is not invariant under (x, y) -> (x/t, t*y)")
    m, n = len(x_vars), len(y_vars)
    zv = segre_vars(m, n)
    g = f.with_vars(x_vars + y_vars)
    terms: dict = {}
    for exp, c in g.terms.items():
        xs = [i for i in range(m) for _ in range(exp[i])]
        ys = [j for j in range(n) for _ in range(exp[m + j])]
        z = [0] * (m * n)
        for i, j in zip(xs, ys):
            z[i * n + j] += 1
        z = tuple(z)
        terms[z] = terms.get(z, Fraction(0)) + c
    return MultiPoly(zv, terms)


def segre_pullback(F: MultiPoly, x_vars, y_vars) -> MultiPoly:
    """F(z_ij := x_i*y_j) as a polynomial in the x and y blocks."""
    x_vars, y_vars = tuple(x_vars), tuple(y_vars)
    m, n = len(x_vars), len(y_vars)
    xy = x_vars + y_vars
    gens = MultiPoly.gens(xy)
    mapping = {segre_name(i, j, m, n): gens[i] * gens[m + j] for i in range(m) for j in range(n)}
    mapping = {k: v for k, v in mapping.items() if k in F.vars}
    return F.subs(mapping).with_vars(xy)


# ---------------------------------------------------------------------------
# symmetric polynomials


def elementary_symmetric(k: int, lam_vars) -> MultiPoly:
    lam_vars = tuple(lam_vars)
    terms = {}
    for S in combinations(range(len(lam_vars)), k):
        terms[tuple(int(i in S) for i in range(len(lam_vars)))] = 1
    return MultiPoly(lam_vars, terms)


def is_symmetric(f: MultiPoly, lam_vars) -> bool:
    lam_vars = tuple(lam_vars)
    for a, b in zip(lam_vars, lam_vars[1:]):
        if a not in f.vars and b not in f.vars:
            continue
        g = f.with_vars(tuple(dict.fromkeys(f.vars + lam_vars)))
        swapped = g.subs({a: MultiPoly.var(b, g.vars), b: MultiPoly.var(a, g.vars)})
        if swapped != g:
            return False
    return True


def symmetric_reduce(f: MultiPoly, lam_vars, e_names=None) -> MultiPoly:
    """Express f, symmetric in ``lam_vars``, through elementary symmetric polynomials.

    Other variables ride along as coefficients. Classical elimination of the
    lexicographically leading term.
    """
    lam_vars = tuple(lam_vars)
    m = len(lam_vars)
    e_names = tuple(e_names or (f"e{k}" for k in range(1, m + 1)))
    if not is_symmetric(f, lam_vars):
        raise NotSymmetric("polynomial is not symmetric in the given block")
    others = tuple(v for v in f.vars if v not in lam_vars)
    work_vars = others + lam_vars
    work = f.with_vars(work_vars)
    nl = len(others)
    elem = [elementary_symmetric(k, lam_vars).with_vars(work_vars) for k in range(1, m + 1)]
    out_vars = others + e_names
    result = MultiPoly.const(0, out_vars)
    cache: dict = {}
    while work.terms:
        lead = max(e[nl:] for e in work.terms)
        if any(lead[j] < lead[j + 1] for j in range(m - 1)):
            raise NotSymmetric("leading exponent not non-increasing")
        coeff_terms = {e[:nl] + (0,) * m: c for e, c in work.terms.items() if e[nl:] == lead}
        coeff = MultiPoly(work_vars, coeff_terms)
        k = tuple(lead[j] - (lead[j + 1] if j + 1 < m else 0) for j in range(m))
        if k not in cache:
            prod = MultiPoly.const(1, work_vars)
            for j, kj in enumerate(k):
                if kj:
                    prod = prod * elem[j] ** kj
            cache[k] = prod
        work = work - coeff * cache[k]
        e_terms = {e[:nl] + k: c for e, c in coeff_terms.items()}
        result = result + MultiPoly(out_vars, e_terms)
    return result


# ---------------------------------------------------------------------------
# the certificate F on A^1 (x) sl2


SL2_COORDS = ("a", "b", "c")


def certificate_parts(phi0: MultiPoly, theta, eta_vars=None):
    """Return (f_tilde, f, F): the product over eigenvalues, its rewrite on A^1 x sl2
    through the characteristic polynomial of theta(g), and its Segre quotient."""
    from .exactnum.linalg import char_poly_coeffs
    from .sl2 import theta_symbolic

    eta_vars = tuple(eta_vars or phi0.vars)
    if any(v not in eta_vars for v in phi0.used_vars()):
        raise ValueError("phi0 must be a polynomial on A^1")
    phi0 = phi0.with_vars(eta_vars)
    c0 = phi0.constant_term()
    if not c0:
        raise ValueError("phi0(0) must be nonzero")
    m = theta.dim
    lam = tuple(f"l{i}" for i in range(1, m + 1))
    all_vars = eta_vars + lam
    f_tilde = MultiPoly.const(1, all_vars)
    eta_gens = MultiPoly.gens(all_vars)[: len(eta_vars)]
    for i in range(m):
        li = MultiPoly.var(lam[i], all_vars)
        f_tilde = f_tilde * phi0.subs({v: li * g for v, g in zip(eta_vars, eta_gens)})
    e_names = tuple(f"e{k}" for k in range(1, m + 1))
    reduced = symmetric_reduce(f_tilde, lam, e_names)
    one = MultiPoly.const(1, SL2_COORDS)
    cp = char_poly_coeffs(theta_symbolic(theta), one)
    # det(xI - M) = sum_k (-1)^k e_k x^(m-k)
    e_vals = {e_names[k - 1]: cp[m - k] * ((-1) ** k) for k in range(1, m + 1)}
    f = reduced.subs(e_vals).with_vars(eta_vars + SL2_COORDS)
    F = factor_through_segre(f, eta_vars, SL2_COORDS)
    if F.constant_term() != c0**m:
        raise ArithmeticError("certificate constant term mismatch")
    return f_tilde, f, F


def build_certificate(phi0: MultiPoly, theta, eta_vars=None) -> MultiPoly:
    """Regular function F on A^1 (x) sl2 with F(eta (x) g) = prod_i phi0(lambda_i eta),
    lambda_i the eigenvalues of theta(g), and F(0) = phi0(0)^dim V."""
    return certificate_parts(phi0, theta, eta_vars)[2]


def evaluate_on_matrix(F: MultiPoly, matrix) -> object:
    """Evaluate a polynomial in Segre variables z_ij at a coefficient matrix."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    vals = {}
    for i in range(m):
        for j in range(n):
            vals[segre_name(i, j, m, n)] = matrix[i][j]
    return F({v: vals.get(v, Fraction(0)) for v in F.vars})


def is_quad_or_rational(x) -> bool:
    return isinstance(x, (int, Fraction, QuadScalar))
