"""Exact multivariate polynomials: arithmetic, homogeneous interpolation on a
simplex lattice via Newton forward substitution, exact division, gcd, Taylor
parts at a projective point, and tangent cones.

Terms are kept in a dict from exponent tuple to nonzero coefficient; the
canonical term order everywhere is graded lexicographic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .errors import (
    BadChart,
    InconsistentEvaluations,
    NotDivisible,
    NotOnHypersurface,
    ZeroInput,
)


def _grlex(exp):
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("nvars", "terms", "p")

    def __init__(self, nvars, terms=None, p=None):
        self.nvars = nvars
        self.p = p
        clean = {}
        for e, c in (terms or {}).items():
            if p is not None:
                c = c % p
            elif not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars, p=None):
        return cls(nvars, {}, p)

    @classmethod
    def constant(cls, nvars, c, p=None):
        return cls(nvars, {(0,) * nvars: c}, p)

    @classmethod
    def variable(cls, nvars, i, p=None):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, p)

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ZeroInput("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex)
        return e, self.terms[e]

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading()
        if self.p is not None:
            inv = pow(c, self.p - 2, self.p)
            return MultiPoly(self.nvars, {e: v * inv for e, v in self.terms.items()}, self.p)
        return MultiPoly(self.nvars, {e: v / c for e, v in self.terms.items()}, None)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and (self.nvars, self.p) == (other.nvars, other.p)
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.nvars, out, self.p)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return MultiPoly(self.nvars, out, self.p)

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.p)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, out, self.p)

    def scale(self, a):
        return MultiPoly(self.nvars, {e: c * a for e, c in self.terms.items()}, self.p)

    def pow(self, k):
        out = MultiPoly.constant(self.nvars, 1, self.p)
        for _ in range(k):
            out = out * self
        return out

    def eval(self, point):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k
            total += v
        if self.p is not None:
            return total % self.p
        return total

    def graded_part(self, d):
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}, self.p)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]))

    def proportional_to(self, other) -> bool:
        """True when self = c * other for some nonzero scalar c."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.terms) != set(other.terms):
            return False
        e0 = next(iter(self.terms))
        ca, cb = self.terms[e0], other.terms[e0]
        if self.p is not None:
            return all((self.terms[e] * cb - other.terms[e] * ca) % self.p == 0 for e in self.terms)
        return all(self.terms[e] * cb == other.terms[e] * ca for e in self.terms)

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e, c in reversed(self.sorted_terms()):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}" for i, k in enumerate(e) if k)
            bits.append(f"({c}){'*' + mono if mono else ''}")
        return "MultiPoly(" + " + ".join(bits[:8]) + (" + ..." if len(bits) > 8 else "") + ")"


# -- homogeneous interpolation ---------------------------------------------------


@lru_cache(maxsize=None)
def _simplex_lattice(d, m):
    """Exponent vectors in m variables of total degree at most d, graded-lex."""
    out = []

    def rec(prefix, rest, left):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for k in range(left + 1):
            rec(prefix + [k], rest - 1, left - k)

    rec([], m, d)
    out.sort(key=_grlex)
    return tuple(out)


def interpolation_nodes(d, n):
    """Deterministic integer nodes for homogeneous degree-d forms in n vars.

    The last coordinate is pinned to 1; the rest run over the principal
    lattice of the degree-d simplex in n-1 variables.
    """
    return [a + (1,) for a in _simplex_lattice(d, n - 1)]


@lru_cache(maxsize=None)
def _falling_factorial_coeffs(k):
    """Coefficients of x(x-1)...(x-k+1) as a tuple indexed by power."""
    coeffs = [1]
    for j in range(k):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= j * c
        coeffs = nxt
    return tuple(coeffs)


def _falling(x, k):
    v = 1
    for j in range(k):
        v *= x - j
    return v


def interpolate_from_values(values, d, n, p=None):
    """Solve the Newton system on the simplex-lattice nodes, then rehomogenize.

    values must be listed in the order of interpolation_nodes(d, n).
    """
    lattice = _simplex_lattice(d, n - 1)
    if len(values) != len(lattice):
        raise InconsistentEvaluations(
            f"expected {len(lattice)} values, got {len(values)}"
        )
    if p is not None and p <= d:
        raise InconsistentEvaluations("modulus must exceed the degree for Newton division")
    pos = {a: i for i, a in enumerate(lattice)}
    coeffs = [None] * len(lattice)
    for bi, b in enumerate(lattice):
        acc = values[bi]
        # subtract contributions of nodes componentwise below b
        sub = _below(b)
        for a in sub:
            ai = pos[a]
            na = 1
            for x, k in zip(b, a):
                na *= _falling(x, k)
            acc -= coeffs[ai] * na
        diag = 1
        for k in b:
            for j in range(1, k + 1):
                diag *= j
        if p is not None:
            coeffs[bi] = acc % p * pow(diag % p, p - 2, p) % p
        else:
            coeffs[bi] = Fraction(acc, diag)
    # expand the Newton basis into monomials of the chart variables
    dehom = {}
    for a, c in zip(lattice, coeffs):
        if not c:
            continue
        expansion = [((), 1)]
        for i, k in enumerate(a):
            ff = _falling_factorial_coeffs(k)
            nxt = {}
            for e, v in expansion:
                for power, fc in enumerate(ff):
                    if fc:
                        key = e + (power,)
                        nxt[key] = nxt.get(key, 0) + v * fc
            expansion = list(nxt.items())
        for e, v in expansion:
            dehom[e] = dehom.get(e, 0) + c * v
    # rehomogenize: pad the pinned last variable up to total degree d
    terms = {}
    for e, c in dehom.items():
        total = sum(e)
        terms[e + (d - total,)] = c
    return MultiPoly(n, terms, p)


@lru_cache(maxsize=None)
def _below(b):
    """Lattice points strictly below b in the componentwise order."""
    ranges = [range(k + 1) for k in b]
    out = []

    def rec(prefix, i):
        if i == len(b):
            t = tuple(prefix)
            if t != b:
                out.append(t)
            return
        for k in ranges[i]:
            rec(prefix + [k], i + 1)

    rec([], 0)
    return tuple(out)


def interpolate_homogeneous(evaluator, d, n, p=None) -> MultiPoly:
    """Recover a homogeneous degree-d form in n variables from evaluations.

    Verified on held-out random points; raises InconsistentEvaluations if the
    evaluator is not the restriction of such a form.
    """
    nodes = interpolation_nodes(d, n)
    values = [evaluator(pt) for pt in nodes]
    f = interpolate_from_values(values, d, n, p)
    rng = random.Random(repr((d, n, "interp-holdout")))
    for _ in range(5):
        pt = tuple(rng.randint(0, d + 3) for _ in range(n - 1)) + (1,)
        want = evaluator(pt)
        got = f.eval(pt)
        if p is not None:
            if (want - got) % p != 0:
                raise InconsistentEvaluations(f"held-out check fails at {pt}")
        elif want != got:
            raise InconsistentEvaluations(f"held-out check fails at {pt}")
    return f


# -- division, gcd -----------------------------------------------------------------


def exact_divide(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g when the division is exact; NotDivisible otherwise."""
    if g.is_zero():
        raise ZeroInput("division by the zero polynomial")
    if f.is_zero():
        return MultiPoly.zero(f.nvars, f.p)
    ge, gc = g.leading()
    q = {}
    rem = f
    while not rem.is_zero():
        fe, fc = rem.leading()
        e = tuple(a - b for a, b in zip(fe, ge))
        if any(x < 0 for x in e):
            raise NotDivisible("leading term not divisible")
        if f.p is not None:
            c = fc * pow(gc, f.p - 2, f.p) % f.p
        else:
            c = fc / gc
        q[e] = c
        rem = rem - MultiPoly(f.nvars, {e: c}, f.p) * g
    return MultiPoly(f.nvars, q, f.p)


def gcd_multivariate(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """A gcd over Q, monic in graded-lex; the result is verified by division."""
    if f.is_zero() or g.is_zero():
        raise ZeroInput("gcd with a zero polynomial")
    import sympy

    xs = sympy.symbols(f"x0:{f.nvars}")

    def to_sympy(h):
        expr = 0
        for e, c in h.terms.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for x, k in zip(xs, e):
                if k:
                    term *= x ** k
            expr += term
        return sympy.Poly(expr, *xs, domain="QQ")

    gc = sympy.gcd(to_sympy(f), to_sympy(g))
    gc = sympy.Poly(gc, *xs, domain="QQ")
    terms = {}
    for mono, c in gc.terms():
        terms[tuple(int(k) for k in mono)] = Fraction(c.p, c.q)
    out = MultiPoly(f.nvars, terms).monic()
    # exactness is cheap to confirm and wrong gcds must be loud
    exact_divide(f, out)
    exact_divide(g, out)
    return out


# -- Taylor expansion at a projective point ----------------------------------------


def taylor_parts(f: MultiPoly, v0, chart):
    """Graded parts g_0..g_d of w -> f(v0 + sum w_i chart_i).

    chart must span a complement of the line through v0; the parts live in
    len(chart) variables.
    """
    from .linalg import rank

    n = f.nvars
    if len(v0) != n or any(len(c) != n for c in chart) or len(chart) != n - 1:
        raise BadChart("chart must have nvars-1 vectors of the ambient length")
    if rank([list(v0)] + [list(c) for c in chart]) != n:
        raise BadChart("chart does not complement the base point")
    m = len(chart)
    # each ambient variable becomes an affine-linear form in the chart vars
    lin = []
    for j in range(n):
        terms = {(0,) * m: Fraction(v0[j])}
        for i in range(m):
            if chart[i][j]:
                e = [0] * m
                e[i] = 1
                terms[tuple(e)] = Fraction(chart[i][j])
        lin.append(MultiPoly(m, terms))
    total = MultiPoly.zero(m)
    for e, c in f.terms.items():
        term = MultiPoly.constant(m, c)
        for j, k in enumerate(e):
            for _ in range(k):
                term = term * lin[j]
        total = total + term
    d = f.degree()
    return [total.graded_part(i) for i in range(d + 1)]


def tangent_cone(f: MultiPoly, v0, chart):
    """(multiplicity m, lowest graded part g_m, rank of g_2 when m = 2)."""
    parts = taylor_parts(f, v0, chart)
    if not parts[0].is_zero():
        raise NotOnHypersurface("the point is not on the hypersurface")
    m = None
    for i, g in enumerate(parts):
        if not g.is_zero():
            m = i
            break
    if m is None:
        return len(parts), MultiPoly.zero(len(chart)), None
    quad_rank = None
    if m == 2:
        from .linalg import rank

        nv = len(chart)
        g2 = parts[2]
        mat = [[Fraction(0)] * nv for _ in range(nv)]
        for e, c in g2.terms.items():
            idxs = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idxs
            if i == j:
                mat[i][i] = c
            else:
                mat[i][j] += c / 2
                mat[j][i] += c / 2
        quad_rank = rank(mat)
    return m, parts[m], quad_rank
