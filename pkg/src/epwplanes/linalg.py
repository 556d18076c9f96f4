"""Exact dense linear algebra over Q (fractions) and over F_p (raw ints).

Matrices are lists of row lists.  Every function takes an optional prime p;
p=None means rational arithmetic, otherwise entries are ints reduced mod p.
Subspaces are stored in reduced row echelon form, which makes equality of
subspaces a structural comparison of their matrices.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import BadReduction, MixedAmbient
from .scalars import reduce_mod_p


def _inv_mod(a: int, p: int) -> int:
    return pow(a % p, p - 2, p)


def rref(rows, p=None):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    if p is None:
        m = [[Fraction(x) for x in row] for row in rows]
    else:
        m = [[x % p for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = (1 / m[r][c]) if p is None else _inv_mod(m[r][c], p)
        if p is None:
            m[r] = [x * inv for x in m[r]]
        else:
            m[r] = [(x * inv) % p for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                if p is None:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                else:
                    m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m[:r], pivots


def rank(rows, p=None) -> int:
    if not rows:
        return 0
    return len(rref(rows, p)[0])


def nullspace(rows, ncols, p=None):
    """Basis of {x : A x = 0} as rows, in RREF-derived canonical form."""
    red, pivots = rref(rows, p) if rows else ([], [])
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    one = Fraction(1) if p is None else 1
    zero = Fraction(0) if p is None else 0
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(pivots):
            coef = red[r][f]
            v[c] = -coef if p is None else (-coef) % p
        basis.append(v)
    return basis


def mat_mul(a, b, p=None):
    nb = len(b[0])
    out = []
    for row in a:
        acc = [sum(row[k] * b[k][j] for k in range(len(b))) for j in range(nb)]
        if p is not None:
            acc = [x % p for x in acc]
        out.append(acc)
    return out


def mat_vec(a, v, p=None):
    out = [sum(row[k] * v[k] for k in range(len(v))) for row in a]
    if p is not None:
        out = [x % p for x in out]
    return out


def solve(rows, rhs, p=None):
    """One solution x of A x = b, or None if inconsistent."""
    nc = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, p)
    zero = Fraction(0) if p is None else 0
    for row in red:
        if all(x == zero for x in row[:nc]) and row[nc]:
            return None
    x = [zero] * nc
    for r, c in enumerate(pivots):
        if c < nc:
            x[c] = red[r][nc]
    return x


def det_bareiss(rows) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_fraction(rows) -> Fraction:
    """Exact determinant over Q: scale rows to integers, then Bareiss."""
    scale = Fraction(1)
    int_rows = []
    for row in rows:
        row = [Fraction(x) for x in row]
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        scale /= lcm
        int_rows.append([int(x * lcm) for x in row])
    return scale * det_bareiss(int_rows)


class Subspace:
    """Linear subspace of a coordinate space, canonicalized to RREF rows.

    Over Q the entries are Fractions; over F_p (p not None) raw ints in [0,p).
    """

    __slots__ = ("ambient_dim", "rows", "p")

    def __init__(self, ambient_dim, rows, p=None, already_rref=False):
        self.ambient_dim = ambient_dim
        self.p = p
        rows = [list(r) for r in rows if any(r)]
        if rows and not already_rref:
            rows, _ = rref(rows, p)
        elif p is None:
            rows = [[Fraction(x) for x in r] for r in rows]
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.p == other.p
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.p, self.rows))

    def __repr__(self):
        field = "Q" if self.p is None else f"F_{self.p}"
        return f"Subspace(dim {self.dim} of {field}^{self.ambient_dim})"

    def _check_compatible(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise MixedAmbient(
                f"ambient {self.ambient_dim}/{other.ambient_dim}, "
                f"field p={self.p}/{other.p}"
            )

    def contains_vector(self, v) -> bool:
        if not any(v):
            return True
        stacked = [list(r) for r in self.rows] + [list(v)]
        return rank(stacked, self.p) == self.dim

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        stacked = [list(r) for r in self.rows + other.rows]
        return rank(stacked, self.p) == self.dim

    def add(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.ambient_dim, list(self.rows + other.rows), self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        """W1 cap W2, computed from the kernel of the stacked transpose."""
        self._check_compatible(other)
        r1, r2 = self.dim, other.dim
        if r1 == 0 or r2 == 0:
            return Subspace(self.ambient_dim, [], self.p)
        # columns: coefficients (a, b) with a*B1 - b*B2 = 0
        cols = r1 + r2
        eqs = []
        for j in range(self.ambient_dim):
            eqs.append(
                [self.rows[i][j] for i in range(r1)]
                + [(-other.rows[i][j]) if self.p is None else (-other.rows[i][j]) % self.p
                   for i in range(r2)]
            )
        ker = nullspace(eqs, cols, self.p)
        vecs = []
        for coeff in ker:
            v = [sum(coeff[i] * self.rows[i][j] for i in range(r1))
                 for j in range(self.ambient_dim)]
            if self.p is not None:
                v = [x % self.p for x in v]
            vecs.append(v)
        return Subspace(self.ambient_dim, vecs, self.p)

    def complement_functionals(self):
        """Matrix N (ambient x codim) with W.N = 0; columns cut out the subspace."""
        ker = nullspace([list(r) for r in self.rows], self.ambient_dim, self.p)
        # ker rows are the functionals; return as columns
        return [[f[i] for f in ker] for i in range(self.ambient_dim)]

    def reduce_mod(self, p: int) -> "Subspace":
        """Reduction mod p of a rational subspace; BadReduction on bad primes.

        Each row is scaled to a primitive integer vector first, so RREF
        denominators do not spoil reduction; p is bad only when the rank
        genuinely drops.
        """
        if self.p is not None:
            raise BadReduction("subspace is already over a prime field")
        rows = []
        for r in self.rows:
            lcm = 1
            for x in r:
                lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
            ints = [int(x * lcm) for x in r]
            g = 0
            for x in ints:
                g = math.gcd(g, x)
            if g > 1:
                ints = [x // g for x in ints]
            rows.append([reduce_mod_p(Fraction(x), p).residue for x in ints])
        red = Subspace(self.ambient_dim, rows, p)
        if red.dim != self.dim:
            raise BadReduction(f"rank drops mod {p}")
        return red
