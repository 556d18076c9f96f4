"""Exterior algebra over a coordinate space of dimension 6 or 7.

Basis k-vectors are indexed by strictly increasing index tuples in
lexicographic order; this order and the shuffle-sign convention below are the
single source of truth for every module.  The sign of e_S wedge e_T is the
parity of the number of transpositions needed to merge S and T (an inversion
count), and the volume normalization is vol(e_0 ^ ... ^ e_5) = 1.

Degree-3 elements over ambient 6 carry the symplectic pairing
(a, b) = vol(a ^ b); ambient 7 has wedge/Plucker/support only.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import (
    DegreeOverflow,
    WrongAmbient,
    WrongDimension,
    ZeroInput,
)
from .linalg import Subspace, nullspace


@lru_cache(maxsize=None)
def index_tuples(n: int, k: int):
    """Lexicographic k-index tuples for ambient dimension n."""
    return tuple(combinations(range(n), k))


@lru_cache(maxsize=None)
def tuple_index(n: int, k: int):
    return {t: i for i, t in enumerate(index_tuples(n, k))}


def merge_sign(s: tuple, t: tuple):
    """Merge two disjoint increasing tuples; returns (merged, sign) or (None, 0)."""
    if set(s) & set(t):
        return None, 0
    merged = []
    i = j = 0
    inversions = 0
    while i < len(s) and j < len(t):
        if s[i] < t[j]:
            merged.append(s[i])
            i += 1
        else:
            merged.append(t[j])
            inversions += len(s) - i
            j += 1
    merged.extend(s[i:])
    merged.extend(t[j:])
    return tuple(merged), (-1) ** inversions


class KVector:
    """Element of the k-th wedge power, stored sparsely over its index tuples."""

    __slots__ = ("ambient_dim", "grade", "coeffs", "p")

    def __init__(self, ambient_dim, grade, coeffs=None, p=None):
        if not 0 <= ambient_dim <= 8:
            raise WrongAmbient(f"ambient dimension {ambient_dim} unsupported")
        self.ambient_dim = ambient_dim
        self.grade = grade
        self.p = p
        clean = {}
        for t, c in (coeffs or {}).items():
            if p is not None:
                c = c % p
            elif not isinstance(c, Fraction):
                c = Fraction(c)
            if c:
                clean[tuple(t)] = c
        self.coeffs = clean

    @classmethod
    def basis(cls, ambient_dim, indices, p=None):
        return cls(ambient_dim, len(indices), {tuple(indices): 1}, p)

    @classmethod
    def from_vector(cls, v, p=None):
        return cls(len(v), 1, {(i,): c for i, c in enumerate(v)}, p)

    @classmethod
    def from_coords(cls, ambient_dim, grade, coords, p=None):
        tuples = index_tuples(ambient_dim, grade)
        if len(coords) != len(tuples):
            raise WrongDimension(
                f"expected {len(tuples)} coordinates, got {len(coords)}"
            )
        return cls(ambient_dim, grade, dict(zip(tuples, coords)), p)

    def coords(self):
        """Dense coordinate list in lexicographic index-tuple order."""
        zero = 0 if self.p is not None else Fraction(0)
        return [self.coeffs.get(t, zero) for t in index_tuples(self.ambient_dim, self.grade)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, KVector)
            and (self.ambient_dim, self.grade, self.p) == (other.ambient_dim, other.grade, other.p)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.grade, self.p, frozenset(self.coeffs.items())))

    def __add__(self, other):
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, 0) + c
        return KVector(self.ambient_dim, self.grade, out, self.p)

    def __sub__(self, other):
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            out[t] = out.get(t, 0) - c
        return KVector(self.ambient_dim, self.grade, out, self.p)

    def scale(self, a):
        return KVector(
            self.ambient_dim, self.grade, {t: c * a for t, c in self.coeffs.items()}, self.p
        )

    def wedge(self, other: "KVector") -> "KVector":
        if self.ambient_dim != other.ambient_dim:
            raise WrongAmbient("wedge of different ambient dimensions")
        k = self.grade + other.grade
        if k > self.ambient_dim:
            raise DegreeOverflow(
                f"grade {self.grade}+{other.grade} exceeds ambient {self.ambient_dim}"
            )
        out = {}
        for s, a in self.coeffs.items():
            for t, b in other.coeffs.items():
                merged, sign = merge_sign(s, t)
                if merged is None:
                    continue
                out[merged] = out.get(merged, 0) + sign * a * b
        return KVector(self.ambient_dim, k, out, self.p)

    def __repr__(self):
        if not self.coeffs:
            return f"KVector(0; grade {self.grade}, ambient {self.ambient_dim})"
        terms = " + ".join(
            f"({c})e{''.join(map(str, t))}" for t, c in sorted(self.coeffs.items())
        )
        return f"KVector({terms})"


TriVector = KVector  # degree-3 elements; 20 coords at ambient 6, 35 at ambient 7


def wedge(a: KVector, b: KVector) -> KVector:
    return a.wedge(b)


def symplectic_form(a: KVector, b: KVector):
    """(a, b) = vol(a ^ b) on degree-3 elements over ambient 6."""
    if a.ambient_dim != 6 or b.ambient_dim != 6:
        raise WrongAmbient("symplectic form needs ambient dimension 6")
    if a.grade != 3 or b.grade != 3:
        raise WrongDimension("symplectic form pairs degree-3 elements")
    top = a.wedge(b)
    zero = 0 if a.p is not None else Fraction(0)
    return top.coeffs.get((0, 1, 2, 3, 4, 5), zero)


def plucker(w: Subspace) -> KVector:
    """Wedge of the canonical RREF basis rows of a 3-dimensional subspace."""
    if w.dim != 3:
        raise WrongDimension(f"Plucker embedding needs dim 3, got {w.dim}")
    r0, r1, r2 = (KVector.from_vector(r, w.p) for r in w.rows)
    return r0.wedge(r1).wedge(r2)


def support(alpha: KVector) -> Subspace:
    """Kernel of v -> v ^ alpha; the unique 3-space of a decomposable 3-vector."""
    if alpha.is_zero():
        raise ZeroInput("support of the zero element")
    n = alpha.ambient_dim
    out_tuples = tuple_index(n, alpha.grade + 1)
    nrows = len(out_tuples)
    cols = []
    for i in range(n):
        col = [0] * nrows
        ei = KVector.basis(n, (i,), alpha.p)
        for t, c in ei.wedge(alpha).coeffs.items():
            col[out_tuples[t]] = c
        cols.append(col)
    matrix = [[cols[i][r] for i in range(n)] for r in range(nrows)]
    ker = nullspace(matrix, n, alpha.p)
    return Subspace(n, ker, alpha.p)


def is_decomposable(alpha: KVector):
    """(True, support) when alpha is a wedge of 3 vectors, else (False, None)."""
    if alpha.is_zero():
        raise ZeroInput("decomposability of the zero element")
    supp = support(alpha)
    if supp.dim != 3:
        return False, None
    if proportional(plucker(supp), alpha):
        return True, supp
    return False, None


def proportional(a: KVector, b: KVector) -> bool:
    """True when a and b differ by a nonzero scalar."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    keys = set(a.coeffs) | set(b.coeffs)
    t0 = min(keys)
    ca, cb = a.coeffs.get(t0), b.coeffs.get(t0)
    if ca is None or cb is None:
        return False
    if a.p is not None:
        return all(
            (a.coeffs.get(t, 0) * cb - b.coeffs.get(t, 0) * ca) % a.p == 0 for t in keys
        )
    return all(a.coeffs.get(t, 0) * cb == b.coeffs.get(t, 0) * ca for t in keys)


def symplectic_gram(p=None):
    """20x20 Gram matrix of the pairing on the lexicographic wedge basis."""
    tuples = index_tuples(6, 3)
    gram = []
    for s in tuples:
        row = []
        for t in tuples:
            merged, sign = merge_sign(s, t)
            row.append(sign if merged else 0)
        gram.append(row)
    if p is not None:
        gram = [[x % p for x in row] for row in gram]
    return gram


def pairing_on_coords(x, y, gram=None):
    """Symplectic pairing of two 20-coordinate vectors (shared Gram matrix)."""
    if gram is None:
        gram = symplectic_gram()
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = gram[i]
            total += xi * sum(row[j] * y[j] for j in range(20) if row[j])
    return total
