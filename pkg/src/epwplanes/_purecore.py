"""Pure-Python fallback for the hot finite-field kernels.

Same API as the compiled extension (_fastcore): small-matrix rank and
determinant mod p, streaming enumeration of Grassmannians over F_p in RREF
order with incidence filtering, and the decomposable-membership scan used by
the theta enumerator.  Everything works on raw ints mod p.
"""

from __future__ import annotations

from itertools import combinations

BACKEND = "pure"


def rank_mod(mat, p):
    m = [[x % p for x in row] for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
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
        inv = pow(m[r][c], p - 2, p)
        row_r = [(x * inv) % p for x in m[r]]
        m[r] = row_r
        for i in range(r + 1, nr):
            f = m[i][c]
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row_r)]
        r += 1
        if r == nr:
            break
    return r


def det_mod(mat, p):
    m = [[x % p for x in row] for row in mat]
    n = len(m)
    det = 1
    for c in range(n):
        pr = None
        for i in range(c, n):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            return 0
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = p - det if det else 0
        pivot = m[c][c]
        det = (det * pivot) % p
        inv = pow(pivot, p - 2, p)
        row_c = m[c]
        for i in range(c + 1, n):
            f = (m[i][c] * inv) % p
            if f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row_c)]
    return det


def batch_det_mod(mats, p):
    return [det_mod(m, p) for m in mats]


def batch_rank_mod(mats, p):
    return [rank_mod(m, p) for m in mats]


def _pivot_patterns(n, k):
    return list(combinations(range(n), k))


def _free_positions(n, k, pivots):
    pivot_set = set(pivots)
    pos = []
    for i in range(k):
        for j in range(pivots[i] + 1, n):
            if j not in pivot_set:
                pos.append((i, j))
    return pos


def _iter_rref(n, k, p):
    """Yield every k x n RREF matrix of rank k over F_p, grouped by pivot pattern."""
    for pivots in _pivot_patterns(n, k):
        free = _free_positions(n, k, pivots)
        w = [[0] * n for _ in range(k)]
        for i, c in enumerate(pivots):
            w[i][c] = 1
        nfree = len(free)
        if nfree == 0:
            yield w
            continue
        counter = [0] * nfree
        while True:
            yield w
            # odometer step
            idx = 0
            while idx < nfree:
                i, j = free[idx]
                counter[idx] += 1
                if counter[idx] < p:
                    w[i][j] = counter[idx]
                    break
                counter[idx] = 0
                w[i][j] = 0
                idx += 1
            if idx == nfree:
                break


def _meets(w, k, nmat, m, p):
    """rank(W.N) < k, i.e. the subspace meets the constraint subspace."""
    prod = []
    n = len(nmat)
    for i in range(k):
        wi = w[i]
        prod.append([sum(wi[t] * nmat[t][j] for t in range(n)) % p for j in range(m)])
    return rank_mod(prod, p) < k


def enumerate_incident(n, k, p, constraints):
    """Scan Gr(k, F_p^n); keep subspaces meeting every constraint subspace.

    constraints: list of n x m matrices N whose columns are functionals cutting
    out the constraint subspace (W meets it iff rank(W.N) < k).
    Returns (visited_count, list of k x n row tuples).
    """
    consts = [([list(col) for col in nm], len(nm[0])) for nm in constraints]
    visited = 0
    matches = []
    for w in _iter_rref(n, k, p):
        visited += 1
        ok = True
        for nmat, m in consts:
            if not _meets(w, k, nmat, m, p):
                ok = False
                break
        if ok:
            matches.append(tuple(tuple(row) for row in w))
    return visited, matches


_TRIPLES6 = list(combinations(range(6), 3))


def _plucker3_mod(w, p):
    """The 20 lex-ordered 3x3 column minors of a 3x6 matrix mod p."""
    out = []
    r0, r1, r2 = w
    for (a, b, c) in _TRIPLES6:
        d = (
            r0[a] * (r1[b] * r2[c] - r1[c] * r2[b])
            - r0[b] * (r1[a] * r2[c] - r1[c] * r2[a])
            + r0[c] * (r1[a] * r2[b] - r1[b] * r2[a])
        )
        out.append(d % p)
    return out


def theta_scan(p, a_rows, a_pivots):
    """All W in Gr(3, F_p^6) whose Plucker vector lies in the row space of A.

    a_rows: RREF rows of A mod p (each length 20), a_pivots: pivot columns.
    Returns (visited_count, list of 3 x 6 row tuples).
    """
    visited = 0
    matches = []
    for w in _iter_rref(6, 3, p):
        visited += 1
        v = _plucker3_mod(w, p)
        for row, c in zip(a_rows, a_pivots):
            f = v[c]
            if f:
                v = [(a - f * b) % p for a, b in zip(v, row)]
        if not any(v):
            matches.append(tuple(tuple(row) for row in w))
    return visited, matches
