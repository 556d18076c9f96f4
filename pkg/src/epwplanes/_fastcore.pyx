# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for the finite-field hot loops.

Mirrors the API of epwplanes._purecore: rank/det mod p, batched variants,
RREF-streaming Grassmannian enumeration with incidence filtering, and the
Plucker-membership scan.  The import-time selector in epwplanes._core picks
this module when it built successfully.
"""

from itertools import combinations

import numpy as np

BACKEND = "compiled"

ctypedef long long i64


cdef inline i64 cmod(i64 x, i64 p) nogil:
    # C '%' truncates toward zero; normalize to [0, p)
    x = x % p
    if x < 0:
        x += p
    return x


cdef i64 inv_mod(i64 a, i64 p) nogil:
    # extended Euclid; a != 0 mod p, p prime
    cdef i64 t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r / newr
        tmp = t - q * newt; t = newt; newt = tmp
        tmp = r - q * newr; r = newr; newr = tmp
    if t < 0:
        t += p
    return t


cdef int rank_inplace(i64[:, ::1] m, int nr, int nc, i64 p) nogil:
    cdef int r = 0, c, i, j, pr
    cdef i64 inv, f
    for c in range(nc):
        pr = -1
        for i in range(r, nr):
            if m[i, c] % p != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(nc):
                f = m[r, j]; m[r, j] = m[pr, j]; m[pr, j] = f
        inv = inv_mod(m[r, c] % p, p)
        for j in range(nc):
            m[r, j] = (m[r, j] % p) * inv % p
        for i in range(r + 1, nr):
            f = m[i, c] % p
            if f != 0:
                for j in range(nc):
                    m[i, j] = cmod(m[i, j] - f * m[r, j], p)
        r += 1
        if r == nr:
            break
    return r


cdef i64 det_inplace(i64[:, ::1] m, int n, i64 p) nogil:
    cdef i64 det = 1, pivot, inv, f, tmp
    cdef int c, i, j, pr
    for c in range(n):
        pr = -1
        for i in range(c, n):
            if m[i, c] % p != 0:
                pr = i
                break
        if pr < 0:
            return 0
        if pr != c:
            for j in range(n):
                tmp = m[c, j]; m[c, j] = m[pr, j]; m[pr, j] = tmp
            det = p - det
        pivot = m[c, c] % p
        det = det * pivot % p
        inv = inv_mod(pivot, p)
        for i in range(c + 1, n):
            f = (m[i, c] % p) * inv % p
            if f != 0:
                for j in range(c, n):
                    m[i, j] = cmod(m[i, j] - f * m[c, j], p)
    return det % p


def rank_mod(mat, p):
    a = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % p)
    if a.size == 0:
        return 0
    cdef i64[:, ::1] mv = a
    return rank_inplace(mv, a.shape[0], a.shape[1], p)


def det_mod(mat, p):
    a = np.ascontiguousarray(np.asarray(mat, dtype=np.int64) % p)
    cdef i64[:, ::1] mv = a
    return int(det_inplace(mv, a.shape[0], p))


def batch_det_mod(mats, p):
    a = np.ascontiguousarray(np.asarray(mats, dtype=np.int64) % p)
    cdef Py_ssize_t num = a.shape[0]
    cdef int n = a.shape[1]
    out = np.zeros(num, dtype=np.int64)
    cdef i64[::1] ov = out
    cdef i64[:, :, ::1] av = a
    cdef Py_ssize_t t
    cdef i64 pp = p
    with nogil:
        for t in range(num):
            ov[t] = det_inplace(av[t], n, pp)
    return [int(x) for x in out]


def batch_rank_mod(mats, p):
    a = np.ascontiguousarray(np.asarray(mats, dtype=np.int64) % p)
    cdef Py_ssize_t num = a.shape[0]
    cdef int nr = a.shape[1], nc = a.shape[2]
    out = np.zeros(num, dtype=np.int64)
    cdef i64[::1] ov = out
    cdef i64[:, :, ::1] av = a
    cdef Py_ssize_t t
    cdef i64 pp = p
    with nogil:
        for t in range(num):
            ov[t] = rank_inplace(av[t], nr, nc, pp)
    return [int(x) for x in out]


def enumerate_incident(n, k, p, constraints):
    """Scan Gr(k, F_p^n); keep subspaces meeting every constraint subspace.

    constraints: list of n x m matrices (columns = functionals); a subspace W
    meets the constraint iff rank(W.N) < k.  Returns (visited, matches).
    """
    cdef int cn = n, ck = k
    cdef i64 cp = p
    cdef int nc_count = len(constraints)
    cdef int mmax = 0
    for nm in constraints:
        if len(nm[0]) > mmax:
            mmax = len(nm[0])
    if mmax == 0 and nc_count > 0:
        # constraints that are the whole space: always met
        nc_count = 0
    nmat = np.zeros((max(nc_count, 1), n, max(mmax, 1)), dtype=np.int64)
    cdef int ci
    for ci in range(nc_count):
        arr = np.asarray(constraints[ci], dtype=np.int64) % p
        nmat[ci, :, : arr.shape[1]] = arr
    cdef i64[:, :, ::1] nv = nmat

    w_np = np.zeros((k, n), dtype=np.int64)
    prod_np = np.zeros((k, max(mmax, 1)), dtype=np.int64)
    work_np = np.zeros((k, max(mmax, 1)), dtype=np.int64)
    cdef i64[:, ::1] w = w_np
    cdef i64[:, ::1] prod = prod_np
    cdef i64[:, ::1] work = work_np

    cdef long long visited = 0
    matches = []

    free_i_np = np.zeros(k * n, dtype=np.int64)
    free_j_np = np.zeros(k * n, dtype=np.int64)
    counter_np = np.zeros(k * n, dtype=np.int64)
    cdef i64[::1] free_i = free_i_np
    cdef i64[::1] free_j = free_j_np
    cdef i64[::1] counter = counter_np

    cdef int nfree, idx, i, j, t, ok, done
    cdef i64 s

    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        w_np[:, :] = 0
        nfree = 0
        for i in range(k):
            w[i, pivots[i]] = 1
            for j in range(pivots[i] + 1, n):
                if j not in pivot_set:
                    free_i[nfree] = i
                    free_j[nfree] = j
                    nfree += 1
        for idx in range(nfree):
            counter[idx] = 0
        done = 0
        while not done:
            visited += 1
            ok = 1
            for ci in range(nc_count):
                # prod = W . N_ci  (k x mmax), rank must be < k
                for i in range(ck):
                    for j in range(mmax):
                        s = 0
                        for t in range(cn):
                            s += w[i, t] * nv[ci, t, j]
                        prod[i, j] = s % cp
                for i in range(ck):
                    for j in range(mmax):
                        work[i, j] = prod[i, j]
                if rank_inplace(work, ck, mmax, cp) >= ck:
                    ok = 0
                    break
            if ok:
                matches.append(tuple(tuple(int(w[i, j]) for j in range(cn)) for i in range(ck)))
            if nfree == 0:
                break
            idx = 0
            while idx < nfree:
                counter[idx] += 1
                if counter[idx] < cp:
                    w[free_i[idx], free_j[idx]] = counter[idx]
                    break
                counter[idx] = 0
                w[free_i[idx], free_j[idx]] = 0
                idx += 1
            if idx == nfree:
                done = 1
    return int(visited), matches


def theta_scan(p, a_rows, a_pivots):
    """All W in Gr(3, F_p^6) with Plucker(W) in the row space of the RREF A."""
    cdef i64 cp = p
    a_np = np.ascontiguousarray(np.asarray(a_rows, dtype=np.int64) % p)
    cdef i64[:, ::1] av = a_np
    cdef int na = a_np.shape[0]
    piv_np = np.asarray(a_pivots, dtype=np.int64)
    cdef i64[::1] pv = piv_np

    triples = list(combinations(range(6), 3))
    tri_np = np.asarray(triples, dtype=np.int64)
    cdef i64[:, ::1] tv = tri_np

    w_np = np.zeros((3, 6), dtype=np.int64)
    cdef i64[:, ::1] w = w_np
    v_np = np.zeros(20, dtype=np.int64)
    cdef i64[::1] v = v_np

    free_i_np = np.zeros(18, dtype=np.int64)
    free_j_np = np.zeros(18, dtype=np.int64)
    counter_np = np.zeros(18, dtype=np.int64)
    cdef i64[::1] free_i = free_i_np
    cdef i64[::1] free_j = free_j_np
    cdef i64[::1] counter = counter_np

    cdef long long visited = 0
    matches = []
    cdef int nfree, idx, i, j, r, a, b, c, done, nonzero
    cdef i64 d, f

    for pivots in combinations(range(6), 3):
        pivot_set = set(pivots)
        w_np[:, :] = 0
        nfree = 0
        for i in range(3):
            w[i, pivots[i]] = 1
            for j in range(pivots[i] + 1, 6):
                if j not in pivot_set:
                    free_i[nfree] = i
                    free_j[nfree] = j
                    nfree += 1
        for idx in range(nfree):
            counter[idx] = 0
        done = 0
        while not done:
            visited += 1
            for i in range(20):
                a = tv[i, 0]; b = tv[i, 1]; c = tv[i, 2]
                d = (
                    w[0, a] * (w[1, b] * w[2, c] - w[1, c] * w[2, b])
                    - w[0, b] * (w[1, a] * w[2, c] - w[1, c] * w[2, a])
                    + w[0, c] * (w[1, a] * w[2, b] - w[1, b] * w[2, a])
                )
                v[i] = cmod(d, cp)
            for r in range(na):
                f = v[pv[r]]
                if f != 0:
                    for j in range(20):
                        v[j] = cmod(v[j] - f * av[r, j], cp)
            nonzero = 0
            for j in range(20):
                if v[j] != 0:
                    nonzero = 1
                    break
            if not nonzero:
                matches.append(tuple(tuple(int(w[i, j]) for j in range(6)) for i in range(3)))
            if nfree == 0:
                break
            idx = 0
            while idx < nfree:
                counter[idx] += 1
                if counter[idx] < cp:
                    w[free_i[idx], free_j[idx]] = counter[idx]
                    break
                counter[idx] = 0
                w[free_i[idx], free_j[idx]] = 0
                idx += 1
            if idx == nfree:
                done = 1
    return int(visited), matches
