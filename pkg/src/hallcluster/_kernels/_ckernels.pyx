# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same signatures."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

DEF SCRAMBLE = 1000003


cdef int* _table(object seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef int* out = <int*> malloc((n if n else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef int _rref_c(int* m, int nrows, int ncols, int Q, int* add, int* mul,
                 int* neg, int* inv, int* pivots) nogil:
    cdef int r = 0, c, i, j, piv, s, f, nf, tmp
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i * ncols + c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = m[r * ncols + j]
                m[r * ncols + j] = m[piv * ncols + j]
                m[piv * ncols + j] = tmp
        s = inv[m[r * ncols + c]]
        if s != 1:
            for j in range(ncols):
                m[r * ncols + j] = mul[s * Q + m[r * ncols + j]]
        for i in range(nrows):
            if i != r:
                f = m[i * ncols + c]
                if f:
                    nf = neg[f] * Q
                    for j in range(ncols):
                        if m[r * ncols + j]:
                            m[i * ncols + j] = add[m[i * ncols + j] * Q + mul[nf + m[r * ncols + j]]]
        pivots[r] = c
        r += 1
    return r


def rref(rows, int ncols, int Q, add, mul, neg, inv):
    cdef int nrows = len(rows), i, j, r
    cdef int* m = <int*> malloc((nrows * ncols if nrows * ncols else 1) * sizeof(int))
    cdef int* piv = <int*> malloc((ncols if ncols else 1) * sizeof(int))
    cdef int* ta = _table(add)
    cdef int* tm = _table(mul)
    cdef int* tn = _table(neg)
    cdef int* ti = _table(inv)
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j]
        r = _rref_c(m, nrows, ncols, Q, ta, tm, tn, ti, piv)
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
        return out, [piv[i] for i in range(r)]
    finally:
        free(m); free(piv); free(ta); free(tm); free(tn); free(ti)


cdef int _rank_square(int* vec, int off, int d, int Q, int* add, int* mul,
                      int* neg, int* inv, int* work, int* piv) nogil:
    memcpy(work, vec + off, d * d * sizeof(int))
    return _rref_c(work, d, d, Q, add, mul, neg, inv, piv)


cdef bint _is_nilpotent(int* vec, int off, int d, int Q, int* add, int* mul,
                        int* p, int* nxt) nogil:
    cdef int i, j, t, s, x, y, step
    if d == 0:
        return True
    memcpy(p, vec + off, d * d * sizeof(int))
    for step in range(d - 1):
        for i in range(d):
            for j in range(d):
                s = 0
                for t in range(d):
                    x = p[i * d + t]
                    if x:
                        y = vec[off + t * d + j]
                        if y:
                            s = add[s * Q + mul[x * Q + y]]
                nxt[i * d + j] = s
        memcpy(p, nxt, d * d * sizeof(int))
    for i in range(d * d):
        if p[i]:
            return False
    return True


def scan(basis, blocks, int Q, add, mul, neg, inv, int mode):
    cdef int h = len(basis)
    cdef long long total = 1, t, idx
    cdef int L = len(basis[0]) if h else 0
    cdef int nb = len(blocks), j, k, c, cQ, x, maxd = 0
    cdef long long count = 0
    cdef bint invertible, nil
    cdef int* B
    cdef int* vec
    cdef int* offs
    cdef int* sizes
    cdef int* work
    cdef int* work2
    cdef int* piv
    for j in range(h):
        total *= Q
    B = <int*> malloc((h * L if h * L else 1) * sizeof(int))
    vec = <int*> malloc((L if L else 1) * sizeof(int))
    offs = <int*> malloc((nb if nb else 1) * sizeof(int))
    sizes = <int*> malloc((nb if nb else 1) * sizeof(int))
    for j in range(nb):
        offs[j] = blocks[j][0]
        sizes[j] = blocks[j][1]
        if sizes[j] > maxd:
            maxd = sizes[j]
    work = <int*> malloc((maxd * maxd if maxd else 1) * sizeof(int))
    work2 = <int*> malloc((maxd * maxd if maxd else 1) * sizeof(int))
    piv = <int*> malloc((maxd if maxd else 1) * sizeof(int))
    cdef int* ta = _table(add)
    cdef int* tm = _table(mul)
    cdef int* tn = _table(neg)
    cdef int* ti = _table(inv)
    try:
        for j in range(h):
            b = basis[j]
            for k in range(L):
                B[j * L + k] = b[k]
        with nogil:
            t = 1
            while t < total:
                idx = (t * SCRAMBLE) % total
                memset(vec, 0, L * sizeof(int))
                for j in range(h):
                    c = <int>(idx % Q)
                    idx //= Q
                    if c:
                        cQ = c * Q
                        for k in range(L):
                            x = B[j * L + k]
                            if x:
                                vec[k] = ta[vec[k] * Q + tm[cQ + x]]
                invertible = True
                for j in range(nb):
                    if sizes[j] and _rank_square(vec, offs[j], sizes[j], Q, ta, tm, tn, ti, work, piv) < sizes[j]:
                        invertible = False
                        break
                if mode == 0:
                    if invertible:
                        break
                elif mode == 1:
                    if invertible:
                        count += 1
                else:
                    if not invertible:
                        nil = True
                        for j in range(nb):
                            if not _is_nilpotent(vec, offs[j], sizes[j], Q, ta, tm, work, work2):
                                nil = False
                                break
                        if not nil:
                            break
                t += 1
        if mode == 1:
            return count
        if t < total:
            return [vec[k] for k in range(L)]
        return None
    finally:
        free(B); free(vec); free(offs); free(sizes); free(work); free(work2); free(piv)
        free(ta); free(tm); free(tn); free(ti)
