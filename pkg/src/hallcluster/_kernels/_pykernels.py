"""Pure-Python reference kernels.

Field elements are integers ``0..Q-1``; arithmetic goes through flat lookup
tables ``add[a*Q+b]``, ``mul[a*Q+b]`` plus ``neg[a]`` and ``inv[a]``.
The compiled module mirrors these signatures exactly.
"""

SCRAMBLE = 1000003

MODE_FIRST_INVERTIBLE = 0
MODE_COUNT_INVERTIBLE = 1
MODE_FIRST_SPLITTING = 2


def rref(rows, ncols, Q, add, mul, neg, inv):
    """Reduced row echelon form.  Returns ``(rows, pivots)``; input is copied."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        s = inv[row[c]]
        if s != 1:
            base = s * Q
            row = [mul[base + x] for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    nf = neg[f] * Q
                    other = m[i]
                    m[i] = [add[a * Q + mul[nf + b]] for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rank_square(vec, off, d, Q, add, mul, neg, inv):
    m = [list(vec[off + i * d: off + (i + 1) * d]) for i in range(d)]
    r = 0
    for c in range(d):
        piv = -1
        for i in range(r, d):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        s = inv[row[c]] * Q
        row = [mul[s + x] for x in row]
        m[r] = row
        for i in range(r + 1, d):
            f = m[i][c]
            if f:
                nf = neg[f] * Q
                other = m[i]
                m[i] = [add[a * Q + mul[nf + b]] for a, b in zip(other, row)]
        r += 1
    return r


def _is_nilpotent(vec, off, d, Q, add, mul):
    if d == 0:
        return True
    a = [list(vec[off + i * d: off + (i + 1) * d]) for i in range(d)]
    p = a
    for _ in range(d - 1):
        nxt = []
        for i in range(d):
            pi = p[i]
            row = []
            for j in range(d):
                s = 0
                for t in range(d):
                    x = pi[t]
                    if x:
                        y = a[t][j]
                        if y:
                            s = add[s * Q + mul[x * Q + y]]
                row.append(s)
            nxt.append(row)
        p = nxt
    return not any(any(r) for r in p)


def scan(basis, blocks, Q, add, mul, neg, inv, mode):
    """Scan all linear combinations of ``basis`` (flat vectors).

    ``blocks`` lists ``(offset, size)`` square blocks, one per vertex.  Modes:
    first invertible combination, number of invertible combinations, or
    first combination that is neither nilpotent nor invertible.  Combinations
    are visited in the scrambled order ``t -> t*SCRAMBLE mod Q^h``.
    """
    h = len(basis)
    total = Q**h
    L = len(basis[0]) if h else 0
    count = 0
    for t in range(1, total):
        idx = (t * SCRAMBLE) % total
        vec = [0] * L
        for j in range(h):
            c = idx % Q
            idx //= Q
            if c:
                b = basis[j]
                cQ = c * Q
                vec = [add[v * Q + mul[cQ + x]] if x else v for v, x in zip(vec, b)]
        invertible = True
        for off, d in blocks:
            if d and _rank_square(vec, off, d, Q, add, mul, neg, inv) < d:
                invertible = False
                break
        if mode == MODE_FIRST_INVERTIBLE:
            if invertible:
                return vec
        elif mode == MODE_COUNT_INVERTIBLE:
            if invertible:
                count += 1
        else:
            if not invertible and not all(_is_nilpotent(vec, off, d, Q, add, mul) for off, d in blocks):
                return vec
    return count if mode == MODE_COUNT_INVERTIBLE else None
