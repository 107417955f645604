"""Shared independent oracles for the test suite.

These deliberately avoid the package's linear algebra: matrices are nested
tuples over a prime field with arithmetic written out directly, so the
values they produce are independent of the code under test.
"""

import itertools

import numpy as np


def tup_mat_mul(a, b, p):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) % p
                       for j in range(m)) for i in range(n))


def tup_mat_rank(a, p):
    rows = [list(r) for r in a]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def gl_elements_bruteforce(n, p):
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        m = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if tup_mat_rank(m, p) == n:
            out.append(m)
    return out


def gl_conjugacy_classes_bruteforce(n, p):
    """Partition of the invertible n x n matrices over F_p into conjugacy
    classes, by closing under conjugation by every group element."""
    els = gl_elements_bruteforce(n, p)
    index = {m: i for i, m in enumerate(els)}
    inverses = {}
    for m in els:
        if m not in inverses:
            for w in els:
                if tup_mat_mul(m, w, p) == tuple(
                        tuple(int(i == j) for j in range(n)) for i in range(n)):
                    inverses[m] = w
                    break
    labels = [-1] * len(els)
    cls = 0
    for i, m in enumerate(els):
        if labels[i] != -1:
            continue
        for g in els:
            c = tup_mat_mul(tup_mat_mul(g, m, p), inverses[g], p)
            labels[index[c]] = cls
        cls += 1
    return cls, labels


def commutator_space(A, B):
    """Columns spanning {wB - Aw} inside the flattened m x n matrix space."""
    from paraclasses.matrices import Mat
    f = A.field
    m, n = A.rows, B.rows
    cols = []
    for r in range(m):
        for c in range(n):
            w = Mat.zeros(f, m, n)
            w.a[r, c] = f.one
            img = w @ B - A @ w
            cols.append(img.a.reshape(-1))
    return Mat(f, np.array(cols, dtype=np.int32).T)


def in_span(S, target):
    from paraclasses.matrices import Mat
    aug = Mat(S.field, np.hstack([S.a, target.a.reshape(-1, 1)]))
    return aug.rank() == S.rank()
