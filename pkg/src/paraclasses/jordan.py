"""Generalized Jordan normal form over a finite field.

A form is a tuple of (monic irreducible polynomial, partition) pairs sorted
by (degree, coefficient sequence).  Jordan blocks follow the subdiagonal
convention: the companion matrix repeats on the diagonal with identity
blocks directly below it, and the companion matrix of p is the matrix of
multiplication by a root of p on the power basis.
"""

from __future__ import annotations

import json
from typing import Iterator

from . import gf
from .gf import FiniteField, Poly
from .matrices import Mat, char_poly, direct_sum, eval_poly_at
from .partitions import check_partition, partitions

GJNF = tuple  # tuple of (poly, partition) pairs, canonically sorted


def companion(p: Poly, field: FiniteField) -> Mat:
    d = gf.pdeg(p)
    if d < 1 or p[-1] != field.one:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    m = Mat.zeros(field, d, d)
    for j in range(d - 1):
        m.a[j + 1, j] = field.one
    for i in range(d):
        m.a[i, d - 1] = field.neg(p[i])
    return m


def jordan_block(p: Poly, n: int, field: FiniteField) -> Mat:
    """J_n(C_p): n copies of the companion matrix with I_d on the block
    subdiagonal."""
    if n < 1:
        raise ValueError("block multiplicity must be >= 1")
    if not gf.is_irreducible(p, field):
        raise ValueError("p must be irreducible")
    d = gf.pdeg(p)
    c = companion(p, field)
    m = Mat.zeros(field, n * d, n * d)
    for i in range(n):
        m.a[i * d:(i + 1) * d, i * d:(i + 1) * d] = c.a
        if i:
            for k in range(d):
                m.a[i * d + k, (i - 1) * d + k] = field.one
    return m


def canonical_sort(factors) -> GJNF:
    factors = tuple(sorted(((tuple(p), check_partition(lam)) for p, lam in factors),
                           key=lambda t: (gf.pdeg(t[0]), t[0])))
    polys = [p for p, _ in factors]
    if len(set(polys)) != len(polys):
        raise ValueError("duplicate generalized eigenvalue in form data")
    return factors


def assemble(form: GJNF, field: FiniteField) -> Mat:
    """Direct sum over factors of the per-part Jordan blocks."""
    blocks = []
    for p, lam in canonical_sort(form):
        for part in lam:
            blocks.append(jordan_block(p, part, field))
    if not blocks:
        return Mat.zeros(field, 0, 0)
    return direct_sum(*blocks)


def factor_offsets(form: GJNF, field: FiniteField) -> dict:
    """Row/column offset of each factor's block inside the assembled matrix."""
    out = {}
    off = 0
    for p, lam in canonical_sort(form):
        out[tuple(p)] = off
        off += sum(lam) * gf.pdeg(p)
    return out


def gjnf(m: Mat, seed: int = 0) -> GJNF:
    """Generalized Jordan data of a square matrix from the ranks of p(A)^i.

    The number of parts of lambda_p that are >= i is
    (rank p(A)^(i-1) - rank p(A)^i) / deg(p).
    """
    if m.rows != m.cols:
        raise ValueError("gjnf needs a square matrix")
    field = m.field
    cp = char_poly(m)
    out = []
    for p, mult in gf.poly_factor(cp, field, seed=seed):
        d = gf.pdeg(p)
        pa = eval_poly_at(p, m)
        ranks = [m.rows]
        cur = pa
        while ranks[-1] - cur.rank() > 0:
            ranks.append(cur.rank())
            cur = cur @ pa
        counts = [(ranks[i - 1] - ranks[i]) // d for i in range(1, len(ranks))]
        lam = []
        for size in range(len(counts), 0, -1):
            reps = counts[size - 1] - (counts[size] if size < len(counts) else 0)
            lam.extend([size] * reps)
        assert sum(lam) == mult, "rank data inconsistent with factor multiplicity"
        out.append((p, tuple(lam)))
    return canonical_sort(out)


def enumerate_gjnf(n: int, field: FiniteField, invertible_only: bool = True,
                   seed: int = 0) -> Iterator[GJNF]:
    """Every generalized Jordan form of total dimension n, exactly once.

    Iterates over multisets of (irreducible, partition) pairs whose weighted
    sizes sum to n; p = t is excluded when invertible_only.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    irrs = []
    for d in range(1, n + 1):
        irrs.extend(gf.irreducibles(d, field, exclude_x=invertible_only))
    # irrs is already in canonical (degree, lex) order

    def rec(rem: int, start: int):
        if rem == 0:
            yield ()
            return
        for idx in range(start, len(irrs)):
            d = gf.pdeg(irrs[idx])
            if d > rem:
                break  # degrees ascend from here on
            for size in range(1, rem // d + 1):
                for lam in partitions(size):
                    for rest in rec(rem - size * d, idx + 1):
                        yield ((irrs[idx], lam),) + rest

    for form in rec(n, 0):
        yield canonical_sort(form)


def gjnf_to_json(form: GJNF, field: FiniteField) -> list:
    return [{"poly": gf.poly_str(p, field), "partition": list(lam)}
            for p, lam in form]


def gjnf_from_json(data, field: FiniteField) -> GJNF:
    if isinstance(data, str):
        data = json.loads(data)
    return canonical_sort([(gf.poly_parse(d["poly"], field), tuple(d["partition"]))
                           for d in data])
