"""Conjugacy classes in maximal parabolic subgroups and affine groups.

A class of the block group is located by a pair of Jordan forms (the Levi
representative) together with one orbit representative of the per-eigenvalue
matrix problem for every shared generalized eigenvalue; the assembled
witness is [[A, V], [0, B]] with V the sum of the lifted blocks.  Counting
sums, over Levi pairs, the product of per-eigenvalue orbit counts; orbit
counts of finite-type shapes are memoized by shape alone, which is sound by
field independence (checked in the tests rather than assumed silently).
Class counts as functions of the field size are recovered exactly by
rational Lagrange interpolation on prime-power sample points.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import gf
from .gf import FiniteField, Poly, ff, ff_order
from .jordan import (GJNF, assemble, canonical_sort, enumerate_gjnf,
                     factor_offsets, gjnf_from_json, gjnf_to_json)
from .matrices import Mat, block
from .cocentralizer import (cocent_from_json, cocent_to_json, lift,
                            reduce_levi_pair)
from .matrix_problem import DEFAULT_BUDGET, enumerate_orbits, type_classify
from .partitions import check_partition

_finite_shape_counts: dict = {}


def orbit_count_cached(mu, nu, field: FiniteField, budget: int = DEFAULT_BUDGET) -> int:
    """Orbit count of the (mu, nu) problem over K, memoized by shape alone
    for finite-type shapes (their counts do not depend on the field)."""
    mu, nu = check_partition(mu), check_partition(nu)
    if type_classify(mu, nu).kind == "finite":
        key = (mu, nu)
        if key not in _finite_shape_counts:
            _finite_shape_counts[key] = enumerate_orbits(mu, nu, ff(2), budget).count
        return _finite_shape_counts[key]
    return enumerate_orbits(mu, nu, field, budget).count


def levi_reps(m: int, n: int, field: FiniteField) -> Iterator[tuple]:
    """All pairs of invertible Jordan forms of dimensions (m, n)."""
    if m < 1 or n < 1:
        raise ValueError("block dimensions must be >= 1")
    ga_list = list(enumerate_gjnf(m, field, invertible_only=True))
    gb_list = list(enumerate_gjnf(n, field, invertible_only=True))
    for ga in ga_list:
        for gb in gb_list:
            yield ga, gb


def parabolic_class_count(m: int, n: int, field: FiniteField,
                          budget: int = DEFAULT_BUDGET, threads: int = 1) -> int:
    """Number of conjugacy classes of the (m, n) block group over the field."""
    pairs = list(levi_reps(m, n, field))
    needed = []
    seen = set()
    for ga, gb in pairs:
        for pr in reduce_levi_pair(ga, gb, field):
            key = (pr.mu, pr.nu, pr.field.order)
            if key not in seen:
                seen.add(key)
                needed.append(pr)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda pr: orbit_count_cached(pr.mu, pr.nu, pr.field, budget),
                          needed))
    else:
        for pr in needed:
            orbit_count_cached(pr.mu, pr.nu, pr.field, budget)
    total = 0
    for ga, gb in pairs:
        prod = 1
        for pr in reduce_levi_pair(ga, gb, field):
            prod *= orbit_count_cached(pr.mu, pr.nu, pr.field, budget)
        total += prod
    return total


@dataclass
class ClassRep:
    """A conjugacy class representative of the block group."""
    levi_a: GJNF
    levi_b: GJNF
    blocks: tuple          # (poly, CocentElement) per shared eigenvalue
    matrix: Mat            # [[A, V], [0, B]]


def _assemble_class_rep(ga, gb, reps, field: FiniteField) -> Mat:
    a = assemble(ga, field)
    b = assemble(gb, field)
    v = Mat.zeros(field, a.rows, b.rows)
    ra = factor_offsets(ga, field)
    cb = factor_offsets(gb, field)
    for p, rep in reps:
        lf = lift(rep, p, field)
        r0, c0 = ra[p], cb[p]
        v.a[r0:r0 + lf.rows, c0:c0 + lf.cols] = lf.a
    return block([[a, v], [Mat.zeros(field, b.rows, a.cols), b]])


def parabolic_class_reps(m: int, n: int, field: FiniteField,
                         budget: int = DEFAULT_BUDGET) -> Iterator[ClassRep]:
    """One assembled representative per conjugacy class."""
    for ga, gb in levi_reps(m, n, field):
        problems = reduce_levi_pair(ga, gb, field)
        per_block = [enumerate_orbits(pr.mu, pr.nu, pr.field, budget).reps
                     for pr in problems]
        for combo in itertools.product(*per_block):
            reps = tuple((pr.p, rep) for pr, rep in zip(problems, combo))
            yield ClassRep(ga, gb, reps, _assemble_class_rep(ga, gb, reps, field))


def class_rep_to_json(rep: ClassRep, field: FiniteField) -> dict:
    from .matrices import mat_str
    return {
        "levi_a": gjnf_to_json(rep.levi_a, field),
        "levi_b": gjnf_to_json(rep.levi_b, field),
        "blocks": [{"poly": gf.poly_str(p, field), "rep": cocent_to_json(v)}
                   for p, v in rep.blocks],
        "matrix": mat_str(rep.matrix),
    }


def class_rep_from_json(data, field: FiniteField) -> ClassRep:
    from .gf import extend
    from .matrices import mat_parse
    if isinstance(data, str):
        data = json.loads(data)
    ga = gjnf_from_json(data["levi_a"], field)
    gb = gjnf_from_json(data["levi_b"], field)
    blocks = []
    for b in data["blocks"]:
        p = gf.poly_parse(b["poly"], field)
        K = extend(field, p)
        blocks.append((p, cocent_from_json(b["rep"], K)))
    return ClassRep(ga, gb, tuple(blocks), mat_parse(data["matrix"], field))


# -- class-count polynomials -------------------------------------------------


def prime_powers() -> Iterator[int]:
    q = 2
    while True:
        m = q
        for p in range(2, q + 1):
            if m % p == 0:
                while m % p == 0:
                    m //= p
                break
        if m == 1:
            yield q
        q += 1


def _lagrange_fit(points) -> tuple:
    """Exact interpolation through (x, y) points; coefficients low-to-high."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            num = [Fraction(0)] + num
            for k in range(len(num) - 1):
                num[k] -= Fraction(xj) * num[k + 1]
            den *= xi - xj
        scale = Fraction(yi) / den
        for k, c in enumerate(num):
            coeffs[k] += c * scale
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _eval_poly_int(coeffs, x: int):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class CountPolynomial(tuple):
    """Integer coefficients of the class count as a polynomial in the field
    size, low-to-high."""

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self):
            acc = acc * q + c
        return acc


def count_poly(m: int, n: int, budget: int = DEFAULT_BUDGET,
               threads: int = 1) -> CountPolynomial:
    """Interpolate the class count of the (m, n) block group in the field
    size q, with adaptive degree discovery and held-out validation.

    Samples at prime powers only; the fit is accepted once two consecutive
    fits agree and two further held-out prime powers evaluate correctly.
    Non-integer coefficients signal an implementation bug and raise.
    """
    if not (m < 6 or n < 6):
        raise ValueError("count polynomial only available for m < 6 or n < 6")
    counts: dict[int, int] = {}

    def sample(q: int) -> int:
        if q not in counts:
            counts[q] = parabolic_class_count(m, n, ff_order(q), budget, threads)
        return counts[q]

    qs = prime_powers()
    pts = []
    npts = m + n + 3  # degree guess m+n+2, so that many + 1 points
    while len(pts) < npts:
        q = next(qs)
        pts.append((q, sample(q)))
    fit = _lagrange_fit(pts)
    while True:
        q = next(qs)
        pts.append((q, sample(q)))
        fit2 = _lagrange_fit(pts)
        if fit2 == fit:
            h1 = next(qs)
            h2 = next(qs)
            if (_eval_poly_int(fit, h1) == sample(h1)
                    and _eval_poly_int(fit, h2) == sample(h2)):
                break
        fit = fit2
    if any(c.denominator != 1 for c in fit):
        raise ArithmeticError(f"count polynomial has non-integer coefficients: {fit}")
    return CountPolynomial(int(c) for c in fit)


# -- general linear and affine groups ----------------------------------------


def gl_class_count(n: int, field: FiniteField) -> int:
    """Number of conjugacy classes of the invertible n x n group (1 for n=0)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum(1 for _ in enumerate_gjnf(n, field, invertible_only=True))


def agl_class_count(n: int, field: FiniteField) -> int:
    """Sum of the invertible class counts in dimensions n, n-1, ..., 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(gl_class_count(n - d, field) for d in range(n + 1))


def _eigen_one_poly(field: FiniteField) -> Poly:
    return (field.neg(field.one), field.one)  # t - 1


def agl_class_reps(n: int, field: FiniteField) -> Iterator[Mat]:
    """Affine class representatives: for every invertible form of dimension
    n - d (d = 0, ..., n), adjoin one eigenvalue-1 Jordan block of size d
    and put the translation row above it (nothing adjoined for d = 0).

    The single 1 sits on the last column of the adjoined block: with the
    subdiagonal block convention, translations over the first d-1 columns
    of an eigenvalue-1 block are killed by conjugation and the last column
    survives."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p1 = _eigen_one_poly(field)
    for d in range(n + 1):
        for g in enumerate_gjnf(n - d, field, invertible_only=True):
            if d == 0:
                gp = g
                e_col = None
            else:
                parts = dict(g)
                lam = tuple(sorted(parts.get(p1, ()) + (d,), reverse=True))
                parts[p1] = lam
                gp = canonical_sort(list(parts.items()))
                off = factor_offsets(gp, field)[p1]
                off += sum(x for x in lam if x > d)
                e_col = off + d - 1
            body = assemble(gp, field)
            out = Mat.zeros(field, n + 1, n + 1)
            out.a[0, 0] = field.one
            out.a[1:, 1:] = body.a
            if e_col is not None:
                out.a[0, 1 + e_col] = field.one
            yield out
