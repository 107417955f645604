"""The matrix-problem space attached to a pair of Jordan data sharing a
generalized eigenvalue.

For partitions mu (left, size m) and nu (right, size n) over K, the space
is a grid of truncated polynomials: entry (i,j) lives in K[x]_{l_ij} with
l_ij = min(mu_i, nu_j).  The centralizer unit groups of the two sides act
on the left by plain block multiplication and on the right through the
d_twist isomorphism; both truncate entrywise.  Orbits of the combined
action index the conjugacy classes over the fixed Levi representative, and
`lift` sends a grid element to the m x n corner block of the class
representative.

The lift is an exact linear section of the corner-block quotient: the
column space of a Jordan block reads x-powers upward (basis vector s maps
to x^(s-1)) while the row space reads them downward (t maps to x^(nu_j-t)),
so the matrix cells carrying exponent e in block (i,j) form the
antidiagonal (s-1) + (nu_j-t) = e, and the lift puts the whole coefficient
in the top-row cell of that antidiagonal.  Its image is a complement of
the commutator space {wB - Aw}, which is what makes distinct orbits
assemble into non-conjugate group elements (checked against the
brute-force oracle in the tests).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Union

from . import gf
from .gf import FiniteField, Poly, extend
from .matrices import Mat
from .centralizer import AlgElement, Generator, d_twist, _mult_matrix
from .partitions import check_partition


class CocentShape:
    __slots__ = ("mu", "nu", "field", "l", "dim")

    def __init__(self, mu, nu, field: FiniteField):
        self.mu = check_partition(mu)
        self.nu = check_partition(nu)
        if not self.mu or not self.nu:
            raise ValueError("both partitions must be nonempty")
        self.field = field
        self.l = tuple(tuple(min(a, b) for b in self.nu) for a in self.mu)
        self.dim = sum(sum(row) for row in self.l)

    def key(self):
        return (self.mu, self.nu, id(self.field))

    def __eq__(self, other):
        return isinstance(other, CocentShape) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CocentShape(mu={self.mu}, nu={self.nu}, {self.field!r})"

    def zero(self) -> "CocentElement":
        return CocentElement(self, tuple(tuple((0,) * l for l in row) for row in self.l))

    def slots(self) -> list:
        """Flat (i, j, exponent) coordinates in canonical order."""
        out = []
        for i in range(len(self.mu)):
            for j in range(len(self.nu)):
                for a in range(self.l[i][j]):
                    out.append((i, j, a))
        return out

    def elements(self) -> Iterator["CocentElement"]:
        import itertools
        slots = self.slots()
        for flat in itertools.product(self.field.elements(), repeat=len(slots)):
            yield CocentElement.from_flat(self, flat)


class CocentElement:
    __slots__ = ("shape", "entries", "_hash")

    def __init__(self, shape: CocentShape, entries):
        self.shape = shape
        self.entries = tuple(tuple(tuple(e) for e in row) for row in entries)
        for i, row in enumerate(self.entries):
            assert len(row) == len(shape.nu)
            for j, e in enumerate(row):
                assert len(e) == shape.l[i][j]
        self._hash = None

    @classmethod
    def from_flat(cls, shape: CocentShape, flat) -> "CocentElement":
        rows = []
        pos = 0
        for i in range(len(shape.mu)):
            row = []
            for j in range(len(shape.nu)):
                l = shape.l[i][j]
                row.append(tuple(flat[pos:pos + l]))
                pos += l
            rows.append(tuple(row))
        assert pos == len(flat)
        return cls(shape, rows)

    def flat(self) -> tuple:
        return tuple(c for row in self.entries for e in row for c in e)

    def __eq__(self, other):
        return (isinstance(other, CocentElement) and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape.key(), self.entries))
        return self._hash

    def __repr__(self):
        f = self.shape.field
        rows = [[gf.poly_str(gf.pnormalize(e), f) for e in row] for row in self.entries]
        return f"CocentElement(mu={self.shape.mu}, nu={self.shape.nu}, {rows})"


def _as_alg(g: Union[Generator, AlgElement]) -> AlgElement:
    return g.realized if isinstance(g, Generator) else g


def act_left(g: Union[Generator, AlgElement], v: CocentElement) -> CocentElement:
    """Left multiplication by an element of the mu-side centralizer."""
    g = _as_alg(g)
    sh = v.shape
    if g.lam != sh.mu or g.field is not sh.field or g.transposed:
        raise ValueError("left action needs a straight-shape element over mu")
    f = sh.field
    s, t = len(sh.mu), len(sh.nu)
    out = []
    for i in range(s):
        row = []
        for j in range(t):
            lim = sh.l[i][j]
            acc = [f.zero] * lim
            for k in range(s):
                off = g.offset(i, k)
                for t1, c1 in enumerate(g.windows[i][k]):
                    e1 = off + t1
                    if e1 >= lim:
                        break
                    if c1 == f.zero:
                        continue
                    for t2, c2 in enumerate(v.entries[k][j]):
                        e = e1 + t2
                        if e >= lim:
                            break
                        if c2 != f.zero:
                            acc[e] = f.add(acc[e], f.mul(c1, c2))
            row.append(tuple(acc))
        out.append(tuple(row))
    return CocentElement(sh, out)


def act_right(v: CocentElement, g: Union[Generator, AlgElement]) -> CocentElement:
    """Right multiplication by d_twist(g), g in the nu-side centralizer."""
    g = _as_alg(g)
    sh = v.shape
    if g.lam != sh.nu or g.field is not sh.field:
        raise ValueError("right action needs an element over nu")
    w = d_twist(g) if not g.transposed else g
    f = sh.field
    s, t = len(sh.mu), len(sh.nu)
    out = []
    for i in range(s):
        row = []
        for j in range(t):
            lim = sh.l[i][j]
            acc = [f.zero] * lim
            for k in range(t):
                off = w.offset(k, j)
                for t2, c2 in enumerate(w.windows[k][j]):
                    e2 = off + t2
                    if e2 >= lim:
                        break
                    if c2 == f.zero:
                        continue
                    for t1, c1 in enumerate(v.entries[i][k]):
                        e = t1 + e2
                        if e >= lim:
                            break
                        if c1 != f.zero:
                            acc[e] = f.add(acc[e], f.mul(c1, c2))
            row.append(tuple(acc))
        out.append(tuple(row))
    return CocentElement(sh, out)


@dataclass(frozen=True)
class EigenBlockProblem:
    """Per-eigenvalue matrix problem of a Levi pair: partitions of the shared
    irreducible p on the two sides, over the extension K by p."""
    p: Poly
    mu: tuple
    nu: tuple
    field: FiniteField  # K = base extended by p

    def shape(self) -> CocentShape:
        return CocentShape(self.mu, self.nu, self.field)


def reduce_levi_pair(ga, gb, base: FiniteField) -> list:
    """One problem per irreducible occurring in both forms; eigenvalues on
    one side only contribute nothing (their block vanishes)."""
    da = dict(ga)
    db = dict(gb)
    out = []
    for p in sorted(set(da) & set(db), key=lambda f: (gf.pdeg(f), f)):
        K = extend(base, p)
        out.append(EigenBlockProblem(p, da[p], db[p], K))
    return out


def lift(v: CocentElement, p: Poly, base: FiniteField) -> Mat:
    """Corner-block representative: coefficient c of x^a in entry (i,j)
    becomes the multiplication matrix of c in the top-row cell of the
    block's exponent-a antidiagonal (local cell (1, nu_j - a))."""
    sh = v.shape
    d = gf.pdeg(p)
    K = sh.field
    if d == 1:
        assert K is base
    else:
        assert K.base is base and K.modulus == tuple(p)
    mu, nu = sh.mu, sh.nu
    m, n = sum(mu) * d, sum(nu) * d
    roffs = [0]
    for x in mu:
        roffs.append(roffs[-1] + x * d)
    coffs = [0]
    for x in nu:
        coffs.append(coffs[-1] + x * d)
    out = Mat.zeros(base, m, n)
    for i in range(len(mu)):
        for j in range(len(nu)):
            for a, c in enumerate(v.entries[i][j]):
                if c == K.zero:
                    continue
                mm = _mult_matrix(c, K, base)
                r0 = roffs[i]
                c0 = coffs[j] + (nu[j] - 1 - a) * d
                out.a[r0:r0 + d, c0:c0 + d] = mm.a
    return out


# -- JSON ---------------------------------------------------------------------


def cocent_to_json(v: CocentElement) -> dict:
    f = v.shape.field
    return {
        "mu": list(v.shape.mu),
        "nu": list(v.shape.nu),
        "entries": [[",".join(f.element_str(c) for c in e) if e else ""
                     for e in row] for row in v.entries],
    }


def cocent_from_json(data, field: FiniteField) -> CocentElement:
    if isinstance(data, str):
        data = json.loads(data)
    sh = CocentShape(tuple(data["mu"]), tuple(data["nu"]), field)
    rows = []
    for i, row in enumerate(data["entries"]):
        out = []
        for j, e in enumerate(row):
            coeffs = tuple(field.element_parse(t) for t in e.split(",")) if e else ()
            assert len(coeffs) == sh.l[i][j], "entry length does not match the shape"
            out.append(coeffs)
        rows.append(tuple(out))
    return CocentElement(sh, rows)
