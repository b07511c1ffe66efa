"""Standard Hopf algebras: group algebras, function algebras, Sweedler's H4."""

from __future__ import annotations

import itertools

from .hopf import Algebra, Hopf
from .linalg import QQ, Field, Mat


class PermGroup:
    """A finite group of permutations, elements listed with the identity first.

    Composition is (p*q)(x) = p(q(x)).
    """

    def __init__(self, elements, name: str = ""):
        elems = sorted({tuple(e) for e in elements})
        n = len(elems[0])
        ident = tuple(range(n))
        elems.remove(ident)
        self.elements = [ident] + elems
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.name = name
        self.order = len(self.elements)

    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        return cls(itertools.permutations(range(n)), "S%d" % n)

    @classmethod
    def cyclic(cls, n: int) -> "PermGroup":
        return cls([tuple((i + k) % n for i in range(n)) for k in range(n)], "Z/%d" % n)

    def mul(self, i: int, j: int) -> int:
        p, q = self.elements[i], self.elements[j]
        return self.index[tuple(p[q[x]] for x in range(len(p)))]

    def inv(self, i: int) -> int:
        p = self.elements[i]
        out = [0] * len(p)
        for x, y in enumerate(p):
            out[y] = x
        return self.index[tuple(out)]


def group_algebra(g: PermGroup, field: Field = QQ) -> Hopf:
    """C[G]: basis the group elements, Δg = g⊗g, S(g) = g⁻¹."""
    one = field.one
    n = g.order
    alg = Algebra.from_function(n, lambda i, j: {g.mul(i, j): one}, {0: one}, field,
                                "C[%s]" % g.name)
    comult = [{(i, i): one} for i in range(n)]
    s = Mat.from_sparse_columns([{g.inv(i): one} for i in range(n)], n, field)
    return Hopf(alg, comult, [one] * n, s, s, alg.name)


def function_algebra(g: PermGroup, field: Field = QQ) -> Hopf:
    """C(G): basis the point masses δ_g."""
    one = field.one
    n = g.order
    alg = Algebra.from_function(n, lambda i, j: {i: one} if i == j else {},
                                {i: one for i in range(n)}, field, "C(%s)" % g.name)
    comult = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            comult[g.mul(i, j)][(i, j)] = one
    counit = [one if i == 0 else field.zero for i in range(n)]
    s = Mat.from_sparse_columns([{g.inv(i): one} for i in range(n)], n, field)
    return Hopf(alg, comult, counit, s, s, alg.name)


# Sweedler's four-dimensional algebra: basis 1, g, x, gx written as g^a x^b.
H4_BASIS = ((0, 0), (1, 0), (0, 1), (1, 1))
H4_NAMES = ("1", "g", "x", "gx")


def sweedler_h4(field: Field = QQ) -> Hopf:
    one = field.one
    idx = {ab: i for i, ab in enumerate(H4_BASIS)}

    def product(i, j):
        a, b = H4_BASIS[i]
        c, d = H4_BASIS[j]
        if b + d > 1:
            return {}
        sign = -one if b * c else one
        return {idx[((a + c) % 2, b + d)]: sign}

    alg = Algebra.from_function(4, product, {0: one}, field, "H4")
    comult = [
        {(0, 0): one},
        {(1, 1): one},
        {(2, 0): one, (1, 2): one},
        {(3, 1): one, (0, 3): one},
    ]
    counit = [one, one, field.zero, field.zero]
    s = Mat.from_sparse_columns([{0: one}, {1: one}, {3: -one}, {2: one}], 4, field)
    return Hopf(alg, comult, counit, s, None, "H4")
