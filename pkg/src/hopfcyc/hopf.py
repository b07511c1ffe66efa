"""
Finite-dimensional algebras and Hopf algebras given by structure constants.

Elements are sparse vectors ``{basis index: scalar}``.  Linear maps are
``Mat`` objects whose columns are the images of basis vectors.  Tensor
products of basis vectors are addressed by tuples (i, j, ...) in the
combinatorial routines and by the row-major flat index elsewhere.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import isqrt

from . import poly
from .errors import NoNormalizedIntegral, NotSemisimple, NotSplit
from .linalg import (QQ, Field, Inconsistent, Mat, kernel_basis, solve, solve_many, to_dense,
                     to_sparse, vec_add, vec_scale)
from .report import Report, Witnesses


# --------------------------------------------------------------------------
# algebras
# --------------------------------------------------------------------------

class Algebra:
    """Unital associative algebra on a basis e_0..e_{dim-1}.

    ``table[i][j]`` is the sparse vector e_i e_j.
    """

    def __init__(self, dim: int, table: list, unit: dict, field: Field = QQ, name: str = ""):
        self.dim = dim
        self.table = table
        self.unit = {k: v for k, v in unit.items() if v}
        self.field = field
        self.name = name

    # construction --------------------------------------------------------
    @classmethod
    def from_mult(cls, mult: Mat, unit, field: Field | None = None, name: str = ""):
        """``mult`` has shape dim x dim^2 with column i*dim+j equal to e_i e_j."""
        field = field or mult.field
        dim = mult.nrows
        if mult.ncols != dim * dim:
            raise ValueError("multiplication matrix must be dim x dim^2")
        cols = mult.columns()
        table = [[cols[i * dim + j] for j in range(dim)] for i in range(dim)]
        if not isinstance(unit, dict):
            unit = to_sparse(unit)
        return cls(dim, table, unit, field, name)

    @classmethod
    def from_function(cls, dim: int, product, unit: dict, field: Field = QQ, name: str = ""):
        """Build from a Python function ``product(i, j) -> sparse vector``."""
        table = [[{k: v for k, v in product(i, j).items() if v} for j in range(dim)]
                 for i in range(dim)]
        return cls(dim, table, unit, field, name)

    @cached_property
    def mult_matrix(self) -> Mat:
        cols = [self.table[i][j] for i in range(self.dim) for j in range(self.dim)]
        return Mat.from_sparse_columns(cols, self.dim, self.field)

    # arithmetic ----------------------------------------------------------
    def basis(self, i: int) -> dict:
        return {i: self.field.one}

    @property
    def one(self) -> dict:
        return dict(self.unit)

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        tab = self.table
        for i, x in a.items():
            row = tab[i]
            for j, y in b.items():
                prod = row[j]
                if prod:
                    vec_add(out, prod, x * y)
        return out

    def mul_chain(self, *xs: dict) -> dict:
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul(acc, x)
        return acc

    def add(self, *xs: dict) -> dict:
        out: dict = {}
        for x in xs:
            vec_add(out, x)
        return out

    def sub(self, a: dict, b: dict) -> dict:
        return vec_add(dict(a), b, -self.field.one)

    def scale(self, a: dict, c) -> dict:
        return vec_scale(a, c)

    def power(self, a: dict, k: int) -> dict:
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def left(self, a: dict) -> Mat:
        """Matrix of x -> a x."""
        return Mat.from_sparse_columns([self.mul(a, self.basis(j)) for j in range(self.dim)],
                                       self.dim, self.field)

    def right(self, a: dict) -> Mat:
        """Matrix of x -> x a."""
        return Mat.from_sparse_columns([self.mul(self.basis(j), a) for j in range(self.dim)],
                                       self.dim, self.field)

    def inverse(self, a: dict) -> dict:
        try:
            x = solve(self.left(a), to_dense(self.unit, self.dim, self.field))
        except Inconsistent:
            raise ZeroDivisionError("element is not invertible") from None
        x = to_sparse(x)
        if self.mul(x, a) != self.unit:
            raise ZeroDivisionError("element has a right inverse only")
        return x

    def is_idempotent(self, a: dict) -> bool:
        return self.mul(a, a) == {k: v for k, v in a.items() if v}

    # structure -----------------------------------------------------------
    def verify(self) -> Report:
        rep = Report("algebra")
        w = Witnesses()
        b = self.basis
        for i, j, k in itertools.product(range(self.dim), repeat=3):
            if self.mul(self.table[i][j], b(k)) != self.mul(b(i), self.table[j][k]):
                if w((i, j, k)):
                    break
        rep.add("associativity", w)
        w = Witnesses()
        for i in range(self.dim):
            if self.mul(self.unit, b(i)) != b(i) or self.mul(b(i), self.unit) != b(i):
                if w((i,)):
                    break
        rep.add("unit", w)
        return rep

    def trace_form(self) -> Mat:
        lefts = [self.left(self.basis(i)) for i in range(self.dim)]
        return Mat.from_rows([[(lefts[i] @ lefts[j]).trace() for j in range(self.dim)]
                              for i in range(self.dim)], self.field)

    def radical(self) -> list:
        """Jacobson radical, computed as the kernel of the trace form (char 0)."""
        return [to_sparse(v) for v in kernel_basis(self.trace_form())]

    def is_semisimple(self) -> bool:
        return not self.radical()

    def center(self) -> list:
        blocks = []
        for j in range(self.dim):
            e = self.basis(j)
            blocks.append(self.left(e) - self.right(e))
        return [to_sparse(v) for v in kernel_basis(Mat.vstack(blocks))]

    def span_rank(self, vecs: list) -> int:
        if not vecs:
            return 0
        return Mat.from_sparse_columns(vecs, self.dim, self.field).rank()

    def subalgebra_closure(self, gens: list) -> list:
        """A basis (as vectors) of the unital subalgebra generated by ``gens``."""
        basis = [self.one]
        rank = self.span_rank(basis)
        frontier = list(basis)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if self.span_rank(basis + [y]) > rank:
                        basis.append(y)
                        rank += 1
                        new.append(y)
            frontier = new
        return basis

    def generators(self) -> list:
        """Greedy set of basis indices generating the algebra."""
        gens: list = []
        span = self.subalgebra_closure([])
        for i in range(self.dim):
            if len(span) == self.dim:
                break
            if self.span_rank(span + [self.basis(i)]) > len(span):
                gens.append(i)
                span = self.subalgebra_closure([self.basis(g) for g in gens])
        return gens

    def minpoly(self, a: dict, unit: dict | None = None) -> list:
        """Minimal polynomial of ``a`` (monic, low degree first) relative to ``unit``."""
        unit = self.unit if unit is None else unit
        powers = [unit]
        while True:
            nxt = self.mul(powers[-1], a)
            m = Mat.from_sparse_columns(powers, self.dim, self.field)
            try:
                c = solve(m, to_dense(nxt, self.dim, self.field))
            except Inconsistent:
                powers.append(nxt)
                continue
            return [-x for x in c] + [self.field.one]

    def evaluate(self, p: list, a: dict, unit: dict | None = None) -> dict:
        unit = self.unit if unit is None else unit
        acc: dict = {}
        for c in reversed(p):
            acc = self.mul(acc, a) if acc else {}
            vec_add(acc, unit, c)
        return acc


def _quotient(alg: Algebra, ideal: list) -> tuple[Algebra, callable]:
    """Quotient algebra by the two-sided ideal spanned by ``ideal``."""
    f = alg.field
    if ideal:
        prows, pivots = Mat.from_sparse_columns(ideal, alg.dim, f).T.rref()
    else:
        prows, pivots = [], []
    pivset = set(pivots)
    keep = [k for k in range(alg.dim) if k not in pivset]
    pos = {k: n for n, k in enumerate(keep)}

    def project(v: dict) -> dict:
        v = dict(v)
        for row, p in zip(prows, pivots):
            c = v.get(p)
            if c:
                vec_add(v, row, -c)
        return {pos[k]: x for k, x in v.items() if k in pos}

    def product(i, j):
        return project(alg.mul(alg.basis(keep[i]), alg.basis(keep[j])))

    q = Algebra.from_function(len(keep), product, project(alg.unit), f)
    return q, project


def _ideal_closure(alg: Algebra, gens: list) -> list:
    basis: list = []
    rank = 0
    frontier = list(gens)
    while frontier:
        new = []
        for v in frontier:
            if not v or alg.span_rank(basis + [v]) == rank:
                continue
            basis.append(v)
            rank += 1
            for i in range(alg.dim):
                new.append(alg.mul(alg.basis(i), v))
                new.append(alg.mul(v, alg.basis(i)))
        frontier = new
    return basis


# --------------------------------------------------------------------------
# Wedderburn decomposition
# --------------------------------------------------------------------------

@dataclass
class Block:
    size: int
    idempotent: dict
    primitives: list = dc_field(default_factory=list)


@dataclass
class BlockDecomposition:
    blocks: list

    @property
    def sizes(self) -> list:
        return [b.size for b in self.blocks]

    def to_json(self, field: Field) -> dict:
        return {"blocks": [{"size": b.size,
                            "idempotent": {str(k): field.to_json(v)
                                           for k, v in sorted(b.idempotent.items())}}
                           for b in self.blocks]}


def _coord_key(field: Field, v: dict, dim: int):
    return tuple(field.coords(x) for x in to_dense(v, dim, field))


def _separating(alg: Algebra, space: list, target_degree: int, rng: random.Random,
                budget: int):
    """An element of span(space) whose minimal polynomial has the target degree."""
    cands = list(space)
    for a, b in itertools.combinations(space, 2):
        cands.append(alg.add(a, b))
    tries = 0
    for c in cands:
        tries += 1
        m = alg.minpoly(c)
        if len(m) - 1 == target_degree:
            return c, m
    while tries < budget:
        tries += 1
        c: dict = {}
        for v in space:
            vec_add(c, v, alg.field(rng.randint(-3, 3)))
        m = alg.minpoly(c)
        if len(m) - 1 == target_degree:
            return c, m
    return None, None


def central_idempotents(alg: Algebra, seed: int = 0, budget: int = 200) -> list:
    """Primitive central idempotents of a semisimple algebra, split over its field."""
    f = alg.field
    z_basis = alg.center()
    rng = random.Random(seed)
    z, m = _separating(alg, z_basis, len(z_basis), rng, budget)
    if z is None:
        raise NotSplit("no separating central element found within the search budget")
    roots = f.roots(m)
    if len(roots) < len(m) - 1:
        raise NotSplit("the centre contains a proper field extension of %s" % f.name)
    out = []
    for r in roots:
        num = [f.one]
        den = f.one
        for s in roots:
            if s != r:
                num = poly.mul(num, poly.linear(s, f), f)
                den = den * (r - s)
        out.append(alg.evaluate([c / den for c in num], z))
    return out


def _corner_basis(alg: Algebra, e: dict) -> list:
    vecs = [alg.mul_chain(e, alg.basis(i), e) for i in range(alg.dim)]
    vecs = [v for v in vecs if v]
    if not vecs:
        return []
    prows, _ = Mat.from_sparse_columns(vecs, alg.dim, alg.field).T.rref()
    return [dict(r) for r in prows]


def _split_idempotent(alg: Algebra, e: dict, rng: random.Random, budget: int) -> list:
    """Decompose idempotent e into orthogonal primitive idempotents."""
    f = alg.field
    corner = _corner_basis(alg, e)
    if len(corner) == 1:
        return [e]
    cands = iter(itertools.chain(
        corner,
        (alg.add(a, b) for a, b in itertools.combinations(corner, 2)),
        (alg.sub(a, b) for a, b in itertools.combinations(corner, 2))))
    tries = 0
    while tries < budget:
        tries += 1
        c = next(cands, None)
        if c is None:
            c = {}
            for v in corner:
                vec_add(c, v, f(rng.randint(-3, 3)))
        if not c:
            continue
        m = alg.minpoly(c, unit=e)
        if len(m) <= 2:
            continue
        for r in f.roots(m):
            a, q = poly.split_root(m, r, f)
            if len(q) <= 1:
                continue
            lin_pow = [f.one]
            for _ in range(a):
                lin_pow = poly.mul(lin_pow, poly.linear(r, f), f)
            _, _u, v = poly.egcd(lin_pow, q, f)
            e1 = alg.evaluate(poly.mul(v, q, f), c, unit=e)
            e2 = alg.sub(e, e1)
            if not e1 or not e2:
                continue
            return (_split_idempotent(alg, e1, rng, budget)
                    + _split_idempotent(alg, e2, rng, budget))
    raise NotSplit("no splitting element found in a corner of dimension %d" % len(corner))


def wedderburn_blocks(alg: Algebra, seed: int = 0, budget: int = 200) -> BlockDecomposition:
    """Central idempotents, block sizes and primitive idempotents of each block."""
    if not alg.is_semisimple():
        raise NotSemisimple("the trace form of %s is degenerate" % (alg.name or "the algebra"))
    rng = random.Random(seed)
    blocks = []
    for e in central_idempotents(alg, seed, budget):
        d = len(_corner_basis(alg, e))
        n = isqrt(d)
        if n * n != d:
            raise NotSplit("block of dimension %d is not a full matrix algebra" % d)
        prims = _split_idempotent(alg, e, rng, budget)
        if len(prims) != n:
            raise NotSplit("block of size %d split into %d primitive idempotents" % (n, len(prims)))
        prims.sort(key=lambda v: _coord_key(alg.field, v, alg.dim))
        blocks.append(Block(n, e, prims))
    blocks.sort(key=lambda b: (b.size, tuple(tuple(-c for c in t)
                                              for t in _coord_key(alg.field, b.idempotent, alg.dim))))
    return BlockDecomposition(blocks)


def irreducible_representation(alg: Algebra, primitive: dict) -> list:
    """Matrices of left multiplication by each basis element on the left ideal A e."""
    vecs = [alg.mul(alg.basis(i), primitive) for i in range(alg.dim)]
    prows, _ = Mat.from_sparse_columns([v for v in vecs if v], alg.dim, alg.field).T.rref()
    basis = [dict(r) for r in prows]
    bm = Mat.from_sparse_columns(basis, alg.dim, alg.field)
    out = []
    for i in range(alg.dim):
        images = Mat.from_sparse_columns([alg.mul(alg.basis(i), v) for v in basis],
                                         alg.dim, alg.field)
        out.append(solve_many(bm, images))
    return out


# --------------------------------------------------------------------------
# Hopf algebras
# --------------------------------------------------------------------------

class Hopf:
    """Hopf algebra: algebra plus Δ, ε, S and S⁻¹.

    ``comult[i]`` maps pairs (j, k) to the coefficient of e_j ⊗ e_k in Δ(e_i).
    ``antipode`` and ``antipode_inv`` are matrices with columns S(e_i).
    """

    def __init__(self, alg: Algebra, comult: list, counit: list, antipode: Mat,
                 antipode_inv: Mat | None = None, name: str = ""):
        self.alg = alg
        self.field = alg.field
        self.dim = alg.dim
        self.comult = [{k: v for k, v in c.items() if v} for c in comult]
        self.counit = [self.field(c) for c in counit]
        self.antipode = antipode
        self.antipode_inv = antipode_inv if antipode_inv is not None else antipode.inverse()
        self.name = name or alg.name
        self._delta_cache: dict = {}

    @classmethod
    def from_matrices(cls, mult: Mat, unit, comult: Mat, counit, antipode: Mat,
                      antipode_inv: Mat | None = None, name: str = ""):
        """``comult`` has shape dim^2 x dim with column i equal to Δ(e_i)."""
        alg = Algebra.from_mult(mult, unit, name=name)
        dim = alg.dim
        co = []
        for col in comult.columns():
            co.append({divmod(k, dim): v for k, v in col.items()})
        return cls(alg, co, list(counit), antipode, antipode_inv, name)

    @classmethod
    def trivial(cls, field: Field = QQ) -> "Hopf":
        one = field.one
        alg = Algebra(1, [[{0: one}]], {0: one}, field, "trivial")
        s = Mat.identity(1, field)
        return cls(alg, [{(0, 0): one}], [one], s, s, "trivial")

    # matrices -------------------------------------------------------------
    @cached_property
    def comult_matrix(self) -> Mat:
        d = self.dim
        cols = [{j * d + k: v for (j, k), v in c.items()} for c in self.comult]
        return Mat.from_sparse_columns(cols, d * d, self.field)

    # element operations ----------------------------------------------------
    def eps(self, a: dict):
        s = self.field.zero
        for i, x in a.items():
            s = s + x * self.counit[i]
        return s

    @cached_property
    def counit_vec(self) -> dict:
        return {i: c for i, c in enumerate(self.counit) if c}

    def S(self, a: dict) -> dict:
        return self.antipode.apply_sparse(a)

    def Sinv(self, a: dict) -> dict:
        return self.antipode_inv.apply_sparse(a)

    def delta(self, a: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            vec_add(out, self.comult[i], x)
        return out

    def delta_n_basis(self, i: int, n: int) -> dict:
        """Δⁿ(e_i) as {(i_0, ..., i_n): coeff}, with Δⁿ = (ι⊗Δ)Δⁿ⁻¹."""
        key = (i, n)
        hit = self._delta_cache.get(key)
        if hit is not None:
            return hit
        if n == 0:
            out = {(i,): self.field.one}
        else:
            out = {}
            for tup, c in self.delta_n_basis(i, n - 1).items():
                for (j, k), v in self.comult[tup[-1]].items():
                    vec_add(out, {tup[:-1] + (j, k): c * v})
        self._delta_cache[key] = out
        return out

    def delta_n(self, a: dict, n: int) -> dict:
        out: dict = {}
        for i, x in a.items():
            vec_add(out, self.delta_n_basis(i, n), x)
        return out

    def delta_n_matrix(self, n: int) -> Mat:
        d = self.dim
        cols = []
        for i in range(d):
            col = {}
            for tup, c in self.delta_n_basis(i, n).items():
                idx = 0
                for t in tup:
                    idx = idx * d + t
                col[idx] = c
            cols.append(col)
        return Mat.from_sparse_columns(cols, d ** (n + 1), self.field)

    def tensor_mul(self, x: dict, y: dict) -> dict:
        """Product in H⊗H of elements given as {(j, k): coeff}."""
        out: dict = {}
        for (a, b), u in x.items():
            for (c, d), v in y.items():
                left = self.alg.table[a][c]
                right = self.alg.table[b][d]
                for p, s in left.items():
                    for q, t in right.items():
                        vec_add(out, {(p, q): u * v * s * t})
        return out

    # verification ------------------------------------------------------------
    def verify(self) -> Report:
        rep = Report("hopf")
        rep.extend(self.alg.verify())
        f, d, alg = self.field, self.dim, self.alg
        one = f.one
        w = Witnesses()
        for i in range(d):
            lhs: dict = {}
            rhs: dict = {}
            for (j, k), c in self.comult[i].items():
                for (a, b), v in self.comult[j].items():
                    vec_add(lhs, {(a, b, k): c * v})
                for (a, b), v in self.comult[k].items():
                    vec_add(rhs, {(j, a, b): c * v})
            if lhs != rhs and w((i,)):
                break
        rep.add("coassociativity", w)
        w = Witnesses()
        for i in range(d):
            left: dict = {}
            right: dict = {}
            for (j, k), c in self.comult[i].items():
                vec_add(left, {k: c * self.counit[j]})
                vec_add(right, {j: c * self.counit[k]})
            if (left != {i: one} or right != {i: one}) and w((i,)):
                break
        rep.add("counit", w)
        w = Witnesses()
        for i, j in itertools.product(range(d), repeat=2):
            lhs = self.delta(alg.table[i][j])
            rhs = self.tensor_mul(self.comult[i], self.comult[j])
            if lhs != rhs and w((i, j)):
                break
        unit_delta = self.delta(alg.unit)
        if unit_delta != {(a, b): x * y for a, x in alg.unit.items() for b, y in alg.unit.items()
                          if x * y}:
            w(("unit",))
        rep.add("comultiplication-multiplicative", w)
        w = Witnesses()
        for i, j in itertools.product(range(d), repeat=2):
            if self.eps(alg.table[i][j]) != self.counit[i] * self.counit[j] and w((i, j)):
                break
        if self.eps(alg.unit) != one:
            w(("unit",))
        rep.add("counit-multiplicative", w)
        w = Witnesses()
        for i in range(d):
            target = vec_scale(alg.unit, self.counit[i])
            lhs: dict = {}
            rhs: dict = {}
            for (j, k), c in self.comult[i].items():
                vec_add(lhs, alg.mul(self.S({j: one}), {k: one}), c)
                vec_add(rhs, alg.mul({j: one}, self.S({k: one})), c)
            if (lhs != target or rhs != target) and w((i,)):
                break
        rep.add("antipode", w)
        ident = Mat.identity(d, f)
        w = Witnesses()
        if self.antipode @ self.antipode_inv != ident:
            w(("S∘S⁻¹",))
        if self.antipode_inv @ self.antipode != ident:
            w(("S⁻¹∘S",))
        rep.add("antipode-inverse", w)
        return rep

    def is_involutive(self) -> bool:
        return self.antipode @ self.antipode == Mat.identity(self.dim, self.field)

    def squared_antipode_is_inner(self, rho: dict) -> bool:
        """Whether S²(ω) = ρ⁻¹ ω ρ for every basis ω."""
        alg = self.alg
        try:
            rinv = alg.inverse(rho)
        except ZeroDivisionError:
            return False
        s2 = self.antipode @ self.antipode
        for i in range(self.dim):
            if s2.apply_sparse({i: self.field.one}) != alg.mul_chain(rinv, alg.basis(i), rho):
                return False
        return True

    def is_group_like(self, rho: dict) -> bool:
        if self.eps(rho) != self.field.one:
            return False
        return self.delta(rho) == {(a, b): x * y for a, x in rho.items() for b, y in rho.items()}

    def is_semisimple(self) -> bool:
        try:
            right_integral(self)
        except NoNormalizedIntegral:
            return False
        return True


def dual_hopf(h: Hopf) -> Hopf:
    """Linear dual with transposed structure maps, on the dual basis."""
    d, f = h.dim, h.field
    table = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for (j, k), c in h.comult[i].items():
            vec_add(table[j][k], {i: c})
    unit = {i: c for i, c in enumerate(h.counit) if c}
    alg = Algebra(d, table, unit, f, "dual(%s)" % h.name)
    comult = [dict() for _ in range(d)]
    for j in range(d):
        for k in range(d):
            for i, c in h.alg.table[j][k].items():
                vec_add(comult[i], {(j, k): c})
    counit = [h.alg.unit.get(i, f.zero) for i in range(d)]
    return Hopf(alg, comult, counit, h.antipode.T, h.antipode_inv.T, "dual(%s)" % h.name)


def same_structure(h1: Hopf, h2: Hopf) -> bool:
    """Equality of all structure constants (the canonical identification)."""
    return (h1.dim == h2.dim and h1.alg.table == h2.alg.table and h1.alg.unit == h2.alg.unit
            and h1.comult == h2.comult and h1.counit == h2.counit
            and h1.antipode == h2.antipode and h1.antipode_inv == h2.antipode_inv)


# --------------------------------------------------------------------------
# group-likes and integrals
# --------------------------------------------------------------------------

@dataclass
class GroupLikes:
    elements: list
    complete: bool
    needs_extension: bool

    @property
    def search_incomplete(self) -> bool:
        return not self.complete


def _unit_first_key(h: Hopf):
    unit = h.alg.unit

    def key(v):
        return (v != unit, _coord_key(h.field, v, h.dim))
    return key


def group_likes(h: Hopf, seed: int = 0, budget: int = 200) -> GroupLikes:
    """All ρ with Δρ = ρ⊗ρ and ε(ρ) = 1 defined over the presented field.

    Group-likes are the characters of the dual algebra.  Characters kill the
    commutator ideal and the radical, and the resulting commutative semisimple
    quotient is K[s]/(m) for a separating element s, so characters correspond
    to roots of m in the field.
    """
    f = h.field
    dual = dual_hopf(h).alg
    comm = []
    for i, j in itertools.combinations(range(dual.dim), 2):
        c = dual.sub(dual.table[i][j], dual.table[j][i])
        if c:
            comm.append(c)
    q1, proj1 = _quotient(dual, _ideal_closure(dual, comm))
    q2, proj2 = _quotient(q1, q1.radical())
    if q2.dim == 0:
        return GroupLikes([], True, False)
    rng = random.Random(seed)
    space = [q2.basis(i) for i in range(q2.dim)]
    s, m = _separating(q2, space, q2.dim, rng, budget)
    if s is None:
        return GroupLikes([h.alg.one], False, False)
    powers = [q2.one]
    for _ in range(q2.dim - 1):
        powers.append(q2.mul(powers[-1], s))
    pm = Mat.from_sparse_columns(powers, q2.dim, f)
    # coefficient polynomial of each dual basis vector in powers of s
    polys = []
    for i in range(dual.dim):
        polys.append(solve(pm, to_dense(proj2(proj1(dual.basis(i))), q2.dim, f)))
    roots = f.roots(m)
    out = []
    for r in roots:
        rho = {}
        for i, p in enumerate(polys):
            val = f.zero
            for c in reversed(p):
                val = val * r + c
            if val:
                rho[i] = val
        assert h.is_group_like(rho), "character did not produce a group-like"
        out.append(rho)
    out.sort(key=_unit_first_key(h))
    return GroupLikes(out, True, len(roots) < q2.dim)


def integral_space(h: Hopf) -> list:
    """Basis of right integrals {η : ηω = ε(ω)η}."""
    alg = h.alg
    blocks = []
    for j in alg.generators() or [0]:
        e = alg.basis(j)
        blocks.append(alg.right(e) - Mat.identity(h.dim, h.field).scale(h.counit[j]))
    return [to_sparse(v) for v in kernel_basis(Mat.vstack(blocks))]


def right_integral(h: Hopf) -> dict:
    """The right integral η with ε(η) = 1."""
    for v in integral_space(h):
        e = h.eps(v)
        if e:
            return vec_scale(v, h.field.one / e)
    raise NoNormalizedIntegral("ε vanishes on the integral space of %s" % (h.name or "H"))


def haar_functional(h: Hopf) -> dict | None:
    """Normalized two-sided invariant functional φ on H (coordinates on the basis)."""
    d, f = h.dim, h.field
    rows = []
    # (ι⊗φ)Δ(e_i) = φ(e_i) 1 and (φ⊗ι)Δ(e_i) = φ(e_i) 1, unknowns φ_k
    for i in range(d):
        for t in range(d):
            left = [f.zero] * d
            right = [f.zero] * d
            for (j, k), c in h.comult[i].items():
                if j == t:
                    left[k] = left[k] + c
                if k == t:
                    right[j] = right[j] + c
            u = h.alg.unit.get(t, f.zero)
            left[i] = left[i] - u
            right[i] = right[i] - u
            rows.append(left)
            rows.append(right)
    m = Mat.from_rows(rows, f, ncols=d)
    unit_row = [h.alg.unit.get(k, f.zero) for k in range(d)]
    m = Mat.vstack([m, Mat.from_rows([unit_row], f, ncols=d)])
    rhs = [f.zero] * (len(rows)) + [f.one]
    try:
        return to_sparse(solve(m, rhs))
    except Inconsistent:
        return None
