"""Right H-modules, module algebras, induced actions and crossed products."""

from __future__ import annotations

import itertools
from functools import cached_property

from .hopf import Algebra, Hopf
from .linalg import Mat, kernel_basis, to_sparse, vec_add
from .report import Report, Witnesses


class RightModule:
    """A right H-module on a basis x_0..x_{dim-1}.

    ``act[i][j]`` is the sparse vector x_i ◁ ω_j.
    """

    def __init__(self, hopf: Hopf, dim: int, act: list, name: str = ""):
        self.hopf = hopf
        self.dim = dim
        self.act = [[{k: v for k, v in a.items() if v} for a in row] for row in act]
        self.field = hopf.field
        self.name = name

    @classmethod
    def from_function(cls, hopf: Hopf, dim: int, action, name: str = "") -> "RightModule":
        return cls(hopf, dim, [[action(i, j) for j in range(hopf.dim)] for i in range(dim)], name)

    @classmethod
    def from_pi(cls, hopf: Hopf, mats: list, name: str = "") -> "RightModule":
        """From the matrices π(ω_j) (columns x_i ◁ ω_j)."""
        dim = mats[0].nrows
        cols = [m.columns() for m in mats]
        return cls(hopf, dim, [[cols[j][i] for j in range(hopf.dim)] for i in range(dim)], name)

    def apply(self, x: dict, w: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            row = self.act[i]
            for j, c in w.items():
                if row[j]:
                    vec_add(out, row[j], a * c)
        return out

    def pi(self, w: dict) -> Mat:
        """Matrix of x ↦ x ◁ ω; ω ↦ π(ω) is an antihomomorphism."""
        return Mat.from_sparse_columns([self.apply({i: self.field.one}, w)
                                        for i in range(self.dim)], self.dim, self.field)

    @cached_property
    def pi_basis(self) -> list:
        return [self.pi({j: self.field.one}) for j in range(self.hopf.dim)]

    def pi_of(self, w: dict) -> Mat:
        acc = Mat.zeros(self.dim, self.dim, self.field)
        for j, c in w.items():
            acc = acc + self.pi_basis[j].scale(c)
        return acc

    def action_matrix(self) -> Mat:
        """Rows indexed by i*dim(H)+j holding the coordinates of x_i ◁ ω_j."""
        rows = {}
        dh = self.hopf.dim
        for i in range(self.dim):
            for j in range(dh):
                if self.act[i][j]:
                    rows[i * dh + j] = dict(self.act[i][j])
        return Mat(self.field, self.dim * dh, self.dim, rows)

    def verify(self) -> Report:
        rep = Report("module")
        h = self.hopf
        one = self.field.one
        w = Witnesses()
        for i, j, k in itertools.product(range(self.dim), range(h.dim), range(h.dim)):
            lhs = self.apply({i: one}, h.alg.table[j][k])
            rhs = self.apply(self.act[i][j], {k: one})
            if lhs != rhs and w((i, j, k)):
                break
        rep.add("action-associativity", w)
        w = Witnesses()
        for i in range(self.dim):
            if self.apply({i: one}, h.alg.unit) != {i: one} and w((i,)):
                break
        rep.add("action-unit", w)
        return rep

    def direct_sum(self, other: "RightModule") -> "RightModule":
        d = self.dim
        act = [list(r) for r in self.act]
        for r in other.act:
            act.append([{k + d: v for k, v in a.items()} for a in r])
        return RightModule(self.hopf, d + other.dim, act)


def trivial_module(h: Hopf, dim: int) -> RightModule:
    return RightModule.from_function(
        h, dim, lambda i, j: {i: h.counit[j]} if h.counit[j] else {}, "trivial%d" % dim)


def regular_module(h: Hopf) -> RightModule:
    """H acting on itself by right multiplication."""
    return RightModule(h, h.dim, [list(row) for row in h.alg.table], "regular")


def tensor_module(x1: RightModule, x2: RightModule) -> RightModule:
    """(x₁⊗x₂) ◁ ω = x₁◁ω₀ ⊗ x₂◁ω₁ on the row-major basis."""
    h = x1.hopf
    d2 = x2.dim

    def action(idx, j):
        a, b = divmod(idx, d2)
        out: dict = {}
        for (p, q), c in h.comult[j].items():
            for k, u in x1.act[a][p].items():
                for l, v in x2.act[b][q].items():
                    vec_add(out, {k * d2 + l: c * u * v})
        return out
    return RightModule.from_function(h, x1.dim * d2, action)


def invariants(x: RightModule) -> list:
    """Basis of {v : v ◁ ω = ε(ω) v}, as sparse vectors."""
    h = x.hopf
    ident = Mat.identity(x.dim, x.field)
    gens = h.alg.generators() or [0]
    stacked = Mat.vstack([x.pi_basis[j] - ident.scale(h.counit[j]) for j in gens])
    return [to_sparse(v) for v in kernel_basis(stacked)]


def conjugation_module(h: Hopf) -> RightModule:
    """H acting on itself by η ◁ ω = S⁻¹(ω₀) η ω₁."""
    alg = h.alg
    one = h.field.one

    def action(i, j):
        out: dict = {}
        for (a, b), c in h.comult[j].items():
            vec_add(out, alg.mul_chain(h.Sinv({a: one}), {i: one}, {b: one}), c)
        return out
    return RightModule.from_function(h, h.dim, action, "conjugation")


# --------------------------------------------------------------------------
# module algebras
# --------------------------------------------------------------------------

class ModuleAlgebra:
    """A unital algebra with a right H-action on the same basis."""

    def __init__(self, alg: Algebra, module: RightModule, name: str = ""):
        if alg.dim != module.dim:
            raise ValueError("algebra and module dimensions differ")
        self.alg = alg
        self.module = module
        self.hopf = module.hopf
        self.field = alg.field
        self.dim = alg.dim
        self.name = name or alg.name

    def apply(self, b: dict, w: dict) -> dict:
        return self.module.apply(b, w)

    def verify(self) -> Report:
        rep = Report("module-algebra")
        rep.extend(self.alg.verify())
        rep.extend(self.module.verify())
        h, alg = self.hopf, self.alg
        one = self.field.one
        w = Witnesses()
        for i, k, j in itertools.product(range(self.dim), range(self.dim), range(h.dim)):
            lhs = self.apply(alg.table[i][k], {j: one})
            rhs: dict = {}
            for (p, q), c in h.comult[j].items():
                vec_add(rhs, alg.mul(self.module.act[i][p], self.module.act[k][q]), c)
            if lhs != rhs and w((i, k, j)):
                break
        rep.add("product-law", w)
        w = Witnesses()
        for j in range(h.dim):
            if self.apply(alg.unit, {j: one}) != {k: v * h.counit[j] for k, v in alg.unit.items()
                                                   if v * h.counit[j]}:
                w((j,))
        rep.add("unit-law", w)
        return rep

    def invariant_subalgebra(self) -> list:
        return invariants(self.module)


def trivial_action(alg: Algebra, h: Hopf) -> ModuleAlgebra:
    return ModuleAlgebra(alg, trivial_module(h, alg.dim))


def adjoint_self_action(h: Hopf) -> ModuleAlgebra:
    """H acting on itself by b ◁ ω = S(ω₀) b ω₁."""
    alg = h.alg
    one = h.field.one

    def action(i, j):
        out: dict = {}
        for (a, b), c in h.comult[j].items():
            vec_add(out, alg.mul_chain(h.S({a: one}), {i: one}, {b: one}), c)
        return out
    mod = RightModule.from_function(h, h.dim, action, "adjoint")
    return ModuleAlgebra(alg, mod, "%s-adjoint" % h.name)


def matrix_algebra(n: int, field) -> Algebra:
    """End(C^n) on the matrix units E_ij at index i*n+j."""
    one = field.one

    def product(a, b):
        i, j = divmod(a, n)
        k, l = divmod(b, n)
        return {i * n + l: one} if j == k else {}
    return Algebra.from_function(n * n, product, {i * n + i: one for i in range(n)}, field,
                                 "Mat%d" % n)


def tensor_algebra(a1: Algebra, a2: Algebra) -> Algebra:
    d2 = a2.dim

    def product(x, y):
        i, k = divmod(x, d2)
        j, l = divmod(y, d2)
        out: dict = {}
        for p, u in a1.table[i][j].items():
            for q, v in a2.table[k][l].items():
                vec_add(out, {p * d2 + q: u * v})
        return out
    unit = {p * d2 + q: u * v for p, u in a1.unit.items() for q, v in a2.unit.items()}
    return Algebra.from_function(a1.dim * d2, product, unit, a1.field,
                                 "%s⊗%s" % (a1.name, a2.name))


def mat_to_vec(m: Mat) -> dict:
    """Matrix T in End(X) as a vector on the matrix units."""
    n = m.ncols
    return {i * n + j: v for i, r in m.rows.items() for j, v in r.items()}


def vec_to_mat(v: dict, n: int, field) -> Mat:
    return Mat.from_dict({divmod(k, n): c for k, c in v.items()}, n, n, field)


def adjoint_on_end(x: RightModule) -> ModuleAlgebra:
    """End(X) with T ◀ ω = π(ω₀) T π(S⁻¹ω₁)."""
    h = x.hopf
    n = x.dim
    one = h.field.one
    pis = x.pi_basis
    pinv = [x.pi_of(h.Sinv({j: one})) for j in range(h.dim)]

    def action(idx, j):
        t = vec_to_mat({idx: one}, n, h.field)
        acc = Mat.zeros(n, n, h.field)
        for (a, b), c in h.comult[j].items():
            acc = acc + (pis[a] @ t @ pinv[b]).scale(c)
        return mat_to_vec(acc)
    mod = RightModule.from_function(h, n * n, action, "End(X)")
    return ModuleAlgebra(matrix_algebra(n, h.field), mod, "End(%s)" % (x.name or "X"))


def _delta2_terms(h: Hopf, j: int):
    return h.delta_n_basis(j, 2).items()


def endx_tensor_b(x: RightModule, b: ModuleAlgebra) -> ModuleAlgebra:
    """End(X)⊗B with (T⊗b) ◀ ω = π(ω₀) T π(S⁻¹ω₂) ⊗ b ◁ ω₁.

    Basis index of E_ij ⊗ b_k is (i*dim X + j)*dim B + k.
    """
    h = x.hopf
    n, db = x.dim, b.dim
    one = h.field.one
    pis = x.pi_basis
    pinv = [x.pi_of(h.Sinv({j: one})) for j in range(h.dim)]

    def action(idx, j):
        e, k = divmod(idx, db)
        t = vec_to_mat({e: one}, n, h.field)
        out: dict = {}
        for (w0, w1, w2), c in _delta2_terms(h, j):
            tv = mat_to_vec(pis[w0] @ t @ pinv[w2])
            bv = b.module.act[k][w1]
            for p, u in tv.items():
                for q, v in bv.items():
                    vec_add(out, {p * db + q: c * u * v})
        return out
    mod = RightModule.from_function(h, n * n * db, action, "End(X)⊗B")
    alg = tensor_algebra(matrix_algebra(n, h.field), b.alg)
    return ModuleAlgebra(alg, mod, "End(%s)⊗%s" % (x.name or "X", b.name))


def endx_tensor_b_product_action(x: RightModule, b: ModuleAlgebra) -> RightModule:
    """The tensor-product action (T⊗b) ◁ ω = T ◀ ω₀ ⊗ b ◁ ω₁ on End(X)⊗B."""
    return tensor_module(adjoint_on_end(x).module, b.module)


# --------------------------------------------------------------------------
# crossed product
# --------------------------------------------------------------------------

class CrossedProduct:
    """B⋊H on the basis b_i ⊗ ω_j (index i*dim H + j).

    (b⊗ω)(c⊗η) = b (c ◁ S⁻¹ω₁) ⊗ ω₀ η.
    """

    def __init__(self, b: ModuleAlgebra):
        self.b = b
        self.hopf = h = b.hopf
        self.field = b.field
        dh, db = h.dim, b.dim
        one = self.field.one
        sinv_act = [[b.apply({c: one}, h.Sinv({w1: one})) for w1 in range(dh)]
                    for c in range(db)]

        def product(x, y):
            bi, wj = divmod(x, dh)
            ci, ek = divmod(y, dh)
            out: dict = {}
            for (w0, w1), c in h.comult[wj].items():
                left = b.alg.mul({bi: one}, sinv_act[ci][w1])
                right = h.alg.table[w0][ek]
                for p, u in left.items():
                    for q, v in right.items():
                        vec_add(out, {p * dh + q: c * u * v})
            return out
        unit = {p * dh + q: u * v for p, u in b.alg.unit.items() for q, v in h.alg.unit.items()}
        self.alg = Algebra.from_function(db * dh, product, unit, self.field,
                                         "%s⋊%s" % (b.name, h.name))
        self.dim = db * dh

    def embed_b(self, v: dict) -> dict:
        dh = self.hopf.dim
        return {p * dh + q: u * w for p, u in v.items() for q, w in self.hopf.alg.unit.items()}

    def embed_h(self, w: dict) -> dict:
        dh = self.hopf.dim
        return {p * dh + q: u * v for p, u in self.b.alg.unit.items() for q, v in w.items()}

    def elem(self, bvec: dict, wvec: dict) -> dict:
        dh = self.hopf.dim
        return {p * dh + q: u * v for p, u in bvec.items() for q, v in wvec.items()}

    def verify(self) -> Report:
        rep = Report("crossed-product")
        rep.extend(self.alg.verify())
        h, b, alg = self.hopf, self.b, self.alg
        one = self.field.one
        w1 = Witnesses()
        w2 = Witnesses()
        for j, i in itertools.product(range(h.dim), range(b.dim)):
            om = self.embed_h({j: one})
            bb = self.embed_b({i: one})
            lhs1 = alg.mul(om, bb)
            rhs1: dict = {}
            lhs2 = alg.mul(bb, om)
            rhs2: dict = {}
            for (p, q), c in h.comult[j].items():
                vec_add(rhs1, alg.mul(self.embed_b(b.apply({i: one}, h.Sinv({q: one}))),
                                      self.embed_h({p: one})), c)
                vec_add(rhs2, alg.mul(self.embed_h({p: one}),
                                      self.embed_b(b.apply({i: one}, {q: one}))), c)
            if lhs1 != rhs1:
                w1((j, i))
            if lhs2 != rhs2:
                w2((i, j))
        rep.add("omega-b-commutation", w1)
        rep.add("b-omega-commutation", w2)
        w = Witnesses()
        for i, k in itertools.product(range(b.dim), repeat=2):
            if alg.mul(self.embed_b({i: one}), self.embed_b({k: one})) != \
                    self.embed_b(b.alg.table[i][k]):
                w(("B", i, k))
        for i, k in itertools.product(range(h.dim), repeat=2):
            if alg.mul(self.embed_h({i: one}), self.embed_h({k: one})) != \
                    self.embed_h(h.alg.table[i][k]):
                w(("H", i, k))
        rep.add("embeddings", w)
        return rep


def crossed_product(b: ModuleAlgebra) -> CrossedProduct:
    return CrossedProduct(b)


# --------------------------------------------------------------------------
# right (B⋊H)-modules
# --------------------------------------------------------------------------

class CPModule:
    """A right module over a crossed product, as matrices ρ(e_k) acting on columns.

    ``mats[k]`` is the matrix of v ↦ v·e_k for the crossed-product basis e_k,
    so ρ(xy) = ρ(y) ρ(x).
    """

    def __init__(self, cp: CrossedProduct, mats: list, name: str = ""):
        self.cp = cp
        self.mats = mats
        self.dim = mats[0].nrows if mats else 0
        self.field = cp.field
        self.name = name

    def rho(self, a: dict) -> Mat:
        acc = Mat.zeros(self.dim, self.dim, self.field)
        for k, c in a.items():
            acc = acc + self.mats[k].scale(c)
        return acc

    def verify(self) -> Report:
        rep = Report("cp-module")
        alg = self.cp.alg
        w = Witnesses()
        for i, j in itertools.product(range(alg.dim), repeat=2):
            if self.rho(alg.table[i][j]) != self.mats[j] @ self.mats[i] and w((i, j)):
                break
        if self.rho(alg.unit) != Mat.identity(self.dim, self.field):
            w(("unit",))
        rep.add("right-module", w)
        return rep

    def direct_sum(self, other: "CPModule") -> "CPModule":
        d1, d2 = self.dim, other.dim
        mats = [Mat.block([[a, None], [None, b]], [d1, d2], [d1, d2], self.field)
                for a, b in zip(self.mats, other.mats)]
        return CPModule(self.cp, mats)

    def submodule(self, basis: Mat) -> "CPModule":
        """Restriction to the invariant subspace spanned by the columns of ``basis``."""
        from .linalg import solve_many
        return CPModule(self.cp, [solve_many(basis, m @ basis) for m in self.mats])


def regular_cp_module(cp: CrossedProduct) -> CPModule:
    """(B⋊H) as a right module over itself."""
    return CPModule(cp, [cp.alg.right({k: cp.field.one}) for k in range(cp.dim)], "regular")


def tensor_b_module(x: RightModule, b: ModuleAlgebra, cp: CrossedProduct) -> CPModule:
    """X⊗B with (x⊗c)·(bω) = (x⊗cb) ◁ ω, the action on X⊗B being the tensor action."""
    xb = tensor_module(x, b.module)
    db = b.dim
    one = cp.field.one
    mats = []
    dh = cp.hopf.dim
    for k in range(cp.dim):
        bi, wj = divmod(k, dh)
        cols = []
        for idx in range(x.dim * db):
            xi, ci = divmod(idx, db)
            prod = b.alg.mul({ci: one}, {bi: one})
            v = {xi * db + q: u for q, u in prod.items()}
            cols.append(xb.apply(v, {wj: one}))
        mats.append(Mat.from_sparse_columns(cols, x.dim * db, cp.field))
    return CPModule(cp, mats, "X⊗B")


def idempotent_module(m: CPModule, p: Mat) -> CPModule:
    """The image p·M of a module endomorphism p (as a submodule)."""
    prows, _ = p.T.rref()
    basis = Mat.from_sparse_columns([dict(r) for r in prows], m.dim, m.field)
    return m.submodule(basis)
