"""Equivariant, non-equivariant and twisted cyclic cochain objects, and maps between them.

Cochains are linear functionals on a tensor space.  A functional is stored
by its values on the tensor basis (row-major index); an invariant cochain
space is the column span of a kernel matrix ``K`` whose rows at ``free``
form the identity, so compressed coordinates are the values at ``free``.

Structure maps are pullbacks f ↦ f∘L along a linear map L of tensor
spaces; their matrices on functionals are L^T, compressed into the
invariant bases (each compression checks that invariance is preserved).
"""

from __future__ import annotations

import itertools
from functools import reduce

from .actions import ModuleAlgebra, RightModule, conjugation_module, invariants, trivial_action
from .cocyclic import CocyclicObject
from .errors import NotWellDefined, PNotCentralInvariant, SizeBudgetExceeded, TwistNotAutomorphism
from .hopf import Algebra, Hopf
from .linalg import Mat, kron, solve_many, to_sparse, vec_add
from .report import Report, Witnesses

DEFAULT_BUDGET = 200_000


def _digits(idx: int, base: int, length: int) -> list:
    out = [0] * length
    for k in range(length - 1, -1, -1):
        idx, out[k] = divmod(idx, base)
    return out


def _encode(digits, base: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * base + d
    return idx


class FunctionalObject(CocyclicObject):
    """Cocyclic object on invariant functionals of a family of tensor spaces.

    Subclasses provide ``amb_dim``, the tensor maps ``L_t``, ``L_d`` (i < n),
    ``L_s`` and the invariance operators ``inv_ops``.
    """

    budget: int = DEFAULT_BUDGET

    def amb_dim(self, n: int) -> int:
        raise NotImplementedError

    def L_t(self, n: int) -> Mat:
        raise NotImplementedError

    def L_d(self, n: int, i: int) -> Mat:
        raise NotImplementedError

    def L_s(self, n: int, i: int) -> Mat:
        raise NotImplementedError

    def inv_ops(self, n: int) -> list:
        """Pairs (R, c): invariant functionals satisfy R^T f = c f."""
        return []

    # invariant spaces ----------------------------------------------------------
    def _check_budget(self, n: int) -> None:
        size = self.amb_dim(n)
        if size > self.budget:
            raise SizeBudgetExceeded("level %d has ambient dimension %d > budget %d"
                                     % (n, size, self.budget))

    def space(self, n: int):
        """(K, free) for level n."""
        def build():
            self._check_budget(n)
            a = self.amb_dim(n)
            ops = self.inv_ops(n)
            if not ops:
                return Mat.identity(a, self.field), list(range(a))
            ident = Mat.identity(a, self.field)
            stacked = Mat.vstack([r.T - ident.scale(c) for r, c in ops])
            return stacked.nullspace()
        return self._memo(("space", n), build)

    def dim(self, n: int) -> int:
        return self.space(n)[0].ncols

    def ambient(self, n: int, coords) -> dict:
        """Ambient values of a cochain given by compressed coordinates."""
        if not isinstance(coords, dict):
            coords = to_sparse(coords)
        return self.space(n)[0].apply_sparse(coords)

    def compress(self, n: int, amb: dict) -> dict:
        """Compressed coordinates of an invariant functional (checked)."""
        k, free = self.space(n)
        coords = {j: amb[f] for j, f in enumerate(free) if f in amb}
        if k.apply_sparse(coords) != {i: v for i, v in amb.items() if v}:
            raise NotWellDefined("functional is not in the invariant subspace at level %d" % n)
        return coords

    def compress_map(self, ambient_map: Mat, src: "FunctionalObject", n_src: int,
                     n_tgt: int) -> Mat:
        """Compress a map of functionals src level n_src → self level n_tgt."""
        k_src, _ = src.space(n_src)
        k_tgt, free_tgt = self.space(n_tgt)
        img = ambient_map @ k_src
        m = img.select_rows(free_tgt)
        if k_tgt @ m != img:
            raise NotWellDefined("map into level %d of %s does not preserve invariance"
                                 % (n_tgt, self.name))
        return m

    def pullback(self, L: Mat, src: "FunctionalObject", n_src: int, n_tgt: int) -> Mat:
        """Compressed matrix of f ↦ f∘L from src level n_src to self level n_tgt."""
        return self.compress_map(L.T, src, n_src, n_tgt)

    # structure maps ------------------------------------------------------------
    def _t(self, n):
        return self.pullback(self.L_t(n), self, n, n)

    def _d(self, n, i):
        if i < n:
            return self.pullback(self.L_d(n, i), self, n - 1, n)
        return self.t(n) @ self.d(n, 0)

    def _s(self, n, i):
        return self.pullback(self.L_s(n, i), self, n + 1, n)

    def check_preserved(self, top: int | None = None) -> Report:
        """Every structure map carries invariant functionals to invariant functionals."""
        top = self.n_max if top is None else top
        rep = Report("well-defined")
        w = Witnesses()
        for n in range(top + 1):
            for label, fn in [("t", lambda: self.t(n))] + \
                    [("d%d" % i, lambda i=i: self.d(n, i)) for i in range(n + 1) if n >= 1] + \
                    [("s%d" % i, lambda i=i: self.s(n, i)) for i in range(n + 1) if n < top]:
                try:
                    fn()
                except NotWellDefined:
                    w((label, n))
        rep.add("invariance preserved", w)
        return rep


class EquivariantObject(FunctionalObject):
    """C^n_H(B): invariant functionals on H ⊗ B^{⊗(n+1)}.

    Tensor basis index of ω_w ⊗ b_{i_0} ⊗ … ⊗ b_{i_n} is row-major in
    (w, i_0, …, i_n).
    """

    def __init__(self, b: ModuleAlgebra, n_max: int, budget: int = DEFAULT_BUDGET,
                 name: str = ""):
        self.malg = b
        self.hopf = b.hopf
        self.field = b.field
        self.n_max = n_max
        self.budget = budget
        self.name = name or "C_%s(%s)" % (self.hopf.name, b.name)
        self.dh = self.hopf.dim
        self.db = b.dim
        self.conj = conjugation_module(self.hopf)

    def amb_dim(self, n):
        return self.dh * self.db ** (n + 1)

    def split(self, idx: int, n: int):
        w, rest = divmod(idx, self.db ** (n + 1))
        return w, _digits(rest, self.db, n + 1)

    def join(self, w: int, bs) -> int:
        return w * self.db ** len(bs) + _encode(bs, self.db)

    def L_t(self, n):
        h, b = self.hopf, self.malg
        cols = []
        for idx in range(self.amb_dim(n)):
            w, bs = self.split(idx, n)
            col: dict = {}
            for (w0, w1), c in h.comult[w].items():
                for k, v in b.module.act[bs[-1]][w1].items():
                    vec_add(col, {self.join(w0, [k] + bs[:-1]): c * v})
            cols.append(col)
        return Mat.from_sparse_columns(cols, self.amb_dim(n), self.field)

    def L_d(self, n, i):
        table = self.malg.alg.table
        cols = []
        for idx in range(self.amb_dim(n)):
            w, bs = self.split(idx, n)
            col = {}
            for k, v in table[bs[i]][bs[i + 1]].items():
                col[self.join(w, bs[:i] + [k] + bs[i + 2:])] = v
            cols.append(col)
        return Mat.from_sparse_columns(cols, self.amb_dim(n - 1), self.field)

    def L_s(self, n, i):
        unit = self.malg.alg.unit
        cols = []
        for idx in range(self.amb_dim(n)):
            w, bs = self.split(idx, n)
            cols.append({self.join(w, bs[:i + 1] + [u] + bs[i + 1:]): c for u, c in unit.items()})
        return Mat.from_sparse_columns(cols, self.amb_dim(n + 1), self.field)

    def R(self, n: int, w: dict) -> Mat:
        """The right action of ω on H ⊗ B^{⊗(n+1)} (conjugation on the first leg)."""
        h = self.hopf
        acc = Mat.zeros(self.amb_dim(n), self.amb_dim(n), self.field)
        for j, cj in w.items():
            for legs, c in h.delta_n_basis(j, n + 1).items():
                mats = [self.conj.pi_basis[legs[0]]] + [self.malg.module.pi_basis[l] for l in legs[1:]]
                acc = acc + reduce(kron, mats).scale(c * cj)
        return acc

    def inv_ops(self, n):
        h = self.hopf
        if h.dim == 1:
            return []
        one = self.field.one
        return [(self.R(n, {j: one}), h.counit[j]) for j in (h.alg.generators() or [0])]

    # the proof device f(ω⊗x) = f(ω₀ ⊗ x◁ω₁) ------------------------------------------
    def invariance_device_check(self, n: int) -> Report:
        h, b = self.hopf, self.malg
        cols = []
        for idx in range(self.amb_dim(n)):
            w, bs = self.split(idx, n)
            col: dict = {}
            for legs, c in h.delta_n_basis(w, n + 1).items():
                w0 = legs[0]
                imgs = [b.module.act[x][l] for x, l in zip(bs, legs[1:])]
                for combo in itertools.product(*[list(m.items()) for m in imgs]):
                    coeff = c
                    for _, v in combo:
                        coeff = coeff * v
                    vec_add(col, {self.join(w0, [k for k, _ in combo]): coeff})
            cols.append(col)
        L = Mat.from_sparse_columns(cols, self.amb_dim(n), self.field)
        k, _ = self.space(n)
        rep = Report("invariance-device")
        rep.add("f(w x) = f(w0, x<w1) at level %d" % n, [] if L.T @ k == k else [(n,)])
        return rep


def build_equivariant(b: ModuleAlgebra, n_max: int, budget: int = DEFAULT_BUDGET) -> EquivariantObject:
    top = b.hopf.dim * b.dim ** (n_max + 1)
    if top > budget:
        raise SizeBudgetExceeded("level %d has ambient dimension %d > budget %d"
                                 % (n_max, top, budget))
    return EquivariantObject(b, n_max, budget)


def build_nonequivariant(alg: Algebra, n_max: int, budget: int = DEFAULT_BUDGET) -> EquivariantObject:
    """The classical cyclic object of an algebra (the equivariant one over H = ground field)."""
    h = Hopf.trivial(alg.field)
    obj = build_equivariant(trivial_action(alg, h), n_max, budget)
    obj.name = "C(%s)" % alg.name
    return obj


# --------------------------------------------------------------------------
# twisted object
# --------------------------------------------------------------------------

def is_automorphism(alg: Algebra, theta: Mat) -> bool:
    if not theta.is_invertible():
        return False
    one = alg.field.one
    if theta.apply_sparse(alg.unit) != alg.unit:
        return False
    for i, j in itertools.product(range(alg.dim), repeat=2):
        lhs = theta.apply_sparse(alg.table[i][j])
        rhs = alg.mul(theta.apply_sparse({i: one}), theta.apply_sparse({j: one}))
        if lhs != rhs:
            return False
    return True


class TwistedObject(FunctionalObject):
    """θ-twisted cyclic object of B on θ-invariant functionals on B^{⊗(n+1)}.

    (t f)(b_0 ⊗ … ⊗ b_n) = f(θ(b_n) ⊗ b_0 ⊗ … ⊗ b_{n-1}).
    """

    def __init__(self, alg: Algebra, theta: Mat, n_max: int, budget: int = DEFAULT_BUDGET,
                 name: str = ""):
        if not is_automorphism(alg, theta):
            raise TwistNotAutomorphism("the twist is not an algebra automorphism of %s" % alg.name)
        self.alg = alg
        self.theta = theta
        self.field = alg.field
        self.n_max = n_max
        self.budget = budget
        self.db = alg.dim
        self.name = name or "C_theta(%s)" % alg.name
        self._theta_cols = theta.columns()

    def amb_dim(self, n):
        return self.db ** (n + 1)

    def split(self, idx, n):
        return _digits(idx, self.db, n + 1)

    def join(self, bs):
        return _encode(bs, self.db)

    def L_t(self, n):
        cols = []
        for idx in range(self.amb_dim(n)):
            bs = self.split(idx, n)
            cols.append({self.join([k] + bs[:-1]): v for k, v in self._theta_cols[bs[-1]].items()})
        return Mat.from_sparse_columns(cols, self.amb_dim(n), self.field)

    def L_d(self, n, i):
        table = self.alg.table
        cols = []
        for idx in range(self.amb_dim(n)):
            bs = self.split(idx, n)
            cols.append({self.join(bs[:i] + [k] + bs[i + 2:]): v
                         for k, v in table[bs[i]][bs[i + 1]].items()})
        return Mat.from_sparse_columns(cols, self.amb_dim(n - 1), self.field)

    def L_s(self, n, i):
        unit = self.alg.unit
        cols = []
        for idx in range(self.amb_dim(n)):
            bs = self.split(idx, n)
            cols.append({self.join(bs[:i + 1] + [u] + bs[i + 1:]): c for u, c in unit.items()})
        return Mat.from_sparse_columns(cols, self.amb_dim(n + 1), self.field)

    def inv_ops(self, n):
        if self.theta == Mat.identity(self.db, self.field):
            return []
        return [(reduce(kron, [self.theta] * (n + 1)), self.field.one)]


def build_twisted(alg: Algebra, theta: Mat, n_max: int, budget: int = DEFAULT_BUDGET) -> TwistedObject:
    return TwistedObject(alg, theta, n_max, budget)


def twist_of(b: ModuleAlgebra, rho: dict) -> Mat:
    """θ_ρ(b) = b ◁ ρ."""
    return b.module.pi_of(rho)


# --------------------------------------------------------------------------
# ω_* and ρ_*
# --------------------------------------------------------------------------

class Subalgebra:
    """A unital subalgebra given by basis vectors in the ambient algebra."""

    def __init__(self, parent: Algebra, basis: list, name: str = ""):
        self.parent = parent
        self.basis = basis
        f = parent.field
        self.incl = Mat.from_sparse_columns(basis, parent.dim, f)
        prods = []
        for u in basis:
            for v in basis:
                prods.append(parent.mul(u, v))
        coords = solve_many(self.incl, Mat.from_sparse_columns(prods + [parent.unit],
                                                               parent.dim, f))
        cols = coords.columns()
        m = len(basis)
        table = [[cols[i * m + j] for j in range(m)] for i in range(m)]
        self.alg = Algebra(m, table, cols[-1], f, name or "sub(%s)" % parent.name)


def invariant_subalgebra(b: ModuleAlgebra) -> Subalgebra:
    return Subalgebra(b.alg, invariants(b.module), "%s^H" % b.name)


def omega_star(obj: EquivariantObject, w: dict, n_max: int | None = None):
    """(ω_* f)(b_0 ⊗ … ⊗ b_n) = f(ω ⊗ b_0 ⊗ … ⊗ b_n) into the object of B^H.

    Returns (target object, {n: compressed matrix}).
    """
    top = obj.n_max if n_max is None else n_max
    sub = invariant_subalgebra(obj.malg)
    tgt = build_nonequivariant(sub.alg, top, obj.budget)
    maps = {}
    for n in range(top + 1):
        maps[n] = tgt.pullback(_omega_tensor_map(obj, sub, w, n, tgt), obj, n, n)
    return tgt, maps


def _omega_tensor_map(obj, sub, w, n, tgt) -> Mat:
    vecs = sub.basis
    cols = []
    for idx in range(tgt.amb_dim(n)):
        _, us = tgt.split(idx, n)
        col: dict = {}
        for combo in itertools.product(*[list(vecs[u].items()) for u in us]):
            coeff = obj.field.one
            for _, v in combo:
                coeff = coeff * v
            for wi, wc in w.items():
                vec_add(col, {obj.join(wi, [k for k, _ in combo]): coeff * wc})
        cols.append(col)
    return Mat.from_sparse_columns(cols, obj.amb_dim(n), obj.field)


def rho_star(obj: EquivariantObject, rho: dict, n_max: int | None = None):
    """(ρ_* f)(b_0 ⊗ … ⊗ b_n) = f(ρ ⊗ b_0 ⊗ … ⊗ b_n) into the θ_ρ-twisted object of B."""
    top = obj.n_max if n_max is None else n_max
    tgt = build_twisted(obj.malg.alg, twist_of(obj.malg, rho), top, obj.budget)
    maps = {}
    for n in range(top + 1):
        cols = []
        for idx in range(tgt.amb_dim(n)):
            bs = tgt.split(idx, n)
            cols.append({obj.join(wi, bs): c for wi, c in rho.items()})
        L = Mat.from_sparse_columns(cols, obj.amb_dim(n), obj.field)
        maps[n] = tgt.pullback(L, obj, n, n)
    return tgt, maps


# --------------------------------------------------------------------------
# Morita maps
# --------------------------------------------------------------------------

class MoritaPair:
    """Ψ : C_H(B) → C_H(End(X)⊗B) and Φ_p back, for a finite-dimensional module X."""

    def __init__(self, base: EquivariantObject, x: RightModule, big: EquivariantObject):
        self.base = base
        self.x = x
        self.big = big
        self.nx = x.dim
        h = base.hopf
        one = base.field.one
        self.sinv_pi = [x.pi_of(h.Sinv({j: one})) for j in range(h.dim)]

    def _elem(self, e: int):
        """(a, c, b) for the End(X)⊗B basis index e of E_ac ⊗ b_b."""
        ac, bb = divmod(e, self.base.db)
        a, c = divmod(ac, self.nx)
        return a, c, bb

    def _elem_index(self, a, c, bb):
        return (a * self.nx + c) * self.base.db + bb

    def psi_tensor_map(self, n: int) -> Mat:
        h = self.base.hopf
        cols = []
        for idx in range(self.big.amb_dim(n)):
            w, es = self.big.split(idx, n)
            parts = [self._elem(e) for e in es]
            col: dict = {}
            if all(parts[k][1] == parts[k + 1][0] for k in range(n)):
                a0, cn = parts[0][0], parts[-1][1]
                bs = [p[2] for p in parts]
                for (w0, w1), c in h.comult[w].items():
                    tr = self.sinv_pi[w1][cn, a0]
                    if tr:
                        vec_add(col, {self.base.join(w0, bs): c * tr})
            cols.append(col)
        return Mat.from_sparse_columns(cols, self.base.amb_dim(n), self.base.field)

    def psi(self, n: int) -> Mat:
        return self.big._memo(("psi", id(self.base), n),
                              lambda: self.big.pullback(self.psi_tensor_map(n), self.base, n, n))

    def check_p(self, p: Mat) -> None:
        h = self.base.hopf
        if p @ p != p:
            raise PNotCentralInvariant("p is not idempotent")
        for j in range(h.dim):
            pj = self.x.pi_basis[j]
            ep = p.scale(h.counit[j])
            if pj @ p != ep or p @ pj != ep:
                raise PNotCentralInvariant("π(ω_%d) p = p π(ω_%d) = ε(ω_%d) p fails" % (j, j, j))

    def phi_tensor_map(self, p: Mat, n: int) -> Mat:
        pent = [(a, c, v) for a, r in p.rows.items() for c, v in r.items()]
        cols = []
        for idx in range(self.base.amb_dim(n)):
            w, bs = self.base.split(idx, n)
            col: dict = {}
            for combo in itertools.product(pent, repeat=n + 1):
                coeff = self.base.field.one
                es = []
                for (a, c, v), bb in zip(combo, bs):
                    coeff = coeff * v
                    es.append(self._elem_index(a, c, bb))
                vec_add(col, {self.big.join(w, es): coeff})
            cols.append(col)
        return Mat.from_sparse_columns(cols, self.big.amb_dim(n), self.base.field)

    def phi(self, p: Mat, n: int) -> Mat:
        self.check_p(p)
        return self.base.pullback(self.phi_tensor_map(p, n), self.big, n, n)

    # homotopy ------------------------------------------------------------------------
    def homotopy_j_tensor_map(self, n: int, j: int) -> Mat:
        """Tensor map for h^n_j : C^{n+1} → C^n (p = E_00)."""
        unit = self.base.malg.alg.unit
        cols = []
        for idx in range(self.big.amb_dim(n)):
            w, es = self.big.split(idx, n)
            parts = [self._elem(e) for e in es]
            col: dict = {}
            if all(parts[k][1] == parts[k + 1][0] for k in range(j)):
                a0 = parts[0][0]
                cj = parts[j][1]
                head = [self._elem_index(a0, 0, parts[0][2])]
                head += [self._elem_index(0, 0, parts[k][2]) for k in range(1, j + 1)]
                tail = es[j + 1:]
                for u, cu in unit.items():
                    new = head + [self._elem_index(0, cj, u)] + tail
                    vec_add(col, {self.big.join(w, new): cu})
            cols.append(col)
        return Mat.from_sparse_columns(cols, self.big.amb_dim(n + 1), self.base.field)

    def homotopy(self, n: int) -> Mat:
        """h^n = Σ_j (−1)^j h^n_j : C^{n+1} → C^n of the End(X)⊗B object."""
        def build():
            acc = None
            for j in range(n + 1):
                m = self.big.pullback(self.homotopy_j_tensor_map(n, j), self.big, n + 1, n)
                if j % 2:
                    m = -m
                acc = m if acc is None else acc + m
            return acc
        return self.big._memo(("h", n), build)

    def homotopy_identity(self, n: int) -> tuple[bool, Mat]:
        """Check b_n h^{n-1} + h^n b_{n+1} = ι − Ψ^n Φ^n_p with p = E_00.

        Returns (holds, lhs − rhs).
        """
        big = self.big
        p = Mat.from_dict({(0, 0): big.field.one}, self.nx, self.nx, big.field)
        lhs = self.homotopy(n) @ big.b(n + 1)
        if n >= 1:
            lhs = lhs + big.b(n) @ self.homotopy(n - 1)
        rhs = big.ident(n) - self.psi(n) @ self.phi(p, n)
        diff = lhs - rhs
        return diff.is_zero(), diff


# --------------------------------------------------------------------------
# maps induced by algebra automorphisms
# --------------------------------------------------------------------------

def induced_by_automorphism(obj: EquivariantObject, theta: Mat, n: int) -> Mat:
    """Compressed matrix of f ↦ f ∘ (ι ⊗ θ^{⊗(n+1)}) on level n."""
    L = kron(Mat.identity(obj.dh, obj.field), reduce(kron, [theta] * (n + 1)))
    return obj.pullback(L, obj, n, n)


def induced_on_total(obj: EquivariantObject, theta: Mat, n: int) -> Mat:
    """The induced chain map on Tot^n (block diagonal over columns)."""
    dims = obj.tot_dims(n)
    blocks = [[None] * (n + 1) for _ in range(n + 1)]
    for p in range(n + 1):
        blocks[p][p] = induced_by_automorphism(obj, theta, n - p)
    return Mat.block(blocks, dims, dims, obj.field)


def acts_as_identity_on_hc(obj: EquivariantObject, theta: Mat, n: int) -> bool:
    """Whether the induced map on HC^n fixes every class (difference is a coboundary)."""
    obj._guard(n)
    hc = obj._hc(n)
    f = induced_on_total(obj, theta, n)
    for z in hc.reps:
        diff = vec_add(f.apply_sparse(z), z, -obj.field.one)
        if not hc.is_coboundary(diff):
            return False
    return True


def inner_automorphism(alg: Algebra, u: dict) -> Mat:
    """Ad u : a ↦ u a u⁻¹."""
    uinv = alg.inverse(u)
    one = alg.field.one
    return Mat.from_sparse_columns([alg.mul_chain(u, {i: one}, uinv) for i in range(alg.dim)],
                                   alg.dim, alg.field)
