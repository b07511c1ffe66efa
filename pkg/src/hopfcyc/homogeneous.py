"""Finite quantum homogeneous spaces and the classification of their equivariant modules.

A subgroup is a surjective Hopf map P : A → A₀.  The quotient is
B = {a : Δ_R(a) = a⊗1} with Δ_R = (ι⊗P)Δ, acted on by the dual Â through
b ◁ ω = (ω⊗ι)Δ(b).  For each irreducible class t of A₀ the module
X_t ⊂ H_t⊗A is a right module over B⋊Â; every equivariant module is a
unique direct sum of these.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .actions import (CPModule, CrossedProduct, ModuleAlgebra, RightModule, crossed_product,
                      endx_tensor_b, invariants)
from .equivariant import Subalgebra
from .errors import ClassNotFound, DecompositionFailed, NoHaarFunctional
from .groups import PermGroup, function_algebra
from .hopf import (BlockDecomposition, Hopf, dual_hopf, haar_functional, irreducible_representation,
                   wedderburn_blocks)
from .ktheory import BMatrix, iso_test, multiplicities, xp_module, check_idempotent
from .linalg import QQ, Inconsistent, Mat, kron, solve, solve_many, to_dense, to_sparse, vec_add
from .report import Report, Witnesses


@dataclass
class SubgroupDatum:
    a: Hopf
    a0: Hopf
    P: Mat
    name: str = ""


def subgroup_of_group(g: PermGroup, sub: list, field=QQ, name: str = "") -> SubgroupDatum:
    """C(G) → C(K) restricting functions to the subgroup K (element indices of g, identity first)."""
    k = PermGroup([g.elements[i] for i in sub], "K")
    # K reorders its elements; map through the permutation tuples
    pos = {g.elements[i]: k.index[g.elements[i]] for i in sub}
    a = function_algebra(g, field)
    a0 = function_algebra(k, field)
    cols = [{pos[e]: field.one} if e in pos else {} for e in g.elements]
    return SubgroupDatum(a, a0, Mat.from_sparse_columns(cols, k.order, field), name)


def verify_subgroup(sd: SubgroupDatum) -> Report:
    rep = Report("subgroup")
    a, a0, P = sd.a, sd.a0, sd.P
    f = a.field
    one = f.one
    lhs = kron(P, P) @ a.comult_matrix
    rhs = a0.comult_matrix @ P
    rep.add("(P⊗P)Δ = Δ₀P", [] if lhs == rhs else [("comult",)])
    eps = Mat.from_rows([a.counit], f, ncols=a.dim)
    eps0 = Mat.from_rows([a0.counit], f, ncols=a0.dim)
    rep.add("ε₀P = ε", [] if eps0 @ P == eps else [("counit",)])
    rep.add("PS = S₀P", [] if P @ a.antipode == a0.antipode @ P else [("antipode",)])
    w = Witnesses()
    for i, j in itertools.product(range(a.dim), repeat=2):
        if P.apply_sparse(a.alg.table[i][j]) != a0.alg.mul(P.apply_sparse({i: one}),
                                                           P.apply_sparse({j: one})):
            if w((i, j)):
                break
    if P.apply_sparse(a.alg.unit) != a0.alg.unit:
        w(("unit",))
    rep.add("P is an algebra map", w)
    rep.add("P is surjective", [] if P.rank() == a0.dim else [("rank", P.rank())])
    return rep


# --------------------------------------------------------------------------
# the quotient
# --------------------------------------------------------------------------

def dual_action(a: Hopf, hhat: Hopf, v: dict, j: int) -> dict:
    """a ◁ ω_j = (ω_j ⊗ ι)Δ(a) for the dual basis element ω_j."""
    out: dict = {}
    for i, c in v.items():
        for (p, q), x in a.comult[i].items():
            if p == j:
                vec_add(out, {q: c * x})
    return out


@dataclass
class QuotientSpace:
    sd: SubgroupDatum
    delta_r: Mat
    sub: Subalgebra
    phi0: dict
    E: Mat
    hhat: Hopf
    b: ModuleAlgebra

    @property
    def basis(self) -> list:
        return self.sub.basis

    @property
    def dim(self) -> int:
        return len(self.sub.basis)

    def to_b(self, v: dict) -> dict:
        """Coordinates in the B basis of an element of A lying in B."""
        x = solve(self.sub.incl, to_dense(v, self.sd.a.dim, self.sd.a.field))
        return to_sparse(x)

    def verify(self) -> Report:
        rep = Report("quotient")
        a = self.sd.a
        f = a.field
        one = f.one
        incl = self.sub.incl
        rep.add("E restricted to B is the identity", [] if self.E @ incl == incl else [("E",)])
        rep.add("E^2 = E", [] if self.E @ self.E == self.E else [("E",)])
        img_ok = Mat.hstack([incl, self.E]).rank() == incl.ncols
        rep.add("E maps A onto B", [] if img_ok else [("image",)])
        w = Witnesses()
        for bi, ai, bj in itertools.product(range(self.dim), range(a.dim), range(self.dim)):
            x, y = self.basis[bi], self.basis[bj]
            lhs = self.E.apply_sparse(a.alg.mul_chain(x, {ai: one}, y))
            rhs = a.alg.mul_chain(x, self.E.apply_sparse({ai: one}), y)
            if lhs != rhs and w((bi, ai, bj)):
                break
        rep.add("E is a B-bimodule map", w)
        rep.extend(self.b.verify(), "module-algebra")
        return rep


def right_coaction_matrix(sd: SubgroupDatum) -> Mat:
    """Δ_R = (ι⊗P)Δ : A → A⊗A₀ (index a·dim A₀ + c)."""
    return kron(Mat.identity(sd.a.dim, sd.a.field), sd.P) @ sd.a.comult_matrix


def quotient(sd: SubgroupDatum) -> QuotientSpace:
    a, a0 = sd.a, sd.a0
    f = a.field
    d0 = a0.dim
    dr = right_coaction_matrix(sd)
    unit0 = Mat.from_sparse_columns([a0.alg.unit], d0, f)
    embed = kron(Mat.identity(a.dim, f), unit0)
    k, _ = (dr - embed).nullspace()
    basis = k.columns()
    sub = Subalgebra(a.alg, basis, "B")
    phi0 = haar_functional(a0)
    if phi0 is None:
        raise NoHaarFunctional("%s has no normalized two-sided invariant functional" % a0.name)
    phi_row = Mat.from_rows([to_dense(phi0, d0, f)], f, ncols=d0)
    E = kron(Mat.identity(a.dim, f), phi_row) @ dr
    hhat = dual_hopf(a)
    db = len(basis)

    def to_b(v):
        return to_sparse(solve(sub.incl, to_dense(v, a.dim, f)))

    def action(i, j):
        return to_b(dual_action(a, hhat, basis[i], j))
    module = RightModule.from_function(hhat, db, action, "B")
    b = ModuleAlgebra(sub.alg, module, "B")
    return QuotientSpace(sd, dr, sub, phi0, E, hhat, b)


# --------------------------------------------------------------------------
# irreducible classes of the subgroup and the modules X_t
# --------------------------------------------------------------------------

@dataclass
class IrrClass:
    label: int
    dim: int
    pi: list  # π_t(ω_k) on H_t for the dual basis ω_k of A₀
    trivial: bool


def irreducible_classes(a0: Hopf, seed: int = 0) -> list:
    hat0 = dual_hopf(a0)
    blocks = wedderburn_blocks(hat0.alg, seed=seed)
    out = []
    for label, bl in enumerate(blocks.blocks):
        pi = irreducible_representation(hat0.alg, bl.primitives[0])
        trivial = bl.size == 1 and all(pi[k][0, 0] == hat0.counit[k] for k in range(hat0.dim))
        out.append(IrrClass(label, bl.size, pi, trivial))
    return out


@dataclass
class SpectralModule:
    t: IrrClass
    delta_t: Mat
    E_t: Mat
    X: Mat
    A_t: Mat
    generators: list
    coefficients: list
    module: CPModule
    report: Report = dc_field(default_factory=lambda: Report("spectral"))


def _delta_t(q: QuotientSpace, t: IrrClass) -> Mat:
    """δ_t(ξ⊗a) = V^t_{31}(ξ⊗1⊗1)(1⊗Δ_R(a)) on H_t⊗A (index ξ·dim A + a)."""
    a, a0 = q.sd.a, q.sd.a0
    da, d0, dh = a.dim, a0.dim, t.dim
    f = a.field
    dr_cols = q.delta_r.columns()
    cols = []
    for idx in range(dh * da):
        xi, ai = divmod(idx, da)
        col: dict = {}
        for k in range(d0):
            vk = t.pi[k]
            for r in range(dh):
                coeff = vk[r, xi]
                if not coeff:
                    continue
                for pos, c in dr_cols[ai].items():
                    ap, cp_ = divmod(pos, d0)
                    for m, v in a0.alg.table[k][cp_].items():
                        vec_add(col, {(r * da + ap) * d0 + m: coeff * c * v})
        cols.append(col)
    return Mat.from_sparse_columns(cols, dh * da * d0, f)


def _delta_left(q: QuotientSpace, dh: int) -> Mat:
    """δ(ξ⊗a) = Σ a₍₁₎ ⊗ ξ ⊗ a₍₂₎ on A⊗H_t⊗A (index (a₁·dh + ξ)·dim A + a₂)."""
    a = q.sd.a
    da = a.dim
    cols = []
    for idx in range(dh * da):
        xi, ai = divmod(idx, da)
        cols.append({(p * dh + xi) * da + r: c for (p, r), c in a.comult[ai].items()})
    return Mat.from_sparse_columns(cols, da * dh * da, a.field)


def xt_module(q: QuotientSpace, cp: CrossedProduct, dh: int, basis: Mat) -> CPModule:
    """The B⋊Â action x·(b ω) = (x·b) ◁ ω on a subspace of H⊗A spanned by ``basis``."""
    a = q.sd.a
    da = a.dim
    f = a.field
    one = f.one
    mats = []
    dhat = q.hhat.dim
    for k in range(cp.dim):
        bi, wj = divmod(k, dhat)
        bvec = q.basis[bi]
        cols = []
        for idx in range(dh * da):
            xi, ai = divmod(idx, da)
            prod = a.alg.mul({ai: one}, bvec)
            img = dual_action(a, q.hhat, prod, wj)
            cols.append({xi * da + r: v for r, v in img.items()})
        op = Mat.from_sparse_columns(cols, dh * da, f)
        mats.append(solve_many(basis, op @ basis))
    return CPModule(cp, mats, "X")


def spectral_subspace(q: QuotientSpace, t: IrrClass, cp: CrossedProduct | None = None) -> SpectralModule:
    a, a0 = q.sd.a, q.sd.a0
    f = a.field
    one = f.one
    da, d0, dh = a.dim, a0.dim, t.dim
    cp = cp or crossed_product(q.b)
    dt = _delta_t(q, t)
    unit0 = Mat.from_sparse_columns([a0.alg.unit], d0, f)
    embed = kron(Mat.identity(dh * da, f), unit0)
    X, _ = (dt - embed).nullspace()
    phi_row = Mat.from_rows([to_dense(q.phi0, d0, f)], f, ncols=d0)
    E_t = kron(Mat.identity(dh * da, f), phi_row) @ dt
    rep = Report("spectral-%d" % t.label)
    rep.add("E_t^2 = E_t", [] if E_t @ E_t == E_t else [("E_t",)])
    rep.add("image of E_t is X_t", [] if E_t @ X == X and E_t.rank() == X.ncols else [("E_t",)])
    dl = _delta_left(q, dh)
    rep.add("delta E_t = (id⊗E_t) delta",
            [] if dl @ E_t == kron(Mat.identity(da, f), E_t) @ dl else [("delta",)])
    # A_t = span of (ι ⊗ φ₀(u ·))Δ_R(a) over matrix coefficients u of V^t
    coeffs = []
    for i, j in itertools.product(range(dh), repeat=2):
        coeffs.append({k: t.pi[k][i, j] for k in range(d0) if t.pi[k][i, j]})
    functionals = []
    for u in coeffs:
        row = []
        for c in range(d0):
            acc = f.zero
            for m, v in a0.alg.mul(u, {c: one}).items():
                acc = acc + v * q.phi0.get(m, f.zero)
            row.append(acc)
        functionals.append(Mat.from_rows([row], f, ncols=d0))
    spans = [kron(Mat.identity(da, f), fr) @ q.delta_r for fr in functionals]
    at = _column_basis(Mat.hstack(spans))
    w = Witnesses()
    for c in range(X.ncols):
        col = X.column(c)
        for xi in range(dh):
            part = {idx - xi * da: v for idx, v in col.items() if xi * da <= idx < (xi + 1) * da}
            if part and Mat.hstack([at, Mat.from_sparse_columns([part], da, f)]).rank() != at.ncols:
                w((c, xi))
    rep.add("X_t lies in H_t⊗A_t", w)
    gens, sols = _left_generators(q, at)
    rep.add("generators span A_t over B", [] if sols is not None else [("generators",)])
    module = xt_module(q, cp, dh, X)
    rep.extend(module.verify(), "X_t")
    return SpectralModule(t, dt, E_t, X, at, gens, sols or [], module, rep)


def _column_basis(m: Mat) -> Mat:
    prows, _ = m.T.rref()
    return Mat.from_sparse_columns([dict(r) for r in prows], m.nrows, m.field)


def _left_generators(q: QuotientSpace, at: Mat):
    """Greedy generators g_i of A_t as a left B-module and, per basis element a,
    coefficients β_i ∈ B with Σ β_i g_i = a (certified)."""
    a = q.sd.a
    f = a.field
    gens: list = []
    span_cols: list = []
    for c in range(at.ncols):
        g = at.column(c)
        cur = Mat.from_sparse_columns(span_cols, a.dim, f) if span_cols else Mat.zeros(a.dim, 0, f)
        if cur.ncols and Mat.hstack([cur, Mat.from_sparse_columns([g], a.dim, f)]).rank() == cur.rank():
            continue
        gens.append(g)
        span_cols.extend(a.alg.mul(b, g) for b in q.basis)
        if Mat.from_sparse_columns(span_cols, a.dim, f).rank() == at.ncols:
            break
    system = Mat.from_sparse_columns(span_cols, a.dim, f)
    sols = []
    for c in range(at.ncols):
        target = at.column(c)
        try:
            x = solve(system, to_dense(target, a.dim, f))
        except Inconsistent:
            return gens, None
        nb = q.dim
        betas = [to_sparse(x[i * nb:(i + 1) * nb]) for i in range(len(gens))]
        recon: dict = {}
        for beta, g in zip(betas, gens):
            vec_add(recon, a.alg.mul(q.sub.incl.apply_sparse(beta), g))
        if recon != {k: v for k, v in target.items() if v}:
            return gens, None
        sols.append(betas)
    return gens, sols


# --------------------------------------------------------------------------
# blocks and decomposition
# --------------------------------------------------------------------------

@dataclass
class Homogeneous:
    sd: SubgroupDatum
    q: QuotientSpace
    cp: CrossedProduct
    classes: list
    spectral: list
    blocks: BlockDecomposition
    labels: dict  # class label → block index


def build_homogeneous(sd: SubgroupDatum, seed: int = 0) -> Homogeneous:
    q = quotient(sd)
    cp = crossed_product(q.b)
    classes = irreducible_classes(sd.a0, seed)
    spectral = [spectral_subspace(q, t, cp) for t in classes]
    blocks = wedderburn_blocks(cp.alg, seed=seed)
    labels = {}
    for sm in spectral:
        mu = multiplicities(sm.module, blocks)
        if sorted(mu) != [0] * (len(mu) - 1) + [1]:
            raise DecompositionFailed("X_%d is not simple: multiplicities %s" % (sm.t.label, mu))
        labels[sm.t.label] = mu.index(1)
    if sorted(labels.values()) != list(range(len(blocks.blocks))):
        raise DecompositionFailed("classes do not label the blocks bijectively: %s" % labels)
    return Homogeneous(sd, q, cp, classes, spectral, blocks, labels)


def crossed_blocks(hs: Homogeneous) -> BlockDecomposition:
    return hs.blocks


def direct_sum_modules(mods: list, cp: CrossedProduct) -> CPModule:
    if not mods:
        return CPModule(cp, [Mat.zeros(0, 0, cp.field) for _ in range(cp.dim)], "0")
    out = mods[0]
    for m in mods[1:]:
        out = out.direct_sum(m)
    return out


@dataclass
class Decomposition:
    multiplicities: dict  # class label → n_t
    certificate: str
    intertwiner: Mat | None = None

    def to_json(self) -> dict:
        return {"multiplicities": {str(k): v for k, v in sorted(self.multiplicities.items())},
                "certificate": self.certificate}


def decompose_module(hs: Homogeneous, m: CPModule, seed: int = 0) -> Decomposition:
    mu = multiplicities(m, hs.blocks)
    counts = {t: mu[b] for t, b in hs.labels.items()}
    target = direct_sum_modules([sm.module for sm in hs.spectral
                                 for _ in range(counts[sm.t.label])], hs.cp)
    res = iso_test(m, target, seed=seed, blocks=hs.blocks)
    if not res.iso:
        raise DecompositionFailed("module is not isomorphic to the predicted sum %s (%s)"
                                  % (counts, res.verdict))
    return Decomposition(counts, res.verdict, res.intertwiner)


def decompose_equivariant(hs: Homogeneous, x: RightModule, p: BMatrix, seed: int = 0) -> Decomposition:
    """Multiplicities n_t with X_p ≅ ⊕ X_t^{n_t}."""
    idem = check_idempotent(x, p)
    return decompose_module(hs, xp_module(x, idem, hs.cp), seed)


def regular_a_module(hs: Homogeneous) -> CPModule:
    """A itself with a·(bω) = (ab) ◁ ω."""
    a = hs.sd.a
    return xt_module(hs.q, hs.cp, 1, Mat.identity(a.dim, a.field))


# --------------------------------------------------------------------------
# modules of the dual and enumeration of equivariant modules
# --------------------------------------------------------------------------

def irreducible_right_modules(h: Hopf, seed: int = 0) -> list:
    """The simple right H-modules (transposes of the simple left modules)."""
    out = []
    for bl in wedderburn_blocks(h.alg, seed=seed).blocks:
        pi = irreducible_representation(h.alg, bl.primitives[0])
        out.append(RightModule.from_pi(h, [m.T for m in pi], "irr%d" % len(out)))
    return out


def invariant_idempotents(x: RightModule, b: ModuleAlgebra, seed: int = 0) -> list:
    """Representatives of every conjugacy class of idempotents of (End(X)⊗B)^H.

    The invariant subalgebra is semisimple here; idempotents are sums of
    m_i orthogonal primitives in block i for 0 ≤ m_i ≤ size_i.
    """
    e = endx_tensor_b(x, b)
    sub = Subalgebra(e.alg, invariants(e.module), "inv")
    blocks = wedderburn_blocks(sub.alg, seed=seed)
    out = []
    for counts in itertools.product(*[range(bl.size + 1) for bl in blocks.blocks]):
        v: dict = {}
        for bl, m in zip(blocks.blocks, counts):
            for prim in bl.primitives[:m]:
                vec_add(v, prim)
        amb = sub.incl.apply_sparse(v)
        out.append((counts, BMatrix.from_vector(b, x.dim, amb)))
    return out


def enumerate_modules(hs: Homogeneous, max_dim: int, seed: int = 0):
    """Yield (description, X, p) for X a sum of simple Â-modules with dim X⊗B ≤ max_dim
    and p running over invariant idempotents of (End(X)⊗B)^Â."""
    irr = irreducible_right_modules(hs.q.hhat, seed)
    db = hs.q.dim
    max_x = max_dim // db
    for total in range(1, max_x + 1):
        for combo in itertools.combinations_with_replacement(range(len(irr)), total):
            if sum(irr[i].dim for i in combo) > max_x:
                continue
            x = irr[combo[0]]
            for i in combo[1:]:
                x = x.direct_sum(irr[i])
            if x.dim > max_x:
                continue
            for counts, p in invariant_idempotents(x, hs.q.b, seed):
                yield (combo, counts), x, p


def spectral_module(hs: Homogeneous, label: int) -> SpectralModule:
    for sm in hs.spectral:
        if sm.t.label == label:
            return sm
    raise ClassNotFound("no irreducible class labelled %r (have %s)"
                        % (label, [sm.t.label for sm in hs.spectral]))
