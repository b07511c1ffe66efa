"""Equivariant K-theory representatives, their pairings with cyclic cocycles, and Julg's correspondence.

Elements of End(X)⊗B (or Hom(X, X')⊗B) are handled as matrices with
entries in B (:class:`BMatrix`).  The vector index of E_ac ⊗ b_k in the
square case is (a·dim X + c)·dim B + k, matching ``endx_tensor_b``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .actions import (CPModule, CrossedProduct, ModuleAlgebra, RightModule, conjugation_module,
                      endx_tensor_b, regular_cp_module, tensor_b_module)
from .equivariant import EquivariantObject, TwistedObject
from .errors import (DecompositionFailed, HNotSemisimple, NoNormalizedIntegral, NotACocycle,
                     NotIdempotent, NotInvariant, WitnessEquationsFail)
from .hopf import BlockDecomposition, right_integral, wedderburn_blocks
from .linalg import Inconsistent, Mat, kernel_basis, kron, solve, to_sparse, vec_add
from .report import Report


# --------------------------------------------------------------------------
# matrices over B
# --------------------------------------------------------------------------

class BMatrix:
    """A rows × cols matrix with entries in the algebra of ``b``."""

    def __init__(self, b: ModuleAlgebra, nrows: int, ncols: int, entries: dict | None = None):
        self.b = b
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def scalar(cls, b: ModuleAlgebra, m: Mat) -> "BMatrix":
        """m ⊗ 1."""
        unit = b.alg.unit
        return cls(b, m.nrows, m.ncols,
                   {(i, j): {k: v * u for k, u in unit.items()}
                    for i, r in m.rows.items() for j, v in r.items()})

    @classmethod
    def identity(cls, b: ModuleAlgebra, n: int) -> "BMatrix":
        return cls.scalar(b, Mat.identity(n, b.field))

    @classmethod
    def zero(cls, b: ModuleAlgebra, nrows: int, ncols: int) -> "BMatrix":
        return cls(b, nrows, ncols)

    @classmethod
    def from_vector(cls, b: ModuleAlgebra, n: int, v: dict) -> "BMatrix":
        db = b.dim
        entries: dict = {}
        for idx, c in v.items():
            ac, k = divmod(idx, db)
            entries.setdefault(divmod(ac, n), {})[k] = c
        return cls(b, n, n, entries)

    def to_vector(self) -> dict:
        db = self.b.dim
        return {(a * self.ncols + c) * db + k: v
                for (a, c), e in self.entries.items() for k, v in e.items()}

    def __getitem__(self, ac) -> dict:
        return self.entries.get(ac, {})

    def __add__(self, other: "BMatrix") -> "BMatrix":
        out = {k: dict(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            vec_add(out.setdefault(k, {}), v)
        return BMatrix(self.b, self.nrows, self.ncols, out)

    def scale(self, c) -> "BMatrix":
        return BMatrix(self.b, self.nrows, self.ncols,
                       {k: {i: c * x for i, x in v.items()} for k, v in self.entries.items()})

    def __neg__(self) -> "BMatrix":
        return self.scale(-self.b.field.one)

    def __sub__(self, other: "BMatrix") -> "BMatrix":
        return self + (-other)

    def __matmul__(self, other: "BMatrix") -> "BMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %s @ %s" % ((self.nrows, self.ncols),
                                                         (other.nrows, other.ncols)))
        by_row: dict = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        out: dict = {}
        mul = self.b.alg.mul
        for (a, k), u in self.entries.items():
            for c, v in by_row.get(k, ()):
                vec_add(out.setdefault((a, c), {}), mul(u, v))
        return BMatrix(self.b, self.nrows, other.ncols, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, BMatrix) and self.shape == other.shape
                and {k: v for k, v in self.entries.items() if v}
                == {k: v for k, v in other.entries.items() if v})

    @property
    def shape(self):
        return self.nrows, self.ncols

    def is_zero(self) -> bool:
        return not any(self.entries.values())

    @staticmethod
    def block(blocks, row_dims, col_dims, b: ModuleAlgebra) -> "BMatrix":
        out: dict = {}
        r0 = 0
        for bi, row in enumerate(blocks):
            c0 = 0
            for bj, m in enumerate(row):
                if m is not None:
                    for (a, c), v in m.entries.items():
                        out[(r0 + a, c0 + c)] = dict(v)
                c0 += col_dims[bj]
            r0 += row_dims[bi]
        return BMatrix(b, sum(row_dims), sum(col_dims), out)

    def direct_sum(self, other: "BMatrix") -> "BMatrix":
        return BMatrix.block([[self, None], [None, other]], [self.nrows, other.nrows],
                             [self.ncols, other.ncols], self.b)

    def operator(self) -> Mat:
        """Left multiplication on the column space X⊗B (index x·dim B + k)."""
        db = self.b.dim
        table = self.b.alg.table
        cols = []
        for idx in range(self.ncols * db):
            c, k = divmod(idx, db)
            col: dict = {}
            for a in range(self.nrows):
                e = self.entries.get((a, c))
                if e:
                    for i, u in e.items():
                        for q, v in table[i][k].items():
                            vec_add(col, {a * db + q: u * v})
            cols.append(col)
        return Mat.from_sparse_columns(cols, self.nrows * db, self.b.field)

    def __repr__(self):
        return "BMatrix(%dx%d, %s)" % (self.nrows, self.ncols, self.entries)


def direct_sum_module(x1: RightModule, x2: RightModule) -> RightModule:
    return x1.direct_sum(x2)


# --------------------------------------------------------------------------
# representatives
# --------------------------------------------------------------------------

def invariance_defect(x: RightModule, b: ModuleAlgebra, p: BMatrix) -> list:
    """Basis indices j with p ◀ ω_j ≠ ε(ω_j) p."""
    mod = endx_tensor_b(x, b).module
    h = b.hopf
    v = p.to_vector()
    bad = []
    for j in range(h.dim):
        lhs = mod.apply(v, {j: b.field.one})
        rhs = {k: h.counit[j] * c for k, c in v.items() if h.counit[j] * c}
        if lhs != rhs:
            bad.append(j)
    return bad


@dataclass
class InvariantIdempotent:
    x: RightModule
    p: BMatrix

    @property
    def b(self) -> ModuleAlgebra:
        return self.p.b


@dataclass
class InvariantInvertible:
    x: RightModule
    u: BMatrix
    u_inv: BMatrix

    @property
    def b(self) -> ModuleAlgebra:
        return self.u.b


def check_idempotent(x: RightModule, p: BMatrix) -> InvariantIdempotent:
    sq = p @ p - p
    if not sq.is_zero():
        (a, c), _ = next(iter((k, v) for k, v in sq.entries.items() if v))
        raise NotIdempotent("p^2 - p has a nonzero entry at (%d, %d)" % (a, c))
    bad = invariance_defect(x, p.b, p)
    if bad:
        raise NotInvariant("p is moved by basis element %d of H" % bad[0])
    return InvariantIdempotent(x, p)


def inverse_of(x: RightModule, b: ModuleAlgebra, u: BMatrix) -> BMatrix:
    e = endx_tensor_b(x, b)
    return BMatrix.from_vector(b, x.dim, e.alg.inverse(u.to_vector()))


def check_invertible(x: RightModule, u: BMatrix, u_inv: BMatrix | None = None) -> InvariantInvertible:
    b = u.b
    if u_inv is None:
        u_inv = inverse_of(x, b, u)
    ident = BMatrix.identity(b, x.dim)
    if u @ u_inv != ident or u_inv @ u != ident:
        raise WitnessEquationsFail("u u^-1 = u^-1 u = 1 fails")
    bad = invariance_defect(x, b, u)
    if bad:
        raise NotInvariant("u is moved by basis element %d of H" % bad[0])
    return InvariantInvertible(x, u, u_inv)


def gamma0(x: RightModule, p: BMatrix, x2: RightModule, p2: BMatrix,
           gamma: BMatrix, gamma2: BMatrix) -> InvariantInvertible:
    """γ₀ = [[1−p, pγ′p′], [p′γp, 1−p′]] on X⊕X′.

    ``gamma`` maps X to X′ (shape dim X′ × dim X), ``gamma2`` maps back.
    """
    b = p.b
    n1, n2 = x.dim, x2.dim
    if gamma @ gamma2 != p2 or gamma2 @ gamma != p:
        raise WitnessEquationsFail("γγ′ = p′ and γ′γ = p are required")
    y = x.direct_sum(x2)
    for name, m in [("p", p.direct_sum(BMatrix.zero(b, n2, n2))),
                    ("p'", BMatrix.zero(b, n1, n1).direct_sum(p2)),
                    ("gamma", BMatrix.block([[None, None], [gamma, None]], [n1, n2], [n1, n2], b)),
                    ("gamma'", BMatrix.block([[None, gamma2], [None, None]], [n1, n2], [n1, n2], b))]:
        if invariance_defect(y, b, m):
            raise WitnessEquationsFail("%s is not invariant" % name)
    one1, one2 = BMatrix.identity(b, n1), BMatrix.identity(b, n2)
    g0 = BMatrix.block([[one1 - p, p @ gamma2 @ p2], [p2 @ gamma @ p, one2 - p2]],
                       [n1, n2], [n1, n2], b)
    inv = check_invertible(y, g0)
    big_p = p.direct_sum(BMatrix.zero(b, n2, n2))
    big_p2 = BMatrix.zero(b, n1, n1).direct_sum(p2)
    if g0 @ big_p @ inv.u_inv != big_p2:
        raise WitnessEquationsFail("γ₀ p γ₀⁻¹ ≠ p′")
    return inv


# --------------------------------------------------------------------------
# pairings
# --------------------------------------------------------------------------

@dataclass
class InvariantFunctional:
    """A linear functional on H by its values on the basis."""
    values: list
    field: object = dc_field(repr=False, default=None)

    def __call__(self, w: dict):
        acc = self.field.zero
        for j, c in w.items():
            acc = acc + c * self.values[j]
        return acc

    def __add__(self, other: "InvariantFunctional") -> "InvariantFunctional":
        return InvariantFunctional([a + b for a, b in zip(self.values, other.values)], self.field)

    def __sub__(self, other):
        return InvariantFunctional([a - b for a, b in zip(self.values, other.values)], self.field)

    def __eq__(self, other):
        return isinstance(other, InvariantFunctional) and self.values == other.values

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_json(self) -> list:
        return [self.field.to_json(v) for v in self.values]


def invariance_residual(h, values: list) -> list:
    """Coordinates j of (ω_j ▷ φ − ε(ω_j) φ) that are nonzero, for φ on H."""
    conj = conjugation_module(h)
    phi = to_sparse(values)
    bad = []
    for j in range(h.dim):
        lhs = conj.pi_basis[j].T.apply_sparse(phi)
        rhs = {k: h.counit[j] * v for k, v in phi.items() if h.counit[j] * v}
        if lhs != rhs:
            bad.append(j)
    return bad


def chain_products(factors: list, db: int) -> dict:
    """Y[(a, c)] = Σ factor₀[a, k₁] ⊗ factor₁[k₁, k₂] ⊗ … ⊗ factor_m[k_m, c] as tensor vectors."""
    y = {ac: dict(v) for ac, v in factors[0].entries.items()}
    for f in factors[1:]:
        by_row: dict = {}
        for (k, c), v in f.entries.items():
            by_row.setdefault(k, []).append((c, v))
        nxt: dict = {}
        for (a, k), u in y.items():
            for c, v in by_row.get(k, ()):
                acc = nxt.setdefault((a, c), {})
                for i, s in u.items():
                    for j, t in v.items():
                        vec_add(acc, {i * db + j: s * t})
        y = nxt
    return y


def _check_cocycle(obj, level: int, f: dict) -> dict:
    if level + 1 > obj.n_max:
        raise NotACocycle("the cocycle condition at degree %d needs level %d" % (level, level + 1))
    if not (obj.b(level + 1).apply_sparse(f) == {}):
        raise NotACocycle("b f != 0 in degree %d" % level)
    if obj.lam(level).apply_sparse(f) != {k: v for k, v in f.items() if v}:
        raise NotACocycle("f is not cyclic (lambda f != f) in degree %d" % level)
    return obj.ambient(level, f)


def _pair_factors(obj: EquivariantObject, level: int, f: dict, x: RightModule,
                  factors: list) -> InvariantFunctional:
    amb = _check_cocycle(obj, level, f)
    h = obj.hopf
    db = obj.db
    one = obj.field.one
    y = chain_products(factors, db)
    stride = db ** (level + 1)
    sinv = [x.pi_of(h.Sinv({j: one})) for j in range(h.dim)]
    # f(w0 ⊗ Y[a, c]) for every w0 and (a, c)
    fy = {}
    for ac, vec in y.items():
        for w0 in range(h.dim):
            acc = obj.field.zero
            base = w0 * stride
            for idx, c in vec.items():
                v = amb.get(base + idx)
                if v:
                    acc = acc + c * v
            if acc:
                fy[(w0, ac)] = acc
    values = []
    for j in range(h.dim):
        acc = obj.field.zero
        for (w0, w1), c in h.comult[j].items():
            tr = sinv[w1]
            for (a, cc), _ in y.items():
                v = fy.get((w0, (a, cc)))
                t = tr[cc, a]
                if v and t:
                    acc = acc + c * t * v
        values.append(acc)
    bad = invariance_residual(h, values)
    if bad:
        raise AssertionError("pairing output is not conjugation invariant at %s" % bad)
    return InvariantFunctional(values, obj.field)


def pair_even(obj: EquivariantObject, level: int, f: dict, p: InvariantIdempotent):
    """⟨[f], [p]⟩(ω) = (Ψf)(ω ⊗ p ⊗ … ⊗ p) for a cyclic cocycle f in even degree."""
    if level % 2:
        raise NotACocycle("the even pairing needs an even degree, got %d" % level)
    return _pair_factors(obj, level, f, p.x, [p.p] * (level + 1))


def pair_odd(obj: EquivariantObject, level: int, f: dict, u: InvariantInvertible):
    """⟨[f], [u]⟩(ω) = (Ψf)(ω ⊗ (u⁻¹−1) ⊗ (u−1) ⊗ …) in odd degree."""
    if level % 2 == 0:
        raise NotACocycle("the odd pairing needs an odd degree, got %d" % level)
    ident = BMatrix.identity(u.b, u.x.dim)
    a, c = u.u_inv - ident, u.u - ident
    factors = [a if k % 2 == 0 else c for k in range(level + 1)]
    return _pair_factors(obj, level, f, u.x, factors)


def pair_twisted(obj: TwistedObject, level: int, f: dict, p: InvariantIdempotent,
                 rho: dict, hopf):
    """⟨[f], [p]⟩_ρ = Σ Tr(π_X(ρ⁻¹) T₀ … T_n) f(b₀ ⊗ … ⊗ b_n) evaluated on p ⊗ … ⊗ p."""
    if level % 2:
        raise NotACocycle("the twisted pairing needs an even degree, got %d" % level)
    amb = _check_cocycle(obj, level, f)
    y = chain_products([p.p] * (level + 1), obj.db)
    pr = p.x.pi_of(hopf.S(rho))
    acc = obj.field.zero
    for (a, c), vec in y.items():
        t = pr[c, a]
        if not t:
            continue
        for idx, v in vec.items():
            w = amb.get(idx)
            if w:
                acc = acc + t * v * w
    return acc


def triangular_relation_check(obj: EquivariantObject, level: int, f: dict,
                              u1: InvariantInvertible, u2: InvariantInvertible,
                              t: BMatrix) -> Report:
    """⟨f, u₁⟩ + ⟨f, u₂⟩ = ⟨f, [[u₁, T], [0, u₂]]⟩."""
    b = u1.b
    n1, n2 = u1.x.dim, u2.x.dim
    y = u1.x.direct_sum(u2.x)
    big = BMatrix.block([[u1.u, t], [None, u2.u]], [n1, n2], [n1, n2], b)
    rep = Report("triangular-relation")
    inv = check_invertible(y, big)
    lhs = pair_odd(obj, level, f, u1) + pair_odd(obj, level, f, u2)
    rhs = pair_odd(obj, level, f, inv)
    rep.add("<f,u1> + <f,u2> = <f,[[u1,T],[0,u2]]>", [] if lhs == rhs else [("values",)],
            {"lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return rep


# --------------------------------------------------------------------------
# modules over the crossed product
# --------------------------------------------------------------------------

def solve_intertwiners(pairs: list, r: int, s: int, field, affine: tuple | None = None):
    """Matrices M (r × s) with M A = B M for every (A, B) in ``pairs``.

    With ``affine = (C, D)`` also C M = D.  Returns (particular, kernel basis)
    as flat row-major lists; particular is None when the system is inconsistent.
    """
    ir, is_ = Mat.identity(r, field), Mat.identity(s, field)
    rows = [kron(ir, a.T) - kron(bm, is_) for a, bm in pairs]
    rhs_parts = [[field.zero] * (r * s) for _ in pairs]
    if affine is not None:
        c, d = affine
        rows.append(kron(c, is_))
        rhs_parts.append([d[i, j] for i in range(d.nrows) for j in range(d.ncols)])
    system = Mat.vstack(rows)
    rhs = [v for part in rhs_parts for v in part]
    try:
        part = solve(system, rhs) if affine is not None else [field.zero] * (r * s)
    except Inconsistent:
        part = None
    return part, kernel_basis(system)


def _flat_to_mat(v, r, s, field) -> Mat:
    return Mat.from_rows([v[i * s:(i + 1) * s] for i in range(r)], field, ncols=s)


def _generator_indices(cp: CrossedProduct) -> list:
    return cp.alg.generators() or [0]


def module_maps(m1: CPModule, m2: CPModule):
    """Pairs for T with T ρ₁(a) = ρ₂(a) T on algebra generators."""
    return [(m1.mats[k], m2.mats[k]) for k in _generator_indices(m1.cp)]


def multiplicities(m: CPModule, blocks: BlockDecomposition) -> list:
    """Multiplicity of each simple module, as rank ρ(e) for a primitive idempotent e per block."""
    return [m.rho(bl.primitives[0]).rank() for bl in blocks.blocks]


@dataclass
class IsoResult:
    verdict: str
    intertwiner: Mat | None = None
    detail: str = ""

    @property
    def iso(self) -> bool:
        return self.verdict == "certified-iso"


def iso_test(m1: CPModule, m2: CPModule, seed: int = 0, samples: int = 8,
             blocks: BlockDecomposition | None = None) -> IsoResult:
    if m1.dim != m2.dim:
        return IsoResult("certified-noniso", None, "dimensions %d and %d" % (m1.dim, m2.dim))
    if m1.dim == 0:
        return IsoResult("certified-iso", Mat.zeros(0, 0, m1.field))
    field = m1.field
    if blocks is None:
        try:
            blocks = wedderburn_blocks(m1.cp.alg, seed=seed)
        except Exception:
            blocks = None
    if blocks is not None:
        mu1, mu2 = multiplicities(m1, blocks), multiplicities(m2, blocks)
        if mu1 != mu2:
            return IsoResult("certified-noniso", None, "multiplicities %s and %s" % (mu1, mu2))
    if all(a == b for a, b in zip(m1.mats, m2.mats)):
        return IsoResult("certified-iso", Mat.identity(m1.dim, field))
    n = m1.dim
    _, basis = solve_intertwiners(module_maps(m1, m2), n, n, field)
    if not basis:
        return IsoResult("certified-noniso", None, "no nonzero module maps")
    rng = random.Random(seed)
    for _ in range(samples):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        flat = [field.zero] * (n * n)
        for c, v in zip(coeffs, basis):
            if c:
                flat = [a + c * x for a, x in zip(flat, v)]
        t = _flat_to_mat(flat, n, n, field)
        if t.is_invertible():
            return IsoResult("certified-iso", t)
    return IsoResult("heuristic-noniso", None, "%d random module maps were singular" % samples)


def generators_of(m: CPModule) -> list:
    """Greedy module generators among the standard basis vectors."""
    field = m.field
    gens: list = []
    span = Mat.zeros(m.dim, 0, field)
    for i in range(m.dim):
        if span.ncols and span.rank() == m.dim:
            break
        e = {i: field.one}
        if Mat.hstack([span, Mat.from_sparse_columns([e], m.dim, field)]).rank() == span.rank():
            continue
        gens.append(i)
        cyc = Mat.from_sparse_columns([mat.apply_sparse(e) for mat in m.mats], m.dim, field)
        span = Mat.hstack([span, cyc])
    return gens


@dataclass
class Presentation:
    """q·(B⋊H)^k with q a k×k matrix over B⋊H (entries as crossed-product vectors)."""
    k: int
    q: dict
    module: CPModule
    to_target: Mat
    from_target: Mat


def free_module(cp: CrossedProduct, k: int) -> CPModule:
    reg = regular_cp_module(cp)
    out = reg
    for _ in range(k - 1):
        out = out.direct_sum(reg)
    return out


def _require_semisimple(h) -> None:
    try:
        right_integral(h)
    except NoNormalizedIntegral as e:
        raise HNotSemisimple("H has no normalized integral (%s)" % e.detail)


def present(m: CPModule) -> Presentation:
    """Write a projective module as q·(B⋊H)^k via generators and a module splitting."""
    cp = m.cp
    field = m.field
    if m.dim == 0:
        zero = Mat.zeros(0, 0, field)
        return Presentation(0, {}, CPModule(cp, [zero] * cp.dim, "0"), zero, zero)
    gens = generators_of(m)
    k = len(gens)
    f = free_module(cp, k)
    d = cp.dim
    # φ : F → M, e_i·a ↦ m_{g_i}·a
    cols = []
    for idx in range(k * d):
        i, a = divmod(idx, d)
        cols.append(m.mats[a].apply_sparse({gens[i]: field.one}))
    phi = Mat.from_sparse_columns(cols, m.dim, field)
    part, _ = solve_intertwiners(module_maps(m, f), f.dim, m.dim, field,
                                 affine=(phi, Mat.identity(m.dim, field)))
    if part is None:
        raise DecompositionFailed("module is not projective: no splitting of the generator map")
    sigma = _flat_to_mat(part, f.dim, m.dim, field)
    qop = sigma @ phi
    q = {}
    for j in range(k):
        img = qop.apply_sparse({j * d + u: c for u, c in cp.alg.unit.items()})
        for i in range(k):
            entry = {t - i * d: v for t, v in img.items() if i * d <= t < (i + 1) * d}
            if entry:
                q[(i, j)] = entry
    image_basis = _column_basis(qop)
    sub = f.submodule(image_basis)
    to_target = phi @ image_basis
    from_target = solve_rows(image_basis, sigma)
    return Presentation(k, q, sub, to_target, from_target)


def _column_basis(m: Mat) -> Mat:
    prows, _ = m.T.rref()
    return Mat.from_sparse_columns([dict(r) for r in prows], m.nrows, m.field)


def solve_rows(basis: Mat, m: Mat) -> Mat:
    """Coordinates of the columns of m in the column basis ``basis``."""
    from .linalg import solve_many
    return solve_many(basis, m)


def is_module_map(t: Mat, m1: CPModule, m2: CPModule) -> bool:
    return all(t @ a == b @ t for a, b in zip(m1.mats, m2.mats))


def julg_forward(x: RightModule, p: InvariantIdempotent, cp: CrossedProduct) -> Presentation:
    """X_p = p(X⊗B) as q·(B⋊H)^k, with the isomorphism certified both ways."""
    _require_semisimple(cp.hopf)
    xp = xp_module(x, p, cp)
    pres = present(xp)
    ident_t = Mat.identity(xp.dim, xp.field)
    ident_s = Mat.identity(pres.module.dim, xp.field)
    if not (pres.to_target @ pres.from_target == ident_t
            and pres.from_target @ pres.to_target == ident_s
            and is_module_map(pres.to_target, pres.module, xp)
            and is_module_map(pres.from_target, xp, pres.module)):
        raise DecompositionFailed("presentation maps are not mutually inverse module maps")
    return pres


def xp_module(x: RightModule, p: InvariantIdempotent, cp: CrossedProduct) -> CPModule:
    full = tensor_b_module(x, cp.b, cp)
    op = p.p.operator()
    return full.submodule(_column_basis(op))


def average(t: Mat, src_pi: list, tgt_pi: list, h, eta: dict) -> Mat:
    """T ◀ η = π_tgt(η₀) T π_src(S⁻¹(η₁)); ``*_pi`` are the H-basis action matrices."""
    one = h.field.one
    acc = Mat.zeros(t.nrows, t.ncols, h.field)
    for j, c in eta.items():
        for (w0, w1), v in h.comult[j].items():
            sinv = h.Sinv({w1: one})
            right = Mat.zeros(t.ncols, t.ncols, h.field)
            for k, s in sinv.items():
                right = right + src_pi[k].scale(s)
            acc = acc + (tgt_pi[w0] @ t @ right).scale(c * v)
    return acc


@dataclass
class Reverse:
    x: RightModule
    p: InvariantIdempotent
    t: Mat
    t_split: Mat


def julg_reverse(y: CPModule) -> Reverse:
    """(X, p) with X_p ≅ Y: X = span of generators under H, p = T′T with T′ averaged."""
    cp = y.cp
    h, b = cp.hopf, cp.b
    _require_semisimple(h)
    field = y.field
    one = field.one
    h_mats = [y.rho(cp.embed_h({j: one})) for j in range(h.dim)]
    b_mats = [y.rho(cp.embed_b({i: one})) for i in range(b.dim)]
    gens = generators_of(y)
    vecs = [m.apply_sparse({g: one}) for g in gens for m in h_mats]
    xb = _column_basis(Mat.from_sparse_columns(vecs, y.dim, field))
    dx = xb.ncols
    x = RightModule.from_pi(h, [solve_rows(xb, m @ xb) for m in h_mats], "X")
    # T : X⊗B → Y, x⊗b ↦ x·b
    cols = []
    for idx in range(dx * b.dim):
        xi, bi = divmod(idx, b.dim)
        cols.append(b_mats[bi].apply_sparse(xb.column(xi)))
    t = Mat.from_sparse_columns(cols, y.dim, field)
    full = tensor_b_module(x, b, cp)
    b_pairs = [(y.rho(cp.embed_b({i: one})), full.rho(cp.embed_b({i: one}))) for i in range(b.dim)]
    part, _ = solve_intertwiners(b_pairs, full.dim, y.dim, field,
                                 affine=(t, Mat.identity(y.dim, field)))
    if part is None:
        raise DecompositionFailed("Y is not projective over B")
    t_split = _flat_to_mat(part, full.dim, y.dim, field)
    eta = right_integral(h)
    src_pi = h_mats
    tgt_pi = [full.rho(cp.embed_h({j: one})) for j in range(h.dim)]
    t_split = average(t_split, src_pi, tgt_pi, h, eta)
    if not is_module_map(t_split, y, full) or t @ t_split != Mat.identity(y.dim, field):
        raise DecompositionFailed("averaged splitting is not a module section")
    op = t_split @ t
    p = operator_to_bmatrix(op, dx, b)
    return Reverse(x, check_idempotent(x, p), t, t_split)


def operator_to_bmatrix(op: Mat, n: int, b: ModuleAlgebra) -> BMatrix:
    """The element of End(X)⊗B whose left multiplication on X⊗B is ``op``."""
    db = b.dim
    # left multiplication by p is determined by the images of x_c ⊗ 1
    entries: dict = {}
    for c in range(n):
        col = op.apply_sparse({c * db + u: v for u, v in b.alg.unit.items()})
        for idx, v in col.items():
            a, k = divmod(idx, db)
            entries.setdefault((a, c), {})[k] = v
    p = BMatrix(b, n, n, entries)
    if p.operator() != op:
        raise DecompositionFailed("operator is not left multiplication by End(X)⊗B")
    return p


# --------------------------------------------------------------------------
# K0 in the semisimple case
# --------------------------------------------------------------------------

@dataclass
class K0Result:
    rank: int
    block_sizes: list
    generators: list

    def to_json(self, field) -> dict:
        return {"rank": self.rank, "block_sizes": self.block_sizes,
                "generators": [{str(k): field.to_json(v) for k, v in sorted(g.items())}
                               for g in self.generators]}


def k0_semisimple(cp: CrossedProduct, seed: int = 0) -> K0Result:
    blocks = wedderburn_blocks(cp.alg, seed=seed)
    return K0Result(len(blocks.blocks), blocks.sizes, [bl.primitives[0] for bl in blocks.blocks])
