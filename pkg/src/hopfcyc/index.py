"""Finite equivariant even Fredholm modules, the cocycle φ_F, the equivariant index and the quantum index.

The Hilbert space is C^N with a diagonal grading γ (entries ±1).  The
representation π of B, the symmetry F and the representation π_U of the
acting Hopf algebra Â are explicit matrices.  Orthogonality uses the
standard coordinate form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .actions import ModuleAlgebra, RightModule, endx_tensor_b
from .equivariant import (EquivariantObject, MoritaPair, TwistedObject, build_equivariant,
                          build_twisted, twist_of)
from .errors import NoModularGroupLike, NotACocycle, VNotCorepresentation
from .hopf import Algebra, Hopf, dual_hopf, group_likes
from .ktheory import BMatrix, check_idempotent, pair_even, pair_twisted
from .actions import trivial_module
from .linalg import Mat, kron, solve_many, vec_add
from .report import Report, Witnesses


# --------------------------------------------------------------------------
# coactions
# --------------------------------------------------------------------------

@dataclass
class FiniteCoaction:
    """A left coaction α : B → A⊗B; column i of ``alpha`` is α(b_i) (index a·dim B + k)."""
    hopf: Hopf
    alg: Algebra
    alpha: Mat

    def dual(self) -> Hopf:
        return dual_hopf(self.hopf)

    def module_algebra(self) -> ModuleAlgebra:
        """B with b ◁ ω = (ω⊗ι)α(b) for the dual basis ω of Â."""
        hh = self.dual()
        db = self.alg.dim
        cols = self.alpha.columns()

        def action(i, j):
            return {idx - j * db: v for idx, v in cols[i].items() if j * db <= idx < (j + 1) * db}
        module = RightModule.from_function(hh, db, action, "coaction")
        return ModuleAlgebra(self.alg, module, self.alg.name)

    def verify(self) -> Report:
        rep = Report("coaction")
        a, b = self.hopf, self.alg
        da, db = a.dim, b.dim
        f = a.field
        one = f.one
        # (Δ⊗ι)α and (ι⊗α)α as maps B → A⊗A⊗B
        d_id = kron(a.comult_matrix, Mat.identity(db, f))
        id_a = kron(Mat.identity(da, f), self.alpha)
        rep.add("coassociativity", [] if d_id @ self.alpha == id_a @ self.alpha else [("alpha",)])
        counit = Mat.from_rows([a.counit], f, ncols=da)
        rep.add("counit", [] if kron(counit, Mat.identity(db, f)) @ self.alpha
                == Mat.identity(db, f) else [("alpha",)])
        w = Witnesses()
        for i, j in itertools.product(range(db), repeat=2):
            lhs = self.alpha.apply_sparse(b.table[i][j])
            x = self.alpha.apply_sparse({i: one})
            y = self.alpha.apply_sparse({j: one})
            rhs: dict = {}
            for p, u in x.items():
                ap, bp = divmod(p, db)
                for q, v in y.items():
                    aq, bq = divmod(q, db)
                    for r, s in a.alg.table[ap][aq].items():
                        for t, z in b.table[bp][bq].items():
                            vec_add(rhs, {r * db + t: u * v * s * z})
            if lhs != rhs and w((i, j)):
                break
        rep.add("multiplicative", w)
        rep.add("unital", [] if self.alpha.apply_sparse(b.unit)
                == {u * db + k: x * y for u, x in a.alg.unit.items() for k, y in b.unit.items()}
                else [("unit",)])
        rep.extend(self.module_algebra().verify(), "induced-action")
        return rep


def trivial_coaction(alg: Algebra, hopf: Hopf) -> FiniteCoaction:
    """α(b) = 1⊗b."""
    db = alg.dim
    cols = [{u * db + i: c for u, c in hopf.alg.unit.items()} for i in range(db)]
    return FiniteCoaction(hopf, alg, Mat.from_sparse_columns(cols, hopf.dim * db, alg.field))


# --------------------------------------------------------------------------
# Fredholm modules
# --------------------------------------------------------------------------

def _star(m: Mat) -> Mat:
    f = m.field
    if f.is_rational:
        return m.T
    return Mat.from_dict({(j, i): f.conj(v) for i, r in m.rows.items() for j, v in r.items()},
                         m.ncols, m.nrows, f)


@dataclass
class FredholmModule:
    """(π, H, F, γ, π_U) over the module algebra ``b``; ``pi[i]`` = π(b_i), ``pi_u[j]`` = π_U(ω_j)."""
    b: ModuleAlgebra
    gamma: Mat
    pi: list
    F: Mat
    pi_u: list
    name: str = ""
    coaction: FiniteCoaction | None = None

    @property
    def hopf(self) -> Hopf:
        return self.b.hopf

    @property
    def field(self):
        return self.b.field

    @property
    def dim(self) -> int:
        return self.gamma.nrows

    def pi_of(self, v: dict) -> Mat:
        acc = Mat.zeros(self.dim, self.dim, self.field)
        for i, c in v.items():
            acc = acc + self.pi[i].scale(c)
        return acc

    def pi_u_of(self, w: dict) -> Mat:
        acc = Mat.zeros(self.dim, self.dim, self.field)
        for j, c in w.items():
            acc = acc + self.pi_u[j].scale(c)
        return acc

    def commutators(self) -> list:
        return [self.F @ p - p @ self.F for p in self.pi]


def verify_fredholm(fm: FredholmModule) -> Report:
    rep = Report("fredholm-module")
    f = fm.field
    n = fm.dim
    ident = Mat.identity(n, f)
    g, F = fm.gamma, fm.F
    diag_ok = all(set(r) <= {i} and r.get(i) in (f.one, -f.one) for i, r in g.rows.items()) \
        and len(g.rows) == n
    rep.add("gamma diagonal with entries ±1", [] if diag_ok else [("gamma",)])
    rep.add("F^2 = 1", [] if F @ F == ident else [("F",)])
    rep.add("F = F*", [] if F == _star(F) else [("F",)])
    rep.add("gamma F = -F gamma", [] if g @ F == -(F @ g) else [("F",)])
    w = Witnesses()
    for i, p in enumerate(fm.pi):
        if g @ p != p @ g:
            w(("even", i))
    for i, j in itertools.product(range(fm.b.dim), repeat=2):
        if fm.pi_of(fm.b.alg.table[i][j]) != fm.pi[i] @ fm.pi[j] and w(("mult", i, j)):
            break
    rep.add("pi is an even representation", w)
    h = fm.hopf
    w = Witnesses()
    for i, j in itertools.product(range(h.dim), repeat=2):
        if fm.pi_u_of(h.alg.table[i][j]) != fm.pi_u[i] @ fm.pi_u[j] and w(("mult", i, j)):
            break
    if fm.pi_u_of(h.alg.unit) != ident:
        w(("unit",))
    rep.add("pi_U is a representation", w)
    w = Witnesses()
    for j, u in enumerate(fm.pi_u):
        if u @ F != F @ u:
            w(("F", j))
        if u @ g != g @ u:
            w(("gamma", j))
    rep.add("pi_U commutes with F and gamma", w)
    w = Witnesses()
    one = f.one
    for j, i in itertools.product(range(h.dim), range(fm.b.dim)):
        lhs = Mat.zeros(n, n, f)
        for (w0, w1), c in h.comult[j].items():
            lhs = lhs + (fm.pi_u[w0] @ fm.pi_of(fm.b.apply({i: one}, {w1: one}))).scale(c)
        if lhs != fm.pi[i] @ fm.pi_u[j] and w((j, i)):
            break
    rep.add("pi_U(w0) pi(b<w1) = pi(b) pi_U(w)", w)
    return rep


# --------------------------------------------------------------------------
# the cocycle φ_F and the index
# --------------------------------------------------------------------------

def _commutator_chain(fm: FredholmModule, n: int) -> dict:
    """{(i_0, …, i_{2n}): γ F [F, π(b_{i_0})] … [F, π(b_{i_2n})]} skipping zero products."""
    comms = fm.commutators()
    start = fm.gamma @ fm.F
    level = {(): start}
    for _ in range(2 * n + 1):
        nxt = {}
        for key, m in level.items():
            for i, c in enumerate(comms):
                prod = m @ c
                if not prod.is_zero():
                    nxt[key + (i,)] = prod
        level = nxt
    return level


def _tensor_index(key, db) -> int:
    idx = 0
    for i in key:
        idx = idx * db + i
    return idx


def phi_f_ambient(fm: FredholmModule, n: int) -> dict:
    """Ambient values of φ_F on ω_j ⊗ b_{i_0} ⊗ … ⊗ b_{i_2n}."""
    f = fm.field
    coef = (f.one if n % 2 == 0 else -f.one) / f(2)
    db = fm.b.dim
    stride = db ** (2 * n + 1)
    out = {}
    for key, m in _commutator_chain(fm, n).items():
        base = _tensor_index(key, db)
        for j, u in enumerate(fm.pi_u):
            v = (u @ m).trace()
            if v:
                out[j * stride + base] = coef * v
    return out


def phi_f(fm: FredholmModule, n: int, obj: EquivariantObject | None = None):
    """φ_F as a compressed cochain of degree 2n; invariance and the cocycle identities are checked."""
    if obj is None:
        obj = build_equivariant(fm.b, 2 * n + 1)
    level = 2 * n
    coords = obj.compress(level, phi_f_ambient(fm, n))
    if obj.b(level + 1).apply_sparse(coords):
        raise NotACocycle("b phi_F != 0 in degree %d" % level)
    if obj.t(level).apply_sparse(coords) != coords:
        raise NotACocycle("t phi_F != phi_F in degree %d" % level)
    return obj, coords


@dataclass
class IndexCharacter:
    plus: list
    minus: list
    field: object

    @property
    def values(self) -> list:
        return [a - b for a, b in zip(self.plus, self.minus)]

    def __call__(self, w: dict):
        acc = self.field.zero
        for j, c in w.items():
            acc = acc + c * (self.plus[j] - self.minus[j])
        return acc

    def to_json(self) -> dict:
        j = self.field.to_json
        return {"index": [j(v) for v in self.values], "plus": [j(v) for v in self.plus],
                "minus": [j(v) for v in self.minus]}


def _span(m: Mat) -> Mat:
    prows, _ = m.T.rref()
    return Mat.from_sparse_columns([dict(r) for r in prows], m.nrows, m.field)


def _trace_on(sub: Mat, op: Mat):
    """Trace of op restricted to the invariant column span ``sub`` (a basis)."""
    if sub.ncols == 0:
        return op.field.zero
    return solve_many(sub, op @ sub).trace()


def _kernel(m: Mat) -> Mat:
    k, _ = m.nullspace()
    return k


def index_spaces(fm: FredholmModule, p: dict):
    """(basis of p₊H, basis of ker(p₋Fp₊) in p₊H, basis of p₋H, basis of im(p₋Fp₊))."""
    f = fm.field
    n = fm.dim
    ident = Mat.identity(n, f)
    half = f.one / f(2)
    pp = fm.pi_of(p)
    p_plus = (ident + fm.gamma).scale(half) @ pp
    p_minus = (ident - fm.gamma).scale(half) @ pp
    dom = _span(p_plus)
    op = p_minus @ fm.F @ dom
    ker_coords = _kernel(op)
    ker = dom @ ker_coords
    tgt = _span(p_minus)
    img = _span(op) if op.ncols else Mat.zeros(n, 0, f)
    return dom, ker, tgt, img


def ind_f(fm: FredholmModule, p: dict) -> IndexCharacter:
    """Characters of Â on ker(p₋Fp₊) and on the cokernel p₋H / im(p₋Fp₊)."""
    _, ker, tgt, img = index_spaces(fm, p)
    plus = [_trace_on(ker, u) for u in fm.pi_u]
    minus = [_trace_on(tgt, u) - _trace_on(img, u) for u in fm.pi_u]
    return IndexCharacter(plus, minus, fm.field)


def cokernel_by_complement(fm: FredholmModule, p: dict) -> list:
    """Characters on the orthogonal complement of the image inside p₋H."""
    _, _, tgt, img = index_spaces(fm, p)
    if img.ncols == 0:
        comp = tgt
    else:
        # v = tgt·c with img^* tgt c = 0
        c = _kernel(_star(img) @ tgt)
        comp = tgt @ c
    return [_trace_on(comp, u) for u in fm.pi_u]


def index_theorem_check(fm: FredholmModule, p: dict, n: int) -> Report:
    rep = Report("index-theorem")
    ind = ind_f(fm, p)
    obj, phi = phi_f(fm, n)
    idem = check_idempotent(trivial_module(fm.hopf, 1),
                            BMatrix(fm.b, 1, 1, {(0, 0): dict(p)}))
    pairing = pair_even(obj, 2 * n, phi, idem)
    ok = pairing.values == ind.values
    rep.add("Ind_F(p) = <[phi_F],[p]> at degree %d" % (2 * n), [] if ok else [("values",)],
            {"index": [fm.field.to_json(v) for v in ind.values],
             "pairing": pairing.to_json()})
    return rep


# --------------------------------------------------------------------------
# modular element, quantum index, twisted cocycle
# --------------------------------------------------------------------------

def modular_element(hhat: Hopf, seed: int = 0) -> dict:
    """The first group-like (unit first) implementing Ŝ² as ω ↦ ρ⁻¹ωρ."""
    for g in group_likes(hhat, seed=seed).elements:
        if hhat.squared_antipode_is_inner(g):
            return g
    raise NoModularGroupLike("no group-like of %s implements the squared antipode" % hhat.name)


def q_ind(fm: FredholmModule, p: dict, rho: dict):
    return ind_f(fm, p)(rho)


def twisted_phi_f(fm: FredholmModule, rho: dict, n: int, obj: TwistedObject | None = None):
    """φ̃_F(b₀⊗…⊗b₂ₙ) = ((−1)ⁿ/2) Tr(γF[F,π(b₀)]…[F,π(b₂ₙ)]π_U(ρ)) as a twisted cocycle."""
    if obj is None:
        obj = build_twisted(fm.b.alg, twist_of(fm.b, rho), 2 * n + 1)
    f = fm.field
    coef = (f.one if n % 2 == 0 else -f.one) / f(2)
    u = fm.pi_u_of(rho)
    amb = {}
    for key, m in _commutator_chain(fm, n).items():
        v = (m @ u).trace()
        if v:
            amb[_tensor_index(key, fm.b.dim)] = coef * v
    level = 2 * n
    coords = obj.compress(level, amb)
    if obj.b(level + 1).apply_sparse(coords):
        raise NotACocycle("b of the twisted cocycle is nonzero in degree %d" % level)
    if obj.t(level).apply_sparse(coords) != coords:
        raise NotACocycle("the twisted cocycle is not cyclic in degree %d" % level)
    return obj, coords


def q_ind_check(fm: FredholmModule, p: dict, rho: dict, n: int) -> Report:
    rep = Report("quantum-index")
    lhs = q_ind(fm, p, rho)
    obj, phi = twisted_phi_f(fm, rho, n)
    idem = check_idempotent(trivial_module(fm.hopf, 1), BMatrix(fm.b, 1, 1, {(0, 0): dict(p)}))
    rhs = pair_twisted(obj, 2 * n, phi, idem, rho, fm.hopf)
    rep.add("q-Ind_F(p) = <phi~_F, p>_rho at degree %d" % (2 * n), [] if lhs == rhs else [("values",)],
            {"q_ind": fm.field.to_json(lhs), "pairing": fm.field.to_json(rhs)})
    return rep


# --------------------------------------------------------------------------
# twisting by a corepresentation
# --------------------------------------------------------------------------

def v_module(hhat: Hopf, pi_v: list) -> RightModule:
    """H_V as a right Â-module: ξ ◁ ω = π_V(Ŝ(ω)) ξ."""
    one = hhat.field.one
    mats = []
    for j in range(hhat.dim):
        acc = Mat.zeros(pi_v[0].nrows, pi_v[0].nrows, hhat.field)
        for k, c in hhat.S({j: one}).items():
            acc = acc + pi_v[k].scale(c)
        mats.append(acc)
    return RightModule.from_pi(hhat, mats, "H_V")


@dataclass
class VTwist:
    module: FredholmModule
    x: RightModule
    action_matches: bool


def v_twist(fm: FredholmModule, pi_v: list) -> VTwist:
    """(ι⊗π, H_V⊗H, 1⊗F, 1⊗γ, Ũ) over End(H_V)⊗B with π_Ũ(ω) = π_V(ω₁) ⊗ π_U(ω₀)."""
    h = fm.hopf
    f = fm.field
    one = f.one
    dv = pi_v[0].nrows
    w = Witnesses()
    for i, j in itertools.product(range(h.dim), repeat=2):
        acc = Mat.zeros(dv, dv, f)
        for k, c in h.alg.table[i][j].items():
            acc = acc + pi_v[k].scale(c)
        if acc != pi_v[i] @ pi_v[j]:
            w((i, j))
    unit = Mat.zeros(dv, dv, f)
    for k, c in h.alg.unit.items():
        unit = unit + pi_v[k].scale(c)
    if w.items or unit != Mat.identity(dv, f):
        raise VNotCorepresentation("π_V is not a unital representation of the dual")
    x = v_module(h, pi_v)
    big_b = endx_tensor_b(x, fm.b)
    # direct formula (ω⊗ι)α̃_V(T⊗b) = π_V Ŝ(ω₀) T π_V(ω₂) ⊗ b◁ω₁ against the module action
    db = fm.b.dim
    matches = True
    for j in range(h.dim):
        for idx in range(big_b.dim):
            ac, k = divmod(idx, db)
            a, c = divmod(ac, dv)
            direct: dict = {}
            for (w0, w1, w2), coef in h.delta_n_basis(j, 2).items():
                left = x.pi_basis[w0]
                right = pi_v[w2]
                bimg = fm.b.apply({k: one}, {w1: one})
                for r in range(dv):
                    lv = left[r, a]
                    if not lv:
                        continue
                    for s in range(dv):
                        rv = right[c, s]
                        if not rv:
                            continue
                        for q, bv in bimg.items():
                            vec_add(direct, {(r * dv + s) * db + q: coef * lv * rv * bv})
            if direct != big_b.module.act[idx][j]:
                matches = False
    ident_v = Mat.identity(dv, f)
    pi_new = []
    for idx in range(big_b.dim):
        ac, k = divmod(idx, db)
        a, c = divmod(ac, dv)
        pi_new.append(kron(Mat.from_dict({(a, c): one}, dv, dv, f), fm.pi[k]))
    pi_u_new = []
    for j in range(h.dim):
        acc = Mat.zeros(dv * fm.dim, dv * fm.dim, f)
        for (w0, w1), c in h.comult[j].items():
            acc = acc + kron(pi_v[w1], fm.pi_u[w0]).scale(c)
        pi_u_new.append(acc)
    module = FredholmModule(big_b, kron(ident_v, fm.gamma), pi_new, kron(ident_v, fm.F),
                            pi_u_new, "%s twisted by V" % fm.name)
    return VTwist(module, x, matches)


def psi_compatibility(fm: FredholmModule, pi_v: list, n: int = 0) -> Report:
    """The cocycle of the V-twisted module equals Ψ applied to φ_F."""
    tw = v_twist(fm, pi_v)
    rep = Report("v-twist")
    rep.add("alpha_V action = End(X)⊗B action", [] if tw.action_matches else [("action",)])
    rep.extend(verify_fredholm(tw.module), "twisted")
    base, phi = phi_f(fm, n)
    big, phi_big = phi_f(tw.module, n)
    mp = MoritaPair(base, tw.x, big)
    psi_phi = mp.psi(2 * n).apply_sparse(phi)
    rep.add("phi_F of the twisted module = Psi phi_F", [] if psi_phi == phi_big else [("cochain",)])
    return rep


# --------------------------------------------------------------------------
# worked examples
# --------------------------------------------------------------------------

def _block_diag(a: Mat, b: Mat) -> Mat:
    return Mat.block([[a, None], [None, b]], [a.nrows, b.nrows], [a.ncols, b.ncols], a.field)


def _graded(field, n_minus: int, n_plus: int) -> Mat:
    return _block_diag(Mat.identity(n_minus, field).scale(-field.one), Mat.identity(n_plus, field))


def _swap(field, n: int) -> Mat:
    ident = Mat.identity(n, field)
    return Mat.block([[None, ident], [ident, None]], [n, n], [n, n], field)


def worked_index_module(field=None) -> FredholmModule:
    """A = C acting trivially on C(Z/2); H₊ = H₋ = C², π₊(δ₀) = diag(1,0), π₋(δ₀) = 0, F the swap."""
    from .groups import PermGroup, function_algebra
    from .linalg import QQ
    field = field or QQ
    b_alg = function_algebra(PermGroup.cyclic(2), field).alg
    coaction = trivial_coaction(b_alg, Hopf.trivial(field))
    b = coaction.module_algebra()
    one = field.one
    d = lambda *xs: Mat.from_dict({(i, i): one for i, x in enumerate(xs) if x}, len(xs), len(xs), field)
    pi0 = _block_diag(d(0, 0), d(1, 0))
    pi1 = _block_diag(d(1, 1), d(0, 1))
    fm = FredholmModule(b, _graded(field, 2, 2), [pi0, pi1], _swap(field, 2),
                        [Mat.identity(4, field)], "worked-index", coaction)
    return fm


def z2_coaction(field=None) -> FiniteCoaction:
    """C(Z/2) coacting on itself by α(δ_x) = Σ_g δ_g ⊗ δ_{g⁻¹x}."""
    from .groups import PermGroup, function_algebra
    from .linalg import QQ
    field = field or QQ
    g = PermGroup.cyclic(2)
    a = function_algebra(g, field)
    n = g.order
    cols = [{gi * n + g.mul(g.inv(gi), x): field.one for gi in range(n)} for x in range(n)]
    return FiniteCoaction(a, a.alg, Mat.from_sparse_columns(cols, n * n, field))


def worked_index_z2_module(field=None) -> FredholmModule:
    """The Z/2-equivariant upgrade: π₋ = 0, π₊ the regular diagonal representation, U the swap on both halves."""
    from .linalg import QQ
    field = field or QQ
    coaction = z2_coaction(field)
    b = coaction.module_algebra()
    one = field.one
    zero2 = Mat.zeros(2, 2, field)
    pis = [_block_diag(zero2, Mat.from_dict({(i, i): one}, 2, 2, field)) for i in range(2)]
    swap = _swap(field, 1)
    hh = b.hopf
    # π_U(ω_j) for the dual basis: ω_0 evaluates at e, ω_1 at the generator
    unit_j = next(iter(hh.alg.unit))
    pi_u = [Mat.identity(4, field) if j == unit_j else _block_diag(swap, swap) for j in range(2)]
    return FredholmModule(b, _graded(field, 2, 2), pis, _swap(field, 2), pi_u,
                          "worked-index-z2", coaction)
