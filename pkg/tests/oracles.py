"""Independent dense oracle for equivariant cochain spaces and their cohomology.

Nothing here imports the package.  The examples are written out by hand from
their defining relations and every computation is a dense sympy rank or kernel
over QQ.  Run ``python tests/oracles.py`` to regenerate the frozen values in
``tests/goldens.json``.
"""

from __future__ import annotations

import itertools
import json
import os
import sys
from dataclasses import dataclass

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix


@dataclass
class Data:
    """Structure constants: H (dh), B (db) and the right action of H on B."""
    dh: int
    h_mul: dict       # (i, j) -> {k: c}
    h_comult: list    # i -> {(j, k): c}
    h_counit: list
    h_sinv: list      # i -> {k: c}, S^{-1}(e_i)
    db: int
    b_mul: dict
    b_unit: dict
    act: dict         # (i, j) -> {k: c}, b_i ◁ ω_j


def _q(c):
    return QQ.from_sympy(Rational(c))


def _invert(cols: list, n: int) -> list:
    m = DomainMatrix([[_q(cols[j].get(i, 0)) for j in range(n)] for i in range(n)], (n, n), QQ)
    inv = m.inv().to_Matrix()
    return [{i: Rational(inv[i, j]) for i in range(n) if inv[i, j] != 0} for j in range(n)]


# --------------------------------------------------------------------------
# hand-written examples
# --------------------------------------------------------------------------

def point() -> Data:
    one = {0: 1}
    return Data(1, {(0, 0): one}, [{(0, 0): 1}], [1], [one], 1, {(0, 0): one}, one,
                {(0, 0): one})


def swap_on_two_points() -> Data:
    """C[Z/2] = span{1, g} acting on functions on two points by exchanging them."""
    h_mul = {(i, j): {i ^ j: 1} for i in range(2) for j in range(2)}
    h_comult = [{(0, 0): 1}, {(1, 1): 1}]
    b_mul = {(i, j): ({i: 1} if i == j else {}) for i in range(2) for j in range(2)}
    act = {(i, j): {i ^ j: 1} for i in range(2) for j in range(2)}
    return Data(2, h_mul, h_comult, [1, 1], [{0: 1}, {1: 1}], 2, b_mul, {0: 1, 1: 1}, act)


def _h4():
    """g^a x^b with g² = 1, x² = 0, xg = −gx; basis order 1, g, x, gx."""
    basis = [(0, 0), (1, 0), (0, 1), (1, 1)]
    idx = {ab: i for i, ab in enumerate(basis)}
    mul = {}
    for i, (a, b) in enumerate(basis):
        for j, (c, d) in enumerate(basis):
            if b + d > 1:
                mul[(i, j)] = {}
            else:
                # x^b g^c = (−1)^{bc} g^c x^b
                mul[(i, j)] = {idx[((a + c) % 2, b + d)]: (-1) ** (b * c)}
    comult = [{(0, 0): 1}, {(1, 1): 1}, {(2, 0): 1, (1, 2): 1}, {(3, 1): 1, (0, 3): 1}]
    counit = [1, 1, 0, 0]
    s = [{0: 1}, {1: 1}, {3: -1}, {2: 1}]
    return mul, comult, counit, s


def _prod(mul: dict, *vs: dict) -> dict:
    out = vs[0]
    for v in vs[1:]:
        acc: dict = {}
        for i, a in out.items():
            for j, b in v.items():
                for k, c in mul[(i, j)].items():
                    acc[k] = acc.get(k, 0) + a * b * c
        out = {k: c for k, c in acc.items() if c != 0}
    return out


def sweedler_adjoint() -> Data:
    """Sweedler's four-dimensional algebra on itself by b ◁ ω = S(ω₀) b ω₁."""
    mul, comult, counit, s = _h4()
    act = {}
    for i in range(4):
        for j in range(4):
            acc: dict = {}
            for (a, b), c in comult[j].items():
                for k, v in _prod(mul, s[a], {i: 1}, {b: 1}).items():
                    acc[k] = acc.get(k, 0) + c * v
            act[(i, j)] = {k: v for k, v in acc.items() if v != 0}
    return Data(4, mul, comult, counit, _invert(s, 4), 4, mul, {0: 1}, act)


EXAMPLES = {"F1": point, "F2": swap_on_two_points, "F3": sweedler_adjoint}


# --------------------------------------------------------------------------
# ambient operators on functionals
# --------------------------------------------------------------------------

def _iterated(d: Data, j: int, legs: int) -> list:
    """Δ^{legs−1}(e_j) as a list of (index tuple, coefficient)."""
    terms = [((j,), Rational(1))]
    for _ in range(legs - 1):
        nxt = []
        for idx, c in terms:
            for (a, b), v in d.h_comult[idx[0]].items():
                nxt.append(((a, b) + idx[1:], c * v))
        terms = nxt
    return terms


def _encode(w: int, bs, db: int) -> int:
    x = w
    for b in bs:
        x = x * db + b
    return x


def _tensor_apply(d: Data, n: int, image) -> DomainMatrix:
    """Matrix M^T where column x of M is ``image(w, bs)`` for the basis tensor x."""
    size = d.dh * d.db ** (n + 1)
    rows = [[QQ(0)] * size for _ in range(size)]
    for w in range(d.dh):
        for bs in itertools.product(range(d.db), repeat=n + 1):
            x = _encode(w, bs, d.db)
            for y, c in image(w, bs).items():
                rows[x][y] += _q(c)
    return DomainMatrix(rows, (size, size), QQ)


def _add(acc: dict, k, c):
    acc[k] = acc.get(k, 0) + c


def invariance_ops(d: Data, n: int) -> list:
    """(ω_j ▷ f) − ε(ω_j) f for every basis ω_j, as matrices on functionals."""
    ops = []
    size = d.dh * d.db ** (n + 1)
    for j in range(d.dh):
        def image(w, bs, j=j):
            out: dict = {}
            for legs, c in _iterated(d, j, n + 3):
                eta = _prod(d.h_mul, d.h_sinv[legs[0]], {w: 1}, {legs[1]: 1})
                vecs = [d.act[(b, legs[k + 2])] for k, b in enumerate(bs)]
                for e, ce in eta.items():
                    for combo in itertools.product(*[list(v.items()) for v in vecs]):
                        coeff = c * ce
                        for _, cv in combo:
                            coeff *= cv
                        _add(out, _encode(e, [k for k, _ in combo], d.db), coeff)
            return out
        m = _tensor_apply(d, n, image)
        eps = DomainMatrix.eye(size, QQ) * _q(d.h_counit[j])
        ops.append(m - eps)
    return ops


def t_op(d: Data, n: int) -> DomainMatrix:
    def image(w, bs):
        out: dict = {}
        for (w0, w1), c in d.h_comult[w].items():
            for k, v in d.act[(bs[-1], w1)].items():
                _add(out, _encode(w0, (k,) + tuple(bs[:-1]), d.db), c * v)
        return out
    return _tensor_apply(d, n, image)


def d_op(d: Data, n: int, i: int) -> DomainMatrix:
    """d_i : functionals at level n−1 → level n."""
    if i == n:
        return t_op(d, n) * d_op(d, n, 0)
    src = d.dh * d.db ** n
    tgt = d.dh * d.db ** (n + 1)
    rows = [[QQ(0)] * src for _ in range(tgt)]
    for w in range(d.dh):
        for bs in itertools.product(range(d.db), repeat=n + 1):
            x = _encode(w, bs, d.db)
            for k, c in d.b_mul[(bs[i], bs[i + 1])].items():
                y = _encode(w, tuple(bs[:i]) + (k,) + tuple(bs[i + 2:]), d.db)
                rows[x][y] += _q(c)
    return DomainMatrix(rows, (tgt, src), QQ)


def b_op(d: Data, n: int) -> DomainMatrix:
    acc = d_op(d, n, 0)
    for i in range(1, n + 1):
        acc = acc + d_op(d, n, i) * QQ((-1) ** i)
    return acc


def _kernel(m: DomainMatrix) -> DomainMatrix:
    """Columns spanning the kernel of m."""
    k = m.nullspace().transpose()
    return k


def _vstack(mats: list) -> DomainMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = out.vstack(m)
    return out


def invariant_space(d: Data, n: int, cyclic: bool) -> DomainMatrix:
    ops = invariance_ops(d, n)
    if cyclic:
        size = d.dh * d.db ** (n + 1)
        ops.append(t_op(d, n) * QQ((-1) ** n) - DomainMatrix.eye(size, QQ))
    return _kernel(_vstack(ops))


def _cols(m: DomainMatrix) -> int:
    return m.shape[1]


def _rank(m: DomainMatrix) -> int:
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    return m.rank()


def cohomology_dims(d: Data, top: int, cyclic: bool) -> list:
    """dims of H^n for n < top of (V_n, b) with V_n the invariant (and λ-fixed) functionals."""
    spaces = [invariant_space(d, n, cyclic) for n in range(top + 1)]
    out = []
    for n in range(top):
        v = spaces[n]
        ker = _cols(v) - _rank(b_op(d, n + 1) * v)
        img = _rank(b_op(d, n) * spaces[n - 1]) if n else 0
        out.append(ker - img)
    return out


def cochain_dims(d: Data, top: int) -> list:
    return [_cols(invariant_space(d, n, False)) for n in range(top + 1)]


# --------------------------------------------------------------------------
# index of a graded Fredholm module, written out by hand
# --------------------------------------------------------------------------

def _diag(*xs):
    from sympy import diag
    return diag(*xs)


def worked_index_data():
    """H = H₋ ⊕ H₊ with H± = C², coordinates (minus, minus, plus, plus)."""
    from sympy import Matrix, eye
    gamma = _diag(-1, -1, 1, 1)
    pi = {"d0": _diag(0, 0, 1, 0), "d1": _diag(1, 1, 0, 1)}
    swap = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    return gamma, pi, swap, [eye(4)]


def worked_index_z2_data():
    from sympy import Matrix, eye
    gamma = _diag(-1, -1, 1, 1)
    pi = {"d0": _diag(0, 0, 1, 0), "d1": _diag(0, 0, 0, 1)}
    swap = Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    u = Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    return gamma, pi, swap, [eye(4), u]


def _col_basis(m):
    return _hstack(m.columnspace(), m.rows)


def _hstack(vectors: list, rows: int):
    from sympy import Matrix
    return Matrix.hstack(*vectors) if vectors else Matrix.zeros(rows, 0)


def _restricted_trace(basis, op):
    if basis.cols == 0:
        return Rational(0)
    coords = (basis.T * basis).inv() * basis.T * op * basis
    return coords.trace()


def index_character(gamma, p, F, us) -> list:
    """tr(U|ker p₋Fp₊) − tr(U|(im p₋Fp₊)^⊥ ∩ p₋H) for each U."""
    from sympy import eye
    n = gamma.rows
    pp = (eye(n) + gamma) / 2 * p
    pm = (eye(n) - gamma) / 2 * p
    dom = _col_basis(pp)
    op = pm * F * dom
    ker = dom * _hstack(op.nullspace(), op.cols)
    tgt = _col_basis(pm)
    img = _col_basis(op)
    comp = tgt * _hstack((img.T * tgt).nullspace(), tgt.cols) if img.cols else tgt
    return [_restricted_trace(ker, u) - _restricted_trace(comp, u) for u in us]


def chern_value(gamma, p, F, u, n: int):
    """((−1)ⁿ/2) Tr(γ U F [F, p]^{2n+1})."""
    c = F * p - p * F
    m = gamma * u * F
    for _ in range(2 * n + 1):
        m = m * c
    return Rational((-1) ** n, 2) * m.trace()


def index_goldens() -> dict:
    out = {}
    for name, data in (("worked-index", worked_index_data()),
                       ("worked-index-z2", worked_index_z2_data())):
        gamma, pi, F, us = data
        cases = {"d0": pi["d0"], "d1": pi["d1"], "1": pi["d0"] + pi["d1"]}
        out[name] = {
            key: {"index": [str(v) for v in index_character(gamma, p, F, us)],
                  "chern_n0": [str(chern_value(gamma, p, F, u, 0)) for u in us],
                  "chern_n1": [str(chern_value(gamma, p, F, u, 1)) for u in us]}
            for key, p in cases.items()}
    return out


def compute_goldens() -> dict:
    out = {}
    plan = {"F1": (3, 3), "F2": (4, 3), "F3": (3, 3)}
    for name, (dims_top, coh_top) in plan.items():
        d = EXAMPLES[name]()
        out[name] = {
            "cochain_dims": cochain_dims(d, dims_top),
            "hochschild": cohomology_dims(d, coh_top, False),
            "lambda": cohomology_dims(d, coh_top, True),
        }
    out["index"] = index_goldens()
    return out


GOLDENS_PATH = os.path.join(os.path.dirname(__file__), "goldens.json")


def load_goldens() -> dict:
    with open(GOLDENS_PATH, encoding="utf-8") as fh:
        return json.load(fh)


if __name__ == "__main__":
    if "--index-only" in sys.argv:
        g = load_goldens()
        g["index"] = index_goldens()
    else:
        g = compute_goldens()
    text = json.dumps(g, indent=1, sort_keys=True) + "\n"
    if "--write" in sys.argv:
        with open(GOLDENS_PATH, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
