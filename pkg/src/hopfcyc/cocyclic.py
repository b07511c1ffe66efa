"""Cocyclic objects in vector spaces and their cohomology theories.

A cocyclic object supplies, per degree n, a dimension and matrices

* ``t(n)``    : C^n → C^n
* ``d(n, i)`` : C^{n-1} → C^n   (0 ≤ i ≤ n, n ≥ 1)
* ``s(n, i)`` : C^{n+1} → C^n   (0 ≤ i ≤ n)

Everything else (b, b', λ, N, B, total complex, cohomology, periodicity)
is derived here and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DegreeOutOfRange, NotStabilized, TruncationUnsafe
from .linalg import QQ, Field, Inconsistent, Mat, solve, to_dense
from .report import Report, Witnesses


@dataclass
class CohomologyResult:
    theory: str
    degree: int
    dim: int
    representatives: list = dc_field(default_factory=list)
    stabilized: bool | None = None

    def to_json(self, field: Field) -> dict:
        out = {"theory": self.theory, "degree": self.degree, "dim": self.dim,
               "representatives": [{str(k): field.to_json(v) for k, v in sorted(r.items())}
                                   for r in self.representatives]}
        if self.stabilized is not None:
            out["stabilized"] = self.stabilized
        return out


class Cohomology:
    """Cohomology at the middle of  V_prev --d_in--> V --d_out--> V_next."""

    def __init__(self, d_in: Mat | None, d_out: Mat, field: Field):
        self.field = field
        self.dim_space = d_out.ncols
        k, _free = d_out.nullspace()
        self.kernel = k
        if d_in is None or d_in.ncols == 0:
            self.image_rank = 0
            self.boundary = Mat.zeros(self.dim_space, 0, field)
        else:
            self.boundary = d_in
            self.image_rank = d_in.rank()
        self.dim = k.ncols - self.image_rank
        self.reps = self._choose_reps()

    def _choose_reps(self) -> list:
        """Kernel vectors independent modulo the image, in pivot order."""
        nb = self.boundary.ncols
        cols = _independent_columns(Mat.hstack([self.boundary, self.kernel]))
        reps = [self.kernel.column(c - nb) for c in cols if c >= nb]
        assert len(reps) == self.dim
        return reps

    def rep_matrix(self) -> Mat:
        return Mat.from_sparse_columns(self.reps, self.dim_space, self.field)

    def coords(self, z: dict) -> list:
        """Class coordinates of a cocycle z in the representative basis."""
        m = Mat.hstack([self.rep_matrix(), self.boundary])
        x = solve(m, to_dense(z, self.dim_space, self.field))
        return x[:self.dim]

    def is_coboundary(self, z: dict) -> bool:
        if not z:
            return True
        try:
            solve(self.boundary, to_dense(z, self.dim_space, self.field))
        except Inconsistent:
            return False
        return True


def _independent_columns(m: Mat) -> list:
    """Indices of the pivot columns (leftmost maximal independent set)."""
    _prows, pivots = m.rref()
    return list(pivots)


class CocyclicObject:
    """Base class; subclasses implement ``dim``, ``_t``, ``_d`` and ``_s``."""

    field: Field = QQ
    n_max: int = 0
    name: str = ""

    # to be provided ---------------------------------------------------------
    def dim(self, n: int) -> int:
        raise NotImplementedError

    def _t(self, n: int) -> Mat:
        raise NotImplementedError

    def _d(self, n: int, i: int) -> Mat:
        raise NotImplementedError

    def _s(self, n: int, i: int) -> Mat:
        raise NotImplementedError

    # cached structure maps ----------------------------------------------------
    def _cache(self) -> dict:
        c = self.__dict__.get("_mcache")
        if c is None:
            c = self.__dict__["_mcache"] = {}
        return c

    def _memo(self, key, fn):
        c = self._cache()
        v = c.get(key)
        if v is None:
            v = c[key] = fn()
        return v

    def _check_level(self, n: int) -> None:
        if n < 0 or n > self.n_max:
            raise DegreeOutOfRange("level %d outside 0..%d" % (n, self.n_max))

    def t(self, n: int) -> Mat:
        self._check_level(n)
        return self._memo(("t", n), lambda: self._t(n))

    def d(self, n: int, i: int) -> Mat:
        self._check_level(n)
        if not (n >= 1 and 0 <= i <= n):
            raise ValueError("coface d(%d, %d) undefined" % (n, i))
        return self._memo(("d", n, i), lambda: self._d(n, i))

    def s(self, n: int, i: int) -> Mat:
        self._check_level(n + 1)
        if not 0 <= i <= n:
            raise ValueError("codegeneracy s(%d, %d) undefined" % (n, i))
        return self._memo(("s", n, i), lambda: self._s(n, i))

    def ident(self, n: int) -> Mat:
        return Mat.identity(self.dim(n), self.field)

    # derived operators -----------------------------------------------------------
    def b(self, n: int) -> Mat:
        """b_n : C^{n-1} → C^n (the zero map out of C^{-1} = 0 when n = 0)."""
        if n == 0:
            return Mat.zeros(self.dim(0), 0, self.field)

        def build():
            acc = Mat.zeros(self.dim(n), self.dim(n - 1), self.field)
            for i in range(n + 1):
                m = self.d(n, i)
                acc = acc + m if i % 2 == 0 else acc - m
            return acc
        return self._memo(("b", n), build)

    def bprime(self, n: int) -> Mat:
        if n == 0:
            return Mat.zeros(self.dim(0), 0, self.field)

        def build():
            acc = Mat.zeros(self.dim(n), self.dim(n - 1), self.field)
            for i in range(n):
                m = self.d(n, i)
                acc = acc + m if i % 2 == 0 else acc - m
            return acc
        return self._memo(("b'", n), build)

    def lam(self, n: int) -> Mat:
        return self._memo(("lam", n), lambda: self.t(n) if n % 2 == 0 else -self.t(n))

    def one_minus_lam(self, n: int) -> Mat:
        return self._memo(("1-lam", n), lambda: self.ident(n) - self.lam(n))

    def N(self, n: int) -> Mat:
        def build():
            acc = self.ident(n)
            p = self.ident(n)
            lam = self.lam(n)
            for _ in range(n):
                p = lam @ p
                acc = acc + p
            return acc
        return self._memo(("N", n), build)

    def B(self, n: int) -> Mat:
        """B_n = N_n s(n, n) t_{n+1} (1 − λ_{n+1}) : C^{n+1} → C^n."""
        return self._memo(("B", n), lambda: self.N(n) @ self.s(n, n) @ self.t(n + 1)
                          @ self.one_minus_lam(n + 1))

    # verification -------------------------------------------------------------------
    def verify(self, n_max: int | None = None) -> Report:
        """Check every cocyclic identity for levels ≤ n_max (default: the object's)."""
        top = self.n_max if n_max is None else n_max
        rep = Report("cocyclic")
        d, s, t = self.d, self.s, self.t
        fam = {k: Witnesses() for k in ("dd", "ss", "sd-low", "sd-id", "sd-high",
                                        "td", "ts", "t-order")}
        for n in range(2, top + 1):
            for j in range(n + 1):
                for i in range(j):
                    if d(n, j) @ d(n - 1, i) != d(n, i) @ d(n - 1, j - 1):
                        fam["dd"]((n, i, j))
        for n in range(0, top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if s(n, j) @ s(n + 1, i) != s(n, i) @ s(n + 1, j + 1):
                        fam["ss"]((n, i, j))
        for n in range(0, top):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = s(n, j) @ d(n + 1, i)
                    if i < j:
                        rhs = d(n, i) @ s(n - 1, j - 1)
                        key = "sd-low"
                    elif i in (j, j + 1):
                        rhs = self.ident(n)
                        key = "sd-id"
                    else:
                        rhs = d(n, i - 1) @ s(n - 1, j)
                        key = "sd-high"
                    if lhs != rhs:
                        fam[key]((n, i, j))
        for n in range(1, top + 1):
            for i in range(n + 1):
                rhs = d(n, n) if i == 0 else d(n, i - 1) @ t(n - 1)
                if t(n) @ d(n, i) != rhs:
                    fam["td"]((n, i))
        for n in range(0, top):
            for i in range(n + 1):
                rhs = s(n, n) @ t(n + 1) @ t(n + 1) if i == 0 else s(n, i - 1) @ t(n + 1)
                if t(n) @ s(n, i) != rhs:
                    fam["ts"]((n, i))
        for n in range(0, top + 1):
            if t(n) ** (n + 1) != self.ident(n):
                fam["t-order"]((n,))
        names = {"dd": "d_j d_i = d_i d_{j-1} (i<j)",
                 "ss": "s_j s_i = s_i s_{j+1} (i<=j)",
                 "sd-low": "s_j d_i = d_i s_{j-1} (i<j)",
                 "sd-id": "s_j d_i = id (i=j, j+1)",
                 "sd-high": "s_j d_i = d_{i-1} s_j (i>j+1)",
                 "td": "t d_i = d_{i-1} t, t d_0 = d_n",
                 "ts": "t s_i = s_{i-1} t, t s_0 = s_n t^2",
                 "t-order": "t_n^{n+1} = id"}
        for key, w in fam.items():
            rep.add(names[key], w)
        return rep

    def verify_derived(self, n_max: int | None = None) -> Report:
        """b² = 0, b'² = 0, the λ/N intertwining laws, B² = 0 and bB + Bb = 0."""
        top = self.n_max if n_max is None else n_max
        rep = Report("derived")
        w = {k: Witnesses() for k in ("bb", "b'b'", "lam", "N", "BB", "bB")}
        for n in range(2, top + 1):
            if not (self.b(n) @ self.b(n - 1)).is_zero():
                w["bb"]((n,))
            if not (self.bprime(n) @ self.bprime(n - 1)).is_zero():
                w["b'b'"]((n,))
        for n in range(1, top + 1):
            if self.one_minus_lam(n) @ self.b(n) != self.bprime(n) @ self.one_minus_lam(n - 1):
                w["lam"]((n,))
            if self.N(n) @ self.bprime(n) != self.b(n) @ self.N(n - 1):
                w["N"]((n,))
        for n in range(0, top - 1):
            if not (self.B(n) @ self.B(n + 1)).is_zero():
                w["BB"]((n,))
        for n in range(1, top):
            # C^n → C^n via both routes: b_n B_{n-1} + B_n b_{n+1}
            lhs = self.b(n) @ self.B(n - 1) + self.B(n) @ self.b(n + 1)
            if not lhs.is_zero():
                w["bB"]((n,))
        rep.add("b^2 = 0", w["bb"])
        rep.add("b'^2 = 0", w["b'b'"])
        rep.add("(1-lam) b = b' (1-lam)", w["lam"])
        rep.add("N b' = b N", w["N"])
        rep.add("B^2 = 0", w["BB"])
        rep.add("bB + Bb = 0", w["bB"])
        return rep

    # Hochschild -----------------------------------------------------------------
    def _hh(self, n: int) -> Cohomology:
        if n < 0 or n + 1 > self.n_max:
            raise DegreeOutOfRange("HH^%d needs level %d but the object stops at %d"
                                   % (n, n + 1, self.n_max))
        return self._memo(("HH", n), lambda: Cohomology(self.b(n) if n else None,
                                                        self.b(n + 1), self.field))

    def hochschild(self, n: int) -> CohomologyResult:
        c = self._hh(n)
        return CohomologyResult("hochschild", n, c.dim, c.reps)

    # total complex ---------------------------------------------------------------
    def tot_dims(self, n: int) -> list:
        """Dimensions of the blocks C^{n-p}, p = 0..n, of Tot^n."""
        return [self.dim(n - p) for p in range(n + 1)]

    def D(self, n: int) -> Mat:
        """Total differential Tot^n → Tot^{n+1}."""
        def build():
            src = self.tot_dims(n)
            tgt = self.tot_dims(n + 1)
            blocks = [[None] * (n + 1) for _ in range(n + 2)]
            for p in range(n + 1):
                q = n - p
                blocks[p][p] = self.b(q + 1) if p % 2 == 0 else -self.bprime(q + 1)
                blocks[p + 1][p] = self.one_minus_lam(q) if p % 2 == 0 else self.N(q)
            return Mat.block(blocks, tgt, src, self.field)
        return self._memo(("D", n), build)

    def _hc(self, n: int) -> Cohomology:
        if n < 0:
            raise DegreeOutOfRange("negative degree")
        return self._memo(("HC", n), lambda: Cohomology(self.D(n - 1) if n else None,
                                                        self.D(n), self.field))

    def _guard(self, n: int) -> None:
        if n > self.n_max - 2:
            raise TruncationUnsafe("HC^%d is trusted only up to degree N_max-2 = %d"
                                   % (n, self.n_max - 2))

    def cyclic(self, n: int) -> CohomologyResult:
        self._guard(n)
        c = self._hc(n)
        return CohomologyResult("cyclic", n, c.dim, c.reps)

    def verify_total(self, n_max: int | None = None) -> Report:
        top = self.n_max if n_max is None else n_max
        rep = Report("total-complex")
        w = Witnesses()
        for n in range(0, top - 1):
            if not (self.D(n + 1) @ self.D(n)).is_zero():
                w((n,))
        rep.add("D^2 = 0", w)
        return rep

    # λ-complex ---------------------------------------------------------------------
    def _lam_space(self, n: int):
        """(K, free): columns of K span ker(1 − λ_n); K has identity rows at ``free``."""
        return self._memo(("Klam", n), lambda: self.one_minus_lam(n).nullspace())

    def b_lam(self, n: int) -> Mat:
        """b_n restricted to the λ-invariant subcomplex, in kernel coordinates."""
        def build():
            k_src, _ = self._lam_space(n - 1)
            k_tgt, free_tgt = self._lam_space(n)
            img = self.b(n) @ k_src
            m = img.select_rows(free_tgt)
            assert k_tgt @ m == img, "b does not preserve ker(1 - lambda)"
            return m
        return self._memo(("blam", n), build)

    def _hl(self, n: int) -> Cohomology:
        if n < 0 or n + 1 > self.n_max:
            raise DegreeOutOfRange("H_lambda^%d needs level %d" % (n, n + 1))
        return self._memo(("Hlam", n), lambda: Cohomology(self.b_lam(n) if n else None,
                                                          self.b_lam(n + 1), self.field))

    def lambda_cohomology(self, n: int) -> CohomologyResult:
        c = self._hl(n)
        k, _ = self._lam_space(n)
        reps = [k.apply_sparse(r) for r in c.reps]
        return CohomologyResult("lambda", n, c.dim, reps)

    # periodicity -----------------------------------------------------------------------
    def S_chain(self, n: int) -> Mat:
        """Column shift by two, Tot^n → Tot^{n+2}."""
        src = self.tot_dims(n)
        tgt = self.tot_dims(n + 2)
        blocks = [[None] * (n + 1) for _ in range(n + 3)]
        for p in range(n + 1):
            blocks[p + 2][p] = self.ident(n - p)
        return Mat.block(blocks, tgt, src, self.field)

    def periodicity_pair(self, n: int) -> Mat:
        """Matrix of S : HC^n → HC^{n+2} on the representative bases."""
        if n + 3 > self.n_max:
            raise DegreeOutOfRange("the S map out of HC^%d needs N_max >= %d" % (n, n + 3))
        src = self._hc(n)
        tgt = self._hc(n + 2)
        s = self.S_chain(n)
        cols = [tgt.coords(s.apply_sparse(r)) for r in src.reps]
        return Mat.from_columns(cols, self.field, nrows=tgt.dim) if cols else \
            Mat.zeros(tgt.dim, 0, self.field)

    def periodic(self, parity: int) -> CohomologyResult:
        """HP^parity as the stable value of HC^{parity+2k} under S.

        Stabilization requires two consecutive S maps that are isomorphisms.
        """
        isos = []
        n = parity
        while n + 3 <= self.n_max:
            m = self.periodicity_pair(n)
            isos.append((n, m.nrows == m.ncols and m.rank() == m.nrows))
            n += 2
        for (a, ok1), (_b, ok2) in zip(isos, isos[1:]):
            if ok1 and ok2:
                c = self._hc(a + 2)
                return CohomologyResult("periodic-even" if parity == 0 else "periodic-odd",
                                        parity, c.dim, c.reps, True)
        raise NotStabilized("no two consecutive isomorphisms among S maps from degrees %s"
                            % [k for k, _ in isos])

    # IBS --------------------------------------------------------------------------------------
    def ibs_check(self, n: int) -> Report:
        """Exactness of H_λ^n → HH^n → H_λ^{n-1} at HH^n, by rank bookkeeping."""
        rep = Report("ibs")
        hh = self._hh(n)
        hl = self._hl(n)
        k, _ = self._lam_space(n)
        i_cols = [hh.coords(k.apply_sparse(r)) for r in hl.reps]
        rank_i = Mat.from_columns(i_cols, self.field, nrows=hh.dim).rank() if i_cols else 0
        if n >= 1:
            hlm = self._hl(n - 1)
            k1, free1 = self._lam_space(n - 1)
            bmap = self.B(n - 1)
            b_cols = []
            for z in hh.reps:
                img = bmap.apply_sparse(z)
                coords_k = {j: img[f] for j, f in enumerate(free1) if f in img}
                b_cols.append(hlm.coords(coords_k))
            rank_b = Mat.from_columns(b_cols, self.field, nrows=hlm.dim).rank() if b_cols else 0
        else:
            rank_b = 0
        detail = "rank I = %d, rank B = %d, dim HH = %d" % (rank_i, rank_b, hh.dim)
        rep.add("rank I + rank B = dim HH^%d" % n,
                [] if rank_i + rank_b == hh.dim else [(n, rank_i, rank_b, hh.dim)], detail)
        return rep


class ExplicitCocyclic(CocyclicObject):
    """A cocyclic object given by explicit matrices."""

    def __init__(self, dims: list, t: dict, d: dict, s: dict, field: Field = QQ, name: str = ""):
        self.dims = list(dims)
        self.n_max = len(dims) - 1
        self.tm, self.dm, self.sm = t, d, s
        self.field = field
        self.name = name

    def dim(self, n):
        return self.dims[n]

    def _t(self, n):
        return self.tm[n]

    def _d(self, n, i):
        return self.dm[(n, i)]

    def _s(self, n, i):
        return self.sm[(n, i)]


def point_object(n_max: int, field: Field = QQ) -> ExplicitCocyclic:
    """The cocyclic object of the ground field: every level one-dimensional, all maps 1."""
    one = Mat.identity(1, field)
    dims = [1] * (n_max + 1)
    t = {n: one for n in range(n_max + 1)}
    d = {(n, i): one for n in range(1, n_max + 1) for i in range(n + 1)}
    s = {(n, i): one for n in range(n_max) for i in range(n + 1)}
    return ExplicitCocyclic(dims, t, d, s, field, "point")


def zero_object(n_max: int, field: Field = QQ) -> ExplicitCocyclic:
    z = Mat.zeros(0, 0, field)
    dims = [0] * (n_max + 1)
    t = {n: z for n in range(n_max + 1)}
    d = {(n, i): z for n in range(1, n_max + 1) for i in range(n + 1)}
    s = {(n, i): z for n in range(n_max) for i in range(n + 1)}
    return ExplicitCocyclic(dims, t, d, s, field, "zero")


def materialize(obj: CocyclicObject, n_max: int | None = None) -> ExplicitCocyclic:
    """Copy every structure map up to n_max into an explicit object."""
    top = obj.n_max if n_max is None else n_max
    t = {n: obj.t(n) for n in range(top + 1)}
    d = {(n, i): obj.d(n, i) for n in range(1, top + 1) for i in range(n + 1)}
    s = {(n, i): obj.s(n, i) for n in range(top) for i in range(n + 1)}
    return ExplicitCocyclic([obj.dim(n) for n in range(top + 1)], t, d, s, obj.field, obj.name)


def check_morphism(f: dict, src: CocyclicObject, tgt: CocyclicObject, top: int) -> Report:
    """Whether maps f[n] : src^n → tgt^n commute with t, d and s up to level ``top``."""
    rep = Report("morphism")
    w = Witnesses()
    for n in range(top + 1):
        if f[n] @ src.t(n) != tgt.t(n) @ f[n]:
            w(("t", n))
        if n >= 1:
            for i in range(n + 1):
                if f[n] @ src.d(n, i) != tgt.d(n, i) @ f[n - 1]:
                    w(("d", n, i))
        if n + 1 <= top:
            for i in range(n + 1):
                if f[n] @ src.s(n, i) != tgt.s(n, i) @ f[n + 1]:
                    w(("s", n, i))
    rep.add("commutes with t, d, s", w)
    return rep
