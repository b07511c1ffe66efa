"""
Exact scalar fields and sparse matrices.

Scalars live in Q (gmpy2.mpq) or in a simple extension Q[x]/(p) given by a
monic polynomial p.  Matrices are stored row-sparse and every elimination is
done with exact arithmetic; nothing in this module touches floating point.

Tensor convention used by the whole package: e_i (x) f_j sits at position
i * dim(f-space) + j (row-major), so ``kron`` below is the only place this
choice is made.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "Field", "QQ", "FieldError", "Inconsistent", "NFElement", "Mat",
    "kernel_basis", "kron", "solve", "rank", "vec_add", "vec_scale", "to_dense",
    "to_sparse",
]


class FieldError(ArithmeticError):
    """Raised when an element of Q[x]/(p) turns out not to be invertible."""


class Inconsistent(ValueError):
    """Raised by ``solve`` when the right-hand side is not in the image."""


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        f = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a.pop()
        _poly_trim(a)
    return _poly_trim(q), a


class Field:
    """Q or Q[x]/(p) for a monic p, coefficients listed low degree first.

    Irreducibility of p is the caller's responsibility; a zero divisor is
    detected only when an inverse is attempted.
    """

    def __init__(self, minpoly: Sequence = (0, 1), name: str | None = None):
        coeffs = [mpq(Fraction(c)) if isinstance(c, str) else mpq(c) for c in minpoly]
        _poly_trim(coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.name = name or ("QQ" if self.degree == 1 else "QQ[x]/(%s)" % self._poly_str())
        if self.degree == 1:
            self.zero = mpq(0)
            self.one = mpq(1)
        else:
            self.zero = NFElement(self, (mpq(0),) * self.degree)
            self.one = NFElement(self, (mpq(1),) + (mpq(0),) * (self.degree - 1))

    def _poly_str(self):
        return " + ".join("%s*x^%d" % (c, i) for i, c in enumerate(self.minpoly) if c)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __eq__(self, other):
        return isinstance(other, Field) and other.minpoly == self.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return "Field(%s)" % self.name

    def __call__(self, value):
        """Convert ints, Fractions, "a/b" strings or coordinate lists."""
        if self.degree == 1:
            if isinstance(value, (list, tuple)):
                if len(value) != 1:
                    raise ValueError("expected 1 coordinate, got %d" % len(value))
                value = value[0]
            if isinstance(value, str):
                return mpq(Fraction(value))
            if isinstance(value, NFElement):
                raise TypeError("cannot coerce %r into QQ" % (value,))
            return mpq(value)
        if isinstance(value, NFElement):
            if value.field != self:
                raise TypeError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != self.degree:
                raise ValueError("expected %d coordinates" % self.degree)
            return NFElement(self, tuple(QQ(v) for v in value))
        return NFElement(self, (QQ(value),) + (mpq(0),) * (self.degree - 1))

    def gen(self):
        """The class of x."""
        if self.degree == 1:
            return -self.minpoly[0]
        coords = [mpq(0)] * self.degree
        coords[1] = mpq(1)
        return NFElement(self, tuple(coords))

    def coords(self, a) -> tuple:
        if self.degree == 1:
            return (a,)
        return a.coords

    def to_json(self, a) -> list:
        return ["%d/%d" % (c.numerator, c.denominator) for c in self.coords(a)]

    def from_json(self, value):
        return self(value)

    def conj(self, a):
        """Involution used for Hermitian forms (trivial on QQ)."""
        if self.degree == 1:
            return a
        if self.minpoly == (mpq(1), mpq(0), mpq(1)):
            c = a.coords
            return NFElement(self, (c[0], -c[1]))
        raise FieldError("no involution known for %s" % self.name)

    def roots(self, poly: Sequence) -> list:
        """Roots in this field of a polynomial with coefficients in it (low first)."""
        import sympy
        x = sympy.Symbol("x")
        if self.degree == 1:
            expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x**i
                       for i, c in enumerate(poly))
            if expr == 0:
                raise ValueError("zero polynomial")
            rts = sympy.Poly(expr, x, domain="QQ").ground_roots()
            return sorted(mpq(int(r.p), int(r.q)) for r in rts)
        K = self._sympy_domain()
        alpha = K.ext
        coeffs = []
        for c in poly:
            cc = self(c).coords
            coeffs.append(K.from_sympy(sum(
                sympy.Rational(int(q.numerator), int(q.denominator)) * alpha**j
                for j, q in enumerate(cc))))
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            raise ValueError("zero polynomial")
        P = sympy.Poly.from_list(list(reversed(coeffs)), x, domain=K)
        out = []
        for fac, _mult in P.factor_list()[1]:
            if fac.degree() != 1:
                continue
            c1, c0 = (K.convert(c) for c in fac.all_coeffs())
            r = (-c0 / c1).to_list()[::-1]
            r += [0] * (self.degree - len(r))
            out.append(self([mpq(int(q.numerator), int(q.denominator)) for q in r]))
        return sorted(out, key=lambda e: e.coords)

    def _sympy_domain(self):
        import sympy
        a = sympy.Symbol("a")
        mp = sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                         for c in reversed(self.minpoly)], a)
        return sympy.QQ.algebraic_field(sympy.CRootOf(mp, 0))


class NFElement:
    """An element of Q[x]/(p), stored by its power-basis coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: Field, coords: tuple):
        self.field = field
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, NFElement):
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        return NFElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, NFElement):
            o = mpq(other)
            return NFElement(self.field, tuple(a * o for a in self.coords))
        d = self.field.degree
        prod = [mpq(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        p = self.field.minpoly
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d):
                    prod[k - d + i] -= c * p[i]
        return NFElement(self.field, tuple(prod[:d]))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise FieldError("zero is not invertible in %s" % self.field.name)
        # extended Euclid on (a, p)
        p = list(self.field.minpoly)
        a = _poly_trim(list(self.coords))
        r0, r1 = p, a
        s0, s1 = [mpq(0)], [mpq(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            sq = [mpq(0)] * (len(q) + len(s1))
            for i, qc in enumerate(q):
                for j, sc in enumerate(s1):
                    sq[i + j] += qc * sc
            snew = [(s0[i] if i < len(s0) else 0) - (sq[i] if i < len(sq) else 0)
                    for i in range(max(len(s0), len(sq)))]
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim(snew) or [mpq(0)]
            if not r1:
                raise FieldError("%r is a zero divisor modulo the minimal polynomial" % (self,))
        c = r1[0]
        inv = [x / c for x in s1]
        _, inv = _poly_divmod(inv, p)
        inv += [mpq(0)] * (self.field.degree - len(inv))
        return NFElement(self.field, tuple(mpq(x) for x in inv))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.coords == other.coords
        try:
            return self.coords == self.field(other).coords
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        return "NF(%s)" % ", ".join(str(c) for c in self.coords)


QQ = Field()


class Mat:
    """Immutable sparse matrix: ``rows`` maps row index -> {col: nonzero}."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: dict | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        return cls(field, nrows, ncols, {})

    @classmethod
    def identity(cls, n, field=QQ):
        one = field.one
        return cls(field, n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], field=QQ, ncols: int | None = None):
        rows = {}
        for i, row in enumerate(data):
            r = {}
            for j, v in enumerate(row):
                v = field(v)
                if v:
                    r[j] = v
            if r:
                rows[i] = r
        if ncols is None:
            ncols = len(data[0]) if len(data) else 0
        return cls(field, len(data), ncols, rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], field=QQ, nrows: int | None = None):
        return cls.from_rows(cols, field, ncols=nrows).T if cols else cls(field, nrows or 0, 0)

    @classmethod
    def from_dict(cls, entries: dict, nrows, ncols, field=QQ):
        rows: dict = {}
        for (i, j), v in entries.items():
            if v:
                rows.setdefault(i, {})[j] = v
        return cls(field, nrows, ncols, rows)

    @classmethod
    def from_sparse_columns(cls, cols: Sequence[dict], nrows, field=QQ):
        """Columns given as {row: value} dicts."""
        rows: dict = {}
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(field, nrows, len(cols), rows)

    # basic protocol ------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, self.field.zero)

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def to_lists(self):
        z = self.field.zero
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def column(self, j) -> dict:
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def columns(self) -> list[dict]:
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in self.rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def dense_column(self, j) -> list:
        z = self.field.zero
        out = [z] * self.nrows
        for i, r in self.rows.items():
            v = r.get(j)
            if v is not None:
                out[i] = v
        return out

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def is_zero(self):
        return not self.rows

    def __repr__(self):
        return "Mat(%dx%d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())

    # algebra -------------------------------------------------------------
    @property
    def T(self):
        rows: dict = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Mat(self.field, self.ncols, self.nrows, rows)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))

    def __add__(self, other):
        self._check_same(other)
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.get(i)
            if tgt is None:
                rows[i] = dict(r)
                continue
            for j, v in r.items():
                w = tgt.get(j)
                if w is None:
                    tgt[j] = v
                else:
                    w = w + v
                    if w:
                        tgt[j] = w
                    else:
                        del tgt[j]
            if not tgt:
                del rows[i]
        return Mat(self.field, self.nrows, self.ncols, rows)

    def __neg__(self):
        return Mat(self.field, self.nrows, self.ncols,
                   {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.field(c) if not isinstance(c, (NFElement, type(mpq(0)))) else c
        if not c:
            return Mat(self.field, self.nrows, self.ncols, {})
        return Mat(self.field, self.nrows, self.ncols,
                   {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError("cannot multiply %s by %s" % (self.shape, other.shape))
            orows = other.rows
            out = {}
            for i, r in self.rows.items():
                acc: dict = {}
                for k, v in r.items():
                    ok = orows.get(k)
                    if ok is None:
                        continue
                    for j, w in ok.items():
                        if j in acc:
                            acc[j] += v * w
                        else:
                            acc[j] = v * w
                acc = {j: x for j, x in acc.items() if x}
                if acc:
                    out[i] = acc
            return Mat(self.field, self.nrows, other.ncols, out)
        # dense vector
        if len(other) != self.ncols:
            raise ValueError("vector length %d, expected %d" % (len(other), self.ncols))
        z = self.field.zero
        out = [z] * self.nrows
        for i, r in self.rows.items():
            s = z
            for k, v in r.items():
                x = other[k]
                if x:
                    s = s + v * x
            out[i] = s
        return out

    def apply_sparse(self, vec: dict) -> dict:
        """Multiply by a sparse column vector {index: value}."""
        out: dict = {}
        # iterate over the columns touched by vec via the transpose-free route
        for i, r in self.rows.items():
            s = None
            for k, v in vec.items():
                w = r.get(k)
                if w is not None:
                    s = v * w if s is None else s + v * w
            if s:
                out[i] = s
        return out

    def __pow__(self, k: int):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        out = Mat.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def select_rows(self, idx: Sequence[int]):
        rows = {}
        for new, old in enumerate(idx):
            r = self.rows.get(old)
            if r:
                rows[new] = r
        return Mat(self.field, len(idx), self.ncols, rows)

    def select_cols(self, idx: Sequence[int]):
        pos = {old: new for new, old in enumerate(idx)}
        rows = {}
        for i, r in self.rows.items():
            nr = {pos[j]: v for j, v in r.items() if j in pos}
            if nr:
                rows[i] = nr
        return Mat(self.field, self.nrows, len(idx), rows)

    def trace(self):
        s = self.field.zero
        for i, r in self.rows.items():
            v = r.get(i)
            if v is not None:
                s = s + v
        return s

    # stacking ------------------------------------------------------------
    @staticmethod
    def vstack(mats: Sequence["Mat"]):
        ncols = mats[0].ncols
        rows = {}
        off = 0
        for m in mats:
            if m.ncols != ncols:
                raise ValueError("vstack column mismatch")
            for i, r in m.rows.items():
                rows[off + i] = r
            off += m.nrows
        return Mat(mats[0].field, off, ncols, rows)

    @staticmethod
    def hstack(mats: Sequence["Mat"]):
        return Mat.vstack([m.T for m in mats]).T

    @staticmethod
    def block(blocks: Sequence[Sequence["Mat | None"]], row_dims, col_dims, field=QQ):
        """Assemble a block matrix; ``None`` blocks are zero."""
        roff = [0]
        for d in row_dims:
            roff.append(roff[-1] + d)
        coff = [0]
        for d in col_dims:
            coff.append(coff[-1] + d)
        rows: dict = {}
        for bi, brow in enumerate(blocks):
            for bj, m in enumerate(brow):
                if m is None:
                    continue
                if m.shape != (row_dims[bi], col_dims[bj]):
                    raise ValueError("block (%d,%d) has shape %s" % (bi, bj, m.shape))
                for i, r in m.rows.items():
                    tgt = rows.setdefault(roff[bi] + i, {})
                    for j, v in r.items():
                        tgt[coff[bj] + j] = v
        return Mat(field, roff[-1], coff[-1], rows)

    # elimination ---------------------------------------------------------
    def rref(self):
        """Reduced row echelon form.

        Returns (pivot_rows, pivots) where pivot_rows[k] is a dict for the row
        whose leading 1 sits in column pivots[k]; pivots are increasing.
        """
        return _rref(self.rows, self.ncols, full=True)

    def rank(self) -> int:
        if not self.rows:
            return 0
        if self.nrows < self.ncols:
            return len(_rref(self.rows, self.ncols, full=False)[1])
        return len(_rref(self.T.rows, self.nrows, full=False)[1])

    def nullspace(self):
        """Kernel as a matrix whose columns form a basis, plus the free columns.

        Basis vector k has a 1 at free column free[k] and 0 at all other free
        columns, so the coordinates of any kernel vector are its entries at
        the free columns.
        """
        prows, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        fpos = {j: k for k, j in enumerate(free)}
        one = self.field.one
        rows: dict = {}
        for k, j in enumerate(free):
            rows[j] = {k: one}
        for row, p in zip(prows, pivots):
            r = {}
            for j, v in row.items():
                if j != p:
                    r[fpos[j]] = -v
            if r:
                rows[p] = r
        K = Mat(self.field, self.ncols, len(free), rows)
        assert len(pivots) + len(free) == self.ncols
        return K, free

    def inverse(self):
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = Mat.hstack([self, Mat.identity(n, self.field)])
        prows, pivots = aug.rref()
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise ZeroDivisionError("matrix is singular")
        rows = {}
        for k in range(n):
            r = {j - n: v for j, v in prows[k].items() if j >= n}
            if r:
                rows[k] = r
        return Mat(self.field, n, n, rows)

    def is_invertible(self):
        return self.nrows == self.ncols and self.rank() == self.nrows


def _rref(rows_in: dict, ncols: int, full: bool):
    """Sparse Gauss-Jordan elimination (row dicts are copied, never mutated)."""
    rows = [dict(r) for r in rows_in.values() if r]
    colrows: dict = {}
    for idx, r in enumerate(rows):
        for j in r:
            colrows.setdefault(j, set()).add(idx)
    used = [False] * len(rows)
    pivots = []
    pivot_idx = []
    for c in sorted(colrows):
        cand = [i for i in colrows.get(c, ()) if not used[i]]
        if not cand:
            continue
        pi = min(cand, key=lambda i: (len(rows[i]), i))
        prow = rows[pi]
        inv = 1 / prow[c] if not isinstance(prow[c], NFElement) else prow[c].inverse()
        if inv != 1:
            for j in prow:
                prow[j] = prow[j] * inv
        used[pi] = True
        pivots.append(c)
        pivot_idx.append(pi)
        targets = colrows[c] if full else [i for i in colrows[c] if not used[i]]
        for i in list(targets):
            if i == pi:
                continue
            r = rows[i]
            f = r[c]
            for j, v in prow.items():
                w = r.get(j)
                if w is None:
                    r[j] = -f * v
                    colrows.setdefault(j, set()).add(i)
                else:
                    w = w - f * v
                    if w:
                        r[j] = w
                    else:
                        del r[j]
                        colrows[j].discard(i)
        if not full:
            # rows above are never revisited; drop the pivot row from indices
            for j in prow:
                if j != c:
                    colrows[j].discard(pi)
        colrows[c] = {pi}
    return [rows[i] for i in pivot_idx], pivots


# functional interface ----------------------------------------------------

def kernel_basis(m: Mat) -> list[list]:
    """Basis of {v : m v = 0} as dense coordinate lists (pivot-order deterministic)."""
    K, _ = m.nullspace()
    r = m.rank()
    assert r + K.ncols == m.ncols, "rank-nullity violated"
    return [K.dense_column(j) for j in range(K.ncols)]


def rank(m: Mat) -> int:
    return m.rank()


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product in the row-major tensor convention."""
    if a.field != b.field:
        raise ValueError("field mismatch")
    br, bc = b.nrows, b.ncols
    rows: dict = {}
    for i, ra in a.rows.items():
        for k, rb in b.rows.items():
            row = {}
            for j, va in ra.items():
                base = j * bc
                for l, vb in rb.items():
                    row[base + l] = va * vb
            rows[i * br + k] = row
    return Mat(a.field, a.nrows * br, a.ncols * bc, rows)


def solve(m: Mat, rhs: Sequence):
    """Some x with m x = rhs; raises ``Inconsistent`` if rhs is not in the image."""
    if len(rhs) != m.nrows:
        raise ValueError("rhs has length %d, expected %d" % (len(rhs), m.nrows))
    f = m.field
    col = {i: f(v) for i, v in enumerate(rhs) if v}
    aug = Mat.hstack([m, Mat.from_sparse_columns([col], m.nrows, f)])
    prows, pivots = aug.rref()
    if pivots and pivots[-1] == m.ncols:
        raise Inconsistent("right-hand side is not in the image")
    x = [f.zero] * m.ncols
    for row, p in zip(prows, pivots):
        v = row.get(m.ncols)
        if v is not None:
            x[p] = v
    return x


def solve_many(m: Mat, rhs: Mat) -> Mat:
    """Solve m X = rhs column by column in one elimination."""
    aug = Mat.hstack([m, rhs])
    prows, pivots = aug.rref()
    n = m.ncols
    rows = {}
    for row, p in zip(prows, pivots):
        if p >= n:
            raise Inconsistent("column %d of the right-hand side is not in the image" % (p - n))
        r = {j - n: v for j, v in row.items() if j >= n}
        if r:
            rows[p] = r
    return Mat(m.field, n, rhs.ncols, rows)


def is_mpq(x) -> bool:
    return type(x) is type(mpq(0))


def fmt(x) -> str:
    """Short human string for a scalar (table output)."""
    if isinstance(x, NFElement):
        return "(" + ", ".join(fmt(c) for c in x.coords) + ")"
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)



# sparse vectors ------------------------------------------------------------
# A sparse vector is a dict {index: nonzero scalar}.

def vec_add(acc: dict, v: dict, c=None) -> dict:
    """In place ``acc += c * v`` (c defaults to 1); returns acc."""
    for k, x in v.items():
        if c is not None:
            x = c * x
        w = acc.get(k)
        if w is None:
            if x:
                acc[k] = x
        else:
            w = w + x
            if w:
                acc[k] = w
            else:
                del acc[k]
    return acc


def vec_scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def to_dense(v: dict, n: int, field: Field = QQ) -> list:
    out = [field.zero] * n
    for k, x in v.items():
        out[k] = x
    return out


def to_sparse(v: Iterable) -> dict:
    return {k: x for k, x in enumerate(v) if x}
