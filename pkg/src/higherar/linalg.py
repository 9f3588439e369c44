"""Exact linear algebra over the rationals.

Scalars are ``gmpy2.mpq``.  Dense matrices are :class:`ExactMatrix`; the
heavier work (ranks, kernels, spans) is done on sparse rows stored as
``dict[int, mpq]`` through :class:`Echelon`.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def qq(x):
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to mpq."""
    if isinstance(x, str):
        return mpq(x.strip())
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def qstr(x):
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class ExactMatrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [[ZERO] * ncols for _ in range(nrows)]
        self.rows = rows

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [[qq(v) for v in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), ncols, rows)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = ONE
        return m

    @property
    def entries(self):
        return [v for r in self.rows for v in r]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def copy(self):
        return ExactMatrix(self.nrows, self.ncols, [list(r) for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(map(tuple, self.rows))))

    def __repr__(self):
        body = "; ".join(" ".join(qstr(v) for v in r) for r in self.rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: [{body}])"

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        orows = other.rows
        n = other.ncols
        for r in self.rows:
            acc = [ZERO] * n
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(n):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return ExactMatrix(self.nrows, n, out)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return ExactMatrix(self.nrows, self.ncols,
                           [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return ExactMatrix(self.nrows, self.ncols,
                           [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = qq(c)
        return ExactMatrix(self.nrows, self.ncols, [[c * a for a in r] for r in self.rows])

    @property
    def T(self):
        return ExactMatrix(self.ncols, self.nrows,
                           [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.shape))), ZERO)

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    @classmethod
    def from_columns(cls, cols, nrows):
        m = cls(nrows, len(cols))
        for j, c in enumerate(cols):
            for i in range(nrows):
                m.rows[i][j] = c[i]
        return m

    def rank(self):
        return rref(self)[1]

    def submatrix(self, rows, cols):
        return ExactMatrix(len(rows), len(cols), [[self.rows[i][j] for j in cols] for i in rows])

    def to_json(self):
        return [[qstr(v) for v in r] for r in self.rows]


def hstack(blocks, nrows):
    ncols = sum(b.ncols for b in blocks)
    rows = [[] for _ in range(nrows)]
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for i in range(nrows):
            rows[i].extend(b.rows[i])
    return ExactMatrix(nrows, ncols, rows)


def vstack(blocks, ncols):
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(list(r) for r in b.rows)
    return ExactMatrix(len(rows), ncols, rows)


def block_matrix(blocks, row_sizes, col_sizes):
    """Assemble from a grid of blocks; ``None`` entries are zero."""
    m = ExactMatrix(sum(row_sizes), sum(col_sizes))
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is not None:
                if b.shape != (rs, cs):
                    raise ValueError("block shape mismatch")
                for i in range(rs):
                    m.rows[r0 + i][c0:c0 + cs] = b.rows[i]
            c0 += cs
        r0 += rs
    return m


# ---------------------------------------------------------------- sparse rows

def to_sparse(vec):
    return {i: v for i, v in enumerate(vec) if v}


def to_dense(vec, n):
    out = [ZERO] * n
    for i, v in vec.items():
        out[i] = v
    return out


def axpy(target, c, source):
    """target += c * source, in place, dropping zeros."""
    for k, v in source.items():
        nv = target.get(k, ZERO) + c * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class Echelon:
    """Incrementally maintained echelon basis of sparse row vectors.

    With ``track=True`` each stored row remembers which combination of the
    inserted vectors produced it, so membership queries also return
    coordinates.
    """

    def __init__(self, ncols, track=False):
        self.ncols = ncols
        self.track = track
        self.piv = {}
        self.combo = {}
        self.count = 0

    def __len__(self):
        return len(self.piv)

    @property
    def rank(self):
        return len(self.piv)

    def _reduce(self, row, combo=None):
        piv = self.piv
        heap = list(row)
        heapq.heapify(heap)
        last = -1
        while heap:
            c = heapq.heappop(heap)
            if c <= last:
                continue
            last = c
            f = row.get(c)
            if f is None or c not in piv:
                continue
            prow = piv[c]
            for k, v in prow.items():
                nv = row.get(k, ZERO) - f * v
                if nv:
                    if k not in row:
                        heapq.heappush(heap, k)
                    row[k] = nv
                else:
                    row.pop(k, None)
            if combo is not None:
                axpy(combo, -f, self.combo[c])
        return row

    def reduce(self, vec):
        return self._reduce(dict(vec))

    def contains(self, vec):
        return not self._reduce(dict(vec))

    def add(self, vec):
        """Insert a vector; return True when it enlarged the span."""
        combo = {self.count: ONE} if self.track else None
        self.count += 1
        row = self._reduce(dict(vec), combo)
        if not row:
            return False
        c = min(row)
        inv = 1 / row[c]
        if inv != 1:
            row = {k: v * inv for k, v in row.items()}
            if combo is not None:
                combo = {k: v * inv for k, v in combo.items()}
        self.piv[c] = row
        if combo is not None:
            self.combo[c] = combo
        return True

    def coordinates(self, vec):
        """Coefficients over the inserted vectors, or None if outside the span."""
        if not self.track:
            raise ValueError("coordinates need a tracking echelon")
        combo = {}
        row = self._reduce(dict(vec), combo)
        if row:
            return None
        return {k: -v for k, v in combo.items() if v}

    def rref_rows(self):
        """Fully reduced rows sorted by pivot column."""
        final = {}
        for c in sorted(self.piv, reverse=True):
            row = dict(self.piv[c])
            for k in [k for k in row if k != c and k in final]:
                f = row.get(k)
                if f:
                    axpy(row, -f, final[k])
            final[c] = row
        return [final[c] for c in sorted(final)]

    def pivots(self):
        return sorted(self.piv)


def span_echelon(vectors, ncols, track=False):
    e = Echelon(ncols, track)
    for v in vectors:
        e.add(v)
    return e


def sparse_rank(rows, ncols):
    return span_echelon(rows, ncols).rank


def nullspace(rows, ncols):
    """Basis (sparse dicts) of {x : r·x = 0 for every row r}."""
    e = span_echelon(rows, ncols)
    red = e.rref_rows()
    pivots = [min(r) for r in red]
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: ONE}
        for p, r in zip(pivots, red):
            a = r.get(f)
            if a:
                v[p] = -a
        out.append(v)
    return out


# ---------------------------------------------------------------- public API

class Subspace:
    """A subspace of Q^n stored by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        e = Echelon(ambient_dim)
        for v in vectors:
            if not isinstance(v, dict):
                if len(v) != ambient_dim:
                    raise ValueError("vector length does not match ambient dimension")
                v = to_sparse([qq(x) for x in v])
            e.add(v)
        self.basis = tuple(tuple(to_dense(r, ambient_dim)) for r in e.rref_rows())

    @property
    def dim(self):
        return len(self.basis)

    def sparse_basis(self):
        return [to_sparse(r) for r in self.basis]

    def contains(self, vec):
        e = span_echelon(self.sparse_basis(), self.ambient_dim)
        return e.contains(to_sparse([qq(x) for x in vec]))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def rref(m):
    e = span_echelon([to_sparse(r) for r in m.rows], m.ncols)
    red = e.rref_rows()
    rows = [to_dense(r, m.ncols) for r in red]
    rows += [[ZERO] * m.ncols for _ in range(m.nrows - len(rows))]
    return ExactMatrix(m.nrows, m.ncols, rows), len(red)


def kernel_basis(m):
    return Subspace(m.ncols, nullspace([to_sparse(r) for r in m.rows], m.ncols))


def solve(m, b):
    """One solution of m·x = b, or None when inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    n = m.ncols
    aug = [to_sparse(list(r) + [qq(v)]) for r, v in zip(m.rows, b)]
    red = span_echelon(aug, n + 1).rref_rows()
    x = [ZERO] * n
    for r in red:
        p = min(r)
        if p == n:
            return None
        x[p] = r.get(n, ZERO)
    return x


def subspace_sum(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace(a.ambient_dim, a.sparse_basis() + b.sparse_basis())


def subspace_intersection(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    n = a.ambient_dim
    # x = sum s_i a_i = sum t_j b_j ; solve for (s, t) then map back
    ab, bb = a.sparse_basis(), b.sparse_basis()
    k = len(ab)
    rows = []
    for c in range(n):
        row = {}
        for i, v in enumerate(ab):
            if c in v:
                row[i] = v[c]
        for j, v in enumerate(bb):
            if c in v:
                row[k + j] = -v[c]
        if row:
            rows.append(row)
    vecs = []
    for sol in nullspace(rows, k + len(bb)):
        x = {}
        for i, s in sol.items():
            if i < k:
                axpy(x, s, ab[i])
        vecs.append(x)
    return Subspace(n, vecs)
