"""Right modules over a :class:`FinDimAlgebra` as quiver representations.

Convention: ``M_i = M·e_i`` and an arrow ``a: i -> j`` acts by a matrix of
shape ``(dim M_j, dim M_i)`` on column vectors, so a path ``a1 a2 ... ak``
acts by ``M(ak) ... M(a2) M(a1)``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache

import sympy

from .linalg import (ONE, ZERO, Echelon, ExactMatrix, nullspace, qq,
                     span_echelon, to_dense, to_sparse)


class RepError(ValueError):
    pass


# ---------------------------------------------------------------- matrices

def matrix_inverse(m):
    n = m.nrows
    if m.ncols != n:
        raise RepError("inverse of a non-square matrix")
    rows = [to_sparse(list(r) + [ONE if i == j else ZERO for j in range(n)])
            for i, r in enumerate(m.rows)]
    red = span_echelon(rows, 2 * n).rref_rows()
    if len(red) < n or any(min(r) >= n for r in red):
        raise RepError("matrix is singular")
    out = ExactMatrix(n, n)
    for r in red:
        p = min(r)
        out.rows[p] = [r.get(n + j, ZERO) for j in range(n)]
    return out


def column_basis(vectors, n):
    """Echelonized basis (as dense column vectors) of the span of vectors in Q^n."""
    e = span_echelon([v if isinstance(v, dict) else to_sparse(v) for v in vectors], n)
    return [to_dense(r, n) for r in e.rref_rows()]


class _Coords:
    """Coordinates with respect to a full-column-rank basis."""

    def __init__(self, basis, n):
        self.k = len(basis)
        self.n = n
        ech = Echelon(n, track=True)
        for b in basis:
            if not ech.add(to_sparse(b)):
                raise RepError("basis vectors are dependent")
        self.ech = ech

    def __call__(self, v):
        c = self.ech.coordinates(to_sparse(v) if not isinstance(v, dict) else v)
        if c is None:
            raise RepError("vector outside the subspace")
        return [c.get(i, ZERO) for i in range(self.k)]

    def matrix(self, cols):
        """Coordinates of several columns, as a (k × len(cols)) matrix."""
        out = ExactMatrix(self.k, len(cols))
        for j, c in enumerate(cols):
            co = self(c)
            for i in range(self.k):
                out.rows[i][j] = co[i]
        return out


# ---------------------------------------------------------------- modules

class Rep:
    __slots__ = ("algebra", "dims", "action", "name")

    def __init__(self, algebra, dims, action, check=True, name=None):
        self.algebra = algebra
        self.dims = tuple(dims)
        self.action = list(action)
        self.name = name
        q = algebra.quiver
        if len(self.dims) != q.n_vertices or len(self.action) != q.n_arrows:
            raise RepError("representation does not fit the quiver")
        for k, m in enumerate(self.action):
            if m.shape != (self.dims[q.tgt[k]], self.dims[q.src[k]]):
                raise RepError(f"action of arrow {q.arrows[k].id} has shape {m.shape}")
        if check:
            self.check_relations()

    @property
    def dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.dim == 0

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"Rep{tag}(dims={list(self.dims)})"

    def path_matrix(self, path):
        s, arr = path
        m = ExactMatrix.identity(self.dims[s])
        for k in arr:
            m = self.action[k] @ m
        return m

    def element_matrix(self, x, src, tgt):
        """Matrix of right multiplication by x ∈ e_src A e_tgt."""
        out = ExactMatrix(self.dims[tgt], self.dims[src])
        A = self.algebra
        for i, c in x.items():
            p = A.basis[i]
            if p[0] != src or A.quiver.path_target(p) != tgt:
                continue
            out = out + self.path_matrix(p).scale(c)
        return out

    def check_relations(self):
        q = self.algebra.quiver
        for terms in self.algebra.relations:
            if not terms:
                continue
            s = terms[0][1][0]
            t = q.path_target(terms[0][1])
            acc = ExactMatrix(self.dims[t], self.dims[s])
            for c, p in terms:
                acc = acc + self.path_matrix(p).scale(c)
            if not acc.is_zero():
                raise RepError("a relation does not act as zero")
        N = self.algebra.N
        for layer in q.paths_by_length(N + 1)[N:]:
            for p in layer:
                if not self.path_matrix(p).is_zero():
                    raise RepError("a path beyond the nilpotency bound acts nonzero")

    def with_algebra(self, algebra, check=True):
        """The same representation regarded over another algebra on the same quiver."""
        return Rep(algebra, self.dims, self.action, check=check, name=self.name)

    def to_json(self):
        q = self.algebra.quiver
        return {"dim_vector": list(self.dims),
                "action": {q.arrows[k].id: m.to_json() for k, m in enumerate(self.action)}}


def rep_from_json(A, doc):
    if isinstance(doc, str):
        doc = json.loads(doc)
    dims = doc["dim_vector"]
    q = A.quiver
    action = []
    for k, a in enumerate(q.arrows):
        rows = doc.get("action", {}).get(a.id)
        shape = (dims[q.tgt[k]], dims[q.src[k]])
        if rows is None:
            action.append(ExactMatrix(*shape))
        else:
            m = ExactMatrix.from_rows(rows, ncols=shape[1]) if rows else ExactMatrix(*shape)
            if m.shape != shape:
                raise RepError(f"arrow {a.id}: expected shape {shape}")
            action.append(m)
    return Rep(A, dims, action)


class RepMap:
    __slots__ = ("source", "target", "comps")

    def __init__(self, source, target, comps, check=False):
        self.source = source
        self.target = target
        self.comps = list(comps)
        if check:
            self.check()

    def check(self):
        M, N = self.source, self.target
        q = M.algebra.quiver
        for v, c in enumerate(self.comps):
            if c.shape != (N.dims[v], M.dims[v]):
                raise RepError("component shape mismatch")
        for k in range(q.n_arrows):
            i, j = q.src[k], q.tgt[k]
            if self.comps[j] @ M.action[k] != N.action[k] @ self.comps[i]:
                raise RepError("map does not intertwine the arrow actions")
        return True

    def __matmul__(self, other):
        """Composition self ∘ other."""
        return RepMap(other.source, self.target,
                      [a @ b for a, b in zip(self.comps, other.comps)])

    def __add__(self, other):
        return RepMap(self.source, self.target, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return RepMap(self.source, self.target, [a - b for a, b in zip(self.comps, other.comps)])

    def scale(self, c):
        return RepMap(self.source, self.target, [a.scale(c) for a in self.comps])

    def is_zero(self):
        return all(c.is_zero() for c in self.comps)

    def rank(self):
        return sum(c.rank() for c in self.comps)

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim

    def is_iso(self):
        return self.source.dims == self.target.dims and self.is_injective()

    def vector(self):
        return to_sparse([x for c in self.comps for r in c.rows for x in r])

    def __repr__(self):
        return f"RepMap({self.source!r} -> {self.target!r}, rank={self.rank()})"


def identity_map(M):
    return RepMap(M, M, [ExactMatrix.identity(d) for d in M.dims])


def zero_map(M, N):
    return RepMap(M, N, [ExactMatrix(N.dims[v], M.dims[v]) for v in range(len(M.dims))])


def linear_combination(maps, coeffs, source=None, target=None):
    if not maps:
        return zero_map(source, target)
    out = None
    for f, c in zip(maps, coeffs):
        if not c:
            continue
        g = f.scale(c)
        out = g if out is None else out + g
    return out if out is not None else zero_map(maps[0].source, maps[0].target)


def map_offsets(M, N):
    offs, o = [], 0
    for v in range(len(M.dims)):
        offs.append(o)
        o += N.dims[v] * M.dims[v]
    return offs, o


def map_from_vector(M, N, vec):
    offs, _ = map_offsets(M, N)
    comps = []
    for v in range(len(M.dims)):
        m = ExactMatrix(N.dims[v], M.dims[v])
        o, w = offs[v], M.dims[v]
        for r in range(N.dims[v]):
            for c in range(w):
                x = vec.get(o + r * w + c)
                if x:
                    m.rows[r][c] = x
        comps.append(m)
    return RepMap(M, N, comps)


# ---------------------------------------------------------------- standard modules

def zero_rep(A):
    q = A.quiver
    return Rep(A, [0] * q.n_vertices, [ExactMatrix(0, 0) for _ in q.arrows], check=False)


@lru_cache(maxsize=None)
def simple(A, i):
    q = A.quiver
    v = q.vindex[i] if i in q.vindex else _vertex_error(i)
    dims = [1 if u == v else 0 for u in range(q.n_vertices)]
    action = [ExactMatrix(dims[q.tgt[k]], dims[q.src[k]]) for k in range(q.n_arrows)]
    return Rep(A, dims, action, check=False, name=f"S{i}")


def _vertex_error(i):
    raise RepError(f"unknown vertex {i!r}")


@lru_cache(maxsize=None)
def projective(A, i):
    """e_i A: basis the normal-form paths starting at i."""
    q = A.quiver
    v = q.vindex[i] if i in q.vindex else _vertex_error(i)
    comp = A.block[v]
    dims = [len(comp[u]) for u in range(q.n_vertices)]
    pos = [{b: r for r, b in enumerate(comp[u])} for u in range(q.n_vertices)]
    action = []
    for k in range(q.n_arrows):
        s, t = q.src[k], q.tgt[k]
        m = ExactMatrix(dims[t], dims[s])
        arrow = A.arrow_element(k)
        for c, b in enumerate(comp[s]):
            for idx, coef in A.mul({b: ONE}, arrow).items():
                m.rows[pos[t][idx]][c] += coef
        action.append(m)
    return Rep(A, dims, action, check=False, name=f"P{i}")


@lru_cache(maxsize=None)
def injective(A, i):
    """D(A e_i): at vertex u the dual of e_u A e_i."""
    q = A.quiver
    v = q.vindex[i] if i in q.vindex else _vertex_error(i)
    comp = [A.block[u][v] for u in range(q.n_vertices)]
    dims = [len(c) for c in comp]
    pos = [{b: r for r, b in enumerate(comp[u])} for u in range(q.n_vertices)]
    action = []
    for k in range(q.n_arrows):
        s, t = q.src[k], q.tgt[k]
        m = ExactMatrix(dims[t], dims[s])
        arrow = A.arrow_element(k)
        for r, x in enumerate(comp[t]):
            for idx, coef in A.mul(arrow, {x: ONE}).items():
                m.rows[r][pos[s][idx]] += coef
        action.append(m)
    return Rep(A, dims, action, check=False, name=f"I{i}")


def simple_at(A, idx):
    return simple(A, A.quiver.vertices[idx])


def projective_at(A, idx):
    return projective(A, A.quiver.vertices[idx])


def injective_at(A, idx):
    return injective(A, A.quiver.vertices[idx])


def map_from_projective(A, v, M, gen):
    """The map P_v -> M (v a vertex index) sending e_v to the vector gen ∈ M_v."""
    P = projective_at(A, v)
    comps = []
    g = ExactMatrix.from_columns([list(gen)], M.dims[v])
    for u in range(A.n_vertices):
        cols = [(M.path_matrix(A.basis[b]) @ g).column(0) for b in A.block[v][u]]
        comps.append(ExactMatrix.from_columns(cols, M.dims[u]))
    return RepMap(P, M, comps)


def regular_module(A):
    return direct_sum([projective(A, v) for v in A.quiver.vertices])[0]


def dual_regular_module(A):
    return direct_sum([injective(A, v) for v in A.quiver.vertices])[0]


def direct_sum(reps, A=None):
    """Return (M, inclusions, projections)."""
    if not reps:
        if A is None:
            raise RepError("empty direct sum needs the algebra")
        return zero_rep(A), [], []
    A = reps[0].algebra
    q = A.quiver
    n = q.n_vertices
    dims = [sum(R.dims[v] for R in reps) for v in range(n)]
    action = []
    for k in range(q.n_arrows):
        s, t = q.src[k], q.tgt[k]
        m = ExactMatrix(dims[t], dims[s])
        r0 = c0 = 0
        for R in reps:
            a = R.action[k]
            for i in range(a.nrows):
                m.rows[r0 + i][c0:c0 + a.ncols] = a.rows[i]
            r0 += R.dims[t]
            c0 += R.dims[s]
        action.append(m)
    M = Rep(A, dims, action, check=False)
    incs, projs = [], []
    offs = [0] * n
    for R in reps:
        ic, pc = [], []
        for v in range(n):
            i = ExactMatrix(dims[v], R.dims[v])
            p = ExactMatrix(R.dims[v], dims[v])
            for r in range(R.dims[v]):
                i.rows[offs[v] + r][r] = ONE
                p.rows[r][offs[v] + r] = ONE
            ic.append(i)
            pc.append(p)
            offs[v] += R.dims[v]
        incs.append(RepMap(R, M, ic))
        projs.append(RepMap(M, R, pc))
    return M, incs, projs


def direct_sum_map(maps_matrix, sources, targets):
    """Map ⊕sources -> ⊕targets from a grid maps_matrix[t][s] (None = 0)."""
    S, _, sproj = direct_sum(sources, targets[0].algebra if targets else None)
    T, tinc, _ = direct_sum(targets, sources[0].algebra if sources else None)
    out = zero_map(S, T)
    for ti, row in enumerate(maps_matrix):
        for si, f in enumerate(row):
            if f is not None:
                out = out + tinc[ti] @ f @ sproj[si]
    return S, T, out


# ---------------------------------------------------------------- Hom

def _hom_equations(M, N):
    q = M.algebra.quiver
    offs, total = map_offsets(M, N)
    rows = []
    for k in range(q.n_arrows):
        i, j = q.src[k], q.tgt[k]
        Ma, Na = M.action[k], N.action[k]
        mi, mj, ni, nj = M.dims[i], M.dims[j], N.dims[i], N.dims[j]
        if nj == 0 or mi == 0:
            continue
        # (f_j M(a) - N(a) f_i)[r, c]
        mcols = [[(kk, Ma.rows[kk][c]) for kk in range(mj) if Ma.rows[kk][c]] for c in range(mi)]
        nrows_ = [[(kk, Na.rows[r][kk]) for kk in range(ni) if Na.rows[r][kk]] for r in range(nj)]
        oj, oi = offs[j], offs[i]
        for r in range(nj):
            for c in range(mi):
                eq = {}
                for kk, val in mcols[c]:
                    idx = oj + r * mj + kk
                    eq[idx] = eq.get(idx, ZERO) + val
                for kk, val in nrows_[r]:
                    idx = oi + kk * mi + c
                    eq[idx] = eq.get(idx, ZERO) - val
                eq = {a: b for a, b in eq.items() if b}
                if eq:
                    rows.append(eq)
    return rows, total


def hom_space(M, N):
    """Basis of Hom_A(M, N)."""
    rows, total = _hom_equations(M, N)
    return [map_from_vector(M, N, v) for v in nullspace(rows, total)]


def hom_dim(M, N):
    rows, total = _hom_equations(M, N)
    return total - span_echelon(rows, total).rank


def span_of_maps(maps):
    """Echelon spanned by the flattened maps (all with the same source/target)."""
    if not maps:
        return Echelon(0)
    M, N = maps[0].source, maps[0].target
    _, total = map_offsets(M, N)
    e = Echelon(total)
    for f in maps:
        e.add(f.vector())
    return e


def hom_coordinates(basis):
    """Function sending a map to its coordinates in the given Hom basis."""
    if not basis:
        return lambda f: []
    M, N = basis[0].source, basis[0].target
    _, total = map_offsets(M, N)
    e = Echelon(total, track=True)
    for f in basis:
        e.add(f.vector())

    def coords(f):
        c = e.coordinates(f.vector())
        if c is None:
            raise RepError("map is not in the span")
        return [c.get(i, ZERO) for i in range(len(basis))]
    return coords


# ---------------------------------------------------------------- sub and quotient

def submodule(M, bases):
    """Submodule spanned vertexwise by column vectors; returns (Rep, inclusion)."""
    A = M.algebra
    q = A.quiver
    n = q.n_vertices
    coords = [_Coords(bases[v], M.dims[v]) for v in range(n)]
    dims = [len(bases[v]) for v in range(n)]
    action = []
    for k in range(q.n_arrows):
        s, t = q.src[k], q.tgt[k]
        if dims[s] == 0 or dims[t] == 0:
            if dims[s] and not (M.action[k] @ ExactMatrix.from_columns(bases[s], M.dims[s])).is_zero():
                raise RepError("subspaces are not a submodule")
            action.append(ExactMatrix(dims[t], dims[s]))
            continue
        imgs = (M.action[k] @ ExactMatrix.from_columns(bases[s], M.dims[s])).columns()
        action.append(coords[t].matrix(imgs))
    S = Rep(A, dims, action, check=False)
    inc = RepMap(S, M, [ExactMatrix.from_columns(bases[v], M.dims[v]) for v in range(n)])
    return S, inc


def _quotient_data(subvecs, n):
    """Projection Q^n -> Q^n/span and a section, via the reduced echelon basis."""
    e = span_echelon([v if isinstance(v, dict) else to_sparse(v) for v in subvecs], n)
    red = e.rref_rows()
    pivots = [min(r) for r in red]
    pset = set(pivots)
    free = [k for k in range(n) if k not in pset]
    fpos = {k: i for i, k in enumerate(free)}
    proj = ExactMatrix(len(free), n)
    for k in free:
        proj.rows[fpos[k]][k] = ONE
    for p, r in zip(pivots, red):
        for k, v in r.items():
            if k != p:
                proj.rows[fpos[k]][p] = -v
    sec = ExactMatrix(n, len(free))
    for k in free:
        sec.rows[k][fpos[k]] = ONE
    return proj, sec


def quotient(M, subbases):
    """M / U for vertexwise subspaces U (given by spanning vectors); returns (Rep, projection)."""
    A = M.algebra
    q = A.quiver
    n = q.n_vertices
    data = [_quotient_data(subbases[v], M.dims[v]) for v in range(n)]
    dims = [d[0].nrows for d in data]
    action = [data[q.tgt[k]][0] @ M.action[k] @ data[q.src[k]][1] for k in range(q.n_arrows)]
    Qm = Rep(A, dims, action, check=False)
    return Qm, RepMap(M, Qm, [d[0] for d in data])


def cokernel_with_section(f):
    """Cokernel (Q, q) of f with per-vertex right inverses of q."""
    N = f.target
    n = len(N.dims)
    data = [_quotient_data(f.comps[u].columns(), N.dims[u]) for u in range(n)]
    q_ = N.algebra.quiver
    dims = [d[0].nrows for d in data]
    action = [data[q_.tgt[k]][0] @ N.action[k] @ data[q_.src[k]][1] for k in range(q_.n_arrows)]
    Q = Rep(N.algebra, dims, action, check=False)
    return Q, RepMap(N, Q, [d[0] for d in data]), [d[1] for d in data]


def kernel(f):
    M = f.source
    bases = [[to_dense(v, M.dims[u]) for v in nullspace([to_sparse(r) for r in f.comps[u].rows], M.dims[u])]
             for u in range(len(M.dims))]
    return submodule(M, bases)


def image(f):
    N = f.target
    bases = [column_basis(f.comps[u].columns(), N.dims[u]) for u in range(len(N.dims))]
    return submodule(N, bases)


def cokernel(f):
    N = f.target
    return quotient(N, [f.comps[u].columns() for u in range(len(N.dims))])


def radical(M):
    q = M.algebra.quiver
    bases = []
    for v in range(q.n_vertices):
        cols = []
        for k in q.in_arrows[v]:
            cols.extend(M.action[k].columns())
        bases.append(column_basis(cols, M.dims[v]))
    return submodule(M, bases)


def top(M):
    R, inc = radical(M)
    return quotient(M, [c.columns() for c in inc.comps])


def socle(M):
    q = M.algebra.quiver
    bases = []
    for v in range(q.n_vertices):
        rows = []
        for k in q.out_arrows[v]:
            rows.extend(to_sparse(r) for r in M.action[k].rows)
        bases.append([to_dense(x, M.dims[v]) for x in nullspace(rows, M.dims[v])])
    return submodule(M, bases)


# ---------------------------------------------------------------- duality

def dualize(M):
    op = M.algebra.opposite()
    return Rep(op, M.dims, [m.T for m in M.action], check=False)


def dualize_map(f):
    return RepMap(dualize(f.target), dualize(f.source), [c.T for c in f.comps])


# ---------------------------------------------------------------- endomorphism rings

def _trace_product(f, g):
    t = ZERO
    for a, b in zip(f.comps, g.comps):
        for i in range(a.nrows):
            ar = a.rows[i]
            for k in range(a.ncols):
                x = ar[k]
                if x:
                    y = b.rows[k][i]
                    if y:
                        t += x * y
    return t


def radical_of_maps(basis):
    """Coefficient vectors spanning the Jacobson radical of the algebra spanned by basis.

    In characteristic 0 the radical of a finite-dimensional algebra of
    endomorphisms is the kernel of the trace form (x, y) ↦ tr(xy).
    """
    n = len(basis)
    rows = []
    for k in range(n):
        row = {}
        for l in range(n):
            t = _trace_product(basis[k], basis[l])
            if t:
                row[l] = t
        if row:
            rows.append(row)
    return nullspace(rows, n)


def endomorphism_radical(M, E=None):
    E = hom_space(M, M) if E is None else E
    return E, [linear_combination(E, [c.get(i, ZERO) for i in range(len(E))]) for c in radical_of_maps(E)]


def _minimal_polynomial(f):
    """Minimal polynomial of an endomorphism as a list of mpq coefficients (low to high)."""
    dims = [c.nrows for c in f.comps]
    total = sum(d * d for d in dims)
    e = Echelon(total, track=True)
    power = [ExactMatrix.identity(d) for d in dims]
    deg = 0
    while True:
        vec = to_sparse([x for c in power for r in c.rows for x in r])
        if not e.add(vec):
            co = e.coordinates(vec)
            poly = [-co.get(i, ZERO) for i in range(deg)] + [ONE]
            return poly
        deg += 1
        power = [a @ b for a, b in zip(f.comps, power)]


def _eval_poly(coeffs, f):
    """coeffs high-to-low (sympy order), evaluated at the endomorphism f."""
    out = []
    for c in f.comps:
        d = c.nrows
        acc = ExactMatrix(d, d)
        for a in coeffs:
            acc = acc @ c
            if a:
                for i in range(d):
                    acc.rows[i][i] += a
        out.append(acc)
    return RepMap(f.source, f.source, out)


def _to_sympy_poly(coeffs):
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * t ** i
               for i, c in enumerate(coeffs))
    return sympy.Poly(expr, t, domain="QQ")


def _fitting_split(M, f):
    """Split M along the primary decomposition of the minimal polynomial of f."""
    poly = _to_sympy_poly(_minimal_polynomial(f))
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    pieces = []
    for g, e in factors:
        coeffs = [qq(str(c)) for c in (g ** e).all_coeffs()]
        h = _eval_poly(coeffs, f)
        K, inc = kernel(h)
        pieces.append((K, inc))
    return pieces


def _random_element(E, rng):
    coeffs = [rng.randint(-3, 3) for _ in E]
    if not any(coeffs):
        coeffs[0] = 1
    return linear_combination(E, coeffs)


def _commutant_basis(mats, d):
    """Basis of d×d matrices commuting with all given matrices."""
    rows = []
    for m in mats:
        for r in range(d):
            for c in range(d):
                eq = {}
                # (X m - m X)[r, c]
                for k in range(d):
                    a = m.rows[k][c]
                    if a:
                        idx = r * d + k
                        eq[idx] = eq.get(idx, ZERO) + a
                    b = m.rows[r][k]
                    if b:
                        idx = k * d + c
                        eq[idx] = eq.get(idx, ZERO) - b
                eq = {a: b for a, b in eq.items() if b}
                if eq:
                    rows.append(eq)
    out = []
    for v in nullspace(rows, d * d):
        x = ExactMatrix(d, d)
        for idx, val in v.items():
            x.rows[idx // d][idx % d] = val
        out.append(x)
    return out


def _casimir_idempotent(M, E, rad, rng):
    """A non-trivial idempotent of End(M) built from a rank-one element of the semisimple quotient.

    The semisimple quotient acts faithfully on V = M / rad(E)M.  Averaging an
    elementary matrix over a trace-dual basis of the commutant of that action
    lands in the image of the quotient and has rank one in its matrix block.
    """
    n = len(M.dims)
    data = []
    for v in range(n):
        cols = []
        for r in rad:
            cols.extend(r.comps[v].columns())
        data.append(_quotient_data(cols, M.dims[v]))
    qdims = [d[0].nrows for d in data]
    order = sorted((d, v) for v, d in enumerate(qdims) if d > 0)
    for d, v in order:
        proj, sec = data[v]
        rho = [proj @ f.comps[v] @ sec for f in E]
        C = _commutant_basis(rho, d)
        gram = ExactMatrix(len(C), len(C))
        for i, a in enumerate(C):
            for j, b in enumerate(C):
                gram.rows[i][j] = (a @ b).trace()
        ginv = matrix_inverse(gram)
        dual = []
        for i in range(len(C)):
            acc = ExactMatrix(d, d)
            for j, b in enumerate(C):
                if ginv.rows[i][j]:
                    acc = acc + b.scale(ginv.rows[i][j])
            dual.append(acc)
        rho_coords = Echelon(d * d, track=True)
        for r in rho:
            rho_coords.add(to_sparse(r.entries))
        for p in range(d):
            for qq_ in range(d):
                pi = ExactMatrix(d, d)
                pi.rows[p][qq_] = ONE
                R = ExactMatrix(d, d)
                for a, b in zip(C, dual):
                    R = R + a @ pi @ b
                if R.is_zero():
                    continue
                cands = [R] + [R @ r for r in rho]
                for cand in cands:
                    sq = cand @ cand
                    t = _proportionality(sq, cand)
                    if not t:
                        continue
                    co = rho_coords.coordinates(to_sparse(cand.entries))
                    if co is None:
                        continue
                    b = linear_combination(E, [co.get(i, ZERO) for i in range(len(E))]).scale(1 / t)
                    e = _lift_idempotent(b, data)
                    if e is not None:
                        return e
    return None


def _proportionality(a, b):
    """t with a = t·b (b nonzero), else None."""
    t = None
    for ra, rb in zip(a.rows, b.rows):
        for x, y in zip(ra, rb):
            if y:
                if t is None:
                    t = x / y
                if x != t * y:
                    return None
            elif x:
                return None
    return t


def _lift_idempotent(b, data, max_iter=64):
    """Lift b (idempotent modulo the radical) to a genuine idempotent by e <- 3e^2 - 2e^3."""
    # check idempotence modulo the radical on every vertex quotient
    diff = (b @ b) - b
    for v, (proj, sec) in enumerate(data):
        if proj.nrows and not (proj @ diff.comps[v] @ sec).is_zero():
            return None
    e = b
    for _ in range(max_iter):
        e2 = e @ e
        if all(x == y for x, y in zip(e2.comps, e.comps)):
            return e
        e = e2.scale(3) - (e2 @ e).scale(2)
    return None


@dataclass
class Summand:
    module: Rep
    inclusion: RepMap
    local_certified: bool = True


def _restrict_map(inc, f):
    return inc @ f


def decompose_summands(M, seed=0, _rng=None):
    """Indecomposable summands of M with their inclusions into M."""
    rng = _rng or random.Random(seed)
    if M.is_zero():
        return []
    E = hom_space(M, M)
    if len(E) == 1:
        return [Summand(M, identity_map(M))]
    _, rad = endomorphism_radical(M, E)
    if len(E) - len(rad) == 1:
        return [Summand(M, identity_map(M))]
    for _ in range(4):
        pieces = _fitting_split(M, _random_element(E, rng))
        if pieces:
            return _recurse(pieces, rng)
    e = _casimir_idempotent(M, E, rad, rng)
    if e is not None:
        one = identity_map(M)
        pieces = [image(e), image(one - e)]
        return _recurse(pieces, rng)
    # semisimple quotient is a division algebra: commutative ones are fields
    comm = all((a @ b - b @ a).vector() == {} or _in_span(rad, a @ b - b @ a) for a in E for b in E)
    return [Summand(M, identity_map(M), local_certified=comm)]


def _in_span(maps, f):
    return span_of_maps(maps).contains(f.vector()) if maps else f.is_zero()


def _recurse(pieces, rng):
    out = []
    for X, inc in pieces:
        for s in decompose_summands(X, _rng=rng):
            out.append(Summand(s.module, inc @ s.inclusion, s.local_certified))
    return out


def iso_indecomposables(X, Y):
    """Witness iso X -> Y for indecomposables, or None."""
    if X.dims != Y.dims:
        return None
    if X.algebra is not Y.algebra:
        raise RepError("modules over different algebras")
    H = hom_space(X, Y)
    if not H:
        return None
    for f in H:
        if f.is_iso():
            return f
    G = hom_space(Y, X)
    for f in H:
        for g in G:
            if (g @ f).is_injective():
                return f
    return None


def group_isoclasses(summands):
    """Group summands by isomorphism class: list of (representative, [summands])."""
    classes = []
    for s in summands:
        for rep_, members in classes:
            if iso_indecomposables(s.module, rep_.module) is not None:
                members.append(s)
                break
        else:
            classes.append((s, [s]))
    return classes


def decompose(M, seed=0):
    """M ≅ ⊕ X_i^{m_i}; returns [(X_i, m_i)] with the X_i pairwise non-isomorphic."""
    return [(rep_.module, len(members)) for rep_, members in group_isoclasses(decompose_summands(M, seed))]


def indecomposable_summands(M, seed=0):
    """Basic list of pairwise non-isomorphic indecomposable summands."""
    return [X for X, _ in decompose(M, seed)]


def decomposition_iso(M, summands):
    """The isomorphism ⊕ summands -> M assembled from the inclusions, and its inverse."""
    S, _, projs = direct_sum([s.module for s in summands], M.algebra)
    f = zero_map(S, M)
    for s, p in zip(summands, projs):
        f = f + s.inclusion @ p
    inv = RepMap(M, S, [matrix_inverse(c) if c.nrows else ExactMatrix(0, 0) for c in f.comps])
    return S, f, inv


def is_indecomposable(M):
    return not M.is_zero() and len(decompose_summands(M)) == 1


def is_isomorphic(M, N, seed=0):
    """(True, iso) when M ≅ N, else (False, None)."""
    if M.dims != N.dims:
        return False, None
    if M.is_zero():
        return True, zero_map(M, N)
    H = hom_space(M, N)
    rng = random.Random(seed)
    for _ in range(3):
        if not H:
            break
        f = _random_element(H, rng)
        if f.is_iso():
            return True, f
    sm, sn = decompose_summands(M, seed), decompose_summands(N, seed)
    if len(sm) != len(sn):
        return False, None
    remaining = list(range(len(sn)))
    pairs = []
    for a in sm:
        for idx in remaining:
            w = iso_indecomposables(a.module, sn[idx].module)
            if w is not None:
                pairs.append((a, sn[idx], w))
                remaining.remove(idx)
                break
        else:
            return False, None
    SM, fM, invM = decomposition_iso(M, [p[0] for p in pairs])
    _, _, projs = direct_sum([p[0].module for p in pairs], M.algebra)
    g = zero_map(M, N)
    for (a, b, w), p in zip(pairs, projs):
        g = g + b.inclusion @ w @ p @ invM
    return True, g


def is_projective(M):
    """M is projective iff its projective cover is an isomorphism (dimension test)."""
    T, _ = top(M)
    A = M.algebra
    d = 0
    for v in range(A.n_vertices):
        if T.dims[v]:
            d += T.dims[v] * sum(len(A.block[v][u]) for u in range(A.n_vertices))
    return d == M.dim


def is_injective(M):
    return is_projective(dualize(M))


class ExactSeq:
    """A chain of composable maps X_0 -> X_1 -> ... -> X_k."""

    def __init__(self, maps):
        for f, g in zip(maps, maps[1:]):
            if f.target is not g.source and f.target.dims != g.source.dims:
                raise RepError("maps are not composable")
        self.maps = list(maps)

    @property
    def terms(self):
        return [self.maps[0].source] + [f.target for f in self.maps] if self.maps else []

    def is_complex(self):
        return all((g @ f).is_zero() for f, g in zip(self.maps, self.maps[1:]))

    def is_exact(self, ends=True):
        """Exact at interior terms; with ends, also injective at the start and surjective at the end."""
        if not self.is_complex():
            return False
        for f, g in zip(self.maps, self.maps[1:]):
            for v in range(len(f.target.dims)):
                if f.comps[v].rank() + g.comps[v].rank() != f.target.dims[v]:
                    return False
        if ends and self.maps:
            return self.maps[0].is_injective() and self.maps[-1].is_surjective()
        return True

    def __len__(self):
        return len(self.maps)
