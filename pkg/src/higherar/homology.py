"""Resolutions, Ext, transpose, Auslander–Reiten translates and homological dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Echelon, ExactMatrix
from .rep import (Rep, RepMap, _quotient_data, cokernel, decompose_summands, direct_sum,
                  dualize, hom_coordinates, hom_dim, hom_space, identity_map, injective,
                  is_injective, is_projective, kernel, map_from_projective, map_offsets,
                  projective, projective_at, quotient, simple, socle, zero_map,
                  zero_rep)
from .rep import radical as module_radical

DEFAULT_CAP = 32


class HomologyError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class AtLeast:
    """Lower bound returned when a resolution hits the depth cap."""
    bound: int

    def __str__(self):
        return f">={self.bound}"

    def to_json(self):
        return {"at_least": self.bound}


def finite(x):
    return not isinstance(x, AtLeast)


def as_json(x):
    return x.to_json() if isinstance(x, AtLeast) else x


# ---------------------------------------------------------------- covers

@dataclass
class Cover:
    """A projective cover P -> M (or injective envelope M -> I) with the summand vertices."""
    module: Rep
    map: RepMap
    vertices: list = field(default_factory=list)


def projective_cover(M):
    A = M.algebra
    _, inc = module_radical(M)
    gens, verts = [], []
    for v in range(A.n_vertices):
        _, sec = _quotient_data(inc.comps[v].columns(), M.dims[v])
        for g in sec.columns():
            gens.append((v, g))
            verts.append(v)
    if not gens:
        Z = zero_rep(A)
        return Cover(Z, zero_map(Z, M), [])
    P, _, projs = direct_sum([projective_at(A, v) for v in verts])
    p = zero_map(P, M)
    for (v, g), pr in zip(gens, projs):
        p = p + map_from_projective(A, v, M, g) @ pr
    return Cover(P, p, verts)


def injective_envelope(M):
    """M -> I built dually from the projective cover of D M over the opposite algebra."""
    A = M.algebra
    cov = projective_cover(dualize(M))
    I = dualize(cov.module)
    if I.algebra is not A:
        I = I.with_algebra(A, check=False)
    return Cover(I, RepMap(M, I, [c.T for c in cov.map.comps]), cov.vertices)


def strip_summands(M, test):
    """Direct sum of the indecomposable summands of M failing test."""
    parts = decompose_summands(M)
    keep = [s.module for s in parts if not test(s.module)]
    if len(keep) == len(parts):
        return M
    return direct_sum(keep, M.algebra)[0]


def syzygy(M, k=1):
    if k < 0:
        raise ValueError("syzygy degree must be non-negative")
    if k == 0:
        return strip_summands(M, is_projective)
    for _ in range(k):
        if M.is_zero():
            return M
        M = kernel(projective_cover(M).map)[0]
    return M


def cosyzygy(M, k=1):
    if k < 0:
        raise ValueError("cosyzygy degree must be non-negative")
    if k == 0:
        return strip_summands(M, is_injective)
    for _ in range(k):
        if M.is_zero():
            return M
        M = cokernel(injective_envelope(M).map)[0]
    return M


@dataclass
class Resolution:
    target: Rep
    terms: list
    maps: list
    vertices: list
    minimal: bool = True
    truncated_at: object = "finite"

    @property
    def length(self):
        return len(self.terms) - 1 if self.truncated_at == "finite" else AtLeast(len(self.terms))


def projective_resolution(M, cap=DEFAULT_CAP):
    """Minimal projective resolution: maps[0] is P_0 -> M, maps[k] is P_k -> P_{k-1}."""
    terms, maps, verts = [], [], []
    Z, inc = M, identity_map(M)
    for _ in range(cap + 1):
        if Z.is_zero():
            return Resolution(M, terms, maps, verts)
        cov = projective_cover(Z)
        terms.append(cov.module)
        maps.append(inc @ cov.map)
        verts.append(cov.vertices)
        Z, inc = kernel(cov.map)
    return Resolution(M, terms, maps, verts, truncated_at=cap + 1)


def injective_coresolution(M, cap=DEFAULT_CAP):
    """Minimal injective coresolution: maps[0] is M -> I_0, maps[k] is I_{k-1} -> I_k."""
    terms, maps, verts = [], [], []
    Z, proj = M, identity_map(M)
    for _ in range(cap + 1):
        if Z.is_zero():
            return Resolution(M, terms, maps, verts)
        env = injective_envelope(Z)
        terms.append(env.module)
        maps.append(env.map @ proj)
        verts.append(env.vertices)
        Z, proj = cokernel(env.map)
    return Resolution(M, terms, maps, verts, truncated_at=cap + 1)


# ---------------------------------------------------------------- Ext

def ext_dim(X, Y, i):
    """dim Ext^i(X, Y), by dimension shifting along minimal syzygies."""
    if i < 0:
        raise ValueError("Ext degree must be non-negative")
    if i == 0:
        return hom_dim(X, Y)
    Z = syzygy(X, i - 1) if i > 1 else X
    if Z.is_zero():
        return 0
    cov = projective_cover(Z)
    omega = kernel(cov.map)[0]
    hom_p = sum(Y.dims[v] for v in cov.vertices)
    return hom_dim(omega, Y) - hom_p + hom_dim(Z, Y)


def ext_dims_into_regular(X, i):
    """Dimension vector of Ext^i(X, A) as a module over the opposite algebra."""
    A = X.algebra
    return tuple(ext_dim(X, projective(A, v), i) for v in A.quiver.vertices)


# ---------------------------------------------------------------- dimensions

def pd(M, cap=DEFAULT_CAP):
    Z = M
    for k in range(cap + 1):
        if is_projective(Z):
            return k
        Z = syzygy(Z)
    return AtLeast(cap)


def injective_dimension(M, cap=DEFAULT_CAP):
    return pd(dualize(M), cap)


def id(M, cap=DEFAULT_CAP):  # noqa: A001 - the conventional name
    return injective_dimension(M, cap)


def _max_dim(values, cap):
    out = 0
    for x in values:
        if not finite(x):
            return AtLeast(cap)
        out = max(out, x)
    return out


def gl_dim(A, cap=DEFAULT_CAP):
    return _max_dim((pd(simple(A, v), cap) for v in A.quiver.vertices), cap)


def projective_injective_vertices(A):
    return [v for v in range(A.n_vertices) if is_projective(injective(A, A.quiver.vertices[v]))]


def _injective_terms(A, cap):
    """Socle dimension vectors of the cosyzygies of A_A, i.e. the injective terms I_0, I_1, ..."""
    from .rep import regular_module
    Z = regular_module(A)
    out = []
    for _ in range(cap):
        if Z.is_zero():
            return out, True
        out.append(socle(Z)[0].dims)
        Z = cosyzygy(Z)
    return out, Z.is_zero()


def dom_dim(A, cap=DEFAULT_CAP):
    pi = set(projective_injective_vertices(A))
    terms, finished = _injective_terms(A, cap)
    for j, soc in enumerate(terms):
        if any(d and v not in pi for v, d in enumerate(soc)):
            return j
    return AtLeast(cap)


def _injective_pds(A, cap):
    return [pd(injective(A, v), cap) for v in A.quiver.vertices]


def mn_condition(A, m, n, two_sided=False, cap=DEFAULT_CAP):
    """pd I_i < m for 0 <= i < n in the minimal injective coresolution of A_A."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    algebras = [A, A.opposite()] if two_sided else [A]
    for B in algebras:
        pds = _injective_pds(B, cap)
        terms, _ = _injective_terms(B, n)
        for soc in terms[:n]:
            for v, d in enumerate(soc):
                if d and (not finite(pds[v]) or pds[v] >= m):
                    return False
    return True


def gorenstein_report(A, restricted=True, cap=DEFAULT_CAP):
    """Per-simple verdicts for the (restricted) Gorenstein condition on A and A^op."""
    n = gl_dim(A, cap)
    if not finite(n):
        raise HomologyError("global dimension is not finite within the cap")
    report = {"gl_dim": n, "holds": True, "simples": []}
    for side, B in (("right", A), ("left", A.opposite())):
        for v in B.quiver.vertices:
            S = simple(B, v)
            p = pd(S, cap)
            if restricted and p != n:
                continue
            dims = [sum(ext_dims_into_regular(S, i)) for i in range(n + 1)]
            ok = all(d == 0 for d in dims[:n]) and dims[n] == 1
            report["simples"].append({"side": side, "vertex": v, "pd": p,
                                      "ext_dims": dims, "holds": ok})
            report["holds"] = report["holds"] and ok
    return report


def gorenstein_condition(A, restricted=True, cap=DEFAULT_CAP):
    return gorenstein_report(A, restricted, cap)["holds"]


# ---------------------------------------------------------------- dual into A

def _left_mult_map(A, k):
    """Left multiplication by arrow k (s -> t) as a map P_t -> P_s."""
    s, t = A.quiver.src[k], A.quiver.tgt[k]
    Ps = projective(A, A.quiver.vertices[s])
    pos = {b: r for r, b in enumerate(A.block[s][t])}
    gen = [0] * Ps.dims[t]
    for idx, c in A.arrow_element(k).items():
        gen[pos[idx]] = c
    return map_from_projective(A, t, Ps, gen)


def _star_data(M):
    A = M.algebra
    bases = [hom_space(M, projective(A, v)) for v in A.quiver.vertices]
    coords = [hom_coordinates(b) for b in bases]
    return bases, coords


def star(M):
    """M* = Hom_A(M, A) as a right module over the opposite algebra."""
    A = M.algebra
    op = A.opposite()
    q = A.quiver
    bases, coords = _star_data(M)
    dims = [len(b) for b in bases]
    action = []
    for k in range(q.n_arrows):
        s, t = q.src[k], q.tgt[k]
        lam = _left_mult_map(A, k)
        m = ExactMatrix(dims[s], dims[t])
        for j, phi in enumerate(bases[t]):
            for i, c in enumerate(coords[s](lam @ phi)):
                m.rows[i][j] = c
        action.append(m)
    return Rep(op, dims, action, check=False)


def star_map(f, source_star=None, target_star=None):
    """f: X -> Y gives f*: Y* -> X*, φ ↦ φ∘f."""
    A = f.source.algebra
    X, Y = f.source, f.target
    Xs = source_star or star(X)
    Ys = target_star or star(Y)
    bx, cx = _star_data(X)
    by, _ = _star_data(Y)
    comps = []
    for v in range(A.n_vertices):
        m = ExactMatrix(len(bx[v]), len(by[v]))
        for j, phi in enumerate(by[v]):
            for i, c in enumerate(cx[v](phi @ f)):
                m.rows[i][j] = c
        comps.append(m)
    return RepMap(Ys, Xs, comps)


# ---------------------------------------------------------------- transpose and translates

def minimal_presentation(M):
    """(P1 -> P0, P0 -> M)."""
    cov0 = projective_cover(M)
    K, inc = kernel(cov0.map)
    cov1 = projective_cover(K)
    return inc @ cov1.map, cov0.map


def transpose(M):
    """Tr M over the opposite algebra."""
    g, _ = minimal_presentation(M)
    return cokernel(star_map(g))[0]


def tau(M):
    A = M.algebra
    out = dualize(transpose(M))
    return out if out.algebra is A else out.with_algebra(A, check=False)


def tau_inv(M):
    A = M.algebra
    out = transpose(dualize(M))
    return out if out.algebra is A else out.with_algebra(A, check=False)


def tau_n(M, n):
    if n < 1:
        raise ValueError("n must be at least 1")
    return tau(syzygy(M, n - 1))


def tau_n_inv(M, n):
    if n < 1:
        raise ValueError("n must be at least 1")
    return tau_inv(cosyzygy(M, n - 1))


# ---------------------------------------------------------------- stable Hom

def _rank_of_maps(maps, M, N):
    _, total = map_offsets(M, N)
    e = Echelon(total)
    for f in maps:
        e.add(f.vector())
    return e.rank


def projectively_trivial_maps(M, N):
    """Maps M -> N factoring through a projective (all factor through the cover of N)."""
    cov = projective_cover(N)
    return [cov.map @ h for h in hom_space(M, cov.module)]


def injectively_trivial_maps(M, N):
    env = injective_envelope(M)
    return [h @ env.map for h in hom_space(env.module, N)]


def stable_hom_dim(M, N):
    return hom_dim(M, N) - _rank_of_maps(projectively_trivial_maps(M, N), M, N)


def costable_hom_dim(M, N):
    return hom_dim(M, N) - _rank_of_maps(injectively_trivial_maps(M, N), M, N)


# ---------------------------------------------------------------- simples of small pd over Auslander algebras

def _factor_pds(op, dims, cap):
    return [pd(simple(op, op.quiver.vertices[i]), cap) for i, d in enumerate(dims) if d]


def small_pd_simples_report(G, cap=DEFAULT_CAP):
    """For each simple S with pd S <= 1: pd of the composition factors of Ext^1(S, G),
    of the socle of Hom(S, G), and of the factors of Hom(S, G) modulo that socle.

    Over an Auslander algebra every factor of Ext^1(S, G) and of the quotient has
    pd 2, and the socle is a single simple of pd <= 1.
    """
    op = G.opposite()
    rows = []
    for v in G.quiver.vertices:
        S = simple(G, v)
        p = pd(S, cap)
        if not finite(p) or p > 1:
            continue
        ext_factors = _factor_pds(op, ext_dims_into_regular(S, 1), cap)
        H = star(S)
        soc, inc = socle(H)
        rest, _ = quotient(H, [c.columns() for c in inc.comps])
        soc_pds = [d for d in soc.dims if d]
        row = {"vertex": v, "pd": p, "ext1_factor_pds": ext_factors,
               "socle_dims": list(soc.dims), "socle_pds": _factor_pds(op, soc.dims, cap),
               "quotient_factor_pds": _factor_pds(op, rest.dims, cap)}
        row["a"] = all(x == 2 for x in ext_factors)
        row["b"] = (soc_pds == [1] and all(finite(x) and x <= 1 for x in row["socle_pds"])
                    and all(x == 2 for x in row["quotient_factor_pds"]))
        rows.append(row)
    return {"simples": rows, "holds": all(r["a"] and r["b"] for r in rows)}
