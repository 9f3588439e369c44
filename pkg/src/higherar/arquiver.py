"""Almost split sequences and knitting of Auslander–Reiten quivers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .homology import projective_cover, tau, tau_inv
from .linalg import Echelon, ExactMatrix, nullspace
from .rep import (ExactSeq, RepError, RepMap, _quotient_data, cokernel_with_section,
                  decompose_summands, decomposition_iso, direct_sum, endomorphism_radical,
                  hom_dim, hom_space, identity_map, is_injective, is_projective,
                  iso_indecomposables, kernel, linear_combination, map_offsets, projective_at,
                  radical, socle)


class KnitError(RuntimeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


# ---------------------------------------------------------------- almost split sequences

@dataclass
class AlmostSplit:
    seq: ExactSeq
    start: object
    middle: object
    end: object
    summands: list  # [(module, Z -> summand, summand -> X)]


def _radical_dim(M):
    E, rad = endomorphism_radical(M)
    return len(E), len(rad)


def radical_hom_dim(X, Y, iso=None):
    """dim J(X, Y) for indecomposable X, Y."""
    if iso is None:
        iso = X.dims == Y.dims and iso_indecomposables(X, Y) is not None
    if not iso:
        return hom_dim(X, Y)
    _, r = _radical_dim(Y)
    return r


def almost_split_starting_at(Z, check_against=()):
    """0 -> Z -> E -> τ⁻Z -> 0 as the pushout of a socle element of Ext¹(τ⁻Z, Z)."""
    if Z.is_zero():
        raise RepError("zero module")
    if len(decompose_summands(Z)) != 1:
        raise RepError("module is decomposable")
    if is_injective(Z):
        raise RepError("module is injective: no almost split sequence starts here")
    X = tau_inv(Z)
    cov = projective_cover(X)
    K, iota = kernel(cov.map)
    P = cov.module
    V = hom_space(K, Z)
    W = [f @ iota for f in hom_space(P, Z)]
    _, total = map_offsets(K, Z)
    proj, _ = _quotient_data([w.vector() for w in W], total)

    def reduce(f):
        vec = f.vector()
        return [sum((row[k] * c for k, c in vec.items()), 0) for row in proj.rows]

    _, rad = endomorphism_radical(Z)
    conds = []
    for s in rad:
        cols = [reduce(s @ h) for h in V]
        for r in range(proj.nrows):
            row = {k: cols[k][r] for k in range(len(V)) if cols[k][r]}
            if row:
                conds.append(row)
    h = None
    for c in nullspace(conds, len(V)):
        cand = linear_combination(V, [c.get(k, 0) for k in range(len(V))], K, Z)
        if any(reduce(cand)):
            h = cand
            break
    if h is None:
        raise RepError("no socle element in Ext^1; the module may not be indecomposable")
    S, (iz, ip), _ = direct_sum([Z, P])
    push = iz @ h - ip @ iota
    E, q, sec = cokernel_with_section(push)
    g = q @ iz
    f = RepMap(E, X, [cov.map.comps[v] @ _p_block(S, Z, P, v) @ sec[v] for v in range(len(E.dims))])
    seq = ExactSeq([g, f])
    parts = decompose_summands(E)
    _, _, inv = decomposition_iso(E, parts)
    _, _, projs = direct_sum([p.module for p in parts], E.algebra)
    summands = []
    for p, pr in zip(parts, projs):
        summands.append((p.module, pr @ inv @ g, f @ p.inclusion))
    ass = AlmostSplit(seq, Z, E, X, summands)
    if not seq.is_exact():
        raise RepError("constructed sequence is not exact")
    for U in check_against:
        if not verify_almost_split(ass, [U]):
            raise RepError("Hom-exactness check failed")
    return ass


def _p_block(S, Z, P, v):
    """Projection of (Z ⊕ P)_v onto P_v."""
    m = ExactMatrix(P.dims[v], S.dims[v])
    for r in range(P.dims[v]):
        m.rows[r][Z.dims[v] + r] = 1
    return m


def almost_split_ending_at(X, check_against=()):
    if is_projective(X):
        raise RepError("module is projective: no almost split sequence ends here")
    return almost_split_starting_at(tau(X), check_against)


def verify_almost_split(ass, test_modules):
    """Both Hom-sequences onto the radical functors are exact on the test modules (dimension counts)."""
    Z, E, X = ass.start, ass.middle, ass.end
    for U in test_modules:
        if hom_dim(U, E) != hom_dim(U, Z) + radical_hom_dim(U, X):
            return False
        if hom_dim(E, U) != hom_dim(X, U) + radical_hom_dim(Z, U):
            return False
    return True


# ---------------------------------------------------------------- AR quiver

@dataclass
class ARQuiver:
    algebra: object
    nodes: list = field(default_factory=list)
    projective: list = field(default_factory=list)
    injective: list = field(default_factory=list)
    arrows: dict = field(default_factory=dict)     # (i, j) -> multiplicity
    tau: dict = field(default_factory=dict)        # i -> tau(i)
    irreducible: dict = field(default_factory=dict)  # (i, j) -> [RepMap]
    meshes: dict = field(default_factory=dict)     # end node -> AlmostSplit

    def find(self, M):
        for i, N in enumerate(self.nodes):
            if N.dims == M.dims and iso_indecomposables(M, N) is not None:
                return i
        return None

    def node_of(self, M):
        """Index of M together with an iso M -> node, or (None, None)."""
        for i, N in enumerate(self.nodes):
            if N.dims == M.dims:
                w = iso_indecomposables(M, N)
                if w is not None:
                    return i, w
        return None, None

    def __len__(self):
        return len(self.nodes)

    def successors(self, i):
        return sorted(j for (a, j) in self.arrows if a == i)

    def predecessors(self, j):
        return sorted(i for (i, b) in self.arrows if b == j)

    def tau_inverse(self):
        return {v: k for k, v in self.tau.items()}

    def to_json(self):
        return {
            "nodes": [{"id": i, "dim_vector": list(N.dims), "projective": self.projective[i],
                       "injective": self.injective[i]} for i, N in enumerate(self.nodes)],
            "arrows": [{"source": i, "target": j, "multiplicity": m}
                       for (i, j), m in sorted(self.arrows.items())],
            "tau": {str(k): v for k, v in sorted(self.tau.items())},
        }

    def to_dot(self, name="AR"):
        lines = [f"digraph {name} {{"]
        for i, N in enumerate(self.nodes):
            label = "".join(str(d) for d in N.dims)
            lines.append(f'  n{i} [label="{label}"];')
        for (i, j), m in sorted(self.arrows.items()):
            for _ in range(m):
                lines.append(f"  n{i} -> n{j};")
        for x, t in sorted(self.tau.items()):
            lines.append(f"  n{t} -> n{x} [style=dashed, constraint=false];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _add_arrow(ar, i, j, mult, maps=None):
    old = ar.arrows.get((i, j))
    if old is not None and old != mult:
        raise KnitError(f"inconsistent arrow multiplicity between nodes {i} and {j}", ar)
    ar.arrows[(i, j)] = mult
    if maps is not None and (i, j) not in ar.irreducible:
        ar.irreducible[(i, j)] = maps


def knit(A, dim_cap=40, max_nodes=200, certify=True):
    """The full AR quiver of a representation-finite algebra, by breadth-first knitting."""
    ar = ARQuiver(A)
    queue = deque()

    def add(M):
        i = ar.find(M)
        if i is not None:
            return i
        if M.dim > dim_cap or len(ar.nodes) >= max_nodes:
            raise KnitError("dimension cap exceeded: possibly representation-infinite", ar)
        ar.nodes.append(M)
        ar.projective.append(is_projective(M))
        ar.injective.append(is_injective(M))
        i = len(ar.nodes) - 1
        queue.append(i)
        return i

    for v in range(A.n_vertices):
        add(projective_at(A, v))
    while queue:
        i = queue.popleft()
        M = ar.nodes[i]
        if ar.projective[i]:
            _knit_radical(ar, i, add)
        if ar.injective[i]:
            _knit_socle_quotient(ar, i, add)
        if not ar.projective[i] and i not in ar.tau:
            t = add(tau(M))
            if t not in ar.tau_inverse():
                _knit_mesh(ar, t, add)
        if not ar.injective[i] and i not in ar.tau_inverse():
            _knit_mesh(ar, i, add)
    if certify:
        cert = certify_quiver(ar)
        if not cert["closed"]:
            raise KnitError("knitting did not close up", ar)
    return ar


def _knit_mesh(ar, z, add):
    ass = almost_split_starting_at(ar.nodes[z])
    x = add(ass.end)
    _, wx = ar.node_of(ass.end)
    if x in ar.tau and ar.tau[x] != z:
        raise KnitError("τ assignment conflict", ar)
    ar.tau[x] = z
    ar.meshes[x] = ass
    groups = {}
    for mod, gz, fx in ass.summands:
        j = add(mod)
        _, w = ar.node_of(mod)
        groups.setdefault(j, ([], []))
        groups[j][0].append(w @ gz)
        groups[j][1].append(wx @ fx @ _inverse(w))
    for j, (ins, outs) in groups.items():
        _add_arrow(ar, z, j, len(ins), ins)
        _add_arrow(ar, j, x, len(outs), outs)


def _inverse(w):
    from .rep import matrix_inverse
    return RepMap(w.target, w.source, [matrix_inverse(c) if c.nrows else c for c in w.comps])


def _knit_radical(ar, p, add):
    R, inc = radical(ar.nodes[p])
    if R.is_zero():
        return
    groups = {}
    for s in decompose_summands(R):
        j = add(s.module)
        _, w = ar.node_of(s.module)
        groups.setdefault(j, []).append(inc @ s.inclusion @ _inverse(w))
    for j, maps in groups.items():
        _add_arrow(ar, j, p, len(maps), maps)


def _knit_socle_quotient(ar, i, add):
    from .rep import quotient
    I = ar.nodes[i]
    _, sinc = socle(I)
    Q, q = quotient(I, [c.columns() for c in sinc.comps])
    if Q.is_zero():
        return
    parts = decompose_summands(Q)
    _, _, inv = decomposition_iso(Q, parts)
    _, _, projs = direct_sum([s.module for s in parts], Q.algebra)
    groups = {}
    for s, pr in zip(parts, projs):
        j = add(s.module)
        _, w = ar.node_of(s.module)
        groups.setdefault(j, []).append(w @ pr @ inv @ q)
    for j, maps in groups.items():
        _add_arrow(ar, i, j, len(maps), maps)


# ---------------------------------------------------------------- certificates

def certify_quiver(ar, generation=True):
    n = len(ar.nodes)
    closed = all(0 <= i < n and 0 <= j < n for (i, j) in ar.arrows)
    tau_inv_map = ar.tau_inverse()
    meshes_ok = all((ar.projective[x] or x in ar.tau) for x in range(n)) and \
        all((ar.injective[z] or z in tau_inv_map) for z in range(n))
    tau_ok = sorted(ar.tau) == [x for x in range(n) if not ar.projective[x]] and \
        sorted(ar.tau.values()) == [z for z in range(n) if not ar.injective[z]]
    mesh_shape = True
    for x, z in ar.tau.items():
        into = {i: m for (i, j), m in ar.arrows.items() if j == x}
        out = {j: m for (i, j), m in ar.arrows.items() if i == z}
        if into != out:
            mesh_shape = False
    report = {"closed": closed and meshes_ok and tau_ok and mesh_shape, "nodes": n,
              "meshes": len(ar.tau)}
    if generation:
        report["radical_generated"] = radical_generated(ar)
        report["closed"] = report["closed"] and report["radical_generated"]
    return report


def radical_generated(ar):
    """Every Hom(X, Y) between nodes is spanned by identities and composites of irreducible maps."""
    n = len(ar.nodes)
    for x in range(n):
        layer = {}
        for (i, j), maps in ar.irreducible.items():
            if i == x:
                layer.setdefault(j, []).extend(maps)
        reached = {}
        for j, maps in layer.items():
            reached.setdefault(j, []).extend(maps)
        frontier = layer
        for _ in range(4 * n):
            nxt = {}
            for y, maps in frontier.items():
                for (i, j), irr in ar.irreducible.items():
                    if i != y:
                        continue
                    for g in irr:
                        for f in maps:
                            h = g @ f
                            if not h.is_zero():
                                nxt.setdefault(j, []).append(h)
            nxt = {j: _basis_of(ms) for j, ms in nxt.items()}
            nxt = {j: ms for j, ms in nxt.items() if ms}
            if not nxt:
                break
            for j, ms in nxt.items():
                reached.setdefault(j, []).extend(ms)
            frontier = nxt
        for y in range(n):
            maps = list(reached.get(y, []))
            if x == y:
                maps.append(identity_map(ar.nodes[x]))
            d = _rank(maps, ar.nodes[x], ar.nodes[y])
            if d != hom_dim(ar.nodes[x], ar.nodes[y]):
                return False
    return True


def _rank(maps, M, N):
    _, total = map_offsets(M, N)
    e = Echelon(total)
    for f in maps:
        e.add(f.vector())
    return e.rank


def _basis_of(maps):
    if not maps:
        return []
    _, total = map_offsets(maps[0].source, maps[0].target)
    e = Echelon(total)
    return [f for f in maps if e.add(f.vector())]


def additive_generator(A, dim_cap=40, ar=None):
    ar = ar or knit(A, dim_cap)
    return direct_sum(list(ar.nodes), A)[0]
