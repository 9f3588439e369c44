"""Grid quivers built from a Dynkin quiver and the lengths of its injective τ-orbits.

A vertex is a pair ``(x, ell)`` with ``x`` a vertex of the base quiver and
``ell`` a tuple of n non-negative integers summing to at most ``ell_x``.  There
are three families of arrows: reversed base arrows at fixed ``ell``, base
arrows that lower the first coordinate of ``ell``, and arrows moving one unit
from coordinate ``i`` to coordinate ``i - 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .algebra import Arrow, Quiver, path_algebra, quiver_isomorphisms
from .arquiver import knit
from .homology import tau
from .rep import injective_at


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _tag(arrow):
    return arrow.label or arrow.id


def dynkin_quiver(kind):
    """Dynkin quiver from a type string such as ``"A4"``, ``"D5"`` or ``"E6"``.

    Type A is linear 1 -> 2 -> ... -> m; in types D and E the branch vertex
    sits on a linear spine and the extra vertex points into it.  Arrows are
    named a, b, c, ... in order.
    """
    family, m = kind[0].upper(), int(kind[1:])
    if family == "A" and m >= 1:
        edges = [(i, i + 1) for i in range(1, m)]
    elif family == "D" and m >= 4:
        edges = [(i, i + 1) for i in range(1, m - 1)] + [(m, m - 2)]
    elif family == "E" and m in (6, 7, 8):
        edges = [(i, i + 1) for i in range(1, m - 1)] + [(m, 3)]
    else:
        raise ValueError(f"unsupported Dynkin type {kind!r}")
    arrows = [Arrow(_LETTERS[k], s, t) for k, (s, t) in enumerate(edges)]
    return Quiver(list(range(1, m + 1)), arrows)


def ell_values(Q, dim_cap=40):
    """Vertex -> largest ℓ with τ^ℓ of the indecomposable injective nonzero."""
    A = path_algebra(Q)
    knit(A, dim_cap, certify=False)  # fails fast on non-Dynkin input
    out = {}
    for v, x in enumerate(Q.vertices):
        X, ell = injective_at(A, v), 0
        while True:
            Y = tau(X)
            if Y.is_zero():
                break
            X, ell = Y, ell + 1
        out[x] = ell
    return out


def _simplex(n, bound):
    """All n-tuples of non-negative integers with sum <= bound."""
    if n == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in _simplex(n - 1, bound - first):
            yield (first,) + rest


def displacement(n, i):
    """The step vector of the i-th arrow family (1-based)."""
    v = [0] * n
    if i == 1:
        v[0] = -1
    else:
        v[i - 2] = 1
        v[i - 1] = -1
    return tuple(v)


def _shift(ell, step):
    return tuple(a + b for a, b in zip(ell, step))


@dataclass
class GridQuiver:
    base: Quiver
    n: int
    ell: dict
    vertices: list = field(default_factory=list)
    arrows: list = field(default_factory=list)   # (source, target, kind, base arrow or i, ell)

    def name(self, vertex):
        x, ell = vertex
        return f"{x}" + "".join(str(k) for k in ell)

    def label(self, arrow):
        src, _, kind, tag, ell = arrow
        digits = [str(k) for k in ell]
        if kind == "reversed":
            return f"{tag}*" + "".join(digits)
        if kind == "forward":
            return f"{tag}" + "".join(digits)
        i = tag
        return f"{src[0]}" + "".join(digits[:i - 1]) + "." + "".join(digits[i - 1:])

    def to_quiver(self):
        arrows = [Arrow(self.label(a), self.name(a[0]), self.name(a[1])) for a in self.arrows]
        return Quiver([self.name(v) for v in self.vertices], arrows)

    def to_dot(self, name="Qn"):
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{self.name(v)}";')
        for a in self.arrows:
            lines.append(f'  "{self.name(a[0])}" -> "{self.name(a[1])}" [label="{self.label(a)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"n": self.n,
                "ell": {str(k): v for k, v in self.ell.items()},
                "vertices": [self.name(v) for v in self.vertices],
                "arrows": [{"source": self.name(a[0]), "target": self.name(a[1]),
                            "label": self.label(a)} for a in self.arrows]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def build_grid(Q, n, ell=None):
    if n < 1:
        raise ValueError("n must be at least 1")
    ell = ell or ell_values(Q)
    order = {x: k for k, x in enumerate(Q.vertices)}
    vertices = [(x, l) for x in Q.vertices for l in _simplex(n, ell[x])]
    vertices.sort(key=lambda v: (order[v[0]], v[1]))
    present = set(vertices)
    arrows = []
    for x, l in vertices:
        for k in Q.in_arrows[Q.vindex[x]]:
            w = Q.vertices[Q.src[k]]
            head = (w, l)
            if head in present:
                arrows.append(((x, l), head, "reversed", _tag(Q.arrows[k]), l))
        for k in Q.out_arrows[Q.vindex[x]]:
            y = Q.vertices[Q.tgt[k]]
            head = (y, _shift(l, displacement(n, 1)))
            if head in present:
                arrows.append(((x, l), head, "forward", _tag(Q.arrows[k]), l))
        for i in range(2, n + 1):
            head = (x, _shift(l, displacement(n, i)))
            if head in present:
                arrows.append(((x, l), head, "shift", i, l))
    arrows.sort(key=lambda a: ((order[a[0][0]], a[0][1]), (order[a[1][0]], a[1][1]), a[2], str(a[3])))
    return GridQuiver(Q, n, dict(ell), vertices, arrows)


def expected_vertex_count(ell, n):
    return sum(comb(e + n, n) for e in ell.values())


def cone_chain(Q, k):
    """[kQ, its cone, the cone of that, ...] up to the k-th algebra."""
    from .cluster import cone
    chain = [path_algebra(Q)]
    for j in range(1, k):
        chain.append(cone(chain[-1], j, check=False))
    return chain


def _matches(q1, q2):
    return next(quiver_isomorphisms(q1, q2), None) is not None


def crosscheck_cone(Q, k):
    """Compare the quiver of the k-th cone iterate (and its opposite) with the grids of index k-1 and k."""
    chain = cone_chain(Q, k)
    A = chain[-1]
    ell = ell_values(Q)
    report = {"k": k, "algebra_dim": A.dim, "vertices": A.n_vertices, "matches": {}}
    for idx in (k - 1, k):
        if idx < 1:
            grid = Quiver(list(Q.vertices), [Arrow(a.id, a.src, a.tgt) for a in Q.arrows])
            count = Q.n_vertices
        else:
            g = build_grid(Q, idx, ell)
            grid, count = g.to_quiver(), len(g.vertices)
        report["matches"][idx] = {
            "grid_vertices": count,
            "quiver": _matches(A.quiver, grid),
            "opposite_quiver": _matches(A.quiver.opposite(), grid),
        }
    return report
