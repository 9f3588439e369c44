"""Matrix factorizations over k[x, y, ...] and curve singularities S/(f1 ... fn).

Polynomials are sparse maps from exponent vectors to rationals.  Elements of
the power series ring never need inverting here: every ideal that appears is
principal and generated by a product of the chosen factors, so ideals are
compared through the multiset of factor indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import factorial

import sympy

from .algebra import Arrow, Quiver
from .linalg import ONE, ZERO, qq, qstr


class MFError(ValueError):
    """Malformed input (sizes, variables, factor data)."""


# ---------------------------------------------------------------- polynomials

class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        self.terms = {}
        for exp, c in (terms or {}).items():
            c = qq(c)
            if c:
                if len(exp) != len(self.vars):
                    raise MFError("exponent vector does not match the variables")
                self.terms[tuple(exp)] = c

    # construction
    @classmethod
    def const(cls, c, variables=()):
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name, variables=None):
        variables = tuple(variables or (name,))
        exp = tuple(int(v == name) for v in variables)
        return cls(variables, {exp: ONE})

    @classmethod
    def parse(cls, text, variables=None):
        """Parse an ASCII polynomial such as ``"x^2 - 3/2*x*y + y^3"``."""
        try:
            expr = sympy.sympify(text.replace("^", "**"), rational=True)
        except (sympy.SympifyError, SyntaxError, TypeError) as exc:
            raise MFError(f"cannot parse polynomial {text!r}") from exc
        return cls.from_sympy(expr, variables)

    @classmethod
    def from_sympy(cls, expr, variables=None):
        names = sorted(str(s) for s in expr.free_symbols)
        if variables is not None:
            extra = set(names) - set(variables)
            if extra:
                raise MFError(f"unexpected variables {sorted(extra)}")
            names = list(variables)
        if not names:
            return cls.const(sympy.Rational(expr), ())
        poly = sympy.Poly(expr, *[sympy.Symbol(n) for n in names], domain="QQ")
        return cls(names, {exp: qq(str(c)) for exp, c in poly.terms()})

    def to_sympy(self):
        syms = [sympy.Symbol(v) for v in self.vars]
        return sympy.Add(*[sympy.Rational(str(c)) * sympy.Mul(*[s ** e for s, e in zip(syms, exp)])
                           for exp, c in self.terms.items()])

    # variables
    def extend(self, variables):
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = {v: k for k, v in enumerate(variables)}
        missing = [v for v in self.vars if v not in pos]
        if missing:
            raise MFError(f"variables {missing} missing from the target ring")
        out = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.vars, exp):
                new[pos[v]] = e
            out[tuple(new)] = c
        return MPoly(variables, out)

    def _align(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.vars)
        if self.vars == other.vars:
            return self, other
        variables = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.extend(variables), other.extend(variables)

    # arithmetic
    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.terms)
        for exp, c in b.terms.items():
            out[exp] = out.get(exp, ZERO) + c
        return MPoly(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MPoly) else -qq(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._align(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MPoly(a.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = MPoly.const(1, self.vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other, self.vars)
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset((tuple((v, k) for v, k in zip(self.vars, e) if k), c)
                              for e, c in self.terms.items()))

    def is_zero(self):
        return not self.terms

    # structure
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def order(self):
        """Lowest total degree of a monomial (-1 for zero)."""
        return min((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), ZERO)

    def linear_part(self, variables=None):
        variables = tuple(variables or self.vars)
        p = self.extend(variables) if variables != self.vars else self
        return tuple(p.terms.get(tuple(int(i == k) for i in range(len(variables))), ZERO)
                     for k in range(len(variables)))

    def divides(self, other):
        """Exact divisibility in the polynomial ring (a single polynomial is a Gröbner basis)."""
        if self.is_zero():
            return other.is_zero()
        a, b = self._align(other)
        syms = [sympy.Symbol(v) for v in a.vars] or [sympy.Symbol("_t")]
        _, rem = sympy.div(sympy.Poly(b.to_sympy(), *syms, domain="QQ"),
                           sympy.Poly(a.to_sympy(), *syms, domain="QQ"))
        return rem.is_zero

    def is_proportional(self, other):
        a, b = self._align(other)
        if a.is_zero() or b.is_zero():
            return a.is_zero() and b.is_zero()
        exp = next(iter(a.terms))
        if exp not in b.terms:
            return False
        ratio = b.terms[exp] / a.terms[exp]
        return b == a * ratio

    def sorted_terms(self):
        """Degree-lexicographic, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e)
            if not mono:
                body = qstr(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{qstr(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    __repr__ = __str__


def _ring(polys):
    variables = []
    for p in polys:
        for v in p.vars:
            if v not in variables:
                variables.append(v)
    return tuple(variables)


def _fresh(name, used):
    if name not in used:
        return name
    k = 1
    while f"{name}{k}" in used:
        k += 1
    return f"{name}{k}"


def product(polys, variables=()):
    return reduce(lambda a, b: a * b, polys, MPoly.const(1, variables))


# ---------------------------------------------------------------- matrices and factorizations

def matmul(a, b):
    if not a or len(a[0]) != len(b):
        raise MFError("matrix sizes do not compose")
    return [[reduce(lambda s, t: s + t, (a[i][k] * b[k][j] for k in range(len(b))))
             for j in range(len(b[0]))] for i in range(len(a))]


def scalar_identity(f, size):
    zero = f * 0
    return [[f if i == j else zero for j in range(size)] for i in range(size)]


def _square(m):
    return bool(m) and all(len(r) == len(m) for r in m)


@dataclass
class MatFac:
    f: MPoly
    A: list
    B: list

    @property
    def size(self):
        return len(self.A)

    def to_json(self):
        def mat(m):
            return [[str(x) for x in row] for row in m]
        return {"f": str(self.f), "A": mat(self.A), "B": mat(self.B)}


def verify_mf(mf):
    if not (_square(mf.A) and _square(mf.B)) or len(mf.A) != len(mf.B):
        raise MFError("a matrix factorization needs two square matrices of the same size")
    target = scalar_identity(mf.f, mf.size)
    return matmul(mf.A, mf.B) == target and matmul(mf.B, mf.A) == target


def knorrer(mf, u="u", v="v"):
    """The doubled factorization of f + uv with blocks (A u; v -B) and (B u; v -A)."""
    ring = _ring([mf.f] + [x for m in (mf.A, mf.B) for row in m for x in row])
    u, v = _fresh(u, ring), _fresh(v, ring + (u,))
    ring = ring + (u, v)
    U, V = MPoly.var(u, ring), MPoly.var(v, ring)
    n = mf.size
    zero = MPoly(ring)

    def block(a, b):
        top = [[a[i][j].extend(ring) for j in range(n)] + [U if i == j else zero for j in range(n)]
               for i in range(n)]
        bottom = [[V if i == j else zero for j in range(n)] + [-b[i][j].extend(ring) for j in range(n)]
                  for i in range(n)]
        return top + bottom

    out = MatFac(mf.f.extend(ring) + U * V, block(mf.A, mf.B), block(mf.B, mf.A))
    if not verify_mf(out):
        raise AssertionError("doubled factorization failed its product check")
    return out


def one_by_one(f, a, b):
    return MatFac(f, [[a]], [[b]])


# ---------------------------------------------------------------- curve singularities

@dataclass
class HypersurfaceData:
    """f = f1 ... fn in k[x, y]; factors are taken as irreducible on trust."""
    factors: list
    variables: tuple = ("x", "y")

    def __post_init__(self):
        if not self.factors:
            raise MFError("at least one factor is needed")
        self.factors = [f.extend(self.variables) for f in self.factors]
        for f in self.factors:
            if f.constant_term():
                raise MFError(f"factor {f} is a unit")
        for i, j in itertools.combinations(range(self.n), 2):
            if self.factors[i].is_proportional(self.factors[j]):
                raise MFError(f"factors {i + 1} and {j + 1} generate the same ideal")

    @classmethod
    def parse(cls, text, variables=("x", "y")):
        return cls([MPoly.parse(t, variables) for t in text.split(",") if t.strip()], tuple(variables))

    @property
    def n(self):
        return len(self.factors)

    @property
    def f(self):
        return product(self.factors, self.variables)

    def linear_parts(self):
        return [f.linear_part(self.variables) for f in self.factors]

    def singular_factors(self):
        """1-based indices of factors lying in the square of the maximal ideal."""
        return [k + 1 for k, lp in enumerate(self.linear_parts()) if not any(lp)]

    def factor(self, k):
        return self.factors[k - 1]


def _check_perm(w, n):
    w = tuple(w) if w is not None else tuple(range(1, n + 1))
    if sorted(w) != list(range(1, n + 1)):
        raise MFError(f"{w} is not a permutation of 1..{n}")
    return w


def partial_product(data, w, i):
    w = _check_perm(w, data.n)
    return product([data.factor(w[k]) for k in range(i)], data.variables)


def s_i_factorization(data, w, i):
    """S/(f_w(1) ... f_w(i)) as the factorization (first i factors, remaining factors)."""
    w = _check_perm(w, data.n)
    if not 1 <= i <= data.n:
        raise MFError("index out of range")
    head = partial_product(data, w, i)
    tail = product([data.factor(w[k]) for k in range(i, data.n)], data.variables)
    return one_by_one(data.f, head, tail)


def classify_cluster_tilting(data):
    """Basic 2-cluster tilting objects (as chains of index sets) and rigid indecomposables."""
    bad = data.singular_factors()
    if bad:
        return {"has_cluster_tilting": False, "reason": f"factors {bad} have zero linear part",
                "cluster_tilting": [], "rigid": []}
    n = data.n
    objects = []
    for w in itertools.permutations(range(1, n + 1)):
        chain = tuple(frozenset(w[:i]) for i in range(1, n + 1))
        objects.append((w, chain))
    rigid = [frozenset(c) for r in range(1, n + 1) for c in itertools.combinations(range(1, n + 1), r)]
    if len({c for _, c in objects}) != len(objects) or len(set(rigid)) != len(rigid):
        raise AssertionError("index-set bookkeeping produced duplicates")
    assert len(objects) == factorial(n) and len(rigid) == 2 ** n - 1
    return {"has_cluster_tilting": True,
            "cluster_tilting": [{"permutation": list(w), "summands": [sorted(s) for s in chain]}
                                for w, chain in objects],
            "rigid": [sorted(s) for s in rigid],
            "counts": {"ct": len(objects), "rigid": len(rigid)}}


# ---------------------------------------------------------------- the 2-almost split complexes

@dataclass
class CyclicMap:
    """A matrix of multiplications between direct sums of cyclic modules S/(p)."""
    source: list        # generators p of the source summands
    target: list
    entries: list       # entries[r][c]: S/(source[c]) -> S/(target[r])

    def well_defined(self):
        return all(self.target[r].divides(self.entries[r][c] * self.source[c])
                   for r in range(len(self.target)) for c in range(len(self.source)))


def compose(g, f):
    return CyclicMap(f.source, g.target, matmul(g.entries, f.entries))


def vanishes(m):
    return all(m.target[r].divides(m.entries[r][c])
               for r in range(len(m.target)) for c in range(len(m.source)))


def _partner(g, variables):
    """A linear form whose linear part is independent of that of g."""
    lp = g.linear_part(variables)
    x, y = (MPoly.var(v, variables) for v in variables[:2])
    return y if lp[0] else x


def two_almost_split_complex(data, i, w=None, closing=None):
    """The displayed complexes ending at S_i, with well-definedness and composition checks.

    For i = n the last map needs an extra element ``closing`` completing f_n to
    a generating pair of the maximal ideal; by default a coordinate with the
    complementary linear part is used.
    """
    w = _check_perm(w, data.n)
    n = data.n
    if not 1 <= i <= n:
        raise MFError("index out of range")
    vs = data.variables
    f = [None] + [data.factor(k) for k in w]
    p = [partial_product(data, w, k) for k in range(n + 1)]
    one = MPoly.const(1, vs)
    if i < n:
        maps = [
            CyclicMap([p[i]], [p[i + 1], p[i - 1]], [[f[i + 1]], [-one]]),
            CyclicMap([p[i + 1], p[i - 1]], [p[i + 1], p[i - 1]],
                      [[f[i], f[i] * f[i + 1]], [one, f[i + 1]]]),
            CyclicMap([p[i + 1], p[i - 1]], [p[i]], [[-one, f[i]]]),
        ]
        terms = [f"S{i}", f"S{i + 1}+S{i - 1}", f"S{i + 1}+S{i - 1}", f"S{i}"]
    else:
        extra = closing if closing is not None else _partner(f[n], vs)
        maps = [
            CyclicMap([p[n - 1]], [p[n], p[n - 1]], [[f[n]], [-extra]]),
            CyclicMap([p[n], p[n - 1]], [p[n]], [[extra, f[n]]]),
        ]
        terms = [f"S{n - 1}", f"S{n}+S{n - 1}", f"S{n}"]
    defined = [m.well_defined() for m in maps]
    comps = [vanishes(compose(b, a)) for a, b in zip(maps, maps[1:])]
    return {
        "i": i,
        "terms": terms,
        "maps": [[[str(x) for x in row] for row in m.entries] for m in maps],
        "well_defined": defined,
        "compositions_vanish": comps,
        "holds": all(defined) and all(comps),
        "note": "only the complex property is checked, not exactness",
    }


# ---------------------------------------------------------------- stable endomorphism quivers

def ideal_is_maximal_pair(g, h, variables=("x", "y")):
    """Whether (g, h) is the maximal ideal: both vanish at 0 with independent linear parts."""
    lg, lh = g.linear_part(variables), h.linear_part(variables)
    if not any(lg) or not any(lh):
        raise MFError("both elements need a nonzero linear part")
    if g.constant_term() or h.constant_term():
        raise MFError("both elements must vanish at the origin")
    if len(variables) != 2:
        raise MFError("the criterion is for two variables")
    return lg[0] * lh[1] - lg[1] * lh[0] != 0


def stable_end_quiver(data, w=None):
    w = _check_perm(w, data.n)
    verts = [f"S{k}" for k in range(1, data.n)]
    arrows = []
    for k in range(1, data.n - 1):
        arrows.append(Arrow(f"r{k}", f"S{k}", f"S{k + 1}"))
        arrows.append(Arrow(f"l{k}", f"S{k + 1}", f"S{k}"))
    for k in range(1, data.n):
        if not ideal_is_maximal_pair(data.factor(w[k - 1]), data.factor(w[k]), data.variables):
            arrows.append(Arrow(f"loop{k}", f"S{k}", f"S{k}"))
    return Quiver(verts, arrows)


def loop_pattern(q):
    loops = {q.vertices[q.src[k]] for k in range(q.n_arrows) if q.src[k] == q.tgt[k]}
    return [v in loops for v in q.vertices]


# ---------------------------------------------------------------- simple curve singularities

def simple_singularity_polynomial(kind, m):
    """Rational forms of the simple plane curve singularities."""
    x, y = MPoly.var("x", ("x", "y")), MPoly.var("y", ("x", "y"))
    if kind == "A" and m >= 1:
        return x ** 2 - y ** (m + 1)
    if kind == "D" and m >= 4:
        return x ** 2 * y - y ** (m - 1)
    if kind == "E" and m == 6:
        return x ** 3 - y ** 4
    if kind == "E" and m == 7:
        return x ** 3 + x * y ** 3
    if kind == "E" and m == 8:
        return x ** 3 - y ** 5
    raise MFError(f"no simple singularity of type {kind}{m}")


def parity_rule(kind, m):
    return (kind == "A" and m % 2 == 1) or (kind == "D" and m % 2 == 0)


def simple_singularity_has_ct(kind, m):
    f = simple_singularity_polynomial(kind, m)
    _, factors = sympy.factor_list(f.to_sympy(), *[sympy.Symbol(v) for v in f.vars])
    polys = []
    for g, mult in factors:
        p = MPoly.from_sympy(g, f.vars)
        polys.extend([p] * mult)
    verdict = all(any(p.linear_part()) for p in polys)
    return {"type": f"{kind}{m}", "f": str(f), "factors": [str(p) for p in polys],
            "verdict": verdict, "parity_rule": parity_rule(kind, m)}


# ---------------------------------------------------------------- lifting and McKay quivers

def knorrer_lift(data, w=None, u="u"):
    w = _check_perm(w, data.n)
    ring = data.variables + (_fresh(u, data.variables),)
    U = MPoly.var(ring[-1], ring)
    return [(U, partial_product(data, w, i).extend(ring)) for i in range(1, data.n + 1)]


def all_knorrer_lifts(data):
    return {w: knorrer_lift(data, w) for w in itertools.permutations(range(1, data.n + 1))}


def _characters(order):
    orders = (order,) if isinstance(order, int) else tuple(order)
    if any(o < 1 for o in orders):
        raise MFError("group orders must be positive")
    return orders, list(itertools.product(*[range(o) for o in orders]))


def mckay_quiver(weights, order, d=None):
    """McKay quiver of a diagonal abelian group action with the given character weights."""
    d = len(weights) if d is None else d
    if len(weights) != d:
        raise MFError(f"expected {d} weights, got {len(weights)}")
    orders, chars = _characters(order)
    ws = [tuple(w) if not isinstance(w, int) else (w,) for w in weights]
    if any(len(w) != len(orders) for w in ws):
        raise MFError("weight vectors must match the group factors")

    def name(c):
        return ",".join(map(str, c)) if len(c) > 1 else str(c[0])

    arrows = []
    for c in chars:
        for t, w in enumerate(ws):
            target = tuple((a + b) % o for a, b, o in zip(c, w, orders))
            arrows.append(Arrow(f"x{t + 1}@{name(c)}", name(c), name(target), f"x{t + 1}"))
    return Quiver([name(c) for c in chars], arrows)
