"""Independent brute-force oracles shared by several test modules."""

import cmath


def character_oracle(weights, order):
    """Arrow multiplicities i -> j as <chi_i chi_V, chi_j> over the cyclic group, numerically."""
    zeta = cmath.exp(2j * cmath.pi / order)

    def chi(a, g):
        return zeta ** (a * g)

    out = {}
    for i in range(order):
        for j in range(order):
            total = sum(chi(i, g) * sum(chi(w, g) for w in weights) * chi(j, g).conjugate()
                        for g in range(order)) / order
            m = round(total.real)
            assert abs(total - m) < 1e-9
            if m:
                out[(str(i), str(j))] = m
    return out


def arrow_counts(q):
    out = {}
    for k in range(q.n_arrows):
        key = (q.vertices[q.src[k]], q.vertices[q.tgt[k]])
        out[key] = out.get(key, 0) + 1
    return out
