"""Independent sympy computation of dim H^k(g, sl(N)/g), k = 0, 1, 2.

Uses the ordinary commutator AB - BA (the opposite convention gives an
isomorphic complex), a complement spanned by elementary matrices chosen by
sympy rank tests, and cochain matrices assembled from scratch.  Output is
frozen into the tests.
"""

from __future__ import annotations

from itertools import combinations

import sympy as sp

from splitfol.liecoh.builtins import builtin_algebra, diagonal, infinito, sl2_sym, two_dim_nonabelian


def sym(m):
    def conv(x):
        if hasattr(x, "d"):
            return conv(x.a) + conv(x.b) * sp.sqrt(x.d)
        return sp.nsimplify(x)
    return sp.Matrix([[conv(x) for x in row] for row in m])


def quotient(basis):
    size = basis[0].shape[0]
    vec = lambda m: list(m.reshape(size * size, 1))
    sl = []
    for i in range(size):
        for j in range(size):
            if i != j:
                e = sp.zeros(size); e[i, j] = 1; sl.append(e)
    for i in range(size - 1):
        e = sp.zeros(size); e[i, i] = 1; e[size - 1, size - 1] = -1; sl.append(e)
    span = [vec(b) for b in basis]
    comp = []
    for e in sl:
        if sp.Matrix([*span, vec(e)]).rank() > len(span):
            span.append(vec(e)); comp.append(e)
    full = sp.Matrix(span).T  # columns: g basis then complement

    def coords(m):
        return full.solve(sp.Matrix(vec(m)))

    k = len(basis)
    action = []
    for x in basis:
        cols = [list(coords(x * v - v * x))[k:] for v in comp]
        action.append(sp.Matrix(cols).T)
    struct = {}
    for a in range(k):
        for b in range(k):
            c = list(coords(basis[a] * basis[b] - basis[b] * basis[a]))
            struct[(a, b)] = c[:k]
    return action, struct, len(comp)


def cochain_matrix(action, struct, dim, k, gdim):
    src = list(combinations(range(gdim), k))
    tgt = list(combinations(range(gdim), k + 1))
    sidx = {t: i for i, t in enumerate(src)}
    m = sp.zeros(len(tgt) * dim, max(len(src) * dim, 1))

    def put(row0, key, sign, block):
        perm_sign = sp.combinatorics.Permutation([sorted(key).index(x) for x in key]).signature()
        base = sidx[tuple(sorted(key))] * dim
        m[row0:row0 + dim, base:base + dim] += sign * perm_sign * block

    for ti, t in enumerate(tgt):
        r0 = ti * dim
        for i in range(k + 1):
            rest = t[:i] + t[i + 1:]
            put(r0, rest, (-1) ** i, action[t[i]])
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = t[:i] + t[i + 1:j] + t[j + 1:]
                for l, c in enumerate(struct[(t[i], t[j])]):
                    if c != 0 and l not in rest:
                        put(r0, (l,) + rest, (-1) ** (i + j) * c, sp.eye(dim))
    return m if src else sp.zeros(len(tgt) * dim, 0)


def cohomology(g):
    basis = [sym(b) for b in g.basis]
    action, struct, dim = quotient(basis)
    gdim = len(basis)
    ranks = {-1: 0}
    for k in range(0, 3):
        if k + 1 > gdim:
            ranks[k] = 0
            continue
        ranks[k] = cochain_matrix(action, struct, dim, k, gdim).rank()
    return [sp.binomial(gdim, k) * dim - ranks[k] - ranks[k - 1] for k in range(3)]


CASES = {
    "aff2": two_dim_nonabelian(),
    "sl2_sym(2)": sl2_sym(2),
    "sl2_sym(3)": sl2_sym(3),
    "infinito(3)": infinito(3),
    "chain(4,3)": builtin_algebra("chain", n=4, r=3),
    "diagonal(3)": diagonal(3),
    "diagonal(2)": diagonal(2),
}

if __name__ == "__main__":
    for name, g in CASES.items():
        print(name, cohomology(g))
