"""Named example algebras."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from ..exactalg.field import normalize
from .algebra import LieAlgebraData, LieAlgebraError, matscale, structure_constants, zeros


def diagonal_weights(n: int, q: int, seed: int = 0) -> list[list]:
    """Deterministic generic traceless rational weights for ``diagonal``.

    Rows are small random integers shifted to trace zero, redrawn until every
    maximal minor of the matrix with the all-ones row on top is nonzero (and,
    for ``q = 1``, until the residues of the resulting logarithmic form are
    pairwise distinct).
    """
    from itertools import combinations

    import numpy as np

    from ..exactalg.linalg import det_bareiss

    k = n - q
    rng = np.random.default_rng([seed, n, q])
    while True:
        raw = rng.integers(-9, 10, size=(k, n + 1))
        rows = []
        for r in raw:
            mean = Fraction(int(r.sum()), n + 1)
            rows.append([normalize(Fraction(int(x)) - mean) for x in r])
        full = [[1] * (n + 1)] + rows
        minors = [det_bareiss([[row[c] for c in cols] for row in full]) for cols in combinations(range(n + 1), k + 1)]
        if any(m == 0 for m in minors):
            continue
        if q == 1:
            residues = [(-1) ** i * minors[n - i] for i in range(n + 1)]
            if len(set(residues)) != n + 1:
                continue
        return rows


def diagonal(n: int, q: int = 1, weights: Optional[Sequence[Sequence]] = None) -> LieAlgebraData:
    if weights is None:
        weights = diagonal_weights(n, q)
    weights = [list(r) for r in weights]
    if len(weights) != n - q:
        raise LieAlgebraError(f"need {n - q} weight rows for n={n}, q={q}")
    mats = []
    for r in weights:
        if len(r) != n + 1:
            raise LieAlgebraError("each weight row needs n+1 entries")
        m = zeros(n + 1)
        for i, w in enumerate(r):
            m[i][i] = w
        mats.append(m)
    return structure_constants(mats, [f"X{k + 1}" for k in range(len(mats))], label=f"diagonal({n},{q})")


def chain(n: int, r: int) -> LieAlgebraData:
    """``X = diag(n - 2i)`` and ``Y_k = sum_i z_{i+k} d/dz_i`` for ``k = 1..n-r``."""
    if n < 2 or not 1 <= r <= n:
        raise LieAlgebraError(f"invalid chain parameters n={n}, r={r}")
    x = zeros(n + 1)
    for i in range(n + 1):
        x[i][i] = n - 2 * i
    mats, names = [x], ["X"]
    for k in range(1, n - r + 1):
        y = zeros(n + 1)
        for i in range(n + 1 - k):
            y[i][i + k] = 1
        mats.append(y)
        names.append(f"Y{k}")
    return structure_constants(mats, names, label=f"chain({n},{r})")


def infinito(n: int) -> LieAlgebraData:
    if n < 3:
        raise LieAlgebraError("needs n >= 3")
    g = chain(n, 2)
    g.label = f"infinito({n})"
    return g


def sl2_sym(r: int) -> LieAlgebraData:
    """sl(2) acting on binary forms of degree ``r``, coordinates ``z_i <-> x^(r-i) y^i``."""
    if r < 1:
        raise LieAlgebraError("needs r >= 1")
    h, y, yp = zeros(r + 1), zeros(r + 1), zeros(r + 1)
    for i in range(r + 1):
        h[i][i] = r - 2 * i
    for i in range(r):
        y[i][i + 1] = r - i
    for i in range(1, r + 1):
        yp[i][i - 1] = i
    return structure_constants([h, y, yp], ["h", "Y", "Y'"], label=f"sl2_sym({r})")


def aff_sym(r: int) -> LieAlgebraData:
    """The two-dimensional algebra ``X = sum (r-2i) z_i d/dz_i``, ``Y = sum z_{i+1} d/dz_i``."""
    if r < 2:
        raise LieAlgebraError("needs r >= 2")
    g = chain(r, r - 1)
    g.names = ["X", "Y"]
    g.label = f"aff_sym({r})"
    return g


def extension(n: int) -> LieAlgebraData:
    """g6 / g7: the Lie-closed extension of the chain algebra (representative with the
    smaller radical part first, i.e. ``b_0^(2) = sqrt(3)/2`` for n=7)."""
    from ..extsearch import build_extension_system, lie_closure_verdict, solve_extension_system

    if n not in (6, 7):
        raise LieAlgebraError("only n = 6 and n = 7 give Lie-closed extensions with one solution")
    sols = solve_extension_system(build_extension_system(n))
    closed = [s for s in sols if lie_closure_verdict(s).closed]
    # prefer the representative with positive radical part in b_0^(2)
    closed.sort(key=lambda s: 0 if _radical_sign(s.values[0]) >= 0 else 1)
    g = lie_closure_verdict(closed[0]).algebra
    g.label = f"g{n}"
    return g


def _radical_sign(x) -> int:
    b = getattr(x, "b", 0)
    return (b > 0) - (b < 0)


def two_dim_nonabelian() -> LieAlgebraData:
    """``h = diag(1, -1)``, ``e = z_0 d/dz_1`` with ``[h, e] = 2e``."""
    h = [[1, 0], [0, -1]]
    e = [[0, 0], [1, 0]]
    return structure_constants([e, h], ["e", "h"], label="aff2")


def rescaled(g: LieAlgebraData, factors: Sequence) -> LieAlgebraData:
    """Same algebra in the basis ``factors[i] * b_i``."""
    mats = [matscale(m, c) for m, c in zip(g.basis, factors)]
    out = structure_constants(mats, g.names, label=g.label)
    if out.radicand is None:
        out.radicand = g.radicand
    return out


def builtin_algebra(name: str, **params) -> LieAlgebraData:
    name = name.lower()
    if name == "diagonal":
        return diagonal(int(params["n"]), int(params.get("q", 1)), params.get("weights"))
    if name == "chain":
        return chain(int(params["n"]), int(params["r"]))
    if name == "infinito":
        return infinito(int(params["n"]))
    if name in ("g6", "g7"):
        return extension(int(name[1:]))
    if name == "sl2_sym":
        return sl2_sym(int(params["r"]))
    if name == "aff_sym":
        return aff_sym(int(params["r"]))
    raise LieAlgebraError(f"unknown builtin algebra {name!r}")
