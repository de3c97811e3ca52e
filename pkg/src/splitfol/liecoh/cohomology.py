"""Chevalley-Eilenberg cochains and cohomology with coefficients in a quotient module."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional

from ..exactalg.field import is_zero, normalize
from ..exactalg.linalg import EchelonBasis, rank_mod_p, sparse_rows_to_modp
from ..exactalg.modp import select_primes
from .module import QuotientModule


def _clean(x):
    return normalize(x) if type(x) is Fraction else x


def _sort_sign(idx):
    if len(set(idx)) != len(idx):
        return 0, ()
    inv = sum(1 for a, b in combinations(idx, 2) if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(idx))


@dataclass
class Cochain:
    """Alternating ``k``-linear map given on increasing index tuples."""

    degree: int
    values: dict  # sorted tuple -> list of module coordinates

    def value(self, idx: tuple, dim: int) -> list:
        sign, key = _sort_sign(idx)
        if sign == 0 or key not in self.values:
            return [0] * dim
        v = self.values[key]
        return list(v) if sign > 0 else [_clean(-x) for x in v]

    def is_zero(self) -> bool:
        return all(is_zero(x) for v in self.values.values() for x in v)


def ce_coboundary(f: Cochain, mod: QuotientModule) -> Cochain:
    """``(df)(v_0..v_k) = sum_i (-1)^i v_i . f(..^v_i..)
    + sum_{i<j} (-1)^{i+j} f([v_i, v_j], ..^v_i..^v_j..)``."""
    g = mod.algebra
    k = f.degree
    dim = mod.dim
    out = {}
    for t in combinations(range(g.dim), k + 1):
        acc = [0] * dim
        for i in range(k + 1):
            rest = t[:i] + t[i + 1:]
            img = mod.act(t[i], f.value(rest, dim))
            s = -1 if i % 2 else 1
            acc = [a + s * b for a, b in zip(acc, img)]
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = t[:i] + t[i + 1:j] + t[j + 1:]
                s = -1 if (i + j) % 2 else 1
                for l, c in g.structure[t[i]][t[j]].items():
                    val = f.value((l,) + rest, dim)
                    acc = [a + s * c * b for a, b in zip(acc, val)]
        acc = [_clean(a) for a in acc]
        if any(not is_zero(a) for a in acc):
            out[t] = acc
    return Cochain(k + 1, out)


def _index(k: int, gdim: int):
    tuples = list(combinations(range(gdim), k))
    return tuples, {t: i for i, t in enumerate(tuples)}


def coboundary_rows(mod: QuotientModule, k: int) -> tuple[list[dict], int]:
    """Sparse rows of ``d^k : C^k -> C^{k+1}``; columns are ``(tuple index)*dim + m``."""
    g = mod.algebra
    dim = mod.dim
    src, src_idx = _index(k, g.dim)
    tgt, _ = _index(k + 1, g.dim)
    ncols = len(src) * dim
    rows: list[dict] = []
    for t in tgt:
        block = [dict() for _ in range(dim)]
        for i in range(k + 1):
            rest = t[:i] + t[i + 1:]
            s = -1 if i % 2 else 1
            base = src_idx[rest] * dim
            rho = mod.action[t[i]]
            for r in range(dim):
                row = block[r]
                for c in range(dim):
                    v = rho[r][c]
                    if not is_zero(v):
                        row[base + c] = row.get(base + c, 0) + s * v
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = t[:i] + t[i + 1:j] + t[j + 1:]
                s = -1 if (i + j) % 2 else 1
                for l, c in mod.algebra.structure[t[i]][t[j]].items():
                    sg, key = _sort_sign((l,) + rest)
                    if sg == 0:
                        continue
                    base = src_idx[key] * dim
                    for m in range(dim):
                        row = block[m]
                        row[base + m] = row.get(base + m, 0) + s * sg * c
        for row in block:
            clean = {cc: _clean(v) for cc, v in row.items() if not is_zero(_clean(v))}
            rows.append(clean)
    return rows, ncols


def exact_rank(rows: list[dict]) -> int:
    eb = EchelonBasis()
    for r in rows:
        if r:
            eb.add(r)
    return eb.rank


@dataclass
class CohomologyResult:
    degree: int
    dimension: int
    cochain_dims: dict
    ranks: dict
    modular_ranks: dict = field(default_factory=dict)

    @property
    def modular_agrees(self) -> bool:
        return all(all(r == self.ranks[k] for r in rs.values()) for k, rs in self.modular_ranks.items())


def _rank_of(mod: QuotientModule, k: int, cache: dict) -> int:
    if k < 0 or k >= mod.algebra.dim:
        return 0
    if k not in cache:
        rows, _ = coboundary_rows(mod, k)
        cache[k] = (exact_rank(rows), rows)
    return cache[k][0]


def cohomology_dim(
    mod: QuotientModule,
    k: int,
    crosscheck_primes: int = 0,
    cache: Optional[dict] = None,
) -> CohomologyResult:
    """``dim H^k = dim C^k - rank d^k - rank d^{k-1}`` with exact ranks.

    With ``crosscheck_primes > 0`` the ranks are recomputed modulo that many
    large primes; they must not exceed the exact rank and normally agree.
    """
    if k not in (0, 1, 2):
        raise ValueError("cohomology is only implemented in degrees 0, 1, 2")
    g = mod.algebra
    cache = {} if cache is None else cache
    ck = comb(g.dim, k) * mod.dim
    r_k = _rank_of(mod, k, cache)
    r_prev = _rank_of(mod, k - 1, cache)
    res = CohomologyResult(k, ck - r_k - r_prev, {k: ck}, {k: r_k, k - 1: r_prev})
    if crosscheck_primes:
        values = [v for deg in (k - 1, k) if deg in cache for r in cache[deg][1] for v in r.values()]
        ctxs = select_primes(values, crosscheck_primes, start=1_000_000, radicand=g.radicand)
        for deg in (k - 1, k):
            if deg not in cache:
                continue
            rows = cache[deg][1]
            ncols = comb(g.dim, deg) * mod.dim
            res.modular_ranks[deg] = {
                ctx.p: rank_mod_p(sparse_rows_to_modp(rows, ncols, ctx.scalar), ctx.p) if rows else 0
                for ctx in ctxs
            }
    return res


def coboundary_is_complex(mod: QuotientModule, k: int) -> bool:
    """``d^{k+1} d^k == 0`` as exact matrices."""
    g = mod.algebra
    if k + 2 > g.dim:
        return True
    rows_k, ncols = coboundary_rows(mod, k)
    rows_k1, _ = coboundary_rows(mod, k + 1)
    # columns of d^k: iterate basis cochains
    cols: dict = {}
    for r, row in enumerate(rows_k):
        for c, v in row.items():
            cols.setdefault(c, {})[r] = v
    for row in rows_k1:
        for c, col in cols.items():
            s = 0
            for r, v in col.items():
                w = row.get(r)
                if w is not None:
                    s = s + w * v
            if not is_zero(_clean(s)):
                return False
    return True
