"""Exact linear algebra on sparse vectors, fraction-free determinants, rank mod p."""

from __future__ import annotations

from bisect import insort
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, Sequence

import numpy as np

from .field import div, is_zero, normalize
from .poly import Poly

SparseVec = dict  # column -> nonzero scalar


def _clean(x):
    return normalize(x) if type(x) is Fraction else x


def _axpy(y: SparseVec, a, x: Mapping) -> None:
    """In place ``y -= a*x`` with pruning."""
    for k, v in x.items():
        w = y.get(k, 0) - a * v
        if is_zero(w):
            y.pop(k, None)
        else:
            y[k] = _clean(w)


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a span.

    Each stored row has a pivot equal to its smallest column with value 1.
    With ``track=True`` every row remembers its expression in terms of the
    labelled input vectors, which makes :meth:`express` possible.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._rows: dict = {}
        self._combo: dict = {}
        self._pivots: list = []

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping, label: Hashable = None) -> tuple[SparseVec, SparseVec]:
        r = {k: v for k, v in vec.items() if not is_zero(v)}
        combo: SparseVec = {label: 1} if self.track and label is not None else {}
        for piv in self._pivots:
            c = r.get(piv)
            if c is None:
                continue
            _axpy(r, c, self._rows[piv])
            if self.track:
                _axpy(combo, c, self._combo[piv])
        return r, combo

    def add(self, vec: Mapping, label: Hashable = None) -> bool:
        """Insert ``vec``; True when it enlarged the span."""
        r, combo = self.reduce(vec, label)
        if not r:
            return False
        piv = min(r)
        lead = r[piv]
        self._rows[piv] = {k: _clean(div(v, lead)) for k, v in r.items()}
        if self.track:
            self._combo[piv] = {k: _clean(div(v, lead)) for k, v in combo.items()}
        insort(self._pivots, piv)
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: Mapping) -> Optional[SparseVec]:
        """Coefficients of ``vec`` over the labelled inputs, or None if outside the span."""
        if not self.track:
            raise ValueError("express() needs a tracking basis")
        r, combo = self.reduce(vec)
        if r:
            return None
        return {k: _clean(-v) for k, v in combo.items() if not is_zero(v)}


def rank(rows: Iterable[Mapping]) -> int:
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    return eb.rank


def dense_to_sparse(row: Sequence) -> SparseVec:
    return {j: v for j, v in enumerate(row) if not is_zero(v)}


def nullspace(rows: Sequence[Mapping], ncols: int) -> list[SparseVec]:
    """Basis of ``{x : row . x = 0 for every row}``."""
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    # fully reduce stored rows so free variables read off directly
    piv_rows = {}
    for piv in sorted(eb._pivots, reverse=True):
        row = dict(eb._rows[piv])
        for q in list(row):
            if q != piv and q in piv_rows:
                _axpy(row, row[q], piv_rows[q])
        piv_rows[piv] = row
    free = [j for j in range(ncols) if j not in piv_rows]
    basis = []
    for f in free:
        v = {f: 1}
        for piv, row in piv_rows.items():
            c = row.get(f)
            if c is not None:
                v[piv] = _clean(-c)
        basis.append(v)
    return basis


def solve(columns: Sequence[Mapping], target: Mapping) -> Optional[list]:
    """Coefficients ``a`` with ``sum a_i columns[i] == target``, or None."""
    eb = EchelonBasis(track=True)
    for i, col in enumerate(columns):
        eb.add(col, label=i)
    coeffs = eb.express(target)
    if coeffs is None:
        return None
    return [coeffs.get(i, 0) for i in range(len(columns))]


def _exact_quotient(a, b):
    if isinstance(a, Poly):
        if isinstance(b, Poly):
            return a.exact_div(b)
        return a.scale(div(1, b))
    return _clean(div(a, b))


def det_bareiss(matrix: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination.

    Entries may be scalars or :class:`Poly` objects (exact polynomial division
    keeps every intermediate a polynomial).
    """
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(r) != n for r in matrix):
        raise ValueError("matrix is not square")
    m = [list(r) for r in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if _zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not _zero(m[i][k])), None)
            if swap is None:
                return _zero_like(m[0][0])
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _exact_quotient(num, prev) if not (isinstance(prev, int) and prev == 1) else num
            m[i][k] = _zero_like(m[k][k])
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def _zero(x) -> bool:
    if isinstance(x, Poly):
        return x.is_zero()
    return is_zero(x)


def _zero_like(x):
    return Poly.zero(x.nvars) if isinstance(x, Poly) else 0


# modular rank ---------------------------------------------------------------

def rank_mod_p(matrix, p: int) -> int:
    """Rank of an integer matrix over F_p (numpy, row reduction on int64)."""
    a = np.array(matrix, dtype=np.int64) % p
    if a.size == 0:
        return 0
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = np.nonzero(a[r + 1:, c])[0] + r + 1
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r


def nullspace_mod_p(matrix, p: int) -> list[np.ndarray]:
    """Basis of the right kernel of an integer matrix over F_p."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    pivcols = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivcols.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivcols]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivcols):
            v[pc] = (-a[i, f]) % p
        basis.append(v)
    return basis


def sparse_rows_to_modp(rows: Sequence[Mapping], ncols: int, scalar_map) -> np.ndarray:
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            out[i, j] = scalar_map(v)
    return out
