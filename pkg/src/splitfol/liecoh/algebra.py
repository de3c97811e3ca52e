"""Matrix Lie algebras acting linearly on C^{n+1}.

A matrix ``A`` stands for the linear vector field ``X_A = sum_i (A z)_i d/dz_i``.
The bracket is that of vector fields, ``[X_A, X_B] = X_{BA - AB}``, so every
structure constant here agrees with the bracket computed by
:func:`splitfol.multical.lie_bracket` on the corresponding fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..exactalg.field import common_radicand, format_scalar, is_zero, normalize
from ..exactalg.linalg import EchelonBasis
from ..multical import VField

Matrix = list  # list of rows of exact scalars


class LieAlgebraError(ValueError):
    pass


class NotClosedError(LieAlgebraError):
    def __init__(self, i: int, j: int, names: Sequence[str]):
        self.pair = (i, j)
        super().__init__(f"[{names[i]}, {names[j]}] is not in the span of the basis")


def _clean(x):
    return normalize(x) if type(x) is Fraction else x


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(n):
            s = 0
            for k in range(n):
                if not is_zero(ai[k]) and not is_zero(b[k][j]):
                    s = s + ai[k] * b[k][j]
            row.append(_clean(s))
        out.append(row)
    return out


def matsub(a: Matrix, b: Matrix) -> Matrix:
    return [[_clean(x - y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return [[_clean(x + y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a: Matrix, c) -> Matrix:
    return [[_clean(x * c) for x in r] for r in a]


def bracket(a: Matrix, b: Matrix) -> Matrix:
    """Vector-field bracket of linear fields: ``BA - AB``."""
    return matsub(matmul(b, a), matmul(a, b))


def trace(a: Matrix):
    s = 0
    for i in range(len(a)):
        s = s + a[i][i]
    return _clean(s)


def zeros(n: int) -> Matrix:
    return [[0] * n for _ in range(n)]


def unit(n: int, i: int, j: int) -> Matrix:
    m = zeros(n)
    m[i][j] = 1
    return m


def mat_to_vec(a: Matrix) -> dict:
    """Sparse coordinates of a matrix, entries in row-major order."""
    n = len(a)
    return {i * n + j: a[i][j] for i in range(n) for j in range(n) if not is_zero(a[i][j])}


def vec_to_mat(v: dict, n: int) -> Matrix:
    m = zeros(n)
    for k, x in v.items():
        m[k // n][k % n] = x
    return m


def format_matrix(a: Matrix) -> str:
    return "\n".join(" ".join(format_scalar(x) for x in r) for r in a)


@dataclass
class LieAlgebraData:
    n: int
    basis: list
    structure: list  # structure[i][j] = {k: c_ij^k}
    names: list = field(default_factory=list)
    radicand: Optional[int] = None
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    def fields(self) -> list[VField]:
        return [VField.from_matrix(a) for a in self.basis]

    def bracket_coords(self, i: int, j: int) -> dict:
        return self.structure[i][j]

    def format_bracket(self, i: int, j: int) -> str:
        terms = self.structure[i][j]
        if not terms:
            return f"[{self.names[i]},{self.names[j]}] = 0"
        body = " + ".join(f"({format_scalar(c)}){self.names[k]}" for k, c in sorted(terms.items()))
        return f"[{self.names[i]},{self.names[j]}] = {body}"

    def jacobi_holds(self) -> bool:
        d = self.dim
        for a in range(d):
            for b in range(a + 1, d):
                for c in range(b + 1, d):
                    total: dict = {}
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        for k, coef in self.structure[y][z].items():
                            for m, coef2 in self.structure[x][k].items():
                                total[m] = total.get(m, 0) + coef * coef2
                    if any(not is_zero(_clean(v)) for v in total.values()):
                        return False
        return True


def structure_constants(
    basis: Sequence[Matrix],
    names: Optional[Sequence[str]] = None,
    label: str = "",
) -> LieAlgebraData:
    """Validate a basis of traceless matrices and compute ``c_ij^k``.

    Raises :class:`NotClosedError` naming the first bracket outside the span.
    """
    basis = [[[_clean(x) for x in row] for row in m] for m in basis]
    if not basis:
        raise LieAlgebraError("empty basis")
    size = len(basis[0])
    if any(len(m) != size or any(len(r) != size for r in m) for m in basis):
        raise LieAlgebraError("basis matrices must be square of one size")
    names = list(names) if names else [f"b{i}" for i in range(len(basis))]
    for nm, m in zip(names, basis):
        if not is_zero(trace(m)):
            raise LieAlgebraError(f"{nm} has nonzero trace {format_scalar(trace(m))}")
    eb = EchelonBasis(track=True)
    for i, m in enumerate(basis):
        if not eb.add(mat_to_vec(m), label=i):
            raise LieAlgebraError(f"{names[i]} depends linearly on the previous basis elements")
    d = len(basis)
    structure = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            coords = eb.express(mat_to_vec(bracket(basis[i], basis[j])))
            if coords is None:
                raise NotClosedError(i, j, names)
            structure[i][j] = dict(sorted(coords.items()))
            structure[j][i] = {k: _clean(-v) for k, v in structure[i][j].items()}
    rad = common_radicand(x for m in basis for r in m for x in r)
    return LieAlgebraData(size - 1, basis, structure, names, rad, label)
