"""The module sl(n+1)/g with the adjoint action, via an explicit complement."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from ..exactalg import univariate as uv
from ..exactalg.field import is_zero, normalize
from ..exactalg.linalg import EchelonBasis, nullspace
from .algebra import LieAlgebraData, LieAlgebraError, bracket, mat_to_vec, unit, zeros


class NotSemisimpleError(LieAlgebraError):
    pass


def sl_basis(size: int) -> list:
    """Off-diagonal units ``E_ij`` (row-major) followed by ``E_ii - E_nn``."""
    out = []
    for i in range(size):
        for j in range(size):
            if i != j:
                out.append(unit(size, i, j))
    for i in range(size - 1):
        m = zeros(size)
        m[i][i] = 1
        m[size - 1][size - 1] = -1
        out.append(m)
    return out


@dataclass
class QuotientModule:
    algebra: LieAlgebraData
    complement: list
    action: list  # action[i][r][c]: coefficient of complement r in [g_i, complement c]
    grading: Optional[list] = None  # eigenvalue of ad(X) on each complement vector
    grading_element: Optional[int] = None
    kind: str = "standard"
    notes: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.complement)

    def act(self, i: int, vec: list) -> list:
        rho = self.action[i]
        return [_clean(sum((rho[r][c] * vec[c] for c in range(self.dim) if not is_zero(vec[c])), 0)) for r in range(self.dim)]

    def is_representation(self) -> bool:
        g = self.algebra
        d = self.dim
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                lhs = [[0] * d for _ in range(d)]
                for k, c in g.structure[i][j].items():
                    for r in range(d):
                        for s in range(d):
                            lhs[r][s] = lhs[r][s] + c * self.action[k][r][s]
                ai, aj = self.action[i], self.action[j]
                for r in range(d):
                    for s in range(d):
                        v = sum((ai[r][t] * aj[t][s] - aj[r][t] * ai[t][s] for t in range(d)), 0)
                        if not is_zero(_clean(v - lhs[r][s])):
                            return False
        return True

    def grading_summary(self) -> dict:
        if self.grading is None:
            return {}
        out: dict = {}
        for ev in self.grading:
            out[ev] = out.get(ev, 0) + 1
        return dict(sorted(out.items()))


def _clean(x):
    return normalize(x) if type(x) is Fraction else x


def _coords_basis(basis: list) -> EchelonBasis:
    eb = EchelonBasis(track=True)
    for i, m in enumerate(basis):
        eb.add(mat_to_vec(m), label=i)
    return eb


def _operator_matrix(op, basis: list, eb: EchelonBasis) -> list:
    """Matrix (columns = images) of a linear operator in the given basis."""
    d = len(basis)
    a = [[0] * d for _ in range(d)]
    for j, m in enumerate(basis):
        coords = eb.express(mat_to_vec(op(m)))
        if coords is None:
            raise LieAlgebraError("operator leaves the space")
        for i, c in coords.items():
            a[i][j] = c
    return a


def _matvec(a: list, v: dict) -> dict:
    out: dict = {}
    for j, x in v.items():
        for i in range(len(a)):
            if not is_zero(a[i][j]):
                out[i] = out.get(i, 0) + a[i][j] * x
    return {i: _clean(x) for i, x in out.items() if not is_zero(_clean(x))}


def minimal_polynomial(a: list) -> list:
    """Minimal polynomial (monic, low degree first) as the lcm of Krylov local polynomials."""
    d = len(a)
    total: list = [1]
    for start in range(d):
        eb = EchelonBasis(track=True)
        v = {start: 1}
        k = 0
        while True:
            coords = eb.express(v) if len(eb) else (None if v else {})
            if coords is not None:
                local = [_clean(-coords.get(i, 0)) for i in range(k)] + [1]
                break
            eb.add(v, label=k)
            v = _matvec(a, v)
            k += 1
        g = uv.gcd(total, local)
        total = uv.monic(uv.divmod_u(uv.mul(total, local), g)[0])
    return total


def ad_eigenvalues(a: list) -> list:
    """Distinct eigenvalues of a diagonalizable operator with rational spectrum."""
    mp = minimal_polynomial(a)
    if uv.degree(uv.gcd(mp, _derivative(mp))) > 0:
        raise NotSemisimpleError("minimal polynomial is not squarefree")
    roots = []
    for fac, mult in uv.rational_factors(mp):
        if len(fac) != 2:
            raise NotSemisimpleError("eigenvalues do not lie in the working field")
        roots.append(_clean(-fac[0]))
    return sorted(roots)


def _derivative(c: list) -> list:
    return uv.trim([i * c[i] for i in range(1, len(c))])


def quotient_module(
    g: LieAlgebraData,
    grading_element: Optional[int] = None,
    complement: str = "standard",
    seed: int = 0,
) -> QuotientModule:
    """``sl(n+1)/g`` realized on a complement of ``g``.

    ``complement`` is ``standard`` (greedy over the unit basis), ``random``
    (greedy over random integer combinations), or ignored when a grading
    element is given, in which case the complement is a sum of ``ad(X)``
    eigenspace pieces and ``grading`` records the eigenvalues.
    """
    size = g.n + 1
    sl = sl_basis(size)
    target = len(sl) - g.dim
    eb = EchelonBasis()
    for m in g.basis:
        eb.add(mat_to_vec(m))
    chosen: list = []
    grading = None
    if grading_element is not None:
        x = g.basis[grading_element]
        sl_eb = _coords_basis(sl)
        ad = _operator_matrix(lambda m: bracket(x, m), sl, sl_eb)
        eigen = ad_eigenvalues(ad)
        grading = []
        for mu in eigen:
            shifted = [[_clean(ad[i][j] - (mu if i == j else 0)) for j in range(len(sl))] for i in range(len(sl))]
            rows = [{j: v for j, v in enumerate(r) if not is_zero(v)} for r in shifted]
            for vec in nullspace(rows, len(sl)):
                mat = zeros(size)
                for j, c in vec.items():
                    for r in range(size):
                        for s in range(size):
                            if not is_zero(sl[j][r][s]):
                                mat[r][s] = _clean(mat[r][s] + c * sl[j][r][s])
                if eb.add(mat_to_vec(mat)):
                    chosen.append(mat)
                    grading.append(mu)
    elif complement == "standard":
        for m in sl:
            if eb.add(mat_to_vec(m)):
                chosen.append(m)
    elif complement == "random":
        rng = np.random.default_rng(seed)
        while len(chosen) < target:
            coeffs = [int(c) for c in rng.integers(-3, 4, size=len(sl))]
            mat = zeros(size)
            for c, m in zip(coeffs, sl):
                if c:
                    for r in range(size):
                        for s in range(size):
                            if m[r][s]:
                                mat[r][s] = mat[r][s] + c * m[r][s]
            if eb.add(mat_to_vec(mat)):
                chosen.append(mat)
    else:
        raise ValueError(f"unknown complement kind {complement!r}")
    if len(chosen) != target:
        raise LieAlgebraError(f"complement has dimension {len(chosen)}, expected {target}")
    full = EchelonBasis(track=True)
    for i, m in enumerate(chosen):
        full.add(mat_to_vec(m), label=i)
    for j, m in enumerate(g.basis):
        full.add(mat_to_vec(m), label=target + j)
    action = []
    for xm in g.basis:
        rho = [[0] * target for _ in range(target)]
        for c, m in enumerate(chosen):
            coords = full.express(mat_to_vec(bracket(xm, m)))
            if coords is None:
                raise LieAlgebraError("bracket left sl(n+1)")
            for r, v in coords.items():
                if r < target:
                    rho[r][c] = v
        action.append(rho)
    kind = "graded" if grading_element is not None else complement
    return QuotientModule(g, chosen, action, grading, grading_element, kind)
