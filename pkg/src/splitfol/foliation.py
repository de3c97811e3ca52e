"""Distributions defined by twisted forms: construction from vector fields and pointwise checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .exactalg.field import div
from .exactalg.linalg import solve
from .multical import (
    PForm,
    VField,
    contract_volume,
    exterior_derivative,
    interior_product,
    proportionality,
    wedge,
)


@dataclass
class Distribution:
    n: int
    q: int
    omega: PForm
    degree: Optional[int]
    splitting_degrees: Optional[list[int]] = None
    fields: Optional[list[VField]] = None

    @property
    def nonzero(self) -> bool:
        return not self.omega.is_zero()


@dataclass
class CheckResult:
    passed: bool
    counterexample: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def omega_from_fields(fields: Sequence[VField]) -> Distribution:
    """The form ``i_{X_1} ... i_{X_k} i_R Omega`` and its bookkeeping.

    A zero result is returned (with ``degree=None``) rather than raised.
    """
    fields = list(fields)
    if not fields:
        raise ValueError("need at least one field")
    nv = fields[0].nvars
    n = nv - 1
    q = n - len(fields)
    if q < 0:
        raise ValueError("too many fields for the ambient dimension")
    degs = []
    for x in fields:
        d = x.degree()
        if d is None:
            raise ValueError(f"field is not homogeneous: {x!r}")
        degs.append(d)
    omega = contract_volume(fields + [VField.radial(nv)])
    cd = omega.coefficient_degree()
    return Distribution(
        n=n,
        q=q,
        omega=omega,
        degree=None if cd is None else cd - 1,
        splitting_degrees=[1 - d for d in degs],
        fields=fields,
    )


def check_descends(w: PForm) -> CheckResult:
    """``i_R w = 0`` and homogeneity; ``detail`` carries the degree on success."""
    cd = w.coefficient_degree()
    if cd is None and not w.is_zero():
        return CheckResult(False, None, "coefficients are not homogeneous of a single degree")
    if w.arity == 0:
        return CheckResult(w.is_zero(), None, "0-form")
    c = interior_product(VField.radial(w.nvars), w)
    if not c.is_zero():
        idx = next(iter(c.terms))
        return CheckResult(False, idx, f"i_R w has nonzero coefficient at {idx}")
    return CheckResult(True, None, f"degree {cd - 1 if cd is not None else 'undefined'}")


def descended_degree(w: PForm) -> Optional[int]:
    cd = w.coefficient_degree()
    return None if cd is None else cd - 1


def _contract_multivector(v: tuple, w: PForm) -> PForm:
    """``i_{e_{v_0}} i_{e_{v_1}} ... w`` for a constant basis multivector."""
    for j in reversed(v):
        w = interior_product(VField.coordinate(w.nvars, j), w)
    return w


def _basis_multivectors(nvars: int, k: int):
    return combinations(range(nvars), k)


def check_pluecker(w: PForm) -> CheckResult:
    """``(i_v w) ^ w = 0`` for every basis ``(q-1)``-multivector ``v``."""
    if w.arity < 1:
        raise ValueError("Pluecker relations need arity >= 1")
    if 2 * w.arity - 1 > w.nvars:
        return CheckResult(True, None, "wedge lands beyond top degree")
    for v in _basis_multivectors(w.nvars, w.arity - 1):
        if not wedge(_contract_multivector(v, w), w).is_zero():
            return CheckResult(False, v, f"(i_v w) ^ w != 0 for v = {v}")
    return CheckResult(True)


def check_integrability(w: PForm) -> CheckResult:
    """``(i_v w) ^ dw = 0`` for every basis ``(q-1)``-multivector ``v``."""
    if w.arity < 1:
        raise ValueError("integrability needs arity >= 1")
    if w.arity == w.nvars:
        return CheckResult(True, None, "top-degree form")
    dw = exterior_derivative(w)
    if 2 * w.arity > w.nvars:
        return CheckResult(True, None, "wedge lands beyond top degree")
    for v in _basis_multivectors(w.nvars, w.arity - 1):
        if not wedge(_contract_multivector(v, w), dw).is_zero():
            return CheckResult(False, v, f"(i_v w) ^ dw != 0 for v = {v}")
    return CheckResult(True)


# normalization of the defining fields ---------------------------------------

@dataclass
class RadialShiftResult:
    fields: list[VField]
    constant: object
    lambdas: list
    d_eta_matches: bool
    eta_preserved: bool


class RadialShiftError(ValueError):
    pass


def radial_shift_normalize(fields: Sequence[VField]) -> RadialShiftResult:
    """Adjust ``X_i`` by multiples of ``R`` so that ``d eta`` becomes a pure contraction.

    With ``eta = i_{X_1}...i_{X_q} i_R Omega`` and
    ``c = (-1)^q (n + 1 - q + sum deg X_i)``, returns ``X~_i = X_i + (lambda_i/c) R``
    such that ``d eta = c i_{X~_1}...i_{X~_q} Omega``.
    """
    fields = list(fields)
    q = len(fields)
    nv = fields[0].nvars
    n = nv - 1
    degs = [x.degree() for x in fields]
    if any(d is None for d in degs):
        raise RadialShiftError("fields must be homogeneous")
    c = (-1) ** q * (n + 1 - q + sum(degs))
    if c == 0:
        raise RadialShiftError("the normalizing constant vanishes")
    r = VField.radial(nv)
    eta = contract_volume(fields + [r])
    residual = exterior_derivative(eta) - contract_volume(fields).scale(c)
    basis = []
    for i in range(q):
        swapped = fields[:i] + [r] + fields[i + 1:]
        basis.append(contract_volume(swapped))
    lambdas = _solve_form_combination(basis, residual)
    if lambdas is None:
        raise RadialShiftError("residual is not a combination of the R-substituted contractions")
    new = [x + r.scale(div(lam, c)) if lam != 0 else x for x, lam in zip(fields, lambdas)]
    ok1 = exterior_derivative(eta) == contract_volume(new).scale(c)
    ok2 = contract_volume(new + [r]) == eta
    return RadialShiftResult(new, c, lambdas, ok1, ok2)


def _form_vector(w: PForm, keys: dict) -> dict:
    vec = {}
    for idx, f in w.terms.items():
        for k, v in f.terms.items():
            col = keys.setdefault((idx, k), len(keys))
            vec[col] = v
    return vec


def _solve_form_combination(basis: Sequence[PForm], target: PForm) -> Optional[list]:
    keys: dict = {}
    cols = [_form_vector(b, keys) for b in basis]
    tgt = _form_vector(target, keys)
    return solve(cols, tgt)


# deformation tangent conditions ----------------------------------------------

@dataclass
class TangentResult:
    passed: bool
    counterexample: Optional[tuple] = None
    secondary: Optional[bool] = None
    detail: str = ""

    def __bool__(self):
        return self.passed


def deformation_tangent_check(theta: PForm, eta: PForm, mode: str = "codim1") -> TangentResult:
    """First-order conditions for ``theta + eps*eta`` to stay integrable / decomposable.

    ``codim1``: ``theta ^ d eta + eta ^ d theta = 0``; the equivalent
    ``d theta ^ d eta = 0`` is evaluated too and reported as ``secondary``.
    ``grass``: ``i_v(eta) ^ theta + i_v(theta) ^ eta = 0`` on basis multivectors.
    """
    if theta.nvars != eta.nvars or theta.arity != eta.arity:
        raise ValueError("forms must have the same shape")
    if mode == "codim1":
        if theta.arity != 1:
            raise ValueError("codim1 mode expects 1-forms")
        a = wedge(theta, exterior_derivative(eta)) + wedge(eta, exterior_derivative(theta))
        secondary = None
        if theta.nvars >= 4:
            secondary = wedge(exterior_derivative(theta), exterior_derivative(eta)).is_zero()
        if a.is_zero():
            return TangentResult(True, None, secondary)
        return TangentResult(False, next(iter(a.terms)), secondary, "theta^d eta + eta^d theta != 0")
    if mode == "grass":
        if 2 * theta.arity - 1 > theta.nvars:
            return TangentResult(True, None, None, "wedge lands beyond top degree")
        for v in _basis_multivectors(theta.nvars, theta.arity - 1):
            a = wedge(_contract_multivector(v, eta), theta) + wedge(_contract_multivector(v, theta), eta)
            if not a.is_zero():
                return TangentResult(False, v, None, f"bilinear Pluecker condition fails at v = {v}")
        return TangentResult(True)
    raise ValueError(f"unknown mode {mode!r}")


# linear pull-back -------------------------------------------------------------

@dataclass
class PullbackResult:
    distribution: Distribution
    sign: int = 1
    notes: list = field(default_factory=list)


def pullback_linear(dist: Distribution, m: int) -> PullbackResult:
    """Pull back along the projection forgetting the last ``m`` coordinates.

    The form keeps its coefficients; when defining fields are known, the new
    field list is ``X_1..X_k`` followed by ``d/dx_{n+1}..d/dx_{n+m}`` and
    the contraction is checked to reproduce the pulled-back form.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    nv = dist.n + 1 + m
    omega = dist.omega.extend(nv)
    res = PullbackResult(
        Distribution(
            n=dist.n + m,
            q=dist.q,
            omega=omega,
            degree=dist.degree,
            splitting_degrees=None if dist.splitting_degrees is None else list(dist.splitting_degrees) + [1] * m,
        )
    )
    if dist.fields is not None:
        lifted = [x.extend(nv) for x in dist.fields]
        extra = [VField.coordinate(nv, dist.n + 1 + j) for j in range(m)]
        fields = lifted + extra
        rebuilt = contract_volume(fields + [VField.radial(nv)])
        c = proportionality(omega, rebuilt)
        if c not in (1, -1):
            raise ArithmeticError("pulled-back form is not the contraction of the lifted fields")
        if c == -1:
            fields = [fields[0].scale(-1)] + fields[1:]
            res.notes.append("first field negated to match orientation")
        res.sign = c
        res.distribution.fields = fields
    return res
