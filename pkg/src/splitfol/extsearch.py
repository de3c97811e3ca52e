"""Extensions of the chain algebra by raising fields, and the affine T-operator.

The candidate algebra in dimension ``n`` has basis ``X, Y_1, ..., Y_{n-2}``
with ``X = diag(n - 2i)`` and ``Y_k = sum_i b_i^(k) z_{i+k} d/dz_i``.  The
normalizations are ``Y_1`` and ``Y_{n-2}`` with all coefficients 1 and
``[Y_1, Y_k] = -Y_{k+1}`` for ``k >= 2``, which forces the Pascal recurrence
``b_{i+1}^(k) = b_i^(k) + b_i^(k+1)``.  The free parameters are
``u_k = b_0^(k)`` for ``2 <= k <= n-3``; the equations say that brackets
``[Y_a, Y_c]`` with ``a + c`` in ``{n-1, n}`` vanish (no field of that weight).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .exactalg import univariate as uv
from .exactalg.field import FieldElem, common_radicand, div, format_scalar, is_zero
from .exactalg.linalg import det_bareiss
from .exactalg.poly import Poly, decode, homogeneous_monomials
from .liecoh.algebra import LieAlgebraData, NotClosedError, bracket, mat_to_vec, structure_constants, zeros
from .exactalg.linalg import EchelonBasis
from .multical import VField


class ExtensionError(ValueError):
    pass


@dataclass
class ExtensionSystem:
    n: int
    unknowns: list[str]
    table: dict  # (k, i) -> Poly in the unknowns
    equations: list[Poly]
    equation_labels: list[str]

    @property
    def nvars(self) -> int:
        return len(self.unknowns)


@dataclass
class ExtensionSolution:
    n: int
    values: tuple
    radicand: Optional[int]
    lie_closed: Optional[bool] = None
    failing_brackets: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def assignment(self) -> dict:
        return {f"b0^({k})": v for k, v in zip(range(2, self.n - 2), self.values)}

    def format(self) -> str:
        return "(" + ", ".join(format_scalar(v) for v in self.values) + ")"


def _table_recurrence(n: int) -> dict:
    m = max(n - 4, 0)
    table: dict = {}
    for i in range(n + 1 - (n - 2)):
        table[(n - 2, i)] = Poly.const(m, 1)
    for k in range(n - 3, 1, -1):
        table[(k, 0)] = Poly.var(m, k - 2)
        for i in range(n - k):
            table[(k, i + 1)] = table[(k, i)] + table[(k + 1, i)]
    for i in range(n):
        table[(1, i)] = Poly.const(m, 1)
    return table


def closed_form_coefficient(n: int, k: int, i: int) -> Poly:
    """``b_i^(k) = sum_l C(i, l) b_0^(k+l)`` with ``b_0^(n-2) = 1`` and zero beyond."""
    m = max(n - 4, 0)
    out = Poly.zero(m)
    for l in range(i + 1):
        kk = k + l
        if kk > n - 2:
            break
        b0 = Poly.const(m, 1) if kk == n - 2 else Poly.var(m, kk - 2)
        out = out + b0.scale(comb(i, l))
    return out


def bracket_coefficient(b: dict, a: int, c: int, i: int):
    """``[Y_a, Y_c]`` coefficient on ``z_{i+a+c} d/dz_i``."""
    return b[(c, i)] * b[(a, i + c)] - b[(a, i)] * b[(c, i + a)]


def build_extension_system(n: int) -> ExtensionSystem:
    if n < 5:
        raise ExtensionError("the extension system needs n >= 5")
    table = _table_recurrence(n)
    for k in range(2, n - 1):
        for i in range(n + 1 - k):
            if table[(k, i)] != closed_form_coefficient(n, k, i):
                raise AssertionError(f"recurrence and closed form disagree at k={k}, i={i}")
    eqs, labels = [], []
    for s in (n - 1, n):
        for a in range(1, n - 1):
            c = s - a
            if not a < c <= n - 2:
                continue
            for i in range(n + 1 - s):
                e = bracket_coefficient(table, a, c, i)
                if e:
                    eqs.append(e)
                    labels.append(f"[Y{a},Y{c}] at z{i + s} d{i}")
    unknowns = [f"b0^({k})" for k in range(2, n - 2)]
    return ExtensionSystem(n, unknowns, table, eqs, labels)


# solving ---------------------------------------------------------------------

def _linear_pivot(eqs: Sequence[Poly], alive: set) -> Optional[tuple[int, int]]:
    """An equation and variable where the variable occurs only as ``c * x`` with c constant."""
    for ei, e in enumerate(eqs):
        for v in sorted(alive):
            shift_terms = [(decode(k, e.nvars), c) for k, c in e.terms.items()]
            with_v = [(ex, c) for ex, c in shift_terms if ex[v]]
            if len(with_v) == 1:
                ex, c = with_v[0]
                if ex[v] == 1 and sum(ex) == 1:
                    return ei, v
    return None


def _solve_for(e: Poly, v: int) -> Poly:
    """``x_v`` as a polynomial in the others, from ``e = c x_v + rest = 0``."""
    lin = Poly.var(e.nvars, v)
    c = next(c for k, c in e.terms.items() if decode(k, e.nvars)[v])
    rest = e - lin.scale(c)
    return rest.scale(div(-1, c))


def _substitute_poly(e: Poly, v: int, expr: Poly) -> Poly:
    images = [Poly.var(e.nvars, i) for i in range(e.nvars)]
    images[v] = expr
    return e.compose_linear(images)


def _coeffs_in(e: Poly, v: int) -> list[Poly]:
    """Coefficients of ``e`` as a polynomial in ``x_v`` (low degree first)."""
    out: dict[int, dict] = {}
    for k, c in e.terms.items():
        ex = list(decode(k, e.nvars))
        d = ex[v]
        ex[v] = 0
        out.setdefault(d, {})[tuple(ex)] = c
    if not out:
        return []
    return [Poly.from_dict(e.nvars, out.get(d, {})) for d in range(max(out) + 1)]


def resultant(f: Poly, g: Poly, v: int) -> Poly:
    """Sylvester resultant of ``f`` and ``g`` with respect to ``x_v``."""
    a, b = _coeffs_in(f, v), _coeffs_in(g, v)
    da, db = len(a) - 1, len(b) - 1
    if da <= 0 or db <= 0:
        raise ValueError("both polynomials must involve the variable")
    size = da + db
    zero = Poly.zero(f.nvars)
    rows = []
    for r in range(db):
        row = [zero] * size
        for j, c in enumerate(reversed(a)):
            row[r + j] = c
        rows.append(row)
    for r in range(da):
        row = [zero] * size
        for j, c in enumerate(reversed(b)):
            row[r + j] = c
        rows.append(row)
    return det_bareiss(rows)


def _eval_partial(e: Poly, values: dict) -> Poly:
    return e.substitute(values)


def _solve_rec(eqs: list[Poly], alive: list[int]) -> list[tuple[dict, Optional[int]]]:
    """Solutions as (assignment over ``alive``, radicand)."""
    eqs = [e for e in eqs if e]
    if any(e.degree() == 0 for e in eqs):
        return []
    if not alive:
        return [({}, None)] if not eqs else []
    v = alive[-1]
    rest_vars = alive[:-1]
    with_v = [e for e in eqs if v in e.variables()]
    without = [e for e in eqs if v not in e.variables()]
    if not with_v:
        raise ExtensionError("a free parameter remains: solution set is not finite")
    projected = list(without)
    if rest_vars:
        for i in range(len(with_v)):
            for j in range(i + 1, len(with_v)):
                r = resultant(with_v[i], with_v[j], v)
                if r:
                    projected.append(r)
    lower = _solve_rec(projected, rest_vars) if rest_vars else [({}, None)]
    out = []
    for assign, rad in lower:
        polys = [uv.from_poly(e.substitute(assign), v) for e in with_v]
        g: list = []
        for p in polys:
            g = uv.gcd(g, p) if g else uv.monic(p)
        g = uv.trim(g)
        if not g:
            raise ExtensionError("fibre over a partial solution is positive dimensional")
        if len(g) == 1:
            continue
        if all(not isinstance(x, FieldElem) for x in g) and len(g) > 3:
            roots, rads = [], []
            for fac, _ in uv.rational_factors(g):
                rs, rr = uv.roots_low_degree(fac, rad)
                roots.extend(rs)
                rads.extend([rr] * len(rs))
        else:
            if len(g) > 3:
                raise uv.UnsupportedRoots("fibre polynomial of degree >= 3 over a quadratic field")
            roots, rr = uv.roots_low_degree(g, rad)
            rads = [rr] * len(roots)
        for x, rr in zip(roots, rads):
            a2 = dict(assign)
            a2[v] = x
            out.append((a2, common_radicand(list(a2.values())) if rr is None else rr))
    return out


def solve_extension_system(system: ExtensionSystem) -> list[ExtensionSolution]:
    """All solutions, exactly, each re-verified by substitution."""
    m = system.nvars
    eqs = [e for e in system.equations if e]
    alive = set(range(m))
    substitutions: list[tuple[int, Poly]] = []
    while True:
        piv = _linear_pivot(eqs, alive)
        if piv is None:
            break
        ei, v = piv
        expr = _solve_for(eqs[ei], v)
        substitutions.append((v, expr))
        alive.discard(v)
        eqs = [_substitute_poly(e, v, expr) for j, e in enumerate(eqs) if j != ei]
        eqs = [e for e in eqs if e]
    partial = _solve_rec(eqs, sorted(alive))
    sols = []
    for assign, rad in partial:
        full = dict(assign)
        for v, expr in reversed(substitutions):
            full[v] = expr.evaluate([full.get(i, 0) for i in range(m)])
        values = tuple(full[i] for i in range(m))
        for e in system.equations:
            if not is_zero(e.evaluate(list(values))):
                raise ArithmeticError("solution failed re-verification")
        sols.append(ExtensionSolution(system.n, values, common_radicand(values)))
    sols.sort(key=_solution_key)
    return _dedupe(sols)


def _solution_key(s: ExtensionSolution):
    return (s.radicand or 0, s.format())


def _dedupe(sols: list[ExtensionSolution]) -> list[ExtensionSolution]:
    seen, out = set(), []
    for s in sols:
        if s.values not in seen:
            seen.add(s.values)
            out.append(s)
    return out


# the candidate algebra ---------------------------------------------------------

def coefficient_values(n: int, values: Sequence) -> dict:
    """Numeric ``b_i^(k)`` for the given unknowns."""
    table = _table_recurrence(n)
    pt = list(values)
    return {key: p.evaluate(pt) for key, p in table.items()}


def candidate_basis(n: int, values: Sequence) -> tuple[list, list[str]]:
    b = coefficient_values(n, values)
    size = n + 1
    x = zeros(size)
    for i in range(size):
        x[i][i] = n - 2 * i
    mats, names = [x], ["X"]
    for k in range(1, n - 1):
        y = zeros(size)
        for i in range(size - k):
            y[i][i + k] = b[(k, i)]
        mats.append(y)
        names.append(f"Y{k}")
    return mats, names


@dataclass
class ClosureVerdict:
    closed: bool
    failing: list
    brackets: dict
    algebra: Optional[LieAlgebraData] = None

    @property
    def certificate(self) -> str:
        if self.closed:
            return "all brackets lie in the span"
        return ", ".join(self.failing)


def lie_closure_verdict(sol: ExtensionSolution) -> ClosureVerdict:
    """Check every bracket of ``X, Y_1..Y_{n-2}`` against their span."""
    mats, names = candidate_basis(sol.n, sol.values)
    eb = EchelonBasis(track=True)
    for i, m in enumerate(mats):
        eb.add(mat_to_vec(m), label=i)
    failing, brackets = [], {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            coords = eb.express(mat_to_vec(bracket(mats[i], mats[j])))
            key = f"[{names[i]},{names[j]}]"
            if coords is None:
                failing.append(key)
                brackets[key] = None
            else:
                brackets[key] = {names[k]: c for k, c in sorted(coords.items())}
    alg = None
    if not failing:
        alg = structure_constants(mats, names, label=f"g{sol.n}")
    sol.lie_closed = not failing
    sol.failing_brackets = failing
    return ClosureVerdict(not failing, failing, brackets, alg)


def extension_algebra(n: int, which: int = 0) -> LieAlgebraData:
    """Algebra from the ``which``-th Lie-closed solution (solutions sorted deterministically)."""
    sols = solve_extension_system(build_extension_system(n))
    closed = [s for s in sols if lie_closure_verdict(s).closed]
    if not closed:
        raise ExtensionError(f"no Lie-closed extension for n={n}")
    return lie_closure_verdict(closed[which]).algebra


# T-operator -----------------------------------------------------------------------

@dataclass
class TOperator:
    matrix: list
    monomials: list
    determinant: object
    invertible: bool


def t_operator(x: VField, e: int) -> TOperator:
    """Matrix of ``f -> X(f) - f`` on homogeneous polynomials of degree ``e - 1``."""
    if e < 1:
        raise ValueError("e must be >= 1")
    if x.degree() not in (1, None) or (x.degree() is None and not x.is_zero()):
        raise ValueError("X must be linear")
    monos = homogeneous_monomials(x.nvars, e - 1)
    index = {m: i for i, m in enumerate(monos)}
    size = len(monos)
    mat = [[0] * size for _ in range(size)]
    for j, m in enumerate(monos):
        f = Poly.monomial(m)
        img = x.apply(f) - f
        for ex, c in img.items():
            mat[index[ex]][j] = c
    det = det_bareiss(mat)
    return TOperator(mat, monos, det, not is_zero(det))
