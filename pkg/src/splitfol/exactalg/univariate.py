"""Dense univariate polynomials over Q or Q(sqrt(d)), coefficients low degree first.

Only what the small-system solver needs: Euclid, roots of degree <= 2, and
factoring over Q (delegated to sympy).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .field import FieldElem, div, is_zero, isqrt_exact, make, normalize, squarefree_part
from .poly import Poly, decode


class UnsupportedRoots(ArithmeticError):
    """A factor of degree >= 3, or roots needing a second radicand."""


def trim(c: list) -> list:
    c = list(c)
    while c and is_zero(c[-1]):
        c.pop()
    return c


def degree(c: list) -> int:
    return len(trim(c)) - 1


def add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a: list, s) -> list:
    return trim([x * s for x in a])


def sub(a: list, b: list) -> list:
    return add(a, scale(b, -1))


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_u(a: list, b: list) -> tuple[list, list]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = div(r[-1], lb)
        q[shift] = c
        for i, y in enumerate(b):
            r[i + shift] = r[i + shift] - c * y
        r = trim(r)
    return trim(q), r


def monic(a: list) -> list:
    a = trim(a)
    if not a:
        return a
    lc = a[-1]
    return [normalize_any(div(x, lc)) for x in a]


def normalize_any(x):
    return normalize(x) if isinstance(x, Fraction) else x


def gcd(a: list, b: list) -> list:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_u(a, b)[1]
    return monic(a)


def evaluate(a: list, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return normalize_any(acc)


def from_poly(f: Poly, var: int) -> list:
    """Coefficient list of ``f`` viewed as a polynomial in ``x_var`` alone."""
    out: dict[int, object] = {}
    for k, c in f.terms.items():
        exps = decode(k, f.nvars)
        if any(e for i, e in enumerate(exps) if i != var):
            raise ValueError("polynomial involves other variables")
        out[exps[var]] = c
    if not out:
        return []
    return trim([out.get(i, 0) for i in range(max(out) + 1)])


def sqrt_in_field(x, radicand: Optional[int]) -> tuple[object, Optional[int]]:
    """A square root of ``x`` in Q(sqrt(radicand)) or in a fresh Q(sqrt(e)).

    Returns ``(root, radicand)``; raises UnsupportedRoots when no single
    quadratic field contains the root.
    """
    if isinstance(x, FieldElem):
        a, b = Fraction(x.a), Fraction(x.b)
        n = a * a - x.d * b * b
        rn = _rat_sqrt(n)
        if rn is None:
            raise UnsupportedRoots(f"sqrt({x}) needs a nested radical")
        # (u + v sqrt d)^2 = a + b sqrt d with b != 0 forces u != 0
        for s in (rn, -rn):
            u2 = (a + s) / 2
            ru = _rat_sqrt(u2)
            if ru is not None and ru != 0:
                v = b / (2 * ru)
                return make(ru, v, x.d), x.d
        raise UnsupportedRoots(f"{x} is not a square in Q(sqrt({x.d}))")
    q = Fraction(x)
    r = _rat_sqrt(q)
    if r is not None:
        return normalize(r), radicand
    num, den = q.numerator * q.denominator, q.denominator
    s, e = squarefree_part(num)
    coef = Fraction(s, den)
    if radicand is None or radicand == e:
        return make(0, coef, e), e
    raise UnsupportedRoots(f"sqrt({q}) does not lie in Q(sqrt({radicand}))")


def _rat_sqrt(q: Fraction) -> Optional[Fraction]:
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt_exact(q.numerator), isqrt_exact(q.denominator)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def roots_low_degree(c: list, radicand: Optional[int] = None) -> tuple[list, Optional[int]]:
    """Roots of a polynomial of degree <= 2 (with multiplicity collapsed)."""
    c = trim(c)
    dg = len(c) - 1
    if dg <= 0:
        return [], radicand
    if dg == 1:
        return [normalize_any(div(-c[0], c[1]))], radicand
    if dg == 2:
        a, b, cc = c[2], c[1], c[0]
        disc = b * b - 4 * a * cc
        if is_zero(disc):
            return [normalize_any(div(-b, 2 * a))], radicand
        root, radicand = sqrt_in_field(disc, radicand)
        return [normalize_any(div(-b + root, 2 * a)), normalize_any(div(-b - root, 2 * a))], radicand
    raise UnsupportedRoots(f"degree {dg} polynomial")


def rational_factors(c: list) -> list[tuple[list, int]]:
    """Irreducible factors over Q with multiplicities, via sympy."""
    import sympy

    c = trim(c)
    if any(isinstance(x, FieldElem) for x in c):
        raise ValueError("rational_factors needs rational coefficients")
    if len(c) <= 1:
        return []
    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) * t**i for i, x in enumerate(c))
    _, facs = sympy.factor_list(expr, t)
    out = []
    for fac, mult in facs:
        coeffs = sympy.Poly(fac, t).all_coeffs()[::-1]
        out.append((monic([normalize(Fraction(int(q.p), int(q.q))) for q in coeffs]), mult))
    out.sort(key=lambda fm: (len(fm[0]), [str(x) for x in fm[0]]))
    return out


def rational_roots_and_quadratics(c: list) -> tuple[list, Optional[int]]:
    """All roots of a rational polynomial whose irreducible factors have degree <= 2.

    Every quadratic factor must share one radicand.
    """
    roots: list = []
    radicand = None
    for fac, _ in rational_factors(c):
        rs, radicand = roots_low_degree(fac, radicand)
        roots.extend(rs)
    return roots, radicand


def is_rational(x) -> bool:
    return not isinstance(x, FieldElem)


__all__ = [
    "UnsupportedRoots",
    "add",
    "degree",
    "divmod_u",
    "evaluate",
    "from_poly",
    "gcd",
    "monic",
    "mul",
    "rational_factors",
    "rational_roots_and_quadratics",
    "roots_low_degree",
    "scale",
    "sqrt_in_field",
    "sub",
    "trim",
]
