"""Exact scalars: rationals and elements of a quadratic field Q(sqrt(d)).

Rational scalars are plain ``int`` / ``Fraction`` objects.  Only genuinely
irrational values are wrapped in :class:`FieldElem`; every operation that
lands back in Q returns a plain rational, so code that never meets a radical
never pays for one.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union


class FieldError(ArithmeticError):
    """Raised on incompatible radicands or division by zero."""


Scalar = Union[int, Fraction, "FieldElem"]


def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free (sign kept in d)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= n
    return s, sign * d


@lru_cache(maxsize=None)
def _valid_radicand(d: int) -> bool:
    s, dd = squarefree_part(d)
    return s == 1 and dd not in (0, 1)


def _rat(x) -> Fraction | int:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return normalize(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not a rational: {x!r}")


def normalize(x):
    """Canonical form: Fractions with denominator 1 become ints."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class FieldElem:
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and square-free ``d``.

    Instances always have ``b != 0``; use :func:`make` to build values that may
    collapse to a rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        b = _rat(b)
        if b == 0:
            raise ValueError("FieldElem requires a nonzero radical part; use make()")
        if not _valid_radicand(d):
            raise ValueError(f"radicand must be square-free and not 0/1, got {d}")
        self.a = _rat(a)
        self.b = b
        self.d = d

    # construction helpers -------------------------------------------------
    @staticmethod
    def sqrt(d: int) -> "Scalar":
        """Exact square root of an integer, as a rational or a FieldElem."""
        s, dd = squarefree_part(d)
        if dd == 1:
            return s
        return make(0, s, dd)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.d != self.d:
                raise FieldError(f"mixed radicands {self.d} and {other.d}")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return other, 0
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make(self.a - o[0], self.b - o[1], self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make(o[0] - self.a, o[1] - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = o
        return make(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self):
        return normalize(Fraction(self.a) ** 2 - self.d * Fraction(self.b) ** 2)

    def conjugate(self) -> "FieldElem":
        return FieldElem(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        if n == 0:  # pragma: no cover - impossible for square-free d != 1
            raise FieldError("zero divisor")
        return make(Fraction(self.a) / n, -Fraction(self.b) / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, FieldElem):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise FieldError("division by zero")
            return make(Fraction(self.a) / other, Fraction(self.b) / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result: Scalar = 1
        base: Scalar = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return False  # b != 0, so never rational

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"FieldElem({format_scalar(self)})"

    __str__ = lambda self: format_scalar(self)  # noqa: E731


def make(a, b=0, d: Optional[int] = None) -> Scalar:
    """Build ``a + b*sqrt(d)``, collapsing to a plain rational when ``b == 0``."""
    a = normalize(_rat(a))
    b = normalize(_rat(b))
    if b == 0 or d is None:
        if b != 0:
            raise ValueError("radical part given without a radicand")
        return a
    return FieldElem(a, b, d)


def radicand_of(x) -> Optional[int]:
    return x.d if isinstance(x, FieldElem) else None


def parts(x) -> tuple[Fraction | int, Fraction | int]:
    """Rational and radical parts of a scalar."""
    if isinstance(x, FieldElem):
        return x.a, x.b
    return _rat(x), 0


def common_radicand(values) -> Optional[int]:
    """Shared radicand of an iterable of scalars; raises on a mix."""
    d = None
    for v in values:
        vd = radicand_of(v)
        if vd is None:
            continue
        if d is None:
            d = vd
        elif d != vd:
            raise FieldError(f"mixed radicands {d} and {vd}")
    return d


def inv(x) -> Scalar:
    if isinstance(x, FieldElem):
        return x.inverse()
    if x == 0:
        raise FieldError("division by zero")
    return normalize(Fraction(1) / x)


def div(x, y) -> Scalar:
    if isinstance(y, FieldElem) or isinstance(x, FieldElem):
        return x * inv(y)
    if y == 0:
        raise FieldError("division by zero")
    return normalize(Fraction(x) / y)


def field_arith(x, y, op: str) -> Scalar:
    """Single entry point for ``add``, ``mul``, ``inv`` and ``neg``.

    ``y`` is ignored by the unary operations.
    """
    if op == "add":
        return _norm_any(x + y)
    if op == "mul":
        return _norm_any(x * y)
    if op == "inv":
        return inv(x)
    if op == "neg":
        return _norm_any(-x)
    raise ValueError(f"unknown op {op!r}")


def _norm_any(x):
    return normalize(x) if isinstance(x, Fraction) else x


# text format ---------------------------------------------------------------

def _fmt_rat(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """``p/q`` or ``p/q + r/s*sqrt(d)``."""
    if isinstance(x, FieldElem):
        if x.a == 0:
            return f"{_fmt_rat(x.b)}*sqrt({x.d})"
        sep = " - " if x.b < 0 else " + "
        return f"{_fmt_rat(x.a)}{sep}{_fmt_rat(abs(x.b))}*sqrt({x.d})"
    return _fmt_rat(x)


_RADICAL = r"\*?(?:sqrt\((?P<d>-?\d+)\)|(?P<root>√))"
_PURE_RADICAL = re.compile(r"^(?P<b>[+-]?(?:\d+(?:/\d+)?)?)" + _RADICAL + "$")
_MIXED = re.compile(r"^(?P<a>[+-]?\d+(?:/\d+)?)(?P<b>[+-](?:\d+(?:/\d+)?)?)" + _RADICAL + "$")


def _coef(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return Fraction(text)


def parse_scalar(text: str, radicand: Optional[int] = None) -> Scalar:
    """Inverse of :func:`format_scalar`; also accepts ``p/q+r/s√`` with an external radicand."""
    t = text.replace(" ", "")
    if not t:
        raise ValueError("empty scalar")
    if "sqrt" not in t and "√" not in t:
        return normalize(Fraction(t))
    m = _PURE_RADICAL.match(t) or _MIXED.match(t)
    if not m:
        raise ValueError(f"cannot parse scalar {text!r}")
    a = Fraction(m.group("a")) if "a" in m.groupdict() and m.group("a") else Fraction(0)
    b = _coef(m.group("b") or "")
    if m.group("d") is not None:
        d = int(m.group("d"))
        if radicand is not None and radicand != d:
            raise FieldError(f"radicand {d} disagrees with context radicand {radicand}")
    else:
        if radicand is None:
            raise ValueError(f"{text!r} uses √ but no radicand was given")
        d = radicand
    s, dd = squarefree_part(d)
    return make(a, b * s, dd) if dd != 1 else normalize(a + b * s)


def is_zero(x) -> bool:
    return not isinstance(x, FieldElem) and x == 0


def isqrt_exact(n: int) -> Optional[int]:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None
