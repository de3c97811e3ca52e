"""Reduction of exact data to prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from sympy import isprime, nextprime
from sympy.ntheory import sqrt_mod

from .field import FieldElem, parts
from .poly import Poly, decode


class ReductionError(ArithmeticError):
    """A prime divides a denominator, or the radicand has no root mod p."""


@dataclass(frozen=True)
class PrimeContext:
    p: int
    radicand: Optional[int] = None
    sqrt_image: Optional[int] = None
    denominators_coprime: bool = True

    @classmethod
    def create(cls, p: int, radicand: Optional[int] = None) -> "PrimeContext":
        if not isprime(p) or p == 2:
            raise ReductionError(f"{p} is not an odd prime")
        root = None
        if radicand is not None:
            if radicand % p == 0:
                raise ReductionError(f"{p} divides the radicand {radicand}")
            root = sqrt_mod(radicand % p, p)
            if root is None:
                raise ReductionError(f"{radicand} is not a square mod {p}")
        return cls(p, radicand, root)

    def scalar(self, x) -> int:
        """Image of an exact scalar in F_p."""
        p = self.p
        if isinstance(x, FieldElem):
            if self.sqrt_image is None or x.d != self.radicand:
                raise ReductionError(f"no image of sqrt({x.d}) in this context")
            a, b = parts(x)
            return (self._rat(a) + self._rat(b) * self.sqrt_image) % p
        return self._rat(x)

    def _rat(self, q) -> int:
        if isinstance(q, int):
            return q % self.p
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ReductionError(f"{self.p} divides the denominator of {q}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p


class ModPoly:
    """Polynomial over F_p sharing the packed-monomial layout of :class:`Poly`."""

    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars: int, p: int, terms: dict):
        self.nvars = nvars
        self.p = p
        self.terms = {k: v % p for k, v in terms.items() if v % p}

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.p
        total = 0
        for k, c in self.terms.items():
            v = c
            for x, e in zip(point, decode(k, self.nvars)):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def __add__(self, other: "ModPoly") -> "ModPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ModPoly(self.nvars, self.p, out)

    def __mul__(self, other: "ModPoly") -> "ModPoly":
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                out[ka + kb] = (out.get(ka + kb, 0) + ca * cb) % self.p
        return ModPoly(self.nvars, self.p, out)

    def items(self):
        for k in sorted(self.terms):
            yield decode(k, self.nvars), self.terms[k]

    def __eq__(self, other):
        if not isinstance(other, ModPoly):
            return NotImplemented
        return (self.nvars, self.p, self.terms) == (other.nvars, other.p, other.terms)

    def __repr__(self):
        body = " + ".join(f"{c}*{e}" for e, c in self.items()) or "0"
        return f"ModPoly(p={self.p}, {body})"


def reduce_mod(f: Poly, ctx: PrimeContext) -> ModPoly:
    return ModPoly(f.nvars, ctx.p, {k: ctx.scalar(c) for k, c in f.terms.items()})


def _denominators(values: Iterable) -> set[int]:
    dens = set()
    for v in values:
        for q in parts(v):
            d = Fraction(q).denominator
            if d != 1:
                dens.add(d)
    return dens


def select_primes(
    coefficients: Iterable = (),
    count: int = 2,
    start: int = 101,
    radicand: Optional[int] = None,
) -> list[PrimeContext]:
    """First ``count`` primes >= ``start`` usable for every given coefficient."""
    dens = _denominators(coefficients)
    out: list[PrimeContext] = []
    p = start - 1
    while len(out) < count:
        p = nextprime(p)
        if p == 2 or any(d % p == 0 for d in dens):
            continue
        try:
            out.append(PrimeContext.create(p, radicand))
        except ReductionError:
            continue
    return out


def contexts_for(primes: Sequence[int], radicand: Optional[int] = None) -> list[PrimeContext]:
    return [PrimeContext.create(p, radicand) for p in primes]
