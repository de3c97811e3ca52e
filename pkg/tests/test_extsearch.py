from __future__ import annotations

from fractions import Fraction
from math import prod

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import polys
from splitfol.exactalg.field import make
from splitfol.exactalg.poly import Poly, homogeneous_monomials
from splitfol.extsearch import (
    ExtensionError,
    ExtensionSolution,
    _table_recurrence,
    build_extension_system,
    closed_form_coefficient,
    extension_algebra,
    lie_closure_verdict,
    resultant,
    solve_extension_system,
    t_operator,
)
from splitfol.multical import VField

F = Fraction
S265 = lambda a, b: make(F(a), F(b), 265)  # noqa: E731

# solutions for b_0^(2..n-3), from tests/oracles/extension_oracle.py (free-coefficient sympy solve)
ORACLE_SOLUTIONS = {
    5: set(),
    6: {(F(9, 8), F(-3, 2))},
    7: {
        (make(0, F(-1, 2), 3), make(1, 1, 3), make(F(-3, 2), F(-1, 2), 3)),
        (make(0, F(1, 2), 3), make(1, -1, 3), make(F(-3, 2), F(1, 2), 3)),
    },
    8: {
        (0, -5, 5, -3),
        (0, 0, -1, 0),
        (S265(F(45, 256), F(15, 256)), S265(F(-15, 64), F(-5, 64)), S265(F(35, 32), F(1, 32)), F(-3, 2)),
        (S265(F(45, 256), F(-15, 256)), S265(F(-15, 64), F(5, 64)), S265(F(35, 32), F(-1, 32)), F(-3, 2)),
    },
}


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_solutions_match_oracle(n):
    sols = solve_extension_system(build_extension_system(n))
    assert {s.values for s in sols} == ORACLE_SOLUTIONS[n]


def test_closure_verdicts():
    by_n = {n: [lie_closure_verdict(s) for s in solve_extension_system(build_extension_system(n))] for n in (6, 7, 8)}
    (v6,) = by_n[6]
    assert v6.closed and v6.brackets["[Y2,Y3]"] == {}
    for v in by_n[7]:
        assert v.closed and v.brackets["[Y2,Y3]"] == {"Y5": F(5, 2)}
    closed8 = [v for v in by_n[8] if v.closed]
    open8 = [v for v in by_n[8] if not v.closed]
    assert len(closed8) == 2 and len(open8) == 2
    assert sorted(v.brackets["[Y2,Y3]"]["Y5"] for v in closed8) == [-5, 5]
    assert all(v.failing == ["[Y2,Y3]"] for v in open8)


def test_extension_algebras():
    g7 = extension_algebra(7)
    assert g7.dim == 6 and g7.jacobi_holds() and g7.radicand == 3
    assert g7.format_bracket(2, 3) == "[Y2,Y3] = (5/2)Y5"


@pytest.mark.parametrize("n", range(5, 11))
def test_closed_form_matches_recurrence(n):
    table = _table_recurrence(n)
    for k in range(2, n - 1):
        for i in range(n + 1 - k):
            assert table[(k, i)] == closed_form_coefficient(n, k, i)


def test_system_shape():
    s = build_extension_system(8)
    assert s.unknowns == ["b0^(2)", "b0^(3)", "b0^(4)", "b0^(5)"]
    assert len(s.equations) == len(s.equation_labels)
    with pytest.raises(ExtensionError):
        build_extension_system(4)


def to_sympy(f: Poly, syms):
    return sum(sp.Rational(F(c).numerator, F(c).denominator) * sp.prod([s ** e for s, e in zip(syms, ex)])
               for ex, c in f.items())


@given(polys(2, max_degree=3, coeffs=st.integers(-4, 4)), polys(2, max_degree=3, coeffs=st.integers(-4, 4)))
@settings(max_examples=40, deadline=None)
def test_resultant_against_sympy(f, g):
    a, b = sp.symbols("a b")
    if 1 not in f.variables() or 1 not in g.variables():
        return
    ours = to_sympy(resultant(f, g, 1), (a, b))
    theirs = sp.resultant(to_sympy(f, (a, b)), to_sympy(g, (a, b)), b)
    assert sp.expand(ours - theirs) == 0


@pytest.mark.parametrize("weights,e", [([2, 3, 5], 2), ([2, 3, 5], 3), ([1, 2, 0], 2), ([3, -1, 2], 4)])
def test_t_operator_on_diagonal_fields(weights, e):
    x = VField.from_matrix([[w if i == j else 0 for j in range(3)] for i, w in enumerate(weights)])
    t = t_operator(x, e)
    expected = prod(sum(a * w for a, w in zip(m, weights)) - 1 for m in homogeneous_monomials(3, e - 1))
    assert t.determinant == expected
    assert t.invertible == (expected != 0)


def test_t_operator_nilpotent_part_does_not_change_determinant():
    x = VField.from_matrix([[2, 1, 0], [0, 3, 1], [0, 0, 5]])
    assert t_operator(x, 3).determinant == t_operator(
        VField.from_matrix([[2, 0, 0], [0, 3, 0], [0, 0, 5]]), 3).determinant


def test_solution_format():
    s = ExtensionSolution(7, (make(0, F(1, 2), 3), make(1, -1, 3), make(F(-3, 2), F(1, 2), 3)), 3)
    assert s.format() == "(1/2*sqrt(3), 1 - 1*sqrt(3), -3/2 + 1/2*sqrt(3))"
    assert set(s.assignment()) == {"b0^(2)", "b0^(3)", "b0^(4)"}
