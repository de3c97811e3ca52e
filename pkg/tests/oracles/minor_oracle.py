"""Independent sympy determinants for the three specialized minors.

The matrix has first row lambda_j z_j and rows Y_k with z_{j+k} in column j.
Two lambda choices are reported: the coefficients of (n+1)X - (n-1)(n-2)R
and of (n+1)X + (n-1)(n-2)R.  Output is frozen into the tests.
"""

from __future__ import annotations

import sympy as sp


def minors(n, sign):
    z = sp.symbols(f"z0:{n + 1}")
    lam = [(n + 1) * (n - 2 * j) + sign * (n - 1) * (n - 2) for j in range(n + 1)]
    rows = [[lam[j] * z[j] for j in range(n + 1)]]
    for k in range(1, n - 1):
        rows.append([z[j + k] if j + k <= n else 0 for j in range(n + 1)])
    m = sp.Matrix(rows)
    plans = [
        (list(range(2, n + 1)), {}),
        (list(range(1, n)), {z[n]: 0}),
        (list(range(0, n - 1)), {z[n]: 0, z[n - 1]: 0}),
    ]
    return [sp.factor(m[:, cols].subs(subs).det()) for cols, subs in plans]


if __name__ == "__main__":
    for sign in (-1, 1):
        for n in range(3, 8):
            print(sign, n, minors(n, sign))
