"""Shared independent oracles for the test suite.

These deliberately avoid the library's own code paths: compositions are
evaluated directly with Fractions, resultants via Sylvester determinants,
counts by brute-force enumeration.
"""

from __future__ import annotations

from fractions import Fraction


def gamma_value(gens, coding, a0, n):
    """(theta_1 o ... o theta_n)(a0) by direct inside-out evaluation."""
    v = a0 if not isinstance(a0, int) else Fraction(a0)
    for k in range(n, 0, -1):
        c = gens.constants[coding.index_at(k) - 1]
        v = v * v + c
    return v


def gamma_values(gens, coding, a0, depth):
    return [gamma_value(gens, coding, a0, n) for n in range(1, depth + 1)]


def sylvester_resultant(f_coeffs, g_coeffs):
    """Resultant as the Sylvester matrix determinant over Fractions."""
    f = [Fraction(c) for c in f_coeffs]
    g = [Fraction(c) for c in g_coeffs]
    m = len(f) - 1
    n = len(g) - 1
    if m < 0 or n < 0:
        raise ValueError("zero polynomial")
    if m == 0 and n == 0:
        return Fraction(1)
    size = m + n
    rows = []
    for i in range(n):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Fraction(0)] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    det = Fraction(1)
    for col in range(size):
        pivot = None
        for r in range(col, size):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] * inv
            if factor:
                for c2 in range(col, size):
                    rows[r][c2] -= factor * rows[col][c2]
    return det
