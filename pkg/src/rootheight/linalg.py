"""Small exact linear-algebra helpers: determinants over any exact field,
an LU solver over the rationals, and integer characteristic polynomials."""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularSystem
from .exactalg import Polynomial, _coeff_inv


def det(rows):
    """Determinant by Gaussian elimination over an exact field.

    Entries may be ints, Fractions, or CycNum values of one order.
    """
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    acc = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        pv = a[col][col]
        acc = acc * pv
        inv = _coeff_inv(pv)
        prow = a[col]
        for r in range(col + 1, n):
            f = a[r][col]
            if not f:
                continue
            f = f * inv
            arow = a[r]
            for c2 in range(col + 1, n):
                if prow[c2]:
                    arow[c2] = arow[c2] - f * prow[c2]
            arow[col] = 0
    return sign * acc if sign == 1 else -acc


class FractionLU:
    """LU factorization with row pivoting over exact rationals.

    Factor once, then solve many right-hand sides in O(n^2) each.
    """

    def __init__(self, rows):
        n = len(rows)
        a = [[Fraction(x) for x in row] for row in rows]
        perm = list(range(n))
        for col in range(n):
            piv = None
            for r in range(col, n):
                if a[r][col]:
                    piv = r
                    break
            if piv is None:
                raise SingularSystem(f"singular matrix at column {col}")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                perm[col], perm[piv] = perm[piv], perm[col]
            pv = a[col][col]
            for r in range(col + 1, n):
                f = a[r][col]
                if not f:
                    continue
                f = f / pv
                a[r][col] = f
                arow = a[r]
                prow = a[col]
                for c2 in range(col + 1, n):
                    if prow[c2]:
                        arow[c2] = arow[c2] - f * prow[c2]
        self.n = n
        self.lu = a
        self.perm = perm

    def solve(self, rhs):
        n = self.n
        y = [rhs[self.perm[i]] for i in range(n)]
        lu = self.lu
        for i in range(1, n):
            row = lu[i]
            s = y[i]
            for j in range(i):
                if row[j] and y[j]:
                    s = s - row[j] * y[j]
            y[i] = s
        x = [Fraction(0)] * n
        for i in range(n - 1, -1, -1):
            row = lu[i]
            s = y[i]
            for j in range(i + 1, n):
                if row[j] and x[j]:
                    s = s - row[j] * x[j]
            x[i] = s / row[i]
        return x


def charpoly_int(mat):
    """Monic characteristic polynomial det(qI - M) of an integer matrix,
    by the trace recursion with exact integer divisions."""
    n = len(mat)
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs_desc = [1]
    for k in range(1, n + 1):
        am = [[sum(mat[i][t] * m[t][j] for t in range(n)) for j in range(n)]
              for i in range(n)]
        tr = sum(am[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "trace recursion divisibility failed"
        coeffs_desc.append(q)
        m = [[am[i][j] + (q if i == j else 0) for j in range(n)] for i in range(n)]
    return Polynomial(tuple(reversed(coeffs_desc)))
