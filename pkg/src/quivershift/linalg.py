"""Small exact linear algebra over the integers and the rationals.

Matrices are plain lists (or tuples) of rows. Nothing here uses floating point.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence

Rows = Sequence[Sequence]


def zeros(rows: int, cols: int, zero=0) -> List[list]:
    return [[zero] * cols for _ in range(rows)]


def identity(n: int, one=1) -> List[list]:
    out = zeros(n, n, one - one)
    for i in range(n):
        out[i][i] = one
    return out


def matmul(a: Rows, b: Rows, cols: int | None = None) -> List[list]:
    """Product of an m x k and a k x n matrix.

    When k = 0 the width n cannot be read from ``b``; pass ``cols`` then.
    """
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    if cols is None:
        cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def transpose(a: Rows, cols: int | None = None) -> List[list]:
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def trace(a: Rows) -> int:
    return sum(a[i][i] for i in range(len(a)))


def sub(a: Rows, b: Rows) -> List[list]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _integer_rows(a: Rows) -> List[List[int]]:
    """Scale each row by the lcm of its denominators so the entries are integers."""
    out = []
    for row in a:
        dens = [Fraction(x).denominator for x in row]
        m = lcm(*dens) if dens else 1
        out.append([int(Fraction(x) * m) for x in row])
    return out


def rank(a: Rows) -> int:
    """Exact rank of a rational (or integer) matrix.

    Rows are cleared to integers and eliminated with gcd-reduced integer row
    operations, which keeps entries small without fractions.
    """
    rows = [r for r in _integer_rows(a) if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                if pivot is None or abs(rows[i][c]) < abs(rows[pivot][c]):
                    pivot = i
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(r + 1, len(rows)):
            x = rows[i][c]
            if x:
                g = gcd(p, x)
                fp, fx = p // g, x // g
                new = [fp * u - fx * v for u, v in zip(rows[i], prow)]
                h = 0
                for u in new:
                    h = gcd(h, u)
                if h > 1:
                    new = [u // h for u in new]
                rows[i] = new
        r += 1
        if r == len(rows):
            break
    return r


def det(a: Rows):
    """Determinant by Bareiss fraction-free elimination (exact for ints and Fractions)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0 * prev
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num / prev if isinstance(num, Fraction) else num // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def row_basis(a: Rows) -> List[list]:
    """A maximal linearly independent subset of the rows, in original order."""
    chosen: List[list] = []
    current = 0
    for row in a:
        if rank(chosen + [list(row)]) > current:
            chosen.append(list(row))
            current += 1
    return chosen
