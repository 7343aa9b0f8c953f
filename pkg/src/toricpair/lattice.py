"""Exact integer and rational linear algebra on small dense matrices.

Vectors are plain tuples of ``int`` (lattice points of N or M) or of
``fractions.Fraction`` (points of M_Q).  Every routine is exact; nothing
here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(a - b for a, b in zip(u, v))


def scale(k, v: Sequence) -> tuple:
    return tuple(k * a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def content(v: Sequence[int]) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    return reduce(gcd, (abs(int(a)) for a in v), 0)


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def primitivize(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its coordinates.

    >>> primitivize((2, 4, 6))
    (1, 2, 3)
    >>> primitivize((-3, 0, 9))
    (-1, 0, 3)
    """
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(a) // g for a in v)


def clear_denominators(v: Sequence) -> IntVector:
    """Scale a rational vector by a positive constant to a primitive integer one."""
    fr = [Fraction(a) for a in v]
    den = reduce(lcm, (a.denominator for a in fr), 1)
    return primitivize([int(a * den) for a in fr])


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _is_integral(rows) -> bool:
    return all(isinstance(x, int) for r in rows for x in r)


def integer_echelon(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Row echelon form of an integer matrix by fraction-free elimination.

    Rows are kept primitive; returns (nonzero rows, pivot columns).
    """
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f, g = m[i][c], pr[c]
                row = [g * a - f * b for a, b in zip(m[i], pr)]
                k = content(row)
                m[i] = [x // k for x in row] if k > 1 else row
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows:
        return 0
    if _is_integral(rows):
        return len(integer_echelon(rows, ncols)[1])
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[IntVector]:
    """Basis of {x in Q^n : r.x = 0 for all rows}, as primitive integer vectors."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    if _is_integral(rows):
        rows, _ = integer_echelon(rows, ncols)
        if not rows:
            return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(clear_denominators(x))
    return basis


def normal_vector(rows: Sequence[Sequence[int]], ncols: int) -> IntVector | None:
    """Primitive generator of the kernel of an (n-1) x n integer matrix of full rank.

    Uses signed maximal minors (generalized cross product); None if rank < n-1.
    """
    u = []
    for j in range(ncols):
        minor = [[r[k] for k in range(ncols) if k != j] for r in rows]
        u.append((-1) ** j * det(minor))
    if not any(u):
        return None
    return primitivize(u)


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> RationalVector | None:
    """One rational solution of rows.x = rhs, or None if the system is inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return tuple(x)


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, r)) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def elementary_divisors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer k x n matrix of rank k.

    Computed from determinantal divisors: d_i = gcd of all i x i minors and
    e_i = d_i / d_{i-1}.  Intended for the small matrices met here.
    """
    k = len(rows)
    if k == 0:
        return []
    n = len(rows[0])
    divisors = [1]
    for size in range(1, k + 1):
        g = 0
        for rsel in combinations(range(k), size):
            for csel in combinations(range(n), size):
                g = gcd(g, det([[rows[i][j] for j in csel] for i in rsel]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            raise ValueError("matrix rows are linearly dependent")
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, k + 1)]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """A Z-basis of {x in Z^n : A x = 0} via unimodular column reduction."""
    a = [list(map(int, r)) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of U

    def colop(j, k, q):
        # column_j -= q * column_k, on both A and U
        for row in a:
            row[j] -= q * row[k]
        for row in u:
            row[j] -= q * row[k]

    def colswap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    piv = 0
    for row in a:
        if piv == ncols:
            break
        while True:
            nz = [j for j in range(piv, ncols) if row[j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(row[j]))
            colswap(piv, j0)
            done = True
            for j in range(piv + 1, ncols):
                if row[j] != 0:
                    colop(j, piv, row[j] // row[piv])
                    if row[j] != 0:
                        done = False
            if done:
                piv += 1
                break
    return [tuple(u[i][j] for i in range(ncols)) for j in range(piv, ncols)]


def lattice_coordinates(basis: Sequence[IntVector], v: Sequence[int]) -> IntVector:
    """Coordinates of v in a Z-basis of a saturated sublattice containing v."""
    n = len(v)
    cols = [list(b) for b in basis]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    x = solve(rows, v, len(cols))
    if x is None or any(c.denominator != 1 for c in x):
        raise ValueError(f"{tuple(v)} is not in the lattice spanned by the basis")
    return tuple(int(c) for c in x)


def common_denominator(v: Iterable[Fraction]) -> int:
    return reduce(lcm, (Fraction(a).denominator for a in v), 1)
