from typing import List, Sequence
from fractions import Fraction
import random


class MatrixError(RuntimeError):
    """Raised for shape mismatches and singular inversions."""
    pass


Matrix = List[List[Fraction]]


def shape(a: Sequence[Sequence]) -> tuple:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    for r in a:
        if len(r) != cols:
            raise MatrixError("Ragged matrix")
    return rows, cols


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in r] for r in rows]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise MatrixError(f"Cannot multiply {ra}x{ca} by {rb}x{cb}")
    cols = list(zip(*b)) if rb else [()] * cb
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def rank(a: Sequence[Sequence]) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on an integer scaling."""
    rows, cols = shape(a)
    if not rows or not cols:
        return 0
    work = []
    for row in a:
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        work.append([int(Fraction(x) * den) for x in row])
    r = 0
    prev = 1
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                work[i][j] = (work[i][j] * work[r][c] - work[i][c] * work[r][j]) // prev
            work[i][c] = 0
        prev = work[r][c]
        r += 1
        if r == rows:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def determinant(a: Sequence[Sequence]) -> Fraction:
    n, m = shape(a)
    if n != m:
        raise MatrixError("Determinant of a non-square matrix")
    work = to_matrix(a)
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = -det
        det *= work[c][c]
        for i in range(c + 1, n):
            f = work[i][c] / work[c][c]
            if f:
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return det


def inverse(a: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    n, m = shape(a)
    if n != m:
        raise MatrixError("Inverse of a non-square matrix")
    work = [r + e for r, e in zip(to_matrix(a), identity(n))]
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c]), None)
        if pivot is None:
            raise MatrixError("Matrix is singular")
        work[c], work[pivot] = work[pivot], work[c]
        p = work[c][c]
        work[c] = [x / p for x in work[c]]
        for i in range(n):
            if i != c and work[i][c]:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return [r[n:] for r in work]


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> Matrix:
    return [[random_rational(rng, bound) for _ in range(cols)] for _ in range(rows)]


def random_invertible(rng: random.Random, n: int, bound: int = 9) -> Matrix:
    while True:
        m = random_matrix(rng, n, n, bound)
        if determinant(m):
            return m


def rng_for(seed: int, trial: int = 0) -> random.Random:
    """Deterministic generator per (seed, trial)."""
    return random.Random(f"{seed}:{trial}")
