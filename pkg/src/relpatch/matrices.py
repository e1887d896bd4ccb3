"""Small dense matrices as tuples of row tuples, over any exact entry type."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .polys import MPoly
from .scalars import inv

Matrix = tuple  # tuple[tuple[object, ...], ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def unit(n: int, i: int, j: int, value=1) -> Matrix:
    return tuple(tuple(value if (a, b) == (i, j) else 0 for b in range(n)) for a in range(n))


def diag(values: Sequence) -> Matrix:
    n = len(values)
    return tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x == 0 or y == 0:
                    continue
                acc = acc + x * y
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_prod(mats, n: int) -> Matrix:
    acc = identity(n)
    for m in mats:
        acc = mat_mul(acc, m)
    return acc


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_map(fn: Callable, a: Matrix) -> Matrix:
    return tuple(tuple(fn(x) for x in row) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def is_identity(a: Matrix) -> bool:
    return mat_eq(a, identity(len(a)))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def entries(a: Matrix):
    for row in a:
        yield from row


def det(a: Matrix):
    """Determinant by cofactor expansion along rows (fine up to size ~6)."""
    n = len(a)
    memo: dict = {}

    def minor(row: int, cols: tuple):
        if row == n:
            return 1
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = 0
        for k, c in enumerate(cols):
            x = a[row][c]
            if x == 0:
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = x * sub
            acc = acc - term if k % 2 else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


def mat_inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over a field (Fraction / RatFunc entries)."""
    n = len(a)
    work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        work[col], work[piv] = work[piv], work[col]
        p_inv = inv(work[col][col])
        work[col] = [x * p_inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of the rational nullspace of a matrix given by rows."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def subs_matrix(a: Matrix, values: dict) -> Matrix:
    return mat_map(lambda x: x.subs(values) if isinstance(x, MPoly) else x, a)


def format_matrix(a: Matrix, fmt: Callable = str) -> str:
    return "\n".join("[" + ", ".join(fmt(x) for x in row) + "]" for row in a)
