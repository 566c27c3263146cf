"""Gaussian elimination over Q(zeta_24): rank, row echelon forms, kernels, determinants."""

from __future__ import annotations

from typing import Sequence

from .exactfield import ONE, ZERO, CycloElement

Matrix = list[list[CycloElement]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[CycloElement.coerce(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    m = as_matrix(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {v : rows . v = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def in_span(vector: Sequence, basis: Sequence[Sequence]) -> bool:
    if not basis:
        return all(CycloElement.coerce(x).is_zero() for x in vector)
    return rank(list(basis) + [list(vector)]) == rank(basis)


def solve_in_span(vector: Sequence, basis: Sequence[Sequence]) -> list[CycloElement] | None:
    """Coefficients c with sum c_i basis_i = vector, or None."""
    n = len(basis)
    # columns = basis vectors, augmented with the target
    aug = [[basis[j][i] for j in range(n)] + [vector[i]] for i in range(len(vector))]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    coeffs = [ZERO] * n
    for row, pc in zip(red, pivots):
        coeffs[pc] = row[n]
    return coeffs


def det(rows: Sequence[Sequence]) -> CycloElement:
    m = as_matrix(rows)
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    result = ONE
    for col in range(n):
        pivot = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        result = result * m[col][col]
        inv = m[col][col].inverse()
        for i in range(col + 1, n):
            if not m[i][col].is_zero():
                f = m[i][col] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return result


def inverse(rows: Sequence[Sequence]) -> Matrix:
    m = as_matrix(rows)
    n = len(m)
    aug = [row + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def trace(m: Sequence[Sequence]) -> CycloElement:
    acc = ZERO
    for i in range(len(m)):
        acc = acc + m[i][i]
    return acc
