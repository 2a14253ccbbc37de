"""Exact linear algebra over Z, Q and Z/p on plain nested lists."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], modulus: int = 0) -> Matrix:
    Bt = list(zip(*B))
    out = [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]
    if modulus:
        out = [[x % modulus for x in row] for row in out]
    return out


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def mat_mod(A: Sequence[Sequence[int]], modulus: int) -> Matrix:
    return [[x % modulus for x in row] for row in A]


def freeze(A: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in A)


def _field(p: int):
    if p:
        return (lambda x: x % p), (lambda x: pow(x, -1, p))
    return Fraction, (lambda x: 1 / x)


def rref(rows: Sequence[Sequence[int]], p: int = 0) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over Q (``p == 0``) or Z/p."""
    conv, inv = _field(p)
    A = [[conv(x) for x in r] for r in rows]
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        s = inv(A[r][c])
        A[r] = [conv(x * s) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [conv(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(rows: Sequence[Sequence[int]], p: int = 0) -> int:
    return len(rref(rows, p)[1])


def solve(A: Sequence[Sequence[int]], b: Sequence[int], p: int = 0):
    """One solution ``x`` of ``A x = b`` or ``None`` if inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug, p)
    if n in piv:
        return None
    conv, _ = _field(p)
    x = [conv(0)] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def nullspace(A: Sequence[Sequence[int]], p: int = 0) -> list[list]:
    """Basis of ``{x : A x = 0}``."""
    if not A:
        return []
    n = len(A[0])
    R, piv = rref(A, p)
    conv, _ = _field(p)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [conv(0)] * n
        v[f] = conv(1)
        for row, c in zip(R, piv):
            v[c] = conv(-row[f])
        basis.append(v)
    return basis


def inverse(A: Sequence[Sequence[int]], p: int = 0):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(n))]
    R, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R[:n]]


def det(A: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def smith_normal_form(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix."""
    A = [list(r) for r in rows]
    if not A or not A[0]:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        # Bring the smallest nonzero entry of the remaining block to (t, t).
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // piv
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = A[t][j] // piv
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                # Divisibility: fold in a row holding a non-multiple of the pivot.
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                    None,
                )
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                       if A[i][j] and (i == t or j == t)]
            _, i, j = min(entries)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag
