"""Congruence subgroups of Sp_2g(Z) and SL_n(Z) and their abelianization maps.

Symplectic matrices here are in block order, with form ``[[0, I], [-I, 0]]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import linalg
from .linalg import Matrix, identity, matmul, zeros


class PreconditionError(ValueError):
    pass


def omega(g: int) -> Matrix:
    O = zeros(2 * g)
    for i in range(g):
        O[i][g + i], O[g + i][i] = 1, -1
    return O


def _eq_mod(A, B, m: int) -> bool:
    if m:
        return all((x - y) % m == 0 for ra, rb in zip(A, B) for x, y in zip(ra, rb))
    return [list(r) for r in A] == [list(r) for r in B]


def is_symplectic(M: Sequence[Sequence[int]], modulus: int = 0) -> bool:
    O = omega(len(M) // 2)
    return _eq_mod(matmul(matmul(linalg.transpose(M), O), M), O, modulus)


def is_sp_lie(A: Sequence[Sequence[int]], p: int) -> bool:
    O = omega(len(A) // 2)
    lhs = matmul(linalg.transpose(A), O)
    rhs = matmul(O, A)
    return all((x + y) % p == 0 for ra, rb in zip(lhs, rhs) for x, y in zip(ra, rb))


def is_sl_lie(A: Sequence[Sequence[int]], p: int) -> bool:
    return sum(A[i][i] for i in range(len(A))) % p == 0


def int_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    inv = linalg.inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise PreconditionError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def commutator(M, N) -> Matrix:
    """``M N M^-1 N^-1``."""
    return matmul(matmul(matmul(M, N), int_inverse(M)), int_inverse(N))


def in_level(M: Sequence[Sequence[int]], q: int) -> bool:
    return _eq_mod(M, identity(len(M)), q)


@dataclass(frozen=True)
class LieValue:
    entries: tuple[tuple[int, ...], ...]
    flavor: str
    p: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(x % self.p for x in r) for r in self.entries))
        ok = is_sp_lie(self.entries, self.p) if self.flavor == "sp" else is_sl_lie(self.entries, self.p)
        if not ok:
            raise PreconditionError(f"not in the {self.flavor} Lie algebra mod {self.p}")

    def __add__(self, other: "LieValue") -> "LieValue":
        return LieValue(tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.entries, other.entries)),
                        self.flavor, self.p)

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def as_list(self) -> Matrix:
        return [list(r) for r in self.entries]


def psi(M: Sequence[Sequence[int]], p: int, flavor: str = "sp") -> LieValue:
    """``A mod p`` where ``M = I + p A``."""
    n = len(M)
    if not in_level(M, p):
        raise PreconditionError(f"matrix is not congruent to the identity mod {p}")
    if flavor == "sp" and not is_symplectic(M):
        raise PreconditionError("matrix is not symplectic")
    if flavor == "sl" and linalg.det(M) != 1:
        raise PreconditionError("matrix does not have determinant 1")
    A = [[(M[i][j] - (i == j)) // p for j in range(n)] for i in range(n)]
    return LieValue(linalg.freeze(A), flavor, p)


# ---------------------------------------------------------------------------
# Bases and lifts

def _E(n: int, i: int, j: int) -> Matrix:
    m = zeros(n)
    m[i][j] = 1
    return m


def sp_lie_basis(g: int) -> list[tuple[str, Matrix]]:
    """Standard basis of sp_2g: A-type, B-type (upper right), C-type (lower left)."""
    n = 2 * g
    out = []
    for i in range(g):
        for j in range(g):
            X = zeros(n)
            X[i][j] = 1
            X[g + j][g + i] = -1
            out.append((f"A{i + 1}{j + 1}", X))
    for i in range(g):
        for j in range(i, g):
            X = zeros(n)
            X[i][g + j] = X[j][g + i] = 1
            out.append((f"B{i + 1}{j + 1}", X))
    for i in range(g):
        for j in range(i, g):
            X = zeros(n)
            X[g + i][j] = X[g + j][i] = 1
            out.append((f"C{i + 1}{j + 1}", X))
    return out


def sp_coords(X: Sequence[Sequence[int]], p: int) -> list[int]:
    """Coordinates of an sp element in :func:`sp_lie_basis` order."""
    g = len(X) // 2
    v = [X[i][j] for i in range(g) for j in range(g)]
    v += [X[i][g + j] for i in range(g) for j in range(i, g)]
    v += [X[g + i][j] for i in range(g) for j in range(i, g)]
    return [x % p for x in v]


def sp_from_coords(v: Sequence[int], g: int) -> Matrix:
    X = zeros(2 * g)
    for c, (_, B) in zip(v, sp_lie_basis(g)):
        if c:
            for i in range(2 * g):
                for j in range(2 * g):
                    X[i][j] += c * B[i][j]
    return X


def _plane_lift(q: int) -> Matrix:
    """Determinant-one 2x2 matrix ``I + q diag(1, -1) mod q^2``."""
    return [[1 + q, q * q], [-q * q, (1 - q) * (1 + q * q)]]


def _embed(n: int, idx: Sequence[int], block: Matrix) -> Matrix:
    M = identity(n)
    for a, r in zip(idx, block):
        for b, x in zip(idx, r):
            M[a][b] = x
    return M


def lift_sp_generator(X: Sequence[Sequence[int]], p: int, level: int | None = None) -> Matrix:
    """Symplectic ``M = I + q X mod q^2`` for a standard basis element ``X``.

    ``q`` defaults to ``p``; ``level=p*p`` gives the analogous level-p^2 element.
    """
    q = p if level is None else level
    n = len(X)
    g = n // 2
    Xm = [[x % p for x in r] for r in X]
    if not any(any(r) for r in Xm):
        return identity(n)
    for name, B in sp_lie_basis(g):
        if [[x % p for x in r] for r in B] != Xm:
            continue
        kind, i, j = name[0], int(name[1]) - 1, int(name[2]) - 1
        if kind == "A" and i != j:
            M = identity(n)
            M[i][j] = q
            M[g + j][g + i] = -q
            return M
        if kind == "A":
            return _embed(n, [i, g + i], _plane_lift(q))
        M = identity(n)
        if kind == "B":
            M[i][g + j] = q
            M[j][g + i] = q
        else:
            M[g + i][j] = q
            M[g + j][i] = q
        return M
    raise PreconditionError("not a standard basis element of sp")


def sl_lie_basis(n: int) -> list[tuple[str, Matrix]]:
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append((f"E{i + 1}{j + 1}", _E(n, i, j)))
    for i in range(n - 1):
        H = zeros(n)
        H[i][i], H[i + 1][i + 1] = 1, -1
        out.append((f"H{i + 1}", H))
    return out


def sl_coords(X: Sequence[Sequence[int]], p: int) -> list[int]:
    n = len(X)
    v = [X[i][j] for i in range(n) for j in range(n) if i != j]
    # diagonal in the H basis: cumulative sums
    run = 0
    for i in range(n - 1):
        run += X[i][i]
        v.append(run)
    return [x % p for x in v]


def lift_sl_generator(X: Sequence[Sequence[int]], p: int, level: int | None = None) -> Matrix:
    q = p if level is None else level
    n = len(X)
    Xm = [[x % p for x in r] for r in X]
    if not any(any(r) for r in Xm):
        return identity(n)
    for name, B in sl_lie_basis(n):
        if [[x % p for x in r] for r in B] != Xm:
            continue
        if name[0] == "E":
            return elementary(n, int(name[1]), int(name[2]), q)
        i = int(name[1:]) - 1
        return _embed(n, [i, i + 1], _plane_lift(q))
    raise PreconditionError("not a standard basis element of sl")


def elementary(n: int, i: int, j: int, power: int = 1) -> Matrix:
    """``e_ij^power``: identity with ``power`` at (i, j), 1-indexed."""
    if i == j:
        raise ValueError("elementary matrices need i != j")
    M = identity(n)
    M[i - 1][j - 1] = power
    return M


def bms_generators(n: int, q: int) -> list[Matrix]:
    if n < 3 or q < 2:
        raise ValueError("need n >= 3 and q >= 2")
    return [elementary(n, i, j, q) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def level_generators(flavor: str, size: int, p: int, level: int | None = None) -> list[Matrix]:
    """Lifts of every standard basis element (``size`` is g for sp, n for sl)."""
    if flavor == "sp":
        return [lift_sp_generator(B, p, level) for _, B in sp_lie_basis(size)]
    return [lift_sl_generator(B, p, level) for _, B in sl_lie_basis(size)]


def random_level_element(rng: random.Random, gens: Sequence[Matrix], length: int = 4) -> Matrix:
    n = len(gens[0])
    M = identity(n)
    for _ in range(rng.randint(1, length)):
        G = rng.choice(gens)
        if rng.random() < 0.5:
            G = int_inverse(G)
        M = matmul(M, G)
    return M


def commutator_witness(target: Matrix, gens: Sequence[Matrix], max_factors: int = 2):
    """Search a product of at most ``max_factors`` commutators of ``gens`` equal to ``target``.

    Returns a list of index pairs ``(i, j)`` meaning ``[G_i, G_j]`` in order,
    with ``G`` the generators followed by their inverses, or ``None``.
    """
    pool = list(gens) + [int_inverse(G) for G in gens]
    comms = {}
    for i, A in enumerate(pool):
        for j, B in enumerate(pool):
            C = linalg.freeze(commutator(A, B))
            comms.setdefault(C, (i, j))
    T = linalg.freeze(target)
    if T in comms:
        return [comms[T]]
    if max_factors >= 2:
        for C, ij in comms.items():
            rest = linalg.freeze(matmul(T, int_inverse(C)))
            if rest in comms:
                return [comms[rest], ij]
    return None


# ---------------------------------------------------------------------------
# Modules over Z/p: spinning, fixed points, coinvariants

def _act(G: Matrix, Ginv: Matrix, X: Matrix, p: int) -> Matrix:
    return matmul(matmul(G, X, p), Ginv, p)


class _Echelon:
    """Incrementally maintained row-echelon basis over Z/p."""

    def __init__(self, p: int):
        self.p = p
        self.rows: list[tuple[int, list[int]]] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = [x % self.p for x in v]
        for piv, r in self.rows:
            c = v[piv]
            if c:
                v = [(a - c * b) % self.p for a, b in zip(v, r)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        s = pow(v[piv], -1, self.p)
        v = [x * s % self.p for x in v]
        new = []
        for q, r in self.rows:
            c = r[piv]
            new.append((q, [(a - c * b) % self.p for a, b in zip(r, v)] if c else r))
        self.rows = new + [(piv, v)]
        return True

    def __len__(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[int]]:
        return [r for _, r in sorted(self.rows)]


def spin_submodule(seeds: Iterable[Sequence[int]], action: Sequence[Matrix], p: int) -> list[list[int]]:
    """Basis of the smallest invariant subspace containing ``seeds``.

    ``action`` holds matrices acting on column vectors over Z/p.
    """
    ech = _Echelon(p)
    queue = []
    for s in seeds:
        if ech.add(s):
            queue.append([x % p for x in s])
    while queue:
        v = queue.pop()
        for A in action:
            w = [x % p for x in linalg.matvec(A, v)]
            if ech.add(w):
                queue.append(w)
    return ech.basis()


def conjugation_action(g: int, p: int, group_gens: Sequence[Matrix]) -> list[Matrix]:
    """Matrices of ``X -> G X G^-1`` on sp_2g(Z/p) in basis coordinates."""
    basis = sp_lie_basis(g)
    out = []
    for G in group_gens:
        Ginv = linalg.mat_mod(int_inverse(G), p)
        cols = [sp_coords(_act(G, Ginv, B, p), p) for _, B in basis]
        out.append(linalg.transpose(cols))
    return out


def catalog_sp_generators(g: int, p: int) -> list[Matrix]:
    """Reductions of the catalog twist matrices, converted to block order."""
    from .surface import SurfaceContext
    from .symplectic import abelianize

    ctx = SurfaceContext(g)
    return [linalg.mat_mod(abelianize(ctx.twist(c)).convert("block").as_list(), p)
            for c in ctx.catalog_ids()]


def unipotent_generators(g: int, p: int) -> list[Matrix]:
    """Generators of the upper unitriangular Sylow p-subgroup of Sp_2g(Z/p)."""
    out = []
    n = 2 * g
    for i in range(g):
        for j in range(i + 1, g):
            M = identity(n)
            M[i][j] = 1
            M[g + j][g + i] = p - 1
            out.append(M)
    for i in range(g):
        for j in range(i, g):
            M = identity(n)
            M[i][g + j] = 1
            M[j][g + i] = 1
            out.append(M)
    return out


def fixed_space(action: Sequence[Matrix], p: int) -> list[list[int]]:
    d = len(action[0])
    rows = []
    for A in action:
        rows += [[A[i][j] - (i == j) for j in range(d)] for i in range(d)]
    return linalg.nullspace(rows, p)


def _projective_points(basis: Sequence[Sequence[int]], p: int):
    k = len(basis)
    d = len(basis[0]) if basis else 0
    for coeffs in product(range(p), repeat=k):
        nz = next((c for c in coeffs if c), 0)
        if nz != 1:
            continue
        yield [sum(c * b[i] for c, b in zip(coeffs, basis)) % p for i in range(d)]


@dataclass
class IrreducibilityReport:
    g: int
    p: int
    dimension: int
    irreducible: bool
    fixed_dim: int
    witness: list[list[int]] | None
    seed_dims: list[int]

    def witness_matrices(self) -> list[Matrix]:
        return [linalg.mat_mod(sp_from_coords(v, self.g), self.p) for v in (self.witness or [])]


MAX_FIXED_POINTS = 50_000


def sp_irreducible_report(g: int, p: int) -> IrreducibilityReport:
    """Decide irreducibility of sp_2g(Z/p) under conjugation by Sp_2g(Z/p).

    Any nonzero invariant subspace contains a nonzero vector fixed by the
    unitriangular p-subgroup, so it suffices to spin every such vector.
    """
    if g not in (1, 2) or p > 7:
        raise PreconditionError("irreducibility check is limited to g in {1, 2}, p <= 7")
    gens = catalog_sp_generators(g, p) + unipotent_generators(g, p)
    action = conjugation_action(g, p, gens)
    d = g * (2 * g + 1)
    U = conjugation_action(g, p, unipotent_generators(g, p))
    fixed = fixed_space(U, p)
    if p ** len(fixed) > MAX_FIXED_POINTS:
        raise PreconditionError("fixed space too large to scan")
    witness = None
    for v in _projective_points(fixed, p):
        sub = spin_submodule([v], action, p)
        if len(sub) < d:
            witness = sub
            break
    seed_dims = [len(spin_submodule([[int(i == k) for i in range(d)]], action, p)) for k in range(d)]
    return IrreducibilityReport(g, p, d, witness is None, len(fixed), witness, seed_dims)


def sp_irreducible(g: int, p: int) -> bool:
    return sp_irreducible_report(g, p).irreducible


def is_invariant(subspace: Sequence[Sequence[int]], action: Sequence[Matrix], p: int) -> bool:
    ech = _Echelon(p)
    for v in subspace:
        ech.add(v)
    return all(not any(ech.reduce(linalg.matvec(A, v))) for A in action for v in subspace)


def coinvariants(action: Sequence[Matrix], d: int, p: int = 0) -> int:
    """Dimension of ``V / span{x - g x}``; ``p = 0`` means the rationals."""
    rows = []
    for A in action:
        for j in range(d):
            rows.append([int(i == j) - A[i][j] for i in range(d)])
    return d - (linalg.rank(rows, p) if rows else 0)


# ---------------------------------------------------------------------------
# Charney subgroups of SL_n(Z)

def charney_membership(M: Sequence[Sequence[int]], which: str, n: int, p: int) -> bool:
    """Block shape ``[[1, c], [0, A]]`` with conditions on ``c`` and ``A``."""
    if which not in ("G", "Ghat", "K", "Khat"):
        raise ValueError(f"unknown subgroup {which!r}")
    if len(M) != n or linalg.det(M) != 1:
        return False
    if [M[i][0] for i in range(n)] != [1] + [0] * (n - 1):
        return False
    A = [list(r[1:]) for r in M[1:]]
    tail = M[0][1:]
    if which in ("K", "Khat"):
        if A != identity(n - 1):
            return False
    elif not in_level(A, p):
        return False
    if which in ("G", "K"):
        return all(c % p == 0 for c in tail)
    return True


def charney_element(A: Sequence[Sequence[int]], tail: Sequence[int]) -> Matrix:
    n = len(A) + 1
    M = identity(n)
    M[0][1:] = list(tail)
    for i in range(n - 1):
        M[i + 1][1:] = list(A[i])
    return M
