"""First homology of the surface, the intersection form and symplectic matrices.

Coordinates are interleaved ``(a1, b1, ..., ag, bg)`` unless a matrix is
tagged ``block``, in which case they are ``(a1..ag, b1..bg)``.  The sign
convention is ``i(a_i, b_i) = +1`` throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .words import Automorphism


class NotSymplectic(RuntimeError):
    """An abelianization failed the symplectic test; a twist formula is broken."""


class SizeGuard(ValueError):
    """Refusal to run an enumeration that is too large for desk scale."""


def form_matrix(genus: int, order: str = "interleaved") -> linalg.Matrix:
    n = 2 * genus
    J = linalg.zeros(n)
    for i in range(genus):
        if order == "interleaved":
            a, b = 2 * i, 2 * i + 1
        elif order == "block":
            a, b = i, genus + i
        else:
            raise ValueError(f"unknown basis order {order!r}")
        J[a][b], J[b][a] = 1, -1
    return J


def intersection(u: Sequence[int], v: Sequence[int]) -> int:
    """Algebraic intersection number in interleaved coordinates."""
    if len(u) != len(v) or len(u) % 2:
        raise ValueError("vectors must have equal even length")
    return sum(u[k] * v[k + 1] - u[k + 1] * v[k] for k in range(0, len(u), 2))


def basis_vector(genus: int, name: str) -> list[int]:
    """``'a2'`` or ``'b1'`` as an interleaved coordinate vector."""
    kind, i = name[0], int(name[1:])
    v = [0] * (2 * genus)
    v[2 * (i - 1) + (kind == "b")] = 1
    return v


def _block_perm(genus: int) -> list[int]:
    # perm[k] = interleaved index of the k-th block coordinate
    return [2 * i for i in range(genus)] + [2 * i + 1 for i in range(genus)]


@dataclass(frozen=True)
class SymplecticMatrix:
    rows: tuple[tuple[int, ...], ...]
    order: str = "interleaved"

    @classmethod
    def of(cls, rows, order: str = "interleaved") -> "SymplecticMatrix":
        return cls(linalg.freeze(rows), order)

    @property
    def genus(self) -> int:
        return len(self.rows) // 2

    def as_list(self) -> linalg.Matrix:
        return [list(r) for r in self.rows]

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.order != other.order:
            raise ValueError("basis orders differ")
        return SymplecticMatrix.of(linalg.matmul(self.rows, other.rows), self.order)

    def convert(self, order: str) -> "SymplecticMatrix":
        if order == self.order:
            return self
        perm = _block_perm(self.genus)
        if order == "block":
            rows = [[self.rows[perm[i]][perm[j]] for j in range(len(perm))] for i in range(len(perm))]
        else:
            inv = {v: k for k, v in enumerate(perm)}
            rows = [[self.rows[inv[i]][inv[j]] for j in range(len(perm))] for i in range(len(perm))]
        return SymplecticMatrix.of(rows, order)

    def is_symplectic(self, modulus: int = 0) -> bool:
        J = form_matrix(self.genus, self.order)
        lhs = linalg.matmul(linalg.matmul(linalg.transpose(self.rows), J), self.rows)
        if modulus:
            return linalg.mat_mod(lhs, modulus) == linalg.mat_mod(J, modulus)
        return lhs == J

    def apply(self, v: Sequence[int]) -> list[int]:
        return linalg.matvec(self.rows, v)

    def to_json(self) -> dict:
        return {"order": self.order, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "SymplecticMatrix":
        return cls.of(data["rows"], data.get("order", "interleaved"))


def transvection(x: Sequence[int]) -> SymplecticMatrix:
    """Matrix of ``v -> v + i(x, v) x``."""
    n = len(x)
    cols = []
    for j in range(n):
        e = [int(k == j) for k in range(n)]
        c = intersection(x, e)
        cols.append([e[k] + c * x[k] for k in range(n)])
    return SymplecticMatrix.of(linalg.transpose(cols))


def abelianize(f) -> SymplecticMatrix:
    """Action on homology; ``f`` is a MappingClass or a bare Automorphism."""
    auto: Automorphism = getattr(f, "auto", f)
    n = auto.rank
    cols = []
    for img in auto.forward.images:
        v = [0] * n
        for x in img:
            v[abs(x) - 1] += 1 if x > 0 else -1
        cols.append(v)
    M = SymplecticMatrix.of(linalg.transpose(cols))
    if not M.is_symplectic():
        raise NotSymplectic(f"abelianization {M.as_list()} is not symplectic")
    return M


def congruence_check(M: SymplecticMatrix, p: int) -> bool:
    if p < 2:
        raise ValueError("level must be at least 2")
    n = len(M.rows)
    return all((M.rows[i][j] - (i == j)) % p == 0 for i in range(n) for j in range(n))


def torelli_check(M: SymplecticMatrix) -> bool:
    n = len(M.rows)
    return all(M.rows[i][j] == (i == j) for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# Finite symplectic groups, desk scale only.

MAX_ENUMERATION = 100_000


def enumerate_sp(genus: int, p: int) -> list[tuple[tuple[int, ...], ...]]:
    """All of Sp_{2g}(Z/p) in interleaved order, built column by column."""
    if p ** (2 * genus) > 100 or genus > 2:
        raise SizeGuard(f"enumerating Sp_{2 * genus}(Z/{p}) is beyond desk scale")
    n = 2 * genus
    J = form_matrix(genus)
    vectors = [list(v) for v in _all_vectors(n, p)]
    out = []

    def form(u, v):
        return intersection(u, v) % p

    def extend(cols):
        k = len(cols)
        if k == n:
            out.append(linalg.freeze(linalg.transpose(cols)))
            return
        for v in vectors:
            if all(form(cols[i], v) == J[i][k] % p for i in range(k)):
                cols.append(v)
                extend(cols)
                cols.pop()
                if len(out) > MAX_ENUMERATION:
                    raise SizeGuard("enumeration exceeded its size guard")

    extend([])
    return out


def _all_vectors(n: int, p: int):
    if n == 0:
        yield ()
        return
    for rest in _all_vectors(n - 1, p):
        for x in range(p):
            yield rest + (x,)


def closure(generators: Sequence[Sequence[Sequence[int]]], p: int, limit: int = MAX_ENUMERATION) -> set:
    """Breadth-first closure of matrices under right multiplication mod p."""
    gens = [linalg.freeze(linalg.mat_mod(g, p)) for g in generators]
    n = len(gens[0])
    start = linalg.freeze(linalg.identity(n))
    seen = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        for g in gens:
            h = linalg.freeze(linalg.matmul(m, g, p))
            if h not in seen:
                seen.add(h)
                if len(seen) > limit:
                    raise SizeGuard("closure exceeded its size guard")
                queue.append(h)
    return seen


def mod_p_generates(genus: int, p: int) -> dict:
    """Compare the group generated by catalog twist matrices with all of Sp_{2g}(Z/p)."""
    from .surface import SurfaceContext

    if genus not in (1, 2) or p not in (2, 3):
        raise SizeGuard("mod_p_generates supports g in {1, 2} and p in {2, 3}")
    ctx = SurfaceContext(genus)
    gens = [abelianize(ctx.twist(cid)).rows for cid in ctx.catalog_ids()]
    generated = closure(gens, p)
    full = enumerate_sp(genus, p)
    return {
        "genus": genus,
        "p": p,
        "generated_order": len(generated),
        "group_order": len(full),
        "generates": len(generated) == len(full) and generated == set(full),
    }
