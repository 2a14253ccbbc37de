"""Exterior powers of a free module over Z or Z/m."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import linalg
from .symplectic import intersection


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation and the sorted tuple (sign 0 on repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


@dataclass(frozen=True)
class ExteriorElement:
    rank: int
    degree: int
    modulus: int = 0
    terms: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for idx, c in self.terms.items():
            idx = tuple(idx)
            if len(idx) != self.degree or any(not 1 <= i <= self.rank for i in idx):
                raise ValueError(f"bad index tuple {idx} for degree {self.degree}, rank {self.rank}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not increasing")
            if self.modulus:
                c %= self.modulus
            if c:
                clean[idx] = c
        object.__setattr__(self, "terms", clean)

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, rank: int, degree: int, modulus: int = 0) -> "ExteriorElement":
        return cls(rank, degree, modulus, {})

    @classmethod
    def from_unsorted(cls, rank: int, degree: int, raw: Iterable[tuple[Sequence[int], int]],
                      modulus: int = 0) -> "ExteriorElement":
        acc: dict[tuple[int, ...], int] = {}
        for idx, c in raw:
            s, key = _sort_sign(idx)
            if s:
                acc[key] = acc.get(key, 0) + s * c
        return cls(rank, degree, modulus, acc)

    @classmethod
    def basis(cls, rank: int, *idx: int, modulus: int = 0) -> "ExteriorElement":
        return cls.from_unsorted(rank, len(idx), [(idx, 1)], modulus)

    @classmethod
    def vector(cls, coords: Sequence[int], modulus: int = 0) -> "ExteriorElement":
        return cls(len(coords), 1, modulus, {(i + 1,): c for i, c in enumerate(coords) if c})

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "ExteriorElement") -> None:
        if self.rank != other.rank or self.modulus != other.modulus:
            raise ValueError("rank or modulus mismatch")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return ExteriorElement(self.rank, self.degree, self.modulus, acc)

    def __neg__(self) -> "ExteriorElement":
        return self.scale(-1)

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def scale(self, c: int) -> "ExteriorElement":
        return ExteriorElement(self.rank, self.degree, self.modulus,
                               {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c: int) -> "ExteriorElement":
        return self.scale(c)

    def __xor__(self, other: "ExteriorElement") -> "ExteriorElement":
        return wedge(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def reduce(self, modulus: int) -> "ExteriorElement":
        return ExteriorElement(self.rank, self.degree, modulus, self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return (self.rank, self.degree, self.modulus) == (other.rank, other.degree, other.modulus) \
            and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rank, self.degree, self.modulus, tuple(sorted(self.terms.items()))))

    # coordinates ----------------------------------------------------------
    def to_vector(self) -> list[int]:
        return [self.terms.get(k, 0) for k in basis_tuples(self.rank, self.degree)]

    @classmethod
    def from_vector(cls, rank: int, degree: int, coords: Sequence[int], modulus: int = 0):
        keys = basis_tuples(rank, degree)
        return cls(rank, degree, modulus, {k: int(c) for k, c in zip(keys, coords) if c})

    def apply_linear(self, M: Sequence[Sequence[int]]) -> "ExteriorElement":
        """Induced action of the matrix ``M`` (acting on columns) on this power."""
        cols = [ExteriorElement.vector([row[j] for row in M], self.modulus) for j in range(self.rank)]
        out = ExteriorElement.zero(self.rank, self.degree, self.modulus)
        for idx, c in self.terms.items():
            piece = cols[idx[0] - 1]
            for i in idx[1:]:
                piece = wedge(piece, cols[i - 1])
            out = out + piece.scale(c)
        return out

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "modulus": self.modulus,
            "terms": [{"indices": list(k), "coeff": c} for k, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExteriorElement":
        return cls(int(data["rank"]), int(data["degree"]), int(data.get("modulus", 0)),
                   {tuple(t["indices"]): int(t["coeff"]) for t in data["terms"]})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items()):
            parts.append(f"{c}*e" + "^e".join(str(i) for i in k))
        return " + ".join(parts)


def basis_tuples(rank: int, degree: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, rank + 1), degree))


def wedge(u: ExteriorElement, v: ExteriorElement) -> ExteriorElement:
    u._check(v)
    raw = []
    for i, a in u.terms.items():
        for j, b in v.terms.items():
            raw.append((i + j, a * b))
    return ExteriorElement.from_unsorted(u.rank, u.degree + v.degree, raw, u.modulus)


def pushforward_fundamental(images: Sequence[Sequence[int]], modulus: int = 0) -> ExteriorElement:
    """``sum_i phi(alpha_i) ^ phi(beta_i)`` for images listed as alpha1, beta1, alpha2, ..."""
    if len(images) % 2 or not images:
        raise ValueError("need images of alpha_i, beta_i for each handle")
    N = len(images[0])
    out = ExteriorElement.zero(N, 2, modulus)
    for k in range(0, len(images), 2):
        out = out + wedge(ExteriorElement.vector(images[k], modulus),
                          ExteriorElement.vector(images[k + 1], modulus))
    return out


# ---------------------------------------------------------------------------
# The contraction embedding of the third power into Hom(H, second power).

def _unit(n: int, i: int) -> list[int]:
    return [int(k == i) for k in range(n)]


def iota(t: ExteriorElement) -> list[ExteriorElement]:
    """Images of the basis vectors of H under the map attached to ``t``.

    ``x^y^z`` sends ``v`` to ``i(x,v) y^z + i(y,v) z^x + i(z,v) x^y``.
    """
    if t.degree != 3 or t.rank % 2:
        raise ValueError("iota needs a degree-3 element over an even-rank lattice")
    n = t.rank
    out = []
    for j in range(n):
        v = _unit(n, j)
        raw = []
        for (x, y, z), c in t.terms.items():
            ex, ey, ez = _unit(n, x - 1), _unit(n, y - 1), _unit(n, z - 1)
            for first, (p, q) in ((ex, (y, z)), (ey, (z, x)), (ez, (x, y))):
                s = intersection(first, v)
                if s:
                    raw.append(((p, q), c * s))
        out.append(ExteriorElement.from_unsorted(n, 2, raw, t.modulus))
    return out


def iota_matrix(rank: int) -> linalg.Matrix:
    """Integer matrix of iota: columns are degree-3 basis tuples, rows (v, pair)."""
    cols = []
    for idx in basis_tuples(rank, 3):
        images = iota(ExteriorElement.basis(rank, *idx))
        cols.append([c for img in images for c in img.to_vector()])
    return linalg.transpose(cols)


def hom_vector(L: Sequence[ExteriorElement]) -> list[int]:
    return [c for img in L for c in img.to_vector()]


def iota_solve(L: Sequence[ExteriorElement], modulus: int = 0):
    """Preimage of ``L`` under iota, or ``None`` if ``L`` is not in the image."""
    if not L:
        raise ValueError("empty map")
    rank = L[0].rank
    if len(L) != rank or any(x.rank != rank or x.degree != 2 for x in L):
        raise ValueError("rank mismatch in iota_solve")
    A = iota_matrix(rank)
    x = linalg.solve(A, hom_vector(L), modulus)
    if x is None:
        return None
    if not modulus:
        if any(c.denominator != 1 for c in x):
            return None
        x = [int(c) for c in x]
    return ExteriorElement.from_vector(rank, 3, x, modulus)
