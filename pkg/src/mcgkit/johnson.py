"""Class-2 nilpotent quotient of the surface group and the Johnson homomorphism.

Elements of the quotient are pairs ``(a, c)`` with ``a`` in H and ``c`` in
the second exterior power, multiplied by

    (a, c) (a', c') = (a + a', c + c' + kappa(a, a'))

where ``kappa(a, a') = sum_{i>j} a_i a'_j e_i ^ e_j``.  With this cocycle a
commutator ``[u, v]`` maps to ``(0, ab(u) ^ ab(v))``.  Reducing everything
mod an odd prime gives the exponent-p quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import linalg
from .exterior import ExteriorElement, basis_tuples, iota, iota_matrix, iota_solve, wedge
from .symplectic import abelianize, congruence_check, form_matrix, torelli_check
from .words import Word


class UnsupportedModulus(ValueError):
    pass


class NotInTorelli(ValueError):
    pass


class ConventionError(RuntimeError):
    """A computed Johnson map fell outside the image of iota."""


def _check_modulus(m: int) -> None:
    if m == 0:
        return
    if m < 3 or m % 2 == 0 or any(m % d == 0 for d in range(3, int(m ** 0.5) + 1, 2)):
        raise UnsupportedModulus(f"modulus {m} is not an odd prime")


def kappa(a: Sequence[int], b: Sequence[int], modulus: int = 0) -> ExteriorElement:
    n = len(a)
    terms = {}
    for j in range(n):
        if not b[j]:
            continue
        for i in range(j + 1, n):
            if a[i]:
                # e_i ^ e_j = -(e_j ^ e_i) with j < i
                terms[(j + 1, i + 1)] = terms.get((j + 1, i + 1), 0) - a[i] * b[j]
    return ExteriorElement(n, 2, modulus, terms)


@dataclass(frozen=True)
class NilpotentElement:
    a: tuple[int, ...]
    c: ExteriorElement
    modulus: int = 0

    def __post_init__(self):
        if self.modulus:
            object.__setattr__(self, "a", tuple(x % self.modulus for x in self.a))

    @classmethod
    def identity(cls, rank: int, modulus: int = 0) -> "NilpotentElement":
        return cls((0,) * rank, ExteriorElement.zero(rank, 2, modulus), modulus)

    @classmethod
    def generator(cls, letter: int, rank: int, modulus: int = 0) -> "NilpotentElement":
        a = [0] * rank
        a[abs(letter) - 1] = 1 if letter > 0 else -1
        return cls(tuple(a), ExteriorElement.zero(rank, 2, modulus), modulus)

    def __mul__(self, other: "NilpotentElement") -> "NilpotentElement":
        a = tuple(x + y for x, y in zip(self.a, other.a))
        c = self.c + other.c + kappa(self.a, other.a, self.modulus)
        return NilpotentElement(a, c, self.modulus)

    def inverse(self) -> "NilpotentElement":
        a = tuple(-x for x in self.a)
        return NilpotentElement(a, -self.c + kappa(self.a, self.a, self.modulus), self.modulus)

    def __pow__(self, n: int) -> "NilpotentElement":
        base = self if n >= 0 else self.inverse()
        out = NilpotentElement.identity(len(self.a), self.modulus)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not any(self.a) and self.c.is_zero()


def project_nilpotent(w: Word | Sequence[int], modulus: int = 0, rank: int | None = None) -> NilpotentElement:
    """Image of a word in the class-2 quotient, collected left to right."""
    _check_modulus(modulus)
    letters = w.letters if isinstance(w, Word) else tuple(w)
    n = w.rank if isinstance(w, Word) else rank
    if n is None:
        raise ValueError("rank required for a bare letter sequence")
    a = [0] * n
    terms: dict[tuple[int, int], int] = {}
    for x in letters:
        k = abs(x) - 1
        s = 1 if x > 0 else -1
        # kappa(a, +-e_k) only has terms with i > k.
        for i in range(k + 1, n):
            if a[i]:
                terms[(k + 1, i + 1)] = terms.get((k + 1, i + 1), 0) - a[i] * s
        a[k] += s
    return NilpotentElement(tuple(a), ExteriorElement(n, 2, modulus, terms), modulus)


# ---------------------------------------------------------------------------

def _raw_hom(f, modulus: int) -> list[ExteriorElement]:
    auto = getattr(f, "auto", f)
    n = auto.rank
    out = []
    for i in range(1, n + 1):
        img = auto.forward.images[i - 1]
        w = (i,) + tuple(-x for x in reversed(img))
        out.append(project_nilpotent(w, modulus, n).c)
    return out


def johnson_hom(f) -> list[ExteriorElement]:
    """``J_f``: images of the basis of H, from ``s_i f(s_i)^-1``."""
    M = abelianize(f)
    if not torelli_check(M):
        raise NotInTorelli(f"not a Torelli element; abelianization {M.as_list()}")
    return _raw_hom(f, 0)


@lru_cache(maxsize=None)
def calibration(genus: int) -> int:
    """Global sign making tau of the genus-1 bounding pair equal ``a2 ^ a1 ^ b1``."""
    from .surface import SurfaceContext

    if genus < 2:
        return 1
    ctx = SurfaceContext(genus)
    raw = iota_solve(johnson_hom(ctx.bounding_pair(1)))
    expected = bp_expected(genus, 1, [0, 0, 1] + [0] * (2 * genus - 3))
    for s in (1, -1):
        if raw is not None and raw.scale(s) == expected:
            return s
    raise ConventionError("genus-1 bounding pair does not match the closed formula up to sign")


def johnson_tau(f) -> ExteriorElement:
    J = johnson_hom(f)
    genus = len(J) // 2
    t = iota_solve(J)
    if t is None:
        raise ConventionError("Johnson map is not in the image of iota")
    return t.scale(calibration(genus))


def bp_expected(genus: int, h: int, pair_class: Sequence[int],
                cut_basis: Sequence[tuple[Sequence[int], Sequence[int]]] | None = None,
                modulus: int = 0) -> ExteriorElement:
    """``[x] ^ (a1^b1 + ... + ah^bh)`` for a symplectic basis of the cut-off piece."""
    n = 2 * genus
    if not 1 <= h < genus or len(pair_class) != n:
        raise ValueError("dimension mismatch")
    if cut_basis is None:
        cut_basis = []
        for i in range(h):
            a = [0] * n
            b = [0] * n
            a[2 * i], b[2 * i + 1] = 1, 1
            cut_basis.append((a, b))
    if len(cut_basis) != h:
        raise ValueError("cut basis must have h pairs")
    omega = ExteriorElement.zero(n, 2, modulus)
    for a, b in cut_basis:
        omega = omega + wedge(ExteriorElement.vector(a, modulus), ExteriorElement.vector(b, modulus))
    return wedge(ExteriorElement.vector(pair_class, modulus), omega)


# ---------------------------------------------------------------------------
# mod p

def _hom_form(genus: int) -> linalg.Matrix:
    """Invariant form on Hom(H, second power) induced by the intersection form."""
    n = 2 * genus
    J = form_matrix(genus)
    pairs = basis_tuples(n, 2)

    def on_pairs(P, Q):
        x, y = P[0] - 1, P[1] - 1
        z, w = Q[0] - 1, Q[1] - 1
        return J[x][z] * J[y][w] - J[x][w] * J[y][z]

    idx = [(j, P) for j in range(n) for P in pairs]
    return [[J[j][k] * on_pairs(P, Q) for (k, Q) in idx] for (j, P) in idx]


def _coordinate_inverse(M: linalg.Matrix) -> linalg.Matrix:
    """Integral left inverse of iota read off rows with a single nonzero entry."""
    ncols = len(M[0])
    P = [[0] * len(M) for _ in range(ncols)]
    found = set()
    for r, row in enumerate(M):
        nz = [(c, x) for c, x in enumerate(row) if x]
        if len(nz) == 1 and nz[0][0] not in found and abs(nz[0][1]) == 1:
            c, x = nz[0]
            P[c][r] = x
            found.add(c)
    if len(found) != ncols:
        raise ConventionError("no coordinate left inverse for iota")
    return P


@dataclass(frozen=True)
class Projection:
    genus: int
    p: int
    kind: str
    matrix: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def projection(genus: int, p: int) -> Projection:
    """Fixed projection of Hom(H_p, second power) onto the iota image.

    The symplectic-orthogonal projection is used whenever its Gram matrix is
    invertible mod p.  For p = 3 it is not (the Gram matrix is divisible by 3)
    and the coordinate left inverse is used instead.
    """
    _check_modulus(p)
    M = iota_matrix(2 * genus)
    B = _hom_form(genus)
    MtB = linalg.matmul(linalg.transpose(M), B)
    G = linalg.matmul(MtB, M)
    if linalg.rank(G, p) == len(G):
        P = linalg.matmul(linalg.inverse(G, p), MtB, p)
        return Projection(genus, p, "symplectic-orthogonal", linalg.freeze(P))
    P = linalg.mat_mod(_coordinate_inverse(M), p)
    return Projection(genus, p, "coordinate", linalg.freeze(P))


@dataclass(frozen=True)
class ModPResult:
    tau: ExteriorElement
    residual: tuple[int, ...]
    projection: str

    @property
    def in_image(self) -> bool:
        return not any(self.residual)


def johnson_mod_p_full(f, p: int) -> ModPResult:
    _check_modulus(p)
    if p == 0:
        raise UnsupportedModulus("use johnson_tau for the integral map")
    M = abelianize(f)
    if not congruence_check(M, p):
        raise NotInTorelli(f"not in the level-{p} subgroup; abelianization {M.as_list()}")
    genus = M.genus
    J = _raw_hom(f, p)
    vec = [c for img in J for c in img.to_vector()]
    proj = projection(genus, p)
    coords = linalg.matvec(proj.matrix, vec)
    coords = [x * calibration(genus) % p for x in coords]
    t = ExteriorElement.from_vector(2 * genus, 3, coords, p)
    back = [x * calibration(genus) for x in coords]
    image = linalg.matvec(iota_matrix(2 * genus), back)
    residual = tuple((v - w) % p for v, w in zip(vec, image))
    return ModPResult(t, residual, proj.kind)


def johnson_mod_p(f, p: int) -> ExteriorElement:
    return johnson_mod_p_full(f, p).tau


def iota_image(t: ExteriorElement) -> list[ExteriorElement]:
    return iota(t)
