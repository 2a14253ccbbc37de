"""The surface with one boundary component as a marked free group.

Catalog curves (cyclic words in ``s_1..s_2g``):

* ``a<i>`` = ``s_{2i-1}``, homology class ``a_i``
* ``b<i>`` = ``s_{2i}``, homology class ``b_i``
* ``c<i>`` = ``s_{2i} s_{2i-1} s_{2i}^-1 s_{2i+1}^-1`` for ``i < g``, class ``a_i - a_{i+1}``

``b1, a1`` together with the chain ``b1, c1, b2, c2, ...`` generate the
mapping class group; ``mod_p_generates`` re-checks this modulo small primes.

Provenance strings are products of twist symbols and can be replayed with
:meth:`SurfaceContext.evaluate`.  Grammar::

    expr   := factor ('*' factor)*  |  '1'
    factor := atom ('^' int)?
    atom   := 'T' id  |  'T[' letters ']'  |  'D'  |  '(' expr ')'

``T[...]`` is the twist about an arbitrary simple closed curve given by its
cyclic word and ``D`` is the twist about the boundary.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .ribbon import twist_automorphism, is_simple, NotSimple
from .symplectic import abelianize, transvection, basis_vector
from .words import (
    Automorphism,
    Endomorphism,
    MalformedInput,
    Word,
    compose,
    cyclic_reduce,
    reduce,
)


class UnknownCurve(KeyError):
    pass


def boundary_word(genus: int) -> Word:
    if genus < 1:
        raise ValueError("genus must be at least 1")
    letters: list[int] = []
    for i in range(1, genus + 1):
        a, b = 2 * i - 1, 2 * i
        letters += [a, b, -a, -b]
    return Word(tuple(letters), 2 * genus)


def commutator_product(h: int) -> tuple[int, ...]:
    """Letters of ``[s1,s2]...[s_{2h-1},s_{2h}]``."""
    return boundary_word(h).letters


def is_mapping_class(f: Automorphism, genus: int) -> bool:
    d = boundary_word(genus)
    if f.rank != d.rank:
        raise ValueError("rank mismatch")
    return f.forward.apply_letters(d.letters) == d.letters


def _wrap(s: str) -> str:
    return s if re.fullmatch(r"[A-Za-z0-9\[\],\-]+(\^-?\d+)?", s) else f"({s})"


@dataclass(frozen=True, eq=False)
class MappingClass:
    auto: Automorphism
    genus: int
    provenance: str = "1"

    def __post_init__(self):
        if self.auto.rank != 2 * self.genus:
            raise ValueError("automorphism rank does not match genus")

    @property
    def context(self) -> "SurfaceContext":
        return SurfaceContext(self.genus)

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        """``f * g`` applies ``g`` first."""
        if self.genus != other.genus:
            raise ValueError("genus mismatch")
        if other.provenance == "1":
            prov = self.provenance
        elif self.provenance == "1":
            prov = other.provenance
        else:
            prov = f"{self.provenance} * {other.provenance}"
        return MappingClass(compose(self.auto, other.auto), self.genus, prov)

    def inverse(self) -> "MappingClass":
        return MappingClass(self.auto.inverse(), self.genus, _invert_provenance(self.provenance))

    def __pow__(self, n: int) -> "MappingClass":
        base = self if n >= 0 else self.inverse()
        out = MappingClass.identity(self.genus)
        sq = base
        k = abs(n)
        while k:
            if k & 1:
                out = MappingClass(compose(out.auto, sq.auto), self.genus)
            sq = MappingClass(compose(sq.auto, sq.auto), self.genus)
            k >>= 1
        prov = "1" if n == 0 else f"{_wrap(self.provenance)}^{n}"
        return MappingClass(out.auto, self.genus, prov)

    def __call__(self, w: Word) -> Word:
        return self.auto(w)

    def image_of_curve(self, letters: Sequence[int]) -> tuple[int, ...]:
        return cyclic_reduce(self.auto.forward.apply_letters(letters))

    def same_as(self, other: "MappingClass") -> bool:
        return self.auto.forward == other.auto.forward

    def first_difference(self, other: "MappingClass"):
        """Index of the first generator on which the two classes disagree."""
        for i, (x, y) in enumerate(zip(self.auto.forward.images, other.auto.forward.images), 1):
            if x != y:
                return i
        return None

    def fixes_boundary(self) -> bool:
        return is_mapping_class(self.auto, self.genus)

    @classmethod
    def identity(cls, genus: int) -> "MappingClass":
        return cls(Automorphism.identity(2 * genus), genus, "1")

    def to_json(self) -> dict:
        out = self.auto.to_json()
        out["genus"] = self.genus
        out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, data: dict) -> "MappingClass":
        auto = Automorphism.from_json(data)
        genus = int(data.get("genus", auto.rank // 2))
        mc = cls(auto, genus, data.get("provenance", "?"))
        if not auto.is_consistent():
            raise MalformedInput("backward does not invert forward")
        if not mc.fixes_boundary():
            raise MalformedInput("automorphism does not fix the boundary word")
        return mc

    def __repr__(self) -> str:
        return f"MappingClass(g={self.genus}, {self.provenance})"


def _invert_provenance(prov: str) -> str:
    if prov == "1":
        return prov
    m = re.fullmatch(r"(T[A-Za-z0-9]+|T\[[0-9,\-]+\]|D)(?:\^(-?\d+))?", prov)
    if m:
        e = -int(m.group(2) or 1)
        return m.group(1) if e == 1 else f"{m.group(1)}^{e}"
    return f"({prov})^-1"


def conjugated_twist(f: MappingClass, t: MappingClass) -> MappingClass:
    """``f t f^-1``, the twist about the image curve."""
    out = f * t * f.inverse()
    return MappingClass(out.auto, out.genus, f"{_wrap(f.provenance)} * {_wrap(t.provenance)} * {_wrap(f.inverse().provenance)}")


def chain_transporter_ids(h: int) -> list[str]:
    """Chain ``b_{h+1}, c_h, b_h, ..., c_1, b_1, a_1`` used for the genus-h transporter."""
    ids = [f"b{h + 1}"]
    for i in range(h, 0, -1):
        ids += [f"c{i}", f"b{i}"]
    return ids + ["a1"]


class SurfaceContext:
    """Genus, boundary word and the twist catalog of the surface."""

    _cache: dict[int, "SurfaceContext"] = {}

    def __new__(cls, genus: int):
        if genus < 1:
            raise ValueError("genus must be at least 1")
        if genus not in cls._cache:
            obj = super().__new__(cls)
            obj.genus = genus
            obj.rank = 2 * genus
            obj.boundary = boundary_word(genus)
            cls._cache[genus] = obj
        return cls._cache[genus]

    def __repr__(self) -> str:
        return f"SurfaceContext(genus={self.genus})"

    # catalog ----------------------------------------------------------------
    @cached_property
    def catalog(self) -> dict[str, tuple[int, ...]]:
        cat = {}
        for i in range(1, self.genus + 1):
            cat[f"a{i}"] = (2 * i - 1,)
            cat[f"b{i}"] = (2 * i,)
        for i in range(1, self.genus):
            cat[f"c{i}"] = (2 * i, 2 * i - 1, -2 * i, -(2 * i + 1))
        return cat

    def catalog_ids(self) -> list[str]:
        return list(self.catalog)

    def curve(self, cid: str) -> tuple[int, ...]:
        try:
            return self.catalog[cid]
        except KeyError:
            raise UnknownCurve(f"no catalog curve {cid!r} in genus {self.genus}") from None

    def curve_class(self, cid: str) -> list[int]:
        return Word(self.curve(cid), self.rank).abelianization()

    def declared_class(self, cid: str) -> list[int]:
        """Homology class written down independently of the curve word."""
        kind, i = cid[0], int(cid[1:])
        if kind in "ab":
            return basis_vector(self.genus, cid)
        u, v = basis_vector(self.genus, f"a{i}"), basis_vector(self.genus, f"a{i + 1}")
        return [x - y for x, y in zip(u, v)]

    def disjoint_pairs(self) -> list[tuple[str, str]]:
        """Catalog pairs with disjoint representatives (they must commute)."""
        ids = self.catalog_ids()
        pairs = []
        for x in ids:
            for y in ids:
                if x < y and not self._adjacent(x, y):
                    pairs.append((x, y))
        return pairs

    @staticmethod
    def _adjacent(x: str, y: str) -> bool:
        kinds = {x[0]: int(x[1:]), y[0]: int(y[1:])}
        if x[0] == y[0]:
            return False
        if set(kinds) == {"a", "b"}:
            return kinds["a"] == kinds["b"]
        if set(kinds) == {"b", "c"}:
            return kinds["b"] in (kinds["c"], kinds["c"] + 1)
        return False

    # twists -----------------------------------------------------------------
    def twist(self, cid: str) -> MappingClass:
        return MappingClass(twist_automorphism(self.curve(cid), self.genus), self.genus, f"T{cid}")

    def twist_about(self, letters: Sequence[int]) -> MappingClass:
        """Twist about the simple closed curve with the given cyclic word."""
        w = cyclic_reduce(letters)
        label = "T[" + ",".join(str(x) for x in w) + "]"
        return MappingClass(twist_automorphism(tuple(w), self.genus), self.genus, label)

    def boundary_twist(self) -> MappingClass:
        """Right twist about the boundary: ``s -> delta^-1 s delta``."""
        d = self.boundary.letters
        dinv = tuple(-x for x in reversed(d))
        fwd = Endomorphism.from_words([dinv + (i,) + d for i in range(1, self.rank + 1)], self.rank)
        bwd = Endomorphism.from_words([d + (i,) + dinv for i in range(1, self.rank + 1)], self.rank)
        return MappingClass(Automorphism(fwd, bwd), self.genus, "D")

    def word(self, ids: Sequence[tuple[str, int]]) -> MappingClass:
        """Product ``T_{x1}^{e1} * T_{x2}^{e2} * ...`` (rightmost applied first)."""
        out = MappingClass.identity(self.genus)
        for cid, e in ids:
            out = out * (self.twist(cid) ** e)
        return out

    def random_word(self, rng: random.Random, length: int) -> MappingClass:
        ids = self.catalog_ids()
        return self.word([(rng.choice(ids), rng.choice((1, -1))) for _ in range(length)])

    # Torelli generators -----------------------------------------------------
    def _check_h(self, h: int) -> None:
        if not 1 <= h < self.genus:
            raise ValueError(f"need 1 <= h < g, got h={h}, g={self.genus}")

    def transporter(self, h: int) -> MappingClass:
        """Palindromic chain word carrying ``a_{h+1}`` to the far side of the genus-h piece."""
        self._check_h(h)
        chain = chain_transporter_ids(h)
        ids = [(c, 1) for c in chain] + [(c, 1) for c in reversed(chain)]
        return self.word(ids)

    def bp_curves(self, h: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """``(y, y')``: ``y = a_{h+1}`` and ``y'`` its image under the transporter."""
        y = self.curve(f"a{h + 1}")
        return y, self.transporter(h).image_of_curve(y)

    def bounding_pair(self, h: int) -> MappingClass:
        """``T_y T_{y'}^-1`` with ``y, y'`` cobounding the handles ``1..h``."""
        self._check_h(h)
        f = self.transporter(h)
        ty = self.twist(f"a{h + 1}")
        ty2 = conjugated_twist(f, ty)
        out = ty * ty2.inverse()
        return MappingClass(out.auto, self.genus, out.provenance)

    def separating_curve(self, h: int) -> tuple[int, ...]:
        self._check_h(h)
        return commutator_product(h)

    def separating_twist(self, h: int) -> MappingClass:
        """Twist about the curve cutting off handles ``1..h``, via the chain relation.

        For the chain ``a1, b1, c1, b2, ..., c_{h-1}, b_h`` of length 2h the
        product of its twists has order ``4h + 2`` up to the twist about the
        boundary of its neighbourhood.
        """
        self._check_h(h)
        chain = ["a1", "b1"]
        for i in range(1, h):
            chain += [f"c{i}", f"b{i + 1}"]
        base = self.word([(c, 1) for c in chain])
        return base ** (4 * h + 2)

    def bp_family(self) -> list[MappingClass]:
        return [self.bounding_pair(h) for h in range(1, self.genus)]

    # replay -----------------------------------------------------------------
    def evaluate(self, provenance: str) -> MappingClass:
        """Rebuild a mapping class from its provenance string."""
        tokens = re.findall(r"BP\d+|TS\d+|T\[[0-9,\-\s]*\]|T[A-Za-z][0-9]+|D|\^-?\d+|\*|\(|\)|1", provenance.replace(" ", ""))
        if "".join(tokens) != provenance.replace(" ", ""):
            raise MalformedInput(f"cannot parse provenance {provenance!r}")
        pos = 0

        def peek():
            return tokens[pos] if pos < len(tokens) else None

        def expr():
            nonlocal pos
            out = factor()
            while peek() == "*":
                pos += 1
                out = out * factor()
            return out

        def factor():
            nonlocal pos
            a = atom()
            if peek() and peek().startswith("^"):
                a = a ** int(peek()[1:])
                pos += 1
            return a

        def atom():
            nonlocal pos
            tok = peek()
            pos += 1
            if tok == "(":
                out = expr()
                if peek() != ")":
                    raise MalformedInput("unbalanced parentheses")
                pos += 1
                return out
            if tok == "1":
                return MappingClass.identity(self.genus)
            if tok == "D":
                return self.boundary_twist()
            if tok and tok.startswith("BP"):
                return self.bounding_pair(int(tok[2:]))
            if tok and tok.startswith("TS"):
                return self.separating_twist(int(tok[2:]))
            if tok and tok.startswith("T["):
                letters = [int(x) for x in tok[2:-1].split(",") if x]
                reduce(letters, self.rank)
                return self.twist_about(letters)
            if tok and tok.startswith("T"):
                return self.twist(tok[1:])
            raise MalformedInput(f"unexpected token {tok!r}")

        out = expr()
        if pos != len(tokens):
            raise MalformedInput(f"trailing input in {provenance!r}")
        return MappingClass(out.auto, self.genus, provenance)


@lru_cache(maxsize=None)
def catalog_transvection(genus: int, cid: str):
    return transvection(SurfaceContext(genus).declared_class(cid))


__all__ = [
    "MappingClass",
    "NotSimple",
    "SurfaceContext",
    "UnknownCurve",
    "boundary_word",
    "conjugated_twist",
    "is_mapping_class",
    "is_simple",
    "abelianize",
]
