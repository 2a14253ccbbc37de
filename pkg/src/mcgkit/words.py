"""Free-group words, endomorphisms and automorphisms.

Letters are signed integers: ``+i`` is the generator ``s_i`` and ``-i`` its
inverse.  Words are kept freely reduced at all times, so equality of group
elements is equality of letter tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class MalformedInput(ValueError):
    """A letter is zero or outside the generator range."""


class RankMismatch(ValueError):
    pass


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def reduce(raw: Sequence[int], rank: int) -> "Word":
    """Freely reduce ``raw`` into a :class:`Word` of the given rank."""
    for x in raw:
        if not isinstance(x, int) or x == 0 or abs(x) > rank:
            raise MalformedInput(f"letter {x!r} out of range for rank {rank}")
    return Word(_reduce(raw), rank)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...]
    rank: int

    def __post_init__(self):
        # Only a cheap sanity check; construct through reduce() for raw input.
        if self.rank < 1:
            raise MalformedInput("rank must be positive")

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, i: int, rank: int) -> "Word":
        return reduce((i,), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else invert(self)
        out = Word.identity(self.rank)
        for _ in range(abs(n)):
            out = multiply(out, base)
        return out

    def inverse(self) -> "Word":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.letters

    def abelianization(self) -> list[int]:
        v = [0] * self.rank
        for x in self.letters:
            v[abs(x) - 1] += 1 if x > 0 else -1
        return v

    def to_json(self) -> list[int]:
        return list(self.letters)

    @classmethod
    def from_json(cls, data: Sequence[int], rank: int) -> "Word":
        return reduce(list(data), rank)

    def __repr__(self) -> str:
        return f"Word({list(self.letters)})"


def _check_rank(a: int, b: int) -> None:
    if a != b:
        raise RankMismatch(f"rank {a} != rank {b}")


def multiply(u: Word, v: Word) -> Word:
    _check_rank(u.rank, v.rank)
    a, b = u.letters, v.letters
    # Cancel at the seam only; both inputs are already reduced.
    i = 0
    n = min(len(a), len(b))
    while i < n and a[len(a) - 1 - i] == -b[i]:
        i += 1
    return Word(a[: len(a) - i] + b[i:], u.rank)


def invert(w: Word) -> Word:
    return Word(tuple(-x for x in reversed(w.letters)), w.rank)


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * invert(u) * invert(v)


def cyclic_reduce(letters: Sequence[int]) -> tuple[int, ...]:
    w = _reduce(letters)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return tuple(w[i:j])


def cyclic_canonical(letters: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of the unoriented conjugacy class of a word."""
    w = cyclic_reduce(letters)
    if not w:
        return w
    inv = tuple(-x for x in reversed(w))
    rots = [w[k:] + w[:k] for k in range(len(w))]
    rots += [inv[k:] + inv[:k] for k in range(len(inv))]
    return min(rots)


@dataclass(frozen=True)
class Endomorphism:
    rank: int
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.rank:
            raise RankMismatch(f"need {self.rank} images, got {len(self.images)}")

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls(rank, tuple((i,) for i in range(1, rank + 1)))

    @classmethod
    def from_words(cls, images: Sequence[Sequence[int]], rank: int | None = None) -> "Endomorphism":
        rank = len(images) if rank is None else rank
        return cls(rank, tuple(reduce(img, rank).letters for img in images))

    def image(self, i: int) -> Word:
        return Word(self.images[i - 1], self.rank)

    def apply_letters(self, letters: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        imgs = self.images
        for x in letters:
            piece = imgs[x - 1] if x > 0 else tuple(-y for y in reversed(imgs[-x - 1]))
            for y in piece:
                if out and out[-1] == -y:
                    out.pop()
                else:
                    out.append(y)
        return tuple(out)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)


def apply(e: Endomorphism, w: Word) -> Word:
    _check_rank(e.rank, w.rank)
    return Word(e.apply_letters(w.letters), e.rank)


def compose_endo(f: Endomorphism, g: Endomorphism) -> Endomorphism:
    """``f o g``: apply ``g`` first."""
    _check_rank(f.rank, g.rank)
    return Endomorphism(f.rank, tuple(f.apply_letters(img) for img in g.images))


@dataclass(frozen=True)
class Automorphism:
    forward: Endomorphism
    backward: Endomorphism

    def __post_init__(self):
        _check_rank(self.forward.rank, self.backward.rank)

    @property
    def rank(self) -> int:
        return self.forward.rank

    @classmethod
    def identity(cls, rank: int) -> "Automorphism":
        e = Endomorphism.identity(rank)
        return cls(e, e)

    def is_consistent(self) -> bool:
        """Check that ``backward`` really inverts ``forward`` on generators."""
        for i in range(1, self.rank + 1):
            if self.backward.apply_letters(self.forward.images[i - 1]) != (i,):
                return False
            if self.forward.apply_letters(self.backward.images[i - 1]) != (i,):
                return False
        return True

    def inverse(self) -> "Automorphism":
        return Automorphism(self.backward, self.forward)

    def __call__(self, w: Word) -> Word:
        return apply(self.forward, w)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "forward": [list(x) for x in self.forward.images],
            "backward": [list(x) for x in self.backward.images],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Automorphism":
        rank = int(data["rank"])
        return cls(
            Endomorphism.from_words(data["forward"], rank),
            Endomorphism.from_words(data["backward"], rank),
        )


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """Mapping-class order: ``compose(f, g)`` applies ``g`` first, then ``f``."""
    return Automorphism(compose_endo(f.forward, g.forward), compose_endo(g.backward, f.backward))
