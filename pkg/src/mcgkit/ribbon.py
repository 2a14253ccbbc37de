"""Dehn twists about simple closed curves on the one-vertex ribbon graph model.

The surface is a thickened rose with ``2g`` petals.  A curve is given by a
cyclic word; it is drawn in normal position (strands along the ribbons,
non-crossing chords in the vertex disk).  Strands sharing a ribbon are
ordered by comparing their continuations, using the cyclic order of the
half-edges at the vertex.  The twist is then read off by detouring each
generator loop around the curve at every crossing.
"""

from __future__ import annotations

from functools import lru_cache

from .words import Endomorphism, Automorphism, cyclic_reduce


class NotSimple(ValueError):
    """The cyclic word does not admit a simple representative."""


# A port is a half-edge at the vertex: (generator, +1) where the petal
# starts and (generator, -1) where it ends.


def _dep(x: int) -> tuple[int, int]:
    return (abs(x), 1) if x > 0 else (abs(x), -1)


def _arr(x: int) -> tuple[int, int]:
    return (abs(x), -1) if x > 0 else (abs(x), 1)


def port_order(genus: int) -> list[tuple[int, int]]:
    """Counterclockwise order of ports; the basepoint sits just before the first.

    Walking the boundary from the basepoint reads
    ``[s1,s2][s3,s4]...[s_{2g-1},s_{2g}]``.
    """
    order = []
    for i in range(1, genus + 1):
        a, b = 2 * i - 1, 2 * i
        order += [(a, 1), (b, -1), (a, -1), (b, 1)]
    return order


def boundary_from_ports(genus: int) -> tuple[int, ...]:
    """Trace the boundary face starting at the basepoint corner."""
    order = port_order(genus)
    nxt = {order[k]: order[(k + 1) % len(order)] for k in range(len(order))}
    port = order[0]
    word = []
    for _ in range(len(order)):
        gen, end = port
        letter = gen if end == 1 else -gen
        word.append(letter)
        port = nxt[_arr(letter)]
    return tuple(word)


class CurveDiagram:
    """Normal-position picture of a simple closed curve."""

    def __init__(self, letters, genus: int):
        w = cyclic_reduce(letters)
        if not w:
            raise NotSimple("trivial curve")
        if any(abs(x) > 2 * genus for x in w):
            raise ValueError("letter out of range")
        self.genus = genus
        self.word = w
        self.inv = tuple(-x for x in reversed(w))
        self.L = len(w)
        order = port_order(genus)
        self.pos = {p: k for k, p in enumerate(order)}
        self.nports = len(order)
        self._place_strands()
        self._build_chords()

    def _reading(self, r: int):
        return self.word if r == 0 else self.inv

    def _key(self, r: int, k: int) -> tuple[int, ...]:
        word = self._reading(r)
        L = self.L
        key = []
        here = _arr(word[k])
        for m in range(1, 2 * L + 1):
            x = word[(k + m) % L]
            out = _dep(x)
            key.append(-((self.pos[out] - self.pos[here]) % self.nports))
            here = _arr(x)
        return tuple(key)

    def _place_strands(self):
        visits: dict[tuple[int, int], list] = {}
        for r in (0, 1):
            word = self._reading(r)
            for k in range(self.L):
                visits.setdefault(_arr(word[k]), []).append((self._key(r, k), r, k))
        self.index: dict[tuple[int, int], int] = {}
        self.count: dict[tuple[int, int], int] = {}
        for port, vs in visits.items():
            vs.sort()
            for a, b in zip(vs, vs[1:]):
                if a[0] == b[0]:
                    raise NotSimple(f"{list(self.word)} is a proper power")
            self.count[port] = len(vs)
            for idx, (_, r, k) in enumerate(vs):
                self.index[(r, k)] = idx
        # A strand has mirror positions at the two ends of its ribbon.
        for k in range(self.L):
            x = self.word[k]
            n = self.count[_arr(x)]
            if self.index[(0, k)] + self.index[(1, self.L - 1 - k)] != n - 1:
                raise NotSimple(f"{list(self.word)}: inconsistent strand order")

    def point(self, r: int, k: int) -> tuple[int, int]:
        port = _arr(self._reading(r)[k])
        return (self.pos[port], self.index[(r, k)])

    def partner(self, r: int, k: int) -> tuple[int, int]:
        return (1 - r, (self.L - 2 - k) % self.L)

    def _build_chords(self):
        chords = []
        for k in range(self.L):
            v1 = (0, k)
            v2 = self.partner(0, k)
            p1, p2 = self.point(*v1), self.point(*v2)
            if p1 < p2:
                chords.append((p1, p2, v1, v2))
            else:
                chords.append((p2, p1, v2, v1))
        for i in range(len(chords)):
            x1, y1 = chords[i][:2]
            for j in range(i + 1, len(chords)):
                x2, y2 = chords[j][:2]
                if (x1 < x2 < y1 < y2) or (x2 < x1 < y2 < y1):
                    raise NotSimple(f"{list(self.word)} is not simple")
        self.chords = chords

    def loop_through(self, visit) -> tuple[int, ...]:
        """The curve read starting by exiting through the port of ``visit``."""
        r, m = self.partner(*visit)
        word = self._reading(r)
        s = (m + 1) % self.L
        return word[s:] + word[:s]

    def twist_image(self, j: int, right: bool = True) -> tuple[int, ...]:
        """Image of the generator loop ``s_j`` under the twist."""
        start = (self.pos[(j, 1)], self.count.get((j, 1), 0))
        end = (self.pos[(j, -1)], -1)
        out: list[int] = []
        # Leg from the basepoint to the start of petal j.
        crossing = sorted((c for c in self.chords if c[0] < start < c[1]), key=lambda c: c[0])
        for x, y, vx, vy in crossing:
            out += self.loop_through(vy if right else vx)
        out.append(j)
        # Leg from the end of petal j back to the basepoint.
        crossing = sorted((c for c in self.chords if c[0] < end < c[1]), key=lambda c: c[0], reverse=True)
        for x, y, vx, vy in crossing:
            out += self.loop_through(vx if right else vy)
        return out


def _reduced(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@lru_cache(maxsize=4096)
def twist_automorphism(letters: tuple[int, ...], genus: int) -> Automorphism:
    """Right Dehn twist about the simple closed curve with cyclic word ``letters``.

    Handedness is normalized so that the twist about ``s1`` sends ``s2`` to
    ``s2 s1``; with that choice the twist about the boundary is conjugation
    by the inverse boundary word.
    """
    d = CurveDiagram(letters, genus)
    n = 2 * genus
    fwd = Endomorphism(n, tuple(_reduced(d.twist_image(j, True)) for j in range(1, n + 1)))
    bwd = Endomorphism(n, tuple(_reduced(d.twist_image(j, False)) for j in range(1, n + 1)))
    return Automorphism(fwd, bwd)


def is_simple(letters, genus: int) -> bool:
    try:
        CurveDiagram(letters, genus)
    except NotSimple:
        return False
    return True
