"""Exact verification of lantern-type relations and formal abelianization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .johnson import johnson_tau
from .surface import MappingClass, SurfaceContext, conjugated_twist
from .symplectic import abelianize, torelli_check
from .words import _reduce


def _product(items: Sequence[MappingClass], genus: int) -> MappingClass:
    out = MappingClass.identity(genus)
    for m in items:
        out = out * m
    return out


@dataclass
class RelationInstance:
    name: str
    genus: int
    lhs: list[MappingClass]
    rhs: list[MappingClass]
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "genus": self.genus,
            "lhs": [m.provenance for m in self.lhs],
            "rhs": [m.provenance for m in self.rhs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RelationInstance":
        ctx = SurfaceContext(int(data["genus"]))
        return cls(data["name"], ctx.genus,
                   [ctx.evaluate(s) for s in data["lhs"]],
                   [ctx.evaluate(s) for s in data["rhs"]])


@dataclass
class RelationReport:
    name: str
    exact: bool
    first_difference: int | None
    symplectic: bool
    torelli: bool
    johnson: bool | None

    @property
    def passed(self) -> bool:
        return self.exact and self.symplectic and self.johnson is not False

    def lines(self) -> list[str]:
        out = [f"{self.name}: exact {'ok' if self.exact else 'FAIL'}"]
        if not self.exact:
            out[-1] += f" (first disagreement at generator s{self.first_difference})"
        out.append(f"{self.name}: homology {'ok' if self.symplectic else 'FAIL'}")
        if self.johnson is None:
            out.append(f"{self.name}: johnson skipped (not Torelli)")
        else:
            out.append(f"{self.name}: johnson {'ok' if self.johnson else 'FAIL'}")
        return out


def verify_relation(r: RelationInstance) -> RelationReport:
    for m in r.lhs + r.rhs:
        if m.genus != r.genus:
            raise ValueError(f"{m!r} does not live in genus {r.genus}")
    L, R = _product(r.lhs, r.genus), _product(r.rhs, r.genus)
    exact = L.same_as(R)
    ML, MR = abelianize(L), abelianize(R)
    torelli = torelli_check(ML) and torelli_check(MR)
    johnson = (johnson_tau(L) == johnson_tau(R)) if torelli else None
    return RelationReport(r.name, exact, None if exact else L.first_difference(R), ML == MR, torelli, johnson)


def corrupt(r: RelationInstance, index: int = 0) -> RelationInstance:
    """Negative control: invert one factor of the left side."""
    lhs = list(r.lhs)
    lhs[index] = lhs[index].inverse()
    return RelationInstance(r.name + "-corrupted", r.genus, lhs, r.rhs)


def conjugate_instance(r: RelationInstance, f: MappingClass) -> RelationInstance:
    fi = f.inverse()
    return RelationInstance(f"{r.name}^conj", r.genus,
                            [f * m * fi for m in r.lhs], [f * m * fi for m in r.rhs])


# ---------------------------------------------------------------------------
# Lantern

def lantern_curves(genus: int) -> dict[str, tuple[int, ...]]:
    """Based loops ``l1 l2 l3 = delta`` around the three inner boundaries and the
    three interior curves ``x_ij = l_i l_j`` of the four-holed sphere."""
    if genus < 3:
        raise ValueError("the lantern configuration needs genus at least 3")
    d = SurfaceContext(genus).boundary.letters
    l1 = (1, 2, -1)
    l2 = (-2, 3, 4, -3)
    l3 = (-4,) + d[8:]
    if _reduce(l1 + l2 + l3) != d:
        raise RuntimeError("lantern loops do not multiply to the boundary word")
    return {"l1": l1, "l2": l2, "l3": l3, "x12": l1 + l2, "x13": l1 + l3, "x23": l2 + l3}


def lantern_instance(genus: int = 3) -> RelationInstance:
    """``(T_x12 T_l3^-1)(T_x13 T_l2^-1)(T_x23 T_l1^-1) = T_boundary``."""
    ctx = SurfaceContext(genus)
    c = lantern_curves(genus)
    T = ctx.twist_about
    bps = [T(c["x12"]) * T(c["l3"]).inverse(),
           T(c["x13"]) * T(c["l2"]).inverse(),
           T(c["x23"]) * T(c["l1"]).inverse()]
    return RelationInstance("lantern", genus, bps, [ctx.boundary_twist()], {"curves": c})


# ---------------------------------------------------------------------------
# Crossed lantern

@dataclass
class CrossedLantern:
    instance: RelationInstance
    curves: dict[str, tuple[int, ...]]
    twists: dict[str, MappingClass]
    key_facts: dict[str, bool]
    derivation: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(self.key_facts.values()) and all(ok for _, ok in self.derivation)


def crossed_lantern_instance(genus: int = 2) -> CrossedLantern:
    """Crossed lantern on the genus-one piece with two boundary curves ``y1, y2``.

    ``y1 = a2`` and ``y2`` is its bounding-pair partner around handle 1;
    ``x2 = b2`` meets each once.  Then ``x1 = T_y2 T_y1^-1 (x2)`` and
    ``z_i = T_x2 (y_i)``.
    """
    if genus < 2:
        raise ValueError("the crossed lantern needs genus at least 2")
    ctx = SurfaceContext(genus)
    T = ctx.twist_about
    y1, y2 = ctx.bp_curves(1)
    x2 = ctx.curve("b2")
    Ty1, Ty2, Tx2 = ctx.twist("a2"), T(y2), ctx.twist("b2")
    F = Ty2 * Ty1.inverse()
    x1 = F.image_of_curve(x2)
    z1, z2 = Tx2.image_of_curve(y1), Tx2.image_of_curve(y2)
    Tx1, Tz1, Tz2 = T(x1), T(z1), T(z2)
    curves = {"y1": y1, "y2": y2, "x1": x1, "x2": x2, "z1": z1, "z2": z2}
    twists = {"y1": Ty1, "y2": Ty2, "x1": Tx1, "x2": Tx2, "z1": Tz1, "z2": Tz2}

    key = {
        "T_x2 T_y1 T_x2^-1 = T_z1": conjugated_twist(Tx2, Ty1).same_as(Tz1),
        "T_x2 T_y2 T_x2^-1 = T_z2": conjugated_twist(Tx2, Ty2).same_as(Tz2),
        "(T_y2 T_y1^-1) T_x2 (T_y2 T_y1^-1)^-1 = T_x1": conjugated_twist(F, Tx2).same_as(Tx1),
        "x1, x2 disjoint (twists commute)": (Tx1 * Tx2).same_as(Tx2 * Tx1),
        "y2 is the transporter image of y1": conjugated_twist(ctx.transporter(1), Ty1).same_as(Ty2),
    }

    # Replay the rearrangement: T_x1 T_x2^-1 = F T_x2 F^-1 T_x2^-1
    #   = T_y2 T_y1^-1 (T_x2 T_y1 T_y2^-1 T_x2^-1) = T_y2 T_y1^-1 T_z1 T_z2^-1.
    Y = Ty1 * Ty2.inverse()
    X = Tx1 * Tx2.inverse()
    steps = [
        ("T_x1 T_x2^-1 = F T_x2 F^-1 T_x2^-1", X.same_as(F * Tx2 * F.inverse() * Tx2.inverse())),
        ("F T_x2 F^-1 T_x2^-1 = F (T_x2 Y T_x2^-1)", (F * Tx2 * F.inverse() * Tx2.inverse()).same_as(F * Tx2 * Y * Tx2.inverse())),
        ("T_x2 Y T_x2^-1 = T_z1 T_z2^-1", (Tx2 * Y * Tx2.inverse()).same_as(Tz1 * Tz2.inverse())),
        ("F = Y^-1", F.same_as(Y.inverse())),
    ]
    inst = RelationInstance("crossed-lantern", genus, [Y, X], [Tz1 * Tz2.inverse()], {"curves": curves})
    return CrossedLantern(inst, curves, twists, key, steps)


# ---------------------------------------------------------------------------
# Formal words

@dataclass(frozen=True)
class Term:
    symbol: str
    exponent: int = 1
    conjugator: "FormalWord | None" = None


@dataclass(frozen=True)
class FormalWord:
    alphabet: frozenset[str]
    terms: tuple[Term, ...] = ()

    def __post_init__(self):
        for t in self.terms:
            if t.symbol not in self.alphabet:
                raise KeyError(f"symbol {t.symbol!r} not in the alphabet")

    def __mul__(self, other: "FormalWord") -> "FormalWord":
        return FormalWord(self.alphabet | other.alphabet, self.terms + other.terms)

    def inverse(self) -> "FormalWord":
        return FormalWord(self.alphabet, tuple(Term(t.symbol, -t.exponent, t.conjugator)
                                               for t in reversed(self.terms)))

    def conj(self, by: "FormalWord") -> "FormalWord":
        return FormalWord(self.alphabet | by.alphabet,
                          tuple(Term(t.symbol, t.exponent, by if t.conjugator is None else by * t.conjugator)
                                for t in self.terms))

    def evaluate(self, values: Mapping[str, MappingClass], genus: int) -> MappingClass:
        out = MappingClass.identity(genus)
        for t in self.terms:
            m = values[t.symbol] ** t.exponent
            if t.conjugator is not None:
                c = t.conjugator.evaluate(values, genus)
                m = c * m * c.inverse()
            out = out * m
        return out


def letter(alphabet, symbol: str, exponent: int = 1) -> FormalWord:
    return FormalWord(frozenset(alphabet), (Term(symbol, exponent),))


def formal_abelianization(w: FormalWord) -> dict[str, int]:
    out: dict[str, int] = {}
    for t in w.terms:
        if t.symbol not in w.alphabet:
            raise KeyError(t.symbol)
        out[t.symbol] = out.get(t.symbol, 0) + t.exponent
    return {k: v for k, v in out.items() if v}


def subtract(a: Mapping[str, int], b: Mapping[str, int]) -> dict[str, int]:
    keys = set(a) | set(b)
    return {k: a.get(k, 0) - b.get(k, 0) for k in sorted(keys) if a.get(k, 0) != b.get(k, 0)}


def killsep_word() -> FormalWord:
    """``(t3 t2 t1)(f3 t3^-1 f3^-1 f2 t2^-1 f2^-1 f1 t1^-1 f1^-1)``, the square of the boundary twist."""
    A = ["t1", "t2", "t3", "f1", "f2", "f3"]
    L = lambda s, e=1: letter(A, s, e)  # noqa: E731
    w = L("t3") * L("t2") * L("t1")
    for i in (3, 2, 1):
        w = w * L(f"f{i}") * L(f"t{i}", -1) * L(f"f{i}", -1)
    return w


@dataclass
class TelescopeReport:
    p: int
    conjugated_ok: list[bool]
    chain_ok: bool
    lhs: dict[str, int]
    rhs: dict[str, int]
    difference: dict[str, int]

    @property
    def passed(self) -> bool:
        return all(self.conjugated_ok) and self.chain_ok and self.difference == {"BP_x": -self.p}


def telescope_check(p: int, genus: int = 2) -> TelescopeReport:
    """Telescoping the T_x2-conjugates of the crossed lantern.

    With ``Y = T_y1 T_y2^-1``, ``X = T_x1 T_x2^-1`` and ``t = T_x2`` the
    relation reads ``Y X = t Y t^-1``; conjugating by ``t^k`` and chaining
    gives ``t^p Y t^-p = Y X (t X t^-1) ... (t^{p-1} X t^{1-p})``.
    """
    if p < 1 or p > 7 or (p > 1 and p % 2 == 0):
        raise ValueError("telescope_check supports odd p <= 7 (and p = 1)")
    cl = crossed_lantern_instance(genus)
    inst = cl.instance
    t = cl.twists["x2"]
    Y, X = inst.lhs
    conj_ok = []
    for k in range(p):
        c = t ** k
        conj_ok.append(verify_relation(conjugate_instance(inst, c)).exact)

    alphabet = ["BP_y", "BP_x", "T_x2"]

    def power(k):
        return FormalWord(frozenset(alphabet), (Term("T_x2", k),) if k else ())

    Yw, Xw = letter(alphabet, "BP_y"), letter(alphabet, "BP_x")
    lhs = Yw.conj(power(p)) if p else Yw
    rhs = Yw
    for k in range(p):
        rhs = rhs * (Xw.conj(power(k)) if k else Xw)
    values = {"BP_y": Y, "BP_x": X, "T_x2": t}
    chain_ok = lhs.evaluate(values, genus).same_as(rhs.evaluate(values, genus))
    la, ra = formal_abelianization(lhs), formal_abelianization(rhs)
    return TelescopeReport(p, conj_ok, chain_ok, la, ra, subtract(la, ra))
