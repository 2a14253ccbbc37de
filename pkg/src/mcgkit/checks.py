"""The acceptance suite, shared by the test-suite and ``mcgkit selftest``.

Every check is exact.  Random sampling goes through a ``random.Random``
seeded from ``MCGKIT_SEED`` (default 20240917).
"""

from __future__ import annotations

import os
import random
import time
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Callable

from . import congruence as cg
from . import linalg
from .exterior import ExteriorElement, basis_tuples, pushforward_fundamental, wedge
from .johnson import bp_expected, calibration, johnson_mod_p_full, johnson_tau, project_nilpotent
from .relations import (
    crossed_lantern_instance,
    formal_abelianization,
    killsep_word,
    lantern_instance,
    telescope_check,
    verify_relation,
)
from .surface import MappingClass, SurfaceContext, conjugated_twist
from .symplectic import abelianize, mod_p_generates, torelli_check, transvection
from .words import Word, commutator, reduce

DEFAULT_SEED = 20240917


def seed_from_env() -> int:
    return int(os.environ.get("MCGKIT_SEED", DEFAULT_SEED))


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name} ({self.seconds:.1f}s)"


class _Log:
    def __init__(self):
        self.ok = True
        self.lines: list[str] = []

    def expect(self, cond: bool, what: str) -> None:
        if not cond:
            self.ok = False
            self.lines.append(f"failed: {what}")

    def note(self, what: str) -> None:
        self.lines.append(what)


# ---------------------------------------------------------------------------
# helpers

def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    letters = [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(rng.randint(0, max_len))]
    return reduce(letters, rank)


def random_torelli(ctx: SurfaceContext, rng: random.Random, conj_len: int = 3) -> MappingClass:
    """A conjugate of a bounding pair map or separating twist by a random catalog word."""
    h = rng.randint(1, ctx.genus - 1)
    base = ctx.bounding_pair(h) if rng.random() < 0.8 else ctx.separating_twist(h)
    if rng.random() < 0.5:
        base = base.inverse()
    w = ctx.random_word(rng, rng.randint(0, conj_len))
    return w * base * w.inverse()


@lru_cache(maxsize=None)
def torelli_generating_family(ctx: SurfaceContext) -> list[MappingClass]:
    """Bounding pair maps plus conjugates by catalog twists, grown breadth first.

    A conjugate is kept only when its tau-value raises the rational rank of
    the span; the search stops at full rank.
    """
    target = len(basis_tuples(ctx.rank, 3))
    fam: list[MappingClass] = []
    rows: list[list[int]] = []
    queue = list(ctx.bp_family())
    twists = [ctx.twist(c) ** e for c in ctx.catalog_ids() for e in (1, -1)]
    while queue and len(rows) < target:
        f = queue.pop(0)
        v = johnson_tau(f).to_vector()
        if linalg.rank(rows + [v]) == len(rows):
            continue
        fam.append(f)
        rows.append(v)
        queue += [conjugated_twist(t, f) for t in twists]
    return fam


# ---------------------------------------------------------------------------
# the criteria

def check_catalog(rng, log: _Log) -> None:
    for g in range(1, 5):
        ctx = SurfaceContext(g)
        for cid in ctx.catalog_ids():
            t = ctx.twist(cid)
            log.expect(t.fixes_boundary(), f"g={g} T{cid} fixes the boundary word")
            log.expect(t.auto.is_consistent(), f"g={g} T{cid} carries its inverse")
            M = abelianize(t)
            log.expect(M == transvection(ctx.declared_class(cid)), f"g={g} T{cid} abelianizes to its transvection")
            log.expect(M.is_symplectic(), f"g={g} T{cid} symplectic")
        for x, y in ctx.disjoint_pairs():
            tx, ty = ctx.twist(x), ctx.twist(y)
            log.expect((tx * ty).same_as(ty * tx), f"g={g} T{x}, T{y} commute")
        log.note(f"g={g}: {len(ctx.catalog_ids())} twists, {len(ctx.disjoint_pairs())} disjoint pairs")


def check_lantern(rng, log: _Log) -> None:
    inst = lantern_instance(3)
    rep = verify_relation(inst)
    log.expect(rep.exact, "lantern exact equality")
    for k, m in enumerate(inst.lhs, 1):
        log.expect(torelli_check(abelianize(m)), f"lantern factor {k} is Torelli")
    log.expect(torelli_check(abelianize(inst.rhs[0])), "boundary twist is Torelli")
    total = ExteriorElement.zero(6, 3)
    for m in inst.lhs:
        total = total + johnson_tau(m)
    log.expect(total.is_zero(), "Johnson images of the three bounding pairs sum to 0")
    log.expect(johnson_tau(inst.rhs[0]).is_zero(), "tau of the boundary twist is 0")
    log.note("; ".join(rep.lines()))


def check_crossed_lantern(rng, log: _Log) -> None:
    for g in (2, 3):
        cl = crossed_lantern_instance(g)
        rep = verify_relation(cl.instance)
        log.expect(rep.exact, f"g={g} crossed lantern exact")
        log.expect(rep.torelli, f"g={g} both sides Torelli")
        for k, ok in cl.key_facts.items():
            log.expect(ok, f"g={g} {k}")
        for k, ok in cl.derivation:
            log.expect(ok, f"g={g} derivation step {k}")


def check_telescope(rng, log: _Log) -> None:
    for p in (3, 5):
        rep = telescope_check(p)
        log.expect(all(rep.conjugated_ok), f"p={p} all conjugated relations exact")
        log.expect(rep.chain_ok, f"p={p} telescoped identity exact")
        log.expect(rep.rhs.get("BP_x") == p, f"p={p} coefficient of BP_x is p")
        log.expect(rep.difference == {"BP_x": -p}, f"p={p} difference reads p*[BP_x] = 0")
        log.note(f"p={p}: lhs {rep.lhs} rhs {rep.rhs}")


def check_killsep(rng, log: _Log) -> None:
    w = killsep_word()
    ab = formal_abelianization(w)
    log.expect(ab == {}, f"formal abelianization all zero (got {ab})")
    log.expect(len(w.terms) == 12, "word has the displayed twelve letters")


def check_johnson(rng, log: _Log) -> None:
    g = 3
    ctx = SurfaceContext(g)
    log.note(f"calibrated sign {calibration(g)}")
    for h in range(1, g):
        log.expect(johnson_tau(ctx.separating_twist(h)).is_zero(), f"tau(separating twist h={h}) = 0")
        x = [0] * (2 * g)
        x[2 * h] = 1
        log.expect(johnson_tau(ctx.bounding_pair(h)) == bp_expected(g, h, x), f"tau(BP h={h}) closed form")
    for _ in range(100):
        f, k = random_torelli(ctx, rng), random_torelli(ctx, rng)
        log.expect(johnson_tau(f * k) == johnson_tau(f) + johnson_tau(k), "additivity")
        if not log.ok:
            return
    for _ in range(50):
        f = random_torelli(ctx, rng)
        w = ctx.random_word(rng, rng.randint(1, 4))
        lhs = johnson_tau(w * f * w.inverse())
        rhs = johnson_tau(f).apply_linear(abelianize(w).rows)
        log.expect(lhs == rhs, "conjugation equivariance")
        if not log.ok:
            return


def _tau_span(ctx: SurfaceContext, modulus: int = 0) -> list[list[int]]:
    return [johnson_tau(f).to_vector() for f in torelli_generating_family(ctx)]


def check_tau_span(rng, log: _Log) -> None:
    ctx = SurfaceContext(3)
    rows = _tau_span(ctx)
    snf = linalg.smith_normal_form(rows)
    log.note(f"{len(rows)} generators, invariant factors {snf}")
    log.expect(len(snf) == 20 and all(d == 1 for d in snf), "span is all of the third exterior power")


def check_mod_p(rng, log: _Log) -> None:
    ctx = SurfaceContext(3)
    for p in (3, 5):
        kinds = set()
        for _ in range(100):
            f = random_torelli(ctx, rng)
            res = johnson_mod_p_full(f, p)
            kinds.add(res.projection)
            log.expect(res.in_image, f"p={p} torelli element lands in the image")
            log.expect(res.tau == johnson_tau(f).reduce(p), f"p={p} commuting diagram")
            if not log.ok:
                return
        rows = [johnson_mod_p_full(f, p).tau.to_vector() for f in torelli_generating_family(ctx)]
        log.expect(linalg.rank(rows, p) == 20, f"p={p} bounding pair images span mod p")
        for _ in range(200):
            w = random_word(rng, 6, 12)
            log.expect(project_nilpotent(w ** p, p).is_identity(), f"p={p} exponent p")
        log.note(f"p={p}: projection {sorted(kinds)}")


def check_psi(rng, log: _Log) -> None:
    configs = [("sp", 1), ("sp", 2), ("sl", 3), ("sl", 4)]
    for flavor, size in configs:
        for p in (3, 5):
            basis = cg.sp_lie_basis(size) if flavor == "sp" else cg.sl_lie_basis(size)
            gens = cg.level_generators(flavor, size, p)
            coords = cg.sp_coords if flavor == "sp" else cg.sl_coords
            for (name, X), M in zip(basis, gens):
                log.expect(cg.psi(M, p, flavor).as_list() == linalg.mat_mod(X, p), f"{flavor} {size} p={p} lift {name}")
                if flavor == "sp":
                    log.expect(cg.is_symplectic(M), f"lift {name} symplectic")
                else:
                    log.expect(linalg.det(M) == 1, f"lift {name} det 1")
            images = [coords(cg.psi(M, p, flavor).entries, p) for M in gens]
            log.expect(linalg.rank(images, p) == len(basis), f"{flavor} {size} p={p} psi surjective")
            kernel_hits = 0
            for _ in range(200):
                M = cg.random_level_element(rng, gens)
                N = cg.random_level_element(rng, gens)
                if rng.random() < 0.3:
                    M = cg.commutator(M, N)
                pm, pn, pmn = (cg.psi(A, p, flavor) for A in (M, N, linalg.matmul(M, N)))
                log.expect(pmn == pm + pn, f"{flavor} {size} p={p} homomorphism")
                log.expect(pm.is_zero() == cg.in_level(M, p * p), f"{flavor} {size} p={p} kernel")
                kernel_hits += pm.is_zero()
                log.expect(cg.in_level(cg.commutator(M, N), p * p), f"{flavor} {size} p={p} commutator level")
                if not log.ok:
                    return
            log.note(f"{flavor} size {size} p={p}: {kernel_hits} kernel samples")


def check_elementary(rng, log: _Log) -> None:
    count = 0
    for n in range(2, 6):
        for i in range(2, n + 1):
            for j in range(2, n + 1):
                if i != j:
                    lhs = cg.commutator(cg.elementary(n, i, 1), cg.elementary(n, 1, j))
                    log.expect(lhs == cg.elementary(n, i, j), f"n={n} [e{i}1, e1{j}] = e{i}{j}")
                    count += 1
    log.note(f"{count} identities")


def check_irreducible(rng, log: _Log) -> None:
    for g, p, expected in [(1, 3, True), (1, 5, True), (2, 3, True), (1, 2, False), (2, 2, False)]:
        rep = cg.sp_irreducible_report(g, p)
        log.expect(rep.irreducible == expected, f"g={g} p={p} irreducible == {expected}")
        if expected:
            log.expect(all(d == rep.dimension for d in rep.seed_dims), f"g={g} p={p} every basis seed spins")
        else:
            action = cg.conjugation_action(g, p, cg.catalog_sp_generators(g, p))
            w = rep.witness or []
            log.expect(0 < len(w) < rep.dimension and cg.is_invariant(w, action, p),
                       f"g={g} p={p} witness is a proper invariant subspace")
            log.note(f"g={g} p={p}: invariant submodule of dimension {len(w)}; first vector {rep.witness_matrices()[0]}")


def check_generates(rng, log: _Log) -> None:
    for g, p, order in [(1, 2, 6), (1, 3, 24), (2, 2, 720)]:
        rep = mod_p_generates(g, p)
        log.expect(rep["generates"], f"g={g} p={p} catalog generates")
        log.expect(rep["group_order"] == order, f"g={g} p={p} enumerated order {rep['group_order']}")
        log.note(f"g={g} p={p}: {rep['generated_order']} of {rep['group_order']}")


def check_pushforward(rng, log: _Log) -> None:
    for _ in range(50):
        g = rng.randint(1, 3)
        N = rng.randint(1, 6)
        ctx = SurfaceContext(g)
        phi = [[rng.randint(-3, 3) for _ in range(N)] for _ in range(2 * g)]
        w = ctx.random_word(rng, rng.randint(1, 10))
        M = abelianize(w)
        moved = [[sum(phi[k][i] * M.rows[k][j] for k in range(2 * g)) for i in range(N)] for j in range(2 * g)]
        log.expect(pushforward_fundamental(moved) == pushforward_fundamental(phi), "invariance")
    u, v = [1, 2, 0], [0, 1, 5]
    log.expect(pushforward_fundamental([u, v]) == wedge(ExteriorElement.vector(u), ExteriorElement.vector(v)), "g=1 case")
    log.expect(pushforward_fundamental([[0, 0]] * 4).is_zero(), "zero images")
    log.expect(pushforward_fundamental([u, v, [0] * 3, [0] * 3]) == pushforward_fundamental([u, v]), "degenerate g=2")


def _random_gamma(rng, n: int, p: int):
    gens = cg.level_generators("sl", n, p)
    return cg.random_level_element(rng, gens, 3)


def check_charney(rng, log: _Log) -> None:
    p = 3
    for n in (3, 4):
        for which in ("G", "Ghat"):
            for _ in range(100):
                A = _random_gamma(rng, n - 1, p)
                scale = p if which == "G" else 1
                tail = [scale * rng.randint(-5, 5) for _ in range(n - 1)]
                M = cg.charney_element(A, tail)
                log.expect(cg.charney_membership(M, which, n, p), f"n={n} sample in {which}")
                for j in range(2, n + 1):
                    E = cg.elementary(n, 1, j)
                    C = linalg.matmul(linalg.matmul(E, M), cg.int_inverse(E))
                    log.expect(cg.charney_membership(C, which, n, p), f"n={n} e1{j} preserves {which}")
                if not log.ok:
                    return
        for _ in range(100):
            tail = [p * rng.randint(-5, 5) for _ in range(n - 1)]
            K = cg.charney_element(linalg.identity(n - 1), tail)
            Kh = cg.charney_element(linalg.identity(n - 1), [c // p for c in tail])
            log.expect(cg.charney_membership(K, "K", n, p), "K member")
            log.expect(cg.charney_membership(Kh, "Khat", n, p), "Khat member")
            power = linalg.identity(n)
            for _ in range(p):
                power = linalg.matmul(power, Kh)
            log.expect(power == K, "K = p Khat")


def check_nilpotent(rng, log: _Log) -> None:
    for _ in range(200):
        rank = 2 * rng.randint(1, 3)
        u, v = random_word(rng, rank, 12), random_word(rng, rank, 12)
        x = project_nilpotent(commutator(u, v))
        expected = wedge(ExteriorElement.vector(u.abelianization()), ExteriorElement.vector(v.abelianization()))
        log.expect(not any(x.a) and x.c == expected, f"commutator of {u} and {v}")
        if not log.ok:
            return


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "catalog soundness", check_catalog),
    (2, "lantern relation", check_lantern),
    (3, "crossed lantern", check_crossed_lantern),
    (4, "telescoping", check_telescope),
    (5, "two-lantern 2-torsion", check_killsep),
    (6, "Johnson homomorphism", check_johnson),
    (7, "tau surjectivity witness", check_tau_span),
    (8, "mod-p Johnson", check_mod_p),
    (9, "psi maps", check_psi),
    (10, "elementary identities", check_elementary),
    (11, "irreducibility", check_irreducible),
    (12, "symplectic surjectivity mod p", check_generates),
    (13, "pushforward invariance", check_pushforward),
    (14, "Charney subgroups", check_charney),
    (15, "nilpotent quotient", check_nilpotent),
]


def run_check(number: int, seed: int | None = None) -> CheckResult:
    num, name, fn = CRITERIA[number - 1]
    rng = random.Random((seed if seed is not None else seed_from_env()) * 100 + num)
    log = _Log()
    t = time.perf_counter()
    try:
        fn(rng, log)
    except Exception as exc:  # report, do not crash the suite
        log.ok = False
        log.lines.append(f"error: {type(exc).__name__}: {exc}")
    return CheckResult(num, name, log.ok, log.lines, time.perf_counter() - t)


def run_all(seed: int | None = None, fail_fast: bool = False):
    for num, _, _ in CRITERIA:
        res = run_check(num, seed)
        yield res
        if fail_fast and not res.passed:
            return
