import random

import pytest
from hypothesis import given, settings, strategies as st

from mcgkit import linalg
from mcgkit.exterior import ExteriorElement as E, iota, iota_matrix, iota_solve, pushforward_fundamental, wedge
from mcgkit.surface import SurfaceContext
from mcgkit.symplectic import abelianize


def e(rank, *idx):
    return E.basis(rank, *idx)


def test_wedge_examples():
    assert wedge(e(3, 1), e(3, 1)).is_zero()
    assert wedge(e(3, 1), e(3, 2)) == -wedge(e(3, 2), e(3, 1))
    assert wedge(e(3, 1) + e(3, 2), e(3, 2)) == e(3, 1, 2)


def _random_element(rng, rank, degree, modulus=0):
    from mcgkit.exterior import basis_tuples

    keys = basis_tuples(rank, degree)
    return E(rank, degree, modulus, {k: rng.randint(-3, 3) for k in rng.sample(keys, min(len(keys), 3))})


@given(st.integers(0, 10_000), st.integers(3, 8))
@settings(max_examples=40)
def test_wedge_associative_and_graded(seed, rank):
    rng = random.Random(seed)
    degs = [rng.randint(1, 2) for _ in range(3)]
    u, v, w = (_random_element(rng, rank, d) for d in degs)
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))
    assert wedge(u, v) == wedge(v, u).scale((-1) ** (u.degree * v.degree))


def test_modulus_reduction_and_mismatch():
    x = E(4, 2, 3, {(1, 2): 4, (3, 4): 3})
    assert x.terms == {(1, 2): 1}
    with pytest.raises(ValueError):
        wedge(e(4, 1), E.basis(4, 2, modulus=3))
    with pytest.raises(ValueError):
        E(4, 2, 0, {(2, 1): 1})


def test_json_roundtrip():
    x = E(6, 3, 0, {(1, 2, 3): 2, (2, 4, 6): -1})
    assert E.from_json(x.to_json()) == x


def test_pushforward_examples():
    u, v = [1, 2, 0], [0, 1, 5]
    assert pushforward_fundamental([u, v]) == wedge(E.vector(u), E.vector(v))
    assert pushforward_fundamental([[0, 0]] * 4).is_zero()
    assert pushforward_fundamental([u, v, [0] * 3, [0] * 3]) == pushforward_fundamental([u, v])
    with pytest.raises(ValueError):
        pushforward_fundamental([u])


def test_pushforward_invariance():
    rng = random.Random(11)
    for g in (1, 2, 3):
        ctx = SurfaceContext(g)
        for _ in range(10):
            N = rng.randint(2, 6)
            phi = [[rng.randint(-4, 4) for _ in range(N)] for _ in range(2 * g)]
            M = abelianize(ctx.random_word(rng, 8)).rows
            moved = [[sum(phi[k][i] * M[k][j] for k in range(2 * g)) for i in range(N)] for j in range(2 * g)]
            assert pushforward_fundamental(moved) == pushforward_fundamental(phi)


def test_iota_formula_direct():
    # g = 3: a1 = e1, b1 = e2, a2 = e3.  iota(a1^b1^a2)(b1) = i(a1,b1) b1^a2 = e2^e3
    t = e(6, 1, 2, 3)
    images = iota(t)
    assert images[2] == E(6, 2, 0, {})  # v = a2 pairs with nothing in the triple
    assert images[1] == e(6, 2, 3)
    # v = a1: i(b1, a1) = -1 on the middle slot gives -(a2^a1) = a1^a2
    assert images[0] == e(6, 1, 3)
    # v = b2 (index 4): i(a2, b2) = 1 gives a1^b1
    assert images[3] == e(6, 1, 2)
    assert all(x.is_zero() for x in iota(E.zero(6, 3)))


def test_iota_roundtrip_and_rank():
    rng = random.Random(5)
    for _ in range(20):
        t = _random_element(rng, 6, 3)
        assert iota_solve(iota(t)) == t
    for g in (2, 3):
        M = iota_matrix(2 * g)
        assert linalg.rank(M) == len(M[0])


def test_iota_solve_rejects_outside_image():
    L = [E.zero(6, 2) for _ in range(6)]
    L[0] = e(6, 1, 2)
    assert iota_solve(L) is None
    with pytest.raises(ValueError):
        iota_solve(L[:3])
