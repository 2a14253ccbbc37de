import random

import pytest
from hypothesis import given, strategies as st

from mcgkit.surface import SurfaceContext
from mcgkit.symplectic import (
    SizeGuard,
    SymplecticMatrix,
    abelianize,
    basis_vector,
    closure,
    congruence_check,
    enumerate_sp,
    intersection,
    mod_p_generates,
    torelli_check,
    transvection,
)


def test_intersection_examples():
    a1, b1 = basis_vector(1, "a1"), basis_vector(1, "b1")
    assert intersection(a1, b1) == 1
    assert intersection(a1, a1) == 0
    assert intersection(b1, a1) == -1


def test_transvection_examples():
    assert transvection([1, 0]).rows == ((1, 1), (0, 1))
    assert torelli_check(transvection([0, 0, 0, 0]))
    x = [1, -2, 3, 0]
    assert transvection(x) == transvection([-v for v in x])


@given(st.integers(1, 4).flatmap(lambda g: st.lists(st.integers(-5, 5), min_size=2 * g, max_size=2 * g)))
def test_transvection_symplectic(x):
    M = transvection(x)
    assert M.is_symplectic()
    assert M.convert("block").is_symplectic()
    assert M.convert("block").convert("interleaved") == M


def test_abelianize_is_homomorphism():
    rng = random.Random(3)
    for g in (1, 2, 3):
        ctx = SurfaceContext(g)
        for _ in range(10):
            f, h = ctx.random_word(rng, rng.randint(0, 20)), ctx.random_word(rng, rng.randint(0, 20))
            assert abelianize(f * h) == abelianize(f) @ abelianize(h)
            assert abelianize(f).is_symplectic()


def test_identity_abelianizes_to_identity():
    from mcgkit.surface import MappingClass

    assert torelli_check(abelianize(MappingClass.identity(3)))


def test_congruence_examples():
    M = SymplecticMatrix.of([[1, 3], [0, 1]])
    assert congruence_check(M, 3)
    assert not congruence_check(M, 9)
    assert congruence_check(SymplecticMatrix.of([[1, 0], [0, 1]]), 5)
    with pytest.raises(ValueError):
        congruence_check(M, 1)


def test_bp_is_torelli():
    assert torelli_check(abelianize(SurfaceContext(3).bounding_pair(1)))


@pytest.mark.parametrize("g, p, order", [(1, 2, 6), (1, 3, 24), (2, 2, 720)])
def test_enumeration_orders(g, p, order):
    assert len(enumerate_sp(g, p)) == order


def test_enumeration_brute_force_small():
    # independent oracle: scan every 2x2 matrix over Z/3
    from itertools import product

    count = sum(1 for a, b, c, d in product(range(3), repeat=4) if (a * d - b * c) % 3 == 1)
    assert count == len(enumerate_sp(1, 3))


def test_mod_p_generates():
    r = mod_p_generates(2, 2)
    assert r["generates"] and r["generated_order"] == 720


def test_size_guards():
    with pytest.raises(SizeGuard):
        mod_p_generates(3, 2)
    with pytest.raises(SizeGuard):
        closure([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 7, limit=10)


def test_json_roundtrip():
    M = transvection([1, 0, 1, 1]).convert("block")
    assert SymplecticMatrix.from_json(M.to_json()) == M
