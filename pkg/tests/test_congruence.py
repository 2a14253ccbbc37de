import random
from itertools import product

import pytest

from mcgkit import congruence as cg
from mcgkit import linalg


def test_omega_and_lie_examples():
    assert cg.omega(1) == [[0, 1], [-1, 0]]
    assert cg.is_symplectic(linalg.identity(4))
    assert cg.is_sp_lie([[0, 1], [0, 0]], 7)
    assert not cg.is_sp_lie([[1, 0], [0, 0]], 7)


def test_psi_examples():
    M = [[1, 3], [0, 1]]
    assert cg.psi(M, 3).as_list() == [[0, 1], [0, 0]]
    assert cg.psi(linalg.identity(2), 3).is_zero()
    M2 = linalg.matmul(M, M)
    assert M2 == [[1, 6], [0, 1]]
    assert cg.psi(M2, 3).as_list() == [[0, 2], [0, 0]]
    with pytest.raises(cg.PreconditionError):
        cg.psi([[1, 1], [0, 1]], 3)


def test_lift_examples():
    assert cg.lift_sp_generator([[0, 1], [0, 0]], 3) == [[1, 3], [0, 1]]
    assert cg.lift_sp_generator([[0, 0], [0, 0]], 3) == linalg.identity(2)
    with pytest.raises(cg.PreconditionError):
        cg.lift_sp_generator([[0, 2], [0, 0]], 3)


@pytest.mark.parametrize("g, p", [(1, 3), (2, 3), (2, 5)])
def test_all_sp_lifts(g, p):
    basis = cg.sp_lie_basis(g)
    assert len(basis) == g * (2 * g + 1)
    for _, X in basis:
        M = cg.lift_sp_generator(X, p)
        assert cg.is_symplectic(M)
        assert cg.psi(M, p).as_list() == linalg.mat_mod(X, p)
        assert cg.sp_from_coords(cg.sp_coords(X, p), g) == X


@pytest.mark.parametrize("n, p", [(3, 3), (4, 5)])
def test_all_sl_lifts(n, p):
    for _, X in cg.sl_lie_basis(n):
        M = cg.lift_sl_generator(X, p)
        assert linalg.det(M) == 1
        assert cg.psi(M, p, "sl").as_list() == linalg.mat_mod(X, p)


def test_elementary_and_commutator():
    assert cg.commutator(cg.elementary(3, 2, 1), cg.elementary(3, 1, 3)) == cg.elementary(3, 2, 3)
    M = cg.elementary(4, 1, 2, 7)
    assert cg.commutator(M, linalg.identity(4)) == linalg.identity(4)
    with pytest.raises(ValueError):
        cg.elementary(3, 1, 1)


def test_bms_generators():
    gens = cg.bms_generators(3, 5)
    assert len(gens) == 6
    assert cg.elementary(3, 1, 2, 5) in gens
    assert all(linalg.det(M) == 1 and cg.in_level(M, 5) for M in gens)
    assert cg.psi(cg.elementary(3, 1, 2, 5), 5, "sl").as_list() == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]


@pytest.mark.parametrize("flavor, size", [("sp", 2), ("sl", 3)])
def test_psi_homomorphism_and_kernel(flavor, size):
    rng = random.Random(1)
    p = 3
    gens = cg.level_generators(flavor, size, p)
    for _ in range(30):
        M, N = cg.random_level_element(rng, gens), cg.random_level_element(rng, gens)
        assert cg.psi(linalg.matmul(M, N), p, flavor) == cg.psi(M, p, flavor) + cg.psi(N, p, flavor)
        C = cg.commutator(M, N)
        assert cg.in_level(C, p * p) and cg.psi(C, p, flavor).is_zero()
        assert cg.psi(M, p, flavor).is_zero() == cg.in_level(M, p * p)


def test_sl_commutator_witnesses():
    p = 3
    gens = cg.level_generators("sl", 3, p)
    for name, X in cg.sl_lie_basis(3):
        if name.startswith("E"):
            target = cg.lift_sl_generator(X, p, p * p)
            w = cg.commutator_witness(target, gens)
            assert w is not None
            pool = gens + [cg.int_inverse(G) for G in gens]
            prod = linalg.identity(3)
            for i, j in w:
                prod = linalg.matmul(prod, cg.commutator(pool[i], pool[j]))
            assert prod == target


@pytest.mark.parametrize("g, p, expected", [(1, 2, False), (1, 3, True), (1, 5, True), (2, 3, True), (2, 2, False)])
def test_irreducibility(g, p, expected):
    rep = cg.sp_irreducible_report(g, p)
    assert rep.irreducible is expected
    if not expected:
        action = cg.conjugation_action(g, p, cg.catalog_sp_generators(g, p))
        assert cg.is_invariant(rep.witness, action, p)


def test_g1_p2_witness_is_scalar_line():
    rep = cg.sp_irreducible_report(1, 2)
    assert rep.witness_matrices() == [[[1, 0], [0, 1]]]


def test_irreducible_by_brute_force_g1_p3():
    # independent oracle: every nonzero vector of the 3-dim module spins to everything
    p, g = 3, 1
    action = cg.conjugation_action(g, p, cg.catalog_sp_generators(g, p))
    for v in product(range(p), repeat=3):
        if any(v):
            assert len(cg.spin_submodule([list(v)], action, p)) == 3


def test_coinvariants():
    assert cg.coinvariants([linalg.identity(3)], 3, 5) == 3
    assert cg.coinvariants([[[-1, 0], [0, -1]]], 2) == 0
    action = cg.conjugation_action(1, 3, cg.catalog_sp_generators(1, 3))
    assert cg.coinvariants(action, 3, 3) == 0


def test_charney_examples():
    for which in ("G", "Ghat", "K", "Khat"):
        assert cg.charney_membership(linalg.identity(3), which, 3, 3)
    M = [[1, 3, 0], [0, 1, 0], [0, 0, 1]]
    assert cg.charney_membership(M, "G", 3, 3) and cg.charney_membership(M, "K", 3, 3)
    N = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    assert not cg.charney_membership(N, "G", 3, 3) and cg.charney_membership(N, "Khat", 3, 3)
    assert not cg.charney_membership([[1, 0, 0], [1, 1, 0], [0, 0, 1]], "Ghat", 3, 3)
