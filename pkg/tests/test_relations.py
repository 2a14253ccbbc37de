import pytest

from mcgkit.relations import (
    FormalWord,
    RelationInstance,
    Term,
    conjugate_instance,
    corrupt,
    crossed_lantern_instance,
    formal_abelianization,
    killsep_word,
    lantern_instance,
    letter,
    telescope_check,
    verify_relation,
)
from mcgkit.surface import MappingClass, SurfaceContext


def test_trivial_instance():
    r = RelationInstance("trivial", 2, [MappingClass.identity(2)], [MappingClass.identity(2)])
    rep = verify_relation(r)
    assert rep.exact and rep.symplectic and rep.johnson


@pytest.mark.parametrize("g", [3, 4])
def test_lantern(g):
    rep = verify_relation(lantern_instance(g))
    assert rep.passed and rep.torelli
    with pytest.raises(ValueError):
        lantern_instance(2)


def test_corrupted_lantern_fails():
    rep = verify_relation(corrupt(lantern_instance(3)))
    assert not rep.exact and rep.first_difference is not None
    assert "first disagreement" in rep.lines()[0]


def test_lantern_conjugation_invariance(rng):
    ctx = SurfaceContext(3)
    inst = lantern_instance(3)
    for _ in range(3):
        assert verify_relation(conjugate_instance(inst, ctx.random_word(rng, 4))).exact


def test_instance_json_replay():
    inst = lantern_instance(3)
    again = RelationInstance.from_json(inst.to_json())
    assert verify_relation(again).passed


def test_genus_mismatch():
    r = RelationInstance("bad", 2, [MappingClass.identity(3)], [MappingClass.identity(2)])
    with pytest.raises(ValueError):
        verify_relation(r)


@pytest.mark.parametrize("g", [2, 3])
def test_crossed_lantern(g):
    cl = crossed_lantern_instance(g)
    assert cl.passed
    assert verify_relation(cl.instance).passed


@pytest.mark.parametrize("p", [1, 3])
def test_telescope(p):
    rep = telescope_check(p)
    assert rep.passed
    assert len(rep.conjugated_ok) == p
    assert rep.rhs["BP_x"] == p


def test_telescope_guard():
    with pytest.raises(ValueError):
        telescope_check(9)


def test_formal_abelianization_examples():
    A = ["x", "y", "f"]
    x, y, f = (letter(A, s) for s in A)
    assert formal_abelianization(x * (f * y * f.inverse()) * x.inverse()) == {"y": 1}
    assert formal_abelianization(x * y.conj(f) * x.inverse()) == {"y": 1}
    assert formal_abelianization(FormalWord(frozenset(A))) == {}
    u, v = x * y, y.inverse() * f
    total = formal_abelianization(u * v)
    parts = [formal_abelianization(u), formal_abelianization(v)]
    assert total == {k: v for k in A if (v := sum(p.get(k, 0) for p in parts))}
    with pytest.raises(KeyError):
        FormalWord(frozenset(A), (Term("z"),))


def test_killsep():
    assert formal_abelianization(killsep_word()) == {}
