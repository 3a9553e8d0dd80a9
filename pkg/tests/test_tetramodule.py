import random

import pytest

from tetra.bialgebra import EXAMPLE_NAMES, example
from tetra.exactlin import Mat
from tetra.tetramodule import (StabilityError, Tetramodule, build_recipe, cokernel_tetra,
                               direct_sum, forget1, forget2, hom_matrices, hom_space,
                               kernel_tetra, random_map, sample_tetramodule, sub_object,
                               tautological, trivial_bicomodule, trivial_bimodule,
                               trivial_tetramodule, verify_bicomodule, verify_bimodule,
                               verify_map, verify_tetramodule)
from tetra.tensor import coinduce, induce
from oracles import brute_hom_dim


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_tautological_is_a_tetramodule(name):
    assert verify_tetramodule(tautological(example(name))).ok


def test_trivial_object_only_for_one_dimensional_base():
    # counit actions and unit coactions violate the compatibility once dim A > 1
    assert verify_tetramodule(trivial_tetramodule(example("trivial"), 2)).ok
    rep = verify_tetramodule(trivial_tetramodule(example("qz2"), 1))
    assert not rep.ok
    assert verify_bimodule(trivial_bimodule(example("qz2"), 2)).ok
    assert verify_bicomodule(trivial_bicomodule(example("qz2"), 2)).ok


@pytest.mark.parametrize("name", ["qz2", "fp2x", "sweedler", "dual-qz2"])
def test_samples_satisfy_axioms(name):
    b = example(name)
    for seed in range(6):
        m = sample_tetramodule(b, seed, max_dim=2 * b.dim)
        assert 1 <= m.dim <= 2 * b.dim
        assert verify_tetramodule(m).ok, m.name


def test_samples_are_deterministic():
    b = example("qz3")
    a1 = sample_tetramodule(b, 11)
    a2 = sample_tetramodule(b, 11)
    assert a1.name == a2.name and a1.same_structure(a2)
    assert build_recipe(b, a1.name).same_structure(a1)


@pytest.mark.parametrize("name,recipes", [
    ("fp2x", ["taut", "coinduce(trivmod(1))"]),
    ("fp3x", ["taut"]),
])
def test_hom_space_against_enumeration(name, recipes):
    b = example(name)
    objs = [build_recipe(b, r) for r in recipes]
    for x in objs:
        for y in objs:
            if x.dim * y.dim > 9:
                continue
            assert hom_space(x, y).dim == brute_hom_dim(x, y)


def test_hom_taut_taut_over_group_algebras():
    # Hom(A, A) in tetramodules is one-dimensional for these bases
    for name in ("qz2", "qz3", "fp2x", "sweedler"):
        A = tautological(example(name))
        assert hom_space(A, A).dim == 1


def test_hom_matrices_are_maps():
    b = example("qz2")
    x = build_recipe(b, "induce(trivco(1))")
    y = build_recipe(b, "taut + taut")
    H = hom_matrices(hom_space(x, y), x, y)
    assert H
    for X in H:
        assert verify_map(x, y, X).ok


def test_non_map_rejected():
    b = example("qz2")
    A = tautological(b)
    swap = Mat.from_lists(b.field, [[0, 1], [1, 0]])
    rep = verify_map(A, A, swap)
    assert not rep.ok


def test_kernel_and_cokernel_are_objects():
    b = example("fp2x")
    x = build_recipe(b, "induce(trivco(1))")
    y = tautological(b)
    f = random_map(x, y, random.Random(3))
    assert f.verify().ok
    k, i = kernel_tetra(f)
    c, q = cokernel_tetra(f)
    assert verify_tetramodule(k).ok and verify_tetramodule(c).ok
    assert (f.matrix @ i.matrix).is_zero()
    # rank-nullity: dim ker + dim im = dim x, with dim im = dim y - dim coker
    assert k.dim + (y.dim - c.dim) == x.dim


def test_unstable_subspace_rejected():
    b = example("qz2")
    A = tautological(b)
    incl = Mat.from_lists(b.field, [[0], [1]])
    lam = Mat.from_lists(b.field, [[0, 1]])
    with pytest.raises(StabilityError):
        sub_object(A, incl, lam)


def test_direct_sum_and_forgetful():
    b = example("sweedler")
    A = tautological(b)
    s = direct_sum(A, A)
    assert s.dim == 8 and verify_tetramodule(s).ok
    assert hom_space(s, s).dim == 4
    assert verify_bicomodule(forget1(s)).ok
    assert verify_bimodule(forget2(s)).ok


def test_induced_and_coinduced_objects():
    b = example("qz3")
    assert verify_tetramodule(induce(trivial_bicomodule(b, 1))).ok
    assert verify_tetramodule(coinduce(trivial_bimodule(b, 1))).ok
    assert induce(trivial_bicomodule(b, 2)).dim == 18


def test_recipe_errors():
    b = example("qz2")
    with pytest.raises(ValueError):
        build_recipe(b, "taut +")
    with pytest.raises(ValueError):
        build_recipe(b, "nonsense")


def test_shape_errors():
    b = example("qz2")
    A = tautological(b)
    with pytest.raises(ValueError):
        Tetramodule(b, 3, A.act_l, A.act_r, A.coact_l, A.coact_r)
