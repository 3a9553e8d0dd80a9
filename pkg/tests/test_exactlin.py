from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tetra.exactlin import (GF, QQ, Complex, Mat, Subspace, cohomology, image_basis,
                            kernel_basis, kronecker, perm_matrix, rank, rref)
from oracles import dense, dense_rank

small = st.integers(-3, 3)


@st.composite
def matrices(draw, field=QQ, max_side=5):
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(1, max_side))
    data = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Mat.from_lists(field, data, ncols=c), data


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_dense_elimination(md):
    m, data = md
    assert rank(m) == dense_rank([[Fraction(x) for x in r] for r in data])


@settings(max_examples=80, deadline=None)
@given(matrices(GF(3)))
def test_rank_mod_p(md):
    m, data = md
    assert rank(m) == dense_rank([[Fraction(x) for x in r] for r in data], 3)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(md):
    m, _ = md
    k = kernel_basis(m)
    assert k.dim + rank(m) == m.ncols
    assert (m @ k.inclusion()).is_zero()


@settings(max_examples=40, deadline=None)
@given(matrices(), matrices())
def test_product_against_dense(ma, mb):
    a, da = ma
    b, db = mb
    if a.ncols != b.nrows:
        b = Mat.from_lists(QQ, [[1] * b.ncols] * a.ncols, ncols=b.ncols)
        db = [[1] * b.ncols] * a.ncols
    want = [[sum(Fraction(x) * y for x, y in zip(row, col)) for col in zip(*db)] for row in da]
    assert dense(a @ b) == want


def test_rref_and_pivots():
    m = Mat.from_lists(QQ, [[2, 4, 0], [1, 2, 1]])
    r, piv = rref(m)
    assert list(piv) == [0, 2]
    assert dense(r) == [[1, 2, 0], [0, 0, 1]]


def test_field_conversion():
    assert QQ.convert("-1/2") == Fraction(-1, 2)
    assert GF(5).convert("1/2") == 3
    assert GF(5).convert(-1) == 4
    with pytest.raises(ZeroDivisionError):
        GF(5).convert("1/5")
    with pytest.raises(ValueError):
        GF(4)


def test_kronecker_is_blockwise():
    a = Mat.from_lists(QQ, [[1, 2], [0, 1]])
    b = Mat.from_lists(QQ, [[0, 1], [1, 0]])
    k = kronecker([a, b])
    assert k.shape == (4, 4)
    assert dense(k)[0] == [0, 1, 0, 2]
    assert dense(k)[3] == [0, 0, 1, 0]


def test_perm_matrix_moves_factors():
    # output factor t is input factor perm[t]: (x, y) -> (y, x)
    P = perm_matrix(QQ, [2, 3], (1, 0))
    # basis e_1 (x) f_2 has input index 1*3 + 2 = 5, lands at f_2 (x) e_1 = 2*2 + 1 = 5
    v = P.apply({1 * 3 + 2: 1})
    assert v == {2 * 2 + 1: 1}
    assert P @ perm_matrix(QQ, [3, 2], (1, 0)) == Mat.identity(QQ, 6)


def test_subspace_coordinates_roundtrip():
    s = Subspace.span(QQ, 3, [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: -1}])
    assert s.dim == 2
    v = Mat.from_lists(QQ, [[2], [3], [1]])
    coords = s.coordinates(v)
    assert s.inclusion() @ coords == v


def test_cohomology_of_small_complex():
    # C^0 = k -> C^1 = k^2 -> C^2 = k, d0 = (1,1)^T, d1 = (1,-1)
    d0 = Mat.from_lists(QQ, [[1], [1]])
    d1 = Mat.from_lists(QQ, [[1, -1]])
    c = Complex(QQ, 0, 2, {0: 1, 1: 2, 2: 1}, {0: d0, 1: d1})
    h = cohomology(c)
    assert [h[k][0] for k in range(3)] == [0, 0, 0]
    bad = Complex(QQ, 0, 2, {0: 1, 1: 2, 2: 1}, {0: d0, 1: Mat.from_lists(QQ, [[1, 1]])})
    with pytest.raises(ValueError):
        cohomology(bad)


def test_image_basis_dim():
    m = Mat.from_lists(GF(2), [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert image_basis(m).dim == 2
