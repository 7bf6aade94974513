import itertools

import pytest
from hypothesis import given, settings, strategies as st

from xline.errors import DimensionTooSmallError, GroupTooLargeError, SingularMatrixError
from xline.ffield import field_of_order
from xline.projgeom import (
    act_on_point,
    det_is_square,
    diag,
    enum_points,
    group_generators,
    identity,
    matrix,
    matrix_group_order,
    normalize_family,
)


@pytest.mark.parametrize("q,d,n", [(3, 3, 13), (5, 2, 6), (9, 2, 10), (3, 2, 4), (7, 3, 57)])
def test_point_counts(q, d, n):
    assert enum_points(field_of_order(q), d).n == n


def test_dimension_too_small():
    with pytest.raises(DimensionTooSmallError):
        enum_points(field_of_order(5), 1)


@pytest.mark.parametrize("q,d", [(3, 2), (5, 2), (9, 2), (3, 3)])
def test_canonical_representatives(q, d):
    F = field_of_order(q)
    B = enum_points(F, d)
    for v in B.points:
        assert next(x for x in v if not x.is_zero()) == F.one
        assert B.canonical(v) == (v, F.one)
    keys = [tuple(x.coeffs for x in v) for v in B.points]
    assert keys == sorted(keys)
    # every nonzero vector lies on exactly one listed line
    for v in itertools.product(F.elements(), repeat=d):
        if all(x.is_zero() for x in v):
            continue
        hits = [
            i for i, w in enumerate(B.points)
            if any(all(F.mul(c, a) == b for a, b in zip(w, v)) for c in F.nonzero())
        ]
        assert len(hits) == 1


def test_act_on_point_examples():
    F = field_of_order(5)
    B = enum_points(F, 2)
    e1 = B.index[(F.one, F.zero)]
    e2 = B.index[(F.zero, F.one)]
    M = diag(F, [F.elt(2), F.one])
    assert act_on_point(B, M, e1) == (e1, F.elt(2))
    assert act_on_point(B, M, e2) == (e2, F.one)
    for i in range(B.n):
        assert act_on_point(B, identity(F, 2), i) == (i, F.one)


def test_act_is_bijection_and_exact():
    F = field_of_order(9)
    B = enum_points(F, 2)
    for M in group_generators("GL", F, 2).generators:
        images = []
        for i in range(B.n):
            j, lam = act_on_point(B, M, i)
            assert M.apply(F, B.points[i]) == tuple(F.mul(lam, x) for x in B.points[j])
            images.append(j)
        assert sorted(images) == list(range(B.n))


def test_singular_matrix():
    F = field_of_order(5)
    B = enum_points(F, 2)
    M = matrix(F, [[1, 0], [0, 0]])
    with pytest.raises(SingularMatrixError):
        act_on_point(B, M, B.index[(F.zero, F.one)])
    with pytest.raises(SingularMatrixError):
        det_is_square(F, M)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (9, 2), (3, 3)]), st.data())
def test_action_composes(qd, data):
    q, d = qd
    F = field_of_order(q)
    B = enum_points(F, d)
    gens = group_generators("GL", F, d).generators
    M = data.draw(st.sampled_from(gens))
    N = data.draw(st.sampled_from(gens))
    i = data.draw(st.integers(0, B.n - 1))
    j, lam = act_on_point(B, M, i)
    k, mu = act_on_point(B, N, j)
    assert act_on_point(B, N.matmul(F, M), i) == (k, F.mul(lam, mu))


def test_generator_counts_and_determinants():
    F5, F9 = field_of_order(5), field_of_order(9)
    sl5 = group_generators("sl", F5, 2)
    assert len(sl5.generators) == 2
    assert all(M.det(F5) == F5.one for M in sl5.generators)
    assert len(group_generators("SL", F9, 2).generators) == 4
    gl5 = group_generators("gl", F5, 2)
    assert len(gl5.generators) == 3
    assert sl5.label == "SL_2(5)"
    assert group_generators("glplus", F5, 2).label == "GL+_2(5)"
    for fam, want in [("SL", True), ("GLplus", True)]:
        assert all(det_is_square(F9, M) for M in group_generators(fam, F9, 3).generators) is want
    assert not all(det_is_square(F9, M) for M in group_generators("GL", F9, 3).generators)


@pytest.mark.parametrize(
    "family,q,order",
    [
        ("SL", 3, 24),
        ("SL", 5, 120),  # (q^2 - 1) q
        ("GL", 5, 480),  # (q^2 - 1)(q^2 - q)
        ("GLplus", 5, 240),
        ("SL", 9, 720),
    ],
)
def test_closure_orders(family, q, order):
    F = field_of_order(q)
    assert matrix_group_order(F, group_generators(family, F, 2).generators) == order


def test_closure_bound():
    F = field_of_order(5)
    with pytest.raises(GroupTooLargeError):
        matrix_group_order(F, group_generators("GL", F, 2).generators, max_order=100)


def test_det_is_square_examples():
    F = field_of_order(5)
    assert det_is_square(F, identity(F, 2))
    assert not det_is_square(F, diag(F, [F.elt(2), F.one]))
    assert det_is_square(F, diag(F, [F.elt(2), F.elt(2)]))


def test_det_matches_leibniz():
    F = field_of_order(7)
    for rows in [[[1, 2, 3], [0, 4, 5], [6, 0, 1]], [[0, 1, 0], [1, 0, 0], [0, 0, 3]]]:
        M = matrix(F, rows)
        ref = 0
        for perm in itertools.permutations(range(3)):
            sign = 1
            for a in range(3):
                for b in range(a + 1, 3):
                    if perm[a] > perm[b]:
                        sign = -sign
            term = sign
            for r in range(3):
                term *= rows[r][perm[r]]
            ref += term
        assert M.det(F) == F.elt(ref)


def test_family_names():
    assert normalize_family("gl+") == "GLplus"
    with pytest.raises(ValueError):
        normalize_family("psl")
