import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fewweight import (BudgetExceeded, LinearSet, ProjectivePoint, QPolynomial, build_direct_sum_set,
                       build_linear_set, gabidulin_tuple, hyperplane_weight, is_scattered,
                       subspace_weight, table1_tuple, theta, verify_h_scattered, weight_profile)
from fewweight.linsets import normalize_rows, points_on_hyperplane, spans_space
from fewweight.qpoly import MapTuple, monomial_tuple

from conftest import gabidulin_set, view_of
from oracles import hyperplane_sizes_by_points, theta_pure


def _point_identity(L):
    q = L.view.q
    return int(sum(q ** int(w) - 1 for w in L.weights)) == q**L.rank - 1


@pytest.fixture(scope="module")
def direct_sum():
    V = view_of(2, 1, 3)
    return build_direct_sum_set([gabidulin_tuple(V, 3), gabidulin_tuple(V, 3)])


def test_projective_point_normalization():
    F = view_of(2, 1, 3).ctx
    P = ProjectivePoint.from_vector(F, [0, 3, 5])
    assert P.coords[0] == 0 and P.coords[1] == 1
    assert ProjectivePoint.from_vector(F, P.coords) == P
    assert ProjectivePoint.from_vector(F, [0, F.mul(6, 3), F.mul(6, 5)]) == P
    with pytest.raises(ValueError):
        ProjectivePoint.from_vector(F, [0, 0, 0])
    rows = normalize_rows(F, [[0, 3, 5], [4, 4, 4]])
    assert rows.tolist() == [list(P.coords), [1, 1, 1]]


def test_gabidulin_233_points(gab233):
    assert len(gab233) == 7 == theta(2, 2)
    assert gab233.rank == 3 and gab233.r == 3
    assert is_scattered(gab233) and spans_space(gab233)
    assert _point_identity(gab233)
    assert set(map(tuple, gab233.points.tolist())) == {P.coords for P in gab233.point_list()}


def test_gabidulin_233_profile_matches_point_counting(gab233):
    prof = weight_profile(gab233)
    assert prof.counts == {0: 24, 1: 42, 2: 7}
    assert prof.total == 73
    # |H cap L| = theta(w - 1) on a scattered set, counted from the points alone
    sizes = hyperplane_sizes_by_points(gab233)
    assert sizes == {theta_pure(w - 1, 2): c for w, c in prof.items()}


def test_non_scattered_point_identity():
    V = view_of(2, 1, 3)
    x = QPolynomial.from_terms(V, [(1, 0)])
    L = build_linear_set(MapTuple((x, x)))
    assert len(L) == 1 and L.weights.tolist() == [3]
    assert _point_identity(L) and not is_scattered(L)
    assert not spans_space(L)
    assert verify_h_scattered(L, 1) is False


@pytest.mark.parametrize("p,e,n,r,kw", [
    (2, 1, 4, 3, {}), (3, 1, 3, 2, {}), (2, 1, 5, 4, {}), (2, 2, 3, 3, {}),
    (3, 1, 4, 3, {"family": "twisted", "delta": 2}),  # rejected-delta twist: not scattered
])
def test_point_count_bounds(p, e, n, r, kw):
    V = view_of(p, e, n)
    if kw.get("family") == "twisted":
        # build the tuple by hand, skipping the condition check
        d = kw["delta"]
        maps = [QPolynomial.from_terms(V, [(1, j)]) for j in range(1, r)]
        maps.append(QPolynomial.from_terms(V, [(1, 0), (d, r)]))
        L = build_linear_set(MapTuple(tuple(maps)))
    else:
        L = build_linear_set(gabidulin_tuple(V, r))
    assert _point_identity(L)
    assert len(L) <= theta(L.rank - 1, V.q)
    assert (len(L) == theta(L.rank - 1, V.q)) == bool(np.all(L.weights == 1))


def test_twist_condition_decides_hyperplane_scatteredness():
    # (q, n, r) = (3, 4, 3): the norm condition is N(d) != (-1)^12 = 1
    V = view_of(3, 1, 4)
    F = V.ctx
    for d in range(1, F.order):
        maps = [QPolynomial.from_terms(V, [(1, 1)]), QPolynomial.from_terms(V, [(1, 2)]),
                QPolynomial.from_terms(V, [(1, 0), (d, 3)])]
        L = build_linear_set(MapTuple(tuple(maps)))
        assert verify_h_scattered(L, 2) == (F(d) ** 40 != F.one), d


def test_non_injective_tuple_rejected():
    V = view_of(2, 1, 3)
    f = QPolynomial.from_terms(V, [(1, 1), (1, 0)])  # x^2 + x vanishes on GF(2)
    with pytest.raises(ValueError, match="zero vector"):
        build_linear_set(MapTuple((f, f)))


def test_scalar_invariance_of_hyperplane_weight(gab233):
    F = gab233.ctx
    rng = np.random.default_rng(3)
    for a in rng.integers(0, 8, size=(20, 3)):
        if not a.any():
            continue
        w = hyperplane_weight(gab233, a.tolist())
        for lam in range(1, 8):
            assert hyperplane_weight(gab233, F.vmul(lam, a).tolist()) == w
    with pytest.raises(ValueError):
        hyperplane_weight(gab233, [0, 0, 0])


def test_subspace_weight_of_single_form_is_hyperplane_weight(gab233):
    for a in [[1, 2, 3], [0, 1, 5], [1, 0, 0]]:
        assert subspace_weight(gab233, [a]) == hyperplane_weight(gab233, a)
    with pytest.raises(ValueError, match="dependent"):
        subspace_weight(gab233, [[1, 2, 3], [1, 2, 3]])


def test_point_order_does_not_matter(gab233):
    perm = np.random.default_rng(4).permutation(len(gab233))
    L2 = LinearSet(gab233.blocks, gab233.points[perm], gab233.weights[perm])
    assert is_scattered(L2) == is_scattered(gab233)
    assert weight_profile(L2).counts == weight_profile(gab233).counts


@pytest.mark.parametrize("p,e,n,r", [(2, 1, 4, 3), (2, 1, 5, 3), (3, 1, 3, 3), (2, 1, 5, 4), (2, 1, 4, 4)])
def test_full_scattered_is_r_character(p, e, n, r):
    L = gabidulin_set(p, e, n, r)
    prof = weight_profile(L)
    assert sorted(prof.counts) == list(range(r))
    assert all(c > 0 for c in prof.counts.values())
    Q = L.view.q**n
    assert prof.total == (Q**r - 1) // (Q - 1)


def test_profile_workers_do_not_change_result():
    L = gabidulin_set(2, 1, 4, 3)
    assert weight_profile(L, workers=1).counts == weight_profile(L, workers=3).counts


def test_profile_budget_exceeded_is_an_error():
    L = gabidulin_set(2, 1, 4, 3)
    with pytest.raises(BudgetExceeded):
        weight_profile(L, budget=100)


def test_direct_sum_structure(direct_sum):
    L = direct_sum
    assert L.is_direct_sum and L.r == 6 and L.rank == 6
    assert len(L) == 63 and is_scattered(L) and spans_space(L)
    assert _point_identity(L)


def test_direct_sum_weights_agree_with_point_counts(direct_sum):
    rng = np.random.default_rng(5)
    forms = rng.integers(0, 8, size=(40, 6))
    forms[:5, 3:] = 0  # forms living on one block
    forms[5:10, :3] = 0
    for a in forms:
        if not a.any():
            continue
        w = hyperplane_weight(direct_sum, a.tolist())
        assert points_on_hyperplane(direct_sum, a.tolist()) == theta_pure(w - 1, 2)


def test_direct_sum_validation():
    V = view_of(2, 1, 3)
    g = gabidulin_tuple(V, 3)
    with pytest.raises(ValueError, match="t >= 2"):
        build_direct_sum_set([g])
    with pytest.raises(ValueError, match="planar"):
        build_direct_sum_set([g, gabidulin_tuple(V, 2)])
    with pytest.raises(ValueError, match="view"):
        build_direct_sum_set([g, gabidulin_tuple(view_of(2, 1, 4), 3)])
    with pytest.raises(BudgetExceeded):
        build_direct_sum_set([g, g], budget=10)


def test_verify_h_scattered_paths(gab233):
    assert verify_h_scattered(gab233, 2)
    assert verify_h_scattered(gab233, 1)
    with pytest.raises(ValueError):
        verify_h_scattered(gab233, 3)
    with pytest.raises(ValueError):
        verify_h_scattered(gab233, 0)


def test_verify_h_scattered_intermediate_h():
    # r = 4, h = 2: every line meets L in weight <= 2
    L = gabidulin_set(2, 1, 4, 4)
    assert verify_h_scattered(L, 3)
    with pytest.raises(BudgetExceeded):
        verify_h_scattered(L, 2, budget=1000)


def test_verify_h_scattered_sporadic_rows():
    V = view_of(3, 1, 6)
    F = V.ctx
    d = next(v for v in range(F.order) if F(v) * F(v) + F(v) == F.one)
    L = build_linear_set(table1_tuple(V, "6-4-csmz", delta=d))
    assert len(L) == 364 and is_scattered(L) and spans_space(L)


def test_r1_profile_rejected():
    V = view_of(2, 1, 3)
    L = build_linear_set(monomial_tuple(V, [0]))
    with pytest.raises(ValueError):
        weight_profile(L)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=3, max_size=3).filter(any), st.integers(1, 15))
def test_hyperplane_weight_matches_point_count_q2_n4(a, lam):
    L = gabidulin_set(2, 1, 4, 3)
    w = hyperplane_weight(L, a)
    F = L.ctx
    assert hyperplane_weight(L, [F.mul(lam, c) for c in a]) == w
    assert points_on_hyperplane(L, a) == theta_pure(w - 1, 2)


def test_verify_h_scattered_gabidulin_253():
    L = gabidulin_set(2, 1, 5, 3)
    assert verify_h_scattered(L, 2)
    assert max(weight_profile(L).counts) == 2
