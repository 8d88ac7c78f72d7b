import pytest
from hypothesis import given, strategies as st

from fewweight import (PredictedEnumerator, WeightEnumerator, gauss_binom, mrd_weight_distribution,
                       predict_2scattered, predict_full_scattered, t_values, theta, verify)
from fewweight.formulas import counting_identities, exact_div, t0_star

from oracles import subspace_count_bruteforce


def test_theta_values():
    assert theta(-1, 2) == 0
    assert [theta(i, 2) for i in range(4)] == [1, 3, 7, 15]
    assert theta(2, 3) == 13
    with pytest.raises(ValueError):
        theta(-2, 2)


@given(st.integers(0, 60), st.integers(2, 50))
def test_theta_recurrence(i, q):
    assert theta(i, q) == q * theta(i - 1, q) + 1


def test_exact_div():
    assert exact_div(12, 4) == 3
    with pytest.raises(ArithmeticError):
        exact_div(13, 4, "thing")


@pytest.mark.parametrize("q,n", [(2, n) for n in range(1, 6)] + [(3, n) for n in range(1, 5)])
def test_gauss_binom_matches_subspace_count(q, n):
    for k in range(n + 1):
        assert gauss_binom(n, k, q) == subspace_count_bruteforce(n, k, q)


def test_gauss_binom_q3_n5_low_k():
    # k = 3, 4 follow from the symmetry test below
    for k in range(3):
        assert gauss_binom(5, k, 3) == subspace_count_bruteforce(5, k, 3)


@given(st.integers(1, 12), st.integers(0, 12), st.integers(2, 9))
def test_gauss_binom_symmetry_and_pascal(n, k, q):
    if k > n:
        with pytest.raises(ValueError):
            gauss_binom(n, k, q)
        return
    assert gauss_binom(n, k, q) == gauss_binom(n, n - k, q)
    if 1 <= k <= n - 1:
        assert gauss_binom(n, k, q) == gauss_binom(n - 1, k - 1, q) + q**k * gauss_binom(n - 1, k, q)


@pytest.mark.parametrize("q", [2, 3])
def test_mrd_positivity_and_total(q):
    for n in range(1, 7):
        for d in range(1, n + 1):
            dist = mrd_weight_distribution(n, d, q)
            assert len(dist) == n - d + 1
            assert all(a > 0 for a in dist)
            assert sum(dist) == q ** (n * (n - d + 1)) - 1


def test_mrd_known_values():
    # full matrix algebra over F_2, n = 3: rank counts are 49, 294, 168
    assert mrd_weight_distribution(3, 1, 2) == [49, 294, 168]
    # d = n: every nonzero element has full rank
    assert mrd_weight_distribution(4, 4, 3) == [3**4 - 1]


def _valid_2scattered():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for n in range(3, 41):
            for r in range(3, 41):
                if (r * n) % 3 == 0 and q ** (r * n // 3) <= 2**40:
                    yield r, n, q


def test_t_values_satisfy_counting_system():
    checked = 0
    for r, n, q in _valid_2scattered():
        tv = t_values(r, n, q)
        k = tv.base_weight
        profile = {k + i: t for i, t in enumerate(tv.as_tuple())}
        num_points = theta(r * n // 3 - 1, q)
        for lhs, rhs in counting_identities(profile, num_points, r, n, q):
            assert lhs == rhs, (r, n, q)
        checked += 1
    assert checked > 100


def test_t_values_example():
    tv = t_values(6, 3, 2)
    assert tv.as_tuple() == (33480, 3906, 63)
    assert tv.base_weight == 3
    assert t0_star(6, 3, 2) > 0


@pytest.mark.parametrize("r,n", [(3, 2), (2, 3), (4, 4)])
def test_t_values_invalid(r, n):
    with pytest.raises(ValueError):
        t_values(r, n, 2)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("q", [2, 3, 4])
def test_planar_t_values_are_scaled_mrd_counts(n, q):
    # r = 3: (q^n - 1) t_i = A_{n-i} of the (n, n-2, q) distribution
    tv = t_values(3, n, q)
    dist = mrd_weight_distribution(n, n - 2, q)  # [A_{n-2}, A_{n-1}, A_n]
    for i, t in enumerate(tv.as_tuple()):
        assert (q**n - 1) * t == dist[2 - i]


def test_predict_full_233():
    W = predict_full_scattered(3, 3, 2)
    assert W.counts == {0: 1, 4: 49, 6: 294, 7: 168}
    assert W.total == 2**9
    assert isinstance(W, PredictedEnumerator) and W.source


@pytest.mark.parametrize("n,r,q", [(n, r, q) for q in (2, 3, 4) for n in range(1, 6) for r in range(1, n + 1)])
def test_predicted_totals(n, r, q):
    W = predict_full_scattered(n, r, q)
    assert W.total == q ** (n * r)
    assert len(W.nonzero_weights()) == r


def test_predict_full_rejects_r_above_n():
    with pytest.raises(ValueError):
        predict_full_scattered(3, 4, 2)


def test_predict_2scattered_example():
    W = predict_2scattered(6, 3, 2)
    assert W.counts == {0: 1, 32: 441, 48: 27342, 56: 234360}
    assert W.total == 2**18


@pytest.mark.parametrize("r,n,q", [(3, 3, 2), (6, 3, 2), (3, 6, 2), (9, 3, 3), (4, 3, 2), (5, 6, 3)])
def test_predict_2scattered_totals(r, n, q):
    W = predict_2scattered(r, n, q)
    assert W.total == q ** (n * r)
    assert len(W.nonzero_weights()) == 3


def test_r3_closed_forms_agree():
    for n in (3, 6):
        for q in (2, 3):
            assert predict_2scattered(3, n, q) == predict_full_scattered(n, 3, q)


def test_verify_pass_and_located_failure():
    W = predict_full_scattered(3, 3, 2)
    rep = verify(WeightEnumerator(7, 3, 8, dict(W.counts)), W)
    assert rep.passed and "verdict: PASS" in rep.render()
    bad = dict(W.counts)
    bad[6] += 1
    rep = verify(WeightEnumerator(7, 3, 8, bad), W)
    assert not rep.passed
    assert rep.first_discrepancy == (6, 294, 295)
    assert "weight 6: predicted 294, computed 295" in rep.render()


def test_verify_metadata_mismatch():
    with pytest.raises(ValueError, match="metadata"):
        verify(predict_full_scattered(3, 3, 2), predict_full_scattered(4, 3, 2))
