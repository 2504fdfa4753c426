import random

import pytest

from s4embed.lattice import (
    LatticeSubset,
    canonicalize_rows,
    enumerate_subsets,
    naive_enumerate_subsets,
    verify_factorization,
)
from s4embed.manifolds import LensSum, PretzelCover, pretzel_to_seifert
from s4embed.plumbing import lens_chains, plumbing_tree


def chain_matrix(weights, extra_edges=()):
    n = len(weights)
    Q = [[0] * n for _ in range(n)]
    for i, w in enumerate(weights):
        Q[i][i] = w
    for i in range(n - 1):
        Q[i][i + 1] = Q[i + 1][i] = 1
    for i, j in extra_edges:
        Q[i][j] = Q[j][i] = 1
    return Q


def test_verify_factorization_cases():
    Q = [[-3, 0, 0], [0, -2, 1], [0, 1, -2]]
    A = [[1, 1, 1], [1, -1, 0], [0, 1, -1]]
    assert verify_factorization(A, Q)
    assert verify_factorization([[1, 0], [0, 1]], [[-1, 0], [0, -1]])
    assert not verify_factorization([[1]], [[-4]])


def test_minus4_has_single_class():
    res = enumerate_subsets([[-4]])
    assert res.complete
    assert len(res.subsets) == 1
    assert abs(res.subsets[0].rows[0][0]) == 2


def test_l32_chain_has_no_subsets():
    res = enumerate_subsets(chain_matrix([-2, -2]))
    assert res.complete
    assert res.subsets == ()


def test_lens_sum_l31_l32_contains_standard_subset():
    Q = [[-3, 0, 0], [0, -2, 1], [0, 1, -2]]
    res = enumerate_subsets(Q)
    assert res.complete
    target = canonicalize_rows([[1, 1, 1], [1, -1, 0], [0, 1, -1]])
    assert target in {s.rows for s in res.subsets}
    for s in res.subsets:
        assert verify_factorization(s, Q)


def test_rectangular_rank_one():
    res = enumerate_subsets([[-1, 1], [1, -1]], mode="rectangular")
    assert res.complete
    assert len(res.subsets) == 1
    rows = res.subsets[0].rows
    assert sorted(abs(r[0]) for r in rows) == [1, 1]
    assert rows[0][0] * rows[1][0] == -1


def test_mode_validation():
    with pytest.raises(ValueError):
        enumerate_subsets([[1]])
    with pytest.raises(ValueError):
        enumerate_subsets([[-2, 1], [1, -2]], mode="rectangular")


def test_budget_exhaustion_reported():
    Q = chain_matrix([-2] * 8)
    res = enumerate_subsets(Q, budget=5)
    assert res.status == "exhausted"


def test_no_pair_related_by_signed_permutation():
    Q = [[-3, 0, 0], [0, -2, 1], [0, 1, -2]]
    res = enumerate_subsets(Q)
    seen = set()
    for s in res.subsets:
        key = canonicalize_rows(s.rows)
        assert key == s.rows  # already canonical
        assert key not in seen
        seen.add(key)


def random_negative_definite(rng, n, max_diag):
    """Random symmetric negative definite Q with |diagonal| <= max_diag."""
    from s4embed.intlinalg import definiteness

    while True:
        Q = [[0] * n for _ in range(n)]
        for i in range(n):
            Q[i][i] = -rng.randint(1, max_diag)
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.choice([0, 0, 0, 1, 1, -1, 2, -2])
                Q[i][j] = Q[j][i] = v
        if definiteness(Q)[0] == "negative_definite":
            return Q


def test_oracle_equivalence_randomised():
    rng = random.Random(2024)
    for _ in range(50):
        n = rng.randint(1, 4)
        Q = random_negative_definite(rng, n, 6)
        fast = enumerate_subsets(Q)
        assert fast.complete
        slow = naive_enumerate_subsets(Q)
        assert {s.rows for s in fast.subsets} == {s.rows for s in slow}


def test_rectangular_columns_span_full_rank():
    from s4embed.intlinalg import smith_normal_form

    tree = plumbing_tree(PretzelCover([2, -2, 2, -2]))
    Q = tree.incidence_matrix()
    res = enumerate_subsets(Q, mode="rectangular")
    assert res.complete
    assert res.subsets, "the e=0 pretzel cover plumbing factors"
    for s in res.subsets:
        width = s.num_columns
        _, D, _ = smith_normal_form([list(r) for r in s.rows])
        rank = sum(1 for i in range(min(len(D), width)) if D[i][i] != 0)
        assert rank == width


def test_lens_chain_subsets_verify():
    for p, q in [(9, 2), (8, 3), (12, 5), (13, 5)]:
        Q = lens_chains(LensSum([(p, q)])).incidence_matrix()
        res = enumerate_subsets(Q)
        assert res.complete
        for s in res.subsets:
            assert verify_factorization(s, Q)
