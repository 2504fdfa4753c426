import math
from fractions import Fraction

import pytest

from s4embed.lattice import enumerate_subsets
from s4embed.manifolds import eval_continued_fraction, neg_continued_fraction
from s4embed.subsets import (
    BadComponentWitness,
    NotLinearError,
    I_of,
    I_of_component,
    complementary_pair_test,
    contract,
    contraction_sites,
    detect_bad_components,
    expand_final_minus2,
    irreducible_decomposition,
    is_double_subset,
    subset_graph,
    subset_groups,
)

STANDARD = ((1, 1, 1), (1, -1, 0), (0, 1, -1))  # (-3) and (-2,-2) chains


def strip_zero_columns(rows):
    keep = [c for c in range(len(rows[0])) if any(r[c] for r in rows)]
    return tuple(tuple(r[c] for c in keep) for r in rows)


def test_subset_graph_standard():
    g = subset_graph(STANDARD)
    assert g.c == 2
    assert g.weights == ((-3,), (-2, -2))


def test_subset_graph_single_and_chain():
    g = subset_graph(((1, -1),))
    assert g.c == 1 and g.weights == ((-2,),)
    g2 = subset_graph(((1, -1, 0), (0, 1, -1)))
    assert g2.c == 1 and g2.weights == ((-2, -2),)


def test_subset_graph_rejects():
    with pytest.raises(NotLinearError) as err:
        subset_graph(((1, 1), (1, -1), (1, 0)))  # last row has square -1
    assert err.value.pair == (2, 2)


def test_I_of():
    # weights (-3,-2,-2): I = 0 + (-1) + (-1)
    assert I_of(STANDARD) == -2
    assert I_of(((1, 1, 1), (1, -1, 0))) == 0 + -1
    three = ((1, 1, 1),)
    assert I_of(three) == 0


def test_irreducible_decomposition():
    assert irreducible_decomposition(((1, -1, 0, 0), (0, 0, 1, -1))) == [(0,), (1,)]
    assert irreducible_decomposition(STANDARD) == [(0, 1, 2)]
    assert irreducible_decomposition(()) == []


def test_contract_chain_2_3():
    rows = ((1, -1, 0, 0), (0, 1, 1, 1))  # chain (-2,-3)
    sites = list(contraction_sites(rows))
    assert (1, 0, 1) in sites  # coordinate 1, drop the (-2) leaf
    out = contract(rows, 1, drop_row=0)
    assert strip_zero_columns(out) == ((1, 1),)


def test_contract_requires_heavy_partner():
    rows = ((1, -1, 0), (0, 1, -1))  # chain (-2,-2)
    assert list(contraction_sites(rows)) == []
    with pytest.raises(ValueError):
        contract(rows, 1)


def test_expand_then_contract_round_trip():
    rows = ((1, 1, 1),)
    grown = expand_final_minus2(rows, 0)
    g = subset_graph(grown)
    assert g.weights == ((-2, -4),) or g.weights == ((-4, -2),)
    back = contract(grown, 3, drop_row=1)
    assert strip_zero_columns(back) == rows
    # I(C) is invariant under expansion by a final (-2) vector
    assert I_of_component(grown, (0, 1)) == I_of(rows)


def bad_component_rows(m, n):
    """Vector model of the bad component with witness (m, n, k=1).

    Base: e1 - e2, e2 + f_1..f_n, -e1 - e2; each further expansion adds a
    final (-2) leaf on one end and charges the opposite end vector.
    """
    width = 2 + n
    v_minus = [1, -1] + [0] * n
    v_mid = [0, 1] + [1] * n
    v_plus = [-1, -1] + [0] * n
    rows = [v_minus, v_mid, v_plus]
    ends = (0, 2)  # current end rows: charge the far end on expansion
    for _ in range(m - 2):
        leaf_col = len(rows[0])
        share_col = next(
            c
            for c in range(len(rows[0]))
            if rows[ends[0]][c]
            and rows[ends[1]][c]
            and all(not r[c] for i, r in enumerate(rows) if i not in ends)
        )
        for r in rows:
            r.append(0)
        new_leaf = [0] * (leaf_col + 1)
        # attach to ends[0] through share_col, charge ends[1] at the new column
        new_leaf[share_col] = -rows[ends[0]][share_col]
        new_leaf[leaf_col] = rows[ends[1]][share_col] * rows[ends[0]][share_col]
        rows[ends[1]][leaf_col] = 1
        rows.append(new_leaf)
        ends = (len(rows) - 1, ends[1])
    return tuple(tuple(r) for r in rows)


@pytest.mark.parametrize("m", [2, 3, 4])
@pytest.mark.parametrize("n", [2, 3])
def test_bad_component_construction_and_detection(m, n):
    rows = bad_component_rows(m, n)
    g = subset_graph(rows)
    assert g.c == 1
    witnesses = detect_bad_components(rows)
    assert len(witnesses) == 1
    w = witnesses[0]
    assert (w.m, w.n) == (m, n)
    p, q = w.lens
    assert p == m * m * n
    assert q % p == (w.m * w.n * w.k + 1) % p or (q * (m * n * w.k + 1)) % p == 1
    # I(C) = n - 4
    assert I_of_component(rows, g.components[0]) == n - 4


def test_bad_component_base_case_spec_example():
    rows = bad_component_rows(2, 2)
    weights = subset_graph(rows).weights[0]
    assert sorted(weights) == [-3, -2, -2]
    value = eval_continued_fraction([-w for w in weights])
    assert value == Fraction(8, 5)


def test_standard_subset_has_no_bad_component():
    assert detect_bad_components(STANDARD) == []
    assert detect_bad_components(()) == []


def test_disjoint_support_three_chain_not_bad():
    # chain (-2,-3,-2) whose ends have disjoint supports is not bad
    rows = ((1, -1, 0, 0, 0, 0), (0, 1, 1, 1, 0, 0), (0, 0, 0, -1, 1, 0))
    g = subset_graph(rows)
    assert g.c == 1
    assert sorted(g.weights[0]) == [-3, -2, -2]
    assert detect_bad_components(rows) == []


def test_complementary_pair_test():
    assert complementary_pair_test((-3,), (-2, -2)) == "complementary"
    assert complementary_pair_test((-2, -4), (-2, -4)) == "neither"
    assert complementary_pair_test((-5,), (-2, -2, -2, -2)) == "complementary"


def test_complementary_congruence_oracle():
    """Validate the congruences against the lens-space classification:
    chains of (p,q) and (p,q') are complementary iff L(p,q') = -L(p,q),
    weak iff that holds only up to inverting q'."""
    for p in range(2, 31):
        for q in range(1, p):
            if math.gcd(p, q) != 1:
                continue
            for q2 in range(1, p):
                if math.gcd(p, q2) != 1:
                    continue
                w1 = tuple(-a for a in neg_continued_fraction(p, q))
                w2 = tuple(-a for a in neg_continued_fraction(p, q2))
                got = complementary_pair_test(w1, w2)
                same_reversed = (q + q2) % p == 0
                inverse_reversed = (q * q2 + 1) % p == 0
                if same_reversed:
                    assert got == "complementary"
                elif inverse_reversed:
                    assert got == "weak_complementary"
                else:
                    assert got == "neither"


def test_double_subset_detection():
    G, H = subset_groups(STANDARD)
    assert G.factors == (3, 3)
    assert H.order == 3
    assert is_double_subset(STANDARD)

    # the (-2)-pair subset of L(2,1)#L(2,1) is double as well
    rows = ((1, 1), (1, -1))
    G2, H2 = subset_groups(rows)
    assert G2.factors == (2, 2)
    assert is_double_subset(rows)


def test_subsets_from_search_are_linear():
    Q = [[-3, 0, 0], [0, -2, 1], [0, 1, -2]]
    for s in enumerate_subsets(Q).subsets:
        g = subset_graph(s.rows)
        assert g.c == 2
        assert I_of(s.rows) == -2
