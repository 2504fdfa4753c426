import pytest

from s4embed.classify import (
    catalog_matches,
    complementary_matched,
    decide_lens_sum,
    decide_pretzel,
    decide_seifert,
    even_fibre_clause,
    full_report,
    lens_mirror_matched,
    pretzel_embeddable_family,
    pretzel_unknown_family,
    weak_complementary_matched,
)
from s4embed.manifolds import LensSum, PretzelCover, SeifertManifold


def test_decide_lens_sum_examples():
    assert decide_lens_sum(LensSum([(3, 1), (3, 2)])).status == "EMBEDS"
    assert decide_lens_sum(LensSum([(2, 1), (2, 1)])).status == "OBSTRUCTED"
    assert decide_lens_sum(LensSum([(5, 1), (5, 1)])).status == "OBSTRUCTED"
    assert decide_lens_sum(LensSum([])).status == "EMBEDS"
    # amphichiral summand: q^2 = -1 mod p needs even multiplicity
    assert decide_lens_sum(LensSum([(5, 2), (5, 2)])).status == "EMBEDS"
    assert decide_lens_sum(LensSum([(5, 2)])).status == "OBSTRUCTED"


def test_lens_pairing_invariances():
    # q and q^-1 present the same lens space
    assert decide_lens_sum(LensSum([(7, 2), (7, 5)])).status == decide_lens_sum(
        LensSum([(7, 4), (7, 5)])
    ).status
    assert lens_mirror_matched(LensSum([(7, 2), (7, 5)]))
    assert lens_mirror_matched(LensSum([(7, 4), (7, 5)]))


def test_pairing_helpers():
    assert complementary_matched([(5, 1), (5, -1)])
    assert not complementary_matched([(5, 1), (5, 1)])
    assert complementary_matched([(5, 1), (5, 4)])  # 4 = -1 mod 5
    assert weak_complementary_matched([(5, 2), (5, -3)])  # 2*3 = 6 = 1 mod 5
    assert not weak_complementary_matched([(5, 2), (3, 1)])
    assert even_fibre_clause([(4, 1), (4, 3), (5, 2)])
    assert not even_fibre_clause([(4, 1), (6, 1)])


def test_decide_seifert_examples():
    y = SeifertManifold(True, 0, 0, [(5, 1), (5, -1)])
    assert decide_seifert(y).status == "EMBEDS"

    y2 = SeifertManifold(False, 1, 0, [(3, 1), (2, 1)])
    assert decide_seifert(y2).status == "OBSTRUCTED"

    y3 = SeifertManifold(True, 0, 0, [(4, 1), (4, 1), (12, -7)])
    v3 = decide_seifert(y3)
    assert v3.status == "EMBEDS"
    assert "surgery_example" in v3.reason

    # non-orientable base with weak complementary pair passes the search
    y4 = SeifertManifold(False, 1, 0, [(3, 1), (3, -1)])
    assert decide_seifert(y4).status in ("UNKNOWN", "EMBEDS")


def test_decide_seifert_e0_without_odd_clause():
    # complementary pairs but an even a: not catalogued, needs the search
    y = SeifertManifold(True, 0, 0, [(4, 1), (4, -1)])
    v = decide_seifert(y)
    assert v.status in ("UNKNOWN", "OBSTRUCTED")

    # non-complementary e = 0 fails the theorem outright
    y2 = SeifertManifold(True, 0, 0, [(2, 1), (6, -1), (6, -1), (6, -1)])
    assert decide_seifert(y2).status == "OBSTRUCTED"
    assert decide_seifert(y2).reason == "theorem:complementary_pairs"


def test_pretzel_families():
    assert pretzel_embeddable_family(PretzelCover([3, -3, 3])) is not None
    assert pretzel_embeddable_family(PretzelCover([4, -4, 4, -4])) is not None
    assert pretzel_embeddable_family(PretzelCover([2, -2, 3, -3])) is not None
    assert pretzel_embeddable_family(PretzelCover([2, -2, 4, -4])) is None  # both even
    assert pretzel_embeddable_family(PretzelCover([3, -2, 2, -2])) is not None
    assert pretzel_embeddable_family(PretzelCover([1, -2, 2, -2])) is not None
    # Rolfsen-equivalent presentation of Y(2,-2,2)
    assert pretzel_embeddable_family(PretzelCover([1, -2, -2, -2])) is not None
    assert pretzel_embeddable_family(PretzelCover([5, -4, 3, 2])) is None


def test_pretzel_unknown_family():
    assert pretzel_unknown_family(PretzelCover([3, -5, -8])) == 2
    assert pretzel_unknown_family(PretzelCover([-3, 5, 8])) == 2
    assert pretzel_unknown_family(PretzelCover([5, -7, -18])) == 3
    assert pretzel_unknown_family(PretzelCover([3, -3, 3])) is None


def test_decide_pretzel_examples():
    assert decide_pretzel(PretzelCover([3, -3, 3])).status == "EMBEDS"
    assert decide_pretzel(PretzelCover([3, -5, -8])).status == "UNKNOWN"
    v = decide_pretzel(PretzelCover([1, -4, -4, -4]))
    assert v.status == "OBSTRUCTED"
    assert v.reason == "obstruction:double_subset"


def test_decide_pretzel_small_routes_to_lens():
    # P(a,b,+-1) covers are lens spaces
    assert decide_pretzel(PretzelCover([2, 3, 1])).status == "OBSTRUCTED"
    assert decide_pretzel(PretzelCover([1, -3, -2])).status == "EMBEDS"  # S^3
    assert decide_pretzel(PretzelCover([2, -2, 1])).status == "EMBEDS"  # S^1xS^2


def test_decide_pretzel_mirror_invariance():
    for strands in [(3, -3, 3), (4, -4, 2, -2), (5, 2, 2, 2), (3, -5, -8)]:
        a = decide_pretzel(PretzelCover(strands))
        b = decide_pretzel(PretzelCover([-x for x in strands]))
        assert a.status == b.status


def test_full_report_examples():
    r = full_report(PretzelCover([2, -2, 3, -3]))
    assert r.status == "EMBEDS" and not r.conflict
    assert all(not res.obstructed for res in r.results)

    r2 = full_report(LensSum([(5, 1), (5, 1)]))
    assert r2.status == "OBSTRUCTED"
    names = {res.name: res for res in r2.results}
    assert names["double_subset"].obstructed or names["double_subset_mirror"].obstructed

    r3 = full_report(LensSum([]))
    assert r3.status == "EMBEDS"

    r4 = full_report(PretzelCover([4, -4, 2, -2]))
    assert r4.status == "OBSTRUCTED"
    assert r4.result("mubar_vanishing").obstructed


def test_full_report_merge_never_embeds_from_passes_alone():
    # all obstructions pass but no catalog entry: stays UNKNOWN
    y = SeifertManifold(False, 1, 0, [(3, 1), (3, -1)])
    r = full_report(y)
    assert all(not res.obstructed for res in r.results)
    assert r.status == "UNKNOWN"


def test_full_report_obstruction_filter():
    r = full_report(LensSum([(2, 1), (2, 1)]), only=["torsion_square"])
    assert [res.name for res in r.results] == ["torsion_square"]
    assert r.status == "UNKNOWN"  # 4 is a square; the pairing check was filtered out


def test_catalog_consistency():
    assert catalog_matches(LensSum([(3, 1), (3, 2)]))
    assert not catalog_matches(LensSum([(2, 1), (2, 1)]))
    assert catalog_matches(PretzelCover([3, -3, 3]))
    assert not catalog_matches(PretzelCover([3, -5, -8]))
    y = SeifertManifold(True, 0, 1, [(4, 1), (4, 1), (12, 5)])  # rewritten form
    assert any(e.name == "surgery_example_4_4_12" for e in catalog_matches(y))
