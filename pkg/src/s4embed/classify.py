"""Decision procedures and the obstruction orchestrator.

Lens-space sums are decided completely: a sum embeds iff every p_i is
odd and the summands match up into mirror pairs.  Seifert manifolds over
a non-orientable base must carry weak complementary pairs (plus a rigid
clause for even multiplicities), and over an orientable base with e = 0
complementary pairs; with every a_i odd the latter is also sufficient.
Pretzel covers are classified: up to mirror, the embeddable ones are
Y(a,-a,a), Y(a,-a,a,-a), Y(a,-a,b,-b) with a or b odd, and
Y(a+-1,-a,a,-a); the family Y(2l-1,-2l-1,-2l^2) stays UNKNOWN, and
everything else is refuted by an explicitly completed obstruction.

The catalog lists known embeddable families with their constructions
(twist-spun mirror sums, doubly slice pretzel moves, a handle-calculus
example); a catalog hit plus a completed obstruction is an internal
error and is never silently resolved.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .intlinalg import cokernel, determinant
from .manifolds import (
    LensSum,
    Manifold,
    PretzelCover,
    SeifertManifold,
    euler_invariant,
    first_homology,
    lens_class,
    lens_mirror_class,
    normalize_seifert,
    pretzel_strand_forms,
    pretzel_to_seifert,
    seifert_pretzel_strands,
    spin_structure_count,
)
from .obstructions import (
    ObstructionResult,
    double_subset_obstruction,
    nonorientable_obstruction,
    semidefinite_obstruction,
)
from .plumbing import plumbing_tree, seifert_leg_forest
from .spin import mubar_vanishing_threshold, pretzel_link_components, spin_profile

DEFAULT_BUDGET = 10**7


@dataclass
class Verdict:
    status: str  # 'EMBEDS' | 'OBSTRUCTED' | 'UNKNOWN'
    reason: str
    certificates: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# multiset pairings


def _matchable(items, partner) -> bool:
    counts = Counter(items)
    for x, cnt in counts.items():
        y = partner(x)
        if y == x:
            if cnt % 2:
                return False
        elif counts[y] != cnt:
            return False
    return True


def lens_mirror_matched(m: LensSum) -> bool:
    """Does the summand multiset split into mirror pairs L(p,q), L(p,p-q)?
    Self-mirror classes (q^2 = -1 mod p) need even multiplicity."""
    classes = [lens_class(p, q) for p, q in m.summands]

    def partner(cls):
        p, _, reps = cls
        q = next(iter(reps))
        return lens_mirror_class(p, q)

    return _matchable(classes, partner)


def _residue_pairs(invariants):
    return [(a, b % a) for a, b in invariants]


def complementary_matched(invariants) -> bool:
    """Perfect matching of (a, b) with (a, -b) up to framing shifts."""

    def partner(item):
        a, beta = item
        return (a, (-beta) % a)

    return _matchable(_residue_pairs(invariants), partner)


def weak_complementary_matched(invariants) -> bool:
    """Matching of (a, b) with (a, -b) or (a, -b^-1); equivalently the
    fibre lens classes pair into mirrors."""
    classes = [lens_class(a, b % a) for a, b in invariants]

    def partner(cls):
        p, _, reps = cls
        q = next(iter(reps))
        return lens_mirror_class(p, q)

    return _matchable(classes, partner)


def even_fibre_clause(invariants) -> bool:
    """Every two even-multiplicity fibres (a_i even, a_j even) must share
    a_i = a_j with b_i in {+-b_j, +-b_j^-1} mod a."""
    evens = [(a, b % a) for a, b in invariants if a % 2 == 0]
    for i in range(len(evens)):
        for j in range(i + 1, len(evens)):
            (a1, b1), (a2, b2) = evens[i], evens[j]
            if a1 != a2:
                return False
            inv = pow(b2, -1, a1)
            if b1 % a1 not in {b2 % a1, (-b2) % a1, inv % a1, (-inv) % a1}:
                return False
    return True


# ---------------------------------------------------------------------------
# pretzel families


def _family_match(strands) -> tuple[str, dict] | None:
    """Match one chirality against the embeddable families."""
    ms = Counter(strands)
    n = len(strands)
    values = sorted(set(strands), key=abs)
    if n == 3:
        for a in values:
            if ms == Counter({a: 2, -a: 1}):
                return "pretzel(a,-a,a)", {"a": a}
    if n == 4:
        for a in values:
            if a > 0 and ms == Counter({a: 2, -a: 2}):
                return "pretzel(a,-a,a,-a)", {"a": a}
        for a in values:
            for d in (a + 1, a - 1):
                target = Counter({-a: 2, a: 1})
                target[d] += 1
                if ms == target:
                    return "pretzel(a+-1,-a,a,-a)", {"a": a, "d": d}
        pos = sorted((x for x in strands if x > 0), key=abs)
        neg = sorted((-x for x in strands if x < 0), key=abs)
        if len(pos) == 2 and pos == neg:
            a, b = pos
            if a % 2 or b % 2:
                return "pretzel(a,-a,b,-b) odd", {"a": a, "b": b}
    return None


def _all_strand_forms(m: PretzelCover) -> tuple[tuple[int, ...], ...]:
    """Every pretzel presentation of the cover and of its mirror;
    family membership is a diffeomorphism statement, so matching any
    Rolfsen-equivalent form counts."""
    forms = {m.strands, m.mirror().strands}
    for source in (pretzel_to_seifert(m), pretzel_to_seifert(m).mirror()):
        forms.update(pretzel_strand_forms(source))
    return tuple(sorted(forms))


def pretzel_embeddable_family(m: PretzelCover) -> tuple[str, dict] | None:
    """Family membership up to permutation, mirror, and Rolfsen twists."""
    for strands in _all_strand_forms(m):
        hit = _family_match(strands)
        if hit is not None:
            return hit
    return None


def pretzel_unknown_family(m: PretzelCover) -> int | None:
    """Membership in Y(2l-1, -2l-1, -2l^2) up to mirror; returns l."""
    for strands in _all_strand_forms(m):
        evens = [x for x in strands if x % 2 == 0]
        odds = sorted(x for x in strands if x % 2)
        if len(strands) != 3 or len(evens) != 1 or len(odds) != 2:
            continue
        c = evens[0]
        if c >= 0 or (-c) % 2:
            continue
        half = -c // 2
        l = math.isqrt(half)
        if l * l != half or l < 1:
            continue
        if odds == sorted((2 * l - 1, -2 * l - 1)):
            return l
    return None


def _theorem4_scope(m: PretzelCover) -> bool:
    big = sum(1 for a in m.strands if abs(a) >= 2)
    return big >= 3 and len(m.strands) - big <= 1


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    construction: str
    matches: Callable[[Manifold], bool]


def _is_trivial_embeddable(m: Manifold) -> bool:
    # S^3 (empty sum) and S^1 x S^2 sit inside S^4 classically
    if isinstance(m, LensSum):
        return not m.summands
    if isinstance(m, PretzelCover):
        m = pretzel_to_seifert(m)
    if isinstance(m, SeifertManifold):
        return (
            m.base_orientable
            and m.genus == 0
            and not m.invariants
            and m.r == 0
        )
    return False


def _matches_lens_mirror(m: Manifold) -> bool:
    if not isinstance(m, LensSum):
        return False
    return bool(m.summands) and all(p % 2 for p, _ in m.summands) and lens_mirror_matched(m)


def _pretzel_view(m: Manifold) -> PretzelCover | None:
    if isinstance(m, PretzelCover):
        return m
    if isinstance(m, SeifertManifold):
        strands = seifert_pretzel_strands(m)
        if strands is not None:
            return PretzelCover(strands)
    return None


def _matches_doubly_slice_pretzel(m: Manifold) -> bool:
    cover = _pretzel_view(m)
    return cover is not None and pretzel_embeddable_family(cover) is not None


def _matches_odd_complementary_e0(m: Manifold) -> bool:
    if isinstance(m, PretzelCover):
        m = pretzel_to_seifert(m)
    if not isinstance(m, SeifertManifold) or not m.base_orientable:
        return False
    return (
        euler_invariant(m) == 0
        and bool(m.invariants)
        and all(a % 2 for a, _ in m.invariants)
        and complementary_matched(m.invariants)
    )


_KIRBY_EXAMPLE = SeifertManifold(True, 0, 0, [(4, 1), (4, 1), (12, -7)])


def _matches_kirby_example(m: Manifold) -> bool:
    if not isinstance(m, SeifertManifold):
        return False
    norm = normalize_seifert(m)
    return norm in (
        normalize_seifert(_KIRBY_EXAMPLE),
        normalize_seifert(_KIRBY_EXAMPLE.mirror()),
    )


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        "trivial",
        "S^3 and S^1 x S^2 bound standard pieces of S^4",
        _is_trivial_embeddable,
    ),
    CatalogEntry(
        "mirror_lens_sum",
        "double branched covers of sums K # -K of 2-bridge knots "
        "(twist-spun knots are doubly slice)",
        _matches_lens_mirror,
    ),
    CatalogEntry(
        "doubly_slice_pretzel",
        "covers of the doubly slice pretzel links P(a,-a,a), "
        "P(a,-a,a,-a), P(a,-a,b,-b) with a or b odd, P(a+-1,-a,a,-a)",
        _matches_doubly_slice_pretzel,
    ),
    CatalogEntry(
        "odd_complementary_e0",
        "Seifert manifolds with complementary pairs, all a_i odd, e = 0",
        _matches_odd_complementary_e0,
    ),
    CatalogEntry(
        "surgery_example_4_4_12",
        "handle-calculus embedding of the (4,1),(4,1),(12,-7) space",
        _matches_kirby_example,
    ),
)


def catalog_matches(m: Manifold) -> list[CatalogEntry]:
    return [entry for entry in CATALOG if entry.matches(m)]


# ---------------------------------------------------------------------------
# obstruction batteries


def torsion_square_obstruction(m: Manifold) -> ObstructionResult:
    """Embedded manifolds have torsion H_1 of square order (the torsion
    splits as G + G across the two sides)."""
    _, torsion = first_homology(m)
    order = torsion.order
    root = math.isqrt(order)
    if root * root == order:
        return ObstructionResult(
            "torsion_square", "pass", notes=f"|torsion H_1| = {order} = {root}^2"
        )
    return ObstructionResult(
        "torsion_square",
        "obstructed",
        notes=f"|torsion H_1| = {order} is not a perfect square",
    )


def spin_count_parity_obstruction(m: PretzelCover) -> ObstructionResult:
    """b_1 is even iff the branch link has an odd component count."""
    k = pretzel_link_components(m.strands)
    b1, _ = first_homology(m)
    ok = (b1 % 2 == 0) == (k % 2 == 1)
    if ok:
        return ObstructionResult(
            "spin_count_parity", "pass", notes=f"k = {k}, b_1 = {b1}"
        )
    return ObstructionResult(
        "spin_count_parity",
        "obstructed",
        notes=f"k = {k} components force b_1 parity {1 - b1 % 2}, found b_1 = {b1}",
    )


def mubar_count_obstruction(m: PretzelCover) -> ObstructionResult:
    """At least 2^((k+1)/2)-1 (k odd) or 3*2^((k-2)/2)-1 (k even)
    vanishing mu-bar invariants are required."""
    profile = spin_profile(m)
    k = profile.link_components
    threshold = mubar_vanishing_threshold(k)
    cert = {
        "mu_values": list(profile.mu_values),
        "k": k,
        "threshold": threshold,
    }
    if profile.vanishing >= threshold:
        return ObstructionResult(
            "mubar_vanishing",
            "pass",
            [cert],
            f"{profile.vanishing} of {profile.spin_count} mu-bar values vanish",
        )
    return ObstructionResult(
        "mubar_vanishing",
        "obstructed",
        [cert],
        f"only {profile.vanishing} vanishing mu-bar values, need {threshold}",
    )


def _named(result: ObstructionResult, name: str) -> ObstructionResult:
    result.name = name
    return result


def lens_obstruction_battery(m: LensSum, budget: int) -> list[ObstructionResult]:
    results = [torsion_square_obstruction(m)]
    if all(p % 2 for p, _ in m.summands) and lens_mirror_matched(m):
        results.append(
            ObstructionResult(
                "lens_mirror_pairing", "pass", notes="summands pair into mirrors"
            )
        )
    else:
        bad = (
            "some p_i is even"
            if not all(p % 2 for p, _ in m.summands)
            else "no mirror matching of the summands"
        )
        results.append(ObstructionResult("lens_mirror_pairing", "obstructed", notes=bad))
    Q = plumbing_tree(m).incidence_matrix()
    results.append(double_subset_obstruction(Q, budget))
    Qm = plumbing_tree(m, "-").incidence_matrix()
    results.append(
        _named(double_subset_obstruction(Qm, budget), "double_subset_mirror")
    )
    return results


def seifert_obstruction_battery(m: SeifertManifold, budget: int) -> list[ObstructionResult]:
    results = [torsion_square_obstruction(m)]
    e = euler_invariant(m)
    if not m.base_orientable:
        if weak_complementary_matched(m.invariants):
            results.append(
                ObstructionResult(
                    "weak_complementary_pairs", "pass",
                    notes="invariants pair into weak complements",
                )
            )
        else:
            results.append(
                ObstructionResult(
                    "weak_complementary_pairs", "obstructed",
                    notes="invariants do not pair into weak complements",
                )
            )
        if even_fibre_clause(m.invariants):
            results.append(
                ObstructionResult("even_fibre_clause", "pass")
            )
        else:
            results.append(
                ObstructionResult(
                    "even_fibre_clause", "obstructed",
                    notes="two even-a fibres violate the +-b, +-b^-1 clause",
                )
            )
        Q = seifert_leg_forest(m).incidence_matrix()
        results.append(nonorientable_obstruction(Q, budget))
        Qm = seifert_leg_forest(m.mirror()).incidence_matrix()
        results.append(
            _named(
                nonorientable_obstruction(Qm, budget),
                "nonorientable_double_subset_mirror",
            )
        )
        return results

    if e == 0:
        if complementary_matched(m.invariants):
            results.append(
                ObstructionResult(
                    "complementary_pairs", "pass",
                    notes="invariants pair into complements",
                )
            )
        else:
            results.append(
                ObstructionResult(
                    "complementary_pairs", "obstructed",
                    notes="invariants do not pair into complements",
                )
            )
        Q = plumbing_tree(m).incidence_matrix()
        results.append(semidefinite_obstruction(Q, budget))
        Qm = plumbing_tree(m, "-").incidence_matrix()
        results.append(
            _named(semidefinite_obstruction(Qm, budget), "semidefinite_subset_mirror")
        )
    else:
        side = "+" if e > 0 else "-"
        Q = plumbing_tree(m, side).incidence_matrix()
        results.append(double_subset_obstruction(Q, budget))

    strands = seifert_pretzel_strands(m)
    if strands is not None:
        cover = PretzelCover(strands)
        results.append(spin_count_parity_obstruction(cover))
        results.append(mubar_count_obstruction(cover))
    return results


def pretzel_obstruction_battery(m: PretzelCover, budget: int) -> list[ObstructionResult]:
    results = [torsion_square_obstruction(m)]
    results.append(spin_count_parity_obstruction(m))
    results.append(mubar_count_obstruction(m))
    seif = pretzel_to_seifert(m)
    e = euler_invariant(seif)
    if e == 0:
        if complementary_matched(seif.invariants):
            results.append(
                ObstructionResult(
                    "complementary_pairs", "pass",
                    notes="invariants pair into complements",
                )
            )
        else:
            results.append(
                ObstructionResult(
                    "complementary_pairs", "obstructed",
                    notes="invariants do not pair into complements",
                )
            )
        Q = plumbing_tree(seif).incidence_matrix()
        results.append(semidefinite_obstruction(Q, budget))
        Qm = plumbing_tree(seif, "-").incidence_matrix()
        results.append(
            _named(semidefinite_obstruction(Qm, budget), "semidefinite_subset_mirror")
        )
    else:
        side = "+" if e > 0 else "-"
        Q = plumbing_tree(seif, side).incidence_matrix()
        results.append(double_subset_obstruction(Q, budget))
    return results


# ---------------------------------------------------------------------------
# deciders


def decide_lens_sum(m: LensSum) -> Verdict:
    """A sum embeds iff every p_i is odd and the summands mirror-match."""
    if not m.summands:
        return Verdict("EMBEDS", "catalog:trivial")
    if not all(p % 2 for p, _ in m.summands):
        return Verdict("OBSTRUCTED", "theorem:lens_mirror_pairing",
                       ["some p_i is even"])
    if lens_mirror_matched(m):
        return Verdict("EMBEDS", "theorem:lens_mirror_pairing")
    return Verdict("OBSTRUCTED", "theorem:lens_mirror_pairing",
                   ["no mirror matching of the summands"])


def _first_obstructed(results) -> ObstructionResult | None:
    return next((r for r in results if r.obstructed), None)


def decide_seifert(m: SeifertManifold, budget: int = DEFAULT_BUDGET) -> Verdict:
    e = euler_invariant(m)
    if not m.base_orientable:
        if not weak_complementary_matched(m.invariants):
            return Verdict("OBSTRUCTED", "theorem:weak_complementary_pairs")
        if not even_fibre_clause(m.invariants):
            return Verdict("OBSTRUCTED", "theorem:even_fibre_clause")
        for orient, name in (("+", "nonorientable_double_subset"),
                             ("-", "nonorientable_double_subset_mirror")):
            source = m if orient == "+" else m.mirror()
            res = nonorientable_obstruction(
                seifert_leg_forest(source).incidence_matrix(), budget
            )
            if res.obstructed:
                return Verdict("OBSTRUCTED", f"obstruction:{name}", [res])
        return Verdict("UNKNOWN", "obstructions pass; no catalog entry")

    hits = catalog_matches(m)
    if e == 0:
        if not complementary_matched(m.invariants):
            return Verdict("OBSTRUCTED", "theorem:complementary_pairs")
        if hits:
            return Verdict("EMBEDS", f"catalog:{hits[0].name}")
        for orient, name in (("+", "semidefinite_subset"),
                             ("-", "semidefinite_subset_mirror")):
            source = m if orient == "+" else m.mirror()
            res = semidefinite_obstruction(
                plumbing_tree(source).incidence_matrix(), budget
            )
            if res.obstructed:
                return Verdict("OBSTRUCTED", f"obstruction:{name}", [res])
        return Verdict("UNKNOWN", "obstructions pass; no catalog entry")

    if hits:
        return Verdict("EMBEDS", f"catalog:{hits[0].name}")
    battery = seifert_obstruction_battery(m, budget)
    hit = _first_obstructed(battery)
    if hit:
        return Verdict("OBSTRUCTED", f"obstruction:{hit.name}", [hit])
    return Verdict("UNKNOWN", "obstructions pass; no catalog entry")


def decide_pretzel(m: PretzelCover, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Classification of covers with at least three honest strands;
    covers reducing to lens spaces go through the lens decision."""
    if not _theorem4_scope(m):
        return _decide_small_pretzel(m)
    family = pretzel_embeddable_family(m)
    if family is not None:
        name, params = family
        return Verdict("EMBEDS", f"catalog:doubly_slice_pretzel:{name}", [params])
    l = pretzel_unknown_family(m)
    if l is not None:
        return Verdict(
            "UNKNOWN",
            "open_family:pretzel(2l-1,-2l-1,-2l^2)",
            [{"l": l}],
        )
    battery = pretzel_obstruction_battery(m, budget)
    hit = _first_obstructed(battery)
    if hit:
        return Verdict("OBSTRUCTED", f"obstruction:{hit.name}", [hit])
    return Verdict("UNKNOWN", "no obstruction fired; outside known families")


def _decide_small_pretzel(m: PretzelCover) -> Verdict:
    """Covers with at most two honest strands are lens spaces (possibly
    S^3 or S^1 x S^2); a nontrivial single lens space never embeds."""
    seif = pretzel_to_seifert(m)
    e = euler_invariant(seif)
    b1, torsion = first_homology(seif)
    if b1 == 0 and torsion.order == 1:
        return Verdict("EMBEDS", "catalog:trivial", ["S^3"])
    if b1 == 1 and torsion.order == 1:
        return Verdict("EMBEDS", "catalog:trivial", ["S^1 x S^2"])
    return Verdict(
        "OBSTRUCTED",
        "theorem:lens_mirror_pairing",
        [f"lens space of order {torsion.order}"],
    )


# ---------------------------------------------------------------------------
# full report


@dataclass
class ObstructionReport:
    manifold: Manifold
    canonical_form: str
    invariants: dict
    results: list[ObstructionResult]
    status: str
    reason: str
    conflict: bool = False

    def result(self, name: str) -> ObstructionResult | None:
        return next((r for r in self.results if r.name == name), None)


def _report_invariants(m: Manifold) -> dict:
    b1, torsion = first_homology(m)
    inv = {
        "b1": b1,
        "torsion_factors": list(torsion.factors),
        "euler": None,
        "spin_count": spin_structure_count(m),
    }
    if isinstance(m, (SeifertManifold, PretzelCover)):
        seif = m if isinstance(m, SeifertManifold) else pretzel_to_seifert(m)
        inv["euler"] = str(euler_invariant(seif))
    return inv


def full_report(
    m: Manifold,
    budget: int = DEFAULT_BUDGET,
    only: list[str] | None = None,
) -> ObstructionReport:
    """Run every applicable obstruction and merge with the catalog.

    Any completed obstruction refutes; a catalog hit with no refutation
    embeds; both at once is an internal error, flagged and surfaced as
    status CONFLICT.  ``only`` filters obstructions by name.
    """
    if isinstance(m, PretzelCover) and not _theorem4_scope(m):
        seif = pretzel_to_seifert(m)
        results = [torsion_square_obstruction(m)]
        verdict = _decide_small_pretzel(m)
        status, reason = verdict.status, verdict.reason
        if status == "OBSTRUCTED" and not results[0].obstructed:
            results.append(
                ObstructionResult(
                    "lens_mirror_pairing", "obstructed",
                    notes="a single nontrivial lens space never embeds",
                )
            )
        return ObstructionReport(
            m, m.describe(), _report_invariants(m), results, status, reason
        )

    if isinstance(m, LensSum):
        results = lens_obstruction_battery(m, budget)
    elif isinstance(m, SeifertManifold):
        results = seifert_obstruction_battery(m, budget)
    elif isinstance(m, PretzelCover):
        results = pretzel_obstruction_battery(m, budget)
    else:
        raise TypeError(f"cannot classify {m!r}")

    if only is not None:
        results = [r for r in results if r.name in only]

    hits = catalog_matches(m)
    unknown_l = (
        pretzel_unknown_family(m) if isinstance(m, PretzelCover) else None
    )
    obstructed = [r for r in results if r.obstructed]

    conflict = bool(hits) and bool(obstructed)
    if conflict:
        status, reason = "CONFLICT", (
            f"catalog:{hits[0].name} contradicts obstruction:{obstructed[0].name}"
        )
    elif obstructed:
        status, reason = "OBSTRUCTED", f"obstruction:{obstructed[0].name}"
    elif hits:
        status, reason = "EMBEDS", f"catalog:{hits[0].name}"
    elif unknown_l is not None:
        status, reason = "UNKNOWN", "open_family:pretzel(2l-1,-2l-1,-2l^2)"
    else:
        status, reason = "UNKNOWN", "no obstruction fired; no catalog entry"

    return ObstructionReport(
        m,
        m.describe(),
        _report_invariants(m),
        results,
        status,
        reason,
        conflict,
    )
