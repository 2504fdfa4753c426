"""Embedding obstructions from definite intersection forms.

An embedded rational-homology splitting of the 4-sphere forces, for the
standard negative definite form Q of the manifold, a pair of integer
factorisations A_i A_i^t = -Q whose column subgroups H_i = im A_i / im Q
split the cokernel as H_1 + H_2 with H_1 isomorphic to H_2; over a
non-orientable base the conclusion weakens to coker Q isomorphic to
H_i + H_i with |H_1 meet H_2| <= 2.  When e = 0 the semi-definite form
must factor through one fewer column.  For Z/2-homology spheres, a
correction-term argument filters the usable factorisations: every class
of im A / im Q must be hit by A x with x in {-1, +1}^n.

Every verdict of "obstructed" is backed by a provably completed search;
budget exhaustion downgrades to "inconclusive" instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .intlinalg import (
    FiniteAbelianGroup,
    Subgroup,
    cokernel,
    definiteness,
    determinant,
    direct_sum_test,
    doubled_factors,
    subgroup_from_generators,
)
from .lattice import LatticeSubset, SubsetSearchResult, enumerate_subsets


@dataclass
class ObstructionResult:
    """Outcome of one check: pass / obstructed / inconclusive plus the
    data that certifies it."""

    name: str
    verdict: str
    certificates: list = field(default_factory=list)
    notes: str = ""

    @property
    def obstructed(self) -> bool:
        return self.verdict == "obstructed"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self, with_certificates=False) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "verdict": self.verdict}
        if self.notes:
            out["notes"] = self.notes
        if with_certificates and self.certificates:
            out["certificate"] = [_certificate_json(c) for c in self.certificates]
        return out


def _certificate_json(cert):
    if isinstance(cert, LatticeSubset):
        return {"subset_rows": [list(r) for r in cert.rows]}
    if isinstance(cert, Subgroup):
        return {"subgroup_factors": list(cert.factors), "order": cert.order}
    if isinstance(cert, tuple):
        return [_certificate_json(c) for c in cert]
    if isinstance(cert, dict):
        return cert
    return str(cert)


def subset_column_subgroup(G: FiniteAbelianGroup, subset: LatticeSubset) -> Subgroup:
    """H = im A / im Q inside coker Q, generated by the columns of A."""
    gens = [
        G.project([row[c] for row in subset.rows])
        for c in range(subset.num_columns)
    ]
    return subgroup_from_generators(G, gens)


def char_vector_criterion(A: LatticeSubset, Q) -> bool:
    """Correction-term filter for Z/2-homology spheres.

    True iff every coset of im Q inside im A is A x for some x with all
    coordinates +-1.  Since such x are exactly the characteristic vectors
    of the ambient diagonal lattice, the reachable cosets are the
    signed sums of the column classes of A, computed by dynamic
    programming over columns.
    """
    G = cokernel([list(r) for r in Q])
    if not G.is_finite or G.order % 2 == 0:
        raise ValueError("criterion needs an odd-order cokernel")
    H = subset_column_subgroup(G, A)
    cols = [
        G.project([row[c] for row in A.rows]) for c in range(A.num_columns)
    ]
    reachable = {G.reduce([0] * len(G.factors))}
    for g in cols:
        neg = tuple((-x) % d for x, d in zip(g, G.factors))
        reachable = {
            tuple((a + b) % d for a, b, d in zip(r, s, G.factors))
            for r in reachable
            for s in (g, neg)
        }
    return len(reachable) == H.order and all(H.contains(r) for r in reachable)


def _enumerate(Q, mode, budget) -> SubsetSearchResult:
    return enumerate_subsets(Q, mode=mode, budget=budget)


def double_subset_obstruction(Q, budget: int | None = None) -> ObstructionResult:
    """Search for two factorisations splitting coker Q as H + H.

    The pair must have distinct column subgroups unless the cokernel is
    trivial, in which case a single factorisation suffices.  For odd
    cokernel order, factorisations failing the correction-term filter
    cannot arise from a rational-ball side and are discarded first.
    """
    name = "double_subset"
    n = len(Q)
    if n and definiteness(Q)[0] != "negative_definite":
        raise ValueError("double-subset obstruction needs negative definite Q")
    det = determinant(Q) * (-1) ** n  # det(-Q) > 0 for negative definite
    if det < 0 or math.isqrt(det) ** 2 != det:
        return ObstructionResult(
            name,
            "obstructed",
            notes=f"|coker Q| = {abs(det)} is not a perfect square, "
            "so no factorisation exists",
        )
    res = _enumerate(Q, "square", budget)
    if not res.complete and not res.subsets:
        return ObstructionResult(name, "inconclusive", notes="budget exhausted")

    G = cokernel([list(r) for r in Q])
    subsets = list(res.subsets)
    filtered_note = ""
    if G.order % 2 == 1:
        kept = [s for s in subsets if char_vector_criterion(s, Q)]
        if len(kept) != len(subsets):
            filtered_note = (
                f"{len(subsets) - len(kept)} factorisation(s) removed by the "
                "correction-term filter; "
            )
        subsets = kept

    if G.order == 1:
        if subsets:
            return ObstructionResult(
                name, "pass", [(subsets[0], subsets[0])], filtered_note + "trivial cokernel"
            )
        if res.complete:
            return ObstructionResult(
                name, "obstructed", notes=filtered_note + "no factorisation exists"
            )
        return ObstructionResult(name, "inconclusive", notes="budget exhausted")

    by_subgroup: dict = {}
    for s in subsets:
        H = subset_column_subgroup(G, s)
        by_subgroup.setdefault(H.basis, (H, s))
    reps = list(by_subgroup.values())
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            H1, A1 = reps[i]
            H2, A2 = reps[j]
            is_direct, iso, inter = direct_sum_test(G, H1, H2)
            if is_direct and iso and inter == 1:
                return ObstructionResult(
                    name,
                    "pass",
                    [(A1, A2), (H1, H2)],
                    filtered_note + "cokernel splits as H + H",
                )
    if res.complete:
        return ObstructionResult(
            name,
            "obstructed",
            notes=filtered_note
            + f"complete search: {len(reps)} usable subgroup(s), no splitting pair",
        )
    return ObstructionResult(name, "inconclusive", notes="budget exhausted")


def semidefinite_obstruction(Q, budget: int | None = None) -> ObstructionResult:
    """Rectangular factorisation A A^t = -Q through one fewer column."""
    name = "semidefinite_subset"
    kind, corank = definiteness(Q)
    if kind != "negative_semidefinite" or corank != 1:
        raise ValueError("semidefinite obstruction needs corank-one Q")
    res = _enumerate(Q, "rectangular", budget)
    if res.subsets:
        return ObstructionResult(name, "pass", [res.subsets[0]])
    if res.complete:
        return ObstructionResult(
            name, "obstructed", notes="complete search: no rectangular factorisation"
        )
    return ObstructionResult(name, "inconclusive", notes="budget exhausted")


def nonorientable_obstruction(Q, budget: int | None = None) -> ObstructionResult:
    """Pair of factorisations with coker Q isomorphic to H_i + H_i and
    |H_1 meet H_2| <= 2 (non-orientable base form)."""
    name = "nonorientable_double_subset"
    n = len(Q)
    if n == 0:
        return ObstructionResult(name, "pass", notes="empty form, vacuous")
    if definiteness(Q)[0] != "negative_definite":
        raise ValueError("non-orientable obstruction needs negative definite Q")
    det = determinant(Q) * (-1) ** n
    if det < 0 or math.isqrt(det) ** 2 != det:
        return ObstructionResult(
            name,
            "obstructed",
            notes=f"|coker Q| = {abs(det)} is not a perfect square",
        )
    res = _enumerate(Q, "square", budget)
    if not res.complete and not res.subsets:
        return ObstructionResult(name, "inconclusive", notes="budget exhausted")
    G = cokernel([list(r) for r in Q])
    qualifying = []
    for s in res.subsets:
        H = subset_column_subgroup(G, s)
        if tuple(sorted(G.factors)) == doubled_factors(H.factors):
            qualifying.append((H, s))
    for i in range(len(qualifying)):
        for j in range(i, len(qualifying)):
            H1, A1 = qualifying[i]
            H2, A2 = qualifying[j]
            _, _, inter = direct_sum_test(G, H1, H2)
            if inter <= 2:
                return ObstructionResult(
                    name, "pass", [(A1, A2), (H1, H2)],
                    "cokernel is H + H twice over with small intersection",
                )
    if res.complete:
        return ObstructionResult(
            name,
            "obstructed",
            notes=f"complete search: {len(qualifying)} qualifying subset(s), "
            "no pair with intersection <= 2",
        )
    return ObstructionResult(name, "inconclusive", notes="budget exhausted")
