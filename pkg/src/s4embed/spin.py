"""Spin structures on plumbed manifolds, the Neumann-Siebenmann mu-bar
invariant, and the 10/8-type counting obstruction.

Spin structures on the boundary of a plumbing correspond to Wu sets:
0/1 vertex vectors w with Q w = diag(Q) mod 2.  For such a set,
mu_bar = sigma(X) - w.w, with w.w the square of the integral lift under
the intersection form.  Both ingredients are computed exactly.

For a pretzel-link double branched cover the number of spin structures
is 2^(k-1), k the number of link components; the count doubles as a
cross-check on the component count computed from strand parities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import mod2_solution_set, signature
from .manifolds import (
    Manifold,
    PretzelCover,
    SeifertManifold,
    euler_invariant,
    pretzel_to_seifert,
)
from .plumbing import PlumbingTree, plumbing_tree


def wu_sets(tree: PlumbingTree) -> list[tuple[int, ...]]:
    """All 0/1 vertex vectors characteristic for the incidence matrix."""
    Q = tree.incidence_matrix()
    diag = [Q[i][i] for i in range(len(Q))]
    sols = mod2_solution_set(Q, diag)
    if not sols:
        # cannot happen for a symmetric form with its own diagonal on the
        # right-hand side; report loudly if it ever does
        raise ArithmeticError("no Wu set: characteristic system inconsistent")
    return sols


def mu_bar(tree: PlumbingTree, w) -> int:
    """sigma(X) - w.w for a Wu set w on the plumbing X."""
    Q = tree.incidence_matrix()
    n = len(Q)
    if len(w) != n or any(x not in (0, 1) for x in w):
        raise ValueError("Wu set must be a 0/1 vertex vector")
    ww = sum(w[i] * Q[i][j] * w[j] for i in range(n) for j in range(n))
    return signature(Q) - ww


def pretzel_link_components(strands) -> int:
    """Component count of the pretzel link, from strand parities.

    The two strands through each twist region swap ends iff the twist
    count is odd; tracing the resulting identifications around the
    diagram counts closed loops.
    """
    n = len(strands)
    # endpoints per region: (i, 'TL'|'TR'|'BL'|'BR'); arcs join TR_i-TL_{i+1}
    # and BR_i-BL_{i+1}; inside region i: odd twists TL-BR, TR-BL, even
    # twists TL-BL, TR-BR.
    joins: dict[tuple[int, str], tuple[int, str]] = {}

    def join(a, b):
        joins.setdefault(a, b)
        joins.setdefault(b, a)

    pair: dict[tuple[int, str], tuple[int, str]] = {}
    for i, a in enumerate(strands):
        if a % 2:
            pair[(i, "TL")] = (i, "BR")
            pair[(i, "BR")] = (i, "TL")
            pair[(i, "TR")] = (i, "BL")
            pair[(i, "BL")] = (i, "TR")
        else:
            pair[(i, "TL")] = (i, "BL")
            pair[(i, "BL")] = (i, "TL")
            pair[(i, "TR")] = (i, "BR")
            pair[(i, "BR")] = (i, "TR")
    for i in range(n):
        j = (i + 1) % n
        join((i, "TR"), (j, "TL"))
        join((i, "BR"), (j, "BL"))

    seen: set[tuple[int, str]] = set()
    count = 0
    for start in pair:
        if start in seen:
            continue
        count += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            via_region = pair[cur]
            seen.add(via_region)
            cur = joins[via_region]
    return count


@dataclass(frozen=True)
class SpinProfile:
    """Wu sets and mu-bar values on the definite-side plumbing."""

    tree: PlumbingTree
    wu: tuple[tuple[int, ...], ...]
    mu_values: tuple[int, ...]  # sorted multiset
    spin_count: int
    link_components: int | None = None

    @property
    def vanishing(self) -> int:
        return sum(1 for v in self.mu_values if v == 0)


def spin_profile(m: PretzelCover | SeifertManifold) -> SpinProfile:
    """Wu sets and mu-bar values of the manifold.

    Computed on the standard plumbing of whichever orientation is
    negative (semi)definite; reversing orientation negates mu-bar and
    fixes the vanishing count.  Pretzel covers also carry the link
    component count k, checked against spin count = 2^(k-1).
    """
    k = None
    if isinstance(m, PretzelCover):
        k = pretzel_link_components(m.strands)
        seif = pretzel_to_seifert(m)
    else:
        seif = m
    if not seif.base_orientable:
        raise ValueError("mu-bar via Wu sets needs an orientable base plumbing")
    flip = euler_invariant(seif) < 0
    tree = plumbing_tree(seif, "-" if flip else "+")
    wu = tuple(wu_sets(tree))
    values = sorted(mu_bar(tree, w) * (-1 if flip else 1) for w in wu)
    profile = SpinProfile(tree, wu, tuple(values), len(wu), k)
    if k is not None and profile.spin_count != 2 ** (k - 1):
        raise ArithmeticError(
            f"spin count {profile.spin_count} disagrees with 2^(k-1) for k={k}"
        )
    return profile


def furuta_check(case: str, b2: int, sigma_terms, **flags) -> bool:
    """Inequality from the 10/8 theorem for the three boundary cases.

    rational_ball:  X = D^4, or 4 b2 >= 5|sigma| + 8;
    S1_homology:    b2 = 1,  or 4 b2 >= 5|sigma| + 12;
    S2_homology:    4 b2 >= 5|sigma(X) + sigma(V)| + 4.
    """
    terms = list(sigma_terms) if not isinstance(sigma_terms, int) else [sigma_terms]
    total = sum(terms)
    if case == "rational_ball":
        return bool(flags.get("x_is_d4")) or 4 * b2 >= 5 * abs(total) + 8
    if case == "S1_homology":
        return b2 == 1 or 4 * b2 >= 5 * abs(total) + 12
    if case == "S2_homology":
        return 4 * b2 >= 5 * abs(total) + 4
    raise ValueError(f"unknown case {case!r}")


MU_BAR_THRESHOLD = {1: 1, 2: 2, 3: 3, 4: 5}


def mubar_vanishing_threshold(k: int) -> int:
    """Least number of vanishing mu-bar invariants an embedded cover
    admits: 2^((k+1)/2) - 1 for odd k, 3 * 2^((k-2)/2) - 1 for even k."""
    return MU_BAR_THRESHOLD[k]
