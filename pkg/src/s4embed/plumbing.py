"""Standard (semi)definite plumbings bounding the three manifold classes.

A lens-space sum bounds the disjoint union of linear chains with weights
given by negated continued-fraction entries; that plumbing is negative
definite for every orientation.  A Seifert manifold over an orientable
base bounds the star-shaped plumbing with the central framing at the hub
and one leg per singular fibre (definite when e > 0, semi-definite of
corank one when e = 0).  Over a non-orientable base the central curve
drops out of second homology and the intersection form is the chain
forest of the legs alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intlinalg
from .manifolds import (
    LensSum,
    Manifold,
    PretzelCover,
    SeifertManifold,
    euler_invariant,
    neg_continued_fraction,
    normalize_seifert,
    pretzel_to_seifert,
)


@dataclass(frozen=True)
class PlumbingTree:
    """Weighted forest with at most simple edges.

    ``central`` marks the star hub when one exists;
    ``nonorientable_base`` records that the tree is the leg forest of a
    non-orientable-base Seifert manifold.
    """

    weights: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    central: int | None = None
    nonorientable_base: bool = False

    def incidence_matrix(self) -> list[list[int]]:
        n = len(self.weights)
        Q = [[0] * n for _ in range(n)]
        for i, w in enumerate(self.weights):
            Q[i][i] = w
        for i, j in self.edges:
            Q[i][j] = Q[j][i] = 1
        return Q

    @property
    def size(self) -> int:
        return len(self.weights)


def _chain_edges(start: int, length: int) -> list[tuple[int, int]]:
    return [(start + i, start + i + 1) for i in range(length - 1)]


def lens_chains(m: LensSum) -> PlumbingTree:
    """Disjoint linear chains with weights -a_j, one chain per summand."""
    weights: list[int] = []
    edges: list[tuple[int, int]] = []
    for p, q in m.summands:
        seq = neg_continued_fraction(p, q)
        start = len(weights)
        weights.extend(-a for a in seq)
        edges.extend(_chain_edges(start, len(seq)))
    return PlumbingTree(tuple(weights), tuple(edges))


def seifert_star(m: SeifertManifold) -> PlumbingTree:
    """Star plumbing of an orientable-base Seifert manifold.

    Built from the normalised description (a_i > -b_i > 0): hub weight
    is the normalised central framing, legs carry the negated entries of
    the expansion of a_i / -b_i, innermost vertex adjacent to the hub.
    The result is a valid surgery presentation for any e; it is negative
    (semi)definite exactly when e >= 0.
    """
    if not m.base_orientable:
        raise ValueError("star plumbing needs an orientable base")
    norm = normalize_seifert(m)
    weights: list[int] = [norm.r]
    edges: list[tuple[int, int]] = []
    for a, b in norm.invariants:
        seq = neg_continued_fraction(a, -b)
        start = len(weights)
        weights.extend(-c for c in seq)
        edges.append((0, start))
        edges.extend(_chain_edges(start, len(seq)))
    return PlumbingTree(tuple(weights), tuple(edges), central=0)


def seifert_leg_forest(m: SeifertManifold) -> PlumbingTree:
    """Leg chains alone: the definite form bounding a non-orientable-base
    Seifert manifold (the central curve does not contribute)."""
    norm = normalize_seifert(m)
    weights: list[int] = []
    edges: list[tuple[int, int]] = []
    for a, b in norm.invariants:
        seq = neg_continued_fraction(a, -b)
        start = len(weights)
        weights.extend(-c for c in seq)
        edges.extend(_chain_edges(start, len(seq)))
    return PlumbingTree(tuple(weights), tuple(edges), nonorientable_base=True)


def plumbing_tree(m: Manifold, orientation: str = "+") -> PlumbingTree:
    """The standard definite/semi-definite plumbing for either orientation.

    orientation '-' builds the tree for the reversed manifold.  For an
    orientable-base Seifert manifold the chosen orientation must have
    e >= 0, otherwise no standard definite plumbing exists on that side.
    """
    if orientation not in ("+", "-"):
        raise ValueError("orientation must be '+' or '-'")
    if isinstance(m, PretzelCover):
        m = pretzel_to_seifert(m)
    if orientation == "-":
        m = m.mirror()
    if isinstance(m, LensSum):
        return lens_chains(m)
    if m.base_orientable:
        if euler_invariant(m) < 0:
            raise ValueError("orientation yields e < 0 with orientable base")
        return seifert_star(m)
    return seifert_leg_forest(m)


def definiteness(tree: PlumbingTree):
    """('negative_definite', 0) | ('negative_semidefinite', corank) |
    ('indefinite', 0), decided exactly."""
    return intlinalg.definiteness(tree.incidence_matrix())
