"""Combinatorics of linear subsets: chain graphs, the complexity count
I(S), irreducible pieces, contractions, bad components, and the
complementary-pair congruences.

A linear subset is a collection of integer vectors in a diagonal lattice
whose pairwise products (under the negative-definite pairing) are -a_i
on the diagonal with a_i >= 2, and 0 or 1 off the diagonal, the nonzero
ones forming disjoint chains.  Working Euclidean-side, rows here pair to
+a_i and adjacent rows to -1.

Bad components are detected from the vector data, as defined: a
component is bad when some sequence of contractions of final (-2)
vectors inside it reaches a three-vector chain whose two end vectors are
supported on one common coordinate pair, with middle square below -2.
Weight patterns alone are necessary but not sufficient, so no shortcut
is taken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import cokernel, subgroup_from_generators, doubled_factors
from .manifolds import eval_continued_fraction


class NotLinearError(ValueError):
    def __init__(self, pair, message):
        super().__init__(message)
        self.pair = pair


Rows = tuple[tuple[int, ...], ...]


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class SubsetGraph:
    """Chain components of a linear subset.

    ``components`` lists row indices in chain order; ``weights`` gives
    each component's vertex weights (all <= -2) in the same order.
    """

    components: tuple[tuple[int, ...], ...]
    weights: tuple[tuple[int, ...], ...]

    @property
    def c(self) -> int:
        return len(self.components)


def subset_graph(rows: Rows) -> SubsetGraph:
    """Build the weighted chain graph, or report why the shape fails."""
    n = len(rows)
    norms = [_dot(r, r) for r in rows]
    for i, a in enumerate(norms):
        if a < 2:
            raise NotLinearError((i, i), f"row {i} has square -{a} > -2")
    adj: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = _dot(rows[i], rows[j])
            if d == -1:
                adj[i].append(j)
                adj[j].append(i)
            elif d != 0:
                raise NotLinearError((i, j), f"rows {i},{j} pair to {-d}")
    for i in range(n):
        if len(adj[i]) > 2:
            raise NotLinearError((i, i), f"row {i} has {len(adj[i])} neighbours")

    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        # walk to one end of the chain, then traverse
        prev, cur = None, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            if cur == start:
                raise NotLinearError((start, cur), "cycle in subset graph")
        chain = [cur]
        seen[cur] = True
        prev = None
        while True:
            nxt = [x for x in adj[chain[-1]] if x != prev and not seen[x]]
            if not nxt:
                break
            prev = chain[-1]
            chain.append(nxt[0])
            seen[nxt[0]] = True
        components.append(tuple(chain))
    components.sort()
    weights = tuple(tuple(-norms[i] for i in comp) for comp in components)
    return SubsetGraph(tuple(components), weights)


def I_of(rows: Rows) -> int:
    """I(S) = sum of (-v.v - 3) over the subset, Euclidean-side a_i - 3."""
    return sum(_dot(r, r) - 3 for r in rows)


def I_of_component(rows: Rows, component) -> int:
    return sum(_dot(rows[i], rows[i]) - 3 for i in component)


def irreducible_decomposition(rows: Rows) -> list[tuple[int, ...]]:
    """Partition rows by the transitive closure of sharing a coordinate."""
    n = len(rows)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    width = len(rows[0]) if rows else 0
    for c in range(width):
        host = None
        for i in range(n):
            if rows[i][c]:
                if host is None:
                    host = i
                else:
                    union(host, i)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(g) for g in groups.values())


# ---------------------------------------------------------------------------
# contraction / expansion


def contraction_sites(rows: Rows):
    """Yield (coord, drop_row, keep_row) triples satisfying the
    contraction hypothesis: the coordinate is carried, with entry +-1,
    by exactly the two rows, and the kept row has square below -2."""
    n = len(rows)
    width = len(rows[0]) if rows else 0
    for c in range(width):
        carriers = [i for i in range(n) if rows[i][c]]
        if len(carriers) != 2:
            continue
        s, t = carriers
        if abs(rows[s][c]) != 1 or abs(rows[t][c]) != 1:
            continue
        if _dot(rows[t], rows[t]) > 2:
            yield c, s, t
        if _dot(rows[s], rows[s]) > 2:
            yield c, t, s


def contract(rows: Rows, coord: int, drop_row: int | None = None) -> Rows:
    """Remove one of the two rows carrying ``coord`` and strip the
    coordinate from the other (whose square rises by one)."""
    for c, s, t in contraction_sites(rows):
        if c == coord and (drop_row is None or s == drop_row):
            new_rows = []
            for i, r in enumerate(rows):
                if i == s:
                    continue
                v = list(r)
                del v[coord]
                new_rows.append(tuple(v))
            return tuple(new_rows)
    raise ValueError(f"contraction hypothesis violated at coordinate {coord}")


def expand_final_minus2(rows: Rows, attach_row: int) -> Rows:
    """Inverse move: append coordinates j (fresh) and k (fresh), give the
    attach row entry +1 at j, and adjoin the leaf e_k - e_j.

    The leaf pairs to +1 with the attach row and to 0 with all others,
    so contracting at j recovers the original subset (up to trailing
    zero columns); the attach row's square drops by one.
    """
    width = len(rows[0]) if rows else 0
    j, k = width, width + 1
    out = []
    for i, r in enumerate(rows):
        v = list(r) + [0, 0]
        if i == attach_row:
            v[j] = 1
        out.append(tuple(v))
    leaf = [0] * (width + 2)
    leaf[j] = -1
    leaf[k] = 1
    out.append(tuple(leaf))
    return tuple(out)


# ---------------------------------------------------------------------------
# bad components


@dataclass(frozen=True)
class BadComponentWitness:
    component: tuple[int, ...]
    m: int
    n: int
    k: int
    lens: tuple[int, int]


def _is_bad_state(rows: Rows, comp: frozenset[int], memo: dict) -> int | None:
    """Return the base parameter n when the component contracts to a bad
    three-chain, else None.  ``comp`` indexes the component's rows."""
    key = (rows, tuple(sorted(comp)))
    if key in memo:
        return memo[key]
    result = None

    comp_rows = sorted(comp)
    if len(comp) == 3:
        norms = {i: _dot(rows[i], rows[i]) for i in comp_rows}
        prods = {
            (i, j): _dot(rows[i], rows[j])
            for i in comp_rows
            for j in comp_rows
            if i < j
        }
        mid = next(
            (
                i
                for i in comp_rows
                if sum(1 for j in comp_rows if j != i and prods[tuple(sorted((i, j)))] == -1)
                == 2
            ),
            None,
        )
        if mid is not None and norms[mid] >= 3:
            ends = [i for i in comp_rows if i != mid]
            supports = [
                frozenset(c for c, x in enumerate(rows[i]) if x) for i in ends
            ]
            if (
                all(norms[i] == 2 for i in ends)
                and supports[0] == supports[1]
                and len(supports[0]) == 2
            ):
                result = norms[mid] - 1

    if result is None and len(comp) > 3:
        for c, s, t in contraction_sites(rows):
            if s not in comp:
                continue
            if _dot(rows[s], rows[s]) != 2:
                continue
            # the dropped vector must be a leaf of its component
            deg = sum(
                1 for j in comp if j != s and _dot(rows[s], rows[j]) == -1
            )
            if deg != 1:
                continue
            new_rows = contract(rows, c, drop_row=s)
            remap = {}
            shift = 0
            for i in range(len(rows)):
                if i == s:
                    shift = 1
                    continue
                remap[i] = i - shift if i > s else i
            new_comp = frozenset(remap[i] for i in comp if i != s)
            found = _is_bad_state(new_rows, new_comp, memo)
            if found is not None:
                result = found
                break

    memo[key] = result
    return result


def detect_bad_components(rows: Rows) -> list[BadComponentWitness]:
    """All bad components of a linear subset, with (m, n, k) witnesses.

    The witness is recovered from the component's boundary lens space:
    the chain evaluates to m^2 n / q with q or its inverse mod m^2 n
    equal to m n k + 1, and n read off the contracted base chain.
    """
    graph = subset_graph(rows)
    memo: dict = {}
    out = []
    for comp, weights in zip(graph.components, graph.weights):
        if len(comp) < 3:
            continue
        n_param = _is_bad_state(rows, frozenset(comp), memo)
        if n_param is None:
            continue
        value = eval_continued_fraction([-w for w in weights])
        p, q = value.numerator, value.denominator
        witness = None
        if p % n_param == 0:
            m = math.isqrt(p // n_param)
            if m * m * n_param == p and m >= 2:
                for q_eff in (q, pow(q, -1, p)):
                    if (q_eff - 1) % (m * n_param) == 0:
                        k = (q_eff - 1) // (m * n_param)
                        if 0 < k < m and math.gcd(m, k) == 1:
                            witness = BadComponentWitness(comp, m, n_param, k, (p, q))
                            break
        if witness is None:
            raise AssertionError(
                f"bad component of weights {weights} has boundary L({p},{q}) "
                f"outside the m^2 n family"
            )
        out.append(witness)
    return out


def count_bad_components(rows: Rows) -> int:
    return len(detect_bad_components(rows))


# ---------------------------------------------------------------------------
# groups attached to a linear subset


def subset_gram_matrix(rows: Rows) -> list[list[int]]:
    """The chain-forest intersection form -A A^t of the subset."""
    return [[-_dot(r, s) for s in rows] for r in rows]


def subset_groups(rows: Rows):
    """(G(S), H(S)) with G the cokernel of the chain form and H the
    subgroup generated by the columns of the subset matrix."""
    Q = subset_gram_matrix(rows)
    G = cokernel(Q)
    width = len(rows[0]) if rows else 0
    gens = [G.project([r[c] for r in rows]) for c in range(width)]
    return G, subgroup_from_generators(G, gens)


def is_double_subset(rows: Rows) -> bool:
    """G(S) isomorphic to H(S) + H(S), by invariant factors."""
    G, H = subset_groups(rows)
    return tuple(sorted(G.factors)) == doubled_factors(H.factors)


# ---------------------------------------------------------------------------
# complementary pairs


def complementary_pair_test(weights1, weights2) -> str:
    """Classify two chains as complementary / weak_complementary / neither.

    Chains evaluate to p_i/q_i; with both fractions over the same p the
    pair is complementary when q_1 + q_2 = 0 mod p and weak complementary
    when q_1 q_2 = -1 mod p.  Complementary wins when both hold.
    """
    for w in list(weights1) + list(weights2):
        if w > -2:
            raise ValueError("chain weights must be <= -2")
    v1 = eval_continued_fraction([-w for w in weights1])
    v2 = eval_continued_fraction([-w for w in weights2])
    p1, q1 = v1.numerator, v1.denominator
    p2, q2 = v2.numerator, v2.denominator
    if p1 != p2:
        return "neither"
    p = p1
    if (q1 + q2) % p == 0:
        return "complementary"
    if (q1 * q2 + 1) % p == 0:
        return "weak_complementary"
    return "neither"
