"""Exact integer linear algebra shared by every obstruction.

Smith and Hermite normal forms, exact signatures of symmetric forms,
GF(2) affine solving, and presentation-based finite abelian group and
subgroup arithmetic.  Everything runs on Python's arbitrary-precision
integers; determinants of plumbing matrices outgrow machine words as
soon as legs get long, and none of these questions tolerate rounding.

Matrices are plain lists of row lists.  All functions are pure, so
concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


# ---------------------------------------------------------------------------
# matrix helpers


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B) -> list[list[int]]:
    n, k = len(A), len(B)
    m = len(B[0]) if k else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    row[j] += a * Bt[j]
    return out


def mat_vec(A, v) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A) -> list[list[int]]:
    return [list(col) for col in zip(*A)] if A else []


def mat_eq(A, B) -> bool:
    return len(A) == len(B) and all(list(r) == list(s) for r, s in zip(A, B))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def determinant(M) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Diagonalise M over the integers.

    Returns (U, D, V) with U*M*V == D, U and V unimodular, and D diagonal
    with d1 | d2 | ... | dk and every di >= 0.  Pivots are chosen with
    minimal absolute value, which keeps coefficient growth tame at the
    matrix sizes plumbing graphs produce.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [list(r) for r in M]
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for r in D:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row[dst] += c * row[src]
        Dd, Ds = D[dst], D[src]
        for j in range(cols):
            Dd[j] += c * Ds[j]
        Ud, Us = U[dst], U[src]
        for j in range(rows):
            Ud[j] += c * Us[j]

    def add_col(dst, src, c):
        for r in D:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate a minimal-|value| pivot in the remaining block
        piv = None
        best = None
        for i in range(t, rows):
            Di = D[i]
            for j in range(t, cols):
                v = Di[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])

        while True:
            # clear the pivot column
            for i in range(t + 1, rows):
                while D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        swap_rows(i, t)
            # clear the pivot row; this can dirty the column again
            dirty = False
            for j in range(t + 1, cols):
                while D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if not dirty and all(D[i][t] == 0 for i in range(t + 1, rows)):
                break

        # divisibility fix-up: pivot must divide the rest of the block
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if D[i][j] % D[t][t]:
                    add_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    for i in range(limit):
        if D[i][i] < 0:
            for j in range(cols):
                D[i][j] = -D[i][j]
            for j in range(rows):
                U[i][j] = -U[i][j]
    return U, D, V


def invariant_factors(M) -> tuple[int, ...]:
    """Diagonal of the Smith form, zeros included, ones stripped."""
    _, D, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
    return tuple(d for d in diag if d != 1)


# ---------------------------------------------------------------------------
# Hermite basis of a row lattice


def hermite_row_basis(rows, width: int) -> tuple[tuple[int, ...], ...]:
    """Canonical echelon basis of the lattice spanned by integer rows.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), rows are sorted by pivot column.  Two generating sets
    span the same lattice iff they produce identical bases.
    """
    basis: list[list[int]] = []  # kept in echelon order by pivot column
    pivots: list[int] = []

    for vec in rows:
        v = list(vec)
        if len(v) != width:
            raise ValueError("row width mismatch")
        while True:
            lead = next((j for j, x in enumerate(v) if x), None)
            if lead is None:
                break
            pos = 0
            while pos < len(pivots) and pivots[pos] < lead:
                pos += 1
            if pos == len(pivots) or pivots[pos] != lead:
                if v[lead] < 0:
                    v = [-x for x in v]
                basis.insert(pos, v)
                pivots.insert(pos, lead)
                break
            b = basis[pos]
            x, y, g = xgcd(b[lead], v[lead])
            cb, cv = b[lead] // g, v[lead] // g
            new_b = [x * p + y * q for p, q in zip(b, v)]
            v = [cb * q - cv * p for p, q in zip(b, v)]
            basis[pos] = new_b

    # reduce entries above each pivot
    for i in range(len(basis) - 1, -1, -1):
        p = pivots[i]
        for k in range(i):
            q = basis[k][p] // basis[i][p]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return tuple(tuple(r) for r in basis)


def lattice_index(basis) -> int:
    """Index in the ambient Z^n of a full-rank echelon basis."""
    return math.prod(row[next(j for j, x in enumerate(row) if x)] for row in basis)


# ---------------------------------------------------------------------------
# exact signature of a symmetric integer form


def signature_triple(M) -> tuple[int, int, int]:
    """(negative, zero, positive) eigenvalue counts of a symmetric matrix.

    Symmetric elimination over the rationals with diagonal pivots and,
    when every active diagonal vanishes, hyperbolic 2x2 blocks (each of
    which contributes one eigenvalue of either sign).
    """
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    active = list(range(n))
    neg = zero = pos = 0
    while active:
        piv = next((i for i in active if A[i][i] != 0), None)
        if piv is not None:
            a = A[piv][piv]
            if a > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            for r in active:
                c = A[r][piv] / a
                if c:
                    for s in active:
                        A[r][s] -= c * A[piv][s]
            continue
        pair = None
        for i in active:
            for j in active:
                if j > i and A[i][j] != 0:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            zero += len(active)
            break
        i, j = pair
        pos += 1
        neg += 1
        b = A[i][j]
        active.remove(i)
        active.remove(j)
        for r in active:
            ci, cj = A[r][i], A[r][j]
            if ci or cj:
                for s in active:
                    A[r][s] -= (ci * A[j][s] + cj * A[i][s]) / b
    return neg, zero, pos


def signature(M) -> int:
    neg, _, pos = signature_triple(M)
    return pos - neg


def definiteness(M) -> tuple[str, int]:
    """Classify a symmetric integer form.

    Returns ('negative_definite', 0), ('negative_semidefinite', corank)
    or ('indefinite', 0); positive-definite forms land in 'indefinite'
    since no construction here ever wants them.
    """
    neg, zero, pos = signature_triple(M)
    if pos == 0 and zero == 0:
        return "negative_definite", 0
    if pos == 0:
        return "negative_semidefinite", zero
    return "indefinite", 0


# ---------------------------------------------------------------------------
# GF(2) affine systems


def solve_mod2(M, b) -> tuple[tuple[int, ...], list[tuple[int, ...]]] | None:
    """All solutions of M x = b over GF(2).

    Returns (particular solution, kernel basis), or None when the system
    is inconsistent.  The full solution set is the particular solution
    plus every GF(2)-combination of the kernel vectors.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [[x & 1 for x in row] for row in M]
    y = [x & 1 for x in b]
    piv_row_of_col: dict[int, int] = {}
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        y[r], y[piv] = y[piv], y[r]
        for i in range(m):
            if i != r and A[i][c]:
                A[i] = [p ^ q for p, q in zip(A[i], A[r])]
                y[i] ^= y[r]
        piv_row_of_col[c] = r
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if y[i] and not any(A[i]):
            return None
    x = [0] * n
    for c, i in piv_row_of_col.items():
        x[c] = y[i]
    free = [c for c in range(n) if c not in piv_row_of_col]
    kernel = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for c, i in piv_row_of_col.items():
            v[c] = A[i][f]
        kernel.append(tuple(v))
    return tuple(x), kernel


def mod2_solution_set(M, b) -> list[tuple[int, ...]]:
    """Materialised solution set of M x = b over GF(2), sorted."""
    sol = solve_mod2(M, b)
    if sol is None:
        return []
    x0, kernel = sol
    out = set()
    for mask in range(1 << len(kernel)):
        v = list(x0)
        for t, k in enumerate(kernel):
            if mask >> t & 1:
                v = [p ^ q for p, q in zip(v, k)]
        out.add(tuple(v))
    return sorted(out)


# ---------------------------------------------------------------------------
# finite abelian groups presented by cokernels


@dataclass
class FiniteAbelianGroup:
    """Z^n / im(M) in invariant-factor coordinates.

    ``factors`` is the chain d1 | d2 | ... with every di >= 2; the group
    is the direct sum of Z/di plus ``free_rank`` copies of Z.  ``project``
    carries ambient integer vectors onto the torsion coordinates.
    """

    factors: tuple[int, ...]
    free_rank: int = 0
    ambient_dim: int = 0
    _torsion_rows: tuple[tuple[int, ...], ...] = field(default=(), repr=False)
    _free_rows: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @classmethod
    def from_factors(cls, factors) -> "FiniteAbelianGroup":
        factors = tuple(int(d) for d in factors)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        m = len(factors)
        rows = tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))
        return cls(factors=factors, free_rank=0, ambient_dim=m, _torsion_rows=rows)

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no order")
        return math.prod(self.factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def project(self, vec) -> tuple[int, ...]:
        """Torsion coordinates of an ambient integer vector."""
        return tuple(
            sum(r * x for r, x in zip(row, vec)) % d
            for row, d in zip(self._torsion_rows, self.factors)
        )

    def free_image(self, vec) -> tuple[int, ...]:
        return tuple(sum(r * x for r, x in zip(row, vec)) for row in self._free_rows)

    def reduce(self, coords) -> tuple[int, ...]:
        return tuple(c % d for c, d in zip(coords, self.factors))

    def elements(self):
        """Iterate all torsion elements (finite groups only)."""
        if not self.is_finite:
            raise ValueError("infinite group")
        coords = [0] * len(self.factors)
        while True:
            yield tuple(coords)
            for i in range(len(coords) - 1, -1, -1):
                coords[i] += 1
                if coords[i] < self.factors[i]:
                    break
                coords[i] = 0
            else:
                return
            if all(c == 0 for c in coords):
                return


def cokernel(M) -> FiniteAbelianGroup:
    """Z^n / im(M) for square integer M, with free rank when singular."""
    n = len(M)
    if n == 0:
        return FiniteAbelianGroup(factors=(), free_rank=0, ambient_dim=0)
    if any(len(row) != n for row in M):
        raise ValueError("cokernel expects a square matrix")
    U, D, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(n)]
    torsion = [(d, i) for i, d in enumerate(diag) if d >= 2]
    free = [i for i, d in enumerate(diag) if d == 0]
    return FiniteAbelianGroup(
        factors=tuple(d for d, _ in torsion),
        free_rank=len(free),
        ambient_dim=n,
        _torsion_rows=tuple(tuple(U[i]) for _, i in torsion),
        _free_rows=tuple(tuple(U[i]) for i in free),
    )


@dataclass
class Subgroup:
    """Subgroup of a finite abelian group, canonically presented.

    ``basis`` is the Hermite basis of the lift lattice (generators plus
    relation lattice) inside Z^m, so two subgroups are equal iff their
    bases coincide.
    """

    parent: FiniteAbelianGroup
    generators: tuple[tuple[int, ...], ...]
    order: int
    factors: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def contains(self, coords) -> bool:
        v = list(self.parent.reduce(coords))
        for row in self.basis:
            lead = next(j for j, x in enumerate(row) if x)
            if v[lead] % row[lead]:
                return False
            q = v[lead] // row[lead]
            v = [a - q * b for a, b in zip(v, row)]
        return not any(v)


def subgroup_from_generators(G: FiniteAbelianGroup, gens) -> Subgroup:
    """Subgroup of G spanned by elements given in torsion coordinates.

    The order is |G| divided by the lift lattice's index, and the
    structure comes from the Smith form of the relation lattice written
    in a basis of the lift lattice.
    """
    if not G.is_finite:
        raise ValueError("subgroup arithmetic needs a finite parent")
    m = len(G.factors)
    gens = tuple(G.reduce(g) for g in gens)
    if m == 0:
        return Subgroup(G, (), 1, (), ())
    relations = [
        tuple(G.factors[i] if j == i else 0 for j in range(m)) for i in range(m)
    ]
    basis = hermite_row_basis(list(gens) + relations, m)
    index = lattice_index(basis)
    order = G.order // index

    # relation rows in coordinates of the lift lattice basis
    B = [[Fraction(x) for x in row] for row in basis]
    X = []
    for rel in relations:
        v = [Fraction(x) for x in rel]
        coeffs = [Fraction(0)] * m
        for i, row in enumerate(B):
            lead = next(j for j, x in enumerate(row) if x)
            c = v[lead] / row[lead]
            coeffs[i] = c
            v = [a - c * b for a, b in zip(v, row)]
        assert not any(v), "relation lattice not inside lift lattice"
        X.append([int(c) for c in coeffs])
    factors = tuple(d for d in invariant_factors(X) if d != 0)
    assert math.prod(factors) == order
    return Subgroup(G, gens, order, factors, basis)


def subgroup_sum(H1: Subgroup, H2: Subgroup) -> Subgroup:
    if H1.parent is not H2.parent and H1.parent.factors != H2.parent.factors:
        raise ValueError("subgroups of different groups")
    return subgroup_from_generators(H1.parent, H1.generators + H2.generators)


def direct_sum_test(
    G: FiniteAbelianGroup, H1: Subgroup, H2: Subgroup
) -> tuple[bool, bool, int]:
    """(is_direct_sum, isomorphic, |H1 meet H2|) inside G.

    The sum is direct and fills G iff |H1||H2| = |G| and |H1 + H2| = |G|;
    the intersection order is |H1||H2| / |H1 + H2|.
    """
    total = H1.order * H2.order
    joined = subgroup_sum(H1, H2)
    assert total % joined.order == 0
    intersection = total // joined.order
    is_direct = total == G.order and joined.order == G.order
    return is_direct, H1.factors == H2.factors, intersection


def doubled_factors(factors) -> tuple[int, ...]:
    """Invariant factors of H + H given those of H."""
    out = []
    for d in factors:
        out.append(d)
        out.append(d)
    return tuple(sorted(out))
