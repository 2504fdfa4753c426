"""The three input classes: lens-space sums, Seifert fibred spaces, and
double branched covers of 3/4-strand pretzel links.

Conventions.  L(p, q) with p > q > 0 is -p/q surgery on the unknot;
reversing orientation sends (p, q) to (p, p - q), and L(p, q) = L(p, q')
iff q' = q or q q' = 1 mod p.  A Seifert manifold is written with a
central framing r and singular-fibre invariants (a_i, b_i), a_i >= 2,
so its generalised Euler invariant is e = sum(b_i / a_i) - r.  The
pretzel cover Y(a_1, ..., a_n) is the Seifert space over S^2 with r = 0
and one fibre (|a_i|, sign a_i) per strand; +-1 strands twist away into
the central framing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import FiniteAbelianGroup, cokernel


# ---------------------------------------------------------------------------
# negative continued fractions


def neg_continued_fraction(p: int, q: int) -> tuple[int, ...]:
    """Expand p/q = [a1, ..., an]^- with every ai >= 2.

    Requires p > q > 0 coprime; the expansion with all entries >= 2 is
    unique and gives the weights (negated) of the linear plumbing chain
    bounding L(p, q).
    """
    if not (p > q > 0):
        raise ValueError(f"need p > q > 0, got ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) not coprime")
    seq = []
    while q:
        a = -((-p) // q)  # ceil(p / q)
        seq.append(a)
        p, q = q, a * q - p
    return tuple(seq)


def eval_continued_fraction(seq) -> Fraction:
    """Value of [a1, ..., an]^- = a1 - 1/(a2 - 1/(...)), exactly."""
    value: Fraction | None = None
    for a in reversed(list(seq)):
        if value is None:
            value = Fraction(a)
        else:
            if value == 0:
                raise ZeroDivisionError("division by zero in tail")
            value = a - 1 / value
    if value is None:
        raise ValueError("empty continued fraction")
    return value


# ---------------------------------------------------------------------------
# lens spaces


def normalize_lens(p: int, q: int) -> tuple[int, int]:
    """Push q into (0, p) and check the coprimality contract."""
    if p < 2:
        raise ValueError(f"lens space needs p >= 2, got p = {p}")
    q %= p
    if q == 0 or math.gcd(p, q) != 1:
        raise ValueError(f"L({p},{q}) is not a lens space")
    return p, q


def lens_class(p: int, q: int) -> tuple[int, int, frozenset]:
    """Diffeomorphism class of L(p, q): p together with {q, q^-1 mod p}."""
    p, q = normalize_lens(p, q)
    return p, min(q, pow(q, -1, p)), frozenset({q, pow(q, -1, p)})


def lens_mirror_class(p: int, q: int):
    return lens_class(p, p - q)


@dataclass(frozen=True)
class LensSum:
    """Connected sum # L(p_i, q_i); the empty sum is S^3."""

    summands: tuple[tuple[int, int], ...]

    def __init__(self, summands=()):
        norm = sorted(normalize_lens(p, q) for p, q in summands)
        object.__setattr__(self, "summands", tuple(norm))

    def mirror(self) -> "LensSum":
        return LensSum([(p, p - q) for p, q in self.summands])

    def describe(self) -> str:
        if not self.summands:
            return "S3"
        return " + ".join(f"lens({p},{q})" for p, q in self.summands)


# ---------------------------------------------------------------------------
# Seifert manifolds


@dataclass(frozen=True)
class SeifertManifold:
    """Base surface, central framing, and singular-fibre invariants.

    ``base_orientable`` with ``genus`` g >= 0, or a non-orientable base
    with ``genus`` crosscaps >= 1.  Invariants are stored as given;
    ``normalize`` produces the equivalent description with every
    b_i in (-a_i, 0), the form the definite plumbing construction wants.
    """

    base_orientable: bool
    genus: int
    r: int
    invariants: tuple[tuple[int, int], ...]

    def __init__(self, base_orientable=True, genus=0, r=0, invariants=()):
        invs = []
        for a, b in invariants:
            if a < 2:
                raise ValueError(f"fibre invariant needs a >= 2, got ({a},{b})")
            if math.gcd(a, b) != 1:
                raise ValueError(f"fibre invariant ({a},{b}) not coprime")
            invs.append((a, b))
        if genus < 0 or (not base_orientable and genus == 0):
            raise ValueError("bad base genus")
        object.__setattr__(self, "base_orientable", base_orientable)
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "invariants", tuple(sorted(invs)))

    def mirror(self) -> "SeifertManifold":
        return SeifertManifold(
            self.base_orientable,
            self.genus,
            -self.r,
            [(a, -b) for a, b in self.invariants],
        )

    def describe(self) -> str:
        base = (
            ("S2" if self.genus == 0 else f"O({self.genus})")
            if self.base_orientable
            else f"N({self.genus})"
        )
        pairs = ",".join(f"({a},{b})" for a, b in self.invariants)
        return f"seifert({base}; {self.r}; {pairs})"


def euler_invariant(m: SeifertManifold) -> Fraction:
    """e(Y) = sum b_i/a_i - r, an invariant of the unnormalised data."""
    return sum((Fraction(b, a) for a, b in m.invariants), Fraction(0)) - m.r


def normalize_seifert(m: SeifertManifold) -> SeifertManifold:
    """Equivalent description with a_i > -b_i > 0; e(Y) is unchanged.

    Each b_i is shifted by a multiple of a_i into (-a_i, 0) and the
    central framing absorbs the shifts.
    """
    r = m.r
    invs = []
    for a, b in m.invariants:
        b_new = b % a - a  # lies in (-a, 0)
        k = (b - b_new) // a
        r -= k
        invs.append((a, b_new))
    return SeifertManifold(m.base_orientable, m.genus, r, invs)


# ---------------------------------------------------------------------------
# pretzel covers


@dataclass(frozen=True)
class PretzelCover:
    """Double branched cover of the pretzel link P(a_1, ..., a_n)."""

    strands: tuple[int, ...]

    def __init__(self, strands):
        strands = tuple(sorted(strands, reverse=True))
        if not 3 <= len(strands) <= 4:
            raise ValueError("pretzel covers need 3 or 4 strands")
        if any(a == 0 for a in strands):
            raise ValueError("zero strand")
        object.__setattr__(self, "strands", strands)

    def mirror(self) -> "PretzelCover":
        return PretzelCover([-a for a in self.strands])

    def describe(self) -> str:
        return f"pretzel({','.join(str(a) for a in self.strands)})"


def pretzel_to_seifert(m: PretzelCover) -> SeifertManifold:
    """Seifert form of the cover: fibres (|a|, sign a), r = 0.

    Strands of absolute value one carry no singular fibre; a Rolfsen
    twist absorbs each into the central framing.
    """
    r = 0
    invs = []
    for a in m.strands:
        if abs(a) == 1:
            r -= a  # (1, s) fibre: drop it, r -> r - s keeps e and Y
        else:
            invs.append((abs(a), 1 if a > 0 else -1))
    return SeifertManifold(True, 0, r, invs)


def pretzel_strand_forms(m: SeifertManifold) -> tuple[tuple[int, ...], ...]:
    """All pretzel strand multisets realising this Seifert manifold.

    Needs base S^2 and every fibre rewritable as (a, +-1); leftover
    central framing may be absorbed by +-1 strands as long as the total
    strand count lands in {3, 4}.  Distinct forms are related by Rolfsen
    twists, so they present diffeomorphic covers of different links.
    """
    if not m.base_orientable or m.genus != 0:
        return ()
    norm = normalize_seifert(m)
    # normalised fibre (a, b): b = -1 came from strand -a (no framing
    # shift), b = 1 - a from strand +a (one framing shift); both apply
    # when a = 2
    choices = []
    for a, b in norm.invariants:
        opts = []
        if b == -1:
            opts.append((-a, 0))
        if b == 1 - a:
            opts.append((a, 1))
        if not opts:
            return ()
        choices.append(opts)

    n = len(choices)
    forms = set()
    for mask in range(1 << n):
        strands = []
        shifts = 0
        ok = True
        for i, opts in enumerate(choices):
            want = (mask >> i) & 1
            if want >= len(opts):
                ok = False
                break
            strand, cost = opts[want]
            strands.append(strand)
            shifts += cost
        if not ok:
            continue
        # unnormalised pretzel framing: r0 = norm.r + shifts, and +-1
        # strands must supply it: (#(-1) - #(+1)) == r0
        r0 = norm.r + shifts
        for extra in range(0, 5 - n):
            m_minus, rem = divmod(extra + r0, 2)
            if rem or not 0 <= m_minus <= extra:
                continue
            m_plus = extra - m_minus
            total = strands + [1] * m_plus + [-1] * m_minus
            if 3 <= len(total) <= 4:
                forms.add(tuple(sorted(total, reverse=True)))
    return tuple(sorted(forms))


def seifert_pretzel_strands(m: SeifertManifold) -> tuple[int, ...] | None:
    """One pretzel strand multiset realising the manifold, or None."""
    forms = pretzel_strand_forms(m)
    return forms[-1] if forms else None


def pretzel_euler(m: PretzelCover) -> Fraction:
    return euler_invariant(pretzel_to_seifert(m))


# ---------------------------------------------------------------------------
# first homology

Manifold = LensSum | SeifertManifold | PretzelCover


def _seifert_presentation(m: SeifertManifold) -> list[list[int]]:
    """Relation matrix for H_1 from the surgery description.

    Orientable base: generators x_1..x_n (fibre meridians) and h (the
    central curve); relations a_i x_i + b_i h = 0 and sum x_i + r h = 0.
    Genus contributes free summands only.  Non-orientable base with k
    crosscaps: extra generators v_1..v_k with 2h = 0 and the central
    relation 2(v_1 + ... + v_k) + sum x_i + r h = 0.
    """
    n = len(m.invariants)
    if m.base_orientable:
        rows = []
        for i, (a, b) in enumerate(m.invariants):
            row = [0] * (n + 1)
            row[i] = a
            row[n] = b
            rows.append(row)
        rows.append([1] * n + [m.r])
        return rows
    k = m.genus
    width = k + n + 1
    rows = []
    for i, (a, b) in enumerate(m.invariants):
        row = [0] * width
        row[k + i] = a
        row[width - 1] = b
        rows.append(row)
    row = [0] * width
    row[width - 1] = 2
    rows.append(row)
    central = [2] * k + [1] * n + [m.r]
    rows.append(central)
    return rows


def _square_presentation(rows) -> list[list[int]]:
    """Pad a relation matrix with zero rows so cokernel() accepts it."""
    if not rows:
        return []
    width = len(rows[0])
    out = [list(r) for r in rows]
    if len(out) > width:
        raise ValueError("more relations than generators")
    while len(out) < width:
        out.append([0] * width)
    return out


def first_homology(m: Manifold) -> tuple[int, FiniteAbelianGroup]:
    """(b_1, torsion) of the manifold, from its presentation matrix."""
    if isinstance(m, PretzelCover):
        m = pretzel_to_seifert(m)
    if isinstance(m, LensSum):
        n = len(m.summands)
        M = [[m.summands[i][0] if i == j else 0 for j in range(n)] for i in range(n)]
        return 0, cokernel(M)
    rows = _seifert_presentation(m)
    G = cokernel(_square_presentation(rows))
    b1 = G.free_rank + (2 * m.genus if m.base_orientable else 0)
    torsion = FiniteAbelianGroup(
        factors=G.factors,
        free_rank=0,
        ambient_dim=G.ambient_dim,
        _torsion_rows=G._torsion_rows,
    )
    return b1, torsion


def spin_structure_count(m: Manifold) -> int:
    """|H^1(Y; Z/2)| = 2^(b_1 + number of even torsion invariants)."""
    b1, torsion = first_homology(m)
    even = sum(1 for d in torsion.factors if d % 2 == 0)
    return 2 ** (b1 + even)
