"""Crisp ambiguous representations and their pseudo-inverse calculus.

A representation of S1 in S2 is a relation whose rows (one per hidden
element of S1) are non-empty lower subsets of S2 and whose columns are
upper subsets of S1.  Pseudo-inversion sends it to a representation
between the Lawson duals in the opposite direction.  Two independent
computations of the pseudo-inverse run on every call (the generator
transposition and the transversal formula) and must agree; the third,
a direct evaluation of the defining quantifiers, lives in
:mod:`ambrep.oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import bits, has
from .compat import Compatibility, check_separating
from .dual import (
    DualSemilattice,
    SemilatticeMorphism,
    canonical_iso,
    check_morphism,
    lawson_dual,
)
from .errors import MiddleMismatch, NotFunctional, NotAMorphism, NotSeparating, RepViolated
from .order import MeetSemilattice, same_carrier, scott_closure, way_below_strict


@dataclass(frozen=True)
class CrispRep:
    """A validated representation; rows[x] is the mask of visible values compatible with x."""

    source: MeetSemilattice
    target: MeetSemilattice
    rows: tuple[int, ...]

    def holds(self, x: int, y: int) -> bool:
        return has(self.rows[x], y)

    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.target.n
        for x, row in enumerate(self.rows):
            for y in bits(row):
                cols[y] |= 1 << x
        return tuple(cols)

    def pairs(self) -> list[tuple[str, str]]:
        return [
            (self.source.elements[x], self.target.elements[y])
            for x in range(self.source.n)
            for y in bits(self.rows[x])
        ]


def check_rep(rows, source: MeetSemilattice, target: MeetSemilattice) -> CrispRep:
    """Validate rows non-empty and lower, columns upper; first violated clause wins."""
    rows = tuple(rows)
    if len(rows) != source.n:
        raise ValueError(f"expected {source.n} rows, got {len(rows)}")
    for x, row in enumerate(rows):
        if row < 0 or row > target.full:
            raise ValueError("row mask out of range")
        if row == 0:
            raise RepViolated("row-nonempty", source.elements[x])
        if not target.poset.is_lower(row):
            missing = next(bits(target.poset.down_closure(row) & ~row))
            raise RepViolated("row-lower", (source.elements[x], target.elements[missing]))
    for x1 in range(source.n):
        for x2 in range(source.n):
            if source.leq(x1, x2) and rows[x1] & ~rows[x2]:
                y = next(bits(rows[x1] & ~rows[x2]))
                raise RepViolated(
                    "column-upper",
                    (source.elements[x1], source.elements[x2], target.elements[y]),
                )
    return CrispRep(source, target, rows)


def identity_rep(s: MeetSemilattice) -> CrispRep:
    """The neutral representation: x related to every y <= x."""
    return CrispRep(s, s, tuple(s.poset.down))


def full_rep(s1: MeetSemilattice, s2: MeetSemilattice) -> CrispRep:
    return CrispRep(s1, s2, (s2.full,) * s1.n)


def embed_morphism(f: SemilatticeMorphism) -> CrispRep:
    """The representation {(x, y) | y <= f(x)} induced by a morphism."""
    return CrispRep(f.source, f.target, tuple(f.target.poset.down[f.table[x]] for x in range(f.source.n)))


def rep_to_morphism(r: CrispRep) -> SemilatticeMorphism:
    """Recover f(x) = max(xR) when every row is principal and the map is a morphism."""
    table = []
    for x, row in enumerate(r.rows):
        g = None
        for c in bits(row):
            if row & ~r.target.poset.down[c] == 0:
                g = c
                break
        if g is None:
            raise NotFunctional("row has no greatest element", r.source.elements[x])
        table.append(g)
    try:
        return check_morphism(r.source, r.target, tuple(table))
    except NotAMorphism as e:
        raise NotFunctional("row maxima do not form a morphism", e.witness) from None


def compose(r: CrispRep, q: CrispRep) -> CrispRep:
    """Composition via Scott closure of the relational image.

    On finite carriers the relational image is already closed; both forms
    are computed and compared.
    """
    if not same_carrier(r.target, q.source):
        raise MiddleMismatch(f"{r.target.elements} vs {q.source.elements}")
    rows = []
    for x in range(r.source.n):
        img = 0
        for y in bits(r.rows[x]):
            img |= q.rows[y]
        closed = scott_closure(q.target.poset, img)
        if closed != img:
            raise AssertionError("relational image of a representation must be lower")
        rows.append(img)
    return check_rep(rows, r.source, q.target)


def _validate_pairing(p: Compatibility | None, s: MeetSemilattice, name: str) -> None:
    if p is None:
        return
    if not same_carrier(p.left, s):
        raise ValueError(f"{name} is not a compatibility over the expected semilattice")
    sep, wit = check_separating(p)
    if not sep:
        raise NotSeparating(wit)


def _pinv_transpose(r: CrispRep, d1: DualSemilattice, d2: DualSemilattice) -> list[int]:
    rows = []
    for k2 in range(d2.n):
        t = d2.generators[k2]
        row = 1  # the bottom filter is always related
        if t is not None:
            for k1 in range(1, d1.n):
                s = d1.generators[k1]
                if has(r.rows[s], t):
                    row |= 1 << k1
        rows.append(row)
    return rows


def _pinv_transversal(r: CrispRep, d1: DualSemilattice, d2: DualSemilattice) -> list[int]:
    # perp[x] = set of dual-2 filters disjoint from the row of x
    perp = [0] * r.source.n
    for x in range(r.source.n):
        for k2 in range(d2.n):
            if d2.filters[k2] & r.rows[x] == 0:
                perp[x] |= 1 << k2
    rows = []
    for k2 in range(d2.n):
        blocked = 0
        for x in range(r.source.n):
            if has(perp[x], k2):
                blocked |= 1 << x
        row = 0
        for k1 in range(d1.n):
            if d1.filters[k1] & blocked == 0:
                row |= 1 << k1
        rows.append(row)
    return rows


def pseudo_inverse(r: CrispRep, p1: Compatibility | None = None,
                   p2: Compatibility | None = None) -> CrispRep:
    """Pseudo-inverse over the canonical duals, computed two independent ways.

    Arbitrary separating compatibilities are accepted (their polar
    isomorphisms identify the abstract duals with the canonical ones) but
    the output is always expressed over the canonical duals.
    """
    _validate_pairing(p1, r.source, "p1")
    _validate_pairing(p2, r.target, "p2")
    d1 = lawson_dual(r.source)
    d2 = lawson_dual(r.target)
    rows = _pinv_transpose(r, d1, d2)
    alt = _pinv_transversal(r, d1, d2)
    if rows != alt:
        raise AssertionError("pseudo-inverse paths disagree (transpose vs transversal)")
    return check_rep(rows, d2, d1)


def is_pseudo_invertible(r: CrispRep) -> tuple[bool, dict | None]:
    """Literal check of the approximation condition, cross-validated two more ways.

    The three equivalent forms: the way-below condition itself, double
    pseudo-inversion returning the representation, and the finite
    criterion that the zero row carries no information.
    """
    wbb1 = way_below_strict(r.source.poset)
    wbb2 = way_below_strict(r.target.poset)
    cols = r.columns()
    verdict, witness = True, None
    for x in range(r.source.n):
        for y in bits(r.rows[x]):
            for yp in bits(wbb2[y]):
                if wbb1[x] & cols[yp] == 0:
                    verdict, witness = False, {
                        "x": r.source.elements[x],
                        "y": r.target.elements[y],
                        "y_prime": r.target.elements[yp],
                    }
                    break
            if not verdict:
                break
        if not verdict:
            break
    criterion = r.rows[r.source.zero] == 1 << r.target.zero
    involutive = double_pseudo_inverse_defect(r).rows == r.rows
    if not (verdict == criterion == involutive):
        raise AssertionError("pseudo-invertibility criteria disagree")
    return verdict, witness


def double_pseudo_inverse_defect(r: CrispRep) -> CrispRep:
    """Apply the pseudo-inverse twice and pull back along the double-dual isomorphisms.

    The result is always contained in the input; it equals the input with
    the zero row shrunk to the zero of the target.
    """
    sharp2 = pseudo_inverse(pseudo_inverse(r))
    u1 = canonical_iso(r.source)
    u2 = canonical_iso(r.target)
    rows = []
    for x in range(r.source.n):
        row = 0
        back = sharp2.rows[u1.table[x]]
        for y in range(r.target.n):
            if has(back, u2.table[y]):
                row |= 1 << y
        if row & ~r.rows[x]:
            raise AssertionError("double pseudo-inverse escaped the original representation")
        rows.append(row)
    return check_rep(rows, r.source, r.target)


def is_sem0_arrow(r: CrispRep) -> tuple[bool, dict | None]:
    """Exhaustive check that the representation is consistent with reading meets as 'or'.

    Fails with the first tuple (x1, y1, x2, y2, y) where y refines both
    visible values but no common refinement of the hidden values supports it.
    """
    cols = r.columns()
    down1 = r.source.poset.down
    down2 = r.target.poset.down
    for x1 in range(r.source.n):
        for y1 in bits(r.rows[x1]):
            for x2 in range(r.source.n):
                for y2 in bits(r.rows[x2]):
                    for y in bits(down2[y1] & down2[y2]):
                        if down1[x1] & down1[x2] & cols[y] == 0:
                            e1, e2 = r.source.elements, r.target.elements
                            return False, {
                                "x1": e1[x1], "y1": e2[y1],
                                "x2": e1[x2], "y2": e2[y2],
                                "y": e2[y],
                            }
    return True, None


__all__ = [
    "CrispRep",
    "check_rep",
    "identity_rep",
    "full_rep",
    "embed_morphism",
    "rep_to_morphism",
    "compose",
    "pseudo_inverse",
    "is_pseudo_invertible",
    "double_pseudo_inverse_defect",
    "is_sem0_arrow",
]
