"""Compatibilities between semilattices and the transversal calculus.

A compatibility is a 0/1 pairing that marks which statements of the two
sides cannot hold together; a separating one determines (and is determined
by) an isomorphism of the left side onto the Lawson dual of the right.
The default everywhere is the canonical evaluation pairing of a
semilattice against its own dual.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import bits, has
from .dual import (
    DualSemilattice,
    SemilatticeMorphism,
    check_morphism,
    is_isomorphism,
    lawson_dual,
)
from .errors import AxiomViolated, NotIso, NotSeparating
from .order import MeetSemilattice


@dataclass(frozen=True)
class Compatibility:
    """A validated pairing table; rows[i] is the mask of right elements hit by left element i."""

    left: MeetSemilattice
    right: MeetSemilattice
    rows: tuple[int, ...]

    def value(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.right.n
        for i, row in enumerate(self.rows):
            for j in bits(row):
                cols[j] |= 1 << i
        return tuple(cols)

    def left_transversal(self, a: int) -> int:
        """All right elements compatible (value 0) with everything in the left subset ``a``."""
        m = 0
        for i in bits(a):
            m |= self.rows[i]
        return self.right.full & ~m

    def right_transversal(self, b: int) -> int:
        """All left elements compatible with everything in the right subset ``b``."""
        out = 0
        for i in range(self.left.n):
            if self.rows[i] & b == 0:
                out |= 1 << i
        return out


def check_compatibility(rows, left: MeetSemilattice, right: MeetSemilattice) -> Compatibility:
    """Validate the two compatibility axioms, reporting the first violation with a witness."""
    rows = tuple(rows)
    if len(rows) != left.n:
        raise ValueError(f"expected {left.n} rows, got {len(rows)}")
    for row in rows:
        if row < 0 or row > right.full:
            raise ValueError("row mask out of range")
    le, re = left.elements, right.elements
    # axiom (1): zero row and zero column vanish
    if rows[left.zero] != 0:
        j = next(bits(rows[left.zero]))
        raise AxiomViolated("(1)", ("zero-row", le[left.zero], re[j]))
    for i in range(left.n):
        if has(rows[i], right.zero):
            raise AxiomViolated("(1)", ("zero-column", le[i], re[right.zero]))
    # axiom (1): meet-distributive in the first argument
    for i in range(left.n):
        for j in range(i, left.n):
            if rows[left.meet[i][j]] != rows[i] & rows[j]:
                diff = rows[left.meet[i][j]] ^ (rows[i] & rows[j])
                y = next(bits(diff))
                raise AxiomViolated("(1)", ("meet-left", le[i], le[j], re[y]))
    # axiom (1): meet-distributive in the second argument
    for i in range(left.n):
        row = rows[i]
        for y1 in range(right.n):
            for y2 in range(y1, right.n):
                if has(row, right.meet[y1][y2]) != (has(row, y1) and has(row, y2)):
                    raise AxiomViolated("(1)", ("meet-right", le[i], re[y1], re[y2]))
    # axiom (2): Scott continuity (monotone in each argument on finite carriers)
    for i in range(left.n):
        for j in range(left.n):
            if left.leq(i, j) and rows[i] & ~rows[j]:
                raise AxiomViolated("(2)", ("monotone-left", le[i], le[j]))
        if not right.poset.is_upper(rows[i]):
            raise AxiomViolated("(2)", ("monotone-right", le[i]))
    return Compatibility(left, right, rows)


def check_separating(p: Compatibility) -> tuple[bool, tuple | None]:
    """Rows pairwise distinct and columns pairwise distinct, with a colliding pair on failure."""
    seen: dict[int, int] = {}
    for i, row in enumerate(p.rows):
        if row in seen:
            return False, ("rows", p.left.elements[seen[row]], p.left.elements[i])
        seen[row] = i
    seen = {}
    for j, col in enumerate(p.columns()):
        if col in seen:
            return False, ("columns", p.right.elements[seen[col]], p.right.elements[j])
        seen[col] = j
    return True, None


def canonical_pairing(s: MeetSemilattice) -> Compatibility:
    """The membership pairing of a semilattice against its Lawson dual: P(x, F) = [x in F]."""
    d = lawson_dual(s)
    rows = []
    for x in range(s.n):
        m = 0
        for k in range(d.n):
            if has(d.filters[k], x):
                m |= 1 << k
        rows.append(m)
    return check_compatibility(rows, s, d)


def reverse(p: Compatibility) -> Compatibility:
    return check_compatibility(p.columns(), p.right, p.left)


def compat_to_iso(p: Compatibility) -> SemilatticeMorphism:
    """The isomorphism x |-> xP of the left side onto the dual of the right side."""
    sep, wit = check_separating(p)
    if not sep:
        raise NotSeparating(wit)
    d = lawson_dual(p.right)
    table = []
    for x in range(p.left.n):
        try:
            table.append(d.index_of_filter(p.rows[x]))
        except ValueError:
            raise NotIso(f"row of {p.left.elements[x]} is not a proper Scott-open filter") from None
    f = check_morphism(p.left, d, tuple(table))
    if not is_isomorphism(f):
        raise NotIso("row map is not bijective/order-reflecting")
    return f


def iso_to_compat(i: SemilatticeMorphism) -> Compatibility:
    """Recover the pairing P(x, y) = [y in i(x)] from an isomorphism onto a dual."""
    if not isinstance(i.target, DualSemilattice):
        raise NotIso("target is not a Lawson dual")
    if not is_isomorphism(i):
        raise NotIso("map is not bijective/order-reflecting")
    rows = tuple(i.target.filters[i.table[x]] for x in range(i.source.n))
    p = check_compatibility(rows, i.source, i.target.base)
    sep, wit = check_separating(p)
    if not sep:
        raise NotSeparating(wit)
    return p


def transversal(p: Compatibility, a: int, side: str = "left") -> int:
    """Transversal of a subset of one side; the result lives on the other side."""
    if side == "left":
        return p.left_transversal(a)
    if side == "right":
        return p.right_transversal(a)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


__all__ = [
    "Compatibility",
    "check_compatibility",
    "check_separating",
    "canonical_pairing",
    "reverse",
    "compat_to_iso",
    "iso_to_compat",
    "transversal",
]
