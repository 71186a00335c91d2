"""Lawson dualization of finite meet-semilattices with zero.

The dual carrier consists of the proper Scott-open filters: the empty set
plus the principal up-sets of the non-zero elements, ordered by inclusion.
Every dual element remembers its generating element, which is what makes
pseudo-inversion of representations a table transposition downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import bits, has
from .errors import NotAMorphism, NotIso
from .order import FinitePoset, MeetSemilattice


@dataclass(frozen=True)
class SemilatticeMorphism:
    """A monotone, meet-preserving, zero-preserving map between semilattices."""

    source: MeetSemilattice
    target: MeetSemilattice
    table: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.table[i]


def check_morphism(source: MeetSemilattice, target: MeetSemilattice,
                   table: tuple[int, ...]) -> SemilatticeMorphism:
    if len(table) != source.n:
        raise NotAMorphism("table size mismatch", (len(table), source.n))
    for v in table:
        if not 0 <= v < target.n:
            raise NotAMorphism("target index out of range", v)
    if table[source.zero] != target.zero:
        raise NotAMorphism("zero not preserved", source.elements[source.zero])
    for i in range(source.n):
        for j in range(source.n):
            if source.leq(i, j) and not target.leq(table[i], table[j]):
                raise NotAMorphism("not monotone", (source.elements[i], source.elements[j]))
            if table[source.meet[i][j]] != target.meet[table[i]][table[j]]:
                raise NotAMorphism("meet not preserved", (source.elements[i], source.elements[j]))
    return SemilatticeMorphism(source, target, tuple(table))


def identity_morphism(s: MeetSemilattice) -> SemilatticeMorphism:
    return SemilatticeMorphism(s, s, tuple(range(s.n)))


def compose_morphisms(f: SemilatticeMorphism, g: SemilatticeMorphism) -> SemilatticeMorphism:
    """g after f."""
    if f.target.poset != g.source.poset:
        raise NotAMorphism("composition type mismatch", None)
    return SemilatticeMorphism(f.source, g.target, tuple(g.table[v] for v in f.table))


def is_isomorphism(f: SemilatticeMorphism) -> bool:
    """Bijective and order-reflecting (morphism axioms are assumed already checked)."""
    if sorted(f.table) != list(range(f.target.n)):
        return False
    for i in range(f.source.n):
        for j in range(f.source.n):
            if f.source.leq(i, j) != f.target.leq(f.table[i], f.table[j]):
                return False
    return True


@dataclass(frozen=True)
class DualSemilattice(MeetSemilattice):
    """The semilattice of proper Scott-open filters of ``base``, ordered by inclusion.

    ``filters[k]`` is the filter as a bitmask over the base carrier;
    ``generators[k]`` is the base element generating a non-empty filter
    (``None`` for the empty filter, which is the bottom).
    """

    base: MeetSemilattice
    filters: tuple[int, ...]
    generators: tuple[int | None, ...]

    def index_of_filter(self, mask: int) -> int:
        return self.filters.index(mask)


def lawson_dual(s: MeetSemilattice) -> DualSemilattice:
    """Dualize: the empty filter plus one principal filter per non-zero element."""
    names = ["bot"]
    filters = [0]
    gens: list[int | None] = [None]
    for g in range(s.n):
        if g == s.zero:
            continue
        names.append("up_" + s.elements[g])
        filters.append(s.poset.up[g])
        gens.append(g)
    n = len(filters)
    up = [0] * n
    for k in range(n):
        for l in range(n):
            if filters[k] & ~filters[l] == 0:
                up[k] |= 1 << l
    down = [0] * n
    for k in range(n):
        for l in bits(up[k]):
            down[l] |= 1 << k
    meet = []
    for k in range(n):
        row = []
        for l in range(n):
            inter = filters[k] & filters[l]
            row.append(filters.index(inter))
        meet.append(tuple(row))
    poset = FinitePoset(tuple(names), tuple(up), tuple(down))
    return DualSemilattice(poset, tuple(meet), 0, s, tuple(filters), tuple(gens))


def filter_of(s: MeetSemilattice, i: int) -> int:
    """The filter (as a base bitmask) associated to element ``i``: empty for zero, else its up-set."""
    return 0 if i == s.zero else s.poset.up[i]


def element_of(d: DualSemilattice, k: int) -> int:
    """Inverse of :func:`filter_of` under finite principality; the empty filter maps to zero."""
    g = d.generators[k]
    return d.base.zero if g is None else g


def dual_map(f: SemilatticeMorphism) -> SemilatticeMorphism:
    """The contravariant action on morphisms: a filter is sent to its preimage."""
    d_target = lawson_dual(f.target)
    d_source = lawson_dual(f.source)
    table = []
    for k in range(d_target.n):
        pre = 0
        fl = d_target.filters[k]
        for x in range(f.source.n):
            if has(fl, f.table[x]):
                pre |= 1 << x
        try:
            table.append(d_source.index_of_filter(pre))
        except ValueError:
            # preimages of proper Scott-open filters are proper Scott-open filters
            raise AssertionError(f"preimage is not a proper filter: {pre:b}") from None
    return check_morphism(d_target, d_source, tuple(table))


def canonical_iso(s: MeetSemilattice) -> SemilatticeMorphism:
    """The isomorphism of a semilattice onto its double dual, s |-> {F | s in F}."""
    d = lawson_dual(s)
    dd = lawson_dual(d)
    table = []
    for x in range(s.n):
        m = 0
        for k in range(d.n):
            if has(d.filters[k], x):
                m |= 1 << k
        table.append(dd.index_of_filter(m))
    f = check_morphism(s, dd, tuple(table))
    if not is_isomorphism(f):
        raise NotIso("double-dual comparison map is not bijective/order-reflecting")
    return f


__all__ = [
    "SemilatticeMorphism",
    "DualSemilattice",
    "check_morphism",
    "identity_morphism",
    "compose_morphisms",
    "is_isomorphism",
    "lawson_dual",
    "filter_of",
    "element_of",
    "dual_map",
    "canonical_iso",
]
