"""Finite posets, meet-semilattices with zero, and bounded lattices.

Elements are indexed densely; subsets are int bitmasks; the order relation
is stored as precomputed up-set/down-set masks so that the law suites can
answer millions of membership queries with single AND operations.

Conventions used throughout the package:

* directed sets include the empty set, whose supremum (when the poset has
  a bottom) is the bottom element; consequently nothing is way below the
  bottom;
* on a finite pointed poset this collapses way-below to
  ``x << y  iff  x <= y and y != bottom`` -- the enumerating oracle in
  :mod:`ambrep.oracle` revalidates the shortcut;
* "Scott closed" degenerates to "lower" on finite posets, so
  :func:`scott_closure` is the downward closure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import bits, has, mask_of
from .errors import (
    CycleDetected,
    NoBottom,
    NoJoin,
    NoMeet,
    NoTop,
    UnknownElement,
)


@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order: element names plus up-set/down-set masks."""

    elements: tuple[str, ...]
    up: tuple[int, ...]    # up[i] = {j | i <= j}
    down: tuple[int, ...]  # down[i] = {j | j <= i}

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise UnknownElement(name) from None

    def leq(self, i: int, j: int) -> bool:
        return has(self.up[i], j)

    def down_closure(self, a: int) -> int:
        m = 0
        for i in bits(a):
            m |= self.down[i]
        return m

    def up_closure(self, a: int) -> int:
        m = 0
        for i in bits(a):
            m |= self.up[i]
        return m

    def is_lower(self, a: int) -> bool:
        return self.down_closure(a) == a

    def is_upper(self, a: int) -> bool:
        return self.up_closure(a) == a

    def is_directed(self, a: int) -> bool:
        """Every pair in ``a`` has an upper bound inside ``a`` (vacuous for the empty set)."""
        members = list(bits(a))
        for x in members:
            for y in members:
                if y < x:
                    continue
                if not self.up[x] & self.up[y] & a:
                    return False
        return True

    def is_filtered(self, a: int) -> bool:
        members = list(bits(a))
        for x in members:
            for y in members:
                if y < x:
                    continue
                if not self.down[x] & self.down[y] & a:
                    return False
        return True

    def bottom(self) -> int | None:
        for i in range(self.n):
            if self.up[i] == self.full:
                return i
        return None

    def top(self) -> int | None:
        for i in range(self.n):
            if self.down[i] == self.full:
                return i
        return None

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) where j covers i (transitive reduction of the order)."""
        out = []
        for i in range(self.n):
            for j in bits(self.up[i] & ~(1 << i)):
                between = self.up[i] & self.down[j] & ~(1 << i) & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    def names(self, a: int) -> list[str]:
        return [self.elements[i] for i in bits(a)]


@dataclass(frozen=True)
class MeetSemilattice:
    """A finite meet-semilattice with a least element (zero)."""

    poset: FinitePoset
    meet: tuple[tuple[int, ...], ...]
    zero: int

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def full(self) -> int:
        return self.poset.full

    def index(self, name: str) -> int:
        return self.poset.index(name)

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq(i, j)

    def meet_of(self, i: int, j: int) -> int:
        return self.meet[i][j]

    def meet_all(self, a: int) -> int:
        """Meet of a non-empty subset mask."""
        it = bits(a)
        m = next(it)
        for i in it:
            m = self.meet[m][i]
        return m

    def is_filter(self, a: int) -> bool:
        """Upper and closed under meet; the empty set counts as a filter."""
        if not self.poset.is_upper(a):
            return False
        members = list(bits(a))
        for x in members:
            for y in members:
                if y < x:
                    continue
                if not has(a, self.meet[x][y]):
                    return False
        return True


@dataclass(frozen=True)
class BoundedLattice:
    """A finite lattice with both bounds, built on top of a meet-semilattice."""

    semilattice: MeetSemilattice
    join: tuple[tuple[int, ...], ...]
    one: int

    @property
    def poset(self) -> FinitePoset:
        return self.semilattice.poset

    @property
    def elements(self) -> tuple[str, ...]:
        return self.semilattice.elements

    @property
    def n(self) -> int:
        return self.semilattice.n

    @property
    def zero(self) -> int:
        return self.semilattice.zero

    def index(self, name: str) -> int:
        return self.semilattice.index(name)

    def leq(self, i: int, j: int) -> bool:
        return self.semilattice.leq(i, j)

    def meet_of(self, i: int, j: int) -> int:
        return self.semilattice.meet[i][j]

    def join_of(self, i: int, j: int) -> int:
        return self.join[i][j]

    def join_all(self, a: int) -> int:
        """Join of a subset mask; the empty join is the bottom."""
        m = self.semilattice.zero
        for i in bits(a):
            m = self.join[m][i]
        return m


def same_carrier(a: MeetSemilattice, b: MeetSemilattice) -> bool:
    """Structural equality of the underlying semilattices, ignoring subclass extras."""
    return a.poset == b.poset and a.meet == b.meet and a.zero == b.zero


def validate_poset(names: list[str], pairs: list[tuple[str, str]]) -> FinitePoset:
    """Build a poset from element names and cover (or full relation) pairs.

    The given pairs are closed reflexively and transitively; cycles are
    rejected with the offending pair.
    """
    if not names:
        raise ValueError("poset needs at least one element")
    if len(set(names)) != len(names):
        dup = sorted({x for x in names if names.count(x) > 1})[0]
        raise ValueError(f"duplicate element name: {dup!r}")
    idx = {x: i for i, x in enumerate(names)}
    n = len(names)
    up = [1 << i for i in range(n)]
    for a, b in pairs:
        if a not in idx:
            raise UnknownElement(a)
        if b not in idx:
            raise UnknownElement(b)
        up[idx[a]] |= 1 << idx[b]
    for k in range(n):
        for i in range(n):
            if has(up[i], k):
                up[i] |= up[k]
    for i in range(n):
        for j in bits(up[i] & ~(1 << i)):
            if has(up[j], i):
                raise CycleDetected(names[i], names[j])
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    return FinitePoset(tuple(names), tuple(up), tuple(down))


def meet_structure(p: FinitePoset) -> MeetSemilattice:
    """Upgrade a poset to a meet-semilattice; every pair needs a glb and a bottom must exist."""
    z = p.bottom()
    if z is None:
        raise NoBottom()
    table = []
    for i in range(p.n):
        row = []
        for j in range(p.n):
            lower = p.down[i] & p.down[j]
            g = None
            for c in bits(lower):
                if lower & ~p.down[c] == 0:
                    g = c
                    break
            if g is None:
                raise NoMeet(p.elements[i], p.elements[j])
            row.append(g)
        table.append(tuple(row))
    return MeetSemilattice(p, tuple(table), z)


def join_structure(s: MeetSemilattice) -> BoundedLattice:
    """Upgrade a meet-semilattice to a bounded lattice; every pair needs a lub and a top."""
    p = s.poset
    t = p.top()
    if t is None:
        raise NoTop()
    table = []
    for i in range(p.n):
        row = []
        for j in range(p.n):
            upper = p.up[i] & p.up[j]
            g = None
            for c in bits(upper):
                if upper & ~p.up[c] == 0:
                    g = c
                    break
            if g is None:
                raise NoJoin(p.elements[i], p.elements[j])
            row.append(g)
        table.append(tuple(row))
    return BoundedLattice(s, tuple(table), t)


def way_below(p: FinitePoset) -> tuple[int, ...]:
    """Way-below relation of a pointed finite poset, as masks wb[x] = {y | x << y}.

    Since the empty directed set is admitted, nothing is way below the
    bottom; every other pair collapses to plain order.
    """
    z = p.bottom()
    if z is None:
        raise NoBottom("way-below needs the empty directed set to have a sup")
    return tuple(u & ~(1 << z) for u in p.up)


def way_below_strict(p: FinitePoset) -> tuple[int, ...]:
    """Masks wbb[y] = {x | x << y} (the transpose of :func:`way_below`)."""
    wb = way_below(p)
    n = p.n
    out = [0] * n
    for x in range(n):
        for y in bits(wb[x]):
            out[y] |= 1 << x
    return tuple(out)


def scott_closure(p: FinitePoset, a: int) -> int:
    """Least Scott-closed superset; on a finite poset this is the downward closure."""
    return p.down_closure(a)


def check_distributive(l: BoundedLattice) -> bool:
    """Finite criterion for complete distributivity: plain distributivity of meets over joins."""
    return find_distributivity_violation(l) is None


def find_distributivity_violation(l: BoundedLattice) -> tuple[str, str, str] | None:
    m, j = l.semilattice.meet, l.join
    for x in range(l.n):
        for y in range(l.n):
            for z in range(l.n):
                if m[x][j[y][z]] != j[m[x][y]][m[x][z]]:
                    e = l.elements
                    return (e[x], e[y], e[z])
    return None


def opposite(p: FinitePoset) -> FinitePoset:
    return FinitePoset(p.elements, p.down, p.up)


def product(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Componentwise order on pairs; element names are joined with an underscore."""
    names = []
    seen = set()
    for a in p.elements:
        for b in q.elements:
            name = f"{a}_{b}"
            k = 0
            while name in seen:
                k += 1
                name = f"{a}_{b}_{k}"
            seen.add(name)
            names.append(name)
    n = p.n * q.n
    up = [0] * n
    for i1 in range(p.n):
        for j1 in range(q.n):
            m = 0
            for i2 in bits(p.up[i1]):
                for j2 in bits(q.up[j1]):
                    m |= 1 << (i2 * q.n + j2)
            up[i1 * q.n + j1] = m
    down = [0] * n
    for i in range(n):
        for j in bits(up[i]):
            down[j] |= 1 << i
    return FinitePoset(tuple(names), tuple(up), tuple(down))


def poset_isomorphic(p: FinitePoset, q: FinitePoset) -> bool:
    """Backtracking isomorphism test, pruned by (|down|, |up|) profiles."""
    if p.n != q.n:
        return False

    def profile(r: FinitePoset, i: int) -> tuple[int, int]:
        return (r.down[i].bit_count(), r.up[i].bit_count())

    if sorted(profile(p, i) for i in range(p.n)) != sorted(profile(q, i) for i in range(q.n)):
        return False
    candidates = [
        [j for j in range(q.n) if profile(q, j) == profile(p, i)] for i in range(p.n)
    ]
    order = sorted(range(p.n), key=lambda i: len(candidates[i]))
    assign: dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == p.n:
            return True
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for i2, j2 in assign.items():
                if p.leq(i, i2) != q.leq(j, j2) or p.leq(i2, i) != q.leq(j2, j):
                    ok = False
                    break
            if ok:
                assign[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del assign[i]
                used.remove(j)
        return False

    return extend(0)


def linear_extension(p: FinitePoset) -> list[int]:
    """Indices sorted compatibly with the order (smaller down-sets first)."""
    return sorted(range(p.n), key=lambda i: (p.down[i].bit_count(), i))


__all__ = [
    "FinitePoset",
    "MeetSemilattice",
    "BoundedLattice",
    "same_carrier",
    "validate_poset",
    "meet_structure",
    "join_structure",
    "way_below",
    "way_below_strict",
    "scott_closure",
    "check_distributive",
    "find_distributivity_violation",
    "opposite",
    "product",
    "poset_isomorphic",
    "linear_extension",
    "mask_of",
]
