"""Brute-force reference implementations that guard every production shortcut.

Each oracle is written straight from the defining quantifiers and shares
no code with the production paths: way-below enumerates every directed
subset, dualization enumerates every subset and keeps the proper
Scott-open filters, the pseudo-inverse evaluates its two-quantifier
definition, and composition searches explicit witness bundles.  They are
exponential on purpose and fail loudly above their size caps.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations_with_replacement, product as iproduct

from .bits import bits, has
from .compat import Compatibility, canonical_pairing
from .crisp import CrispRep
from .dual import DualSemilattice
from .errors import SizeCap
from .fuzzy import FuzzyRep, Quantale
from .order import BoundedLattice, FinitePoset, MeetSemilattice

WB_CAP = 12
DUAL_CAP = 12
SEP_CAP = 16
COMPOSE_CAP = 128
CD_CAP = 4


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one production-vs-oracle comparison."""

    operation: str
    instance_digest: str
    agree: bool
    witness: tuple | None = None

    def __post_init__(self):
        if self.agree and self.witness is not None:
            raise ValueError("agreeing reports carry no witness")
        if not self.agree and self.witness is None:
            raise ValueError("disagreeing reports need a witness")


def instance_digest(*parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(repr(part).encode())
        h.update(b"\x00")
    return h.hexdigest()[:16]


def compare(operation: str, produced, expected, key) -> OracleReport:
    digest = instance_digest(key)
    if produced == expected:
        return OracleReport(operation, digest, True)
    return OracleReport(operation, digest, False, (str(produced), str(expected)))


def _subsets(n: int):
    return range(1 << n)


def _is_directed(p: FinitePoset, d: int) -> bool:
    members = [i for i in range(p.n) if has(d, i)]
    for x in members:
        for y in members:
            if not any(has(d, z) and p.leq(x, z) and p.leq(y, z) for z in range(p.n)):
                return False
    return True


def _sup(p: FinitePoset, d: int) -> int | None:
    uppers = [u for u in range(p.n) if all(p.leq(i, u) for i in range(p.n) if has(d, i))]
    for u in uppers:
        if all(p.leq(u, v) for v in uppers):
            return u
    return None


def wb_oracle(p: FinitePoset) -> tuple[int, ...]:
    """Way-below by quantifying over every directed subset whose sup exists."""
    if p.n > WB_CAP:
        raise SizeCap("wb_oracle", p.n, WB_CAP)
    witnesses = []
    for d in _subsets(p.n):
        if not _is_directed(p, d):
            continue
        s = _sup(p, d)
        if s is not None:
            witnesses.append((d, s))
    wb = [0] * p.n
    for x in range(p.n):
        for y in range(p.n):
            ok = True
            for d, s in witnesses:
                if p.leq(y, s) and not any(has(d, e) and p.leq(x, e) for e in range(p.n)):
                    ok = False
                    break
            if ok:
                wb[x] |= 1 << y
    return tuple(wb)


def dual_oracle(s: MeetSemilattice) -> DualSemilattice:
    """Enumerate every proper Scott-open filter (upper, meet-closed, not the whole carrier)."""
    if s.n > DUAL_CAP:
        raise SizeCap("dual_oracle", s.n, DUAL_CAP)
    p = s.poset
    found = []
    for f in _subsets(s.n):
        if f == p.full:
            continue
        members = [i for i in range(s.n) if has(f, i)]
        if any(not has(f, j) for i in members for j in range(s.n) if p.leq(i, j)):
            continue
        if any(not has(f, s.meet[i][j]) for i in members for j in members):
            continue
        found.append(f)
    found.sort(key=lambda f: (bin(f).count("1"), f))
    n = len(found)
    up = [0] * n
    for k in range(n):
        for l in range(n):
            if found[k] & ~found[l] == 0:
                up[k] |= 1 << l
    down = [0] * n
    for k in range(n):
        for l in range(n):
            if has(up[k], l):
                down[l] |= 1 << k
    meet = tuple(
        tuple(found.index(found[k] & found[l]) for l in range(n)) for k in range(n)
    )
    gens: list[int | None] = []
    names = []
    for f in found:
        if f == 0:
            gens.append(None)
            names.append("bot")
            continue
        g = None
        for c in range(s.n):
            if has(f, c) and all(p.leq(c, m) for m in range(s.n) if has(f, m)):
                g = c
                break
        if g is None:
            raise AssertionError("non-empty finite filter without a least element")
        gens.append(g)
        names.append("up_" + s.elements[g])
    bottom = found.index(0)
    poset = FinitePoset(tuple(names), tuple(up), tuple(down))
    return DualSemilattice(poset, meet, bottom, s, tuple(found), tuple(gens))


def pinv_oracle(r: CrispRep, p1: Compatibility | None = None,
                p2: Compatibility | None = None) -> CrispRep:
    """Pseudo-inverse by direct evaluation of its two-quantifier definition."""
    if p1 is None:
        p1 = canonical_pairing(r.source)
    if p2 is None:
        p2 = canonical_pairing(r.target)
    h1, h2 = p1.right, p2.right
    rows = []
    for yh in range(h2.n):
        row = 0
        for xh in range(h1.n):
            ok = True
            for x in range(r.source.n):
                if p1.value(x, xh) == 1:
                    if not any(
                        has(r.rows[x], y) and p2.value(y, yh) == 1
                        for y in range(r.target.n)
                    ):
                        ok = False
                        break
            if ok:
                row |= 1 << xh
        rows.append(row)
    return CrispRep(h2, h1, tuple(rows))


def compose_expanded(r: FuzzyRep, q: FuzzyRep, quantale: Quantale) -> FuzzyRep:
    """Composition from the expanded definition: finite witness bundles of
    related pairs whose multiplied grades join above every approximation."""
    lattice = quantale.lattice
    if q.source.n * lattice.n > COMPOSE_CAP:
        raise SizeCap("compose_expanded", q.source.n * lattice.n, COMPOSE_CAP)
    p3 = q.target.poset
    pl = lattice.poset
    bot_l = lattice.zero

    def in_r(x, y, b):
        return lattice.leq(b, r.grades[x][y])

    def in_q(y, z, c):
        return lattice.leq(c, q.grades[y][z])

    # best witness-bundle join for each (x, z'): taking every valid triple
    # (y, beta, gamma) at once is itself a witness bundle
    best = [[bot_l] * q.target.n for _ in range(r.source.n)]
    for x in range(r.source.n):
        for zp in range(q.target.n):
            acc = bot_l
            for y in range(q.source.n):
                for beta in range(lattice.n):
                    if not in_r(x, y, beta):
                        continue
                    for gamma in range(lattice.n):
                        if in_q(y, zp, gamma):
                            acc = lattice.join[acc][quantale.mul[beta][gamma]]
            best[x][zp] = acc

    def wb_l(a, b):  # a << b in the lattice
        return lattice.leq(a, b) and b != bot_l

    def wb_3(a, b):
        return p3.leq(a, b) and b != q.target.zero

    grades = []
    for x in range(r.source.n):
        row = []
        for z in range(q.target.n):
            admitted = 0
            for alpha in range(lattice.n):
                ok = True
                for zp in range(q.target.n):
                    if not wb_3(zp, z):
                        continue
                    for ap in range(lattice.n):
                        if wb_l(ap, alpha) and not lattice.leq(ap, best[x][zp]):
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    admitted |= 1 << alpha
            g = None
            for cand in bits(admitted):
                if admitted & ~pl.down[cand] == 0:
                    g = cand
                    break
            if g is None:
                raise AssertionError("expanded composition degrees are not principal")
            row.append(g)
        grades.append(tuple(row))
    return FuzzyRep(r.source, q.target, lattice, grades)


def search_separating(s: MeetSemilattice, sp: MeetSemilattice) -> list[Compatibility]:
    """All separating compatibilities by exhaustive enumeration of candidate tables.

    Cells in the zero row/column are forced to 0 by the first axiom, so
    only the remaining cells are enumerated.
    """
    if s.n * sp.n > SEP_CAP:
        raise SizeCap("search_separating", s.n * sp.n, SEP_CAP)
    free = [(i, j) for i in range(s.n) for j in range(sp.n)
            if i != s.zero and j != sp.zero]
    out = []
    for assignment in range(1 << len(free)):
        rows = [0] * s.n
        for k, (i, j) in enumerate(free):
            if has(assignment, k):
                rows[i] |= 1 << j
        if _is_separating_compatibility(rows, s, sp):
            out.append(Compatibility(s, sp, tuple(rows)))
    out.sort(key=lambda c: c.rows)
    return out


def _is_separating_compatibility(rows, s: MeetSemilattice, sp: MeetSemilattice) -> bool:
    for i in range(s.n):
        for j in range(s.n):
            if rows[s.meet[i][j]] != rows[i] & rows[j]:
                return False
    for i in range(s.n):
        for y1 in range(sp.n):
            for y2 in range(sp.n):
                both = has(rows[i], y1) and has(rows[i], y2)
                if has(rows[i], sp.meet[y1][y2]) != both:
                    return False
    for i in range(s.n):
        for j in range(s.n):
            if s.leq(i, j) and rows[i] & ~rows[j]:
                return False
        for y1 in range(sp.n):
            for y2 in range(sp.n):
                if sp.leq(y1, y2) and has(rows[i], y1) and not has(rows[i], y2):
                    return False
    if len(set(rows)) != s.n:
        return False
    cols = [0] * sp.n
    for i in range(s.n):
        for j in range(sp.n):
            if has(rows[i], j):
                cols[j] |= 1 << i
    return len(set(cols)) == sp.n


def count_isos(s: MeetSemilattice, d: MeetSemilattice) -> int:
    """Number of semilattice isomorphisms s -> d, by brute-force bijections."""
    if s.n != d.n:
        return 0
    count = 0
    from itertools import permutations

    for perm in permutations(range(d.n)):
        if perm[s.zero] != d.zero:
            continue
        if any(
            s.leq(i, j) != d.leq(perm[i], perm[j])
            for i in range(s.n)
            for j in range(s.n)
        ):
            continue
        if any(
            perm[s.meet[i][j]] != d.meet[perm[i]][perm[j]]
            for i in range(s.n)
            for j in range(s.n)
        ):
            continue
        count += 1
    return count


def cuts_lemma_check(s1: MeetSemilattice, s2: MeetSemilattice, s3: MeetSemilattice,
                     triples: set[tuple[int, int, int]]) -> tuple[bool, bool]:
    """A ternary relation is lower iff all its one-coordinate cuts are lower."""
    p1, p2, p3 = s1.poset, s2.poset, s3.poset

    whole_lower = True
    for (x, y, z) in triples:
        for xp in range(s1.n):
            for yp in range(s2.n):
                for zp in range(s3.n):
                    if p1.leq(xp, x) and p2.leq(yp, y) and p3.leq(zp, z):
                        if (xp, yp, zp) not in triples:
                            whole_lower = False

    cuts_lower = True
    for y in range(s2.n):
        for z in range(s3.n):
            cut = {x for (x, yy, zz) in triples if yy == y and zz == z}
            if any(p1.leq(xp, x) and xp not in cut for x in cut for xp in range(s1.n)):
                cuts_lower = False
    for x in range(s1.n):
        for z in range(s3.n):
            cut = {y for (xx, y, zz) in triples if xx == x and zz == z}
            if any(p2.leq(yp, y) and yp not in cut for y in cut for yp in range(s2.n)):
                cuts_lower = False
    for x in range(s1.n):
        for y in range(s2.n):
            cut = {z for (xx, yy, z) in triples if xx == x and yy == y}
            if any(p3.leq(zp, z) and zp not in cut for z in cut for zp in range(s3.n)):
                cuts_lower = False
    return whole_lower, cuts_lower


def cd_oracle(l: BoundedLattice, max_family: int = 3) -> bool:
    """Bounded literal complete-distributivity check over families of subsets."""
    if l.n > CD_CAP:
        raise SizeCap("cd_oracle", l.n, CD_CAP)
    subsets = [tuple(bits(m)) for m in range(1, 1 << l.n)]

    def sup(xs):
        acc = l.zero
        for v in xs:
            acc = l.join[acc][v]
        return acc

    def inf(xs):
        acc = l.one
        for v in xs:
            acc = l.meet_of(acc, v)
        return acc

    for k in range(1, max_family + 1):
        for family in combinations_with_replacement(subsets, k):
            lhs = inf(sup(m) for m in family)
            rhs = l.zero
            for choice in iproduct(*family):
                rhs = l.join[rhs][inf(choice)]
            if lhs != rhs:
                return False
    return True


__all__ = [
    "OracleReport",
    "instance_digest",
    "compare",
    "wb_oracle",
    "dual_oracle",
    "pinv_oracle",
    "compose_expanded",
    "search_separating",
    "count_isos",
    "cuts_lemma_check",
    "cd_oracle",
]
