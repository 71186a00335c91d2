"""Lattice-valued ambiguous representations over a unital quantale.

Grades live in a finite distributive bounded lattice L (the finite
surrogate for complete distributivity); a representation stores one grade
per (hidden, visible) pair, justified by the fact that the degree sets of
a valid ternary relation are principal lower sets.  Composition multiplies
grades in a quantale on L; the quantale unit need not be the lattice top
(relational composition on the 16-element lattice of binary relations on
two points is the stock noncommutative example).

The fuzzy pseudo-inverse is computed cutwise -- literally intersecting the
crisp pseudo-inverses of all strictly-approximating cuts -- and the result
is cross-checked on every call against the cut-level identity and the
generator grade transposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import bits, has
from .compat import Compatibility
from .crisp import CrispRep, check_rep, full_rep, pseudo_inverse, _validate_pairing
from .dual import canonical_iso, lawson_dual
from .errors import (
    CutFamilyInvalid,
    FuzzyRepViolated,
    MiddleMismatch,
    QuantaleLatticeMismatch,
    QuantaleViolated,
)
from .order import (
    BoundedLattice,
    MeetSemilattice,
    check_distributive,
    find_distributivity_violation,
    same_carrier,
    way_below_strict,
)


@dataclass(frozen=True)
class Quantale:
    """A finite unital quantale: a distributive bounded lattice with a multiplication."""

    lattice: BoundedLattice
    mul: tuple[tuple[int, ...], ...]
    unit: int

    @property
    def n(self) -> int:
        return self.lattice.n

    def times(self, a: int, b: int) -> int:
        return self.mul[a][b]


def check_quantale(lattice: BoundedLattice, mul) -> Quantale:
    """Validate multiplication axioms and locate the (necessarily unique) unit."""
    mul = tuple(tuple(row) for row in mul)
    n = lattice.n
    if len(mul) != n or any(len(row) != n for row in mul):
        raise ValueError("multiplication table has wrong dimensions")
    for row in mul:
        for v in row:
            if not 0 <= v < n:
                raise ValueError("multiplication value out of range")
    viol = find_distributivity_violation(lattice)
    if viol is not None:
        raise QuantaleViolated("lattice-distributivity", viol)
    e = lattice.elements
    z = lattice.zero
    for a in range(n):
        if mul[a][z] != z or mul[z][a] != z:
            raise QuantaleViolated("zero", e[a])
    unit = None
    for u in range(n):
        if all(mul[u][a] == a and mul[a][u] == a for a in range(n)):
            unit = u
            break
    if unit is None:
        raise QuantaleViolated("unit")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    raise QuantaleViolated("assoc", (e[a], e[b], e[c]))
    join = lattice.join
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[a][join[b][c]] != join[mul[a][b]][mul[a][c]]:
                    raise QuantaleViolated("distributive-left", (e[a], e[b], e[c]))
                if mul[join[b][c]][a] != join[mul[b][a]][mul[c][a]]:
                    raise QuantaleViolated("distributive-right", (e[a], e[b], e[c]))
    return Quantale(lattice, mul, unit)


def opposite_quantale(q: Quantale) -> Quantale:
    """Swap the multiplication arguments; the unit is unchanged."""
    n = q.n
    mul = tuple(tuple(q.mul[b][a] for b in range(n)) for a in range(n))
    return Quantale(q.lattice, mul, q.unit)


def is_commutative(q: Quantale) -> tuple[bool, tuple | None]:
    for a in range(q.n):
        for b in range(a + 1, q.n):
            if q.mul[a][b] != q.mul[b][a]:
                e = q.lattice.elements
                return False, (e[a], e[b])
    return True, None


@dataclass(frozen=True)
class FuzzyRep:
    """A validated grade table g : S1 x S2 -> L."""

    source: MeetSemilattice
    target: MeetSemilattice
    lattice: BoundedLattice
    grades: tuple[tuple[int, ...], ...]

    def grade(self, x: int, y: int) -> int:
        return self.grades[x][y]


@dataclass(frozen=True)
class CutFamily:
    """Threshold cuts of a fuzzy representation, one crisp representation per grade."""

    lattice: BoundedLattice
    cuts: tuple[CrispRep, ...]


def _degree_set(lattice: BoundedLattice, g: int) -> int:
    return lattice.poset.down[g]


def check_fuzzy_rep(grades, s1: MeetSemilattice, s2: MeetSemilattice,
                    lattice: BoundedLattice) -> FuzzyRep:
    """Validate the grade table and confirm the three equivalent degree-set readings agree."""
    grades = tuple(tuple(row) for row in grades)
    if len(grades) != s1.n or any(len(row) != s2.n for row in grades):
        raise ValueError("grade table has wrong dimensions")
    for row in grades:
        for v in row:
            if not 0 <= v < lattice.n:
                raise ValueError("grade out of range")
    if not check_distributive(lattice):
        raise FuzzyRepViolated("grade-lattice-distributivity", find_distributivity_violation(lattice))
    e1, e2, el = s1.elements, s2.elements, lattice.elements
    top = lattice.one
    for x in range(s1.n):
        if grades[x][s2.zero] != top:
            raise FuzzyRepViolated("bottom-column", (e1[x], el[grades[x][s2.zero]]))
    for x1 in range(s1.n):
        for x2 in range(s1.n):
            if s1.leq(x1, x2):
                for y in range(s2.n):
                    if not lattice.leq(grades[x1][y], grades[x2][y]):
                        raise FuzzyRepViolated("grade-monotone-source", (e1[x1], e1[x2], e2[y]))
    for y1 in range(s2.n):
        for y2 in range(s2.n):
            if s2.leq(y1, y2):
                for x in range(s1.n):
                    if not lattice.leq(grades[x][y2], grades[x][y1]):
                        raise FuzzyRepViolated("grade-antitone-target", (e1[x], e2[y2], e2[y1]))
    _assert_degree_forms_agree(grades, s1, s2, lattice)
    return FuzzyRep(s1, s2, lattice, grades)


def _assert_degree_forms_agree(grades, s1, s2, lattice: BoundedLattice) -> None:
    """The directed-closed, approximation-closed and principal readings must coincide."""
    p = lattice.poset
    wbb = way_below_strict(p)
    for x in range(s1.n):
        for y in range(s2.n):
            a = _degree_set(lattice, grades[x][y])
            lower = p.is_lower(a)
            # non-empty, directed and Scott closed (= lower on a finite lattice)
            closed = a != 0 and p.is_directed(a) and lower
            # non-empty directed lower set closed under approximated elements:
            # if every beta << alpha lies in the set, alpha does too
            approx = closed
            if approx:
                for alpha in range(lattice.n):
                    if not has(a, alpha) and wbb[alpha] & ~a == 0:
                        approx = False
                        break
            # lower set with a greatest element
            principal = False
            if lower:
                for g in bits(a):
                    if a & ~p.down[g] == 0:
                        principal = True
                        break
            if not (closed and approx and principal):
                raise AssertionError(
                    f"degree-set readings disagree at {s1.elements[x]},{s2.elements[y]}"
                )


def embed_crisp(r: CrispRep, lattice: BoundedLattice) -> FuzzyRep:
    """Grade a crisp representation with the lattice bounds."""
    top, bot = lattice.one, lattice.zero
    grades = tuple(
        tuple(top if has(r.rows[x], y) else bot for y in range(r.target.n))
        for x in range(r.source.n)
    )
    return check_fuzzy_rep(grades, r.source, r.target, lattice)


def alpha_cut(r: FuzzyRep, alpha: int) -> CrispRep:
    """The crisp representation of pairs graded at least ``alpha``."""
    rows = []
    for x in range(r.source.n):
        m = 0
        for y in range(r.target.n):
            if r.lattice.leq(alpha, r.grades[x][y]):
                m |= 1 << y
        rows.append(m)
    return check_rep(rows, r.source, r.target)


def to_cuts(r: FuzzyRep) -> CutFamily:
    return CutFamily(r.lattice, tuple(alpha_cut(r, a) for a in range(r.lattice.n)))


def from_cuts(c: CutFamily) -> FuzzyRep:
    """Reassemble grades as the peaks of the antitone cut family."""
    lattice = c.lattice
    if len(c.cuts) != lattice.n:
        raise CutFamilyInvalid("one cut per lattice element required", len(c.cuts))
    base = c.cuts[0]
    s1, s2 = base.source, base.target
    for cut in c.cuts:
        if not (same_carrier(cut.source, s1) and same_carrier(cut.target, s2)):
            raise CutFamilyInvalid("cuts live over different carriers")
    for beta in range(lattice.n):
        for alpha in range(lattice.n):
            if lattice.leq(beta, alpha):
                for x in range(s1.n):
                    if c.cuts[alpha].rows[x] & ~c.cuts[beta].rows[x]:
                        raise CutFamilyInvalid(
                            "family not antitone",
                            (lattice.elements[beta], lattice.elements[alpha], s1.elements[x]),
                        )
    if any(row != s2.full for row in c.cuts[lattice.zero].rows):
        raise CutFamilyInvalid("bottom cut must be the full relation")
    p = lattice.poset
    grades = []
    for x in range(s1.n):
        row = []
        for y in range(s2.n):
            a = 0
            for alpha in range(lattice.n):
                if has(c.cuts[alpha].rows[x], y):
                    a |= 1 << alpha
            g = None
            for cand in bits(a):
                if a & ~p.down[cand] == 0:
                    g = cand
                    break
            if g is None:
                raise CutFamilyInvalid(
                    "degree set has no greatest element", (s1.elements[x], s2.elements[y])
                )
            row.append(g)
        grades.append(tuple(row))
    return check_fuzzy_rep(grades, s1, s2, lattice)


def fuzzy_pseudo_inverse(r: FuzzyRep, p1: Compatibility | None = None,
                         p2: Compatibility | None = None) -> FuzzyRep:
    """Cutwise pseudo-inverse: each cut is the intersection of the duals of all approximating cuts.

    Cross-checked against the cut-level identity (for non-zero grades the
    cut of the inverse is the inverse of the cut; the zero cut is full)
    and against the generator grade transposition.
    """
    _validate_pairing(p1, r.source, "p1")
    _validate_pairing(p2, r.target, "p2")
    lattice = r.lattice
    wbb = way_below_strict(lattice.poset)
    d1 = lawson_dual(r.source)
    d2 = lawson_dual(r.target)
    sharp_cut = [pseudo_inverse(alpha_cut(r, beta)) for beta in range(lattice.n)]
    full_rows = (d1.full,) * d2.n
    cuts = []
    for alpha in range(lattice.n):
        rows = list(full_rows)
        for beta in bits(wbb[alpha]):
            rows = [rows[k] & sharp_cut[beta].rows[k] for k in range(d2.n)]
        cuts.append(check_rep(rows, d2, d1))
        if alpha == lattice.zero:
            if tuple(rows) != full_rows:
                raise AssertionError("zero cut of the pseudo-inverse must be full")
        elif tuple(rows) != sharp_cut[alpha].rows:
            raise AssertionError("cut-level identity failed for the fuzzy pseudo-inverse")
    out = from_cuts(CutFamily(lattice, tuple(cuts)))
    _assert_grade_transposition(r, out, d1, d2)
    return out


def _assert_grade_transposition(r: FuzzyRep, out: FuzzyRep, d1, d2) -> None:
    top, bot = r.lattice.one, r.lattice.zero
    for k2 in range(d2.n):
        t = d2.generators[k2]
        for k1 in range(d1.n):
            s = d1.generators[k1]
            if s is None:
                expect = top
            elif t is None:
                expect = bot
            else:
                expect = r.grades[s][t]
            if out.grades[k2][k1] != expect:
                raise AssertionError("generator grade transposition failed")


def is_pseudo_invertible_fuzzy(r: FuzzyRep) -> tuple[bool, dict | None]:
    """Literal check of the fuzzy approximation condition plus its two equivalents."""
    wbb1 = way_below_strict(r.source.poset)
    wbb2 = way_below_strict(r.target.poset)
    wbbl = way_below_strict(r.lattice.poset)
    down_l = r.lattice.poset.down
    verdict, witness = True, None
    for x in range(r.source.n):
        if not verdict:
            break
        for y in range(r.target.n):
            if not verdict:
                break
            for alpha in bits(down_l[r.grades[x][y]]):
                if not verdict:
                    break
                for yp in bits(wbb2[y]):
                    if not verdict:
                        break
                    for ap in bits(wbbl[alpha]):
                        ok = False
                        for xp in bits(wbb1[x]):
                            if r.lattice.leq(ap, r.grades[xp][yp]):
                                ok = True
                                break
                        if not ok:
                            verdict = False
                            witness = {
                                "x": r.source.elements[x],
                                "y": r.target.elements[y],
                                "alpha": r.lattice.elements[alpha],
                                "y_prime": r.target.elements[yp],
                                "alpha_prime": r.lattice.elements[ap],
                            }
                            break
    bot = r.lattice.zero
    criterion = all(
        r.grades[r.source.zero][y] == bot
        for y in range(r.target.n)
        if y != r.target.zero
    )
    involutive = double_pseudo_inverse_defect(r).grades == r.grades
    if not (verdict == criterion == involutive):
        raise AssertionError("fuzzy pseudo-invertibility criteria disagree")
    return verdict, witness


def double_pseudo_inverse_defect(r: FuzzyRep) -> FuzzyRep:
    """Apply the fuzzy pseudo-inverse twice, pulled back along the double-dual isomorphisms."""
    sharp2 = fuzzy_pseudo_inverse(fuzzy_pseudo_inverse(r))
    u1 = canonical_iso(r.source)
    u2 = canonical_iso(r.target)
    grades = []
    for x in range(r.source.n):
        row = []
        for y in range(r.target.n):
            g = sharp2.grades[u1.table[x]][u2.table[y]]
            if not r.lattice.leq(g, r.grades[x][y]):
                raise AssertionError("double fuzzy pseudo-inverse escaped the original grades")
            row.append(g)
        grades.append(tuple(row))
    return check_fuzzy_rep(grades, r.source, r.target, r.lattice)


def _check_compose_types(r: FuzzyRep, q: FuzzyRep, quantale: Quantale) -> None:
    if not same_carrier(r.target, q.source):
        raise MiddleMismatch(f"{r.target.elements} vs {q.source.elements}")
    if r.lattice != q.lattice:
        raise QuantaleLatticeMismatch("the two representations use different grade lattices")
    if quantale.lattice != r.lattice:
        raise QuantaleLatticeMismatch("quantale lattice differs from the representations'")


def compose_fuzzy(r: FuzzyRep, q: FuzzyRep, quantale: Quantale) -> FuzzyRep:
    """Sup-of-products composition: h(x, z) = join over y of g_r(x, y) * g_q(y, z)."""
    _check_compose_types(r, q, quantale)
    join = quantale.lattice.join
    mul = quantale.mul
    bot = quantale.lattice.zero
    grades = []
    for x in range(r.source.n):
        gr = r.grades[x]
        row = []
        for z in range(q.target.n):
            acc = bot
            for y in range(q.source.n):
                acc = join[acc][mul[gr[y]][q.grades[y][z]]]
            row.append(acc)
        grades.append(tuple(row))
    return check_fuzzy_rep(grades, r.source, q.target, r.lattice)


def compose_closure_path(r: FuzzyRep, q: FuzzyRep, quantale: Quantale) -> FuzzyRep:
    """Composition computed from the definitions: degree sups over explicit witness
    triples, followed by a literal Scott closure of each row in the product order."""
    _check_compose_types(r, q, quantale)
    lattice = quantale.lattice
    join = lattice.join
    mul = quantale.mul
    down = lattice.poset.down
    n1, n2, n3 = r.source.n, q.source.n, q.target.n
    raw = [[lattice.zero] * n3 for _ in range(n1)]
    for x in range(n1):
        for z in range(n3):
            acc = lattice.zero
            for y in range(n2):
                for beta in bits(down[r.grades[x][y]]):
                    for gamma in bits(down[q.grades[y][z]]):
                        acc = join[acc][mul[beta][gamma]]
            raw[x][z] = acc
    # Scott closure of {(z, alpha) | alpha <= raw[x][z]} inside target x lattice
    closed = []
    for x in range(n1):
        row = []
        for z in range(n3):
            acc = lattice.zero
            for z0 in bits(q.target.poset.up[z]):
                acc = join[acc][raw[x][z0]]
            row.append(acc)
        closed.append(tuple(row))
    return check_fuzzy_rep(closed, r.source, q.target, r.lattice)


def fuzzy_subset(a: FuzzyRep, b: FuzzyRep) -> bool:
    """Pointwise grade comparison (a contained in b)."""
    return all(
        a.lattice.leq(a.grades[x][y], b.grades[x][y])
        for x in range(a.source.n)
        for y in range(a.target.n)
    )


def meet_quantale(lattice: BoundedLattice) -> Quantale:
    """The simplest quantale on a distributive lattice: multiplication is the meet."""
    return check_quantale(lattice, lattice.semilattice.meet)


__all__ = [
    "Quantale",
    "FuzzyRep",
    "CutFamily",
    "check_quantale",
    "opposite_quantale",
    "is_commutative",
    "check_fuzzy_rep",
    "embed_crisp",
    "alpha_cut",
    "to_cuts",
    "from_cuts",
    "fuzzy_pseudo_inverse",
    "is_pseudo_invertible_fuzzy",
    "double_pseudo_inverse_defect",
    "compose_fuzzy",
    "compose_closure_path",
    "fuzzy_subset",
    "meet_quantale",
]
