"""Exception hierarchy shared by all ambrep modules.

Every error carries enough structure (names, witnesses) to be serialized
into reports; the CLI maps them onto exit codes.
"""

from __future__ import annotations


class AmbrepError(Exception):
    """Base class for all ambrep errors."""


# --- order / structure validation ---------------------------------------

class CycleDetected(AmbrepError):
    def __init__(self, a: str, b: str):
        self.pair = (a, b)
        super().__init__(f"antisymmetry violated: {a} <= {b} <= {a}")


class UnknownElement(AmbrepError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown element: {name!r}")


class NoBottom(AmbrepError):
    def __init__(self, detail: str = ""):
        super().__init__(f"poset has no least element{': ' + detail if detail else ''}")


class NoTop(AmbrepError):
    def __init__(self, detail: str = ""):
        super().__init__(f"poset has no greatest element{': ' + detail if detail else ''}")


class NoMeet(AmbrepError):
    def __init__(self, a: str, b: str):
        self.pair = (a, b)
        super().__init__(f"no greatest lower bound for {a}, {b}")


class NoJoin(AmbrepError):
    def __init__(self, a: str, b: str):
        self.pair = (a, b)
        super().__init__(f"no least upper bound for {a}, {b}")


class NotAMorphism(AmbrepError):
    def __init__(self, reason: str, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"not a zero-preserving meet-morphism: {reason} (witness {witness})")


# --- compatibilities ------------------------------------------------------

class AxiomViolated(AmbrepError):
    def __init__(self, axiom: str, witness):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"compatibility axiom {axiom} violated at {witness}")


class NotSeparating(AmbrepError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"compatibility is not separating: {witness}")


class NotIso(AmbrepError):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"not an isomorphism: {reason}")


# --- representations ------------------------------------------------------

class RepViolated(AmbrepError):
    def __init__(self, clause: str, witness):
        self.clause = clause
        self.witness = witness
        super().__init__(f"representation clause {clause} violated at {witness}")


class NotFunctional(AmbrepError):
    def __init__(self, reason: str, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"representation is not induced by a morphism: {reason} (witness {witness})")


class MiddleMismatch(AmbrepError):
    def __init__(self, detail: str = ""):
        super().__init__(f"composition requires a shared middle semilattice{': ' + detail if detail else ''}")


# --- fuzzy layer ----------------------------------------------------------

class QuantaleViolated(AmbrepError):
    def __init__(self, axiom: str, witness=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"quantale axiom {axiom} violated at {witness}")


class QuantaleLatticeMismatch(AmbrepError):
    def __init__(self, detail: str = ""):
        super().__init__(f"quantale lattice differs from the grade lattice{': ' + detail if detail else ''}")


class FuzzyRepViolated(AmbrepError):
    def __init__(self, clause: str, witness):
        self.clause = clause
        self.witness = witness
        super().__init__(f"fuzzy representation clause {clause} violated at {witness}")


class CutFamilyInvalid(AmbrepError):
    def __init__(self, reason: str, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"cut family invalid: {reason} (witness {witness})")


# --- oracles / demos / frontend -------------------------------------------

class SizeCap(AmbrepError):
    def __init__(self, what: str, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: instance size {size} exceeds oracle cap {cap}")


class BadGrid(AmbrepError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"segment grid size must be divisible by 6, got {n}")


class ParseError(AmbrepError):
    def __init__(self, line: int, column: int, expected: str):
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(f"parse error at line {line}, column {column}: expected {expected}")


class ResolveError(AmbrepError):
    def __init__(self, name: str, detail: str = ""):
        self.name = name
        super().__init__(f"unresolved name {name!r}{': ' + detail if detail else ''}")
