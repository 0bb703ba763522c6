"""Conversion to the strictly alternating forall/exists prefix shape and
the requantified-copies construction built on top of it.

The alternating shape quantifies pairs (forall x_i)(exists y_i) for
i = 1..n.  Arbitrary closed prenex formulas reach it by inserting fresh
dummy variables: a leading universal if the formula starts existentially,
a splitter wherever two equal quantifiers are adjacent, and a trailing
existential if the prefix length ends up odd.  The inserted variables do
not occur in the matrix, so the truth value is untouched and the new
prefix has at most 2n+2 entries for n original variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formula import And, Formula, Var, substitute_vars
from .qbf import PrenexQbf, Quantifier


@dataclass(frozen=True)
class StandardFormQbf:
    """A prenex QBF whose prefix is exactly (forall x_1)(exists y_1)...(forall x_n)(exists y_n)."""

    qbf: PrenexQbf
    n: int
    pairing: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairing", tuple(tuple(p) for p in self.pairing))
        if self.n < 1:
            raise ValueError("standard form needs at least one pair")
        if len(self.qbf.prefix) != 2 * self.n or len(self.pairing) != self.n:
            raise ValueError("prefix length must be exactly 2n")
        for i, (x, y) in enumerate(self.pairing):
            qx, vx = self.qbf.prefix[2 * i]
            qy, vy = self.qbf.prefix[2 * i + 1]
            if qx is not Quantifier.FORALL or qy is not Quantifier.EXISTS:
                raise ValueError("prefix must strictly alternate forall/exists")
            if (vx, vy) != (x, y):
                raise ValueError("pairing must list the prefix variables in order")

    @classmethod
    def from_qbf(cls, q: PrenexQbf) -> "StandardFormQbf":
        if not q.prefix or len(q.prefix) % 2:
            raise ValueError("prefix length must be a positive even number")
        pairing = []
        for i in range(0, len(q.prefix), 2):
            qx, vx = q.prefix[i]
            qy, vy = q.prefix[i + 1]
            if qx is not Quantifier.FORALL or qy is not Quantifier.EXISTS:
                raise ValueError("prefix must strictly alternate forall/exists")
            pairing.append((vx, vy))
        return cls(q, len(pairing), tuple(pairing))

    @property
    def matrix(self) -> Formula:
        return self.qbf.matrix


@dataclass(frozen=True)
class MappingEntry:
    """One slot of the converted prefix."""

    position: int
    var: int
    quantifier: Quantifier
    dummy: bool
    source_position: Optional[int]


@dataclass(frozen=True)
class VariableMapping:
    entries: tuple[MappingEntry, ...]

    @property
    def dummy_ids(self) -> tuple[int, ...]:
        return tuple(e.var for e in self.entries if e.dummy)

    def new_position_of(self, original_position: int) -> int:
        for e in self.entries:
            if e.source_position == original_position:
                return e.position
        raise KeyError(original_position)


def _fresh_counter(q: PrenexQbf):
    next_id = max(q.prefix_vars, default=0)

    def alloc() -> int:
        nonlocal next_id
        next_id += 1
        return next_id

    return alloc


def to_standard_form(q: PrenexQbf) -> tuple[StandardFormQbf, VariableMapping]:
    """Pad a closed prenex QBF into the alternating pair shape with dummies.

    The insertion order is fixed: a universal dummy in front of an
    out-of-turn existential, splitter dummies between equal neighbours,
    and one trailing existential dummy when the padded prefix has odd
    length.  The matrix is untouched.
    """
    alloc = _fresh_counter(q)
    slots: list[tuple[Quantifier, int, bool, Optional[int]]] = []
    expected = Quantifier.FORALL

    def flip(quant: Quantifier) -> Quantifier:
        return Quantifier.EXISTS if quant is Quantifier.FORALL else Quantifier.FORALL

    for pos, (quant, var) in enumerate(q.prefix):
        if quant is not expected:
            slots.append((expected, alloc(), True, None))
            expected = flip(expected)
        slots.append((quant, var, False, pos))
        expected = flip(expected)
    if not slots:
        slots.append((Quantifier.FORALL, alloc(), True, None))
        slots.append((Quantifier.EXISTS, alloc(), True, None))
    elif len(slots) % 2:
        slots.append((Quantifier.EXISTS, alloc(), True, None))

    prefix = tuple((quant, var) for quant, var, _, _ in slots)
    entries = tuple(
        MappingEntry(i, var, quant, dummy, src)
        for i, (quant, var, dummy, src) in enumerate(slots)
    )
    standard = StandardFormQbf.from_qbf(PrenexQbf(prefix, q.matrix))
    return standard, VariableMapping(entries)


@dataclass(frozen=True)
class PhiPrimeClause:
    """One requantified copy: pairs >= start are replaced by fresh variables."""

    start: int
    hat_vars: tuple[int, ...]
    z_vars: tuple[int, ...]
    body: Formula


@dataclass(frozen=True)
class PhiPrime:
    """Conjunction of the bare matrix with its requantified copies.

    The copy for start index j keeps pairs 1..j-1 and quantifies fresh
    universal/existential replacements for pairs j..n; copies are listed
    with j descending from n to 2, and each one carries its own fresh
    variables unless built with shared replacements.
    """

    outer_universals: tuple[int, ...]
    outer_existentials: tuple[int, ...]
    first_conjunct: Formula
    clauses: tuple[PhiPrimeClause, ...]

    @property
    def n(self) -> int:
        return len(self.outer_universals)


def build_phi_prime(s: StandardFormQbf, *, shared_fresh: bool = False) -> PhiPrime:
    """Construct the requantified-copies conjunction for a standard-form QBF.

    With ``shared_fresh`` the replacement variable for pair i is the same
    in every copy that rewrites pair i; the default gives every copy its
    own replacements (renamed apart), which is what the prenexing step
    assumes.
    """
    n = s.n
    alloc = _fresh_counter(s.qbf)
    shared_hats: dict[int, int] = {}
    shared_zs: dict[int, int] = {}
    if shared_fresh:
        for i in range(2, n + 1):
            shared_hats[i] = alloc()
        for i in range(2, n + 1):
            shared_zs[i] = alloc()
    clauses: list[PhiPrimeClause] = []
    for start in range(n, 1, -1):
        if shared_fresh:
            hats = tuple(shared_hats[i] for i in range(start, n + 1))
            zs = tuple(shared_zs[i] for i in range(start, n + 1))
        else:
            hats = tuple(alloc() for _ in range(start, n + 1))
            zs = tuple(alloc() for _ in range(start, n + 1))
        mapping: dict[int, Formula] = {}
        for offset, i in enumerate(range(start, n + 1)):
            x_i, y_i = s.pairing[i - 1]
            mapping[x_i] = Var(hats[offset])
            mapping[y_i] = Var(zs[offset])
        clauses.append(PhiPrimeClause(start, hats, zs, substitute_vars(s.matrix, mapping)))
    return PhiPrime(
        outer_universals=tuple(x for x, _ in s.pairing),
        outer_existentials=tuple(y for _, y in s.pairing),
        first_conjunct=s.matrix,
        clauses=tuple(clauses),
    )


def prenex_phi_prime(p: PhiPrime) -> PrenexQbf:
    """Pull all quantifiers to the front in four blocks: outer universals,
    outer existentials, every copy's universals, every copy's existentials."""
    hat_block: list[int] = []
    z_block: list[int] = []
    for clause in p.clauses:
        for h in clause.hat_vars:
            if h not in hat_block:
                hat_block.append(h)
        for z in clause.z_vars:
            if z not in z_block:
                z_block.append(z)
    prefix = (
        [(Quantifier.FORALL, x) for x in p.outer_universals]
        + [(Quantifier.EXISTS, y) for y in p.outer_existentials]
        + [(Quantifier.FORALL, h) for h in hat_block]
        + [(Quantifier.EXISTS, z) for z in z_block]
    )
    if p.clauses:
        matrix: Formula = And(p.first_conjunct, *(c.body for c in p.clauses))
    else:
        matrix = p.first_conjunct
    return PrenexQbf(tuple(prefix), matrix)
