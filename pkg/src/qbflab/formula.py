"""Boolean formula trees, truth tables, and algebraic normal form.

Variables are positive integers.  A k-ary truth table packs all 2**k rows
into a single int, bit r holding the value of row r.  Row indices encode
assignments with the first variable of ``var_order`` as the most
significant bit, so ``var_order = (x, y)`` maps assignment x=1, y=0 to
row 2.  Keeping the rows in one int lets table construction evaluate a
formula over every assignment at once with word-parallel bit operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

#: Largest number of variables a materialized truth table may have.
#: 2**24 table bits is 2 MiB, a sane ceiling for desk-scale experiments.
TABLE_ARITY_CAP = 24


class FormulaError(Exception):
    """Base class for formula-level failures."""


class MissingVariableError(FormulaError):
    """An assignment does not cover some variable of the formula."""

    def __init__(self, missing: Iterable[int]):
        self.missing = tuple(sorted(missing))
        super().__init__(f"assignment does not cover variable(s) {list(self.missing)}")


class ArityOverflowError(FormulaError):
    """A truth table over more variables than the configured cap was requested."""

    def __init__(self, arity: int, cap: int):
        self.arity = arity
        self.cap = cap
        super().__init__(f"table arity {arity} exceeds cap {cap}")


# ---------------------------------------------------------------------------
# Formula AST


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True)
class Var:
    id: int

    def __post_init__(self):
        if not isinstance(self.id, int) or self.id < 1:
            raise ValueError(f"variable ids are positive integers, got {self.id!r}")


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True, init=False)
class And:
    children: tuple["Formula", ...]

    def __init__(self, *children: "Formula"):
        if not children:
            raise ValueError("And needs at least one operand")
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True, init=False)
class Or:
    children: tuple["Formula", ...]

    def __init__(self, *children: "Formula"):
        if not children:
            raise ValueError("Or needs at least one operand")
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class Xor:
    left: "Formula"
    right: "Formula"


Formula = Union[Const, Var, Not, And, Or, Xor]


def variables(f: Formula) -> frozenset[int]:
    """Set of variable ids occurring in ``f``."""
    found: set[int] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            found.add(node.id)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
        elif isinstance(node, Xor):
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(found)


def node_count(f: Formula) -> int:
    """Number of AST nodes in ``f``."""
    total = 0
    stack = [f]
    while stack:
        node = stack.pop()
        total += 1
        if isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
        elif isinstance(node, Xor):
            stack.append(node.left)
            stack.append(node.right)
    return total


def eval_formula(f: Formula, assignment: Mapping[int, int]) -> int:
    """Evaluate ``f`` under a total assignment, returning 0 or 1.

    Raises MissingVariableError if the assignment misses a variable that
    the evaluation actually reaches (And/Or short-circuit).
    """
    if isinstance(f, Var):
        try:
            return assignment[f.id] & 1
        except KeyError:
            raise MissingVariableError([f.id]) from None
    if isinstance(f, Not):
        return 1 - eval_formula(f.child, assignment)
    if isinstance(f, And):
        for child in f.children:
            if eval_formula(child, assignment) == 0:
                return 0
        return 1
    if isinstance(f, Or):
        for child in f.children:
            if eval_formula(child, assignment) == 1:
                return 1
        return 0
    if isinstance(f, Xor):
        return eval_formula(f.left, assignment) ^ eval_formula(f.right, assignment)
    if isinstance(f, Const):
        return f.value
    raise TypeError(f"not a formula node: {f!r}")


def substitute_vars(f: Formula, mapping: Mapping[int, Formula]) -> Formula:
    """Replace every occurrence of each mapped variable by its formula."""
    if isinstance(f, Var):
        return mapping.get(f.id, f)
    if isinstance(f, Not):
        return Not(substitute_vars(f.child, mapping))
    if isinstance(f, And):
        return And(*(substitute_vars(c, mapping) for c in f.children))
    if isinstance(f, Or):
        return Or(*(substitute_vars(c, mapping) for c in f.children))
    if isinstance(f, Xor):
        return Xor(substitute_vars(f.left, mapping), substitute_vars(f.right, mapping))
    return f


# ---------------------------------------------------------------------------
# Truth tables


def _row_bit_pattern(bit: int, arity: int) -> int:
    """Int whose bit r is set exactly when row index r has ``bit`` set.

    Built by doubling: one period of 2**bit zeros then 2**bit ones,
    replicated across all 2**arity rows.
    """
    if not 0 <= bit < arity:
        raise ValueError(f"bit {bit} out of range for arity {arity}")
    half = 1 << bit
    pattern = ((1 << half) - 1) << half
    width = half << 1
    total = 1 << arity
    while width < total:
        pattern |= pattern << width
        width <<= 1
    return pattern


@dataclass(frozen=True)
class TruthTable:
    """All 2**arity values of a boolean function over ``var_order``."""

    arity: int
    mask: int
    var_order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "var_order", tuple(self.var_order))
        if self.arity < 0:
            raise ValueError("arity must be non-negative")
        if len(self.var_order) != self.arity:
            raise ValueError("var_order length must equal arity")
        if len(set(self.var_order)) != self.arity:
            raise ValueError("var_order entries must be distinct")
        if not 0 <= self.mask < (1 << (1 << self.arity)):
            raise ValueError("mask has bits outside the 2**arity rows")

    @property
    def n_rows(self) -> int:
        return 1 << self.arity

    def bit(self, row: int) -> int:
        if not 0 <= row < self.n_rows:
            raise IndexError(f"row {row} out of range")
        return (self.mask >> row) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> r) & 1 for r in range(self.n_rows))

    def bits_string(self) -> str:
        """Row values as text, row 0 first: XOR over (x, y) prints '0110'."""
        return "".join(str((self.mask >> r) & 1) for r in range(self.n_rows))

    def row_of(self, assignment: Mapping[int, int]) -> int:
        """Row index encoding ``assignment`` restricted to var_order."""
        row = 0
        for v in self.var_order:
            row = (row << 1) | (assignment[v] & 1)
        return row

    def evaluate(self, assignment: Mapping[int, int]) -> int:
        return (self.mask >> self.row_of(assignment)) & 1

    @classmethod
    def from_bits(cls, bits: Iterable[int], var_order: Iterable[int]) -> "TruthTable":
        order = tuple(var_order)
        values = list(bits)
        if len(values) != 1 << len(order):
            raise ValueError("bit count must be exactly 2**len(var_order)")
        mask = 0
        for r, b in enumerate(values):
            if b not in (0, 1):
                raise ValueError(f"table bits must be 0/1, got {b!r}")
            mask |= b << r
        return cls(len(order), mask, order)

    @classmethod
    def from_bits_string(cls, text: str, var_order: Iterable[int]) -> "TruthTable":
        try:
            return cls.from_bits((int(c) for c in text), var_order)
        except ValueError as exc:
            raise ValueError(f"bad table bit string {text!r}: {exc}") from None


def formula_to_truth_table(
    f: Formula,
    var_order: Iterable[int],
    *,
    max_arity: int = TABLE_ARITY_CAP,
) -> TruthTable:
    """Tabulate ``f`` over ``var_order`` (which must cover its variables).

    Evaluates all rows at once: each variable becomes the bit pattern of
    the rows where it is 1, and the connectives act bitwise on whole
    columns.
    """
    order = tuple(var_order)
    k = len(order)
    if k > max_arity:
        raise ArityOverflowError(k, max_arity)
    extra = variables(f) - set(order)
    if extra:
        raise MissingVariableError(extra)
    full = (1 << (1 << k)) - 1
    columns = {v: _row_bit_pattern(k - 1 - j, k) for j, v in enumerate(order)}

    def walk(node: Formula) -> int:
        if isinstance(node, Var):
            return columns[node.id]
        if isinstance(node, Not):
            return full ^ walk(node.child)
        if isinstance(node, And):
            acc = full
            for child in node.children:
                acc &= walk(child)
                if acc == 0:
                    break
            return acc
        if isinstance(node, Or):
            acc = 0
            for child in node.children:
                acc |= walk(child)
                if acc == full:
                    break
            return acc
        if isinstance(node, Xor):
            return walk(node.left) ^ walk(node.right)
        return full if node.value else 0

    return TruthTable(k, walk(f), order)


# ---------------------------------------------------------------------------
# Algebraic normal form


def anf_coefficient_mask(mask: int, arity: int) -> int:
    """XOR-down (Moebius) transform of a packed truth table.

    Bit m of the result is the coefficient of the monomial whose variable
    set is encoded by m in the same row-index convention as the table.
    """
    for t in range(arity):
        ones = _row_bit_pattern(t, arity)
        full = (1 << (1 << arity)) - 1
        zeros = full ^ ones
        mask ^= (mask & zeros) << (1 << t)
    return mask


@dataclass(frozen=True)
class AnfPolynomial:
    """XOR of AND-monomials; the empty monomial is the constant 1."""

    monomials: frozenset[frozenset[int]]
    var_order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "monomials", frozenset(frozenset(m) for m in self.monomials))
        object.__setattr__(self, "var_order", tuple(self.var_order))
        known = set(self.var_order)
        for mono in self.monomials:
            if not mono <= known:
                raise ValueError(f"monomial {sorted(mono)} uses variables outside var_order")

    def evaluate(self, assignment: Mapping[int, int]) -> int:
        acc = 0
        for mono in self.monomials:
            term = 1
            for v in mono:
                term &= assignment[v] & 1
                if term == 0:
                    break
            acc ^= term
        return acc

    def sorted_monomials(self) -> list[tuple[int, ...]]:
        """Monomials as sorted tuples, smallest degree first, then by ids."""
        return sorted((tuple(sorted(m)) for m in self.monomials), key=lambda m: (len(m), m))

    def to_formula(self) -> Formula:
        """Render as an expression tree: Xor-chain of And-monomials."""
        terms: list[Formula] = []
        for mono in self.sorted_monomials():
            if not mono:
                terms.append(Const(1))
            elif len(mono) == 1:
                terms.append(Var(mono[0]))
            else:
                terms.append(And(*(Var(v) for v in mono)))
        if not terms:
            return Const(0)
        acc = terms[0]
        for term in terms[1:]:
            acc = Xor(acc, term)
        return acc


def truth_table_to_anf(table: TruthTable) -> AnfPolynomial:
    """Unique ANF of the function tabulated by ``table``."""
    coeffs = anf_coefficient_mask(table.mask, table.arity)
    k = table.arity
    monomials: set[frozenset[int]] = set()
    rest = coeffs
    while rest:
        low = rest & -rest
        index = low.bit_length() - 1
        mono: set[int] = set()
        bits = index
        while bits:
            b = bits & -bits
            p = b.bit_length() - 1
            mono.add(table.var_order[k - 1 - p])
            bits ^= b
        monomials.add(frozenset(mono))
        rest ^= low
    return AnfPolynomial(frozenset(monomials), table.var_order)


def anf_size(p: AnfPolynomial) -> int:
    """Monomial count, the size metric used for bounded Skolem search."""
    return len(p.monomials)
