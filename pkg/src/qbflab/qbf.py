"""Prenex QBF representation, the naive recursive decision procedure, and
prefix classification into alternation levels.

The evaluator is deliberately the plain recursion: pull off the first
quantified variable, try both values, OR the results for an existential
and AND them for a universal, with an empty prefix evaluating the ground
matrix.  It exposes a visited-node counter so the exponential growth of
that recursion can be asserted, and a switch to disable short-circuiting
so the worst case is reproducible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

from .formula import (
    TABLE_ARITY_CAP,
    Const,
    Formula,
    eval_formula,
    formula_to_truth_table,
    node_count,
    substitute_vars,
    variables,
)

#: Above this prefix length the evaluator stops materializing the matrix
#: truth table and falls back to per-assignment evaluation at the leaves.
_TABLE_EVAL_MAX = 16


class Quantifier(enum.Enum):
    FORALL = "forall"
    EXISTS = "exists"


class OpenFormulaError(Exception):
    """A matrix variable is not bound by the prefix."""


class DuplicateVariableError(Exception):
    """The same variable id occurs twice in a prefix."""


@dataclass(frozen=True)
class PrenexQbf:
    """Quantifier prefix plus quantifier-free matrix.

    Closed by construction: every matrix variable must appear in the
    prefix.  Prefix variables absent from the matrix are dummies and are
    perfectly legal.
    """

    prefix: tuple[tuple[Quantifier, int], ...]
    matrix: Formula

    def __post_init__(self):
        entries = []
        for quant, var in self.prefix:
            if not isinstance(quant, Quantifier):
                raise TypeError(f"not a quantifier: {quant!r}")
            entries.append((quant, var))
        object.__setattr__(self, "prefix", tuple(entries))
        ids = [v for _, v in self.prefix]
        if len(set(ids)) != len(ids):
            dupes = sorted({v for v in ids if ids.count(v) > 1})
            raise DuplicateVariableError(f"variables quantified twice: {dupes}")
        unbound = variables(self.matrix) - set(ids)
        if unbound:
            raise OpenFormulaError(f"matrix variables not quantified: {sorted(unbound)}")

    @property
    def prefix_vars(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.prefix)

    @property
    def universals(self) -> tuple[int, ...]:
        return tuple(v for q, v in self.prefix if q is Quantifier.FORALL)

    @property
    def existentials(self) -> tuple[int, ...]:
        return tuple(v for q, v in self.prefix if q is Quantifier.EXISTS)


def qbf_size(q: PrenexQbf) -> int:
    """Matrix AST node count plus prefix length."""
    return node_count(q.matrix) + len(q.prefix)


class PrefixSide(enum.Enum):
    SIGMA = "sigma"
    PI = "pi"


@dataclass(frozen=True)
class PrefixClass:
    """Alternation class of a prefix: block count and leading side."""

    level: int
    side: Optional[PrefixSide]

    def __post_init__(self):
        if (self.level == 0) != (self.side is None):
            raise ValueError("level 0 is exactly the empty prefix (no side)")

    def describe(self) -> str:
        if self.level == 0:
            return "ground"
        return f"{self.side.name} {self.level}"


def classify_prefix(q: PrenexQbf) -> PrefixClass:
    """Count maximal blocks of equal quantifiers; side comes from the first."""
    if not q.prefix:
        return PrefixClass(0, None)
    blocks = 1
    prev = q.prefix[0][0]
    for quant, _ in q.prefix[1:]:
        if quant is not prev:
            blocks += 1
            prev = quant
    first = q.prefix[0][0]
    side = PrefixSide.SIGMA if first is Quantifier.EXISTS else PrefixSide.PI
    return PrefixClass(blocks, side)


@dataclass
class EvalStats:
    """Mutable counter handed to evaluate_qbf; accumulates across calls."""

    nodes_visited: int = 0


def evaluate_qbf(
    q: PrenexQbf,
    *,
    short_circuit: bool = True,
    stats: EvalStats | None = None,
) -> int:
    """Decide a closed prenex QBF by quantifier recursion; returns 0 or 1.

    Every recursion node (including the ground base cases) counts as one
    visited node; with ``short_circuit`` off the count is exactly
    2**(m+1) - 1 for prefix length m.
    """
    m = len(q.prefix)
    quants = [entry[0] for entry in q.prefix]
    nodes = 0

    if m <= _TABLE_EVAL_MAX:
        table_mask = formula_to_truth_table(q.matrix, q.prefix_vars).mask

        def rec(i: int, acc: int) -> int:
            nonlocal nodes
            nodes += 1
            if i == m:
                return (table_mask >> acc) & 1
            quant = quants[i]
            first = rec(i + 1, acc << 1)
            if short_circuit:
                if quant is Quantifier.EXISTS and first == 1:
                    return 1
                if quant is Quantifier.FORALL and first == 0:
                    return 0
            second = rec(i + 1, (acc << 1) | 1)
            if quant is Quantifier.EXISTS:
                return first | second
            return first & second

        result = rec(0, 0)
    else:
        env: dict[int, int] = {}

        def rec_env(i: int) -> int:
            nonlocal nodes
            nodes += 1
            if i == m:
                return eval_formula(q.matrix, env)
            quant, var = q.prefix[i]
            env[var] = 0
            first = rec_env(i + 1)
            if short_circuit and (
                (quant is Quantifier.EXISTS and first == 1)
                or (quant is Quantifier.FORALL and first == 0)
            ):
                del env[var]
                return first
            env[var] = 1
            second = rec_env(i + 1)
            del env[var]
            if quant is Quantifier.EXISTS:
                return first | second
            return first & second

        result = rec_env(0)

    if stats is not None:
        stats.nodes_visited += nodes
    return result


def substitute(q: PrenexQbf, var: int, bit: int) -> PrenexQbf:
    """Strip the first prefix variable, which must be ``var``, and plug in
    the constant ``bit`` for it in the matrix."""
    if not q.prefix or q.prefix[0][1] != var:
        raise ValueError(f"variable {var} is not first in the prefix")
    if bit not in (0, 1):
        raise ValueError(f"substituted value must be 0 or 1, got {bit!r}")
    return PrenexQbf(q.prefix[1:], substitute_vars(q.matrix, {var: Const(bit)}))


def is_tautology(
    f: Formula,
    var_order: Iterable[int],
    *,
    max_arity: int = TABLE_ARITY_CAP,
) -> int:
    """1 iff ``f`` is true under every assignment of ``var_order``."""
    table = formula_to_truth_table(f, var_order, max_arity=max_arity)
    return 1 if table.mask == (1 << table.n_rows) - 1 else 0
