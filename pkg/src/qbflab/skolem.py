"""Skolem functions as truth tables, certificate verification, and the
exhaustive witness searches.

A certificate assigns each existential variable a boolean function over
the universals that precede it in the prefix.  The certificate space for
one existential with u preceding universals has 2**(2**u) candidate
tables; candidates are enumerated as plain integers whose bit r is the
table value at row r, and whole certificates in lexicographic product
order with the outermost existential most significant.  The search
refuses (rather than truncates) when the candidate space exceeds its
budget, reporting the exact count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .formula import (
    Formula,
    TruthTable,
    anf_coefficient_mask,
    formula_to_truth_table,
    substitute_vars,
    truth_table_to_anf,
)
from .qbf import PrenexQbf, Quantifier, is_tautology

#: Refuse searches whose certificate space exceeds this many candidates.
DEFAULT_SEARCH_BUDGET = 1 << 20


class CertificateMismatchError(Exception):
    """Certificate domain or dependency lists do not match the formula."""


class BudgetExceededError(Exception):
    """The certificate space is too large to enumerate."""

    def __init__(self, space_size: int, budget: int):
        self.space_size = space_size
        self.budget = budget
        super().__init__(
            f"certificate space has {space_size} candidates, exceeding the budget of {budget}"
        )


@dataclass(frozen=True)
class SkolemFunction:
    """One existential variable realized as a table over its dependencies."""

    target: int
    deps: tuple[int, ...]
    table: TruthTable

    def __post_init__(self):
        object.__setattr__(self, "deps", tuple(self.deps))
        if self.table.var_order != self.deps:
            raise ValueError("table var_order must equal deps")
        if self.table.arity != len(self.deps):
            raise ValueError("table arity must equal len(deps)")


@dataclass(frozen=True)
class SkolemCertificate:
    """A Skolem function for every existential variable of one formula."""

    functions: tuple[SkolemFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        targets = [fn.target for fn in self.functions]
        if len(set(targets)) != len(targets):
            raise ValueError("certificate has two functions for one variable")

    def function_for(self, var: int) -> SkolemFunction:
        for fn in self.functions:
            if fn.target == var:
                return fn
        raise KeyError(var)

    @property
    def targets(self) -> frozenset[int]:
        return frozenset(fn.target for fn in self.functions)


def existential_dependencies(q: PrenexQbf) -> dict[int, tuple[int, ...]]:
    """For each existential variable, the universals preceding it in order."""
    deps: dict[int, tuple[int, ...]] = {}
    seen_universals: list[int] = []
    for quant, var in q.prefix:
        if quant is Quantifier.FORALL:
            seen_universals.append(var)
        else:
            deps[var] = tuple(seen_universals)
    return deps


def _check_certificate(q: PrenexQbf, cert: SkolemCertificate) -> dict[int, SkolemFunction]:
    expected = existential_dependencies(q)
    if cert.targets != frozenset(expected):
        raise CertificateMismatchError(
            f"certificate covers {sorted(cert.targets)}, formula has existentials "
            f"{sorted(expected)}"
        )
    by_target: dict[int, SkolemFunction] = {}
    for fn in cert.functions:
        if fn.deps != expected[fn.target]:
            raise CertificateMismatchError(
                f"function for variable {fn.target} depends on {list(fn.deps)}, "
                f"expected {list(expected[fn.target])}"
            )
        by_target[fn.target] = fn
    return by_target


def skolem_substitute(q: PrenexQbf, cert: SkolemCertificate) -> Formula:
    """Replace each existential variable by its table rendered as an ANF
    expression, leaving a quantifier-free formula over the universals."""
    by_target = _check_certificate(q, cert)
    mapping = {
        var: truth_table_to_anf(fn.table).to_formula() for var, fn in by_target.items()
    }
    return substitute_vars(q.matrix, mapping)


def verify_certificate(q: PrenexQbf, cert: SkolemCertificate) -> int:
    """1 iff substituting the certificate yields a tautology over the
    universal variables."""
    return is_tautology(skolem_substitute(q, cert), q.universals)


def certificate_space_size(q: PrenexQbf) -> int:
    """Number of candidate certificates: product of 2**(2**u) per existential."""
    size = 1
    for deps in existential_dependencies(q).values():
        size *= 1 << (1 << len(deps))
    return size


class _CertificateChecker:
    """Precomputed context for checking many candidate certificates fast.

    The matrix is tabulated once over the prefix order.  For a universal
    assignment u (prefix-ordered bits, first universal most significant)
    the dependency row of an existential is simply the top bits of u, so a
    candidate check is a handful of shifts per assignment.
    """

    def __init__(self, q: PrenexQbf):
        self.q = q
        prefix_vars = q.prefix_vars
        m = len(prefix_vars)
        self.matrix_mask = formula_to_truth_table(q.matrix, prefix_vars).mask
        universal_positions = [i for i, (quant, _) in enumerate(q.prefix) if quant is Quantifier.FORALL]
        self.n_universals = len(universal_positions)
        self.ex_targets: list[int] = []
        self.ex_deps: list[tuple[int, ...]] = []
        ex_shift: list[int] = []
        ex_rowbit: list[int] = []
        seen_universals = 0
        for i, (quant, var) in enumerate(q.prefix):
            if quant is Quantifier.FORALL:
                seen_universals += 1
            else:
                self.ex_targets.append(var)
                self.ex_deps.append(tuple(prefix_vars[p] for p in universal_positions[:seen_universals]))
                ex_shift.append(self.n_universals - seen_universals)
                ex_rowbit.append(m - 1 - i)
        self.spaces = [1 << (1 << len(deps)) for deps in self.ex_deps]
        self.ex_info = list(zip(ex_shift, ex_rowbit))
        base_rows = []
        for u in range(1 << self.n_universals):
            row = 0
            for k, pos in enumerate(universal_positions):
                if (u >> (self.n_universals - 1 - k)) & 1:
                    row |= 1 << (m - 1 - pos)
            base_rows.append(row)
        self.base_rows = base_rows

    def verifies(self, tables: Sequence[int]) -> bool:
        mask = self.matrix_mask
        ex_info = self.ex_info
        for u, row in enumerate(self.base_rows):
            for t, (shift, rowbit) in zip(tables, ex_info):
                if (t >> (u >> shift)) & 1:
                    row |= 1 << rowbit
            if not (mask >> row) & 1:
                return False
        return True

    def certificate(self, tables: Sequence[int]) -> SkolemCertificate:
        functions = tuple(
            SkolemFunction(var, deps, TruthTable(len(deps), t, deps))
            for var, deps, t in zip(self.ex_targets, self.ex_deps, tables)
        )
        return SkolemCertificate(functions)


def exists_skolem_witness(
    q: PrenexQbf,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> tuple[int, Optional[SkolemCertificate]]:
    """Exhaustively search for a verifying certificate.

    Returns ``(1, certificate)`` for the lexicographically first verifying
    candidate, or ``(0, None)`` when none of them verifies.  Raises
    BudgetExceededError (with the exact candidate count) when the space is
    larger than ``budget``.
    """
    space = certificate_space_size(q)
    if space > budget:
        raise BudgetExceededError(space, budget)
    checker = _CertificateChecker(q)
    for tables in itertools.product(*(range(s) for s in checker.spaces)):
        if checker.verifies(tables):
            return 1, checker.certificate(tables)
    return 0, None


def table_anf_sizes(n_deps: int) -> list[int]:
    """ANF monomial count of every table over ``n_deps`` variables."""
    return [
        anf_coefficient_mask(t, n_deps).bit_count() for t in range(1 << (1 << n_deps))
    ]


def bounded_skolem_decision(
    q: PrenexQbf,
    size_bound: int,
    *,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> int:
    """Like the unbounded search, but only certificates all of whose
    functions have ANF monomial count <= ``size_bound`` are admitted.

    Monotone non-decreasing in the bound, and equal to the unbounded
    search once the bound reaches 2**u for every existential.
    """
    if size_bound < 0:
        raise ValueError("size bound must be non-negative")
    space = certificate_space_size(q)
    if space > budget:
        raise BudgetExceededError(space, budget)
    checker = _CertificateChecker(q)
    allowed: list[list[int]] = []
    for deps in checker.ex_deps:
        sizes = table_anf_sizes(len(deps))
        allowed.append([t for t, s in enumerate(sizes) if s <= size_bound])
    for tables in itertools.product(*allowed):
        if checker.verifies(tables):
            return 1
    return 0


def max_anf_bound(q: PrenexQbf) -> int:
    """Smallest bound at which the bounded search saturates: the largest
    possible monomial count, 2**u, over the existentials."""
    deps = existential_dependencies(q)
    if not deps:
        return 0
    return max(1 << len(d) for d in deps.values())
