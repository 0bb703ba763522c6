"""QDIMACS subset: prenex CNF interchange format.

Reads the usual layout: a ``p cnf <nvars> <nclauses>`` problem line,
``a``/``e`` quantifier lines ending in 0, then one clause per line ending
in 0.  Comment lines start with ``c`` and may appear anywhere; blank
lines are skipped.  Clauses become the canonical And-of-Or shape with
singletons unwrapped, so ``-1 0`` parses to a bare negated literal and a
one-clause file parses to that clause alone.
"""

from __future__ import annotations

from .formula import And, Const, Formula, Not, Or, Var
from .qbf import PrenexQbf, Quantifier


class QdimacsError(Exception):
    """Malformed QDIMACS input (message carries the 1-based line number)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _decode(source: str | bytes) -> str:
    if isinstance(source, str):
        return source
    try:
        return source.decode("ascii")
    except UnicodeDecodeError as exc:
        line = source[: exc.start].count(b"\n") + 1
        raise QdimacsError("input must be ASCII", line) from None


def _clause_formula(literals: list[int]) -> Formula:
    parts: list[Formula] = [
        Var(lit) if lit > 0 else Not(Var(-lit)) for lit in literals
    ]
    if not parts:
        return Const(0)
    if len(parts) == 1:
        return parts[0]
    return Or(*parts)


def parse_qdimacs(source: str | bytes) -> PrenexQbf:
    """Parse a QDIMACS document into a closed prenex QBF."""
    text = _decode(source)
    nvars = nclauses = None
    prefix: list[tuple[Quantifier, int]] = []
    quantified: set[int] = set()
    clauses: list[list[int]] = []
    in_clauses = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if nvars is None:
            if len(tokens) != 4 or tokens[0] != "p" or tokens[1] != "cnf":
                raise QdimacsError("expected problem line 'p cnf <nvars> <nclauses>'", lineno)
            try:
                nvars, nclauses = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise QdimacsError("problem line counts must be integers", lineno) from None
            if nvars < 0 or nclauses < 0:
                raise QdimacsError("problem line counts must be non-negative", lineno)
            continue
        if tokens[0] in ("a", "e"):
            if in_clauses:
                raise QdimacsError("quantifier line after the first clause", lineno)
            if tokens[-1] != "0":
                raise QdimacsError("quantifier line must end with 0", lineno)
            body = tokens[1:-1]
            if not body:
                raise QdimacsError("empty quantifier block", lineno)
            quant = Quantifier.FORALL if tokens[0] == "a" else Quantifier.EXISTS
            for tok in body:
                try:
                    var = int(tok)
                except ValueError:
                    raise QdimacsError(f"bad variable token {tok!r}", lineno) from None
                if not 1 <= var <= nvars:
                    raise QdimacsError(f"variable {var} out of range 1..{nvars}", lineno)
                if var in quantified:
                    raise QdimacsError(f"variable {var} quantified twice", lineno)
                quantified.add(var)
                prefix.append((quant, var))
            continue
        in_clauses = True
        if tokens[-1] != "0":
            raise QdimacsError("clause line must end with 0", lineno)
        literals = []
        for tok in tokens[:-1]:
            try:
                lit = int(tok)
            except ValueError:
                raise QdimacsError(f"bad literal token {tok!r}", lineno) from None
            if lit == 0:
                raise QdimacsError("only one clause per line", lineno)
            if not 1 <= abs(lit) <= nvars:
                raise QdimacsError(f"literal {lit} out of range 1..{nvars}", lineno)
            if abs(lit) not in quantified:
                raise QdimacsError(f"variable {abs(lit)} used but not quantified", lineno)
            literals.append(lit)
        clauses.append(literals)

    if nvars is None:
        raise QdimacsError("missing problem line")
    if len(clauses) != nclauses:
        raise QdimacsError(
            f"problem line announces {nclauses} clauses but {len(clauses)} were given"
        )

    if not clauses:
        matrix: Formula = Const(1)
    elif len(clauses) == 1:
        matrix = _clause_formula(clauses[0])
    else:
        matrix = And(*(_clause_formula(c) for c in clauses))
    return PrenexQbf(tuple(prefix), matrix)


def _literal_of(f: Formula) -> int:
    if isinstance(f, Var):
        return f.id
    if isinstance(f, Not) and isinstance(f.child, Var):
        return -f.child.id
    raise QdimacsError(f"not a CNF literal: {f!r}")


def _clause_of(f: Formula) -> list[int]:
    if isinstance(f, Const):
        if f.value == 0:
            return []
        raise QdimacsError("constant 1 cannot appear as a CNF clause")
    if isinstance(f, Or):
        return [_literal_of(child) for child in f.children]
    return [_literal_of(f)]


def print_qdimacs(q: PrenexQbf) -> str:
    """Serialize a CNF-shaped prenex QBF; inverse of parse_qdimacs on its
    canonical output shapes."""
    ids = sorted(q.prefix_vars)
    if ids and ids != list(range(1, len(ids) + 1)):
        raise QdimacsError("prefix variables must be exactly 1..n for QDIMACS output")
    matrix = q.matrix
    if isinstance(matrix, Const) and matrix.value == 1:
        clauses: list[list[int]] = []
    elif isinstance(matrix, And):
        clauses = [_clause_of(child) for child in matrix.children]
    else:
        clauses = [_clause_of(matrix)]

    lines = [f"p cnf {len(ids)} {len(clauses)}"]
    group: list[int] = []
    group_quant: Quantifier | None = None
    for quant, var in q.prefix:
        if quant is not group_quant and group:
            letter = "a" if group_quant is Quantifier.FORALL else "e"
            lines.append(f"{letter} {' '.join(map(str, group))} 0")
            group = []
        group_quant = quant
        group.append(var)
    if group:
        letter = "a" if group_quant is Quantifier.FORALL else "e"
        lines.append(f"{letter} {' '.join(map(str, group))} 0")
    for clause in clauses:
        lines.append(" ".join(map(str, clause + [0])))
    return "\n".join(lines) + "\n"
