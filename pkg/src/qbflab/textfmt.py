"""Text format for prenex QBFs: quantifier lines followed by an infix matrix.

    forall x1 x2
    exists y1
    x1 & (y1 | !x2) ^ 0

Quantifier lines start with ``forall`` or ``exists`` and list one or more
identifiers; the rest of the document is a single expression over the
operators ``!  &  ^  |`` (tightest first), parentheses, and the constants
``0`` and ``1``.  Identifiers of the form ``v<digits>`` (no leading zero)
denote the variable with that id directly; all other names are assigned
the smallest ids not taken that way, in order of first occurrence.  That
rule makes print -> parse reproduce variable ids exactly.

Full grammar notes live in docs/formats.md.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .formula import And, Const, Formula, Not, Or, Var, Xor
from .qbf import PrenexQbf, Quantifier

_KEYWORDS = ("forall", "exists")
_CANONICAL_NAME = re.compile(r"v([1-9][0-9]*)")
_MAX_NESTING = 100


class TextFormatError(Exception):
    """Positioned diagnostic for the text format (1-based line/column)."""

    def __init__(self, message: str, line: int, col: int, *, expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.col = col
        self.expected = expected
        super().__init__(f"{line}:{col}: {message}")


class QbfSyntaxError(TextFormatError):
    pass


class UnboundVariableError(TextFormatError):
    pass


class DuplicateQuantifierError(TextFormatError):
    pass


@dataclass(frozen=True)
class QbfDocument:
    """Parsed formula plus the surface names of its variables."""

    qbf: PrenexQbf
    names: Mapping[int, str]

    def text(self) -> str:
        return print_qbf(self.qbf, names=self.names)


# ---------------------------------------------------------------------------
# Tokenizer

_IDENT_START = lambda c: c.isalpha() or c == "_"
_IDENT_CONT = lambda c: c.isalnum() or c == "_"


@dataclass(frozen=True)
class _Token:
    kind: str  # NEWLINE IDENT KEYWORD NUMBER OP LPAREN RPAREN EOF
    text: str
    line: int
    col: int


def _decode(source: str | bytes) -> str:
    if isinstance(source, str):
        return source
    try:
        return source.decode("utf-8")
    except UnicodeDecodeError as exc:
        prefix = source[: exc.start].decode("utf-8", "ignore")
        line = prefix.count("\n") + 1
        col = len(prefix) - (prefix.rfind("\n") + 1) + 1
        raise QbfSyntaxError("input is not valid UTF-8", line, col) from None


def _tokenize(text: str) -> Iterator[_Token]:
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            yield _Token("NEWLINE", "\n", line, col)
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        start_col = col
        if _IDENT_START(c):
            j = i + 1
            while j < n and _IDENT_CONT(text[j]):
                j += 1
            word = text[i:j]
            kind = "KEYWORD" if word in _KEYWORDS else "IDENT"
            yield _Token(kind, word, line, start_col)
            col += j - i
            i = j
            continue
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            yield _Token("NUMBER", text[i:j], line, start_col)
            col += j - i
            i = j
            continue
        if c in "!&|^":
            yield _Token("OP", c, line, start_col)
        elif c == "(":
            yield _Token("LPAREN", c, line, start_col)
        elif c == ")":
            yield _Token("RPAREN", c, line, start_col)
        else:
            raise QbfSyntaxError(f"unexpected character {c!r}", line, start_col)
        i += 1
        col += 1
    yield _Token("EOF", "", line, col)


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def _peek(self, *, skip_newlines: bool) -> _Token:
        pos = self.pos
        while skip_newlines and self.tokens[pos].kind == "NEWLINE":
            pos += 1
        return self.tokens[pos]

    def _advance(self, *, skip_newlines: bool) -> _Token:
        while skip_newlines and self.tokens[self.pos].kind == "NEWLINE":
            self.pos += 1
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def _fail(self, tok: _Token, wanted: str, *expected: str) -> None:
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise QbfSyntaxError(f"expected {wanted}, found {found}", tok.line, tok.col, expected=expected)

    # prefix ----------------------------------------------------------------

    def parse_prefix(self) -> list[tuple[Quantifier, str, _Token]]:
        entries: list[tuple[Quantifier, str, _Token]] = []
        while True:
            tok = self._peek(skip_newlines=True)
            if tok.kind != "KEYWORD":
                return entries
            self._advance(skip_newlines=True)
            quant = Quantifier.FORALL if tok.text == "forall" else Quantifier.EXISTS
            count = 0
            while self._peek(skip_newlines=False).kind == "IDENT":
                name_tok = self._advance(skip_newlines=False)
                entries.append((quant, name_tok.text, name_tok))
                count += 1
            nxt = self._peek(skip_newlines=False)
            if count == 0:
                self._fail(nxt, f"a variable name after '{tok.text}'", "identifier")
            if nxt.kind not in ("NEWLINE", "EOF"):
                self._fail(nxt, "end of quantifier line", "newline")

    # expressions -----------------------------------------------------------

    def parse_expression(self):
        expr = self._parse_or(0)
        tail = self._peek(skip_newlines=True)
        if tail.kind != "EOF":
            self._fail(tail, "end of input after the matrix", "end of input")
        return expr

    def _parse_or(self, depth: int):
        parts = [self._parse_xor(depth)]
        while True:
            tok = self._peek(skip_newlines=True)
            if tok.kind == "OP" and tok.text == "|":
                self._advance(skip_newlines=True)
                parts.append(self._parse_xor(depth))
            else:
                return ("or", parts) if len(parts) > 1 else parts[0]

    def _parse_xor(self, depth: int):
        left = self._parse_and(depth)
        while True:
            tok = self._peek(skip_newlines=True)
            if tok.kind == "OP" and tok.text == "^":
                self._advance(skip_newlines=True)
                left = ("xor", left, self._parse_and(depth))
            else:
                return left

    def _parse_and(self, depth: int):
        parts = [self._parse_unary(depth)]
        while True:
            tok = self._peek(skip_newlines=True)
            if tok.kind == "OP" and tok.text == "&":
                self._advance(skip_newlines=True)
                parts.append(self._parse_unary(depth))
            else:
                return ("and", parts) if len(parts) > 1 else parts[0]

    def _parse_unary(self, depth: int):
        if depth > _MAX_NESTING:
            tok = self._peek(skip_newlines=True)
            raise QbfSyntaxError("expression nesting too deep", tok.line, tok.col)
        tok = self._peek(skip_newlines=True)
        if tok.kind == "OP" and tok.text == "!":
            self._advance(skip_newlines=True)
            return ("not", self._parse_unary(depth + 1))
        return self._parse_atom(depth)

    def _parse_atom(self, depth: int):
        tok = self._advance(skip_newlines=True)
        if tok.kind == "IDENT":
            return ("var", tok.text, tok)
        if tok.kind == "KEYWORD":
            self._fail(tok, "an operand (quantifier lines must precede the matrix)", "identifier")
        if tok.kind == "NUMBER":
            if tok.text in ("0", "1"):
                return ("const", int(tok.text))
            self._fail(tok, "a constant 0 or 1", "0", "1")
        if tok.kind == "LPAREN":
            if depth > _MAX_NESTING:
                raise QbfSyntaxError("expression nesting too deep", tok.line, tok.col)
            inner = self._parse_or(depth + 1)
            closer = self._advance(skip_newlines=True)
            if closer.kind != "RPAREN":
                self._fail(closer, "')'", ")")
            return inner
        self._fail(tok, "an operand", "identifier", "0", "1", "(", "!")


def _resolve_names(entries: list[tuple[Quantifier, str, _Token]]) -> dict[str, int]:
    """Map prefix names to ids: v<k> names pin id k, others fill the gaps."""
    ids: dict[str, int] = {}
    taken: set[int] = set()
    for _, name, tok in entries:
        if name in ids:
            raise DuplicateQuantifierError(f"variable {name!r} quantified twice", tok.line, tok.col)
        match = _CANONICAL_NAME.fullmatch(name)
        if match:
            ids[name] = int(match.group(1))
            taken.add(ids[name])
        else:
            ids[name] = 0  # placeholder, filled below in occurrence order
    next_id = 1
    for _, name, _tok in entries:
        if ids[name] == 0:
            while next_id in taken:
                next_id += 1
            ids[name] = next_id
            taken.add(next_id)
    return ids


def _build_formula(raw, ids: Mapping[str, int]) -> Formula:
    tag = raw[0]
    if tag == "var":
        _, name, tok = raw
        if name not in ids:
            raise UnboundVariableError(f"variable {name!r} is not quantified", tok.line, tok.col)
        return Var(ids[name])
    if tag == "const":
        return Const(raw[1])
    if tag == "not":
        return Not(_build_formula(raw[1], ids))
    if tag == "and":
        return And(*(_build_formula(part, ids) for part in raw[1]))
    if tag == "or":
        return Or(*(_build_formula(part, ids) for part in raw[1]))
    if tag == "xor":
        return Xor(_build_formula(raw[1], ids), _build_formula(raw[2], ids))
    raise AssertionError(f"unknown raw node {tag!r}")


def parse_qbf_document(source: str | bytes) -> QbfDocument:
    """Parse the text format, keeping the surface variable names."""
    text = _decode(source)
    tokens = list(_tokenize(text))
    parser = _Parser(tokens)
    entries = parser.parse_prefix()
    raw = parser.parse_expression()
    ids = _resolve_names(entries)
    matrix = _build_formula(raw, ids)
    prefix = tuple((quant, ids[name]) for quant, name, _ in entries)
    qbf = PrenexQbf(prefix, matrix)
    return QbfDocument(qbf, {ids[name]: name for _, name, _ in entries})


def parse_qbf_text(source: str | bytes) -> PrenexQbf:
    """Parse the text format to a prenex QBF."""
    return parse_qbf_document(source).qbf


# ---------------------------------------------------------------------------
# Printer

_PREC_OR = 1
_PREC_XOR = 2
_PREC_AND = 3
_PREC_NOT = 4
_PREC_ATOM = 5


def _is_identifier(name: str) -> bool:
    return (
        bool(name)
        and _IDENT_START(name[0])
        and all(_IDENT_CONT(c) for c in name[1:])
        and name not in _KEYWORDS
    )


def _resolve_printed_names(q: PrenexQbf, names: Optional[Mapping[int, str]]) -> dict[int, str]:
    chosen: dict[int, str] = {}
    for vid in q.prefix_vars:
        name = None if names is None else names.get(vid)
        if name is None:
            name = f"v{vid}"
        if not _is_identifier(name):
            raise ValueError(f"{name!r} is not a printable variable name")
        match = _CANONICAL_NAME.fullmatch(name)
        if match and int(match.group(1)) != vid:
            raise ValueError(f"name {name!r} would re-parse as a different variable id")
        chosen[vid] = name
    if len(set(chosen.values())) != len(chosen):
        raise ValueError("variable names must be unique")
    return chosen


def format_formula(f: Formula, names: Optional[Mapping[int, str]] = None) -> str:
    """Infix rendering of a quantifier-free formula."""
    resolved = dict(names or {})

    def name_of(vid: int) -> str:
        name = resolved.get(vid, f"v{vid}")
        if not _is_identifier(name):
            raise ValueError(f"{name!r} is not a printable variable name")
        return name

    def fmt(node: Formula) -> tuple[str, int]:
        if isinstance(node, Const):
            return str(node.value), _PREC_ATOM
        if isinstance(node, Var):
            return name_of(node.id), _PREC_ATOM
        if isinstance(node, Not):
            text, prec = fmt(node.child)
            if prec < _PREC_NOT:
                text = f"({text})"
            return "!" + text, _PREC_NOT
        if isinstance(node, And):
            parts = []
            for child in node.children:
                text, prec = fmt(child)
                if prec < _PREC_AND or isinstance(child, And):
                    text = f"({text})"
                parts.append(text)
            return " & ".join(parts), _PREC_AND
        if isinstance(node, Xor):
            left_text, left_prec = fmt(node.left)
            if left_prec < _PREC_XOR:
                left_text = f"({left_text})"
            right_text, right_prec = fmt(node.right)
            if right_prec < _PREC_XOR or isinstance(node.right, Xor):
                right_text = f"({right_text})"
            return f"{left_text} ^ {right_text}", _PREC_XOR
        parts = []
        for child in node.children:
            text, prec = fmt(child)
            if isinstance(child, Or):
                text = f"({text})"
            parts.append(text)
        return " | ".join(parts), _PREC_OR

    return fmt(f)[0]


def print_qbf(q: PrenexQbf, names: Optional[Mapping[int, str]] = None) -> str:
    """Render a prenex QBF in the text format; parse(print(q)) equals q."""
    chosen = _resolve_printed_names(q, names)
    lines: list[str] = []
    group: list[str] = []
    group_quant: Optional[Quantifier] = None
    for quant, vid in q.prefix:
        if quant is not group_quant and group:
            lines.append(f"{group_quant.value} {' '.join(group)}")
            group = []
        group_quant = quant
        group.append(chosen[vid])
    if group:
        lines.append(f"{group_quant.value} {' '.join(group)}")
    lines.append(format_formula(q.matrix, chosen))
    return "\n".join(lines)
