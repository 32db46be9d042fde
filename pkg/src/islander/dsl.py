"""Text format for puzzles: a small `.puz` DSL, its parser and serializer.

The grammar is documented in docs/grammar.md. Parsing is total: any input
either yields a validated Puzzle or raises ParseError with a 1-based source
span covering the offending token. serialize() emits a canonical form with
the round-trip law parse(serialize(p)) == p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    ALL_TYPES,
    And,
    AtMostDistinct,
    Const,
    CountCmp,
    ExactTruthTellers,
    Formula,
    Free,
    FromIsland,
    Guilty,
    HasType,
    Iff,
    Implies,
    Island,
    KnowsWhodunit,
    LiesWhenAskedGuilt,
    Not,
    OneOfEach,
    Or,
    Puzzle,
    PuzzleError,
    SpeakerType,
    Statement,
    Truthful,
    TypeCardinality,
    replace_person,
)

FILE_EXTENSION = ".puz"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int


class ParseError(Exception):
    def __init__(self, span: SourceSpan, message: str, expected: tuple[str, ...] = ()):
        self.span = span
        self.message = message
        self.expected = expected
        text = f"{span.line}:{span.column}: {message}"
        if expected:
            text += " (expected " + ", ".join(expected) + ")"
        super().__init__(text)


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "int", "string", "eof", or the punctuation itself
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, max(1, len(self.text)))


_PUNCT = ("<->", "->", "<=", ">=", "{", "}", "(", ")", ",", ";", ":", "=")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")

KEYWORDS = frozenset({
    "puzzle", "suspects", "island", "types", "criminals", "typecount",
    "statement", "axiom", "unmodeled", "forall", "in",
    "one_of_each", "exactly", "at_most_distinct",
    "truthtellers", "liars", "mixed",
    "guilty", "type", "count", "truthful", "lies_about_guilt",
    "knows_whodunit", "free", "true", "false",
    "not", "and", "or",
    "AT", "PT", "AL", "RL",
})

ATOM_EXPECTED = (
    "guilty", "type", "island", "count", "truthful", "lies_about_guilt",
    "knows_whodunit", "free", "true", "false", "not", "'('",
)


def _lex(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(Token("ident", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        m = _INT_RE.match(text, i)
        if m:
            tokens.append(Token("int", m.group(), line, col))
            col += len(m.group())
            i = m.end()
            continue
        if ch == '"':
            start_line, start_col = line, col
            j = i + 1
            raw: list[str] = []
            while j < n and text[j] not in ('"', "\n"):
                if text[j] == "\\":
                    if j + 1 >= n or text[j + 1] not in ('"', "\\"):
                        raise ParseError(
                            SourceSpan(start_line, start_col + (j - i), 2),
                            "bad string escape", ("\\\"", "\\\\"),
                        )
                    raw.append(text[j + 1])
                    j += 2
                else:
                    raw.append(text[j])
                    j += 1
            if j >= n or text[j] == "\n":
                raise ParseError(
                    SourceSpan(start_line, start_col, j - i),
                    "unterminated string literal",
                )
            tokens.append(Token("string", "".join(raw), start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        for punct in _PUNCT:
            if text.startswith(punct, i):
                tokens.append(Token(punct, punct, line, col))
                col += len(punct)
                i += len(punct)
                break
        else:
            raise ParseError(SourceSpan(line, col, 1), f"unexpected character {ch!r}")
    tokens.append(Token("eof", "end of input", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "ident" and tok.text == word

    def eat_keyword(self, word: str) -> bool:
        if self.at_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> Token:
        tok = self.peek()
        if not self.at_keyword(word):
            raise ParseError(tok.span, f"unexpected token '{tok.text}'", (word,))
        return self.advance()

    def expect_punct(self, punct: str) -> Token:
        tok = self.peek()
        if tok.kind != punct:
            raise ParseError(tok.span, f"unexpected token '{tok.text}'", (f"'{punct}'",))
        return self.advance()

    def expect_int(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            raise ParseError(tok.span, f"unexpected token '{tok.text}'", ("an integer",))
        self.advance()
        return int(tok.text)

    def expect_name(self, what: str) -> Token:
        """A fresh identifier, i.e. not one of the grammar's reserved words."""
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(tok.span, f"unexpected token '{tok.text}'", (what,))
        if tok.text in KEYWORDS:
            raise ParseError(tok.span, f"the keyword '{tok.text}' cannot be used as {what}")
        return self.advance()


class _PuzzleBuilder:
    def __init__(self) -> None:
        self.suspects: list[str] = []
        self.island: Island | str | None = None
        self.explicit_types: dict[str, frozenset[SpeakerType]] = {}
        self.count: CountCmp | None = None
        self.count_axioms: list[Formula] = []
        self.cardinality: TypeCardinality | None = None
        self.cardinality_tok: Token | None = None
        self.statements: list[Statement] = []
        self.labels: set[str] = set()
        self.modeled_labels: set[str] = set()
        self.axioms: list[Formula] = []


_TYPE_BY_NAME = {t.value: t for t in ALL_TYPES}
_SPEAKER_TYPE_NAMES = tuple(t.value for t in ALL_TYPES)


def parse(text: str) -> Puzzle:
    """Parse DSL source into a validated Puzzle, or raise ParseError."""
    p = _Parser(_lex(text))
    b = _PuzzleBuilder()

    p.expect_keyword("puzzle")
    p.expect_punct("{")
    while p.peek().kind != "}":
        _parse_item(p, b)
    closing = p.expect_punct("}")
    tail = p.peek()
    if tail.kind != "eof":
        raise ParseError(tail.span, f"unexpected token '{tail.text}' after the puzzle block")

    if not b.suspects:
        raise ParseError(closing.span, "missing suspects directive")
    if b.count is None:
        raise ParseError(closing.span, "missing criminals directive")

    default = {
        None: frozenset(ALL_TYPES),
        "mixed": frozenset(ALL_TYPES),
        "truthtellers": frozenset(
            {SpeakerType.ABSOLUTE_TRUTH_TELLER, SpeakerType.PARTIAL_TRUTH_TELLER}
        ),
        "liars": frozenset({SpeakerType.ABSOLUTE_LIAR, SpeakerType.RESPONSIBLE_LIAR}),
    }[b.island]
    type_domain = {s: b.explicit_types.get(s, default) for s in b.suspects}

    if isinstance(b.cardinality, OneOfEach) and len(b.suspects) != len(ALL_TYPES):
        raise ParseError(b.cardinality_tok.span,
                         "typecount one_of_each needs exactly four suspects")
    if isinstance(b.cardinality, ExactTruthTellers) and b.cardinality.n > len(b.suspects):
        raise ParseError(b.cardinality_tok.span,
                         "typecount exceeds the number of suspects")

    puzzle = Puzzle(
        suspects=tuple(b.suspects),
        type_domain=type_domain,
        count=b.count,
        statements=tuple(b.statements),
        axioms=tuple(b.count_axioms) + tuple(b.axioms),
        type_cardinality=b.cardinality,
    )
    try:
        puzzle.validate()
    except PuzzleError as exc:  # backstop; parser checks should catch all of these
        raise ParseError(closing.span, str(exc)) from exc
    return puzzle


def parse_file(path) -> Puzzle:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def _parse_item(p: _Parser, b: _PuzzleBuilder) -> None:
    tok = p.peek()
    if tok.kind != "ident":
        raise ParseError(
            tok.span, f"unexpected token '{tok.text}'",
            ("suspects", "island", "types", "criminals", "typecount", "statement", "axiom"),
        )
    if tok.text == "suspects":
        _parse_suspects(p, b)
    elif tok.text == "island":
        _parse_island(p, b)
    elif tok.text == "types":
        _parse_types(p, b)
    elif tok.text == "criminals":
        _parse_criminals(p, b)
    elif tok.text == "typecount":
        _parse_typecount(p, b)
    elif tok.text == "statement":
        _parse_statement(p, b)
    elif tok.text == "axiom":
        _parse_axiom(p, b)
    else:
        raise ParseError(
            tok.span, f"unknown directive '{tok.text}'",
            ("suspects", "island", "types", "criminals", "typecount", "statement", "axiom"),
        )


def _parse_suspects(p: _Parser, b: _PuzzleBuilder) -> None:
    head = p.expect_keyword("suspects")
    if b.suspects:
        raise ParseError(head.span, "duplicate suspects directive")
    while True:
        tok = p.expect_name("a suspect name")
        if tok.text in b.suspects:
            raise ParseError(tok.span, f"duplicate suspect '{tok.text}'")
        b.suspects.append(tok.text)
        if p.peek().kind != ",":
            break
        p.advance()
    p.expect_punct(";")


def _parse_island(p: _Parser, b: _PuzzleBuilder) -> None:
    head = p.expect_keyword("island")
    if b.island is not None:
        raise ParseError(head.span, "duplicate island directive")
    tok = p.peek()
    if tok.kind == "ident" and tok.text in ("truthtellers", "liars", "mixed"):
        p.advance()
        b.island = tok.text
    else:
        raise ParseError(tok.span, f"unexpected token '{tok.text}'",
                         ("truthtellers", "liars", "mixed"))
    p.expect_punct(";")


def _expect_suspect(p: _Parser, b: _PuzzleBuilder, extra: frozenset[str] = frozenset()) -> str:
    tok = p.peek()
    if tok.kind != "ident":
        raise ParseError(tok.span, f"unexpected token '{tok.text}'", ("a suspect name",))
    if tok.text not in b.suspects and tok.text not in extra:
        raise ParseError(tok.span, f"unknown suspect '{tok.text}'")
    p.advance()
    return tok.text


def _expect_type_name(p: _Parser) -> SpeakerType:
    tok = p.peek()
    if tok.kind == "ident" and tok.text in _TYPE_BY_NAME:
        p.advance()
        return _TYPE_BY_NAME[tok.text]
    raise ParseError(tok.span, f"unexpected token '{tok.text}'", _SPEAKER_TYPE_NAMES)


def _parse_types(p: _Parser, b: _PuzzleBuilder) -> None:
    p.expect_keyword("types")
    suspect_tok = p.peek()
    suspect = _expect_suspect(p, b)
    if suspect in b.explicit_types:
        raise ParseError(suspect_tok.span, f"duplicate types directive for '{suspect}'")
    p.expect_punct(":")
    p.expect_punct("{")
    allowed: set[SpeakerType] = set()
    while p.peek().kind != "}":
        allowed.add(_expect_type_name(p))
        if p.peek().kind == ",":
            p.advance()
        else:
            break
    brace = p.expect_punct("}")
    if not allowed:
        raise ParseError(brace.span, f"empty type domain for suspect '{suspect}'")
    p.expect_punct(";")
    b.explicit_types[suspect] = frozenset(allowed)


def _parse_criminals(p: _Parser, b: _PuzzleBuilder) -> None:
    head = p.expect_keyword("criminals")
    if b.count is not None:
        raise ParseError(head.span, "duplicate criminals directive")
    tok = p.peek()
    if tok.kind in ("=", "<=", ">="):
        p.advance()
        b.count = CountCmp(tok.kind, p.expect_int())
    elif p.at_keyword("in"):
        p.advance()
        p.expect_punct("{")
        values: list[int] = [p.expect_int()]
        while p.peek().kind == ",":
            p.advance()
            values.append(p.expect_int())
        p.expect_punct("}")
        values = sorted(set(values))
        # Lowered form: a weak lower bound plus a disjunction of exact counts.
        b.count = CountCmp(">=", values[0])
        if len(values) > 1:
            disjunction: Formula = CountCmp("=", values[0])
            for v in values[1:]:
                disjunction = Or(disjunction, CountCmp("=", v))
            b.count_axioms.append(disjunction)
    else:
        raise ParseError(tok.span, f"unexpected token '{tok.text}'",
                         ("'='", "'<='", "'>='", "in"))
    p.expect_punct(";")


def _parse_typecount(p: _Parser, b: _PuzzleBuilder) -> None:
    head = p.expect_keyword("typecount")
    if b.cardinality is not None:
        raise ParseError(head.span, "duplicate typecount directive")
    tok = p.peek()
    if p.eat_keyword("one_of_each"):
        b.cardinality = OneOfEach()
    elif p.eat_keyword("exactly"):
        n = p.expect_int()
        p.expect_keyword("truthtellers")
        b.cardinality = ExactTruthTellers(n)
    elif p.eat_keyword("at_most_distinct"):
        n = p.expect_int()
        if n < 1:
            raise ParseError(tok.span, "at_most_distinct bound must be at least 1")
        b.cardinality = AtMostDistinct(n)
    else:
        raise ParseError(tok.span, f"unexpected token '{tok.text}'",
                         ("one_of_each", "exactly", "at_most_distinct"))
    b.cardinality_tok = head
    p.expect_punct(";")


def _parse_statement(p: _Parser, b: _PuzzleBuilder) -> None:
    p.expect_keyword("statement")
    label_tok = p.expect_name("a statement label")
    if label_tok.text in b.labels:
        raise ParseError(label_tok.span, f"duplicate statement label '{label_tok.text}'")
    speaker = _expect_suspect(p, b)
    p.expect_punct(":")
    if p.at_keyword("unmodeled"):
        p.advance()
        text_tok = p.peek()
        if text_tok.kind != "string":
            raise ParseError(text_tok.span, f"unexpected token '{text_tok.text}'",
                             ("a quoted string",))
        p.advance()
        stmt = Statement(label_tok.text, speaker, body=None, text=text_tok.text)
    else:
        body = _parse_formula(p, b)
        stmt = Statement(label_tok.text, speaker, body=body)
        b.modeled_labels.add(label_tok.text)
    p.expect_punct(";")
    b.labels.add(label_tok.text)
    b.statements.append(stmt)


def _parse_axiom(p: _Parser, b: _PuzzleBuilder) -> None:
    p.expect_keyword("axiom")
    if p.at_keyword("forall"):
        p.advance()
        var_tok = p.expect_name("a quantifier variable")
        if var_tok.text in b.suspects:
            raise ParseError(var_tok.span,
                             f"forall variable '{var_tok.text}' shadows a suspect")
        p.expect_punct(":")
        template = _parse_formula(p, b, extra_persons=frozenset({var_tok.text}))
        for suspect in b.suspects:
            b.axioms.append(replace_person(template, var_tok.text, suspect))
    else:
        b.axioms.append(_parse_formula(p, b))
    p.expect_punct(";")


def _parse_formula(p: _Parser, b: _PuzzleBuilder,
                   extra_persons: frozenset[str] = frozenset()) -> Formula:
    return _parse_iff(p, b, extra_persons)


def _parse_iff(p, b, extra) -> Formula:
    left = _parse_implies(p, b, extra)
    if p.peek().kind == "<->":
        p.advance()
        return Iff(left, _parse_iff(p, b, extra))
    return left


def _parse_implies(p, b, extra) -> Formula:
    left = _parse_or(p, b, extra)
    if p.peek().kind == "->":
        p.advance()
        return Implies(left, _parse_implies(p, b, extra))
    return left


def _parse_or(p, b, extra) -> Formula:
    left = _parse_and(p, b, extra)
    while p.at_keyword("or"):
        p.advance()
        left = Or(left, _parse_and(p, b, extra))
    return left


def _parse_and(p, b, extra) -> Formula:
    left = _parse_unary(p, b, extra)
    while p.at_keyword("and"):
        p.advance()
        left = And(left, _parse_unary(p, b, extra))
    return left


def _parse_unary(p, b, extra) -> Formula:
    if p.at_keyword("not"):
        p.advance()
        return Not(_parse_unary(p, b, extra))
    return _parse_primary(p, b, extra)


def _parse_primary(p, b, extra) -> Formula:
    tok = p.peek()
    if tok.kind == "(":
        p.advance()
        inner = _parse_formula(p, b, extra)
        p.expect_punct(")")
        return inner
    if tok.kind != "ident":
        raise ParseError(tok.span, f"unexpected token '{tok.text}'", ATOM_EXPECTED)

    if tok.text == "guilty":
        p.advance()
        p.expect_punct("(")
        person = _expect_suspect(p, b, extra)
        p.expect_punct(")")
        return Guilty(person)
    if tok.text == "type":
        p.advance()
        p.expect_punct("(")
        person = _expect_suspect(p, b, extra)
        p.expect_punct(")")
        p.expect_punct("=")
        return HasType(person, _expect_type_name(p))
    if tok.text == "island":
        p.advance()
        p.expect_punct("(")
        person = _expect_suspect(p, b, extra)
        p.expect_punct(")")
        p.expect_punct("=")
        isl_tok = p.peek()
        if isl_tok.kind == "ident" and isl_tok.text in ("truthtellers", "liars"):
            p.advance()
            return FromIsland(person, Island(isl_tok.text))
        raise ParseError(isl_tok.span, f"unexpected token '{isl_tok.text}'",
                         ("truthtellers", "liars"))
    if tok.text == "count":
        p.advance()
        op_tok = p.peek()
        if op_tok.kind not in ("=", "<=", ">="):
            raise ParseError(op_tok.span, f"unexpected token '{op_tok.text}'",
                             ("'='", "'<='", "'>='"))
        p.advance()
        return CountCmp(op_tok.kind, p.expect_int())
    if tok.text == "truthful":
        p.advance()
        p.expect_punct("(")
        label_tok = p.peek()
        if label_tok.kind != "ident":
            raise ParseError(label_tok.span, f"unexpected token '{label_tok.text}'",
                             ("a statement label",))
        if label_tok.text not in b.labels:
            raise ParseError(
                label_tok.span,
                f"truthful() reference to '{label_tok.text}', which is not an earlier statement",
            )
        if label_tok.text not in b.modeled_labels:
            raise ParseError(label_tok.span,
                             f"truthful() reference to unmodeled statement '{label_tok.text}'")
        p.advance()
        p.expect_punct(")")
        return Truthful(label_tok.text)
    if tok.text == "lies_about_guilt":
        p.advance()
        p.expect_punct("(")
        person = _expect_suspect(p, b, extra)
        p.expect_punct(")")
        return LiesWhenAskedGuilt(person)
    if tok.text == "knows_whodunit":
        p.advance()
        p.expect_punct("(")
        person = _expect_suspect(p, b, extra)
        p.expect_punct(")")
        return KnowsWhodunit(person)
    if tok.text == "free":
        p.advance()
        p.expect_punct("(")
        name_tok = p.peek()
        if name_tok.kind != "string":
            raise ParseError(name_tok.span, f"unexpected token '{name_tok.text}'",
                             ("a quoted atom name",))
        if not _IDENT_RE.fullmatch(name_tok.text):
            raise ParseError(name_tok.span,
                             f"free atom name '{name_tok.text}' must be an identifier")
        p.advance()
        p.expect_punct(")")
        return Free(name_tok.text)
    if tok.text == "true":
        p.advance()
        return Const(True)
    if tok.text == "false":
        p.advance()
        return Const(False)
    raise ParseError(tok.span, f"unknown atom '{tok.text}'", ATOM_EXPECTED)


# ---------------------------------------------------------------------------
# Serializer
# ---------------------------------------------------------------------------

_PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5}


def _prec(formula: Formula) -> int:
    return _PRECEDENCE.get(type(formula), 6)


def format_formula(formula: Formula) -> str:
    """Deterministic concrete syntax, parenthesized just enough to reparse
    into a structurally identical tree."""
    match formula:
        case Const(value):
            return "true" if value else "false"
        case Guilty(person):
            return f"guilty({person})"
        case HasType(person, speaker_type):
            return f"type({person})={speaker_type.value}"
        case FromIsland(person, island):
            return f"island({person})={island.value}"
        case CountCmp(op, k):
            return f"count {op} {k}"
        case Truthful(label):
            return f"truthful({label})"
        case LiesWhenAskedGuilt(person):
            return f"lies_about_guilt({person})"
        case KnowsWhodunit(person):
            return f"knows_whodunit({person})"
        case Free(name):
            return f'free("{name}")'
        case Not(operand):
            inner = format_formula(operand)
            if _prec(operand) < _PRECEDENCE[Not]:
                inner = f"({inner})"
            return f"not {inner}"
        case And(left, right):
            return _format_binary(left, right, "and", _PRECEDENCE[And], right_assoc=False)
        case Or(left, right):
            return _format_binary(left, right, "or", _PRECEDENCE[Or], right_assoc=False)
        case Implies(left, right):
            return _format_binary(left, right, "->", _PRECEDENCE[Implies], right_assoc=True)
        case Iff(left, right):
            return _format_binary(left, right, "<->", _PRECEDENCE[Iff], right_assoc=True)
        case _:
            raise ValueError(f"cannot format {formula!r}")


def _format_binary(left: Formula, right: Formula, op: str, prec: int, right_assoc: bool) -> str:
    ls = format_formula(left)
    rs = format_formula(right)
    if _prec(left) < prec or (right_assoc and _prec(left) == prec):
        ls = f"({ls})"
    if _prec(right) < prec or (not right_assoc and _prec(right) == prec):
        rs = f"({rs})"
    return f"{ls} {op} {rs}"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def serialize(puzzle: Puzzle) -> str:
    """Canonical DSL text for a well-formed puzzle.

    Type domains are always written explicitly (no island shorthand), so two
    structurally equal puzzles serialize to identical bytes.
    """
    lines = ["puzzle {"]
    lines.append("  suspects " + ", ".join(puzzle.suspects) + ";")
    for suspect in puzzle.suspects:
        names = [t.value for t in ALL_TYPES if t in puzzle.type_domain[suspect]]
        lines.append(f"  types {suspect}: {{" + ", ".join(names) + "};")
    lines.append(f"  criminals {puzzle.count.op} {puzzle.count.k};")
    card = puzzle.type_cardinality
    if isinstance(card, OneOfEach):
        lines.append("  typecount one_of_each;")
    elif isinstance(card, ExactTruthTellers):
        lines.append(f"  typecount exactly {card.n} truthtellers;")
    elif isinstance(card, AtMostDistinct):
        lines.append(f"  typecount at_most_distinct {card.n};")
    for stmt in puzzle.statements:
        if stmt.body is None:
            lines.append(
                f'  statement {stmt.label} {stmt.speaker}: unmodeled "{_escape(stmt.text or "")}";'
            )
        else:
            lines.append(
                f"  statement {stmt.label} {stmt.speaker}: {format_formula(stmt.body)};"
            )
    for axiom in puzzle.axioms:
        lines.append(f"  axiom {format_formula(axiom)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
