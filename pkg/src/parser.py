"""
Text syntax for words, systems and points.

    system := word ((';' | newline)+ word)*      equation sugar: word '=' word
    word   := term+                              term := atom ('^' int)?
    atom   := var | const | '1' | '[' word (',' word)+ ']' | '(' word ')'
    var    := 'x' [1-9][0-9]*                    const := "'" label "'"

`u = v` becomes u v^-1 and `[u, v, w]` is the left-aligned commutator.
Inside a quoted label, backslash escapes a quote or a backslash. Newlines
inside brackets or parentheses are plain whitespace.
"""
import re
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from .errors import BadParameter, ModeMismatch, VariableOutOfRange, WordSyntaxError
from .groups import INDEX_DTYPE, FiniteGroup
from .words import (Const, EquationSystem, Var, Word, empty_word, left_commutator,
                    make_word, word_inverse, word_power, word_product)

_TOKEN_RE = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<var>x[0-9]+)
  | (?P<const>'(?:[^'\\]|\\.)*')
  | (?P<int>-?[0-9]+)
  | (?P<punct>[\[\](),^=;])
""", re.VERBOSE)

_OPENERS = {"[": "]", "(": ")"}

_QUOTED_RE = re.compile(r"'(?:[^'\\]|\\.)*'")


@dataclass(frozen=True)
class Token:
    kind: str       # var | const | int | punct | sep | end
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    depth = 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            if text[pos] == "'":
                raise WordSyntaxError("unterminated label", pos)
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        value = match.group()
        if kind == "newline":
            if depth == 0:
                tokens.append(Token("sep", value, pos))
        elif kind == "punct" and value == ";":
            tokens.append(Token("sep", value, pos))
        elif kind != "space":
            if kind == "punct":
                if value in _OPENERS:
                    depth += 1
                elif value in "])":
                    depth = max(depth - 1, 0)
            tokens.append(Token(kind, value, pos))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def unquote_label(token_text: str) -> str:
    return re.sub(r"\\(.)", r"\1", token_text[1:-1])


class _Parser:
    def __init__(self, text: str, n_vars: int, group: FiniteGroup, coefficient_mode: bool) -> None:
        self.tokens = tokenize(text)
        self.i = 0
        self.n_vars = n_vars
        self.group = group
        self.coefficient_mode = coefficient_mode

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect(self, text: str) -> Token:
        if self.current.text != text or self.current.kind != "punct":
            raise WordSyntaxError(f"expected {text!r}", self.current.position)
        return self.advance()

    def at_atom(self) -> bool:
        tok = self.current
        return (tok.kind in ("var", "const")
                or (tok.kind == "int" and tok.text == "1")
                or (tok.kind == "punct" and tok.text in _OPENERS))

    def skip_separators(self) -> None:
        while self.current.kind == "sep":
            self.advance()

    # grammar

    def system(self) -> List[Word]:
        words = []
        self.skip_separators()
        while self.current.kind != "end":
            words.append(self.equation())
            if self.current.kind not in ("sep", "end"):
                raise WordSyntaxError(f"unexpected {self.current.text!r}", self.current.position)
            self.skip_separators()
        return words

    def equation(self) -> Word:
        left = self.word()
        if self.current.kind == "punct" and self.current.text == "=":
            self.advance()
            right = self.word()
            return word_product(left, word_inverse(right))
        return left

    def word(self) -> Word:
        if not self.at_atom():
            raise WordSyntaxError("expected a word", self.current.position)
        acc = empty_word(self.group, self.n_vars, self.coefficient_mode)
        while self.at_atom():
            acc = word_product(acc, self.term())
        return acc

    def term(self) -> Word:
        atom = self.atom()
        if self.current.kind == "punct" and self.current.text == "^":
            self.advance()
            if self.current.kind != "int":
                raise WordSyntaxError("expected an integer exponent", self.current.position)
            atom = word_power(atom, int(self.advance().text))
        return atom

    def atom(self) -> Word:
        tok = self.advance()
        if tok.kind == "var":
            digits = tok.text[1:]
            if digits.startswith("0"):
                raise WordSyntaxError(f"bad variable name {tok.text!r}", tok.position)
            index = int(digits)
            if index > self.n_vars:
                raise VariableOutOfRange(index, self.n_vars)
            return make_word(self.group, self.n_vars, [Var(index, 1)], self.coefficient_mode)
        if tok.kind == "const":
            if not self.coefficient_mode:
                raise ModeMismatch(f"constant {tok.text} in a coefficient-free word")
            element = self.group.index_of(unquote_label(tok.text))
            return make_word(self.group, self.n_vars, [Const(element)], True)
        if tok.kind == "int":
            return empty_word(self.group, self.n_vars, self.coefficient_mode)
        if tok.text == "(":
            inner = self.word()
            self.expect(")")
            return inner
        # '[' word (',' word)+ ']'
        entries = [self.word()]
        while self.current.kind == "punct" and self.current.text == ",":
            self.advance()
            entries.append(self.word())
        if len(entries) < 2:
            raise WordSyntaxError("a commutator needs at least two entries", self.current.position)
        self.expect("]")
        return left_commutator(entries)


def parse(text: str, n_vars: int, G: FiniteGroup,
          coefficient_mode: bool = True) -> Union[Word, EquationSystem]:
    """A single word (or equation) gives a Word; separated entries give a system."""
    parser = _Parser(text, n_vars, G, coefficient_mode)
    words = parser.system()
    has_separator = any(tok.kind == "sep" for tok in parser.tokens)
    if len(words) == 1 and not has_separator:
        return words[0]
    return EquationSystem(G, n_vars, tuple(words), coefficient_mode, source_text=text)


def parse_word(text: str, n_vars: int, G: FiniteGroup, coefficient_mode: bool = True) -> Word:
    parser = _Parser(text, n_vars, G, coefficient_mode)
    word = parser.equation()
    if parser.current.kind != "end":
        raise WordSyntaxError(f"unexpected {parser.current.text!r}", parser.current.position)
    return word


def parse_system(text: str, n_vars: int, G: FiniteGroup,
                 coefficient_mode: bool = True) -> EquationSystem:
    words = _Parser(text, n_vars, G, coefficient_mode).system()
    return EquationSystem(G, n_vars, tuple(words), coefficient_mode, source_text=text)


def _split_points(text: str) -> List[List[tuple]]:
    """Split on ';'/newline (points) and ',' (coordinates) outside quotes and parentheses."""
    points: List[List[tuple]] = []
    coords: List[tuple] = []
    buf: List[str] = []
    start: Optional[int] = None
    depth = 0
    pos = 0

    def flush_coord() -> None:
        nonlocal buf, start
        coords.append(("".join(buf).strip(), start if start is not None else pos))
        buf, start = [], None

    while pos < len(text):
        ch = text[pos]
        if ch == "'":
            match = _QUOTED_RE.match(text, pos)
            if match is None:
                raise WordSyntaxError("unterminated label", pos)
            if "".join(buf).strip():
                raise WordSyntaxError("quoted label inside a bare label", pos)
            buf = ["\0" + unquote_label(match.group())]
            start = pos
            pos = match.end()
            continue
        if depth == 0 and ch in ",;\n":
            flush_coord()
            if ch != ",":
                points.append(coords)
                coords = []
        else:
            if buf and buf[0].startswith("\0") and not ch.isspace():
                raise WordSyntaxError("unexpected text after a quoted label", pos)
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth = max(depth - 1, 0)
            if start is None and not ch.isspace():
                start = pos
            buf.append(ch)
        pos += 1
    flush_coord()
    points.append(coords)
    return [p for p in points if not (len(p) == 1 and p[0][0] == "")]


def parse_points(text: str, n_vars: int, G: FiniteGroup) -> np.ndarray:
    """Points such as "'a', e; e, e" as an (N, n_vars) index array."""
    rows = []
    for coords in _split_points(text):
        if len(coords) != n_vars:
            position = coords[0][1] if coords else 0
            raise WordSyntaxError(f"point has {len(coords)} coordinates, expected {n_vars}",
                                  position)
        row = []
        for label, position in coords:
            if not label:
                raise WordSyntaxError("empty coordinate", position)
            row.append(G.index_of(label[1:] if label.startswith("\0") else label))
        rows.append(row)
    if not rows:
        raise BadParameter("no points given")
    return np.array(rows, dtype=INDEX_DTYPE)
