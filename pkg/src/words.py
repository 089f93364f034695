"""
Words of G[X] = G * F(x1, ..., xn) in reduced free-product normal form.

A word is a sequence of letters, each a constant Const(g) with g != 1 or a
variable power Var(i, e) with e != 0. In normal form no two constants are
adjacent and no two powers of the same variable are adjacent; constants fold
through the multiplication table, variable exponents are never reduced.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import Config, get_config
from .errors import BadParameter, BudgetExceeded, ModeMismatch, VariableOutOfRange
from .groups import INDEX_DTYPE, FiniteGroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Const:
    element: int


@dataclass(frozen=True)
class Var:
    index: int          # 1-based, x1 .. xn
    exponent: int = 1


Letter = Union[Const, Var]


def _reduce(letters: Sequence[Letter], mul: np.ndarray) -> Tuple[Letter, ...]:
    """One left-to-right pass with a stack reaches the normal form."""
    out: List[Letter] = []
    for letter in letters:
        if isinstance(letter, Const):
            g = int(letter.element)
            if g == 0:
                continue
            if out and isinstance(out[-1], Const):
                g = int(mul[out.pop().element, g])
                if g == 0:
                    continue
            out.append(Const(g))
        else:
            e = int(letter.exponent)
            if e == 0:
                continue
            top = out[-1] if out else None
            if isinstance(top, Var) and top.index == letter.index:
                out.pop()
                e += top.exponent
                if e == 0:
                    continue
            out.append(Var(letter.index, e))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    group: FiniteGroup = field(compare=False, repr=False)
    n_vars: int
    letters: Tuple[Letter, ...] = ()
    coefficient_mode: bool = True

    def __post_init__(self) -> None:
        for letter in self.letters:
            if isinstance(letter, Var):
                if not 1 <= letter.index <= self.n_vars:
                    raise VariableOutOfRange(letter.index, self.n_vars)
            elif not self.coefficient_mode:
                raise ModeMismatch("constants are not allowed in coefficient-free words")
            elif not 0 <= letter.element < self.group.order:
                raise BadParameter(f"constant {letter.element} is not an element of {self.group.name}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def constants(self) -> Tuple[int, ...]:
        return tuple(letter.element for letter in self.letters if isinstance(letter, Const))

    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({letter.index for letter in self.letters if isinstance(letter, Var)}))


def make_word(group: FiniteGroup, n_vars: int, letters: Sequence[Letter] = (),
              coefficient_mode: bool = True) -> Word:
    """Normalize an arbitrary letter sequence into a Word."""
    raw = Word(group, n_vars, tuple(letters), coefficient_mode)
    return normalize(raw)


def normalize(word: Word) -> Word:
    return Word(word.group, word.n_vars, _reduce(word.letters, word.group.mul),
                word.coefficient_mode)


def empty_word(group: FiniteGroup, n_vars: int, coefficient_mode: bool = True) -> Word:
    return Word(group, n_vars, (), coefficient_mode)


def variable(group: FiniteGroup, n_vars: int, index: int, exponent: int = 1,
             coefficient_mode: bool = True) -> Word:
    return make_word(group, n_vars, [Var(index, exponent)], coefficient_mode)


def constant(group: FiniteGroup, n_vars: int, element: int) -> Word:
    return make_word(group, n_vars, [Const(element)], True)


def _check_compatible(u: Word, v: Word) -> None:
    if u.group is not v.group:
        raise ModeMismatch(f"words over different groups ({u.group.name}, {v.group.name})")
    if u.n_vars != v.n_vars:
        raise ModeMismatch(f"words in {u.n_vars} and {v.n_vars} variables")
    if u.coefficient_mode != v.coefficient_mode:
        raise ModeMismatch("cannot combine coefficient and coefficient-free words")


def word_product(u: Word, v: Word) -> Word:
    _check_compatible(u, v)
    return Word(u.group, u.n_vars, _reduce(u.letters + v.letters, u.group.mul),
                u.coefficient_mode)


def word_inverse(u: Word) -> Word:
    inv = u.group.inv
    letters = tuple(Const(int(inv[l.element])) if isinstance(l, Const) else Var(l.index, -l.exponent)
                    for l in reversed(u.letters))
    return Word(u.group, u.n_vars, letters, u.coefficient_mode)


def word_power(u: Word, e: int) -> Word:
    base = u if e >= 0 else word_inverse(u)
    return Word(u.group, u.n_vars, _reduce(base.letters * abs(e), u.group.mul),
                u.coefficient_mode)


def word_conjugate(u: Word, v: Word) -> Word:
    """u^v = v^-1 u v."""
    return word_product(word_product(word_inverse(v), u), v)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u^-1 v^-1 u v."""
    _check_compatible(u, v)
    letters = word_inverse(u).letters + word_inverse(v).letters + u.letters + v.letters
    return Word(u.group, u.n_vars, _reduce(letters, u.group.mul), u.coefficient_mode)


def left_commutator(words: Sequence[Word]) -> Word:
    """[w1, ..., wk] = [[w1, ..., w(k-1)], wk]."""
    if len(words) < 2:
        raise BadParameter("a commutator needs at least two entries")
    acc = words[0]
    for w in words[1:]:
        acc = commutator(acc, w)
    return acc


# evaluation -----------------------------------------------------------------

def evaluate(word: Word, G: FiniteGroup, point: Sequence[int]) -> int:
    """Substitute point[i-1] for x_i and multiply out."""
    if len(point) != word.n_vars:
        raise BadParameter(f"point of length {len(point)} for a word in {word.n_vars} variables")
    acc = 0
    for letter in word.letters:
        if isinstance(letter, Const):
            acc = int(G.mul[acc, letter.element])
        else:
            acc = int(G.mul[acc, G.power(int(point[letter.index - 1]), letter.exponent)])
    return acc


def evaluate_many(word: Word, G: FiniteGroup, points: np.ndarray) -> np.ndarray:
    """Vectorized evaluate over the rows of an (N, n_vars) array."""
    points = np.asarray(points, dtype=INDEX_DTYPE)
    if points.ndim != 2 or points.shape[1] != word.n_vars:
        raise BadParameter(f"points must have shape (N, {word.n_vars}), got {points.shape}")
    acc = np.zeros(points.shape[0], dtype=INDEX_DTYPE)
    for letter in word.letters:
        if isinstance(letter, Const):
            acc = G.mul[acc, letter.element]
        else:
            acc = G.mul[acc, G.power_array(points[:, letter.index - 1], letter.exponent)]
    return acc


# enumeration ----------------------------------------------------------------

def _alphabet(G: FiniteGroup, n_vars: int, max_abs_exponent: int,
              coefficient_mode: bool) -> List[Letter]:
    letters: List[Letter] = []
    for i in range(1, n_vars + 1):
        for e in range(1, max_abs_exponent + 1):
            letters.extend((Var(i, e), Var(i, -e)))
    if coefficient_mode:
        letters.extend(Const(g) for g in range(1, G.order))
    return letters


def _may_follow(prev: Optional[Letter], nxt: Letter) -> bool:
    if prev is None:
        return True
    if isinstance(prev, Const):
        return not isinstance(nxt, Const)
    return not (isinstance(nxt, Var) and nxt.index == prev.index)


def enumerate_words(G: FiniteGroup, n_vars: int, max_letters: int, max_abs_exponent: int,
                    coefficient_mode: bool = True, *, min_letters: int = 0,
                    config: Optional[Config] = None) -> Iterator[Word]:
    """
    All normal-form words with min_letters..max_letters letters, by length and
    then lexicographically in alphabet order: x1, x1^-1, x1^2, x1^-2, ..., x2, ...,
    then the non-identity constants by index.
    """
    if max_letters < 0 or max_abs_exponent < 0 or min_letters < 0:
        raise BadParameter("word enumeration caps must be non-negative")
    cap = get_config(config).budget
    alphabet = _alphabet(G, n_vars, max_abs_exponent, coefficient_mode)
    emitted = 0

    def extend(prefix: Tuple[Letter, ...], remaining: int) -> Iterator[Tuple[Letter, ...]]:
        if remaining == 0:
            yield prefix
            return
        last = prefix[-1] if prefix else None
        for letter in alphabet:
            if _may_follow(last, letter):
                yield from extend(prefix + (letter,), remaining - 1)

    for length in range(min_letters, max_letters + 1):
        for letters in extend((), length):
            emitted += 1
            if emitted > cap:
                raise BudgetExceeded("word stream", cap, emitted)
            yield Word(G, n_vars, letters, coefficient_mode)
    logger.debug("enumerated %d words (letters <= %d, |exp| <= %d)", emitted,
                 max_letters, max_abs_exponent)


# printing and systems -------------------------------------------------------

def quote_label(label: str) -> str:
    return "'" + label.replace("\\", "\\\\").replace("'", "\\'") + "'"


def format_word(word: Word) -> str:
    """Text form accepted back by parser.parse_word; the empty word is '1'."""
    if word.is_empty:
        return "1"
    parts = []
    for letter in word.letters:
        if isinstance(letter, Const):
            parts.append(quote_label(word.group.label(letter.element)))
        elif letter.exponent == 1:
            parts.append(f"x{letter.index}")
        else:
            parts.append(f"x{letter.index}^{letter.exponent}")
    return " ".join(parts)


@dataclass(frozen=True)
class EquationSystem:
    """A finite system of equations w = 1."""
    group: FiniteGroup = field(compare=False, repr=False)
    n_vars: int
    words: Tuple[Word, ...] = ()
    coefficient_mode: bool = True
    source_text: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for w in self.words:
            if w.group is not self.group or w.n_vars != self.n_vars:
                raise ModeMismatch("all words of a system share the group and n_vars")
            if w.coefficient_mode != self.coefficient_mode:
                raise ModeMismatch("all words of a system share the coefficient mode")

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def union(self, other: "EquationSystem") -> "EquationSystem":
        if other.group is not self.group or other.n_vars != self.n_vars \
                or other.coefficient_mode != self.coefficient_mode:
            raise ModeMismatch("systems over different spaces")
        return EquationSystem(self.group, self.n_vars, self.words + other.words,
                              self.coefficient_mode)

    def format(self) -> str:
        return "; ".join(format_word(w) for w in self.words)


def annihilator_system(G: FiniteGroup, point: Sequence[int]) -> EquationSystem:
    """The coefficient system {x_i p_i^-1} whose only solution is the point."""
    n = len(point)
    words = tuple(make_word(G, n, [Var(i + 1, 1), Const(int(G.inv[p]))])
                  for i, p in enumerate(point))
    return EquationSystem(G, n, words, True)
