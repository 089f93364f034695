"""
Algebraic sets over a finite group G inside G^n.

The algebraic closure V(Rad(U)) of a finite set U of points is decided without
enumerating words. A point q lies in it iff every word vanishing on U vanishes
at q, i.e. iff evaluation at q factors through evaluation on U. For the
subgroup of G^(m+1) generated by the evaluation tuples of the letters (the
diagonal constants in coefficient mode, and (u_1,i, ..., u_m,i, q_i) per
variable) this means the projection onto the first m coordinates is injective.
One stabilizer chain over the coordinates of U answers this for every
candidate q at once, with the candidates carried as passenger coordinates.
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .config import Config, get_config
from .errors import (BadParameter, BudgetExceeded, EmptySet, ModeMismatch, NotADomain,
                     WidthCapExceeded)
from .groups import INDEX_DTYPE, FiniteGroup
from .power import PowerChain
from .properties import is_domain
from .words import (EquationSystem, Word, commutator, constant, enumerate_words,
                    evaluate_many, word_conjugate)

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]

CLOSURE_CACHE_SIZE = 4096   # closures kept per group, least recently used evicted first


class Mode(str, Enum):
    COEFFICIENT = "coefficient"
    COEFFICIENT_FREE = "coefficient-free"

    @property
    def coefficients(self) -> bool:
        return self is Mode.COEFFICIENT

    @classmethod
    def of(cls, coefficient_mode: bool) -> "Mode":
        return cls.COEFFICIENT if coefficient_mode else cls.COEFFICIENT_FREE


@dataclass(frozen=True)
class AlgebraicSet:
    """A finite set of points of G^n; `defining` is set when it is V(defining)."""
    group: FiniteGroup = field(compare=False, repr=False)
    n_vars: int
    points: Tuple[Point, ...]
    mode: Mode = Mode.COEFFICIENT
    defining: Optional[EquationSystem] = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point) -> bool:
        return tuple(int(c) for c in point) in self.point_set

    @property
    def point_set(self) -> FrozenSet[Point]:
        return frozenset(self.points)

    def as_array(self) -> np.ndarray:
        return np.array(self.points, dtype=INDEX_DTYPE).reshape(len(self.points), self.n_vars)

    def issubset(self, other: "AlgebraicSet") -> bool:
        return self.point_set <= other.point_set

    def labels(self) -> List[List[str]]:
        return [[self.group.label(c) for c in p] for p in self.points]

    def format_points(self) -> str:
        return "; ".join(", ".join(self.group.label(c) for c in p) for p in self.points)


def make_set(G: FiniteGroup, n_vars: int, points: Iterable, mode: Mode = Mode.COEFFICIENT,
             defining: Optional[EquationSystem] = None) -> AlgebraicSet:
    """Deduplicate and sort the points into an AlgebraicSet."""
    if n_vars < 1:
        raise BadParameter(f"n must be at least 1, got {n_vars}")
    normalized = set()
    for p in points:
        point = tuple(int(c) for c in p)
        if len(point) != n_vars:
            raise BadParameter(f"point {point} does not have {n_vars} coordinates")
        if any(not 0 <= c < G.order for c in point):
            raise BadParameter(f"point {point} has coordinates outside {G.name}")
        normalized.add(point)
    return AlgebraicSet(G, n_vars, tuple(sorted(normalized)), Mode(mode), defining)


def _same_space(X: AlgebraicSet, Y: AlgebraicSet) -> None:
    if X.group is not Y.group or X.n_vars != Y.n_vars or X.mode is not Y.mode:
        raise ModeMismatch("sets live in different spaces")


def all_points(G: FiniteGroup, n_vars: int, config: Optional[Config] = None) -> np.ndarray:
    """G^n as an array of rows in lexicographic order."""
    config = get_config(config)
    size = G.order ** n_vars
    if size > config.budget:
        raise BudgetExceeded(f"|G|^{n_vars} points", config.budget, size)
    grid = np.indices((G.order,) * n_vars).reshape(n_vars, -1).T
    return np.ascontiguousarray(grid, dtype=INDEX_DTYPE)


def whole_space(G: FiniteGroup, n_vars: int, mode: Mode = Mode.COEFFICIENT,
                config: Optional[Config] = None) -> AlgebraicSet:
    mode = Mode(mode)
    empty = EquationSystem(G, n_vars, (), mode.coefficients)
    return make_set(G, n_vars, all_points(G, n_vars, config).tolist(), mode, empty)


def solution_set(G: FiniteGroup, n_vars: int, system: EquationSystem,
                 config: Optional[Config] = None) -> AlgebraicSet:
    """Exact V(system) by evaluating every word at every point of G^n."""
    if system.n_vars != n_vars or system.group is not G:
        raise ModeMismatch("system does not live in this space")
    points = all_points(G, n_vars, config)
    keep = np.ones(points.shape[0], dtype=bool)
    for word in system:
        keep &= evaluate_many(word, G, points) == 0
    mode = Mode.of(system.coefficient_mode)
    logger.debug("V(%d equations) in %s^%d: %d points", len(system), G.name, n_vars,
                 int(keep.sum()))
    return make_set(G, n_vars, points[keep].tolist(), mode, system)


def vanishes_on(word: Word, Y: AlgebraicSet) -> bool:
    """word is in Rad(Y)."""
    if word.group is not Y.group or word.n_vars != Y.n_vars:
        raise ModeMismatch("word and set live in different spaces")
    if word.coefficient_mode != Y.mode.coefficients:
        raise ModeMismatch(f"{Mode.of(word.coefficient_mode).value} word on a {Y.mode.value} set")
    if not len(Y):
        return True
    return bool((evaluate_many(word, Y.group, Y.as_array()) == 0).all())


# closure --------------------------------------------------------------------

def _extension_mask(U: AlgebraicSet, candidates: np.ndarray,
                    config: Optional[Config] = None) -> np.ndarray:
    """For each candidate row q: does every word vanishing on U vanish at q?"""
    config = get_config(config)
    m = len(U)
    if m == 0:
        raise EmptySet("closure tests need a nonempty set of points")
    if m > config.max_width:
        raise WidthCapExceeded("closure width |U|", config.max_width, m)
    G = U.group
    candidates = np.asarray(candidates, dtype=INDEX_DTYPE).reshape(-1, U.n_vars)
    width = m + candidates.shape[0]
    rows = []
    if U.mode.coefficients:
        rows.extend(np.full(width, g, dtype=INDEX_DTYPE) for g in G.generators())
    base = U.as_array()
    for i in range(U.n_vars):
        rows.append(np.concatenate([base[:, i], candidates[:, i]]))
    generators = np.array(rows, dtype=INDEX_DTYPE).reshape(len(rows), width)
    chain = PowerChain(G, generators, base_width=m, config=config)
    return chain.clean_passengers()


def point_extends(U: AlgebraicSet, q: Sequence[int], config: Optional[Config] = None) -> bool:
    """q lies in V(Rad(U))."""
    q = np.asarray(q, dtype=INDEX_DTYPE)
    if q.shape != (U.n_vars,):
        raise BadParameter(f"point of length {q.size} in a space of dimension {U.n_vars}")
    return bool(_extension_mask(U, q[None, :], config)[0])


def algebraic_closure(U: AlgebraicSet, config: Optional[Config] = None) -> AlgebraicSet:
    """The smallest algebraic set containing U; empty for empty U."""
    if not len(U):
        return U
    config = get_config(config)
    G = U.group
    cache = G._cache.setdefault("closures", OrderedDict())
    key = (U.mode.value, U.points, config.budget, config.max_width)
    cached = cache.get(key)
    if cached is None:
        points = all_points(G, U.n_vars, config)
        mask = _extension_mask(U, points, config)
        cached = tuple(tuple(int(c) for c in p) for p in points[mask])
        cache[key] = cached
        if len(cache) > CLOSURE_CACHE_SIZE:
            cache.popitem(last=False)
    else:
        cache.move_to_end(key)
    return AlgebraicSet(G, U.n_vars, cached, U.mode)


def point_closure(G: FiniteGroup, z: Sequence[int], mode: Mode = Mode.COEFFICIENT,
                  config: Optional[Config] = None) -> AlgebraicSet:
    """algebraic_closure({z})."""
    z = tuple(int(c) for c in z)
    return algebraic_closure(make_set(G, len(z), [z], Mode(mode)), config)


def is_algebraic(U: AlgebraicSet, config: Optional[Config] = None) -> bool:
    if U.defining is not None or not len(U):
        return True
    if len(U) == U.group.order ** U.n_vars:
        return True
    return algebraic_closure(U, config).points == U.points


def set_union(Y1: AlgebraicSet, Y2: AlgebraicSet) -> AlgebraicSet:
    _same_space(Y1, Y2)
    return make_set(Y1.group, Y1.n_vars, Y1.point_set | Y2.point_set, Y1.mode)


def union_is_algebraic(Y1: AlgebraicSet, Y2: AlgebraicSet,
                       config: Optional[Config] = None) -> bool:
    return is_algebraic(set_union(Y1, Y2), config)


def topological_closure(U: AlgebraicSet, config: Optional[Config] = None) -> AlgebraicSet:
    """Union of the point closures: closed sets are the finite unions of algebraic sets."""
    points = set()
    for z in U:
        points |= point_closure(U.group, z, U.mode, config).point_set
    return make_set(U.group, U.n_vars, points, U.mode)


# irreducibility -------------------------------------------------------------

def generic_point(Y: AlgebraicSet, config: Optional[Config] = None) -> Optional[Point]:
    """The first point of Y whose closure is all of Y, if any."""
    if not len(Y):
        raise EmptySet("the empty set has no generic point")
    for z in Y:
        if point_closure(Y.group, z, Y.mode, config).points == Y.points:
            return z
    return None


def is_irreducible(Y: AlgebraicSet, config: Optional[Config] = None) -> bool:
    return generic_point(Y, config) is not None


def irreducible_components(Y: AlgebraicSet, config: Optional[Config] = None) -> List[AlgebraicSet]:
    """Inclusion-maximal point closures, sorted by their points."""
    if not len(Y):
        return []
    closures = {}
    for z in Y:
        C = point_closure(Y.group, z, Y.mode, config)
        closures.setdefault(C.points, C)
    found = list(closures.values())
    maximal = [C for C in found
               if not any(D.points != C.points and C.point_set < D.point_set for D in found)]
    return sorted(maximal, key=lambda C: C.points)


def reducibility_oracle(Y: AlgebraicSet, config: Optional[Config] = None) -> bool:
    """True iff the proper closed subsets of Y cover it; exponential, |Y| <= 4."""
    if not len(Y):
        raise EmptySet("the empty set is neither reducible nor irreducible")
    if len(Y) > 4:
        raise WidthCapExceeded("reducibility oracle |Y|", 4, len(Y))
    target = Y.point_set
    covered: set = set()
    for size in range(1, len(Y)):
        for subset in combinations(Y.points, size):
            closure = algebraic_closure(make_set(Y.group, Y.n_vars, subset, Y.mode), config)
            if closure.point_set < target:
                covered |= closure.point_set
    return covered == target


def bounded_word_closure(U: AlgebraicSet, max_letters: int, max_abs_exponent: int,
                         config: Optional[Config] = None) -> AlgebraicSet:
    """Points where every enumerated word vanishing on U also vanishes."""
    G = U.group
    points = all_points(G, U.n_vars, config)
    keep = np.ones(points.shape[0], dtype=bool)
    base = U.as_array()
    tested = 0
    for word in enumerate_words(G, U.n_vars, max_letters, max_abs_exponent,
                                U.mode.coefficients, config=config):
        if base.shape[0] and (evaluate_many(word, G, base) != 0).any():
            continue
        keep &= evaluate_many(word, G, points) == 0
        tested += 1
    logger.debug("bounded closure used %d vanishing words", tested)
    return make_set(G, U.n_vars, points[keep].tolist(), U.mode)


def union_system(S1: EquationSystem, S2: EquationSystem,
                 config: Optional[Config] = None) -> EquationSystem:
    """
    In a domain, V(S1) u V(S2) = V({[s^g, t] : s in S1, t in S2, g in G}): at a
    point outside both sets, s and t take non-trivial values and a non-zero-divisor
    s value has a conjugate that fails to commute with the t value.
    """
    G = S1.group
    if S2.group is not G or S1.n_vars != S2.n_vars:
        raise ModeMismatch("systems over different spaces")
    if not (S1.coefficient_mode and S2.coefficient_mode):
        raise ModeMismatch("the union construction needs coefficients")
    verdict = is_domain(G, config=config)
    if not verdict.holds:
        raise NotADomain(f"{G.name} is not a domain")
    words = []
    for s in S1:
        for t in S2:
            for g in G.elements():
                words.append(commutator(word_conjugate(s, constant(G, S1.n_vars, g)), t))
    unique = tuple(dict.fromkeys(w for w in words if not w.is_empty))
    return EquationSystem(G, S1.n_vars, unique, True)
