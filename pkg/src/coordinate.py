"""
Coordinate groups of finite point sets, realized inside direct powers.

For Y = (p_1, ..., p_m) the map w -> (w(p_1), ..., w(p_m)) has kernel Rad(Y),
so G[X]/Rad(Y) is the subgroup of G^m generated by the images of the letters:
the diagonal copy of G and, per variable x_i, the tuple of i-th coordinates.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .config import Config, get_config
from .errors import BudgetExceeded, ModeMismatch, NotADomain, WidthCapExceeded, EmptySet
from .groups import INDEX_DTYPE, FiniteGroup, Provenance, centralizer, normal_closure
from .power import PowerChain, encode_rows
from .properties import PropertyVerdict, is_domain
from .words import Const, Word
from .zariski import AlgebraicSet, Point, is_algebraic, is_irreducible

logger = logging.getLogger(__name__)

NOETHERIAN_NOTE = "equational Noetherianity holds automatically for a finite group"
RESIDUAL_NOTE = ("fully residually G is read as: a single injective G-homomorphism to G "
                 "exists (the carrier is finite)")


@dataclass
class CoordinateGroup:
    base: FiniteGroup
    points: AlgebraicSet
    tuples: np.ndarray                      # carrier elements as sorted rows of G^m
    const_embedding: Dict[int, int]         # generator of G -> carrier index
    var_images: Dict[int, int]              # variable index -> carrier index
    _codes: np.ndarray = field(repr=False, default=None)
    _carrier: Optional[FiniteGroup] = field(repr=False, default=None)

    def __post_init__(self) -> None:
        self._codes = encode_rows(self.tuples, self.base.order)

    @property
    def width(self) -> int:
        return self.tuples.shape[1]

    @property
    def order(self) -> int:
        return self.tuples.shape[0]

    @property
    def point_order(self) -> Tuple[Point, ...]:
        return self.points.points

    def index_of_tuple(self, t) -> int:
        code = encode_rows(np.asarray(t, dtype=INDEX_DTYPE)[None, :], self.base.order)[0]
        i = int(np.searchsorted(self._codes, code))
        if i == self.order or self._codes[i] != code:
            raise KeyError(f"{tuple(t)} is not in the coordinate group")
        return i

    def diagonal(self, g: int) -> int:
        return self.index_of_tuple(np.full(self.width, int(g), dtype=INDEX_DTYPE))

    def carrier(self, config: Optional[Config] = None) -> FiniteGroup:
        """The carrier as a group in its own right, built on first use."""
        if self._carrier is None:
            budget = get_config(config).budget
            n = self.order
            if n * n > budget:
                raise BudgetExceeded("coordinate group table size", budget, n * n)
            products = self.base.mul[self.tuples[:, None, :], self.tuples[None, :, :]]
            codes = encode_rows(products.reshape(n * n, self.width), self.base.order)
            mul = np.searchsorted(self._codes, codes).reshape(n, n)
            inv = np.argmax(mul == 0, axis=1)
            labels = ["<" + ", ".join(self.base.label(c) for c in row) + ">"
                      for row in self.tuples.tolist()]
            self._carrier = FiniteGroup(
                mul, inv, labels,
                Provenance("coordinate", f"{self.base.name}, {len(self.points)} points"),
                f"coordinate({self.base.name},{len(self.points)})")
        return self._carrier

    def evaluation(self, j: int) -> np.ndarray:
        """Evaluation at the j-th point of Y: carrier index -> element of G."""
        return self.tuples[:, j]

    def word_image(self, word: Word, config: Optional[Config] = None) -> int:
        """Fold a word through the carrier multiplication table."""
        carrier = self.carrier(config)
        acc = 0
        for letter in word.letters:
            if isinstance(letter, Const):
                image = self.diagonal(letter.element)
            else:
                image = carrier.power(self.var_images[letter.index], letter.exponent)
            acc = int(carrier.mul[acc, image])
        return acc


def coordinate_group(Y: AlgebraicSet, config: Optional[Config] = None) -> CoordinateGroup:
    config = get_config(config)
    m = len(Y)
    if m == 0:
        raise EmptySet("the empty set has no coordinate group")
    if m > config.max_width:
        raise WidthCapExceeded("coordinate group width |Y|", config.max_width, m)
    G = Y.group
    columns = Y.as_array().T
    rows: List[np.ndarray] = []
    if Y.mode.coefficients:
        rows.extend(np.full(m, g, dtype=INDEX_DTYPE) for g in G.generators())
    rows.extend(columns)
    generators = np.array(rows, dtype=INDEX_DTYPE).reshape(len(rows), m)
    tuples = PowerChain(G, generators, config=config).elements()
    gamma = CoordinateGroup(G, Y, tuples, {}, {})
    if Y.mode.coefficients:
        gamma.const_embedding = {g: gamma.diagonal(g) for g in G.generators()}
    gamma.var_images = {i + 1: gamma.index_of_tuple(col) for i, col in enumerate(columns)}
    logger.debug("coordinate group of %d points over %s has order %d", m, G.name, gamma.order)
    return gamma


def _centralizer_of_closures(G: FiniteGroup) -> Tuple[np.ndarray, np.ndarray]:
    """(ids, masks): masks[ids[x]] is the membership mask of C_G(ncl(x))."""
    cached = G._cache.get("closure-centralizers")
    if cached is None:
        seen: Dict[int, int] = {}
        ids = np.zeros(G.order, dtype=INDEX_DTYPE)
        masks = []
        for x in G.elements():
            C = centralizer(G, normal_closure(G, [x]).elements)
            if C.members not in seen:
                seen[C.members] = len(masks)
                masks.append(C.mask)
            ids[x] = seen[C.members]
        cached = (ids, np.array(masks, dtype=bool))
        G._cache["closure-centralizers"] = cached
    return cached


def gamma_zero_divisor(gamma: CoordinateGroup) -> Optional[Tuple[int, int]]:
    """
    A pair (x, y) of non-trivial carrier indices with [x^g, y] = 1 for every g in
    the diagonal copy of G, or None. Coordinatewise the condition says y_j
    centralizes the normal closure of x_j in G.
    """
    if not gamma.points.mode.coefficients:
        raise ModeMismatch("the G-domain test needs coefficient mode")
    ids, masks = _centralizer_of_closures(gamma.base)
    signature = ids[gamma.tuples]
    # one representative per signature among the non-trivial elements
    _, first = np.unique(signature[1:], axis=0, return_index=True)
    for x in sorted(int(i) + 1 for i in first):
        ok = np.ones(gamma.order, dtype=bool)
        for j in range(gamma.width):
            ok &= masks[signature[x, j]][gamma.tuples[:, j]]
        ok[0] = False
        ys = np.flatnonzero(ok)
        if ys.size:
            return x, int(ys[0])
    return None


def gamma_is_G_domain(gamma: CoordinateGroup) -> bool:
    return gamma_zero_divisor(gamma) is None


def find_embedding_point(Y: AlgebraicSet, gamma: Optional[CoordinateGroup] = None,
                         config: Optional[Config] = None) -> Optional[Point]:
    """
    A point whose evaluation map embeds the coordinate group into G. Any such
    map forces |Gamma| <= |G|, and then every point of Y works, so only the
    coordinates of Y are tried.
    """
    if not Y.mode.coefficients:
        raise ModeMismatch("G-embeddings need coefficient mode")
    gamma = gamma or coordinate_group(Y, config)
    if gamma.order != Y.group.order:
        return None
    for j, point in enumerate(Y.points):
        if np.unique(gamma.evaluation(j)).size == gamma.order:
            return point
    return None


@dataclass
class Theorem1Report:
    group: str
    points: List[List[str]]
    algebraic: bool
    irreducible: bool
    gamma_domain: bool
    embeds: bool
    carrier_order: int
    embedding_point: Optional[List[str]] = None
    gamma_witness: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=lambda: [NOETHERIAN_NOTE, RESIDUAL_NOTE])

    @property
    def items(self) -> Dict[str, bool]:
        return {"irreducible": self.irreducible, "gamma_domain": self.gamma_domain,
                "embeds": self.embeds}

    @property
    def agree(self) -> bool:
        return len(set(self.items.values())) == 1

    def to_verdict(self) -> PropertyVerdict:
        verdict = PropertyVerdict(self.group, "theorem1", {"points": self.points},
                                  holds=self.agree, notes=list(self.notes))
        verdict.facts = dict(self.items, algebraic=self.algebraic,
                             carrier_order=self.carrier_order,
                             embedding_point=self.embedding_point)
        if not self.agree:
            verdict.witnesses.append({"kind": "theorem1-disagreement", **self.items,
                                      "points": self.points})
        return verdict


def theorem1_crosscheck(G: FiniteGroup, Y: AlgebraicSet,
                        config: Optional[Config] = None) -> Theorem1Report:
    """Irreducible, Gamma(Y) a G-domain, and G-embeddable must agree over a domain."""
    if not Y.mode.coefficients:
        raise ModeMismatch("the crosscheck runs in coefficient mode")
    if Y.group is not G:
        raise ModeMismatch("points do not live over this group")
    if not is_domain(G, config=config).holds:
        raise NotADomain(f"{G.name} is not a domain")
    gamma = coordinate_group(Y, config)
    witness = gamma_zero_divisor(gamma)
    point = find_embedding_point(Y, gamma, config)
    report = Theorem1Report(
        group=G.name,
        points=Y.labels(),
        algebraic=is_algebraic(Y, config),
        irreducible=is_irreducible(Y, config),
        gamma_domain=witness is None,
        embeds=point is not None,
        carrier_order=gamma.order,
        embedding_point=None if point is None else [G.label(c) for c in point],
    )
    if witness is not None:
        x, y = witness
        report.gamma_witness = {"x": [G.label(c) for c in gamma.tuples[x]],
                                "y": [G.label(c) for c in gamma.tuples[y]]}
    if not report.agree:
        logger.warning("theorem 1 items disagree on %s at %s: %s", G.name, report.points,
                       report.items)
    return report
