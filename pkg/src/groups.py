"""
Finite groups as dense multiplication tables.

Elements are indices 0..order-1 with the identity at index 0. All tables are
read-only numpy arrays, so a FiniteGroup can be shared between workers.
Derived tables (conjugation, commutators, commuting pairs) are built lazily
and cached on the instance.
"""
import hashlib
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.combinatorics import Permutation

from .config import Config, get_config
from .errors import BadParameter, NotAGroup, NotAGroupReason, OrderCapExceeded, UnknownLabel
from .utils import bits_to_indices, bits_to_mask, mask_to_bits

logger = logging.getLogger(__name__)

INDEX_DTYPE = np.intp
ASSOCIATIVITY_SAMPLES = 200_000


@dataclass(frozen=True)
class Provenance:
    """How a group was obtained: table | permutations | family | product | file."""
    kind: str
    detail: str = ""
    digest: Optional[str] = None


class FiniteGroup:
    """
    A validated finite group. Build one through from_multiplication_table,
    from_permutation_generators, families.builtin or fileio.ingest_group.
    """

    identity = 0

    def __init__(self, mul: np.ndarray, inv: np.ndarray,
                 labels: Optional[Sequence[str]] = None,
                 provenance: Optional[Provenance] = None,
                 name: Optional[str] = None) -> None:
        self.mul = np.ascontiguousarray(mul, dtype=INDEX_DTYPE)
        self.inv = np.ascontiguousarray(inv, dtype=INDEX_DTYPE)
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)
        self.order = int(self.mul.shape[0])
        if labels is None:
            labels = [str(i) for i in range(self.order)]
        self.labels: Tuple[str, ...] = tuple(str(x) for x in labels)
        if len(self.labels) != self.order:
            raise BadParameter(f"{len(self.labels)} labels for a group of order {self.order}")
        if len(set(self.labels)) != self.order:
            raise BadParameter("element labels must be unique")
        self.provenance = provenance or Provenance("table")
        self.name = name or f"order-{self.order}-{self.fingerprint()[:8]}"
        self._cache: Dict[object, object] = {}

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def label(self, x: int) -> str:
        return self.labels[int(x)]

    @cached_property
    def _label_index(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index_of(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownLabel(label)

    def fingerprint(self) -> str:
        """Canonical hash of the multiplication table."""
        cached = getattr(self, "_fingerprint", None)
        if cached is None:
            digest = hashlib.sha256()
            digest.update(str(self.order).encode())
            digest.update(self.mul.astype("<u4").tobytes())
            cached = digest.hexdigest()
            self._fingerprint = cached
        return cached

    @property
    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            self._cache["abelian"] = bool((self.mul == self.mul.T).all())
        return self._cache["abelian"]

    def multiply(self, *xs: int) -> int:
        acc = 0
        for x in xs:
            acc = int(self.mul[acc, x])
        return acc

    def element_order(self, x: int) -> int:
        orders = self._cache.get("element_orders")
        if orders is None:
            orders = np.zeros(self.order, dtype=INDEX_DTYPE)
            for g in range(self.order):
                k, y = 1, g
                while y != 0:
                    y = int(self.mul[y, g])
                    k += 1
                orders[g] = k
            self._cache["element_orders"] = orders
        return int(orders[x])

    def power(self, x: int, e: int) -> int:
        return int(self.power_array(np.array([x]), e)[0])

    def power_array(self, xs: np.ndarray, e: int) -> np.ndarray:
        """Elementwise xs**e by repeated squaring."""
        base = np.asarray(xs, dtype=INDEX_DTYPE)
        if e < 0:
            base = self.inv[base]
            e = -e
        result = np.zeros_like(base)
        while e:
            if e & 1:
                result = self.mul[result, base]
            base = self.mul[base, base]
            e >>= 1
        return result

    def conjugation_table(self) -> np.ndarray:
        """conj[x, g] = x^g = g^-1 x g."""
        table = self._cache.get("conj")
        if table is None:
            n = self.order
            xg = self.mul
            table = self.mul[np.broadcast_to(self.inv, (n, n)), xg]
            table.setflags(write=False)
            self._cache["conj"] = table
        return table

    def commutator_table(self) -> np.ndarray:
        """comm[x, y] = [x, y] = x^-1 y^-1 x y."""
        table = self._cache.get("comm")
        if table is None:
            inv_prod = self.mul[self.inv[:, None], self.inv[None, :]]
            table = self.mul[inv_prod, self.mul]
            table.setflags(write=False)
            self._cache["comm"] = table
        return table

    def commuting_table(self) -> np.ndarray:
        table = self._cache.get("commuting")
        if table is None:
            table = self.mul == self.mul.T
            table.setflags(write=False)
            self._cache["commuting"] = table
        return table

    def generators(self) -> Tuple[int, ...]:
        """Greedy generating set: scan elements in index order, keep those not yet generated."""
        gens = self._cache.get("generators")
        if gens is None:
            chosen: List[int] = []
            mask = np.zeros(self.order, dtype=bool)
            mask[0] = True
            for x in range(1, self.order):
                if not mask[x]:
                    chosen.append(x)
                    mask = _closure_mask(self, chosen)
                    if mask.all():
                        break
            gens = tuple(chosen)
            self._cache["generators"] = gens
        return gens

    def whole(self) -> "Subgroup":
        return Subgroup(self, (1 << self.order) - 1)

    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1)

    def subgroup_from_mask(self, mask: np.ndarray) -> "Subgroup":
        return Subgroup(self, mask_to_bits(mask))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup stored as a bitset over the parent's element indices."""
    parent: FiniteGroup = field(repr=False)
    members: int

    @cached_property
    def elements(self) -> Tuple[int, ...]:
        return tuple(bits_to_indices(self.members))

    @cached_property
    def mask(self) -> np.ndarray:
        mask = bits_to_mask(self.members, self.parent.order)
        mask.setflags(write=False)
        return mask

    @property
    def order(self) -> int:
        return bin(self.members).count("1")

    @property
    def is_trivial(self) -> bool:
        return self.members == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def __contains__(self, x: int) -> bool:
        return bool((self.members >> int(x)) & 1)

    def issubset(self, other: "Subgroup") -> bool:
        return self.members & ~other.members == 0

    def sort_key(self) -> Tuple[int, int]:
        return (self.order, self.members)

    def labels(self) -> List[str]:
        return [self.parent.label(x) for x in self.elements]

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, of={self.parent.name!r})"


GroupLike = Union[FiniteGroup, Subgroup]


def as_subgroup(H: GroupLike) -> Subgroup:
    return H.whole() if isinstance(H, FiniteGroup) else H


# construction ---------------------------------------------------------------

def _check_associative(mul: np.ndarray, config: Config) -> None:
    n = mul.shape[0]
    if n <= config.associativity_cap:
        # (a*b)*c against a*(b*c), one slab of a at a time
        for a in range(n):
            left = mul[mul[a]]             # left[b, c] = (a*b)*c
            right = mul[a][mul]            # right[b, c] = a*(b*c)
            bad = np.argwhere(left != right)
            if bad.size:
                b, c = (int(v) for v in bad[0])
                raise NotAGroup(NotAGroupReason.NOT_ASSOCIATIVE, f"({a}*{b})*{c} != {a}*({b}*{c})")
        return
    rng = np.random.default_rng(config.seed)
    a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
    bad = np.flatnonzero(mul[mul[a, b], c] != mul[a, mul[b, c]])
    if bad.size:
        i = int(bad[0])
        raise NotAGroup(NotAGroupReason.NOT_ASSOCIATIVE,
                        f"({a[i]}*{b[i]})*{c[i]} != {a[i]}*({b[i]}*{c[i]})")


def _validate_table(table: np.ndarray, config: Config) -> Tuple[int, np.ndarray]:
    """Return (identity, inverse table) or raise NotAGroup."""
    n = table.shape[0]
    expected = np.arange(n)
    if not (np.sort(table, axis=1) == expected).all() or not (np.sort(table, axis=0) == expected[:, None]).all():
        raise NotAGroup(NotAGroupReason.NOT_LATIN)
    _check_associative(table, config)
    candidates = np.flatnonzero((table == expected).all(axis=1) & (table == expected[:, None]).all(axis=0))
    if candidates.size == 0:
        raise NotAGroup(NotAGroupReason.NO_IDENTITY)
    identity = int(candidates[0])
    inv = np.argmax(table == identity, axis=1)
    if not (table[np.arange(n), inv] == identity).all() or not (table[inv, np.arange(n)] == identity).all():
        raise NotAGroup(NotAGroupReason.NO_INVERSE)
    return identity, inv


def from_multiplication_table(table: Sequence[Sequence[int]],
                              labels: Optional[Sequence[str]] = None,
                              *, provenance: Optional[Provenance] = None,
                              name: Optional[str] = None,
                              config: Optional[Config] = None) -> FiniteGroup:
    """Validate a Cayley table and return the group with its identity moved to index 0."""
    config = get_config(config)
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError):
        raise BadParameter("multiplication table must be a square array of integers")
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise BadParameter(f"multiplication table must be square and nonempty, got shape {t.shape}")
    n = t.shape[0]
    if n > config.max_order:
        raise OrderCapExceeded("group order", config.max_order, n)
    if t.min() < 0 or t.max() >= n:
        raise BadParameter(f"table entries must lie in [0, {n - 1}]")
    if labels is not None and len(labels) != n:
        raise BadParameter(f"{len(labels)} labels for a table of order {n}")

    identity, inv = _validate_table(t, config)
    if labels is None:
        labels = [str(i) for i in range(n)]
    if identity != 0:
        # swap the identity into slot 0
        perm = np.arange(n)
        perm[0], perm[identity] = identity, 0
        t = perm[t[np.ix_(perm, perm)]]
        inv = perm[inv[perm]]
        labels = [labels[int(i)] for i in perm]
    return FiniteGroup(t, inv, labels, provenance or Provenance("table"), name)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as '(1 2)(3 4 5)'; '()' is the identity."""
    stripped = text.strip()
    if not stripped or _CYCLE_RE.sub("", stripped).strip():
        raise BadParameter(f"malformed cycle notation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        points = [p for p in re.split(r"[\s,]+", body.strip()) if p]
        try:
            cycle = [int(p) - 1 for p in points]
        except ValueError:
            raise BadParameter(f"malformed cycle notation {text!r}")
        if any(p < 0 or p >= degree for p in cycle) or len(set(cycle)) != len(cycle):
            raise BadParameter(f"cycle {body!r} is not a cycle on 1..{degree}")
        if len(cycle) > 1:
            cycles.append(cycle)
    return Permutation(cycles, size=degree)


def format_cycles(perm: Permutation) -> str:
    cycles = [c for c in perm.cyclic_form if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles)


def from_permutation_generators(degree: int,
                                generators: Iterable[Union[str, Permutation]],
                                *, name: Optional[str] = None,
                                provenance: Optional[Provenance] = None,
                                config: Optional[Config] = None) -> FiniteGroup:
    """
    Close the generators under composition (p*q applies p first, as in sympy).
    Elements are listed breadth-first from the identity: each layer in the order
    its parents were found, children of one parent in generator order. A
    product reached twice keeps its first position.
    """
    config = get_config(config)
    if degree < 1:
        raise BadParameter(f"degree must be positive, got {degree}")
    perms = []
    for g in generators:
        p = parse_cycles(g, degree) if isinstance(g, str) else Permutation(g, size=degree)
        if p.size != degree:
            raise BadParameter(f"generator {g} does not act on 1..{degree}")
        perms.append(tuple(p.array_form))

    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    layer = [identity]
    while layer:
        found = []
        for x in layer:
            for g in perms:
                y = tuple(g[i] for i in x)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    found.append(y)
        layer = found
        if len(elements) > config.max_order:
            raise OrderCapExceeded("permutation group order", config.max_order, len(elements))

    arr = np.array(elements, dtype=np.int16)
    n = len(elements)
    mul = np.empty((n, n), dtype=INDEX_DTYPE)
    for i in range(n):
        # row i: x_i * x_j maps k -> x_j[x_i[k]]
        images = arr[:, arr[i]]
        mul[i] = [index[tuple(row)] for row in images.tolist()]
    inv = np.argmax(mul == 0, axis=1)
    labels = [format_cycles(Permutation(list(e))) for e in elements]
    gen_text = ", ".join(format_cycles(Permutation(list(p))) for p in perms)
    logger.debug("closed %d generators of degree %d to order %d", len(perms), degree, n)
    return FiniteGroup(mul, inv, labels,
                       provenance or Provenance("permutations", f"degree {degree}: {gen_text}"),
                       name)


# closures -------------------------------------------------------------------

def _closure_mask(G: FiniteGroup, seeds: Iterable[int],
                  start: Optional[np.ndarray] = None) -> np.ndarray:
    """Membership mask of <start, seeds>; start must already be a subgroup mask."""
    seeds = np.unique(np.asarray(list(seeds), dtype=INDEX_DTYPE))
    if start is None:
        members = np.zeros(G.order, dtype=bool)
        members[0] = True
    else:
        members = np.array(start, dtype=bool)
        seeds = np.union1d(seeds, np.flatnonzero(members))
    seeds = seeds[seeds != 0]
    if seeds.size == 0:
        return members
    members[seeds] = True
    frontier = np.flatnonzero(members)
    while frontier.size:
        candidates = np.unique(G.mul[np.ix_(frontier, seeds)])
        candidates = candidates[~members[candidates]]
        members[candidates] = True
        frontier = candidates
    return members


def subgroup_generate(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing seeds."""
    return G.subgroup_from_mask(_closure_mask(G, seeds))


def join(G: FiniteGroup, *subgroups: Subgroup) -> Subgroup:
    seeds: List[int] = []
    for H in subgroups:
        seeds.extend(H.elements)
    return subgroup_generate(G, seeds)


def centralizer(G: FiniteGroup, subset: Iterable[int]) -> Subgroup:
    idx = np.asarray(sorted(set(int(x) for x in subset)), dtype=INDEX_DTYPE)
    if idx.size == 0:
        return G.whole()
    mask = G.commuting_table()[:, idx].all(axis=1)
    return G.subgroup_from_mask(mask)


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, G.generators())


def conjugates(G: FiniteGroup, subset: Iterable[int]) -> np.ndarray:
    idx = np.asarray(sorted(set(int(x) for x in subset)), dtype=INDEX_DTYPE)
    if idx.size == 0:
        return idx
    return np.unique(G.conjugation_table()[idx])


def conjugate_subgroup(G: FiniteGroup, H: Subgroup, x: int) -> Subgroup:
    """H^x = x^-1 H x."""
    images = G.conjugation_table()[np.asarray(H.elements, dtype=INDEX_DTYPE), int(x)]
    mask = np.zeros(G.order, dtype=bool)
    mask[images] = True
    return G.subgroup_from_mask(mask)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    gens = np.asarray(G.generators(), dtype=INDEX_DTYPE)
    if gens.size == 0:
        return True
    images = G.conjugation_table()[np.ix_(np.asarray(H.elements, dtype=INDEX_DTYPE), gens)]
    return bool(H.mask[images].all())


def normal_closure(G: FiniteGroup, subset: Iterable[int]) -> Subgroup:
    """
    Smallest normal subgroup containing subset: generate, then keep adjoining
    conjugates by the generators of G until the subgroup is stable.
    """
    mask = _closure_mask(G, subset)
    gens = np.asarray(G.generators(), dtype=INDEX_DTYPE)
    conj = G.conjugation_table()
    while gens.size:
        images = np.unique(conj[np.ix_(np.flatnonzero(mask), gens)])
        fresh = images[~mask[images]]
        if fresh.size == 0:
            break
        mask = _closure_mask(G, fresh, start=mask)
    return G.subgroup_from_mask(mask)


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B] = <[a, b] : a in A, b in B>."""
    comm = G.commutator_table()
    a = np.asarray(A.elements, dtype=INDEX_DTYPE)
    b = np.asarray(B.elements, dtype=INDEX_DTYPE)
    return subgroup_generate(G, np.unique(comm[np.ix_(a, b)]).tolist())
