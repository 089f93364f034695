"""
Subgroup lattice, normal structure and lower central series.

The lattice is built bottom-up: every subgroup is a join of cyclic subgroups,
so starting from the cyclic ones and repeatedly adjoining one cyclic subgroup
at a time reaches all of them. Results are cached on the group per cap setting.
"""
import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from .config import Config, get_config
from .errors import LatticeCapExceeded
from .groups import (INDEX_DTYPE, FiniteGroup, GroupLike, Subgroup, _closure_mask,
                     as_subgroup, center, commutator_subgroup, normal_closure)
from .utils import mask_to_bits

logger = logging.getLogger(__name__)


def cyclic_subgroups(G: FiniteGroup) -> List[Tuple[Subgroup, int]]:
    """Distinct cyclic subgroups with the first element generating each, sorted."""
    cached = G._cache.get("cyclic")
    if cached is None:
        found: Dict[int, int] = {}
        for x in G.elements():
            bits = mask_to_bits(_closure_mask(G, [x]))
            found.setdefault(bits, x)
        cached = sorted(((Subgroup(G, bits), g) for bits, g in found.items()),
                        key=lambda item: item[0].sort_key())
        G._cache["cyclic"] = cached
    return cached


def enumerate_subgroups(G: FiniteGroup, config: Optional[Config] = None) -> List[Subgroup]:
    """All subgroups of G sorted by (order, member bitset)."""
    config = get_config(config)
    key = ("lattice", config.max_order, config.max_lattice)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    if G.order > config.max_order:
        raise LatticeCapExceeded("lattice parent order", config.max_order, G.order)

    cyclic = cyclic_subgroups(G)
    gens_of: Dict[int, Tuple[int, ...]] = {}
    queue: List[int] = []
    for H, g in cyclic:
        if H.members not in gens_of:
            gens_of[H.members] = (g,) if g else ()
            queue.append(H.members)

    head = 0
    while head < len(queue):
        bits = queue[head]
        head += 1
        base_mask = Subgroup(G, bits).mask
        for C, g in cyclic:
            if C.members & ~bits == 0:
                continue
            joined = mask_to_bits(_closure_mask(G, [g], start=base_mask))
            if joined not in gens_of:
                gens_of[joined] = gens_of[bits] + (g,)
                queue.append(joined)
                if len(queue) > config.max_lattice:
                    raise LatticeCapExceeded("subgroup count", config.max_lattice, len(queue))

    result = sorted((Subgroup(G, bits) for bits in gens_of), key=Subgroup.sort_key)
    logger.debug("%s: %d subgroups", G.name, len(result))
    G._cache[key] = result
    return result


def normal_subgroups(G: FiniteGroup, minimal_only: bool = False) -> List[Subgroup]:
    """
    Normal subgroups sorted by (order, bitset). Every normal subgroup is a join of
    normal closures of single elements, so joins of those are closed to a fixpoint.
    With minimal_only, return the minimal non-trivial ones.
    """
    cached = G._cache.get("normal")
    if cached is None:
        closures: Dict[int, Subgroup] = {}
        for x in G.elements():
            N = normal_closure(G, [x])
            closures.setdefault(N.members, N)
        atoms = sorted(closures.values(), key=Subgroup.sort_key)
        found: Dict[int, Subgroup] = dict(closures)
        queue = list(atoms)
        head = 0
        while head < len(queue):
            N = queue[head]
            head += 1
            for A in atoms:
                if A.members & ~N.members == 0:
                    continue
                mask = _closure_mask(G, A.elements, start=N.mask)
                bits = mask_to_bits(mask)
                if bits not in found:
                    found[bits] = Subgroup(G, bits)
                    queue.append(found[bits])
        cached = sorted(found.values(), key=Subgroup.sort_key)
        G._cache["normal"] = cached
    if not minimal_only:
        return list(cached)
    nontrivial = [N for N in cached if not N.is_trivial]
    return [N for N in nontrivial
            if not any(M.members != N.members and M.issubset(N) for M in nontrivial)]


def lower_central_series(H: GroupLike) -> Tuple[List[Subgroup], Optional[int]]:
    """
    gamma_1 = H, gamma_{i+1} = [gamma_i, H] until the series stabilizes.
    The class is the first k with gamma_{k+1} = 1, or None if it stalls above 1.
    """
    H = as_subgroup(H)
    G = H.parent
    series = [H]
    while not series[-1].is_trivial:
        nxt = commutator_subgroup(G, series[-1], H)
        if nxt.members == series[-1].members:
            return series, None
        series.append(nxt)
    return series, len(series) - 1


def nilpotency_class(H: GroupLike) -> Optional[int]:
    H = as_subgroup(H)
    cache = H.parent._cache.setdefault("class", {})
    if H.members not in cache:
        cache[H.members] = lower_central_series(H)[1]
    return cache[H.members]


def is_nilpotent(H: GroupLike) -> bool:
    return nilpotency_class(H) is not None


def has_class_at_most(H: GroupLike, k: Optional[int]) -> bool:
    """Nilpotent of class <= k; k=None means nilpotent of any class."""
    c = nilpotency_class(H)
    if c is None:
        return False
    return k is None or c <= k


def conjugacy_classes(G: FiniteGroup) -> List[Tuple[int, ...]]:
    conj = G.conjugation_table()
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in G.elements():
        if seen[x]:
            continue
        cls = np.unique(conj[x]).astype(INDEX_DTYPE)
        seen[cls] = True
        classes.append(tuple(int(c) for c in cls))
    return classes


def invariants(G: FiniteGroup) -> Dict[str, object]:
    """Cheap isomorphism-invariant summary; equal summaries prove nothing."""
    orders: Dict[int, int] = {}
    for x in G.elements():
        k = G.element_order(x)
        orders[k] = orders.get(k, 0) + 1
    return {
        "order": G.order,
        "abelian": G.is_abelian,
        "element_orders": {str(k): orders[k] for k in sorted(orders)},
        "center_order": center(G).order,
        "conjugacy_classes": len(conjugacy_classes(G)),
        "nilpotency_class": nilpotency_class(G),
        "fingerprint": G.fingerprint(),
    }
