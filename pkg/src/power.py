"""
Subgroups of direct powers G^m through coordinate stabilizer chains.

A tuple subgroup H <= G^m has the chain H = H_0 >= H_1 >= ... >= H_b where H_j
fixes the first j coordinates at the identity. The level-j "orbit" is the
projection of H_j onto coordinate j, a subgroup of G, so every level holds at
most |G| transversal tuples and |H| is the product of the orbit sizes. The
chain is built with the deterministic Schreier-Sims procedure: a generator that
does not sift is added at the level where it fails, and every level it passed
through re-sifts its new Schreier generators into the level below.

Only the first `base_width` coordinates form levels. The remaining "passenger"
coordinates are carried through every product. A residue that sifts to the
identity on the base but not on a passenger proves that the projection onto
the base plus that passenger has a non-trivial kernel, so one chain answers
the kernel question for many passengers at once.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from .config import Config, get_config
from .errors import BadParameter, BudgetExceeded
from .groups import INDEX_DTYPE, FiniteGroup

logger = logging.getLogger(__name__)


@dataclass
class _Level:
    gens: List[Tuple[int, np.ndarray]] = field(default_factory=list)
    transversal: Dict[int, np.ndarray] = field(default_factory=dict)
    inverses: Dict[int, np.ndarray] = field(default_factory=dict)
    # (orbit point, generator id) pairs whose Schreier generator was sifted
    done: Set[Tuple[int, int]] = field(default_factory=set)


class PowerChain:
    def __init__(self, group: FiniteGroup, generators: np.ndarray,
                 base_width: Optional[int] = None, config: Optional[Config] = None) -> None:
        gens = np.asarray(generators, dtype=INDEX_DTYPE)
        if gens.ndim != 2:
            raise BadParameter("generators must be a 2-d array of tuples")
        self.group = group
        self.width = gens.shape[1]
        self.base_width = self.width if base_width is None else base_width
        if not 0 <= self.base_width <= self.width:
            raise BadParameter(f"base width {self.base_width} outside 0..{self.width}")
        self.budget = get_config(config).budget
        self.work = 0
        self._next_id = 0
        self._identity = np.zeros(self.width, dtype=INDEX_DTYPE)
        self._levels = [_Level() for _ in range(self.base_width)]
        for level in self._levels:
            level.transversal[0] = self._identity
            level.inverses[0] = self._identity
        self._clean = np.ones(self.width - self.base_width, dtype=bool)
        for g in gens:
            self._add(0, g)
        logger.debug("chain of width %d (base %d): orbit sizes %s, %d row products",
                     self.width, self.base_width, self.orbit_sizes(), self.work)

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        self.work += 1
        if self.work > self.budget:
            raise BudgetExceeded("direct-power chain work", self.budget, self.work)
        return self.group.mul[a, b]

    # Schreier-Sims

    def _sift(self, h: np.ndarray, start: int) -> Tuple[int, np.ndarray]:
        for j in range(start, self.base_width):
            c = int(h[j])
            if c == 0:
                continue
            t_inv = self._levels[j].inverses.get(c)
            if t_inv is None:
                return j, h
            h = self._mul(h, t_inv)
        return self.base_width, h

    def _add(self, start: int, h: np.ndarray) -> None:
        j, residue = self._sift(h, start)
        if j == self.base_width:
            self._clean &= residue[self.base_width:] == 0
            return
        self._add_nonmember(start, residue)

    def _add_nonmember(self, j: int, h: np.ndarray) -> None:
        """h fixes the first j coordinates and lies outside H_j."""
        if h[j] == 0:
            self._add_nonmember(j + 1, h)
        else:
            self._levels[j].gens.append((self._next_id, h))
            self._next_id += 1
        self._extend_orbit(j)
        self._sift_schreier_generators(j)

    def _generators_from(self, j: int) -> List[Tuple[int, np.ndarray]]:
        return [g for level in self._levels[j:] for g in level.gens]

    def _extend_orbit(self, j: int) -> None:
        # existing transversal entries are kept so sifted pairs stay valid
        level = self._levels[j]
        gens = self._generators_from(j)
        queue = sorted(level.transversal)
        head = 0
        while head < len(queue):
            c = queue[head]
            head += 1
            for _, s in gens:
                d = int(self.group.mul[c, s[j]])
                if d not in level.transversal:
                    t = self._mul(level.transversal[c], s)
                    level.transversal[d] = t
                    level.inverses[d] = self.group.inv[t]
                    queue.append(d)

    def _sift_schreier_generators(self, j: int) -> None:
        level = self._levels[j]
        while True:
            pending = [(c, gid, s) for c in sorted(level.transversal)
                       for gid, s in self._generators_from(j)
                       if (c, gid) not in level.done]
            if not pending:
                return
            for c, gid, s in pending:
                level.done.add((c, gid))
                ts = self._mul(level.transversal[c], s)
                d = int(ts[j])
                self._add(j + 1, self._mul(ts, level.inverses[d]))

    # queries

    def orbit_sizes(self) -> List[int]:
        return [len(level.transversal) for level in self._levels]

    def order(self) -> int:
        """Order of the projection onto the base coordinates."""
        result = 1
        for size in self.orbit_sizes():
            result *= size
        return result

    def strong_generators(self) -> List[np.ndarray]:
        return [s for _, s in self._generators_from(0)]

    def contains(self, t) -> bool:
        """Membership test; exact when every coordinate is a base coordinate."""
        j, residue = self._sift(np.asarray(t, dtype=INDEX_DTYPE), 0)
        return j == self.base_width and not residue[self.base_width:].any()

    def clean_passengers(self) -> np.ndarray:
        """Per passenger coordinate: True iff the base projection stays injective with it."""
        return self._clean.copy()

    def elements(self) -> np.ndarray:
        """All base projections, as rows sorted lexicographically."""
        if self.order() > self.budget:
            raise BudgetExceeded("direct-power subgroup size", self.budget, self.order())
        elems = self._identity[None, :self.base_width]
        for j in reversed(range(self.base_width)):
            level = self._levels[j]
            reps = np.stack([level.transversal[c][:self.base_width]
                             for c in sorted(level.transversal)])
            # H_j = H_{j+1} T_j
            elems = self.group.mul[elems[:, None, :], reps[None, :, :]].reshape(-1, self.base_width)
        codes = encode_rows(elems, self.group.order)
        return elems[np.argsort(codes, kind="stable")]


def encode_rows(rows: np.ndarray, base: int) -> np.ndarray:
    """Mixed-radix code of each row, most significant coordinate first."""
    rows = np.asarray(rows, dtype=np.int64)
    width = rows.shape[1]
    if width and base ** width >= 2 ** 62:
        raise BadParameter(f"tuples of width {width} over order {base} do not fit a 64-bit code")
    weights = np.array([base ** (width - 1 - k) for k in range(width)], dtype=np.int64)
    return rows @ weights


def direct_power_closure(group: FiniteGroup, generators: np.ndarray,
                         config: Optional[Config] = None) -> np.ndarray:
    """Enumerate the subgroup of G^m generated by the given tuples, as sorted rows."""
    return PowerChain(group, generators, config=config).elements()
