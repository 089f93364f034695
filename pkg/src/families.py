"""
Built-in group families with documented element orderings.

    cyclic n               a^k at index k                      labels e, a, a^2, ...
    dihedral 2n            r^i s^j at index j*n + i            labels e, r, r^2, s, rs, r^2s, ...
    dicyclic 4n            a^i x^j at index j*2n + i           labels e, a, ..., x, ax, ...
    symmetric n            permutation closure of (1 2 .. n), (1 2)
    alternating n          permutation closure of (1 2 3), (1 2 4), ..., (1 2 n)
    elementary-abelian p^k vector v at index sum v_i p^i       labels are coordinate strings
    direct-product G1*G2   (g1, g2) at index g1*|G2| + g2      labels (l1,l2)

Family specs are strings such as "cyclic:6", "dihedral:8", "elementary-abelian:2^3"
and products "cyclic:2*symmetric:3".
"""
import logging
import re
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import Config, get_config
from .errors import BadParameter, OrderCapExceeded
from .groups import INDEX_DTYPE, FiniteGroup, Provenance, from_permutation_generators

logger = logging.getLogger(__name__)


class Family(str, Enum):
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    DICYCLIC = "dicyclic"
    SYMMETRIC = "symmetric"
    ALTERNATING = "alternating"
    ELEMENTARY_ABELIAN = "elementary-abelian"
    DIRECT_PRODUCT = "direct-product"


def _power_label(symbol: str, k: int) -> str:
    if k == 0:
        return ""
    return symbol if k == 1 else f"{symbol}^{k}"


def _check_order(order: int, config: Config) -> None:
    if order > config.max_order:
        raise OrderCapExceeded("group order", config.max_order, order)


def _from_rule(order: int, rule, labels: Sequence[str], provenance: Provenance,
               name: str) -> FiniteGroup:
    idx = np.arange(order)
    mul = np.asarray(rule(idx[:, None], idx[None, :]), dtype=INDEX_DTYPE)
    inv = np.argmax(mul == 0, axis=1)
    return FiniteGroup(mul, inv, labels, provenance, name)


def cyclic(n: int, config: Optional[Config] = None) -> FiniteGroup:
    config = get_config(config)
    if n < 1:
        raise BadParameter(f"cyclic order must be positive, got {n}")
    _check_order(n, config)
    labels = ["e"] + [_power_label("a", k) for k in range(1, n)]
    return _from_rule(n, lambda x, y: (x + y) % n, labels,
                      Provenance("family", f"cyclic {n}"), f"cyclic:{n}")


def dihedral(order: int, config: Optional[Config] = None) -> FiniteGroup:
    """Dihedral group of the given order 2n (n >= 1)."""
    config = get_config(config)
    if order < 2 or order % 2:
        raise BadParameter(f"dihedral order must be even and at least 2, got {order}")
    _check_order(order, config)
    n = order // 2

    def rule(x, y):
        i, a = x % n, x // n
        k, b = y % n, y // n
        sign = np.where(a == 1, -1, 1)
        return ((a + b) % 2) * n + (i + sign * k) % n

    labels = []
    for j in range(2):
        for i in range(n):
            text = _power_label("r", i) + ("s" if j else "")
            labels.append(text or "e")
    return _from_rule(order, rule, labels, Provenance("family", f"dihedral {order}"),
                      f"dihedral:{order}")


def dicyclic(order: int, config: Optional[Config] = None) -> FiniteGroup:
    """<a, x | a^2n = 1, x^2 = a^n, x^-1 a x = a^-1> of order 4n; order 8 is Q8."""
    config = get_config(config)
    if order < 4 or order % 4:
        raise BadParameter(f"dicyclic order must be a positive multiple of 4, got {order}")
    _check_order(order, config)
    n = order // 4
    m = 2 * n

    def rule(x, y):
        i, a = x % m, x // m
        k, b = y % m, y // m
        # a^i x^a . a^k x^b: moving a^k past x inverts it, x.x = a^n
        exp = np.where(a == 1, i - k, i + k)
        carry = (a == 1) & (b == 1)
        exp = np.where(carry, exp + n, exp)
        return ((a + b) % 2) * m + exp % m

    labels = []
    for j in range(2):
        for i in range(m):
            text = _power_label("a", i) + ("x" if j else "")
            labels.append(text or "e")
    return _from_rule(order, rule, labels, Provenance("family", f"dicyclic {order}"),
                      f"dicyclic:{order}")


def symmetric(n: int, config: Optional[Config] = None) -> FiniteGroup:
    if n < 1:
        raise BadParameter(f"symmetric degree must be positive, got {n}")
    gens: List[str] = []
    if n >= 2:
        gens = ["(" + " ".join(str(i) for i in range(1, n + 1)) + ")", "(1 2)"]
    return from_permutation_generators(n, gens, name=f"symmetric:{n}",
                                       provenance=Provenance("family", f"symmetric {n}"),
                                       config=config)


def alternating(n: int, config: Optional[Config] = None) -> FiniteGroup:
    if n < 1:
        raise BadParameter(f"alternating degree must be positive, got {n}")
    gens = [f"(1 2 {k})" for k in range(3, n + 1)]
    return from_permutation_generators(n, gens, name=f"alternating:{n}",
                                       provenance=Provenance("family", f"alternating {n}"),
                                       config=config)


def elementary_abelian(p: int, k: int, config: Optional[Config] = None) -> FiniteGroup:
    config = get_config(config)
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise BadParameter(f"elementary abelian groups need a prime, got {p}")
    if k < 1:
        raise BadParameter(f"elementary abelian rank must be positive, got {k}")
    order = p ** k
    _check_order(order, config)
    digits = np.array([[(x // p ** i) % p for i in range(k)] for x in range(order)])
    weights = p ** np.arange(k)

    def rule(x, y):
        return (((digits[x] + digits[y]) % p) * weights).sum(axis=-1)

    labels = ["".join(str(d) for d in row) for row in digits]
    return _from_rule(order, rule, labels, Provenance("family", f"elementary-abelian {p}^{k}"),
                      f"elementary-abelian:{p}^{k}")


def direct_product(G1: FiniteGroup, G2: FiniteGroup,
                   config: Optional[Config] = None) -> FiniteGroup:
    config = get_config(config)
    n1, n2 = G1.order, G2.order
    _check_order(n1 * n2, config)
    mul = (G1.mul[:, None, :, None] * n2 + G2.mul[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    inv = (G1.inv[:, None] * n2 + G2.inv[None, :]).reshape(-1)
    labels = [f"({a},{b})" for a in G1.labels for b in G2.labels]
    name = f"{G1.name}*{G2.name}"
    return FiniteGroup(mul, inv, labels, Provenance("product", f"{G1.name} x {G2.name}"), name)


_SPEC_RE = re.compile(r"^([a-z-]+):(\d+)(?:\^(\d+))?$")


def builtin(family: str, parameters: Tuple = (), config: Optional[Config] = None) -> FiniteGroup:
    """Construct a member of a built-in family; direct-product takes two groups."""
    try:
        fam = Family(family)
    except ValueError:
        raise BadParameter(f"unknown family {family!r}")
    if fam is Family.DIRECT_PRODUCT:
        if len(parameters) != 2 or not all(isinstance(g, FiniteGroup) for g in parameters):
            raise BadParameter("direct-product takes two groups")
        return direct_product(parameters[0], parameters[1], config)
    if fam is Family.ELEMENTARY_ABELIAN:
        if len(parameters) != 2:
            raise BadParameter("elementary-abelian takes (p, k)")
        return elementary_abelian(int(parameters[0]), int(parameters[1]), config)
    if len(parameters) != 1:
        raise BadParameter(f"{fam.value} takes one integer parameter")
    builder = {
        Family.CYCLIC: cyclic,
        Family.DIHEDRAL: dihedral,
        Family.DICYCLIC: dicyclic,
        Family.SYMMETRIC: symmetric,
        Family.ALTERNATING: alternating,
    }[fam]
    return builder(int(parameters[0]), config)


def parse_family_spec(spec: str, config: Optional[Config] = None) -> FiniteGroup:
    """Build a group from 'family:n', 'elementary-abelian:p^k' or 'spec*spec*...'."""
    parts = [p.strip() for p in spec.split("*")]
    if not spec.strip() or not all(parts):
        raise BadParameter(f"malformed family spec {spec!r}")
    groups = []
    for part in parts:
        match = _SPEC_RE.match(part)
        if not match:
            raise BadParameter(f"malformed family spec {part!r}")
        family, first, second = match.groups()
        if family == Family.ELEMENTARY_ABELIAN.value:
            if second is None:
                raise BadParameter(f"elementary-abelian needs p^k, got {part!r}")
            params: Tuple = (int(first), int(second))
        else:
            if second is not None:
                raise BadParameter(f"{family} takes a single integer, got {part!r}")
            params = (int(first),)
        groups.append(builtin(family, params, config))
    result = groups[0]
    for other in groups[1:]:
        result = direct_product(result, other, config)
    return result
