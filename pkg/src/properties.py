"""
Structural properties of finite groups and the implications checked between them.

Every check returns a PropertyVerdict. A false verdict carries witnesses that
name concrete elements and subgroups by label, and validate_witnesses re-checks
them with plain loops over the multiplication table.
"""
import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .config import Config
from .errors import BadParameter, CharacterizationDisagreement
from .groups import (INDEX_DTYPE, FiniteGroup, Subgroup, centralizer, conjugate_subgroup,
                     join, normal_closure, subgroup_generate)
from .lattice import (conjugacy_classes, enumerate_subgroups, has_class_at_most, is_nilpotent,
                      lower_central_series, nilpotency_class, normal_subgroups)

logger = logging.getLogger(__name__)

LOCALLY_NILPOTENT_NOTE = ("locally nilpotent subgroups are taken to be the nilpotent subgroups "
                          "(they coincide in a finite group)")
TRIVIAL_DOMAIN_NOTE = "the trivial group counts as a domain (it has no non-trivial normal subgroup)"


@dataclass
class PropertyVerdict:
    subject: str
    property: str
    params: Dict[str, Any] = field(default_factory=dict)
    holds: bool = True
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    facts: Dict[str, Any] = field(default_factory=dict)
    skipped: Optional[str] = None
    cost: Dict[str, Optional[int]] = field(default_factory=lambda: {"micros": None})

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["micros"] = data.pop("cost").get("micros")
        return data


class ZeroDivisorRoute(str, Enum):
    CONJUGATES = "conjugates"
    NORMAL_CENTRALIZER = "normal-centralizer"


class DomainMethod(str, Enum):
    ZERO_DIVISOR = "zero-divisor"
    NORMAL_CENTRALIZER = "normal-centralizer"
    MONOLITH = "monolith"
    ALL = "all"


class NilpotencyFamily(str, Enum):
    ABELIAN = "abelian"
    CLASS = "nilpotent-class"
    NILPOTENT = "nilpotent"


def describe(H: Subgroup) -> Dict[str, Any]:
    return {"order": H.order, "elements": H.labels()}


def _first_nontrivial(H: Subgroup) -> Optional[int]:
    for x in H.elements:
        if x:
            return x
    return None


# zero divisors and domains --------------------------------------------------

def is_zero_divisor(G: FiniteGroup, x: int,
                    route: ZeroDivisorRoute = ZeroDivisorRoute.CONJUGATES) -> Tuple[bool, Optional[int]]:
    """
    x != 1 is a zero divisor when some y != 1 commutes with every conjugate of x.
    The conjugates route scans the conjugation table, the other one takes the
    centralizer of the normal closure of x. Returns (verdict, smallest such y).
    """
    x = int(x)
    if x == 0:
        return False, None
    if ZeroDivisorRoute(route) is ZeroDivisorRoute.CONJUGATES:
        conj = G.conjugation_table()[x]
        mask = G.commuting_table()[:, np.unique(conj)].all(axis=1)
        mask[0] = False
        ys = np.flatnonzero(mask)
        return (True, int(ys[0])) if ys.size else (False, None)
    C = centralizer(G, normal_closure(G, [x]).elements)
    y = _first_nontrivial(C)
    return y is not None, y


def monolith(G: FiniteGroup) -> Optional[Subgroup]:
    """The unique minimal normal subgroup, if there is exactly one."""
    minimal = normal_subgroups(G, minimal_only=True)
    return minimal[0] if len(minimal) == 1 else None


def _domain_by_zero_divisors(G: FiniteGroup) -> Tuple[bool, List[Dict[str, Any]]]:
    for cls in conjugacy_classes(G):
        x = cls[0]
        found, y = is_zero_divisor(G, x, ZeroDivisorRoute.CONJUGATES)
        if found:
            return False, [{"kind": "zero-divisor", "x": G.label(x), "y": G.label(y)}]
    return True, []


def _domain_by_normal_centralizers(G: FiniteGroup) -> Tuple[bool, List[Dict[str, Any]]]:
    for N in normal_subgroups(G):
        if N.is_trivial:
            continue
        C = centralizer(G, N.elements)
        if not C.is_trivial:
            return False, [{"kind": "normal-centralizer", "normal": describe(N),
                            "centralizer": describe(C)}]
    return True, []


def _disjoint_normal_pair(G: FiniteGroup) -> Tuple[Subgroup, Subgroup]:
    minimal = normal_subgroups(G, minimal_only=True)
    return minimal[0], minimal[1]


def _domain_by_monolith(G: FiniteGroup) -> Tuple[bool, List[Dict[str, Any]]]:
    M = monolith(G)
    if M is None:
        A, B = _disjoint_normal_pair(G)
        return False, [{"kind": "no-monolith", "first": describe(A), "second": describe(B)}]
    C = centralizer(G, M.elements)
    if not C.is_trivial:
        return False, [{"kind": "monolith-centralizer", "monolith": describe(M),
                        "centralizer": describe(C)}]
    return True, []


_DOMAIN_ROUTES: Dict[DomainMethod, Callable[[FiniteGroup], Tuple[bool, List[Dict[str, Any]]]]] = {
    DomainMethod.ZERO_DIVISOR: _domain_by_zero_divisors,
    DomainMethod.NORMAL_CENTRALIZER: _domain_by_normal_centralizers,
    DomainMethod.MONOLITH: _domain_by_monolith,
}


def is_domain(G: FiniteGroup, method: DomainMethod = DomainMethod.ALL,
              config: Optional[Config] = None) -> PropertyVerdict:
    method = DomainMethod(method)
    verdict = PropertyVerdict(G.name, "domain", {"method": method.value})
    if G.order == 1:
        verdict.notes.append(TRIVIAL_DOMAIN_NOTE)
        verdict.facts["routes"] = {m.value: True for m in _DOMAIN_ROUTES} \
            if method is DomainMethod.ALL else {method.value: True}
        return verdict
    routes = list(_DOMAIN_ROUTES) if method is DomainMethod.ALL else [method]
    results = {m: _DOMAIN_ROUTES[m](G) for m in routes}
    verdict.facts["routes"] = {m.value: results[m][0] for m in routes}
    outcomes = {holds for holds, _ in results.values()}
    if len(outcomes) > 1:
        raise CharacterizationDisagreement(G.name, verdict.facts["routes"])
    verdict.holds = outcomes.pop()
    for _, witnesses in results.values():
        verdict.witnesses.extend(witnesses)
    return verdict


# malnormality and conjugate separation --------------------------------------

def is_malnormal(G: FiniteGroup, H: Subgroup) -> Tuple[bool, Optional[int]]:
    """H meets each conjugate H^x with x outside H trivially; returns (verdict, first bad x)."""
    nontrivial = np.asarray([h for h in H.elements if h], dtype=INDEX_DTYPE)
    if nontrivial.size == 0 or H.is_whole:
        return True, None
    conj = G.conjugation_table()
    # hits[x]: some h != 1 in H has h^x in H
    hits = H.mask[conj[nontrivial]].any(axis=0)
    bad = np.flatnonzero(hits & ~H.mask)
    return (False, int(bad[0])) if bad.size else (True, None)


def malnormality_witness(G: FiniteGroup, H: Subgroup, x: int) -> Dict[str, Any]:
    meet = Subgroup(G, H.members & conjugate_subgroup(G, H, x).members)
    return {"kind": "not-malnormal", "subgroup": describe(H), "conjugator": G.label(x),
            "intersection": describe(meet)}


def _is_abelian_subgroup(G: FiniteGroup, H: Subgroup) -> bool:
    e = np.asarray(H.elements, dtype=INDEX_DTYPE)
    return bool(G.commuting_table()[np.ix_(e, e)].all())


def _satisfies(G: FiniteGroup, H: Subgroup, family: NilpotencyFamily, k: Optional[int]) -> bool:
    if family is NilpotencyFamily.ABELIAN:
        return _is_abelian_subgroup(G, H)
    if family is NilpotencyFamily.CLASS:
        return has_class_at_most(H, k)
    return is_nilpotent(H)


def _check_family(family: NilpotencyFamily, k: Optional[int]) -> NilpotencyFamily:
    family = NilpotencyFamily(family)
    if family is NilpotencyFamily.CLASS and (k is None or k < 1):
        raise BadParameter(f"nilpotency class bound must be a positive integer, got {k}")
    return family


def maximal_members(G: FiniteGroup, family: NilpotencyFamily, k: Optional[int] = None,
                    config: Optional[Config] = None) -> List[Subgroup]:
    """Inclusion-maximal subgroups among those in the family, sorted by (order, bitset)."""
    family = _check_family(family, k)
    members = [H for H in enumerate_subgroups(G, config) if _satisfies(G, H, family, k)]
    result = []
    for H in members:
        if not any(K.order > H.order and H.issubset(K) for K in members):
            result.append(H)
    return result


def _separation_name(family: NilpotencyFamily) -> str:
    return {NilpotencyFamily.ABELIAN: "csa", NilpotencyFamily.CLASS: "csn",
            NilpotencyFamily.NILPOTENT: "csln"}[family]


def is_conjugately_separated(G: FiniteGroup, family: NilpotencyFamily, k: Optional[int] = None,
                             config: Optional[Config] = None) -> PropertyVerdict:
    """Every maximal member of the family is malnormal (CSA, CSN_k, or all maximal nilpotent)."""
    family = _check_family(family, k)
    params = {"k": k} if family is NilpotencyFamily.CLASS else {}
    verdict = PropertyVerdict(G.name, _separation_name(family), params)
    if family is NilpotencyFamily.NILPOTENT:
        verdict.notes.append(LOCALLY_NILPOTENT_NOTE)
    maximal = maximal_members(G, family, k, config)
    verdict.facts["maximal_members"] = len(maximal)
    for M in maximal:
        ok, x = is_malnormal(G, M)
        if not ok:
            verdict.holds = False
            verdict.witnesses.append(malnormality_witness(G, M, x))
            break
    return verdict


def is_commutative_transitive(G: FiniteGroup) -> PropertyVerdict:
    """Commuting is transitive on non-trivial elements iff every C(b), b != 1, is abelian."""
    verdict = PropertyVerdict(G.name, "ct")
    commuting = G.commuting_table()
    for b in range(1, G.order):
        cb = np.flatnonzero(commuting[b])
        cb = cb[cb != 0]
        block = commuting[np.ix_(cb, cb)]
        if not block.all():
            i, j = np.argwhere(~block)[0]
            verdict.holds = False
            verdict.witnesses.append({"kind": "commutation-not-transitive",
                                      "a": G.label(cb[i]), "b": G.label(b), "c": G.label(cb[j])})
            break
    return verdict


def has_NTk(G: FiniteGroup, k: Optional[int], config: Optional[Config] = None) -> PropertyVerdict:
    """
    Class <= k subgroups with non-trivial intersection generate a class <= k
    subgroup; k=None reads "nilpotent" for "class <= k".
    """
    if k is not None and k < 1:
        raise BadParameter(f"nilpotency class bound must be a positive integer, got {k}")
    verdict = PropertyVerdict(G.name, "ntk" if k is not None else "nt", {"k": k} if k else {})
    if has_class_at_most(G, k):
        verdict.facts["joins_checked"] = 0
        verdict.notes.append("the whole group satisfies the class bound")
        return verdict
    family = [H for H in enumerate_subgroups(G, config) if not H.is_trivial
              and has_class_at_most(H, k)]
    joins: Dict[int, Subgroup] = {}
    for a, H1 in enumerate(family):
        for H2 in family[a + 1:]:
            if H1.members & H2.members == 1 or H1.issubset(H2) or H2.issubset(H1):
                continue
            bits = H1.members | H2.members
            J = joins.get(bits)
            if J is None:
                J = joins[bits] = join(G, H1, H2)
            if not has_class_at_most(J, k):
                verdict.holds = False
                verdict.witnesses.append({"kind": "join-not-nilpotent", "first": describe(H1),
                                          "second": describe(H2), "join": describe(J),
                                          "join_class": nilpotency_class(J)})
                verdict.facts["joins_checked"] = len(joins)
                return verdict
    verdict.facts["joins_checked"] = len(joins)
    return verdict


# implications ---------------------------------------------------------------

def _implication(G: FiniteGroup, name: str, params: Dict[str, Any], antecedent: bool,
                 consequent: PropertyVerdict, facts: Dict[str, Any]) -> PropertyVerdict:
    verdict = PropertyVerdict(G.name, name, params, facts=dict(facts, antecedent=antecedent))
    verdict.notes.extend(consequent.notes)
    if antecedent and not consequent.holds:
        verdict.holds = False
        verdict.witnesses.extend(consequent.witnesses)
    return verdict


def theorem2_check(G: FiniteGroup, k: int, config: Optional[Config] = None) -> PropertyVerdict:
    """CSN_k and not nilpotent implies domain."""
    csn = is_conjugately_separated(G, NilpotencyFamily.CLASS, k, config)
    nilpotent = is_nilpotent(G)
    domain = is_domain(G, DomainMethod.ALL, config)
    return _implication(G, "theorem2", {"k": k}, csn.holds and not nilpotent, domain,
                        {"csn_k": csn.holds, "nilpotent": nilpotent, "domain": domain.holds})


def theorem3_check(G: FiniteGroup, config: Optional[Config] = None) -> PropertyVerdict:
    """Not nilpotent and every maximal nilpotent subgroup malnormal implies domain."""
    csln = is_conjugately_separated(G, NilpotencyFamily.NILPOTENT, None, config)
    nilpotent = is_nilpotent(G)
    domain = is_domain(G, DomainMethod.ALL, config)
    verdict = _implication(G, "theorem3", {}, csln.holds and not nilpotent, domain,
                           {"maximal_nilpotent_malnormal": csln.holds, "nilpotent": nilpotent,
                            "domain": domain.holds})
    if LOCALLY_NILPOTENT_NOTE not in verdict.notes:
        verdict.notes.append(LOCALLY_NILPOTENT_NOTE)
    return verdict


def csa_implies_ct_check(G: FiniteGroup, config: Optional[Config] = None) -> PropertyVerdict:
    """CSA implies commutative transitive; also CSA agrees with CSN_1."""
    csa = is_conjugately_separated(G, NilpotencyFamily.ABELIAN, None, config)
    csn1 = is_conjugately_separated(G, NilpotencyFamily.CLASS, 1, config)
    ct = is_commutative_transitive(G)
    verdict = _implication(G, "csa-ct", {}, csa.holds, ct,
                           {"csa": csa.holds, "ct": ct.holds, "csn_1": csn1.holds})
    if csa.holds != csn1.holds:
        verdict.holds = False
        verdict.witnesses.append({"kind": "csa-csn1-mismatch", "csa": csa.holds,
                                  "csn_1": csn1.holds})
    return verdict


def csa_domain_check(G: FiniteGroup, config: Optional[Config] = None) -> PropertyVerdict:
    """A non-abelian CSA group is a domain."""
    csa = is_conjugately_separated(G, NilpotencyFamily.ABELIAN, None, config)
    domain = is_domain(G, DomainMethod.ALL, config)
    return _implication(G, "csa-domain", {}, csa.holds and not G.is_abelian, domain,
                        {"csa": csa.holds, "abelian": G.is_abelian, "domain": domain.holds})


def monolith_check(G: FiniteGroup, config: Optional[Config] = None) -> PropertyVerdict:
    """
    Domain iff the monolith exists and is non-abelian. The facts also record
    whether "non-abelian and monolithic iff domain" holds for this group.
    """
    domain = is_domain(G, DomainMethod.ALL, config)
    M = monolith(G)
    verdict = PropertyVerdict(G.name, "monolith", notes=list(domain.notes))
    monolith_abelian = None if M is None else _is_abelian_subgroup(G, M)
    sharp = M is not None and not monolith_abelian
    remark_agrees = None
    if not G.is_abelian:
        remark_agrees = domain.holds == (M is not None)
    verdict.facts = {"domain": domain.holds, "monolith_order": None if M is None else M.order,
                     "monolith_abelian": monolith_abelian, "remark_agrees": remark_agrees}
    if G.order == 1:
        return verdict
    if domain.holds != sharp:
        verdict.holds = False
        verdict.witnesses.extend(domain.witnesses or
                                 [{"kind": "monolith", "monolith": None if M is None else describe(M)}])
    return verdict


def csln_nt_check(G: FiniteGroup, config: Optional[Config] = None) -> PropertyVerdict:
    """All maximal nilpotent subgroups malnormal implies nilpotent transitivity."""
    csln = is_conjugately_separated(G, NilpotencyFamily.NILPOTENT, None, config)
    nt = has_NTk(G, None, config)
    verdict = _implication(G, "csln-nt", {}, csln.holds, nt,
                           {"maximal_nilpotent_malnormal": csln.holds, "nt": nt.holds})
    if LOCALLY_NILPOTENT_NOTE not in verdict.notes:
        verdict.notes.append(LOCALLY_NILPOTENT_NOTE)
    return verdict


def csnk_ntk_check(G: FiniteGroup, k: int, config: Optional[Config] = None) -> PropertyVerdict:
    csn = is_conjugately_separated(G, NilpotencyFamily.CLASS, k, config)
    nt = has_NTk(G, k, config)
    return _implication(G, "csnk-ntk", {"k": k}, csn.holds, nt,
                        {"csn_k": csn.holds, "nt_k": nt.holds})


# witness re-validation ------------------------------------------------------

def _raw_mul(G: FiniteGroup, a: int, b: int) -> int:
    return int(G.mul[a][b])


def _raw_inverse(G: FiniteGroup, a: int) -> int:
    for b in range(G.order):
        if _raw_mul(G, a, b) == 0:
            return b
    raise BadParameter(f"element {a} has no inverse")


def _raw_commute(G: FiniteGroup, a: int, b: int) -> bool:
    return _raw_mul(G, a, b) == _raw_mul(G, b, a)


def _raw_conjugate(G: FiniteGroup, x: int, g: int) -> int:
    return _raw_mul(G, _raw_mul(G, _raw_inverse(G, g), x), g)


def _raw_members(G: FiniteGroup, described: Dict[str, Any]) -> List[int]:
    return [G.index_of(label) for label in described["elements"]]


def _raw_is_subgroup(G: FiniteGroup, members: List[int]) -> bool:
    s = set(members)
    return 0 in s and all(_raw_mul(G, a, b) in s for a in s for b in s)


def _raw_is_normal(G: FiniteGroup, members: List[int]) -> bool:
    s = set(members)
    return _raw_is_subgroup(G, members) and all(_raw_conjugate(G, h, g) in s
                                                  for h in s for g in range(G.order))


def _raw_centralizes(G: FiniteGroup, c: int, members: List[int]) -> bool:
    return all(_raw_commute(G, c, h) for h in members)


def _check_zero_divisor(G: FiniteGroup, w: Dict[str, Any]) -> bool:
    x, y = G.index_of(w["x"]), G.index_of(w["y"])
    return x != 0 and y != 0 and all(_raw_commute(G, _raw_conjugate(G, x, g), y)
                                     for g in range(G.order))


def _check_centralized_normal(G: FiniteGroup, w: Dict[str, Any]) -> bool:
    key = "normal" if "normal" in w else "monolith"
    normal = _raw_members(G, w[key])
    cent = _raw_members(G, w["centralizer"])
    return (len(normal) > 1 and _raw_is_normal(G, normal)
            and any(c != 0 and _raw_centralizes(G, c, normal) for c in cent))


def _check_no_monolith(G: FiniteGroup, w: Dict[str, Any]) -> bool:
    A, B = _raw_members(G, w["first"]), _raw_members(G, w["second"])
    return (len(A) > 1 and len(B) > 1 and _raw_is_normal(G, A) and _raw_is_normal(G, B)
            and set(A) & set(B) == {0})


def _check_not_malnormal(G: FiniteGroup, w: Dict[str, Any]) -> bool:
    H = set(_raw_members(G, w["subgroup"]))
    x = G.index_of(w["conjugator"])
    if x in H or not _raw_is_subgroup(G, list(H)):
        return False
    return any(h != 0 and _raw_conjugate(G, h, x) in H for h in H)


def _check_not_transitive(G: FiniteGroup, w: Dict[str, Any]) -> bool:
    a, b, c = (G.index_of(w[key]) for key in ("a", "b", "c"))
    return (0 not in (a, b, c) and _raw_commute(G, a, b) and _raw_commute(G, b, c)
            and not _raw_commute(G, a, c))


def _check_join(G: FiniteGroup, w: Dict[str, Any]) -> bool:
    A, B = _raw_members(G, w["first"]), _raw_members(G, w["second"])
    if not (_raw_is_subgroup(G, A) and _raw_is_subgroup(G, B)) or set(A) & set(B) == {0}:
        return False
    J = subgroup_generate(G, A + B)
    return lower_central_series(J)[1] == w["join_class"]


_WITNESS_CHECKS: Dict[str, Callable[[FiniteGroup, Dict[str, Any]], bool]] = {
    "zero-divisor": _check_zero_divisor,
    "normal-centralizer": _check_centralized_normal,
    "monolith-centralizer": _check_centralized_normal,
    "no-monolith": _check_no_monolith,
    "not-malnormal": _check_not_malnormal,
    "commutation-not-transitive": _check_not_transitive,
    "join-not-nilpotent": _check_join,
}


def validate_witnesses(G: FiniteGroup, verdict: PropertyVerdict) -> bool:
    """Re-check every witness of a false verdict against the raw table."""
    if verdict.holds:
        return True
    if not verdict.witnesses:
        return False
    for w in verdict.witnesses:
        check = _WITNESS_CHECKS.get(w.get("kind"))
        if check is None or not check(G, w):
            logger.warning("witness %s for %s on %s did not re-validate", w.get("kind"),
                           verdict.property, verdict.subject)
            return False
    return True
