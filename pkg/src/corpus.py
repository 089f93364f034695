"""
Corpus resolution and verification suites.

A corpus is a deduplicated list of groups. Each suite turns one group into a
list of PropertyVerdicts; corpus_verify runs the suites per subject (in worker
processes when jobs > 1) and reduces the results in subject order.
"""
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import Config, get_config
from .coordinate import theorem1_crosscheck
from .errors import BadParameter, CapExceeded, CharacterizationDisagreement
from .families import (alternating, cyclic, dicyclic, dihedral, direct_product,
                       elementary_abelian, parse_family_spec, symmetric)
from .fileio import ingest_group
from .groups import FiniteGroup
from .properties import (DomainMethod, PropertyVerdict, csa_domain_check, csa_implies_ct_check,
                         csln_nt_check, csnk_ntk_check, is_domain, monolith_check,
                         theorem2_check, theorem3_check, validate_witnesses)
from .report import Report, SubjectResult, build_report
from .utils import stopwatch
from .words import Const, EquationSystem, Var, make_word
from .zariski import (AlgebraicSet, Mode, algebraic_closure, bounded_word_closure, is_algebraic,
                      is_irreducible, make_set, reducibility_oracle, solution_set,
                      topological_closure, union_is_algebraic)

logger = logging.getLogger(__name__)

BUILTIN = "builtin"

SUITES = ("domain-equivalence", "theorem1", "theorem2", "theorem3", "csa-ct", "csnk-ntk",
          "zariski-laws", "csa-domain", "monolith", "csln-nt")
PARAMETRIZED = ("theorem2", "csnk-ntk")


@dataclass(frozen=True)
class CorpusSpec:
    sources: Tuple[str, ...] = (BUILTIN,)
    sweep_order: int = 24                  # family sweep bound for the builtin source
    min_order: int = 1
    max_order: Optional[int] = None
    abelian: Optional[bool] = None

    def accepts(self, G: FiniteGroup) -> bool:
        if G.order < self.min_order:
            return False
        if self.max_order is not None and G.order > self.max_order:
            return False
        return self.abelian is None or G.is_abelian == self.abelian


@dataclass(frozen=True)
class SuiteSettings:
    laws_cases: int = 20                   # randomized closure cases per group
    laws_max_order: int = 8
    union_samples: int = 50
    theorem1_samples: int = 20


# corpus ---------------------------------------------------------------------

def _primes(limit: int) -> List[int]:
    return [p for p in range(2, limit + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def builtin_corpus(sweep_order: int = 24, config: Optional[Config] = None) -> List[FiniteGroup]:
    """
    Every built-in family member up to sweep_order, products of small factors,
    plus alternating:5 and the dihedral and dicyclic groups up to order 32.
    """
    config = get_config(config)
    groups: List[FiniteGroup] = []
    groups.extend(cyclic(n, config) for n in range(1, sweep_order + 1))
    groups.extend(dihedral(n, config) for n in range(2, max(sweep_order, 32) + 1, 2))
    groups.extend(dicyclic(n, config) for n in range(4, max(sweep_order, 32) + 1, 4))
    for n in range(1, 5):
        for build in (symmetric, alternating):
            G = build(n, config)
            if G.order <= sweep_order:
                groups.append(G)
    groups.append(alternating(5, config))
    for p in _primes(sweep_order):
        k = 1
        while p ** k <= sweep_order:
            groups.append(elementary_abelian(p, k, config))
            k += 1
    factors = [cyclic(2, config), cyclic(3, config), cyclic(4, config), symmetric(3, config),
               dihedral(8, config), dicyclic(8, config), alternating(4, config)]
    for i, A in enumerate(factors):
        for B in factors[i:]:
            if A.order * B.order <= sweep_order and A.order <= B.order:
                groups.append(direct_product(A, B, config))
    return [G for G in groups if G.order <= config.max_order]


def _load_source(source: str, spec: CorpusSpec, config: Config) -> List[FiniteGroup]:
    if source == BUILTIN:
        return builtin_corpus(spec.sweep_order, config)
    if source.endswith((".gtab", ".gperm")) or Path(source).is_file():
        return [ingest_group(source, config)]
    return [parse_family_spec(source, config)]


def resolve_corpus(spec: CorpusSpec, config: Optional[Config] = None) -> List[FiniteGroup]:
    """Load, filter and deduplicate by (order, table hash); sorted by (order, name)."""
    config = get_config(config)
    seen: Dict[Tuple[int, str], str] = {}
    names: Dict[str, int] = {}
    corpus: List[FiniteGroup] = []
    for source in spec.sources:
        for G in _load_source(source, spec, config):
            if not spec.accepts(G):
                continue
            key = (G.order, G.fingerprint())
            if key in seen:
                logger.debug("%s duplicates %s", G.name, seen[key])
                continue
            seen[key] = G.name
            count = names.get(G.name, 0)
            names[G.name] = count + 1
            if count:
                G.name = f"{G.name}#{count + 1}"
            corpus.append(G)
    corpus.sort(key=lambda G: (G.order, G.name))
    logger.info("corpus of %d groups", len(corpus))
    return corpus


def parse_suite(text: str) -> Tuple[str, Optional[int]]:
    """'theorem2:2' -> ('theorem2', 2); parametrized suites default to k = 1."""
    name, _, arg = text.partition(":")
    if name not in SUITES:
        raise BadParameter(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name not in PARAMETRIZED:
        if arg:
            raise BadParameter(f"suite {name} takes no parameter")
        return name, None
    try:
        k = int(arg) if arg else 1
    except ValueError:
        raise BadParameter(f"suite parameter must be an integer, got {arg!r}")
    if k < 1:
        raise BadParameter(f"suite parameter must be positive, got {k}")
    return name, k


# suites ---------------------------------------------------------------------

def _checked(G: FiniteGroup, verdict: PropertyVerdict) -> PropertyVerdict:
    """A failing verdict whose witnesses do not re-validate is flagged."""
    if verdict.holds is False and verdict.witnesses:
        verdict.facts["witnesses_valid"] = validate_witnesses(G, verdict)
    return verdict


def _domain_equivalence(G: FiniteGroup, k: Optional[int], settings: SuiteSettings,
                        config: Config) -> List[PropertyVerdict]:
    verdict = PropertyVerdict(G.name, "domain-equivalence")
    try:
        domain = is_domain(G, DomainMethod.ALL, config)
    except CharacterizationDisagreement as exc:
        verdict.holds = False
        verdict.witnesses.append({"kind": "characterization-disagreement",
                                  "routes": exc.verdicts})
        return [verdict]
    verdict.facts = {"domain": domain.holds, "routes": domain.facts["routes"]}
    verdict.notes.extend(domain.notes)
    if not domain.holds:
        valid = validate_witnesses(G, domain)
        verdict.facts["witnesses_valid"] = valid
        if not valid:
            verdict.holds = False
            verdict.witnesses.append({"kind": "invalid-witness",
                                      "witnesses": domain.witnesses})
    return [verdict]


def _theorem1(G: FiniteGroup, k: Optional[int], settings: SuiteSettings,
              config: Config) -> List[PropertyVerdict]:
    if not is_domain(G, DomainMethod.ALL, config).holds:
        return [PropertyVerdict(G.name, "theorem1", holds=None,
                                skipped="not a domain; the crosscheck needs one")]
    sets = [make_set(G, 1, [(g,)]) for g in G.elements()]
    if G.order >= 2:
        pairs = list(combinations(G.elements(), 2))
        rng = random.Random(f"{config.seed}:theorem1:{G.fingerprint()}")
        for a, b in rng.sample(pairs, min(settings.theorem1_samples, len(pairs))):
            sets.append(make_set(G, 1, [(a,), (b,)]))
    return [theorem1_crosscheck(G, Y, config).to_verdict() for Y in sets]


def _per_group(check: Callable[..., PropertyVerdict], with_k: bool = False):
    def run(G: FiniteGroup, k: Optional[int], settings: SuiteSettings,
            config: Config) -> List[PropertyVerdict]:
        verdict = check(G, k, config) if with_k else check(G, config)
        return [_checked(G, verdict)]
    return run


# zariski laws ---------------------------------------------------------------

class _LawLog:
    def __init__(self, G: FiniteGroup) -> None:
        self.verdict = PropertyVerdict(G.name, "zariski-laws")
        self.counts: Dict[str, int] = {}

    def check(self, law: str, ok: bool, **detail) -> None:
        self.counts[law] = self.counts.get(law, 0) + 1
        if not ok:
            self.verdict.holds = False
            if len(self.verdict.witnesses) < 10:
                self.verdict.witnesses.append({"kind": "zariski-law", "law": law, **detail})

    def skip(self, law: str) -> None:
        key = f"{law}-unchecked"
        self.counts[key] = self.counts.get(key, 0) + 1


def _random_set(rng: random.Random, G: FiniteGroup, n: int, size: int, mode: Mode) -> AlgebraicSet:
    points = [tuple(rng.randrange(G.order) for _ in range(n)) for _ in range(size)]
    return make_set(G, n, points, mode)


def _random_system(rng: random.Random, G: FiniteGroup, n: int, mode: Mode) -> EquationSystem:
    words = []
    for _ in range(rng.randint(1, 2)):
        letters = []
        for _ in range(rng.randint(1, 3)):
            if mode.coefficients and rng.random() < 0.4:
                letters.append(Const(rng.randrange(G.order)))
            else:
                letters.append(Var(rng.randint(1, n), rng.choice((1, -1, 2))))
        words.append(make_word(G, n, letters, mode.coefficients))
    return EquationSystem(G, n, tuple(words), mode.coefficients)


def _closure_laws(log: _LawLog, rng: random.Random, G: FiniteGroup, settings: SuiteSettings,
                  config: Config) -> None:
    width = config.max_width
    for _ in range(settings.laws_cases):
        n = rng.choice((1, 2))
        mode = rng.choice((Mode.COEFFICIENT, Mode.COEFFICIENT_FREE))
        U = _random_set(rng, G, n, rng.randint(1, max(1, width - 1)), mode)
        closure = algebraic_closure(U, config)
        detail = {"mode": mode.value, "n": n, "points": U.labels()}
        log.check("extensive", U.issubset(closure), **detail)
        bigger = make_set(G, n, U.point_set | _random_set(rng, G, n, 1, mode).point_set, mode)
        if len(bigger) <= width:
            log.check("monotone", closure.issubset(algebraic_closure(bigger, config)), **detail)
        if len(closure) <= width:
            again = algebraic_closure(make_set(G, n, closure.points, mode), config)
            log.check("idempotent", again.points == closure.points, **detail)
        else:
            log.skip("idempotent")
        if mode.coefficients:
            log.check("discrete-topology", topological_closure(U, config).points == U.points,
                      **detail)
        bounded = bounded_word_closure(U, 1, 2, config)
        log.check("bounded-superset", closure.issubset(bounded), **detail)

        S1, S2 = _random_system(rng, G, n, mode), _random_system(rng, G, n, mode)
        V1, V2 = solution_set(G, n, S1, config), solution_set(G, n, S2, config)
        V12 = solution_set(G, n, S1.union(S2), config)
        log.check("solution-intersection", V12.point_set == V1.point_set & V2.point_set,
                  mode=mode.value, n=n, first=S1.format(), second=S2.format())
        if 1 <= len(V1) <= width:
            plain = make_set(G, n, V1.points, mode)
            log.check("solution-closed", algebraic_closure(plain, config).points == V1.points,
                      mode=mode.value, n=n, system=S1.format())


def _irreducibility_laws(log: _LawLog, rng: random.Random, G: FiniteGroup,
                         settings: SuiteSettings, config: Config) -> None:
    """
    Generic-point criterion against the covering oracle: every algebraic Y of
    size <= 4 at n = 1, closures of sampled sets at n = 2.
    """
    for mode in (Mode.COEFFICIENT, Mode.COEFFICIENT_FREE):
        for size in range(1, min(4, G.order) + 1):
            for subset in combinations(G.elements(), size):
                Y = make_set(G, 1, [(g,) for g in subset], mode)
                if not is_algebraic(Y, config):
                    continue
                log.check("generic-point-oracle",
                          is_irreducible(Y, config) != reducibility_oracle(Y, config),
                          mode=mode.value, n=1, points=Y.labels())
    for _ in range(settings.laws_cases):
        mode = rng.choice((Mode.COEFFICIENT, Mode.COEFFICIENT_FREE))
        U = _random_set(rng, G, 2, rng.randint(1, min(4, config.max_width)), mode)
        Y = algebraic_closure(U, config)
        if len(Y) > 4:
            log.skip("generic-point-oracle")
            continue
        log.check("generic-point-oracle",
                  is_irreducible(Y, config) != reducibility_oracle(Y, config),
                  mode=mode.value, n=2, points=Y.labels())


def _failing_union(G: FiniteGroup, config: Config) -> Optional[Dict[str, List[List[str]]]]:
    """Algebraic Y1, Y2 (coefficient mode, n <= 2) whose union is not algebraic."""
    for n in (1, 2):
        if G.order ** n > config.budget:
            break
        points = [tuple(p) for p in np.ndindex(*(G.order,) * n)]
        candidates = [make_set(G, n, [p]) for p in points]
        candidates += [algebraic_closure(make_set(G, n, pair), config)
                       for pair in combinations(points[:8], 2)]
        for Y1 in candidates:
            if len(Y1) >= config.max_width:
                continue
            for q in points:
                if q in Y1:
                    continue
                Y2 = make_set(G, n, [q])
                if not union_is_algebraic(Y1, Y2, config):
                    return {"first": Y1.labels(), "second": Y2.labels()}
    return None


def _union_laws(log: _LawLog, rng: random.Random, G: FiniteGroup, domain: bool,
                settings: SuiteSettings, config: Config) -> None:
    if domain:
        points = [(g,) for g in G.elements()]
        for _ in range(settings.union_samples):
            Y1 = make_set(G, 1, rng.sample(points, min(len(points), rng.randint(1, 2))))
            Y2 = make_set(G, 1, rng.sample(points, min(len(points), rng.randint(1, 2))))
            log.check("domain-union", union_is_algebraic(Y1, Y2, config),
                      first=Y1.labels(), second=Y2.labels())
    elif G.is_abelian and G.order > 1:
        pair = _failing_union(G, config)
        log.check("abelian-union-fails", pair is not None)
        if pair is not None:
            log.verdict.facts["non_algebraic_union"] = pair


def _zariski_laws(G: FiniteGroup, k: Optional[int], settings: SuiteSettings,
                  config: Config) -> List[PropertyVerdict]:
    domain = is_domain(G, DomainMethod.ALL, config).holds
    small = G.order <= settings.laws_max_order
    if not small and not domain:
        return [PropertyVerdict(G.name, "zariski-laws", holds=None,
                                skipped=f"order above {settings.laws_max_order}")]
    log = _LawLog(G)
    rng = random.Random(f"{config.seed}:laws:{G.fingerprint()}")
    if small:
        _closure_laws(log, rng, G, settings, config)
        _irreducibility_laws(log, rng, G, settings, config)
    _union_laws(log, rng, G, domain, settings, config)
    log.verdict.facts["cases"] = dict(sorted(log.counts.items()))
    return [log.verdict]


_SUITES: Dict[str, Callable[..., List[PropertyVerdict]]] = {
    "domain-equivalence": _domain_equivalence,
    "theorem1": _theorem1,
    "theorem2": _per_group(theorem2_check, with_k=True),
    "theorem3": _per_group(theorem3_check),
    "csa-ct": _per_group(csa_implies_ct_check),
    "csnk-ntk": _per_group(csnk_ntk_check, with_k=True),
    "zariski-laws": _zariski_laws,
    "csa-domain": _per_group(csa_domain_check),
    "monolith": _per_group(monolith_check),
    "csln-nt": _per_group(csln_nt_check),
}


# runner ---------------------------------------------------------------------

def run_suite(G: FiniteGroup, suite: str, settings: SuiteSettings = SuiteSettings(),
              config: Optional[Config] = None) -> List[PropertyVerdict]:
    """One suite on one group; cap errors become a skipped verdict."""
    config = get_config(config)
    name, k = parse_suite(suite)
    params = {"k": k} if k is not None else {}
    costs: Dict[str, int] = {}
    try:
        with stopwatch(costs):
            verdicts = _SUITES[name](G, k, settings, config)
    except CapExceeded as exc:
        logger.info("%s on %s skipped: %s", suite, G.name, exc)
        return [PropertyVerdict(G.name, name, params, holds=None, skipped=str(exc))]
    except CharacterizationDisagreement as exc:
        return [PropertyVerdict(G.name, name, params, holds=False,
                                witnesses=[{"kind": "characterization-disagreement",
                                            "routes": exc.verdicts}])]
    if config.timing:
        share = costs["micros"] // max(len(verdicts), 1)
        for v in verdicts:
            v.cost["micros"] = share
    return verdicts


def verify_subject(G: FiniteGroup, suites: Sequence[str], settings: SuiteSettings,
                   config: Config) -> SubjectResult:
    result = SubjectResult(G.name, G.order)
    for suite in suites:
        for verdict in run_suite(G, suite, settings, config):
            result.add(verdict)
    logger.info("%s: %d verdicts", G.name, len(result.verdicts))
    return result


def corpus_verify(corpus: Sequence[FiniteGroup], suites: Sequence[str],
                  config: Optional[Config] = None,
                  settings: SuiteSettings = SuiteSettings()) -> Report:
    config = get_config(config)
    for suite in suites:
        parse_suite(suite)
    if config.jobs > 1 and len(corpus) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            futures = [pool.submit(verify_subject, G, list(suites), settings, config)
                       for G in corpus]
            results = [f.result() for f in futures]
    else:
        results = [verify_subject(G, suites, settings, config) for G in corpus]
    report = build_report(config, results)
    logger.info("verified %d subjects: %d failures", len(results), report.failures)
    return report


def verify_exit_code(report: Report) -> int:
    return 1 if report.failures else 0

