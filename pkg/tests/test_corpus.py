# tests/test_corpus.py
import unittest

from src.config import Config
from src.corpus import (CorpusSpec, SuiteSettings, builtin_corpus, corpus_verify, parse_suite,
                        resolve_corpus, run_suite, verify_exit_code)
from src.errors import BadParameter
from src.families import symmetric
from src.report import emit_report

CONFIG = Config()


def _by_id(report):
    return {s.id: s for s in report.subjects}


class TestCorpus(unittest.TestCase):
    def test_builtin_is_deduplicated(self):
        corpus = resolve_corpus(CorpusSpec(), CONFIG)
        keys = [(G.order, G.fingerprint()) for G in corpus]
        self.assertEqual(len(keys), len(set(keys)))
        names = {G.name for G in corpus}
        for expected in ("alternating:5", "dicyclic:8", "dihedral:32", "symmetric:4"):
            self.assertIn(expected, names)
        self.assertEqual(corpus, sorted(corpus, key=lambda G: (G.order, G.name)))

    def test_sweep_order(self):
        small = builtin_corpus(6, CONFIG)
        self.assertIn("cyclic:6", {G.name for G in small})
        self.assertNotIn("cyclic:7", {G.name for G in small})

    def test_filters(self):
        corpus = resolve_corpus(CorpusSpec(max_order=8, abelian=False), CONFIG)
        self.assertTrue(all(G.order <= 8 and not G.is_abelian for G in corpus))
        self.assertEqual({G.order for G in corpus}, {6, 8})

    def test_family_sources_and_duplicates(self):
        corpus = resolve_corpus(CorpusSpec(("cyclic:4", "cyclic:4", "symmetric:3")), CONFIG)
        self.assertEqual([G.name for G in corpus], ["cyclic:4", "symmetric:3"])


class TestSuiteNames(unittest.TestCase):
    def test_parse_suite(self):
        self.assertEqual(parse_suite("theorem2:2"), ("theorem2", 2))
        self.assertEqual(parse_suite("theorem2"), ("theorem2", 1))
        self.assertEqual(parse_suite("monolith"), ("monolith", None))
        for bad in ("bogus", "theorem3:2", "csnk-ntk:0", "theorem2:x"):
            with self.subTest(suite=bad):
                with self.assertRaises(BadParameter):
                    parse_suite(bad)


class TestVerify(unittest.TestCase):
    def test_domain_equivalence_over_builtin(self):
        report = corpus_verify(resolve_corpus(CorpusSpec(), CONFIG), ["domain-equivalence"], CONFIG)
        self.assertEqual(report.failures, 0)
        domains = {s.id for s in report.subjects if s.verdicts[0]["facts"]["domain"]}
        self.assertEqual(domains, {"cyclic:1", "alternating:5"})
        self.assertEqual(verify_exit_code(report), 0)

    def test_implication_suites(self):
        corpus = resolve_corpus(CorpusSpec(max_order=12), CONFIG)
        suites = ["theorem2:1", "theorem2:2", "theorem3", "csa-ct", "csnk-ntk:2", "csa-domain",
                  "monolith", "csln-nt"]
        report = corpus_verify(corpus, suites, CONFIG)
        self.assertEqual(report.failures, 0)
        self.assertIn("antecedent_true", report.aggregates["properties"]["theorem2"])

    def test_empty_corpus(self):
        report = corpus_verify([], ["domain-equivalence"], CONFIG)
        self.assertEqual(report.subjects, [])
        self.assertEqual(report.aggregates["failures"], 0)

    def test_parallel_output_matches_serial(self):
        corpus = resolve_corpus(CorpusSpec(("cyclic:4", "symmetric:3", "alternating:5")), CONFIG)
        serial = emit_report(corpus_verify(corpus, ["domain-equivalence", "monolith"], CONFIG))
        again = emit_report(corpus_verify(corpus, ["domain-equivalence", "monolith"], CONFIG))
        parallel = emit_report(corpus_verify(corpus, ["domain-equivalence", "monolith"],
                                             Config(jobs=2)))
        self.assertEqual(serial, again)
        self.assertEqual(serial, parallel)

    def test_monolithic_non_domains_are_listed(self):
        corpus = resolve_corpus(CorpusSpec(("dicyclic:8", "symmetric:3", "alternating:5")), CONFIG)
        report = corpus_verify(corpus, ["monolith"], CONFIG)
        self.assertEqual(report.aggregates["remark_disagreements"], ["dicyclic:8", "symmetric:3"])

    def test_cap_becomes_skip(self):
        verdicts = run_suite(symmetric(3, CONFIG), "csa-ct", config=Config(max_lattice=3))
        self.assertEqual(len(verdicts), 1)
        self.assertIsNone(verdicts[0].holds)
        self.assertIsNotNone(verdicts[0].skipped)

    def test_timing(self):
        verdicts = run_suite(symmetric(3, CONFIG), "monolith", config=Config(timing=True))
        self.assertIsNotNone(verdicts[0].cost["micros"])


class TestSuites(unittest.TestCase):
    def test_theorem1(self):
        corpus = resolve_corpus(CorpusSpec(("alternating:5", "symmetric:3")), CONFIG)
        report = corpus_verify(corpus, ["theorem1"], CONFIG, SuiteSettings(theorem1_samples=3))
        self.assertEqual(report.failures, 0)
        subjects = _by_id(report)
        self.assertEqual(len(subjects["alternating:5"].verdicts), 63)
        self.assertIsNotNone(subjects["symmetric:3"].verdicts[0]["skipped"])
        self.assertEqual(report.aggregates["theorem1_agreement"],
                         {"irreducible=false,gamma_domain=false,embeds=false": 3,
                          "irreducible=true,gamma_domain=true,embeds=true": 60})

    def test_zariski_laws(self):
        sources = ("cyclic:2", "cyclic:4", "elementary-abelian:2^2", "symmetric:3", "alternating:5")
        corpus = resolve_corpus(CorpusSpec(sources), CONFIG)
        settings = SuiteSettings(laws_cases=5, union_samples=5)
        report = corpus_verify(corpus, ["zariski-laws"], CONFIG, settings)
        self.assertEqual(report.failures, 0)
        subjects = _by_id(report)
        for name in ("cyclic:2", "elementary-abelian:2^2", "cyclic:4"):
            self.assertIn("non_algebraic_union", subjects[name].verdicts[0]["facts"])
        cases = subjects["alternating:5"].verdicts[0]["facts"]["cases"]
        self.assertEqual(cases, {"domain-union": 5})

    def test_large_non_domain_is_skipped(self):
        corpus = resolve_corpus(CorpusSpec(("dihedral:12",)), CONFIG)
        report = corpus_verify(corpus, ["zariski-laws"], CONFIG)
        self.assertEqual(report.aggregates["skipped"], 1)


if __name__ == "__main__":
    unittest.main()
