# tests/test_report.py
import json
import unittest

from src.config import Config
from src.errors import BadParameter
from src.families import symmetric
from src.groups import subgroup_generate
from src.properties import PropertyVerdict, malnormality_witness
from src.report import SubjectResult, aggregate, build_report, emit_report, emit_result

CONFIG = Config()


def _failing_subject():
    S3 = symmetric(3, CONFIG)
    A3 = subgroup_generate(S3, [S3.index_of("(1 2 3)")])
    verdict = PropertyVerdict(S3.name, "malnormal", holds=False,
                              witnesses=[malnormality_witness(S3, A3, S3.index_of("(1 2)"))])
    subject = SubjectResult(S3.name, S3.order)
    subject.add(verdict)
    return subject


class TestReport(unittest.TestCase):
    def test_passing_verdict(self):
        subject = SubjectResult("cyclic:2", 2)
        subject.add(PropertyVerdict("cyclic:2", "ct"))
        data = json.loads(emit_report(build_report(CONFIG, [subject])))
        verdict = data["subjects"][0]["verdicts"][0]
        self.assertTrue(verdict["holds"])
        self.assertEqual(verdict["witnesses"], [])
        self.assertIsNone(verdict["micros"])
        self.assertEqual(data["tool"], "grpgeo")
        self.assertNotIn("jobs", data["config"])

    def test_failing_witness_layout(self):
        data = json.loads(emit_report(build_report(CONFIG, [_failing_subject()])))
        witness = data["subjects"][0]["verdicts"][0]["witnesses"][0]
        self.assertEqual(set(witness), {"kind", "subgroup", "conjugator", "intersection"})
        self.assertEqual(witness["intersection"]["order"], 3)
        self.assertEqual(data["aggregates"]["failures"], 1)

    def test_bytes_are_stable(self):
        first = emit_report(build_report(CONFIG, [_failing_subject()]))
        second = emit_report(build_report(CONFIG, [_failing_subject()]))
        self.assertEqual(first, second)

    def test_subjects_sorted(self):
        a, b = SubjectResult("b", 4), SubjectResult("a", 4)
        c = SubjectResult("z", 2)
        report = build_report(CONFIG, [a, b, c])
        self.assertEqual([s.id for s in report.subjects], ["z", "a", "b"])

    def test_text_format(self):
        text = emit_report(build_report(CONFIG, [_failing_subject()]), "text").decode()
        self.assertIn("FAIL malnormal", text)
        self.assertIn("not-malnormal:", text)
        with self.assertRaises(BadParameter):
            emit_report(build_report(CONFIG, []), "xml")

    def test_aggregates(self):
        subject = SubjectResult("g", 6)
        subject.add(PropertyVerdict("g", "theorem2", {"k": 1}, facts={"antecedent": True}))
        subject.add(PropertyVerdict("g", "theorem2", {"k": 2}, facts={"antecedent": False}))
        subject.add(PropertyVerdict("g", "csa-ct", holds=None, skipped="cap"))
        subject.add(PropertyVerdict("g", "monolith", facts={"remark_agrees": False}))
        agg = aggregate([subject])
        self.assertEqual(agg["properties"]["theorem2"]["antecedent_true"], 1)
        self.assertEqual(agg["skipped"], 1)
        self.assertEqual(agg["remark_disagreements"], ["g"])
        self.assertEqual(agg["failures"], 0)

    def test_emit_result(self):
        data = json.loads(emit_result("variety", {"size": 1, "points": [["e"]]}, CONFIG))
        self.assertEqual(data["command"], "variety")
        self.assertEqual(data["result"]["size"], 1)
        text = emit_result("variety", {"size": 1, "points": [["e"]]}, CONFIG, "text").decode()
        self.assertIn("size: 1", text)


if __name__ == "__main__":
    unittest.main()
