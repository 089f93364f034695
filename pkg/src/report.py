"""
Machine-readable reports.

JSON layout:

    {tool, version, config,
     subjects: [{id, order, verdicts: [{subject, property, params, holds, witnesses,
                                        notes, facts, skipped, micros}]}],
     aggregates}

Keys are sorted and nothing run-dependent is written unless timing is on, so
two runs with the same inputs and config produce the same bytes.
"""
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

from .config import Config
from .errors import BadParameter
from .properties import PropertyVerdict

TOOL = "grpgeo"
VERSION = "0.1.0"

FORMATS = ("json", "text")


@dataclass
class SubjectResult:
    id: str
    order: int
    verdicts: List[Dict[str, Any]] = field(default_factory=list)

    def add(self, verdict: PropertyVerdict) -> None:
        self.verdicts.append(verdict.to_dict())

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "order": self.order, "verdicts": self.verdicts}


@dataclass
class Report:
    config: Dict[str, Any]
    subjects: List[SubjectResult] = field(default_factory=list)
    aggregates: Dict[str, Any] = field(default_factory=dict)
    tool: str = TOOL
    version: str = VERSION

    def verdicts(self) -> Iterable[Dict[str, Any]]:
        for subject in self.subjects:
            yield from subject.verdicts

    @property
    def failures(self) -> int:
        return sum(1 for v in self.verdicts() if v["holds"] is False)

    def to_dict(self) -> Dict[str, Any]:
        return {"tool": self.tool, "version": self.version, "config": self.config,
                "subjects": [s.to_dict() for s in self.subjects],
                "aggregates": self.aggregates}


def _agreement_key(facts: Dict[str, Any]) -> str:
    return ",".join(f"{name}={str(facts.get(name)).lower()}"
                    for name in ("irreducible", "gamma_domain", "embeds"))


def aggregate(subjects: List[SubjectResult]) -> Dict[str, Any]:
    """Counts per property, antecedent tallies and the theorem 1 agreement matrix."""
    per_property: Dict[str, Dict[str, int]] = {}
    agreement: Counter = Counter()
    remark_disagreements = []
    for subject in subjects:
        for v in subject.verdicts:
            tally = per_property.setdefault(v["property"], {"verdicts": 0, "failures": 0,
                                                            "skipped": 0})
            tally["verdicts"] += 1
            if v["skipped"] is not None:
                tally["skipped"] += 1
                continue
            if v["holds"] is False:
                tally["failures"] += 1
            facts = v.get("facts") or {}
            if "antecedent" in facts:
                tally["antecedent_true"] = tally.get("antecedent_true", 0) + bool(facts["antecedent"])
            if facts.get("remark_agrees") is False:
                remark_disagreements.append(subject.id)
            if v["property"] == "theorem1":
                agreement[_agreement_key(facts)] += 1
    result: Dict[str, Any] = {
        "subjects": len(subjects),
        "verdicts": sum(t["verdicts"] for t in per_property.values()),
        "failures": sum(t["failures"] for t in per_property.values()),
        "skipped": sum(t["skipped"] for t in per_property.values()),
        "properties": per_property,
    }
    if "monolith" in per_property:
        result["remark_disagreements"] = sorted(set(remark_disagreements))
    if agreement:
        result["theorem1_agreement"] = dict(sorted(agreement.items()))
    return result


def build_report(config: Config, subjects: List[SubjectResult]) -> Report:
    subjects = sorted(subjects, key=lambda s: (s.order, s.id))
    return Report(config.snapshot(), subjects, aggregate(subjects))


def _plain(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def to_json(data: Dict[str, Any]) -> bytes:
    return (json.dumps(data, sort_keys=True, indent=2, default=_plain) + "\n").encode("utf-8")


def _status(v: Dict[str, Any]) -> str:
    if v["skipped"] is not None:
        return "SKIP"
    return "PASS" if v["holds"] else "FAIL"


def _params(params: Dict[str, Any]) -> str:
    shown = {k: v for k, v in params.items() if v is not None}
    if not shown:
        return ""
    return "(" + ", ".join(f"{k}={v}" for k, v in sorted(shown.items())) + ")"


def _witness_line(w: Dict[str, Any]) -> str:
    parts = []
    for key, value in sorted(w.items()):
        if key == "kind":
            continue
        if isinstance(value, dict) and "elements" in value:
            value = "{" + ", ".join(value["elements"]) + "}"
        parts.append(f"{key}={value}")
    return f"{w.get('kind', 'witness')}: " + " ".join(parts)


def to_text(report: Report) -> bytes:
    lines = [f"{report.tool} {report.version}"]
    for subject in report.subjects:
        lines.append(f"{subject.id} (order {subject.order})")
        for v in subject.verdicts:
            line = f"  {_status(v)} {v['property']}{_params(v['params'])}"
            if v["skipped"] is not None:
                line += f": {v['skipped']}"
            if v.get("micros") is not None:
                line += f"  [{v['micros']} us]"
            lines.append(line)
            for w in v["witnesses"][:3]:
                lines.append("      " + _witness_line(w))
    agg = report.aggregates
    if agg:
        lines.append(f"subjects {agg['subjects']}, verdicts {agg['verdicts']}, "
                     f"failures {agg['failures']}, skipped {agg['skipped']}")
        for name, tally in sorted(agg["properties"].items()):
            extra = ""
            if "antecedent_true" in tally:
                extra = f", antecedent true {tally['antecedent_true']}"
            lines.append(f"  {name}: {tally['verdicts']} verdicts, {tally['failures']} failures, "
                         f"{tally['skipped']} skipped{extra}")
        if agg.get("remark_disagreements"):
            lines.append("  monolithic non-domains: " + ", ".join(agg["remark_disagreements"]))
        for key, count in agg.get("theorem1_agreement", {}).items():
            lines.append(f"  theorem1 {key}: {count}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return to_json(report.to_dict())
    if fmt == "text":
        return to_text(report)
    raise BadParameter(f"unknown report format {fmt!r}")


def emit_result(kind: str, result: Dict[str, Any], config: Optional[Config] = None,
                fmt: str = "json") -> bytes:
    """Output of the non-verdict commands (group, variety, closure, ...)."""
    data = {"tool": TOOL, "version": VERSION, "command": kind, "result": result}
    if config is not None:
        data["config"] = config.snapshot()
    if fmt == "json":
        return to_json(data)
    lines = [f"{TOOL} {VERSION} {kind}"]
    for key, value in sorted(result.items()):
        if isinstance(value, list) and value and isinstance(value[0], (list, dict)):
            lines.append(f"{key}:")
            lines.extend(f"  {item}" for item in value)
        else:
            lines.append(f"{key}: {value}")
    return ("\n".join(lines) + "\n").encode("utf-8")
