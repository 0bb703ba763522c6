"""JSON shapes for certificates, variable mappings, and audit reports.

Field names here are stable interfaces; see docs/formats.md.
"""

from __future__ import annotations

import json
from typing import Any, Mapping, Optional

from .audit import AuditReport
from .formula import TruthTable
from .normalize import VariableMapping
from .skolem import SkolemCertificate, SkolemFunction


class CertificateFormatError(ValueError):
    """Malformed certificate JSON."""


def certificate_to_obj(cert: SkolemCertificate) -> list[dict[str, Any]]:
    return [
        {
            "var": fn.target,
            "deps": list(fn.deps),
            "table_bits": fn.table.bits_string(),
        }
        for fn in sorted(cert.functions, key=lambda fn: fn.target)
    ]


def certificate_from_obj(data: Any) -> SkolemCertificate:
    if not isinstance(data, list):
        raise CertificateFormatError("certificate JSON must be a list of function objects")
    functions = []
    for item in data:
        if not isinstance(item, dict):
            raise CertificateFormatError("certificate entries must be objects")
        try:
            var = item["var"]
            deps = item["deps"]
            bits = item["table_bits"]
        except KeyError as exc:
            raise CertificateFormatError(f"certificate entry missing key {exc}") from None
        if not isinstance(var, int) or not isinstance(deps, list) or not isinstance(bits, str):
            raise CertificateFormatError("certificate entry has wrongly typed fields")
        if not all(isinstance(d, int) for d in deps):
            raise CertificateFormatError("deps must be a list of variable ids")
        try:
            table = TruthTable.from_bits_string(bits, deps)
        except ValueError as exc:
            raise CertificateFormatError(str(exc)) from None
        functions.append(SkolemFunction(var, tuple(deps), table))
    return SkolemCertificate(tuple(functions))


def certificate_to_json(cert: SkolemCertificate, *, indent: int = 2) -> str:
    return json.dumps(certificate_to_obj(cert), indent=indent)


def certificate_from_json(text: str | bytes) -> SkolemCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"invalid JSON: {exc}") from None
    return certificate_from_obj(data)


def mapping_to_obj(
    mapping: VariableMapping,
    names: Optional[Mapping[int, str]] = None,
) -> dict[str, Any]:
    entries = []
    for e in mapping.entries:
        entry: dict[str, Any] = {
            "position": e.position,
            "var": e.var,
            "quantifier": e.quantifier.value,
            "dummy": e.dummy,
            "original_position": e.source_position,
        }
        if names and e.var in names:
            entry["name"] = names[e.var]
        entries.append(entry)
    return {"prefix_length": len(mapping.entries), "entries": entries}


def audit_report_to_obj(report: AuditReport) -> dict[str, Any]:
    return {
        "claim_id": report.claim_id,
        "params": report.params,
        "seed": report.seed,
        "instances_checked": report.instances_checked,
        "counterexamples": [
            {"formula_text": c.formula_text, "lhs": c.lhs, "rhs": c.rhs}
            for c in report.counterexamples
        ],
        "elapsed_ms": report.elapsed_ms,
        "verdict": report.verdict.value,
        "entries": report.entries,
    }


def audit_report_to_json(report: AuditReport, *, indent: int = 2) -> str:
    return json.dumps(audit_report_to_obj(report), indent=indent)
