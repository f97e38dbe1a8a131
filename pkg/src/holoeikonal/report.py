"""Machine-readable reports (schema ``holo-eikonal/1``)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "holo-eikonal/1"


@dataclass
class Report:
    command: str
    input: dict
    case: str | None = None
    partition: dict | None = None
    witness: dict | None = None
    solutions: list = field(default_factory=list)
    family: dict | None = None
    merges: dict | None = None
    verification: dict | None = None
    status: str = "ok"
    message: str | None = None
    timings: dict | None = None

    def to_dict(self) -> dict:
        out = {"schema": SCHEMA, "command": self.command, "status": self.status,
               "input": self.input}
        if self.case is not None:
            out["case"] = self.case
        if self.partition is not None:
            out["partition"] = self.partition
        if self.witness is not None:
            out["witness"] = self.witness
        if self.solutions:
            out["solutions"] = self.solutions
        if self.family is not None:
            out["family"] = self.family
        if self.merges is not None:
            out["merges"] = self.merges
        if self.verification is not None:
            out["verification"] = self.verification
        if self.message is not None:
            out["message"] = self.message
        if self.timings is not None:
            out["timings"] = self.timings
        return out


def emit_report(r: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return _text(r.to_dict())
    raise ValueError(f"unknown report format {fmt!r}")


def _text(d: dict) -> str:
    lines = [f"[{d['schema']}] {d['command']}: {d['status']}"]
    for k, v in d["input"].items():
        lines.append(f"  {k}: {v}")
    if "case" in d:
        lines.append(f"case: {d['case']}")
    if "partition" in d:
        p = d["partition"]
        lines.append(f"J = {p['J']}, chi = {p['chi']}, kappa = {p['kappa']}")
        for b in p["blocks"]:
            extra = f"  ell = {b['ell']}, G(t) = {b['G']}" if b.get("ell") else ""
            lines.append(f"  block {b['vars']} [{b['kind']}]: {b['poly']}{extra}")
    if "witness" in d:
        w = d["witness"]
        lines.append(f"no entire solution; witness block {w['vars']}: {w['poly']}")
        lines.append(f"  {w['detail']}")
    for k, s in enumerate(d.get("solutions", [])):
        label = "solution" if k == 0 else f"alternative {k}"
        lines.append(f"{label}:")
        lines.extend("  " + line for line in s["text"].splitlines())
    if "family" in d:
        f = d["family"]
        lines.append(f"family: {f['general']} with {f['constraint']}")
    if "merges" in d:
        m = d["merges"]
        lines.append(f"affine merges: {m['count']}" + (" (truncated)" if m["truncated"] else ""))
    if "verification" in d:
        for name, v in d["verification"].items():
            if isinstance(v, dict) and "symbolic" in v:
                lines.append(f"symbolic[{name}]: {v['symbolic']['verdict']}")
            if isinstance(v, dict) and "numeric" in v:
                n = v["numeric"]
                lines.append(
                    f"numeric[{name}]: {n['verdict']} (max residual {n['max_residual']}, "
                    f"{n['evaluated']}/{n['samples']} points, seed {n['seed']})"
                )
    if "message" in d:
        lines.append(d["message"])
    return "\n".join(lines) + "\n"
