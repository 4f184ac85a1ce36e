"""Deterministic reports: one dict, rendered as text or JSON."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


def digest(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\0")
    return h.hexdigest()[:16]


@dataclass
class Report:
    command: str
    inputs: str = ""
    verdicts: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    listings: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    timing: float | None = None

    def verdict(self, name: str, ok: bool) -> bool:
        self.verdicts[name] = bool(ok)
        return ok

    def fail(self, cx) -> None:
        if cx is not None:
            self.counterexamples.append(cx.to_json() if hasattr(cx, "to_json") else cx)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values()) and not self.counterexamples

    def to_json(self) -> dict:
        doc = {
            "command": self.command,
            "inputs_digest": self.inputs,
            "ok": self.ok,
            "verdicts": self.verdicts,
            "counterexamples": self.counterexamples,
            "listings": self.listings,
            "details": self.details,
        }
        if self.timing is not None:
            doc["timing_s"] = round(self.timing, 3)
        return doc

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"
        lines = [f"command: {self.command}", f"inputs: {self.inputs}", f"result: {'PASS' if self.ok else 'FAIL'}"]
        for k, v in self.verdicts.items():
            lines.append(f"  {k}: {'ok' if v else 'FAILED'}")
        for k, v in self.details.items():
            lines.append(f"  {k} = {json.dumps(v, sort_keys=True)}")
        for cx in self.counterexamples:
            lines.append(f"counterexample: {json.dumps(cx, sort_keys=True)}")
        if self.listings:
            lines.append(f"listings ({len(self.listings)}):")
            lines.extend(f"  [{n}] {json.dumps(item, sort_keys=True)}" for n, item in enumerate(self.listings))
        if self.timing is not None:
            lines.append(f"timing: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"
