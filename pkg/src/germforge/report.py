"""Structured, deterministic reports for the command-line front end.

A :class:`GermReport` holds only JSON-native data (no ideals, no timings),
so ``GermReport.from_json(r.to_json()) == r`` and two runs with the same
seed produce the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

__all__ = [
    "GermReport",
    "TAME_KEY",
    "COMPOSABLE_KEY",
    "DISCRIMINANT_KEY",
    "EQUIVALENT_FORMS_KEY",
    "MILNOR_INCLUSION_KEY",
    "verdict_entry",
]

# stable keys for the headline conditions
TAME_KEY = "eq-2.2"
COMPOSABLE_KEY = "eq-3.1"
DISCRIMINANT_KEY = "eq-3.9"
EQUIVALENT_FORMS_KEY = "equivalent-forms"
MILNOR_INCLUSION_KEY = "milnor-in-singular"


def verdict_entry(verdict, **extra):
    """JSON form of a :class:`~germforge.tameness.GermInclusionVerdict`."""
    out = verdict.as_dict()
    out.update(extra)
    return _plain(out)


def _plain(obj):
    """Convert to JSON-native values (exact rationals become strings)."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    return str(obj)


@dataclass
class GermReport:
    command: str
    input: dict
    verdicts: dict = field(default_factory=dict)
    analysis: dict = field(default_factory=dict)
    fiber: dict | None = None
    caveats: list = field(default_factory=list)
    usage: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)

    def add_caveat(self, text):
        if text not in self.caveats:
            self.caveats.append(text)

    def add_caveats(self, texts):
        for t in texts:
            self.add_caveat(t)

    def failed_conditions(self):
        """Names of verdicts whose ``holds`` is false, searched recursively."""
        out = []

        def walk(path, node):
            if isinstance(node, dict):
                if node.get("holds") is False:
                    out.append(path)
                    return
                for k in sorted(node):
                    walk(f"{path}/{k}" if path else k, node[k])

        walk("", self.verdicts)
        return out

    def to_dict(self):
        return _plain(asdict(self))

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data):
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))
