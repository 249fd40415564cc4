"""Resource caps for the Groebner / standard-basis engines.

Every basis computation charges its S-pairs (capped per computation), the degrees it produces and the
bit size of the coefficients it creates against the active limits.  Crossing
any cap raises :class:`ResourceLimitError` instead of running unbounded.
"""

from __future__ import annotations

import contextlib
import contextvars
import json
import os
from dataclasses import dataclass, field, replace

ENV_VAR = "GERMFORGE_LIMITS"


class ResourceLimitError(RuntimeError):
    """A basis computation exceeded one of the configured caps."""

    def __init__(self, cap, value, limit):
        super().__init__(f"resource limit exceeded: {cap} = {value} > {limit}")
        self.cap = cap
        self.value = value
        self.limit = limit


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 200_000
    max_degree: int = 60
    max_bits: int = 1_000_000

    def updated(self, **caps):
        caps = {k: int(v) for k, v in caps.items() if v is not None}
        return replace(self, **caps)


@dataclass
class Usage:
    """Deterministic work counters (no wall-clock values)."""

    bases: int = 0
    pairs: int = 0
    reductions: int = 0
    max_degree_seen: int = 0
    counters: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "bases": self.bases,
            "pairs": self.pairs,
            "reductions": self.reductions,
            "max_degree_seen": self.max_degree_seen,
        }


_limits = contextvars.ContextVar("germforge_limits", default=Limits())
_usage = contextvars.ContextVar("germforge_usage", default=None)


def limits_from_env(base=None):
    """Read cap overrides from ``GERMFORGE_LIMITS``.

    Accepts either JSON (``{"max_pairs": 1000}``) or ``key=value`` pairs
    separated by commas; keys may use dashes (``max-degree=40``).
    """
    base = base or Limits()
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return base
    if raw.startswith("{"):
        items = json.loads(raw)
    else:
        items = {}
        for chunk in raw.split(","):
            if not chunk.strip():
                continue
            key, _, value = chunk.partition("=")
            items[key.strip()] = value.strip()
    caps = {}
    for key, value in items.items():
        key = key.replace("-", "_").lstrip("_")
        if key not in ("max_pairs", "max_degree", "max_bits"):
            raise ValueError(f"unknown limit key {key!r} in {ENV_VAR}")
        caps[key] = value
    return base.updated(**caps)


def current_limits():
    return _limits.get()


def current_usage():
    usage = _usage.get()
    if usage is None:
        usage = Usage()
        _usage.set(usage)
    return usage


@contextlib.contextmanager
def limited(limits=None, usage=None):
    """Run a block under the given limits, collecting work into ``usage``."""
    token_l = _limits.set(limits or Limits())
    token_u = _usage.set(usage if usage is not None else Usage())
    try:
        yield _usage.get()
    finally:
        _limits.reset(token_l)
        _usage.reset(token_u)


def charge_pair(count):
    """Record one S-pair; ``count`` is the number of pairs treated so far by
    the current basis computation, which is what the cap bounds."""
    current_usage().pairs += 1
    cap = _limits.get().max_pairs
    if count > cap:
        raise ResourceLimitError("max_pairs", count, cap)


def check_degree(deg):
    usage = current_usage()
    if deg > usage.max_degree_seen:
        usage.max_degree_seen = deg
    cap = _limits.get().max_degree
    if deg > cap:
        raise ResourceLimitError("max_degree", deg, cap)


def check_bits(coeffs):
    cap = _limits.get().max_bits
    for c in coeffs:
        bits = c.numerator.bit_length() + c.denominator.bit_length()
        if bits > cap:
            raise ResourceLimitError("max_bits", bits, cap)
