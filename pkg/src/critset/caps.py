"""Size caps for the exponential parts of the toolkit.

Exceeding a cap is always an error or an explicit "skipped" marker, never a
silent truncation.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


class CapExceeded(RuntimeError):
    """An exhaustive computation was refused because the input is too large."""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


@dataclass(frozen=True)
class Caps:
    independent: int = 24  # max n for independent-set enumeration
    all_subsets: int = 14  # max n for scans over all 2^n vertex subsets
    core: int = 20  # max n for alpha / core / maximum-independent-set scans
    enumeration: int = 24  # max |ker| for minimal positive set enumeration
    supermodular_samples: int = 10_000
    p12_subfamilies: int = 100_000  # budget of subfamilies checked per graph

    @classmethod
    def parse(cls, spec: str | None) -> "Caps":
        """Build from ``"k=v,k=v"``; unknown keys raise ``ValueError``."""
        caps = cls()
        if not spec:
            return caps
        known = {f.name for f in fields(cls)}
        updates = {}
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in known:
                raise ValueError(f"unknown cap {item!r}; known caps: {', '.join(sorted(known))}")
            updates[key] = int(value)
        return replace(caps, **updates)


DEFAULT_CAPS = Caps()
