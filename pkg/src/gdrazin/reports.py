"""Result containers: condition reports and derivation traces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .matrix import Matrix


@dataclass(frozen=True)
class ConditionCheck:
    """One named check: holds or not, with the witnessing residual if not."""

    name: str
    ok: bool
    residual: Optional[Matrix] = None


class ConditionReport:
    """Ordered collection of named condition checks.

    Truthy iff every check passed. Iteration yields the checks in the order
    they were recorded, which is the order the CLI prints them.
    """

    def __init__(self, checks=()):
        self._checks: Tuple[ConditionCheck, ...] = tuple(checks)

    @classmethod
    def build(cls, pairs) -> "ConditionReport":
        """From (name, residual_matrix) pairs; a residual of all zeros passes."""
        checks = []
        for name, residual in pairs:
            if residual is None or residual.is_zero():
                checks.append(ConditionCheck(name, True))
            else:
                checks.append(ConditionCheck(name, False, residual))
        return cls(checks)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self._checks)

    def __bool__(self) -> bool:
        return self.ok

    def __iter__(self):
        return iter(self._checks)

    def __len__(self):
        return len(self._checks)

    def failures(self):
        return [c for c in self._checks if not c.ok]

    def lines(self):
        return [f"{c.name}: {'ok' if c.ok else 'violated'}" for c in self._checks]

    def __repr__(self):
        status = "ok" if self.ok else "violated"
        return f"ConditionReport({len(self._checks)} checks, {status})"


class DerivationTrace:
    """Named intermediate matrices from a formula pipeline, insertion-ordered."""

    def __init__(self):
        self._items: Dict[str, Matrix] = {}

    def record(self, name: str, value: Matrix):
        self._items[name] = value

    def __getitem__(self, name: str) -> Matrix:
        return self._items[name]

    def __contains__(self, name: str) -> bool:
        return name in self._items

    def names(self):
        return list(self._items)

    def items(self):
        return self._items.items()
