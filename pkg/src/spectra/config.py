"""Resource caps for constructions, dense tables and enumeration sweeps."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    """Desk-scale limits; every field is overridable per call site."""

    order_cap: int = 4096        # max order a construction may produce
    table_threshold: int = 4096  # max order for a dense |R| x |R| product table
    general_max_order: int = 64  # max ring order for the exhaustive sc sweep
    bilinear_max_order: int = 256
    enum_budget: int = 1 << 30   # max candidate count for any sweep

    def with_order_cap(self, cap: int) -> "Caps":
        return replace(self, order_cap=cap)


DEFAULT_CAPS = Caps()
