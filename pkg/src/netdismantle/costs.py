"""Per-node removal costs.

Two modes: unit (every node costs 1) and degree (a node costs its degree
in the original graph).  Costs are frozen when the vector is built and
never change as nodes are removed, so a degree-cost node keeps its
original price even after its neighborhood has been dismantled.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidCostError
from .graph import Graph


class CostMode(str, Enum):
    UNIT = "unit"
    DEGREE = "degree"


@dataclass(frozen=True)
class CostVector:
    w: np.ndarray
    mode: CostMode

    @classmethod
    def unit(cls, graph: Graph) -> "CostVector":
        return cls(w=np.ones(graph.n, dtype=np.float64), mode=CostMode.UNIT)

    @classmethod
    def degree(cls, graph: Graph) -> "CostVector":
        return cls(w=graph.degree.astype(np.float64), mode=CostMode.DEGREE)

    @classmethod
    def for_mode(cls, graph: Graph, mode: CostMode | str) -> "CostVector":
        mode = CostMode(mode)
        if mode is CostMode.UNIT:
            return cls.unit(graph)
        return cls.degree(graph)

    def validate(self, graph: Graph) -> None:
        if self.w.shape != (graph.n,):
            raise InvalidCostError(
                f"cost vector has length {self.w.shape}, graph has {graph.n} nodes"
            )
        if not np.isfinite(self.w).all():
            raise InvalidCostError("cost vector has non-finite entries")
        if (self.w < 0).any():
            raise InvalidCostError("cost vector has negative entries")
        if self.mode is CostMode.UNIT and not (self.w == 1.0).all():
            raise InvalidCostError("unit mode requires all costs equal to 1")
        if self.mode is CostMode.DEGREE and not (self.w == graph.degree).all():
            raise InvalidCostError("degree mode requires costs equal to original degrees")

    def total(self) -> float:
        return float(self.w.sum())
