from __future__ import annotations

from dataclasses import dataclass

from ..isoindex import IsoIndex, TriangleCoord, triangle_coords


@dataclass(frozen=True)
class TrajectoryRecord:
    """One point of a sweep: where a state sits on the triangle and how often it succeeds."""

    step: int
    param: float
    index: IsoIndex
    coord: TriangleCoord
    success: float

    @classmethod
    def build(cls, step: int, param: float, index: IsoIndex, success: float) -> "TrajectoryRecord":
        return cls(step, float(param), index, triangle_coords(index), float(success))

    @property
    def alignment(self) -> float:
        return self.index.alignment

    @property
    def weight(self) -> float:
        return self.index.weight
