"""Spatial classification of gaze samples.

Maps screen coordinates to one of four quadrants (the lower screen half
holds the game stimuli, the upper half holds menu/interface elements) and
to an object-centered area of interest (AoI) when a placement is active.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from .ingest import LevelSession, ObjectPlacement


class Quadrant(Enum):
    Q1 = "Q1"
    Q2 = "Q2"
    Q3 = "Q3"
    Q4 = "Q4"

    @property
    def is_stimulus(self) -> bool:
        """Q3/Q4 hold the game stimuli; Q1/Q2 are menu/interface areas."""
        return self in (Quadrant.Q3, Quadrant.Q4)


STIMULUS_QUADRANTS = (Quadrant.Q3, Quadrant.Q4)
NON_STIMULUS_QUADRANTS = (Quadrant.Q1, Quadrant.Q2)


class AoiLabel(Enum):
    LEFT = "left"
    RIGHT = "right"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class ScreenGeometry:
    """Screen dimensions plus the vertical axis convention.

    ``y_up=False`` (the default) means input coordinates are screen
    coordinates with y growing downward; they are mirrored to the y-up
    frame before the quadrant case analysis, so the stimulus quadrants
    are the visually lower half of the display. ``y_up=True`` applies
    the case analysis to the input coordinates verbatim.
    """

    width_px: float = 1920.0
    height_px: float = 1080.0
    y_up: bool = False

    def __post_init__(self) -> None:
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError(
                f"screen dimensions must be positive, got {self.width_px}x{self.height_px}"
            )


def quadrant_of(x: float, y: float, geometry: ScreenGeometry) -> Quadrant:
    """Quadrant containing (x, y).

    Callers are expected to pass cleaned coordinates inside
    [0, W] x [0, H]; out-of-range input is a contract violation and is
    classified by the same case analysis without checks.
    """
    w, h = geometry.width_px, geometry.height_px
    if not geometry.y_up:
        y = h - y
    if x < w / 2:
        return Quadrant.Q1 if y > h / 2 else Quadrant.Q3
    return Quadrant.Q2 if y > h / 2 else Quadrant.Q4


@dataclass(frozen=True)
class AoiRect:
    """Axis-aligned AoI rectangle, closed on all edges."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def contains(self, x: float, y: float) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max


def aoi_bounds(placement: ObjectPlacement) -> AoiRect:
    """Rectangle centered on the object, half extents w/2 and h/2.

    No clipping to the screen is applied; the rectangle may extend past
    the screen edges.
    """
    half_w = placement.aoi_w_px / 2
    half_h = placement.aoi_h_px / 2
    return AoiRect(
        x_min=placement.obj_x_px - half_w,
        x_max=placement.obj_x_px + half_w,
        y_min=placement.obj_y_px - half_h,
        y_max=placement.obj_y_px + half_h,
    )


def classify_aoi(
    x: float,
    y: float,
    placement: ObjectPlacement | None,
    geometry: ScreenGeometry,
) -> AoiLabel:
    """AoI label for a gaze point against the active placement.

    The side is decided by the object's horizontal position, not the
    gaze point's: an object left of the screen midline defines the left
    AoI. With no active placement every point is outside.
    """
    if placement is None:
        return AoiLabel.OUTSIDE
    if not aoi_bounds(placement).contains(x, y):
        return AoiLabel.OUTSIDE
    if placement.obj_x_px < geometry.width_px / 2:
        return AoiLabel.LEFT
    return AoiLabel.RIGHT


def active_placement(
    placements: Sequence[ObjectPlacement], t_ms: int
) -> ObjectPlacement | None:
    """Most recent placement with t_ms <= the query time (step function).

    ``placements`` must be sorted by t_ms.
    """
    times = [p.t_ms for p in placements]
    idx = bisect_right(times, t_ms)
    return placements[idx - 1] if idx else None


def classify_session(
    session: LevelSession,
) -> tuple[list[Quadrant], list[AoiLabel]]:
    """Per-sample quadrant and AoI labels for a whole session.

    Placements are resolved with step-function semantics; samples and
    placements are both time-sorted, so a single forward walk suffices.
    """
    quadrants: list[Quadrant] = []
    aois: list[AoiLabel] = []
    placements = session.placements
    geometry = session.geometry
    pi = 0
    current: ObjectPlacement | None = None
    for sample in session.samples:
        while pi < len(placements) and placements[pi].t_ms <= sample.t_ms:
            current = placements[pi]
            pi += 1
        quadrants.append(quadrant_of(sample.x_px, sample.y_px, geometry))
        aois.append(classify_aoi(sample.x_px, sample.y_px, current, geometry))
    return quadrants, aois
