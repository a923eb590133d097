"""Quadrant and area-of-interest classification.

The screen splits into four quadrants at its center: the lower half
(Q3/Q4) carries the game stimuli, the upper half (Q1/Q2) the menu.
Gaze additionally classifies against a rectangle centered on the
currently shown object: the left or right area of interest.
"""
from gazescore import (
    ObjectPlacement,
    ScreenGeometry,
    aoi_bounds,
    classify_aoi,
    quadrant_of,
)

geometry = ScreenGeometry()  # y grows downward on screen

print("1. Quadrants (screen coordinates, stimuli in the visually lower half):")
for x, y, where in [
    (100, 100, "upper left"),
    (1500, 100, "upper right"),
    (100, 900, "lower left"),
    (1500, 900, "lower right"),
    (960, 540, "dead center"),
]:
    q = quadrant_of(x, y, geometry)
    role = "stimulus" if q.is_stimulus else "menu"
    print(f"   ({x:>4}, {y:>4}) {where:12} -> {q.value} ({role})")

print("\n2. An AoI is a closed rectangle centered on the object:")
placement = ObjectPlacement(t_ms=0, obj_x_px=480, obj_y_px=810, aoi_w_px=200, aoi_h_px=150)
rect = aoi_bounds(placement)
print(f"   object at (480, 810), 200x150 -> x in [{rect.x_min}, {rect.x_max}], "
      f"y in [{rect.y_min}, {rect.y_max}]")

print("\n3. The label takes the side from the object position, not the gaze:")
left_obj = placement
right_obj = ObjectPlacement(t_ms=0, obj_x_px=1440, obj_y_px=810, aoi_w_px=200, aoi_h_px=150)
for gx, gy, obj, tag in [
    (480, 812, left_obj, "inside the left object's box"),
    (480, 1000, left_obj, "below the box"),
    (1440, 812, right_obj, "inside the right object's box"),
    (480, 812, None, "no object on screen"),
]:
    label = classify_aoi(gx, gy, obj, geometry)
    print(f"   gaze ({gx:>4}, {gy:>4}), {tag:32} -> {label.value}")
