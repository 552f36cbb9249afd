"""Enumeration of tabletop object configurations.

Scenes place one to three colored cubes on the two rows, organized into
ambiguity classes by how tightly the objects crowd each other:

* ``none`` -- a single object;
* ``a1``   -- 10 cm free space between objects;
* ``a2``   -- 5 cm free space (three-object arrangements include V
  shapes spanning both rows);
* ``a3``   -- touching objects, 0 cm;
* ``a4``   -- objects distributed across the rows with 2 cm of visual
  overlap from the camera's perspective.

Every arrangement is recorded twice: two takes with identical object
placement and the same designated target, only the gesture stream
differing, the way short tabletop sessions are usually collected.
Takes of one arrangement share a ``layout_id``; one a4 pair arrangement
gets a third take to round that class total out.  The block totals are

    none 16, a1 6 + 4, a2 10 + 12, a3 10 + 10, a4 7 + 20

(two-object + three-object), 95 scenes in all.  An optional extra block
of 23 boundary arrangements (gaps halfway between the classes, 1 cm
overlap) can be appended for stress testing; those are flagged
``edge_case``.

Within a class the arrangements differ by which row carries the group
and by sliding the group along the row; every constrained pair meets its
class gap exactly, which `gap_residuals` verifies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..boxes import BoxLabel
from .geometry import TableGeometry

PALETTE = ("red", "green", "yellow")

#: visual overlap (cm) between cross-row objects in class a4
A4_OVERLAP_CM = 2.0

#: object counts that occur per ambiguity class
VALID_OBJECT_COUNTS = {
    "none": (1,),
    "a1": (2, 3),
    "a2": (2, 3),
    "a3": (2, 3),
    "a4": (2, 3),
}


@dataclass(frozen=True)
class SceneObject:
    """One cube on the table."""

    color: str
    x_cm: float
    row: int
    depth_cm: float
    bbox: BoxLabel  # visible extent in the image


@dataclass(frozen=True)
class Scene:
    """One recorded take of an object configuration.

    Takes of the same arrangement (identical placements and target)
    share a ``layout_id``.
    """

    scene_id: int
    ambiguity_class: str
    objects: tuple[SceneObject, ...]
    target_index: int
    layout_id: int = 0
    edge_case: bool = False

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def target(self) -> SceneObject:
        return self.objects[self.target_index]


def cube_bbox(geometry: TableGeometry, x_cm: float, depth_cm: float) -> BoxLabel:
    """Image bounding box of a cube standing at (x_cm, depth_cm).

    The lateral extent is the cube's width projected at its center
    depth -- the camera mostly sees the front face, so the slightly
    wider near-bottom edge is folded into the face rather than widening
    the box.  The vertical extent runs from the near footprint edge up
    to the cube top, with the height converted at the local lateral
    scale.
    """
    half = geometry.cube_cm / 2
    anchors = np.array(
        [
            [x_cm - half, depth_cm],
            [x_cm + half, depth_cm],
            [x_cm, depth_cm - half],
            [x_cm, depth_cm + half],
        ]
    )
    px = geometry.project(anchors)
    height = geometry.cube_cm * geometry.lateral_scale(x_cm, depth_cm)
    return BoxLabel(
        float(px[0, 0]),
        float(px[3, 1] - height),
        float(px[1, 0]),
        float(px[2, 1]),
    )


def visible_extent(box: BoxLabel, occluders: list[BoxLabel]) -> BoxLabel:
    """Shrink a box by nearer objects standing in front of it.

    An occluder whose box reaches the occludee's bottom edge stands
    between it and the camera through its whole apparent height (the
    flat box projection understates how much of a nearer object's body
    blocks the view), so the overlapped lateral band is cut away.  An
    occluder spanning the full width cuts the overlapped vertical band
    instead.  Anything else leaves the box unchanged.
    """
    x1, y1, x2, y2 = box.as_tuple()
    for ob in occluders:
        if ob.y1 < y2 <= ob.y2:  # stands in front of the box
            if ob.x1 <= x1 < ob.x2 < x2:
                x1 = ob.x2
            elif x1 < ob.x1 < x2 <= ob.x2:
                x2 = ob.x1
        if ob.x1 <= x1 and ob.x2 >= x2:  # full-width strip
            if ob.y1 <= y1 < ob.y2 < y2:
                y1 = ob.y2
            elif y1 < ob.y1 < y2 <= ob.y2:
                y2 = ob.y1
    return BoxLabel(x1, y1, x2, y2)


#: golden-ratio conjugate; successive multiples spread phases evenly
_PHASE_STEP = 0.6180339887498949


def _phase_stream():
    k = 0
    while True:
        yield (0.5 + k * _PHASE_STEP) % 1.0
        k += 1


def _slide_positions(
    geometry: TableGeometry, span_cm: float, count: int, phase: float = 0.5
) -> np.ndarray:
    """Leftmost cube-center positions for `count` slides of a group.

    ``span_cm`` is the distance between the first and last cube centers
    of the group; the group slides between the table margins on an even
    comb offset by ``phase`` (in units of the comb pitch).  Distinct
    phases per scene block interleave the positions of different blocks
    so the dataset does not collapse onto one rigid lattice.
    """
    lo, hi = geometry.x_center_range_cm
    room = hi - lo - span_cm
    if room < 0:
        raise ValueError(f"group span {span_cm} cm does not fit the table")
    pitch = room / count
    return lo + pitch * (np.arange(count) + phase)


def _build_scene(
    geometry: TableGeometry,
    scene_id: int,
    klass: str,
    placements: list[tuple[float, int]],
    color_shift: int,
    target_index: int,
    layout_id: int,
    edge_case: bool = False,
) -> Scene:
    """Assemble a scene from (x_cm, row) placements.

    Objects nearer the camera (row 2) occlude farther ones when their
    boxes overlap; boxes store the visible extent.
    """
    raw = [
        (x, row, geometry.row_depth(row), cube_bbox(geometry, x, geometry.row_depth(row)))
        for x, row in placements
    ]
    objects = []
    for j, (x, row, depth, box) in enumerate(raw):
        occluders = [b for (_, _, d2, b) in raw if d2 < depth]
        objects.append(
            SceneObject(
                color=PALETTE[(j + color_shift) % len(PALETTE)],
                x_cm=float(x),
                row=row,
                depth_cm=depth,
                bbox=visible_extent(box, occluders),
            )
        )
    return Scene(
        scene_id=scene_id,
        ambiguity_class=klass,
        objects=tuple(objects),
        target_index=target_index,
        layout_id=layout_id,
        edge_case=edge_case,
    )


def _row_group(n: int, gap: float, cube: float) -> tuple[float, list[float]]:
    """Span and relative centers of n cubes in a row with a fixed edge gap."""
    pitch = cube + gap
    return pitch * (n - 1), [pitch * j for j in range(n)]


def enumerate_configs(
    geometry: TableGeometry | None = None,
    include_edge_cases: bool = False,
    klass: str | None = None,
    n_objects: int | None = None,
) -> list[Scene]:
    """All object configurations: 95 scenes (plus 23 edge cases on request).

    ``klass`` and ``n_objects`` restrict the result to one ambiguity
    class and object count; a combination that does not occur (a1 with
    one object, none with two, ...) raises.  Scene ids stay global, so a
    filtered listing is a slice of the full enumeration.
    """
    if klass is not None and klass not in VALID_OBJECT_COUNTS:
        raise ValueError(f"unknown ambiguity class: {klass!r}")
    if n_objects is not None:
        valid = (
            VALID_OBJECT_COUNTS[klass]
            if klass is not None
            else {n for counts in VALID_OBJECT_COUNTS.values() for n in counts}
        )
        if n_objects not in valid:
            scope = f"class {klass}" if klass is not None else "any class"
            raise ValueError(f"{scope} has no {n_objects}-object arrangements")

    geometry = geometry or TableGeometry()
    cube = geometry.cube_cm
    scenes: list[Scene] = []
    phases = _phase_stream()
    layout_ids = itertools.count()

    def add_block(
        block_klass: str,
        layouts: list[tuple[list[tuple[float, int]], int]],
        takes: tuple[int, ...] | None = None,
        edge_case: bool = False,
    ):
        counts = takes if takes is not None else (2,) * len(layouts)
        for (placements, target_index), n_takes in zip(layouts, counts, strict=True):
            layout_id = next(layout_ids)
            for _ in range(n_takes):
                scenes.append(
                    _build_scene(
                        geometry,
                        scene_id=len(scenes),
                        klass=block_klass,
                        placements=placements,
                        color_shift=layout_id,
                        target_index=target_index,
                        layout_id=layout_id,
                        edge_case=edge_case,
                    )
                )

    def row_layouts(n: int, gap: float, count: int) -> list[tuple[list, int]]:
        """Arrangements of n cubes in one row, alternating rows while
        sliding along the table; the target cycles through the group."""
        span, rel = _row_group(n, gap, cube)
        return [
            ([(x0 + r, 1 if i % 2 == 0 else 2) for r in rel], i % n)
            for i, x0 in enumerate(_slide_positions(geometry, span, count, next(phases)))
        ]

    def v_layouts(gap: float, count: int) -> list[tuple[list, int]]:
        """Two cubes on one row, one centered between them on the other;
        the middle cube keeps the class gap laterally to both."""
        pair_span = 2 * (gap + cube)
        layouts = []
        for i, x0 in enumerate(_slide_positions(geometry, pair_span, count, next(phases))):
            pair_row = 1 if i % 2 == 0 else 2
            single_row = 2 if pair_row == 1 else 1
            placements = [
                (x0, pair_row),
                (x0 + pair_span, pair_row),
                (x0 + pair_span / 2, single_row),
            ]
            layouts.append((placements, i % 3))
        return layouts

    def cross_pair_layouts(overlap: float, count: int) -> list[tuple[list, int]]:
        """Row-1/row-2 pairs with a fixed lateral overlap; the target
        alternates between the partly hidden rear cube and the front one."""
        offset = cube - overlap
        return [
            ([(x0, 1), (x0 + offset, 2)], i % 2)
            for i, x0 in enumerate(_slide_positions(geometry, offset, count, next(phases)))
        ]

    def cross_triple_layouts(overlap: float, count: int) -> list[tuple[list, int]]:
        """A pair on row 1 plus a single on row 2 centered between them;
        the nearer single overlaps both flankers by the class overlap.
        Each placement appears twice, targeting the left and the right
        flanker."""
        offset = 2 * (cube - overlap)
        layouts = []
        for x0 in _slide_positions(geometry, offset, count, next(phases)):
            placements = [(x0, 1), (x0 + offset, 1), (x0 + offset / 2, 2)]
            layouts.append((placements, 0))
            layouts.append((placements, 1))
        return layouts

    # one object, no ambiguity: 4 positions per row
    add_block(
        "none",
        [
            ([(x, row)], 0)
            for row in (1, 2)
            for x in _slide_positions(geometry, 0.0, 4, next(phases))
        ],
    )

    # two objects; the odd a4 total gives its first arrangement a third take
    add_block("a1", row_layouts(2, 10.0, 3))
    add_block("a2", row_layouts(2, 5.0, 5))
    add_block("a3", row_layouts(2, 0.0, 5))
    add_block("a4", cross_pair_layouts(A4_OVERLAP_CM, 3), takes=(3, 2, 2))

    # three objects
    add_block("a1", row_layouts(3, 10.0, 2))
    add_block("a2", row_layouts(3, 5.0, 3) + v_layouts(5.0, 3))
    add_block("a3", row_layouts(3, 0.0, 5))
    add_block("a4", cross_triple_layouts(A4_OVERLAP_CM, 5))

    if include_edge_cases:
        add_block("a2", row_layouts(2, 7.5, 3), edge_case=True)
        add_block("a3", row_layouts(2, 2.5, 3), edge_case=True)
        add_block("a4", cross_pair_layouts(1.0, 3), takes=(3, 2, 2), edge_case=True)
        add_block("a2", row_layouts(3, 7.5, 2), edge_case=True)

    if klass is not None:
        scenes = [s for s in scenes if s.ambiguity_class == klass]
    if n_objects is not None:
        scenes = [s for s in scenes if s.n_objects == n_objects]
    return scenes


def gap_residuals(scene: Scene, geometry: TableGeometry | None = None) -> list[float]:
    """Absolute deviation (cm) of each constrained object pair from its class gap.

    Same-row neighbors are measured edge to edge along the row; cross-row
    pairs are measured as lateral visual gap (negative gap = overlap).
    """
    geometry = geometry or TableGeometry()
    cube = geometry.cube_cm
    objs = scene.objects
    if scene.ambiguity_class == "none":
        return [0.0]
    if scene.ambiguity_class == "a4":
        overlap = 1.0 if scene.edge_case else A4_OVERLAP_CM
        return [
            abs(abs(a.x_cm - b.x_cm) - cube + overlap)
            for i, a in enumerate(objs)
            for b in objs[i + 1 :]
            if a.row != b.row
        ]
    gap_cm = {
        False: {"a1": 10.0, "a2": 5.0, "a3": 0.0},
        True: {"a2": 7.5, "a3": 2.5},
    }[scene.edge_case][scene.ambiguity_class]
    # The constraint chain runs between laterally adjacent objects
    # regardless of row (V shapes included: the middle cube keeps the
    # class gap to both flankers).
    ordered = sorted(objs, key=lambda o: o.x_cm)
    return [
        abs((b.x_cm - a.x_cm) - cube - gap_cm) for a, b in zip(ordered, ordered[1:])
    ]
