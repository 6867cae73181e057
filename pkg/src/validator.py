"""
Representation Validator
Geometric audit of an L-contact representation against its plane graph,
independent of how the shapes were produced.
"""

import logging
from collections import defaultdict
from typing import Dict, List, Optional, Tuple

import shapely
from shapely.geometry import LineString, Point, Polygon
from shapely.geometry.polygon import orient
from shapely.ops import polygonize, unary_union

from src.lcontact import LContactRepresentation, LShape
from src.plane_graph import PlaneGraph, canonical_cycle
from src.verdict import Verdict

logger = logging.getLogger(__name__)

PROBE = 0.25

IntPoint = Tuple[int, int]


def _sign(value: float) -> int:
    return (value > 0) - (value < 0)


def _as_int(point: Point) -> IntPoint:
    return int(round(point.x)), int(round(point.y))


def shape_line(shape: LShape) -> LineString:
    return LineString([shape.h_end, shape.bend, shape.v_end])


def is_well_formed(shape: LShape) -> bool:
    """One horizontal and one vertical leg, both of positive length"""
    bx, by = shape.bend
    return shape.h_end[1] == by and shape.v_end[0] == bx and \
        shape.h_end[0] != bx and shape.v_end[1] != by


def _endpoints(shape: LShape) -> Tuple[IntPoint, IntPoint]:
    return tuple(shape.h_end), tuple(shape.v_end)


def _classify(shape: LShape, p: IntPoint) -> str:
    """Where p sits on the shape: 'bend', 'end' or 'interior'"""
    if p == tuple(shape.bend):
        return 'bend'
    if p in _endpoints(shape):
        return 'end'
    return 'interior'


class ContactScan:
    """Pairwise intersections of all shapes, sorted into contacts and violations"""

    def __init__(self, rep: LContactRepresentation):
        self.rep = rep
        self.ids = sorted(rep.shapes)
        self.lines = [shape_line(rep.shapes[v]) for v in self.ids]
        self.contacts: Dict[Tuple[int, int], Tuple[IntPoint, int]] = {}
        self.crossings: List[list] = []
        self.bad_contacts: List[list] = []

    def run(self) -> 'ContactScan':
        tree = shapely.STRtree(self.lines)
        for i, line in enumerate(self.lines):
            for j in sorted(int(k) for k in tree.query(line)):
                if j <= i:
                    continue
                self._pair(self.ids[i], self.ids[j], line.intersection(self.lines[j]))
        return self

    def _pair(self, a: int, b: int, inter):
        if inter.is_empty:
            return
        if inter.geom_type != 'Point':
            self.crossings.append([a, b])
            return

        p = _as_int(inter)
        where_a = _classify(self.rep.shapes[a], p)
        where_b = _classify(self.rep.shapes[b], p)
        if where_a == 'interior' and where_b == 'interior':
            self.crossings.append([a, b])
        elif 'bend' in (where_a, where_b) or where_a == where_b:
            self.bad_contacts.append([a, b, list(p), f"{where_a}-{where_b}"])
        else:
            self.contacts[(min(a, b), max(a, b))] = (p, a if where_a == 'end' else b)

    @property
    def free_endpoints(self) -> int:
        used = defaultdict(set)
        for (p, owner) in self.contacts.values():
            used[owner].add(p)
        return sum(1 for v in self.ids for end in _endpoints(self.rep.shapes[v]) if end not in used[v])


def _probe(rep: LContactRepresentation, host: int, p: IntPoint, owner: int) -> Point:
    """A point on the thick outline of `host` on the side where the contact meets it"""
    if owner == host:
        bend = rep.shapes[host].bend
        direction = (_sign(p[0] - bend[0]), _sign(p[1] - bend[1]))
    else:
        bend = rep.shapes[owner].bend
        direction = (_sign(bend[0] - p[0]), _sign(bend[1] - p[1]))
    return Point(p[0] + PROBE * direction[0], p[1] + PROBE * direction[1])


def contact_rotation(rep: LContactRepresentation, scan: ContactScan) -> Dict[int, List[int]]:
    """Clockwise order of the contacts around every shape"""
    around: Dict[int, List[Tuple[float, int]]] = defaultdict(list)
    rings = {}
    for v in scan.ids:
        thick = shape_line(rep.shapes[v]).buffer(PROBE, cap_style='square', join_style='mitre')
        rings[v] = orient(thick, sign=-1.0).exterior

    for (a, b), (p, owner) in scan.contacts.items():
        for host, other in ((a, b), (b, a)):
            probe = _probe(rep, host, p, owner)
            around[host].append((rings[host].project(probe), other))

    return {v: [other for _, other in sorted(around[v])] for v in scan.ids}


def _face_regions(rep: LContactRepresentation) -> List[Tuple[Polygon, frozenset]]:
    """Bounded regions of the drawing with the shapes along each outline"""
    ids = sorted(rep.shapes)
    lines = [shape_line(rep.shapes[v]) for v in ids]
    polygons = list(polygonize(unary_union(lines)))
    if not polygons:
        return []

    outlines = [polygon.exterior for polygon in polygons]
    region_idx, line_idx = shapely.STRtree(lines).query(outlines, predicate='intersects')
    shared = shapely.length(shapely.intersection([lines[j] for j in line_idx],
                                                 [outlines[i] for i in region_idx]))
    bounding: Dict[int, set] = defaultdict(set)
    for i, j, length in zip(region_idx, line_idx, shared):
        if length > 0:
            bounding[int(i)].add(ids[int(j)])
    return [(polygon, frozenset(bounding[i])) for i, polygon in enumerate(polygons)]


def corner_probe(shape: LShape) -> Point:
    """A point just inside the right angle between the two legs"""
    sx = _sign(shape.h_end[0] - shape.bend[0])
    sy = _sign(shape.v_end[1] - shape.bend[1])
    return Point(shape.bend[0] + PROBE * sx, shape.bend[1] + PROBE * sy)


def _hosts(rep: LContactRepresentation, face_polygon: Dict[int, Polygon]) -> Dict[int, List[int]]:
    """Face -> shapes whose right angle lies inside it"""
    hosted: Dict[int, List[int]] = {f: [] for f in face_polygon}
    if not face_polygon:
        return hosted
    faces = list(face_polygon)
    ids = sorted(rep.shapes)
    probes = [corner_probe(rep.shapes[v]) for v in ids]
    probe_idx, face_idx = shapely.STRtree([face_polygon[f] for f in faces]).query(probes, predicate='within')
    for i, k in sorted(zip(probe_idx.tolist(), face_idx.tolist())):
        hosted[faces[k]].append(ids[i])
    return hosted


def validate_representation(g: PlaneGraph, rep: LContactRepresentation) -> Verdict:
    """
    Check that rep is a proper L-contact representation of g

    Clauses: (a) no crossings or overlaps, (b) contacts are exactly the
    edges of g, (c) every contact is endpoint-to-interior, (d) contacts
    around every shape follow the rotation system, (e) every inner face is
    a simple rectilinear polygon, (f) every inner face holds the right angle
    of exactly one shape, (g) bends lie in {1..n}^2.

    Returns:
        Verdict naming the first violated clause, with a witness
    """
    if set(rep.shapes) != set(g.vertices):
        return Verdict.failed('shapes', sorted(set(rep.shapes) ^ set(g.vertices)),
                              'shapes do not match the vertex set')
    malformed = [v for v, s in sorted(rep.shapes.items()) if not is_well_formed(s)]
    if malformed:
        return Verdict.failed('shapes', malformed, 'degenerate or non-rectilinear L-shapes')

    scan = ContactScan(rep).run()
    if scan.crossings:
        return Verdict.failed('a', scan.crossings[0], 'shapes cross or overlap')

    # bad contacts still count as touching pairs; clause (c) rejects them
    found = set(scan.contacts) | {(min(a, b), max(a, b)) for a, b, *_ in scan.bad_contacts}
    expected = set(g.edges())
    if found != expected:
        return Verdict.failed('b', sorted(list(e) for e in found ^ expected),
                              'contact graph differs from the input graph')

    if scan.bad_contacts:
        return Verdict.failed('c', scan.bad_contacts[0], 'contact is not endpoint-to-interior')

    rotation = contact_rotation(rep, scan)
    for v in g.vertices:
        if canonical_cycle(rotation[v]) != g.rotation[v]:
            return Verdict.failed('d', v, f"contacts around {v} read {rotation[v]}, rotation is {list(g.rotation[v])}")

    faces_by_vertices = {frozenset(g.face_vertices(f)): f for f in g.inner_faces}
    face_polygon: Dict[int, Polygon] = {}
    for polygon, bounding in _face_regions(rep):
        f = faces_by_vertices.get(bounding)
        if f is None or f in face_polygon:
            return Verdict.failed('e', sorted(bounding),
                                  'region does not correspond to a unique inner face')
        if not polygon.is_valid or len(polygon.interiors) > 0:
            return Verdict.failed('e', f, f"face {f} is not a simple polygon")
        face_polygon[f] = polygon
    if len(face_polygon) != len(g.inner_faces):
        missing = sorted(set(g.inner_faces) - set(face_polygon))
        return Verdict.failed('e', missing, 'inner faces without a region')

    hosted = _hosts(rep, face_polygon)
    for f in sorted(hosted):
        if len(hosted[f]) != 1:
            return Verdict.failed('f', {'face': f, 'corners': sorted(hosted[f])},
                                  f"face {f} holds {len(hosted[f])} right angles")

    n = g.n
    outside = [v for v, s in sorted(rep.shapes.items())
               if not (1 <= s.bend[0] <= n and 1 <= s.bend[1] <= n)]
    if outside:
        return Verdict.failed('g', outside, 'bends outside the n x n grid')

    free = scan.free_endpoints
    notes = [f"free endpoints: {free}" + (" (maximal)" if free <= 3 else " (not maximal)")]
    logger.debug(f"Representation valid; {notes[0]}")
    return Verdict(True, None, None, 'proper L-contact representation', notes)


def matched_faces(g: PlaneGraph, rep: LContactRepresentation) -> Dict[int, Optional[int]]:
    """Inner face holding each shape's right angle, None when it lies outside"""
    faces_by_vertices = {frozenset(g.face_vertices(f)): f for f in g.inner_faces}
    polygons = {}
    for polygon, bounding in _face_regions(rep):
        f = faces_by_vertices.get(bounding)
        if f is not None:
            polygons[f] = polygon
    result: Dict[int, Optional[int]] = {v: None for v in sorted(rep.shapes)}
    for f, shapes in _hosts(rep, polygons).items():
        for v in shapes:
            result[v] = f
    return result
