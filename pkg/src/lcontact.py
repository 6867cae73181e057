"""
L-Contact Construction
Vertex types, the inequality graphs D_r and D_b, rank coordinates and the
L-shapes realizing a plane Laman graph as a proper L-contact representation.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from src.angular import AngularMatching
from src.errors import CycleDetected, InconsistentInputs
from src.labeling import BLUE, RED, EdgeLabeling
from src.plane_graph import PlaneGraph
from src.verdict import Verdict

logger = logging.getLogger(__name__)

PLUS = 1
MINUS = -1

QUADRANTS = {(PLUS, PLUS): 'I', (MINUS, PLUS): 'II', (MINUS, MINUS): 'III', (PLUS, MINUS): 'IV'}
QUADRANT_NUMBER = {'I': 1, 'II': 2, 'III': 3, 'IV': 4}
NUMBER_QUADRANT = {k: t for t, k in QUADRANT_NUMBER.items()}

Point = Tuple[int, int]


# Vertex types

@dataclass
class VertexTypes:
    red: Dict[int, int] = field(default_factory=dict)
    blue: Dict[int, int] = field(default_factory=dict)
    odd: Dict[int, bool] = field(default_factory=dict)

    def quadrant(self, v: int) -> str:
        return QUADRANTS[(self.red[v], self.blue[v])]

    def number(self, v: int) -> int:
        return QUADRANT_NUMBER[self.quadrant(v)]

    def to_dict(self) -> dict:
        sign = {PLUS: '+', MINUS: '-'}
        return {
            str(v): {'t_r': sign[self.red[v]], 't_b': sign[self.blue[v]],
                     'type': self.quadrant(v),
                     'parity': None if v not in self.odd else ('odd' if self.odd[v] else 'even')}
            for v in sorted(self.red)
        }


def shift_type(t: str, k: int) -> str:
    """Quadrant label k steps on, mod 4"""
    return NUMBER_QUADRANT[(QUADRANT_NUMBER[t] - 1 + k) % 4 + 1]


class AngleSplit:
    """Position of edges and of the matched corner relative to the arc e_r .. e_b (clockwise) at a vertex"""

    def __init__(self, g: PlaneGraph, labeling: EdgeLabeling, matching: AngularMatching, v: int):
        self.v = v
        self.d = g.degree(v)
        self.i_r = g.index_of(v, labeling.out_red[v])
        self.i_b = g.index_of(v, labeling.out_blue[v])
        face = matching.vertex_to_face.get(v)
        if face is None:
            raise InconsistentInputs(f"vertex {v} is not matched to a face", witness=[v])
        a, _ = g.corner_of(v, face)
        self.matched_corner = g.index_of(v, a)
        self.g = g

    @property
    def span(self) -> int:
        return (self.i_b - self.i_r) % self.d

    def edge_in_arc(self, u: int) -> bool:
        return 0 < (self.g.index_of(self.v, u) - self.i_r) % self.d < self.span

    @property
    def corner_in_arc(self) -> bool:
        return (self.matched_corner - self.i_r) % self.d < self.span

    def in_matched_angle(self, u: int) -> bool:
        return self.edge_in_arc(u) == self.corner_in_arc

    @property
    def is_odd(self) -> bool:
        return not self.corner_in_arc


def _splits(g: PlaneGraph, labeling: EdgeLabeling, matching: AngularMatching) -> Dict[int, AngleSplit]:
    return {v: AngleSplit(g, labeling, matching, v) for v in g.vertices if not g.is_special(v)}


def assign_types(g: PlaneGraph, labeling: EdgeLabeling, matching: AngularMatching, T=None) -> VertexTypes:
    """
    Red and blue signs by traversing E_r from v1 and E_b from v2

    Args:
        g: plane Laman graph
        labeling: edge labeling of an angular tree
        matching: face-vertex matching of the same tree
        T: the angular tree; when given, every matched pair must lie in it

    Returns:
        VertexTypes with both signs and parity for every vertex
    """
    if T is not None:
        tree = T.edges if hasattr(T, 'edges') else frozenset(T)
        stray = [(v, f) for f, v in matching.face_to_vertex.items() if (v, f) not in tree]
        if stray:
            raise InconsistentInputs('matching uses pairs outside the angular tree', witness=stray)

    splits = _splits(g, labeling, matching)
    types = VertexTypes()
    # both special shapes are of type I
    for special in (g.v1, g.v2):
        types.red[special] = PLUS
        types.blue[special] = PLUS

    for root, edges, signs in ((g.v1, labeling.red, types.red), (g.v2, labeling.blue, types.blue)):
        children: Dict[int, List[int]] = {}
        for u, v in edges:
            children.setdefault(v, []).append(u)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in sorted(children.get(v, [])):
                if u in signs and not g.is_special(u):
                    raise InconsistentInputs(f"vertex {u} reached twice in a monochromatic tree", witness=[u])
                matched = v in splits and splits[v].in_matched_angle(u)
                signs[u] = -signs[v] if matched else signs[v]
                queue.append(u)

    for v, split in splits.items():
        if v not in types.red or v not in types.blue:
            raise InconsistentInputs(f"vertex {v} did not receive both signs", witness=[v])
        types.odd[v] = split.is_odd
        if split.is_odd != (types.red[v] == types.blue[v]):
            raise InconsistentInputs(f"parity of vertex {v} contradicts its signs", witness=[v])

    logger.debug(f"Vertex types: {dict(Counter(types.quadrant(v) for v in g.vertices))}")
    return types


# Faces

@dataclass
class FaceSequence:
    """
    Boundary of an inner face split at its matched vertex v and sinks u, w.

    Clockwise the face reads u, u1..ui, v, w1..wj, w, v1..vk. The three
    lists include their end vertices: us = [u, .., v], ws = [v, .., w],
    vs = [w, .., u].
    """
    face: int
    v: int
    u: int
    w: int
    us: List[int]
    ws: List[int]
    vs: List[int]

    # missing interior vertices fall back to the ends of their list
    @property
    def u1(self) -> int:
        return self.us[1]

    @property
    def ui(self) -> int:
        return self.us[-2]

    @property
    def v1(self) -> int:
        return self.vs[1]

    @property
    def vk(self) -> int:
        return self.vs[-2]

    @property
    def w1(self) -> int:
        return self.ws[1]

    @property
    def wj(self) -> int:
        return self.ws[-2]


def face_sequence(g: PlaneGraph, labeling: EdgeLabeling, matching: AngularMatching, f: int) -> FaceSequence:
    v = matching.face_to_vertex[f]
    sinks = {labeling.red_sink[f], labeling.blue_sink[f]}
    clockwise = list(g.faces[f].clockwise)
    start = clockwise.index(v)
    cw = clockwise[start:] + clockwise[:start]

    positions = sorted(cw.index(s) for s in sinks)
    if len(positions) != 2 or positions[0] == 0:
        raise InconsistentInputs(f"face {f} has matched vertex {v} among its sinks", witness=[f])
    i_w, i_u = positions
    u, w = cw[i_u], cw[i_w]
    return FaceSequence(f, v, u, w, us=[u] + cw[i_u + 1:] + [v], ws=cw[:i_w + 1], vs=cw[i_w:i_u + 1])


def check_types(g: PlaneGraph, labeling: EdgeLabeling, matching: AngularMatching, types: VertexTypes) -> Verdict:
    """Type rule along every edge, the parity rule and the types around each face"""
    splits = _splits(g, labeling, matching)
    for color, edges, signs in ((RED, labeling.red, types.red), (BLUE, labeling.blue, types.blue)):
        for u, v in edges:
            matched = v in splits and splits[v].in_matched_angle(u)
            if (signs[u] != signs[v]) != matched:
                return Verdict.failed('type-rule', [u, v], f"{color} signs of {u} and {v} break the type rule")

    for v, split in splits.items():
        if split.is_odd != (types.red[v] == types.blue[v]):
            return Verdict.failed('parity', v, f"vertex {v} parity contradicts its signs")

    for f in g.inner_faces:
        seq = face_sequence(g, labeling, matching, f)
        t = types.quadrant(seq.v)
        for members, expected in ((seq.us[1:-1], shift_type(t, -1)), (seq.vs[1:-1], t),
                                  (seq.ws[1:-1], shift_type(t, 1))):
            for x in members:
                if types.quadrant(x) != expected:
                    return Verdict.failed('face-types', [f, x],
                                          f"vertex {x} on face {f} has type {types.quadrant(x)}, expected {expected}")
    return Verdict.passed()


# Inequality graphs

# per type: (list, start, trim at end, direction) for the three paths
FACE_PATHS = {
    'r': {
        'I': (('us', 0, 0, '<'), ('vs', 1, 0, '>'), ('ws', 0, 1, '>')),
        'II': (('us', 1, 0, '>'), ('vs', 0, 1, '>'), ('ws', 0, 0, '<')),
        'III': (('us', 0, 0, '>'), ('vs', 1, 0, '<'), ('ws', 0, 1, '<')),
        'IV': (('us', 1, 0, '<'), ('vs', 0, 1, '<'), ('ws', 0, 0, '>')),
    },
    'b': {
        'I': (('us', 1, 0, '<'), ('vs', 0, 1, '<'), ('ws', 0, 0, '>')),
        'II': (('us', 0, 0, '<'), ('vs', 1, 0, '>'), ('ws', 0, 1, '>')),
        'III': (('us', 1, 0, '>'), ('vs', 0, 1, '>'), ('ws', 0, 0, '<')),
        'IV': (('us', 0, 0, '>'), ('vs', 1, 0, '<'), ('ws', 0, 1, '<')),
    },
}

# per type: (vertex, 'in' for vertex -> f or 'out' for f -> vertex)
FACE_EDGES = {
    'r': {
        'I': (('wj', 'in'), ('v1', 'out'), ('ui', 'out')),
        'II': (('vk', 'in'), ('w1', 'in'), ('u1', 'out')),
        'III': (('ui', 'in'), ('v1', 'in'), ('wj', 'out')),
        'IV': (('u1', 'in'), ('vk', 'out'), ('w1', 'out')),
    },
    'b': {
        'I': (('u1', 'in'), ('vk', 'out'), ('w1', 'out')),
        'II': (('wj', 'in'), ('v1', 'out'), ('ui', 'out')),
        'III': (('w1', 'in'), ('vk', 'in'), ('u1', 'out')),
        'IV': (('ui', 'in'), ('v1', 'in'), ('wj', 'out')),
    },
}


@dataclass
class InequalityGraph:
    """Directed multigraph on vertices and inner faces; u -> w means coordinate(u) < coordinate(w)"""
    axis: str
    graph: PlaneGraph
    digraph: nx.MultiDiGraph

    def has_edge(self, a: int, b: int) -> bool:
        return self.digraph.has_edge(a, b)

    def face_edges(self, f: int) -> List[Tuple[int, int]]:
        return sorted(list(self.digraph.in_edges(f)) + list(self.digraph.out_edges(f)))

    def to_dict(self) -> dict:
        return {'axis': self.axis,
                'edges': [[a, b] for a, b in sorted(self.digraph.edges())]}


def _oriented(labeling: EdgeLabeling, types: VertexTypes, own: str, a: int, b: int) -> Tuple[int, int]:
    """Direction of the G-edge a -> b (as labeled) in D_r (own='r') or D_b (own='b')"""
    same = labeling.red if own == 'r' else labeling.blue
    signs = types.red if own == 'r' else types.blue
    if (a, b) in same:
        return (a, b) if signs[a] == PLUS else (b, a)
    return (a, b) if signs[b] == MINUS else (b, a)


def build_inequality_graphs(g: PlaneGraph, labeling: EdgeLabeling, matching: AngularMatching,
                            types: VertexTypes) -> Tuple[InequalityGraph, InequalityGraph]:
    """
    Inequality graphs for the x (D_r) and y (D_b) coordinates

    Args:
        g: plane Laman graph
        labeling: edge labeling
        matching: face-vertex matching
        types: vertex types

    Returns:
        (D_r, D_b), both acyclic
    """
    graphs = []
    for own in ('r', 'b'):
        digraph = nx.MultiDiGraph()
        digraph.add_nodes_from(g.vertices)
        digraph.add_nodes_from(g.inner_faces)

        for a, b in sorted(labeling.red | labeling.blue):
            digraph.add_edge(*_oriented(labeling, types, own, a, b), kind='edge')
        special = (g.v2, g.v1) if own == 'r' else (g.v1, g.v2)
        digraph.add_edge(*special, kind='edge')

        for f in g.inner_faces:
            seq = face_sequence(g, labeling, matching, f)
            for name, direction in FACE_EDGES[own][types.quadrant(seq.v)]:
                vertex = getattr(seq, name)
                if direction == 'in':
                    digraph.add_edge(vertex, f, kind='face')
                else:
                    digraph.add_edge(f, vertex, kind='face')

        if not nx.is_directed_acyclic_graph(digraph):
            cycle = nx.find_cycle(digraph)
            raise CycleDetected(f"D_{own} has a directed cycle",
                                witness=sorted({node for edge in cycle for node in edge[:2]}))
        graphs.append(InequalityGraph(own, g, digraph))

    return graphs[0], graphs[1]


def check_face_paths(g: PlaneGraph, labeling: EdgeLabeling, matching: AngularMatching, types: VertexTypes,
                     d_r: InequalityGraph, d_b: InequalityGraph) -> Verdict:
    """Per inner face: the three directed boundary paths and an acyclic local refinement"""
    for d in (d_r, d_b):
        for f in g.inner_faces:
            seq = face_sequence(g, labeling, matching, f)
            t = types.quadrant(seq.v)
            for name, start, trim, direction in FACE_PATHS[d.axis][t]:
                path = getattr(seq, name)
                path = path[start:len(path) - trim]
                for a, b in zip(path, path[1:]):
                    edge = (a, b) if direction == '>' else (b, a)
                    if not d.has_edge(*edge):
                        return Verdict.failed('face-paths', [f, list(edge)],
                                              f"D_{d.axis} misses {edge[0]}->{edge[1]} on face {f} of type {t}")

            local = nx.DiGraph(d.digraph.subgraph(list(g.faces[f].walk) + [f]))
            if not nx.is_directed_acyclic_graph(local):
                return Verdict.failed('face-acyclic', f, f"D_{d.axis} is cyclic around face {f}")
    return Verdict.passed()


def check_sink_edges(d_r: InequalityGraph, d_b: InequalityGraph, labeling: EdgeLabeling,
                     types: VertexTypes) -> Verdict:
    """
    Audit D_r and D_b at the face sinks and along the edge-face association.

    The two boundary edges at the blue sink of a face are both outgoing in
    D_r when its red sign is +, both incoming otherwise (red sink and D_b
    alike). For a blue edge u -> v associated with f, D_r has u -> f when
    t_r(v) is + and f -> u otherwise (red edges and D_b alike).
    """
    g = d_r.graph
    for d, sinks, signs in ((d_r, labeling.blue_sink, types.red), (d_b, labeling.red_sink, types.blue)):
        for f, s in sinks.items():
            walk = g.faces[f].walk
            i = walk.index(s)
            for nbr in (walk[i - 1], walk[(i + 1) % len(walk)]):
                outgoing = signs[s] == PLUS
                edge = (s, nbr) if outgoing else (nbr, s)
                if not d.has_edge(*edge):
                    return Verdict.failed('sink-edges', [f, s],
                                          f"D_{d.axis} edge at sink {s} of face {f} points the wrong way")

    for d, edges, signs in ((d_r, labeling.blue, types.red), (d_b, labeling.red, types.blue)):
        for u, v in edges:
            f = labeling.association[(u, v)]
            edge = (u, f) if signs[v] == PLUS else (f, u)
            if not d.has_edge(*edge):
                return Verdict.failed('around-vertex', [u, v],
                                      f"D_{d.axis} lacks {edge[0]}->{edge[1]} for edge {u}->{v}")
    return Verdict.passed()


def assign_coordinates(d_r: InequalityGraph, d_b: InequalityGraph) -> Dict[int, Point]:
    """
    Rank of every vertex among vertex nodes in a topological order of each graph

    Ties go to the lowest node id; face nodes take part in the order but
    get no rank.
    """
    ranks = []
    for d in (d_r, d_b):
        vertices = set(d.graph.vertices)
        try:
            order = list(nx.lexicographical_topological_sort(nx.DiGraph(d.digraph)))
        except nx.NetworkXUnfeasible as e:
            raise CycleDetected(f"D_{d.axis} has a directed cycle") from e
        ranked = [node for node in order if node in vertices]
        ranks.append({v: i + 1 for i, v in enumerate(ranked)})
    x, y = ranks
    return {v: (x[v], y[v]) for v in sorted(x)}


# Shapes

@dataclass
class LShape:
    v: int
    type: str
    bend: Point
    h_end: Point
    v_end: Point

    def to_dict(self) -> dict:
        return {'v': self.v, 'type': self.type, 'bend': list(self.bend),
                'h_end': list(self.h_end), 'v_end': list(self.v_end)}

    @classmethod
    def from_dict(cls, data: dict) -> 'LShape':
        return cls(int(data['v']), data.get('type', ''), tuple(data['bend']),
                   tuple(data['h_end']), tuple(data['v_end']))


@dataclass
class Contact:
    edge: Tuple[int, int]
    point: Point
    endpoint_of: int

    def to_dict(self) -> dict:
        return {'edge': list(self.edge), 'point': list(self.point), 'endpoint_of': self.endpoint_of}


@dataclass
class LContactRepresentation:
    n: int
    shapes: Dict[int, LShape] = field(default_factory=dict)
    contacts: List[Contact] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'n': self.n,
                'shapes': [self.shapes[v].to_dict() for v in sorted(self.shapes)],
                'contacts': [c.to_dict() for c in self.contacts]}

    @classmethod
    def from_dict(cls, data: dict) -> 'LContactRepresentation':
        shapes = {int(s['v']): LShape.from_dict(s) for s in data.get('shapes', [])}
        contacts = [Contact(tuple(c['edge']), tuple(c['point']), int(c['endpoint_of']))
                    for c in data.get('contacts', [])]
        return cls(int(data['n']), shapes, contacts)


def emit_lshapes(g: PlaneGraph, labeling: EdgeLabeling, types: VertexTypes,
                 coords: Dict[int, Point]) -> LContactRepresentation:
    """
    One L-shape per vertex, legs ending at the out-neighbors' shapes

    The horizontal leg of v runs to x of its red out-neighbor, the vertical
    leg to y of its blue out-neighbor. The special edge is realized by the
    horizontal leg of v2 ending on the vertical leg of v1; both special
    shapes get a unit stub on their free leg.
    """
    rep = LContactRepresentation(g.n)
    v1, v2 = g.v1, g.v2
    for v in g.vertices:
        if g.is_special(v):
            continue
        x, y = coords[v]
        h_end = (coords[labeling.out_red[v]][0], y)
        v_end = (x, coords[labeling.out_blue[v]][1])
        rep.shapes[v] = LShape(v, types.quadrant(v), (x, y), h_end, v_end)

    x1, y1 = coords[v1]
    x2, y2 = coords[v2]
    rep.shapes[v2] = LShape(v2, 'I', (x2, y2), (x1, y2), (x2, y2 + 1))
    top = max([y2] + [coords[u][1] for u, head in labeling.red if head == v1])
    rep.shapes[v1] = LShape(v1, 'I', (x1, y1), (x1 + 1, y1), (x1, top + 1))

    for u, v in sorted(labeling.red):
        rep.contacts.append(Contact((u, v), rep.shapes[u].h_end, u))
    for u, v in sorted(labeling.blue):
        rep.contacts.append(Contact((u, v), rep.shapes[u].v_end, u))
    rep.contacts.append(Contact((v2, v1), rep.shapes[v2].h_end, v2))

    mismatched = [v for v in g.vertices if not g.is_special(v) and shape_type(rep.shapes[v]) != rep.shapes[v].type]
    if mismatched:
        logger.warning(f"Shape geometry disagrees with vertex type at {mismatched}")
    return rep


def shape_type(shape: LShape) -> Optional[str]:
    """Quadrant spanned by the legs; None for degenerate shapes"""
    dx = shape.h_end[0] - shape.bend[0]
    dy = shape.v_end[1] - shape.bend[1]
    if dx == 0 or dy == 0:
        return None
    return QUADRANTS[(PLUS if dx > 0 else MINUS, PLUS if dy > 0 else MINUS)]


def representation_stats(rep: LContactRepresentation) -> dict:
    """Summary numbers for reports"""
    xs = [c for s in rep.shapes.values() for c in (s.bend[0], s.h_end[0], s.v_end[0])]
    ys = [c for s in rep.shapes.values() for c in (s.bend[1], s.h_end[1], s.v_end[1])]
    counts = Counter(s.type for s in rep.shapes.values())
    leg_length = sum(abs(s.h_end[0] - s.bend[0]) + abs(s.v_end[1] - s.bend[1]) for s in rep.shapes.values())
    return {
        'n': rep.n,
        'shapes': len(rep.shapes),
        'contacts': len(rep.contacts),
        'types': {t: counts.get(t, 0) for t in QUADRANT_NUMBER},
        'width': max(xs) - min(xs) if xs else 0,
        'height': max(ys) - min(ys) if ys else 0,
        'total_leg_length': leg_length,
    }
