"""
Labelings
Angle labeling from an angular structure (through its separating
decomposition) and the red/blue edge labeling obtained by splitting every
non-special vertex of an angular tree.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

import networkx as nx

from src.angular import (AngularEdge, AngularStructure, STRUCTURE,
                         build_angular_graph, is_angular_tree)
from src.errors import NotATree, PipelineInvariantError
from src.plane_graph import PlaneGraph
from src.verdict import Verdict

logger = logging.getLogger(__name__)

RED = 'red'
BLUE = 'blue'

IN_BLUE = 1
IN_RED = 2
OUT_RED = 3
OUT_BLUE = 4

VERTEX_PATTERN = re.compile(r'32*41*')
FACE_PATTERN = re.compile(r'13*24*')
EDGE_VERTEX_PATTERN = re.compile(r'rB*R*bR*B*')

DirectedEdge = Tuple[int, int]


def _matches_cyclically(pattern: re.Pattern, word: str) -> bool:
    return any(pattern.fullmatch(word[i:] + word[:i]) for i in range(len(word)))


def _edges_of(T: Union[AngularStructure, Iterable[AngularEdge]]) -> FrozenSet[AngularEdge]:
    if isinstance(T, AngularStructure):
        return T.edges
    return frozenset(tuple(e) for e in T)


# Separating decomposition

def _node_order(g: PlaneGraph, node: int) -> List[AngularEdge]:
    """A_G edges at a node: clockwise at vertices, counterclockwise at faces"""
    if node in g.faces:
        return [(w, node) for w in g.faces[node].walk]
    return [(node, f) for f in g.vertex_faces(node)]


def separating_decomposition(g: PlaneGraph, T: Union[AngularStructure, Iterable[AngularEdge]]) -> Dict[AngularEdge, str]:
    """
    Color every edge of A_G red or blue.

    T-edges point from vertex to face, the others from face to vertex. At
    every node the local order reads: outgoing red, incoming red*, outgoing
    blue, incoming blue*. Edges at v1 are blue and edges at v2 are red.
    """
    T = _edges_of(T)
    color: Dict[AngularEdge, str] = {}
    queue = deque()

    def assign(edge: AngularEdge, c: str):
        if edge in color:
            if color[edge] != c:
                raise PipelineInvariantError(f"angle {edge} colored both red and blue")
            return
        color[edge] = c
        queue.extend(edge)

    for special, c in ((g.v1, BLUE), (g.v2, RED)):
        for edge in _node_order(g, special):
            if edge in T:
                raise PipelineInvariantError(f"special vertex {special} has T-edge {edge}")
            assign(edge, c)

    while queue:
        node = queue.popleft()
        if g.is_special(node):
            continue
        order = _node_order(g, node)
        is_face = node in g.faces
        outs = [i for i, e in enumerate(order) if (e in T) != is_face]
        if len(outs) != 2:
            raise PipelineInvariantError(f"node {node} has {len(outs)} outgoing angular edges")

        known = next(i for i, e in enumerate(order) if e in color)
        p, q = outs
        d = len(order)
        first_segment = (known - p) % d < (q - p) % d
        c_p = color[order[known]] if first_segment else (RED if color[order[known]] == BLUE else BLUE)
        c_q = RED if c_p == BLUE else BLUE
        for i, edge in enumerate(order):
            assign(edge, c_p if (i - p) % d < (q - p) % d else c_q)

    if len(color) != 2 * g.edge_count:
        raise PipelineInvariantError("separating decomposition left angles uncolored")
    return color


# Angle labeling

@dataclass
class AngleLabeling:
    labels: Dict[AngularEdge, int] = field(default_factory=dict)

    def __getitem__(self, angle: AngularEdge) -> int:
        return self.labels[angle]

    def __len__(self) -> int:
        return len(self.labels)

    def at_vertex(self, g: PlaneGraph, v: int) -> List[int]:
        """Labels around v, clockwise"""
        return [self.labels[(v, f)] for f in g.vertex_faces(v)]

    def at_face(self, g: PlaneGraph, f: int) -> List[int]:
        """Labels around f, clockwise"""
        return [self.labels[(w, f)] for w in g.faces[f].clockwise]

    def to_dict(self) -> dict:
        return {f"{v}:{f}": label for (v, f), label in sorted(self.labels.items())}

    @classmethod
    def from_dict(cls, data: dict) -> 'AngleLabeling':
        labels = {}
        for key, label in data.items():
            v, f = key.split(':')
            labels[(int(v), int(f))] = int(label)
        return cls(labels)


def angle_labeling_from_structure(g: PlaneGraph, T: Union[AngularStructure, Iterable[AngularEdge]]) -> AngleLabeling:
    """
    Angle labels read off the separating decomposition of T

    Args:
        g: plane Laman graph
        T: valid angular structure

    Returns:
        AngleLabeling with 3/4 on T-angles and 1/2 elsewhere
    """
    T = _edges_of(T)
    color = separating_decomposition(g, T)
    labels = {}
    for angle, c in color.items():
        if angle in T:
            labels[angle] = OUT_RED if c == RED else OUT_BLUE
        else:
            labels[angle] = IN_RED if c == RED else IN_BLUE
    return AngleLabeling(labels)


def structure_from_angle_labeling(labeling: AngleLabeling) -> AngularStructure:
    return AngularStructure(frozenset(a for a, label in labeling.labels.items()
                                      if label in (OUT_RED, OUT_BLUE)), STRUCTURE)


def check_angle_labeling(g: PlaneGraph, labeling: AngleLabeling) -> Verdict:
    """Vertex and face rules of an angle labeling"""
    expected = {(v, f) for v in g.vertices for f in g.vertex_faces(v)}
    if set(labeling.labels) != expected:
        return Verdict.failed('coverage', sorted(expected ^ set(labeling.labels)),
                              'labels do not cover exactly the angles of G')

    for v in g.vertices:
        word = ''.join(str(label) for label in labeling.at_vertex(g, v))
        if v == g.v1:
            ok = set(word) == {'1'}
        elif v == g.v2:
            ok = set(word) == {'2'}
        else:
            ok = _matches_cyclically(VERTEX_PATTERN, word)
        if not ok:
            return Verdict.failed('vertex-rule', v, f"labels {word} around vertex {v}")

    for f in g.faces:
        word = ''.join(str(label) for label in labeling.at_face(g, f))
        if not _matches_cyclically(FACE_PATTERN, word):
            return Verdict.failed('face-rule', f, f"labels {word} around face {f}")
    return Verdict.passed()


# Edge labeling

@dataclass
class EdgeLabeling:
    """
    Orientation and coloring of the non-special edges.

    `red` and `blue` hold directed (tail, head) pairs. `association` maps
    every directed edge to the inner face in which its head is a sink of
    the edge's color.
    """
    red: Set[DirectedEdge] = field(default_factory=set)
    blue: Set[DirectedEdge] = field(default_factory=set)
    out_red: Dict[int, int] = field(default_factory=dict)
    out_blue: Dict[int, int] = field(default_factory=dict)
    red_sink: Dict[int, int] = field(default_factory=dict)
    blue_sink: Dict[int, int] = field(default_factory=dict)
    association: Dict[DirectedEdge, int] = field(default_factory=dict)

    def color_of(self, u: int, v: int) -> Optional[str]:
        """Color of the edge u -> v, None if it is not directed that way"""
        if (u, v) in self.red:
            return RED
        if (u, v) in self.blue:
            return BLUE
        return None

    def to_dict(self) -> dict:
        return {
            'red': [list(e) for e in sorted(self.red)],
            'blue': [list(e) for e in sorted(self.blue)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'EdgeLabeling':
        red = {(int(u), int(v)) for u, v in data.get('red', [])}
        blue = {(int(u), int(v)) for u, v in data.get('blue', [])}
        return cls(red=red, blue=blue,
                   out_red={u: v for u, v in red}, out_blue={u: v for u, v in blue})


def _split_sides(g: PlaneGraph, labeling: AngleLabeling, v: int) -> Dict[int, int]:
    """Neighbor -> split copy (1 or 2) of v holding that edge"""
    nbrs = g.rotation[v]
    d = len(nbrs)
    labels = labeling.at_vertex(g, v)
    i3, i4 = labels.index(OUT_RED), labels.index(OUT_BLUE)
    sides = {}
    # v2-copy takes the edges clockwise from angle 3 up to angle 4
    for j in range(d):
        if 0 < (j - i3) % d <= (i4 - i3) % d:
            sides[nbrs[j]] = 2
        else:
            sides[nbrs[j]] = 1
    return sides


def face_orientation(g: PlaneGraph, f: int, red: Set[DirectedEdge], blue: Set[DirectedEdge]) -> List[DirectedEdge]:
    """Boundary edges of f directed as in E_r together with reversed E_b, with e* as v2 -> v1"""
    directed = []
    for a, b in g.faces[f].darts:
        if (a, b) in red or (b, a) in blue or (a, b) == (g.v2, g.v1):
            directed.append((a, b))
        elif (b, a) in red or (a, b) in blue or (b, a) == (g.v2, g.v1):
            directed.append((b, a))
        else:
            raise PipelineInvariantError(f"edge ({a},{b}) on face {f} is unlabeled")
    return directed


def face_sinks(g: PlaneGraph, f: int, red: Set[DirectedEdge], blue: Set[DirectedEdge]) -> Tuple[List[int], List[int]]:
    """Sources and sinks of the oriented boundary of f: (blue sinks, red sinks)"""
    out_degree = {w: 0 for w in g.faces[f].walk}
    for a, _ in face_orientation(g, f, red, blue):
        out_degree[a] += 1
    sources = [w for w, k in out_degree.items() if k == 2]
    sinks = [w for w, k in out_degree.items() if k == 0]
    return sources, sinks


def _associated_face(g: PlaneGraph, labeling: EdgeLabeling, u: int, v: int, color: str) -> int:
    """Face of the edge u -> v under the edge rule, decided by its block at v"""
    after = g.corner_face(u, v)
    before = g.corner_face(g.pred(v, u), v)
    if v == g.v1:
        return after
    if v == g.v2:
        return before

    d = g.degree(v)
    i_r = g.index_of(v, labeling.out_red[v])
    i_b = g.index_of(v, labeling.out_blue[v])
    j = g.index_of(v, u)
    between_red_and_blue = 0 < (j - i_r) % d < (i_b - i_r) % d
    if color == RED:
        return after if between_red_and_blue else before
    return before if between_red_and_blue else after


def edge_labeling_from_angular_tree(g: PlaneGraph, T: Union[AngularStructure, Iterable[AngularEdge]]) -> EdgeLabeling:
    """
    Red/blue edge labeling from an angular tree by vertex splitting

    Args:
        g: plane Laman graph
        T: angular tree

    Returns:
        EdgeLabeling with sinks and the edge-to-face association filled in
    """
    T = _edges_of(T)
    if not is_angular_tree(build_angular_graph(g), T):
        raise NotATree("edge labeling requires an angular tree")

    angles = angle_labeling_from_structure(g, T)
    side: Dict[DirectedEdge, Tuple[int, int]] = {}
    for v in g.vertices:
        if g.is_special(v):
            for u in g.rotation[v]:
                side[(v, u)] = (v, 0)
        else:
            for u, copy in _split_sides(g, angles, v).items():
                side[(v, u)] = (v, copy)

    split = nx.Graph()
    split.add_nodes_from(set(side.values()))
    for u, w in g.edges():
        if {u, w} == {g.v1, g.v2}:
            continue
        split.add_edge(side[(u, w)], side[(w, u)], edge=(u, w))

    expected_nodes = 2 * g.n - 2
    if split.number_of_nodes() != expected_nodes or split.number_of_edges() != 2 * g.n - 4 \
            or not nx.is_forest(split):
        raise PipelineInvariantError("split graph is not a tree")

    labeling = EdgeLabeling()
    # every split copy leaves towards its root; copy 2 edges are red, copy 1 edges blue
    for root in ((g.v1, 0), (g.v2, 0)):
        for parent, child in nx.bfs_edges(split, root):
            tail, head = child[0], parent[0]
            color = RED if child[1] == 2 else BLUE
            outgoing = labeling.out_red if color == RED else labeling.out_blue
            if tail in outgoing:
                raise PipelineInvariantError(f"split copy {child} has two outgoing edges")
            if color == RED:
                labeling.red.add((tail, head))
                labeling.out_red[tail] = head
            else:
                labeling.blue.add((tail, head))
                labeling.out_blue[tail] = head

    for f in g.inner_faces:
        sources, sinks = face_sinks(g, f, labeling.red, labeling.blue)
        if len(sources) != 1 or len(sinks) != 1:
            raise PipelineInvariantError(f"face {f} has sources {sources} and sinks {sinks}")
        labeling.blue_sink[f] = sources[0]
        labeling.red_sink[f] = sinks[0]

    for color, edges in ((RED, labeling.red), (BLUE, labeling.blue)):
        for u, v in edges:
            labeling.association[(u, v)] = _associated_face(g, labeling, u, v, color)

    logger.debug(f"Edge labeling: {len(labeling.red)} red, {len(labeling.blue)} blue edges")
    return labeling


def _is_rooted_tree(g: PlaneGraph, edges: Set[DirectedEdge], root: int, excluded: int) -> bool:
    tree = nx.DiGraph()
    tree.add_nodes_from(v for v in g.vertices if v != excluded)
    tree.add_edges_from((v, u) for u, v in edges)
    if set(tree.nodes) != set(g.vertices) - {excluded}:
        return False
    return nx.is_arborescence(tree) and tree.in_degree(root) == 0


def verify_edge_labeling(g: PlaneGraph, labeling: EdgeLabeling) -> Verdict:
    """
    Structural check of an edge labeling

    Checks coverage, the vertex rule, the face rule, the edge rule, acyclicity
    of E_r with reversed E_b (and the converse) and that E_r and E_b are
    spanning trees of G minus v2 and G minus v1 rooted at v1 and v2.
    """
    special = {g.v1, g.v2}
    directed = {}
    for color, edges in ((RED, labeling.red), (BLUE, labeling.blue)):
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in directed or not g.has_edge(u, v):
                return Verdict.failed('coverage', list(key), f"edge {key} labeled twice or not in G")
            directed[key] = (u, v, color)
    non_special = [e for e in g.edges() if set(e) != special]
    if set(directed) != set(non_special):
        missing = sorted(set(non_special) ^ set(directed))
        return Verdict.failed('coverage', missing, 'labeling does not cover the non-special edges')

    for v in [g.v1, g.v2] + [w for w in g.vertices if not g.is_special(w)]:
        letters = []
        for u in g.rotation[v]:
            if {u, v} == special:
                continue
            if (v, u) in labeling.red:
                letters.append('r')
            elif (v, u) in labeling.blue:
                letters.append('b')
            elif (u, v) in labeling.red:
                letters.append('R')
            else:
                letters.append('B')
        word = ''.join(letters)
        if v == g.v1:
            ok = set(word) <= {'R'}
        elif v == g.v2:
            ok = set(word) <= {'B'}
        else:
            ok = _matches_cyclically(EDGE_VERTEX_PATTERN, word)
        if not ok:
            return Verdict.failed('vertex-rule', v, f"edges {word} around vertex {v}")

    red_sink, blue_sink = {}, {}
    for f in g.inner_faces:
        sources, sinks = face_sinks(g, f, labeling.red, labeling.blue)
        if len(sources) != 1 or len(sinks) != 1:
            return Verdict.failed('face-rule', f, f"face {f} has sources {sources} and sinks {sinks}")
        blue_sink[f], red_sink[f] = sources[0], sinks[0]
    for f in g.inner_faces:
        if labeling.red_sink.get(f, red_sink[f]) != red_sink[f] or \
                labeling.blue_sink.get(f, blue_sink[f]) != blue_sink[f]:
            return Verdict.failed('face-rule', f, f"recorded sinks of face {f} disagree with the labeling")

    association = labeling.association
    if not association:
        association = {(u, v): _associated_face(g, labeling, u, v, color)
                       for u, v, color in directed.values()}
    slots = set()
    for u, v, color in directed.values():
        f = association.get((u, v))
        if f not in (g.dart_face[(u, v)], g.dart_face[(v, u)]) or f == g.outer_face:
            return Verdict.failed('edge-rule', [u, v], f"edge {u}->{v} is not associated with an incident inner face")
        sink = red_sink[f] if color == RED else blue_sink[f]
        if sink != v or (f, color) in slots:
            return Verdict.failed('edge-rule', [u, v], f"edge {u}->{v} does not take a free {color} sink of face {f}")
        slots.add((f, color))
    if len(slots) != 2 * len(g.inner_faces):
        return Verdict.failed('edge-rule', None, 'some face sinks have no associated edge')

    for name, forward, backward, source, sink in (
            ('acyclic-red', labeling.red, labeling.blue, g.v2, g.v1),
            ('acyclic-blue', labeling.blue, labeling.red, g.v1, g.v2)):
        digraph = nx.DiGraph()
        digraph.add_nodes_from(g.vertices)
        digraph.add_edges_from(forward)
        digraph.add_edges_from((v, u) for u, v in backward)
        digraph.add_edge(source, sink)
        if not nx.is_directed_acyclic_graph(digraph):
            return Verdict.failed(name, nx.find_cycle(digraph), 'orientation has a directed cycle')
        sources = [v for v in digraph if digraph.in_degree(v) == 0]
        sinks = [v for v in digraph if digraph.out_degree(v) == 0]
        if sources != [source] or sinks != [sink]:
            return Verdict.failed(name, {'sources': sources, 'sinks': sinks}, 'orientation is not bipolar')

    if not _is_rooted_tree(g, labeling.red, g.v1, g.v2):
        return Verdict.failed('red-tree', None, 'E_r is not a spanning tree of G - v2 directed to v1')
    if not _is_rooted_tree(g, labeling.blue, g.v2, g.v1):
        return Verdict.failed('blue-tree', None, 'E_b is not a spanning tree of G - v1 directed to v2')
    return Verdict.passed()
