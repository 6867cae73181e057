"""
Angular Structures
The angular graph A_G, angular structures and trees, alternating-cycle flips,
the incremental angular tree along a Henneberg sequence, and the face-vertex
matching derived from a tree.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from src.errors import (NotAlternating, NotATree, OuterNotLeaf,
                        PipelineInvariantError)
from src.henneberg import H1, HennebergSequence, replay_graphs
from src.plane_graph import Dart, PlaneGraph, require_two_connected
from src.verdict import Verdict

logger = logging.getLogger(__name__)

AngularEdge = Tuple[int, int]  # (vertex, face)

TREE = 'tree'
STRUCTURE = 'structure'


@dataclass
class AngularGraph:
    """Bipartite incidence graph on vertices and faces of a plane graph"""
    graph: PlaneGraph
    edges: FrozenSet[AngularEdge]

    @property
    def nodes(self) -> List[int]:
        return self.graph.vertices + list(self.graph.faces)

    def vertex_rotation(self, v: int) -> List[int]:
        """Faces around vertex v, clockwise"""
        return self.graph.vertex_faces(v)

    def face_rotation(self, f: int) -> List[int]:
        """Vertices around face f, counterclockwise"""
        return list(self.graph.faces[f].walk)

    def quadrangles(self) -> List[Tuple[int, int, int, int]]:
        """Faces of A_G: one quadrangle (u, f, v, g) per edge (u, v) of G"""
        g = self.graph
        return [(u, g.dart_face[(v, u)], v, g.dart_face[(u, v)]) for u, v in g.edges()]

    def to_networkx(self) -> nx.Graph:
        nxg = nx.Graph()
        nxg.add_nodes_from(self.nodes)
        nxg.add_edges_from(self.edges)
        return nxg


@dataclass
class AngularStructure:
    edges: FrozenSet[AngularEdge]
    kind: str = STRUCTURE

    def __contains__(self, edge: AngularEdge) -> bool:
        return edge in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def orientation(self, a: AngularGraph) -> nx.DiGraph:
        """The 2-orientation: v -> f for T-edges, f -> v otherwise"""
        digraph = nx.DiGraph()
        digraph.add_nodes_from(a.nodes)
        for v, f in a.edges:
            if (v, f) in self.edges:
                digraph.add_edge(v, f)
            else:
                digraph.add_edge(f, v)
        return digraph

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'edges': [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: dict) -> 'AngularStructure':
        return cls(frozenset((int(v), int(f)) for v, f in data['edges']), data.get('kind', STRUCTURE))


@dataclass
class AngularMatching:
    """Inner face -> matched non-special vertex"""
    face_to_vertex: Dict[int, int] = field(default_factory=dict)

    @property
    def vertex_to_face(self) -> Dict[int, int]:
        return {v: f for f, v in self.face_to_vertex.items()}

    def __len__(self) -> int:
        return len(self.face_to_vertex)

    def to_dict(self) -> dict:
        return {str(f): v for f, v in sorted(self.face_to_vertex.items())}


def build_angular_graph(g: PlaneGraph) -> AngularGraph:
    """
    Angular graph of a 2-connected plane graph

    Args:
        g: plane graph

    Returns:
        AngularGraph with one edge per vertex-face incidence
    """
    require_two_connected(g)
    edges = frozenset((v, f) for v in g.vertices for f in g.vertex_faces(v))
    a = AngularGraph(g, edges)

    # every vertex meets each face once, so A_G has one quadrangle per edge of G
    if len(edges) != 2 * g.edge_count:
        raise PipelineInvariantError("angular graph is not quadrangulated")
    return a


def check_angular_structure(a: AngularGraph, T: Iterable[AngularEdge]) -> Verdict:
    """Classify T as a valid tree, a valid non-tree structure, or invalid"""
    g = a.graph
    T = set(T)
    stray = T - a.edges
    if stray:
        return Verdict.failed('subset', sorted(stray), 'edges not in the angular graph')

    degree: Dict[int, int] = {node: 0 for node in a.nodes}
    for v, f in T:
        degree[v] += 1
        degree[f] += 1

    for v in g.vertices:
        expected = 0 if g.is_special(v) else 2
        if degree[v] != expected:
            return Verdict.failed('vertex-rule', v, f"vertex {v} has {degree[v]} T-edges, expected {expected}")

    for f, face in g.faces.items():
        free = len(face) - degree[f]
        if free != 2:
            return Verdict.failed('face-rule', f, f"face {f} has {free} non-T edges, expected 2")

    forest = nx.Graph()
    forest.add_nodes_from(node for node in a.nodes if not g.is_special(node) or node in g.faces)
    forest.add_edges_from(T)
    if nx.is_tree(forest):
        return Verdict(True, TREE, None, 'angular tree')
    cycle = nx.find_cycle(forest) if not nx.is_forest(forest) else None
    return Verdict(True, STRUCTURE, cycle, 'angular structure, not a tree')


def is_angular_tree(a: AngularGraph, T: Iterable[AngularEdge]) -> bool:
    verdict = check_angular_structure(a, T)
    return verdict.ok and verdict.rule == TREE


def flip_alternating_cycle(T: AngularStructure, cycle: Sequence[AngularEdge]) -> AngularStructure:
    """
    Flip an alternating cycle: its T-edges leave T and its other edges join it

    Args:
        T: current structure
        cycle: closed walk of A_G edges given in order, alternating in/out of T

    Returns:
        the flipped structure (kind left as 'structure'; callers reclassify)
    """
    cycle = [tuple(e) for e in cycle]
    if len(cycle) < 4 or len(cycle) % 2:
        raise NotAlternating(f"cycle of length {len(cycle)} cannot alternate", witness=[])

    for i, edge in enumerate(cycle):
        nxt = cycle[(i + 1) % len(cycle)]
        if not set(edge) & set(nxt):
            raise NotAlternating(f"edges {edge} and {nxt} are not consecutive")
        if (edge in T.edges) == (nxt in T.edges):
            raise NotAlternating(f"edges {edge} and {nxt} are both {'in' if edge in T.edges else 'outside'} T")

    inside = {e for e in cycle if e in T.edges}
    outside = set(cycle) - inside
    return AngularStructure(frozenset((T.edges - inside) | outside), STRUCTURE)


class AngularTreeBuilder:
    """
    Maintains an angular tree while replaying a Henneberg sequence.

    T is stored as a set of corners: corner (a, v) is the angle at v that
    follows neighbor a clockwise. Corners keep their key across moves, except
    at the endpoints of an H2 edge where the removed neighbor is renamed.
    """

    def __init__(self, sequence: HennebergSequence):
        self.sequence = sequence
        self.flips = 0
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def _free_corners(g: PlaneGraph, f: int, T: Set[Dart]) -> int:
        return sum(1 for dart in g.face_darts(f) if dart not in T)

    def _quota_ok(self, g: PlaneGraph, faces: Iterable[int], T: Set[Dart]) -> bool:
        return all(self._free_corners(g, f, T) == 2 for f in faces)

    def _h1(self, before: PlaneGraph, after: PlaneGraph, move, T: Set[Dart]) -> Set[Dart]:
        v, x, y, f = move.v, move.x, move.y, move.face
        cx = before.corner_of(x, f)
        cy = before.corner_of(y, f)
        f1, f2 = after.corner_face(x, v), after.corner_face(y, v)

        base = set(T) | {(x, v), (y, v)}
        x_options = [(cx, None), (cx, (v, x))] if cx in T else [(None, None)]
        y_options = [(cy, None), (cy, (v, y))] if cy in T else [(None, None)]
        candidates = []
        for (old_x, new_x), (old_y, new_y) in product(x_options, y_options):
            candidate = set(base)
            for old, new in ((old_x, new_x), (old_y, new_y)):
                if new is not None:
                    candidate.discard(old)
                    candidate.add(new)
            if self._quota_ok(after, (f1, f2), candidate):
                candidates.append(candidate)

        for candidate in candidates:
            if self._is_forest(after, candidate, v):
                return candidate
        raise PipelineInvariantError(f"no quota-respecting H1 update for vertex {v}")

    def _h2(self, before: PlaneGraph, after: PlaneGraph, move, T: Set[Dart]) -> Set[Dart]:
        v, x, y, z, f = move.v, move.x, move.y, move.z, move.face
        cz = before.corner_of(z, f)

        carried = set(T)
        if (y, x) in carried:
            carried.remove((y, x))
            carried.add((v, x))
        if (x, y) in carried:
            carried.remove((x, y))
            carried.add((v, y))
        carried.add((y, v))  # the angle of v in the face across (x, y)

        f1, f2 = after.corner_face(x, v), after.corner_face(z, v)
        z_options = [(cz, None), (cz, (v, z))] if cz in T else [(None, None)]
        candidates = []
        for v_corner, (old_z, new_z) in product([(x, v), (z, v)], z_options):
            candidate = carried | {v_corner}
            if new_z is not None:
                candidate.discard(old_z)
                candidate.add(new_z)
            if self._quota_ok(after, (f1, f2), candidate):
                candidates.append(candidate)
        if not candidates:
            raise PipelineInvariantError(f"no quota-respecting H2 update for vertex {v}")

        for candidate in candidates:
            if self._is_forest(after, candidate, v):
                return candidate
        return self._repair(after, move, candidates[0])

    @staticmethod
    def _as_pairs(g: PlaneGraph, T: Set[Dart]) -> FrozenSet[AngularEdge]:
        return frozenset((b, g.corner_face(a, b)) for a, b in T)

    @staticmethod
    def _tree_neighbors(g: PlaneGraph, T: Set[Dart], node: int, skip: int) -> Iterator[int]:
        if node in g.rotation:
            neighbors = (g.corner_face(a, node) for a in g.rotation[node] if (a, node) in T)
        else:
            neighbors = (b for a, b in g.face_darts(node) if (a, b) in T)
        return (w for w in neighbors if w != skip)

    def _is_forest(self, g: PlaneGraph, T: Set[Dart], v: int) -> bool:
        """
        Cycle test after inserting v.

        Merging the two halves of the split face maps T - v onto the previous
        tree, so T - v is a forest with two components. T is a tree iff the
        two T-neighbors of v lie in different components; both sides are
        searched in turn so the smaller one decides.
        """
        ends = [g.corner_face(a, v) for a in g.rotation[v] if (a, v) in T]
        if len(ends) != 2:
            return False
        seen = [{ends[0]}, {ends[1]}]
        frontier = [[ends[0]], [ends[1]]]
        while frontier[0] and frontier[1]:
            side = 0 if len(seen[0]) <= len(seen[1]) else 1
            node = frontier[side].pop()
            for w in self._tree_neighbors(g, T, node, v):
                if w in seen[1 - side]:
                    return False
                if w not in seen[side]:
                    seen[side].add(w)
                    frontier[side].append(w)
        return True

    def _is_acyclic(self, g: PlaneGraph, T: Set[Dart]) -> bool:
        parent: Dict[int, Optional[int]] = {}
        for root in g.vertices:
            if root in parent:
                continue
            parent[root] = None
            stack = [root]
            while stack:
                node = stack.pop()
                for w in self._tree_neighbors(g, T, node, parent[node]):
                    if w in parent:
                        return False
                    parent[w] = node
                    stack.append(w)
        return True

    def _repair(self, g: PlaneGraph, move, T: Set[Dart]) -> Set[Dart]:
        """Flip one alternating 4-cycle when the H2 update closed a cycle through v"""
        v, x, y, z = move.v, move.x, move.y, move.z
        f_across = g.corner_face(y, v)
        new_faces = [g.corner_face(x, v), g.corner_face(z, v)]
        in_t = [face for face in new_faces if g.corner_of(v, face) in T]
        if len(in_t) != 1:
            raise PipelineInvariantError(f"vertex {v} does not close a cycle through one new face")
        fa = in_t[0]
        fb = next(face for face in new_faces if face != fa)

        if g.corner_of(z, fb) in T:
            cycle = [(z, fa), (z, fb), (v, fb), (v, fa)]
        else:
            w = x if x in g.face_vertices(fb) else y
            cycle = [(w, fb), (w, f_across), (v, f_across), (v, fb)]

        local = AngularStructure(frozenset(e for e in cycle if g.corner_of(*e) in T))
        flipped = flip_alternating_cycle(local, cycle)
        self.flips += 1
        self.logger.debug(f"Flipped 4-cycle {cycle} after inserting vertex {v}")

        repaired = (T - {g.corner_of(*e) for e in local.edges}) | {g.corner_of(*e) for e in flipped.edges}
        if not self._is_acyclic(g, repaired):
            raise PipelineInvariantError(f"flip after inserting {v} left a cycle")
        return repaired

    def build(self) -> Tuple[PlaneGraph, Set[Dart]]:
        """Replay the sequence; returns the final graph and T as corners"""
        graphs = replay_graphs(self.sequence)
        g = next(graphs)
        T: Set[Dart] = set(g.corners(g.v3))

        for move in self.sequence.moves:
            after = next(graphs)
            flips_before = self.flips
            if move.kind == H1:
                T = self._h1(g, after, move, T)
            else:
                T = self._h2(g, after, move, T)
            if self.flips - flips_before > 1:
                raise PipelineInvariantError(f"more than one flip while inserting {move.v}")
            g = after

        return g, T


def compute_angular_tree(g: PlaneGraph, s: HennebergSequence) -> AngularStructure:
    """
    Angular tree of g built along the Henneberg sequence s

    Args:
        g: plane Laman graph
        s: sequence that replays to g

    Returns:
        AngularStructure of kind 'tree' with 2n-4 edges
    """
    builder = AngularTreeBuilder(s)
    final, corners = builder.build()
    if final != g:
        raise PipelineInvariantError("Henneberg sequence does not replay to the input graph")

    T = AngularStructure(AngularTreeBuilder._as_pairs(g, corners), TREE)
    verdict = check_angular_structure(build_angular_graph(g), T.edges)
    if not (verdict.ok and verdict.rule == TREE):
        raise PipelineInvariantError(f"incremental construction did not yield a tree: {verdict.message}")
    logger.info(f"Angular tree computed with {builder.flips} flips")
    return T


def derive_matching(g: PlaneGraph, T: AngularStructure) -> AngularMatching:
    """Match every inner face to its parent vertex when T is rooted at the outer face's vertex"""
    a = build_angular_graph(g)
    if not is_angular_tree(a, T.edges):
        raise NotATree("matching needs an angular tree")

    f0 = g.outer_face
    attached = [v for v, f in T.edges if f == f0]
    if len(attached) != 1:
        raise OuterNotLeaf(f"outer face {f0} has T-degree {len(attached)}", witness=attached)
    root = attached[0]

    tree = nx.Graph(list(T.edges))
    tree.remove_node(f0)
    matching = AngularMatching()
    for parent, child in nx.bfs_edges(tree, root):
        if child in g.faces:
            matching.face_to_vertex[child] = parent

    non_special = [v for v in g.vertices if not g.is_special(v)]
    if len(matching) != len(non_special) or set(matching.face_to_vertex.values()) != set(non_special):
        raise PipelineInvariantError("face-vertex matching is not perfect")
    return matching


def enumerate_angular_structures(g: PlaneGraph) -> Iterator[FrozenSet[AngularEdge]]:
    """Every angular structure of g; exponential, meant for small graphs"""
    choices = []
    for v in g.vertices:
        faces = g.vertex_faces(v)
        if g.is_special(v):
            choices.append([()])
        else:
            choices.append([((v, f1), (v, f2)) for f1, f2 in combinations(faces, 2)])

    quota = {f: len(face) - 2 for f, face in g.faces.items()}
    if sum(quota.values()) != 2 * sum(1 for v in g.vertices if not g.is_special(v)):
        return
    for pick in product(*choices):
        load = {f: 0 for f in g.faces}
        edges = [edge for pair in pick for edge in pair]
        for _, f in edges:
            load[f] += 1
        if load == quota:
            yield frozenset(edges)


def admits_angular_tree(g: PlaneGraph) -> Optional[FrozenSet[AngularEdge]]:
    """Brute-force search for an angular tree; None when there is none"""
    a = build_angular_graph(g)
    for T in enumerate_angular_structures(g):
        if is_angular_tree(a, T):
            return T
    return None
