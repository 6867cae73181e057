"""
Plane Graph
Combinatorial embedding given by a clockwise rotation system, with face
tracing and the designated outer triangle (v1, v2, v3)
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from src.errors import (InconsistentRotation, NonSimple, NotAFace,
                        NotPlanarEmbedding, NotTwoConnected)

logger = logging.getLogger(__name__)

Dart = Tuple[int, int]


def canonical_cycle(items: Sequence[int]) -> Tuple[int, ...]:
    """Rotate a cyclic list so that its smallest entry comes first"""
    if not items:
        return tuple()
    start = items.index(min(items))
    return tuple(items[start:]) + tuple(items[:start])


@dataclass(frozen=True)
class Face:
    """A face of a plane graph.

    `walk` lists the boundary vertices in the order of the face tracing
    (face on the left, i.e. counterclockwise seen from inside the face).
    `darts` are the directed edges of that walk; dart (a, b) also names the
    corner at b that follows a clockwise, which is the angle of this face at b.
    """
    id: int
    walk: Tuple[int, ...]
    darts: Tuple[Dart, ...]
    is_outer: bool = False

    @property
    def clockwise(self) -> Tuple[int, ...]:
        """Boundary vertices in clockwise order around the face"""
        return tuple(reversed(self.walk))

    def __len__(self) -> int:
        return len(self.walk)


class PlaneGraph:
    """
    Immutable plane graph with vertex ids and face ids above them.

    Face walks are stored under internal tokens together with their anchor,
    the first dart a full trace meets: lowest tail vertex, then earliest
    position in that vertex's rotation. Face ids number the walks in anchor
    order starting at max vertex id + 1, which is the order of a full trace.
    Tokens survive `with_rotations`, so a move only re-traces the walks it
    touches.
    """

    def __init__(self, rotation: Mapping[int, Sequence[int]], outer: Sequence[int]):
        self.rotation: Dict[int, Tuple[int, ...]] = {
            v: canonical_cycle(list(rotation[v])) for v in sorted(rotation)
        }
        self._set_outer(outer)
        self._position: Dict[int, Dict[int, int]] = {
            v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in self.rotation.items()
        }
        self._edge_count = sum(len(nbrs) for nbrs in self.rotation.values()) // 2
        self._dart_walk: Dict[Dart, int] = {}
        self._walks: Dict[int, Tuple[Dart, ...]] = {}
        self._anchor: Dict[int, Dart] = {}
        self._order: List[int] = []
        self._next_token = 0
        self._trace_faces()

    def _set_outer(self, outer: Sequence[int]):
        self.outer: Tuple[int, int, int] = tuple(outer)
        self.v1, self.v2, self.v3 = self.outer
        self.special_edge: Tuple[int, int] = (self.v1, self.v2)

    # Rotation access

    @property
    def vertices(self) -> List[int]:
        return list(self.rotation)

    @property
    def n(self) -> int:
        return len(self.rotation)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._position.get(v, {})

    def edges(self) -> List[Tuple[int, int]]:
        """Undirected edges as (low, high) pairs in sorted order"""
        return sorted((u, v) for u, nbrs in self.rotation.items() for v in nbrs if u < v)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def index_of(self, v: int, u: int) -> int:
        """Position of neighbor u in the rotation of v"""
        return self._position[v][u]

    def succ(self, v: int, u: int) -> int:
        """Clockwise successor of neighbor u around v"""
        nbrs = self.rotation[v]
        return nbrs[(self._position[v][u] + 1) % len(nbrs)]

    def pred(self, v: int, u: int) -> int:
        """Clockwise predecessor of neighbor u around v"""
        nbrs = self.rotation[v]
        return nbrs[(self._position[v][u] - 1) % len(nbrs)]

    # Face walks

    def _trace_walk(self, start: Dart, token: int) -> Tuple[Dart, ...]:
        darts: List[Dart] = []
        a, b = start
        while (a, b) not in self._dart_walk:
            self._dart_walk[(a, b)] = token
            darts.append((a, b))
            a, b = b, self.succ(b, a)
        if (a, b) != start:
            raise NotPlanarEmbedding(f"face walk from {start} runs into dart {(a, b)}")
        return tuple(darts)

    def _trace_faces(self):
        for v in self.rotation:
            for u in self.rotation[v]:
                if (v, u) in self._dart_walk:
                    continue
                token = self._next_token
                self._next_token += 1
                self._walks[token] = self._trace_walk((v, u), token)
                self._anchor[token] = (v, u)
                self._order.append(token)
        self._face_base = max(self.rotation) + 1 if self.rotation else 1

    def _anchor_key(self, token: int) -> Tuple[int, int]:
        t, h = self._anchor[token]
        return t, self._position[t][h]

    def _insert_ordered(self, token: int):
        key = self._anchor_key(token)
        lo, hi = 0, len(self._order)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._anchor_key(self._order[mid]) < key:
                lo = mid + 1
            else:
                hi = mid
        self._order.insert(lo, token)

    def with_rotations(self, updates: Mapping[int, Optional[Sequence[int]]]) -> 'PlaneGraph':
        """
        Copy of this graph with the rotations of some vertices replaced

        Used by Henneberg moves. A value of None removes the vertex; every
        changed edge must be updated at both endpoints. Only walks through a
        dart whose clockwise successor changed are traced again. No other
        validation is done, so callers must keep the graph plane.

        Args:
            updates: new clockwise neighbor lists, or None, per vertex

        Returns:
            the edited PlaneGraph with the same face numbering a full trace gives
        """
        g = PlaneGraph.__new__(PlaneGraph)
        g._set_outer(self.outer)
        g.rotation = dict(self.rotation)
        g._position = dict(self._position)
        degree_change = 0
        new_vertex = False
        for v, nbrs in updates.items():
            degree_change -= len(self.rotation.get(v, ()))
            if nbrs is None:
                g.rotation.pop(v, None)
                g._position.pop(v, None)
                continue
            new_vertex = new_vertex or v not in self.rotation
            g.rotation[v] = canonical_cycle(list(nbrs))
            g._position[v] = {u: i for i, u in enumerate(g.rotation[v])}
            degree_change += len(nbrs)
        g._edge_count = self._edge_count + degree_change // 2
        if new_vertex:
            g.rotation = dict(sorted(g.rotation.items()))

        g._dart_walk = dict(self._dart_walk)
        g._walks = dict(self._walks)
        g._anchor = dict(self._anchor)
        g._order = list(self._order)
        g._next_token = self._next_token

        stale: Set[int] = set()
        seeds: List[Dart] = []
        for b in updates:
            for a in self.rotation.get(b, ()):
                if not g.has_edge(a, b) or g.succ(b, a) != self.succ(b, a):
                    stale.add(self._dart_walk[(a, b)])
            for a in g.rotation.get(b, ()):
                if not self.has_edge(a, b):
                    seeds.append((a, b))

        for token in stale:
            for dart in g._walks.pop(token):
                del g._dart_walk[dart]
                if g.has_edge(*dart):
                    seeds.append(dart)
            del g._anchor[token]
            g._order.remove(token)

        # walks anchored at an edited vertex keep their token but move in the order
        moved = []
        for b in updates:
            for a in g.rotation.get(b, ()):
                token = g._dart_walk.get((b, a))
                if token is not None and g._anchor[token] == (b, a):
                    g._order.remove(token)
                    moved.append(token)

        for start in seeds:
            if start in g._dart_walk:
                continue
            token = g._next_token
            g._next_token += 1
            darts = g._trace_walk(start, token)
            first = min(range(len(darts)), key=lambda i: (darts[i][0], g._position[darts[i][0]][darts[i][1]]))
            g._walks[token] = darts[first:] + darts[:first]
            g._anchor[token] = darts[first]
            moved.append(token)

        for token in moved:
            g._insert_ordered(token)
        g._face_base = max(g.rotation) + 1

        euler = g.n - g.edge_count + len(g._order)
        if euler != 2:
            raise NotPlanarEmbedding(f"edited rotation system has Euler characteristic {euler}, expected 2")
        return g

    # Faces and corners

    @cached_property
    def _rank(self) -> Dict[int, int]:
        return dict(zip(self._order, range(len(self._order))))

    def _token_of(self, f: int) -> int:
        i = f - self._face_base
        if not 0 <= i < len(self._order):
            raise NotAFace(f"face {f} does not exist")
        return self._order[i]

    def has_face(self, f: int) -> bool:
        return 0 <= f - self._face_base < len(self._order)

    def face_of(self, a: int, b: int) -> int:
        """Face to the left of the dart a -> b"""
        return self._face_base + self._rank[self._dart_walk[(a, b)]]

    def face_darts(self, f: int) -> Tuple[Dart, ...]:
        return self._walks[self._token_of(f)]

    def face_vertices(self, f: int) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.face_darts(f))

    @cached_property
    def faces(self) -> Dict[int, Face]:
        outer = self._dart_walk.get((self.v2, self.v1))
        return {
            self._face_base + i: Face(self._face_base + i, tuple(a for a, _ in self._walks[token]),
                                      self._walks[token], is_outer=token == outer)
            for i, token in enumerate(self._order)
        }

    @cached_property
    def dart_face(self) -> Dict[Dart, int]:
        rank = self._rank
        return {dart: self._face_base + rank[token] for dart, token in self._dart_walk.items()}

    @cached_property
    def outer_face(self) -> int:
        if (self.v2, self.v1) not in self._dart_walk:
            return -1
        return self.face_of(self.v2, self.v1)

    @property
    def inner_faces(self) -> List[int]:
        outer = self.outer_face
        return [f for f in range(self._face_base, self._face_base + len(self._order)) if f != outer]

    def corner_face(self, a: int, v: int) -> int:
        """Face of the corner at v that follows neighbor a clockwise"""
        return self.face_of(a, v)

    def corners(self, v: int) -> List[Dart]:
        """Corners of v in clockwise order; corner i sits between neighbors i and i+1"""
        return [(a, v) for a in self.rotation[v]]

    def vertex_faces(self, v: int) -> List[int]:
        """Incident faces of v in clockwise order"""
        return [self.face_of(a, v) for a in self.rotation[v]]

    def corner_of(self, v: int, f: int) -> Dart:
        """The corner of vertex v inside face f"""
        if self.has_face(f):
            token = self._order[f - self._face_base]
            for a in self.rotation[v]:
                if self._dart_walk[(a, v)] == token:
                    return (a, v)
        raise NotAFace(f"vertex {v} is not incident to face {f}")

    def is_special(self, v: int) -> bool:
        return v == self.v1 or v == self.v2

    def is_outer_vertex(self, v: int) -> bool:
        return v in self.outer

    def is_outer_edge(self, u: int, v: int) -> bool:
        outer = self._dart_walk.get((self.v2, self.v1))
        return outer is not None and outer in (self._dart_walk.get((u, v)), self._dart_walk.get((v, u)))

    # Conversions

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.rotation)
        graph.add_edges_from(self.edges())
        return graph

    def rotation_dict(self) -> Dict[int, List[int]]:
        return {v: list(nbrs) for v, nbrs in self.rotation.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self.rotation == other.rotation and self.outer == other.outer

    def __hash__(self) -> int:
        return hash((tuple(self.rotation.items()), self.outer))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.edge_count}, faces={len(self._order)})"


def _check_rotation(rotation: Mapping[int, Sequence[int]]):
    for v, nbrs in rotation.items():
        if v in nbrs:
            raise NonSimple(f"loop at vertex {v}", witness=[v])
        if len(set(nbrs)) != len(nbrs):
            raise NonSimple(f"parallel edges at vertex {v}", witness=[v])
        for u in nbrs:
            if u not in rotation:
                raise InconsistentRotation(f"vertex {v} lists unknown neighbor {u}", witness=[v, u])
            if v not in rotation[u]:
                raise InconsistentRotation(
                    f"edge ({v},{u}) listed at {v} but not at {u}", witness=[v, u])


def build_plane_graph(rotation: Mapping[int, Sequence[int]], outer: Sequence[int]) -> PlaneGraph:
    """
    Build and validate a plane graph from its rotation system

    Args:
        rotation: clockwise neighbor list for every vertex
        outer: outer triangle (v1, v2, v3) in counterclockwise order

    Returns:
        PlaneGraph with traced faces and flagged outer face
    """
    rotation = {int(v): [int(u) for u in nbrs] for v, nbrs in rotation.items()}
    _check_rotation(rotation)

    outer = tuple(int(v) for v in outer)
    if len(outer) != 3 or len(set(outer)) != 3:
        raise NotAFace(f"outer must be three distinct vertices, got {list(outer)}")
    for v in outer:
        if v not in rotation:
            raise NotAFace(f"outer vertex {v} is not in the graph", witness=outer)

    g = PlaneGraph(rotation, outer)

    if not nx.is_connected(g.to_networkx()):
        raise NotTwoConnected("graph is not connected")

    euler = g.n - g.edge_count + len(g.faces)
    if euler != 2:
        raise NotPlanarEmbedding(f"rotation system has Euler characteristic {euler}, expected 2")

    v1, v2, v3 = outer
    if g.outer_face < 0 or canonical_cycle(list(g.faces[g.outer_face].walk)) != canonical_cycle([v2, v1, v3]):
        raise NotAFace(f"({v1},{v2},{v3}) does not bound a face in counterclockwise order",
                       witness=outer)

    logger.debug(f"Built {g!r}")
    return g


def is_two_connected(g: PlaneGraph) -> bool:
    """Biconnectivity verdict"""
    if g.n < 3:
        return False
    return nx.is_biconnected(g.to_networkx())


def require_two_connected(g: PlaneGraph):
    if not is_two_connected(g):
        cut = sorted(nx.articulation_points(g.to_networkx()))
        raise NotTwoConnected("graph is not 2-connected", witness=cut)


def triangle() -> PlaneGraph:
    """K3 on vertices 1, 2, 3 with outer triangle (1, 2, 3)"""
    return build_plane_graph({1: [2, 3], 2: [1, 3], 3: [1, 2]}, (1, 2, 3))
