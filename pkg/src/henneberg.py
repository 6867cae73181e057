"""
Henneberg Construction
Forward H1/H2 moves on plane graphs, reverse decomposition of plane Laman
graphs and replay of recorded sequences. The outer triangle is never touched.
"""

import bisect
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from src.errors import (IllegalMove, NoReducibleVertex, NotLamanError,
                        OuterEdgeRemoval, PipelineInvariantError)
from src.laman import PebbleGame, pebble_game, validate_laman
from src.plane_graph import PlaneGraph, build_plane_graph, require_two_connected

logger = logging.getLogger(__name__)

H1 = 'H1'
H2 = 'H2'


@dataclass(frozen=True)
class HennebergMove:
    """
    One planar Henneberg step inserting vertex v into face `face`.

    H1 joins v to x and y. H2 removes the edge (x, y), with `face` lying to
    the left of the dart x -> y, and joins v to x, y and z. `positions` maps
    a vertex to the index in its (pre-move) rotation where v is placed.
    """
    kind: str
    v: int
    x: int
    y: int
    face: int
    z: Optional[int] = None
    positions: Tuple[Tuple[int, int], ...] = ()

    @property
    def position_map(self) -> Dict[int, int]:
        return dict(self.positions)

    def to_dict(self) -> dict:
        data = {'kind': self.kind, 'v': self.v, 'x': self.x, 'y': self.y, 'face': self.face}
        if self.kind == H2:
            data['z'] = self.z
        data['positions'] = {str(k): i for k, i in self.positions}
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'HennebergMove':
        positions = tuple(sorted((int(k), int(i)) for k, i in data.get('positions', {}).items()))
        z = data.get('z')
        return cls(kind=data['kind'], v=int(data['v']), x=int(data['x']), y=int(data['y']),
                   face=int(data['face']), z=int(z) if z is not None else None,
                   positions=positions)


@dataclass
class HennebergSequence:
    base: Tuple[int, int, int]
    moves: List[HennebergMove] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.moves)

    def to_dict(self) -> dict:
        return {'base': list(self.base), 'moves': [m.to_dict() for m in self.moves]}

    @classmethod
    def from_dict(cls, data: dict) -> 'HennebergSequence':
        return cls(tuple(int(v) for v in data['base']),
                   [HennebergMove.from_dict(m) for m in data.get('moves', [])])


def base_triangle(base: Tuple[int, int, int]) -> PlaneGraph:
    v1, v2, v3 = base
    return build_plane_graph({v1: [v2, v3], v2: [v1, v3], v3: [v1, v2]}, base)


def _insert_after_corner(g: PlaneGraph, rotation: Dict[int, List[int]], w: int, f: int, v: int) -> int:
    a, _ = g.corner_of(w, f)
    index = g.index_of(w, a) + 1
    rotation.setdefault(w, list(g.rotation[w])).insert(index, v)
    return index


def _apply(g: PlaneGraph, m: HennebergMove) -> Tuple[PlaneGraph, HennebergMove]:
    """Apply a move and return the new graph with the normalized move"""
    if m.v in g.rotation:
        raise IllegalMove(f"vertex {m.v} already exists")
    if m.kind not in (H1, H2):
        raise IllegalMove(f"unknown move kind {m.kind!r}")

    x, y, f = m.x, m.y, m.face
    if m.kind == H2:
        if not g.has_edge(x, y):
            raise IllegalMove(f"H2 edge ({x},{y}) is not in the graph")
        if g.is_outer_edge(x, y):
            raise OuterEdgeRemoval(f"H2 may not remove outer edge ({x},{y})", witness=[x, y])
    if not g.has_face(f):
        raise IllegalMove(f"face {f} does not exist")
    if f == g.outer_face:
        raise IllegalMove(f"moves may not use the outer face {f}")
    if x == y:
        raise IllegalMove("x and y must differ")

    rotation: Dict[int, List[int]] = {}
    positions: Dict[int, int] = {}
    boundary = set(g.face_vertices(f))

    if m.kind == H1:
        if x not in boundary or y not in boundary:
            raise IllegalMove(f"H1 endpoints ({x},{y}) are not on face {f}")
        positions[x] = _insert_after_corner(g, rotation, x, f, m.v)
        positions[y] = _insert_after_corner(g, rotation, y, f, m.v)
        rotation[m.v] = [x, y]
        z = None
    else:
        if g.face_of(x, y) != f:
            if g.face_of(y, x) != f:
                raise IllegalMove(f"edge ({x},{y}) does not bound face {f}")
            x, y = y, x
        z = m.z
        if z is None or z not in boundary or z in (x, y):
            raise IllegalMove(f"H2 third vertex {z} is not a further vertex of face {f}")
        positions[x] = g.index_of(x, y)
        positions[y] = g.index_of(y, x)
        rotation[x] = list(g.rotation[x])
        rotation[y] = list(g.rotation[y])
        rotation[x][positions[x]] = m.v
        rotation[y][positions[y]] = m.v
        positions[z] = _insert_after_corner(g, rotation, z, f, m.v)
        rotation[m.v] = [y, x, z]

    recorded = m.position_map
    for w, index in recorded.items():
        if positions.get(w) != index:
            raise IllegalMove(f"position mismatch at vertex {w}: expected {positions.get(w)}, got {index}")

    normalized = HennebergMove(m.kind, m.v, x, y, f, z, tuple(sorted(positions.items())))
    return g.with_rotations(rotation), normalized


def apply_move(g: PlaneGraph, m: HennebergMove) -> PlaneGraph:
    """Insert m.v into its host face, splitting it in two"""
    new_graph, _ = _apply(g, m)
    return new_graph


def replay_graphs(s: HennebergSequence) -> Iterator[PlaneGraph]:
    """Yield the base triangle and every graph produced along the sequence"""
    g = base_triangle(s.base)
    yield g
    for step, move in enumerate(s.moves):
        try:
            g = apply_move(g, move)
        except IllegalMove as e:
            raise IllegalMove(f"move {step} ({move.kind} v={move.v}): {e.message}") from e
        yield g


def replay(s: HennebergSequence, check_laman: bool = False) -> PlaneGraph:
    """Rebuild the plane graph described by a sequence"""
    g = None
    for g in replay_graphs(s):
        if check_laman and not validate_laman(g):
            raise PipelineInvariantError(f"intermediate graph with {g.n} vertices is not Laman")
    return g


def _reverse_h1(g: PlaneGraph, v: int, game: PebbleGame) -> Tuple[HennebergMove, PlaneGraph]:
    x, y = g.rotation[v]
    a_x, a_y = g.pred(x, v), g.pred(y, v)
    rotation = {x: list(g.rotation[x]), y: list(g.rotation[y]), v: None}
    rotation[x].remove(v)
    rotation[y].remove(v)
    reduced = g.with_rotations(rotation)

    if reduced.edge_count != 2 * reduced.n - 3:
        raise PipelineInvariantError(f"removing degree-2 vertex {v} broke the edge count")
    game.remove_vertex(v, (x, y))

    positions = ((x, reduced.index_of(x, a_x) + 1), (y, reduced.index_of(y, a_y) + 1))
    move = HennebergMove(H1, v, x, y, reduced.corner_face(a_x, x), None, tuple(sorted(positions)))
    return move, reduced


def _reverse_h2(g: PlaneGraph, v: int, game: PebbleGame) -> Optional[Tuple[HennebergMove, PlaneGraph]]:
    nbrs = g.rotation[v]
    game.remove_vertex(v, nbrs)

    for i in range(3):
        y, x, z = nbrs[i], nbrs[(i + 1) % 3], nbrs[(i + 2) % 3]
        if g.has_edge(x, y) or not game.try_add(x, y):
            continue

        c = g.pred(z, v)
        rotation = {x: list(g.rotation[x]), y: list(g.rotation[y]), z: list(g.rotation[z]), v: None}
        rotation[x][g.index_of(x, v)] = y
        rotation[y][g.index_of(y, v)] = x
        rotation[z].remove(v)
        reduced = g.with_rotations(rotation)

        positions = ((x, reduced.index_of(x, y)), (y, reduced.index_of(y, x)),
                     (z, reduced.index_of(z, c) + 1))
        move = HennebergMove(H2, v, x, y, reduced.face_of(x, y), z, tuple(sorted(positions)))
        return move, reduced

    # no independent chord: put v back
    game.add_vertex(v)
    for u in nbrs:
        if not game.try_add(v, u):
            raise PipelineInvariantError(f"could not restore edge ({v},{u}) in the pebble game")
    return None


def decompose(g: PlaneGraph) -> HennebergSequence:
    """
    Find a planar Henneberg sequence for g by repeated reverse moves

    Prefers the lowest non-outer degree-2 vertex; otherwise tries non-outer
    degree-3 vertices by id with their chords in rotation order.

    Args:
        g: plane Laman graph with outer triangle

    Returns:
        HennebergSequence whose replay reproduces g exactly
    """
    verdict = validate_laman(g)
    if not verdict:
        raise NotLamanError(f"graph is not Laman: {verdict.reason}", witness=verdict.witness)
    require_two_connected(g)

    game, rejected = pebble_game(g.vertices, g.edges())
    if rejected is not None:
        raise PipelineInvariantError("pebble game disagrees with the Laman verdict")

    moves: List[HennebergMove] = []
    current = g
    while current.n > 3:
        inner = [v for v in current.vertices if not current.is_outer_vertex(v)]
        step = None
        for v in inner:
            if current.degree(v) == 2:
                step = _reverse_h1(current, v, game)
                break
        if step is None:
            for v in inner:
                if current.degree(v) == 3:
                    step = _reverse_h2(current, v, game)
                    if step is not None:
                        break
        if step is None:
            raise NoReducibleVertex(f"no reducible vertex among {inner}", witness=inner)
        move, current = step
        logger.debug(f"Reverse {move.kind} removed vertex {move.v}")
        moves.append(move)

    moves.reverse()
    logger.info(f"Henneberg sequence found: {len(moves)} moves "
                f"({sum(1 for m in moves if m.kind == H2)} of type H2)")
    return HennebergSequence(g.outer, moves)


def random_sequence(n: int, seed: int, h2_probability: float = 0.5) -> Tuple[HennebergSequence, PlaneGraph]:
    """
    Random planar Henneberg sequence on vertices 1..n.

    All randomness comes from `random.Random(seed)` (Mersenne Twister), and
    every candidate list is sorted before sampling, so the output depends
    only on (n, seed, h2_probability).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(seed)
    g = base_triangle((1, 2, 3))
    moves: List[HennebergMove] = []
    inner_edges: List[Tuple[int, int]] = []

    for v in range(4, n + 1):
        if inner_edges and rng.random() < h2_probability:
            x, y = rng.choice(inner_edges)
            f = rng.choice(sorted((g.face_of(x, y), g.face_of(y, x))))
            if g.face_of(x, y) != f:
                x, y = y, x
            z = rng.choice(sorted(w for w in g.face_vertices(f) if w not in (x, y)))
            move = HennebergMove(H2, v, x, y, f, z)
        else:
            f = rng.choice(sorted(g.inner_faces))
            x, y = rng.sample(sorted(g.face_vertices(f)), 2)
            move = HennebergMove(H1, v, x, y, f)
        g, move = _apply(g, move)
        moves.append(move)
        if move.kind == H2:
            inner_edges.remove((min(move.x, move.y), max(move.x, move.y)))
        for w in (move.x, move.y, move.z):
            if w is not None:
                bisect.insort(inner_edges, (min(w, v), max(w, v)))

    return HennebergSequence((1, 2, 3), moves), g
