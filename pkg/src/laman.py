"""
Laman Verification
(2,3)-pebble game sparsity test plus a brute-force subset oracle for small graphs
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Set, Tuple

from src.plane_graph import PlaneGraph

logger = logging.getLogger(__name__)

PEBBLES_PER_VERTEX = 2
EDGE_THRESHOLD = 4


@dataclass
class LamanVerdict:
    accepted: bool
    witness: Optional[List[int]] = None
    reason: str = ''

    def __bool__(self) -> bool:
        return self.accepted

    def to_dict(self) -> dict:
        return {'accepted': self.accepted, 'witness': self.witness, 'reason': self.reason}


class PebbleGame:
    """
    Incremental (2,3)-pebble game.

    Accepted edges are kept as a directed graph; each vertex holds the
    pebbles not yet spent on out-edges. Edges and vertices can also be
    removed, which keeps the configuration valid for the smaller graph.
    """

    def __init__(self, vertices: Iterable[int] = ()):
        self.pebbles: Dict[int, int] = {}
        self.out: Dict[int, Set[int]] = {}
        self.last_visited: Set[int] = set()
        self.logger = logging.getLogger(__name__)
        for v in vertices:
            self.add_vertex(v)

    def add_vertex(self, v: int):
        self.pebbles[v] = PEBBLES_PER_VERTEX
        self.out[v] = set()

    def _search(self, start: int, keep: int) -> bool:
        """Move one pebble onto `start` along a reversed path, never taking from `keep`"""
        visited = {start, keep}
        parent: Dict[int, int] = {}
        stack = [start]
        found = None
        while stack:
            a = stack.pop()
            for b in self.out[a]:
                if b in visited:
                    continue
                visited.add(b)
                parent[b] = a
                if self.pebbles[b] > 0:
                    found = b
                    stack = []
                    break
                stack.append(b)
        self.last_visited |= visited
        if found is None:
            return False

        # Reverse the path start -> ... -> found
        self.pebbles[found] -= 1
        b = found
        while b != start:
            a = parent[b]
            self.out[a].discard(b)
            self.out[b].add(a)
            b = a
        self.pebbles[start] += 1
        return True

    def can_add(self, u: int, v: int) -> bool:
        """Gather four pebbles on u and v; True iff the edge (u,v) is independent"""
        while self.pebbles[u] + self.pebbles[v] < EDGE_THRESHOLD:
            # only the searches of the final, failing round form the witness
            self.last_visited = {u, v}
            if self.pebbles[u] < PEBBLES_PER_VERTEX and self._search(u, v):
                continue
            if self.pebbles[v] < PEBBLES_PER_VERTEX and self._search(v, u):
                continue
            return False
        return True

    def commit(self, u: int, v: int):
        """Insert an edge whose pebbles have been gathered"""
        source, target = (u, v) if self.pebbles[u] > 0 else (v, u)
        self.pebbles[source] -= 1
        self.out[source].add(target)

    def try_add(self, u: int, v: int) -> bool:
        if self.can_add(u, v):
            self.commit(u, v)
            return True
        self.logger.debug(f"Rejected ({u},{v}); reach set {sorted(self.last_visited)}")
        return False

    def remove_edge(self, u: int, v: int):
        if v in self.out[u]:
            self.out[u].remove(v)
            self.pebbles[u] += 1
        elif u in self.out[v]:
            self.out[v].remove(u)
            self.pebbles[v] += 1
        else:
            raise KeyError(f"edge ({u},{v}) is not in the pebble game")

    def remove_vertex(self, v: int, neighbors: Iterable[int]):
        for u in neighbors:
            self.remove_edge(u, v)
        del self.pebbles[v]
        del self.out[v]

    @property
    def free_pebbles(self) -> int:
        return sum(self.pebbles.values())


def pebble_game(vertices: Iterable[int], edges: Iterable[Tuple[int, int]]) -> Tuple[PebbleGame, Optional[Tuple[Tuple[int, int], Set[int]]]]:
    """
    Run the pebble game over an edge list.

    Returns:
        the game and, if some edge was dependent, (edge, witness vertex set)
    """
    game = PebbleGame(vertices)
    for u, v in edges:
        if not game.try_add(u, v):
            return game, ((u, v), set(game.last_visited))
    return game, None


def validate_laman(g: PlaneGraph) -> LamanVerdict:
    """
    Laman verdict via the (2,3)-pebble game

    Args:
        g: connected plane graph

    Returns:
        LamanVerdict; rejections carry a vertex subset W violating the count
    """
    n, m = g.n, g.edge_count
    game, rejected = pebble_game(g.vertices, g.edges())
    if rejected is not None:
        edge, witness = rejected
        logger.debug(f"Edge {edge} is dependent; witness {sorted(witness)}")
        return LamanVerdict(False, sorted(witness), f"edge {list(edge)} overloads W")
    if m != 2 * n - 3:
        return LamanVerdict(False, sorted(g.vertices), f"|E|={m} but 2|V|-3={2 * n - 3}")
    return LamanVerdict(True, None, 'accepted')


def brute_force_laman(vertices: Iterable[int], edges: Iterable[Tuple[int, int]], limit: int = 10) -> LamanVerdict:
    """Subset oracle: checks every W directly; only for small graphs"""
    vertices = sorted(vertices)
    edges = [tuple(e) for e in edges]
    if len(vertices) > limit:
        raise ValueError(f"brute force oracle limited to {limit} vertices")

    for size in range(2, len(vertices) + 1):
        for subset in combinations(vertices, size):
            members = set(subset)
            inside = sum(1 for u, v in edges if u in members and v in members)
            if inside > 2 * size - 3:
                return LamanVerdict(False, list(subset), f"|E(W)|={inside} > {2 * size - 3}")

    if len(edges) != 2 * len(vertices) - 3:
        return LamanVerdict(False, vertices, f"|E|={len(edges)} but 2|V|-3={2 * len(vertices) - 3}")
    return LamanVerdict(True, None, 'accepted')


def is_laman_edge_set(vertices: Iterable[int], edges: Iterable[Tuple[int, int]]) -> bool:
    """Pebble-game Laman test on a bare edge list"""
    vertices = list(vertices)
    edges = list(edges)
    if len(edges) != 2 * len(vertices) - 3:
        return False
    _, rejected = pebble_game(vertices, edges)
    return rejected is None
