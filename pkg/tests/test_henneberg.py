"""
Unit tests for henneberg module
"""

import unittest
import os
import sys

from hypothesis import given, settings

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from src.errors import IllegalMove, NotLamanError, OuterEdgeRemoval
from src.henneberg import (H1, H2, HennebergMove, HennebergSequence, apply_move, decompose,
                           random_sequence, replay, replay_graphs)
from src.laman import validate_laman
from tests.sample_graphs import henneberg_graphs, k3, k3v4, k4


class TestMoves(unittest.TestCase):
    """Test cases for forward H1/H2 moves"""

    def test_h1_on_triangle(self):
        """Inserting 4 into the inner face of K3, joined to 1 and 3"""
        g = apply_move(k3(), HennebergMove(H1, 4, 1, 3, 4))
        self.assertEqual(g, k3v4())

    def test_recorded_positions_are_checked(self):
        """A move replays only at the rotation positions it recorded"""
        move = HennebergMove(H1, 4, 1, 3, 4, positions=((1, 2), (3, 2)))
        self.assertEqual(apply_move(k3(), move), k3v4())
        with self.assertRaises(IllegalMove):
            apply_move(k3(), HennebergMove(H1, 4, 1, 3, 4, positions=((1, 1), (3, 2))))

    def test_h2_splits_inner_edge(self):
        """H2 replaces edge (3, 4) by vertex 5 joined to 3, 4 and a third vertex"""
        g = k3v4()
        face = g.dart_face[(3, 4)]
        z = next(w for w in g.faces[face].walk if w not in (3, 4))
        h = apply_move(g, HennebergMove(H2, 5, 3, 4, face, z))
        self.assertFalse(h.has_edge(3, 4))
        self.assertEqual(sorted(h.rotation[5]), sorted([3, 4, z]))
        self.assertEqual(h.edge_count, 2 * h.n - 3)
        self.assertTrue(validate_laman(h))

    def test_illegal_moves(self):
        """Existing vertices, the outer face and foreign endpoints are refused"""
        g = k3v4()
        with self.assertRaises(IllegalMove):
            apply_move(g, HennebergMove(H1, 4, 1, 3, 5))
        with self.assertRaises(IllegalMove):
            apply_move(g, HennebergMove(H1, 5, 1, 2, g.outer_face))
        with self.assertRaises(IllegalMove):
            apply_move(g, HennebergMove(H1, 5, 2, 4, 7))
        with self.assertRaises(IllegalMove):
            apply_move(g, HennebergMove(H2, 5, 1, 4, 7, z=2))

    def test_outer_edge_removal(self):
        """H2 never removes an edge of the outer triangle"""
        g = k3v4()
        with self.assertRaises(OuterEdgeRemoval):
            apply_move(g, HennebergMove(H2, 5, 1, 3, 7, z=4))


class TestDecompose(unittest.TestCase):
    """Test cases for reverse decomposition and replay"""

    def test_decompose_k3v4(self):
        """K3+v4 reduces by one H1 move"""
        s = decompose(k3v4())
        self.assertEqual(s.base, (1, 2, 3))
        self.assertEqual(len(s), 1)
        self.assertEqual(s.moves[0].to_dict(),
                         {'kind': 'H1', 'v': 4, 'x': 1, 'y': 3, 'face': 4, 'positions': {'1': 2, '3': 2}})
        self.assertEqual(replay(s), k3v4())

    def test_decompose_triangle(self):
        """K3 needs no moves"""
        self.assertEqual(len(decompose(k3())), 0)

    def test_decompose_rejects_non_laman(self):
        """K4 is refused with the overloaded subset"""
        with self.assertRaises(NotLamanError) as ctx:
            decompose(k4())
        self.assertEqual(ctx.exception.exit_code, 2)
        self.assertEqual(ctx.exception.witness, [1, 2, 3, 4])

    def test_sequence_dict_form(self):
        """Sequences survive their JSON form"""
        s, g = random_sequence(9, seed=7)
        self.assertEqual(replay(HennebergSequence.from_dict(s.to_dict())), g)

    def test_random_sequence_is_deterministic(self):
        """Same n and seed give the same graph"""
        self.assertEqual(random_sequence(12, seed=3)[1], random_sequence(12, seed=3)[1])
        self.assertEqual(random_sequence(3, seed=5)[1], k3())

    def test_h2_probability_one(self):
        """With H2 forced, every move after the first is H2"""
        s, _ = random_sequence(7, seed=1, h2_probability=1.0)
        self.assertEqual(s.moves[0].kind, H1)
        self.assertTrue(all(m.kind == H2 for m in s.moves[1:]))

    @given(henneberg_graphs(max_n=20))
    @settings(max_examples=40, deadline=None)
    def test_every_intermediate_graph_is_laman(self, generated):
        """Replay passes through Laman graphs only"""
        s, g = generated
        graphs = list(replay_graphs(s))
        self.assertEqual(len(graphs), g.n - 2)
        self.assertEqual(graphs[-1], g)
        self.assertEqual(replay(s, check_laman=True), g)

    @given(henneberg_graphs(max_n=24))
    @settings(max_examples=40, deadline=None)
    def test_decompose_replays_exactly(self, generated):
        """A decomposition found for g rebuilds g, rotation for rotation"""
        _, g = generated
        s = decompose(g)
        self.assertEqual(len(s), g.n - 3)
        self.assertEqual(replay(s), g)


if __name__ == '__main__':
    unittest.main()
