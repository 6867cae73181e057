"""
Unit tests for laman module: pebble game against the subset oracle
"""

import unittest
import os
import sys
from itertools import combinations

from hypothesis import given, settings, strategies as st

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from src.laman import PebbleGame, brute_force_laman, is_laman_edge_set, validate_laman
from tests.sample_graphs import henneberg_graphs, k3, k3v4, k4, k4_with_path

SMALL_PAIRS = list(combinations(range(1, 7), 2))


def violates_count(edges, witness) -> bool:
    members = set(witness)
    inside = sum(1 for u, v in edges if u in members and v in members)
    return inside > 2 * len(members) - 3


class TestValidateLaman(unittest.TestCase):
    """Test cases for the Laman verdict"""

    def test_triangle_is_laman(self):
        """K3 is the base Laman graph"""
        verdict = validate_laman(k3())
        self.assertTrue(verdict)
        self.assertIsNone(verdict.witness)

    def test_k3v4_is_laman(self):
        """One H1 move keeps the graph Laman"""
        self.assertTrue(validate_laman(k3v4()))

    def test_k4_witness_is_whole_vertex_set(self):
        """K4 has 6 > 5 edges; the only overloaded subset is V"""
        verdict = validate_laman(k4())
        self.assertFalse(verdict)
        self.assertEqual(verdict.witness, [1, 2, 3, 4])

    def test_right_count_but_overbraced(self):
        """2n-3 edges do not suffice when K4 sits inside"""
        g = k4_with_path()
        self.assertEqual(g.edge_count, 2 * g.n - 3)
        verdict = validate_laman(g)
        self.assertFalse(verdict)
        self.assertTrue(violates_count(g.edges(), verdict.witness))
        self.assertEqual(verdict.witness, [1, 2, 3, 4])

    def test_oracle_agrees_on_fixed_graphs(self):
        """Subset oracle gives the same verdicts and finds the smallest W"""
        for g, expected in ((k3(), True), (k3v4(), True), (k4(), False), (k4_with_path(), False)):
            oracle = brute_force_laman(g.vertices, g.edges())
            self.assertEqual(bool(oracle), expected)
        self.assertEqual(brute_force_laman(k4_with_path().vertices, k4_with_path().edges()).witness, [1, 2, 3, 4])

    def test_oracle_limit(self):
        """The subset oracle refuses large inputs"""
        with self.assertRaises(ValueError):
            brute_force_laman(range(12), [], limit=10)

    def test_pebbles_left_on_laman_graph(self):
        """Three pebbles stay free after a Laman graph is played"""
        game = PebbleGame(k3v4().vertices)
        for u, v in k3v4().edges():
            self.assertTrue(game.try_add(u, v))
        self.assertEqual(game.free_pebbles, 3)
        self.assertFalse(game.can_add(2, 4))

    @given(henneberg_graphs(max_n=9))
    @settings(max_examples=40, deadline=None)
    def test_henneberg_graphs_are_laman(self, generated):
        """Both tests accept every Henneberg-generated graph"""
        _, g = generated
        self.assertTrue(validate_laman(g))
        self.assertTrue(brute_force_laman(g.vertices, g.edges()))

    @given(st.sets(st.sampled_from(SMALL_PAIRS), max_size=len(SMALL_PAIRS)))
    @settings(max_examples=150, deadline=None)
    def test_pebble_game_matches_oracle(self, edges):
        """Arbitrary edge sets on six vertices get the same verdict from both tests"""
        edges = sorted(edges)
        vertices = list(range(1, 7))
        self.assertEqual(is_laman_edge_set(vertices, edges), bool(brute_force_laman(vertices, edges)))


if __name__ == '__main__':
    unittest.main()
