"""
Unit tests for lcontact module: types, inequality graphs, coordinates and shapes
"""

import unittest
import os
import sys
from collections import Counter

import networkx as nx
from hypothesis import given, settings

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from src.angular import AngularStructure, compute_angular_tree, derive_matching
from src.errors import InconsistentInputs
from src.henneberg import decompose
from src.labeling import edge_labeling_from_angular_tree
from src.lcontact import (MINUS, PLUS, LContactRepresentation, assign_coordinates, assign_types,
                          build_inequality_graphs, check_face_paths, check_sink_edges, check_types,
                          emit_lshapes, face_sequence, representation_stats, shape_type, shift_type)
from tests.sample_graphs import henneberg_graphs, k3, k3v4


def construct(g, sequence=None):
    """Run the construction up to the shapes and return every intermediate"""
    T = compute_angular_tree(g, sequence or decompose(g))
    labeling = edge_labeling_from_angular_tree(g, T)
    matching = derive_matching(g, T)
    types = assign_types(g, labeling, matching, T)
    d_r, d_b = build_inequality_graphs(g, labeling, matching, types)
    coords = assign_coordinates(d_r, d_b)
    rep = emit_lshapes(g, labeling, types, coords)
    return T, labeling, matching, types, d_r, d_b, coords, rep


class TestTypes(unittest.TestCase):
    """Test cases for vertex types"""

    def test_shift_type(self):
        """Quadrant labels wrap around mod 4"""
        self.assertEqual(shift_type('I', -1), 'IV')
        self.assertEqual(shift_type('IV', 1), 'I')
        self.assertEqual(shift_type('II', 1), 'III')

    def test_k3_types(self):
        """The single inner vertex of K3 is type I and odd"""
        _, _, _, types, *_ = construct(k3())
        self.assertEqual(types.quadrant(3), 'I')
        self.assertTrue(types.odd[3])

    def test_k3v4_types(self):
        """v3 is type I (odd), v4 type IV (even); specials are type I"""
        g = k3v4()
        _, labeling, matching, types, *_ = construct(g)
        self.assertEqual(types.quadrant(3), 'I')
        self.assertEqual(types.quadrant(4), 'IV')
        self.assertEqual((types.red[4], types.blue[4]), (PLUS, MINUS))
        self.assertEqual(types.odd, {3: True, 4: False})
        self.assertEqual(types.quadrant(1), 'I')
        self.assertEqual(types.to_dict()['4'], {'t_r': '+', 't_b': '-', 'type': 'IV', 'parity': 'even'})
        self.assertTrue(check_types(g, labeling, matching, types))

    def test_matching_outside_tree(self):
        """Matched pairs must be angles of the tree"""
        g = k3v4()
        _, labeling, matching, *_ = construct(g)
        with self.assertRaises(InconsistentInputs):
            assign_types(g, labeling, matching, AngularStructure(frozenset({(3, 6)})))

    def test_face_sequence(self):
        """Face 5 of K3+v4 splits at matched vertex 3 and sinks 1, 2"""
        g = k3v4()
        _, labeling, matching, *_ = construct(g)
        seq = face_sequence(g, labeling, matching, 5)
        self.assertEqual(seq.v, 3)
        self.assertEqual({seq.u, seq.w}, {1, 2})
        self.assertEqual(seq.us[0], seq.u)
        self.assertEqual(seq.us[-1], 3)
        self.assertEqual(seq.ws[0], 3)


class TestInequalityGraphs(unittest.TestCase):
    """Test cases for D_r and D_b"""

    def test_k3v4_graphs(self):
        """Hand-computed edge multisets of both inequality graphs"""
        g = k3v4()
        _, labeling, matching, types, d_r, d_b, _, _ = construct(g)
        self.assertEqual(d_r.to_dict()['edges'],
                         [[2, 1], [2, 3], [3, 1], [3, 4], [3, 5], [4, 1], [4, 7], [5, 1], [5, 4], [7, 1], [7, 1]])
        self.assertEqual(d_b.to_dict()['edges'],
                         [[1, 2], [1, 3], [1, 4], [3, 2], [3, 4], [3, 7], [3, 7], [4, 5], [5, 2], [5, 2], [7, 4]])
        self.assertEqual(d_r.face_edges(7), [(4, 7), (7, 1), (7, 1)])
        self.assertTrue(check_face_paths(g, labeling, matching, types, d_r, d_b))
        self.assertTrue(check_sink_edges(d_r, d_b, labeling, types))

    def test_k3_order(self):
        """K3: D_r orders v2 < v3 < v1"""
        _, _, _, _, d_r, _, coords, _ = construct(k3())
        self.assertTrue(d_r.has_edge(2, 3))
        self.assertTrue(d_r.has_edge(3, 1))
        self.assertEqual(coords, {1: (3, 1), 2: (1, 3), 3: (2, 2)})

    def test_flipped_sign_breaks_sink_audit(self):
        """Inequality graphs built for other signs fail the audit"""
        g = k3v4()
        _, labeling, matching, types, d_r, d_b, _, _ = construct(g)
        types.red[3] = MINUS
        self.assertFalse(check_sink_edges(d_r, d_b, labeling, types))

    @given(henneberg_graphs(max_n=40))
    @settings(max_examples=50, deadline=None)
    def test_acyclic_with_unique_source_and_sink(self, generated):
        """D_r runs from v2 to v1 and D_b from v1 to v2; every face adds three edges"""
        s, g = generated
        _, labeling, matching, types, d_r, d_b, _, _ = construct(g, s)
        for d, source, sink in ((d_r, g.v2, g.v1), (d_b, g.v1, g.v2)):
            self.assertTrue(nx.is_directed_acyclic_graph(d.digraph))
            self.assertEqual([v for v in d.digraph if d.digraph.in_degree(v) == 0], [source])
            self.assertEqual([v for v in d.digraph if d.digraph.out_degree(v) == 0], [sink])
            self.assertEqual(d.digraph.number_of_edges(), g.edge_count + 3 * len(g.inner_faces))
        self.assertTrue(check_types(g, labeling, matching, types))
        self.assertTrue(check_face_paths(g, labeling, matching, types, d_r, d_b))
        self.assertTrue(check_sink_edges(d_r, d_b, labeling, types))


class TestShapes(unittest.TestCase):
    """Test cases for coordinates and L-shapes"""

    def test_k3_shapes(self):
        """K3 on the 3x3 grid"""
        *_, rep = construct(k3())
        self.assertEqual([(s.bend, s.h_end, s.v_end) for _, s in sorted(rep.shapes.items())], [
            ((3, 1), (4, 1), (3, 4)),
            ((1, 3), (3, 3), (1, 4)),
            ((2, 2), (3, 2), (2, 3)),
        ])

    def test_k3v4_shapes(self):
        """Hand-computed coordinates and shapes of K3+v4"""
        *_, coords, rep = construct(k3v4())
        self.assertEqual(coords, {1: (4, 1), 2: (1, 4), 3: (2, 2), 4: (3, 3)})
        self.assertEqual(rep.shapes[3].h_end, (4, 2))
        self.assertEqual(rep.shapes[3].v_end, (2, 4))
        self.assertEqual(rep.shapes[4].h_end, (4, 3))
        self.assertEqual(rep.shapes[4].v_end, (3, 2))
        self.assertEqual(rep.shapes[1].v_end, (4, 5))
        self.assertEqual(rep.shapes[2].h_end, (4, 4))
        self.assertEqual(shape_type(rep.shapes[4]), 'IV')
        self.assertEqual([c.edge for c in rep.contacts], [(3, 1), (4, 1), (3, 2), (4, 3), (2, 1)])
        self.assertEqual(LContactRepresentation.from_dict(rep.to_dict()).to_dict(), rep.to_dict())

    def test_stats(self):
        """Extent and type counts of the K3 representation"""
        *_, rep = construct(k3())
        stats = representation_stats(rep)
        self.assertEqual(stats['types'], {'I': 3, 'II': 0, 'III': 0, 'IV': 0})
        self.assertEqual((stats['width'], stats['height']), (3, 3))
        self.assertEqual(stats['contacts'], 3)
        self.assertEqual(stats['total_leg_length'], 2 + 4 + 3)

    @given(henneberg_graphs(max_n=40))
    @settings(max_examples=50, deadline=None)
    def test_grid_bound(self, generated):
        """Bends use every row and column of the n x n grid exactly once"""
        s, g = generated
        *_, coords, rep = construct(g, s)
        self.assertEqual(sorted(x for x, _ in coords.values()), list(range(1, g.n + 1)))
        self.assertEqual(sorted(y for _, y in coords.values()), list(range(1, g.n + 1)))
        for v, shape in rep.shapes.items():
            if not g.is_special(v):
                self.assertEqual(shape_type(shape), shape.type)
        self.assertEqual(Counter(c.edge for c in rep.contacts).most_common(1)[0][1], 1)
        self.assertEqual(len(rep.contacts), g.edge_count)


if __name__ == '__main__':
    unittest.main()
