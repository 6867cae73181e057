"""
Unit tests for validator module
"""

import unittest
import os
import sys

from hypothesis import given, settings

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from src.lcontact import LContactRepresentation, LShape
from src.pipeline import run_pipeline
from src.plane_graph import canonical_cycle
from src.validator import (ContactScan, contact_rotation, corner_probe, is_well_formed, matched_faces,
                           validate_representation)
from tests.sample_graphs import henneberg_graphs, k3, k3v4, k4


def rep_from_shapes(n, shapes):
    """Representation from {v: (bend, h_end, v_end)}"""
    return LContactRepresentation.from_dict({
        'n': n,
        'shapes': [{'v': v, 'bend': b, 'h_end': h, 'v_end': e} for v, (b, h, e) in shapes.items()],
    })


K3_SHAPES = {
    1: ((3, 1), (4, 1), (3, 4)),
    2: ((1, 3), (3, 3), (1, 4)),
    3: ((2, 2), (3, 2), (2, 3)),
}

K3V4_SHAPES = {
    1: ((4, 1), (5, 1), (4, 5)),
    2: ((1, 4), (4, 4), (1, 5)),
    3: ((2, 2), (4, 2), (2, 4)),
    4: ((3, 3), (4, 3), (3, 2)),
}

# K4 drawn with every contact and face region right; face (1, 3, 4) gets two right angles
K4_SHAPES = {
    1: ((6, 0), (0, 0), (6, 9)),
    2: ((1, 8), (6, 8), (1, 7)),
    3: ((0, 7), (4, 7), (0, -1)),
    4: ((4, 2), (6, 2), (4, 8)),
}

# K3 scaled by two: proper except for the grid bound
K3_SCALED = {
    1: ((6, 2), (8, 2), (6, 8)),
    2: ((2, 6), (6, 6), (2, 8)),
    3: ((4, 4), (6, 4), (4, 6)),
}


def with_shape(shapes, v, shape):
    changed = dict(shapes)
    changed[v] = shape
    return changed


class TestValidRepresentations(unittest.TestCase):
    """Test cases for representations that pass every clause"""

    def test_k3(self):
        """K3 on the 3x3 grid, three free endpoints"""
        verdict = validate_representation(k3(), rep_from_shapes(3, K3_SHAPES))
        self.assertTrue(verdict, verdict.message)
        self.assertEqual(verdict.notes, ['free endpoints: 3 (maximal)'])

    def test_k3v4(self):
        """Hand-drawn K3+v4 with a type IV shape"""
        rep = rep_from_shapes(4, K3V4_SHAPES)
        verdict = validate_representation(k3v4(), rep)
        self.assertTrue(verdict, verdict.message)
        self.assertIn('(maximal)', verdict.notes[0])
        self.assertEqual(matched_faces(k3v4(), rep), {1: None, 2: None, 3: 5, 4: 7})

    def test_contacts_and_rotation(self):
        """Contacts carry their point and owning endpoint; their order follows the rotation"""
        rep = rep_from_shapes(4, K3V4_SHAPES)
        scan = ContactScan(rep).run()
        self.assertEqual(scan.contacts[(3, 4)], ((3, 2), 4))
        self.assertEqual(scan.contacts[(1, 2)], ((4, 4), 2))
        self.assertEqual(scan.free_endpoints, 3)
        self.assertEqual(sorted(contact_rotation(rep, scan)[4]), [1, 3])

    def test_corner_probe(self):
        """The probe sits inside the right angle"""
        probe = corner_probe(LShape(4, 'IV', (3, 3), (4, 3), (3, 2)))
        self.assertEqual((probe.x, probe.y), (3.25, 2.75))

    @given(henneberg_graphs(max_n=25))
    @settings(max_examples=30, deadline=None)
    def test_constructed_representations_pass(self, generated):
        """Every representation the pipeline builds passes the audit"""
        s, g = generated
        artifacts = run_pipeline(g, sequence=s)
        self.assertTrue(artifacts.verdict, artifacts.verdict.message)
        self.assertTrue(all(f is not None for v, f in matched_faces(g, artifacts.representation).items()
                            if not g.is_special(v)))


class TestViolations(unittest.TestCase):
    """Test cases naming the first violated clause"""

    def test_missing_shape(self):
        """Every vertex needs a shape"""
        shapes = dict(K3_SHAPES)
        del shapes[3]
        verdict = validate_representation(k3(), rep_from_shapes(3, shapes))
        self.assertEqual((verdict.rule, verdict.witness), ('shapes', [3]))

    def test_degenerate_shape(self):
        """A leg of length zero is not an L"""
        shape = ((2, 2), (2, 2), (2, 3))
        self.assertFalse(is_well_formed(LShape(3, 'I', *shape)))
        verdict = validate_representation(k3(), rep_from_shapes(3, with_shape(K3_SHAPES, 3, shape)))
        self.assertEqual((verdict.rule, verdict.witness), ('shapes', [3]))

    def test_crossing(self):
        """Extending the horizontal leg of 3 through the vertical leg of 1"""
        shapes = with_shape(K3_SCALED, 3, ((4, 4), (7, 4), (4, 6)))
        verdict = validate_representation(k3(), rep_from_shapes(3, shapes))
        self.assertEqual(verdict.rule, 'a')
        self.assertEqual(verdict.witness, [1, 3])

    def test_missing_contact(self):
        """Shortening the horizontal leg of 3 loses edge (1, 3)"""
        shapes = with_shape(K3_SCALED, 3, ((4, 4), (5, 4), (4, 6)))
        verdict = validate_representation(k3(), rep_from_shapes(3, shapes))
        self.assertEqual(verdict.rule, 'b')
        self.assertEqual(verdict.witness, [[1, 3]])

    def test_bend_contact(self):
        """An endpoint touching a bend is not a proper contact"""
        shapes = with_shape(K3_SHAPES, 1, ((3, 2), (4, 2), (3, 4)))
        verdict = validate_representation(k3(), rep_from_shapes(3, shapes))
        self.assertEqual(verdict.rule, 'c')
        self.assertEqual(verdict.witness[:2], [1, 3])

    def test_endpoint_contact(self):
        """Two endpoints meeting is not a proper contact"""
        shapes = with_shape(K3_SHAPES, 1, ((3, 1), (4, 1), (3, 3)))
        verdict = validate_representation(k3(), rep_from_shapes(3, shapes))
        self.assertEqual(verdict.rule, 'c')
        self.assertEqual(verdict.witness, [1, 2, [3, 3], 'end-end'])

    def test_two_right_angles_in_one_face(self):
        """Contacts are right but the inner face holds the corners of 1 and 2"""
        shapes = {
            1: ((6, 0), (4, 0), (6, 8)),
            2: ((0, 6), (6, 6), (0, 4)),
            3: ((4, 4), (-1, 4), (4, -1)),
        }
        verdict = validate_representation(k3(), rep_from_shapes(3, shapes))
        self.assertEqual(verdict.rule, 'f')
        self.assertEqual(verdict.witness, {'face': 4, 'corners': [1, 2]})

    def test_k4_fails_only_on_right_angles(self):
        """Four shapes, three inner faces: contacts, rotations and regions pass, the corner count does not"""
        rep = rep_from_shapes(4, K4_SHAPES)
        scan = ContactScan(rep).run()
        self.assertEqual(sorted(scan.contacts), [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
        self.assertEqual(scan.crossings, [])
        self.assertEqual(scan.bad_contacts, [])
        rotation = contact_rotation(rep, scan)
        for v in k4().vertices:
            self.assertEqual(canonical_cycle(rotation[v]), k4().rotation[v])

        verdict = validate_representation(k4(), rep)
        self.assertEqual(verdict.rule, 'f')
        self.assertEqual(verdict.witness, {'face': 7, 'corners': [1, 3]})
        self.assertEqual(matched_faces(k4(), rep), {1: 7, 2: 8, 3: 7, 4: 5})

    def test_grid_bound(self):
        """A scaled or shifted drawing leaves the n x n grid"""
        verdict = validate_representation(k3(), rep_from_shapes(3, K3_SCALED))
        self.assertEqual((verdict.rule, verdict.witness), ('g', [1, 2, 3]))

        shifted = {v: tuple((x + 10, y + 10) for x, y in shape) for v, shape in K3_SHAPES.items()}
        verdict = validate_representation(k3(), rep_from_shapes(3, shifted))
        self.assertEqual((verdict.rule, verdict.witness), ('g', [1, 2, 3]))


if __name__ == '__main__':
    unittest.main()
