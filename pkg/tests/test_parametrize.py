import unittest
import sys
import os

# Ensure parent directory is in path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from exactMatrix import matmul, rng_for, to_matrix
from gridSets import CombType, make_params, minimal_types, representative
from idealFactory import build_DA, build_FJS, build_F_empty, build_extra_minors, hat_columns
from parametrize import (EmptyParams, ParametrizeError, count_fiber_failures, count_image_failures, expected_rank,
                         fiber_dimension, image_in_variety, jacobian_rank, parameter_count, phi, random_params)


def zero_set_ideal(p, c):
    s = representative(c, p)
    return build_FJS(s).extend(build_extra_minors(p, hat_columns(s), p.t + 1))


class TestPhi(unittest.TestCase):
    def test_small_empty_map(self):
        p = make_params(2, 2, 2, 2)
        point = EmptyParams(M=to_matrix([[1], [2]]), N=to_matrix([[3, 4]]), A=to_matrix([[5], [6]]))
        self.assertEqual(phi(point, p), to_matrix([[3, 15, 4, 24], [6, 30, 8, 48]]))

    def test_empty_map_is_MN_times_DA(self):
        for params in ((3, 2, 3, 3), (4, 3, 3, 3), (4, 2, 6, 4)):
            p = make_params(*params)
            for trial in range(3):
                point = random_params(p, rng_for(7, trial))
                self.assertEqual(phi(point, p), matmul(matmul(point.M, point.N), build_DA(point.A, p.k1)), params)

    def test_zero_columns_at_S(self):
        p = make_params(3, 2, 4, 3)
        c = CombType(1, 2)
        image = phi(random_params(p, rng_for(3), c), p, c)
        self.assertEqual(len(image), 3)
        self.assertEqual(len(image[0]), 8)
        for j, l in representative(c, p).points:
            col = (l - 1) * 2 + (j - 1)
            self.assertTrue(all(row[col] == 0 for row in image))

    def test_shapes_and_hypotheses(self):
        p = make_params(2, 2, 2, 2)
        bad = EmptyParams(M=to_matrix([[1, 2], [3, 4]]), N=to_matrix([[3, 4]]), A=to_matrix([[5], [6]]))
        with self.assertRaises(ParametrizeError):
            phi(bad, p)
        q = make_params(3, 2, 4, 3)
        point = random_params(q, rng_for(0), CombType(1, 1))
        with self.assertRaises(ParametrizeError):
            phi(point, q)
        with self.assertRaises(ParametrizeError):
            random_params(make_params(3, 3, 3, 3), rng_for(0), CombType(1, 1))

    def test_seeded_points_repeat(self):
        p = make_params(3, 2, 3, 3)
        self.assertEqual(random_params(p, rng_for(5, 1)), random_params(p, rng_for(5, 1)))


class TestImageMembership(unittest.TestCase):
    def test_empty_map(self):
        for params in ((3, 2, 3, 3), (4, 3, 3, 3)):
            p = make_params(*params)
            self.assertEqual(count_image_failures(p, build_F_empty(p), 200, 0), 0, params)

    def test_zero_set_map(self):
        p = make_params(3, 2, 4, 3)
        for c in minimal_types(p)[1:]:
            self.assertEqual(count_image_failures(p, zero_set_ideal(p, c), 200, 0, c), 0, c)

    def test_point_off_the_variety(self):
        p = make_params(3, 2, 3, 3)
        point = to_matrix([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0]])
        ok, witness = image_in_variety(point, build_F_empty(p))
        self.assertFalse(ok)
        self.assertIsNotNone(witness)


class TestJacobianRank(unittest.TestCase):
    def test_empty_map_ranks(self):
        p = make_params(3, 2, 3, 3)
        self.assertEqual(jacobian_rank("empty", p, trials=3), 11)
        self.assertEqual(expected_rank("empty", p, CombType(0, 0)), 11)
        self.assertLessEqual(11, parameter_count("empty", p, CombType(0, 0)) - fiber_dimension("empty", p))

    def test_example_rank(self):
        p = make_params(4, 2, 6, 4)
        self.assertEqual(jacobian_rank("empty", p, trials=3), 27)

    def test_zero_set_map_ranks(self):
        p = make_params(3, 2, 4, 3)
        for c in minimal_types(p)[1:]:
            got = jacobian_rank("zero-set", p, c, trials=3)
            self.assertEqual(got, 12, c)
            self.assertEqual(got, expected_rank("zero-set", p, c))
            self.assertLessEqual(got, parameter_count("zero-set", p, c) - fiber_dimension("zero-set", p))

    def test_refusals(self):
        p = make_params(3, 2, 4, 3)
        with self.assertRaises(ParametrizeError):
            jacobian_rank("other", p)
        with self.assertRaises(ParametrizeError):
            jacobian_rank("empty", p, trials=0)
        with self.assertRaises(ParametrizeError):
            jacobian_rank("zero-set", p, CombType(0, 0))
        with self.assertRaises(ParametrizeError):
            jacobian_rank("zero-set", make_params(4, 2, 4, 3), CombType(1, 1))


class TestFibers(unittest.TestCase):
    def test_empty_map_action(self):
        for params in ((3, 2, 3, 3), (4, 3, 3, 3)):
            p = make_params(*params)
            self.assertEqual(count_fiber_failures("empty", p, CombType(0, 0), 50, 0), 0, params)

    def test_block_triangular_action(self):
        p = make_params(3, 2, 4, 3)
        for c in minimal_types(p)[1:]:
            self.assertEqual(count_fiber_failures("zero-set", p, c, 50, 0), 0, c)


if __name__ == '__main__':
    unittest.main()
