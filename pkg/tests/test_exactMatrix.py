from fractions import Fraction
import unittest
import sys
import os

# Ensure parent directory is in path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from exactMatrix import (MatrixError, determinant, identity, inverse, matmul, random_invertible, random_rational,
                         rank, rng_for, to_matrix)


class TestExactMatrix(unittest.TestCase):
    def test_rank(self):
        self.assertEqual(rank(to_matrix([[1, 2], [2, 4]])), 1)
        self.assertEqual(rank(to_matrix([[0, 1, 2], [0, 2, 5], [0, 0, 0]])), 2)
        self.assertEqual(rank([[Fraction(1, 3), Fraction(1, 2)], [Fraction(2, 3), 1]]), 1)
        self.assertEqual(rank([]), 0)

    def test_determinant_and_inverse(self):
        a = to_matrix([[1, 2], [3, 4]])
        self.assertEqual(determinant(a), -2)
        self.assertEqual(matmul(a, inverse(a)), identity(2))
        with self.assertRaises(MatrixError):
            inverse(to_matrix([[1, 2], [2, 4]]))
        with self.assertRaises(MatrixError):
            matmul(a, to_matrix([[1, 2, 3]]))

    def test_seeded_randoms(self):
        rng_a, rng_b = rng_for(7, 3), rng_for(7, 3)
        first = [random_rational(rng_a) for _ in range(5)]
        again = [random_rational(rng_b) for _ in range(5)]
        self.assertEqual(first, again)
        for q in first:
            self.assertLessEqual(abs(q.numerator), 9)
            self.assertLessEqual(q.denominator, 9)
        m = random_invertible(rng_for(0, 0), 3)
        self.assertNotEqual(determinant(m), 0)


if __name__ == '__main__':
    unittest.main()
