import unittest
import sys
import os

# Ensure parent directory is in path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from gridSets import (GridError, CombType, GridPoint, ZeroSet, FULL_COLUMN, all_zero_sets, comb_type, count_sets,
                      count_types, enumerate_minimal, format_zero_set, free_columns, is_minimal, is_minimal_type,
                      make_params, minimal_types, nonminimal_witness, parse_zero_set, relabel, representative,
                      slices, zero_profile)


class TestGridParams(unittest.TestCase):
    def test_ranges(self):
        p = make_params(4, 2, 6, 4)
        self.assertEqual(p.label(), "d=4 k1=2 k2=6 t=4")
        for bad in ((4, 2, 3, 4), (4, 1, 6, 4), (3, 2, 6, 4), (4, 2, 6, 1)):
            with self.assertRaises(GridError):
                make_params(*bad)


class TestSlicesAndProfiles(unittest.TestCase):
    def setUp(self):
        self.p = make_params(4, 2, 5, 4)
        self.s = parse_zero_set("1,1;2,2", self.p)

    def test_zero_profile(self):
        z, nz = zero_profile(self.s, 1)
        self.assertEqual(z, {1})
        self.assertEqual(nz, {2, 3, 4, 5})

    def test_free_columns(self):
        expected = {GridPoint(r, c) for r in (1, 2) for c in (3, 4, 5)}
        self.assertEqual(free_columns(self.s), expected)

    def test_slices(self):
        self.assertEqual(len(slices(self.p, "row", 2)), 5)
        self.assertEqual(slices(self.p, "col", 3), {GridPoint(1, 3), GridPoint(2, 3)})
        with self.assertRaises(GridError):
            slices(self.p, "row", 3)
        with self.assertRaises(GridError):
            slices(self.p, "diag", 1)

    def test_parse_and_format(self):
        self.assertEqual(format_zero_set(self.s), "1,1;2,2")
        with self.assertRaises(GridError):
            parse_zero_set("1,9", self.p)
        with self.assertRaises(GridError):
            parse_zero_set("1;2", self.p)
        self.assertEqual(len(parse_zero_set("", self.p)), 0)


class TestMinimality(unittest.TestCase):
    def test_comb_type(self):
        p = make_params(4, 2, 6, 4)
        self.assertEqual(comb_type(parse_zero_set("1,1;1,2;2,5;2,6", p)), CombType(2, 2))
        self.assertEqual(comb_type(parse_zero_set("1,3;2,3", p)), FULL_COLUMN)

    def test_minimal_examples(self):
        p6 = make_params(4, 2, 6, 4)
        self.assertTrue(is_minimal(parse_zero_set("1,1;2,2;2,3", p6)))
        p5 = make_params(4, 2, 5, 4)
        s = parse_zero_set("1,1;1,2", p5)
        self.assertFalse(is_minimal(s))
        self.assertIn("empty", nonminimal_witness(s))
        self.assertTrue(is_minimal(ZeroSet([], p5)))

    def test_t_two_needs_all_columns(self):
        p = make_params(2, 2, 4, 2)
        self.assertFalse(is_minimal_type(p, CombType(1, 2)))
        self.assertTrue(is_minimal_type(p, CombType(1, 3)))
        self.assertTrue(is_minimal_type(p, CombType(2, 2)))

    def test_example_counts(self):
        p = make_params(4, 2, 6, 4)
        self.assertEqual(count_types(p), 7)
        self.assertEqual(len(minimal_types(p)), 7)
        self.assertEqual(minimal_types(p)[0], CombType(0, 0))
        expected = {(1, 1): 30, (2, 2): 90, (3, 3): 20, (1, 2): 120, (1, 3): 120, (2, 3): 120}
        for c, n in expected.items():
            self.assertEqual(count_sets(p, CombType(*c)), n)
        with self.assertRaises(GridError):
            count_sets(p, CombType(1, 4))

    def test_enumeration_total(self):
        groups = enumerate_minimal(make_params(4, 2, 6, 4))
        self.assertEqual(sum(len(g) for g in groups.values()), 501)

    def test_formulas_match_enumeration(self):
        for k2 in range(2, 8):
            for t in range(2, k2 + 1):
                p = make_params(t, 2, k2, t)
                groups = enumerate_minimal(p)
                self.assertEqual(count_types(p), len(groups), p.label())
                for c, sets in groups.items():
                    self.assertEqual(count_sets(p, c), len(sets), (p.label(), c))

    def test_enumeration_matches_brute_force(self):
        for k2, t in ((3, 2), (4, 3), (5, 4)):
            p = make_params(t, 2, k2, t)
            brute = sorted(format_zero_set(s) for s in all_zero_sets(p) if is_minimal(s))
            fast = sorted(format_zero_set(s) for g in enumerate_minimal(p).values() for s in g)
            self.assertEqual(brute, fast)

    def test_enumeration_guard(self):
        with self.assertRaises(GridError):
            enumerate_minimal(make_params(4, 2, 13, 4))

    def test_representative_and_relabel(self):
        p = make_params(4, 2, 6, 4)
        rep = representative(CombType(2, 2), p)
        self.assertEqual(format_zero_set(rep), "1,1;1,2;2,5;2,6")
        s = parse_zero_set("1,2;2,1;2,4", p)
        self.assertEqual(relabel(s).apply(s), representative(comb_type(s), p))
        swapped = parse_zero_set("1,3;1,6;2,2", p)
        r = relabel(swapped)
        self.assertTrue(r.row_swap)
        self.assertEqual(r.apply(swapped), representative(CombType(1, 2), p))


if __name__ == '__main__':
    unittest.main()
