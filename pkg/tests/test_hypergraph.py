from itertools import combinations
from pathlib import Path
import unittest
import sys
import os

# Ensure parent directory is in path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from gridSets import GridPoint, make_params, parse_zero_set
from hypergraph import (Hypergraph, HypergraphError, build_HS, closure, dump_hypergraph, edge_diff, format_edge,
                        load_hypergraph)

GOLDEN = Path(__file__).parent / "golden" / "example_closure.txt"


class TestBuildHS(unittest.TestCase):
    def setUp(self):
        self.p = make_params(4, 2, 5, 4)
        self.s = parse_zero_set("1,1;2,2", self.p)

    def test_four_families(self):
        h = build_HS(self.s)
        sizes = {}
        for e in h.edges:
            sizes[len(e)] = sizes.get(len(e), 0) + 1
        # 2 loops, 3 vertical pairs, 20 three-subsets, 2 row edges
        self.assertEqual(sizes, {1: 2, 2: 3, 3: 20, 4: 2})
        self.assertIn([(1, 1)], h)
        self.assertIn([(1, 4), (2, 4)], h)
        self.assertIn([(1, 2), (1, 3), (1, 4), (1, 5)], h)
        self.assertIn([(2, 1), (2, 3), (2, 4), (2, 5)], h)
        self.assertNotIn([(1, 1), (2, 1)], h)

    def test_empty_set_has_no_lower_family(self):
        h = build_HS(parse_zero_set("", self.p))
        self.assertEqual({len(e) for e in h.edges}, {2, 4})

    def test_three_row_grid(self):
        p = make_params(4, 3, 5, 4)
        h = build_HS(parse_zero_set("1,5;2,4;3,2", p))
        self.assertIn([(1, 1), (2, 1)], h)
        self.assertIn([(1, 1), (2, 1), (1, 2)], h)
        self.assertGreaterEqual(len(closure(h)), len(h))


class TestClosure(unittest.TestCase):
    def setUp(self):
        self.p = make_params(4, 2, 5, 4)
        self.h = build_HS(parse_zero_set("1,1;2,2", self.p))

    def test_example_adds_transversal_row_edges(self):
        closed = closure(self.h)
        added, missing = edge_diff(closed, self.h)
        self.assertEqual(missing, [])
        self.assertEqual(len(added), 14)
        for e in added:
            self.assertEqual(len(e), 4)
            self.assertTrue(GridPoint(1, 2) in e or GridPoint(2, 1) in e)
            self.assertEqual({pt.col for pt in e} - {1, 2}, {3, 4, 5})
        self.assertIn("{(1,2),(1,3),(1,5),(2,4)}", [format_edge(e) for e in added])

    def test_added_edges_fill_out_the_two_transversal_families(self):
        core = [(r, c) for r in (1, 2) for c in (3, 4, 5)]
        families = {frozenset(GridPoint(*pt) for pt in e)
                    for special in ((1, 2), (2, 1)) for e in combinations([special] + core, 4)}
        self.assertEqual(len(families), 55)
        closed = closure(self.h)
        added, _ = edge_diff(closed, self.h)
        self.assertTrue(set(added) <= families)
        self.assertTrue({e for e in closed.edges if len(e) == 4} <= families)
        # the rest of each family already contains an edge of H(S)
        rest = [e for e in families if e not in closed]
        self.assertEqual(len(rest), 39)
        for e in rest:
            self.assertTrue(any(f < e for f in self.h.edges), format_edge(e))

    def test_closure_is_idempotent_and_monotone(self):
        closed = closure(self.h)
        self.assertTrue(self.h <= closed)
        self.assertEqual(closure(closed), closed)

    def test_substitution_rule(self):
        p = make_params(3, 2, 3, 3)
        h = Hypergraph([[(1, 1), (2, 1)], [(1, 1), (1, 2)]], p)
        closed = closure(h)
        self.assertIn([(2, 1), (1, 2)], closed)
        self.assertEqual(len(closed), 3)

    def test_matches_golden_file(self):
        golden = load_hypergraph(GOLDEN.read_text(encoding="utf-8"), self.p)
        self.assertEqual(edge_diff(closure(self.h), golden), ([], []))
        self.assertEqual(dump_hypergraph(golden), GOLDEN.read_text(encoding="utf-8"))


class TestSerialization(unittest.TestCase):
    def test_bad_edges(self):
        p = make_params(2, 2, 2, 2)
        with self.assertRaises(HypergraphError):
            Hypergraph([[]], p)
        with self.assertRaises(HypergraphError):
            Hypergraph([[(1, 3)]], p)
        with self.assertRaises(HypergraphError):
            load_hypergraph("{(1,1)}\n(1,2)\n", p)


if __name__ == '__main__':
    unittest.main()
