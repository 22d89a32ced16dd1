from unittest.mock import patch
from pathlib import Path
from io import StringIO
import tempfile
import unittest
import sys
import os
import json

# Ensure the parent directory is in sys.path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from cliIdealLab import EXIT_BUDGET, EXIT_FAIL, EXIT_PASS, build_parser, comb_type_arg, main

GOLDEN = Path(__file__).parent / "golden" / "example_closure.txt"


def run_cli(*argv):
    """Run main() and return (exit code, stdout text)."""
    with patch('sys.stdout', new_callable=StringIO) as out, patch('sys.stderr', new_callable=StringIO):
        code = main(list(argv))
    return code, out.getvalue()


class TestParser(unittest.TestCase):
    def test_type_argument(self):
        self.assertEqual(tuple(comb_type_arg("3,2")), (2, 3))
        for bad in ("1", "a,b", "-1,2"):
            with self.assertRaises(Exception):
                comb_type_arg(bad)

    def test_defaults(self):
        args = build_parser().parse_args(["minimal", "--k2", "6", "--t", "4"])
        self.assertIsNone(args.d)
        self.assertEqual(args.k1, 2)
        self.assertFalse(args.list)

    def test_missing_required_flag(self):
        with patch('sys.stderr', new_callable=StringIO):
            with self.assertRaises(SystemExit) as ctx:
                build_parser().parse_args(["minimal", "--t", "4"])
        self.assertEqual(ctx.exception.code, 2)


class TestCommands(unittest.TestCase):
    def test_minimal(self):
        code, out = run_cli("minimal", "--d", "4", "--k2", "6", "--t", "4")
        self.assertEqual(code, EXIT_PASS)
        data = json.loads(out)
        self.assertEqual(data["schema"], "1")
        self.assertEqual(data["status"], "pass")
        self.assertEqual(data["total_sets"], 501)
        self.assertEqual(data["count_types_formula"], 7)
        self.assertEqual(data["params"], {"d": 4, "k1": 2, "k2": 6, "t": 4})

    def test_hypergraph_against_golden(self):
        code, out = run_cli("hypergraph", "--k2", "5", "--t", "4", "--zeros", "1,1;2,2", "--golden", str(GOLDEN))
        self.assertEqual(code, EXIT_PASS)
        data = json.loads(out)
        self.assertEqual(len(data["edges"]), 27)
        self.assertEqual(len(data["closure_added"]), 14)
        self.assertEqual(data["golden_only_ours"], [])
        self.assertEqual(data["golden_only_file"], [])

    def test_hypergraph_golden_mismatch_fails(self):
        code, out = run_cli("hypergraph", "--k2", "5", "--t", "4", "--zeros", "1,1", "--golden", str(GOLDEN))
        self.assertEqual(code, EXIT_FAIL)
        self.assertEqual(json.loads(out)["status"], "fail")

    def test_write_golden(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "closure.txt"
            index = Path(tmp) / "index.json"
            code, _ = run_cli("hypergraph", "--k2", "5", "--t", "4", "--zeros", "2,2;1,1",
                              "--write-golden", str(target), "--golden-index", str(index))
            self.assertEqual(code, EXIT_PASS)
            self.assertEqual(target.read_text(encoding="utf-8"), GOLDEN.read_text(encoding="utf-8"))
            entries = json.loads(index.read_text(encoding="utf-8"))
            self.assertEqual([e["name"] for e in entries], ["closure"])

    def test_golden_by_index_name(self):
        with tempfile.TemporaryDirectory() as tmp:
            index = Path(tmp) / "index.json"
            run_cli("hypergraph", "--k2", "5", "--t", "4", "--zeros", "1,1;2,2",
                    "--write-golden", str(Path(tmp) / "closure.txt"), "--golden-index", str(index))
            code, out = run_cli("hypergraph", "--k2", "5", "--t", "4", "--zeros", "1,1;2,2",
                                "--golden", "closure", "--golden-index", str(index))
            self.assertEqual(code, EXIT_PASS)
            self.assertEqual(json.loads(out)["golden_only_file"], [])
            code, _ = run_cli("hypergraph", "--k2", "5", "--t", "4", "--zeros", "1,1",
                              "--golden", "closure", "--golden-index", str(index))
            self.assertEqual(code, EXIT_FAIL)
            # recorded for another grid
            code, _ = run_cli("hypergraph", "--k2", "6", "--t", "4", "--zeros", "1,1",
                              "--golden", "closure", "--golden-index", str(index))
            self.assertEqual(code, EXIT_BUDGET)
            code, _ = run_cli("hypergraph", "--k2", "5", "--t", "4", "--golden", "nope",
                              "--golden-index", str(index))
            self.assertEqual(code, EXIT_BUDGET)

    def test_generators(self):
        code, out = run_cli("generators", "--k2", "2", "--t", "2", "--family", "ic")
        self.assertEqual(code, EXIT_PASS)
        ideals = json.loads(out)["ideals"]
        self.assertEqual(len(ideals), 1)
        self.assertEqual(ideals[0]["name"], "I_C")
        self.assertEqual(len(ideals[0]["generators"]), 4)

    def test_gb_verify(self):
        code, out = run_cli("gb-verify", "--k2", "3", "--t", "2")
        self.assertEqual(code, EXIT_PASS)
        rows = json.loads(out)["details"]["families"]
        self.assertEqual(rows[0]["failing_pairs"], 0)
        self.assertTrue(rows[0]["squarefree_leading_terms"])

    def test_param_check(self):
        code, out = run_cli("param-check", "--k2", "3", "--t", "3", "--branch", "empty", "--samples", "20")
        self.assertEqual(code, EXIT_PASS)
        data = json.loads(out)
        self.assertEqual(data["image_failures"], 0)
        self.assertEqual(data["ranks"][0]["max_rank"], 11)

    def test_table(self):
        code, out = run_cli("table", "--d", "4", "--k2", "6", "--t", "4")
        self.assertEqual(code, EXIT_PASS)
        rows = json.loads(out)["rows"]
        self.assertEqual([r["count"] for r in rows], [1, 30, 120, 120, 90, 120, 20])
        self.assertEqual([r["dim_formula"] for r in rows], [27] + [24] * 6)

    def test_text_output(self):
        code, out = run_cli("minimal", "--k2", "3", "--t", "2", "--output", "text")
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("status: pass", out)

    def test_budget_exit(self):
        code, out = run_cli("decompose", "--k2", "3", "--t", "2", "--budget", "1")
        self.assertEqual(code, EXIT_BUDGET)
        self.assertEqual(json.loads(out)["status"], "budget")


class TestInputErrors(unittest.TestCase):
    def test_invalid_params(self):
        code, out = run_cli("minimal", "--k2", "4", "--t", "5")
        self.assertEqual(code, EXIT_BUDGET)
        self.assertEqual(out, "")

    def test_non_minimal_type(self):
        code, _ = run_cli("gb-verify", "--d", "4", "--k2", "6", "--t", "4", "--type", "1,4")
        self.assertEqual(code, EXIT_BUDGET)

    def test_bad_zero_set(self):
        code, _ = run_cli("hypergraph", "--k2", "5", "--t", "4", "--zeros", "3,1")
        self.assertEqual(code, EXIT_BUDGET)

    def test_bad_budget(self):
        code, _ = run_cli("minimal", "--k2", "3", "--t", "2", "--budget", "1,2")
        self.assertEqual(code, EXIT_BUDGET)


class TestSaveSettings(unittest.TestCase):
    @patch('cliIdealLab.save_settings')
    def test_save_settings_flag(self, mock_save):
        code, _ = run_cli("minimal", "--k2", "3", "--t", "2", "--seed", "9", "--save-settings")
        self.assertEqual(code, EXIT_PASS)
        mock_save.assert_called_once()
        saved = mock_save.call_args[0][0]
        self.assertEqual(saved["seed"], 9)


if __name__ == '__main__':
    unittest.main()
