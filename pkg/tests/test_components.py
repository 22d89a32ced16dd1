from unittest.mock import patch
from pathlib import Path
from io import StringIO
import tempfile
import unittest
import sys
import os
import json

# Ensure parent directory is in path
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from rich.console import Console

from gridSets import make_params, parse_zero_set
from hypergraph import build_HS, closure
from labSettings import (BUDGET_ENV, DEFAULTS, BudgetCaps, LabSettingsError, budget_from_settings, load_settings,
                         parse_budget, resolve_budget, save_settings)
from labReports import DimRow, DimsReport, LabReport, combine_status, report_to_json
from jobRunner import JobRunnerError, run_jobs
from goldenManager import GoldenManager, GoldenManagerError
from reportRenderer import ReportRenderer


class TestLabSettings(unittest.TestCase):
    def test_load_save_round_trip(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "settings.json"
            self.assertEqual(load_settings(path), DEFAULTS)
            save_settings({**DEFAULTS, "seed": 42}, path)
            self.assertEqual(load_settings(path)["seed"], 42)
            self.assertEqual(load_settings(path)["threads"], DEFAULTS["threads"])
            self.assertTrue(path.read_text(encoding="utf-8").endswith("\n"))

    def test_corrupt_file_falls_back(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "settings.json"
            path.write_text("{not json", encoding="utf-8")
            self.assertEqual(load_settings(path), DEFAULTS)
            path.write_text("[1, 2]", encoding="utf-8")
            self.assertEqual(load_settings(path), DEFAULTS)
            self.assertIsNot(load_settings(path), DEFAULTS)

    def test_parse_budget(self):
        self.assertEqual(parse_budget("5"), BudgetCaps(pairs=5, reductions=5, nodes=5))
        base = BudgetCaps(pairs=1, reductions=2, nodes=3)
        self.assertEqual(parse_budget("10,,7", base), BudgetCaps(pairs=10, reductions=2, nodes=7))
        self.assertEqual(parse_budget("", base), base)
        for bad in ("0", "1,2", "a,b,c", "-3"):
            with self.assertRaises(LabSettingsError):
                parse_budget(bad)

    def test_budget_precedence(self):
        with patch.dict(os.environ, {BUDGET_ENV: "100"}):
            self.assertEqual(resolve_budget(DEFAULTS).pairs, 100)
            got = resolve_budget(DEFAULTS, "50,,")
            self.assertEqual((got.pairs, got.reductions, got.nodes), (50, 100, 100))
        with patch.dict(os.environ):
            os.environ.pop(BUDGET_ENV, None)
            self.assertEqual(resolve_budget(DEFAULTS), budget_from_settings(DEFAULTS))
        with self.assertRaises(LabSettingsError):
            budget_from_settings({**DEFAULTS, "budget_nodes": "lots"})


class TestLabReports(unittest.TestCase):
    def test_json_is_deterministic(self):
        report = LabReport(check="decompose", params=make_params(2, 2, 2, 2))
        report.details["b"] = 1
        report.details["a"] = 2
        text = report_to_json(report)
        self.assertTrue(text.endswith("}\n"))
        data = json.loads(text)
        self.assertEqual(data["schema"], "1")
        self.assertEqual(list(data), sorted(data))
        self.assertEqual(list(data["details"]), ["a", "b"])
        self.assertEqual(text, report_to_json(report))

    def test_status_transitions(self):
        report = LabReport(check="x")
        self.assertTrue(report.passed)
        report.fail("first")
        report.out_of_budget("second")
        report.fail("third")
        self.assertEqual(report.status, "budget")
        self.assertEqual(report.witnesses, ["first", "second", "third"])

    def test_combine_status(self):
        self.assertEqual(combine_status([]), "pass")
        self.assertEqual(combine_status(["pass", "fail"]), "fail")
        self.assertEqual(combine_status(["fail", "budget", "pass"]), "budget")


class TestJobRunner(unittest.TestCase):
    def test_results_keep_submission_order(self):
        jobs = [(lambda i=i: i * i) for i in range(8)]
        self.assertEqual(run_jobs(jobs, threads=3), [i * i for i in range(8)])
        self.assertEqual(run_jobs(jobs), [i * i for i in range(8)])
        self.assertEqual(run_jobs([], threads=4), [])

    def test_errors(self):
        with self.assertRaises(JobRunnerError):
            run_jobs([lambda: 1], threads=0)

        def boom():
            raise ValueError("boom")

        with self.assertRaises(ValueError):
            run_jobs([lambda: 1, boom], threads=2)


class TestGoldenManager(unittest.TestCase):
    def setUp(self):
        self.p = make_params(4, 2, 5, 4)
        self.h = closure(build_HS(parse_zero_set("1,1;2,2", self.p)))

    def test_save_load_compare(self):
        with tempfile.TemporaryDirectory() as tmp:
            gm = GoldenManager(Path(tmp) / "index.json")
            path = gm.save(Path(tmp) / "golden" / "closure.txt", self.h, name="closure")
            self.assertEqual(gm.load(path, self.p), self.h)
            self.assertEqual(gm.compare(self.h, path), ([], []))
            ours, theirs = gm.compare(build_HS(parse_zero_set("1,1;2,2", self.p)), path)
            self.assertEqual(ours, [])
            self.assertEqual(len(theirs), 14)
            gm.save(path, self.h)
            index = json.loads((Path(tmp) / "index.json").read_text(encoding="utf-8"))
            self.assertEqual(len(index), 1)
            self.assertEqual(index[0]["edges"], 41)
            self.assertEqual(GoldenManager(Path(tmp) / "index.json").index, index)

    def test_resolve(self):
        with tempfile.TemporaryDirectory() as tmp:
            gm = GoldenManager(Path(tmp) / "index.json")
            path = gm.save(Path(tmp) / "closure.txt", self.h, name="example")
            self.assertEqual(gm.resolve("example", self.p), path)
            self.assertEqual(gm.resolve(str(path)), path)
            with self.assertRaises(GoldenManagerError):
                gm.resolve("example", make_params(4, 2, 6, 4))
            with self.assertRaises(GoldenManagerError):
                gm.resolve("other")

    def test_missing_and_bad_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            gm = GoldenManager(None)
            with self.assertRaises(GoldenManagerError):
                gm.load(Path(tmp) / "nope.txt", self.p)
            bad = Path(tmp) / "bad.txt"
            bad.write_text("{(9,9)}\n", encoding="utf-8")
            with self.assertRaises(GoldenManagerError):
                gm.load(bad, self.p)
            broken_index = Path(tmp) / "index.json"
            broken_index.write_text("[", encoding="utf-8")
            self.assertEqual(GoldenManager(broken_index).index, [])


class TestReportRenderer(unittest.TestCase):
    def test_markdown_table(self):
        rows = [{"type": [1, 1], "count": 30, "degree": None}]
        self.assertEqual(ReportRenderer.markdown_table(rows),
                         "| type | count | degree |\n|---|---|---|\n| (1,1) | 30 | - |\n")

    def test_render(self):
        report = DimsReport(params=make_params(2, 2, 2, 2), ambient=8)
        report.rows.append(DimRow(type=[0, 0], dim_formula=5, dim_initial=5))
        report.fail("type (0,0): something")
        out = StringIO()
        renderer = ReportRenderer(report, Console(file=out, width=120))
        self.assertEqual(list(renderer.tables()), ["rows"])
        self.assertEqual(renderer.scalars(), {"ambient": 8})
        renderer.render()
        text = out.getvalue()
        self.assertIn("status: fail", text)
        self.assertIn("d=2 k1=2 k2=2 t=2", text)
        self.assertIn("type (0,0): something", text)


if __name__ == '__main__':
    unittest.main()
