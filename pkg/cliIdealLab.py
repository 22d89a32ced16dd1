from typing import Callable, List, Optional
from rich.console import Console
from pathlib import Path
import argparse
import sys

import argcomplete
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from rationalPoly import PolyError
from exactMatrix import MatrixError
from gridSets import (GridError, GridParams, CombType, count_sets, count_types, enumerate_minimal,
                      format_zero_set, is_minimal_type, make_params, minimal_types, parse_zero_set,
                      representative, nonminimal_witness)
from hypergraph import HypergraphError, build_HS, closure, edge_diff, format_edge
from idealFactory import (IdealFactoryError, build_FJS, build_FS, build_F_empty, build_IC, build_IS,
                          build_extra_minors, hat_columns, presentation_to_dict)
from groebner import (BudgetExceeded, GroebnerError, leading_monomials_squarefree, verify_decomposition,
                      verify_gb, verify_ideal_minimality)
from dimDegree import (DimDegreeError, EXAMPLE_PARAMS, EXAMPLE_TABLE, check_dims, dim_formula,
                       monomial_dim, monomial_dim_degree, representative_initial_ideal)
from parametrize import (ParametrizeError, count_fiber_failures, count_image_failures, expected_rank,
                         jacobian_rank)
from labSettings import BudgetCaps, LabSettingsError, load_settings, resolve_budget, save_settings
from labReports import (GeneratorsReport, HypergraphReport, LabReport, MinimalReport, ParamCheckReport,
                        RankRow, TableReport, TableRow, TypeCount, combine_status, report_to_json)
from reportRenderer import ReportRenderer
from goldenManager import DEFAULT_INDEX_PATH, GoldenManager, GoldenManagerError
from jobRunner import JobRunnerError, run_jobs

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2
INPUT_ERRORS = (GridError, HypergraphError, IdealFactoryError, DimDegreeError, ParametrizeError,
                LabSettingsError, GoldenManagerError, PolyError, MatrixError, JobRunnerError, GroebnerError)

settings = load_settings()


class RunConfig(BaseModel):
    """Everything a command needs, validated before any work starts."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    params: GridParams
    zeros: str = ""
    comb: Optional[CombType] = None
    seed: int = 0
    budget: BudgetCaps = Field(default_factory=BudgetCaps)
    threads: int = Field(1, ge=1)
    output: str = Field("json", pattern="^(json|text)$")
    verbose: bool = False


# ---------------------------------------------------------------------------
# Argument validation helpers.
# ---------------------------------------------------------------------------
def comb_type_arg(text: str) -> CombType:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Type must be 'u,v', got '{text}'") from None
    if u < 0 or v < 0:
        raise argparse.ArgumentTypeError(f"Type entries must be nonnegative, got '{text}'")
    return CombType(min(u, v), max(u, v))


# ---------------------------------------------------------------------------
# Build the CLI argument parser: shared grid flags plus one subcommand per check.
# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    common.add_argument("--d", type=int, default=None, help="Rows of X (defaults to t).", metavar="D")
    common.add_argument("--k1", type=int, default=2, help="Number of grid rows.", metavar="K1")
    common.add_argument("--k2", type=int, required=True, help="Number of grid columns.", metavar="K2")
    common.add_argument("--t", type=int, required=True, help="Minor size on row slices.", metavar="T")
    common.add_argument("--zeros", type=str, default="", help="Zero set as 'r,c;r,c'.", metavar="ZEROS")
    common.add_argument("--type", dest="comb", type=comb_type_arg, default=None,
                        help="Combinatorial type 'u,v'.", metavar="U,V")
    common.add_argument("--seed", type=int, default=settings["seed"], help="Seed for random rational points.")
    common.add_argument("--budget", type=str, default=None,
                        help="N or pairs,reductions,nodes (overrides CI_IDEAL_LAB_BUDGET and settings.json).")
    common.add_argument("--threads", type=int, default=settings["threads"], help="Concurrent independent jobs.")
    common.add_argument("--output", choices=("json", "text"), default=settings["output"], help="Report format.")
    common.add_argument("--verbose", action="store_true", help="Progress messages on stderr.")
    common.add_argument("--save-settings", action="store_true",
                        help="Persist the effective seed, threads and budget to settings.json.")

    parser = argparse.ArgumentParser(
        prog="ci-ideal-lab",
        description="Exact checks for conditional-independence determinantal ideals.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text,
                              formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    hg = add("hypergraph", "Build H(S), close it, and compare with a golden file.")
    hg.add_argument("--golden", type=str, default=None,
                    help="Golden closure to compare against: a file, or a name from the golden index.")
    hg.add_argument("--write-golden", type=Path, default=None,
                    help="Write the closure as a golden file and record it in the golden index.")
    hg.add_argument("--golden-index", type=Path, default=DEFAULT_INDEX_PATH, help="JSON index of golden files.")

    gen = add("generators", "Serialize generator families.")
    gen.add_argument("--family", choices=("ic", "fs", "fjs", "is", "all"), default="all",
                     help="Which family to emit.")
    gen.add_argument("--enlarged", action="store_true", help="Use R_i together with C(S) for the t-minor families.")

    gb = add("gb-verify", "Check that F_empty / F(J_S) satisfy Buchberger's criterion.")
    gb.add_argument("--all-types", action="store_true", help="Check the representative of every minimal type.")

    mn = add("minimal", "Enumerate minimal zero sets and compare with the counting formulas.")
    mn.add_argument("--list", action="store_true", help="Include every minimal zero set in the report.")

    add("decompose", "Verify the decomposition of rad(I_C) on a tiny instance.")
    add("minimality-oracle", "Compare ideal-level minimality with the combinatorial predicate.")

    dm = add("dims", "Compare dimension formulas with initial-ideal dimensions.")
    dm.add_argument("--degree", action="store_true", help="Also count top-dimensional faces.")

    pc = add("param-check", "Image membership, Jacobian ranks and fiber symmetries of the parametrizations.")
    pc.add_argument("--branch", choices=("empty", "zero-set", "both"), default=None,
                    help="Map to check (default: empty, or zero-set when --type is given).")
    pc.add_argument("--samples", type=int, default=settings["samples"], help="Random image points per map.")
    pc.add_argument("--trials", type=int, default=settings["trials"], help="Random points per Jacobian rank.")
    pc.add_argument("--fibers", type=int, default=0, help="Random instances of the fiber symmetry check.")

    tb = add("table", "Counts, dimensions and degrees per minimal type.")
    tb.add_argument("--initial", action="store_true", help="Also compute initial-ideal dimensions.")
    tb.add_argument("--degree", action="store_true", help="Also count degrees (implies --initial).")

    return parser


# ---------------------------------------------------------------------------
# Commands. Each returns a report; nothing here prints.
# ---------------------------------------------------------------------------
def cmd_hypergraph(cfg: RunConfig, args, say: Callable[[str], None]) -> LabReport:
    s = parse_zero_set(cfg.zeros, cfg.params)
    h = build_HS(s)
    closed = closure(h)
    added, missing = edge_diff(closed, h)
    report = HypergraphReport(params=cfg.params, zeros=format_zero_set(s),
                              edges=[format_edge(e) for e in h.sorted_edges()],
                              closure_added=[format_edge(e) for e in added])
    report.details["closure_edges"] = len(closed)
    say(f"H(S) has {len(h)} edges, closure has {len(closed)}")
    manager = GoldenManager(args.golden_index)
    if args.write_golden:
        path = manager.save(args.write_golden, closed)
        report.details["golden_written"] = str(path)
    if args.golden:
        ours, theirs = manager.compare(closed, manager.resolve(args.golden, cfg.params))
        report.golden_only_ours, report.golden_only_file = ours, theirs
        if ours or theirs:
            report.fail(f"closure differs from golden file: {len(ours)} extra, {len(theirs)} missing")
    return report


def cmd_generators(cfg: RunConfig, args, say) -> LabReport:
    p = cfg.params
    s = parse_zero_set(cfg.zeros, p)
    report = GeneratorsReport(params=p)
    family = args.family
    if family in ("ic", "all"):
        report.ideals.append(presentation_to_dict(build_IC(p)))
    if family in ("fs", "all"):
        if p.k1 != 2 and not s.points:
            report.ideals.append(presentation_to_dict(build_F_empty(p)))
        elif p.k1 == 2 or family == "fs":
            report.ideals.append(presentation_to_dict(build_FS(s, enlarged=args.enlarged)))
    if family == "fjs" or (family == "all" and p.k1 == 2 and s.points and nonminimal_witness(s) is None):
        report.ideals.append(presentation_to_dict(build_FJS(s)))
    if family in ("is", "all"):
        report.ideals.append(presentation_to_dict(build_IS(s)))
    say(f"{len(report.ideals)} presentations built")
    return report


def _gb_row(label: str, name: str, gens, budget: BudgetCaps) -> dict:
    row = {"set": label, "family": name, "generators": len(gens)}
    try:
        check = verify_gb(gens, budget=budget)
    except BudgetExceeded as e:
        row.update(status="budget", error=str(e))
        return row
    squarefree = leading_monomials_squarefree(gens)
    row.update(checked_pairs=check.checked, skipped_pairs=check.skipped,
               failing_pairs=len(check.failing_pairs), squarefree_leading_terms=squarefree,
               status="pass" if check.ok and squarefree else "fail")
    return row


def _gb_job(p: GridParams, c: CombType, budget: BudgetCaps):
    def job():
        s = representative(c, p)
        pres = build_FJS(s) if s.points else build_FS(s)
        return _gb_row(f"type ({c.u},{c.v})", pres.name, pres.generators, budget)
    return job


def cmd_gb_verify(cfg: RunConfig, args, say) -> LabReport:
    p = cfg.params
    report = LabReport(check="gb-verify", params=p)
    if args.all_types or cfg.comb is not None:
        if p.k1 != 2:
            raise GridError("representatives of combinatorial types need k1 = 2")
        types = minimal_types(p) if args.all_types else [cfg.comb]
        rows = run_jobs([_gb_job(p, c, cfg.budget) for c in types], cfg.threads)
    else:
        s = parse_zero_set(cfg.zeros, p)
        if s.points:
            pres = build_FJS(s)
        else:
            pres = build_FS(s) if p.k1 == 2 else build_F_empty(p)
        rows = [_gb_row("S=" + (format_zero_set(s) or "{}"), pres.name, pres.generators, cfg.budget)]
    for row in rows:
        if row["status"] == "budget":
            report.out_of_budget(f"{row['set']}: {row['error']}")
        elif row["failing_pairs"]:
            report.fail(f"{row['set']}: {row['failing_pairs']} S-pairs of {row['family']} do not reduce to 0")
        elif not row["squarefree_leading_terms"]:
            report.fail(f"{row['set']}: a leading monomial of {row['family']} is not squarefree")
        say(f"{row['set']}: {row['status']}")
    report.details["families"] = rows
    return report


def cmd_minimal(cfg: RunConfig, args, say) -> LabReport:
    p = cfg.params
    groups = enumerate_minimal(p)
    report = MinimalReport(params=p, count_types_formula=count_types(p), count_types_enumerated=len(groups))
    for c in sorted(groups):
        row = TypeCount(type=list(c), count_formula=count_sets(p, c), count_enumerated=len(groups[c]))
        row.agree = row.count_formula == row.count_enumerated
        if not row.agree:
            report.fail(f"type ({c.u},{c.v}): formula {row.count_formula}, enumeration {row.count_enumerated}")
        report.types.append(row)
    report.total_sets = sum(len(g) for g in groups.values())
    if report.count_types_formula != report.count_types_enumerated:
        report.fail(f"number of types: formula {report.count_types_formula}, enumeration {len(groups)}")
    if args.list:
        report.details["sets"] = {f"{c.u},{c.v}": [format_zero_set(s) for s in groups[c]] for c in sorted(groups)}
    say(f"{report.total_sets} minimal zero sets in {len(groups)} types")
    return report


def cmd_decompose(cfg: RunConfig, args, say) -> LabReport:
    return verify_decomposition(cfg.params, cfg.budget, progress=say)


def cmd_minimality_oracle(cfg: RunConfig, args, say) -> LabReport:
    return verify_ideal_minimality(cfg.params, cfg.budget, progress=say)


def cmd_dims(cfg: RunConfig, args, say) -> LabReport:
    return check_dims(cfg.params, cfg.budget, degree=args.degree, progress=say)


def _rank_job(branch: str, p: GridParams, c: CombType, trials: int, seed: int):
    def job():
        got = jacobian_rank(branch, p, c, trials, seed)
        want = expected_rank(branch, p, c)
        return RankRow(type=list(c), trials=trials, max_rank=got, expected=want, agree=got == want)
    return job


def cmd_param_check(cfg: RunConfig, args, say) -> LabReport:
    p = cfg.params
    branches = ["empty", "zero-set"] if args.branch == "both" else [args.branch or ("zero-set" if cfg.comb else "empty")]
    statuses = []
    reports = []
    for branch in branches:
        report = ParamCheckReport(params=p, branch=branch, samples=args.samples)
        if branch == "empty":
            types = [CombType(0, 0)]
        elif cfg.comb is not None:
            types = [cfg.comb]
        else:
            types = [c for c in minimal_types(p) if tuple(c) != (0, 0)]
        rank_jobs = []
        for c in types:
            if branch == "empty":
                ideal = build_F_empty(p)
                failures = count_image_failures(p, ideal, args.samples, cfg.seed)
            else:
                s = representative(c, p)
                ideal = build_FJS(s).extend(build_extra_minors(p, hat_columns(s), p.t + 1))
                failures = count_image_failures(p, ideal, args.samples, cfg.seed, c)
            report.image_failures += failures
            if failures:
                report.fail(f"type ({c.u},{c.v}): {failures} of {args.samples} image points leave the variety")
            say(f"{branch} type ({c.u},{c.v}): {args.samples} image points checked")
            if branch == "empty" or p.d == p.t:
                rank_jobs.append(_rank_job(branch, p, c, args.trials, cfg.seed))
            else:
                report.details["rank"] = "skipped: the zero-set rank check needs d = t"
            if args.fibers:
                report.fiber_instances += args.fibers
                bad = count_fiber_failures(branch, p, c, args.fibers, cfg.seed)
                report.fiber_failures += bad
                if bad:
                    report.fail(f"type ({c.u},{c.v}): phi changed under the fiber action in {bad} instances")
        for row in run_jobs(rank_jobs, cfg.threads):
            report.ranks.append(row)
            if not row.agree:
                report.fail(f"type ({row.type[0]},{row.type[1]}): Jacobian rank {row.max_rank}, expected {row.expected}")
        statuses.append(report.status)
        reports.append(report)
    if len(reports) == 1:
        return reports[0]
    merged = LabReport(check="param-check", params=p, status=combine_status(statuses))
    merged.details["branches"] = [r.model_dump(mode="json", by_alias=True) for r in reports]
    merged.witnesses = [w for r in reports for w in r.witnesses]
    return merged


def _table_job(p: GridParams, c: CombType, initial: bool, degree: bool, budget: BudgetCaps):
    def job():
        row = TableRow(type=list(c), count=count_sets(p, c), dim_formula=dim_formula(p, c))
        if not (initial or degree):
            return row
        try:
            m, _ = representative_initial_ideal(p, c, budget)
            if degree and m.squarefree:
                row.dim_initial, row.degree = monomial_dim_degree(m, budget)
                row.degree_status = "pass"
            else:
                row.dim_initial = monomial_dim(m, budget)
        except BudgetExceeded:
            row.degree_status = "budget"
        return row
    return job


def cmd_table(cfg: RunConfig, args, say) -> LabReport:
    p = cfg.params
    report = TableReport(params=p)
    table = EXAMPLE_TABLE if (p.d, p.k1, p.k2, p.t) == EXAMPLE_PARAMS else {}
    types = minimal_types(p)
    if count_types(p) != len(types):
        report.fail(f"number of types: formula {count_types(p)}, listed {len(types)}")
    jobs = [_table_job(p, c, args.initial, args.degree, cfg.budget) for c in types]
    for row in run_jobs(jobs, cfg.threads):
        report.rows.append(row)
        c = CombType(*row.type)
        label = f"({c.u},{c.v})"
        if row.degree_status == "budget":
            report.out_of_budget(f"type {label}: budget exceeded")
        if row.dim_initial is not None and row.dim_initial != row.dim_formula:
            report.fail(f"type {label}: initial-ideal dimension {row.dim_initial}, formula {row.dim_formula}")
        if c in table:
            count, dim, deg = table[c]
            if row.count != count or row.dim_formula != dim:
                report.fail(f"type {label}: expected count {count} and dimension {dim}")
            if row.degree is not None and row.degree != deg:
                report.fail(f"type {label}: degree {row.degree}, expected {deg}")
        say(f"type {label} done")
    return report


COMMANDS = {
    "hypergraph": cmd_hypergraph,
    "generators": cmd_generators,
    "gb-verify": cmd_gb_verify,
    "minimal": cmd_minimal,
    "decompose": cmd_decompose,
    "minimality-oracle": cmd_minimality_oracle,
    "dims": cmd_dims,
    "param-check": cmd_param_check,
    "table": cmd_table,
}


# ---------------------------------------------------------------------------
# Entry point: parse, validate, run one command, emit the report.
# ---------------------------------------------------------------------------
def build_config(args) -> RunConfig:
    d = args.d if args.d is not None else args.t
    params = make_params(d, args.k1, args.k2, args.t)
    budget = resolve_budget(settings, args.budget)
    try:
        return RunConfig(params=params, zeros=args.zeros, comb=args.comb, seed=args.seed, budget=budget,
                         threads=args.threads, output=args.output, verbose=args.verbose)
    except ValidationError as e:
        raise LabSettingsError("; ".join(err["msg"] for err in e.errors())) from None


def exit_code(report: LabReport) -> int:
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "budget": EXIT_BUDGET}[report.status]


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argcomplete.autocomplete(parser)
    args = parser.parse_args(argv)
    err_console = Console(stderr=True)

    def say(msg: str) -> None:
        if args.verbose:
            err_console.print(f"[dim]{msg}[/dim]")

    try:
        cfg = build_config(args)
        if cfg.comb is not None and cfg.params.k1 == 2 and not is_minimal_type(cfg.params, cfg.comb):
            raise GridError(f"({cfg.comb.u},{cfg.comb.v}) is not a minimal combinatorial type for {cfg.params.label()}")
        if args.save_settings:
            save_settings({**settings, "seed": cfg.seed, "threads": cfg.threads, "output": cfg.output,
                           "budget_pairs": cfg.budget.pairs, "budget_reductions": cfg.budget.reductions,
                           "budget_nodes": cfg.budget.nodes})
            say("settings.json updated")
        report = COMMANDS[args.command](cfg, args, say)
    except BudgetExceeded as e:
        err_console.print(f"[yellow]Budget exceeded:[/yellow] {e}")
        return EXIT_BUDGET
    except INPUT_ERRORS as e:
        err_console.print(f"[red]Error:[/red] {e}")
        return EXIT_BUDGET

    if cfg.output == "json":
        sys.stdout.write(report_to_json(report))
    else:
        ReportRenderer(report, Console()).render()
    if report.status != "pass":
        err_console.print(f"[red]{report.check}: {report.status}[/red]" if report.status == "fail"
                          else f"[yellow]{report.check}: budget[/yellow]")
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
