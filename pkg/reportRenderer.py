from typing import Any, Dict, List, Optional
from rich.markdown import Markdown
from rich.console import Console

from labReports import LabReport

_STATUS_STYLE = {"pass": "green", "fail": "red", "budget": "yellow"}


class ReportRenderer:
    """
    Renders a report model for humans with rich. Every number shown comes from
    the report itself; nothing is recomputed here.
    """

    def __init__(self, report: LabReport, console: Optional[Console] = None):
        """
        Args:
            report: Any LabReport (or subclass).
            console: Target console; a fresh stdout console by default.
        """
        self.report = report
        self.console = console or Console()
        self._data = report.model_dump(mode="json", by_alias=True)

    # ---------------- Extraction ---------------- #

    def tables(self) -> Dict[str, List[Dict[str, Any]]]:
        """List-of-dict fields (rows, types, ranks) that render as tables."""
        out = {}
        for key, value in self._data.items():
            if isinstance(value, list) and value and all(isinstance(v, dict) for v in value) and key != "ideals":
                out[key] = value
        return out

    def scalars(self) -> Dict[str, Any]:
        skip = {"schema", "check", "params", "status", "witnesses", "details"}
        return {k: v for k, v in self._data.items()
                if k not in skip and not isinstance(v, (list, dict))}

    @staticmethod
    def markdown_table(rows: List[Dict[str, Any]]) -> str:
        columns: List[str] = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
        lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
        for row in rows:
            lines.append("| " + " | ".join(_cell(row.get(c)) for c in columns) + " |")
        return "\n".join(lines) + "\n"

    # ---------------- Rendering ---------------- #

    def render(self) -> None:
        data = self._data
        params = data.get("params")
        title = data["check"] if not params else f"{data['check']}  ({_params_label(params)})"
        self.console.rule(title)
        style = _STATUS_STYLE.get(data["status"], "white")
        self.console.print(f"status: [{style}]{data['status']}[/{style}]")
        for key, value in self.scalars().items():
            self.console.print(f"{key}: {value}")
        for key, rows in self.tables().items():
            self.console.rule(key)
            self.console.print(Markdown(self.markdown_table(rows)))
        for name in ("edges", "closure_added", "golden_only_ours", "golden_only_file"):
            items = data.get(name)
            if items:
                self.console.rule(f"{name} ({len(items)})")
                for item in items:
                    self.console.print(item, markup=False)
        for ideal in data.get("ideals", []):
            self.console.rule(f"{ideal['name']} ({len(ideal['generators'])} generators)")
            for g in ideal["generators"]:
                self.console.print(g, markup=False)
        if data.get("details"):
            self.console.rule("details")
            for key, value in sorted(data["details"].items()):
                self.console.print(f"{key}: {value}", markup=False)
        if data.get("witnesses"):
            self.console.rule("[red]witnesses[/red]")
            for w in data["witnesses"]:
                self.console.print(w, markup=False)


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, list):
        return "(" + ",".join(str(v) for v in value) + ")"
    return str(value)


def _params_label(params: Dict[str, int]) -> str:
    return " ".join(f"{k}={params[k]}" for k in ("d", "k1", "k2", "t") if k in params)
