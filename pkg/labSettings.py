import json
import os
import sys
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError


class LabSettingsError(RuntimeError):
    """Raised when a budget string or a settings value cannot be used."""
    pass


BUDGET_ENV = "CI_IDEAL_LAB_BUDGET"
SETTINGS_PATH = Path(__file__).parent / "settings.json"

DEFAULTS = {
    "budget_pairs": 200000,
    "budget_reductions": 2000000,
    "budget_nodes": 5000000,
    "seed": 0,
    "threads": 1,
    "output": "json",
    "trials": 3,
    "samples": 200,
}


class BudgetCaps(BaseModel):
    """Resource caps: Buchberger pair queue, reduction steps, search nodes."""

    model_config = ConfigDict(frozen=True)

    pairs: int = Field(DEFAULTS["budget_pairs"], ge=1)
    reductions: int = Field(DEFAULTS["budget_reductions"], ge=1)
    nodes: int = Field(DEFAULTS["budget_nodes"], ge=1)


DEFAULT_BUDGET = BudgetCaps()


# ---------------------------------------------------------------------------
# settings.json next to the script
# ---------------------------------------------------------------------------
def load_settings(settings_path: Optional[Path] = None) -> dict:
    """Read the lab settings and lay them over ``DEFAULTS``.

    Parameters
    ----------
    settings_path : Path, optional
        JSON file to read; ``settings.json`` beside the CLI when omitted.

    Returns
    -------
    dict
        A fresh dict holding every key of ``DEFAULTS``. A missing, unreadable
        or non-object file yields the defaults alone.
    """
    path = Path(settings_path or SETTINGS_PATH)
    stored: dict = {}
    if path.is_file():
        try:
            loaded = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            loaded = None
        if isinstance(loaded, dict):
            stored = loaded
    return {**DEFAULTS, **stored}


def save_settings(settings_dict: dict, settings_path: Optional[Path] = None) -> None:
    """Persist ``settings_dict`` back to ``settings.json``.

    Parameters
    ----------
    settings_dict : dict
        Settings to write; unknown keys are kept.
    """
    settings_path = Path(settings_path or SETTINGS_PATH)
    try:
        with open(settings_path, 'w', encoding='utf-8', newline='\n') as f:
            json.dump(settings_dict, f, indent=4, sort_keys=True)
            f.write("\n")
    except Exception as e:
        print(f"Error saving settings: {e}", file=sys.stderr)


# ---------------------------------------------------------------------------
# Budgets: settings < CI_IDEAL_LAB_BUDGET < --budget
# ---------------------------------------------------------------------------
def parse_budget(text: str, base: BudgetCaps = DEFAULT_BUDGET) -> BudgetCaps:
    """Parse ``N`` (all caps) or ``pairs,reductions,nodes``; empty fields keep ``base``."""
    raw = (text or "").strip()
    if not raw:
        return base
    parts = [x.strip() for x in raw.split(",")]
    try:
        if len(parts) == 1:
            n = int(parts[0])
            return BudgetCaps(pairs=n, reductions=n, nodes=n)
        if len(parts) == 3:
            values = [int(x) if x else None for x in parts]
            return BudgetCaps(
                pairs=values[0] if values[0] is not None else base.pairs,
                reductions=values[1] if values[1] is not None else base.reductions,
                nodes=values[2] if values[2] is not None else base.nodes,
            )
    except (ValueError, ValidationError):
        pass
    raise LabSettingsError(f"Bad budget {text!r}: expected N or pairs,reductions,nodes with positive integers")


def budget_from_settings(settings: dict) -> BudgetCaps:
    try:
        return BudgetCaps(pairs=int(settings["budget_pairs"]),
                          reductions=int(settings["budget_reductions"]),
                          nodes=int(settings["budget_nodes"]))
    except (KeyError, ValueError, TypeError, ValidationError) as e:
        raise LabSettingsError(f"Bad budget values in settings: {e}") from None


def resolve_budget(settings: dict, flag: Optional[str] = None) -> BudgetCaps:
    budget = budget_from_settings(settings)
    env = os.environ.get(BUDGET_ENV)
    if env:
        budget = parse_budget(env, budget)
    if flag:
        budget = parse_budget(flag, budget)
    return budget
