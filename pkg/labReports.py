import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from gridSets import GridParams

SCHEMA_VERSION = "1"
Status = Literal["pass", "fail", "budget"]


class LabReport(BaseModel):
    """Common envelope of every command report."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(SCHEMA_VERSION, serialization_alias="schema")
    check: str
    params: Optional[GridParams] = None
    status: Status = "pass"
    witnesses: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    def fail(self, witness: str) -> None:
        if self.status == "pass":
            self.status = "fail"
        self.witnesses.append(witness)

    def out_of_budget(self, witness: str) -> None:
        self.status = "budget"
        self.witnesses.append(witness)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class TypeCount(BaseModel):
    type: List[int]
    count_formula: int
    count_enumerated: Optional[int] = None
    agree: bool = True


class MinimalReport(LabReport):
    check: str = "minimal"
    count_types_formula: int = 0
    count_types_enumerated: Optional[int] = None
    total_sets: int = 0
    types: List[TypeCount] = Field(default_factory=list)


class DimRow(BaseModel):
    type: List[int]
    dim_formula: int
    dim_initial: Optional[int] = None
    degree_initial: Optional[int] = None
    degree_expected: Optional[int] = None
    cover_size: Optional[int] = None
    agree: bool = True
    note: Optional[str] = None


class DimsReport(LabReport):
    check: str = "dims"
    ambient: int = 0
    rows: List[DimRow] = Field(default_factory=list)


class RankRow(BaseModel):
    type: List[int]
    trials: int
    max_rank: int
    expected: int
    agree: bool


class ParamCheckReport(LabReport):
    check: str = "param-check"
    branch: str = "empty"
    samples: int = 0
    image_failures: int = 0
    ranks: List[RankRow] = Field(default_factory=list)
    fiber_instances: int = 0
    fiber_failures: int = 0


class TableRow(BaseModel):
    type: List[int]
    count: int
    dim_formula: int
    dim_initial: Optional[int] = None
    degree: Optional[int] = None
    degree_status: Optional[Status] = None


class TableReport(LabReport):
    check: str = "table"
    rows: List[TableRow] = Field(default_factory=list)


class GeneratorsReport(LabReport):
    check: str = "generators"
    ideals: List[Dict[str, Any]] = Field(default_factory=list)


class HypergraphReport(LabReport):
    check: str = "hypergraph"
    zeros: str = ""
    edges: List[str] = Field(default_factory=list)
    closure_added: List[str] = Field(default_factory=list)
    golden_only_ours: List[str] = Field(default_factory=list)
    golden_only_file: List[str] = Field(default_factory=list)


def combine_status(statuses) -> Status:
    """budget beats fail beats pass."""
    statuses = list(statuses)
    if "budget" in statuses:
        return "budget"
    if "fail" in statuses:
        return "fail"
    return "pass"


def report_to_json(report: LabReport) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing LF."""
    data = report.model_dump(mode="json", by_alias=True)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
