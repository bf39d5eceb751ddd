from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from grundy_lab.config import settings


class GrundyWitnessSchema(BaseModel):
    k: int
    colors: List[int]
    ordering: Optional[List[int]] = None
    exact: bool = True
    upper_bound: Optional[int] = None


class DominationWitnessSchema(BaseModel):
    gamma: int
    set: List[int]


class StarPartSchema(BaseModel):
    apex: int
    members: List[int]

    class Config:
        from_attributes = True


class StarPartitionSchema(BaseModel):
    parts: List[StarPartSchema]

    class Config:
        from_attributes = True


class WitnessVertexSchema(BaseModel):
    id: int
    level: int
    color: int
    parent: Optional[int] = None


class LeveledWitnessSchema(BaseModel):
    k: int
    depth: int
    doubled: bool
    roots: List[int]
    levels: List[List[int]]
    vertices: List[WitnessVertexSchema]
    edges: List[List[int]]


class CountIdentitySchema(BaseModel):
    k: int
    g: int
    case: str
    v_H: int
    s_prime: int
    uncovered: int
    in_bound_range: bool = True
    constructed_v_H: Optional[int] = None
    constructed_s_prime: Optional[int] = None
    partition_valid: Optional[bool] = None


class BoundEntry(BaseModel):
    name: str
    status: str
    reason: str = ""
    rhs: Optional[float] = None
    satisfied: Optional[bool] = None
    slack: Optional[float] = None
    tight: Optional[bool] = None
    comparison_only: bool = False

    class Config:
        from_attributes = True


class BoundReport(BaseModel):
    schema_version: str = settings.schema_version
    record: Literal["bounds"] = "bounds"
    graph_id: str
    n: int
    m: int
    girth: Optional[int] = None
    delta: int
    gamma: int
    triangle_free: bool
    grundy: int
    exact: bool
    grundy_upper: Optional[int] = None
    entries: List[BoundEntry]
    equality_characterization: bool
    beats_delta: Optional[bool] = None
    beats_twhz: Optional[bool] = None
    improvement: Optional[bool] = None
    certificates: Dict[str, bool] = {}
    anomalies: List[str] = []


class InvariantRecord(BaseModel):
    schema_version: str = settings.schema_version
    record: Literal["invariants"] = "invariants"
    graph_id: str
    n: int
    m: int
    degrees: List[int]
    girth: Optional[int] = None
    triangle_free: bool
    gamma: int
    domination: DominationWitnessSchema
    s: int
    star_partition: StarPartitionSchema
    grundy: int
    exact: bool
    grundy_witness: GrundyWitnessSchema
    first_class_size: int
    equality_partition: Optional[Dict[str, List[int]]] = None


class OracleRecord(BaseModel):
    schema_version: str = settings.schema_version
    record: Literal["oracle"] = "oracle"
    graph_id: str
    n: int
    skipped: bool = False
    reason: str = ""
    checks: Dict[str, Any] = {}
    divergences: List[str] = []


class ErrorRecord(BaseModel):
    schema_version: str = settings.schema_version
    record: Literal["error"] = "error"
    graph_id: str
    error: str
    message: str
    offset: Optional[int] = None


class SummaryRecord(BaseModel):
    schema_version: str = settings.schema_version
    record: Literal["summary"] = "summary"
    command: str
    graphs: int = 0
    errors: int = 0
    anomalies: int = 0
    counts: Dict[str, int] = {}


class GeneratedGraphRecord(BaseModel):
    schema_version: str = settings.schema_version
    record: Literal["generated"] = "generated"
    graph_id: str
    family: str
    params: Dict[str, Any] = {}
    graph6: str
    n: int
    m: int
    labeling: Optional[List[int]] = None
    expected: Dict[str, Any] = {}


class RunConfig(BaseModel):
    subcommand: str
    inputs: List[str] = ["-"]
    budget_ms: int = Field(default=settings.budget_ms, gt=0)
    threads: int = Field(default=settings.threads, ge=1)
    output_format: Literal["json", "tsv"] = "json"
    seed: int = Field(default=settings.seed, ge=0)
    nmax: int = Field(default=settings.nmax, ge=0, le=settings.bruteforce_limit)


class WitnessRecord(BaseModel):
    schema_version: str = settings.schema_version
    record: Literal["witness"] = "witness"
    witness: LeveledWitnessSchema
    identity: CountIdentitySchema
