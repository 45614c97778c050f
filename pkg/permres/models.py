from fractions import Fraction
from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, PlainSerializer

Rational = Annotated[Fraction, PlainSerializer(str, return_type=str)]


class PreimageDistribution(BaseModel):
    q: int
    m: list[int]          # M_0 .. M_u, zero-padded when a length is asked for
    u: int
    v: int


class Truncation(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    cutoff: int           # partial sum over s = 2..cutoff
    value: Rational
    direction: Literal["upper", "lower"]


class M0Report(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    m0: int
    lower: Rational       # N_2/2! - N_3/3!
    upper: Rational       # N_2/2!
    lower_tight: bool
    upper_tight: bool
    truncations: list[Truncation] = []


class BoundsReport(BaseModel):
    lower: int
    upper: int
    lb_eq_ub: bool
    char_holds: bool


class NsUpperBound(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    cutoff: int
    value: Rational


class AmbiguityReport(BaseModel):
    ambiguity: int
    alpha: dict[int, int]
    rows: list[int]       # row-a values for a = 1..q-1


class StatsReport(BaseModel):
    group: str
    q: int
    v: int
    u: int
    m: list[int]
    n_s: list[int] = []   # s = 2..u
    delta: int | None = None
    planar: bool | None = None
    nb: int
    nbb: int | None = None
    ambiguity: int | None = None
    alpha: dict[int, int] | None = None
    row_ambiguity: list[int] | None = None
    bounds: BoundsReport
    m0: M0Report
    ns_upper: list[NsUpperBound] = []


class SearchLevel(BaseModel):
    k: int
    sets: int             # shift sets that reached the matching test
    pruned: int = 0       # prefixes cut by the overlap test
    exhausted: bool = True


class PresCertificate(BaseModel):
    pres: int | None
    status: Literal["optimal", "bound-limited"] = "optimal"
    method: Literal["matching-search", "brute-force-oracle", "closed-form"]
    lower: int
    upper: int
    shifts: list[int] = []
    g: list[int] = []
    searched: list[SearchLevel] = []
    verified: bool = False
    optimal_count: int | None = None
    optimal_shifts: list[list[int]] = []
    max_sets: int | None = None
    time_limit: float | None = None
    note: str = ""


class FamilyPrediction(BaseModel):
    family: str
    group: str
    f: list[int]
    predicted_pres: int | None = None
    predicted_range: tuple[int, int] | None = None
    witness_g: list[int] | None = None
    witness_shifts: list[int] | None = None
    verified: bool = False
    source: str
    note: str = ""


class PipelineCandidate(BaseModel):
    shifts: list[int]
    g: list[int]
    delta: int
    within_bound: bool


class PipelineReport(BaseModel):
    group: str
    f: list[int]
    planar: bool
    delta_f: int
    pres: int | None
    bound: int | None
    candidates: list[PipelineCandidate] = []
    best_delta: int | None = None
    differing_du: bool = False
    status: str = "optimal"


class CheckResult(BaseModel):
    suite: str
    check: str
    passed: bool
    detail: str = ""


class SuiteSummary(BaseModel):
    suites: list[str]
    total: int
    failed: int
    results: list[CheckResult] = []
