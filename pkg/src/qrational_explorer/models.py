"""Data models for q-Rational Explorer."""

from enum import Enum
from typing import Any

from pydantic import BaseModel, Field


class Side(Enum):
    """Which q-deformation of a rational number."""

    LEFT = "left"
    RIGHT = "right"


class CFKind(Enum):
    """Continued fraction flavours."""

    REGULAR = "regular"
    NEGATIVE = "negative"


class Route(Enum):
    """Ways of computing a q-rational."""

    REGULAR_CF = "regular"
    NEGATIVE_CF = "negative"
    CLOSURE = "closure"


class JonesRoute(Enum):
    """Ways of computing the normalized Jones polynomial."""

    FLAT_RECIPROCAL = "flat"
    SHARP_FORMULA = "sharp"


class ClosureMethod(Enum):
    BRUTE_FORCE = "brute"
    DP = "dp"


class Gen(Enum):
    """Generators of the q-deformed modular group."""

    R = "R"
    L = "L"
    S = "S"


class TraceTypeKind(Enum):
    """The three shapes a canonical trace can take."""

    ONE_PLUS_Q_POW = "one_plus_qn"
    Q_INT = "q_int"
    POSITIVE_WORD = "positive_word"


class IotaException(Enum):
    """Non-unimodal shapes allowed for I_alpha."""

    NONE = "none"
    ONE_PLUS_QN = "one_plus_qn"
    STAIRCASE = "staircase"
    UNCLASSIFIED = "unclassified"


class ScanKind(Enum):
    OGUZ = "oguz"
    IOTA = "iota"


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class PolyRecord(BaseModel):
    """JSON form of a Laurent polynomial."""

    lowest_exp: int = 0
    coeffs: list[int] = Field(default_factory=list)


class QRationalRecord(BaseModel):
    fraction: str
    side: str
    num: PolyRecord
    den: PolyRecord


class OguzRecord(BaseModel):
    """One line of an oguz scan: the trace of M_q(a) for a positive tuple."""

    a: list[int]
    trace: PolyRecord
    modality: int
    constant_term: int
    expected_exception: bool
    violation: bool


class IotaRecord(BaseModel):
    """One line of an iota scan."""

    alpha: str
    J: PolyRecord
    I: PolyRecord  # noqa: E741
    modality: int
    exception: str
    trace_type: str
    violation: bool


class SuiteReport(BaseModel):
    """Outcome of one verification suite."""

    suite: str
    checked: int = 0
    failures: list[dict[str, Any]] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class ScanSummary(BaseModel):
    """What a scan found, printed after the JSONL file is written."""

    kind: str
    bound: int
    records: int
    non_unimodal: int
    max_modality: int
    exception_counts: dict[str, int] = Field(default_factory=dict)
    violations: list[str] = Field(default_factory=list)
    output: str | None = None

    @property
    def passed(self) -> bool:
        return not self.violations


class SuiteName(Enum):
    """Verification suites driven by the verify command."""

    ROUTES = "routes"
    CLOSURE_ORACLE = "closure-oracle"
    TRANSPOSES = "transposes"
    ARITHMETIC_FLAT = "arithmetic-flat"
    PALIN = "palin"
    TRACE = "trace"
    CIRCULAR = "circular"
    JONES = "jones"
    IOTA = "iota"
    ALL = "all"


class MatrixOp(Enum):
    """What the matrix command does with the parsed word."""

    SHOW = "show"
    Q_TRANSPOSE = "tq"
    ORTHOGONAL = "oq"
    TRACE = "trace"
    DET = "det"
    CANONICAL_TRACE = "canonical-trace"
    TYPE = "type"
    RECOGNIZE = "recognize"
