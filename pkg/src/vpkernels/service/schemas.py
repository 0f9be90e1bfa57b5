"""Request and response models for the kernel service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ErrorInfo(BaseModel):
    type: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorInfo


class ServiceInfo(BaseModel):
    name: str
    version: str
    endpoints: list[str]


class KernelRequest(BaseModel):
    r: int = Field(description="flat-top index, r >= 0")
    s: int = Field(description="cutoff index, s > r, gcd(r, s) = 1")
    N: int = Field(default=1, description="family index, N >= 1")


class EvalRequest(KernelRequest):
    xs: Optional[list[float]] = Field(default=None, description="explicit sample points")
    grid: Optional[int] = Field(default=None, description="grid count K: x_j = j/K, j = 0..K-1")


class EvalRow(BaseModel):
    x: float
    value: float


class EvalResponse(BaseModel):
    r: int
    s: int
    N: int
    rows: list[EvalRow]


class CoeffsRequest(KernelRequest):
    j_max: Optional[int] = Field(default=None, description="emit j = -j_max..j_max (default sN)")


class CoeffRow(BaseModel):
    j: int
    value: float


class CoeffsResponse(BaseModel):
    r: int
    s: int
    N: int
    rows: list[CoeffRow]


class ZeroEntryModel(BaseModel):
    numerator: int
    denominator: int
    location: float
    kind: str
    multiplicity: int
    derivative_sign: int


class ZerosResponse(BaseModel):
    r: int
    s: int
    N: int
    total_multiplicity: int
    entries: list[ZeroEntryModel]


class NormRequest(KernelRequest):
    method: Literal["closed", "piecewise", "quad", "all"] = "all"
    abs_tol: Optional[float] = Field(default=None, description="quadrature tolerance override")


class NormReportModel(BaseModel):
    method: str
    value: float
    area_plus: float
    area_minus: float
    imag_residual: Optional[float] = None
    error_estimate: Optional[float] = None


class NormResponse(BaseModel):
    r: int
    s: int
    N: int
    norm_lower_bound: float
    norm_upper_bound: float
    reports: list[NormReportModel]
    max_pairwise_deviation: Optional[float] = None


class LebesgueRequest(BaseModel):
    n: int = Field(ge=0)
    abs_tol: Optional[float] = None


class LebesgueResponse(BaseModel):
    n: int
    value: float


class VerifyRequest(BaseModel):
    max_s: int = 7
    max_N: int = 8
    tol: float = 1e-7
    quad_tol: Optional[float] = None


class VerifyCellModel(BaseModel):
    r: int
    s: int
    N: int
    closed: float
    piecewise: float
    quadrature: float
    max_deviation: float
    bounds_ok: bool
    ok: bool


class VerifyPairModel(BaseModel):
    r: int
    s: int
    closed: float
    norm_upper: float
    lebesgue: Optional[float] = None
    lebesgue_deviation: Optional[float] = None
    area_plus_quadrature: float
    area_deviation: float
    decay_N: int
    decay_ratio: float
    decay_ok: bool
    ok: bool


class VerifyResponse(BaseModel):
    max_s: int
    max_N: int
    tol: float
    all_ok: bool
    cells: list[VerifyCellModel]
    pairs: list[VerifyPairModel]


class ApproxRequest(BaseModel):
    function: str = Field(description="catalog function name")
    mode: Literal["partial", "fejer", "delayed"] = "delayed"
    n: int = Field(ge=0)
    p: Optional[int] = Field(default=None, description="ramp width, required for mode=delayed")
    xs: Optional[list[float]] = None
    grid: Optional[int] = None


class ApproxRow(BaseModel):
    x: float
    value: float
    value_imag: float
    exact: Optional[float] = None
    abs_error: Optional[float] = None


class ApproxResponse(BaseModel):
    function: str
    mode: str
    n: int
    p: Optional[int] = None
    rows: list[ApproxRow]


class TailsRequest(BaseModel):
    r: int
    s: int
    delta: float
    N_list: list[int]
    abs_tol: Optional[float] = None


class TailMassRow(BaseModel):
    N: int
    mass: float


class TailsResponse(BaseModel):
    r: int
    s: int
    delta: float
    entries: list[TailMassRow]
    strictly_decreasing: bool


class CatalogResponse(BaseModel):
    functions: list[str]


class ExportPlotRequest(KernelRequest):
    grid: int = Field(default=512, ge=2)


class ProfileNode(BaseModel):
    u: int
    value: float


class ExportPlotResponse(BaseModel):
    r: int
    s: int
    N: int
    curve: list[EvalRow]
    zeros: list[ZeroEntryModel]
    profile_nodes: list[ProfileNode]
