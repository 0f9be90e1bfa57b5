"""FastAPI service exposing the kernel library.

All computation lives in the core package; handlers translate between wire
models and domain objects.  Domain validation failures map to 422, numerical
budget or residual failures to 400 with ``error.type = "numerical"``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..exactnorm import (
    ImaginaryResidualError,
    NormReport,
    ZeroSet,
    derivative_sign_at_zero,
    enumerate_zeros,
    norm_closed_form,
    norm_piecewise_exact,
)
from ..kernels import CoefficientProfile, KernelParamError, KernelParams, eval_vp, make_params
from ..quadrature import QuadratureBudgetError, QuadratureSpec, lebesgue_constant, norm_quadrature
from ..summation import (
    CATALOG,
    RealityError,
    approximate_identity_report,
    catalog_function,
    delayed_mean,
    fejer_mean,
    partial_sum,
)
from ..verify import BudgetGuardError, verify_sweep
from . import schemas

_ENDPOINTS = [
    "GET /",
    "GET /catalog",
    "POST /eval",
    "POST /coeffs",
    "POST /zeros",
    "POST /norm",
    "POST /lebesgue",
    "POST /verify",
    "POST /approx",
    "POST /approx/tails",
    "POST /export-plot",
]


def _error_response(status: int, err_type: str, exc: Exception) -> JSONResponse:
    payload = schemas.ErrorResponse(
        error=schemas.ErrorInfo(type=err_type, message=str(exc))
    )
    return JSONResponse(status_code=status, content=payload.model_dump())


def _spec(abs_tol: float | None) -> QuadratureSpec:
    return QuadratureSpec(abs_tol=abs_tol) if abs_tol is not None else QuadratureSpec()


def _points(xs: list[float] | None, grid: int | None) -> list[float]:
    if xs is not None and grid is not None:
        raise ValueError("give either xs or grid, not both")
    if xs is not None:
        return [float(x) for x in xs]
    if grid is not None:
        if grid < 1:
            raise ValueError(f"grid must be >= 1, got {grid}")
        return [j / grid for j in range(grid)]
    raise ValueError("one of xs or grid is required")


def _zero_models(params: KernelParams, zeros: ZeroSet) -> list[schemas.ZeroEntryModel]:
    return [
        schemas.ZeroEntryModel(
            numerator=e.location.numerator,
            denominator=e.location.denominator,
            location=float(e.location),
            kind=e.kind,
            multiplicity=e.multiplicity,
            derivative_sign=derivative_sign_at_zero(params, e),
        )
        for e in zeros.entries
    ]


def _report_model(report: NormReport) -> schemas.NormReportModel:
    return schemas.NormReportModel(
        method=report.method,
        value=report.value,
        area_plus=report.area_plus,
        area_minus=report.area_minus,
        imag_residual=report.imag_residual,
        error_estimate=report.error_estimate,
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="vpkernels",
        version=__version__,
        description="Summability kernel evaluation, zero census, and exact L1 norms.",
    )

    @app.exception_handler(KernelParamError)
    @app.exception_handler(KeyError)
    @app.exception_handler(ValueError)
    async def _validation_handler(request: Request, exc: Exception):
        return _error_response(422, "validation", exc)

    @app.exception_handler(QuadratureBudgetError)
    @app.exception_handler(BudgetGuardError)
    @app.exception_handler(ImaginaryResidualError)
    @app.exception_handler(RealityError)
    async def _numerical_handler(request: Request, exc: Exception):
        return _error_response(400, "numerical", exc)

    @app.get("/", response_model=schemas.ServiceInfo)
    def info() -> schemas.ServiceInfo:
        return schemas.ServiceInfo(name="vpkernels", version=__version__, endpoints=_ENDPOINTS)

    @app.get("/catalog", response_model=schemas.CatalogResponse)
    def catalog() -> schemas.CatalogResponse:
        return schemas.CatalogResponse(functions=sorted(CATALOG))

    @app.post("/eval", response_model=schemas.EvalResponse)
    def eval_kernel(req: schemas.EvalRequest) -> schemas.EvalResponse:
        params = make_params(req.r, req.s, req.N)
        xs = _points(req.xs, req.grid)
        rows = [schemas.EvalRow(x=x, value=eval_vp(params, x)) for x in xs]
        return schemas.EvalResponse(r=params.r, s=params.s, N=params.N, rows=rows)

    @app.post("/coeffs", response_model=schemas.CoeffsResponse)
    def coeffs(req: schemas.CoeffsRequest) -> schemas.CoeffsResponse:
        params = make_params(req.r, req.s, req.N)
        profile = CoefficientProfile(params)
        rows = [schemas.CoeffRow(j=j, value=v) for j, v in profile.samples(req.j_max)]
        return schemas.CoeffsResponse(r=params.r, s=params.s, N=params.N, rows=rows)

    @app.post("/zeros", response_model=schemas.ZerosResponse)
    def zeros(req: schemas.KernelRequest) -> schemas.ZerosResponse:
        params = make_params(req.r, req.s, req.N)
        zset = enumerate_zeros(params)
        return schemas.ZerosResponse(
            r=params.r,
            s=params.s,
            N=params.N,
            total_multiplicity=zset.total_multiplicity,
            entries=_zero_models(params, zset),
        )

    @app.post("/norm", response_model=schemas.NormResponse)
    def norm(req: schemas.NormRequest) -> schemas.NormResponse:
        params = make_params(req.r, req.s, req.N)
        reports: list[NormReport] = []
        if req.method in ("closed", "all"):
            reports.append(norm_closed_form(params.r, params.s))
        if req.method in ("piecewise", "all"):
            reports.append(norm_piecewise_exact(params))
        if req.method in ("quad", "all"):
            reports.append(norm_quadrature(params, _spec(req.abs_tol)))
        max_dev = None
        if len(reports) > 1:
            values = [rep.value for rep in reports]
            max_dev = max(abs(a - b) for a in values for b in values)
        lower, upper = reports[0].bounds
        return schemas.NormResponse(
            r=params.r,
            s=params.s,
            N=params.N,
            norm_lower_bound=lower,
            norm_upper_bound=upper,
            reports=[_report_model(rep) for rep in reports],
            max_pairwise_deviation=max_dev,
        )

    @app.post("/lebesgue", response_model=schemas.LebesgueResponse)
    def lebesgue(req: schemas.LebesgueRequest) -> schemas.LebesgueResponse:
        return schemas.LebesgueResponse(n=req.n, value=lebesgue_constant(req.n, _spec(req.abs_tol)))

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
        quad_spec = QuadratureSpec(abs_tol=req.quad_tol) if req.quad_tol is not None else None
        report = verify_sweep(req.max_s, req.max_N, tol=req.tol, quad_spec=quad_spec)
        return schemas.VerifyResponse(
            max_s=report.max_s,
            max_N=report.max_N,
            tol=report.tol,
            all_ok=report.all_ok,
            cells=[schemas.VerifyCellModel(**vars(c)) for c in report.cells],
            pairs=[schemas.VerifyPairModel(**vars(p)) for p in report.pairs],
        )

    @app.post("/approx", response_model=schemas.ApproxResponse)
    def approx(req: schemas.ApproxRequest) -> schemas.ApproxResponse:
        f = catalog_function(req.function)
        xs = _points(req.xs, req.grid)
        if req.mode == "delayed":
            if req.p is None or req.p < 1:
                raise ValueError("mode=delayed requires p >= 1")
            values = [delayed_mean(f, req.n, req.p, x) for x in xs]
        elif req.mode == "fejer":
            values = [fejer_mean(f, req.n, x) for x in xs]
        else:
            values = [partial_sum(f, req.n, x) for x in xs]
        rows = []
        for x, v in zip(xs, values):
            exact = err = None
            if f.evaluator is not None:
                exact = float(f.evaluator(x))
                err = abs(v.real - exact)
            rows.append(
                schemas.ApproxRow(x=x, value=v.real, value_imag=v.imag, exact=exact, abs_error=err)
            )
        return schemas.ApproxResponse(
            function=req.function, mode=req.mode, n=req.n, p=req.p, rows=rows
        )

    @app.post("/approx/tails", response_model=schemas.TailsResponse)
    def approx_tails(req: schemas.TailsRequest) -> schemas.TailsResponse:
        report = approximate_identity_report(
            req.r, req.s, req.delta, req.N_list, _spec(req.abs_tol)
        )
        return schemas.TailsResponse(
            r=report.r,
            s=report.s,
            delta=report.delta,
            entries=[schemas.TailMassRow(N=N, mass=m) for N, m in report.entries],
            strictly_decreasing=report.strictly_decreasing,
        )

    @app.post("/export-plot", response_model=schemas.ExportPlotResponse)
    def export_plot(req: schemas.ExportPlotRequest) -> schemas.ExportPlotResponse:
        params = make_params(req.r, req.s, req.N)
        xs = _points(None, req.grid)
        curve = [schemas.EvalRow(x=x, value=eval_vp(params, x)) for x in xs]
        zset = enumerate_zeros(params)
        profile = CoefficientProfile(params)
        nodes = [schemas.ProfileNode(u=u, value=v) for u, v in profile.trapezoid_nodes()]
        return schemas.ExportPlotResponse(
            r=params.r,
            s=params.s,
            N=params.N,
            curve=curve,
            zeros=_zero_models(params, zset),
            profile_nodes=nodes,
        )

    return app


app = create_app()
