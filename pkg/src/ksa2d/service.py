"""HTTP service exposing the verification workbench.

Thin wrapper over the pipeline: request models mirror RunConfig, response
models carry the same JSON documents the pipeline emits. Configuration
problems map to 400 so clients can distinguish them (exit code 2 in the
CLI) from failed checks (reported in the body with exit code 1).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .pipeline import (
    ConfigError,
    RunConfig,
    make_config,
    run_cohomology,
    run_deform,
    run_geometry_report,
    run_verify,
    tables_payload,
)


class ConfigRequest(BaseModel):
    """Common run-configuration body; unset fields take pipeline defaults."""

    model_config = ConfigDict(extra="forbid")

    signature: str | None = Field(default=None, description="1,1 or 0,2")
    bilinear: str | None = Field(default=None, description="bilinear symmetry sign, + or -")
    module: str | None = Field(default=None, description="full or chiral+")
    b: str | None = Field(default=None, description="deformation parameter, exact rational")
    geometry: str | None = Field(default=None, description="all, none, flat, h2, ds2 or ads2")
    fixture: str | None = Field(default=None, description="none, corrupted_bracket, perturbed_metric")
    fierz_samples: int | None = None
    seed: int | None = None
    tolerances: dict[str, float] | None = None

    def to_config(self) -> RunConfig:
        values = {k: v for k, v in self.model_dump().items() if v is not None}
        return make_config(values)


class CheckModel(BaseModel):
    name: str
    passed: bool
    detail: str
    residual: float | None = None


class VerifyResponse(BaseModel):
    passed: bool
    exit_code: int
    checks: list[CheckModel]


class TablesResponse(BaseModel):
    table1: list[dict]
    table2: list[dict]
    table3: list[dict]
    markdown: str
    csv: str


class DeformResponse(BaseModel):
    document: dict


class CohomologyResponse(BaseModel):
    signature: str
    module: str
    bilinear_symmetry: str
    dimension: int
    basis: list[dict]
    canonical: dict | None
    constraint_rows: list[dict]


class GeometryResponse(BaseModel):
    report: dict


class HealthResponse(BaseModel):
    status: str
    version: str


def _config_or_400(request: ConfigRequest) -> RunConfig:
    try:
        return request.to_config()
    except ConfigError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="ksa2d",
        version=__version__,
        description=(
            "Exact classification of admissible spinor bilinears, degree-(2,2) "
            "cohomology and filtered deformations of the 2D flat model "
            "superalgebras, and numeric Killing-superalgebra verification on "
            "the maximally symmetric model surfaces."
        ),
    )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/tables", response_model=TablesResponse)
    def tables(request: ConfigRequest) -> TablesResponse:
        _config_or_400(request)
        return TablesResponse(**tables_payload())

    @app.post("/verify", response_model=VerifyResponse)
    def verify(request: ConfigRequest) -> VerifyResponse:
        cfg = _config_or_400(request)
        return VerifyResponse(**run_verify(cfg))

    @app.post("/deform", response_model=DeformResponse)
    def deform(request: ConfigRequest) -> DeformResponse:
        cfg = _config_or_400(request)
        try:
            return DeformResponse(document=run_deform(cfg))
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/cohomology", response_model=CohomologyResponse)
    def cohomology(request: ConfigRequest) -> CohomologyResponse:
        cfg = _config_or_400(request)
        return CohomologyResponse(**run_cohomology(cfg))

    @app.post("/geometry", response_model=GeometryResponse)
    def geometry(request: ConfigRequest) -> GeometryResponse:
        cfg = _config_or_400(request)
        try:
            return GeometryResponse(report=run_geometry_report(cfg))
        except ConfigError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    return app


app = create_app()
