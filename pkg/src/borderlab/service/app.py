"""FastAPI wiring: one POST endpoint per operation, wrapping the shared
handlers.  Infeasible/not-vertex are 200s with the verdict in the body;
malformed input and cap overruns are 400s; internal identity violations 500s.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import BorderlabError, IdentityViolated
from ..hypercube import DEFAULT_CAP
from . import handlers, schemas


def _envelope(results: dict, cap: int | None) -> dict:
    return {"results": results, "caps": {"cap": cap if cap is not None else DEFAULT_CAP}}


def create_app() -> FastAPI:
    app = FastAPI(
        title="borderlab",
        description=(
            "Exact-rational computations: interim-allocation feasibility, "
            "optimal Bayesian mechanism values, Khintchine constants, "
            "Chow-parameter polytope queries, and counting-reduction gadgets."
        ),
        version="0.1.0",
    )

    @app.exception_handler(IdentityViolated)
    async def identity_handler(_request: Request, exc: IdentityViolated):
        return JSONResponse(
            status_code=500,
            content={"error": {"type": "IdentityViolated", "message": str(exc)}},
        )

    @app.exception_handler(BorderlabError)
    async def domain_handler(_request: Request, exc: BorderlabError):
        return JSONResponse(
            status_code=400,
            content={"error": {"type": type(exc).__name__, "message": str(exc)}},
        )

    @app.exception_handler(ValueError)
    async def value_handler(_request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400,
            content={"error": {"type": "ValueError", "message": str(exc)}},
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/environment/validate", response_model=schemas.ResultEnvelope)
    def environment_validate(request: schemas.EnvironmentModel):
        return _envelope(handlers.validate_environment(request), None)

    @app.post("/feasible", response_model=schemas.ResultEnvelope)
    def feasible(request: schemas.FeasibleRequest):
        return _envelope(handlers.feasible(request), request.cap)

    @app.post("/optrev", response_model=schemas.ResultEnvelope)
    def optrev(request: schemas.OptRevRequest):
        return _envelope(handlers.optrev(request), request.cap)

    @app.post("/optwel", response_model=schemas.ResultEnvelope)
    def optwel(request: schemas.OptWelRequest):
        return _envelope(handlers.optwel(request), request.cap)

    @app.post("/khintchine", response_model=schemas.ResultEnvelope)
    def khintchine(request: schemas.WeightsRequest):
        return _envelope(handlers.khintchine(request), request.cap)

    @app.post("/pp/rev", response_model=schemas.ResultEnvelope)
    def pp_rev(request: schemas.WeightsRequest):
        return _envelope(handlers.pp_rev(request), request.cap)

    @app.post("/pp/audit", response_model=schemas.ResultEnvelope)
    def pp_audit(request: schemas.WeightsRequest):
        return _envelope(handlers.pp_audit(request), request.cap)

    @app.post("/chow/compute", response_model=schemas.ResultEnvelope)
    def chow_compute(request: schemas.ChowComputeRequest):
        return _envelope(handlers.chow_compute(request), request.cap)

    @app.post("/chow/opt", response_model=schemas.ResultEnvelope)
    def chow_opt(request: schemas.ChowOptRequest):
        return _envelope(handlers.chow_opt(request), request.cap)

    @app.post("/chow/member", response_model=schemas.ResultEnvelope)
    def chow_member(request: schemas.ChowVectorRequest):
        return _envelope(handlers.chow_member(request), request.cap)

    @app.post("/chow/vertex", response_model=schemas.ResultEnvelope)
    def chow_vertex(request: schemas.ChowVectorRequest):
        return _envelope(handlers.chow_vertex(request), request.cap)

    @app.post("/chow/from-conditionals", response_model=schemas.ResultEnvelope)
    def chow_from_conditionals(request: schemas.ConditionalsRequest):
        return _envelope(handlers.chow_from_conditionals(request), request.cap)

    @app.post("/chow/majority", response_model=schemas.ResultEnvelope)
    def chow_majority(request: schemas.MajorityRequest):
        return _envelope(handlers.chow_majority(request), request.cap)

    @app.post("/reduce/partition", response_model=schemas.ResultEnvelope)
    def reduce_partition(request: schemas.PartitionRequest):
        return _envelope(handlers.reduce_partition(request), request.cap)

    @app.post("/reduce/stconn", response_model=schemas.ResultEnvelope)
    def reduce_stconn(request: schemas.StConnRequest):
        return _envelope(handlers.reduce_stconn(request), request.cap)

    @app.post("/reduce/matroid", response_model=schemas.ResultEnvelope)
    def reduce_matroid(request: schemas.MatroidRequest):
        return _envelope(handlers.reduce_matroid(request), request.cap)

    return app


app = create_app()
