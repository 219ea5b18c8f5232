"""HTTP front end over the core library.

Each endpoint wraps one library operation; the CLI is a thin client of
these routes.  Invalid inputs (bad rationals, broken strips, nodes outside
the strip, arity mismatches) come back as 400 with a one-line diagnosis.
"""
from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..geometry import Point, rat
from ..harness import run_fuzz
from ..oracle import (
    NotPoisedError,
    Problem,
    det_exact,
    interpolate,
    make_problem,
    oracle_poised,
    vandermonde_matrix,
)
from ..problemio import (
    ProblemFile,
    boundary_augmented_nodes,
    format_problem,
    format_rational,
)
from ..reduction import decide
from ..generate import GenSpec, generate
from ..strip import InvalidStripError, build_strip
from .schemas import (
    CheckRequest,
    CheckResponse,
    FuzzRequest,
    FuzzResponse,
    GenRequest,
    GenResponse,
    InterpRequest,
    InterpResponse,
    OracleResponse,
    ProblemPayload,
)


def _parse_points(pairs):
    return [Point(rat(x), rat(y)) for x, y in pairs]


def _build_problem(payload: ProblemPayload) -> Problem:
    try:
        strip = build_strip(_parse_points(payload.vertices))
        nodes = boundary_augmented_nodes(
            strip, tuple(_parse_points(payload.nodes)), payload.boundary
        )
        return make_problem(strip, nodes)
    except (ValueError, InvalidStripError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _payload_from_problem(p: Problem) -> ProblemPayload:
    return ProblemPayload(
        vertices=[(format_rational(v.x), format_rational(v.y)) for v in p.strip.vertices],
        nodes=[(format_rational(q.x), format_rational(q.y)) for q in p.nodes],
        boundary="none",
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="tripoise",
        description=(
            "Poisedness of piecewise-linear interpolation on triangle strips: "
            "structural reduction engine, exact determinant oracle, "
            "interpolation, and instance generation."
        ),
    )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/check", response_model=CheckResponse, response_model_exclude_none=True)
    def check(req: CheckRequest) -> CheckResponse:
        problem = _build_problem(req)
        verdict = decide(problem, nc_filter=req.nc_filter)
        witness = None
        if req.witness and verdict.witness is not None:
            witness = [format_rational(v) for v in verdict.witness.vertex_values]
        trace = verdict.trace_lines() if req.trace else None
        return CheckResponse(
            poised=verdict.poised,
            reason=verdict.reason.describe(),
            fallback_steps=verdict.fallback_count,
            witness=witness,
            trace=trace,
        )

    @app.post("/oracle", response_model=OracleResponse, response_model_exclude_none=True)
    def oracle(req: ProblemPayload) -> OracleResponse:
        problem = _build_problem(req)
        square = problem.is_exact
        determinant = None
        if square:
            determinant = format_rational(det_exact(vandermonde_matrix(problem)))
        return OracleResponse(
            node_count=problem.node_count,
            dimension=problem.dimension,
            square=square,
            determinant=determinant,
            poised=oracle_poised(problem),
        )

    @app.post("/fuzz", response_model=FuzzResponse, response_model_exclude_none=True)
    def fuzz(req: FuzzRequest) -> FuzzResponse:
        report = run_fuzz(req.count, req.max_n, req.seed, nc_filter=req.nc_filter)
        return FuzzResponse(
            total=report.total,
            agreements=report.agreements,
            disagreements=len(report.disagreements),
            fallback_steps=report.fallback_steps,
            counterexample=report.counterexample,
        )

    @app.post("/interp", response_model=InterpResponse)
    def interp(req: InterpRequest) -> InterpResponse:
        problem = _build_problem(req)
        # boundary conversion appends vertex nodes; they interpolate zero
        added = problem.node_count - len(req.nodes)
        try:
            data = [rat(d) for d in req.data]
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if len(data) != len(req.nodes):
            raise HTTPException(
                status_code=400,
                detail=f"expected {len(req.nodes)} data values, got {len(data)}",
            )
        try:
            fn = interpolate(problem, data + [rat(0)] * added)
        except NotPoisedError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        try:
            evaluations = [
                format_rational(fn.value_at(q)) for q in _parse_points(req.eval_points)
            ]
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return InterpResponse(
            vertex_values=[format_rational(v) for v in fn.vertex_values],
            evaluations=evaluations,
        )

    @app.post("/gen", response_model=GenResponse)
    def gen(req: GenRequest) -> GenResponse:
        try:
            problem = generate(
                GenSpec(seed=req.seed, n=req.n, pattern=req.pattern, m=req.m)
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        payload = _payload_from_problem(problem)
        text = format_problem(
            ProblemFile(problem.strip.vertices, problem.nodes, "none")
        )
        return GenResponse(problem=payload, text=text)

    return app


app = create_app()
