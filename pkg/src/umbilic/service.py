"""FastAPI service exposing the toolkit over HTTP.

Domain errors map to 400, violated mathematical preconditions to 409 and
anything unexpected to 500; payloads are the pydantic models of
``umbilic.schemas``.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers
from .errors import InputError, PreconditionError
from .schemas import (
    ClassifyRequest,
    ClassifyResponse,
    CongruentRequest,
    CongruentResponse,
    EncodeRequest,
    EncodeResponse,
    ProfileRequest,
    ProfileResponse,
    SelftestRequest,
    SelftestResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="umbilic",
        description="Classification toolkit for umbilical submanifolds of H^k x S^(n-k+1)",
    )

    @app.exception_handler(InputError)
    async def input_error(request: Request, exc: InputError):
        return JSONResponse(
            status_code=400, content={"error": str(exc), "kind": type(exc).__name__}
        )

    @app.exception_handler(PreconditionError)
    async def precondition_error(request: Request, exc: PreconditionError):
        return JSONResponse(
            status_code=409, content={"error": str(exc), "kind": type(exc).__name__}
        )

    @app.post("/encode", response_model=EncodeResponse)
    async def encode(req: EncodeRequest):
        return handlers.handle_encode(req)

    @app.post("/congruent", response_model=CongruentResponse)
    async def congruent(req: CongruentRequest):
        return handlers.handle_congruent(req)

    @app.post("/classify", response_model=ClassifyResponse)
    async def classify(req: ClassifyRequest):
        return handlers.handle_classify(req)

    @app.post("/profile", response_model=ProfileResponse)
    async def profile(req: ProfileRequest):
        return handlers.handle_profile(req)

    @app.post("/selftest", response_model=SelftestResponse)
    async def run_selftest(req: SelftestRequest):
        return handlers.handle_selftest(req)

    return app


app = create_app()
