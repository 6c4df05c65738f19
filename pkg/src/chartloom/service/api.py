"""HTTP session service for the reuse wizard and scripted clients.

All bodies are JSON except the SVG and CSV uploads, which post raw text.
Unknown sessions give 404, out-of-order pipeline calls 409, invalid payloads
422.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse

from ..config import DEFAULT_CONFIG, Config
from ..decorations import Correction
from ..errors import ChartloomError, StepOutOfRange, UnknownField
from .store import Session, SessionStore, TransitionError

MAX_UPLOAD_BYTES = 20 * 1024 * 1024


def create_app(store: Optional[SessionStore] = None,
               config: Config = DEFAULT_CONFIG) -> FastAPI:
    app = FastAPI(title="chartloom", version="0.1.0")
    app.state.store = store or SessionStore()
    app.state.config = config

    def session_of(sid: str) -> Session:
        session = app.state.store.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"no session {sid}")
        return session

    @app.exception_handler(TransitionError)
    async def _transition(_, exc: TransitionError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.exception_handler(ChartloomError)
    async def _pipeline(_, exc: ChartloomError):
        return JSONResponse(
            status_code=422,
            content={"error": str(exc), "kind": type(exc).__name__})

    async def read_text(request: Request) -> str:
        body = await request.body()
        if len(body) > MAX_UPLOAD_BYTES:
            raise HTTPException(status_code=413, detail="upload exceeds 20 MB")
        return body.decode("utf-8")

    @app.post("/sessions")
    async def create_session(request: Request):
        svg = await read_text(request)
        session = app.state.store.create(app.state.config)
        with session.lock:
            payload = session.upload(svg)
            app.state.store.save(session)
        return {"id": session.id, **payload, "state": session.state_payload()}

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        session = session_of(sid)
        return {"id": session.id, "state": session.state_payload()}

    @app.get("/sessions/{sid}/decorations")
    async def get_decorations(sid: str):
        session = session_of(sid)
        return session.decoration_payload()

    @app.patch("/sessions/{sid}/decorations")
    async def patch_decorations(sid: str, body: list[dict]):
        session = session_of(sid)
        corrections = [Correction.from_dict(c) for c in body]
        with session.lock:
            payload = session.correct(corrections)
            app.state.store.save(session)
        return payload

    @app.post("/sessions/{sid}/deconstruct")
    async def run_deconstruct(sid: str):
        session = session_of(sid)
        with session.lock:
            payload = session.deconstruct()
            app.state.store.save(session)
        return payload

    @app.get("/sessions/{sid}/sample-data")
    async def sample_data(sid: str):
        session = session_of(sid)
        return Response(content=session.sample_csv(), media_type="text/csv")

    @app.post("/sessions/{sid}/dataset")
    async def load_dataset(sid: str, request: Request):
        session = session_of(sid)
        csv_text = await read_text(request)
        with session.lock:
            try:
                payload = session.load_dataset(csv_text)
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            app.state.store.save(session)
        return payload

    @app.get("/sessions/{sid}/plan")
    async def get_plan(sid: str):
        session = session_of(sid)
        return session.plan_payload()

    @app.post("/sessions/{sid}/steps/{k}")
    async def post_step(sid: str, k: int, body: dict):
        session = session_of(sid)
        with session.lock:
            try:
                payload = session.apply_step(k, body)
            except StepOutOfRange as exc:
                return JSONResponse(status_code=409, content={"error": str(exc)})
            except UnknownField as exc:
                return JSONResponse(status_code=422, content={"error": str(exc)})
            app.state.store.save(session)
        return payload

    @app.post("/sessions/{sid}/back")
    async def post_back(sid: str):
        session = session_of(sid)
        with session.lock:
            payload = session.back()
            app.state.store.save(session)
        return payload

    @app.get("/sessions/{sid}/export")
    async def export(sid: str):
        session = session_of(sid)
        return session.export()

    return app
