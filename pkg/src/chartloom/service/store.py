"""Pipeline sessions: state machine, per-session locking, optional persistence."""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

from ..config import DEFAULT_CONFIG, Config
from ..decorations import (
    Correction,
    DecorationModel,
    apply_correction,
    detect_decorations,
    strip_decorations,
)
from ..grec.deconstruct import deconstruct
from ..grec.model import GrecTemplate
from ..ingest.scene import NormalizedScene, filter_noise, normalize_scene
from ..reuse import (
    DataTable,
    ReuseSession,
    check_compatibility,
    generate_sample_data,
    infer_schema,
)

UPLOADED = "Uploaded"
DECORATIONS_CONFIRMED = "DecorationsConfirmed"
DECONSTRUCTED = "Deconstructed"
DATA_LOADED = "DataLoaded"
MAPPING = "Mapping"
DONE = "Done"

_ORDER = [UPLOADED, DECORATIONS_CONFIRMED, DECONSTRUCTED, DATA_LOADED, MAPPING, DONE]


class TransitionError(Exception):
    """Request arrived out of pipeline order (HTTP 409)."""


@dataclass
class Session:
    id: str
    config: Config = field(default_factory=lambda: DEFAULT_CONFIG)
    state: str = UPLOADED
    scene: Optional[NormalizedScene] = None
    decoration: Optional[DecorationModel] = None
    content: Optional[NormalizedScene] = None
    template: Optional[GrecTemplate] = None
    table: Optional[DataTable] = None
    reuse: Optional[ReuseSession] = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def _at_least(self, state: str) -> bool:
        return _ORDER.index(self.state) >= _ORDER.index(state)

    # ---- pipeline transitions

    def upload(self, svg_text: str) -> dict:
        self.scene = filter_noise(normalize_scene(svg_text, self.config), self.config)
        self.decoration = detect_decorations(self.scene, self.config)
        self.state = UPLOADED
        return self.decoration_payload()

    def decoration_payload(self) -> dict:
        claimed = self.decoration.claimed_ids()
        texts = [
            {"id": t.id, "content": t.content, "x": t.x, "y": t.y,
             "claimed": t.id in claimed}
            for t in (self.scene.texts() if self.scene else [])
        ]
        return {
            "decorations": self.decoration.to_dict(),
            "summary": self.decoration.summary(),
            "texts": texts,
        }

    def correct(self, corrections: list[Correction]) -> dict:
        if self.state != UPLOADED:
            raise TransitionError("decorations are frozen once deconstruction ran")
        for c in corrections:
            self.decoration = apply_correction(self.decoration, self.scene, c,
                                               self.config)
        return self.decoration_payload()

    def deconstruct(self) -> dict:
        if not self._at_least(UPLOADED) or self.scene is None:
            raise TransitionError("upload a chart first")
        if self._at_least(DECONSTRUCTED):
            raise TransitionError("chart is already deconstructed")
        self.state = DECORATIONS_CONFIRMED
        self.content = strip_decorations(self.scene, self.decoration, self.config)
        self.template = deconstruct(self.content, self.decoration, self.config)
        self.state = DECONSTRUCTED
        return {
            "template": self.template.to_dict(),
            "schema": infer_schema(self.template).to_dict(),
            "warnings": list(self.template.warnings),
        }

    def sample_csv(self) -> str:
        if not self._at_least(DECONSTRUCTED):
            raise TransitionError("deconstruct the chart before asking for sample data")
        schema = infer_schema(self.template)
        return generate_sample_data(schema, self.template).to_csv()

    def load_dataset(self, csv_text: str) -> dict:
        if not self._at_least(DECONSTRUCTED):
            raise TransitionError("deconstruct the chart before loading data")
        self.table = DataTable.from_csv(csv_text)
        schema = infer_schema(self.template)
        report = check_compatibility(schema, self.table)
        self.reuse = ReuseSession(template=self.template, table=self.table,
                                  config=self.config)
        self.state = DATA_LOADED
        return {
            "compatibility": report.to_dict(),
            "plan": [s.to_dict() for s in self.reuse.plan],
        }

    def plan_payload(self) -> dict:
        if not self._at_least(DATA_LOADED):
            raise TransitionError("load a dataset before asking for the plan")
        return {
            **self.reuse.to_dict(),
            "partialSvg": self.reuse.partial_render,
            "state": self.state_payload(),
        }

    def apply_step(self, index: int, choice: dict) -> dict:
        if not self._at_least(DATA_LOADED):
            raise TransitionError("load a dataset before mapping steps")
        self.reuse.apply_step(index, choice)
        self.state = DONE if self.reuse.done else MAPPING
        return {
            "cursor": self.reuse.cursor,
            "done": self.reuse.done,
            "partialSvg": self.reuse.partial_render,
            "warnings": list(self.reuse.warnings),
        }

    def back(self) -> dict:
        if not self._at_least(DATA_LOADED):
            raise TransitionError("nothing to go back from")
        self.reuse.back()
        self.state = MAPPING if not self.reuse.done else DONE
        return {
            "cursor": self.reuse.cursor,
            "done": self.reuse.done,
            "partialSvg": self.reuse.partial_render,
        }

    def export(self) -> dict:
        if self.reuse is None or not self.reuse.done:
            raise TransitionError("all steps need choices before exporting")
        svg = self.reuse.final_svg()
        return {
            "svg": svg,
            "template": bound_template_dict(self.template, self.reuse),
            "config": self.config.to_dict(),
        }

    def state_payload(self) -> dict:
        step = self.reuse.cursor if self.reuse is not None else None
        return {"state": self.state, "step": step}

    # ---- persistence

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "state": self.state,
            "config": self.config.to_dict(),
            "scene": self.scene.to_json() if self.scene else None,
            "decoration": self.decoration.to_dict() if self.decoration else None,
            "content": self.content.to_json() if self.content else None,
            "template": self.template.to_dict() if self.template else None,
            "table": self.table.to_dict() if self.table else None,
            "choices": ({str(k): v for k, v in self.reuse.choices.items()}
                        if self.reuse else None),
            "cursor": self.reuse.cursor if self.reuse else None,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Session":
        s = cls(id=raw["id"], config=Config.from_dict(raw.get("config") or {}))
        s.state = raw["state"]
        if raw.get("scene"):
            s.scene = NormalizedScene.from_json(raw["scene"])
        if raw.get("decoration"):
            s.decoration = DecorationModel.from_dict(raw["decoration"])
        if raw.get("content"):
            s.content = NormalizedScene.from_json(raw["content"])
        if raw.get("template"):
            s.template = GrecTemplate.from_dict(raw["template"])
        if raw.get("table"):
            s.table = DataTable.from_dict(raw["table"])
        if s.template is not None and s.table is not None and raw.get("choices") is not None:
            s.reuse = ReuseSession(template=s.template, table=s.table, config=s.config)
            for k in sorted(raw["choices"], key=int):
                s.reuse.apply_step(int(k), raw["choices"][k])
            cursor = raw.get("cursor")
            while cursor is not None and s.reuse.cursor > cursor:
                s.reuse.back()
        return s


def bound_template_dict(template: GrecTemplate, reuse: ReuseSession) -> dict:
    """Template JSON with the user's field bindings filled in."""
    doc = template.to_dict()
    bindings = {}
    for step in reuse.plan:
        choice = reuse.choices.get(step.index)
        if choice is None:
            continue
        if step.kind == "MapEncoding":
            enc = doc["encodings"][step.encoding_index]
            enc["fieldName"] = choice["field"]
            if choice.get("channel"):
                enc["channel"] = choice["channel"]
        else:
            bindings[str(step.level)] = choice["field"]
    doc["levelFields"] = bindings
    return doc


class SessionStore:
    """In-memory session map with optional one-file-per-session persistence."""

    def __init__(self, directory: Optional[str] = None):
        self.directory = directory
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        if directory:
            os.makedirs(directory, exist_ok=True)

    def create(self, config: Config = DEFAULT_CONFIG) -> Session:
        sid = uuid.uuid4().hex[:12]
        session = Session(id=sid, config=config)
        with self._lock:
            self._sessions[sid] = session
        return session

    def get(self, sid: str) -> Optional[Session]:
        with self._lock:
            session = self._sessions.get(sid)
        if session is None and self.directory:
            path = os.path.join(self.directory, f"{sid}.json")
            if os.path.exists(path):
                with open(path) as fh:
                    session = Session.from_dict(json.load(fh))
                with self._lock:
                    self._sessions[sid] = session
        return session

    def save(self, session: Session) -> None:
        if not self.directory:
            return
        path = os.path.join(self.directory, f"{session.id}.json")
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(session.to_dict(), fh)
        os.replace(tmp, path)
