"""HTTP session service: mutate seeds, track functions, query invariants.

Sessions live in memory (optionally snapshotted to a state directory as
JSON); each session is single-writer behind its own lock while distinct
sessions proceed in parallel.  Every response carries canonical text
renderings so clients never do algebra themselves.

Status codes: 400 malformed request, 404 unknown session, 409 illegal
mutation or empty undo stack.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import catalog as cat
from .arith import ParseError, RationalFunction, parse as parse_rf, render
from .ensemble import ASeed, XSeed, a_names, mutate_a, mutate_x, x_names
from .quiver import FrozenNodeError, Quiver


@dataclass
class TrackedFunction:
    text: str
    flavor: str
    function: RationalFunction
    values: List[str]  # one rendering per history step, oldest first

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "flavor": self.flavor,
            "current": self.values[-1],
            "values": list(self.values),
            "invariant": len(set(self.values)) == 1,
        }


@dataclass
class Session:
    id: str
    catalog_name: Optional[str]
    base_quiver: Quiver
    labels: Tuple[str, ...]
    a_labels: Tuple[str, ...]
    x_labels: Tuple[str, ...]
    history: List[int] = field(default_factory=list)
    a_stack: List[ASeed] = field(default_factory=list)
    # X-side values blow up much faster than A-side ones, so the X walk is
    # computed lazily (a prefix cache of the history) and only on request.
    x_stack: List[XSeed] = field(default_factory=list)
    tracked: List[TrackedFunction] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @staticmethod
    def create(catalog_name: Optional[str], quiver: Quiver,
               labels=None, a_labels=None, x_labels=None) -> "Session":
        labels = tuple(labels) if labels else tuple(
            str(i + 1) for i in range(quiver.n))
        a_labels = tuple(a_labels) if a_labels else a_names(quiver)
        x_labels = tuple(x_labels) if x_labels else x_names(quiver)
        s = Session(
            id=uuid.uuid4().hex[:12],
            catalog_name=catalog_name,
            base_quiver=quiver,
            labels=labels,
            a_labels=a_labels,
            x_labels=x_labels,
        )
        s.a_stack.append(ASeed.initial(quiver, a_labels))
        s.x_stack.append(XSeed.initial(quiver, x_labels))
        return s

    @property
    def a_seed(self) -> ASeed:
        return self.a_stack[-1]

    def x_seed_at(self, step: int) -> XSeed:
        while len(self.x_stack) <= step:
            k = len(self.x_stack) - 1
            self.x_stack.append(mutate_x(self.x_stack[-1], self.history[k]))
        return self.x_stack[step]

    def _value_of(self, f: RationalFunction, flavor: str, step: int) -> str:
        if flavor == "a":
            seed = self.a_stack[step]
            images = dict(zip(self.a_labels, seed.vars))
        else:
            seed = self.x_seed_at(step)
            images = dict(zip(self.x_labels, seed.vars))
        return render(f.substitute(images))

    def mutate(self, node: int) -> None:
        self.a_stack.append(mutate_a(self.a_seed, node))
        self.history.append(node)
        for t in self.tracked:
            t.values.append(self._value_of(t.function, t.flavor, len(self.history)))

    def undo(self) -> None:
        if not self.history:
            raise IndexError("nothing to undo")
        self.history.pop()
        self.a_stack.pop()
        del self.x_stack[len(self.history) + 1:]
        for t in self.tracked:
            t.values.pop()

    def track(self, text: str, flavor: str) -> TrackedFunction:
        names = self.a_labels if flavor == "a" else self.x_labels
        f = parse_rf(text, names)
        t = TrackedFunction(
            text=text,
            flavor=flavor,
            function=f,
            values=[self._value_of(f, flavor, s) for s in range(len(self.history) + 1)],
        )
        self.tracked.append(t)
        return t

    def invariant_report(self) -> List[dict]:
        if self.catalog_name is None:
            return []
        out = []
        for rec in cat.invariant_records(self.catalog_name):
            initial = render(rec.function)
            current = self._value_of(rec.function, rec.flavor, len(self.history))
            out.append({
                "name": rec.name,
                "flavor": rec.flavor,
                "initial": initial,
                "current": current,
                "unchanged": initial == current,
            })
        return out

    def to_dict(self, include_x: bool = False) -> dict:
        out = {
            "id": self.id,
            "catalog": self.catalog_name,
            "quiver": self.a_seed.quiver.to_dict(),
            "labels": list(self.labels),
            "a_names": list(self.a_labels),
            "x_names": list(self.x_labels),
            "history": list(self.history),
            "a_vars": [render(v) for v in self.a_seed.vars],
            "tracked": [t.to_dict() for t in self.tracked],
        }
        if include_x:
            seed = self.x_seed_at(len(self.history))
            out["x_vars"] = [render(v) for v in seed.vars]
        return out

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "catalog": self.catalog_name,
            "base_quiver": self.base_quiver.to_dict(),
            "labels": list(self.labels),
            "a_names": list(self.a_labels),
            "x_names": list(self.x_labels),
            "history": list(self.history),
            "tracked": [{"text": t.text, "flavor": t.flavor} for t in self.tracked],
        }

    @staticmethod
    def restore(snap: dict) -> "Session":
        s = Session.create(
            snap.get("catalog"),
            Quiver.from_dict(snap["base_quiver"]),
            snap.get("labels"),
            snap.get("a_names"),
            snap.get("x_names"),
        )
        s.id = snap["id"]
        for node in snap.get("history", ()):
            s.mutate(node)
        for t in snap.get("tracked", ()):
            s.track(t["text"], t["flavor"])
        return s


def create_app(state_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="cluster ensemble explorer backend")
    # the explorer is served statically from another origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: Dict[str, Session] = {}
    registry_lock = threading.Lock()

    if state_dir:
        os.makedirs(state_dir, exist_ok=True)
        for fn in sorted(os.listdir(state_dir)):
            if fn.endswith(".json"):
                with open(os.path.join(state_dir, fn)) as fh:
                    s = Session.restore(json.load(fh))
                sessions[s.id] = s

    def persist(s: Session) -> None:
        if state_dir:
            path = os.path.join(state_dir, f"{s.id}.json")
            with open(path, "w") as fh:
                json.dump(s.snapshot(), fh)

    def error(code: int, message: str) -> JSONResponse:
        return JSONResponse({"error": message}, status_code=code)

    async def body_of(request: Request) -> Optional[dict]:
        try:
            data = await request.json()
        except Exception:
            return None
        return data if isinstance(data, dict) else None

    def get_session(sid: str) -> Optional[Session]:
        return sessions.get(sid)

    @app.get("/catalog")
    def catalog_listing():
        entries = []
        for name in cat.catalog_names():
            if "(" in name and not name[-1].isdigit():
                entries.append({"name": name, "parametric": True})
            else:
                e = cat.build(name)
                entries.append({
                    "name": name,
                    "parametric": False,
                    "nodes": e.quiver.n,
                    "frozen": sorted(e.quiver.frozen),
                    "description": e.description,
                })
        return {"entries": entries}

    @app.post("/session")
    async def create_session(request: Request):
        data = await body_of(request)
        if data is None:
            return error(400, "malformed JSON body")
        if "catalog" in data:
            try:
                entry = cat.build(data["catalog"])
            except cat.UnknownEntry:
                return error(400, f"unknown catalog entry {data['catalog']!r}")
            s = Session.create(data["catalog"], entry.quiver, entry.labels,
                               entry.a_labels, entry.x_labels)
        elif "quiver" in data:
            try:
                q = Quiver.from_dict(data["quiver"])
            except Exception as exc:
                return error(400, f"bad quiver: {exc}")
            s = Session.create(None, q)
        else:
            return error(400, "body must name a catalog entry or carry a quiver")
        with registry_lock:
            sessions[s.id] = s
        persist(s)
        return s.to_dict()

    @app.get("/session/{sid}")
    def get_state(sid: str, x: bool = False):
        s = get_session(sid)
        if s is None:
            return error(404, "unknown session")
        with s.lock:
            return s.to_dict(include_x=x)

    @app.post("/session/{sid}/mutate")
    async def mutate_session(sid: str, request: Request):
        s = get_session(sid)
        if s is None:
            return error(404, "unknown session")
        data = await body_of(request)
        if data is None or not isinstance(data.get("node"), int):
            return error(400, "body must carry an integer node index")
        node = data["node"]
        with s.lock:
            if not (0 <= node < s.base_quiver.n) or node in s.base_quiver.frozen:
                return error(409, f"node {node} is frozen or out of range")
            try:
                s.mutate(node)
            except FrozenNodeError as exc:
                return error(409, str(exc))
            persist(s)
            return s.to_dict()

    @app.post("/session/{sid}/undo")
    def undo_session(sid: str):
        s = get_session(sid)
        if s is None:
            return error(404, "unknown session")
        with s.lock:
            try:
                s.undo()
            except IndexError:
                return error(409, "history is empty")
            persist(s)
            return s.to_dict()

    @app.post("/session/{sid}/track")
    async def track_function(sid: str, request: Request):
        s = get_session(sid)
        if s is None:
            return error(404, "unknown session")
        data = await body_of(request)
        if data is None or not isinstance(data.get("text"), str):
            return error(400, "body must carry a function string")
        flavor = data.get("flavor", "a")
        if flavor not in ("a", "x"):
            return error(400, "flavor must be 'a' or 'x'")
        with s.lock:
            try:
                t = s.track(data["text"], flavor)
            except ParseError as exc:
                return error(400, f"parse error: {exc}")
            except ZeroDivisionError as exc:
                return error(400, f"undefined value: {exc}")
            persist(s)
            return t.to_dict()

    @app.get("/session/{sid}/invariants")
    def session_invariants(sid: str):
        s = get_session(sid)
        if s is None:
            return error(404, "unknown session")
        with s.lock:
            return {"invariants": s.invariant_report()}

    return app
