"""JSON document formats for monoids, acts, maps, and friends.

Documents are flat JSON objects with a `kind` and a `name`; files may
hold a single document or a list.  Cross references (an act naming its
monoid, a map naming its endpoints) resolve within the supplied file
set, and an act may instead embed its monoid inline.  Canonical
printing is deterministic: sorted keys, two-space indent, dense integer
arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from .core import Act, ActMap, FiniteMonoid, StructureError
from .classes import ActClass, explicit_act_class
from .homsearch import Square

KINDS = ("monoid", "act", "map", "square", "class", "universe-spec", "job")


class DocumentError(ValueError):
    """Schema violation with a path-addressed message."""


@dataclass(frozen=True)
class Document:
    kind: str
    name: str
    body: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, "name": self.name, **self.body}


def _fail(path: str, message: str):
    raise DocumentError(f"{path}: {message}")


def _expect_int(value, path: str, lo: int | None = None, hi: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(path, f"expected an integer, got {type(value).__name__}")
    if lo is not None and value < lo:
        _fail(path, f"expected >= {lo}, got {value}")
    if hi is not None and value >= hi:
        _fail(path, f"expected < {hi}, got {value}")
    return value


def _expect_table(value, path: str, rows: int, cols: int, hi: int) -> list[list[int]]:
    if not isinstance(value, list) or len(value) != rows:
        _fail(path, f"expected a list of {rows} rows")
    out = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            _fail(f"{path}[{i}]", f"expected a list of {cols} integers")
        out.append([_expect_int(v, f"{path}[{i}][{j}]", 0, hi) for j, v in enumerate(row)])
    return out


def _expect_str(value, path: str) -> str:
    if not isinstance(value, str) or not value:
        _fail(path, "expected a nonempty string")
    return value


def parse_text(text: str, where: str = "<input>") -> list[Document]:
    """Parse one document or a list of documents from JSON text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{where}: invalid JSON: {exc}") from exc
    items = raw if isinstance(raw, list) else [raw]
    docs = []
    for i, item in enumerate(items):
        path = f"{where}$[{i}]" if isinstance(raw, list) else f"{where}$"
        if not isinstance(item, Mapping):
            _fail(path, "expected a JSON object")
        kind = item.get("kind")
        if kind not in KINDS:
            _fail(f"{path}.kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
        name = _expect_str(item.get("name"), f"{path}.name")
        body = {k: v for k, v in item.items() if k not in ("kind", "name")}
        docs.append(Document(kind, name, body))
    return docs


def print_document(doc: Document) -> str:
    return json.dumps(doc.to_dict(), sort_keys=True, indent=2) + "\n"


def print_documents(docs: list[Document]) -> str:
    payload = [d.to_dict() for d in docs]
    if len(payload) == 1:
        return json.dumps(payload[0], sort_keys=True, indent=2) + "\n"
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# resolution into core objects


class DocumentSet:
    """Named documents resolved into core values, with cross references."""

    def __init__(self):
        self.documents: list[Document] = []
        self.monoids: dict[str, FiniteMonoid] = {}
        self.acts: dict[str, Act] = {}
        self.maps: dict[str, ActMap] = {}
        self.squares: dict[str, Square] = {}
        self.classes: dict[str, ActClass] = {}
        self.universe_specs: dict[str, tuple[str, int]] = {}
        self.jobs: dict[str, dict] = {}

    @classmethod
    def from_documents(cls, docs: list[Document]) -> "DocumentSet":
        out = cls()
        out.documents = list(docs)
        seen: set[tuple[str, str]] = set()
        for doc in docs:
            key = (doc.kind, doc.name)
            if key in seen:
                raise DocumentError(f"duplicate {doc.kind} document named {doc.name!r}")
            seen.add(key)
        for doc in docs:
            if doc.kind == "monoid":
                out.monoids[doc.name] = _build_monoid(doc.body, f"monoid {doc.name!r}: $")
        for doc in docs:
            if doc.kind == "act":
                out.acts[doc.name] = out._build_act(doc.body, f"act {doc.name!r}: $")
        for doc in docs:
            if doc.kind == "map":
                out.maps[doc.name] = out._build_map(doc.body, f"map {doc.name!r}: $")
        for doc in docs:
            if doc.kind == "square":
                out.squares[doc.name] = out._build_square(doc.body, f"square {doc.name!r}: $")
            elif doc.kind == "class":
                out.classes[doc.name] = out._build_class(doc.body, f"class {doc.name!r}: $")
            elif doc.kind == "universe-spec":
                out.universe_specs[doc.name] = out._build_universe_spec(
                    doc.body, f"universe-spec {doc.name!r}: $"
                )
            elif doc.kind == "job":
                out.jobs[doc.name] = doc.body
        return out

    def _monoid_ref(self, value, path: str) -> FiniteMonoid:
        if isinstance(value, str):
            if value not in self.monoids:
                _fail(path, f"unknown monoid {value!r}")
            return self.monoids[value]
        if isinstance(value, Mapping):
            return _build_monoid(
                {k: v for k, v in value.items() if k not in ("kind", "name")}, path
            )
        _fail(path, "expected a monoid name or an inline monoid object")

    def _act_ref(self, value, path: str) -> Act:
        name = _expect_str(value, path)
        if name not in self.acts:
            _fail(path, f"unknown act {name!r}")
        return self.acts[name]

    def _map_ref(self, value, path: str) -> ActMap:
        name = _expect_str(value, path)
        if name not in self.maps:
            _fail(path, f"unknown map {name!r}")
        return self.maps[name]

    def _build_act(self, body: dict, path: str) -> Act:
        monoid = self._monoid_ref(body.get("monoid"), f"{path}.monoid")
        side = body.get("side", "right")
        if side not in ("right", "left"):
            _fail(f"{path}.side", f"expected 'right' or 'left', got {side!r}")
        size = _expect_int(body.get("size"), f"{path}.size", 0)
        rows, cols = (size, monoid.size) if side == "right" else (monoid.size, size)
        table = _expect_table(body.get("action"), f"{path}.action", rows, cols, size)
        centred = body.get("centred", False)
        if not isinstance(centred, bool):
            _fail(f"{path}.centred", "expected a boolean")
        try:
            return Act(monoid, side, size, tuple(tuple(r) for r in table), centred=centred)
        except StructureError as exc:
            raise DocumentError(f"{path}: {exc}") from exc

    def _build_map(self, body: dict, path: str) -> ActMap:
        source = self._act_ref(body.get("source"), f"{path}.source")
        target = self._act_ref(body.get("target"), f"{path}.target")
        values = body.get("values")
        if not isinstance(values, list):
            _fail(f"{path}.values", "expected a list of integers")
        vals = [
            _expect_int(v, f"{path}.values[{i}]", 0, target.size)
            for i, v in enumerate(values)
        ]
        try:
            return ActMap(source, target, tuple(vals))
        except StructureError as exc:
            raise DocumentError(f"{path}: {exc}") from exc

    def _build_square(self, body: dict, path: str) -> Square:
        f = self._map_ref(body.get("f"), f"{path}.f")
        g = self._map_ref(body.get("g"), f"{path}.g")
        u = self._map_ref(body.get("u"), f"{path}.u")
        v = self._map_ref(body.get("v"), f"{path}.v")
        try:
            return Square(f, g, u, v)
        except (StructureError, ValueError) as exc:
            raise DocumentError(f"{path}: {exc}") from exc

    def _build_class(self, body: dict, path: str) -> ActClass:
        acts = body.get("acts")
        if not isinstance(acts, list) or not acts:
            _fail(f"{path}.acts", "expected a nonempty list of act names")
        members = [self._act_ref(a, f"{path}.acts[{i}]") for i, a in enumerate(acts)]
        flags = body.get("closed_under", {})
        if not isinstance(flags, Mapping):
            _fail(f"{path}.closed_under", "expected an object of booleans")
        for key in flags:
            if key not in ("coproducts", "direct_summands", "retracts"):
                _fail(f"{path}.closed_under.{key}", "unknown closure flag")
        return explicit_act_class(
            members,
            closed_coproducts=bool(flags.get("coproducts", True)),
            closed_summands=bool(flags.get("direct_summands", True)),
            closed_retracts=bool(flags.get("retracts", True)),
        )

    def _build_universe_spec(self, body: dict, path: str) -> tuple[str, int]:
        monoid = _expect_str(body.get("monoid"), f"{path}.monoid")
        if monoid not in self.monoids:
            _fail(f"{path}.monoid", f"unknown monoid {monoid!r}")
        n = _expect_int(body.get("max_act_size"), f"{path}.max_act_size", 1)
        return monoid, n


def _build_monoid(body: dict, path: str) -> FiniteMonoid:
    size = _expect_int(body.get("size"), f"{path}.size", 1)
    identity = _expect_int(body.get("identity"), f"{path}.identity", 0, size)
    table = _expect_table(body.get("mul"), f"{path}.mul", size, size, size)
    zero = body.get("zero")
    if zero is not None:
        zero = _expect_int(zero, f"{path}.zero", 0, size)
    try:
        return FiniteMonoid(size, tuple(tuple(r) for r in table), identity, zero)
    except StructureError as exc:
        raise DocumentError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# emitting documents from objects


def monoid_document(name: str, m: FiniteMonoid) -> Document:
    body = {"size": m.size, "identity": m.identity, "mul": [list(r) for r in m.mul]}
    if m.zero is not None:
        body["zero"] = m.zero
    return Document("monoid", name, body)


def act_document(name: str, a: Act, monoid_name: str | None = None) -> Document:
    body = {
        "monoid": monoid_name
        if monoid_name is not None
        else monoid_document("anonymous", a.monoid).to_dict(),
        "side": a.side,
        "size": a.size,
        "action": [list(r) for r in a.action],
    }
    if isinstance(body["monoid"], dict):
        body["monoid"] = {
            k: v for k, v in body["monoid"].items() if k not in ("kind", "name")
        }
    if a.centred:
        body["centred"] = True
    return Document("act", name, body)


def map_document(name: str, f: ActMap, source: str, target: str) -> Document:
    return Document(
        "map", name, {"source": source, "target": target, "values": list(f.values)}
    )
