"""Self-describing documents for squares and spaces.

One versioned JSON layout covers all object kinds.  Keys appear in a
fixed order (schema_version, kind, parameters, provenance, payload) and
documents produced by the constructors store blocks sorted and classes in
canonical order, so golden files diff byte for byte.  Loading performs
structural checks only; semantic diagnosis goes through
:func:`document_report`, which works on the raw payload and therefore can
describe damaged data instead of refusing to build it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any

from .core import (
    HeffterSpace,
    HeffterSystem,
    Block,
    PlainSpace,
    ValidationReport,
    heffter_space_report,
    plain_space_report,
)
from .magic import MagicSquare, SquareArray, square_report

SCHEMA_VERSION = "1"

KIND_HEFFTER = "heffter_space"
KIND_PLAIN = "plain_space"
KIND_SQUARE = "square"
KINDS = (KIND_HEFFTER, KIND_PLAIN, KIND_SQUARE)


class DocumentError(ValueError):
    """The input is not a structurally well-formed document."""


def _int(value: Any, context: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(f"{context} must be an integer, got {value!r}")
    return value


def _label(value: Any, context: str) -> str:
    if not isinstance(value, str) or not value:
        raise DocumentError(f"{context} must be a nonempty string, got {value!r}")
    return value


@dataclass(frozen=True, eq=True)
class SpaceDocument:
    """A serialized square or space plus its parameters and provenance."""

    kind: str
    parameters: dict[str, Any]
    payload: dict[str, Any]
    provenance: str = ""
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if self.schema_version != SCHEMA_VERSION:
            raise DocumentError(f"unsupported schema_version {self.schema_version!r}")
        if self.kind not in KINDS:
            raise DocumentError(f"unknown kind {self.kind!r}, expected one of {KINDS}")
        if not isinstance(self.provenance, str):
            raise DocumentError(f"provenance must be a string, got {self.provenance!r}")
        params, payload = _normalize[self.kind](self.parameters, self.payload)
        object.__setattr__(self, "parameters", params)
        object.__setattr__(self, "payload", payload)


def _normalize_heffter(params: dict, payload: dict) -> tuple[dict, dict]:
    if set(params) != {"v", "k", "r", "shiftable"}:
        raise DocumentError(f"heffter_space parameters must be v, k, r, shiftable; got {sorted(params)}")
    v = _int(params["v"], "v")
    k = _int(params["k"], "k")
    r = _int(params["r"], "r")
    if not isinstance(params["shiftable"], bool):
        raise DocumentError(f"shiftable must be a boolean, got {params['shiftable']!r}")
    if set(payload) != {"classes"}:
        raise DocumentError(f"heffter_space payload must hold classes; got {sorted(payload)}")
    classes = [
        [[_int(x, "block element") for x in block] for block in _list(cls, "class")]
        for cls in _list(payload["classes"], "classes")
    ]
    return (
        {"v": v, "k": k, "r": r, "shiftable": params["shiftable"]},
        {"classes": classes},
    )


def _normalize_plain(params: dict, payload: dict) -> tuple[dict, dict]:
    if set(params) != {"w", "n", "r"}:
        raise DocumentError(f"plain_space parameters must be w, n, r; got {sorted(params)}")
    w = _int(params["w"], "w")
    n = _int(params["n"], "n")
    r = _int(params["r"], "r")
    if set(payload) != {"points", "classes"}:
        raise DocumentError(f"plain_space payload must hold points and classes; got {sorted(payload)}")
    points = [_label(p, "point") for p in _list(payload["points"], "points")]
    classes = [
        [[_label(x, "block point") for x in block] for block in _list(cls, "class")]
        for cls in _list(payload["classes"], "classes")
    ]
    return {"w": w, "n": n, "r": r}, {"points": points, "classes": classes}


def _normalize_square(params: dict, payload: dict) -> tuple[dict, dict]:
    if set(params) != {"n"}:
        raise DocumentError(f"square parameters must be n; got {sorted(params)}")
    n = _int(params["n"], "n")
    if set(payload) != {"rows"}:
        raise DocumentError(f"square payload must hold rows; got {sorted(payload)}")
    rows = [[_int(x, "entry") for x in _list(row, "row")] for row in _list(payload["rows"], "rows")]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise DocumentError(f"square payload must be {n}x{n} row-major entries")
    return {"n": n}, {"rows": rows}


def _list(value: Any, context: str) -> list:
    if not isinstance(value, list):
        raise DocumentError(f"{context} must be an array, got {type(value).__name__}")
    return value


_normalize = {
    KIND_HEFFTER: _normalize_heffter,
    KIND_PLAIN: _normalize_plain,
    KIND_SQUARE: _normalize_square,
}


# ---------------------------------------------------------------------------
# object <-> document


def document_for_space(space: HeffterSpace, provenance: str | None = None, canonical: bool = True) -> SpaceDocument:
    src = space.canonical() if canonical else space
    classes = [[list(b.elements) for b in cls.blocks] for cls in src.classes]
    return SpaceDocument(
        kind=KIND_HEFFTER,
        parameters={"v": space.v, "k": space.k, "r": space.r, "shiftable": space.shiftable},
        payload={"classes": classes},
        provenance=space.provenance if provenance is None else provenance,
    )


def document_for_plain(space: PlainSpace, provenance: str | None = None, canonical: bool = True) -> SpaceDocument:
    src = space.canonical() if canonical else space
    classes = [[list(block) for block in cls] for cls in src.classes]
    return SpaceDocument(
        kind=KIND_PLAIN,
        parameters={"w": space.w, "n": space.n, "r": space.r},
        payload={"points": list(src.points), "classes": classes},
        provenance=space.provenance if provenance is None else provenance,
    )


def document_for_square(square: SquareArray | MagicSquare, provenance: str = "") -> SpaceDocument:
    base = square.base if isinstance(square, MagicSquare) else square
    return SpaceDocument(
        kind=KIND_SQUARE,
        parameters={"n": base.n},
        payload={"rows": [list(row) for row in base.entries]},
        provenance=provenance,
    )


def space_from_document(doc: SpaceDocument) -> HeffterSpace:
    if doc.kind != KIND_HEFFTER:
        raise DocumentError(f"expected a heffter_space document, got {doc.kind}")
    p = doc.parameters
    classes = tuple(
        HeffterSystem(p["v"], p["k"], tuple(Block(block) for block in cls))
        for cls in doc.payload["classes"]
    )
    return HeffterSpace(p["v"], p["k"], p["r"], classes, shiftable=p["shiftable"], provenance=doc.provenance)


def plain_from_document(doc: SpaceDocument) -> PlainSpace:
    if doc.kind != KIND_PLAIN:
        raise DocumentError(f"expected a plain_space document, got {doc.kind}")
    p = doc.parameters
    points = tuple(doc.payload["points"])
    classes = tuple(tuple(tuple(block) for block in cls) for cls in doc.payload["classes"])
    return PlainSpace(p["w"], p["n"], p["r"], points, classes, provenance=doc.provenance)


def square_from_document(doc: SpaceDocument) -> SquareArray:
    if doc.kind != KIND_SQUARE:
        raise DocumentError(f"expected a square document, got {doc.kind}")
    return SquareArray(doc.parameters["n"], tuple(tuple(row) for row in doc.payload["rows"]))


# ---------------------------------------------------------------------------
# text form


_PARAM_ORDER = {
    KIND_HEFFTER: ("v", "k", "r", "shiftable"),
    KIND_PLAIN: ("w", "n", "r"),
    KIND_SQUARE: ("n",),
}

_PAYLOAD_ORDER = {
    KIND_HEFFTER: ("classes",),
    KIND_PLAIN: ("points", "classes"),
    KIND_SQUARE: ("rows",),
}


def save_document(doc: SpaceDocument) -> str:
    """Serialize with a fixed key order; decimal integers, two-space indent."""
    data = {
        "schema_version": doc.schema_version,
        "kind": doc.kind,
        "parameters": {key: doc.parameters[key] for key in _PARAM_ORDER[doc.kind]},
        "provenance": doc.provenance,
        "payload": {key: doc.payload[key] for key in _PAYLOAD_ORDER[doc.kind]},
    }
    return json.dumps(data, indent=2) + "\n"


def load_document(text: str) -> SpaceDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocumentError(f"not valid JSON: {err}") from None
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    expected = {"schema_version", "kind", "parameters", "provenance", "payload"}
    if set(data) != expected:
        raise DocumentError(f"document keys must be {sorted(expected)}, got {sorted(data)}")
    if not isinstance(data["parameters"], dict) or not isinstance(data["payload"], dict):
        raise DocumentError("parameters and payload must be JSON objects")
    return SpaceDocument(
        kind=data["kind"],
        parameters=data["parameters"],
        payload=data["payload"],
        provenance=data["provenance"],
        schema_version=data["schema_version"],
    )


def canonical_document(doc: SpaceDocument) -> SpaceDocument:
    """Blocks sorted, classes sorted, points sorted; squares are unchanged."""
    if doc.kind == KIND_HEFFTER:
        classes = sorted(sorted(sorted(block) for block in cls) for cls in doc.payload["classes"])
        return replace(doc, payload={"classes": classes})
    if doc.kind == KIND_PLAIN:
        classes = sorted(sorted(sorted(block) for block in cls) for cls in doc.payload["classes"])
        return replace(doc, payload={"points": sorted(doc.payload["points"]), "classes": classes})
    return doc


def document_report(
    doc: SpaceDocument,
    *,
    require_shiftable: bool = False,
    margossian: bool = False,
) -> ValidationReport:
    """Run the kind-appropriate validator on the raw payload."""
    p = doc.parameters
    if doc.kind == KIND_HEFFTER:
        return heffter_space_report(
            p["v"],
            p["k"],
            p["r"],
            doc.payload["classes"],
            require_shiftable=require_shiftable or p["shiftable"],
        )
    if doc.kind == KIND_PLAIN:
        return plain_space_report(p["w"], p["n"], p["r"], doc.payload["points"], doc.payload["classes"])
    return square_report(doc.payload["rows"], margossian=margossian)
