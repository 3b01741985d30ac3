"""Family files (JSON, rationals as strings) and atomic writes."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Sequence

from .family import Family
from .geometry import ConvexBody, HalfSpace, Point, as_point, as_rational, is_empty


class FamilyFormatError(ValueError):
    pass


def enc(v) -> str:
    return str(as_rational(v))


def enc_point(p: Sequence) -> list[str]:
    return [enc(v) for v in p]


def dec_point(values: Sequence) -> Point:
    if not isinstance(values, list):
        raise FamilyFormatError(f"expected a coordinate list, got {values!r}")
    for v in values:
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise FamilyFormatError(f"coordinate {v!r} must be a rational string")
    try:
        return as_point(values)
    except (ValueError, TypeError) as exc:
        raise FamilyFormatError(str(exc)) from exc


def family_to_dict(family: Family) -> dict:
    return {
        "dimension": family.dimension,
        "bodies": [
            {"name": b.name,
             "halfspaces": [{"a": enc_point(h.normal), "b": enc(h.offset)} for h in b.halfspaces]}
            for b in family.bodies
        ],
    }


def serialize_family(family: Family) -> str:
    return json.dumps(family_to_dict(family), indent=2) + "\n"


def family_from_dict(data: dict, check_nonempty: bool = True) -> Family:
    if not isinstance(data, dict):
        raise FamilyFormatError("family file must hold a JSON object")
    d = data.get("dimension")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise FamilyFormatError("'dimension' must be a positive integer")
    bodies = []
    names = set()
    for bi, raw in enumerate(data.get("bodies", [])):
        name = raw.get("name") if isinstance(raw, dict) else None
        if not isinstance(name, str) or not name:
            raise FamilyFormatError(f"body #{bi}: missing name")
        if name in names:
            raise FamilyFormatError(f"body {name!r}: duplicate name")
        names.add(name)
        hs = []
        for hi, h in enumerate(raw.get("halfspaces", [])):
            where = f"body {name!r}, constraint {hi}"
            if not isinstance(h, dict) or "a" not in h or "b" not in h:
                raise FamilyFormatError(f"{where}: needs fields 'a' and 'b'")
            try:
                a = dec_point(h["a"])
                b = as_rational(h["b"]) if isinstance(h["b"], (str, int)) else None
            except (FamilyFormatError, ValueError, TypeError) as exc:
                raise FamilyFormatError(f"{where}: {exc}") from exc
            if b is None or isinstance(h["b"], bool):
                raise FamilyFormatError(f"{where}: 'b' must be a rational string")
            if len(a) != d:
                raise FamilyFormatError(f"{where}: dimension mismatch ({len(a)} != {d})")
            if not any(a):
                raise FamilyFormatError(f"{where}: zero normal")
            hs.append(HalfSpace(a, b))
        body = ConvexBody(name, tuple(hs), d)
        if check_nonempty and is_empty(body):
            raise FamilyFormatError(f"body {name!r}: empty body")
        bodies.append(body)
    return Family(d, tuple(bodies))


def parse_family(text: str, check_nonempty: bool = True) -> Family:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyFormatError(f"not valid JSON: {exc}") from exc
    return family_from_dict(data, check_nonempty)


def load_family(path) -> Family:
    return parse_family(Path(path).read_text())


def family_digest(family: Family) -> str:
    return hashlib.sha256(serialize_family(family).encode()).hexdigest()


def points_to_dict(points: Sequence[Sequence]) -> dict:
    pts = [as_point(p) for p in points]
    return {"dimension": len(pts[0]) if pts else 0, "points": [enc_point(p) for p in pts]}


def parse_points(text: str) -> list[Point]:
    data = json.loads(text)
    pts = [dec_point(p) for p in data.get("points", [])]
    d = data.get("dimension")
    if any(len(p) != d for p in pts):
        raise FamilyFormatError("point dimension mismatch")
    return pts


def points_digest(points: Sequence[Sequence]) -> str:
    return hashlib.sha256(json.dumps(points_to_dict(points)).encode()).hexdigest()


def atomic_write(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename over the target."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
