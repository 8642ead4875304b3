"""Instance files: schema, loading and the builtin examples."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path

import jsonschema

from .fan import Fan, PLFunction
from .weyl import RootSystem, enumerate_weyl

INT_VECTOR = {"type": "array", "items": {"type": "integer"}}

SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "root_system": {
            "type": "object",
            "properties": {
                "type": {"type": "string"},
                "cartan": {"type": "array", "items": INT_VECTOR, "minItems": 1},
                "central_rank": {"type": "integer", "minimum": 0},
            },
            "anyOf": [{"required": ["type"]}, {"required": ["cartan"]}],
            "additionalProperties": False,
        },
        "fan": {
            "type": "object",
            "properties": {
                "rays": {"type": "array", "items": INT_VECTOR, "minItems": 1},
                "maximal_cones": {"type": "array", "items": INT_VECTOR, "minItems": 1},
            },
            "required": ["rays", "maximal_cones"],
            "additionalProperties": False,
        },
        "psi": INT_VECTOR,
        "bb_direction": INT_VECTOR,
        "convention": {"enum": ["dsd", "wd"]},
        "options": {
            "type": "object",
            "properties": {
                "jobs": {"type": "integer", "minimum": 1},
                "weyl_bound": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
    },
    "anyOf": [{"required": ["root_system"]}, {"required": ["fan"]}],
    "additionalProperties": False,
}


class SchemaError(ValueError):
    """The instance file is malformed or internally inconsistent."""


def builtin_names() -> list:
    return sorted(p.name[:-5] for p in resources.files("kcompact.data").iterdir() if p.name.endswith(".json"))


def _read(source) -> tuple:
    if isinstance(source, dict):
        return source, source.get("name")
    text = None
    p = Path(source)
    if p.is_file():
        text = p.read_text()
        default = p.stem
    else:
        name = str(source)
        ref = resources.files("kcompact.data") / f"{name}.json"
        if not ref.is_file():
            raise SchemaError(f"no instance file or builtin named {name!r}")
        text = ref.read_text()
        default = name
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None
    return data, data.get("name", default) if isinstance(data, dict) else default


@dataclass
class Instance:
    data: dict
    name: str | None = None
    options: dict = field(default_factory=dict)

    @cached_property
    def root_system(self) -> RootSystem | None:
        raw = self.data.get("root_system")
        if raw is None:
            return None
        try:
            rs = RootSystem.from_json(raw)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
        try:
            enumerate_weyl(rs, self.options.get("weyl_bound", 10**6))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
        return rs

    @cached_property
    def fan(self) -> Fan | None:
        raw = self.data.get("fan")
        if raw is None:
            return None
        return Fan.from_json(raw, validate=False)

    @property
    def psi(self):
        return self.data.get("psi")

    @property
    def direction(self):
        return self.data.get("bb_direction")

    @property
    def convention(self) -> str:
        return self.data.get("convention", "dsd")

    def pl_function(self) -> PLFunction | None:
        if self.psi is None or self.fan is None:
            return None
        return PLFunction(self.fan, self.psi)

    def compactification(self):
        from .compactification import Compactification

        if self.root_system is None or self.fan is None:
            raise SchemaError("a compactification needs both a root system and a fan")
        return Compactification(
            self.root_system, self.fan, self.psi, self.direction, convention=self.convention, name=self.name
        )


def load_instance(source) -> Instance:
    """Load from a path, a builtin name, or an already-parsed dict."""
    data, name = _read(source)
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(map(str, exc.absolute_path)) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from None
    fan = data.get("fan")
    if fan:
        d = len(fan["rays"][0])
        if any(len(r) != d for r in fan["rays"]):
            raise SchemaError("fan/rays: inconsistent lengths")
        for c in fan["maximal_cones"]:
            if any(not 0 <= j < len(fan["rays"]) for j in c):
                raise SchemaError(f"fan/maximal_cones: index out of range in {c}")
        if "psi" in data and len(data["psi"]) != len(fan["rays"]):
            raise SchemaError("psi: one value per ray is required")
        if "bb_direction" in data and len(data["bb_direction"]) != d:
            raise SchemaError("bb_direction: wrong length")
    elif "psi" in data or "bb_direction" in data:
        raise SchemaError("psi and bb_direction need a fan")
    inst = Instance(data, name, dict(data.get("options", {})))
    rs = inst.root_system
    if rs is not None and fan and rs.rank != len(fan["rays"][0]):
        raise SchemaError("fan dimension differs from the rank of the root system")
    return inst
