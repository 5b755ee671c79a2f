"""Fan files: a small JSON document with rays, cones and optional extras.

    {
      "ambient_dim": 2,
      "field": "Q",
      "rays": [["1", "0"], ["-1", "0"]],
      "cones": [[0], [1]],
      "functions": {"support": [["1", "0"], ["-1", "0"]]},
      "expected": {...},
      "name": "p1"
    }

Scalars are strings in the exact scalar syntax ("p/q", "a+b*sqrt(d)");
plain JSON integers are accepted on input.  ``functions`` hold one ambient
linear form per listed cone.  ``refines`` names another fan file (relative
path) that this fan subdivides.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .exactmath.field import field_from_spec, format_scalar
from .fan import Fan, FanError, PiecewiseLinear, build_fan

CORPUS_PACKAGE = "virtualih.corpus"


@dataclass
class FanDocument:
    ambient_dim: int
    field: str
    rays: list
    cones: list
    name: str = ""
    description: str = ""
    functions: dict = field(default_factory=dict)
    refines: str | None = None
    expected: dict = field(default_factory=dict)
    path: Path | None = None

    @classmethod
    def from_dict(cls, data: dict, path: Path | None = None) -> "FanDocument":
        try:
            n = int(data["ambient_dim"])
            rays = [list(r) for r in data["rays"]]
            cones = [sorted(int(i) for i in c) for c in data["cones"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise FanError(f"malformed fan document: {exc}") from exc
        spec = data.get("field", "Q")
        try:
            fld = field_from_spec(spec)
            parsed = [[fld(str(x)) for x in r] for r in rays]
        except ValueError as exc:
            raise FanError(f"malformed fan document: {exc}") from exc
        for i, r in enumerate(parsed):
            if len(r) != n:
                raise FanError(f"ray {i} has {len(r)} coordinates, expected {n}")
        functions = {name: [[fld(str(x)) for x in form] for form in forms]
                     for name, forms in data.get("functions", {}).items()}
        return cls(n, spec, parsed, cones,
                   data.get("name", path.stem if path else ""), data.get("description", ""),
                   functions, data.get("refines"), data.get("expected", {}), path)

    def to_dict(self) -> dict:
        out = {"ambient_dim": self.ambient_dim, "field": self.field,
               "rays": [[format_scalar(x) for x in r] for r in self.rays],
               "cones": self.cones}
        if self.name:
            out["name"] = self.name
        if self.description:
            out["description"] = self.description
        if self.functions:
            out["functions"] = {k: [[format_scalar(x) for x in f] for f in v]
                                for k, v in self.functions.items()}
        if self.refines:
            out["refines"] = self.refines
        if self.expected:
            out["expected"] = self.expected
        return out

    def dumps(self) -> str:
        return dumps_canonical(self.to_dict())

    def build(self, check: bool = True) -> Fan:
        fld = field_from_spec(self.field)
        return build_fan(self.rays, self.cones, field=fld, check=check, name=self.name)

    def function(self, f: Fan, name: str = "support") -> PiecewiseLinear:
        """Piecewise linear function keyed by the fan's cone ids."""
        forms = self.functions.get(name)
        if forms is None:
            raise FanError(f"no function named {name!r} in {self.name}")
        if len(forms) != len(self.cones):
            raise FanError(f"function {name!r} needs one form per listed cone")
        return PiecewiseLinear({f.cone_by_rays(c): tuple(form)
                                for c, form in zip(self.cones, forms)})

    def refined_base(self) -> "FanDocument | None":
        if not self.refines:
            return None
        if self.path is not None and (self.path.parent / self.refines).exists():
            return load_document(self.path.parent / self.refines)
        return load_corpus_document(self.refines)


def dumps_canonical(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def loads_document(text: str, path: Path | None = None) -> FanDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanError(f"not a fan document: {exc}") from exc
    if not isinstance(data, dict):
        raise FanError("not a fan document: top level must be an object")
    return FanDocument.from_dict(data, path)


def load_document(path) -> FanDocument:
    path = Path(path)
    return loads_document(path.read_text(), path)


def file_hash(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def corpus_dir() -> Path:
    return Path(str(resources.files(CORPUS_PACKAGE)))


def corpus_paths() -> list[Path]:
    return sorted(corpus_dir().glob("*.fan"))


def load_corpus_document(name: str) -> FanDocument:
    if not name.endswith(".fan"):
        name += ".fan"
    return load_document(corpus_dir() / name)
