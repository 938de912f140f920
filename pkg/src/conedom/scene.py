"""JSON scene files: named cones, sets, prices and grids with exact rationals.

Numbers are serialized as strings, either an integer like "3" or a ratio
like "3/2"; JSON floats are rejected so exactness survives round trips.
Validation collects every problem it finds and reports them with a path
into the document, e.g. `sets.Y.points[1][0]: unreadable rational '3/0'`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cones import Cone
from .linalg import Vec
from .maximals import GridDomain, PriceSystem
from .sets import ChainSet, DecomposableSet, FinitePointSet, Polyhedron

SceneSet = FinitePointSet | ChainSet | DecomposableSet | Polyhedron

_RATIONAL = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class SceneError(ValueError):
    """Validation failure; `errors` lists path-addressed messages."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


@dataclass
class Scene:
    dimension: int
    cones: dict[str, Cone] = field(default_factory=dict)
    sets: dict[str, SceneSet] = field(default_factory=dict)
    prices: dict[str, PriceSystem] = field(default_factory=dict)
    grids: dict[str, GridDomain] = field(default_factory=dict)


class _Parser:
    def __init__(self) -> None:
        self.errors: list[str] = []

    def fail(self, path: str, message: str) -> None:
        self.errors.append(f"{path}: {message}")

    def rational(self, raw: Any, path: str) -> Fraction:
        if isinstance(raw, bool) or not isinstance(raw, (str, int)):
            self.fail(path, f"expected a rational string, got {raw!r}")
            return Fraction(0)
        text = str(raw)
        if not _RATIONAL.match(text):
            self.fail(path, f"unreadable rational {text!r}")
            return Fraction(0)
        return Fraction(text)

    def vector(self, raw: Any, dimension: int, path: str) -> Vec:
        if not isinstance(raw, list):
            self.fail(path, "expected an array of rationals")
            return tuple(Fraction(0) for _ in range(dimension))
        if len(raw) != dimension:
            self.fail(path, f"expected {dimension} coordinates, got {len(raw)}")
        return tuple(self.rational(c, f"{path}[{i}]") for i, c in enumerate(raw))

    def vectors(self, raw: Any, dimension: int, path: str) -> tuple[Vec, ...]:
        if not isinstance(raw, list):
            self.fail(path, "expected an array of points")
            return ()
        return tuple(self.vector(p, dimension, f"{path}[{i}]") for i, p in enumerate(raw))

    def point_set(self, raw: Any, dimension: int, path: str) -> FinitePointSet | None:
        pts = self.vectors(raw, dimension, path)
        try:
            return FinitePointSet(pts)
        except ValueError as exc:
            self.fail(path, str(exc))
            return None


def parse_scene(text: str) -> Scene:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except _FloatError:
        raise SceneError(["$: JSON floats are not allowed; write rationals as strings"])
    except json.JSONDecodeError as exc:
        raise SceneError([f"$: malformed JSON ({exc.msg} at line {exc.lineno})"])
    p = _Parser()
    if not isinstance(doc, dict):
        raise SceneError(["$: top level must be an object"])

    dimension = doc.get("dimension")
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        p.fail("dimension", "must be a positive integer")
        dimension = 1

    known = {"dimension", "cones", "sets", "prices", "grids"}
    for key in doc:
        if key not in known:
            p.fail(key, "unknown section")

    scene = Scene(dimension=dimension)
    _parse_cones(p, doc.get("cones", {}), scene)
    _parse_sets(p, doc.get("sets", {}), scene)
    _parse_prices(p, doc.get("prices", {}), scene)
    _parse_grids(p, doc.get("grids", {}), scene)
    if p.errors:
        raise SceneError(p.errors)
    return scene


def _parse_cones(p: _Parser, raw: Any, scene: Scene) -> None:
    if not isinstance(raw, dict):
        p.fail("cones", "must be an object of named cones")
        return
    for name, spec in raw.items():
        path = f"cones.{name}"
        if not isinstance(spec, dict):
            p.fail(path, "must be an object")
            continue
        gens = p.vectors(spec.get("generators", []), scene.dimension, f"{path}.generators")
        contains_zero = spec.get("contains_zero", True)
        if not isinstance(contains_zero, bool):
            p.fail(f"{path}.contains_zero", "must be a boolean")
            contains_zero = True
        before = len(p.errors)
        try:
            cone = Cone(scene.dimension, gens, contains_zero)
        except ValueError as exc:
            p.fail(path, str(exc))
            continue
        if len(p.errors) == before:
            scene.cones[name] = cone


def _parse_sets(p: _Parser, raw: Any, scene: Scene) -> None:
    if not isinstance(raw, dict):
        p.fail("sets", "must be an object of named sets")
        return
    pending_sums = []
    for name, spec in raw.items():
        path = f"sets.{name}"
        if not isinstance(spec, dict):
            p.fail(path, "must be an object")
            continue
        kind = spec.get("type")
        if kind == "points":
            pts = p.point_set(spec.get("points", []), scene.dimension, f"{path}.points")
            if pts is not None:
                scene.sets[name] = pts
        elif kind == "chain":
            pts = p.point_set(spec.get("points", []), scene.dimension, f"{path}.points")
            cone = _cone_ref(p, spec.get("cone"), scene, f"{path}.cone")
            if pts is None or cone is None:
                continue
            try:
                scene.sets[name] = ChainSet(pts, cone)
            except ValueError as exc:
                p.fail(path, str(exc))
        elif kind == "sum":
            pending_sums.append((name, spec, path))
        elif kind == "polyhedron":
            pts = p.point_set(spec.get("vertices", []), scene.dimension, f"{path}.vertices")
            rays = p.vectors(spec.get("rays", []), scene.dimension, f"{path}.rays")
            if pts is None:
                continue
            try:
                scene.sets[name] = Polyhedron(pts, rays)
            except ValueError as exc:
                p.fail(path, str(exc))
        else:
            p.fail(f"{path}.type", f"unknown set type {kind!r}")
    for name, spec, path in pending_sums:
        summands = spec.get("summands")
        if not isinstance(summands, list) or not summands:
            p.fail(f"{path}.summands", "must be a nonempty array of chain names")
            continue
        chains = []
        ok = True
        for i, ref in enumerate(summands):
            got = scene.sets.get(ref)
            if not isinstance(got, ChainSet):
                p.fail(f"{path}.summands[{i}]", f"{ref!r} is not a declared chain")
                ok = False
            else:
                chains.append(got)
        if not ok:
            continue
        try:
            scene.sets[name] = DecomposableSet(tuple(chains))
        except ValueError as exc:
            p.fail(path, str(exc))


def _cone_ref(p: _Parser, ref: Any, scene: Scene, path: str) -> Cone | None:
    if not isinstance(ref, str) or ref not in scene.cones:
        p.fail(path, f"unknown cone {ref!r}")
        return None
    return scene.cones[ref]


def _parse_prices(p: _Parser, raw: Any, scene: Scene) -> None:
    if not isinstance(raw, dict):
        p.fail("prices", "must be an object of named price systems")
        return
    for name, spec in raw.items():
        path = f"prices.{name}"
        if not isinstance(spec, dict):
            p.fail(path, "must be an object")
            continue
        price = p.vector(spec.get("price", []), scene.dimension, f"{path}.price")
        wealth = p.rational(spec.get("wealth", "0"), f"{path}.wealth")
        try:
            scene.prices[name] = PriceSystem(price, wealth)
        except ValueError as exc:
            p.fail(path, str(exc))


def _parse_grids(p: _Parser, raw: Any, scene: Scene) -> None:
    if not isinstance(raw, dict):
        p.fail("grids", "must be an object of named grids")
        return
    for name, spec in raw.items():
        path = f"grids.{name}"
        if not isinstance(spec, dict):
            p.fail(path, "must be an object")
            continue
        step = p.rational(spec.get("step", "1"), f"{path}.step")
        box_raw = spec.get("box")
        if not isinstance(box_raw, list) or len(box_raw) != scene.dimension:
            p.fail(f"{path}.box", f"expected {scene.dimension} [lo, hi] pairs")
            continue
        box = []
        for i, pair in enumerate(box_raw):
            if not isinstance(pair, list) or len(pair) != 2:
                p.fail(f"{path}.box[{i}]", "expected a [lo, hi] pair")
                box.append((Fraction(0), Fraction(0)))
                continue
            box.append(
                (
                    p.rational(pair[0], f"{path}.box[{i}][0]"),
                    p.rational(pair[1], f"{path}.box[{i}][1]"),
                )
            )
        try:
            scene.grids[name] = GridDomain(step, tuple(box))
        except ValueError as exc:
            p.fail(path, str(exc))


class _FloatError(Exception):
    pass


def _reject_float(_: str) -> None:
    raise _FloatError


def fmt(x: Fraction) -> str:
    return str(x)


def fmt_vec(v: Vec) -> list[str]:
    return [fmt(c) for c in v]


def _cone_name(scene: Scene, cone: Cone) -> str:
    for name in sorted(scene.cones):
        if scene.cones[name] == cone:
            return name
    raise SceneError(["$: a set references a cone that is not named in the scene"])


def serialize_scene(scene: Scene) -> str:
    doc: dict[str, Any] = {"dimension": scene.dimension}
    if scene.cones:
        doc["cones"] = {
            name: {
                "generators": [fmt_vec(g) for g in cone.generators],
                "contains_zero": cone.contains_zero,
            }
            for name, cone in sorted(scene.cones.items())
        }
    if scene.sets:
        out: dict[str, Any] = {}
        chain_names: dict[int, str] = {}
        for name, s in sorted(scene.sets.items()):
            if isinstance(s, ChainSet):
                chain_names[id(s)] = name
        for name, s in sorted(scene.sets.items()):
            if isinstance(s, ChainSet):
                out[name] = {
                    "type": "chain",
                    "points": [fmt_vec(v) for v in s.base.points],
                    "cone": _cone_name(scene, s.cone),
                }
            elif isinstance(s, FinitePointSet):
                out[name] = {"type": "points", "points": [fmt_vec(v) for v in s.points]}
            elif isinstance(s, Polyhedron):
                out[name] = {
                    "type": "polyhedron",
                    "vertices": [fmt_vec(v) for v in s.vertices.points],
                    "rays": [fmt_vec(r) for r in s.rays],
                }
            elif isinstance(s, DecomposableSet):
                refs = []
                for summand in s.summands:
                    ref = chain_names.get(id(summand))
                    if ref is None:
                        ref = _anonymous_chain_name(out, scene, summand, name)
                        chain_names[id(summand)] = ref
                    refs.append(ref)
                out[name] = {"type": "sum", "summands": refs}
        doc["sets"] = dict(sorted(out.items()))
    if scene.prices:
        doc["prices"] = {
            name: {"price": fmt_vec(ps.price), "wealth": fmt(ps.wealth)}
            for name, ps in sorted(scene.prices.items())
        }
    if scene.grids:
        doc["grids"] = {
            name: {
                "step": fmt(g.step),
                "box": [[fmt(lo), fmt(hi)] for lo, hi in g.box],
            }
            for name, g in sorted(scene.grids.items())
        }
    return json.dumps(doc, indent=2, sort_keys=True)


def _anonymous_chain_name(
    out: dict[str, Any], scene: Scene, summand: ChainSet, owner: str
) -> str:
    i = 1
    while f"{owner}_part{i}" in out or f"{owner}_part{i}" in scene.sets:
        i += 1
    name = f"{owner}_part{i}"
    out[name] = {
        "type": "chain",
        "points": [fmt_vec(v) for v in summand.base.points],
        "cone": _cone_name(scene, summand.cone),
    }
    return name
