"""JSON input and output for monoids, presentations, and homomorphisms.

Emitted JSON writes every integer as a decimal string so that large
coordinates survive consumers that read JSON numbers as doubles.  Parsing
is lenient and accepts either form.  Every diagnostic names the path of
the offending field, dollar-rooted, e.g. ``$.generators[1][0]``.

The three input shapes:

    monoid        {"ambient": {"free_rank": R, "torsion": [..]},
                   "generators": [[..], ..]}
    presentation  {"generator_count": N,
                   "relations": [[[..], [..]], ..]}
    hom           {"domain": <monoid>, "codomain": <monoid>,
                   "generator_images": [[..], ..]}

``parse_typed`` dispatches on which keys are present.
"""

from __future__ import annotations

import json

from . import monoid as mo
from . import zlattice as zl


class SchemaError(ValueError):
    """Malformed input document; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


def _integer(value, path: str) -> int:
    if isinstance(value, bool):
        raise SchemaError(path, "expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        text = value.strip()
        sign = text[1:] if text[:1] in "+-" else text
        if sign.isdigit():
            return int(text)
        raise SchemaError(path, f"expected a decimal integer string, got {value!r}")
    raise SchemaError(path, f"expected an integer, got {type(value).__name__}")


def _object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(path, f"expected an object, got {type(value).__name__}")
    return value


def _array(value, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaError(path, f"expected an array, got {type(value).__name__}")
    return value


def _field(obj: dict, key: str, path: str):
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return obj[key]


def _vector(value, path: str, ncoords: int) -> tuple:
    arr = _array(value, path)
    if len(arr) != ncoords:
        raise SchemaError(
            path, f"expected {ncoords} coordinates, got {len(arr)}"
        )
    return tuple(_integer(v, f"{path}[{i}]") for i, v in enumerate(arr))


def parse_ambient(value, path: str = "$") -> zl.AmbientAbelianGroup:
    obj = _object(value, path)
    free_rank = _integer(_field(obj, "free_rank", path), f"{path}.free_rank")
    if free_rank < 0:
        raise SchemaError(f"{path}.free_rank", "must be nonnegative")
    torsion_arr = _array(_field(obj, "torsion", path), f"{path}.torsion")
    torsion = []
    for i, t in enumerate(torsion_arr):
        n = _integer(t, f"{path}.torsion[{i}]")
        if n < 1:
            raise SchemaError(f"{path}.torsion[{i}]", "must be positive")
        torsion.append(n)
    return zl.AmbientAbelianGroup(free_rank, tuple(torsion))


def parse_monoid(value, path: str = "$") -> mo.AffineMonoid:
    obj = _object(value, path)
    ambient = parse_ambient(_field(obj, "ambient", path), f"{path}.ambient")
    gens_arr = _array(_field(obj, "generators", path), f"{path}.generators")
    gens = tuple(
        _vector(g, f"{path}.generators[{i}]", ambient.ncoords)
        for i, g in enumerate(gens_arr)
    )
    return mo.affine_monoid(ambient, gens)


def parse_presentation(value, path: str = "$") -> mo.MonoidPresentation:
    obj = _object(value, path)
    count = _integer(
        _field(obj, "generator_count", path), f"{path}.generator_count"
    )
    if count < 0:
        raise SchemaError(f"{path}.generator_count", "must be nonnegative")
    rel_arr = _array(_field(obj, "relations", path), f"{path}.relations")
    relations = []
    for i, pair in enumerate(rel_arr):
        rp = f"{path}.relations[{i}]"
        arr = _array(pair, rp)
        if len(arr) != 2:
            raise SchemaError(rp, "a relation is a [lhs, rhs] pair")
        lhs = _vector(arr[0], f"{rp}[0]", count)
        rhs = _vector(arr[1], f"{rp}[1]", count)
        for side, sp in ((lhs, f"{rp}[0]"), (rhs, f"{rp}[1]")):
            for j, e in enumerate(side):
                if e < 0:
                    raise SchemaError(f"{sp}[{j}]", "exponents are nonnegative")
        relations.append((lhs, rhs))
    return mo.MonoidPresentation(count, tuple(relations))


def parse_hom(value, path: str = "$") -> mo.MonoidHom:
    obj = _object(value, path)
    domain = parse_monoid(_field(obj, "domain", path), f"{path}.domain")
    codomain = parse_monoid(_field(obj, "codomain", path), f"{path}.codomain")
    img_arr = _array(
        _field(obj, "generator_images", path), f"{path}.generator_images"
    )
    if len(img_arr) != len(domain.gens):
        raise SchemaError(
            f"{path}.generator_images",
            f"expected {len(domain.gens)} images for the domain generators, "
            f"got {len(img_arr)}",
        )
    images = tuple(
        _vector(g, f"{path}.generator_images[{i}]", codomain.ambient.ncoords)
        for i, g in enumerate(img_arr)
    )
    return mo.MonoidHom(domain, codomain, images)


def parse_typed(value, path: str = "$"):
    """Dispatch on document shape; returns (kind, parsed value)."""
    obj = _object(value, path)
    if "generator_images" in obj or ("domain" in obj and "codomain" in obj):
        return "hom", parse_hom(obj, path)
    if "relations" in obj or "generator_count" in obj:
        return "presentation", parse_presentation(obj, path)
    if "generators" in obj or "ambient" in obj:
        return "monoid", parse_monoid(obj, path)
    raise SchemaError(
        path,
        "unrecognized document: expected monoid, presentation, or hom keys",
    )


def load_typed(text: str, path: str = "$"):
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"invalid JSON: {exc.msg} at position {exc.pos}")
    return parse_typed(value, path)


def vector_json(v) -> list:
    return [str(int(c)) for c in v]


def ambient_json(a: zl.AmbientAbelianGroup) -> dict:
    return {
        "free_rank": str(a.free_rank),
        "torsion": [str(t) for t in a.torsion],
    }


def monoid_json(m: mo.AffineMonoid) -> dict:
    return {
        "ambient": ambient_json(m.ambient),
        "generators": [vector_json(g) for g in m.gens],
    }


def hom_json(u: mo.MonoidHom) -> dict:
    return {
        "domain": monoid_json(u.domain),
        "codomain": monoid_json(u.codomain),
        "generator_images": [vector_json(g) for g in u.gen_images],
    }


def group_json(g: zl.FiniteAbelianGroup) -> dict:
    return {
        "invariant_factors": [str(d) for d in g.invariant_factors],
        "order": str(g.order),
    }


def canonical_dumps(value) -> str:
    """Key-sorted, two-space-indented JSON with a trailing newline."""
    return json.dumps(value, sort_keys=True, indent=2) + "\n"
