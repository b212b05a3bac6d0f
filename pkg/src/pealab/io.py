"""Shared JSON wire formats.

Structure file::

    {"elements": ["0","a","1"], "covers": [["0","a"],["a","1"]],
     "plus":   {"a,a": "1", ...},          # pseudo effect algebra
     "slash":  {"b,a": "z", ...},          # pseudo D-poset, keyed "b,a" -> b/a
     "bslash": {"b,a": "z", ...}}

Morphism file::

    {"source": <path or structure object>,
     "target": <path or structure object>,
     "map": {"a": "1", ...}}

Fork bundle: an object with keys f, g, q, s, t, each a morphism.
PL map file: {"breakpoints": ["1","3/2"], "slopes": ["2","1","1"]}.

Emission is canonical (sorted keys, two-space indent, trailing newline),
so parse -> emit is idempotent after one normalization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import FormatError
from .pdp import PseudoDPoset
from .pea import PseudoEffectAlgebra
from .plmaps import PLMap, _frac
from .posets import BoundedPoset, PosetMorphism, validate_bounded_poset

_STRUCTURE_KEYS = {"elements", "covers", "plus", "slash", "bslash"}


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FormatError(message)


def _string_list(value, what: str) -> list[str]:
    _require(isinstance(value, list), f"{what} must be a list")
    _require(all(isinstance(x, str) for x in value), f"{what} must hold strings")
    return value


def _parse_table(obj, labels, name: str):
    _require(isinstance(obj, dict), f"{name} table must be an object")
    index = {lab: i for i, lab in enumerate(labels)}
    _require(
        all("," not in lab for lab in labels),
        f"element labels must not contain commas when a {name} table is present",
    )
    n = len(labels)
    table = [[None] * n for _ in range(n)]
    for key, value in obj.items():
        _require(isinstance(key, str) and isinstance(value, str),
                 f"{name} table entries must map strings to strings")
        parts = key.split(",")
        _require(len(parts) == 2, f"{name} key {key!r} is not of the form 'x,y'")
        _require(parts[0] in index and parts[1] in index and value in index,
                 f"{name} entry {key!r} -> {value!r} uses unknown elements")
        table[index[parts[0]]][index[parts[1]]] = index[value]
    return tuple(tuple(row) for row in table)


def parse_structure(obj, what: str = "structure"):
    """Parse a structure object into the most specific value it encodes."""
    _require(isinstance(obj, dict), f"{what} must be a JSON object")
    unknown = set(obj) - _STRUCTURE_KEYS
    _require(not unknown, f"{what} has unknown keys: {sorted(unknown)}")
    _require("elements" in obj and "covers" in obj,
             f"{what} needs 'elements' and 'covers'")
    elements = _string_list(obj["elements"], f"{what} elements")
    _require(len(set(elements)) == len(elements),
             f"{what} declares duplicate elements")
    covers = obj["covers"]
    _require(isinstance(covers, list), f"{what} covers must be a list")
    for pair in covers:
        _require(
            isinstance(pair, list) and len(pair) == 2
            and all(isinstance(x, str) for x in pair),
            f"{what} covers must be pairs of element names",
        )
        _require(pair[0] in elements and pair[1] in elements,
                 f"{what} cover {pair} uses unknown elements")
    base = validate_bounded_poset(elements, covers)
    has_plus = "plus" in obj
    has_diff = "slash" in obj or "bslash" in obj
    _require(not (has_plus and has_diff),
             f"{what} carries both an addition and difference tables")
    if has_plus:
        plus = _parse_table(obj["plus"], base.labels, "plus")
        return PseudoEffectAlgebra(base.labels, plus, base.bottom, base.top)
    if has_diff:
        _require("slash" in obj and "bslash" in obj,
                 f"{what} needs both 'slash' and 'bslash'")
        slash = _parse_table(obj["slash"], base.labels, "slash")
        bslash = _parse_table(obj["bslash"], base.labels, "bslash")
        return PseudoDPoset(base, slash, bslash)
    return base


def base_of(structure) -> BoundedPoset:
    """Underlying bounded poset of any structure kind.

    For a pseudo effect algebra this is the induced order, which may
    raise when the structure is invalid.
    """
    if isinstance(structure, BoundedPoset):
        return structure
    if isinstance(structure, PseudoDPoset):
        return structure.base
    if isinstance(structure, PseudoEffectAlgebra):
        from .pea import induced_order

        return induced_order(structure)
    raise FormatError(f"not a structure: {type(structure).__name__}")


def _table_obj(table, labels) -> dict:
    out = {}
    for b in range(len(labels)):
        for a in range(len(labels)):
            v = table[b][a]
            if v is not None:
                out[f"{labels[b]},{labels[a]}"] = labels[v]
    return out


def structure_to_obj(structure) -> dict:
    if isinstance(structure, PseudoEffectAlgebra):
        labels = structure.labels
        base = base_of(structure)
        plus = {}
        for a in range(structure.n):
            for b in range(structure.n):
                c = structure.plus[a][b]
                if c is not None:
                    plus[f"{labels[a]},{labels[b]}"] = labels[c]
        obj = poset_obj(base)
        obj["plus"] = plus
        return obj
    if isinstance(structure, PseudoDPoset):
        obj = poset_obj(structure.base)
        obj["slash"] = _table_obj(structure.slash, structure.labels)
        obj["bslash"] = _table_obj(structure.bslash, structure.labels)
        return obj
    if isinstance(structure, BoundedPoset):
        return poset_obj(structure)
    raise FormatError(f"not a structure: {type(structure).__name__}")


def poset_obj(base) -> dict:
    """Elements-and-covers object for any poset.

    Derived posets (intervals, triples) are generally not bounded, so the
    result may be dump-only: it re-parses as a structure file only when
    the poset has unique bounds.
    """
    return {
        "elements": list(base.labels),
        "covers": [
            [base.labels[a], base.labels[b]] for a, b in base.cover_pairs()
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc


def load_structure(path):
    return parse_structure(load_json(path), str(path))


def save_structure(structure, path) -> None:
    Path(path).write_text(dumps(structure_to_obj(structure)))


@dataclass
class MorphismFile:
    source: object
    target: object
    map_labels: dict[str, str]

    def poset_map(self) -> PosetMorphism:
        src = base_of(self.source)
        dst = base_of(self.target)
        values = []
        for lab in src.labels:
            if lab not in self.map_labels:
                raise FormatError(f"morphism map misses element {lab!r}")
            values.append(dst.index(self.map_labels[lab]))
        return PosetMorphism(src, dst, tuple(values))


def parse_morphism(obj, base_dir=None, what: str = "morphism") -> MorphismFile:
    _require(isinstance(obj, dict), f"{what} must be a JSON object")
    unknown = set(obj) - {"source", "target", "map"}
    _require(not unknown, f"{what} has unknown keys: {sorted(unknown)}")
    _require(all(k in obj for k in ("source", "target", "map")),
             f"{what} needs 'source', 'target' and 'map'")

    def resolve(value, side):
        if isinstance(value, str):
            path = Path(value)
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            return load_structure(path)
        return parse_structure(value, f"{what} {side}")

    source = resolve(obj["source"], "source")
    target = resolve(obj["target"], "target")
    mapping = obj["map"]
    _require(isinstance(mapping, dict)
             and all(isinstance(k, str) and isinstance(v, str)
                     for k, v in mapping.items()),
             f"{what} map must send element names to element names")
    return MorphismFile(source, target, dict(mapping))


def load_morphism(path) -> MorphismFile:
    return parse_morphism(load_json(path), Path(path).parent, str(path))


def morphism_to_obj(m: PosetMorphism) -> dict:
    return {
        "source": _structure_obj_of_base(m.source),
        "target": _structure_obj_of_base(m.target),
        "map": m.label_map(),
    }


def _structure_obj_of_base(base) -> dict:
    if isinstance(base, BoundedPoset):
        return poset_obj(base)
    raise FormatError("only bounded-poset ends can be serialized")


@dataclass
class ForkFile:
    f: MorphismFile
    g: MorphismFile
    q: MorphismFile
    s: MorphismFile
    t: MorphismFile


def parse_fork(obj, base_dir=None, what: str = "fork") -> ForkFile:
    _require(isinstance(obj, dict), f"{what} must be a JSON object")
    names = ("f", "g", "q", "s", "t")
    unknown = set(obj) - set(names)
    _require(not unknown, f"{what} has unknown keys: {sorted(unknown)}")
    _require(all(k in obj for k in names), f"{what} needs morphisms f, g, q, s, t")
    parts = {
        name: parse_morphism(obj[name], base_dir, f"{what}.{name}")
        for name in names
    }
    return ForkFile(**parts)


def load_fork(path) -> ForkFile:
    return parse_fork(load_json(path), Path(path).parent, str(path))


def parse_plmap(obj, what: str = "plmap") -> PLMap:
    _require(isinstance(obj, dict), f"{what} must be a JSON object")
    unknown = set(obj) - {"breakpoints", "slopes"}
    _require(not unknown, f"{what} has unknown keys: {sorted(unknown)}")
    _require("breakpoints" in obj and "slopes" in obj,
             f"{what} needs 'breakpoints' and 'slopes'")
    _require(isinstance(obj["breakpoints"], list) and isinstance(obj["slopes"], list),
             f"{what} breakpoints and slopes must be lists")
    try:
        return PLMap(
            tuple(_frac(b) for b in obj["breakpoints"]),
            tuple(_frac(s) for s in obj["slopes"]),
        )
    except FormatError:
        raise
    except Exception as exc:
        raise FormatError(f"{what}: {exc}") from exc


def load_plmap(path) -> PLMap:
    return parse_plmap(load_json(path), str(path))


def plmap_to_obj(f: PLMap) -> dict:
    return {
        "breakpoints": [str(b) for b in f.breakpoints],
        "slopes": [str(s) for s in f.slopes],
    }
