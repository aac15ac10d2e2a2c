"""Reading and writing function tables.

Text format (UTF-8, ``#`` starts a comment)::

    G1 2 2 2
    G2 2 2 2
    map 0 1 3 2 7 6 4 5
    meta {"family": "power", "exponent": 3}

``map`` may be split over several lines; the pieces are concatenated.  The
optional ``meta`` line carries a JSON object describing provenance.  The JSON
form uses the keys ``G1``, ``G2``, ``map`` and ``meta``.  A file of affine
shifts holds several tables separated by lines containing only ``---`` (or a
JSON list).
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ImbalanceError, ParseError, SchemaError
from .functable import AffineMap, FunctionTable
from .group import make_group

__all__ = [
    "parse_table",
    "parse_tables",
    "format_table",
    "table_to_dict",
    "table_from_dict",
    "load_table",
    "load_tables",
    "dump_table",
]

_KEYS = ("G1", "G2", "map", "meta")


def _parse_group_line(words: list[str], lineno: int):
    try:
        return make_group([int(w) for w in words])
    except ValueError as exc:
        raise ParseError(f"bad group orders: {exc}", lineno) from None
    except ImbalanceError as exc:
        raise ParseError(str(exc), lineno) from None


def _parse_text(text: str) -> FunctionTable:
    fields: dict = {}
    values: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("G1", "G2"):
            if key in fields:
                raise ParseError(f"duplicate {key} line", lineno)
            if not rest:
                raise ParseError(f"{key} needs at least one order", lineno)
            fields[key] = _parse_group_line(rest.split(), lineno)
        elif key == "map":
            try:
                values.extend(int(w) for w in rest.split())
            except ValueError:
                raise ParseError("map entries must be integers", lineno) from None
            fields["map"] = True
        elif key == "meta":
            if "meta" in fields:
                raise ParseError("duplicate meta line", lineno)
            try:
                meta = json.loads(rest)
            except json.JSONDecodeError as exc:
                raise ParseError(f"meta is not valid JSON: {exc.msg}", lineno) from None
            if not isinstance(meta, dict):
                raise ParseError("meta must be a JSON object", lineno)
            fields["meta"] = meta
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno)
    for key in ("G1", "G2", "map"):
        if key not in fields:
            raise ParseError(f"missing {key} line")
    return FunctionTable(fields["G1"], fields["G2"], values, fields.get("meta"))


def table_from_dict(obj) -> FunctionTable:
    if not isinstance(obj, dict):
        raise ParseError("a table must be a JSON object")
    unknown = set(obj) - set(_KEYS)
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    for key in ("G1", "G2", "map"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    try:
        g1, g2 = make_group(obj["G1"]), make_group(obj["G2"])
    except (TypeError, ValueError, ImbalanceError) as exc:
        raise ParseError(f"bad group: {exc}") from None
    values = obj["map"]
    if not isinstance(values, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
        raise ParseError("map must be a list of integers")
    meta = obj.get("meta") or {}
    if not isinstance(meta, dict):
        raise ParseError("meta must be an object")
    return FunctionTable(g1, g2, values, meta)


def table_to_dict(F: FunctionTable) -> dict:
    out = {"G1": list(F.domain.orders), "G2": list(F.codomain.orders), "map": [int(v) for v in F.values]}
    if F.meta:
        out["meta"] = F.meta
    return out


def parse_table(text: str) -> FunctionTable:
    """Parse either the text or the JSON form (detected by a leading ``{``)."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return table_from_dict(obj)
    return _parse_text(text)


def parse_tables(text: str) -> list[FunctionTable]:
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return [table_from_dict(obj) for obj in items]
    blocks, current, start = [], [], 0
    for lineno, line in enumerate(text.splitlines()):
        if line.strip() == "---":
            blocks.append((start, "\n".join(current)))
            current, start = [], lineno + 1
        else:
            current.append(line)
    blocks.append((start, "\n".join(current)))
    out = []
    for start, block in blocks:
        if not block.strip():
            continue
        try:
            out.append(parse_table(block))
        except ParseError as exc:
            if exc.line is None:
                raise
            raise ParseError(exc.message, exc.line + start) from None
    return out


def format_table(F: FunctionTable) -> str:
    lines = [
        f"G1 {F.domain}",
        f"G2 {F.codomain}",
        "map " + " ".join(str(int(v)) for v in F.values),
    ]
    if F.meta:
        lines.append("meta " + json.dumps(F.meta, sort_keys=True))
    return "\n".join(lines) + "\n"


def load_table(path) -> FunctionTable:
    return parse_table(Path(path).read_text(encoding="utf-8"))


def load_tables(path) -> list[FunctionTable]:
    return parse_tables(Path(path).read_text(encoding="utf-8"))


def load_affine_shifts(path, g1, g2) -> list[AffineMap]:
    shifts = []
    for T in load_tables(path):
        if T.domain != g1 or T.codomain != g2:
            raise SchemaError("affine shift groups do not match the function")
        shifts.append(AffineMap(T.domain, T.codomain, T.values))
    return shifts


def dump_table(F: FunctionTable, path=None, *, as_json: bool = False) -> str:
    text = json.dumps(table_to_dict(F), sort_keys=True) + "\n" if as_json else format_table(F)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
