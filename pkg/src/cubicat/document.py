"""JSON interchange for single-set and classical structures.

Tables are keyed by strings ("1,-" or "2,1,+") and map cell labels to cell
labels; partial compositions list only defined pairs as ``"x|y": z``.
Loaded structures are never marked validated.
"""
from __future__ import annotations

import json
from importlib import resources

import jsonschema

from .classical import ClassicalStructure
from .core import SIGNS, SingleSetStructure, StructureError

SCHEMA_ID = "cubicat.structure/1"


class DocumentError(StructureError):
    """Malformed document; the message names the offending location."""


def schema() -> dict:
    return json.loads(resources.files("cubicat").joinpath("schema/structure.schema.json").read_text())


def _map(row, src, dst):
    return {src[x]: dst[y] for x, y in enumerate(row)}


def _partial(table, labels):
    return {f"{labels[x]}|{labels[y]}": labels[z] for (x, y), z in sorted(table.items())}


def to_document(obj) -> dict:
    if isinstance(obj, SingleSetStructure):
        L = obj.labels
        doc = {
            "schema": SCHEMA_ID, "kind": "single-set", "dim": obj.dim, "cells": list(L),
            "face": {f"{i},{a}": _map(obj.face[(i, a)], L, L) for (i, a) in sorted(obj.face)},
            "comp": {str(i): _partial(obj.comp[i], L) for i in sorted(obj.comp)},
            "sym": {str(i): _map(obj.sym[i], L, L) for i in sorted(obj.sym)},
            "inv_sym": {str(i): _map(obj.inv_sym[i], L, L) for i in sorted(obj.inv_sym)},
            "conn": None if obj.conn is None else
            {f"{i},{a}": _map(obj.conn[(i, a)], L, L) for (i, a) in sorted(obj.conn)},
        }
    elif isinstance(obj, ClassicalStructure):
        L = obj.cells
        doc = {
            "schema": SCHEMA_ID, "kind": "classical", "dim": obj.top, "cells": [list(level) for level in L],
            "cface": {f"{k},{i},{a}": _map(obj.cface[(k, i, a)], L[k], L[k - 1])
                      for (k, i, a) in sorted(obj.cface)},
            "deg": {f"{k},{i}": _map(obj.deg[(k, i)], L[k - 1], L[k]) for (k, i) in sorted(obj.deg)},
            "ccomp": {f"{k},{i}": _partial(obj.ccomp[(k, i)], L[k]) for (k, i) in sorted(obj.ccomp)},
            "cconn": None if obj.cconn is None else
            {f"{k},{i},{a}": _map(obj.cconn[(k, i, a)], L[k - 1], L[k]) for (k, i, a) in sorted(obj.cconn)},
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    doc["meta"] = dict(obj.meta)
    return doc


def dumps(obj) -> str:
    return json.dumps(to_document(obj), indent=1, ensure_ascii=False) + "\n"


def dump(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


# -- parsing -------------------------------------------------------------------

class _Reader:
    def __init__(self, doc):
        self.doc = doc

    def table(self, name, key):
        tables = self.doc.get(name)
        if tables is None or key not in tables:
            raise DocumentError(f"{name}[{key}]: missing table")
        return tables[key]

    def total(self, name, key, src, dst):
        table = self.table(name, key)
        where = f"{name}[{key}]"
        extra = set(table) - set(src)
        if extra:
            raise DocumentError(f"{where}: unknown cell {sorted(extra)[0]!r}")
        row = []
        for label in src:
            if label not in table:
                raise DocumentError(f"{where}: no entry for cell {label!r}")
            target = table[label]
            if target not in dst:
                raise DocumentError(f"{where}[{label}]: unknown cell {target!r}")
            row.append(dst[target])
        return row

    def partial(self, name, key, index):
        out = {}
        where = f"{name}[{key}]"
        for pair, target in self.table(name, key).items():
            left, _, right = pair.partition("|")
            for label in (left, right, target):
                if label not in index:
                    raise DocumentError(f"{where}[{pair}]: unknown cell {label!r}")
            out[(index[left], index[right])] = index[target]
        return out


def from_document(doc: dict):
    try:
        jsonschema.validate(doc, schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise DocumentError(f"{where}: {exc.message}") from None
    r = _Reader(doc)
    n = doc["dim"]
    meta = dict(doc.get("meta") or {})
    try:
        if doc["kind"] == "single-set":
            labels = doc["cells"]
            idx = {lab: k for k, lab in enumerate(labels)}
            face = {(i, a): r.total("face", f"{i},{a}", labels, idx) for i in range(1, n + 1) for a in SIGNS}
            comp = {i: r.partial("comp", str(i), idx) for i in range(1, n + 1)}
            sym = {i: r.total("sym", str(i), labels, idx) for i in range(1, n)}
            inv_sym = {i: r.total("inv_sym", str(i), labels, idx) for i in range(1, n)}
            conn = None
            if doc.get("conn") is not None:
                conn = {(i, a): r.total("conn", f"{i},{a}", labels, idx) for i in range(1, n) for a in SIGNS}
            return SingleSetStructure(tuple(labels), n, face, comp, sym, inv_sym, conn, meta=meta)
        levels = doc["cells"]
        if len(levels) != n + 1:
            raise DocumentError(f"cells: expected {n + 1} levels, found {len(levels)}")
        idx = [{lab: k for k, lab in enumerate(level)} for level in levels]
        cface = {(k, i, a): r.total("cface", f"{k},{i},{a}", levels[k], idx[k - 1])
                 for k in range(1, n + 1) for i in range(1, k + 1) for a in SIGNS}
        deg = {(k, i): r.total("deg", f"{k},{i}", levels[k - 1], idx[k])
               for k in range(1, n + 1) for i in range(1, k + 1)}
        ccomp = {(k, i): r.partial("ccomp", f"{k},{i}", idx[k]) for k in range(1, n + 1) for i in range(1, k + 1)}
        cconn = None
        if doc.get("cconn") is not None:
            cconn = {(k, i, a): r.total("cconn", f"{k},{i},{a}", levels[k - 1], idx[k])
                     for k in range(2, n + 1) for i in range(1, k) for a in SIGNS}
        return ClassicalStructure(tuple(tuple(level) for level in levels), cface, deg, ccomp, cconn, meta=meta)
    except DocumentError:
        raise
    except StructureError as exc:
        raise DocumentError(str(exc)) from None


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
