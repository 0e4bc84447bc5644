"""JSON file formats.

Graph ``{"n": int, "edges": [[u, v], ...]}``; signal ``{"values": [...]}``;
sparse spectral signal ``{"support": [...], "coefficients": [...]}``;
partial samples ``[{"vertex": int, "value": float}, ...]`` (faces use
``"face": [..]``); snapshot plan ``{"anchors": [{"vertex": v, "radius": r}]}``;
complex ``{"facets": [[...], ...]}``; chain ``{"k": int, "faces": [...],
"values": [...]}``.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .errors import InputError
from .graph import Graph, build_graph


def read_json(source):
    """Load JSON from a path, ``"-"`` (stdin), inline JSON text, or pass a parsed object through."""
    if isinstance(source, (dict, list)):
        return source
    try:
        if str(source) == "-":
            return json.load(sys.stdin)
        if str(source).lstrip().startswith(("{", "[")):
            return json.loads(source)
        return json.loads(Path(source).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {source}: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_dict(data) -> Graph:
    data = read_json(data)
    try:
        return build_graph(int(data["n"]), data["edges"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph JSON: {exc}") from exc


def signal_to_dict(values) -> dict:
    return {"values": [float(x) for x in values]}


def signal_from_dict(data, n: int | None = None) -> np.ndarray:
    data = read_json(data)
    try:
        values = np.asarray(data["values"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed signal JSON: {exc}") from exc
    if n is not None and len(values) != n:
        raise InputError(f"signal has {len(values)} values, expected {n}")
    return values


def samples_to_list(samples: dict) -> list[dict]:
    out = []
    for site, value in samples.items():
        if isinstance(site, tuple):
            out.append({"face": list(site), "value": float(value)})
        else:
            out.append({"vertex": int(site), "value": float(value)})
    return out


def samples_from_list(data) -> dict:
    data = read_json(data)
    out = {}
    try:
        for item in data:
            site = tuple(int(x) for x in item["face"]) if "face" in item else int(item["vertex"])
            out[site] = float(item["value"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed samples JSON: {exc}") from exc
    return out
