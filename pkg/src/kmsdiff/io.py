"""JSON and DOT serialization."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import errors as E
from .covers import GraphCover, build_cover
from .graphs import Edge, EnhancedLevelGraph, Leg, canonical_form
from .metric import Coefficient, LevelModel, MetricModel, Poly
from .stratum import Signature


def load_json(source):
    """Inline JSON text, ``@path`` or a path to a JSON file."""
    if isinstance(source, (dict, list)):
        return source
    text = str(source).strip()
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    elif not text.startswith(("{", "[")):
        text = Path(text).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise E.UnsupportedFormat(f"invalid JSON: {exc}") from None


def jsonable(obj):
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    if isinstance(obj, bytes):
        return obj.decode()
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, separators=(",", ":"))


# -- graphs ---------------------------------------------------------------

def graph_to_json(G: EnhancedLevelGraph) -> dict:
    ids = G.vertex_ids
    return {
        "k": G.k,
        "vertices": [{"id": ids[v], "genus": G.genera[v], "level": G.levels[v]}
                     for v in range(G.num_vertices)],
        "edges": [{"id": e.id, "ends": [{"vertex": ids[e.ends[0]], "kappa": e.kappas[0]},
                                        {"vertex": ids[e.ends[1]], "kappa": e.kappas[1]}]}
                  for e in G.edges],
        "legs": [{"vertex": ids[l.vertex], "label": l.label, "order": l.order, "kappa": l.kappa}
                 for l in G.legs],
    }


def parse_graph(data, k=None) -> EnhancedLevelGraph:
    data = load_json(data)
    try:
        k = int(data.get("k", k))
        ids = [v["id"] for v in data["vertices"]]
        index = {vid: i for i, vid in enumerate(ids)}
        if len(index) != len(ids):
            raise E.UnsupportedFormat("duplicate vertex ids")
        edges = []
        for n, e in enumerate(data.get("edges", [])):
            (a, b) = e["ends"]
            edges.append(Edge((index[a["vertex"]], index[b["vertex"]]),
                              (int(a["kappa"]), int(b["kappa"])), e.get("id", n)))
        legs = [Leg(index[l["vertex"]], int(l["label"]), int(l["order"]),
                    int(l.get("kappa", int(l["order"]) + k))) for l in data.get("legs", [])]
        return EnhancedLevelGraph(k, tuple(int(v["genus"]) for v in data["vertices"]),
                                  tuple(int(v["level"]) for v in data["vertices"]),
                                  tuple(edges), tuple(legs), tuple(ids))
    except (KeyError, TypeError, ValueError) as exc:
        raise E.UnsupportedFormat(f"malformed graph JSON: {exc!r}") from None


def parse_signature(data) -> Signature:
    data = load_json(data)
    try:
        return Signature.from_json(data)
    except (KeyError, TypeError) as exc:
        raise E.UnsupportedFormat(f"malformed signature JSON: {exc!r}") from None


# -- covers ---------------------------------------------------------------

def cover_to_json(C: GraphCover) -> dict:
    G = C.base
    return {
        "base": graph_to_json(G),
        "base_hash": hashlib.sha256(canonical_form(G)).hexdigest(),
        "vertex_types": {str(G.vertex_ids[v]): C.d[v] for v in range(G.num_vertices)},
        "edge_shifts": {str(e.id): c for e, c in zip(G.edges, C.shifts)},
        "cover_graph": graph_to_json(C.cover_graph()),
        "tau": {"vertices": list(C.tau_vertices), "edges": list(C.tau_edges)},
    }


def parse_cover(data, k=None) -> GraphCover:
    data = load_json(data)
    G = parse_graph(data["base"], k)
    vt = {str(key): int(v) for key, v in data.get("vertex_types", {}).items()}
    es = {str(key): int(v) for key, v in data.get("edge_shifts", {}).items()}
    d = [vt.get(str(vid), 1) for vid in G.vertex_ids]
    shifts = [es.get(str(e.id), 0) for e in G.edges]
    C = build_cover(G, d, shifts)
    tau = data.get("tau")
    if tau:
        C = replace(C, tau_vertices=tuple(tau.get("vertices", C.tau_vertices)),
                    tau_edges=tuple(tau.get("edges", C.tau_edges)))
    return C


# -- metric models --------------------------------------------------------

def _poly_to_json(p: Poly):
    return [{"coef": [c.real, c.imag], "hol": list(a), "antihol": list(b)} for a, b, c in p.terms]


def _coef_to_json(c: Coefficient):
    return {"terms": _poly_to_json(c.poly), "lower": c.lower, "upper": c.upper}


def model_to_json(M: MetricModel) -> dict:
    return {"L": M.L, "aux_dim": M.aux_dim, "aux_radius": M.aux_radius,
            "levels": [{"ell_exponents": list(lv.ell_exponents), "c": _coef_to_json(lv.c),
                        "d": [_coef_to_json(x) for x in lv.d], "x_labels": list(lv.x_labels)}
                       for lv in M.levels]}


def parse_model(data) -> MetricModel:
    data = load_json(data)
    n = int(data.get("aux_dim", 0))

    def coef(c):
        if isinstance(c, (int, float)):
            return Coefficient(Poly.const(c, n), float(c), float(c))
        terms = []
        for t in c["terms"]:
            z = t["coef"]
            val = complex(z[0], z[1]) if isinstance(z, list) else complex(z)
            terms.append((tuple(t.get("hol", [0] * n)), tuple(t.get("antihol", [0] * n)), val))
        return Coefficient(Poly(n, tuple(terms)), float(c["lower"]), float(c["upper"]))

    try:
        levels = tuple(LevelModel(tuple(int(e) for e in lv["ell_exponents"]), coef(lv["c"]),
                                  tuple(coef(x) for x in lv.get("d", [])),
                                  tuple(lv.get("x_labels", [f"x{i}_{j + 1}" for j in range(len(lv.get("d", [])))])))
                       for i, lv in enumerate(data["levels"]))
        M = MetricModel(int(data["L"]), levels, n, float(data.get("aux_radius", 1.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise E.UnsupportedFormat(f"malformed model JSON: {exc!r}") from None
    M.certify_bounds()
    return M


# -- DOT ------------------------------------------------------------------

def _dot(G: EnhancedLevelGraph, labels, name="G"):
    lines = [f"graph {name} {{", "  rankdir=TB;"]
    for lv in range(0, -G.depth - 1, -1):
        members = [v for v in range(G.num_vertices) if G.levels[v] == lv]
        lines.append(f"  subgraph level_{-lv} {{ rank=same; "
                     + " ".join(f'"{labels[v]}";' for v in members) + " }")
    for v in range(G.num_vertices):
        lines.append(f'  "{labels[v]}" [label="{labels[v]}\\ng={G.genera[v]}"];')
    for e in G.edges:
        a, b = e.ends
        lines.append(f'  "{labels[a]}" -- "{labels[b]}" [label="{e.kappas[0]}"];')
    for l in G.legs:
        lines.append(f'  "leg{l.label}" [shape=plaintext, label="{l.label}: {l.order}"];')
        lines.append(f'  "{labels[l.vertex]}" -- "leg{l.label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_data(obj):
    if isinstance(obj, EnhancedLevelGraph):
        return graph_to_json(obj)
    if isinstance(obj, GraphCover):
        return cover_to_json(obj)
    if isinstance(obj, MetricModel):
        return model_to_json(obj)
    return jsonable(obj)


def export(obj, fmt="json") -> bytes:
    """Serialize to ``json``, ``dot`` (graphs and covers) or ``text``."""
    if fmt == "json":
        return (dumps(to_data(obj)) + "\n").encode()
    if fmt == "dot":
        if isinstance(obj, EnhancedLevelGraph):
            return _dot(obj, [str(v) for v in obj.vertex_ids]).encode()
        if isinstance(obj, GraphCover):
            G = obj.cover_graph()
            return _dot(G, [str(v) for v in G.vertex_ids], "Cover").encode()
        raise E.UnsupportedFormat(f"DOT export is not available for {type(obj).__name__}")
    if fmt == "text":
        data = jsonable(to_data(obj))
        if isinstance(data, dict):
            return "".join(f"{k}: {json.dumps(v, sort_keys=True)}\n" for k, v in sorted(data.items())).encode()
        return (json.dumps(data, sort_keys=True) + "\n").encode()
    raise E.UnsupportedFormat(f"unknown format {fmt!r}")
