"""JSON model documents and text matrix output."""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError
from .formulations import PenaltyWeights, QuboModel, SlackGroup, VariableMap, Variant
from .graph import Graph
from .poly import QuboMatrix, QuboPoly, to_matrix

__all__ = [
    "FORMAT_VERSION",
    "poly_to_dict",
    "poly_from_dict",
    "matrix_to_dict",
    "model_to_dict",
    "model_from_dict",
    "dumps_model",
    "loads_model",
    "write_model",
    "read_model",
    "read_assignment",
]

FORMAT_VERSION = "1"


def poly_to_dict(poly: QuboPoly) -> dict:
    return {
        "num_vars": poly.num_vars,
        "linear": [{"index": i, "coeff": float(c)} for i, c in poly.linear.items()],
        "quadratic": [{"i": i, "j": j, "coeff": float(c)} for (i, j), c in poly.quadratic.items()],
        "offset": float(poly.offset),
    }


def poly_from_dict(d: dict) -> QuboPoly:
    try:
        lin = {int(t["index"]): float(t["coeff"]) for t in d["linear"]}
        quad = {}
        for t in d["quadratic"]:
            i, j = int(t["i"]), int(t["j"])
            if not i < j:
                raise ParseError(f"quadratic term ({i}, {j}) must have i < j")
            quad[(i, j)] = float(t["coeff"])
        return QuboPoly(int(d["num_vars"]), lin, quad, float(d["offset"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed polynomial: {exc}") from None
    except IndexError as exc:
        raise ParseError(str(exc)) from None


def matrix_to_dict(m: QuboMatrix) -> dict:
    return {
        "n": m.n,
        "convention": m.convention,
        "entries": [[float(v) for v in row] for row in np.asarray(m.entries)],
        "offset": float(m.offset),
    }


def model_to_dict(model: QuboModel) -> dict:
    labels = model.graph.labels if model.graph is not None else None
    variables = []
    for v in range(model.vmap.num_vertex_vars):
        variables.append({"index": v, "role": "vertex", "label": labels[v] if labels else str(v)})
    for grp in model.vmap.slack_groups:
        for b, (idx, c) in enumerate(zip(grp.indices, grp.coefficients)):
            variables.append({
                "index": idx,
                "role": "slack",
                "source": grp.describe(labels),
                "constraint": grp.kind,
                "vertex": grp.vertex,
                "bit": b,
                "coefficient": float(c),
            })
    d = {
        "format_version": FORMAT_VERSION,
        "variant": model.variant.name,
        "k": model.variant.k,
        "penalty": float(model.penalty),
        "weights": {k: float(v) for k, v in model.weights.as_dict().items()},
        "variables": variables,
        "graph_fingerprint": model.graph_fingerprint,
    }
    d.update({k: v for k, v in poly_to_dict(model.poly).items()})
    if model.graph is not None:
        d["graph"] = {"labels": list(model.graph.labels), "edges": [list(e) for e in model.graph.sorted_edges()]}
    return d


def model_from_dict(d: dict) -> QuboModel:
    try:
        if str(d["format_version"]) != FORMAT_VERSION:
            raise ParseError(f"unsupported format_version {d['format_version']!r}")
        variant = Variant.parse(d["variant"], d.get("k"))
        poly = poly_from_dict(d)
        w = d["weights"]
        weights = PenaltyWeights(float(w["coverage"]), float(w["independence"]), float(w["perfect"]), float(w["clique"]))
        variables = sorted(d["variables"], key=lambda t: int(t["index"]))
        if [int(t["index"]) for t in variables] != list(range(len(variables))):
            raise ParseError("variable indices must be exactly 0..num_vars-1")
        n_vertex = sum(1 for t in variables if t["role"] == "vertex")
        groups: dict = {}
        for t in variables:
            if t["role"] == "vertex":
                if int(t["index"]) >= n_vertex:
                    raise ParseError("vertex variables must precede slack variables")
            elif t["role"] == "slack":
                key = (int(t["vertex"]), t.get("constraint", "coverage"))
                groups.setdefault(key, []).append(t)
            else:
                raise ParseError(f"unknown variable role {t['role']!r}")
        slack_groups = []
        for (v, kind), items in sorted(groups.items(), key=lambda kv: int(kv[1][0]["index"])):
            items.sort(key=lambda t: int(t["bit"]))
            slack_groups.append(SlackGroup(
                v, kind, tuple(int(t["index"]) for t in items), tuple(float(t["coefficient"]) for t in items)
            ))
        graph = None
        if d.get("graph") is not None:
            gd = d["graph"]
            graph = Graph.from_edges(len(gd["labels"]), [tuple(e) for e in gd["edges"]], gd["labels"])
            if graph.fingerprint() != d["graph_fingerprint"]:
                raise ParseError("embedded graph does not match graph_fingerprint")
        vmap = VariableMap(n_vertex, tuple(slack_groups))
        return QuboModel(poly, vmap, variant, float(d["penalty"]), weights, d["graph_fingerprint"], graph)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed model document: {exc}") from None


def dumps_model(model: QuboModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, indent=2) + "\n"


def loads_model(text: str) -> QuboModel:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(d, dict):
        raise ParseError("model document must be a JSON object")
    return model_from_dict(d)


def write_model(model: QuboModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))


def read_model(path) -> QuboModel:
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())


def matrix_text(model_or_poly, convention: str) -> str:
    poly = model_or_poly if isinstance(model_or_poly, QuboPoly) else model_or_poly.poly
    return to_matrix(poly, convention).to_text()


def read_assignment(path) -> list:
    """Read a single line of ``0``/``1`` characters (whitespace ignored)."""
    with open(path, encoding="utf-8") as fh:
        text = "".join(fh.read().split())
    if any(ch not in "01" for ch in text):
        raise ParseError("assignment must consist of 0 and 1 characters")
    return [int(ch) for ch in text]
