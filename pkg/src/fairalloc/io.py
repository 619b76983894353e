"""JSON documents for instances, allocations, reports and reduction artifacts.

Indices in documents are 1-based (goods, agents, alternatives); the Python
API is 0-based. Integers that can outgrow 64 bits (Nash products, tie-break
ranks, thresholds) and all rationals are written as decimal strings.

Instance schema::

    {"model": "public-goods", "n": N, "m": M,
     "constraint": {"type": "cardinality", "k": K}
                 | {"type": "budget", "B": B, "costs": [...]},
     "valuations": [[...], ...], "meta": {...}}

``private-goods`` drops ``constraint``; ``public-decisions`` replaces
``valuations`` with ``"issues": [{"alternatives": t, "values": [[...], ...]}]``
(one row of ``t`` values per agent). ``meta`` is optional.

Allocation schema: ``{"select": [...]}``, ``{"partition": [[...], ...]}`` or
``{"decisions": [...]}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .fairness import FairnessReport
from .model import (
    Budget,
    Cardinality,
    NashScore,
    PrivateGoodsInstance,
    PublicDecisionsInstance,
    PublicGoodsInstance,
)
from .solvers import SolveResult

MODELS = {
    "public-goods": PublicGoodsInstance,
    "private-goods": PrivateGoodsInstance,
    "public-decisions": PublicDecisionsInstance,
}


class ValidationError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


# --------------------------------------------------------------------------
# formatting


def dumps(doc: Any) -> str:
    """Canonical text: 2-space indent, flat lists on one line, trailing newline."""
    return _fmt(doc, 0) + "\n"


def _fmt(obj: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_fmt(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(json.dumps(v) for v in obj) + "]"
        items = [pad + _fmt(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(obj)


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError("", f"invalid JSON: {e}") from None


def exact(x) -> str | None:
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x)
    return str(int(x))


# --------------------------------------------------------------------------
# validation helpers


def _int(value, path: str, minimum: int | None = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(path, f"expected an integer, got {json.dumps(value)}")
    if minimum is not None and value < minimum:
        raise ValidationError(path, f"must be >= {minimum}")
    return value


def _list(value, path: str, length: int | None = None) -> list:
    if not isinstance(value, list):
        raise ValidationError(path, "expected a list")
    if length is not None and len(value) != length:
        raise ValidationError(path, f"expected {length} entries, got {len(value)}")
    return value


def _matrix(value, path: str, rows: int, cols: int, positive_rows: bool) -> list[list[int]]:
    out = []
    for i, row in enumerate(_list(value, path, rows)):
        rp = f"{path}[{i}]"
        vals = [_int(v, f"{rp}[{j}]") for j, v in enumerate(_list(row, rp, cols))]
        if positive_rows and not any(vals):
            raise ValidationError(rp, f"agent {i + 1} values no good")
        out.append(vals)
    return out


# --------------------------------------------------------------------------
# instances


def instance_to_doc(instance, meta: dict | None = None) -> dict:
    if isinstance(instance, PublicGoodsInstance):
        c = instance.constraint
        if isinstance(c, Cardinality):
            cdoc = {"type": "cardinality", "k": c.k}
        else:
            cdoc = {"type": "budget", "B": c.B, "costs": list(c.costs)}
        doc = {"model": "public-goods", "n": instance.n, "m": instance.m, "constraint": cdoc,
               "valuations": [list(r) for r in instance.valuations]}
    elif isinstance(instance, PrivateGoodsInstance):
        doc = {"model": "private-goods", "n": instance.n, "m": instance.m,
               "valuations": [list(r) for r in instance.valuations]}
    else:
        doc = {"model": "public-decisions", "n": instance.n, "m": instance.m,
               "issues": [{"alternatives": len(issue[0]), "values": [list(r) for r in issue]}
                          for issue in instance.values]}
    if meta:
        doc["meta"] = {k: meta[k] for k in sorted(meta)}
    return doc


def serialize_instance(instance, meta: dict | None = None) -> str:
    return dumps(instance_to_doc(instance, meta))


def instance_from_doc(doc: Any):
    """Validated instance and its meta dict from a parsed document."""
    if not isinstance(doc, dict):
        raise ValidationError("", "expected a JSON object")
    model = doc.get("model")
    if model not in MODELS:
        raise ValidationError("model", f"expected one of {sorted(MODELS)}, got {json.dumps(model)}")
    meta = doc.get("meta") or {}
    if not isinstance(meta, dict):
        raise ValidationError("meta", "expected an object")
    strict = not meta.get("gadget")  # gadgets may legitimately leave an agent empty
    n = _int(doc.get("n"), "n", 1)
    m = _int(doc.get("m"), "m", 1 if strict else 0)

    if model == "public-decisions":
        issues = []
        for j, issue in enumerate(_list(doc.get("issues"), "issues", m)):
            p = f"issues[{j}]"
            if not isinstance(issue, dict):
                raise ValidationError(p, "expected an object")
            t = _int(issue.get("alternatives"), f"{p}.alternatives", 2)
            issues.append(_matrix(issue.get("values"), f"{p}.values", n, t, positive_rows=False))
        return PublicDecisionsInstance(issues), meta

    vals = _matrix(doc.get("valuations"), "valuations", n, m, positive_rows=strict)
    if model == "private-goods":
        return PrivateGoodsInstance(vals), meta

    c = doc.get("constraint")
    if not isinstance(c, dict):
        raise ValidationError("constraint", "expected an object")
    if c.get("type") == "cardinality":
        k = _int(c.get("k"), "constraint.k")
        if k > m:
            raise ValidationError("constraint.k", f"k={k} exceeds m={m}")
        constraint = Cardinality(k)
    elif c.get("type") == "budget":
        B = _int(c.get("B"), "constraint.B")
        costs = [_int(x, f"constraint.costs[{j}]", 1)
                 for j, x in enumerate(_list(c.get("costs"), "constraint.costs", m))]
        constraint = Budget(B, tuple(costs))
    else:
        raise ValidationError("constraint.type", "expected cardinality or budget")
    return PublicGoodsInstance(vals, constraint, strict=strict), meta


def parse_document(text: str):
    return instance_from_doc(load_json(text))


def parse_instance(text: str):
    return parse_document(text)[0]


# --------------------------------------------------------------------------
# allocations


def allocation_to_doc(instance, alloc) -> dict:
    if isinstance(instance, PublicGoodsInstance):
        return {"select": sorted(j + 1 for j in alloc)}
    if isinstance(instance, PrivateGoodsInstance):
        return {"partition": [sorted(j + 1 for j in b) for b in alloc]}
    return {"decisions": [d + 1 for d in alloc]}


def allocation_from_doc(instance, doc: Any):
    if not isinstance(doc, dict):
        raise ValidationError("", "expected a JSON object")
    if isinstance(instance, PublicGoodsInstance):
        goods = [_int(g, f"select[{i}]", 1) - 1 for i, g in enumerate(_list(doc.get("select"), "select"))]
        return frozenset(goods)
    if isinstance(instance, PrivateGoodsInstance):
        parts = _list(doc.get("partition"), "partition", instance.n)
        return tuple(
            frozenset(_int(g, f"partition[{i}][{t}]", 1) - 1 for t, g in enumerate(_list(b, f"partition[{i}]")))
            for i, b in enumerate(parts)
        )
    dec = _list(doc.get("decisions"), "decisions", instance.m)
    return tuple(_int(d, f"decisions[{j}]", 1) - 1 for j, d in enumerate(dec))


def parse_allocation(instance, text: str):
    return allocation_from_doc(instance, load_json(text))


# --------------------------------------------------------------------------
# reports


def value_to_doc(value) -> dict:
    if isinstance(value, NashScore):
        return {"positive_count": value.positive_count, "product": exact(value.product)}
    return {"sorted": [int(v) for v in value]}


def fairness_to_doc(report: FairnessReport) -> dict:
    agents = []
    for i, a in enumerate(report.agents):
        w = a.prop1_witness
        agents.append({
            "agent": i + 1,
            "utility": a.utility,
            "prop_share": exact(a.prop_share),
            "rrs_share": a.rrs_share,
            "alpha_prop": exact(a.alpha_prop),
            "alpha_rrs": exact(a.alpha_rrs),
            "prop1": a.prop1,
            "prop1_witness": None if w is None else {
                "remove": None if w[0] is None else w[0] + 1, "add": w[1] + 1},
        })
    return {
        "prop1": report.prop1,
        "pareto_optimal": report.pareto_optimal,
        "pareto_witness": None if report.pareto_witness is None
        else sorted(j + 1 for j in report.pareto_witness),
        "alpha_prop": exact(report.alpha_prop),
        "alpha_rrs": exact(report.alpha_rrs),
        "agents": agents,
    }


def result_to_doc(instance, result: SolveResult, fairness: FairnessReport | None = None) -> dict:
    return {
        "method": result.method,
        "objective": result.objective,
        "allocation": allocation_to_doc(instance, result.allocation),
        "utilities": [int(u) for u in result.utilities],
        "value": value_to_doc(result.value),
        "rank": exact(result.rank),
        "fairness": None if fairness is None else fairness_to_doc(fairness),
    }


def artifact_to_doc(artifact) -> dict:
    params = dict(artifact.parameters)
    if "copies" in params:
        params["copies"] = [[j + 1, l + 1] for j, l in params["copies"]]
    return {
        "reduction": artifact.name,
        "objective": artifact.objective,
        "parameters": params,
        "source": instance_to_doc(artifact.source),
        "target": None if artifact.target is None else instance_to_doc(artifact.target),
    }


def roundtrip_to_doc(report) -> dict:
    return {
        "reduction": report.reduction,
        "objective": report.objective,
        "equal": report.equal,
        "feasible": report.feasible,
        "source_allocation": _alloc_doc_loose(report.source_allocation),
        "source_value": value_to_doc(report.source_value),
        "mapped_allocation": _alloc_doc_loose(report.mapped_allocation),
        "mapped_value": None if report.mapped_value is None else value_to_doc(report.mapped_value),
        "target_allocation": _alloc_doc_loose(report.target_allocation),
        "selected_count": report.selected_count,
        "distinct_copies": report.distinct_copies,
    }


def _alloc_doc_loose(alloc):
    # allocation doc inferred from the Python shape
    if alloc is None:
        return None
    if isinstance(alloc, frozenset):
        return {"select": sorted(j + 1 for j in alloc)}
    if alloc and isinstance(alloc[0], frozenset):
        return {"partition": [sorted(j + 1 for j in b) for b in alloc]}
    return {"decisions": [d + 1 for d in alloc]}


def gadget_to_doc(gadget) -> dict:
    params = dict(gadget.params)
    for key in ("family", "clauses"):
        if key in params:
            params[key] = [[e + 1 for e in s] for s in params[key]]
    meta = {
        "gadget": {
            "kind": gadget.kind,
            "objective": gadget.objective,
            "threshold": exact(gadget.threshold),
            "yes_iff": gadget.yes_iff,
            "params": params,
        }
    }
    return instance_to_doc(gadget.instance, meta)
