"""JSON (and DOT-subset) serialization for matrices, polynomials, graphs,
represented matroids, and the engine's reports."""

from __future__ import annotations

import dataclasses
import json
import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .cmengine import CmReport, PsdReport, ThresholdEstimate
from .exactalg import Cyc6, ExactMatrix, QuatF
from .graphs import Multigraph
from .laplace import IntegralCheck
from .matroids import QuatMatrix, RepMatroid
from .polyseries import MultiPoly, ShiftVector
from .quadform import BetaSet


def frac_to_json(x: Fraction) -> Dict:
    x = Fraction(x)
    return {"n": x.numerator, "d": x.denominator}


def frac_from_json(d) -> Fraction:
    if isinstance(d, str):
        return parse_rat(d)
    if isinstance(d, int):
        return Fraction(d)
    return Fraction(d["n"], d["d"])


def parse_rat(s: str) -> Fraction:
    """Parse 'p/q' or 'p'; floats are rejected (exactness contract)."""
    s = s.strip()
    if re.fullmatch(r"-?\d+(/\d+)?", s) is None:
        raise ValueError(f"not an exact rational: {s!r} (write p/q)")
    return Fraction(s)


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def matrix_to_json(M) -> Dict:
    if isinstance(M, QuatMatrix):
        return {"field": "quatF", "rows": M.rows, "cols": M.cols,
                "entries": [[[q.w, q.x, q.y, q.z] for q in row] for row in M.entries]}
    if M.field == "Q":
        entries = [[frac_to_json(v) for v in row] for row in M.entries]
        return {"field": "Q", "rows": M.rows, "cols": M.cols, "entries": entries}
    entries = [[{"a": frac_to_json(v.a), "b": frac_to_json(v.b)} for v in row]
               for row in M.entries]
    return {"field": "Qzeta6", "rows": M.rows, "cols": M.cols, "entries": entries}


def matrix_from_json(d: Dict):
    field = d["field"]
    if field == "Q":
        return ExactMatrix([[frac_from_json(v) for v in row] for row in d["entries"]])
    if field == "Qzeta6":
        return ExactMatrix([[Cyc6(frac_from_json(v["a"]), frac_from_json(v["b"]))
                             for v in row] for row in d["entries"]])
    if field == "quatF":
        return QuatMatrix([[QuatF(*v) for v in row] for row in d["entries"]])
    raise ValueError(f"unknown field tag {field!r}")


def matroid_to_json(M: RepMatroid) -> Dict:
    d = matrix_to_json(M.B)
    d["ground"] = list(M.ground)
    return d


def matroid_from_json(d: Dict) -> RepMatroid:
    B = matrix_from_json(d)
    return RepMatroid(B, ground=d.get("ground"))


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def poly_to_json(P: MultiPoly, var_names: Optional[Sequence[str]] = None) -> Dict:
    terms = [{"e": list(e), "c": frac_to_json(c)}
             for e, c in sorted(P.terms.items())]
    out = {"nvars": P.nvars, "terms": terms}
    if var_names is not None:
        if len(var_names) != P.nvars:
            raise ValueError("variable-name manifest length mismatch")
        out["vars"] = list(var_names)
    return out


def poly_from_json(d: Dict) -> MultiPoly:
    return MultiPoly(d["nvars"], {tuple(t["e"]): frac_from_json(t["c"])
                                  for t in d["terms"]})


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

def graph_to_json(G: Multigraph) -> Dict:
    return {"vertices": list(G.vertices),
            "edges": [{"id": e, "u": u, "v": v} for e, u, v in G.edges]}


def graph_from_json(d: Dict) -> Multigraph:
    G = Multigraph()
    for v in d["vertices"]:
        G.add_vertex(str(v))
    for e in d["edges"]:
        G.add_edge(str(e["id"]), str(e["u"]), str(e["v"]))
    return G


_DOT_EDGE = re.compile(r"^\s*\"?([\w.+-]+)\"?\s*--\s*\"?([\w.+-]+)\"?\s*"
                       r"(?:\[\s*id\s*=\s*\"?([\w.+-]+)\"?\s*\])?\s*;?\s*$")
_DOT_NODE = re.compile(r"^\s*\"?([\w.+-]+)\"?\s*;?\s*$")


def graph_from_dot(text: str) -> Multigraph:
    """Import the undirected DOT subset: 'graph NAME { a -- b [id=e]; c; }'.

    Multi-edges and loops are allowed; edges without an id attribute get
    e1, e2, ... in order of appearance."""
    body = text
    m = re.search(r"\{(.*)\}", text, re.S)
    if m:
        body = m.group(1)
    body = re.sub(r"//[^\n]*", "", body)
    body = re.sub(r"#[^\n]*", "", body)
    G = Multigraph()
    auto = 0
    for raw in re.split(r"[;\n]", body):
        line = raw.strip()
        if not line:
            continue
        em = _DOT_EDGE.match(line)
        if em:
            u, v, eid = em.groups()
            if eid is None:
                auto += 1
                eid = f"e{auto}"
            G.add_vertex(u)
            G.add_vertex(v)
            G.add_edge(eid, u, v)
            continue
        nm = _DOT_NODE.match(line)
        if nm and nm.group(1).lower() not in ("graph", "strict"):
            G.add_vertex(nm.group(1))
            continue
        raise ValueError(f"unsupported DOT line: {raw.strip()!r}")
    return G


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _encode(obj):
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, ShiftVector):
        return [frac_str(v) for v in obj]
    if isinstance(obj, BetaSet):
        return {"variant": obj.variant,
                "threshold": None if obj.threshold is None else frac_str(obj.threshold),
                "step": None if obj.step is None else frac_str(obj.step),
                "count": obj.count, "display": str(obj)}
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _encode(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def report_to_json(report) -> Dict:
    """Serialize CmReport / ThresholdEstimate / IntegralCheck / PsdReport /
    BetaSet (or any dataclass report) with exact rationals as 'p/q'."""
    out = _encode(report)
    if isinstance(report, (CmReport, ThresholdEstimate, PsdReport, IntegralCheck)):
        out["report_type"] = type(report).__name__
    return out


def dumps(report, **kw) -> str:
    return json.dumps(report_to_json(report), indent=2, **kw)
