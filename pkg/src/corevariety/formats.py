"""JSON file formats.

All numbers are written as exact fraction strings (``"3/4"``, ``"-2"``).
Decimal strings such as ``"0.25"`` are accepted on input and read exactly.
Output is deterministic: keys appear in a fixed order and nothing depends on
time or hashing.
"""

from __future__ import annotations

import json
from typing import Optional

from .corevar import CoreVarietyTrace, Decision, Hypothesis, Status, StepCertificate
from .errors import CoreVarietyError, ParseError
from .exact import Mat, rat_str, to_rat
from .extend import ExtensionProblem, ExtensionResult, TowerDecision, TowerSpec, extension_problem, tower_from_names
from .faces import FaceDescriptor, extreme_rays
from .measure import AtomicMeasure
from .space import Functional, FunctionSystem, GroundSet, SubsetView


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _fracs(xs):
    return [rat_str(x) for x in xs]


def _float(x) -> str:
    return repr(float(x))


def _rat(x, where):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{where}: expected a fraction string, got {x!r}")
    try:
        return to_rat(x)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"{where}: not an exact number: {x!r}") from None


def _rats(xs, where):
    if not isinstance(xs, list):
        raise ParseError(f"{where}: expected a list")
    return [_rat(x, f"{where}[{i}]") for i, x in enumerate(xs)]


def _get(doc, key, where="document"):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    return doc[key]


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from None


# -- instances ---------------------------------------------------------------

def system_doc(system: FunctionSystem) -> dict:
    pts = []
    for j, s in enumerate(system.labels):
        p = {"label": s}
        if system.ground.coords is not None:
            p["coords"] = _fracs(system.ground.coords[j])
        pts.append(p)
    return {
        "points": pts,
        "basis": list(system.basis_names),
        "evals": [_fracs(r) for r in system.evals],
    }


def instance_doc(system: FunctionSystem, L: Optional[Functional] = None) -> dict:
    doc = system_doc(system)
    if L is not None:
        doc["functional"] = _fracs(L.coeffs)
    return doc


def parse_system(doc) -> FunctionSystem:
    pts = _get(doc, "points")
    if not isinstance(pts, list) or not pts:
        raise ParseError("points: expected a nonempty list")
    labels, coords = [], []
    for i, p in enumerate(pts):
        if isinstance(p, str):
            labels.append(p)
            coords.append(None)
            continue
        labels.append(str(_get(p, "label", f"points[{i}]")))
        c = p.get("coords") if isinstance(p, dict) else None
        coords.append(None if c is None else tuple(_rats(c, f"points[{i}].coords")))
    if all(c is None for c in coords):
        coords = None
    elif any(c is None for c in coords):
        raise ParseError("points: either all or none of the points carry coords")
    basis = _get(doc, "basis")
    if not isinstance(basis, list):
        raise ParseError("basis: expected a list of names")
    rows = _get(doc, "evals")
    if not isinstance(rows, list):
        raise ParseError("evals: expected a list of rows")
    evals = [_rats(r, f"evals[{i}]") for i, r in enumerate(rows)]
    if any(len(r) != len(labels) for r in evals):
        raise ParseError("evals: every row needs one entry per point")
    try:
        return FunctionSystem(GroundSet(tuple(labels), None if coords is None else tuple(coords)),
                              tuple(basis), Mat(evals, cols=len(labels)))
    except CoreVarietyError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def parse_functional(system: FunctionSystem, xs, where="functional") -> Functional:
    coeffs = _rats(xs, where)
    if len(coeffs) != system.dim:
        raise ParseError(f"{where}: expected {system.dim} entries, got {len(coeffs)}")
    return Functional(system, coeffs)


def parse_instance(doc):
    """Returns ``(system, functional)``; the functional is ``None`` if absent."""
    system = parse_system(doc)
    L = parse_functional(system, doc["functional"]) if "functional" in doc else None
    return system, L


def load_instance(path):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(loads(fh.read()))


# -- traces and decisions ----------------------------------------------------

def _labels(view: SubsetView):
    return list(view.labels)


def trace_doc(trace: CoreVarietyTrace) -> dict:
    sys = trace.functional.system
    doc = {
        "functional": _fracs(trace.functional.coeffs),
        "stabilized_at": trace.stabilized_at,
        "chain": [_labels(v) for v in trace.chain],
        "steps": [{
            "step": c.step,
            "removed": [sys.labels[j] for j in sorted(c.removed)],
            "witness": _fracs(c.witness),
        } for c in trace.certificates],
    }
    if trace.fastpath is not None:
        doc["fastpath"] = [{
            "set": _labels(r.view),
            "region": r.region.value,
            "sign": r.sign,
            "predicted": None if r.predicted is None else _labels(r.predicted),
        } for r in trace.fastpath]
    return doc


def parse_trace(system: FunctionSystem, doc) -> CoreVarietyTrace:
    L = parse_functional(system, _get(doc, "functional", "trace"))
    chain = tuple(system.view(v) for v in _get(doc, "chain", "trace"))
    certs = tuple(StepCertificate(int(c["step"]), frozenset(system.ground.index(s) for s in c["removed"]),
                                  tuple(_rats(c["witness"], "witness")))
                  for c in _get(doc, "steps", "trace"))
    fp = None
    if "fastpath" in doc:
        from .faces import FastPathResult, Region

        fp = tuple(FastPathResult(system.view(r["set"]), Region(r["region"]), int(r["sign"]),
                                  None if r["predicted"] is None else system.view(r["predicted"]))
                   for r in doc["fastpath"])
    return CoreVarietyTrace(L, chain, certs, int(_get(doc, "stabilized_at", "trace")), fp)


def decision_doc(d: Decision, with_float: bool = False) -> dict:
    doc = {
        "status": d.status.value,
        "has_measure": d.has_measure,
        "sign_flipped": d.sign_flipped,
        "hypothesis": d.hypothesis.value,
        "analyzed_functional": _fracs(d.functional.coeffs),
        "rho": None if d.rho is None else _fracs(d.rho),
        "note": d.note,
        "core": _labels(d.core),
        "stabilized_at": d.trace.stabilized_at,
        "trace": trace_doc(d.trace),
    }
    if with_float:
        doc["analyzed_functional_float"] = [_float(x) for x in d.functional.coeffs]
    return doc


def parse_decision(system: FunctionSystem, doc) -> Decision:
    return Decision(Status(doc["status"]), parse_trace(system, doc["trace"]), bool(doc["sign_flipped"]),
                    Hypothesis(doc["hypothesis"]),
                    parse_functional(system, doc["analyzed_functional"]),
                    None if doc["rho"] is None else tuple(_rats(doc["rho"], "rho")), doc["note"])


# -- measures ----------------------------------------------------------------

def measure_doc(m: AtomicMeasure, with_float: bool = False) -> dict:
    sys = m.system
    atoms = []
    for j, w in m.atoms:
        a = {"label": sys.labels[j], "weight": rat_str(w)}
        if sys.ground.coords is not None:
            a["coords"] = _fracs(sys.ground.coords[j])
        if with_float:
            a["weight_float"] = _float(w)
        atoms.append(a)
    return {"atoms": atoms, "basis": list(sys.basis_names), "moments": _fracs(m.moments())}


def parse_measure(system: FunctionSystem, doc) -> AtomicMeasure:
    atoms = []
    for i, a in enumerate(_get(doc, "atoms", "measure")):
        atoms.append((system.ground.index(_get(a, "label", f"atoms[{i}]")),
                      _rat(_get(a, "weight", f"atoms[{i}]"), f"atoms[{i}].weight")))
    try:
        return AtomicMeasure(system, tuple(atoms))
    except ValueError as e:
        raise ParseError(str(e)) from None


# -- faces, extensions, towers -------------------------------------------------

def face_doc(f: FaceDescriptor, generator_limit: int = 200000) -> dict:
    sys = f.core.system
    try:
        gens = len(extreme_rays(f.dual_face, limit=generator_limit))
    except RuntimeError:
        gens = None
    return {
        "core": _labels(f.core),
        "exposed": f.exposed,
        "dual_face": {
            "dim": f.dual_face.dim,
            "eq": [_fracs(r) for r in f.dual_face.eq],
            "ineq_rows": "evaluations at all points",
        },
        "dual_face_generators": gens,
        "basis": list(sys.basis_names),
    }


def parse_extension(doc) -> ExtensionProblem:
    full = parse_system(doc)
    sub = _get(doc, "sub_basis")
    if not isinstance(sub, list):
        raise ParseError("sub_basis: expected a list of names")
    coeffs = _rats(_get(doc, "functional"), "functional")
    if len(coeffs) != len(sub):
        raise ParseError("functional: one entry per sub_basis name is required")
    return extension_problem(full, sub, coeffs)


def extension_doc(p: ExtensionProblem, full: FunctionSystem) -> dict:
    doc = system_doc(full)
    doc["sub_basis"] = list(p.sub.basis_names)
    doc["functional"] = _fracs(p.L_on_sub.coeffs)
    return doc


def extension_result_doc(res: Optional[ExtensionResult], separating=None, with_float=False) -> dict:
    if res is None:
        return {"status": "NoExtension",
                "separating_function": None if separating is None else _fracs(separating)}
    return {"status": "Extends", "extension": _fracs(res.extension.coeffs),
            "measure": measure_doc(res.measure, with_float), "note": res.note}


def parse_tower(doc) -> TowerSpec:
    top = parse_system(doc)
    levels = _get(doc, "levels")
    if not isinstance(levels, list) or not levels or not all(isinstance(l, list) for l in levels):
        raise ParseError("levels: expected a nonempty list of basis-name lists")
    coeffs = _rats(_get(doc, "functional"), "functional")
    if len(coeffs) != top.dim:
        raise ParseError("functional: one entry per basis function of the top level is required")
    return tower_from_names(top, levels, coeffs)


def tower_doc(t: TowerSpec) -> dict:
    doc = system_doc(t.levels[-1])
    doc["levels"] = [list(l.basis_names) for l in t.levels]
    doc["functional"] = _fracs(t.L_full.coeffs)
    return doc


def tower_decision_doc(td: TowerDecision) -> dict:
    return {
        "overall": td.overall.value,
        "failing_level": td.failing_level,
        "core": _labels(td.core),
        "levels": [{
            "level": j,
            "basis": list(d.functional.system.basis_names),
            "status": d.status.value,
            "has_measure": d.has_measure,
            "sign_flipped": d.sign_flipped,
            "hypothesis": d.hypothesis.value,
            "core": _labels(d.core),
        } for j, d in enumerate(td.levels)],
        "note": td.note,
    }


# -- clouds ------------------------------------------------------------------

def parse_cloud(text: str, n_vars: Optional[int] = None):
    """Points and weights from whitespace-separated lines.

    Without ``n_vars`` every column is a coordinate and all weights are 1.
    With ``n_vars`` a line has ``n_vars`` coordinates and an optional weight.
    Blank lines and ``#`` comments are skipped.
    """
    pts, ws = [], []
    width = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        vals = [_rat(t, f"line {lineno}") for t in toks]
        if n_vars is None:
            if width is None:
                width = len(vals)
            if len(vals) != width:
                raise ParseError(f"line {lineno}: expected {width} columns")
            pts.append(tuple(vals))
            ws.append(to_rat(1))
        else:
            if len(vals) == n_vars:
                pts.append(tuple(vals))
                ws.append(to_rat(1))
            elif len(vals) == n_vars + 1:
                pts.append(tuple(vals[:-1]))
                ws.append(vals[-1])
            else:
                raise ParseError(f"line {lineno}: expected {n_vars} coordinates and an optional weight")
            if ws[-1] <= 0:
                raise ParseError(f"line {lineno}: weights must be positive")
    if not pts:
        raise ParseError("empty cloud")
    return pts, ws
