"""Command-line interface.

Every subcommand reads UTF-8 JSON (or a plain-text cloud for ``compress``)
and writes JSON to ``-o PATH`` or stdout.  Exit status: 0 on success,
including negative answers; 2 on unreadable or malformed input; 3 when an
internal consistency check fails.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import formats
from .corevar import decide, make_staircase
from .errors import (CoreVarietyError, DependentBasis, InternalInfeasible, InvalidNesting, InvariantViolation,
                     NoMeasure, NotInCoreVariety, ParseError, StaircaseCertificationError, UnknownLabel)
from .extend import separating_function, tower_decide, v_positive_extension
from .faces import face_of, in_relint
from .exact import rat_str
from .measure import compress_cloud, extract, monomial_moments
from .space import var_names, monomial_exponents, monomial_name

COMMANDS = ("solve", "extract", "compress", "faces", "extend", "tower", "staircase")


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    flags: dict = field(default_factory=dict)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _instance(cfg, need_functional=True):
    system, L = formats.parse_instance(formats.loads(_read(cfg.input_path)))
    if need_functional and L is None:
        raise ParseError("instance has no functional")
    return system, L


def _solve(cfg):
    _, L = _instance(cfg)
    d = decide(L, flip_allowed=cfg.flags.get("flip_allowed", True), fastpath=cfg.flags.get("fastpath", False))
    return formats.decision_doc(d, cfg.flags.get("float", False))


def _extract(cfg):
    _, L = _instance(cfg)
    d = decide(L, flip_allowed=cfg.flags.get("flip_allowed", True))
    if not d.has_measure:
        return {"status": d.status.value, "sign_flipped": d.sign_flipped, "measure": None}
    m = extract(L, decision=d)
    return {"status": d.status.value, "sign_flipped": False,
            "measure": formats.measure_doc(m, cfg.flags.get("float", False))}


def _compress(cfg):
    pts, ws = formats.parse_cloud(_read(cfg.input_path), cfg.flags.get("vars"))
    t0 = time.perf_counter()
    m = compress_cloud(pts, ws, cfg.flags["degree"], workers=cfg.flags.get("threads", 1))
    elapsed = time.perf_counter() - t0
    print(f"compress: {len(pts)} points -> {len(m)} atoms in {elapsed:.3f} s", file=sys.stderr)
    doc = formats.measure_doc(m, cfg.flags.get("float", False))
    doc["input_points"] = len(pts)
    doc["degree"] = cfg.flags["degree"]
    # every monomial, including any dropped as dependent on the cloud
    n = len(pts[0]) if pts else 0
    names = var_names(n)
    doc["monomial_moments"] = {monomial_name(a, names): rat_str(v) for a, v in
                               zip(monomial_exponents(n, cfg.flags["degree"]), monomial_moments(m, cfg.flags["degree"]))}
    return doc


def _faces(cfg):
    system, L = _instance(cfg)
    doc = formats.face_doc(face_of(L))
    comps = []
    for path in cfg.flags.get("compare") or []:
        other = formats.loads(_read(path))
        m = formats.parse_functional(system, formats._get(other, "functional", path))
        try:
            rel = in_relint(m, L)
        except NoMeasure:
            rel = None
        comps.append({"file": path, "in_relint": rel})
    if comps:
        doc["relint_comparisons"] = comps
    return doc


def _extend(cfg):
    p = formats.parse_extension(formats.loads(_read(cfg.input_path)))
    res = v_positive_extension(p)
    sep = separating_function(p) if res is None else None
    return formats.extension_result_doc(res, sep, cfg.flags.get("float", False))


def _tower(cfg):
    t = formats.parse_tower(formats.loads(_read(cfg.input_path)))
    return formats.tower_decision_doc(tower_decide(t, cfg.flags.get("flip_allowed", True)))


def _staircase(cfg):
    system, L = make_staircase(cfg.flags["k"], certify=cfg.flags.get("certify", True))
    return formats.instance_doc(system, L)


HANDLERS = {"solve": _solve, "extract": _extract, "compress": _compress, "faces": _faces,
            "extend": _extend, "tower": _tower, "staircase": _staircase}

PARSE_ERRORS = (ParseError, UnknownLabel, DependentBasis, InvalidNesting, NotInCoreVariety)
INTERNAL_ERRORS = (InvariantViolation, InternalInfeasible)


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the exit status."""
    if cfg.command not in HANDLERS:
        print(f"error: unknown command {cfg.command!r}", file=sys.stderr)
        return 2
    try:
        doc = HANDLERS[cfg.command](cfg)
    except StaircaseCertificationError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 3
    except PARSE_ERRORS as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except INTERNAL_ERRORS as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 3
    except CoreVarietyError as e:  # pragma: no cover
        print(f"error: {e}", file=sys.stderr)
        return 3
    text = formats.dumps(doc)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="corevariety", description="Exact truncated moment problems on finite sets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("input")
        p.add_argument("-o", "--output")
        p.add_argument("--float", action="store_true", help="add decimal renderings next to fractions")

    p = sub.add_parser("solve", help="core variety and existence decision")
    common(p)
    p.add_argument("--flip-allowed", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--fastpath", action="store_true", help="check the cone classification at every step")
    p = sub.add_parser("extract", help="a finitely atomic representing measure")
    common(p)
    p.add_argument("--flip-allowed", action=argparse.BooleanOptionalAction, default=True)
    p = sub.add_parser("compress", help="prune a weighted point cloud")
    common(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--vars", type=int, help="coordinates per line; one more column is read as the weight")
    p.add_argument("--threads", type=int, default=1, help="worker processes for partitioned pruning")
    p = sub.add_parser("faces", help="face of the moment cone")
    common(p)
    p.add_argument("--compare", nargs="*", metavar="FILE", help="instances whose functionals to test for relint")
    p = sub.add_parser("extend", help="positive extension from a subspace")
    common(p)
    p = sub.add_parser("tower", help="decisions along a truncation tower")
    common(p)
    p.add_argument("--flip-allowed", action=argparse.BooleanOptionalAction, default=True)
    p = sub.add_parser("staircase", help="generate a long-chain instance")
    common(p, with_input=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--certify", action=argparse.BooleanOptionalAction, default=True,
                   help="run the iteration and fail unless it takes k+1 strict steps")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    flags = {k: v for k, v in vars(ns).items() if k not in ("command", "input", "output")}
    return RunConfig(ns.command, getattr(ns, "input", None), ns.output, flags)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) and 2
    if ns.command == "staircase" and ns.k < 1:
        print("input error: --k must be >= 1", file=sys.stderr)
        return 2
    if ns.command == "compress" and (ns.degree < 0 or ns.threads < 1):
        print("input error: --degree must be >= 0 and --threads >= 1", file=sys.stderr)
        return 2
    return run(config_from_args(ns))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
