"""Command line interface and JSON input/output.

Input documents carry a matrix, an optional fan (1-based generator index
lists), an optional torsion block, and a role tag; see docs/format.md.
Reports serialize deterministically (sorted keys) and integers beyond
the 53-bit safe range become decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds as bounds_mod
from .classify import enumerate_qgorenstein_family, unitary_cover
from .covering import analyze, universal_cover
from .errors import InvalidInput, ToriqError
from .fans import FanData, face_fan, fan_from_point, is_complete, is_simplicial, is_qfano_weight, qfano_representative
from .gale import classify_matrix, gale_dual
from .intmat import IntMatrix
from .polytope import VPolytope, fmatrix_index, normalized_volume, polar_vertex_matrix

_SAFE = 1 << 53


# ---------------------------------------------------------------------------
# input documents


def _parse_int(x):
    if isinstance(x, bool):
        raise InvalidInput("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError as exc:
            raise InvalidInput(f"bad integer string {x!r}") from exc
    raise InvalidInput(f"bad integer entry {x!r}")


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read input document: {exc}") from exc
    if not isinstance(raw, dict):
        raise InvalidInput("input document must be a JSON object")
    if "matrix" not in raw:
        raise InvalidInput("missing required key 'matrix'")
    mat = raw["matrix"]
    if not isinstance(mat, list) or not mat or not all(isinstance(r, list) for r in mat):
        raise InvalidInput("'matrix' must be a non-empty 2-D array")
    try:
        matrix = IntMatrix([[_parse_int(x) for x in row] for row in mat])
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    role = raw.get("role", "fan-matrix")
    if role not in ("fan-matrix", "weight-matrix"):
        raise InvalidInput(f"unknown role {role!r}")
    fan = None
    if raw.get("fan") is not None:
        if not isinstance(raw["fan"], list) or not all(isinstance(c, list) for c in raw["fan"]):
            raise InvalidInput("'fan' must be a list of index lists")
        cones = []
        for cone in raw["fan"]:
            idx = [_parse_int(i) for i in cone]
            if any(i < 1 or i > matrix.cols for i in idx):
                raise InvalidInput(f"fan index out of range in {cone}")
            cones.append(tuple(i - 1 for i in idx))
        fan = cones
    torsion = None
    if raw.get("torsion") is not None:
        blk = raw["torsion"]
        if (
            not isinstance(blk, dict)
            or not isinstance(blk.get("factors"), list)
            or not isinstance(blk.get("columns"), list)
        ):
            raise InvalidInput("'torsion' must carry 'factors' and 'columns'")
        torsion = {
            "factors": [_parse_int(x) for x in blk["factors"]],
            "columns": [[_parse_int(x) for x in col] for col in blk["columns"]],
        }
    return {"matrix": matrix, "fan": fan, "role": role, "torsion": torsion}


def resolve_variety(doc) -> tuple:
    """Turn a document into (fan matrix, FanData)."""
    matrix = doc["matrix"]
    if doc["role"] == "weight-matrix":
        q = matrix
        v = gale_dual(q)
        if doc["fan"] is not None:
            fan = FanData(v, doc["fan"])
        else:
            fan = fan_from_point(q, tuple(sum(r) for r in q.data))
        return v, fan
    v = matrix
    if doc["fan"] is not None:
        return v, FanData(v, doc["fan"])
    return v, face_fan(v)


# ---------------------------------------------------------------------------
# serialization


def _encode(obj):
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > _SAFE else obj
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return _encode(obj.numerator)
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, IntMatrix):
        return [_encode(list(r)) for r in obj.data]
    return obj


def emit(payload: dict) -> None:
    print(json.dumps(_encode(payload), sort_keys=True, indent=2))


def _rows(mat) -> list:
    return [list(r) for r in mat.data]


# ---------------------------------------------------------------------------
# report assembly


def build_report(v: IntMatrix, fan: FanData) -> dict:
    cd = analyze(v, fan)
    certs = bounds_mod.certify(cd)
    report = {
        "n": cd.n,
        "r": cd.r,
        "m": cd.m,
        "r_polar": cd.r_polar,
        "m_polar": cd.m_polar,
        "mult": cd.mult,
        "weight_order": cd.weight_order,
        "extended_weight_order": cd.h_extension_order,
        "modulus": cd.modulus,
        "modulus_polar": cd.modulus_polar,
        "k": cd.k,
        "k_hat": cd.k_hat,
        "h": cd.h,
        "degree_scaled": cd.degree_scaled,
        "cover_degree_scaled": cd.cover_degree_scaled,
        "dual_cover_degree": cd.dual_cover_degree,
        "covering_group": str(cd.G),
        "weight_group": str(cd.weight_group_type),
        "h_extension": str(cd.h_extension_type),
        "certificates": [
            {
                "name": c.bound_name,
                "inputs": list(c.inputs),
                "bound": c.bound_value,
                "observed": c.observed,
                "kind": c.kind,
                "satisfied": c.satisfied,
                "applicable": c.applicable,
                "conjectural": c.conjectural,
            }
            for c in certs
        ],
    }
    # render-time re-assertions of the covering identities
    assert cd.mult * cd.modulus == normalized_volume(VPolytope(cd.V))
    assert cd.cover_degree_scaled_k == cd.h_extension_order * cd.modulus_polar
    assert cd.k % cd.k_hat == 0
    return report


def _print_failures(report: dict) -> int:
    failures = 0
    for c in report["certificates"]:
        if not c["satisfied"] and c["applicable"] and not c["conjectural"]:
            failures += 1
            print(
                f"FAIL {c['name']}: observed {c['observed']} vs bound {c['bound']} "
                f"({c['kind']}, inputs {c['inputs']})",
                file=sys.stderr,
            )
    return failures


def _table(report: dict) -> str:
    keys = [
        "n", "r", "m", "r_polar", "m_polar", "mult", "weight_order",
        "extended_weight_order", "modulus", "modulus_polar", "k", "k_hat", "h",
        "degree_scaled", "cover_degree_scaled", "dual_cover_degree",
        "covering_group", "weight_group", "h_extension",
    ]
    width = max(len(k) for k in keys)
    lines = [f"{k.rjust(width)}  {report[k]}" for k in keys]
    passed = sum(1 for c in report["certificates"] if c["satisfied"])
    lines.append(f"{'certificates'.rjust(width)}  {passed}/{len(report['certificates'])} satisfied")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    doc = load_document(args.path)
    v, fan = resolve_variety(doc)
    report = build_report(v, fan)
    emit(report)
    if args.table:
        print(_table(report), file=sys.stderr)
    return 0


def cmd_gale(args) -> int:
    doc = load_document(args.path)
    m = doc["matrix"]
    dual = gale_dual(m)
    rep = classify_matrix(m)
    emit(
        {
            "gale_dual": _rows(dual),
            "input_class": {
                "is_F": rep.is_F,
                "is_CF": rep.is_CF,
                "is_W": rep.is_W,
                "is_reduced": rep.is_reduced,
                "violated_conditions": list(rep.violated_conditions),
            },
        }
    )
    return 0


def cmd_polar(args) -> int:
    doc = load_document(args.path)
    v, fan = resolve_variety(doc)
    vpolar = polar_vertex_matrix(v, fan)
    k = fmatrix_index(v)
    cd = analyze(v, fan)
    emit(
        {
            "polar_vertices": [[x for x in row] for row in vpolar.data],
            "k": k,
            "polar_weight": _rows(cd.Qpolar),
            "degree_scaled": cd.degree_scaled,
        }
    )
    return 0


def cmd_volume(args) -> int:
    doc = load_document(args.path)
    vol = normalized_volume(VPolytope(doc["matrix"]))
    emit({"normalized_volume": vol})
    return 0


def cmd_cover(args) -> int:
    doc = load_document(args.path)
    v, fan = resolve_variety(doc)
    w, fan_theta, b, g = universal_cover(v, fan)
    emit(
        {
            "cover_fan_matrix": _rows(w),
            "cover_fan": fan_theta.cones_1based(),
            "quotient_matrix": _rows(b),
            "covering_group": str(g),
            "mult": abs(b.det()),
            "unitary_cover": _rows(unitary_cover(v, fan)),
        }
    )
    return 0


def cmd_fan(args) -> int:
    doc = load_document(args.path)
    m = doc["matrix"]
    if doc["role"] == "weight-matrix":
        q = m
    else:
        q = gale_dual(m)
    point = (
        tuple(_parse_int(x) for x in args.point.split(","))
        if args.point
        else tuple(sum(r) for r in q.data)
    )
    fan = fan_from_point(q, point)
    emit(
        {
            "fan_matrix": _rows(fan.fan_matrix),
            "max_cones": fan.cones_1based(),
            "complete": is_complete(fan),
            "simplicial": is_simplicial(fan),
        }
    )
    return 0


def cmd_qfano(args) -> int:
    doc = load_document(args.path)
    v, fan = resolve_variety(doc)
    q = gale_dual(v)
    rep = qfano_representative(v)
    emit(
        {
            "input_qfano": is_qfano_weight(q, fan),
            "representative_cones": rep.cones_1based(),
        }
    )
    return 0


def cmd_classify(args) -> int:
    doc = load_document(args.path)
    v, fan = resolve_variety(doc)
    q = gale_dual(v)
    fam = enumerate_qgorenstein_family(q, args.factor)
    kept = []
    for sub, mat, mult in fam.kept:
        kept.append(
            {
                "order": sub.order,
                "subgroup": _rows(sub.matrix),
                "fan_matrix": _rows(mat),
                "mult": mult,
                "index": fmatrix_index(mat),
            }
        )
    rejected = [
        {
            "order": sub.order,
            "subgroup": _rows(sub.matrix),
            "fan_matrix": _rows(mat),
            "witness_column": wit + 1,
        }
        for sub, mat, wit in fam.rejected
    ]
    emit({"factor": args.factor, "kept": kept, "rejected": rejected})
    return 0


def cmd_bounds(args) -> int:
    out = {
        "dim": args.dim,
        "rank": args.rank,
        "fano_bound": bounds_mod.fano_bound(args.dim, args.rank),
        "akln_bound": bounds_mod.akln_bound(args.dim),
        "mcmullen": bounds_mod.mcmullen(args.dim, args.rank),
        "sylvester": bounds_mod.sylvester(args.dim),
    }
    if args.index is not None:
        out["index"] = args.index
        out["qgorenstein_bound"] = bounds_mod.qgorenstein_bound(args.dim, args.rank, args.index)
        if args.fake_wps:
            out["fake_wps_bound"] = bounds_mod.fake_wps_bound(args.dim, args.index)
        if args.conjecture and args.index >= 2:
            out["conjecture_bound"] = bounds_mod.conjecture_bound(args.dim, args.rank, args.index)
    emit(out)
    return 0


def cmd_verify(args) -> int:
    doc = load_document(args.path)
    v, fan = resolve_variety(doc)
    report = build_report(v, fan)
    failures = _print_failures(report)
    emit(
        {
            "certificates": report["certificates"],
            "failures": failures,
            "ok": failures == 0,
        }
    )
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="toriq",
        description="Exact lattice-combinatorial invariants of complete toric varieties",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report for one variety")
    p.add_argument("path")
    p.add_argument("--table", action="store_true", help="also print a human-readable table")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gale", help="Gale dual and matrix classification")
    p.add_argument("path")
    p.set_defaults(func=cmd_gale)

    p = sub.add_parser("polar", help="polar vertices, index and polar weight matrix")
    p.add_argument("path")
    p.set_defaults(func=cmd_polar)

    p = sub.add_parser("volume", help="normalized volume of the column hull")
    p.add_argument("path")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("cover", help="universal and unitary 1-covering data")
    p.add_argument("path")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("fan", help="fan of the secondary-fan cell of a point")
    p.add_argument("path")
    p.add_argument("--point", help="comma-separated class, default the anticanonical class")
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("qfano", help="anticanonically polarized representative")
    p.add_argument("path")
    p.set_defaults(func=cmd_qfano)

    p = sub.add_parser("classify", help="enumerate the factor-h family of a weight matrix")
    p.add_argument("path")
    p.add_argument("--factor", type=int, default=1)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="bound table for given dimension and rank")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--index", type=int)
    p.add_argument("--fake-wps", action="store_true")
    p.add_argument("--conjecture", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run all certificates; exit 1 on any hard failure")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        emit({"error": {"type": "invalid-input", "message": str(exc)}})
        return 2
    except ToriqError as exc:
        emit({"error": {"type": type(exc).__name__, "message": str(exc)}})
        return 2


if __name__ == "__main__":
    sys.exit(main())
