"""``sjlab`` command line: build | solve | verify | catalog.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import algebra as alg
from .catalog import DESCRIPTIONS, CatalogError, build
from .derivations import SolverError, SolverQuery, first_nonstandard
from .exact import FieldError, field_from_tag
from .structure import StructureError, center, middle_nucleus, peirce
from .verify import SUITES, run_suite

SOLVE_KINDS = {
    "der": "der", "delta": "delta_der", "tder": "tder", "gder": "gder",
    "gder5": "gder_eq5", "centroid": "centroid",
}
STRUCT_KINDS = ("center", "nucleus", "peirce")


class UsageError(Exception):
    pass


def sidecar_path(path: Path) -> Path:
    return path.with_name(path.stem + ".idem.json")


def _fmt_vec(F, v):
    return [F.fmt(x) for x in v]


def write_algebra(cat, field, out: Path) -> None:
    out.write_text(alg.dumps(cat.algebra) + "\n")
    side = {"spec": cat.spec, "field": field.tag,
            "idempotents": [_fmt_vec(field, e) for e in cat.idempotents]}
    sidecar_path(out).write_text(json.dumps(side, indent=1) + "\n")


def load_algebra(arg: str, field):
    """Return ``(spec string, algebra, idempotents or None)`` from a file or a spec string."""
    path = Path(arg)
    if path.is_file():
        A = alg.loads(path.read_text())
        side = sidecar_path(path)
        if side.is_file():
            d = json.loads(side.read_text())
            idem = [tuple(A.field.parse(x) for x in e) for e in d["idempotents"]]
            return d["spec"], A, idem
        return path.name, A, None
    cat = build(arg, field)
    return cat.spec, cat.algebra, list(cat.idempotents)


def _map_entries(F, M):
    return [F.fmt(x) for x in M.flat()]


def solve_report(spec, A, idem, kind, parity, delta=None) -> dict:
    F = A.field
    rep = {"algebra": spec, "field": F.tag, "kind": kind}
    if kind in STRUCT_KINDS:
        if kind == "peirce":
            if idem is None:
                raise UsageError("no idempotents known for this algebra")
            if not A.is_unital:
                raise UsageError("Peirce decomposition needs a unital algebra")
            rep["idempotents"] = [_fmt_vec(F, e) for e in idem]
            rep["peirce"] = {"dims": peirce(A, idem).dims()}
            return rep
        S = center(A) if kind == "center" else middle_nucleus(A)
        rep["dim"] = S.dim
        rep["basis"] = [_fmt_vec(F, v) for v in S.rows]
        rep[f"{kind}_dim"] = S.dim
        return rep
    q = SolverQuery(A, SOLVE_KINDS[kind], parity, delta)
    S = q.run()
    rep["parity"] = parity
    if kind == "delta":
        rep["delta"] = F.fmt(F(delta))
    rep["dim"] = S.dim
    if S.arity == 3:
        rep["basis"] = [[_map_entries(F, m) for m in t.components()] for t in S.basis()]
    else:
        rep["basis"] = [_map_entries(F, m) for m in S.basis()]
    if kind == "delta":
        rep["standard"] = None
    else:
        w = first_nonstandard(A, S)
        rep["standard"] = {"all_standard": w is None, "witness": w}
    if kind == "centroid":
        rep["centroid_dims"] = {str(parity): S.dim}
    return rep


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def emit(rep: dict, fmt: str) -> None:
    if fmt == "text":
        print("\n".join(_text(rep)))
    else:
        print(json.dumps(rep, indent=1, ensure_ascii=False))


def cmd_build(args) -> int:
    F = field_from_tag(args.field)
    cat = build(args.spec, F)
    if args.out:
        write_algebra(cat, F, Path(args.out))
    else:
        print(alg.dumps(cat.algebra))
    return 0


def cmd_solve(args) -> int:
    F = field_from_tag(args.field)
    spec, A, idem = load_algebra(args.algebra, F)
    if args.kind == "delta" and args.delta is None:
        raise UsageError("--kind delta needs --delta")
    delta = A.field.parse(args.delta) if args.delta is not None else None
    emit(solve_report(spec, A, idem, args.kind, args.parity, delta), args.format)
    return 0


def cmd_verify(args) -> int:
    F = field_from_tag(args.field)
    if args.theorem not in SUITES:
        raise UsageError(f"unknown theorem id {args.theorem!r}; known: {', '.join(SUITES)}")
    rep = run_suite(args.theorem, F, timing=args.timing)
    emit(rep, args.format)
    return 0 if rep["pass"] else 1


def cmd_catalog(args) -> int:
    emit({"algebras": DESCRIPTIONS, "suites": {k: s.description for k, s in SUITES.items()}}, args.format)
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sjlab", description="exact computations in Jordan superalgebras")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a catalog algebra and write it as JSON")
    b.add_argument("spec")
    b.add_argument("--field", default="Q")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("solve", help="solve for maps or structure of one algebra")
    s.add_argument("--algebra", required=True, help="algebra file or catalog spec")
    s.add_argument("--kind", required=True, choices=list(SOLVE_KINDS) + list(STRUCT_KINDS))
    s.add_argument("--parity", type=int, choices=(0, 1), default=0)
    s.add_argument("--delta")
    s.add_argument("--field", default="Q")
    s.add_argument("--format", choices=("json", "text"), default="json")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run a fixed verification suite")
    v.add_argument("theorem")
    v.add_argument("--field", default="Q")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--timing", action="store_true", help="include wall-clock runtime (breaks byte-identity)")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", help="list algebra names and suites")
    c.add_argument("--format", choices=("json", "text"), default="json")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CatalogError, SolverError, StructureError, FieldError, ValueError) as e:
        print(f"sjlab: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
