"""Command-line front end.

Subcommands: ``ring info``, ``map check``, ``verify``, ``enumerate``.
Output is deterministic: identical invocations produce byte-identical
JSON/CSV regardless of worker count, and no timing information is ever
emitted.  Exit codes: 0 = pass/complete, 1 = a mathematical violation was
found, 2 = usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import MatsemiError, PreconditionFailed
from .maps import (
    MapTable,
    corner_relation_holds,
    i_relation_holds,
    is_additive,
    is_multiplicative,
    is_ring_hom,
    is_unital,
    respects_star,
)
from .rings import parse_ring_spec, unitaries, units, validate_matrix_view, validate_ring
from .search import EnumerationQuery, run_query
from .verify import (
    replay_doubling_trace,
    verify_corner_equivalence,
    verify_doubling,
    verify_fourth_power_search,
    verify_tensor_equivalence,
    verify_witness_suite,
)

VERIFY_IDS = ("prop1", "tensor", "i-relation", "witnesses",
              "doubling-unitary", "doubling-gl")


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _emit(text: str):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _csv_rows(rows: list[list]) -> str:
    out = []
    for row in rows:
        cells = []
        for cell in row:
            s = str(cell)
            if "," in s or '"' in s:
                s = '"' + s.replace('"', '""') + '"'
            cells.append(s)
        out.append(",".join(cells))
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="matsemi",
        description="Finite-ring multiplicative-map verification workbench")
    sub = p.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="ring inspection")
    ring_sub = ring.add_subparsers(dest="ring_command", required=True)
    info = ring_sub.add_parser("info", help="build a ring and run axiom scans")
    info.add_argument("spec", help="ring spec, e.g. zmod:4 or mat:2:gauss:3")
    info.add_argument("--format", choices=("json", "csv", "text"), default="json")
    info.add_argument("--size-cap", type=int, default=None)

    mp = sub.add_parser("map", help="map predicates")
    map_sub = mp.add_subparsers(dest="map_command", required=True)
    check = map_sub.add_parser("check", help="run predicate checks on a map file")
    check.add_argument("path", help="JSON map file {dom, cod, img}")
    check.add_argument("--mult", action="store_true", help="multiplicativity scan")
    check.add_argument("--add", action="store_true", help="additivity scan")
    check.add_argument("--ring-hom", action="store_true", help="both scans")
    check.add_argument("--star", action="store_true", help="involution preservation")
    check.add_argument("--corner", action="store_true",
                       help="phi(1) = phi(e11) + phi(e22)")
    check.add_argument("--i-relation", action="store_true",
                       help="phi(i) = i phi(e11) + i phi(e22)")
    check.add_argument("--unital", action="store_true", help="phi(1) = 1")
    check.add_argument("--format", choices=("json", "csv", "text"), default="json")
    check.add_argument("--size-cap", type=int, default=None)

    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("suite", choices=VERIFY_IDS)
    ver.add_argument("--dom", help="domain ring spec")
    ver.add_argument("--cod", help="codomain ring spec")
    ver.add_argument("--ring", help="ring spec for ring-level suites")
    ver.add_argument("--map", dest="map_path", help="JSON map file")
    ver.add_argument("--limit", type=int, default=None)
    ver.add_argument("--workers", type=int, default=1)
    ver.add_argument("--size-cap", type=int, default=None)
    ver.add_argument("--replay", help="replay a stored doubling trace")
    ver.add_argument("--format", choices=("json", "csv", "text"), default="json")

    en = sub.add_parser("enumerate", help="enumerate multiplicative maps")
    en.add_argument("--dom", required=True)
    en.add_argument("--cod", required=True)
    en.add_argument("--filter", action="append", default=[],
                    help="unital|star|corner|i_relation (repeatable)")
    en.add_argument("--limit", type=int, default=None)
    en.add_argument("--workers", type=int, default=1)
    en.add_argument("--size-cap", type=int, default=None)
    en.add_argument("--format", choices=("json", "csv", "text"), default="json")
    return p


def _cmd_ring_info(args) -> int:
    ring = parse_ring_spec(args.spec, size_cap=args.size_cap)
    val = validate_ring(ring)
    view_ok = True
    view_info = None
    if ring.matrix_view is not None:
        vv = validate_matrix_view(ring.matrix_view)
        view_ok = vv.ok
        view_info = {"k": ring.matrix_view.k,
                     "base": ring.matrix_view.base.label,
                     "checks_pass": vv.ok}
    report = {
        "spec": ring.label,
        "size": ring.size,
        "zero": ring.zero,
        "one": ring.one,
        "valid": val.ok and view_ok,
        "units": int(units(ring).size),
        "unitaries": int(unitaries(ring).size) if ring.has_star else None,
        "has_star": ring.has_star,
        "has_i": ring.has_i,
        "i_elem": ring.i_elem,
        "matrix": view_info,
        "checks": {name: c.passed for name, c in val.checks.items()},
        "info": {k: v for k, v in val.info.items()
                 if not isinstance(v, list)},
    }
    if args.format == "json":
        _emit(_dump(report))
    elif args.format == "csv":
        rows = [["field", "value"]]
        for key in ("spec", "size", "zero", "one", "valid", "units",
                    "unitaries", "has_star", "has_i", "i_elem"):
            rows.append([key, report[key]])
        _emit(_csv_rows(rows))
    else:
        lines = [f"ring {report['spec']}: size {report['size']}, "
                 f"zero {report['zero']}, one {report['one']}",
                 f"valid: {report['valid']}",
                 f"units: {report['units']}, unitaries: {report['unitaries']}",
                 f"imaginary unit: {report['i_elem']}"]
        for name, ok in report["checks"].items():
            lines.append(f"  check {name}: {'pass' if ok else 'FAIL'}")
        _emit("\n".join(lines))
    return 0 if report["valid"] else 1


_CHECK_FLAGS = [
    ("mult", "--mult", lambda phi: is_multiplicative(phi)),
    ("add", "--add", lambda phi: is_additive(phi)),
    ("ring_hom", "--ring-hom", lambda phi: is_ring_hom(phi)),
    ("star", "--star", lambda phi: respects_star(phi)),
    ("corner", "--corner", lambda phi: corner_relation_holds(phi)),
    ("i_relation", "--i-relation", lambda phi: i_relation_holds(phi)),
]


def _cmd_map_check(args) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MatsemiError(f"malformed map JSON: {exc}") from exc
    phi = MapTable.from_json(payload, size_cap=args.size_cap)
    selected = [(name, fn) for name, flag, fn in _CHECK_FLAGS
                if getattr(args, name)]
    if not selected and not args.unital:
        raise MatsemiError(
            "no checks requested; pass --mult/--add/--ring-hom/--star/"
            "--corner/--i-relation/--unital")
    reports = [fn(phi).to_json() for _, fn in selected]
    if args.unital:
        ok = is_unital(phi)
        reports.append({"predicate": "unital", "pass": ok,
                        "witnesses": [] if ok else [[phi.dom.one]],
                        "counts": {"checked": 1, "violations": int(not ok)}})
    all_pass = all(r["pass"] for r in reports)
    doc = {"map": {"dom": phi.dom.label, "cod": phi.cod.label},
           "checks": reports, "pass": all_pass}
    if args.format == "json":
        _emit(_dump(doc))
    elif args.format == "csv":
        rows = [["predicate", "pass", "checked", "violations"]]
        rows += [[r["predicate"], r["pass"], r["counts"]["checked"],
                  r["counts"]["violations"]] for r in reports]
        _emit(_csv_rows(rows))
    else:
        lines = [f"map {phi.dom.label} -> {phi.cod.label}"]
        for r in reports:
            mark = "pass" if r["pass"] else "FAIL"
            lines.append(f"  {r['predicate']}: {mark} "
                         f"({r['counts']['violations']} violations / "
                         f"{r['counts']['checked']} checked)")
            for w in r["witnesses"][:4]:
                lines.append(f"    witness {tuple(w)}")
        lines.append(f"overall: {'pass' if all_pass else 'FAIL'}")
        _emit("\n".join(lines))
    return 0 if all_pass else 1


def _load_map(path: str, size_cap) -> MapTable:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MatsemiError(f"malformed map JSON: {exc}") from exc
    return MapTable.from_json(payload, size_cap=size_cap)


def _cmd_verify(args) -> int:
    suite = args.suite
    if suite in ("doubling-unitary", "doubling-gl"):
        mode = "unitaries" if suite == "doubling-unitary" else "units"
        if args.replay:
            with open(args.replay, "r", encoding="utf-8") as fh:
                stored = json.load(fh)
            identical, recomputed = replay_doubling_trace(stored)
            doc = {"suite": suite, "replay": args.replay,
                   "identical": identical,
                   "pass": identical and recomputed["conflicts_total"] == 0}
            _emit(_dump(doc) if args.format == "json"
                  else f"replay {'identical' if identical else 'DIVERGED'}")
            return 0 if doc["pass"] else 1
        if not args.map_path:
            raise MatsemiError(f"verify {suite} needs --map (or --replay)")
        phi = _load_map(args.map_path, args.size_cap)
        report = verify_doubling(phi, mode=mode)
        doc = report.to_json()
    elif suite == "prop1":
        if not args.dom or not args.cod:
            raise MatsemiError("verify prop1 needs --dom and --cod")
        dom = parse_ring_spec(args.dom, size_cap=args.size_cap)
        cod = parse_ring_spec(args.cod, size_cap=args.size_cap)
        doc = verify_corner_equivalence(dom, cod, workers=args.workers).to_json()
    elif suite == "tensor":
        if not args.dom:
            raise MatsemiError("verify tensor needs --dom")
        dom = parse_ring_spec(args.dom, size_cap=args.size_cap)
        cod = parse_ring_spec(args.cod, size_cap=args.size_cap) if args.cod else None
        doc = verify_tensor_equivalence(dom, cod, workers=args.workers).to_json()
    elif suite == "i-relation":
        if not args.dom:
            raise MatsemiError("verify i-relation needs --dom")
        dom = parse_ring_spec(args.dom, size_cap=args.size_cap)
        cod = parse_ring_spec(args.cod, size_cap=args.size_cap) if args.cod else None
        limit = args.limit if args.limit is not None else 40
        doc = verify_fourth_power_search(
            dom, cod, limit=limit, workers=args.workers).to_json()
    elif suite == "witnesses":
        if not args.ring:
            raise MatsemiError("verify witnesses needs --ring")
        ring = parse_ring_spec(args.ring, size_cap=args.size_cap)
        doc = verify_witness_suite(ring).to_json()
    else:  # pragma: no cover - argparse restricts choices
        raise MatsemiError(f"unknown suite {suite}")

    if args.format == "json":
        _emit(_dump(doc))
    elif args.format == "csv":
        rows = [["key", "value"]]
        rows += [[k, v] for k, v in doc.items()
                 if isinstance(v, (str, int, bool)) or v is None]
        _emit(_csv_rows(rows))
    else:
        lines = [f"suite {doc.get('suite', suite)}:"]
        for k, v in doc.items():
            if isinstance(v, (str, int, bool)) or v is None:
                lines.append(f"  {k}: {v}")
        _emit("\n".join(lines))
    return 0 if doc.get("pass") else 1


def _cmd_enumerate(args) -> int:
    query = EnumerationQuery(dom=args.dom, cod=args.cod,
                             filters=tuple(args.filter), limit=args.limit)
    result = run_query(query, workers=args.workers, size_cap=args.size_cap)
    summary = {"query": query.to_json(), **result.summary()}
    if args.format == "json":
        parts = [_dump(m.to_json()) for m in result.maps]
        parts.append(_dump({"summary": summary}))
        _emit("\n".join(parts))
    elif args.format == "csv":
        rows = [["index", "img"]]
        rows += [[i, " ".join(str(int(v)) for v in m.img)]
                 for i, m in enumerate(result.maps)]
        _emit(_csv_rows(rows))
    else:
        lines = [f"map {i}: {' '.join(str(int(v)) for v in m.img)}"
                 for i, m in enumerate(result.maps)]
        lines.append(f"count {summary['count']}, nodes {summary['nodes']}, "
                     f"exhaustive {summary['exhaustive']}")
        _emit("\n".join(lines))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ring":
            return _cmd_ring_info(args)
        if args.command == "map":
            return _cmd_map_check(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        parser.error(f"unknown command {args.command}")
    except PreconditionFailed as exc:
        _emit(_dump({"error": "precondition_failed", "detail": str(exc),
                     "pass": False}))
        return 1
    except (MatsemiError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
