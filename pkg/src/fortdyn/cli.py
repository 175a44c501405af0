"""
Command-line interface.

Exit codes: 0 success, 1 semantic failure (not isomorphic, check failed),
2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Union

from fortdyn.constructors import (
    enumerate_step_sequences,
    realize_finite_height_perm,
    realize_group_sequence,
    realize_selfmap_sequence,
    reduce_to_finite,
)
from fortdyn.core_action import FiniteDynSystem, Kind
from fortdyn.errors import FortDynError
from fortdyn.indicator import (
    ClosurePoset,
    classify_group_topology,
    closure_poset,
    enumerate_opens,
    find_isomorphism,
    format_opens,
    indicator_sequence,
    parse_sequence,
    poset_from_covers,
)
from fortdyn.symbolic_fort import ClosureSet, SymbolicFortSystem
from fortdyn.verify import SUITES, coverage_matrix, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
REPORT_OPENS_MAX_NODES = 12
MAX_VERIFY_SIZE = 6

Source = Union[FiniteDynSystem, SymbolicFortSystem, ClosurePoset]


class InputError(Exception):
    pass


# -- documents ------------------------------------------------------------------


def _int(doc: dict, key: str) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"field {key!r} must be an integer, got {v!r}")
    return v


def parse_document(doc) -> Source:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    kind = doc.get("type")
    if kind == "finite":
        gens = doc.get("generators")
        if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
            raise InputError("field 'generators' must be a list of index arrays")
        if doc.get("kind") not in ("group", "monoid"):
            raise InputError("field 'kind' must be 'group' or 'monoid'")
        return FiniteDynSystem(_int(doc, "size"), tuple(map(tuple, gens)), Kind(doc["kind"]))
    if kind == "symbolic":
        return SymbolicFortSystem(_int(doc, "fixed_points"), _int(doc, "z_lines"))
    if kind == "poset":
        names = doc.get("nodes")
        covers = doc.get("covers", [])
        if not isinstance(names, list) or not names:
            raise InputError("field 'nodes' must be a nonempty list")
        names = [str(v) for v in names]
        if len(set(names)) != len(names):
            raise InputError("node names must be distinct")
        if not isinstance(covers, list) or not all(
            isinstance(c, list) and len(c) == 2 and all(isinstance(v, int) for v in c) for c in covers
        ):
            raise InputError("field 'covers' must be a list of [i, j] index pairs")
        return poset_from_covers(names, covers)
    raise InputError(f"field 'type' must be finite, symbolic or poset, got {kind!r}")


def load_document(path) -> Source:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON: {e}") from None
    return parse_document(doc)


def poset_document(p: ClosurePoset) -> dict:
    return {"type": "poset", "nodes": p.names, "covers": [list(c) for c in p.covers()]}


def to_document(src: Source) -> dict:
    if isinstance(src, ClosurePoset):
        return poset_document(src)
    return src.to_dict()


def dump(doc: dict) -> str:
    """One top-level key per line; lists of objects get one object per line."""
    enc = lambda v: json.dumps(v, ensure_ascii=False)  # noqa: E731
    rows = []
    for key, v in doc.items():
        if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            body = ",\n".join(f"    {enc(x)}" for x in v)
            rows.append(f"  {enc(key)}: [\n{body}\n  ]")
        else:
            rows.append(f"  {enc(key)}: {enc(v)}")
    return "{\n" + ",\n".join(rows) + "\n}\n"


def _write_or_print(doc: dict, out) -> None:
    if out:
        Path(out).write_text(dump(doc))
    else:
        sys.stdout.write(dump(doc))


# -- analysis ------------------------------------------------------------------


def _members(label) -> list:
    if isinstance(label, frozenset):
        return sorted(label)
    if isinstance(label, ClosureSet):
        return label.labels()
    return [str(label)]


def classification_label(cls) -> str:
    if cls is None:
        return "not classifiable"
    return f"Y_{cls[0]} ⊔ Z_{cls[1]}"


def analyze(src: Source) -> dict:
    p = closure_poset(src)
    seq = indicator_sequence(p)
    cls = classify_group_topology(p)
    report = {
        "source": to_document(src)["type"],
        "closures": [
            {"id": i, "name": p.names[i], "members": _members(p.nodes[i]), "height": p.node_height[i]}
            for i in range(len(p))
        ],
        "indicator_sequence": list(seq.entries),
        "total_height": seq.total_height,
        "max_closure_height": max(seq.entries),
        "classification": None if cls is None else {
            "alpha": cls[0],
            "beta": cls[1],
            "label": classification_label(cls),
        },
        "hasse": [list(c) for c in p.covers()],
        "opens": None,
    }
    if len(p) <= REPORT_OPENS_MAX_NODES:
        report["opens"] = format_opens(p, enumerate_opens(p))
    return report


def render_text(report: dict) -> str:
    lines = ["closures:"]
    for c in report["closures"]:
        lines.append(f"  [{c['id']}] {c['name']}  height {c['height']}")
    lines.append(f"indicator sequence: {','.join(map(str, report['indicator_sequence']))}")
    lines.append(f"total height: {report['total_height']}")
    cls = report["classification"]
    lines.append(f"classification: {cls['label'] if cls else 'not classifiable'}")
    names = [c["name"] for c in report["closures"]]
    lines.append("hasse:")
    for i, j in report["hasse"]:
        lines.append(f"  {names[i]} < {names[j]}")
    if report["opens"] is not None:
        lines.append("opens: " + ",".join(report["opens"]))
    return "\n".join(lines) + "\n"


def hasse_dot(p: ClosurePoset) -> str:
    lines = ["digraph indicator {", "  rankdir=BT;"]
    for i, name in enumerate(p.names):
        label = name.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in p.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- commands -----------------------------------------------------------------


def cmd_analyze(args) -> int:
    src = load_document(args.path)
    report = analyze(src)
    if args.format == "json":
        sys.stdout.write(dump(report))
    else:
        sys.stdout.write(render_text(report))
    if args.dot:
        Path(args.dot).write_text(hasse_dot(closure_poset(src)))
    return EXIT_OK


def cmd_realize(args) -> int:
    if args.group:
        p, q = args.group
        src = realize_group_sequence(p, q)
        target = (0,) * p + (1,) * q
    elif args.selfmap is not None:
        try:
            target = parse_sequence(args.selfmap)
        except ValueError as e:
            raise InputError(str(e)) from None
        src = realize_selfmap_sequence(target)
    else:
        m, i = args.perm
        src = realize_finite_height_perm(m, i)
        target = (0,) * (i + 1)
    seq = indicator_sequence(closure_poset(src))
    _write_or_print(to_document(src), args.out)
    msg = f"indicator sequence: {seq}\n"
    (sys.stdout if args.out else sys.stderr).write(msg)
    if seq.entries != tuple(target):
        sys.stderr.write(f"error: witness realizes {seq}, expected {','.join(map(str, target))}\n")
        return EXIT_FAIL
    return EXIT_OK


def cmd_enumerate(args) -> int:
    seqs = enumerate_step_sequences(args.n)
    if args.count_only:
        print(len(seqs))
    else:
        for s in seqs:
            print(",".join(map(str, s)))
    return EXIT_OK


def cmd_iso(args) -> int:
    a = closure_poset(load_document(args.a))
    b2 = closure_poset(load_document(args.b))
    iso = find_isomorphism(a, b2)
    if iso is None:
        print("not isomorphic")
        return EXIT_FAIL
    print("isomorphic")
    for i, j in iso.items():
        print(f"  {a.names[i]} -> {b2.names[j]}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    p = closure_poset(load_document(args.path))
    red = reduce_to_finite(p)
    _write_or_print(red.to_dict(), args.out)
    if find_isomorphism(closure_poset(red), p) is None:
        sys.stderr.write("error: reduced system does not reproduce the input poset\n")
        return EXIT_FAIL
    if args.out:
        print(f"wrote {red.size}-point monoid with {len(red.generators)} generators to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("FORTDYN_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise InputError(f"FORTDYN_SEED must be an integer, got {env_seed!r}") from None
    if not 1 <= args.max_size <= MAX_VERIFY_SIZE:
        raise InputError(f"--max-size must be in 1..{MAX_VERIFY_SIZE}")
    if args.jobs < 1:
        raise InputError("--jobs must be >= 1")
    reports = run_suite(args.suite, args.max_size, seed, args.jobs)
    matrix = coverage_matrix(reports)
    for r in reports:
        if not r.passed:
            payload = r.counterexample
            doc = payload.get("system") or (payload.get("systems") or [None])[0] or payload
            path = Path(f"{r.name}.counterexample.json")
            path.write_text(dump(doc))
            sys.stderr.write(f"{r.name}: counterexample written to {path}\n")
    if args.format == "json":
        sys.stdout.write(dump({"reports": [r.to_dict() for r in reports], "coverage": matrix}))
    else:
        for r in reports:
            print(f"[{r.verdict.upper()}] {r.name} ({r.elapsed:.2f}s)")
            for d in r.details:
                print(f"    {d}")
            if r.counterexample:
                print(f"    counterexample: {json.dumps(r.counterexample, ensure_ascii=False)}")
        print("coverage:")
        for k, v in matrix.items():
            print(f"  {k:32s} {v}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fortdyn", description=__doc__.strip().splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="closures, heights, indicator sequence and topology of a system file")
    a.add_argument("path")
    a.add_argument("--format", choices=("json", "text"), default="text")
    a.add_argument("--dot", metavar="PATH", help="write the Hasse diagram as a DOT digraph")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("realize", help="build a witness system")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--group", nargs=2, type=int, metavar=("P", "Q"), help="symbolic Fort group with sequence 0^P 1^Q")
    g.add_argument("--selfmap", metavar="SEQ", help='single self-map realizing a step sequence, e.g. "0,1,2"')
    g.add_argument("--perm", nargs=2, type=int, metavar=("M", "I"), help="permutation of M points with height I")
    r.add_argument("--out", metavar="PATH")
    r.set_defaults(func=cmd_realize)

    e = sub.add_parser("enumerate", help="list step sequences of length N+1")
    e.add_argument("n", type=int)
    e.add_argument("--count-only", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    i = sub.add_parser("iso", help="test whether two indicator topologies are homeomorphic")
    i.add_argument("a")
    i.add_argument("b")
    i.set_defaults(func=cmd_iso)

    d = sub.add_parser("reduce", help="finite monoid with the same indicator topology")
    d.add_argument("path")
    d.add_argument("--out", metavar="PATH")
    d.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument("--suite", choices=("all",) + SUITES, default="all")
    v.add_argument("--max-size", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FortDynError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
