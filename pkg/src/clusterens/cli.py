"""Command-line front end.

Node numbering in human-facing strings is 1-based (paths like "1 2 1",
group elements like "{1,(12)}"), matching the variable names a1..an; all
JSON payloads and files are 0-based.  Output is deterministic: identical
inputs produce byte-identical output.

Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
3 illegal mutation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from . import catalog as cat
from .arith import ParseError, parse as parse_rf, render
from .ensemble import ASeed, XSeed, apply_path, a_names, x_names
from .modular import GroupElement, NotAnIsomorphism, act
from .quiver import FrozenNodeError, Quiver

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_MUTATION = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_PARSE):
        super().__init__(message)
        self.code = code


def parse_path(text: str) -> Tuple[int, ...]:
    """1-based node list: "2", "1 2 1", "1,2,1" or concatenated digits "121"."""
    text = text.strip()
    if not text or text == "<>":
        return ()
    if "," in text or " " in text:
        parts = [p for p in text.replace(",", " ").split() if p]
    else:
        parts = list(text)
    try:
        nodes = tuple(int(p) - 1 for p in parts)
    except ValueError:
        raise CliError(f"bad path {text!r}")
    if any(n < 0 for n in nodes):
        raise CliError(f"bad path {text!r}: nodes are numbered from 1")
    return nodes


def parse_cycles(text: str, n: int) -> Tuple[int, ...]:
    """Permutation in cycle notation "(12)(34)" (1-based), "()" = identity."""
    perm = list(range(n))
    text = text.strip()
    if text in ("", "()"):
        return tuple(perm)
    if not (text.startswith("(") and text.endswith(")")):
        raise CliError(f"bad permutation {text!r}")
    for cyc in text[1:-1].split(")("):
        if "," in cyc or " " in cyc:
            entries = [p for p in cyc.replace(",", " ").split() if p]
        else:
            entries = list(cyc)
        try:
            nodes = [int(p) - 1 for p in entries]
        except ValueError:
            raise CliError(f"bad permutation {text!r}")
        if len(nodes) < 2 or any(not 0 <= v < n for v in nodes):
            raise CliError(f"bad permutation {text!r}")
        for a, b in zip(nodes, nodes[1:] + nodes[:1]):
            perm[a] = b
    return tuple(perm)


def parse_group_element(text: str, q: Quiver) -> GroupElement:
    """The "{path,(cycles)}" form, e.g. "{1,(12)}" or "{1231,(23)}"."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    if "," not in body:
        raise CliError(f"bad group element {text!r}")
    path_part, perm_part = body.split(",", 1)
    path = parse_path(path_part)
    perm = parse_cycles(perm_part.strip(), q.n)
    try:
        return GroupElement(q, path, perm)
    except NotAnIsomorphism as exc:
        raise CliError(f"{text}: {exc}")


def _load_quiver_source(args) -> Tuple[Quiver, Tuple[str, ...], Tuple[str, ...], Optional[str]]:
    if getattr(args, "catalog", None):
        try:
            entry = cat.build(args.catalog)
        except cat.UnknownEntry as exc:
            raise CliError(f"unknown catalog entry: {exc}")
        return entry.quiver, entry.a_labels, entry.x_labels, args.catalog
    if getattr(args, "quiver", None):
        try:
            with open(args.quiver) as fh:
                q = Quiver.from_dict(json.load(fh))
        except FileNotFoundError:
            raise CliError(f"no such file: {args.quiver}")
        except Exception as exc:
            raise CliError(f"bad quiver file: {exc}")
        return q, a_names(q), x_names(q), None
    raise CliError("provide --catalog NAME or --quiver FILE")


def _matrix_lines(q: Quiver) -> List[str]:
    width = max(len(str(x)) for row in q.matrix for x in row)
    return [" ".join(f"{x:>{width}}" for x in row) for row in q.matrix]


def cmd_mutate(args) -> int:
    q, a_labels, x_labels, _ = _load_quiver_source(args)
    path = parse_path(args.path)
    aseed = ASeed.initial(q, a_labels)
    xseed = XSeed.initial(q, x_labels)
    try:
        aseed = apply_path(aseed, path)
        xseed = apply_path(xseed, path)
    except (FrozenNodeError, IndexError) as exc:
        print(f"illegal mutation: {exc}", file=sys.stderr)
        return EXIT_MUTATION
    if args.format == "json":
        print(json.dumps({
            "path": list(path),
            "quiver": aseed.quiver.to_dict(),
            "a_vars": [render(v) for v in aseed.vars],
            "x_vars": [render(v) for v in xseed.vars],
        }, indent=2, sort_keys=True))
    else:
        print("exchange matrix:")
        for line in _matrix_lines(aseed.quiver):
            print("  " + line)
        print("a-variables:")
        for name, v in zip(a_labels, aseed.vars):
            print(f"  {name} = {render(v)}")
        print("x-variables:")
        for name, v in zip(x_labels, xseed.vars):
            print(f"  {name} = {render(v)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results: List[Tuple[str, bool]] = []
    if args.catalog:
        try:
            results = cat.verify_entry(args.catalog)
        except cat.UnknownEntry as exc:
            raise CliError(f"unknown catalog entry: {exc}")
    else:
        q, a_labels, x_labels, _ = _load_quiver_source(args)
        if not args.fn or not args.gen:
            raise CliError("verification needs --fn and at least one --gen")
        names = a_labels if args.flavor == "a" else x_labels
        try:
            f = parse_rf(args.fn, names)
        except ParseError as exc:
            raise CliError(f"bad function: {exc}")
        for text in args.gen:
            g = parse_group_element(text, q)
            results.append((text, act(g, f, args.flavor) == f))
    ok = all(passed for _, passed in results)
    if args.format == "json":
        print(json.dumps({
            "checks": [{"name": n, "pass": p} for n, p in results],
            "pass": ok,
        }, indent=2, sort_keys=True))
    else:
        for name, passed in results:
            print(f"{'PASS' if passed else 'FAIL'}  {name}")
        print(f"{'all checks passed' if ok else 'verification FAILED'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sequence(args) -> int:
    kind = args.kind
    if kind in ("somos4", "somos5", "somos6"):
        n = args.n if args.n is not None else 10
        if n < 1:
            raise CliError("need n >= 1")
        k = int(kind[-1])
        terms = cat.somos_sequence(k, max(n, k))[:n]
        if args.format == "json":
            print(json.dumps({"kind": kind, "terms": terms}))
        else:
            for t in terms:
                print(t)
    elif kind == "markov":
        depth = args.depth if args.depth is not None else 3
        if depth < 0:
            raise CliError("need depth >= 0")
        triples = cat.markov_triples(depth)
        if args.format == "json":
            print(json.dumps({"kind": kind, "triples": [list(t) for t in triples]}))
        else:
            for x, y, z in triples:
                print(f"{x} {y} {z}")
    else:
        raise CliError(f"unknown sequence kind {kind!r}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        if args.format == "json":
            rows = []
            for name in cat.catalog_names():
                if "(" in name:
                    rows.append({"name": name, "parametric": True})
                else:
                    entry = cat.build(name)
                    rows.append({
                        "name": name,
                        "parametric": False,
                        "nodes": entry.quiver.n,
                        "frozen": sorted(entry.quiver.frozen),
                        "description": entry.description,
                    })
            print(json.dumps({"entries": rows}, indent=2, sort_keys=True))
            return EXIT_OK
        for name in cat.catalog_names():
            if "(" in name:
                print(f"{name:18s} (parametric)")
            else:
                entry = cat.build(name)
                frozen = f", frozen {sorted(entry.quiver.frozen)}" if entry.quiver.frozen else ""
                print(f"{name:18s} {entry.quiver.n} nodes{frozen}  {entry.description}")
        return EXIT_OK
    if args.action == "verify":
        if not args.name:
            raise CliError("catalog verify needs an entry name")
        try:
            results = cat.verify_entry(args.name)
        except cat.UnknownEntry as exc:
            raise CliError(f"unknown catalog entry: {exc}")
        ok = all(p for _, p in results)
        if args.format == "json":
            print(json.dumps({
                "checks": [{"name": n, "pass": p} for n, p in results],
                "pass": ok,
            }, indent=2, sort_keys=True))
        else:
            for name, passed in results:
                print(f"{'PASS' if passed else 'FAIL'}  {name}")
            if not results:
                print("no shipped checks for this entry")
        return EXIT_OK if ok else EXIT_FAIL
    raise CliError(f"unknown catalog action {args.action!r}")


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(state_dir=args.state_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="clusterens",
        description="exact cluster-ensemble computations: mutation, invariants, sequences",
    )
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mutate", help="apply a mutation path and print the seed")
    m.add_argument("--quiver", help="quiver JSON file")
    m.add_argument("--catalog", help="catalog entry name")
    m.add_argument("--path", default="", help="1-based node path, e.g. '2' or '1 2 1'")
    m.add_argument("--format", choices=("text", "json"), default="text")
    m.set_defaults(func=cmd_mutate)

    v = sub.add_parser("verify", help="verify invariance of a function or a catalog entry")
    v.add_argument("--catalog", help="catalog entry to verify")
    v.add_argument("--quiver", help="quiver JSON file")
    v.add_argument("--fn", help="function in the expression grammar")
    v.add_argument("--gen", action="append", default=[],
                   help="group element '{path,(cycles)}'; repeatable")
    v.add_argument("--flavor", choices=("a", "x"), default="a")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sequence", help="print integer sequences")
    s.add_argument("kind", choices=("somos4", "somos5", "somos6", "markov"))
    s.add_argument("-n", type=int, default=None, help="number of terms")
    s.add_argument("--depth", type=int, default=None, help="tree depth (markov)")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_sequence)

    c = sub.add_parser("catalog", help="list or verify catalog entries")
    c.add_argument("action", choices=("list", "verify"))
    c.add_argument("name", nargs="?", help="entry name for verify")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_catalog)

    srv = sub.add_parser("serve", help="run the HTTP explorer backend")
    srv.add_argument("--port", type=int, default=8642)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--state-dir", default=None,
                     help="directory for JSON session snapshots")
    srv.set_defaults(func=cmd_serve)
    return p


def main(argv: Sequence[str] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
