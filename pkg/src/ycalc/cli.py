"""Command line front end.

Exit codes: 0 success, 1 suite or check failure, 2 usage, parse or domain
error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from .diagram import Y, ZX, ZXR, DiagramError
from .io import ParseError, dumps, load, to_json
from .semantics import FragmentError, ResourceError, interpret, interpret_model

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


def _model(desc: str):
    from .models import bundle_model, flip_model, prime_model, standard_model

    name, _, arg = desc.partition(":")
    if name == "standard":
        return standard_model()
    if name == "bundle":
        return bundle_model(int(arg or 3))
    if name == "prime":
        return prime_model(int(arg or 3))
    if name == "flip":
        return flip_model()
    raise ValueError(f"unknown model {desc!r}")


def cmd_parse(args) -> int:
    doc = load(args.file)
    if args.json:
        text = json.dumps(to_json(doc.diagram, doc.meta), indent=1, sort_keys=True)
    else:
        text = dumps(doc.diagram, doc.meta)
    _write(args.out, text)
    return EXIT_OK


def cmd_eval(args) -> int:
    d = load(args.file).diagram
    t = interpret_model(d, _model(args.model)) if args.model else interpret(d, backend=args.backend)
    if args.out and args.out.endswith(".json"):
        _write(args.out, json.dumps(t.to_json(), indent=1, sort_keys=True))
    else:
        _write(args.out, t.dump_text())
    return EXIT_OK


def cmd_simplify(args) -> int:
    from .simplify import simplify

    doc = load(args.file)
    out, trace = simplify(doc.diagram, strategy=args.strategy, max_steps=args.max_steps)
    _write(args.out, dumps(out, doc.meta))
    if args.trace:
        _write(args.trace, "\n".join(f"{e.rule} {' '.join(e.nodes)}" for e in trace))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .suites import rules_from_json, run_suite

    kw = {}
    if args.extra_rules:
        with open(args.extra_rules, encoding="utf-8") as fh:
            kw["extra"] = rules_from_json(fh.read())
    if args.table:
        with open(args.table, encoding="utf-8") as fh:
            kw["table"] = json.load(fh)["entries"]
    results = run_suite(args.suite, samples=args.samples, seed=args.seed, **kw)
    for r in results:
        print(f"== suite {r.name}: {'PASS' if r.passed else 'FAIL'}")
        for line in r.lines:
            print(line)
    report = {"samples": args.samples, "seed": args.seed, "suites": [r.to_json() for r in results]}
    if args.report:
        _write(args.report, json.dumps(report, indent=1, sort_keys=True))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


_TARGETS = {"zxr": (Y,), "zx": (Y,), "y": (ZXR, ZX), "rebit": (ZX, ZXR)}


def cmd_translate(args) -> int:
    from . import translate as tr

    d = load(args.file).diagram
    if d.calculus not in _TARGETS[args.to]:
        raise tr.TranslationError(f"--to {args.to} needs a {' or '.join(_TARGETS[args.to])} diagram, got {d.calculus}")
    fn = {"zxr": tr.y_to_zxr, "zx": tr.y_to_zx, "y": tr.zxr_to_y, "rebit": tr.zx_to_y}[args.to]
    out = fn(d)
    _write(args.out, dumps(out))
    if not args.check:
        return EXIT_OK
    src = interpret(d).array
    img = interpret(out).array
    want = np.kron(src.real, np.eye(2)) + np.kron(src.imag, tr.J) if args.to == "rebit" else src
    dev = float(np.max(np.abs(img - want))) if img.size else 0.0
    law = "block law Re(D)(x)I + Im(D)(x)J" if args.to == "rebit" else "semantics preserved"
    ok = dev < args.tol
    print(f"check {law}: deviation {dev:.3e} {'PASS' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ycalc", description="Y-calculus and ZX-calculus diagram tools.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="parse a diagram and print it in normal form")
    s.add_argument("file")
    s.add_argument("--json", action="store_true", help="emit JSON instead of the text format")
    s.add_argument("--out")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("eval", help="evaluate a diagram to its matrix")
    s.add_argument("file")
    s.add_argument("--backend", choices=("float", "exact"), default="float")
    s.add_argument("--model", help="standard, bundle:N, prime:P or flip")
    s.add_argument("--out")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("simplify", help="rewrite a diagram towards a smaller one")
    s.add_argument("file")
    s.add_argument("--strategy", choices=("fuse-first", "size-greedy"), default="fuse-first")
    s.add_argument("--max-steps", type=int, default=1000)
    s.add_argument("--trace")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simplify)

    s = sub.add_parser("verify", help="run verification suites")
    s.add_argument("--suite", choices=("rules", "lemmas", "translations", "minimality", "all"), default="all")
    s.add_argument("--samples", type=int, default=25)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", help="write a JSON report here")
    s.add_argument("--extra-rules", help="JSON file of additional closed rules to check")
    s.add_argument("--table", help="alternative generator-image table to verify")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("translate", help="translate between calculi")
    s.add_argument("file")
    s.add_argument("--to", choices=tuple(_TARGETS), required=True)
    s.add_argument("--check", action="store_true", help="also check the semantic contract")
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--out")
    s.set_defaults(func=cmd_translate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    from .translate import TranslationError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, DiagramError, FragmentError, TranslationError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
