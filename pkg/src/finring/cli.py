"""Command-line front end.

Exit codes: 0 ok/pass, 1 check failure, 2 usage or input error, 3 skipped.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from . import predicates as P
from .errors import DegenerateRing, FinRingError
from .ring_core import (
    FiniteRing,
    default_cap,
    is_dedekind_finite,
    jacobson_radical,
    nilpotents,
    units,
)
from .ringspec import dump_table, elaborate, expand_context, load_manifest, parse_context, parse_spec
from .theorems import (
    ALL_IDS,
    FAIL,
    INFINITE_IDS,
    INFINITE_WITNESS,
    PASS,
    RING_CHECKS,
    CheckResult,
    run_context_check,
    run_corpus,
    run_ring_check,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SKIPPED = 0, 1, 2, 3

DECOMPOSE_KINDS = {"clean": "clean", "jclean": "j-clean", "nilclean": "nil-clean"}


@dataclass
class PropertyReport:
    spec: str
    size: int
    units: int
    radical: int
    nilpotents: int
    commutative: bool
    uj: bool
    uu: bool
    boolean: bool
    reduced: bool
    abelian: bool
    local: bool
    division_ring: bool
    dedekind_finite: bool
    clean: bool
    j_clean: bool
    nil_clean: bool
    uniquely_nil_clean: bool
    conjugate_nil_clean: bool
    uj_conditions: str
    uj_sharpenings: bool
    time_ms: float

    def text(self) -> str:
        lines = []
        for key, value in asdict(self).items():
            if isinstance(value, bool):
                value = str(value).lower()
            lines.append(f"{key}: {value}")
        lines.append("note: conjugate_nil_clean uses a working definition")
        return "\n".join(lines) + "\n"


def property_report(spec_text: str, R: FiniteRing, started: float) -> PropertyReport:
    verdict = P.is_uj_all_ways(R)
    return PropertyReport(
        spec=spec_text,
        size=R.size,
        units=len(units(R)),
        radical=len(jacobson_radical(R)),
        nilpotents=len(nilpotents(R)),
        commutative=R.is_commutative(),
        uj=verdict.uj,
        uu=P.is_uu(R),
        boolean=P.is_boolean(R),
        reduced=P.is_reduced(R),
        abelian=P.is_abelian(R),
        local=P.is_local(R),
        division_ring=P.is_division_ring(R),
        dedekind_finite=is_dedekind_finite(R)[0],
        clean=P.is_clean(R)[0],
        j_clean=P.is_j_clean(R)[0],
        nil_clean=P.is_nil_clean(R)[0],
        uniquely_nil_clean=P.is_uniquely_nil_clean(R),
        conjugate_nil_clean=P.is_conjugate_nil_clean(R),
        uj_conditions="".join("T" if c else "F" for c in verdict.conditions),
        uj_sharpenings=verdict.sharpenings_hold,
        time_ms=round((time.perf_counter() - started) * 1000, 1),
    )


def _error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _build(spec_text: str, cap: int) -> FiniteRing:
    return elaborate(parse_spec(spec_text), cap, Path.cwd())


def cmd_info(args) -> int:
    started = time.perf_counter()
    try:
        R = _build(args.spec, args.cap)
        report = property_report(args.spec, R, started)
    except FinRingError as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    print(json.dumps(asdict(report), indent=2) if args.json else report.text(), end="\n" if args.json else "")
    return EXIT_OK


def _exit_for(results: list[CheckResult]) -> int:
    verdicts = {r.verdict for r in results}
    if FAIL in verdicts:
        return EXIT_FAIL
    return EXIT_OK if PASS in verdicts else EXIT_SKIPPED


def cmd_check(args) -> int:
    if args.theorem not in ALL_IDS:
        return _error(f"unknown theorem id {args.theorem!r}; valid ids: {', '.join(ALL_IDS)}")
    try:
        if args.theorem == "thm-morita":
            text = args.spec[len("context:"):] if args.spec.startswith("context:") else args.spec
            results = [run_context_check(ctx, args.cap)
                       for ctx in expand_context(parse_context(text), args.cap, Path.cwd())]
        elif args.theorem in INFINITE_IDS:
            parse_spec(args.spec)
            results = [CheckResult(args.theorem, args.spec, "skipped", INFINITE_WITNESS)]
        else:
            spec = parse_spec(args.spec)
            results = [run_ring_check(args.theorem, elaborate(spec, args.cap, Path.cwd()), spec, args.cap)]
    except FinRingError as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    for r in results:
        print(r.line())
    return _exit_for(results)


def cmd_scan(args) -> int:
    if args.filter is not None and args.filter not in ALL_IDS:
        return _error(f"unknown theorem id {args.filter!r}; valid ids: {', '.join(ALL_IDS)}")
    path = Path(args.manifest)
    try:
        entries = load_manifest(path)
        ledger = run_corpus(entries, args.filter, args.cap, path.parent, args.jobs)
    except OSError as exc:
        return _error(f"cannot read manifest: {exc}")
    except FinRingError as exc:
        return _error(f"{path}: {exc}")
    text = ledger.text()
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.json:
        Path(args.json).write_text(ledger.to_json(), encoding="utf-8")
    return EXIT_FAIL if ledger.failures else EXIT_OK


def resolve_element(R: FiniteRing, token: str) -> int:
    """Display name first, then a decimal carrier index."""
    if token in R.names:
        return R.index(token)
    if token.isdigit() and int(token) < R.size:
        return int(token)
    raise LookupError(f"no element {token!r} in a ring of size {R.size}")


def cmd_decompose(args) -> int:
    try:
        R = _build(args.spec, args.cap)
        r = resolve_element(R, args.element)
        found = P.decompositions(R, r, DECOMPOSE_KINDS[args.kind])
    except (FinRingError, LookupError) as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    if not found:
        print("none")
    for d in found:
        print(f"e={R.names[d.idempotent_part]} t={R.names[d.other_part]}")
    return EXIT_OK


def cmd_dump(args) -> int:
    try:
        R = _build(args.spec, args.cap)
    except FinRingError as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    Path(args.out).write_text(dump_table(R), encoding="utf-8")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finring", description="Finite-ring workbench for UJ rings.")
    parser.add_argument("--cap", type=int, default=None,
                        help="maximum ring size (overrides FINRING_CAP; default 4096)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="print the property report of a ring")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("check", help="run one theorem check")
    p.add_argument("spec", help="ring spec, or a context spec for thm-morita")
    p.add_argument("theorem")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", help="run the theorem suite over a manifest")
    p.add_argument("manifest")
    p.add_argument("--filter", default=None, help="only this check id")
    p.add_argument("--out", default=None, help="also write the ledger here")
    p.add_argument("--json", default=None, help="write a structured ledger here")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("decompose", help="list r = e + t decompositions")
    p.add_argument("spec")
    p.add_argument("element", help="display name or index")
    p.add_argument("kind", choices=sorted(DECOMPOSE_KINDS))
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("dump", help="write the Cayley tables of a ring")
    p.add_argument("spec")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap is None:
        args.cap = default_cap()
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
