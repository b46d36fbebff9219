"""Command line front end.

Two subcommands: ``report`` parses a presentation file, runs every invariant
through all of its computation routes, and prints a human table or a JSON
document; ``selfcheck`` runs the seeded random consistency battery.

Exit codes are part of the interface: 0 means every route agreed, 1 means
the input could not be used (missing file, parse error, inadmissible
presentation, bad flag), and 2 means routes disagreed somewhere, which
would indicate a bug rather than a bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .algebra import Algebra, NotAdmissibleError, build_algebra
from .closed_forms import (
    ClosedFormReport,
    NotAcyclicError,
    NotConnectedError,
    NotMonomialError,
    cross_validate,
    monomial_classification,
)
from .cohomology import InvariantReport, compute_invariants
from .dsl import ParseError, Presentation, parse_presentation
from .linalg import Field, field_from_name, field_name
from .randgen import selfcheck


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; here every input problem is 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _field_flag(text: str) -> Field:
    try:
        return field_from_name(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tauhh",
        description=(
            "Exact invariants of bound quiver algebras: center, first"
            " tau-Hochschild cohomology, HH1, HH2, relation-bimodule Hom,"
            " excess, rigidity; every quantity cross-checked over multiple"
            " independent routes."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser(
        "report",
        help="compute the invariant report for one presentation file",
        description=(
            "Parse a presentation (or read standard input with '-'), compute"
            " every invariant by every route, and print the report."
        ),
    )
    rep.add_argument("path", help="presentation file, or - for standard input")
    rep.add_argument(
        "--field",
        type=_field_flag,
        default=None,
        metavar="q|fp:<p>",
        help="override the field line: q for the rationals, fp:<p> for a prime field",
    )
    rep.add_argument(
        "--cap",
        type=int,
        default=64,
        metavar="N",
        help="admissibility search length cap (default 64)",
    )
    rep.add_argument(
        "--bar-cap",
        type=int,
        default=200_000,
        metavar="N",
        help="largest bar cochain space the oracle may materialize (default 200000)",
    )
    rep.add_argument(
        "--json", action="store_true", help="emit a JSON document instead of text"
    )
    rep.add_argument(
        "--skip-bar",
        action="store_true",
        help="skip the bar-complex routes (large inputs)",
    )
    rep.add_argument(
        "--quiet",
        action="store_true",
        help="suppress the report body; only diagnostics and the exit code",
    )

    chk = sub.add_parser(
        "selfcheck",
        help="run the seeded random consistency battery",
        description=(
            "Fixed worked examples, the crown family, and seeded random"
            " presentations, each run through every route; deterministic for"
            " a fixed seed."
        ),
    )
    chk.add_argument("--seed", type=int, default=0, metavar="N")
    chk.add_argument(
        "--count", type=int, default=24, metavar="N",
        help="number of random instances (default 24)",
    )
    chk.add_argument(
        "--max-vertices", type=int, default=4, metavar="N",
        help="vertex bound for random quivers (default 4)",
    )
    chk.add_argument(
        "--max-arrows", type=int, default=6, metavar="N",
        help="arrow bound for random quivers (default 6)",
    )
    chk.add_argument(
        "--bar-cap", type=int, default=200_000, metavar="N",
        help="bar cochain cap per instance (default 200000)",
    )
    chk.add_argument(
        "--quiet", action="store_true", help="print only the final tally line"
    )
    return parser


# ---------------------------------------------------------------------------
# report assembly


def _read_source(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read(), path


def _monomial_block(pres: Presentation) -> Optional[dict]:
    """Classification data for triangular monomial input, else None."""
    if not pres.relations:
        return None
    try:
        cls = monomial_classification(pres)
    except (NotAcyclicError, NotMonomialError, NotConnectedError):
        return None
    q = pres.quiver
    return {
        "relation_paths": [
            q.path_str(q.path_from_arrows(f)) for f in cls.forbidden
        ],
        "parallel_pairs": len(cls.pairs),
        "uniform_pairs": len(cls.uniform),
        "non_uniform_pairs": [
            {"arrow": a, "path": g} for a, g in cls.non_uniform_labels(q)
        ],
    }


def report_document(
    source_name: str,
    pres: Presentation,
    alg: Algebra,
    invariants: InvariantReport,
    closed: ClosedFormReport,
    elapsed_ms: int,
) -> dict:
    q = pres.quiver
    doc = {
        "input": {
            "source": source_name,
            "field": field_name(pres.field),
            "vertices": q.n_vertices,
            "arrows": q.n_arrows,
            "relations": len(pres.relations),
            "dimension": alg.dim,
            "nilpotency": alg.nilpotency,
        },
        "invariants": [
            {
                "name": row.name,
                "value": row.value,
                "routes": [{"name": n, "value": v} for n, v in row.routes],
                "agree": row.agree,
            }
            for row in invariants.rows
        ],
        "closed_forms": {
            "families": list(closed.families),
            "rows": [
                {
                    "family": row.family,
                    "quantity": row.quantity,
                    "closed": row.closed_value,
                    "machine": row.machine_value,
                    "agree": row.agree,
                }
                for row in closed.rows
            ],
            "all_agree": closed.all_agree,
        },
        "version": __version__,
        "exact_sequence_ok": invariants.exact_sequence_ok,
        "bar_skipped": invariants.bar_skipped,
        "timing_ms": elapsed_ms,
    }
    block = _monomial_block(pres)
    if block is not None:
        doc["monomial"] = block
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def render_text(doc: dict) -> str:
    inp = doc["input"]
    lines = [
        (
            f"presentation: {inp['source']}  field={inp['field']}"
            f"  {inp['vertices']} vertices, {inp['arrows']} arrows,"
            f" {inp['relations']} relations"
        ),
        (
            f"algebra: dimension {inp['dimension']},"
            f" radical vanishes in degree {inp['nilpotency']}"
        ),
        "",
        f"{'invariant':<18} {'value':>6}  {'agree':<6} routes",
    ]
    for row in doc["invariants"]:
        routes = "  ".join(f"{r['name']}={r['value']}" for r in row["routes"])
        lines.append(
            f"{row['name']:<18} {str(row['value']):>6}  "
            f"{'yes' if row['agree'] else 'NO':<6} {routes}"
        )
    if doc["bar_skipped"]:
        lines.append(f"note: bar routes skipped ({doc['bar_skipped']})")
    if not doc["exact_sequence_ok"]:
        lines.append("note: four-term alternating sum is NONZERO")

    cf = doc["closed_forms"]
    lines.append("")
    if cf["families"]:
        lines.append("closed forms: " + ", ".join(cf["families"]))
        for row in cf["rows"]:
            mark = "ok" if row["agree"] else "MISMATCH"
            lines.append(
                f"  {row['family']}.{row['quantity']}:"
                f" closed={row['closed']} machine={row['machine']}  {mark}"
            )
    else:
        lines.append("closed forms: none applicable")

    block = doc.get("monomial")
    if block is not None:
        lines.append("")
        lines.append("monomial classification:")
        lines.append("  relation paths: " + ", ".join(block["relation_paths"]))
        lines.append(
            f"  parallel (arrow, basis path) pairs: {block['parallel_pairs']}"
            f" ({block['uniform_pairs']} uniform)"
        )
        if block["non_uniform_pairs"]:
            pairs = ", ".join(
                f"({p['arrow']}, {p['path']})" for p in block["non_uniform_pairs"]
            )
            lines.append(f"  non-uniform pairs: {pairs}")
        else:
            lines.append("  non-uniform pairs: none")

    lines.append("")
    lines.append(f"elapsed: {doc['timing_ms']} ms")
    return "\n".join(lines)


def _mismatch_diagnostics(doc: dict) -> list[str]:
    out = []
    for row in doc["invariants"]:
        if not row["agree"]:
            routes = " ".join(f"{r['name']}={r['value']}" for r in row["routes"])
            out.append(f"route mismatch in {row['name']}: {routes}")
    if not doc["exact_sequence_ok"]:
        out.append("four-term alternating sum is nonzero")
    for row in doc["closed_forms"]["rows"]:
        if not row["agree"]:
            out.append(
                f"closed form mismatch {row['family']}.{row['quantity']}:"
                f" closed={row['closed']} machine={row['machine']}"
            )
    return out


def run_report(args) -> int:
    t0 = time.perf_counter()
    try:
        text, source_name = _read_source(args.path)
    except OSError as exc:
        print(f"tauhh: error: cannot read {args.path}: {exc}", file=sys.stderr)
        return 1
    try:
        pres = parse_presentation(text, field=args.field)
    except ParseError as exc:
        print(f"tauhh: error: {source_name}: {exc}", file=sys.stderr)
        return 1
    try:
        alg = build_algebra(pres, length_cap=args.cap)
    except (NotAdmissibleError, ValueError) as exc:
        print(f"tauhh: error: {source_name}: {exc}", file=sys.stderr)
        return 1

    invariants = compute_invariants(
        alg, with_bar=not args.skip_bar, bar_cap=args.bar_cap
    )
    closed = cross_validate(alg)
    elapsed_ms = int((time.perf_counter() - t0) * 1000)
    doc = report_document(source_name, pres, alg, invariants, closed, elapsed_ms)

    if args.json:
        print(render_json(doc))
    elif not args.quiet:
        print(render_text(doc))

    problems = _mismatch_diagnostics(doc)
    for line in problems:
        print(f"tauhh: {line}", file=sys.stderr)
    return 2 if problems else 0


def run_selfcheck(args) -> int:
    ok, text = selfcheck(
        seed=args.seed,
        count=args.count,
        max_vertices=args.max_vertices,
        max_arrows=args.max_arrows,
        bar_cap=args.bar_cap,
    )
    if args.quiet:
        print(text.splitlines()[-1])
    else:
        print(text)
    return 0 if ok else 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "report":
        return run_report(args)
    return run_selfcheck(args)


if __name__ == "__main__":
    raise SystemExit(main())
