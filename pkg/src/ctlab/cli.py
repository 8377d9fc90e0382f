"""Command-line front end.

    ctlab table SPEC [--json]
    ctlab codegrees SPEC [--over-derived | --normal ORDER[:INDEX]] [--p P] [--json]
    ctlab normals SPEC [--json]
    ctlab verify [CORPUS] [--theorem ...] [--trace] [--output PATH] [--timing] [--jobs N]

Exit codes: 0 success, 1 counterexample (or failed trace step), 2 usage or
input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import __version__
from .chartab import CharacterTable, IrreducibleEntry, character_table
from .chartools import cod_set, irr_over
from .corpus import default_corpus, load_corpus, parse_group_spec
from .errors import CtlabError, InputError, ResourceError
from .permgroup import CAPS, PermGroup, Subgroup, derived_subgroup, is_solvable
from .structure import (
    NormalLattice,
    class_indices,
    has_normal_p_complement,
    normal_subgroups,
)
from .verify import THEOREMS, public_summary, run_corpus

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


# -- rendering -------------------------------------------------------------


def _cycle_type(G: PermGroup, idx: int) -> str:
    return ",".join(map(str, G.element(idx).cycle_type()))


def class_records(table: CharacterTable) -> list[dict]:
    G, cls = table.group, table.classes
    return [
        {
            "index": t,
            "representative": str(G.element(cls.reps[t])),
            "cycle_type": _cycle_type(G, cls.reps[t]),
            "size": int(cls.sizes[t]),
            "element_order": int(cls.element_orders[t]),
        }
        for t in range(cls.k)
    ]


def character_record(chi: IrreducibleEntry) -> dict:
    return {
        "index": chi.index,
        "degree": chi.degree,
        "kernel_order": chi.kernel.order,
        "codegree": chi.codegree,
        "det_order": chi.det_order,
        "values": [{"order": v.order, "mults": list(v.mults)} for v in chi.values],
        "display": [str(v) for v in chi.values],
    }


def _columns(header: Sequence[str], rows: list[Sequence[str]]) -> list[str]:
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    fmt = lambda r: "  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip()  # noqa: E731
    return [fmt(header)] + [fmt(r) for r in rows]


def _char_lines(rows: list[dict]) -> list[str]:
    body = [
        (f"X.{r['index']}", r["degree"], r["kernel_order"], r["codegree"], r["det_order"], " ".join(r["display"]))
        for r in rows
    ]
    return _columns(("char", "degree", "kernel", "cod", "det_order", "values"), body)


def render_table_text(spec: str, table: CharacterTable) -> str:
    G = table.group
    classes = class_records(table)
    chars = [character_record(chi) for chi in table]
    out = [f"group {spec}: order {G.order}, {len(classes)} classes, prime {table.prime}", ""]
    out += _columns(
        ("class", "cycle_type", "size", "element_order", "representative"),
        [(c["index"], c["cycle_type"], c["size"], c["element_order"], c["representative"]) for c in classes],
    )
    out.append("")
    out += _char_lines(chars)
    return "\n".join(out) + "\n"


def table_json(spec: str, table: CharacterTable) -> dict:
    return {
        "group": spec,
        "order": table.group.order,
        "prime": table.prime,
        "classes": class_records(table),
        "characters": [character_record(chi) for chi in table],
    }


# -- selectors ---------------------------------------------------------------


def parse_selector(text: str) -> tuple[int, int]:
    order, _, index = text.partition(":")
    try:
        return int(order), int(index) if index else 0
    except ValueError:
        raise InputError(f"bad normal-subgroup selector {text!r}; expected ORDER[:INDEX]") from None


def lattice_listing(lattice: NormalLattice) -> list[str]:
    out = []
    for N in lattice:
        order, i = lattice.index_of(N)
        out.append(f"{order}:{i}")
    return out


def select_normal(lattice: NormalLattice, order: int, index: int) -> Subgroup:
    cands = lattice.of_order(order)
    if not 0 <= index < len(cands):
        raise InputError(
            f"no normal subgroup matches {order}:{index}; available: {', '.join(lattice_listing(lattice))}"
        )
    return cands[index]


# -- commands ----------------------------------------------------------------


def cmd_table(args, out: TextIO) -> int:
    G = parse_group_spec(args.spec)
    table = character_table(G)
    if args.json:
        out.write(json.dumps(table_json(args.spec, table)) + "\n")
    else:
        out.write(render_table_text(args.spec, table))
    return EXIT_OK


def cmd_codegrees(args, out: TextIO) -> int:
    G = parse_group_spec(args.spec)
    table = character_table(G)
    lattice = normal_subgroups(table)
    if args.over_derived:
        N = derived_subgroup(G.whole())
    elif args.normal:
        N = select_normal(lattice, *parse_selector(args.normal))
    else:
        N = G.whole()
    order, index = lattice.index_of(N)
    rows = irr_over(table, N)
    cods = sorted(cod_set(table, N))
    note = "N is trivial, so Irr(G|N) is empty" if N.order == 1 else None
    hyp = None
    if args.p is not None:
        if args.p not in G.primes:
            raise InputError(f"{args.p} does not divide |G| = {G.order}")
        hyp = all(c % args.p for c in cods)
    if args.json:
        rec = {
            "group": args.spec,
            "N": {"order": order, "index": index, "classes": list(class_indices(N))},
            "characters": [character_record(chi) for chi in rows],
            "cod": cods,
        }
        if hyp is not None:
            rec["p"] = args.p
            rec["p_divides_none"] = hyp
        if note:
            rec["note"] = note
        out.write(json.dumps(rec) + "\n")
        return EXIT_OK
    out.write(f"group {args.spec}: N = {order}:{index}, classes {list(class_indices(N))}\n")
    if note:
        out.write(f"note: {note}\n")
    if rows:
        out.write("\n".join(_char_lines([character_record(chi) for chi in rows])) + "\n")
    out.write("cod(G|N) = {" + ", ".join(map(str, cods)) + "}\n")
    if hyp is not None:
        out.write(f"p = {args.p} divides no codegree: {'yes' if hyp else 'no'}\n")
    return EXIT_OK


def cmd_normals(args, out: TextIO) -> int:
    G = parse_group_spec(args.spec)
    lattice = normal_subgroups(character_table(G))
    recs = []
    for N, sel in zip(lattice, lattice_listing(lattice)):
        comps = {str(p): has_normal_p_complement(N, p)[0] for p in G.primes}
        recs.append(
            {
                "selector": sel,
                "order": N.order,
                "classes": list(class_indices(N)),
                "abelian": N.is_abelian(),
                "solvable": is_solvable(N),
                "p_complement": comps,
            }
        )
    if args.json:
        out.write(json.dumps({"group": args.spec, "normal_subgroups": recs}) + "\n")
        return EXIT_OK
    body = [
        (
            r["selector"],
            r["order"],
            " ".join(map(str, r["classes"])),
            "yes" if r["abelian"] else "no",
            "yes" if r["solvable"] else "no",
            " ".join(p for p, ok in r["p_complement"].items() if ok) or "-",
        )
        for r in recs
    ]
    out.write("\n".join(_columns(("selector", "order", "classes", "abelian", "solvable", "p_complements"), body)) + "\n")
    return EXIT_OK


def cmd_verify(args, out: TextIO, err: TextIO) -> int:
    corpus = default_corpus() if args.corpus is None else load_corpus(args.corpus)
    which = THEOREMS if args.theorem == "all" else (args.theorem,)
    sink = out
    fh = None
    if args.output:
        fh = open(args.output, "w", encoding="utf-8")
        sink = fh
    try:
        summary = run_corpus(corpus, which, sink, trace=args.trace, timing=args.timing, jobs=args.jobs)
    finally:
        if fh is not None:
            fh.close()
    err.write(json.dumps(public_summary(summary)) + "\n")
    if summary["counterexamples"] or summary.get("trace_failures"):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctlab", description="Character tables, codegrees and normal p-complement checks.")
    parser.add_argument("--version", action="version", version=f"ctlab {__version__}")
    parser.add_argument("--max-order", type=int, help="group order cap (env CTLAB_MAX_ORDER)")
    parser.add_argument("--max-degree", type=int, help="permutation degree cap (env CTLAB_MAX_DEGREE)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print the character table of a group")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("codegrees", help="list Irr(G|N) and cod(G|N)")
    p.add_argument("spec")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--over-derived", action="store_true", help="N = G'")
    sel.add_argument("--normal", metavar="ORDER[:INDEX]", help="normal subgroup by order and index within that order")
    p.add_argument("--p", type=int, help="also report whether p divides no member of cod(G|N)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("normals", help="list normal subgroups with their selectors")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run the theorem checkers over a corpus")
    p.add_argument("corpus", nargs="?", help="corpus file (default: the shipped corpus)")
    p.add_argument("--theorem", choices=THEOREMS + ("all",), default="A")
    p.add_argument("--trace", action="store_true", help="also emit proof-trace records")
    p.add_argument("--output", "-o", help="write JSON Lines here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include timing_ms in reports")
    p.add_argument("--jobs", "-j", type=int, default=1)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    saved = (CAPS.max_order, CAPS.max_degree)
    if args.max_order is not None:
        CAPS.max_order = args.max_order
    if args.max_degree is not None:
        CAPS.max_degree = args.max_degree
    try:
        if args.command == "table":
            return cmd_table(args, out)
        if args.command == "codegrees":
            return cmd_codegrees(args, out)
        if args.command == "normals":
            return cmd_normals(args, out)
        return cmd_verify(args, out, err)
    except ResourceError as exc:
        err.write(f"ctlab: resource cap exceeded: {exc}\n")
        return EXIT_RESOURCE
    except (InputError, OSError) as exc:
        err.write(f"ctlab: error: {exc}\n")
        return EXIT_USAGE
    except CtlabError as exc:
        err.write(f"ctlab: internal error: {exc}\n")
        return EXIT_USAGE
    finally:
        CAPS.max_order, CAPS.max_degree = saved

if __name__ == "__main__":
    sys.exit(main())
