"""Command-line entry point: ``gentle-kit SUBCOMMAND [options] [INPUT]``.

INPUT is a file in the bound quiver text format or its JSON form, ``-`` for
stdin, or ``builtin:NAME`` (E1, E2, E3, kronecker, C3, point, T<n>).

Exit codes: 0 success, 1 domain error (e.g. a non-gentle algebra),
2 usage error or unreadable input, 3 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from gentle_kit import catalog
from gentle_kit.constructions import bd, cma, compose, parse_ops
from gentle_kit.core import (
    BoundQuiver,
    from_json,
    isomorphic,
    nonzero_paths,
    parse_bound_quiver,
    require_gentle,
    serialize,
    to_json,
)
from gentle_kit.dissection import (
    blue_elementary_polygons,
    dissection_of,
    surface_json,
    to_dot,
)
from gentle_kit.errors import GentleKitError
from gentle_kit.generator import GenConfig, generate
from gentle_kit.harness import VerifyConfig, verify
from gentle_kit.normal_form import to_normal_form
from gentle_kit.threads import (
    forbidden_cycles,
    gorenstein_projectives,
    permitted_threads,
    forbidden_threads,
    threads_report,
)
from gentle_kit.words import (
    enumerate_bands,
    enumerate_homotopy_bands,
    enumerate_strings,
    derived_type,
    representation_type,
    witness_band,
    witness_homotopy_band,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# input / output


def load(source: str) -> BoundQuiver:
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        try:
            return catalog.builtin(name)
        except KeyError:
            raise UsageError(f"unknown builtin {name!r}; known: {', '.join(catalog.BUILTINS)}, T<n>") from None
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror or exc}") from None
    if text.lstrip().startswith("{"):
        try:
            return from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise GentleKitError(f"bad JSON algebra: {exc}") from None
    return parse_bound_quiver(text)


def _emit(args, text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(args, data) -> None:
    _emit(args, json.dumps(data, indent=2, sort_keys=False))


def _emit_algebra(args, bq: BoundQuiver) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize(bq))
    if args.json:
        _emit_json(args, to_json(bq))
    elif not args.output:
        _emit(args, serialize(bq))


def _table(rows: list[tuple], header: tuple) -> str:
    rows = [tuple(str(x) for x in r) for r in rows]
    widths = [max(len(str(h)), *(len(r[k]) for r in rows)) if rows else len(str(h)) for k, h in enumerate(header)]
    out = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    out.append("  ".join("-" * w for w in widths))
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(out)


def _words_json(words) -> list:
    return [w.to_json() for w in sorted(words, key=lambda w: (len(w), str(w)))]


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    bq = load(args.input)
    report = bq.validation
    if args.json:
        _emit_json(args, {
            "gentle": report.is_gentle,
            "string_algebra": report.is_string_algebra,
            "finite_dimensional": report.is_finite_dimensional,
            "connected": report.is_connected,
            "axioms": [asdict(c) for c in report.axioms],
            "summary": report.summary(),
        })
    else:
        rows = [(c.number, "ok" if c.ok else "FAIL", c.description, c.witness or "") for c in report.axioms]
        rows.append(("fd", "ok" if report.is_finite_dimensional else "FAIL", "finite dimensional",
                     ".".join(report.infinite_witness or ())))
        _emit(args, _table(rows, ("axiom", "status", "condition", "witness")) + "\n" + report.summary())
    return EXIT_OK if report.is_gentle else EXIT_DOMAIN


def cmd_info(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    rt = representation_type(bq)
    dt = derived_type(bq)
    cycles = forbidden_cycles(bq)
    data = {
        "name": bq.name,
        "vertices": len(bq.vertices),
        "arrows": len(bq.arrows),
        "relations": len(bq.relations),
        "dimension": len(nonzero_paths(bq)),
        "threads": threads_report(bq),
        "cycles": [list(c.arrows) for c in cycles],
        "finite_global_dimension": not cycles,
        "rep_type": rt.kind.value,
        "indecomposables": rt.indecomposables,
        "derived_type": dt.value,
    }
    if args.json:
        _emit_json(args, data)
        return EXIT_OK
    lines = [
        f"algebra      {bq.name or '-'}",
        f"vertices     {data['vertices']}",
        f"arrows       {data['arrows']}",
        f"relations    {data['relations']}",
        f"dimension    {data['dimension']}",
        f"gl.dim       {'finite' if not cycles else 'infinite'}",
        f"rep type     {rt}",
        f"derived type {dt.value}",
        "",
        _thread_table(bq),
    ]
    if cycles:
        lines += ["", "forbidden cycles: " + ", ".join("(" + " ".join(c.arrows) + ")" for c in cycles)]
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _thread_table(bq: BoundQuiver) -> str:
    rows = [("permitted", ".".join(t.arrows) or f"e_{t.anchor}") for t in permitted_threads(bq)]
    rows += [("forbidden", ".".join(t.arrows)) for t in forbidden_threads(bq)]
    return _table(rows, ("thread", "arrows"))


def cmd_normal_form(args) -> int:
    bq = load(args.input)
    nf = to_normal_form(bq)
    if args.json:
        _emit_json(args, nf.to_json())
    else:
        rows = [(f"({i},{j})", nf.labels[(i, j)], _fmt_pos(nf.partner.get((i, j)))) for i, j in nf.positions()]
        _emit(args, f"m = {nf.m}\n" + _table(rows, ("position", "vertex", "glued to")))
    return EXIT_OK


def _fmt_pos(pos) -> str:
    return "" if pos is None else f"({pos[0]},{pos[1]})"


def cmd_bd(args) -> int:
    _emit_algebra(args, bd(load(args.input)))
    return EXIT_OK


def cmd_cma(args) -> int:
    _emit_algebra(args, cma(load(args.input)))
    return EXIT_OK


def cmd_compose(args) -> int:
    try:
        ops = parse_ops(args.ops)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_algebra(args, compose(load(args.input), ops))
    return EXIT_OK


def cmd_threads(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    if args.json:
        _emit_json(args, threads_report(bq))
    else:
        text = _thread_table(bq)
        cycles = forbidden_cycles(bq)
        text += "\nforbidden cycles: " + (", ".join("(" + " ".join(c.arrows) + ")" for c in cycles) or "none")
        _emit(args, text)
    return EXIT_OK


def cmd_gproj(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    g = gorenstein_projectives(bq)
    if args.json:
        _emit_json(args, {"projectives": list(g.projectives), "extras": list(g.extras)})
    else:
        _emit(args, "\n".join(g.labels()))
    return EXIT_OK


def cmd_strings(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    words = enumerate_strings(bq, args.max_len)
    if args.json:
        _emit_json(args, _words_json(words))
    else:
        _emit(args, "\n".join(str(w) for w in sorted(words, key=lambda w: (len(w), str(w)))) + f"\n{len(words)} strings")
    return EXIT_OK


def cmd_bands(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    if args.enumerate is not None:
        words = enumerate_bands(bq, args.enumerate)
        if args.json:
            _emit_json(args, _words_json(words))
        else:
            _emit(args, "\n".join(str(w) for w in sorted(words, key=lambda w: (len(w), str(w)))) + f"\n{len(words)} bands")
        return EXIT_OK
    w = witness_band(bq)
    if args.json:
        _emit_json(args, {"has_band": w is not None, "witness": w.to_json() if w else None})
    else:
        _emit(args, f"band: {w}" if w else "no band")
    return EXIT_OK


def cmd_hbands(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    if args.enumerate is not None:
        words = enumerate_homotopy_bands(bq, args.enumerate)
        if args.json:
            _emit_json(args, _words_json(words))
        else:
            _emit(args, "\n".join(str(w) for w in sorted(words, key=lambda w: (len(w), str(w))))
                  + f"\n{len(words)} homotopy bands")
        return EXIT_OK
    w = witness_homotopy_band(bq)
    if args.json:
        _emit_json(args, {"has_homotopy_band": w is not None, "witness": w.to_json() if w else None})
    else:
        _emit(args, f"homotopy band: {w}" if w else "no homotopy band")
    return EXIT_OK


def cmd_rep_type(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    rt = representation_type(bq)
    if args.json:
        _emit_json(args, {"rep_type": rt.kind.value, "indecomposables": rt.indecomposables})
    else:
        _emit(args, str(rt))
    return EXIT_OK


def cmd_derived_type(args) -> int:
    bq = load(args.input)
    require_gentle(bq)
    _emit_json(args, {"derived_type": derived_type(bq).value}) if args.json else _emit(args, derived_type(bq).value)
    return EXIT_OK


def cmd_surface(args) -> int:
    bq = load(args.input)
    pc = dissection_of(to_normal_form(bq))
    fmt = "json" if args.json else args.format
    if fmt == "json":
        _emit_json(args, surface_json(pc))
    elif fmt == "dot":
        _emit(args, to_dot(pc))
    else:
        data = surface_json(pc)
        invs = data["invariants"] if isinstance(data["invariants"], list) else [data["invariants"]]
        rows = [(k, x["chi"], x["b"], x["g"], x["closed"], x["open"]) for k, x in enumerate(invs)]
        blue = blue_elementary_polygons(pc)
        text = _table(rows, ("component", "chi", "b", "g", "closed", "open"))
        text += f"\npolygons: {len(pc.polygons)}  gluings: {len(pc.glue)}"
        text += f"\nblue polygons: {len(blue.finite)} finite, {len(blue.infinite)} infinite"
        _emit(args, text)
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = load(args.first), load(args.second)
    phi = isomorphic(a, b)
    if args.json:
        _emit_json(args, {
            "isomorphic": phi is not None,
            "vertex_map": dict(phi.vertices) if phi else None,
            "arrow_map": dict(phi.arrows) if phi else None,
        })
    elif phi is None:
        _emit(args, "not isomorphic")
    else:
        rows = [("vertex", k, v) for k, v in phi.vertices.items()] + [("arrow", k, v) for k, v in phi.arrows.items()]
        _emit(args, "isomorphic\n" + _table(rows, ("kind", "from", "to")))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(args.seed, args.max_chains, args.max_len, args.density)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_algebra(args, generate(cfg))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.count < 0 or args.ops_depth < 0:
        raise UsageError("--count and --ops-depth must be non-negative")
    cfg = VerifyConfig(
        seed=args.seed,
        count=args.count,
        ops_depth=args.ops_depth,
        sample_every=args.sample_every,
        inject_fault=args.inject_fault,
    )
    report = verify(cfg)
    if args.json:
        _emit_json(args, report.to_json())
    else:
        rows = [
            (r.seed, f"{r.summary[0]}/{r.summary[1]}/{r.summary[2]}", *r.types["A"], len(r.types), len(r.mismatches))
            for r in report.records
        ]
        text = _table(rows, ("seed", "|Q0|/|Q1|/|I|", "rep", "derived", "algebras", "mismatches"))
        text += f"\n{len(report.records)} seeds, {len(report.mismatches)} mismatches, {report.seconds:.2f}s"
        _emit(args, text)
    for m in report.mismatches:
        print(m, file=sys.stderr)
    return report.exit_code


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    # options accepted both before and after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("-o", "--output", metavar="FILE", default=argparse.SUPPRESS,
                        help="write the resulting algebra to FILE in the text format")

    parser = _Parser(prog="gentle-kit", description="Combinatorics of gentle algebras.", parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help, input=True):
        p = sub.add_parser(name, help=help, parents=[common])
        if input:
            p.add_argument("input", metavar="INPUT", help="algebra file, '-' or builtin:NAME")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the gentle axioms")
    add("info", cmd_info, "dimension, threads, cycles and types")
    add("normal-form", cmd_normal_form, "chain lengths and gluing of the normal form")
    add("bd", cmd_bd, "chain-doubling construction")
    add("cma", cmd_cma, "arrow-splitting construction on forbidden cycles")
    p = add("compose", cmd_compose, "apply a sequence of constructions")
    p.add_argument("--ops", required=True, help="comma-separated list of bd/cma, applied left to right")
    add("threads", cmd_threads, "permitted and forbidden threads")
    add("gproj", cmd_gproj, "indecomposable Gorenstein-projective modules")
    p = add("strings", cmd_strings, "strings up to a length")
    p.add_argument("--max-len", type=int, required=True)
    p = add("bands", cmd_bands, "band decision or enumeration")
    p.add_argument("--enumerate", type=int, metavar="N", help="list bands of length <= N")
    p = add("hbands", cmd_hbands, "homotopy band decision or enumeration")
    p.add_argument("--enumerate", type=int, metavar="N", help="list homotopy bands with <= N letters")
    add("rep-type", cmd_rep_type, "representation type")
    add("derived-type", cmd_derived_type, "derived type")
    p = add("surface", cmd_surface, "marked surface dissection")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p = add("iso", cmd_iso, "test two algebras for isomorphism", input=False)
    p.add_argument("first", metavar="INPUT1")
    p.add_argument("second", metavar="INPUT2")
    p = add("gen", cmd_gen, "random gentle algebra", input=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-chains", type=int, default=4)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--density", type=float, default=0.5)
    p = add("verify", cmd_verify, "randomized check of type preservation", input=False)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--ops-depth", type=int, default=2)
    p.add_argument("--sample-every", type=int, default=5, help="surface checks on every N-th seed (0 disables)")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.json = getattr(args, "json", False)
        args.output = getattr(args, "output", None)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except GentleKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
