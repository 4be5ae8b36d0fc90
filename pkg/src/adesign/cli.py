"""Command-line entry point: generate, construct, classify, check and bound."""

import argparse
import io
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from adesign import builders, bounds, graphs, incidence, setdiff
from adesign import io as files
from adesign.errors import AdesignError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1  # a verification came out negative
EXIT_USAGE = 2


class UsageError(AdesignError):
    """Bad command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


@dataclass
class CommandResult:
    exit_code: int
    text: str
    payload: Optional[dict | list] = None

    def render(self, as_json: bool) -> str:
        if as_json and self.payload is not None:
            return json.dumps(self.payload, indent=2, ensure_ascii=False)
        return self.text


def _render(*renderables) -> str:
    buffer = io.StringIO()
    console = Console(file=buffer, width=100, color_system=None, highlight=False)
    for item in renderables:
        console.print(item)
    return buffer.getvalue().rstrip("\n")


def _need(args: argparse.Namespace, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for {args.name}")
    return value


def _matrix_or(args: argparse.Namespace, make: Callable[[int], np.ndarray]) -> np.ndarray:
    if args.matrix is not None:
        return files.read_matrix(args.matrix)
    return make(_need(args, "q"))


def _srg_plus_input(args: argparse.Namespace) -> np.ndarray:
    if args.matrix is not None:
        return files.read_matrix(args.matrix)
    q = _need(args, "q")
    if args.d is not None:
        return graphs.complement_graph(graphs.latin_square_graph(q, args.d))
    return graphs.paley_graph(q)


# name -> builder taking the parsed arguments
CONSTRUCTIONS: dict[str, Callable[[argparse.Namespace], builders.ConstructionReport]] = {
    "paley-union": lambda a: builders.paley_union(_matrix_or(a, graphs.paley_graph)),
    "paley-union-comp": lambda a: builders.paley_union_complementary(_matrix_or(a, graphs.paley_graph)),
    "drt-union": lambda a: builders.tournament_union(_matrix_or(a, graphs.paley_tournament)),
    "drt-union-comp": lambda a: builders.tournament_union_complementary(_matrix_or(a, graphs.paley_tournament)),
    "srg-plus-i": lambda a: builders.srg_plus_identity(_srg_plus_input(a)),
    "srg-pair-union": lambda a: builders.appendix_pair(_need(a, "q"), a.complementary),
    "derived-inf": lambda a: builders.derived_at_infinity(_matrix_or(a, graphs.paley_graph), a.row),
    "residual-inf": lambda a: builders.residual_at_infinity(_matrix_or(a, graphs.paley_graph), a.row),
    "bose-mod": lambda a: builders.bose_modified(_need(a, "n")),
    "pair-union-example": lambda a: builders.pair_union_counterexample(_need(a, "n")),
    "contraction-cover": lambda a: builders.contraction_minimal_covering(_need(a, "q")),
    "conference-union": lambda a: builders.conference_union(
        _matrix_or(a, graphs.paley_conference_matrix), a.complementary
    ),
    "residue-derived": lambda a: builders.residue_derived(_need(a, "q")),
}

MATRIX_GENERATORS: dict[str, Callable[[argparse.Namespace], np.ndarray]] = {
    "paley-graph": lambda a: graphs.paley_graph(_need(a, "q")),
    "paley-tournament": lambda a: graphs.paley_tournament(_need(a, "q")),
    "latin-square": lambda a: graphs.latin_square_graph(_need(a, "q"), _need(a, "d")),
    "conference": lambda a: graphs.paley_conference_matrix(_need(a, "q")),
}

SUBSET_GENERATORS: dict[str, Callable[[int], setdiff.GroupSubset]] = {
    "qr": setdiff.quadratic_residue_set,
    "appendix-d": setdiff.appendix_D,
    "appendix-d-tilde": setdiff.appendix_D_tilde,
}


def _element(g: tuple[int, ...]) -> str:
    return ",".join(str(x) for x in g)


def _classification_table(results: list[incidence.Classification]) -> Table:
    table = Table("t", "verdict", "λ", "r_min", "r_max", "#low", "#high", "v", "b", "k")
    for c in results:
        table.add_row(*("-" if x is None else str(x) for x in c.to_dict().values()))
    return table


def _write(path: Optional[str], text: str) -> Optional[str]:
    if path is None:
        return None
    Path(path).write_text(text)
    return f"wrote {path}"


def cmd_gen(args: argparse.Namespace) -> CommandResult:
    if args.name in SUBSET_GENERATORS:
        subset = SUBSET_GENERATORS[args.name](_need(args, "q"))
        text = files.format_group_subset(subset)
        payload = {"group": list(subset.group.factors), "elements": [list(g) for g in subset.elements]}
    else:
        matrix = MATRIX_GENERATORS[args.name](args)
        text = files.format_matrix(matrix)
        payload = {"kind": args.name, "n": int(matrix.shape[0]), "matrix": matrix.tolist()}
    return CommandResult(EXIT_OK, _write(args.out, text) or text.rstrip("\n"), payload)


def _report_text(report: builders.ConstructionReport) -> str:
    title = f"{report.name}: v={report.structure.v}, b={report.structure.b}"
    table = Table("t", "claimed", "verified", "ok", title=title)
    claimed = {c.t: c for c in report.claims}
    for t, found in sorted(report.verified.items()):
        claim = claimed.get(t)
        if claim is None:
            table.add_row(str(t), "-", found.summary(), "-")
        else:
            table.add_row(str(t), claim.describe(), found.summary(), "yes" if report.claim_holds(claim) else "NO")
    lines = [f"note: {note}" for note in report.notes]
    lines += [f"{key}: {value}" for key, value in report.extras.items()]
    lines += [f"mismatch: {problem}" for problem in report.mismatches()]
    parts: list = []
    if report.parent is not None:
        parts.append(_report_text(report.parent))
    parts.append(table)
    parts.extend(lines)
    return _render(*parts)


def cmd_construct(args: argparse.Namespace) -> CommandResult:
    report = CONSTRUCTIONS[args.name](args)
    text = _report_text(report)
    if args.out:
        files.write_blocks(args.out, report.structure, comment=report.name)
        text += f"\nwrote {args.out}"
    return CommandResult(EXIT_OK if report.ok else EXIT_MISMATCH, text, report.to_dict())


def cmd_classify(args: argparse.Namespace) -> CommandResult:
    structure = files.read_blocks(args.file)
    result = incidence.classify(structure, args.t)
    return CommandResult(EXIT_OK, _render(result.summary(), _classification_table([result])), result.to_dict())


def cmd_check(args: argparse.Namespace) -> CommandResult:
    if args.kind in ("design-matrix", "adesign-matrix"):
        structure = files.read_blocks(args.file)
        check = (
            incidence.check_design_matrix_identity(structure)
            if args.kind == "design-matrix"
            else incidence.check_adesign_matrix_identity(structure)
        )
        text = f"{check.kind} identity {'holds' if check.holds else 'fails'}, r={check.r}, λ={check.lam}"
        if check.reason:
            text += f" ({check.reason})"
        return CommandResult(EXIT_OK if check.holds else EXIT_MISMATCH, text, check.to_dict())

    matrix = files.read_matrix(args.file)
    if args.kind == "srg":
        params = graphs.is_srg(matrix)
        text = str(params) if params else "not strongly regular"
        payload = params.to_dict() if params else None
        found = params is not None
    elif args.kind == "drt":
        tournament = graphs.is_doubly_regular_tournament(matrix)
        text = f"doubly regular tournament, n={tournament.n}" if tournament else "not doubly regular"
        payload = tournament.to_dict() if tournament else None
        found = tournament is not None
    else:
        kind = graphs.is_conference_matrix(matrix)
        text = f"conference matrix: {kind.value}"
        payload = {"type": kind.value, "n": int(matrix.shape[0])}
        found = kind is not graphs.ConferenceType.NONE
    return CommandResult(EXIT_OK if found else EXIT_MISMATCH, text, payload)


def cmd_spectrum(args: argparse.Namespace) -> CommandResult:
    spectrum = setdiff.difference_spectrum(files.read_group_subset(args.file))
    table = Table("element", "multiplicity")
    for g, count in spectrum.items():
        table.add_row(_element(g), str(count))
    return CommandResult(EXIT_OK, _render(table), {_element(g): c for g, c in spectrum.items()})


def cmd_is_ds(args: argparse.Namespace) -> CommandResult:
    lam = setdiff.is_difference_set(files.read_group_subset(args.file))
    text = f"difference set, λ={lam}" if lam is not None else "not a difference set"
    return CommandResult(EXIT_OK if lam is not None else EXIT_MISMATCH, text, {"lambda": lam})


def cmd_is_ads(args: argparse.Namespace) -> CommandResult:
    params = setdiff.is_almost_difference_set(files.read_group_subset(args.file))
    if params is None:
        return CommandResult(EXIT_MISMATCH, "not an almost difference set", None)
    readings = ", ".join(f"(λ={lam}, s={s})" for lam, s in params.readings())
    text = f"almost difference set ({params.v},{params.k}): {readings}"
    return CommandResult(EXIT_OK, text, params.to_dict())


def cmd_is_pds(args: argparse.Namespace) -> CommandResult:
    found = setdiff.is_partial_difference_set(files.read_group_subset(args.file))
    if found is None:
        return CommandResult(EXIT_MISMATCH, "not a partial difference set", None)
    lam, mu = found
    return CommandResult(EXIT_OK, f"partial difference set, λ={lam}, μ={mu}", {"lambda": lam, "mu": mu})


def cmd_dev(args: argparse.Namespace) -> CommandResult:
    structure = setdiff.development(files.read_group_subset(args.file))
    text = files.format_blocks(structure)
    payload = {"v": structure.v, "b": structure.b, "blocks": [list(b) for b in structure.blocks]}
    return CommandResult(EXIT_OK, _write(args.out, text) or text.rstrip("\n"), payload)


def cmd_bounds(args: argparse.Namespace) -> CommandResult:
    if args.t is not None:
        return cmd_feasibility(args)
    report = bounds.adesign_block_window(args.v, args.k, args.lam)
    table = Table("bound", "value", "r", "d")
    table.add_row("Schönheim C_λ", str(report.schonheim), "-", "-")
    for label, value in (("Horsley covering", report.horsley_covering), ("Horsley packing", report.horsley_packing)):
        if value is None:
            table.add_row(label, "n/a", "-", "-")
        else:
            table.add_row(label, str(value.value), str(value.r), str(value.d))
    table.add_row("Johnson P_λ+1", str(report.johnson), "-", "-")
    summary = f"window [{report.lower}, {report.upper}] for a 2-({args.v},{args.k},{args.lam}) adesign"
    return CommandResult(EXIT_OK, _render(table, summary), report.to_dict())


def cmd_feasibility(args: argparse.Namespace) -> CommandResult:
    report = bounds.feasibility(args.v, args.k, args.t, args.lam)
    low, high = report.block_interval
    lines = [
        f"ratio (k-t)/(v-t) = {report.ratio}: {report.note}",
        f"t-level adesign: λ' = {report.lam_prime}",
        f"t-level design: λ' in {list(report.design_candidates)}",
        f"blocks strictly between {low} and {high}",
    ]
    return CommandResult(EXIT_OK, "\n".join(lines), report.to_dict())


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON payload")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="adesign", description="Exact t-design and t-adesign constructions and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", parents=[common], help="write a named matrix or group subset")
    gen.add_argument("name", choices=[*MATRIX_GENERATORS, *SUBSET_GENERATORS])
    gen.add_argument("--q", type=int)
    gen.add_argument("--d", type=int)
    gen.add_argument("--out")
    gen.set_defaults(handler=cmd_gen)

    construct = sub.add_parser("construct", parents=[common], help="build and verify a named construction")
    construct.add_argument("name", choices=list(CONSTRUCTIONS))
    construct.add_argument("--q", type=int)
    construct.add_argument("--n", type=int)
    construct.add_argument("--d", type=int)
    construct.add_argument("--row", type=int, default=0)
    construct.add_argument("--complementary", action="store_true")
    construct.add_argument("--matrix", help="read the input matrix from a file instead of --q")
    construct.add_argument("--out")
    construct.set_defaults(handler=cmd_construct)

    classify = sub.add_parser("classify", parents=[common], help="classify a block file at level t")
    classify.add_argument("--t", type=int, default=2)
    classify.add_argument("file")
    classify.set_defaults(handler=cmd_classify)

    check = sub.add_parser("check", parents=[common], help="check a matrix or block file")
    check.add_argument("kind", choices=["srg", "drt", "conference", "design-matrix", "adesign-matrix"])
    check.add_argument("file")
    check.set_defaults(handler=cmd_check)

    for name, handler in (
        ("spectrum", cmd_spectrum),
        ("is-ds", cmd_is_ds),
        ("is-ads", cmd_is_ads),
        ("is-pds", cmd_is_pds),
    ):
        command = sub.add_parser(name, parents=[common], help=f"{name} of a group-subset file")
        command.add_argument("file")
        command.set_defaults(handler=handler)

    dev = sub.add_parser("dev", parents=[common], help="development of a group-subset file")
    dev.add_argument("file")
    dev.add_argument("--out")
    dev.set_defaults(handler=cmd_dev)

    window = sub.add_parser("bounds", parents=[common], help="covering/packing window for a 2-adesign")
    window.add_argument("--v", type=int, required=True)
    window.add_argument("--k", type=int, required=True)
    window.add_argument("--lambda", dest="lam", type=int, required=True)
    window.add_argument("--t", type=int, help="report what a (t+1)-adesign forces at level t instead")
    window.set_defaults(handler=cmd_bounds)

    feasible = sub.add_parser("feasibility", parents=[common], help="what a (t+1)-adesign forces at level t")
    feasible.add_argument("--v", type=int, required=True)
    feasible.add_argument("--k", type=int, required=True)
    feasible.add_argument("--t", type=int, required=True)
    feasible.add_argument("--lambda", dest="lam", type=int, required=True)
    feasible.set_defaults(handler=cmd_feasibility)
    return parser


def configure_logging(verbosity: int) -> None:
    """Install a single stderr RichHandler on the package logger."""
    package = logging.getLogger("adesign")
    for handler in list(package.handlers):
        if isinstance(handler, RichHandler):
            package.removeHandler(handler)
    handler = RichHandler(console=Console(stderr=True), show_time=False, show_path=False)
    package.addHandler(handler)
    package.setLevel({0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG))


def run(argv: list[str]) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.verbose)
        result = args.handler(args)
        if args.json:
            result.text = result.render(as_json=True)
        return result
    except (AdesignError, OSError) as e:
        return CommandResult(EXIT_USAGE, f"error: {e}")


def main():
    """Entry point for the adesign command."""
    result = run(sys.argv[1:])
    if result.exit_code == EXIT_USAGE:
        print(result.text, file=sys.stderr)
    else:
        print(result.text)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
