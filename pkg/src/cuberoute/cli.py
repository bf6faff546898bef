"""Command-line surface.

Node labels on the command line are 1-based (matching permutation cycle
notation); JSON payloads use 0-based node indices.  Data files are
deterministic: fixed float formatting, no timestamps.  Commands that
write delimited output to a file also render a matching figure next to
it unless --no-plot is given.

Exit codes: 0 success, 1 usage or validation error, 2 verification
failure, 3 unroutable pair.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from . import cayley, dynamics, routing, spectral
from .cayley import BitVector, OutOfRangeError, dressed_hypercube
from .routing import NotAPermutationError, UnroutableError, format_cycles

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_UNROUTABLE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; reserve 2 for
    # verification failures and report usage problems as 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_perm(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid permutation {text!r}; expected e.g. 3,1,2")


def _write_text(path: str, content: str) -> None:
    """Whole-file atomic write: temp file in the same directory, then rename."""
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=target.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(content)
        os.replace(tmp, target)
    except BaseException:
        os.unlink(tmp)
        raise


def _emit(content: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(content)
    else:
        _write_text(out, content)


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _label_to_index(label: int, d: int, what: str) -> int:
    n = 1 << d
    if not 1 <= label <= n:
        raise OutOfRangeError(f"{what} label {label} outside [1, {n}]")
    return label - 1


def _check_format(args, native: str) -> None:
    requested = getattr(args, "format", None)
    if requested and requested != native:
        raise OutOfRangeError(f"command '{args.command}' only emits {native}")


def _graph_from_args(args) -> cayley.CayleyGraph:
    translation = BitVector.from_string(args.translation) if getattr(args, "translation", None) else None
    return dressed_hypercube(args.d, args.l, args.perm, translation)


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    _check_format(args, "json")
    graph = _graph_from_args(args)
    _emit(json.dumps(cayley.graph_to_dict(graph), indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    _check_format(args, "csv")
    table = spectral.build_spectral_table(args.d, args.l, args.perm)
    rows = sorted(table.rows(), key=lambda row: (-row[1], str(row[0])))
    lines = ["sign_vector,eigenvalue,parity"]
    lines += [f"{sv},{value},{parity}" for sv, value, parity in rows]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _series_csv(series: dynamics.FidelitySeries) -> str:
    lines = ["tau,p_return,p_target"]
    for tau, pr, pt in zip(series.taus, series.p_return, series.p_target):
        lines.append(f"{tau:.12f},{pr:.12f},{pt:.12f}")
    return "\n".join(lines) + "\n"


def _cmd_evolve(args) -> int:
    _check_format(args, "csv")
    graph = _graph_from_args(args)
    source = _label_to_index(args.source, args.d, "source")
    if args.target is None:
        target = routing.predicted_permutation(args.d, args.l, args.perm).apply(source)
    else:
        target = _label_to_index(args.target, args.d, "target")
    series = dynamics.fidelity_series(graph, source, target, args.tau_max, args.samples)
    _emit(_series_csv(series), args.out)
    if args.out and args.plot:
        from . import plotting

        plotting.save_fidelity_plot(series, str(Path(args.out).with_suffix(".png")))
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph = _graph_from_args(args)
    predicted = routing.predicted_permutation(args.d, args.l, args.perm)
    perm_text = ",".join(str(p) for p in graph.coord_perm)
    print(f"network: d={args.d} l={args.l} perm={perm_text} tau={args.tau:.12g}")
    print(f"predicted: {format_cycles(predicted.cycles)}  mask={predicted.mask}  phase k={predicted.global_phase_k}")
    try:
        extracted = routing.extract_permutation(graph, args.tau, args.tolerance)
    except NotAPermutationError as exc:
        print(f"extraction failed: {exc}")
        print("verdict: FAIL")
        return EXIT_VERIFY_FAILED
    print(f"extracted: {format_cycles(extracted.cycles)}  mask={extracted.mask}  phase k={extracted.global_phase_k}")
    if extracted.mask == predicted.mask and extracted.global_phase_k == predicted.global_phase_k:
        print("verdict: PASS")
        return EXIT_OK
    print("verdict: FAIL")
    return EXIT_VERIFY_FAILED


def _cmd_route(args) -> int:
    _check_format(args, "json")
    source = _label_to_index(args.source, args.d, "source")
    target = _label_to_index(args.target, args.d, "target")
    plan = routing.plan_route(args.d, source, target)
    _, fidelity = routing.execute_route(plan)
    payload = {
        "d": plan.d,
        "source": plan.source,
        "target": plan.target,
        "steps": [{"l": s.l, "dressed_coords": list(s.dressed_coords)} for s in plan.steps],
        "duration": _round12(plan.total_duration),
        "fidelity": _round12(fidelity),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_fig3(args) -> int:
    d = 6
    out_dir = Path(args.out or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    all_series = []
    for l in range(1, d + 1):
        graph = dressed_hypercube(d, l)
        target = routing.predicted_permutation(d, l).apply(0)
        series = dynamics.fidelity_series(graph, 0, target, math.pi, args.samples)
        all_series.append(series)
        _write_text(str(out_dir / f"fig3_l{l}.csv"), _series_csv(series))
    if args.plot:
        from . import plotting

        plotting.save_fidelity_grid(all_series, str(out_dir / "fig3.png"))
    print(f"wrote {d} series to {out_dir}")
    return EXIT_OK


def _cmd_check(args) -> int:
    graph = _graph_from_args(args)
    source = _label_to_index(args.source, args.d, "source")
    report = cayley.check_columnar(graph, source)
    table = spectral.build_spectral_table(args.d, args.l, args.perm)
    ratios_ok = spectral.rational_ratio_check(table.spectrum())
    perm_text = ",".join(str(p) for p in graph.coord_perm)
    print(f"network: d={args.d} l={args.l} perm={perm_text} source={args.source}")
    if report.is_columnar:
        sizes = ",".join(str(len(c)) for c in report.columns)
        print("columnar: yes")
        print(f"column sizes: {sizes}")
    else:
        print(f"columnar: no ({report.violation})")
    print(f"rational difference ratios: {'pass' if ratios_ok else 'fail'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser assembly
# ---------------------------------------------------------------------------


def _add_graph_args(p: argparse.ArgumentParser, need_l: bool = True) -> None:
    p.add_argument("--d", type=int, required=True, help="network dimension (1..16)")
    if need_l:
        p.add_argument("--l", type=int, required=True, help="dressing level (1..d)")
    p.add_argument("--perm", type=_parse_perm, default=None, metavar="P1,P2,...",
                   help="coordinate rotation as a comma-separated permutation of 1..d")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cuberoute",
        description="Dressed-hypercube networks: structure, spectra, dynamics, and routing.",
        epilog="Node labels are 1-based on the command line; JSON files use 0-based indices.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="emit a graph description as JSON")
    _add_graph_args(p)
    p.add_argument("--translation", default=None, metavar="BITS",
                   help="node relabeling offset as a bit string (edge set is unaffected)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("spectrum", help="emit the exact spectrum as CSV")
    _add_graph_args(p)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("evolve", help="emit return/transfer probabilities over a time grid as CSV")
    _add_graph_args(p)
    p.add_argument("--source", type=int, default=1, help="source node label (default 1)")
    p.add_argument("--target", type=int, default=None,
                   help="target node label (default: quarter-period image of the source)")
    p.add_argument("--tau-max", type=float, default=math.pi, help="end of the time grid (default pi)")
    p.add_argument("--samples", type=int, default=512, help="grid points (default 512)")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--no-plot", dest="plot", action="store_false",
                   help="skip the figure normally rendered next to the CSV")
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("verify", help="compare the predicted quarter-period permutation with the dynamics")
    _add_graph_args(p)
    p.add_argument("--tau", type=float, default=math.pi / 2,
                   help="evolution time to probe (default pi/2)")
    p.add_argument("--tolerance", type=float, default=1e-8,
                   help="per-node leaked-probability budget (default 1e-8)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("route", help="plan and execute a perfect transfer between two nodes")
    p.add_argument("--d", type=int, required=True, help="network dimension (1..16)")
    p.add_argument("--source", type=int, required=True, help="source node label")
    p.add_argument("--target", type=int, required=True, help="target node label")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("fig3", help="six-panel transfer sweep: d=6 series for every dressing level")
    p.add_argument("--out", default=None, help="output directory (default: current)")
    p.add_argument("--samples", type=int, default=513,
                   help="grid points (default 513; an odd count lands exactly on tau=pi/2)")
    p.add_argument("--no-plot", dest="plot", action="store_false",
                   help="skip the combined figure")
    p.set_defaults(func=_cmd_fig3)

    p = sub.add_parser("check", help="column-structure and spectral-ratio report")
    _add_graph_args(p)
    p.add_argument("--source", type=int, default=1, help="root node label for the column layout (default 1)")
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnroutableError as exc:
        print(f"unroutable: {exc}", file=sys.stderr)
        return EXIT_UNROUTABLE
    except (OutOfRangeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
