"""Command-line interface.

Commands take a graph JSON file and print JSON or a plain-text report to
stdout (or ``--out``).  Output is byte-stable for identical inputs: vertex
and edge orders are fixed, weights print in canonical form with the
variable spelled ``l``, exact coefficients print as integer ratios, and
spectrum roots print as decimals with 12 significant digits.

Exit codes: 0 success or PASS, 1 malformed input, 2 violated mathematical
precondition (for example a non-structural set), 3 verification FAIL.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .isoequiv import isomorphic
from .laplacian import (
    combinatorial_laplacian_graph,
    generalized_laplacian_graph,
    normalized_laplacian_graph,
)
from .proptest import run_all
from .ratfun import ParseError, parse_weight
from .reduction import (
    FactorizationError,
    expand,
    loop_bisect,
    reduce,
    sequential_reduce,
    unique_reduce_to,
)
from .scc import scc_filter, scc_partition
from .spectrum import spectra_equal_up_to, spectrum
from .structural import (
    EmptyBasicSetError,
    StructuralSetError,
    basic_structural_set,
    forbidden_set,
)
from .weightset import SUBRING_TESTS, WeightOutsideSubringError, verify_weightset, weightset_reduce
from .wgraph import GraphError, WeightedDigraph

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_FAIL = 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_graph(path: str) -> WeightedDigraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return WeightedDigraph.from_json_dict(data)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_INPUT)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON: {exc}", EXIT_INPUT)
    except (ParseError, GraphError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT)


def _vertex_list(arg: str) -> List[str]:
    out = [v.strip() for v in arg.split(",") if v.strip()]
    if not out:
        raise CliError("empty vertex list", EXIT_INPUT)
    return out


def _fmt_complex(z: complex) -> str:
    re = z.real + 0.0  # clear negative zero
    if abs(z.imag) < 1e-12:
        return f"{re:.12g}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{re:.12g}{sign}{abs(z.imag):.12g}i"


def _emit(text: str, out_path: Optional[str]) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _json_text(data) -> str:
    return json.dumps(data, indent=2)


# ----------------------------------------------------------------------
# Command handlers
# ----------------------------------------------------------------------


def cmd_reduce(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    chosen = [bool(args.set), bool(args.seq), bool(args.to)]
    if sum(chosen) != 1:
        raise CliError("choose exactly one of --set, --seq, --to", EXIT_INPUT)
    try:
        if args.set:
            s = _vertex_list(args.set)
            n = forbidden_set(g, s)
            reduced = reduce(g, s)
        elif args.to:
            reduced, n = unique_reduce_to(g, _vertex_list(args.to))
        else:
            try:
                with open(args.seq, "r", encoding="utf-8") as fh:
                    seq = json.load(fh)
            except OSError as exc:
                raise CliError(f"cannot read {args.seq}: {exc}", EXIT_INPUT)
            except json.JSONDecodeError as exc:
                raise CliError(f"{args.seq}: invalid JSON: {exc}", EXIT_INPUT)
            if not isinstance(seq, list) or not all(isinstance(s, list) for s in seq):
                raise CliError(f"{args.seq}: expected a JSON list of vertex lists", EXIT_INPUT)
            reduced, n = sequential_reduce(g, seq)
    except (StructuralSetError, ValueError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    payload = {
        "graph": reduced.to_json_dict(),
        "forbidden_set": n.to_json_dict(),
    }
    return EXIT_OK, _json_text(payload)


def cmd_spectrum(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    return EXIT_OK, _json_text(spectrum(g).to_json_dict())


def cmd_verify(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    s = _vertex_list(args.set)
    try:
        n = forbidden_set(g, s)
        reduced = _load_graph(args.expect) if args.expect else reduce(g, s)
    except StructuralSetError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    sg = spectrum(g)
    sr = spectrum(reduced)
    report = spectra_equal_up_to(sg, sr, n, args.tol)
    lines = [
        "sigma(G):     " + " ".join(_fmt_complex(z) for z in sg.values()),
        "sigma(R_S):   " + " ".join(_fmt_complex(z) for z in sr.values()),
        "N(G;S):       " + " ".join(_fmt_complex(z) for z in n.values()),
    ]
    if report.ok:
        lines.append("PASS: spectra differ at most by N(G;S)")
        untouched = not any(
            n.contains(z, args.tol) for z in sg.values() + sr.values()
        )
        if untouched and len(sg.values()) == len(sr.values()):
            lines.append("note: spectrum preserved exactly")
        return EXIT_OK, "\n".join(lines)
    lines.append("FAIL: spectra differ beyond N(G;S)")
    lines.extend("  " + ln for ln in report.lines())
    return EXIT_FAIL, "\n".join(lines)


def cmd_bas(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    try:
        bas = basic_structural_set(g)
    except EmptyBasicSetError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    return EXIT_OK, _json_text({"basic_structural_set": list(bas)})


def cmd_scc(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    if args.filter:
        return EXIT_OK, _json_text(scc_filter(g).to_json_dict())
    part = scc_partition(g)
    return EXIT_OK, _json_text({"components": [list(c) for c in part]})


def cmd_expand(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    try:
        x = expand(g, _vertex_list(args.set))
    except StructuralSetError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    return EXIT_OK, _json_text(x.to_json_dict())


def cmd_bisect(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    endpoints = _vertex_list(args.edge)
    if len(endpoints) != 2:
        raise CliError("--edge wants 'from,to'", EXIT_INPUT)
    try:
        w_in = parse_weight(args.w_in)
        w_loop = parse_weight(args.w_loop)
        w_out = parse_weight(args.w_out)
    except ParseError as exc:
        raise CliError(str(exc), EXIT_INPUT)
    try:
        out = loop_bisect(
            g, (endpoints[0], endpoints[1]), w_in, w_loop, w_out, args.vertex
        )
    except (FactorizationError, GraphError, ValueError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    return EXIT_OK, _json_text(out.to_json_dict())


def cmd_laplacian(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    kind = args.laplacian
    try:
        if kind == "comb":
            out = combinatorial_laplacian_graph(g)
        elif kind == "norm":
            out = normalized_laplacian_graph(g, mode="numeric")
        elif kind == "norm-exact":
            out = normalized_laplacian_graph(g, mode="exact-similar")
        else:
            out = generalized_laplacian_graph(g)
    except GraphError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    return EXIT_OK, _json_text(out.to_json_dict())


def cmd_weightset(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    test = SUBRING_TESTS[args.subring]
    try:
        reduced = weightset_reduce(g, test)
    except (WeightOutsideSubringError, EmptyBasicSetError) as exc:
        raise CliError(str(exc), EXIT_PRECONDITION)
    report = verify_weightset(g, reduced, test)
    payload = {
        "graph": reduced.to_json_dict(),
        "verify": {"ok": report.ok, "lines": report.lines},
    }
    return (EXIT_OK if report.ok else EXIT_FAIL), _json_text(payload)


def cmd_isocheck(args) -> Tuple[int, str]:
    g = _load_graph(args.graph)
    h = _load_graph(args.other)
    witness = isomorphic(g, h)
    payload = {
        "isomorphic": witness is not None,
        "witness": witness,
    }
    return EXIT_OK, _json_text(payload)


def cmd_proptest(args) -> Tuple[int, str]:
    results = run_all(cases=args.cases, seed=args.seed)
    lines = [r.summary() for r in results]
    bad = [r for r in results if not r.ok]
    for r in bad:
        lines.extend("  " + f for f in r.failures[:5])
    total = sum(r.cases for r in results)
    lines.append(
        f"total: {total} cases across {len(results)} suites, "
        + ("all ok" if not bad else f"{len(bad)} suites failed")
    )
    return (EXIT_OK if not bad else EXIT_FAIL), "\n".join(lines)


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="isored",
        description="Isospectral reductions of weighted digraphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(handler=fn)
        sp.add_argument("--out", help="write output to this file")
        return sp

    sp = add("reduce", cmd_reduce, "reduce a graph over a structural set")
    sp.add_argument("graph")
    sp.add_argument("--set", help="comma-separated structural set")
    sp.add_argument("--seq", help="JSON file with a list of vertex lists")
    sp.add_argument("--to", help="target vertex set for a unique reduction")

    sp = add("spectrum", cmd_spectrum, "exact spectrum of a graph")
    sp.add_argument("graph")

    sp = add("verify", cmd_verify, "check spectrum preservation end to end")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument(
        "--expect",
        help="claimed reduced graph to check instead of the computed one",
    )

    sp = add("bas", cmd_bas, "basic structural set")
    sp.add_argument("graph")

    sp = add("scc", cmd_scc, "strongly connected components")
    sp.add_argument("graph")
    sp.add_argument("--filter", action="store_true", help="emit the intra-component graph")

    sp = add("expand", cmd_expand, "branch expansion over a structural set")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True)

    sp = add("bisect", cmd_bisect, "loop-bisect one edge")
    sp.add_argument("graph")
    sp.add_argument("--edge", required=True, help="'from,to'")
    sp.add_argument("--w-in", required=True, help="weight into the new vertex")
    sp.add_argument("--w-loop", required=True, help="loop weight of the new vertex")
    sp.add_argument("--w-out", required=True, help="weight out of the new vertex")
    sp.add_argument("--vertex", help="name for the new vertex")

    sp = add("laplacian", cmd_laplacian, "Laplacian-derived graphs")
    sp.add_argument("graph")
    sp.add_argument(
        "--laplacian",
        choices=["comb", "norm", "norm-exact", "gen"],
        default="comb",
        help="which Laplacian form to build",
    )

    sp = add("weightset", cmd_weightset, "vertex reduction over a weight subring")
    sp.add_argument("graph")
    sp.add_argument("--subring", choices=sorted(SUBRING_TESTS), default="int")

    sp = add("isocheck", cmd_isocheck, "weighted isomorphism check")
    sp.add_argument("graph")
    sp.add_argument("other")

    sp = add("proptest", cmd_proptest, "run the randomized invariant suites")
    sp.add_argument("--cases", type=int, default=60)
    sp.add_argument("--seed", type=int, default=0)

    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
