"""Command-line entry point: ``caylabel analyze|graph|span|verify|enumerate``.

Exit status: 0 success, 1 counterexample found, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cayley import (
    CayleyGraph,
    GraphError,
    build_cayley_graph,
    check_undirected_characterization,
    component_sizes,
    format_dot,
    format_edge_list,
    is_disjoint_union_of_completes,
    is_undirected,
    parse_dot,
    parse_edge_list,
    strong_components,
    underlying_undirected,
    weak_components,
)
from .enumeration import OrderCapError, enumerate_semigroups
from .labelling import (
    DistanceConstraint,
    LabellingError,
    SolverCapError,
    exact_span,
    formula_left_zero_band,
    formula_zero_semigroup,
    span_right_zero_band,
    span_union_of_completes,
    union_of_completes_labelling,
)
from .semigroup import (
    NotCompletelySimpleError,
    Semigroup,
    SemigroupError,
    adjoin_zero,
    cyclic_group,
    direct_product,
    format_semigroup,
    format_subset,
    identity_element,
    idempotents,
    is_band,
    is_combinatorial,
    is_completely_simple,
    is_group,
    is_left_cancellative,
    is_left_group,
    is_left_simple,
    is_left_zero_band,
    is_rectangular_band,
    is_right_cancellative,
    is_right_group,
    is_right_simple,
    is_right_zero_band,
    is_simple,
    left_zero_band,
    members,
    parse_semigroup,
    parse_subset,
    rees_decompose,
    rees_matrix_semigroup,
    right_zero_band,
    zero_element,
)
from .verify import (
    THEOREMS,
    BudgetExceeded,
    KGrid,
    VerificationReport,
    run_campaign,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
    verify_theorem3_all,
    verify_theorem4,
)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


# -- inputs ----------------------------------------------------------------------

def semigroup_from_spec(spec: str) -> Semigroup:
    """Build a semigroup from a constructor spec such as ``adjoin-zero:leftzero:3``.

    Forms: ``trivial``, ``cyclic:N``, ``leftzero:N``, ``rightzero:N``,
    ``adjoin-zero:SPEC``, ``product:SPEC+SPEC`` and
    ``rees:I:L:P:SPEC`` where ``P`` lists the ``L × I`` sandwich entries
    row by row, comma separated, as element indices of the group ``SPEC``.
    """
    head, _, rest = spec.partition(":")

    def size(text: str) -> int:
        try:
            n = int(text)
        except ValueError:
            raise InputError(f"bad size {text!r} in {spec!r}") from None
        if n < 1:
            raise InputError(f"size must be positive in {spec!r}")
        return n

    if head == "trivial" and not rest:
        return cyclic_group(1)
    if head == "cyclic":
        return cyclic_group(size(rest))
    if head == "leftzero":
        return left_zero_band(size(rest))
    if head == "rightzero":
        return right_zero_band(size(rest))
    if head == "adjoin-zero" and rest:
        return adjoin_zero(semigroup_from_spec(rest))
    if head == "product" and "+" in rest:
        left, _, right = rest.partition("+")
        return direct_product(semigroup_from_spec(left), semigroup_from_spec(right))
    if head == "rees":
        parts = rest.split(":", 3)
        if len(parts) != 4:
            raise InputError(f"rees spec needs I:L:P:GROUP, got {spec!r}")
        n_i, n_lambda = size(parts[0]), size(parts[1])
        try:
            flat = [int(tok) for tok in parts[2].split(",")]
        except ValueError:
            raise InputError(f"bad sandwich matrix {parts[2]!r}") from None
        if len(flat) != n_i * n_lambda:
            raise InputError(f"sandwich matrix needs {n_i * n_lambda} entries, got {len(flat)}")
        G = semigroup_from_spec(parts[3])
        if not is_group(G):
            raise InputError(f"{parts[3]!r} is not a group")
        if any(not 0 <= x < G.order for x in flat):
            raise InputError("sandwich entries must be group element indices")
        P = [flat[lam * n_i:(lam + 1) * n_i] for lam in range(n_lambda)]
        return rees_matrix_semigroup(G, n_i, n_lambda, P)
    raise InputError(f"unknown constructor spec {spec!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_semigroup(args, required: bool = True) -> Semigroup | None:
    if args.table and args.gen:
        raise InputError("give either a table file or --gen, not both")
    if args.gen:
        return semigroup_from_spec(args.gen)
    if args.table:
        return parse_semigroup(_read(args.table), name=args.table)
    if required:
        raise InputError("no semigroup given (table file or --gen)")
    return None


def load_graph_file(path: str) -> CayleyGraph:
    text = _read(path)
    if "->" in text or text.lstrip().startswith("digraph"):
        return parse_dot(text)
    return parse_edge_list(text)


def load_connection(S: Semigroup, text: str | None) -> int:
    if text is None:
        raise InputError("--connection is required")
    C = parse_subset(text, S.order)
    if not C:
        raise InputError("connection set must be nonempty")
    return C


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


# -- analyze ---------------------------------------------------------------------

def analysis(S: Semigroup) -> dict:
    report = {
        "order": S.order,
        "idempotents": members(idempotents(S)),
        "band": is_band(S),
        "left_zero_band": is_left_zero_band(S),
        "right_zero_band": is_right_zero_band(S),
        "rectangular_band": is_rectangular_band(S),
        "combinatorial": is_combinatorial(S),
        "left_simple": is_left_simple(S),
        "right_simple": is_right_simple(S),
        "simple": is_simple(S),
        "completely_simple": is_completely_simple(S),
        "left_cancellative": is_left_cancellative(S),
        "right_cancellative": is_right_cancellative(S),
        "left_group": is_left_group(S),
        "right_group": is_right_group(S),
        "group": is_group(S),
        "identity": identity_element(S),
        "zero": zero_element(S),
    }
    if report["completely_simple"]:
        dec = rees_decompose(S)
        dec.check(S)
        report["rees"] = {
            "group_order": dec.group.order,
            "I": dec.n_i,
            "Lambda": dec.n_lambda,
            "P": [list(row) for row in dec.sandwich],
            "group_elements": list(dec.group_elements),
        }
    return report


def cmd_analyze(args) -> int:
    S = load_semigroup(args)
    report = analysis(S)
    if args.json:
        _emit(json.dumps(report, indent=2) + "\n", args.output)
        return EXIT_OK
    lines = []
    for key, value in report.items():
        if key == "rees":
            continue
        if isinstance(value, bool):
            value = str(value).lower()
        elif isinstance(value, list):
            value = " ".join(map(str, value)) or "-"
        elif value is None:
            value = "none"
        lines.append(f"{key}: {value}")
    if "rees" in report:
        r = report["rees"]
        lines.append(f"rees: |G|={r['group_order']} |I|={r['I']} |Lambda|={r['Lambda']}")
        lines.append("rees P: " + "; ".join(" ".join(map(str, row)) for row in r["P"]))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# -- graph ----------------------------------------------------------------------

def graph_summary(g: CayleyGraph) -> dict:
    comps = weak_components(g)
    return {
        "vertices": g.n,
        "edges": len(g.edges()),
        "undirected": is_undirected(g),
        "weak_components": [members(c) for c in comps],
        "strong_components": len(strong_components(g)),
        "component_sizes": component_sizes(g),
        "union_of_completes_with_loops": is_disjoint_union_of_completes(g, require_loops=True),
        "union_of_completes_without_loops": is_disjoint_union_of_completes(g, require_loops=False),
    }


def cmd_graph(args) -> int:
    S = load_semigroup(args)
    C = load_connection(S, args.connection)
    g = build_cayley_graph(S, C)
    if args.underlying:
        g = underlying_undirected(g)
    if args.dot:
        _emit(format_dot(g), args.output)
        return EXIT_OK
    if args.edges:
        _emit(format_edge_list(g), args.output)
        return EXIT_OK
    info = graph_summary(g)
    if args.undirected_check:
        chk = check_undirected_characterization(S, C)
        info["undirected_check"] = {"undirected": chk.undirected, "condition": chk.condition,
                                    "reason": chk.reason, "agree": chk.agree}
    if args.json:
        _emit(json.dumps(info, indent=2) + "\n", args.output)
        return EXIT_OK
    sizes = ", ".join(map(str, info["component_sizes"]))
    lines = [
        f"vertices: {info['vertices']}",
        f"edges: {info['edges']}",
        f"undirected: {_yn(info['undirected'])}",
        f"{len(info['component_sizes'])} components: sizes {sizes}; "
        f"union of completes: {_yn(info['union_of_completes_with_loops'])}",
        f"union of completes (loops required): {_yn(info['union_of_completes_with_loops'])}",
        f"union of completes (loops ignored): {_yn(info['union_of_completes_without_loops'])}",
    ]
    if args.components:
        for k, comp in enumerate(info["weak_components"]):
            lines.append(f"component {k}: {format_subset(sum(1 << v for v in comp))}")
    if args.undirected_check:
        chk = info["undirected_check"]
        lines.append(f"algebraic condition: {_yn(chk['condition'])} ({chk['reason']})")
        lines.append(f"characterisation agrees: {_yn(chk['agree'])}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# -- span -----------------------------------------------------------------------

def closed_form_span(g: CayleyGraph, kappa: DistanceConstraint, S: Semigroup | None, C: int | None):
    """``(value, labels or None, name)`` from the first closed form that applies."""
    if is_disjoint_union_of_completes(g, require_loops=False):
        return span_union_of_completes(g, kappa.k1), union_of_completes_labelling(g, kappa.k1), "union-of-completes"
    if S is None or C is None:
        raise InputError("no closed form applies to this graph")
    if kappa.ell < 2:
        raise InputError("closed forms need at least k1,k2")
    k1, k2 = kappa.k1, kappa.ks[1]
    if is_right_zero_band(S):
        return span_right_zero_band(), None, "right-zero-band"
    if is_left_zero_band(S):
        return formula_left_zero_band(S.order, bin(C).count("1"), k1, k2), None, "left-zero-band"
    theta = zero_element(S)
    if theta is not None and C == 1 << theta and S.order >= 2:
        return formula_zero_semigroup(S.order, k1, k2), None, "zero-semigroup"
    raise InputError("no closed form applies to this graph")


def cmd_span(args) -> int:
    kappa = DistanceConstraint.parse(args.k)
    S = C = None
    if args.graph_file:
        if args.table or args.gen:
            raise InputError("give either --graph-file or a semigroup, not both")
        g = load_graph_file(args.graph_file)
    else:
        S = load_semigroup(args)
        C = load_connection(S, args.connection)
        g = build_cayley_graph(S, C)
    if args.underlying:
        g = underlying_undirected(g)
    elif not is_undirected(g):
        raise InputError("graph is directed; pass --underlying to symmetrise it")
    if args.formula:
        value, labels, method = closed_form_span(g, kappa, S, C)
        method = f"formula ({method})"
        if method.endswith("(left-zero-band)") or method.endswith("(zero-semigroup)"):
            if kappa.ell >= 2 and kappa.ks[1] > kappa.k1:
                print("note: this closed form is not sharp when k2 > k1; compare with --exact", file=sys.stderr)
    else:
        res = exact_span(g, kappa, cap=args.cap)
        value, labels, method = res.value, res.labels, res.method
    doc = {"k": str(kappa), "vertices": g.n, "span": value, "method": method,
           "labels": list(labels) if labels is not None else None}
    if args.json:
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
        return EXIT_OK
    lines = [f"span: {value}", f"method: {method}"]
    if labels is not None:
        lines.append("labels: " + " ".join(map(str, labels)))
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# -- verify ---------------------------------------------------------------------

def _parse_theorems(text: str) -> list[str]:
    picked = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in picked if t not in THEOREMS]
    if not picked or bad:
        raise InputError(f"--theorem takes values from {', '.join(THEOREMS)}")
    return sorted(set(picked))


def _single_instance(args, theorems: list[str], grid: KGrid) -> dict[str, VerificationReport]:
    if len(theorems) != 1:
        raise InputError("a single instance needs exactly one --theorem")
    t = theorems[0]
    if t == "4":
        if not args.graph_file:
            raise InputError("theorem 4 checks a --graph-file")
        g = load_graph_file(args.graph_file)
        return {t: verify_theorem4(g, grid, probe=not args.no_probe)}
    if args.graph_file:
        raise InputError("--graph-file only applies to theorem 4")
    S = load_semigroup(args)
    if t == "1":
        return {t: verify_theorem1(S, grid)}
    if t == "2":
        return {t: verify_theorem2(S, grid)}
    if args.connection is None:
        return {t: verify_theorem3_all(S, grid)}
    return {t: verify_theorem3(S, load_connection(S, args.connection), grid)}


def _report_text(rep: VerificationReport) -> str:
    lines = [rep.summary(), f"  seed={rep.seed} elapsed={rep.elapsed:.2f}s"]
    if rep.effort:
        lines.append("  effort: " + ", ".join(f"{k}={v}" for k, v in sorted(rep.effort.items())))
    for key, value in rep.details.items():
        lines.append(f"  {key}: {value}")
    for cx in rep.counterexamples[:10]:
        lines.append(f"  counterexample: {json.dumps(cx, default=str)}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    theorems = _parse_theorems(args.theorem)
    try:
        grid = KGrid.parse(args.grid) if args.grid else KGrid()
    except ValueError as exc:
        raise InputError(str(exc)) from None
    single = bool(args.table or args.gen or args.graph_file)
    if single:
        reports = _single_instance(args, theorems, grid)
    else:
        try:
            reports = run_campaign(
                order_cap=args.order_cap,
                grid=grid,
                theorems=theorems,
                workers=args.workers,
                fail_fast=args.fail_fast,
                seed=args.seed,
                dedup=args.dedup,
                random_count=args.random_graphs,
                probe=not args.no_probe,
                time_budget=args.time_budget,
            )
        except OrderCapError:
            raise
        except SemigroupError as exc:
            raise OrderCapError(str(exc)) from None
    ordered = [reports[t] for t in sorted(reports)]
    if args.json:
        doc = ordered[0].to_dict() if len(ordered) == 1 else [r.to_dict() for r in ordered]
        _emit(json.dumps(doc, indent=2, default=str) + "\n", args.output)
    else:
        _emit("\n".join(_report_text(r) for r in ordered) + "\n", args.output)
    return EXIT_OK if all(not r.counterexamples for r in ordered) else EXIT_COUNTEREXAMPLE


# -- enumerate ------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    stream = enumerate_semigroups(args.order, args.dedup)
    if args.count:
        _emit(f"{sum(1 for _ in stream)}\n", args.output)
        return EXIT_OK
    _emit("\n".join(format_semigroup(S) for S in stream), args.output)
    return EXIT_OK


# -- wiring ---------------------------------------------------------------------

def _add_semigroup_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("table", nargs="?", help="table file ('-' for standard input)")
    p.add_argument("--gen", metavar="SPEC", help="built-in constructor, e.g. leftzero:4 or adjoin-zero:cyclic:2")


def _add_output(p: argparse.ArgumentParser, json_flag: bool = True) -> None:
    p.add_argument("-o", "--output", help="write to this file instead of standard output")
    if json_flag:
        p.add_argument("--json", action="store_true", help="emit the structured document")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="caylabel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="semigroup predicates and Rees coordinates")
    _add_semigroup_source(p)
    _add_output(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("graph", help="build Cay(S, C)")
    _add_semigroup_source(p)
    p.add_argument("--connection", "-c", metavar="ELEMS", help="connection set, e.g. '0 2'")
    p.add_argument("--underlying", action="store_true", help="symmetrise the edges first")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="emit DOT")
    fmt.add_argument("--edges", action="store_true", help="emit the edge-list format")
    p.add_argument("--components", action="store_true", help="list the weak components")
    p.add_argument("--undirected-check", action="store_true", help="compare with the algebraic criterion")
    _add_output(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("span", help="minimum labelling span")
    _add_semigroup_source(p)
    p.add_argument("--connection", "-c", metavar="ELEMS")
    p.add_argument("--graph-file", metavar="FILE", help="edge-list or DOT graph instead of a semigroup")
    p.add_argument("--k", required=True, metavar="K1,K2,...", help="separations for distances 1..l")
    p.add_argument("--underlying", action="store_true", help="symmetrise the edges first")
    how = p.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true", help="exact search (default)")
    how.add_argument("--formula", action="store_true", help="closed form only")
    p.add_argument("--cap", type=int, default=12, help="largest graph for the exact search")
    _add_output(p)
    p.set_defaults(func=cmd_span)

    p = sub.add_parser("verify", help="check the characterisations exhaustively or on one instance")
    _add_semigroup_source(p)
    p.add_argument("--connection", "-c", metavar="ELEMS")
    p.add_argument("--graph-file", metavar="FILE")
    p.add_argument("--theorem", default="1,2,3,4", help="comma list from 1,2,3,4")
    p.add_argument("--order-cap", type=int, default=4)
    p.add_argument("--dedup", choices=("none", "iso"), default="none")
    p.add_argument("--grid", help="separation grid, e.g. 'ell=2;k=1,2,3'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random-graphs", type=int, default=1000)
    p.add_argument("--no-probe", action="store_true", help="skip the extra large-k2 check for theorem 4")
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--time-budget", type=float, help="seconds before giving up")
    _add_output(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list every semigroup of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--dedup", choices=("none", "iso"), default="none")
    p.add_argument("--count", action="store_true", help="print only the number of tables")
    _add_output(p, json_flag=False)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OrderCapError, SolverCapError) as exc:
        print(f"caylabel: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BudgetExceeded as exc:
        print(f"caylabel: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, SemigroupError, GraphError, LabellingError, NotCompletelySimpleError) as exc:
        print(f"caylabel: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
