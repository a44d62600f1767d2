"""Command line interface and the JSON instance document format.

Instance document (version 1)::

    {
      "version": 1,
      "agents": 3,
      "edges": [{"from": 0, "to": 2, "distance": "1/2"}, ...],
      "gadget_meta": {...}                      # optional
    }

Exit codes: 0 success, 1 domain or parse error, 2 resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Sequence

from dpg import oracle, reductions, stability, welfare
from dpg.core import (
    DomainError,
    DpgInstance,
    LocationProfile,
    ResourceLimitError,
    is_symmetric,
    social_welfare,
)
from dpg.reductions import GadgetMeta

FORMAT_VERSION = 1
CLI_MAX_DENOMINATOR = 10**9

_RATIONAL = re.compile(r"^(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


class ParseError(DomainError):
    pass


def parse_rational(text: str, where: str = "value") -> Fraction:
    """Strict ``p`` or ``p/q`` in lowest terms, within [0, 1]."""
    if not isinstance(text, str):
        raise ParseError(f"{where}: expected a rational string, got {text!r}")
    m = _RATIONAL.match(text)
    if not m:
        raise ParseError(f"{where}: malformed rational {text!r}")
    p = int(m.group(1))
    q = int(m.group(2) or 1)
    value = Fraction(p, q)
    if value.denominator != q:
        raise ParseError(f"{where}: {text!r} is not in lowest terms")
    if not 0 <= value <= 1:
        raise ParseError(f"{where}: {text!r} lies outside [0, 1]")
    return value


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_instance(
    text: str, max_denominator: int | None = None
) -> tuple[DpgInstance, GadgetMeta | None]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    unknown = set(doc) - {"version", "agents", "edges", "gadget_meta"}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    if doc.get("version") != FORMAT_VERSION:
        raise ParseError(f"version: unsupported version {doc.get('version')!r}")
    n = doc.get("agents")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError(f"agents: expected a non-negative integer, got {n!r}")
    edges_doc = doc.get("edges")
    if not isinstance(edges_doc, list):
        raise ParseError("edges: expected a list")
    edges = []
    seen = set()
    for k, e in enumerate(edges_doc):
        where = f"edges[{k}]"
        if not isinstance(e, dict) or set(e) != {"from", "to", "distance"}:
            raise ParseError(f"{where}: expected exactly the fields from, to, distance")
        i, j = e["from"], e["to"]
        for name, v in (("from", i), ("to", j)):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise ParseError(f"{where}.{name}: agent id {v!r} out of range")
        if i == j:
            raise ParseError(f"{where}: self-relation of agent {i}")
        if (i, j) in seen:
            raise ParseError(f"{where}: duplicate edge {i} -> {j}")
        seen.add((i, j))
        d = parse_rational(e["distance"], f"{where}.distance")
        if max_denominator is not None and d.denominator > max_denominator:
            raise ParseError(f"{where}.distance: denominator exceeds {max_denominator}")
        edges.append((i, j, d))
    meta = None
    if doc.get("gadget_meta") is not None:
        try:
            meta = GadgetMeta.from_dict(doc["gadget_meta"])
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"gadget_meta: {exc}") from None
    return DpgInstance.from_edges(n, edges), meta


def instance_document(inst: DpgInstance, meta: GadgetMeta | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "agents": inst.n,
        "edges": [
            {"from": i, "to": j, "distance": format_rational(d)} for i, j, d in inst.edges()
        ],
    }
    if meta is not None:
        doc["gadget_meta"] = meta.to_dict()
    return doc


def serialize_instance(inst: DpgInstance, meta: GadgetMeta | None = None) -> str:
    return json.dumps(instance_document(inst, meta), indent=2) + "\n"


def export_dot(inst: DpgInstance) -> str:
    """Graphviz rendering.

    For symmetric instances each pair is drawn once with ``dir=both``;
    otherwise every directed relation gets its own arrow.
    """
    symmetric = is_symmetric(inst)
    lines = ["digraph dpg {"]
    for i in range(inst.n):
        lines.append(f"  {i};")
    for i, j, d in inst.edges():
        mutual = symmetric
        if mutual and j < i:
            continue
        attrs = f'label="{format_rational(d)}"'
        if mutual:
            attrs += ", dir=both"
        lines.append(f"  {i} -> {j} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def show(x: Fraction) -> str:
    """Exact value plus a 6-decimal rendering for humans."""
    return f"{format_rational(x)} ({float(x):.6f})"


def show_profile(A) -> str:
    return ",".join(format_rational(x) for x in A)


def parse_profile(text: str, n: int) -> LocationProfile:
    parts = [p.strip() for p in text.split(",")] if text.strip() else []
    if len(parts) != n:
        raise ParseError(f"profile: expected {n} positions, got {len(parts)}")
    return LocationProfile(parse_rational(p, f"profile[{k}]") for k, p in enumerate(parts))


def parse_order(text: str, n: int) -> list[int]:
    try:
        order = [int(p) for p in text.split(",")] if text.strip() else []
    except ValueError:
        raise ParseError(f"order: malformed agent list {text!r}") from None
    if sorted(order) != list(range(n)):
        raise ParseError(f"order: {text!r} is not a permutation of 0..{n - 1}")
    return order


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ParseError(f"{what}: malformed integer list {text!r}") from None


def parse_edge_list(text: str) -> list[tuple[int, int, Fraction]]:
    """``"0-1,1-2:3"``: undirected edges with optional positive weight."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        m = re.fullmatch(r"(\d+)-(\d+)(?::([0-9/]+))?", part)
        if not m:
            raise ParseError(f"edges: malformed edge {part!r}")
        w = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        out.append((int(m.group(1)), int(m.group(2)), w))
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load(path: str) -> DpgInstance:
    inst, _ = parse_instance(_read(path), max_denominator=CLI_MAX_DENOMINATOR)
    return inst


def cmd_verify(args) -> None:
    inst = _load(args.file)
    A = parse_profile(args.profile, inst.n)
    report = stability.find_violation(inst, A)
    print(f"SW {show(social_welfare(inst, A))}")
    if report is None:
        print("stable")
    else:
        print("unstable")
        print(
            f"agent {report.agent} jumps to {show(report.best_target)}: "
            f"utility {show(report.current_utility)} -> {show(report.best_utility)}"
        )


def cmd_brd(args) -> None:
    inst = _load(args.file)
    start = parse_profile(args.start, inst.n) if args.start else None
    A, trace = stability.best_response_dynamics(inst, start, args.max_iters)
    if args.trace:
        print("step,agent,from,to,sw")
        for t, s in enumerate(trace.steps, 1):
            print(f"{t},{s.agent},{s.source},{s.target},{s.sw_after}")
        return
    print("converged" if trace.converged else "did not converge")
    print(f"steps {trace.iterations}")
    print(f"profile {show_profile(A)}")
    print(f"SW {show(social_welfare(inst, A))}")


def _print_profile(inst: DpgInstance, A) -> None:
    print(f"profile {show_profile(A)}")
    print(f"SW {show(social_welfare(inst, A))}")


def cmd_solve_acyclic(args) -> None:
    inst = _load(args.file)
    _print_profile(inst, stability.solve_acyclic(inst))


def cmd_greedy(args) -> None:
    inst = _load(args.file)
    order = parse_order(args.order, inst.n) if args.order else None
    _print_profile(inst, welfare.greedy_endpoints(inst, order))


def cmd_lp(args) -> None:
    inst = _load(args.file)
    _print_profile(inst, welfare.ordered_lp(inst, parse_order(args.order, inst.n)))


def cmd_fptas(args) -> None:
    inst = _load(args.file)
    eps = Fraction(args.epsilon)
    _print_profile(inst, welfare.path_fptas(inst, eps))


def cmd_en_maxcut(args) -> None:
    inst = _load(args.file)
    cut, A = welfare.en_flip_maxcut(inst)
    print(f"cut {','.join(map(str, cut.side))}")
    print(f"cut_weight {cut.cut_weight}")
    _print_profile(inst, A)


def cmd_oracle(args) -> None:
    inst = _load(args.file)
    A, sw = oracle.exact_optimum(inst, cap=args.cap)
    print(f"profile {show_profile(A)}")
    print(f"SW {show(sw)}")


def cmd_poa(args) -> None:
    inst = _load(args.file)
    rep = oracle.poa_estimate(inst, args.grid, cap=args.cap)
    print(f"opt {show(rep.opt_sw)}")
    print(f"stable_profiles_found {rep.stable_profiles_found}")
    if rep.worst_stable_sw is not None:
        print(f"worst_stable {show(rep.worst_stable_sw)} (grid-restricted upper bound)")
        print(f"worst_stable_profile {show_profile(rep.worst_stable_profile)}")
    if rep.ratio is None:
        print("ratio none")
    else:
        print(f"ratio {rep.ratio.numerator}/{rep.ratio.denominator} ({float(rep.ratio):.6f})")


def cmd_dot(args) -> None:
    sys.stdout.write(export_dot(_load(args.file)))


def generate(kind: str, k: int | None = None, weights: str | None = None,
             edges: str | None = None, vertices: int | None = None):
    kind = kind.replace("-", "_")
    if kind == "example1":
        return reductions.example1(), GadgetMeta("example1")
    if kind == "example2":
        if k is None:
            raise DomainError("example2 needs --k")
        return reductions.example2(k), GadgetMeta("example2", source={"k": k})
    if kind == "fig3":
        return reductions.fig3(), GadgetMeta("fig3")
    if kind == "prop1":
        return reductions.prop1(), GadgetMeta("prop1")
    if kind in ("cyclic_partition", "path_partition"):
        if not weights:
            raise DomainError(f"{kind} needs --weights")
        ws = parse_int_list(weights, "weights")
        if kind == "cyclic_partition":
            return reductions.cyclic_partition_gadget(ws)
        return reductions.path_partition_gadget(ws)
    if kind == "en_maxcut":
        es = parse_edge_list(edges or "")
        return reductions.en_maxcut_gadget([(u, v) for u, v, _ in es], vertices)
    if kind == "pls_maxcut":
        es = parse_edge_list(edges or "")
        if vertices is None:
            vertices = 1 + max((max(u, v) for u, v, _ in es), default=-1)
        return reductions.pls_gadget(vertices, es)
    raise DomainError(f"unknown kind {kind!r}; choose from {', '.join(reductions.KINDS)}")


def cmd_gen(args) -> None:
    inst, meta = generate(args.kind, args.k, args.weights, args.edges, args.vertices)
    sys.stdout.write(serialize_instance(inst, meta))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpg", description="Distance preservation game solvers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check jump stability of a profile")
    p.add_argument("file")
    p.add_argument("profile", help="comma-separated rationals, e.g. 0,1/2,1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("brd", help="best-response dynamics")
    p.add_argument("file")
    p.add_argument("--start")
    p.add_argument("--max-iters", type=int)
    p.add_argument("--trace", action="store_true", help="emit the steps as CSV")
    p.set_defaults(func=cmd_brd)

    p = sub.add_parser("solve-acyclic", help="stable profile of an acyclic instance")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve_acyclic)

    p = sub.add_parser("greedy", help="greedy 0/1 placement")
    p.add_argument("file")
    p.add_argument("--order")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("lp", help="optimal profile for a fixed agent order")
    p.add_argument("file")
    p.add_argument("--order", required=True)
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("fptas", help="approximate optimum of a path instance")
    p.add_argument("file")
    p.add_argument("--epsilon", required=True, help="rational in (0, 1), e.g. 1/10")
    p.set_defaults(func=cmd_fptas)

    p = sub.add_parser("en-maxcut", help="flip local search on an enemies-and-neutrals instance")
    p.add_argument("file")
    p.set_defaults(func=cmd_en_maxcut)

    p = sub.add_parser("oracle", help="exact welfare optimum (small instances)")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_AGENT_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("poa", help="price of anarchy over grid-stable profiles")
    p.add_argument("file")
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_AGENT_CAP)
    p.set_defaults(func=cmd_poa)

    p = sub.add_parser("dot", help="export the preference graph as Graphviz DOT")
    p.add_argument("file")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("gen", help="emit a built-in instance or gadget")
    p.add_argument("kind", help=", ".join(k.replace("_", "-") for k in reductions.KINDS))
    p.add_argument("--k", type=int)
    p.add_argument("--weights", help="item weights, e.g. 1,1,2")
    p.add_argument("--edges", help="undirected edges, e.g. 0-1,1-2 or 0-1:2 with weights")
    p.add_argument("--vertices", type=int)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
