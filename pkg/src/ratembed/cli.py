"""Command-line interface.

Exit codes: 0 success, 1 infeasible (a witness is printed), 2 invalid input.
Tables go to stdout tab-separated; certificates are JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from ratembed.constructions import (
    clique_extension,
    embed_book_sqrt2,
    embed_k23_q3,
    embed_k133_q5,
    plan_k133,
)
from ratembed.diophantine import extension_chain
from ratembed.distance_graphs import (
    Embedding,
    clique_search_bruteforce,
    schoenberg_c1,
    verify_embedding,
)
from ratembed.errors import DomainError, Infeasible
from ratembed.exact_arith import (
    decompose_three_squares,
    format_rational,
    parse_rational,
    three_square_obstruction,
)
from ratembed.lattice_geom import (
    TriangleSq,
    embed_triangle_q4,
    rational_point_on_sphere,
    realizability_witness,
    triangle_witness,
)
from ratembed.regularizer import PlaneEmbedding, contains_subgraph, is_regular, regular_supergraph

SCHEMA_VERSION = "1"
GRAPHS = ("k23", "book", "k133", "clique-ext")


def _vec(v) -> str:
    return ",".join(v.to_strings())


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _row(*cells) -> None:
    print("\t".join(str(c) for c in cells))


# --- subcommands ------------------------------------------------------------------


def _build(graph: str, n: int | None, r: Fraction | None, m: int | None):
    if graph == "k23":
        if n not in (None, 3):
            raise DomainError("k23 lives in Q^3; use --n 3")
        if r is None:
            raise DomainError("k23 needs --r")
        return embed_k23_q3(r), {"graph": graph, "n": 3, "r": format_rational(r)}, None
    if graph == "book":
        if n is None:
            raise DomainError("book needs --n")
        if r not in (None, 2):
            raise DomainError("the book graph construction uses r = 2")
        return embed_book_sqrt2(n), {"graph": graph, "n": n, "r": "2"}, None
    if graph == "k133":
        if n not in (None, 5):
            raise DomainError("k133 lives in Q^5; use --n 5")
        if r is None:
            raise DomainError("k133 needs --r")
        plan = plan_k133(r)
        extra = {
            "square_free": plan.square_free,
            "scale": format_rational(plan.scale),
            "a": plan.a,
            "b": plan.b,
            "r1": format_rational(plan.r1),
            "q": format_rational(plan.q),
            "k0_squared": format_rational(plan.k0_squared),
        }
        return embed_k133_q5(r), {"graph": graph, "n": 5, "r": format_rational(r)}, extra
    if m is None:
        raise DomainError("clique-ext needs --m")
    if n not in (None, 4 * m + 3):
        raise DomainError(f"clique-ext with m={m} lives in Q^{4 * m + 3}")
    if r is None:
        raise DomainError("clique-ext needs --r")
    params = {"graph": graph, "n": 4 * m + 3, "r": format_rational(r), "m": m}
    return clique_extension(m, r), params, None


def cmd_embed(args) -> int:
    embedding, params, plan = _build(args.graph, args.n, args.r, args.m)
    doc = {"schema": SCHEMA_VERSION, "command": "embed", "params": params}
    if plan is not None:
        doc["plan"] = plan
    doc["embedding"] = embedding.to_json()
    doc["report"] = verify_embedding(embedding).to_json()
    _emit(_dump(doc), args.out)
    return 0


def _verify_plane(doc: dict) -> int:
    pe = PlaneEmbedding.from_json(doc["plane_embedding"])
    r = doc.get("params", {}).get("r")
    dev = pe.max_edge_deviation()
    sep = pe.min_separation()
    checks = [
        ("edge_lengths", dev <= pe.tolerance, f"max deviation {dev:.3e}"),
        ("separation", sep > pe.tolerance, f"min separation {sep:.3e}"),
    ]
    if r is not None:
        checks.append(("regular", is_regular(pe, int(r)), f"degree {r}"))
    for name, ok, detail in checks:
        _row(name, "pass" if ok else "FAIL", detail)
    return 0 if all(ok for _, ok, _ in checks) else 1


def cmd_verify(args) -> int:
    try:
        doc = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read certificate: {exc}") from exc
    if "plane_embedding" in doc:
        return _verify_plane(doc)
    if "embedding" not in doc:
        raise DomainError("certificate has no embedding")
    embedding = Embedding.from_json(doc["embedding"])
    report = verify_embedding(embedding, faithful=args.faithful)
    for e in report.edges:
        if not e.ok:
            _row("edge", e.u, e.v, format_rational(e.squared_distance), "FAIL")
    if args.faithful:
        for u, v in report.unit_non_edges:
            _row("non-edge", u, v, format_rational(embedding.r), "at edge distance")
    _row("edges", len(report.edges), "failed", len(report.failed_edges))
    stored = doc.get("report")
    consistent = True
    if stored is not None and not args.faithful:
        consistent = stored == report.to_json()
        if not consistent:
            _row("stored-report", "MISMATCH")
    _row("result", "pass" if report.ok and consistent else "FAIL")
    return 0 if report.ok and consistent else 1


def cmd_realized(args) -> int:
    witness = realizability_witness(args.n, args.r)
    if witness is not None:
        _row("false", witness)
        return 1
    _row("true", _vec(rational_point_on_sphere(args.n, args.r)))
    return 0


def cmd_cliques(args) -> int:
    c1 = schoenberg_c1(args.n)
    if args.r is not None:
        candidates = [args.r]
    else:
        candidates = [Fraction(k) for k in range(1, args.n * args.height**2 + 1)]
    best = None
    for r in candidates:
        size, witness = clique_search_bruteforce(args.n, r, args.height)
        if best is None or size > best[0]:
            best = (size, r, witness)
    size, r, witness = best
    _row("n", "schoenberg_c1", "r", "lower_bound", "witness")
    _row(args.n, c1, format_rational(r), size, ";".join(_vec(p) for p in witness))
    return 0


def cmd_solve41(args) -> int:
    sol = extension_chain(args.m, args.r)
    _row("m", "r", "s", "alpha", "t1", "x1", "gamma", "x", "y", "z", "w")
    _row(
        sol.m, sol.r, sol.s, sol.alpha, sol.t1, sol.x1, sol.gamma,
        *(format_rational(v) for v in sol.solution),
    )
    return 0


def cmd_triangle(args) -> int:
    tri = TriangleSq(args.a, args.b, args.c)
    found = embed_triangle_q4(tri)
    if found is None:
        _row("infeasible", triangle_witness(tri))
        return 1
    o, p1, p2 = found
    _row("feasible", _vec(o), _vec(p1), _vec(p2))
    return 0


def cmd_regularize(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read plane embedding: {exc}") from exc
    source = PlaneEmbedding.from_json(data.get("plane_embedding", data))
    out = regular_supergraph(source, args.r, seed=args.seed)
    doc = {
        "schema": SCHEMA_VERSION,
        "command": "regularize",
        "params": {"r": args.r, "seed": args.seed, "input": Path(args.file).name},
        "plane_embedding": out.to_json(),
        "report": {
            "regular": is_regular(out, args.r),
            "vertex_count": len(out.graph.vertices),
            "edge_count": len(out.graph.edges),
            "contains_input": contains_subgraph(out, source),
            "max_edge_deviation": repr(out.max_edge_deviation()),
            "min_separation": repr(out.min_separation()),
            "notes": out.notes,
        },
    }
    _emit(_dump(doc), args.out)
    if args.svg:
        from ratembed.plotting import render_plane_embedding

        render_plane_embedding(out, args.svg, highlight=source, title=f"{args.r}-regular supergraph")
    return 0


def cmd_three_squares(args) -> int:
    if args.k < 0:
        raise DomainError("k must be non-negative")
    triple = decompose_three_squares(args.k)
    if triple is None:
        a, b = three_square_obstruction(args.k)
        _row("infeasible", f"{args.k} = 4^{a}·(8·{b} + 7)")
        return 1
    _row(args.k, *triple)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratembed", description="Exact rational embeddings of distance graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="build and certify an embedding")
    p.add_argument("--graph", choices=GRAPHS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=_rational_arg)
    p.add_argument("--m", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="re-check a certificate")
    p.add_argument("file")
    p.add_argument("--faithful", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("realized", help="is sqrt(r) a distance in Q^n?")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=_rational_arg, required=True)
    p.set_defaults(func=cmd_realized)

    p = sub.add_parser("cliques", help="Schoenberg value and a brute-force lower bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--r", type=_rational_arg)
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("solve41", help="solve the simplex extension equation")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_solve41)

    p = sub.add_parser("triangle", help="place a triangle with rational squared sides in Q^4")
    p.add_argument("--a", type=_rational_arg, required=True)
    p.add_argument("--b", type=_rational_arg, required=True)
    p.add_argument("--c", type=_rational_arg, required=True)
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("regularize", help="regular unit-distance supergraph of a plane graph")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--svg", help="also render the result to this file")
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("three-squares", help="write k as a sum of three squares")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_three_squares)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except Infeasible as exc:
        _row("infeasible", exc.witness)
        return 1
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
