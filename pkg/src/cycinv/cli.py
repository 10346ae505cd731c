"""Command-line front end: ``cycinv <command> [options]``.

Reports go to stdout, diagnostics to stderr. The exit status is 0 when every
check passed, 1 when a cross-check failed, 2 for invalid input and 3 when a
resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import checks
from .betti import (
    HOCHSTER_MAX_VERTICES,
    BettiTable,
    ResourceLimitError,
    closed_form_betti,
    hochster_betti,
    invariant_ring_betti,
    linear_strand_betti,
)
from .core import ValidationError, WeightSystem
from .invariants import (
    build_relations,
    format_image,
    format_relation,
    groebner_verify,
    minimal_generators,
)
from .simplicial import Graph, build_Xs

JOBS_ENV = "CYCINV_JOBS"


def _weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationError(f"weights must be a comma list of integers, got {text!r}") from None


def _weight_system(args) -> WeightSystem:
    if args.n is None or args.weights is None:
        raise ValidationError("--n and --weights are required")
    return WeightSystem(args.n, _weights(args.weights))


def _jobs(args) -> int:
    if getattr(args, "jobs", None):
        return max(1, args.jobs)
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        raise ValidationError(f"{JOBS_ENV} must be an integer") from None


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_gens(args) -> int:
    ws = _weight_system(args)
    gens = minimal_generators(ws)
    payload = {
        "n": ws.n, "weights": list(ws.weights), "m": gens.m,
        "blocks": list(gens.blocks) if gens.blocks else None,
        "generators": [{"name": g.name, "exponents": list(g.image),
                        "degree": g.degree, "block": g.block} for g in gens.gens],
    }
    lines = [f"Z/{ws.n} acting with weights {ws.weights}: m = {gens.m}"
             + (f", blocks (r, s, t) = {gens.blocks}" if gens.blocks else "")]
    lines += [f"{g.name} = {format_image(g.image)}  (degree {g.degree}, {g.block})"
              for g in gens.gens]
    _emit(payload, "\n".join(lines), args.format)
    return 0


def cmd_relations(args) -> int:
    ws = _weight_system(args)
    gens = minimal_generators(ws)
    rels = build_relations(gens)
    report = groebner_verify(rels, gens.ring) if rels else None
    passed = report.passed if report else True
    payload = {
        "n": ws.n, "weights": list(ws.weights), "m": gens.m,
        "relations": [{"i": r.i, "j": r.j, "text": format_relation(r, gens),
                       "lead": list(r.lead), "tail": list(r.tail),
                       "a_power": r.a_power, "method": r.method} for r in rels],
        "groebner": report.as_dict() if report else
        {"pass": True, "pairs_checked": 0, "pairs_skipped_coprime": 0, "failures": []},
    }
    lines = [format_relation(r, gens) for r in rels] or ["(no relations)"]
    if report:
        lines.append(f"Groebner basis: {'pass' if passed else 'FAIL'} "
                     f"({report.pairs_checked} S-pairs reduced, "
                     f"{report.pairs_skipped_coprime} skipped with coprime leads)")
    _emit(payload, "\n".join(lines), args.format)
    return 0 if passed else 1


def cmd_betti(args) -> int:
    ws = _weight_system(args)
    res = invariant_ring_betti(ws, char=args.field_char, jobs=_jobs(args))
    payload = {
        "n": ws.n, "weights": list(ws.weights), "m": res.gens.m,
        "polynomial": res.polynomial.as_dict(),
        "weighted": res.weighted.as_dict(),
        "diagnostics": res.diagnostics,
    }
    text = "\n".join([
        "polynomial-degree Betti numbers of S/J:", res.polynomial.to_text(), "",
        "graded Betti numbers of S/J:", res.weighted.to_text(), "",
        "checks: " + ("all passed" if res.ok else "FAILED " + json.dumps(res.diagnostics)),
    ])
    _emit(payload, text, args.format)
    return 0 if res.ok else 1


def cmd_edge_betti(args) -> int:
    char = args.field_char
    if args.graph:
        try:
            with open(args.graph) as fh:
                graph = Graph.from_json(fh.read())
        except OSError as exc:
            raise ValidationError(f"cannot read graph file: {exc}") from None
        closed = None
    else:
        if args.m is None or args.s is None:
            raise ValidationError("edge-betti needs --graph FILE or both --m and --s")
        closed = closed_form_betti(args.m, args.s)
        if args.m > HOCHSTER_MAX_VERTICES:
            # beyond the enumeration cap only the closed form is offered
            _emit({"m": args.m, "s": args.s, "closed_form": closed.as_dict()},
                  closed.to_text(), args.format)
            return 0
        graph = build_Xs(args.m, args.s)
    weights = _weights(args.vertex_weights) if args.vertex_weights else None
    table = hochster_betti(graph, weights, char, jobs=_jobs(args))
    ok = True
    payload: dict = {"m": graph.m, "hochster": table.as_dict()}
    lines = ["Betti numbers of the edge ideal (Hochster):", table.to_text()]
    if weights is None:
        strand = linear_strand_betti(graph)
        strand_ok = all(table[(i, i + 2)] == v for i, v in strand.items())
        ok &= strand_ok
        payload["linear_strand"] = {str(i): v for i, v in strand.items()}
        payload["linear_strand_matches"] = strand_ok
        lines.append(f"linear strand (component counts): "
                     f"{'agrees' if strand_ok else 'DISAGREES'}")
    if closed is not None:
        payload["s"] = args.s
        payload["closed_form"] = closed.as_dict()
        if weights is None:
            agree = closed.entries == table.entries
            ok &= agree
            payload["closed_form_matches"] = agree
            lines.append(f"closed form: {'agrees' if agree else 'DISAGREES'}")
    _emit(payload, "\n".join(lines), args.format)
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    records = checks.sweep(range(args.m_min, args.m_max + 1), check_fields=args.fields,
                           jobs=_jobs(args))
    bad = [r for r in records if not r.ok]
    payload = {"cases": len(records), "failures": [
        {"m": r.m, "s": r.s,
         "closed_form": BettiTable(r.closed_form).as_dict()["entries"],
         "hochster": BettiTable(r.hochster).as_dict()["entries"]} for r in bad]}
    lines = [f"m={r.m} s={r.s}: {'ok' if r.ok else 'MISMATCH'}" for r in records]
    lines.append(f"{len(records) - len(bad)}/{len(records)} cases agree")
    _emit(payload, "\n".join(lines), args.format)
    return 0 if not bad else 1


def cmd_fuzz(args) -> int:
    records = checks.fuzz(args.seed, args.count_2d, args.count_3d, jobs=_jobs(args))
    bad = [r for r in records if not r.ok]
    payload = {"seed": args.seed, "systems": len(records),
               "failures": [r.as_dict() for r in bad]}
    lines = [f"n={r.n} weights={r.weights} m={r.m}: "
             + ("ok" if r.ok else "FAIL " + ",".join(k for k, v in r.checks.items() if not v))
             for r in records]
    lines.append(f"{len(records) - len(bad)}/{len(records)} systems pass")
    _emit(payload, "\n".join(lines), args.format)
    return 0 if not bad else 1


def cmd_hilbert_check(args) -> int:
    ws = _weight_system(args)
    top = args.max_degree if args.max_degree is not None else 3 * ws.n
    if top < 0:
        raise ValidationError("--max-degree must be non-negative")
    res = invariant_ring_betti(ws)
    result = checks.hilbert_check(res, top)
    counts = checks.invariant_counts(ws, top)
    payload = {"n": ws.n, "weights": list(ws.weights), "max_degree": top,
               "invariant_counts": counts, **result}
    lines = [f"invariant monomials by degree 0..{top}: {counts}",
             f"standard monomials of S/LT(J) match: {result['standard_basis']}",
             f"Betti numerator matches Hilbert series: {result['betti']}"]
    _emit(payload, "\n".join(lines), args.format)
    return 0 if all(result.values()) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycinv",
        description="Generators, relations and Betti tables of invariant rings of Z/n.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weights=True):
        if weights:
            p.add_argument("--n", type=int, help="group order")
            p.add_argument("--weights", help="comma list of 2 or 3 weights, e.g. 1,2,3")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--jobs", type=int, default=None,
                       help=f"worker processes (default ${JOBS_ENV} or 1)")

    common(sub.add_parser("gens", help="minimal invariant generators"))
    common(sub.add_parser("relations", help="relations R_ij and Groebner check"))
    p = sub.add_parser("betti", help="Betti tables of the invariant ring")
    common(p)
    p.add_argument("--field-char", type=int, default=0)

    p = sub.add_parser("edge-betti", help="Betti table of an edge ideal")
    common(p, weights=False)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--graph", help='JSON file {"m": int, "edges": [[a, b], ...]}, 1-based')
    p.add_argument("--vertex-weights", help="comma list of per-vertex degrees")
    p.add_argument("--field-char", type=int, default=0)

    p = sub.add_parser("sweep", help="closed forms vs Hochster over a range of m")
    common(p, weights=False)
    p.add_argument("--m-min", type=int, default=3)
    p.add_argument("--m-max", type=int, default=8)
    p.add_argument("--fields", action="store_true", help="also compare Q and F_2 homology")

    p = sub.add_parser("fuzz", help="random weight systems through every check")
    common(p, weights=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count-2d", type=int, default=100)
    p.add_argument("--count-3d", type=int, default=50)

    p = sub.add_parser("hilbert-check", help="Hilbert series identities")
    common(p)
    p.add_argument("--max-degree", type=int, default=None)
    return parser


COMMANDS = {
    "gens": cmd_gens,
    "relations": cmd_relations,
    "betti": cmd_betti,
    "edge-betti": cmd_edge_betti,
    "sweep": cmd_sweep,
    "fuzz": cmd_fuzz,
    "hilbert-check": cmd_hilbert_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
