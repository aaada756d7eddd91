"""Command-line front end.

Subcommands: test, decompose, compose, sample, verify, dsm, count.
Exit codes: 0 success, 1 domain-negative finding under --strict (not
graphical, disconnected, product mismatch), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import io as dio
from .counting import (
    count_almost_half_regular,
    count_almost_half_regular_exhaustive,
    count_bipartite_graphical,
    count_composed_class,
)
from .chain import sample
from .decomposition import (
    SplittedBipartiteSequence,
    canonical_decompose,
    canonical_decompose_bipartite,
    compose_bipartite_many,
    compose,
    psi_inverse,
    recompose,
)
from .errors import DegmixError, Disconnected, ProductMismatch
from .sequences import (
    BipartiteDegreeSequence,
    DegreeSequence,
    DirectedDegreeSequence,
    directed_graphical,
    erdos_gallai,
    gale_ryser,
    restricted_bipartite_graphical,
)
from .space import (
    build_realization_graph,
    realization_space,
    spectral_report,
    tv_distance_audit,
    verify_cartesian_product,
)
from .spectra import dsm_graphical, dsm_sample


SCHEMA = "degmix/1"


def _emit(args, payload: dict, human: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2, default=str))
    else:
        print(human)


def _out_stream(args):
    if getattr(args, "out", None):
        return open(args.out, "w")
    return sys.stdout


def cmd_test(args) -> int:
    seq = dio.load_sequence(args.seq)
    forbidden = dio.load_forbidden(args.forbidden) if args.forbidden else None
    if isinstance(seq, DegreeSequence):
        ok = erdos_gallai(seq)
    elif isinstance(seq, BipartiteDegreeSequence):
        ok = (
            restricted_bipartite_graphical(seq, forbidden)
            if forbidden is not None
            else gale_ryser(seq)
        )
    else:
        ok = directed_graphical(seq)
    _emit(args, {"graphical": ok}, "graphical" if ok else "not graphical")
    return 0 if ok or not args.strict else 1


def cmd_decompose(args) -> int:
    seq = dio.load_sequence(args.seq)
    if isinstance(seq, DirectedDegreeSequence):
        print("decompose: directed sequences are not factorized", file=sys.stderr)
        return 2
    if isinstance(seq, BipartiteDegreeSequence):
        sb = SplittedBipartiteSequence(seq.u_degrees, seq.w_degrees)
        factors = canonical_decompose_bipartite(sb)
        payload = {
            "kind": "bipartite",
            "factors": [
                {
                    "primary": list(f.primary_degrees),
                    "secondary": list(f.secondary_degrees),
                }
                for f in factors
            ],
        }
        lines = ["%d factor(s)" % len(factors)] + [
            "  [%s / %s]"
            % (
                " ".join(map(str, f.primary_degrees)),
                " ".join(map(str, f.secondary_degrees)),
            )
            for f in factors
        ]
        _emit(args, payload, "\n".join(lines))
        return 0
    cd = canonical_decompose(seq)
    comps = []
    lines = ["%d split component(s)%s" % (len(cd.components), " + tail" if cd.tail else "")]
    cur = seq.sorted_degrees
    for comp, gp in zip(cd.components, cd.good_pairs_used):
        n = len(cur)
        entry = {
            "primary": list(comp.u_degrees),
            "secondary": list(comp.w_degrees),
            "good_pair": [gp.p, gp.q],
        }
        if args.certificate:
            lhs = sum(cur[: gp.p])
            rhs = gp.p * (n - gp.q - 1) + sum(cur[n - gp.q:])
            entry["certificate"] = {
                "n": n,
                "lhs_sum_top_p": lhs,
                "rhs": rhs,
                "identity": "sum(d1..dp) == p*(n-q-1) + sum(d_{n-q+1}..d_n)",
            }
        comps.append(entry)
        lines.append(
            "  <U=%s | W=%s>  via (p=%d, q=%d)"
            % (comp.u_degrees, comp.w_degrees, gp.p, gp.q)
        )
        cur = tuple(x - gp.p for x in cur[gp.p: n - gp.q])
    payload = {
        "kind": "simple",
        "components": comps,
        "tail": list(cd.tail.degrees) if cd.tail else None,
    }
    if cd.tail:
        lines.append("  tail %s" % (cd.tail.degrees,))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_compose(args) -> int:
    seqs = [dio.load_sequence(p) for p in args.seqs]
    if len(seqs) < 2:
        print("compose: need at least two sequence files", file=sys.stderr)
        return 2
    forb = [dio.load_forbidden(p) for p in args.forbidden] if args.forbidden else None
    if forb is not None and len(forb) != len(seqs):
        print("compose: one --forbidden per operand is required", file=sys.stderr)
        return 2
    last = seqs[-1]
    heads = seqs[:-1]
    if not all(isinstance(s, BipartiteDegreeSequence) for s in heads):
        print("compose: leading operands must be bipartite (splitted)", file=sys.stderr)
        return 2
    sb_heads = [SplittedBipartiteSequence(s.u_degrees, s.w_degrees) for s in heads]
    if isinstance(last, DegreeSequence):
        if forb is not None:
            print("compose: forbidden sets need all-bipartite operands", file=sys.stderr)
            return 2
        out = last
        for sb in reversed(sb_heads):
            out = compose(psi_inverse(sb), out)
        payload = dio.sequence_to_dict(out)
        _emit(args, payload, json.dumps(payload))
        return 0
    if not isinstance(last, BipartiteDegreeSequence):
        print("compose: final operand must be simple or bipartite", file=sys.stderr)
        return 2
    parts = sb_heads + [SplittedBipartiteSequence(last.u_degrees, last.w_degrees)]
    if forb is None:
        out = compose_bipartite_many(parts)
        payload = dio.sequence_to_dict(
            BipartiteDegreeSequence(out.primary_degrees, out.secondary_degrees)
        )
        _emit(args, payload, json.dumps(payload))
        return 0
    from .decomposition import compose_directed

    cur, curf = parts[-1], forb[-1]
    for sb, f in zip(reversed(parts[:-1]), reversed(forb[:-1])):
        cur, curf = compose_directed(sb, f, cur, curf)
    payload = dio.sequence_to_dict(
        BipartiteDegreeSequence(cur.primary_degrees, cur.secondary_degrees)
    )
    payload["forbidden"] = dio.forbidden_to_list(curf)
    _emit(args, payload, json.dumps(payload))
    return 0


def cmd_sample(args) -> int:
    seq = dio.load_sequence(args.seq)
    forbidden = dio.load_forbidden(args.forbidden) if args.forbidden else None
    try:
        draws = sample(
            seq,
            burn_in=args.burn_in,
            thin=args.thin,
            count=args.count,
            seed=args.seed,
            factorize=args.factorize,
            forbidden=forbidden,
            jobs=args.jobs,
        )
    except DegmixError as exc:
        print("sample: %s" % exc, file=sys.stderr)
        return 1 if args.strict else 0
    stream = _out_stream(args)
    try:
        if args.format == "jsonl":
            for edges in draws:
                stream.write(json.dumps({"edges": [list(e) for e in edges]}) + "\n")
        else:
            for k, edges in enumerate(draws):
                if k:
                    stream.write("\n")
                for a, b in edges:
                    stream.write("%d %d\n" % (a + 1, b + 1))
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_verify(args) -> int:
    seq = dio.load_sequence(args.seq)
    forbidden = dio.load_forbidden(args.forbidden) if args.forbidden else None
    use_c6 = None if not args.c4_only else False
    try:
        if args.mode == "connectivity":
            space = realization_space(seq, forbidden, args.max_chords, use_c6)
            ok = space.connected()
            _emit(
                args,
                {"realizations": space.count, "connected": ok},
                "%d realizations, %s"
                % (space.count, "connected" if ok else "DISCONNECTED"),
            )
            return 0 if ok or not args.strict else 1
        if args.mode == "spectral":
            rg = build_realization_graph(seq, forbidden, args.max_chords, use_c6)
            rep = spectral_report(rg)
            payload = {
                "realizations": rep.realization_count,
                "lambda2": rep.lambda2,
                "relaxation_time": rep.relaxation_time,
                "conductance": rep.conductance,
                "conductance_exact": rep.conductance_exact,
                "trivial": rep.trivial,
            }
            _emit(
                args,
                payload,
                "N=%d lambda2=%.6g relax=%.6g conductance=%.6g%s"
                % (
                    rep.realization_count,
                    rep.lambda2,
                    rep.relaxation_time,
                    rep.conductance,
                    "" if rep.conductance_exact else " (sweep bound)",
                ),
            )
            return 0
        if args.mode == "tv":
            tv = tv_distance_audit(
                seq, args.steps, seed=args.seed, f=forbidden,
                max_chords=args.max_chords, use_c6=use_c6,
            )
            _emit(args, {"steps": args.steps, "tv": tv}, "TV after %d steps: %.3g" % (args.steps, tv))
            return 0
        # product mode: split off the leading canonical factor and check the
        # composed realization graph against the factor product.
        if isinstance(seq, DegreeSequence):
            cd = canonical_decompose(seq)
            if not cd.components:
                _emit(args, {"factors": 1, "ok": True}, "indecomposable; nothing to verify")
                return 0
            from .decomposition import CanonicalDecomposition

            rest = recompose(CanonicalDecomposition(cd.components[1:], cd.tail))
            report = verify_cartesian_product(
                cd.components[0], rest, max_chords=args.max_chords
            )
        elif isinstance(seq, BipartiteDegreeSequence):
            sb = SplittedBipartiteSequence(seq.u_degrees, seq.w_degrees)
            factors = canonical_decompose_bipartite(sb)
            if len(factors) == 1:
                _emit(args, {"factors": 1, "ok": True}, "indecomposable; nothing to verify")
                return 0
            rest = compose_bipartite_many(factors[1:])
            report = verify_cartesian_product(
                factors[0], rest, max_chords=args.max_chords
            )
        else:
            print("verify --mode product: not defined for directed input", file=sys.stderr)
            return 2
        _emit(
            args,
            report,
            "product verified: %d = %d x %d realizations, %d meta-edges"
            % (
                report["composed_count"],
                report["factor_counts"][0],
                report["factor_counts"][1],
                report["edges"],
            ),
        )
        return 0
    except Disconnected as exc:
        _emit(args, {"error": "disconnected", "detail": str(exc)}, "DISCONNECTED: %s" % exc)
        return 1 if args.strict else 0
    except ProductMismatch as exc:
        _emit(
            args,
            {"error": "product-mismatch", "detail": str(exc), "witness": exc.witness},
            "PRODUCT MISMATCH: %s" % exc,
        )
        return 1 if args.strict else 0
    except DegmixError as exc:
        print("verify: %s" % exc, file=sys.stderr)
        return 1 if args.strict else 0


def cmd_dsm(args) -> int:
    matrix = dio.load_dsm(args.matrix)
    if args.check:
        ok = dsm_graphical(matrix)
        _emit(args, {"graphical": ok}, "graphical" if ok else "not graphical")
        return 0 if ok or not args.strict else 1
    graphs = dsm_sample(
        matrix, burn_in=args.burn_in, thin=args.thin, count=args.count, seed=args.seed
    )
    stream = _out_stream(args)
    try:
        if args.format == "jsonl":
            for g in graphs:
                stream.write(
                    json.dumps({"edges": [list(e) for e in sorted(g.edges)]}) + "\n"
                )
        else:
            for k, g in enumerate(graphs):
                if k:
                    stream.write("\n")
                for a, b in sorted(g.edges):
                    stream.write("%d %d\n" % (a + 1, b + 1))
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


def cmd_count(args) -> int:
    if args.kind == "ahr":
        rep = (
            count_almost_half_regular_exhaustive(args.n)
            if args.exhaustive
            else count_almost_half_regular(args.n)
        )
    elif args.kind == "bipartite":
        rep = count_bipartite_graphical(args.n)
    else:
        if not args.block:
            print("count --kind composed requires --block", file=sys.stderr)
            return 2
        rep = count_composed_class(args.n, args.block)
    if args.csv:
        print("kind,parameter,count,method")
        print("%s,%d,%d,%s" % (args.kind, rep.parameter, rep.count, rep.method))
    else:
        _emit(
            args,
            {"kind": args.kind, "parameter": rep.parameter, "count": rep.count,
             "method": rep.method},
            str(rep.count),
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="degmix",
        description="Uniform sampling of graphs with prescribed degrees via "
        "decomposed swap Markov chains, with desk-scale verification.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--strict", action="store_true",
                       help="exit 1 on domain-negative findings")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="master seed")

    p = sub.add_parser("test", help="graphicality test")
    p.add_argument("--seq", required=True)
    p.add_argument("--forbidden")
    common(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("decompose", help="canonical decomposition report")
    p.add_argument("--seq", required=True)
    p.add_argument("--certificate", action="store_true",
                   help="emit the good-pair arithmetic per extraction")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compose", help="compose sequences (first operands splitted bipartite)")
    p.add_argument("seqs", nargs="+", metavar="SEQ.json")
    p.add_argument("--forbidden", action="append",
                   help="one per operand; yields the directed composition")
    common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("sample", help="sample realizations via the product chain")
    p.add_argument("--seq", required=True)
    p.add_argument("--forbidden")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--burn-in", type=int, default=1000, dest="burn_in")
    p.add_argument("--thin", type=int, default=10)
    p.add_argument("--factorize", choices=("auto", "off"), default="auto")
    p.add_argument("--format", choices=("edges", "jsonl"), default="edges")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--jobs", type=int, default=1,
                   help="workers for the logical chains; output is identical for any value")
    common(p, seed=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="exhaustive verification on desk-scale instances")
    p.add_argument("--seq", required=True)
    p.add_argument("--forbidden")
    p.add_argument("--mode", choices=("product", "spectral", "connectivity", "tv"),
                   default="spectral")
    p.add_argument("--max-chords", type=int, default=None, dest="max_chords")
    p.add_argument("--steps", type=int, default=200, help="kernel power for --mode tv")
    p.add_argument("--c4-only", action="store_true", dest="c4_only",
                   help="disable C6 swaps (directed/restricted instances)")
    common(p, seed=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dsm", help="degree spectra matrix tools")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", action="store_true", help="graphicality test")
    mode.add_argument("--sample", action="store_true", help="sample realizations")
    p.add_argument("--matrix", required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--burn-in", type=int, default=1000, dest="burn_in")
    p.add_argument("--thin", type=int, default=10)
    p.add_argument("--format", choices=("edges", "jsonl"), default="edges")
    p.add_argument("--out")
    common(p, seed=True)
    p.set_defaults(func=cmd_dsm)

    p = sub.add_parser("count", help="census counts")
    p.add_argument("--kind", choices=("ahr", "bipartite", "composed"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block", type=int)
    p.add_argument("--exhaustive", action="store_true",
                   help="cross-check census instead of the closed form (ahr)")
    p.add_argument("--csv", action="store_true")
    common(p)
    p.set_defaults(func=cmd_count)
    return top


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegmixError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1 if getattr(args, "strict", False) else 0
    except FileNotFoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
