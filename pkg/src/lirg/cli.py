"""Command line interface.

Exit codes: 0 on success, 1 on a verification failure or a
predicted-vs-computed mismatch, 2 on a usage error (including an exceeded
vertex cap).  Identical configuration and seed give byte-identical output;
all randomness flows from the --seed value through Python's Mersenne
Twister (random.Random).
"""

import argparse
import json
import os
import sys
import tempfile

from lirg import aut, counting, invariants, serialize
from lirg.field import make_field
from lirg.graph import build_full_graph, build_quotient_graph
from lirg.matrix import DEFAULT_VERTEX_CAP, VertexCapExceeded


class UsageError(Exception):
    pass


def _parse_modulus(text):
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad modulus {text!r}: {exc}") from exc


def _field(args):
    modulus = _parse_modulus(args.modulus) if args.modulus else None
    try:
        return make_field(args.p, args.m, modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write_output(text: str, out_path):
    """Write atomically when a path is given, else print to stdout."""
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lirg-")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _add_common(sub, seed=False):
    sub.add_argument("--n", type=int, required=True, help="matrix dimension")
    sub.add_argument("--p", type=int, required=True, help="field characteristic")
    sub.add_argument("--m", type=int, default=1, help="extension degree")
    sub.add_argument(
        "--modulus",
        default=None,
        help="comma separated modulus coefficients, low to high",
    )
    sub.add_argument("--cap", type=int, default=DEFAULT_VERTEX_CAP, help="vertex cap")
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    if seed:
        sub.add_argument("--seed", type=int, default=0, help="PRNG seed")


def cmd_ring_info(args) -> int:
    F = _field(args)
    rep = counting.count_report(args.n, F.q)
    lines = [f"ring-info {serialize.field_tokens(args.n, F)}"]
    lines.append(
        f"{'rank':>4} {'subspaces':>12} {'fiber':>14} {'matrices':>16}"
    )
    for r in range(args.n + 1):
        lines.append(
            f"{r:>4} {rep.subspace_counts[r]:>12} {rep.fiber_sizes[r]:>14} "
            f"{rep.rank_class_sizes[r]:>16}"
        )
    lines.append(f"total matrices: {rep.total}")
    lines.append(f"|GL(n, q)|: {rep.gl_order}")
    preds = invariants.predicted_invariants(args.n, F.q)
    for key in sorted(preds):
        value = preds[key]
        lines.append(f"predicted {key}: {'n/a (n<2)' if value is None else value}")
    _write_output("\n".join(lines) + "\n", args.out)
    return 0


def cmd_build_graph(args) -> int:
    F = _field(args)
    builder = build_quotient_graph if args.quotient else build_full_graph
    if args.quotient:
        G = builder(F, args.n, cap=args.cap, directed=args.directed)
    else:
        G = builder(F, args.n, directed=args.directed, cap=args.cap)
    _write_output(serialize.render_graph(G, args.format), args.out)
    return 0


def cmd_invariants(args) -> int:
    F = _field(args)
    G = build_full_graph(F, args.n, directed=False, cap=args.cap)
    report = invariants.compute_report(G)
    preds = invariants.predicted_invariants(args.n, F.q)
    rows = []
    mismatch = False
    for key in [
        "clique_number",
        "chromatic_number",
        "girth",
        "diameter",
        "radius",
        "domination_number",
        "strong_metric_dimension",
        "eulerian",
    ]:
        computed = getattr(report, key)
        predicted = preds.get(key)
        if predicted is None:
            status = "n/a (n<2)"
        elif computed == predicted:
            status = "match"
        else:
            status = "MISMATCH"
            mismatch = True
        rows.append((key, predicted, computed, status))

    if args.format == "json-kv":
        doc = {
            "n": report.n,
            "q": report.q,
            "p": F.p,
            "m": F.m,
            "modulus": list(F.modulus),
            "eccentricity_by_rank": list(report.eccentricity_by_rank),
            "girth_witness": report.girth_witness,
            "odd_degree_witness": report.odd_degree_witness,
            "planarity_witness": report.planarity_witness,
            "match": not mismatch,
        }
        for key, predicted, computed, status in rows:
            doc[f"{key}_computed"] = computed
            doc[f"{key}_predicted"] = predicted
            doc[f"{key}_status"] = status
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"invariants {serialize.field_tokens(args.n, F)}"]
        lines.append(f"{'invariant':<26} {'predicted':>12} {'computed':>12} status")
        for key, predicted, computed, status in rows:
            pred_text = "n/a" if predicted is None else str(predicted)
            lines.append(f"{key:<26} {pred_text:>12} {str(computed):>12} {status}")
        lines.append(f"eccentricity by rank: {report.eccentricity_by_rank}")
        if report.girth_witness:
            lines.append(f"triangle witness vertices: {report.girth_witness}")
        lines.append(f"odd degree witness vertex: {report.odd_degree_witness}")
        if report.planarity_witness:
            lines.append(f"K_3,3 witness vertices: {report.planarity_witness}")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return 1 if mismatch else 0


def cmd_aut(args) -> int:
    F = _field(args)
    config = serialize.field_tokens(args.n, F)
    if args.sub == "count-quotient":
        order = aut.quotient_aut_order(F, args.n)
        _write_output(
            f"count-quotient {config}\nquotient automorphism group order: {order}\n",
            args.out,
        )
        return 0

    G = build_full_graph(F, args.n, directed=True, cap=args.cap)
    if args.sub == "sample":
        _, _, _, f = aut.random_triple(G, args.seed)
        _write_output(serialize.render_permutation(G.n, F, f.perm), args.out)
        return 0

    with open(args.perm, encoding="utf-8") as fh:
        n, F_file, perm = serialize.parse_permutation(fh.read())
    if n != args.n or F_file != F:
        raise UsageError("permutation file does not match the requested ring")
    f = aut.Automorphism(n, F, perm)

    if args.sub == "verify":
        ok, witness = aut.verify(G, f)
        if ok:
            _write_output(f"verify {config}\nautomorphism verified\n", args.out)
            return 0
        u, v = witness
        _write_output(
            f"verify {config}\n"
            f"verification failed: edge relation broken at pair ({u}, {v})\n",
            args.out,
        )
        return 1

    if args.sub == "decompose":
        ok, witness = aut.verify(G, f)
        if not ok:
            u, v = witness
            _write_output(
                f"verify {config}\n"
                f"verification failed: edge relation broken at pair ({u}, {v})\n",
                args.out,
            )
            return 1
        try:
            dec = aut.decompose(G, f)
        except aut.DecompositionError as exc:
            _write_output(f"decomposition failed: {exc}\n", args.out)
            return 1
        _write_output(serialize.render_decomposition(G, dec), args.out)
        return 0

    raise UsageError(f"unknown aut subcommand {args.sub!r}")


def cmd_aut_recompose(args) -> int:
    F = _field(args)
    G = build_full_graph(F, args.n, directed=True, cap=args.cap)
    with open(args.report, encoding="utf-8") as fh:
        dec = serialize.parse_decomposition(G, fh.read())
    f = aut.recompose(G, dec)
    _write_output(serialize.render_permutation(G.n, F, f.perm), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lirg",
        description=(
            "Left-ideal relation graphs of M_n(F_q): counting tables, graph "
            "construction, invariants and automorphisms."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("ring-info", help="counting tables and predictions")
    _add_common(s)
    s.set_defaults(func=cmd_ring_info)

    s = subs.add_parser("build-graph", help="emit the relation graph")
    _add_common(s)
    s.add_argument("--format", choices=["dot", "edges"], default="edges")
    s.add_argument("--quotient", action="store_true", help="ideal-class quotient")
    group = s.add_mutually_exclusive_group()
    group.add_argument("--directed", dest="directed", action="store_true", default=True)
    group.add_argument("--undirected", dest="directed", action="store_false")
    s.set_defaults(func=cmd_build_graph)

    s = subs.add_parser("invariants", help="predicted vs computed invariants")
    _add_common(s)
    s.add_argument("--format", choices=["text", "json-kv"], default="text")
    s.set_defaults(func=cmd_invariants)

    s = subs.add_parser("aut", help="automorphism operations")
    aut_subs = s.add_subparsers(dest="sub", required=True)

    sample = aut_subs.add_parser("sample", help="seeded random automorphism")
    _add_common(sample, seed=True)
    sample.set_defaults(func=cmd_aut)

    for name, needs_perm in [("verify", True), ("decompose", True)]:
        p = aut_subs.add_parser(name)
        _add_common(p)
        if needs_perm:
            p.add_argument("--perm", required=True, help="permutation file")
        p.set_defaults(func=cmd_aut)

    rec = aut_subs.add_parser("recompose", help="rebuild a permutation file")
    _add_common(rec)
    rec.add_argument("--report", required=True, help="decomposition file")
    rec.set_defaults(func=cmd_aut_recompose)

    cq = aut_subs.add_parser("count-quotient", help="exact quotient group order")
    _add_common(cq)
    cq.set_defaults(func=cmd_aut)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except VertexCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
