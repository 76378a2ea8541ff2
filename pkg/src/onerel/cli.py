"""Command-line interface.

Every subcommand builds a report dictionary; ``--json`` prints it as
deterministic JSON (schema 1, sorted keys, no volatile fields), otherwise a
plain-text rendering goes to stdout.  Exit status: 0 success, 1 domain or
input error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bsverify import qn_report
from .covers import FiniteQuotient, build_cover_complex, generation_check, \
    homology, weinbaum_scan
from .domains import parse_domain
from .errors import InputError, UnsupportedError
from .foxcalc import QuotientMap, fox_derivative, resolution_complex
from .graphs import Graph, NotApplicable, lift_cycle
from .groupring import GroupRingElement, engulfing_search_finite, \
    unique_products_check
from .hierarchy import build_hierarchy, number_lemma_check
from .oracles import FreeOracle, ModOracle, ZPowOracle, parse_permutation
from .presentations import load_presentation, parse_word
from .trapezoid import StaircaseCertificate, certify_diagonal, find_staircase

SCHEMA = 1


def _quotient_map(pres, args):
    if getattr(args, "abelianize", False) or pres.abelianize_requested:
        return QuotientMap.abelianization(pres)
    if getattr(args, "to_abelian", None):
        images = {}
        for chunk in args.to_abelian.split(","):
            name, value = chunk.split("=")
            images[pres.gen_index(name.strip())] = int(value)
        return QuotientMap.to_abelian(pres, images)
    if getattr(args, "quotient", None):
        images = _parse_inline_quotient(pres, args.quotient)
        return QuotientMap.permutation(pres, images)
    if pres.quotient_images is not None:
        return QuotientMap.permutation(pres)
    return QuotientMap.trivial(pres)


def _parse_inline_quotient(pres, text):
    images = {}
    chunks = []
    depth = 0
    current = ""
    for ch in text:
        if ch == "," and depth == 0:
            chunks.append(current)
            current = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        current += ch
    chunks.append(current)
    raw = {}
    for chunk in chunks:
        if not chunk.strip():
            continue
        name, perm = chunk.split("->")
        raw[name.strip()] = perm.strip()
    missing = [g for g in pres.names if g not in raw]
    if missing:
        raise InputError(f"quotient is missing images for {missing}")
    degree = max(len(parse_permutation(p)) for p in raw.values())
    for name, perm in raw.items():
        images[name] = parse_permutation(perm, degree)
    return images


def _finite_quotient(pres, args):
    if getattr(args, "quotient", None):
        return FiniteQuotient(pres, _parse_inline_quotient(pres, args.quotient))
    if pres.quotient_images is not None:
        return FiniteQuotient(pres)
    return FiniteQuotient.trivial(pres)


# -- subcommand handlers -------------------------------------------------------


def _cmd_fox(args):
    pres = load_presentation(args.file)
    w = parse_word(args.word, pres.names)
    idx = pres.gen_index(args.gen)
    d = fox_derivative(w, idx)
    return {
        "word": w.render(pres.names),
        "generator": args.gen,
        "derivative": d.render(pres.names),
    }, d.render(pres.names)


def _cmd_jacobian(args):
    pres = load_presentation(args.file)
    phi = _quotient_map(pres, args)
    comp = resolution_complex(pres, phi, parse_domain(args.ring))
    rows = comp.d2.render_rows()
    text = "\n".join(
        f"{pres.relators[i].render(pres.names)}: [" + ", ".join(row) + "]"
        for i, row in enumerate(rows))
    return {
        "quotient_kind": phi.kind,
        "rows": rows,
        "row_labels": comp.d2.row_labels,
        "col_labels": comp.d2.col_labels,
        "d1": [e.render() for e in comp.d1],
        "composite_zero": True,
    }, text or "(no relators)"


def _cmd_complex(args):
    pres = load_presentation(args.file)
    q = _finite_quotient(pres, args)
    domain = parse_domain(args.ring)
    c = build_cover_complex(pres, q, domain)
    h = homology(c)
    payload = {
        "degree": q.degree,
        "group_order": q.order,
        "transitive": q.is_transitive,
        "shape": {"d2_rows": len(c.d2), "edges": len(c.d1), "vertices": len(c.d1[0]) if c.d1 else 0},
        "composite_zero": c.composite_is_zero(),
        "homology": {
            "h0_free_rank": h.h0_free_rank, "h0_torsion": h.h0_torsion,
            "h1_free_rank": h.h1_free_rank, "h1_torsion": h.h1_torsion,
        },
        "generation_full_rows": generation_check(c, range(len(c.d2))),
    }
    if args.triplets:
        with open(args.triplets, "w", encoding="utf-8") as fh:
            fh.write(c.to_triplet_text() + "\n")
        payload["triplets_file"] = args.triplets
    text = (f"cover of degree {q.degree}, group order {q.order}\n"
            f"composite is zero: {payload['composite_zero']}\n"
            f"{h.render()}\n"
            f"full rows generate the cycle lattice: {payload['generation_full_rows']}")
    return payload, text


def _cmd_trapezoid(args):
    pres = load_presentation(args.file)
    phi = _quotient_map(pres, args)
    domain = parse_domain(args.ring)
    matrix = resolution_complex(pres, phi, domain).d2
    result = find_staircase(matrix, allow_row_permutation=not args.row_fixed,
                            cap=args.cap)
    if not isinstance(result, StaircaseCertificate):
        return {"staircase": None, "mode": result.mode,
                "reason": result.reason}, f"impossible: {result.reason}"
    payload = {"staircase": {"rows": list(result.rows), "cols": list(result.cols),
                             "diag": list(result.diag)}}
    text = result.render()
    if args.certify:
        report = certify_diagonal(matrix, result, strategy=args.certify)
        payload["diagonal"] = [
            {"status": rep.status,
             "witness": rep.witness.render() if rep.witness else None}
            for rep in report.certificates]
        payload["all_non_engulfing"] = report.all_non_engulfing
        text += f"\nall diagonal entries non-engulfing: {report.all_non_engulfing}"
    return payload, text


def _cmd_hierarchy(args):
    pres = load_presentation(args.file)
    tree = build_hierarchy(pres, max_depth=args.max_depth)

    def node_payload(node):
        out = {
            "presentation": {
                "gens": node.presentation.names,
                "rels": [w.render(node.presentation.names)
                         for w in node.presentation.relators],
            },
            "status": node.status,
            "edge": node.edge_kind,
        }
        if node.status == "free":
            out["free_rank"] = node.free_rank
        if node.status == "cyclic":
            out["cyclic_order"] = node.cyclic_order
        if node.edge_kind == "hnn":
            step = node.edge_data
            out["hnn"] = {
                "phi": list(step.phi.values),
                "window": list(step.window),
                "relator": step.relator_word.render(step.base.names),
                "stable_letter": step.stable_letter,
            }
        out["children"] = [node_payload(ch) for ch in node.children]
        return out

    return {"tree": node_payload(tree.root), "depth": tree.depth(),
            "leaves": [n.status for n in tree.leaves()]}, tree.render()


def _cmd_seqcheck(args):
    values = [int(v) for v in args.seq.split(",")]
    verdict = number_lemma_check(args.a, args.b, values)
    return {"a": args.a, "b": args.b, "seq": values,
            "verdict": verdict.kind, "index": verdict.index,
            "sum": verdict.total}, verdict.render()


def _make_oracle(spec):
    spec = spec.strip()
    if spec in ("z", "Z"):
        return ZPowOracle(1), lambda s: (int(s),)
    if spec in ("z2", "Z2"):
        return ZPowOracle(2), lambda s: tuple(int(x) for x in s.split(":"))
    if spec.startswith("mod:"):
        return ModOracle(int(spec[4:])), int
    if spec.startswith("free:"):
        names = [n.strip() for n in spec[5:].split("+")]
        oracle = FreeOracle(names)
        return oracle, lambda s: parse_word(s, names)
    raise InputError(f"unknown oracle spec {spec!r} "
                     "(use z, z2, mod:N or free:a+b)")


def _cmd_upcheck(args):
    oracle, parse = _make_oracle(args.oracle)
    A = [parse(s) for s in args.A.split(",") if s.strip()]
    B = [parse(s) for s in args.B.split(",") if s.strip()]
    report = unique_products_check(oracle, A, B, args.k, args.side)
    payload = {
        "oracle": args.oracle, "k": args.k, "side": args.side,
        "product_count": report.product_count,
        "unique_count": len(report.unique_products),
        "distinct_factor_count": report.distinct_factor_count,
        "verdict": report.verdict,
    }
    return payload, f"verdict: {report.verdict} " \
                    f"({len(report.unique_products)} uniquely represented, " \
                    f"{report.distinct_factor_count} distinct factors)"


def _cmd_engulf(args):
    if args.cyclic:
        oracle = ModOracle(args.cyclic)
        domain = parse_domain(args.field)
        coeffs = [int(c) for c in args.coeffs.split(",")]
        m = GroupRingElement(oracle, domain, list(enumerate(coeffs)))
    else:
        pres = load_presentation(args.file)
        q = _finite_quotient(pres, args)
        domain = parse_domain(args.field)
        terms = []
        for chunk in args.terms.split(";"):
            if not chunk.strip():
                continue
            word_text, _, coeff = chunk.rpartition(":")
            w = parse_word(word_text.strip(), pres.names)
            terms.append((q.image(w), int(coeff)))
        oracle = q.oracle
        m = GroupRingElement(oracle, domain, terms)
    report = engulfing_search_finite(m, side=args.side)
    payload = {
        "element": m.render(), "side": args.side, "status": report.status,
        "witness": report.witness.render() if report.witness else None,
        "kernel_dimension": report.kernel_dimension,
    }
    if report.witness:
        text = f"WitnessFound: {report.witness.render()}"
    else:
        text = f"NoneExists (solution space dimension {report.kernel_dimension})"
    return payload, text


def _cmd_weinbaum(args):
    pres = load_presentation(args.file)
    q = _finite_quotient(pres, args)
    w = pres.relators[args.relator]
    scan = weinbaum_scan(w, pres, q)
    statuses = [{"subword": s.subword.render(pres.names), "status": s.status,
                 "image": s.image} for s in scan]
    certified = sum(1 for s in scan if s.status == "NontrivialCertified")
    payload = {"relator": w.render(pres.names), "subwords": statuses,
               "certified": certified, "total": len(scan)}
    text = "\n".join(s.render(pres.names) for s in scan) + \
           f"\ncertified {certified} of {len(scan)}"
    return payload, text


def _cmd_lift(args):
    with open(args.graph, encoding="utf-8") as fh:
        graph = Graph.from_edge_list(fh.read())
    h_edges = [e.strip() for e in args.h_edges.split(",") if e.strip()]
    chain = {}
    for chunk in args.cycle.split(","):
        label, _, coeff = chunk.rpartition(":")
        chain[label.strip()] = int(coeff)
    domain = parse_domain(args.ring)
    result = lift_cycle(graph, h_edges, chain, domain)
    if isinstance(result, NotApplicable):
        return {"applicable": False, "reason": result.reason}, \
            f"not applicable: {result.reason}"
    walk = [(graph.edges[e][2], s) for e, s in result.cycle_walk]
    payload = {
        "applicable": True,
        "cycle": [[lab, s] for lab, s in walk],
        "unit": str(result.unit),
        "k_coefficients": [str(c) for c in result.k_coefficients],
        "verified": result.verified,
    }
    text = ("embedded cycle: " +
            " ".join(lab if s > 0 else f"{lab}^-1" for lab, s in walk) +
            f"\nunit: {result.unit}\nre-verified: {result.verified}")
    return payload, text


def _cmd_verify_example(args):
    report = qn_report(args.n)
    text = (f"{report['relator']}  =>  {report['rearranged']}\n"
            f"{report['identity']}: {report['verdict']}")
    return report, text


def build_parser():
    parser = argparse.ArgumentParser(
        prog="onerel",
        description="Exact computations for one-relator presentations")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, file_required=True):
        if file_required:
            p.add_argument("--file", required=True, help="presentation file")
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--ring", default="Z", help="coefficient domain (Z, Q, p)")

    p = sub.add_parser("fox", help="Fox derivative of a word")
    common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--gen", required=True)

    p = sub.add_parser("jacobian", help="derivative matrix of the relators")
    common(p)
    p.add_argument("--abelianize", action="store_true")
    p.add_argument("--to-abelian", help="explicit Z images, e.g. a=3,b=2")
    p.add_argument("--quotient", help="inline permutation images")

    p = sub.add_parser("complex", help="finite-cover chain complex and homology")
    common(p)
    p.add_argument("--quotient", help="inline permutation images")
    p.add_argument("--triplets", help="write matrices as sparse triplets")

    p = sub.add_parser("trapezoid", help="staircase search on the derivative matrix")
    common(p)
    p.add_argument("--abelianize", action="store_true")
    p.add_argument("--to-abelian")
    p.add_argument("--quotient")
    p.add_argument("--row-fixed", action="store_true")
    p.add_argument("--cap", type=int, default=12)
    p.add_argument("--certify", choices=["orderedOracle", "finiteSearch"])

    p = sub.add_parser("hierarchy", help="iterated splitting tree")
    common(p)
    p.add_argument("--max-depth", type=int, default=None)

    p = sub.add_parser("seqcheck", help="coprime-pair sequence alternative")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--seq", required=True, help="comma-separated values")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("upcheck", help="k-unique-products check")
    p.add_argument("--oracle", required=True, help="z, z2, mod:N or free:a+b")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--side", choices=["plain", "left", "right"], default="plain")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("engulf", help="finite engulfing-witness search")
    p.add_argument("--file")
    p.add_argument("--quotient")
    p.add_argument("--terms", help="word:coeff pairs separated by ;")
    p.add_argument("--cyclic", type=int, help="use Z/n with --coeffs")
    p.add_argument("--coeffs", help="coefficients of 1, g, g^2, ...")
    p.add_argument("--field", default="Q", help="Q or a prime p")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("weinbaum", help="certify proper subwords nontrivial")
    common(p)
    p.add_argument("--quotient")
    p.add_argument("--relator", type=int, default=0)

    p = sub.add_parser("lift", help="embedded-cycle lifting in a graph")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--h-edges", required=True, help="designated edge labels")
    p.add_argument("--cycle", required=True, help="label:coeff pairs")
    p.add_argument("--ring", default="Z")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify-example", help="commutator-power matrix identity")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")

    return parser


_HANDLERS = {
    "fox": _cmd_fox,
    "jacobian": _cmd_jacobian,
    "complex": _cmd_complex,
    "trapezoid": _cmd_trapezoid,
    "hierarchy": _cmd_hierarchy,
    "seqcheck": _cmd_seqcheck,
    "upcheck": _cmd_upcheck,
    "engulf": _cmd_engulf,
    "weinbaum": _cmd_weinbaum,
    "lift": _cmd_lift,
    "verify-example": _cmd_verify_example,
}


def dispatch(argv):
    """Run one subcommand; returns (exit status, report dict, text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        payload, text = handler(args)
    except (InputError, UnsupportedError, OSError) as exc:
        return 1, {"schema": SCHEMA, "command": args.command,
                   "error": str(exc)}, f"error: {exc}"
    report = {"schema": SCHEMA, "command": args.command, "results": payload}
    return 0, report, text


def render(report, fmt="text", text=""):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, separators=(",", ": "),
                          indent=1) + "\n"
    return text + "\n"


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    status, report, text = dispatch(argv)
    wants_json = "--json" in argv
    out = render(report, "json" if wants_json else "text", text)
    stream = sys.stdout if status == 0 else sys.stderr
    stream.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
