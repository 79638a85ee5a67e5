"""Command line entry point ``srplab``.

Exit status: 0 on success, 1 when ``--expect holds`` meets a FAILS verdict
(or a fixture fails under ``papercheck``), 2 on usage or input errors and 3
when an internal consistency tripwire fires.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import cone, hypersurface, ideals, lattice, regression, srp
from .errors import ContradictionWithPaper, NonMonotoneVerdicts, PropagationFailed, SrpLabError
from .semigroup import parse_generators


def _emit(args, payload: dict, plain: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(plain)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _box(text: str) -> tuple[int, int]:
    try:
        a, h = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A,H for --box, got {text!r}") from None
    if a < 0 or h < 0:
        raise argparse.ArgumentTypeError("box bounds must be nonnegative")
    return a, h


# -- subcommands -----------------------------------------------------------


def cmd_semigroup(args) -> int:
    H = parse_generators(args.gens)
    info = H.info(args.limit)
    plain = "\n".join([
        f"H = <{', '.join(map(str, H.generators))}>",
        f"frobenius {H.frobenius}",
        f"genus {H.genus}",
        f"gaps {info['gaps']}",
        f"apery({H.multiplicity}) {info['apery_set']['elements']}",
        "ord " + " ".join(f"{h}:{o}" for h, o in info["ord_table"].items()),
    ])
    _emit(args, info, plain)
    return 0


def cmd_cone(args) -> int:
    H = parse_generators(args.gens)
    rep = cone.tangent_cone_cm(H, args.limit)
    soc = cone.socle_degrees(H, args.socle_degree)
    slices = [cone.hilbert_slice(H, k) for k in range(args.slices + 1)]
    payload = {"cone": rep.to_dict(), "socle": soc.to_dict(), "hilbert_slices": slices}
    if rep.is_cm_certified:
        status = f"Cohen-Macaulay (checked up to {rep.cm_up_to})"
    else:
        status = f"not Cohen-Macaulay, witness h={rep.failure_witness}"
    plain = "\n".join([
        f"tangent cone: {status}",
        f"depth G(k[H]) = {rep.depth_tangent_cone}, depth G(k[[s,t^H]]) = {rep.depth_with_s}",
        f"socle entries (degree, h) up to degree {soc.max_degree}: "
        + (", ".join(f"({e.degree}, {e.witness})" for e in soc.entries) or "none"),
        f"hilbert slices {slices}",
    ])
    _emit(args, payload, plain)
    return 0


def _ideal_from(args, H, text: Optional[str], power: Optional[int]) -> ideals.StaircaseIdeal:
    if power is not None:
        return ideals.power_of_max(H, power, args.model)
    if text is None:
        raise SrpLabError("give --monomials or --power")
    return ideals.normalize(H, ideals.parse_monomials(text), args.model)


def cmd_ideal(args) -> int:
    H = parse_generators(args.gens)
    I = _ideal_from(args, H, args.monomials, args.power)
    op = args.op
    extra = {}
    if op == "mu":
        result = ideals.mu(I, check=True)
    elif op == "ll":
        result = ideals.loewy_length(I)
    elif op == "ord":
        result = ideals.order(I)
    elif op == "e":
        result = ideals.multiplicity(I)
    elif op == "mfull":
        result = ideals.mfull_via_s(I)
    elif op == "rr":
        rr = ideals.ratliff_rush(I, cap=args.cap)
        result = rr.ideal.to_text()
        extra = {"certified": rr.certified, "certificate": rr.certificate, "steps": rr.steps}
    elif op == "ic":
        result = ideals.integral_closure(I).to_text()
    else:  # colon
        if args.by is None:
            raise SrpLabError("colon needs --by MONOMIALS")
        J = ideals.normalize(H, ideals.parse_monomials(args.by), args.model)
        result = ideals.colon(I, J).to_text()
        extra = {"by": J.to_text()}
    payload = {"generators": list(H.generators), "model": args.model, "ideal": I.to_text(),
               "op": op, "result": result, **extra}
    plain = f"{op}({I}) = {result}" + "".join(f"\n{k}: {v}" for k, v in extra.items())
    _emit(args, payload, plain)
    return 0


def _bounds(args) -> srp.Bounds:
    return srp.Bounds(cone_limit=args.cone_limit, box=args.box, candidate_cap=args.candidate_cap)


def cmd_srp(args) -> int:
    H = parse_generators(args.gens)
    rep = srp.srp_threshold(H, args.max_power, _bounds(args), args.model)
    lines = [f"H = <{', '.join(map(str, H.generators))}>"]
    for v in rep.verdicts:
        line = f"l={v.power}  {v.status.value:<7} {v.reason.value:<16} mu(m^l)={v.mu_power}"
        if v.witness is not None:
            line += f"  witness {v.witness}"
        lines.append(line)
    lines.append(f"threshold: {rep.describe()}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    if args.expect == "holds" and any(v.status == srp.Status.FAILS for v in rep.verdicts):
        return 1
    return 0


def cmd_dao(args) -> int:
    H = parse_generators(args.gens)
    extra = [ideals.normalize(H, ideals.parse_monomials(t)) for t in args.monomials or []]
    rows = srp.dao_check(H, args.max_power, extra)
    head = f"{'ideal':<24} {'mu':>4} {'ll':>4} {'ord':>4} {'e':>6} {'fwd':>6} {'rev':>6} {'closed':>7}"
    lines = [head] + [
        f"{r.label:<24} {r.mu:>4} {r.loewy_length:>4} {r.order:>4} {r.e:>6} {r.forward_gap:>6} "
        f"{r.reverse_gap:>6} {'' if r.closed_form_gap is None else r.closed_form_gap:>7}"
        for r in rows
    ]
    lines.append(f"maximal embedding dimension: {srp.med_check(H)}")
    payload = {"generators": list(H.generators), "rows": [r.to_dict() for r in rows],
               "maximal_embedding_dimension": srp.med_check(H)}
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_pgcheck(args) -> int:
    rep = srp.ordinary_point_check(args.ordinary_genus, args.max_power)
    plain = "\n".join([
        f"H = <{', '.join(map(str, rep.generators))}>",
        "valuation staircase = m^n: " + " ".join(f"n={n}:{ok}" for n, ok in enumerate(rep.valuation_matches, 1)),
        f"m^2 = Q m: {rep.square_is_reduction}",
        f"maximal embedding dimension: {rep.maximal_embedding_dimension}",
    ])
    _emit(args, rep.to_dict(), plain)
    return 0 if rep.all_pass else 1


def _load_graph(args) -> lattice.DualGraph:
    if args.named:
        return lattice.named_graph(args.named)
    if args.file is None:
        raise SrpLabError("give a graph file or --named")
    try:
        return lattice.DualGraph.from_json(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise SrpLabError(f"cannot read graph {args.file}: {exc}") from None


def cmd_graph(args) -> int:
    g = lattice.validate_graph(_load_graph(args))
    M = lattice.fundamental_cycle(g)
    rational = lattice.is_rational(g)
    payload = {
        "graph": g.to_dict(),
        "fundamental_cycle": list(M),
        "pa_M": g.pa(M),
        "rational": rational,
        "minimal": g.is_minimal,
        "bound": args.bound,
        "box": [args.bound * max(M)] * len(g),
    }
    lines = [f"M = {list(M)}  p_a(M) = {g.pa(M)}  rational: {rational}  minimal: {g.is_minimal}"]
    if rational:
        rows = lattice.dao_gap_scan(g, args.bound)
        payload["gaps"] = [r.to_dict() for r in rows]
        lines.append(f"{len(rows)} anti-nef cycles with M <= Z <= {args.bound * max(M)} componentwise")
        lines += [f"  Z={list(r.Z)} mu={r.mu} e={r.e} ll={r.ll} ord={r.ord} fwd={r.forward_gap} rev={r.reverse_gap}"
                  for r in rows]
    else:
        cycles = lattice.enumerate_antinef(g, args.bound)
        payload["cycles"] = [list(Z) for Z in cycles]
        lines.append(f"{len(cycles)} anti-nef cycles; gaps need a rational graph")
    if args.candidates:
        cands = lattice.srp_candidate_search(g, args.bound)
        payload["candidates"] = [list(Z) for Z in cands]
        lines.append("minimal-resolution SRP candidates: " + (", ".join(str(list(Z)) for Z in cands) or "none"))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_hyper(args) -> int:
    spec = hypersurface.HypersurfaceSpec(args.dim, args.deg)
    rep = hypersurface.required_constant(spec, args.smax)
    payload = rep.to_dict(with_values=args.values)
    lo, hi = rep.window
    plain = "\n".join([
        f"d={spec.d} n={spec.n} s<={args.smax}",
        f"mu(m^s) at s={args.smax}: {hypersurface.hilbert_mu(spec, args.smax)}",
        f"sup c(s) = {rep.supremum} (first at s={rep.attained_at})",
        f"strictly increasing on [{lo}, {hi}]: {rep.divergent}",
    ])
    _emit(args, payload, plain)
    return 0


def cmd_papercheck(args) -> int:
    results = regression.run_all()
    payload = {"results": [{"name": n, "passed": ok, "detail": d} for n, ok, d in results]}
    plain = "\n".join(f"{'PASS' if ok else 'FAIL'}  {n:<24} {d}" for n, ok, d in results)
    _emit(args, payload, plain)
    return 0 if all(ok for _, ok, _ in results) else 1


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, default):
        # defaults are SUPPRESSed on subcommands so a flag given before the
        # subcommand is not reset by the subparser
        parser.add_argument("--json", action="store_true", default=default(False), help="emit deterministic JSON")
        parser.add_argument("--threads", type=_positive, default=default(1),
                            help="worker cap (computations currently run on one thread)")

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, lambda value: argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="srplab", description="Strong Rees property laboratory")
    global_flags(p, lambda value: value)
    sub = p.add_subparsers(dest="command", required=True)

    def gens(sp):
        sp.add_argument("--gens", required=True, help="semigroup generators, e.g. 4,5,11")

    sp = sub.add_parser("semigroup", parents=[common], help="Frobenius number, genus, Apery set, ord table")
    gens(sp)
    sp.add_argument("action", choices=["info"], nargs="?", default="info")
    sp.add_argument("--limit", type=_positive, help="largest h in the ord table")
    sp.set_defaults(func=cmd_semigroup)

    sp = sub.add_parser("cone", parents=[common], help="tangent cone CM test, socle degrees, Hilbert slices")
    gens(sp)
    sp.add_argument("--limit", type=_positive)
    sp.add_argument("--socle-degree", type=_positive, default=4)
    sp.add_argument("--slices", type=_positive, default=6)
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("ideal", parents=[common], help="operations on a monomial ideal")
    gens(sp)
    sp.add_argument("op", choices=["mu", "ll", "ord", "rr", "ic", "e", "colon", "mfull"])
    sp.add_argument("--monomials", help='generators, e.g. "s^2; s*t^4; t^8"')
    sp.add_argument("--power", type=_positive, help="use m^POWER instead of --monomials")
    sp.add_argument("--by", help="divisor ideal for colon")
    sp.add_argument("--model", choices=ideals.MODELS, default=ideals.SEMIGROUP_RING)
    sp.add_argument("--cap", type=_positive, default=6, help="Ratliff-Rush iteration cap")
    sp.set_defaults(func=cmd_ideal)

    sp = sub.add_parser("srp", parents=[common], help="verdicts for m^l, l = 1..max-power")
    gens(sp)
    sp.add_argument("--max-power", type=_positive, required=True)
    sp.add_argument("--box", type=_box, help="scan box A,H for the monomial falsifier")
    sp.add_argument("--cone-limit", type=_positive)
    sp.add_argument("--candidate-cap", type=_positive, default=5000)
    sp.add_argument("--model", choices=ideals.MODELS, default=ideals.SEMIGROUP_RING)
    sp.add_argument("--expect", choices=["holds"], help="exit 1 if any verdict is FAILS")
    sp.set_defaults(func=cmd_srp)

    sp = sub.add_parser("dao", parents=[common], help="forward and reverse Dao gaps")
    gens(sp)
    sp.add_argument("--max-power", type=int, default=5)
    sp.add_argument("--monomials", action="append", help="extra ideal; may be repeated")
    sp.set_defaults(func=cmd_dao)

    sp = sub.add_parser("pgcheck", parents=[common], help="ordinary point checks for <g+1..2g+1>")
    sp.add_argument("--ordinary-genus", type=int, required=True)
    sp.add_argument("--max-power", type=_positive, default=6)
    sp.set_defaults(func=cmd_pgcheck)

    sp = sub.add_parser("graph", parents=[common], help="resolution dual graphs")
    gsub = sp.add_subparsers(dest="graph_command", required=True)
    ga = gsub.add_parser("analyze", parents=[common], help="fundamental cycle, anti-nef cycles, gaps")
    ga.add_argument("file", nargs="?", help='JSON {"vertices":[{"self":-2,"genus":0}],"edges":[[0,1]]}')
    ga.add_argument("--named", help="built-in graph: " + ", ".join(sorted(lattice.NAMED_GRAPHS)))
    ga.add_argument("--bound", type=_positive, default=3)
    ga.add_argument("--candidates", action="store_true", help="run the SRP candidate search")
    ga.set_defaults(func=cmd_graph)

    sp = sub.add_parser("hyper", parents=[common], help="hypersurface Hilbert function constants")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--smax", type=_positive, required=True)
    sp.add_argument("--values", action="store_true", help="include every c(s) in JSON output")
    sp.set_defaults(func=cmd_hyper)

    sp = sub.add_parser("papercheck", parents=[common], help="replay the reference fixtures")
    sp.set_defaults(func=cmd_papercheck)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContradictionWithPaper, NonMonotoneVerdicts, PropagationFailed) as exc:
        print(f"srplab: internal consistency check failed: {exc}", file=sys.stderr)
        return 3
    except (SrpLabError, ValueError) as exc:
        print(f"srplab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
