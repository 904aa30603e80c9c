"""Command-line front end.

Every command takes --json for machine output.  Exit codes: 0 for a
computed verdict or successful verification, 1 for a verification failure
(table mismatch, data tampering), 2 for usage errors.  All rationals are
printed as num/den strings, never as floats.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import certificates, dualgraph, defect as defect_mod, isolating, tower, wps
from .poly import Jet, MPoly, PolyError, format_rational, parse_poly


def _emit(payload: dict, as_json: bool, lines=None):
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in (lines if lines is not None else
                     [f"{k}: {v}" for k, v in payload.items()]):
            print(line)


def _load_catalogue(args):
    if args.data:
        digest = wps.data_digest(args.data)
        if digest != wps.FAMILIES_SHA256:
            print(f"warning: {args.data} does not match the shipped data "
                  "manifest; verifying row by row", file=sys.stderr)
        return wps.load_families(args.data, verify_hash=False)
    return wps.load_families()


def _find_family(catalogue, fid: int, kind: str | None):
    kinds = [kind] if kind else ["hyp", "wci2"]
    for k in kinds:
        if fid in catalogue[k]:
            return catalogue[k][fid]
    raise wps.WpsError(f"no family with id {fid}" + (f" of kind {kind}" if kind else ""))


# -- tables -------------------------------------------------------------------

def cmd_tables_verify(args) -> int:
    catalogue = _load_catalogue(args)
    failures = []
    results = []
    for kind in ("hyp", "wci2"):
        for fid, fam in sorted(catalogue[kind].items()):
            problems = []
            k3 = wps.anticanonical_cube(fam)
            if k3 != fam.k3:
                problems.append(f"k3 stored {format_rational(fam.k3)} "
                                f"!= computed {format_rational(k3)}")
            if not wps.index_one_identity(fam):
                problems.append("index-1 identity fails")
            if kind == "hyp":
                case = wps.classify_case(fam)
                if case != fam.case:
                    problems.append(f"case stored '{fam.case}' != computed '{case}'")
            status = "PASS" if not problems else "FAIL"
            results.append({"family": fid, "kind": kind, "status": status,
                            "problems": problems})
            if problems:
                failures.append((kind, fid, problems))
    lines = [f"{r['status']} {r['kind']} family {r['family']}"
             + (f": {'; '.join(r['problems'])}" if r['problems'] else "")
             for r in results]
    _emit({"results": results, "failures": len(failures)}, args.json, lines)
    return 1 if failures else 0


def cmd_tables_list(args) -> int:
    catalogue = _load_catalogue(args)
    rows = []
    for kind in ("hyp", "wci2"):
        for fid, fam in sorted(catalogue[kind].items()):
            rows.append({
                "family": fid, "kind": kind,
                "weights": list(fam.weights.weights),
                "degrees": list(fam.degrees),
                "k3": format_rational(fam.k3),
                "case": fam.case,
            })
    lines = [f"{r['kind']:4} {r['family']:3} weights={r['weights']} "
             f"degrees={r['degrees']} k3={r['k3']} case={r['case'] or '-'}"
             for r in rows]
    _emit({"families": rows}, args.json, lines)
    return 0


def cmd_k3(args) -> int:
    fam = _find_family(_load_catalogue(args), args.id, args.kind)
    value = wps.anticanonical_cube(fam)
    _emit({"family": fam.id, "kind": fam.kind, "k3": format_rational(value)},
          args.json, [format_rational(value)])
    return 0


def cmd_classify_case(args) -> int:
    catalogue = _load_catalogue(args)
    fam = _find_family(catalogue, args.id, "hyp")
    case = wps.classify_case(fam)
    _emit({"family": fam.id, "case": case,
           "symbol": wps.CASE_SYMBOLS[case]}, args.json,
          [case or "(blank)"])
    return 0


def cmd_isolate(args) -> int:
    fam = _find_family(_load_catalogue(args), args.id, args.kind)
    report = isolating.exclusion_report(fam, args.point_kind)
    _emit(report, args.json)
    return 0


# -- tower ---------------------------------------------------------------------

def _parse_edges(text: str):
    edges = []
    if text:
        for chunk in text.split(","):
            j, _, i = chunk.strip().partition(">")
            edges.append((int(j), int(i)))
    return edges


def cmd_tower_analyze(args) -> int:
    g = tower.TowerGraph(args.n, _parse_edges(args.edges or ""), args.k,
                         args.l if args.l is not None else args.n)
    p = tower.path_counts(g)
    s = tower.sigmas(g)
    factor = tower.two_n_squared_factor(s)
    payload = {
        "p": list(p),
        "sigma": [s.s0, s.s1, s.s2],
        "discrepancy": s.discrepancy,
        "factor": format_rational(factor),
    }
    _emit(payload, args.json)
    return 0


def cmd_tower_kawakita(args) -> int:
    value = tower.kawakita_factor(args.s, args.t)
    payload = {"factor": format_rational(value), "crosscheck": "ok"}
    _emit(payload, args.json)
    return 0


def cmd_tower_corti(args) -> int:
    g = tower.TowerGraph(args.n_blowups, _parse_edges(args.edges or ""),
                         args.k, args.l if args.l is not None else args.n_blowups)
    gammas = [Fraction(x) for x in args.gammas.split(",")] if args.gammas else []
    kjs = [int(x) for x in args.kjs.split(",")] if args.kjs else []
    nufs = [Fraction(x) for x in args.nufs.split(",")] if args.nufs else []
    mults = [Fraction(x) for x in args.mult_zj.split(",")] if args.mult_zj else []
    if not len(gammas) == len(kjs) == len(nufs) == len(mults):
        raise tower.TowerError("surface flag lists must have equal lengths")
    surfaces = [tower.CortiSurface(gm, kj, nf, mz)
                for gm, kj, nf, mz in zip(gammas, kjs, nufs, mults)]
    inst = tower.CortiInstance(g, Fraction(args.qet), Fraction(args.mult_zh),
                               tuple(surfaces))
    m0 = [Fraction(x) for x in args.m0.split(",")] if args.m0 else None
    report = tower.corti_check(inst, m0)
    payload = {
        "t": [format_rational(c.t) for c in report.t],
        "on_surface": [c.on_surface for c in report.t],
        "lhs": format_rational(report.lhs),
        "rhs": format_rational(report.rhs),
        "holds": report.holds,
    }
    if report.premise_chain is not None:
        payload["premise_chain"] = list(report.premise_chain)
    _emit(payload, args.json)
    return 0


# -- dualgraph -----------------------------------------------------------------

def cmd_dualgraph_classify(args) -> int:
    flags = dualgraph.GermFlags(
        args.sing, args.m,
        None if args.ell is None else bool(args.ell),
        None if args.alpha2 is None else bool(args.alpha2))
    t = dualgraph.classify_germ(flags)
    payload = {"type": str(t),
               "correction": format_rational(dualgraph.correction_term(t))}
    _emit(payload, args.json)
    return 0


def _parse_points(text: str):
    points = []
    for chunk in text.split(","):
        parts = chunk.strip().split(":")
        if len(parts) < 2:
            raise dualgraph.DualGraphError(
                f"bad point spec {chunk!r}; use sing:m or sing:m:n.k")
        sing, m = parts[0], int(parts[1])
        if len(parts) >= 3:
            n, k = parts[2].split(".")
            gt = dualgraph.GraphType(int(n), int(k))
        else:
            # conservative default: the admissible type of largest correction
            gt = max(dualgraph.admissible_types(sing, m),
                     key=dualgraph.correction_term)
        points.append(dualgraph.CurvePoint(sing, m, gt))
    return points


def cmd_dualgraph_exclude(args) -> int:
    cfg = dualgraph.CurveConfig(_parse_points(args.points))
    report = dualgraph.exclusion_verdict(cfg)
    payload = {
        "points": [f"{p.singularity}:m={p.contact}:{p.graph_type}"
                   for p in cfg.points],
        "gamma_squared": format_rational(report.gamma_squared),
        "gamma_dot_delta": format_rational(report.gamma_dot_delta),
        "excluded": report.excluded,
    }
    _emit(payload, args.json)
    return 0


def cmd_dualgraph_worst_case(args) -> int:
    worst = dualgraph.enumerate_worst_case()
    payload = {
        "max_correction": format_rational(worst.maximum),
        "attained_by": [f"{p.singularity}:m={p.contact}:{p.graph_type}"
                        for p in worst.attained_by.points],
    }
    _emit(payload, args.json)
    return 0


# -- defect --------------------------------------------------------------------

def _jet_from_json(spec: dict, coords) -> Jet:
    chart = int(spec["chart"])
    arc = {}
    var_names = list(defect_mod.P3_VARS)
    for var, text in spec.get("arc", {}).items():
        idx = var_names.index(var)
        p = parse_poly(text, ["s"])
        if p.coefficient((0,)) != 0:
            raise defect_mod.DefectError("arc components must vanish at s=0")
        if p.total_degree() > 2:
            raise defect_mod.DefectError("arcs are truncated at degree 2")
        arc[idx if idx < chart else idx - 1] = (p.coefficient((1,)),
                                                p.coefficient((2,)))
    base = [Fraction(c) for c in coords]
    scale = base[chart]
    if scale == 0:
        raise defect_mod.DefectError("jet chart coordinate vanishes at the point")
    affine = tuple(b / scale for i, b in enumerate(base) if i != chart)
    return Jet(chart, affine, arc, spec.get("certified_order"))


def load_branch_config(path: str) -> defect_mod.BranchConfig:
    with open(path) as fh:
        raw = json.load(fh)
    r = int(raw["r"])
    branch = parse_poly(raw["branch"], list(defect_mod.P3_VARS))
    points = []
    for p in raw["points"]:
        coords = [Fraction(c) for c in p["coords"]]
        direction = None
        if "direction" in p:
            direction = _jet_from_json(p["direction"], coords)
        points.append(defect_mod.BranchSingularPoint(coords, int(p["type"]),
                                                     direction))
    return defect_mod.BranchConfig(r, branch, points)


def cmd_defect_compute(args) -> int:
    cfg = load_branch_config(args.config)
    report = defect_mod.defect(cfg)
    _emit(report.to_json(), args.json)
    return 0


def cmd_defect_screen(args) -> int:
    types = [int(x) for x in args.types.split(",")] if args.types else []
    report = defect_mod.screen(types, args.r)
    payload = report.to_json()
    payload["passes_screen"] = report.factorial
    del payload["factorial"]
    _emit(payload, args.json)
    return 0


# -- exclude -------------------------------------------------------------------

def cmd_exclude_family(args) -> int:
    fam = _find_family(_load_catalogue(args), args.id, args.kind)
    _emit(certificates.family_verdict(fam), args.json)
    return 0


def cmd_exclude_sds(args) -> int:
    _emit(certificates.sds_verdict(args.solid_kind), args.json)
    return 0


def cmd_exclude_dp(args) -> int:
    lambdas = [Fraction(x) for x in args.lambdas.split(",")]
    inst = certificates.DPInstance(Fraction(args.qet), Fraction(args.m), lambdas)
    _emit(certificates.dp_contradiction(inst).to_json(), args.json)
    return 0


# -- parse ----------------------------------------------------------------------

def cmd_parse(args) -> int:
    vars = args.vars.split(",")
    p = parse_poly(args.expression, vars)
    payload = {
        "canonical": str(p),
        "terms": {" ".join(f"{v}^{e}" for v, e in zip(vars, exps) if e) or "1":
                  format_rational(c)
                  for exps, c in sorted(p.terms.items())},
    }
    _emit(payload, args.json, [str(p)])
    return 0


# -- wiring ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="birigid",
        description="Exact verification toolkit for maximal-center exclusion "
                    "arithmetic on Fano threefolds and double solids.")
    ap.add_argument("--data", help="override the family data file")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for commands that draw generic members")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(parser, name, fn, **kwargs):
        p = parser.add_parser(name, **kwargs)
        p.add_argument("--json", action="store_true", help="machine output")
        p.set_defaults(fn=fn)
        return p

    tables = sub.add_parser("tables", help="catalogue checks")
    tsub = tables.add_subparsers(dest="subcommand", required=True)
    add(tsub, "verify", cmd_tables_verify,
        help="recompute every table row and compare")
    add(tsub, "list", cmd_tables_list, help="print the catalogue")

    p = add(sub, "k3", cmd_k3, help="anticanonical cube of a family")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--kind", choices=["hyp", "wci2"])

    p = add(sub, "classify-case", cmd_classify_case,
            help="case mark of a hypersurface family")
    p.add_argument("--id", type=int, required=True)

    p = add(sub, "isolate", cmd_isolate,
            help="isolating-degree exclusion report for a family")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--kind", choices=["hyp", "wci2"])
    p.add_argument("--point-kind", choices=["smooth", "cA1"], default="cA1")

    tow = sub.add_parser("tower", help="blow-up tower arithmetic")
    towsub = tow.add_subparsers(dest="subcommand", required=True)
    p = add(towsub, "analyze", cmd_tower_analyze,
            help="path counts, sigma partition and the multiplier factor")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edges", help='extra edges "3>1,4>2" (chain edges implied)')
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int)
    p = add(towsub, "kawakita", cmd_tower_kawakita,
            help="weighted blow-up multiplier with chain cross-check")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p = add(towsub, "corti", cmd_tower_corti,
            help="surface-weighted multiplicity inequality")
    p.add_argument("--n-blowups", type=int, required=True)
    p.add_argument("--edges")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--qet", required=True, help="quasi-effective threshold n")
    p.add_argument("--mult-zh", required=True)
    p.add_argument("--gammas")
    p.add_argument("--kjs")
    p.add_argument("--nufs")
    p.add_argument("--mult-zj")
    p.add_argument("--m0", help="optional m_{0,i} premise data, L values")

    dg = sub.add_parser("dualgraph", help="extended dual graph arithmetic")
    dgsub = dg.add_subparsers(dest="subcommand", required=True)
    p = add(dgsub, "classify", cmd_dualgraph_classify,
            help="germ classification from flags")
    p.add_argument("--sing", choices=["cA1", "cA2"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ell", type=int, choices=[0, 1])
    p.add_argument("--alpha2", type=int, choices=[0, 1])
    p = add(dgsub, "exclude", cmd_dualgraph_exclude,
            help="degree-1 curve exclusion from a point configuration")
    p.add_argument("--points", required=True,
                   help='e.g. "cA2:1,cA2:1,cA2:1" or "cA1:3:5.3"')
    add(dgsub, "worst-case", cmd_dualgraph_worst_case,
        help="maximal correction over admissible configurations")

    df = sub.add_parser("defect", help="double solid factoriality")
    dfsub = df.add_subparsers(dest="subcommand", required=True)
    p = add(dfsub, "compute", cmd_defect_compute,
            help="defect of a branch configuration file")
    p.add_argument("--config", required=True)
    p = add(dfsub, "screen", cmd_defect_screen,
            help="necessary condition count vs section space dimension")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--types", required=True, help="comma list of A_m indices")

    ex = sub.add_parser("exclude", help="assembled verdicts")
    exsub = ex.add_subparsers(dest="subcommand", required=True)
    p = add(exsub, "family", cmd_exclude_family,
            help="full per-center report for a catalogued family")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--kind", choices=["hyp", "wci2"])
    p = add(exsub, "sds", cmd_exclude_sds, help="sextic double solid certificate")
    p.add_argument("--solid-kind", choices=["cA1", "cA1+cA2"], default="cA1")
    p = add(exsub, "dp", cmd_exclude_dp,
            help="degree-1 fibration contradiction arithmetic")
    p.add_argument("--n", dest="qet", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--lambdas", required=True)

    p = add(sub, "parse", cmd_parse, help="parse and canonicalize a polynomial")
    p.add_argument("--vars", required=True, help="comma-separated variables")
    p.add_argument("expression")

    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.fn(args)
    except (PolyError, wps.WpsError, isolating.IsolatingError,
            tower.TowerError, dualgraph.DualGraphError,
            defect_mod.DefectError, certificates.CertificateError,
            OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
