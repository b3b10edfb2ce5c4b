"""Command-line front end.

    tautrel verify --d 5 --chi 1 [--chi2 2] [--mode symbolic]
    tautrel decide --d 5 --chi1 1 --chi2 2
    tautrel sweep --dmin 5 --dmax 8 [--jobs N]
    tautrel emit --what {relations,matrices,verdicts} --d 5 --chi 1 \
                 --out PATH [--format {json,text}]

Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 usage or IO
error.  TAUTREL_FIXTURES overrides the golden-file directory used by
the test suite.
"""

from __future__ import annotations

import argparse
import json
import math
import multiprocessing
import os
import sys
import time

from .obstruction import NotCoprime, congruent, coprime_pairs, decide
from .rat import Rat
from .relations import build_relation_set, det1_formula, det2_formula, verify_rank12
from .report import Report
from .truncation import (
    CheckpointMismatch,
    checkpoint_reference_M,
    matrices_M,
    matrices_N,
    truncation_block,
)

USAGE_ERROR = 2
MATH_ERROR = 1


def _coprime_chis(d: int) -> list:
    return [c for c in range(1, d) if math.gcd(c, d) == 1]


def _verify_pair(report: Report, d: int, chi: int) -> None:
    from .obstruction import analyze_node, cubic_det

    rel = build_relation_set(d, chi)
    loc = f"d={d},chi={chi}"
    report.add("det1_formula", rel.det1 == det1_formula(d, chi),
               det1_formula(d, chi), rel.det1, loc)
    report.add("det2_formula", rel.det2 == det2_formula(d),
               det2_formula(d), rel.det2, loc)
    try:
        rep = checkpoint_reference_M(d, chi, rel)
        report.add("reference_matrices", rep["entries_checked"] == 27, 27,
                   rep["entries_checked"], loc)
    except CheckpointMismatch as e:
        report.add("reference_matrices", False, "27/27 entries", str(e), loc)
    ok, trace = verify_rank12(d, chi, rel)
    report.add("rank12", ok, 12, trace["rank"], loc)
    leads = [R.leading_term()[0] for R in rel.relations]
    expected = [((d - 1, 0), (4 - i, i - 1)) for i in (1, 2, 3)]
    report.add("echelon_leading_terms", leads == expected, expected, leads, loc)
    M = matrices_M(rel)
    cubic = cubic_det(M)
    try:
        node = analyze_node(cubic, rel.ctx.domain)
        coeff = node["coefficient"]
        want = -Rat(chi * (d - chi) * (d - 2 * chi)) / Rat(4 * (d - 2) * d * d)
        report.add("nodal_coefficient", coeff == want, want, coeff, loc)
    except Exception as e:  # NotNodal
        report.add("nodal_coefficient", False, "node at [0:0:1]", str(e), loc)
    report.add("detM1_nonzero", M[0].det() != 0, "nonzero", M[0].det(), loc)
    report.add("detM2_nonzero", M[1].det() != 0, "nonzero", M[1].det(), loc)


def _verify_triple(report: Report, d: int, chi1: int, chi2: int) -> None:
    from .obstruction import a33_coefficient_formula, solve_AB, solve_S

    rel1 = build_relation_set(d, chi1)
    rel2 = build_relation_set(d, chi2)
    M, Mp = matrices_M(rel1), matrices_M(rel2)
    loc = f"d={d},chi1={chi1},chi2={chi2}"
    for cand in solve_S("I", M, Mp):
        ab = solve_AB(cand, M, Mp)
        report.add(f"type_I_no_solution[{cand.root_label}]",
                   ab.status == "no_invertible", "no_invertible", ab.status, loc)
        fc = (ab.certificate or {}).get("forcing_coefficient")
        want = a33_coefficient_formula(d, chi1, chi2) * Rat(2, d - 4)
        got = fc.base_part() if fc is not None and fc.is_base() else fc
        report.add(f"type_I_a33_certificate[{cand.root_label}]",
                   got == want, want, got, loc)
    v = decide(d, chi1, chi2)
    report.add("verdict_matches_congruence", v.agrees,
               congruent(d, chi1, chi2), v.verdict, loc)


def _verify_symbolic(report: Report, d: int, chi: int) -> None:
    from .symbolic import SYM_FIELD, symbolic_MN, symbolic_matrices_at
    from .truncation import reference_M_templates

    Msym, _ = symbolic_MN()
    T = reference_M_templates(SYM_FIELD.gen("d"), SYM_FIELD.gen("chi1"), SYM_FIELD)
    ok = all(Msym[i][s, t] == T[i][s, t] for i in range(3) for s in range(3) for t in range(3))
    report.add("symbolic_reference_matrices", ok, "27/27 rational functions", ok)
    Me, Ne = symbolic_matrices_at(d, chi)
    rel = build_relation_set(d, chi)
    Mc, Nc = matrices_M(rel), matrices_N(rel)
    okM = all(Me[i][s, t] == Mc[i][s, t] for i in range(3) for s in range(3) for t in range(3))
    okN = all(Ne[i][s, t] == Nc[i][s, t] for i in range(3) for s in range(3) for t in range(3))
    report.add("symbolic_evaluation_matches_concrete_M", okM, True, okM)
    report.add("symbolic_evaluation_matches_concrete_N", okN, True, okN)


def cmd_verify(args) -> int:
    d_values = range(args.d, (args.dmax or args.d) + 1)
    config = {"d": args.d, "dmax": args.dmax, "chi": args.chi,
              "chi2": args.chi2, "mode": args.mode}
    report = Report("verify", config)
    t0 = time.time()
    for d in d_values:
        if d < 5:
            print(f"error: d >= 5 required for relation checkpoints (got {d})",
                  file=sys.stderr)
            return USAGE_ERROR
        chis = _coprime_chis(d) if args.chi in (None, "all") else [int(args.chi)]
        for chi in chis:
            if math.gcd(d, chi) != 1:
                print(f"error: NotCoprime: chi={chi}, d={d}", file=sys.stderr)
                return USAGE_ERROR
            if not 0 < chi < d:
                print(f"error: 0 < chi < d required (chi={chi}, d={d})",
                      file=sys.stderr)
                return USAGE_ERROR
            if args.mode == "symbolic":
                _verify_symbolic(report, d, chi)
            else:
                _verify_pair(report, d, chi)
            if args.chi2 is not None:
                if math.gcd(d, args.chi2) != 1:
                    print(f"error: NotCoprime: chi2={args.chi2}, d={d}",
                          file=sys.stderr)
                    return USAGE_ERROR
                _verify_triple(report, d, chi, args.chi2)
    report.timings["total"] = time.time() - t0
    _write_output(report.render(args.format), args.out)
    return 0 if report.passed else MATH_ERROR


def cmd_decide(args) -> int:
    config = {"d": args.d, "chi1": args.chi1, "chi2": args.chi2}
    report = Report("decide", config)
    t0 = time.time()
    try:
        v = decide(args.d, args.chi1, args.chi2)
    except NotCoprime as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    report.results.append(v.to_json())
    report.add("verdict_matches_congruence", v.agrees,
               "NoObstruction" if v.expected_isomorphic else "ObstructionFound",
               v.verdict)
    report.timings["total"] = time.time() - t0
    _write_output(report.render(args.format), args.out)
    return 0 if v.agrees else MATH_ERROR


def _sweep_worker(task):
    d, c1, c2 = task
    v = decide(d, c1, c2)
    return v.to_json()


def cmd_sweep(args) -> int:
    if not (5 <= args.dmin <= args.dmax):
        print("error: need 5 <= dmin <= dmax", file=sys.stderr)
        return USAGE_ERROR
    config = {"dmin": args.dmin, "dmax": args.dmax, "jobs": args.jobs}
    report = Report("sweep", config)
    tasks = [
        (d, c1, c2)
        for d in range(args.dmin, args.dmax + 1)
        for (c1, c2) in coprime_pairs(d)
    ]
    t0 = time.time()
    jobs = args.jobs or multiprocessing.cpu_count()
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            rows = pool.map(_sweep_worker, tasks)
    else:
        rows = [_sweep_worker(t) for t in tasks]
    rows.sort(key=lambda r: (r["d"], r["chi1"], r["chi2"]))
    report.results = rows
    agree = sum(1 for r in rows if r["agrees"])
    report.add("agreement", agree == len(rows), f"{len(rows)}/{len(rows)}",
               f"{agree}/{len(rows)}")
    report.timings["total"] = time.time() - t0
    _write_output(report.render(args.format), args.out)
    return 0 if report.passed else MATH_ERROR


def cmd_emit(args) -> int:
    d, chi = args.d, args.chi
    try:
        if args.what == "relations":
            payload = build_relation_set(d, chi).to_json()
        elif args.what == "matrices":
            payload = truncation_block(build_relation_set(d, chi)).to_json()
        else:
            if args.chi2 is not None:
                payload = decide(d, chi, args.chi2).to_json()
            else:
                payload = {
                    "schema": "tautrel/verdicts/1",
                    "d": d,
                    "verdicts": [
                        decide(d, c1, c2).to_json()
                        for (c1, c2) in coprime_pairs(d)
                    ],
                }
    except (ValueError, NotCoprime) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    else:
        text = _render_payload_text(payload)
    try:
        _write_output(text, args.out)
    except OSError as e:
        print(f"error: cannot write {args.out}: {e}", file=sys.stderr)
        return USAGE_ERROR
    return 0


def _render_payload_text(payload: dict) -> str:
    lines = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}{k}.", v) if isinstance(v, (dict, list)) else lines.append(
                    f"{prefix}{k} = {v}"
                )
        elif isinstance(obj, list):
            for i, v in enumerate(obj):
                walk(f"{prefix}{i}.", v) if isinstance(v, (dict, list)) else lines.append(
                    f"{prefix}{i} = {v}"
                )

    walk("", payload)
    return "\n".join(lines) + "\n"


def _write_output(text: str, out: str = None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def fixtures_dir() -> str:
    override = os.environ.get("TAUTREL_FIXTURES")
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "fixtures")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tautrel", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run checkpoint suites")
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--dmax", type=int)
    v.add_argument("--chi", default=None)
    v.add_argument("--chi2", type=int)
    v.add_argument("--mode", choices=["concrete", "symbolic"], default="concrete")
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.add_argument("--out")
    v.set_defaults(fn=cmd_verify)

    dd = sub.add_parser("decide", help="decide one (d, chi1, chi2) triple")
    dd.add_argument("--d", type=int, required=True)
    dd.add_argument("--chi1", type=int, required=True)
    dd.add_argument("--chi2", type=int, required=True)
    dd.add_argument("--format", choices=["json", "text"], default="text")
    dd.add_argument("--out")
    dd.set_defaults(fn=cmd_decide)

    s = sub.add_parser("sweep", help="decide all coprime pairs in a d range")
    s.add_argument("--dmin", type=int, required=True)
    s.add_argument("--dmax", type=int, required=True)
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--format", choices=["json", "text"], default="text")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_sweep)

    e = sub.add_parser("emit", help="write canonical artifacts")
    e.add_argument("--what", choices=["relations", "matrices", "verdicts"],
                   required=True)
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--chi", type=int)
    e.add_argument("--chi2", type=int)
    e.add_argument("--out", default="-")
    e.add_argument("--format", choices=["json", "text"], default="json")
    e.set_defaults(fn=cmd_emit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE_ERROR if e.code not in (0, None) else 0
    if args.command == "emit" and args.what in ("relations", "matrices") and args.chi is None:
        print("error: --chi required", file=sys.stderr)
        return USAGE_ERROR
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
