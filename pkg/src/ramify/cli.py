"""Command line front end.

Three subcommands: ``analyze`` computes the invariant bundle of one
extension of k((t)) and runs its verifiers, ``tower`` reports the
defect family, and ``selftest`` executes the acceptance grid.  Output
is human-readable text or JSON (schema key ``ramify/1``); a batch file
runs one configuration per line.

Exit codes: 0 all verifiers pass, 1 a verifier failed, 2 invalid
input, 3 insufficient precision.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys

from .errors import (
    InsufficientPrecision,
    InvalidSpec,
    ParseError,
    RamifyError,
)
from .extension import ASExtension
from .fields import FieldSpec
from .invariants import build_report
from .parsing import parse_field_spec, parse_series
from .selftest import DEFAULT_SEED, run_all
from .tower import (
    TowerSpec,
    best_f_descent,
    check_step_identity,
    principality_chain,
    tower_levels,
    tower_report,
)

SCHEMA = "ramify/1"


def make_parser():
    parser = argparse.ArgumentParser(
        prog="ramify",
        description="ramification invariants of Artin-Schreier extensions of k((t))",
    )
    parser.add_argument("--batch", metavar="FILE", help="run one configuration per line")
    parser.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command")

    an = sub.add_parser("analyze", help="invariants of one extension")
    an.add_argument("--field", required=True, help="Fp:3 | Fq:9:w^2+1 | Fp(u):3")
    an.add_argument("--f", required=True, help="defining series, e.g. 't^-4 + u*t^-2'")
    an.add_argument("--prec", type=int, default=24, help="series precision (default 24)")
    an.add_argument("--trials", type=int, default=50, help="samples per verifier")
    an.add_argument("--seed", type=int, default=DEFAULT_SEED)
    an.add_argument("--format", choices=("text", "json"), default="text")
    an.add_argument("--out", metavar="PATH")

    tw = sub.add_parser("tower", help="the rank-1 defect family")
    tw.add_argument("--p", type=int, required=True)
    tw.add_argument("--n", type=int, required=True)
    tw.add_argument("--q", type=int, required=True, help="order of the residue field F_q")
    tw.add_argument("--depth", type=int, default=5)
    tw.add_argument("--trials", type=int, default=32)
    tw.add_argument("--seed", type=int, default=DEFAULT_SEED)
    tw.add_argument("--format", choices=("text", "json"), default="text")
    tw.add_argument("--csv", metavar="PATH", help="also write the level table as CSV")
    tw.add_argument("--out", metavar="PATH")

    st = sub.add_parser("selftest", help="run the acceptance grid")
    st.add_argument("--seed", type=int, default=DEFAULT_SEED)
    st.add_argument("--format", choices=("text", "json"), default="text")
    st.add_argument("--out", metavar="PATH")
    return parser


def _field_order(q):
    p = 2
    while p * p <= q:
        if q % p == 0:
            m = 0
            qq = q
            while qq % p == 0:
                qq //= p
                m += 1
            if qq != 1:
                raise InvalidSpec(f"{q} is not a prime power")
            return p, m
        p += 1
    return q, 1


def run_analyze(args):
    field = parse_field_spec(args.field)
    f = parse_series(args.f, field, args.prec)
    ext = ASExtension(field, f)
    report = build_report(ext, samples=args.trials, seed=args.seed)
    payload = {
        "schema": SCHEMA,
        "command": "analyze",
        "field": args.field,
        "f": str(f),
        "f_best": str(ext.best.f_best),
        "precision": args.prec,
        "seed": args.seed,
        "report": report.to_json(),
        "pass": report.all_checks_pass(),
    }
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        lines = [
            f"field:          {field!r}",
            f"f:              {f}",
            f"best f:         {ext.best.f_best}",
            f"swan:           {report.to_json()['swan']}",
            f"case:           {report.case.value}",
            f"classification: {report.classification.value}",
            f"e, f, defect:   {report.e}, {report.f_inertia}, {report.defect}",
        ]
        for name in ("h", "j_sigma", "i_sigma", "n_of_j", "different"):
            cut = getattr(report, name)
            if cut is not None:
                lines.append(f"{name + ':':15s} {cut!r}")
        if report.rsw is not None:
            lines.append(f"rsw:            {report.rsw!r}")
        for name, check in sorted(report.checks.items()):
            lines.append(f"check {name}: {'pass' if check.ok else 'FAIL'}")
        text = "\n".join(lines)
    code = 0 if report.all_checks_pass() else 1
    return text, code


def run_tower(args):
    p, m = _field_order(args.q)
    if p != args.p:
        raise InvalidSpec(f"--q {args.q} is not a power of --p {args.p}")
    if m < 2:
        raise InvalidSpec("--q must be a proper power of p, so the constant a avoids F_p")
    try:
        field = FieldSpec.finite(p, m)
    except ValueError as exc:
        raise InvalidSpec(str(exc)) from None
    spec = TowerSpec(field, args.n, args.depth)
    levels = tower_levels(spec)
    report = tower_report(spec)
    identity = check_step_identity(spec, trials=args.trials, seed=args.seed)
    descent = best_f_descent(spec) if args.depth >= 2 else None
    payload = {
        "schema": SCHEMA,
        "command": "tower",
        "seed": args.seed,
        "levels": [lv.to_json() for lv in levels],
        "report": report.to_json(),
        "principality": principality_chain(report),
        "step_identity": {
            "ok": identity.ok,
            "trials": identity.trials,
            "witness": identity.witness,
            "degree_bound": identity.degree_bound,
            "sample_space": identity.sample_space,
        },
        "descent": None if descent is None else descent.to_json(),
        "pass": identity.ok,
    }
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("index,n_i,shift,v_x,v_y,neg_v_f\n")
            for lv in levels:
                d = lv.to_json()
                fh.write(
                    f"{d['index']},{d['n_i']},{d['shift']},{d['v_x']},{d['v_y']},{d['neg_v_f']}\n"
                )
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        lines = [
            f"tower: p={spec.p} n={spec.n} q={field.order} depth={args.depth}",
            f"v_0 = {payload['report']['v_0']}   mu = {payload['report']['mu']}",
            f"J   = {report.j_cut!r}",
            f"H   = {report.h_cut!r}",
            f"N(J)= {report.n_of_j_cut!r}",
            f"diff= {report.different_cut!r}  (inverse {report.different_inv_cut!r})",
            f"T   = {report.t_cut!r}   T' = {report.t_prime_cut!r}",
            f"best f exists: {report.best_f_exists}   J principal: {report.j_principal}",
            "levels (index, n_i, -v(f_i)):",
        ]
        for lv in levels:
            lines.append(f"  {lv.index:2d}  {lv.n_i:10d}  {lv.neg_v_f}")
        lines.append(
            f"step identity: {'pass' if identity.ok else 'FAIL'} "
            f"({identity.trials} trials, degree bound {identity.degree_bound}"
            f"/{identity.sample_space})"
        )
        text = "\n".join(lines)
    return text, (0 if identity.ok else 1)


def run_selftest(args):
    results = run_all(seed=args.seed)
    ok = all(r.ok for r in results)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "command": "selftest",
            "seed": args.seed,
            "criteria": [r.to_json() for r in results],
            "pass": ok,
        }
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        lines = [r.line() for r in results]
        lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
        text = "\n".join(lines)
    return text, (0 if ok else 1)


def _dispatch(args):
    if args.command == "analyze":
        return run_analyze(args)
    if args.command == "tower":
        return run_tower(args)
    if args.command == "selftest":
        return run_selftest(args)
    raise InvalidSpec("no subcommand given (try analyze, tower or selftest)")


def _run_one(argv):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        text, code = _dispatch(args)
        out_path = getattr(args, "out", None)
        return text, code, out_path
    except ParseError as exc:
        return f"error: {exc}", 2, None
    except InvalidSpec as exc:
        return f"error: {exc}", 2, None
    except InsufficientPrecision as exc:
        return f"error: {exc} (raise --prec)", 3, None
    except RamifyError as exc:
        return f"error: {exc}", 2, None


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--batch" in argv:
        idx = argv.index("--batch")
        try:
            batch_path = argv[idx + 1]
        except IndexError:
            print("error: --batch needs a file", file=sys.stderr)
            return 2
        rest = argv[:idx] + argv[idx + 2 :]
        out_path = None
        if "--out" in rest:
            oidx = rest.index("--out")
            out_path = rest[oidx + 1]
            rest = rest[:oidx] + rest[oidx + 2 :]
        try:
            with open(batch_path) as fh:
                lines = [ln.strip() for ln in fh]
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        outputs = []
        worst = 0
        for line in lines:
            if not line or line.startswith("#"):
                continue
            text, code, _ = _run_one(shlex.split(line) + rest)
            outputs.append({"config": line, "exit": code, "output": text})
            worst = max(worst, code)
        rendered = json.dumps(
            {"schema": SCHEMA, "command": "batch", "runs": outputs},
            indent=2,
            sort_keys=True,
        )
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(rendered + "\n")
        else:
            print(rendered)
        return worst
    text, code, out_path = _run_one(argv)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
