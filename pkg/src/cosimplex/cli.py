"""Command-line front end: ``cosimplex <command> ...``.

Exit codes: 0 pass, 2 validation failure, 3 parse error, 4 budget
exceeded, 5 usage error.  JSON output uses sorted keys, so runs with the
same inputs and seeds are byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import suites
from .abelian import FGAbGroup
from .cosab import ALL, cn_subcomplex, cohomology_H, derived_limit_cobar, free_on_cosimp_set
from .abelian import cohomology
from .errors import CapExceeded, DegreeError, HypothesisFailed, ValidationError
from .io import BundleParseError, dumps, read_bundle
from .labels import label_str

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET, EXIT_USAGE = 0, 2, 3, 4, 5
DEFAULT_CAP = 10 ** 6
# cobar cochain generators before the cohomology command switches to the resolution route
COBAR_DEFAULT_CAP = 500


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(x):
    if isinstance(x, dict):
        return {label_str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def _budget(args, default=None):
    if getattr(args, "cap", None) is not None:
        return args.cap
    env = os.environ.get("COSIMPLEX_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"COSIMPLEX_BUDGET must be an integer, got {env!r}")
    return DEFAULT_CAP if default is None else default


def _load(path, kinds):
    b = read_bundle(path)
    if b.kind not in kinds:
        raise UsageError(f"expected a bundle of kind {' or '.join(kinds)}, got {b.kind}")
    return b


# -- commands: each returns (report, table lines, exit code) -----------------------

def cmd_check(args):
    b = read_bundle(args.path)
    rep = {"kind": b.kind, "name": b.name, "truncations": b.truncations, "status": "pass"}
    return rep, [f"{b.kind} {b.name}: pass"], EXIT_OK


def _parse_degrees(text):
    try:
        if ".." in text:
            a, b = text.split("..")
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"--degrees expects a..b, got {text!r}")
    if lo < 0 or hi < lo:
        raise UsageError(f"bad degree range {text!r}")
    return lo, hi


def cmd_cohomology(args):
    b = _load(args.path, ("cosimplicial-ab", "cosimplicial-set"))
    A = b.obj if b.kind == "cosimplicial-ab" else free_on_cosimp_set(b.obj, FGAbGroup.free(1))
    N = A.trunc
    lo, hi = _parse_degrees(args.degrees) if args.degrees else (0, max(N - 1, 0))
    cap = _budget(args, COBAR_DEFAULT_CAP)
    cN, _ = cn_subcomplex(A, ALL)
    rows, lines, warnings, mismatch = [], [], [], False
    for n in range(lo, hi + 1):
        row = {"degree": n}
        if n <= N - 1:
            row["moore"] = str(cohomology_H(A, n))
            row["cN"] = str(cohomology(cN, n))
        else:
            row["moore"] = row["cN"] = "n/a"
            warnings.append(f"degree {n}: Moore and cN columns need level {n + 1}, truncation is {N}")
        if n <= N - 2:
            try:
                row["cobar"] = str(derived_limit_cobar(A, n, method="cobar", cap=cap))
                row["cobar_method"] = "cobar"
            except CapExceeded:
                # too many chains: the resolution route computes the same derived limit
                row["cobar"] = str(derived_limit_cobar(A, n, method="resolution"))
                row["cobar_method"] = "resolution"
                warnings.append(f"degree {n}: cobar route over budget {cap}, used the resolution route")
        else:
            row["cobar"] = "n/a"
            row["cobar_method"] = None
            warnings.append(f"degree {n}: derived limit column needs n <= N-2 = {N - 2}")
        vals = {row[c] for c in ("moore", "cN", "cobar") if row[c] != "n/a"}
        row["agree"] = len(vals) <= 1
        mismatch = mismatch or not row["agree"]
        rows.append(row)
        flag = "" if row["agree"] else "  MISMATCH"
        lines.append(f"{n}: {row['moore']} {row['cN']} {row['cobar']}{flag}")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    rep = {"name": b.name, "trunc": N, "columns": ["moore", "cN", "cobar"], "rows": rows,
           "warnings": warnings}
    return rep, lines, EXIT_INVALID if mismatch else EXIT_OK


def cmd_torsors(args):
    from .torsors import enumerate_torsors, h_delta_report, theorem12_check
    H = _load(args.path, ("cosimplicial-gpd",)).obj
    cap = _budget(args)
    reps, count = enumerate_torsors(H, cap)
    _D, row = h_delta_report(H, cap)
    t12 = theorem12_check(H, cap)
    rep = {"torsors": count, "representatives": [X.to_json() for X in reps],
           "hdelta": row, "comparison": t12}
    lines = [f"torsor classes: {count}",
             f"h_delta: {row['objects']} objects, {row['morphisms']} morphisms, "
             f"{row['components']} components, vertex groups {row['vertex_group_orders']}",
             f"stabilized: {row['stabilized']}",
             f"torsors vs h_delta: {'pass' if t12['pass'] else 'FAIL'}"]
    return rep, lines, EXIT_OK if t12["pass"] else EXIT_INVALID


def cmd_hdelta(args):
    from .torsors import h_delta_report
    H = _load(args.path, ("cosimplicial-gpd",)).obj
    D, row = h_delta_report(H, _budget(args))
    rep = dict(row)
    rep["object_labels"] = [label_str(o) for o in D.objects]
    lines = [f"objects: {row['objects']}", f"morphisms: {row['morphisms']}",
             f"components: {row['components']}", f"vertex group orders: {row['vertex_group_orders']}",
             f"previous truncation: {row['previous']}", f"stabilized: {row['stabilized']}"]
    return rep, lines, EXIT_OK


def cmd_verify(args):
    cases = suites.run(args.suite, seed=args.seed, count=args.count)
    passed = sum(c.ok for c in cases)
    rep = {"suite": args.suite, "seed": args.seed, "count": args.count, "passed": passed,
           "total": len(cases), "cases": [c.to_json() for c in cases]}
    lines = [f"{'PASS' if c.ok else 'FAIL'} {c.name} {c.detail}" for c in cases]
    lines.append(f"{args.suite}: {passed}/{len(cases)} passed")
    return rep, lines, EXIT_OK if passed == len(cases) else EXIT_INVALID


def cmd_em_model(args):
    from .postnikov import em_model
    b = _load(args.path, ("diagram-bundle",))
    I, U, V, F, incl, p, n = b.obj
    if args.n is not None:
        n = args.n
    rep = _jsonable(em_model(I, U, V, F, incl, p, n))
    lines = [f"window: {rep['window']}"]
    for x, arrows in rep["objects"].items():
        lines.append(f"{x}: coefficient {rep['coefficients'][x]}; "
                     + ", ".join(f"{a} {'ok' if v else 'FAIL'}" for a, v in arrows.items()))
    for f, t in rep["transitions"].items():
        lines.append(f"{f}: H_n matrix {t['matrix']} iso={t['iso']}")
    lines.append(f"em-model: {'pass' if rep['pass'] else 'FAIL'}")
    return rep, lines, EXIT_OK if rep["pass"] else EXIT_INVALID


def cmd_k_invariant(args):
    """simplicial-ab bundles directly; diagram bundles objectwise on Z[V]/Z[U]."""
    from .postnikov import k_invariant_ab, relative_free_abelian
    b = _load(args.path, ("simplicial-ab", "diagram-bundle"))
    if b.kind == "simplicial-ab":
        targets = {"*": (b.obj, args.n)}
    else:
        I, _U, _V, _F, incl, _p, n = b.obj
        targets = {x: (relative_free_abelian(incl.components[x]), args.n or n) for x in I.objects}
    out, lines, ok = {}, [], True
    for x, (A, n) in targets.items():
        if n is None:
            raise UsageError("--n is required for simplicial-ab bundles")
        r = k_invariant_ab(A, n)
        out[x] = {k: r[k] for k in ("n", "window", "rows", "shift_ok", "pass")}
        ok = ok and r["pass"]
        for row in r["rows"]:
            lines.append(f"{x} degree {row['degree']}: H(P_n)={row['H(P_n)']} "
                         f"H(P_n-1)={row['H(P_{n-1})']} H(T)={row['H(T)']} exact={row['exact']}")
        lines.append(f"{x}: shift {r['shift_ok']} -> {'pass' if r['pass'] else 'FAIL'}")
    return _jsonable({"objects": out, "pass": ok}), lines, EXIT_OK if ok else EXIT_INVALID


def build_parser():
    p = _Parser(prog="cosimplex", description="Truncated cosimplicial objects: checks and suites.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        mode = sp.add_mutually_exclusive_group()
        mode.add_argument("--json", dest="mode", action="store_const", const="json")
        mode.add_argument("--table", dest="mode", action="store_const", const="table")
        sp.set_defaults(fn=fn, mode=None)
        return sp

    sp = add("check", cmd_check, "validate a bundle against its identity suite")
    sp.add_argument("path")
    sp = add("cohomology", cmd_cohomology, "Moore, cN and derived-limit cohomology")
    sp.add_argument("path")
    sp.add_argument("--degrees", help="range a..b")
    sp.add_argument("--cap", type=int, help="budget (chains and cochain generators) for the cobar column")
    sp = add("torsors", cmd_torsors, "torsor classes and the h_delta comparison")
    sp.add_argument("path")
    sp.add_argument("--cap", type=int)
    sp = add("hdelta", cmd_hdelta, "the groupoid h_delta of a cosimplicial groupoid")
    sp.add_argument("path")
    sp.add_argument("--cap", type=int)
    sp = add("verify", cmd_verify, "run a seeded verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp = add("em-model", cmd_em_model, "Eilenberg-Mac Lane model of a diagram bundle")
    sp.add_argument("path")
    sp.add_argument("--n", type=int)
    sp = add("k-invariant", cmd_k_invariant, "k-invariant fibre sequence with exactness window")
    sp.add_argument("path")
    sp.add_argument("--n", type=int)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep, lines, code = args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BundleParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as e:
        print(f"validation failed: {e.law or e}", file=sys.stderr)
        if args.mode == "json":
            sys.stdout.write(dumps({"status": "fail", "law": e.law, "message": str(e)}))
        return EXIT_INVALID
    except (HypothesisFailed, DegreeError) as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return EXIT_INVALID
    except CapExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    if args.mode == "json":
        sys.stdout.write(dumps(_jsonable(rep)))
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
