"""Command-line front end.

Subcommands: ``check``, ``hilbert``, ``family``, ``sample``, ``groebner``.
Exit status depends only on the verdict: 0 good, 1 bad, 2 inconclusive,
3 for usage, input or resource errors.  ``--format json`` output validates
against ``report.schema.json`` shipped with the package.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from importlib import resources
from typing import Sequence

from . import cycheck, families
from .cycheck import BAD, GOOD, INCONCLUSIVE, Verdict
from .dsl import METHODS, DSLError, ProblemFile, emit, parse
from .groebner import CertificationError, ResourceCapExceeded, RewriteSystem, complete, find_ambiguities, resolve_ambiguity
from .hilbert import check_inequalities
from .pathalg import CyclicPoly, PathPoly, format_rational
from .quiver import Quiver

EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_schema() -> dict:
    return json.loads(resources.files("cyquiver").joinpath("report.schema.json").read_text())


def quiver_json(q: Quiver) -> dict:
    return {"vertices": q.vertex_count, "arrows": [{"name": a.name, "tail": a.tail, "head": a.head} for a in q.arrows]}


def _read_problem(path: str) -> ProblemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except DSLError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _bound(flag: int | None, problem: ProblemFile | None, d: int) -> int:
    if flag is not None:
        return flag
    if problem is not None and problem.degree_bound is not None:
        return problem.degree_bound
    return cycheck.default_degree_bound(d)


def _verdict_report(command: str, q: Quiver, d: int, v: Verdict, extra: dict | None = None) -> dict:
    out = {"command": command, "quiver": quiver_json(q), "d": d}
    out.update(v.to_json())
    if extra:
        out.update(extra)
    return out


def _print(report: dict, fmt: str, text_lines: list[str]):
    if fmt == "json":
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print("\n".join(text_lines))


def _witness_text(w: dict | None) -> str:
    if not w:
        return ""
    return ", ".join(f"{k}={v}" for k, v in w.items() if k not in ("dims", "ranks"))


def _verdict_lines(v: Verdict, d: int) -> list[str]:
    bound = "all degrees" if v.certified_degree is None else f"N={v.certified_degree}"
    lines = [f"degree d={d}", f"method: {v.method}", f"outcome: {v.outcome} ({bound})"]
    if v.witness:
        lines.append(f"witness: {_witness_text(v.witness)}")
    for s in v.details.get("stages", []):
        lines.append(f"  stage {s['method']}: {s['outcome']}")
    return lines


# commands ------------------------------------------------------------------------


def _run_check(q: Quiver, w: CyclicPoly, method: str, N: int, fmt: str, command: str, extra: dict | None = None) -> int:
    v = cycheck.check(q, w, method, N)
    report = _verdict_report(command, q, w.degree, v, extra)
    report["degree_bound"] = N
    lines = [str(q), f"potential: {w}"] + _verdict_lines(v, w.degree)
    _print(report, fmt, lines)
    return v.exit_code


def cmd_check(args) -> int:
    problem = _read_problem(args.file)
    if problem.potential is None:
        raise UsageError("potential required for check")
    method = args.method or problem.method or "all"
    N = _bound(args.degree_bound, problem, problem.degree)
    return _run_check(problem.quiver, problem.potential, method, N, args.format, "check")


def _parse_pool(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split(".."))
            pool = [c for c in range(lo, hi + 1) if c]
        else:
            pool = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad coefficient pool {text!r}; use 'lo..hi' or a comma list") from None
    if not pool or 0 in pool:
        raise UsageError("coefficient pool must be nonempty and exclude 0")
    return pool


def _parse_p(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad arrow counts {text!r}; use e.g. 2,2,2") from None


def cmd_hilbert(args) -> int:
    sources = [args.file is not None, args.loops is not None, args.cyclic is not None]
    if sum(sources) != 1:
        raise UsageError("give exactly one of FILE, --loops K or --cyclic P")
    problem = None
    if args.file is not None:
        problem = _read_problem(args.file)
        q = problem.quiver
    elif args.loops is not None:
        if args.loops < 1:
            raise UsageError("--loops must be positive")
        q = Quiver.from_edges(1, [(f"X{i}", 0, 0) for i in range(1, args.loops + 1)])
    else:
        p = _parse_p(args.cyclic)
        if len(p) < 1 or min(p) < 1:
            raise UsageError("--cyclic needs positive arrow counts")
        q = families.cyclic_quiver(p)
    d = args.d if args.d is not None else (problem.degree if problem else None)
    if d is None:
        raise UsageError("--d is required when no potential fixes the degree")
    if d < 3:
        raise UsageError("--d must be at least 3")
    N = _bound(args.degree_bound, problem, d)
    t0 = time.perf_counter()
    rep = check_inequalities(q, d, N)
    first = rep.first_failure()
    if first is None:
        v = Verdict("hilbert", INCONCLUSIVE, N)
    else:
        name, viol = first
        v = Verdict("hilbert", BAD, N, {"inequality": name, **viol.to_json()})
    v.timings["hilbert"] = time.perf_counter() - t0
    extra = {
        "inequalities": rep.to_json(),
        "series": {name: s.to_json() for name, s in rep.series.items()},
        "hilbert_expected": rep.series["I1"].to_json(),
    }
    report = _verdict_report("hilbert", q, d, v, extra)
    lines = [str(q), f"degree d={d}, N={N}"]
    for name, s in rep.series.items():
        status = rep.to_json()[name]
        lines.append(f"{name}: {'pass' if status == 'pass' else 'FAIL ' + _witness_text(status)}")
        if q.vertex_count == 1:
            lines.append("  " + ", ".join(format_rational(c[0, 0]) for c in s.coeffs))
        else:
            for k, c in enumerate(s.coeffs):
                lines.append(f"  t^{k}: " + str([[format_rational(x) for x in row] for row in c]))
    lines.append(f"outcome: {v.outcome}")
    _print(report, args.format, lines)
    return v.exit_code


def _family_spec(args) -> families.FamilySpec:
    p = _parse_p(args.p) if args.p is not None else None
    try:
        return families.FamilySpec(args.family, k=args.k, d=args.d, p=p, ell=args.ell)
    except families.FamilyError as exc:
        raise UsageError(str(exc)) from None


def cmd_family(args) -> int:
    spec = _family_spec(args)
    q, w, order = families.build(spec)
    if args.emit == "problemfile":
        print(emit(ProblemFile(q, w, args.degree_bound, args.method)), end="")
        return 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", families.LeadingTermMismatch)
        disc = families.leading_term_discrepancies(spec, warn=False)
    N = args.degree_bound if args.degree_bound is not None else cycheck.default_degree_bound(w.degree)
    extra = {"family": spec.label(), "order": list(order), "leading_term_discrepancies": disc}
    return _run_check(q, w, args.method or "all", N, args.format, "family", extra)


def cmd_sample(args) -> int:
    problem = _read_problem(args.file)
    q = problem.quiver
    d = args.d if args.d is not None else problem.degree
    if d is None:
        raise UsageError("--d is required when the file has no potential")
    if d < 3:
        raise UsageError("--d must be at least 3")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    pool = _parse_pool(args.coeff_pool)
    N = _bound(args.degree_bound, problem, d)
    t0 = time.perf_counter()
    screen = check_inequalities(q, d, N)
    try:
        tally = cycheck.sample_superpotentials(q, d, args.trials, pool, N, args.seed)
    except cycheck.EmptySuperpotentialSpace as exc:
        v = Verdict("sampled", BAD, None, {"condition": "empty_superpotential_space", "message": str(exc)})
        v.timings["sample"] = time.perf_counter() - t0
        report = _verdict_report("sample", q, d, v, {"trials": args.trials, "seed": args.seed, "good_count": 0, "bad_count": 0})
        _print(report, args.format, [str(q), f"degree d={d}", "outcome: bad", str(exc)])
        return v.exit_code
    first = screen.first_failure()
    if first is not None:
        name, viol = first
        v = Verdict("sampled", BAD, N, {"inequality": name, **viol.to_json()})
    elif tally["good_count"]:
        v = Verdict("sampled", GOOD, N)
    else:
        v = Verdict("sampled", INCONCLUSIVE, N)
    v.timings["sample"] = time.perf_counter() - t0
    extra = {k: tally[k] for k in ("trials", "seed", "pool", "good_count", "bad_count", "inconclusive_count", "runs")}
    report = _verdict_report("sample", q, d, v, extra)
    lines = [
        str(q),
        f"degree d={d}, N={N}, trials={args.trials}, seed={args.seed}",
        f"good: {tally['good_count']}  bad: {tally['bad_count']}  inconclusive: {tally['inconclusive_count']}",
        f"outcome: {v.outcome}",
    ]
    if v.witness:
        lines.append(f"witness: {_witness_text(v.witness)}")
    _print(report, args.format, lines)
    return v.exit_code


def cmd_groebner(args) -> int:
    problem = _read_problem(args.file)
    q = problem.quiver
    w = problem.potential
    d = w.degree if w is not None else None
    N = args.degree_bound or problem.degree_bound or (cycheck.default_degree_bound(d) if d else 10)
    t0 = time.perf_counter()
    rels = cycheck.relations_of(w) if w is not None else []
    rs = RewriteSystem.from_relations(q, [f for f in rels if f])
    ambs = find_ambiguities(rs)
    resolved = [resolve_ambiguity(a, rs) for a in ambs]
    completed = complete(rs, max(N, rs.max_degree))
    report = {
        "command": "groebner",
        "quiver": quiver_json(q),
        "d": d,
        "N": completed.certified_degree,
        "relations": [
            {"arrow": q.names[a], "relation": str(PathPoly.from_words(q, f)) if f else "0"} for a, f in enumerate(rels)
        ],
        "leading_terms": [q.format_word(lt) for lt in rs.lts],
        "ambiguities": [
            {"ambiguity": a.format(q), "degree": a.degree, "resolvable": ok, "residue": str(res)}
            for a, (ok, res) in zip(ambs, resolved)
        ],
        "basis": completed.to_dict()["relations"],
        "basis_size": len(completed),
        "timings": {"groebner": round(time.perf_counter() - t0, 6)},
    }
    lines = [str(q), f"relations ({len(rels)}):"]
    lines += [f"  d{r['arrow']}: {r['relation']}" for r in report["relations"]]
    lines.append(f"ambiguities ({len(ambs)}):")
    lines += [f"  {x['ambiguity']}: {'resolvable' if x['resolvable'] else 'residue ' + x['residue']}" for x in report["ambiguities"]]
    lines.append(f"basis certified to degree {completed.certified_degree}: {len(completed)} relations")
    lines += [f"  lt {rel['leading_term']}" for rel in report["basis"]]
    _print(report, args.format, lines)
    return 0


# parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="cyquiver", description="Calabi-Yau-3 checks for quiver superpotentials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def common(p, bound=True):
        if bound:
            p.add_argument("--degree-bound", type=int, default=None, metavar="N")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="decide goodness of the potential in a problem file")
    p.add_argument("file")
    p.add_argument("--method", choices=METHODS, default=None)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hilbert", help="expected Hilbert series and positivity screening")
    p.add_argument("file", nargs="?")
    p.add_argument("--loops", type=int, default=None, metavar="K", help="one vertex with K loops")
    p.add_argument("--cyclic", default=None, metavar="P", help="cyclic quiver, arrow counts like 2,2,2,2")
    p.add_argument("--d", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("family", help="build a known family instance")
    p.add_argument("family", choices=families.FAMILIES)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--p", default=None, help="cyclic arrow counts, e.g. 2,2,2")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--emit", choices=("problemfile", "report"), default="problemfile")
    p.add_argument("--method", choices=METHODS, default=None)
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sample", help="Monte-Carlo probe over random superpotentials")
    p.add_argument("file")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coeff-pool", default="-3..3", help="'lo..hi' (zero dropped) or a comma list; write --coeff-pool=-2..2 for a negative lower end")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("groebner", help="relations, ambiguities and the truncated basis")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_groebner)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cyquiver: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCapExceeded, CertificationError, families.FamilyError) as exc:
        print(f"cyquiver: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
