"""Command-line entry point.  Standard output carries exactly one JSON document."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import sys
from fractions import Fraction

from . import bounds, constructions, core, diagnostics, solver

EXIT_OK, EXIT_VIOLATED, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3
STATUS = {EXIT_OK: "ok", EXIT_VIOLATED: "property_violated",
          EXIT_INVALID: "invalid_input", EXIT_LIMIT: "resource_limit"}


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def jsonable(obj):
    """Deterministic JSON form: rationals as 'p/q', reals to 12 significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, core.IntegerSet):
        return list(obj.elements)
    if isinstance(obj, (core.Interval, core.Cyclic, core.Unbounded)):
        return dataclasses.asdict(obj) | {"type": type(obj).__name__.lower()}
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, separators=(",", ":"))


# --- input helpers -------------------------------------------------------------

def _read_set(args, allow_cyclic=True) -> core.IntegerSet:
    if getattr(args, "file", None):
        with open(args.file) as fh:
            A = core.parse_set_text(fh.read())
    else:
        A = core.IntegerSet(tuple(args.elements))
    mod = getattr(args, "mod", None)
    n = getattr(args, "n", None)
    if mod is not None and n is not None:
        raise ValueError("give at most one of --mod and -n")
    if mod is not None:
        A = core.IntegerSet.cyclic(A.elements, mod)
    elif n is not None:
        A = A.with_ambient(core.Interval(n))
    if A.is_cyclic and not allow_cyclic:
        raise ValueError("this command needs an interval set")
    return A


def _set_payload(rec: constructions.ConstructionRecord):
    A = rec.set
    return {"set": A, "modulus": A.modulus, "n": A.bound if not A.is_cyclic else None,
            "size": len(A), "verified": rec.verified, "method": rec.method,
            "parameters": rec.parameters}


# --- commands ------------------------------------------------------------------

def cmd_construct(args):
    m = args.method
    if m == "powers2":
        rec = constructions.powers_of_two_record(_need(args.n, "-n"))
    elif m == "greedy":
        seed = None
        if args.seed_file:
            with open(args.seed_file) as fh:
                seed = core.parse_set_text(fh.read())
        rec = constructions.greedy_record(_need(args.n, "-n"), seed)
    elif m == "bose-chowla":
        rec = constructions.bose_chowla_record(_need(args.q, "-q"))
    else:
        rec = constructions.thin_record(_need(args.q, "-q"), _need(args.ell, "--ell"))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(core.format_set_text(rec.set, rec.header()))
    return _set_payload(rec), EXIT_OK if rec.verified else EXIT_VIOLATED


def _need(value, flag):
    if value is None:
        raise ValueError(f"{flag} is required")
    return value


def cmd_verify(args):
    A = _read_set(args)
    if args.property == "sidon":
        holds = core.is_sidon(A)
    elif args.property == "weak":
        holds = core.is_weak_sidon(A)
    else:
        holds = core.is_thin(A, _need(args.ell, "--ell"))
    payload = {"set": A, "property": args.property, "holds": holds,
               "thinness": core.thinness(A), "size": len(A)}
    return payload, EXIT_OK if holds else EXIT_VIOLATED


BOUND_KINDS = {"trivial": "trivial", "lindstrom": "lindstrom", "cilleruelo": "cilleruelo",
               "main": "main_theorem", "kayll": "kayll_weak", "thin": "thin"}


def cmd_bounds(args):
    rep = bounds.closed_form_bound(BOUND_KINDS[args.kind], args.n, args.ell, args.gamma)
    return rep, EXIT_OK


def cmd_diagnose(args):
    what = args.what
    if what == "translate-count":
        n, ell = _need(args.n, "-n"), args.ell or 1
        w = bounds.translate_window(n, ell)
        return {"window": w, "m": w.chosen,
                "certified": w.chosen is not None and bounds.translate_count_certified(n, ell, w.chosen)}, EXIT_OK
    A = _read_set(args, allow_cyclic=(what == "audit"))
    if what == "slack":
        ell = _need(args.ell, "--ell")
        chain = diagnostics.sumdiff_chain(A, ell)
        return {"C": diagnostics.slack(A, ell), "chain": chain}, EXIT_OK
    if what == "weak-slack":
        return diagnostics.weak_slack(A, _need(args.ell, "--ell")), EXIT_OK
    if what == "defect":
        prof = diagnostics.translate_degree_profile(A, _need(args.m, "-m"))
        return {"defect": diagnostics.defect(prof), "degrees": prof.degrees}, EXIT_OK
    if what == "discrepancy":
        st = diagnostics.discrepancy_stats(A, A.span, _need(args.s, "-s"), _need(args.m, "-m"))
        return st | {"r": st.r, "R": st.R} if False else {"stats": st, "r": st.r, "R": st.R}, EXIT_OK
    if what == "audit":
        return diagnostics.translate_intersection_audit(A, _need(args.m, "-m")), EXIT_OK
    rep = diagnostics.case_report(A, args.alpha, args.beta, args.eps)
    return {"report": rep, "window_bound": rep.window_bound,
            "window_bound_le_defect": (rep.window_bound or 0) <= rep.K_exact}, EXIT_OK


def _problem(args):
    if (args.n is None) == (args.mod is None):
        raise ValueError("give exactly one of -n and --mod")
    amb = core.Interval(args.n) if args.n is not None else core.Cyclic(args.mod)
    return solver.SearchProblem(args.kind, amb, args.ell or 1)


def _config(args):
    return solver.PruneConfig(use_upper_bound_pruning=not args.no_bound_pruning,
                              parallel_degree=args.parallel, node_budget=args.node_budget)


def _result_payload(res: solver.SearchResult):
    return {"max_size": res.max_size, "witness": res.witness, "optimal": res.optimal,
            "nodes_explored": res.nodes_explored, "pruned_by_bound": res.pruned_by_bound}


def cmd_maximize(args):
    problem = _problem(args)
    cache = solver.ResultCache.load(args.cache) if args.cache else None
    res = solver.maximize_cached(problem, _config(args), cache)
    if cache is not None:
        cache.save()
    return _result_payload(res), EXIT_OK if res.optimal else EXIT_LIMIT


def cmd_table(args):
    cache = solver.ResultCache.load(args.cache) if args.cache else None
    try:
        rows = solver.extremal_table(args.kind, args.n_max, _config(args), args.ell or 1, cache)
        code = EXIT_OK
    except solver.ResourceLimit as exc:
        rows, code = exc.rows, EXIT_LIMIT
    if cache is not None:
        cache.save()
    return [{"n": n, "max_size": k, "witness": w} for n, k, w in rows], code


def cmd_feasibility(args):
    rep = bounds.parameter_feasibility(
        bounds.FeasibilityParams(args.alpha, args.beta, args.eps, args.gamma, args.mode))
    return rep, EXIT_OK if rep.feasible else EXIT_VIOLATED


def cmd_selfcheck(args):
    checks = {}
    for kind, ell in (("sidon", 1), ("weak", 1), ("thin", 2), ("thin", 3)):
        ok = all(solver.maximize(solver.SearchProblem.interval(kind, n, ell)).max_size
                 == solver.brute_force(solver.SearchProblem.interval(kind, n, ell)).max_size
                 for n in range(1, 13))
        checks[f"oracle_{kind}_{ell}"] = ok
    for p in (2, 3, 5, 7):
        A = constructions.bose_chowla(p)
        h = core.difference_histogram(A)
        checks[f"bose_chowla_{p}"] = len(A) == p and all(
            h[r] == (0 if r % (p + 1) == 0 else 1) for r in range(1, p * p - 1))
    for p, ell in ((3, 2), (5, 2), (5, 4), (7, 3)):
        A = constructions.thin_from_bose_chowla(p, ell)
        h = core.difference_histogram(A)
        checks[f"thin_{p}_{ell}"] = A == constructions.thin_direct(p, ell) and all(
            h[r] == (0 if r % (p + 1) == 0 else ell) for r in range(1, A.modulus))
    return {"checks": checks}, EXIT_OK if all(checks.values()) else EXIT_VIOLATED


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sidon", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct")
    c.add_argument("method", choices=["powers2", "greedy", "bose-chowla", "thin"])
    c.add_argument("-q", type=int)
    c.add_argument("--ell", type=int)
    c.add_argument("-n", type=int)
    c.add_argument("--seed-file")
    c.add_argument("--out", help="also write the set in the text format")
    c.set_defaults(func=cmd_construct)

    def set_input(sp):
        sp.add_argument("elements", nargs="*", type=int)
        sp.add_argument("--file")
        sp.add_argument("--mod", type=int)
        sp.add_argument("-n", type=int)

    v = sub.add_parser("verify")
    v.add_argument("property", choices=["sidon", "weak", "thin"])
    v.add_argument("--ell", type=int)
    set_input(v)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds")
    b.add_argument("--kind", required=True, choices=list(BOUND_KINDS))
    b.add_argument("-n", type=int, required=True)
    b.add_argument("--ell", type=int)
    b.add_argument("--gamma", type=float, default=0.002)
    b.set_defaults(func=cmd_bounds)

    d = sub.add_parser("diagnose")
    d.add_argument("what", choices=["slack", "weak-slack", "defect", "discrepancy",
                                    "case-report", "audit", "translate-count"])
    set_input(d)
    d.add_argument("--ell", type=int)
    d.add_argument("-m", type=int)
    d.add_argument("-s", type=int)
    d.add_argument("--alpha", type=float, default=0.137)
    d.add_argument("--beta", type=float, default=0.037)
    d.add_argument("--eps", type=float, default=0.235)
    d.set_defaults(func=cmd_diagnose)

    def search_flags(sp):
        sp.add_argument("--kind", required=True, choices=list(solver.KINDS))
        sp.add_argument("--ell", type=int)
        sp.add_argument("--cache")
        sp.add_argument("--parallel", type=int, default=1)
        sp.add_argument("--node-budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
        sp.add_argument("--no-bound-pruning", action="store_true")

    mx = sub.add_parser("maximize")
    search_flags(mx)
    mx.add_argument("-n", type=int)
    mx.add_argument("--mod", type=int)
    mx.set_defaults(func=cmd_maximize)

    t = sub.add_parser("table")
    search_flags(t)
    t.add_argument("--n-max", "-n-max", dest="n_max", type=int, required=True)
    t.add_argument("--csv", action="store_true")
    t.set_defaults(func=cmd_table)

    f = sub.add_parser("feasibility")
    f.add_argument("--mode", choices=["sidon", "weak"], default="sidon")
    for name in ("alpha", "beta", "eps", "gamma"):
        f.add_argument(f"--{name}", type=float, required=True)
    f.set_defaults(func=cmd_feasibility)

    s = sub.add_parser("selfcheck")
    s.set_defaults(func=cmd_selfcheck)
    return p


def _inputs(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)}


def _absorb_elements(args, extra) -> None:
    # argparse will not resume a '*' positional after options, so collect leftovers here
    if not extra:
        return
    if not hasattr(args, "elements"):
        raise InvalidInput(f"unrecognized arguments: {' '.join(extra)}")
    try:
        args.elements = list(args.elements) + [int(tok) for tok in extra]
    except ValueError:
        raise InvalidInput(f"unrecognized arguments: {' '.join(extra)}") from None


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    command = None
    inputs: dict = {}
    try:
        args, extra = parser.parse_known_args(argv)
        _absorb_elements(args, extra)
        command, inputs = args.command, _inputs(args)
        result, code = args.func(args)
    except (InvalidInput, ValueError, TypeError, OSError) as exc:
        result, code = {"error": str(exc)}, EXIT_INVALID
    except (solver.ResourceLimit, bounds.IndeterminateSignError) as exc:
        result, code = {"error": str(exc)}, EXIT_LIMIT
    if command == "table" and inputs.get("csv") and code != EXIT_INVALID:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "max_size", "witness"])
        for row in result:
            w.writerow([row["n"], row["max_size"], " ".join(map(str, row["witness"].elements))])
        stdout.write(buf.getvalue())
        return code
    outcome = {"command": command, "inputs": inputs, "result": result, "status": STATUS[code]}
    stdout.write(dumps(outcome) + "\n")
    return code


def main():
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    sys.exit(run())


if __name__ == "__main__":
    main()
