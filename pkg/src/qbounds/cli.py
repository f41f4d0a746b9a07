"""Command-line front end.

Subcommands: eval, bound, tables, verify, oracle, classify.  One structured
JSON document goes to stdout; diagnostics go to stderr.  Exit codes:
0 = success / all-pass, 1 = verification or table mismatch, 2 = usage or
precondition error.  QB_PRECISION (decimal digits) overrides the default
working precision; the --digits flag beats the environment variable.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict
from fractions import Fraction

import mpmath

from . import __version__
from .eb_bounds import (BoundParams, eb_rate_bound, eb_rate_bound_continuous,
                        rank_bound, verify_rank_monotonicity)
from .errors import (DomainError, PreconditionError, QBoundsError,
                     ResourceBudgetError)
from .geometry import (SUPPORTED_PRIMES, classify_rank, codim_guarantees,
                       constants, derive_c_n0, derive_N, envelope_check,
                       f1_monotonicity_scan, paper_tables, threshold_F,
                       threshold_F_array, baseline_rank)
from .oracle import (eb_soundness_sweep, johnson_suite, max_code_size,
                     pigeonhole_suite, serialize_code)
from .precision import DEFAULT_POLICY, PrecisionPolicy
from .qcore import (entropy, entropy_d1, entropy_d2, hamming_ball_volume,
                    johnson_radius, johnson_radius_d1, stirling_bounds)

SCHEMA_VERSION = "1"

HOMOTOPY_NOTE = ("homotopy equivalent to S^n, RP^n, CP^{n/2}, or a lens space")


def computed(x):
    return {"value": x, "provenance": "computed"}


def paper_val(x):
    return {"value": x, "provenance": "paper-constant"}


def _document(command, inputs, results, diagnostics, deterministic):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": diagnostics,
    }
    if not deterministic:
        doc["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    return doc


def _emit(doc, pretty=False):
    if pretty:
        print(_render_pretty(doc))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True, default=str))


def _render_pretty(doc, indent=0):
    out = []

    def walk(obj, depth):
        pad = "  " * depth
        if isinstance(obj, dict):
            if set(obj) == {"value", "provenance"}:
                out.append(f"{obj['value']}  [{obj['provenance']}]")
                return
            out.append("")
            for k, v in obj.items():
                out.append(f"{pad}{k}: ")
                prev = len(out)
                walk(v, depth + 1)
                if len(out) > prev:  # nested block: merge marker line
                    out[prev - 1] = out[prev - 1].rstrip()
                else:
                    out[prev - 1] += str(v)
        elif isinstance(obj, list):
            out.append("")
            for v in obj:
                out.append(f"{pad}- ")
                prev = len(out)
                walk(v, depth + 1)
                if len(out) == prev:
                    out[prev - 1] += str(v)
        else:
            out[-1] += str(obj)

    out.append("")
    walk(doc, indent)
    return "\n".join(ln for ln in out if ln.strip())


def _digits(args):
    if getattr(args, "digits", None):
        return args.digits
    env = os.environ.get("QB_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"QB_PRECISION must be an integer, got {env!r}")
    return None


def _policy(args) -> PrecisionPolicy:
    dig = _digits(args)
    if dig is None:
        return DEFAULT_POLICY
    return PrecisionPolicy(escalation_digits=max(dig, 17))


def _num(x):
    """JSON-safe numeric conversion (mpf -> float, Fraction -> str)."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, mpmath.mpf):
        return float(x)
    return x


# --- subcommand handlers ---------------------------------------------------

def cmd_eval(args) -> int:
    dig = _digits(args)
    fn = args.function
    diagnostics = []
    if fn == "entropy":
        res = {"value": computed(_num(entropy(args.q, args.x, digits=dig)))}
        inputs = {"q": args.q, "x": args.x}
    elif fn == "entropy_d1":
        res = {"value": computed(_num(entropy_d1(args.q, args.x, digits=dig)))}
        inputs = {"q": args.q, "x": args.x}
    elif fn == "entropy_d2":
        res = {"value": computed(_num(entropy_d2(args.q, args.x, digits=dig)))}
        inputs = {"q": args.q, "x": args.x}
    elif fn == "johnson":
        res = {"value": computed(_num(johnson_radius(args.q, args.delta, digits=dig)))}
        inputs = {"q": args.q, "delta": args.delta}
    elif fn == "johnson_d1":
        res = {"value": computed(_num(johnson_radius_d1(args.q, args.delta, digits=dig)))}
        inputs = {"q": args.q, "delta": args.delta}
    elif fn == "ball_volume":
        res = {"value": computed(hamming_ball_volume(args.q, args.n, args.e))}
        inputs = {"q": args.q, "n": args.n, "e": args.e}
    elif fn == "stirling":
        lo, hi = stirling_bounds(args.k, digits=dig)
        res = {"lower": computed(_num(lo)), "upper": computed(_num(hi))}
        inputs = {"k": args.k}
    else:  # pragma: no cover - argparse choices guard this
        raise DomainError(f"unknown function {fn!r}")
    if dig is not None:
        inputs["digits"] = dig
    _emit(_document("eval", inputs, res, diagnostics, args.deterministic),
          args.pretty)
    return 0


def cmd_bound(args) -> int:
    q = args.q if args.q is not None else args.p
    if q is None:
        raise DomainError("one of --q / --p is required")
    if (args.d is None) == (args.delta is None):
        raise DomainError("exactly one of --d / --delta is required")
    inputs = {"q": q, "n": args.n, "d": args.d, "delta": args.delta,
              "form": args.form}
    if args.form == "rank":
        delta = Fraction(args.d, args.n) if args.d is not None else args.delta
        rb = rank_bound(q, args.n, delta)
        results = {
            "r_upper": computed(rb.r_upper),
            "terms": [{"label": lab, **computed(val)} for lab, val in rb.terms],
        }
    else:
        params = BoundParams(q=q, n=args.n, d=args.d, delta=args.delta)
        fn = eb_rate_bound if args.form == "finite" else eb_rate_bound_continuous
        br = fn(params)
        results = {
            "rate_upper": computed(br.rate_upper),
            "e": computed(br.e),
            "terms": [{"label": lab, **computed(val)} for lab, val in br.terms],
        }
    _emit(_document("bound", inputs, results, [], args.deterministic),
          args.pretty)
    return 0


def _tables_rows(which, primes, policy, diagnostics):
    paper = paper_tables()
    rows = []
    mismatch = False
    if which == "constants":
        for p in primes:
            k = constants(p)
            rows.append({"p": p, "f1": computed(k.f1), "f2": computed(k.f2),
                         "f3": computed(k.f3), "f4": computed(k.f4),
                         "f5": computed(k.f5)})
    elif which == "candn0":
        for p in primes:
            derived = derive_c_n0(p, policy=policy)
            if derived.escalations:
                diagnostics.append(
                    ["info", f"p={p}: {derived.escalations} comparisons "
                             f"escalated to {policy.escalation_digits} digits"])
            match = derived.n0 == paper["n0"][p]
            mismatch |= not match
            rows.append({"p": p, "c": paper_val(str(paper["c"][p])),
                         "n0_paper": paper_val(paper["n0"][p]),
                         "n0_recomputed": computed(derived.n0),
                         "match": match})
    elif which == "Np":
        for p in primes:
            derived = derive_N(p, policy=policy)
            if derived.escalations:
                diagnostics.append(
                    ["info", f"p={p}: {derived.escalations} comparisons "
                             f"escalated to {policy.escalation_digits} digits"])
            match = derived.N == paper["N"][p]
            mismatch |= not match
            rows.append({"p": p, "N_paper": paper_val(paper["N"][p]),
                         "N_recomputed": computed(derived.N),
                         "first_failure": computed(derived.first_failure),
                         "match": match})
    elif which == "anchor":
        import numpy as np
        for p in primes:
            N = paper["N"][p]
            ns = np.arange(16, N + 1)
            F = threshold_F_array(p, ns)
            base = np.array([baseline_rank(int(n)) for n in ns])
            holds = bool((F > base).all())
            mismatch |= not holds
            rows.append({"p": p, "N_paper": paper_val(N),
                         "scanned": computed(int(ns.size)),
                         "anchor_holds": holds})
    else:  # pragma: no cover
        raise DomainError(f"unknown table {which!r}")
    return rows, mismatch


def _rows_to_csv(rows):
    def flat(v):
        if isinstance(v, dict) and set(v) == {"value", "provenance"}:
            return v["value"]
        return v
    buf = io.StringIO()
    fields = list(rows[0].keys())
    writer = csv.DictWriter(buf, fieldnames=fields)
    writer.writeheader()
    for row in rows:
        writer.writerow({k: flat(v) for k, v in row.items()})
    return buf.getvalue()


def cmd_tables(args) -> int:
    primes = tuple(args.primes) if args.primes else SUPPORTED_PRIMES
    for p in primes:
        if p not in SUPPORTED_PRIMES:
            raise DomainError(f"prime {p} is not in the supported set "
                              f"{SUPPORTED_PRIMES}")
    policy = _policy(args)
    diagnostics = []
    rows, mismatch = _tables_rows(args.which, primes, policy, diagnostics)
    inputs = {"which": args.which, "primes": list(primes), "format": args.format}
    if args.format == "csv":
        sys.stdout.write(_rows_to_csv(rows))
    else:
        doc = _document("tables", inputs, {"rows": rows}, diagnostics,
                        args.deterministic)
        _emit(doc, args.pretty)
    if mismatch:
        print("table mismatch against published values", file=sys.stderr)
        return 1
    return 0


def _verify_stirling():
    from .report import VerificationReport
    f = 1
    checked = 0
    for k in range(1, 10_001):
        f *= k
        lo, hi = stirling_bounds(k)
        lk = math.log(f)
        checked += 1
        if not lo < lk < hi:
            return VerificationReport(
                suite="stirling", instances_checked=checked, passed=False,
                counterexample={"k": k, "lower": lo, "ln_kfact": lk, "upper": hi})
    for k in (10 ** 5, 10 ** 6):
        with mpmath.workdps(50):
            ref = mpmath.loggamma(k + 1)
            lo, hi = stirling_bounds(k, digits=50)
            checked += 1
            if not lo < ref < hi:
                return VerificationReport(
                    suite="stirling", instances_checked=checked, passed=False,
                    counterexample={"k": k, "lower": float(lo),
                                    "ref": float(ref), "upper": float(hi)})
    return VerificationReport(suite="stirling", instances_checked=checked,
                              passed=True)


def _verify_monotonicity():
    from .report import VerificationReport
    checked = 0
    grid = list(range(16, 201)) + [10 ** 3, 10 ** 4, 10 ** 5]
    for p in SUPPORTED_PRIMES:
        for n in grid:
            checked += 1
            if not verify_rank_monotonicity(p, n):
                return VerificationReport(
                    suite="monotonicity", instances_checked=checked,
                    passed=False, counterexample={"p": p, "n": n})
    return VerificationReport(suite="monotonicity", instances_checked=checked,
                              passed=True)


def _verify_envelope():
    from .report import VerificationReport
    checked = 0
    payload = {}
    for p in SUPPORTED_PRIMES:
        rep = envelope_check(p, 16, 10 ** 5)
        checked += rep.instances_checked
        if not rep.passed:
            return VerificationReport(suite="envelope", instances_checked=checked,
                                      passed=False,
                                      counterexample=rep.counterexample)
        payload[str(p)] = rep.payload["n_star"]
    return VerificationReport(suite="envelope", instances_checked=checked,
                              passed=True, payload={"n_star": payload})


_SUITES = {
    "stirling": lambda seed: _verify_stirling(),
    "johnson": lambda seed: johnson_suite(seed=seed),
    "pigeonhole": lambda seed: pigeonhole_suite(seed=seed),
    "eb-soundness": lambda seed: eb_soundness_sweep(seed=seed),
    "monotonicity": lambda seed: _verify_monotonicity(),
    "f1": lambda seed: f1_monotonicity_scan(101),
    "envelope": lambda seed: _verify_envelope(),
}


def cmd_verify(args) -> int:
    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    results = []
    all_passed = True
    for name in suites:
        rep = _SUITES[name](args.seed)
        all_passed &= rep.passed
        results.append({
            "suite": rep.suite,
            "instances_checked": computed(rep.instances_checked),
            "passed": rep.passed,
            "counterexample": rep.counterexample,
            "payload": {k: _num(v) if not isinstance(v, dict) else v
                        for k, v in rep.payload.items()},
        })
    inputs = {"suite": args.suite, "seed": args.seed}
    doc = _document("verify", inputs, {"reports": results}, [],
                    args.deterministic)
    _emit(doc, args.pretty)
    return 0 if all_passed else 1


def cmd_oracle(args) -> int:
    size, witness = max_code_size(args.q, args.n, args.d,
                                  time_limit=args.time_limit)
    results = {
        "max_code_size": computed(size),
        "witness": serialize_code(witness),
    }
    diagnostics = []
    try:
        bound = eb_rate_bound(BoundParams(q=args.q, n=args.n, d=args.d))
        rate = math.log(size) / (args.n * math.log(args.q))
        results["rate"] = computed(rate)
        results["eb_rate_bound"] = computed(bound.rate_upper)
        results["sound"] = bool(rate <= bound.rate_upper)
    except (DomainError, PreconditionError) as exc:
        diagnostics.append(["info", f"bound comparison skipped: {exc}"])
    inputs = {"q": args.q, "n": args.n, "d": args.d}
    _emit(_document("oracle", inputs, results, diagnostics,
                    args.deterministic), args.pretty)
    return 0


def cmd_classify(args) -> int:
    report = classify_rank(args.p, args.n, args.r)
    results = {
        "classification": report.classification.value,
        "F_value": computed(report.F_value),
        "baseline": computed(report.baseline),
        "max_rank": computed(report.max_rank),
    }
    if report.classification.value in ("MAIN_THEOREM", "BASELINE",
                                       "MAX_RANK_ONLY"):
        results["conclusion"] = HOMOTOPY_NOTE
    if report.classification.value == "MAIN_THEOREM":
        codim = codim_guarantees(args.p, args.n, args.r)
        results["codim_caps"] = {
            "tau1": computed(str(codim.tau1_codim_cap)),
            "tau2": computed(str(codim.tau2_codim_cap)),
            "rank_bound_quarter": computed(codim.rank_bound_quarter),
            "rank_bound_third": computed(codim.rank_bound_third),
        }
    inputs = {"p": args.p, "n": args.n, "r": args.r}
    _emit(_document("classify", inputs, results, [], args.deterministic),
          args.pretty)
    return 0


# --- argument parsing ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbounds",
        description="Finite-length Elias-Bassalygo bounds for q-ary codes "
                    "and their symmetry-rank consequences.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--pretty", action="store_true",
                       help="human-readable rendering instead of JSON")
        p.add_argument("--deterministic", action="store_true",
                       help="suppress the timestamp field")
        p.add_argument("--digits", type=int, default=None,
                       help="decimal digits of working precision "
                            "(beats QB_PRECISION)")

    p = sub.add_parser("eval", help="evaluate one special function")
    p.add_argument("function", choices=["entropy", "entropy_d1", "entropy_d2",
                                        "johnson", "johnson_d1",
                                        "ball_volume", "stirling"])
    p.add_argument("--q", type=int)
    p.add_argument("--x", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--k", type=int)
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bound", help="rate or rank bound with term breakdown")
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int, help="alias for --q (rank form)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--delta", type=float)
    p.add_argument("--form", choices=["finite", "continuous", "rank"],
                   default="finite")
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("tables", help="re-derive the published tables")
    p.add_argument("--which", choices=["constants", "candn0", "Np", "anchor"],
                   required=True)
    p.add_argument("--primes", type=int, nargs="*", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=["all"] + list(_SUITES), default="all")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact A_q(n, d) by exhaustive search")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--time-limit", type=float, default=60.0)
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("classify", help="rank classification report")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, PreconditionError, ResourceBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
