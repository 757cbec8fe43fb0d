"""Command-line interface: reproducible, scriptable commands with JSON output.

Exit codes are a stable contract: 0 success/pass, 2 parse failure,
3 non-bicritical input, 4 hypotheses unmet, 5 rigidity violation.
JSON goes to stdout (schema tag "arbordyn/1", keys sorted, no timestamps,
so identical inputs produce byte-identical output); diagnostics go to
stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import critical as crit
from . import divisibility as divis
from . import galois
from .errors import (
    CriticalFieldError,
    GrowthCapError,
    HypothesisError,
    NotBicriticalError,
)
from .factorint import FactorBudget, factor_integer
from .parsing import ParseError, parse_map, parse_point
from .ratmap import (
    DEFAULT_GROWTH_CAP_BITS,
    DEFAULT_HEIGHT_CAP_BITS,
    DEFAULT_MAX_STEPS,
)
from .reduction import bad_reduction_primes

SCHEMA = "arbordyn/1"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_NOT_BICRITICAL = 3
EXIT_HYPOTHESES = 4
EXIT_RIGIDITY = 5


@dataclass
class CommandConfig:
    growth_cap_bits: int = DEFAULT_GROWTH_CAP_BITS
    trial_bound: int = 10 ** 6
    rho_budget: int = 10 ** 8
    orbit_max_steps: int = DEFAULT_MAX_STEPS
    height_cap_bits: int = DEFAULT_HEIGHT_CAP_BITS
    output: str = "json"
    seed: int = 0
    threads: int = 1

    def budget(self) -> FactorBudget:
        return FactorBudget(self.trial_bound, self.rho_budget, self.seed)

    def to_dict(self) -> dict:
        return {
            "growth_cap_bits": self.growth_cap_bits,
            "trial_bound": self.trial_bound,
            "rho_budget": self.rho_budget,
            "orbit_max_steps": self.orbit_max_steps,
            "height_cap_bits": self.height_cap_bits,
            "seed": self.seed,
            "threads": self.threads,
        }


def _config_from_args(args) -> CommandConfig:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("ARBORDYN_THREADS", "1"))
    config = CommandConfig(
        growth_cap_bits=args.growth_cap_bits,
        trial_bound=args.trial_bound,
        rho_budget=args.rho_budget,
        orbit_max_steps=args.steps,
        height_cap_bits=args.height_cap_bits,
        output=args.output,
        seed=args.seed,
        threads=threads,
    )
    budgets = (config.growth_cap_bits, config.trial_bound, config.rho_budget,
               config.orbit_max_steps, config.height_cap_bits, config.threads)
    if any(b <= 0 for b in budgets):
        raise SystemExit(_fail("all budgets must be positive", EXIT_PARSE))
    return config


def _emit(payload: dict, config: CommandConfig, command: str, text_lines=None) -> None:
    if config.output == "text" and text_lines is not None:
        for line in text_lines:
            print(line)
        return
    doc = {"schema": SCHEMA, "command": command, "config": config.to_dict()}
    doc.update(payload)
    print(json.dumps(doc, sort_keys=True, indent=2))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_orbit(args) -> int:
    config = _config_from_args(args)
    try:
        phi = parse_map(args.map)
        start = parse_point(args.start)
    except ParseError as exc:
        return _fail(str(exc), EXIT_PARSE)
    rec = phi.orbit(start, config.orbit_max_steps, config.height_cap_bits)
    lines = [f"orbit of {start} under {args.map}:"]
    lines += [f"  {i}: {pt}" for i, pt in enumerate(rec.points)]
    lines.append(f"status: {rec.status}"
                 + (f" (preperiod {rec.preperiod}, period {rec.period})"
                    if rec.status == "preperiodic" else ""))
    _emit({"orbit": rec.to_dict()}, config, "orbit", lines)
    return EXIT_OK


def _relation_summary(rel) -> str:
    if rel.kind == "trailing":
        return f"trailing({rel.n}, {rel.m})"
    if rel.kind == "collision":
        return f"collision({rel.n}) at {rel.value}"
    if rel.kind == "single_orbit_preperiodic":
        return f"single_orbit_preperiodic({rel.preperiod}, {rel.period})"
    return f"none_found({rel.search_bound})"


def cmd_critical(args) -> int:
    config = _config_from_args(args)
    try:
        phi = parse_map(args.map)
    except ParseError as exc:
        return _fail(str(exc), EXIT_PARSE)
    try:
        ok, data = crit.is_bicritical(phi)
        if not ok:
            return _fail(
                f"map is not bicritical: {len(data.points)} critical points",
                EXIT_NOT_BICRITICAL,
            )
        rel = crit.critical_orbit_relation(phi, args.bound, config.height_cap_bits)
    except (NotBicriticalError, CriticalFieldError) as exc:
        return _fail(str(exc), EXIT_NOT_BICRITICAL)
    payload = {"critical": data.to_dict(), "relation": rel.to_dict()}
    lines = ["critical points:"]
    lines += [f"  {pt.location_str()}  (e = {pt.index})" for pt in data.points]
    lines.append(f"field: {data.field.kind}"
                 + (f"(sqrt {data.field.s})" if data.field.s else ""))
    lines.append(f"orbit relation: {_relation_summary(rel)}")
    _emit(payload, config, "critical", lines)
    return EXIT_OK


def cmd_normal_form(args) -> int:
    config = _config_from_args(args)
    try:
        phi = parse_map(args.map)
    except ParseError as exc:
        return _fail(str(exc), EXIT_PARSE)
    try:
        nf = crit.to_normal_form(phi)
        rel = crit.critical_orbit_relation(phi, args.bound, config.height_cap_bits)
    except (NotBicriticalError, CriticalFieldError) as exc:
        return _fail(str(exc), EXIT_NOT_BICRITICAL)
    payload = {"normal_form": nf.to_dict(), "relation": rel.to_dict()}
    if nf.kind == crit.BICRITICAL:
        summary = f"bicritical(a = {nf.a}, b = {nf.b})"
    elif nf.kind == crit.POWER:
        summary = f"power(c = {nf.c})"
    else:
        summary = f"inverse_power(c = {nf.c})"
    lines = [f"normal form: {summary}",
             f"conjugator mu: {nf.mu.to_dict()}",
             f"orbit relation: {_relation_summary(rel)}"]
    _emit(payload, config, "normal-form", lines)
    return EXIT_OK


def _factor_rows(terms, budget, threads):
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(factor_integer, terms, [budget] * len(terms)))
    return [factor_integer(t, budget) for t in terms]


def cmd_sequence(args) -> int:
    config = _config_from_args(args)
    if args.map is None and args.a is None:
        return _fail("need --a or --map", EXIT_PARSE)
    family_a = args.a
    try:
        phi = divis.main_family(args.a) if args.map is None else parse_map(args.map)
    except (ParseError, ValueError) as exc:
        return _fail(str(exc), EXIT_PARSE)
    if args.map is not None:
        # recognize the parametrized family to enable the f/theta columns
        pc, qc = phi.homogeneous_coeffs()
        if (phi.d == 2 and qc == (0, 0, 1) and pc[1] == 0 and pc[2] == 1
                and pc[0] != 0):
            family_a = pc[0]
    values, capped = phi.origin_values_capped(args.n, config.growth_cap_bits)
    status = "growth_capped" if capped else "complete"
    pn0 = [u for u, _ in values]
    rows = []
    for idx, val in enumerate(pn0, start=1):
        rows.append({"n": idx, "pn0": val})
    if family_a is not None and rows:
        try:
            fs = divis.f_sequence(family_a, len(rows), config.growth_cap_bits)
            for idx, row in enumerate(rows, start=1):
                row["f"] = fs[idx - 1]
                row["theta"] = divis.theta(family_a, idx, fs)
        except GrowthCapError:
            status = "growth_capped"
    if args.factor:
        factorable = [(i, t) for i, t in enumerate(pn0) if t != 0]
        facs = _factor_rows([t for _, t in factorable], config.budget(), config.threads)
        for (i, _), fac in zip(factorable, facs):
            rows[i]["factorization"] = fac.to_dict()
            rows[i]["factor_string"] = fac.format()
    payload = {"a": family_a, "n": args.n, "rows": rows, "status": status}
    lines = []
    for row in rows:
        cells = [f"n={row['n']}", f"p_n(0)={row['pn0']}"]
        if "f" in row:
            cells.append(f"f={row['f']}")
            cells.append(f"theta={row['theta']}")
        if "factor_string" in row:
            cells.append(row["factor_string"])
        lines.append("  ".join(cells))
    _emit(payload, config, "sequence", lines)
    return EXIT_OK


def cmd_certify(args) -> int:
    config = _config_from_args(args)
    if (args.m is None) == (args.a is None):
        return _fail("need exactly one of --m or --a", EXIT_PARSE)
    payload: dict = {}
    lines = []
    if args.m is not None:
        try:
            hyp = galois.hypothesis_witnesses(args.m)
        except ValueError as exc:
            return _fail(str(exc), EXIT_PARSE)
        payload["hypotheses"] = hyp.to_dict()
        lines.append(
            f"m={args.m}: S1 witness {hyp.s1_witness} ({hyp.s1_target}), "
            f"S2 witness {hyp.s2_witness} ({hyp.s2_target})"
        )
        if not hyp.met:
            payload["overall"] = "hypotheses_unmet"
            _emit(payload, config, "certify", lines + ["hypotheses unmet"])
            return EXIT_HYPOTHESES
        param = galois.alpha_parametrization(args.m)
        payload["parametrization"] = param.to_dict()
        a = param.a
        lines.append(f"a = {a}, alpha = {param.alpha}")
    else:
        a = args.a
    try:
        cert = galois.maximality_certificate(a, args.depth)
    except GrowthCapError as exc:
        return _fail(str(exc), EXIT_FAIL)
    payload["certificate"] = cert.to_dict()
    payload["overall"] = cert.overall
    lines.append(f"certificate: {cert.overall} "
                 f"(maximal levels {cert.maximal_levels})")
    _emit(payload, config, "certify", lines)
    if cert.overall == galois.ALL_MAXIMAL:
        return EXIT_OK
    if cert.overall == galois.HYPOTHESES_UNMET:
        return EXIT_HYPOTHESES
    return EXIT_FAIL


def cmd_rigid_check(args) -> int:
    config = _config_from_args(args)
    try:
        phi = parse_map(args.map)
    except ParseError as exc:
        return _fail(str(exc), EXIT_PARSE)
    exclude = []
    if args.exclude:
        for chunk in args.exclude:
            exclude += [int(x) for x in chunk.split(",") if x]
    warnings = []
    if phi.p.coeff(1) != 0 or phi.q.coeff(1) != 0:
        warnings.append(
            "hypothesis p'(0) = q'(0) = 0 fails; checking empirically anyway"
        )
    try:
        values = phi.origin_values(args.n)
    except GrowthCapError as exc:
        return _fail(str(exc), EXIT_FAIL)
    terms = [u for u, _ in values]
    if any(t == 0 for t in terms):
        return _fail("a sequence term vanishes; rigidity undefined", EXIT_FAIL)
    try:
        bad = list(bad_reduction_primes(phi, config.budget()))
    except RuntimeError:
        bad = None
    report = divis.verify_rigid_divisibility(
        terms, exclude, args.pool_depth, config.trial_bound, config.budget()
    )
    payload = {
        "report": report.to_dict(),
        "bad_reduction_primes": bad,
        "warnings": warnings,
    }
    lines = [f"terms: {terms}"]
    if warnings:
        lines += [f"warning: {w}" for w in warnings]
    if bad is not None:
        lines.append(f"bad reduction primes: {bad}")
    lines.append(f"status: {report.status}")
    for v in report.violations:
        lines.append(f"  violation p={v.prime} condition {v.condition}: {v.detail}")
    _emit(payload, config, "rigid-check", lines)
    return EXIT_OK if report.status == "pass" else EXIT_RIGIDITY


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------


def _add_common(sub) -> None:
    sub.add_argument("--output", choices=("json", "text"), default="json")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--threads", type=int, default=None,
                     help="worker processes (default: ARBORDYN_THREADS or 1)")
    sub.add_argument("--growth-cap-bits", type=int, default=DEFAULT_GROWTH_CAP_BITS)
    sub.add_argument("--trial-bound", type=int, default=10 ** 6)
    sub.add_argument("--rho-budget", type=int, default=10 ** 8)
    sub.add_argument("--steps", type=int, default=DEFAULT_MAX_STEPS,
                     help="orbit step budget")
    sub.add_argument("--height-cap-bits", type=int, default=DEFAULT_HEIGHT_CAP_BITS)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arbordyn",
        description="Exact arithmetic for bicritical rational maps over Q.",
    )
    subs = ap.add_subparsers(dest="command", required=True)

    s = subs.add_parser("orbit", help="iterate a rational point exactly")
    s.add_argument("--map", required=True)
    s.add_argument("--start", required=True)
    _add_common(s)
    s.set_defaults(func=cmd_orbit)

    s = subs.add_parser("critical", help="critical points and orbit relations")
    s.add_argument("--map", required=True)
    s.add_argument("--bound", type=int, default=12,
                   help="orbit-relation search depth")
    _add_common(s)
    s.set_defaults(func=cmd_critical)

    s = subs.add_parser("normal-form", help="conjugate to a two-term normal form")
    s.add_argument("--map", required=True)
    s.add_argument("--bound", type=int, default=12)
    _add_common(s)
    s.set_defaults(func=cmd_normal_form)

    s = subs.add_parser("sequence", help="origin iterate values and factorizations")
    s.add_argument("--a", type=int, default=None,
                   help="family parameter for (z^2+a)/z^2")
    s.add_argument("--map", default=None)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--factor", action="store_true")
    _add_common(s)
    s.set_defaults(func=cmd_sequence)

    s = subs.add_parser("certify", help="arboreal maximality certificates")
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--a", type=int, default=None)
    s.add_argument("--depth", type=int, required=True)
    _add_common(s)
    s.set_defaults(func=cmd_certify)

    s = subs.add_parser("rigid-check", help="rigid divisibility of p_n(0)")
    s.add_argument("--map", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--exclude", action="append", default=[],
                   help="comma-separated primes to exclude (repeatable)")
    s.add_argument("--pool-depth", type=int, default=6,
                   help="fully factor terms up to this index for the prime pool")
    _add_common(s)
    s.set_defaults(func=cmd_rigid_check)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    except HypothesisError as exc:
        return _fail(str(exc), EXIT_HYPOTHESES)
    except (NotBicriticalError, CriticalFieldError) as exc:
        return _fail(str(exc), EXIT_NOT_BICRITICAL)


if __name__ == "__main__":
    sys.exit(main())
