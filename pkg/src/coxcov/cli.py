"""Command-line front end.

Verbs:
  verify     run verification suites per group, emit a report
  series     graded multiplicity series of a character in B
  constants  the k_{ij} table of a group
  cache      build / inspect / purge the on-disk group cache

Exit codes: 0 all pass (findings allowed), 1 at least one fail,
2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import cache as cache_mod
from .covariants import (CovariantStack, constants_table, freeness_check,
                         j2_invariance_check, pr_structure_check,
                         solomon_check)
from .differentials import differential_identity_suite
from .groups import CatalogueError, build_group, canonical_code
from .little_adjoint import little_adjoint_suite
from .molien import (covariant_series_product_formula,
                     graded_multiplicity_series, invariants_series)
from .reports import FAIL, PASS, CheckRecord, Report

DEFAULT_GROUPS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4",
                  "I2(5)", "G2", "I2(8)", "F4", "H3"]

ALL_CHECKS = ["differentials", "solomon", "constants", "freeness",
              "structure", "j2-invariance", "little-adjoint", "molien",
              "reeder", "lie-bridge"]

LIE_CODES = {"A1", "A2", "B2"}


class UsageError(ValueError):
    pass


def _build_stack(code, c_values, cache_dir, allow_long):
    group, cb, _ = cache_mod.load_stack(cache_dir, code, allow_long=allow_long)
    return CovariantStack(group, c_values=c_values, cb=cb)


def _c_values_for(group, c_long, c_short):
    if c_long is None and c_short is None:
        return None
    vals = []
    for ci in range(len(group.reflection_classes)):
        if ci == group.class_ell and c_long is not None:
            vals.append(Fraction(c_long))
        elif ci != group.class_ell and c_short is not None:
            vals.append(Fraction(c_short))
        else:
            vals.append(Fraction(1))
    return vals


def _molien_check(stack):
    import time
    t0 = time.time()
    g = stack.group
    failures = []
    triv = graded_multiplicity_series(g, g.character("trivial"))
    if triv != invariants_series(g):
        failures.append("trivial-character series != product formula")
    refl = graded_multiplicity_series(g, g.character("reflection"))
    if refl != covariant_series_product_formula(g):
        failures.append("reflection-character series != product formula")
    details = {"series": refl.as_list()}
    if failures:
        details["witness"] = failures
    return CheckRecord("molien", g.code, FAIL if failures else PASS,
                       details, time.time() - t0)


def run_suite(config: dict) -> Report:
    groups = config["groups"]
    checks = config["checks"]
    seed = config.get("seed", 0)
    cache_dir = config.get("cache_dir") or cache_mod.default_cache_dir()
    allow_long = config.get("allow_long", False)
    records = []
    lie_checks = [c for c in checks if c in ("reeder", "lie-bridge")]
    group_checks = [c for c in checks if c not in ("reeder", "lie-bridge")]
    for code in groups:
        code = canonical_code(code)
        stack = None
        if group_checks:
            group = build_group(code, allow_long=allow_long)
            c_values = _c_values_for(group, config.get("c_long"),
                                     config.get("c_short"))
            stack = _build_stack(code, c_values, cache_dir, allow_long)
        constants_rec = None
        for check in group_checks:
            if check == "differentials":
                import time
                t0 = time.time()
                try:
                    details = differential_identity_suite(
                        stack.group, stack.cb, seed=seed,
                        n_samples=config.get("n_samples", 50))
                    records.append(CheckRecord("differentials", code, PASS,
                                               details, time.time() - t0))
                except AssertionError as exc:
                    records.append(CheckRecord(
                        "differentials", code, FAIL,
                        {"witness": [str(exc)]}, time.time() - t0))
            elif check == "solomon":
                records.append(solomon_check(stack))
            elif check == "constants":
                constants_rec = constants_table(stack)
                records.append(constants_rec)
            elif check == "freeness":
                records.append(freeness_check(stack))
            elif check == "structure":
                records.append(pr_structure_check(stack, constants_rec))
            elif check == "j2-invariance":
                records.append(j2_invariance_check(stack, seed=seed))
            elif check == "molien":
                records.append(_molien_check(stack))
            elif check == "little-adjoint":
                if len(stack.group.reflection_classes) != 2:
                    continue
                records.append(little_adjoint_suite(stack))
                if stack.group.code in ("B2", "G2", "I2(4)", "I2(8)"):
                    records.append(little_adjoint_suite(
                        stack, use_class=1 - stack.group.class_ell,
                        label="little-adjoint-swapped"))
        if lie_checks and code in LIE_CODES:
            if code == "B2" and not allow_long:
                continue
            from .lie_bridge import (build_lie, phi_injectivity_test,
                                     reeder_record, tau_harmonic_injectivity,
                                     weyl_denominator_check)
            L = build_lie(code)
            modules = ["adjoint"] if code != "A2" else ["adjoint", "s3c3"]
            for check in lie_checks:
                if check == "reeder":
                    for mod in modules:
                        records.append(reeder_record(L, mod))
                elif check == "lie-bridge":
                    records.append(weyl_denominator_check(L))
                    records.append(tau_harmonic_injectivity(L))
                    if code != "B2":
                        for mod in modules:
                            records.append(phi_injectivity_test(L, mod))
    return Report(config=_config_doc(config), records=records)


def _config_doc(config):
    doc = {k: v for k, v in config.items() if v is not None}
    doc["cache_dir"] = str(doc.get("cache_dir") or
                           cache_mod.default_cache_dir())
    return doc


def _parse_checks(spec: str):
    if spec == "all":
        return list(ALL_CHECKS)
    out = []
    for c in spec.split(","):
        c = c.strip()
        if c not in ALL_CHECKS:
            raise UsageError(f"unknown check {c!r}; valid: {ALL_CHECKS}")
        out.append(c)
    return out


def _add_common(p):
    p.add_argument("--group", action="append", dest="groups", default=None,
                   help="group code (repeatable); default: the full suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit", choices=["json", "text"], default="text")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--c-long", default=None,
                   help="rational multiplicity on the long reflection class")
    p.add_argument("--c-short", default=None,
                   help="rational multiplicity on the short reflection class")


def make_parser():
    ap = argparse.ArgumentParser(prog="coxcov")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run verification checks")
    _add_common(v)
    v.add_argument("--checks", default=None,
                   help="comma list from " + ",".join(ALL_CHECKS))
    v.add_argument("--samples", type=int, default=None,
                   help="random elements per differential identity")
    v.add_argument("--config", default=None,
                   help="JSON config file; explicit flags win on conflict")

    s = sub.add_parser("series", help="graded multiplicity series")
    _add_common(s)
    s.add_argument("--char", default="reflection",
                   choices=["trivial", "sign", "reflection", "little-adjoint"])

    c = sub.add_parser("constants", help="the k_ij table")
    _add_common(c)

    k = sub.add_parser("cache", help="manage the on-disk cache")
    k.add_argument("action", choices=["build", "inspect", "purge"])
    _add_common(k)
    return ap


def cmd_verify(args) -> int:
    import json as _json
    file_cfg = {}
    if args.config:
        try:
            file_cfg = _json.loads(open(args.config).read())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config file: {exc}")

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        return file_cfg.get(key, default)

    groups = pick(args.groups, "groups", list(DEFAULT_GROUPS))
    for g in groups:
        if canonical_code(g) == "H4" and not args.allow_long:
            print("H4 is an opt-in long run: exact linear algebra at degree "
                  "~58; rerun with --allow-long.", file=sys.stderr)
            return 2
    checks = pick(args.checks, "checks", "all")
    if isinstance(checks, str):
        checks = _parse_checks(checks)
    else:
        checks = _parse_checks(",".join(checks))
    config = {
        "groups": [canonical_code(g) for g in groups],
        "checks": checks,
        "seed": pick(args.seed if args.seed != 0 else None, "seed", 0),
        "c_long": pick(args.c_long, "c_long", None),
        "c_short": pick(args.c_short, "c_short", None),
        "cache_dir": pick(args.cache_dir, "cache_dir", None),
        "allow_long": args.allow_long or file_cfg.get("allow_long", False),
        "n_samples": pick(args.samples, "samples", 50),
        "emit": args.emit,
    }
    report = run_suite(config)
    sys.stdout.write(report.to_json() if args.emit == "json"
                     else report.to_text())
    return report.exit_code()


def cmd_series(args) -> int:
    import json as _json
    groups = args.groups or ["A2"]
    out = {}
    cache_dir = args.cache_dir or cache_mod.default_cache_dir()
    for code in groups:
        code = canonical_code(code)
        group = build_group(code, allow_long=args.allow_long)
        if args.char == "little-adjoint":
            if len(group.reflection_classes) != 2:
                raise UsageError(f"{code} has a single reflection class")
            stack = _build_stack(code, None, cache_dir, args.allow_long)
            from .little_adjoint import (split_group, subgroup_invariants,
                                         u_target_space, ubar_decomposition)
            split = split_group(stack.group)
            dec = ubar_decomposition(split, subgroup_invariants(split))
            chi = u_target_space(stack, dec).character(stack.group)
        else:
            chi = group.character(args.char)
        series = graded_multiplicity_series(group, chi)
        out[code] = series.as_list()
    if args.emit == "json":
        sys.stdout.write(_json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        for code, coeffs in out.items():
            sys.stdout.write(f"{code} {args.char}: {coeffs}\n")
    return 0


def cmd_constants(args) -> int:
    groups = args.groups or ["B2"]
    cache_dir = args.cache_dir or cache_mod.default_cache_dir()
    records = []
    for code in groups:
        code = canonical_code(code)
        group = build_group(code, allow_long=args.allow_long)
        c_values = _c_values_for(group, args.c_long, args.c_short)
        stack = _build_stack(code, c_values, cache_dir, args.allow_long)
        records.append(constants_table(stack))
    report = Report(config={"groups": [canonical_code(g) for g in groups],
                            "checks": ["constants"], "seed": args.seed,
                            "cache_dir": str(cache_dir)},
                    records=records)
    sys.stdout.write(report.to_json() if args.emit == "json"
                     else report.to_text())
    return report.exit_code()


def cmd_cache(args) -> int:
    import json as _json
    cache_dir = args.cache_dir or cache_mod.default_cache_dir()
    if args.action == "inspect":
        sys.stdout.write(_json.dumps(cache_mod.inspect_cache(cache_dir),
                                     indent=2) + "\n")
        return 0
    if args.action == "purge":
        n = 0
        if args.groups:
            for g in args.groups:
                n += cache_mod.purge_cache(cache_dir, canonical_code(g))
        else:
            n = cache_mod.purge_cache(cache_dir)
        sys.stdout.write(f"purged {n} cache file(s)\n")
        return 0
    groups = args.groups or list(DEFAULT_GROUPS)
    for g in groups:
        code = canonical_code(g)
        if code == "H4" and not args.allow_long:
            print("skipping H4 (needs --allow-long)", file=sys.stderr)
            continue
        group, cb, from_cache = cache_mod.load_stack(cache_dir, code,
                                                     allow_long=args.allow_long)
        src = "cache" if from_cache else "rebuilt"
        sys.stdout.write(f"{code}: {group.order} elements, "
                         f"{len(group.positive_roots)} roots ({src})\n")
    return 0


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.cmd == "verify":
            return cmd_verify(args)
        if args.cmd == "series":
            return cmd_series(args)
        if args.cmd == "constants":
            return cmd_constants(args)
        if args.cmd == "cache":
            return cmd_cache(args)
        raise UsageError("no command")
    except (UsageError, CatalogueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:          # internal error contract: exit 3
        import traceback
        traceback.print_exc()
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
