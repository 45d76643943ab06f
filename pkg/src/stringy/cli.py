"""Command-line front end: compute | gallery | fuzz.

Exit codes: 0 when every executed check and user assertion passes, 1 on a
failing check or assertion, 2 on a parse error, 3 on a validation error.
Reports carry exact rational strings; there is no floating point in the
output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import gallery as gallery_mod
from . import hodge, invariants, schema
from .errors import (
    IncompleteDataError,
    NotApplicableError,
    SchemaError,
    StringyError,
)
from .rational import format_rat
from .report import Report

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_VALIDATION_ERROR = 3


def _check_record(report) -> dict:
    record = {
        "name": report.name,
        "lhs": format_rat(report.lhs),
        "rhs": format_rat(report.rhs),
        "residual": format_rat(report.residual),
        "verdict": report.verdict,
    }
    if report.details:
        record["details"] = json.loads(json.dumps(dict(report.details), default=str))
    return record


def _hodge_table_record(result) -> dict:
    if result.exists:
        record = {
            "status": "table",
            "entries": [[p, q, h] for (p, q), h in sorted(result.table.items())],
        }
        if result.violations:
            record["property_violations"] = list(result.violations)
        return record
    witness = {str(m): [format_rat(c) for c in coeffs]
               for m, coeffs in sorted((result.witness or {}).items())}
    return {"status": "not_a_polynomial", "remainder_witness": witness}


def _assertion_records(assertions, computed) -> list[dict]:
    records = []
    for name, expected in sorted(assertions.items()):
        actual = computed.get(name)
        record = {"name": name, "expected": format_rat(expected)}
        if actual is None:
            record.update(actual="unavailable", verdict="fail")
        else:
            record.update(
                actual=format_rat(actual),
                residual=format_rat(Fraction(actual) - expected),
                verdict="pass" if Fraction(actual) == expected else "fail",
            )
        records.append(record)
    return records


def _compute_resolution(parsed: schema.ParsedInput) -> tuple[dict, int]:
    data = parsed.resolution
    violations = invariants.validate(data)
    if violations:
        return {"kind": "resolution", "validation": violations}, EXIT_VALIDATION_ERROR

    checks = []
    skipped = {}
    computed: dict[str, Fraction] = {"e_st": invariants.stringy_euler(data)}
    inv_doc: dict = {"e_st": format_rat(computed["e_st"])}

    try:
        computed["c_st_1_n1"] = invariants.c_st_1_n1(data)
        inv_doc["c_st_1_n1"] = format_rat(computed["c_st_1_n1"])
    except IncompleteDataError as exc:
        inv_doc["c_st_1_n1"] = {"status": "unavailable", "reason": str(exc)}

    checks.append(invariants.check_first_derivative_identity(data))
    if "c_st_1_n1" in computed:
        checks.append(invariants.check_main_identity(data))
    else:
        skipped["stringy_main_identity"] = "pullback intersection numbers missing"
    try:
        checks.append(invariants.check_relat_div(data))
    except IncompleteDataError as exc:
        skipped["relative_divisor_relation"] = str(exc)
    if any(s.normal_restrictions for s in data.strata.values()):
        checks.append(invariants.check_adjunction_recursion(data))

    try:
        result = invariants.stringy_hodge_numbers(data)
        inv_doc["stringy_hodge"] = _hodge_table_record(result)
        if result.exists:
            checks.append(_hodge_table_properties_report(result))
    except NotApplicableError as exc:
        inv_doc["stringy_hodge"] = {"status": "not_applicable", "reason": str(exc)}

    assertion_records = _assertion_records(parsed.assertions, computed)
    document = {
        "kind": "resolution",
        "validation": [],
        "invariants": inv_doc,
        "checks": [_check_record(c) for c in checks],
        "assertions": assertion_records,
    }
    if skipped:
        document["skipped_checks"] = skipped
    failed = (any(not c.passed for c in checks)
              or any(r["verdict"] == "fail" for r in assertion_records))
    return document, EXIT_CHECK_FAILED if failed else EXIT_OK


def _hodge_table_properties_report(result) -> Report:
    """Structural properties of an extracted table as a zero-defect check."""
    return Report("stringy_hodge_properties",
                  Fraction(len(result.violations)), Fraction(0),
                  {"violations": tuple(result.violations)})


def _compute_diamond(parsed: schema.ParsedInput) -> tuple[dict, int]:
    diamond = parsed.diamond
    violations = diamond.violations()
    if violations:
        return {"kind": "hodge_diamond", "validation": violations}, EXIT_VALIDATION_ERROR

    e_poly = hodge.e_polynomial(diamond)
    n = diamond.n
    euler = hodge.euler_number(e_poly)
    checks = [hodge.first_derivative_check(e_poly, n)]
    if parsed.chern is not None:
        checks.append(hodge.libgober_wood_check(e_poly, n, parsed.chern))
        checks.append(hodge.second_derivative_check(e_poly, n, parsed.chern))
        checks.append(hodge.virasoro_identity_form(e_poly, n, parsed.chern))
    if parsed.canonical_class_trivial:
        checks.append(hodge.cy_relation_check(e_poly, n))
        if n == 4 and all(diamond.hodge_number(p, 0) == 0 for p in (1, 2, 3)):
            checks.append(hodge.cy4_linear_relation(e_poly))

    inferred = 6 * (hodge.weighted_sum(e_poly, n, 2) - Fraction(n, 12) * euler)
    computed = {"euler": Fraction(euler), "c1_cn1_inferred": inferred}
    assertion_records = _assertion_records(parsed.assertions, computed)
    document = {
        "kind": "hodge_diamond",
        "validation": [],
        "invariants": {"euler": format_rat(euler),
                       "c1_cn1_inferred": format_rat(inferred)},
        "checks": [_check_record(c) for c in checks],
        "assertions": assertion_records,
    }
    failed = (any(not c.passed for c in checks)
              or any(r["verdict"] == "fail" for r in assertion_records))
    return document, EXIT_CHECK_FAILED if failed else EXIT_OK


def _print_human(document: dict, path: str):
    print(f"== {path} ({document['kind']})")
    if document.get("validation"):
        for violation in document["validation"]:
            print(f"  validation: {violation}")
        return
    for name, value in document.get("invariants", {}).items():
        if isinstance(value, dict):
            status = value.get("status")
            if status == "table":
                entries = ", ".join(f"h^{{{p},{q}}}={h}" for p, q, h in value["entries"])
                print(f"  {name}: {entries}")
                for violation in value.get("property_violations", ()):
                    print(f"    property violation: {violation}")
            else:
                print(f"  {name}: {status} ({value.get('reason', '')})")
        else:
            print(f"  {name} = {value}")
    for check in document.get("checks", []):
        print(f"  check {check['name']}: lhs={check['lhs']} rhs={check['rhs']} "
              f"residual={check['residual']} {check['verdict'].upper()}")
    for name, reason in document.get("skipped_checks", {}).items():
        print(f"  check {name}: skipped ({reason})")
    for record in document.get("assertions", []):
        actual = record.get("actual", "?")
        print(f"  assert {record['name']} = {record['expected']}: actual {actual} "
              f"{record['verdict'].upper()}")


def cmd_compute(args) -> int:
    worst = EXIT_OK
    for path in args.paths:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
            parsed = schema.parse_input(raw)
        except (OSError, json.JSONDecodeError, SchemaError) as exc:
            print(f"{path}: parse error: {exc}", file=sys.stderr)
            worst = max(worst, EXIT_PARSE_ERROR)
            continue
        if parsed.kind == "resolution":
            document, code = _compute_resolution(parsed)
        else:
            document, code = _compute_diamond(parsed)
        document["input"] = str(path)
        if args.json:
            print(schema.canonical_json(document), end="")
        else:
            _print_human(document, str(path))
        worst = max(worst, code)
    return worst


def cmd_gallery(args) -> int:
    if args.name is not None and args.name not in gallery_mod.BUILTIN_NAMES:
        print(f"unknown gallery entry {args.name!r}; known: "
              f"{', '.join(gallery_mod.BUILTIN_NAMES)}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    names = [args.name] if args.name else list(gallery_mod.BUILTIN_NAMES)
    if args.export is None:
        for name in names:
            if args.name is None:
                print(name)
            else:
                entry = gallery_mod.builtin(name)
                print(f"{entry.name}:")
                for key, value in entry.expected.items():
                    print(f"  {key} = {value}")
                    note = entry.provenance.get(key)
                    if note:
                        print(f"    ({note})")
        return EXIT_OK
    out_dir = Path(args.export)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        entry = gallery_mod.builtin(name)
        assertions = {key: value for key, value in entry.expected.items()
                      if isinstance(value, (int, Fraction))}
        document = schema.document_from_resolution(entry.data, assertions)
        target = out_dir / f"{name}.json"
        target.write_text(schema.canonical_json(document), encoding="utf-8")
        print(f"wrote {target}")
    return EXIT_OK


def _corrupt(data: invariants.ResolutionData) -> invariants.ResolutionData:
    """Test hook: bump one declared Chern number so the checks must fail."""
    strata = []
    done = False
    for J in data.subsets():
        s = data.strata[J]
        if not done and not s.is_empty and s.c1_cd1 is not None:
            s = invariants.StratumData(
                s.subset, s.e_poly, s.dim, euler=s.euler,
                c1_cd1=s.c1_cd1 + 1, pullback_c1_cd1=s.pullback_c1_cd1,
                normal_restrictions=s.normal_restrictions)
            done = True
        strata.append(s)
    return invariants.ResolutionData.build(data.dimension, data.divisors, strata)


def _fuzz_one(data) -> list[str]:
    problems = []
    violations = invariants.validate(data)
    if violations:
        return [f"validation: {v}" for v in violations]
    for check in (invariants.check_first_derivative_identity,
                  invariants.check_main_identity,
                  invariants.check_relat_div,
                  invariants.check_adjunction_recursion):
        report = check(data)
        if not report.passed:
            problems.append(f"{report.name}: residual {report.residual}")
    function = invariants.stringy_function(data)
    closed = invariants.stringy_euler(data)
    series_limit = function.series_at_one().coefficient(0)
    lattice_limit = invariants.restrict_v1(function).limit_at_one()
    if not closed == series_limit == lattice_limit:
        problems.append(
            f"euler paths disagree: closed {closed}, series {series_limit}, "
            f"lattice {lattice_limit}")
    if data.is_gorenstein_canonical:
        result = invariants.stringy_hodge_numbers(data)
        if result.exists and result.violations:
            problems.extend(f"table property: {v}" for v in result.violations)
    return problems


def cmd_fuzz(args) -> int:
    rng = random.Random(args.seed)
    explicit = (args.count == 1 and args.dim is not None
                and args.divisors is not None)
    passed = 0
    for index in range(args.count):
        dim = args.dim if args.dim is not None else rng.randint(1, 4)
        divisors = args.divisors if args.divisors is not None else rng.randint(0, 3)
        datum_seed = args.seed if explicit else rng.randrange(2**31)
        data = gallery_mod.random_consistent(datum_seed, dim, divisors,
                                             args.max_denominator)
        if args.corrupt:
            data = _corrupt(data)
        problems = _fuzz_one(data)
        if problems:
            print(f"FAIL at iteration {index}: "
                  f"reproduce with: stringy fuzz --seed {datum_seed} --count 1 "
                  f"--dim {dim} --divisors {divisors} "
                  f"--max-denominator {args.max_denominator}")
            for problem in problems:
                print(f"  {problem}")
            print(f"{passed}/{args.count} passed before the failure")
            return EXIT_CHECK_FAILED
        passed += 1
    print(f"{passed}/{args.count} pass")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stringy",
        description="Exact stringy invariants and identity checks from "
                    "resolution data.")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="run invariants, checks and "
                                             "assertions on input documents")
    compute.add_argument("paths", nargs="+", help="JSON input documents")
    compute.add_argument("--json", action="store_true",
                         help="emit the machine-readable report document")
    compute.set_defaults(func=cmd_compute)

    gallery = sub.add_parser("gallery", help="list or export built-in examples")
    gallery.add_argument("name", nargs="?", help="entry name (omit to list)")
    gallery.add_argument("--export", metavar="DIR",
                         help="write JSON documents into DIR")
    gallery.set_defaults(func=cmd_gallery)

    fuzz = sub.add_parser("fuzz", help="generate consistent random data and "
                                       "run the full identity suite")
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--count", type=int, default=100)
    fuzz.add_argument("--dim", type=int, default=None,
                      help="exact dimension (default: random in 1..4)")
    fuzz.add_argument("--divisors", type=int, default=None,
                      help="exact divisor count (default: random in 0..3)")
    fuzz.add_argument("--max-denominator", type=int, default=6)
    fuzz.add_argument("--corrupt", action="store_true",
                      help="test hook: corrupt each datum so the run must fail")
    fuzz.set_defaults(func=cmd_fuzz)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StringyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
