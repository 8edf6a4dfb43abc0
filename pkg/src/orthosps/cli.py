"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when some check fails (witnesses are
in the report), 2 for usage and parse errors.
"""

import argparse
import json
import sys
from pathlib import Path

from . import harness
from ._util import natural_key
from .bundle import FIXTURES, StructureBundle, dumps_document, fixture_text, load_bundle
from .closure import ClosureSpace, validate_closure_space
from .errors import LatticeError, OrderError, OrthoSPSError, ParseError
from .ortho import (build_orthocomplementation, check_axioms, compute_perp_star,
                    validate_property_ortho, verify_double_star, verify_theorem1)
from .report import Check, Report, emit_report
from .sps import eigenclosure, sps_from_closure, validate_sps

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CHECK_FLAGS = ("sps", "ortho", "ao1", "ao2", "theorem1", "double_star")


def _u64(text):
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="orthosps",
        description="Validate and transform finite (ortho) state property systems.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[fmt], help="run law and theorem checks on a bundle")
    p.add_argument("bundle")
    for flag in CHECK_FLAGS:
        p.add_argument("--" + flag.replace("_", "-"), action="store_true")
    p.add_argument("--all", action="store_true", help="every check (the default)")

    p = sub.add_parser("convert", parents=[fmt], help="SPS <-> closure space")
    p.add_argument("direction", choices=("to-closure", "to-sps"))
    p.add_argument("input")
    p.add_argument("-o", "--output", help="also write the converted document here")

    p = sub.add_parser("derive", parents=[fmt], help="derived relations and maps")
    p.add_argument("what", choices=("state-ortho", "orthocomplementation", "perp-star"))
    p.add_argument("bundle")

    p = sub.add_parser("verify-random", parents=[fmt], help="randomized theorem suites")
    p.add_argument("--count", type=_positive, default=1000)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--max-states", type=_positive, default=5)
    p.add_argument("--max-props", type=_positive, default=8)

    p = sub.add_parser("fixtures", parents=[fmt], help="write the bundled fixtures")
    p.add_argument("directory")
    return parser


def _nat_pairs(pairs):
    return sorted((list(p) for p in pairs), key=lambda pr: [natural_key(x) for x in pr])


def _load_structure(report, path, need_ortho):
    """Load a bundle and build its SPS; lattice failures become a failed check."""
    bundle = load_bundle(path)
    try:
        osps = bundle.to_osps() if need_ortho and bundle.ortho_pairs is not None else None
        sps = osps.sps if osps is not None else bundle.to_sps()
    except (OrderError, LatticeError) as exc:
        report.checks.append(Check("lattice", "fail", (exc.witness,), exc.code))
        return bundle, None, None
    report.checks.append(Check("lattice", "pass"))
    return bundle, sps, osps


def _cmd_check(args, report):
    wanted = {f for f in CHECK_FLAGS if getattr(args, f)}
    if args.all or not wanted:
        wanted = set(CHECK_FLAGS)
    _, sps, osps = _load_structure(report, args.bundle, need_ortho=True)
    if sps is None:
        return
    sps_ok = validate_sps(sps)
    if "sps" in wanted:
        report.extend(sps_ok.checks)
    needs_ortho = wanted - {"sps"}
    if not needs_ortho:
        return
    skip = None
    if osps is None:
        skip = "bundle has no ortho relation"
    elif not sps_ok.ok:
        skip = "SPS axioms fail"
    if skip is None:
        rel_ok = validate_property_ortho(sps, osps.rel)
        if "ortho" in wanted:
            report.extend(rel_ok.checks)
        if not rel_ok.ok:
            skip = "relation laws fail"
    elif "ortho" in wanted:
        report.checks.append(Check("ortho", "skip", (), skip))
    later = [f for f in ("ao1", "ao2", "theorem1", "double_star") if f in wanted]
    if skip is not None:
        report.extend(Check(f.replace("_", "-"), "skip", (), skip) for f in later)
        return
    axioms = check_axioms(osps)
    for chk in axioms.to_checks():
        if chk.name.lower() in wanted:
            report.checks.append(chk)
    if "theorem1" in wanted:
        t1 = verify_theorem1(osps)
        report.checks.append(Check(
            "theorem1", "pass" if t1.holds else "fail", tuple(t1.witnesses),
            f"closures equal: {t1.details['closures_equal']}, AO1 and AO2: "
            f"{bool(t1.details['AO1'] and t1.details['AO2'])}"))
    if "double_star" in wanted:
        report.checks.append(verify_double_star(osps).to_check())


def _closure_doc(space):
    return {"states": list(space.states), "closed_sets": space.sorted_sets()}


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", field=str(path)) from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}", field="$") from None


def _parse_closure_doc(doc):
    if not isinstance(doc, dict) or set(doc) != {"states", "closed_sets"}:
        raise ParseError('expected {"states": [...], "closed_sets": [[...], ...]}', field="$")
    states = doc["states"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise ParseError("expected a list of strings", field="states")
    family = doc["closed_sets"]
    if not isinstance(family, list):
        raise ParseError("expected a list of lists", field="closed_sets")
    for k, c in enumerate(family):
        if not isinstance(c, list):
            raise ParseError("expected a list of strings", field=f"closed_sets[{k}]")
        for j, p in enumerate(c):
            if p not in states:
                raise ParseError(f"unknown state {p!r}", field=f"closed_sets[{k}][{j}]")
    return states, family


def _cmd_convert(args, report):
    if args.direction == "to-closure":
        _, sps, _ = _load_structure(report, args.input, need_ortho=False)
        if sps is None:
            return None
        ok = validate_sps(sps)
        report.extend(ok.checks)
        if not ok.ok:
            return None
        doc = _closure_doc(eigenclosure(sps).space)
        report.artifacts["closure"] = doc
        return doc
    raw = _read_json(args.input)
    if isinstance(raw, dict) and "closed_sets" in raw:
        states, family = _parse_closure_doc(raw)
        valid = validate_closure_space(states, family)
        report.extend(valid.checks)
        if not valid.ok:
            return None
        space = ClosureSpace(tuple(states), frozenset(frozenset(c) for c in family))
    else:
        _, sps, _ = _load_structure(report, args.input, need_ortho=False)
        if sps is None:
            return None
        space = eigenclosure(sps).space
    sps = sps_from_closure(space)
    report.extend(validate_sps(sps).checks)
    doc = StructureBundle.from_sps(sps).to_document()
    report.artifacts["bundle"] = doc
    return doc


def _cmd_derive(args, report):
    _, sps, osps = _load_structure(report, args.bundle, need_ortho=True)
    if sps is None:
        return
    if osps is None:
        raise ParseError("document has no ortho relation", field="ortho")
    pre = validate_sps(sps).checks + validate_property_ortho(sps, osps.rel).checks
    report.extend(pre)
    if any(c.status == "fail" for c in pre):
        return
    if args.what == "state-ortho":
        report.artifacts["state_ortho"] = osps.state_ortho.sorted_pairs()
        return
    axioms = check_axioms(osps)
    report.extend(axioms.to_checks())
    if not axioms.both_hold:
        return
    if args.what == "orthocomplementation":
        oc = build_orthocomplementation(osps)
        report.artifacts["orthocomplementation"] = _nat_pairs(oc.map.items())
        report.artifacts["a_p"] = _nat_pairs(oc.per_state.items())
    else:
        star = compute_perp_star(osps)
        report.artifacts["perp_star"] = _nat_pairs(star.pairs)
        report.artifacts["perp_star_size"] = len(star)
        report.artifacts["added_to_relation"] = _nat_pairs(star.pairs - osps.rel.pairs)


def _cmd_verify_random(args, report):
    results = harness.run_all(args.count, args.seed, args.max_states, args.max_props)
    report.extend(r.to_check() for r in results)
    report.artifacts["suites"] = {
        r.name: {"instances": r.instances, "qualifying": r.qualifying, **r.stats}
        for r in results}


def _cmd_fixtures(args, report):
    out = Path(args.directory)
    out.mkdir(parents=True, exist_ok=True)
    for name in FIXTURES:
        (out / name).write_text(fixture_text(name), encoding="utf-8", newline="\n")
    report.artifacts["written"] = list(FIXTURES)


def run_command(argv):
    """Parse ``argv`` and execute it. Returns ``(report, exit_code, format)``; usage and
    parse errors raise ``SystemExit(2)`` from argparse or :class:`ParseError`."""
    args = build_parser().parse_args(argv)
    report = Report(command=list(argv))
    output = None
    if args.command == "check":
        _cmd_check(args, report)
    elif args.command == "convert":
        output = _cmd_convert(args, report)
    elif args.command == "derive":
        _cmd_derive(args, report)
    elif args.command == "verify-random":
        _cmd_verify_random(args, report)
    else:
        _cmd_fixtures(args, report)
    if output is not None and getattr(args, "output", None):
        Path(args.output).write_text(dumps_document(output), encoding="utf-8", newline="\n")
    return report, (EXIT_OK if report.ok else EXIT_FAIL), args.format


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        report, code, fmt = run_command(argv)
    except OrthoSPSError as exc:
        print(f"orthosps: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.buffer.write(emit_report(report, fmt))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
