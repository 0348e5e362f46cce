"""Command-line front end.

Subcommands: parse, present, quotient, symmetrize, certify, alexander,
torus, report.  JSON on stdout is the default; --text switches to a
human rendering.  Logging goes to stderr only.

Exit codes:
  0  success (including certificates carrying warnings)
  2  parse or usage error
  3  the requested periodicity was not detected
  4  a certification check failed
  5  oracle resource budget exhausted
  6  invalid torus parameters
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys

from . import gauss
from .gauss import GaussCode, GaussCodeError, parse_gauss
from .groupcore import (
    OracleBudgetError,
    OracleLimits,
    abelianization,
    alexander_polynomial,
)
from .periodic import (
    PeriodicGaussCode,
    VoltageGaussCode,
    canonical_labeling,
    detect_periodicity,
    quotient,
    symmetrize,
)
from .periods import certify, torus_periods
from .wirtinger import (
    periodic_presentation,
    peripheral_pair,
    presentation,
    quotient_presentation,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_PERIODIC = 3
EXIT_CHECK_FAILED = 4
EXIT_BUDGET = 5
EXIT_TORUS = 6

log = logging.getLogger("perioknot")


def _emit(args, payload: dict, text: str) -> None:
    if args.fmt == "text":
        print(text)
    else:
        print(json.dumps(payload, indent=2))


def _input_lines(args) -> list[str]:
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = args.input
    lines = []
    for line in raw.splitlines() or [raw]:
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    return lines


def _single_code(args) -> GaussCode:
    lines = _input_lines(args)
    if args.file is None:
        # inline input is one code even if it wraps lines
        return parse_gauss(args.input)
    if len(lines) != 1:
        raise GaussCodeError(
            f"expected exactly one code in {args.file}, found {len(lines)}"
        )
    return parse_gauss(lines[0])


def _periodic_or_exit(code: GaussCode, p: int) -> PeriodicGaussCode | None:
    structure = detect_periodicity(code, p)
    if structure is None:
        log.error("code is not %d-periodic", p)
        return None
    return canonical_labeling(code, structure)


def _limits(args) -> OracleLimits:
    budget = args.budget
    env = os.environ.get("PERIOKNOT_BUDGET")
    if env is not None:
        try:
            budget = int(env)
        except ValueError:
            raise GaussCodeError(f"PERIOKNOT_BUDGET is not an integer: {env!r}")
    base = OracleLimits()
    return OracleLimits(
        max_degree=max(base.max_degree, args.dmax),
        node_budget=budget if budget is not None else base.node_budget,
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    if args.file is not None:
        codes = [parse_gauss(line) for line in _input_lines(args)]
    else:
        codes = [parse_gauss(args.input)]
    entries = [
        {
            "code": gauss.render(c),
            "crossings": c.crossing_count(),
            "writhe": gauss.writhe(c),
        }
        for c in codes
    ]
    payload = entries[0] if args.file is None else {"codes": entries}
    text = "\n".join(
        f"{e['code']}  (crossings {e['crossings']}, writhe {e['writhe']})"
        for e in entries
    )
    _emit(args, payload, text)
    return EXIT_OK


def _word_json(w) -> list:
    return w.to_json()


def cmd_present(args) -> int:
    code = _single_code(args)
    if args.p is not None:
        pcode = _periodic_or_exit(code, args.p)
        if pcode is None:
            return EXIT_NOT_PERIODIC
        pres = periodic_presentation(pcode)
        pair = peripheral_pair(pcode, pres)
        qpres, pi = quotient_presentation(pres, pcode.structure)
        payload = {
            "p": pcode.p,
            "n": pcode.n,
            "presentation": pres.to_json_dict(),
            "peripheral": {
                "meridian": _word_json(pair.meridian),
                "longitude": _word_json(pair.longitude),
                "omega": _word_json(pair.omega),
                "framing": pair.framing(),
            },
            "quotient": {
                "presentation": qpres.to_json_dict(),
                "projection": pi.to_json_dict(),
            },
        }
        text = "\n".join(
            [
                str(pres),
                f"meridian  = {pair.meridian}",
                f"longitude = {pair.longitude}",
                f"omega     = {pair.omega}  (framing {pair.framing()})",
                f"quotient  = {qpres}",
            ]
        )
    else:
        pres, pair = presentation(code)
        payload = {
            "presentation": pres.to_json_dict(),
            "peripheral": {
                "meridian": _word_json(pair.meridian),
                "longitude": _word_json(pair.longitude),
                "omega": _word_json(pair.omega),
                "framing": pair.framing(),
            },
        }
        text = "\n".join(
            [
                str(pres),
                f"meridian  = {pair.meridian}",
                f"longitude = {pair.longitude}",
            ]
        )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_quotient(args) -> int:
    code = _single_code(args)
    pcode = _periodic_or_exit(code, args.p)
    if pcode is None:
        return EXIT_NOT_PERIODIC
    vcode = quotient(pcode)
    payload = vcode.to_json_dict()
    volts = ", ".join(f"{c} -> {v}" for c, v in sorted(vcode.voltages.items()))
    _emit(args, payload, f"{payload['code']}  p={vcode.p}  voltages: {volts}")
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    if args.file is not None:
        with open(args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = json.loads(args.input)
    vcode = VoltageGaussCode.from_json_dict(doc)
    pcode = symmetrize(vcode)
    payload = {
        "code": gauss.render_raw(pcode.code),
        "p": pcode.p,
        "n": pcode.n,
    }
    _emit(args, payload, payload["code"])
    return EXIT_OK


def cmd_certify(args) -> int:
    code = _single_code(args)
    pcode = _periodic_or_exit(code, args.p)
    if pcode is None:
        return EXIT_NOT_PERIODIC
    report = certify(pcode, dmax=args.dmax, limits=_limits(args))
    if args.fmt == "text":
        lines = [
            f"{c.name}: {c.status} - {c.summary}" for c in report.checks
        ]
        lines.append(f"verdict: {report.verdict['status']}")
        lines.append(report.verdict["summary"])
        for w in report.warnings:
            lines.append(f"warning: {w}")
        print("\n".join(lines))
    else:
        print(report.to_json())
    if report.failed():
        return EXIT_CHECK_FAILED
    if report.resource_exhausted:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_alexander(args) -> int:
    code = _single_code(args)
    pres, _ = presentation(code)
    poly = alexander_polynomial(pres).normalized()
    offset = poly.min_exp if poly else 0
    payload = {
        "polynomial": str(poly),
        "coefficients": poly.coeff_list(),
        "offset": offset,
        "abelianization": str(abelianization(pres)),
    }
    _emit(args, payload, str(poly))
    return EXIT_OK


def cmd_torus(args) -> int:
    try:
        periods = sorted(torus_periods(args.r, args.s))
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_TORUS
    payload = {"r": args.r, "s": args.s, "periods": periods}
    _emit(args, payload, " ".join(str(p) for p in periods))
    return EXIT_OK


def cmd_report(args) -> int:
    from . import figures  # deferred: pulls in matplotlib

    code = _single_code(args)
    pcode = _periodic_or_exit(code, args.p)
    if pcode is None:
        return EXIT_NOT_PERIODIC
    report = certify(pcode, dmax=args.dmax, limits=_limits(args))
    os.makedirs(args.out, exist_ok=True)
    report_path = os.path.join(args.out, "report.json")
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
        fh.write("\n")
    csv_path = os.path.join(args.out, "checks.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["name", "status", "summary"])
        for c in report.checks:
            writer.writerow([c.name, c.status, c.summary])
    diagram_path = os.path.join(args.out, "diagram.png")
    figures.chord_diagram(pcode, diagram_path)
    orbit_data: dict[int, dict[int, int]] = {}
    for c in report.checks:
        if c.name == "automorphism_order" and "orbit_sizes" in c.detail:
            orbit_data = {
                int(d): {int(k): v for k, v in sizes.items()}
                for d, sizes in c.detail["orbit_sizes"].items()
            }
    orbits_path = os.path.join(args.out, "orbits.png")
    figures.orbit_chart(orbit_data, orbits_path)
    payload = {
        "out": args.out,
        "files": [
            os.path.basename(p)
            for p in (report_path, csv_path, diagram_path, orbits_path)
        ],
        "verdict": report.verdict["status"],
    }
    _emit(
        args,
        payload,
        f"wrote {', '.join(payload['files'])} to {args.out} "
        f"(verdict: {report.verdict['status']})",
    )
    if report.failed():
        return EXIT_CHECK_FAILED
    if report.resource_exhausted:
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perioknot",
        description=(
            "Periodicity certificates for virtual knot diagrams given as "
            "signed Gauss codes."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_input=True):
        if needs_input:
            p.add_argument(
                "input",
                nargs="?",
                help="inline Gauss code (or JSON for symmetrize)",
            )
            p.add_argument("--file", help="read input from a file instead")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument(
            "--json",
            dest="fmt",
            action="store_const",
            const="json",
            help="JSON output (default)",
        )
        fmt.add_argument(
            "--text",
            dest="fmt",
            action="store_const",
            const="text",
            help="human-readable output",
        )
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help=(
                "seed for randomized generators; current subcommands are "
                "deterministic, the flag is reserved for scripting parity"
            ),
        )
        p.set_defaults(fmt="json")

    def add_oracle(p):
        p.add_argument(
            "--dmax",
            type=int,
            default=5,
            help="largest symmetric-group degree the oracle scans (default 5)",
        )
        p.add_argument(
            "--budget",
            type=int,
            default=None,
            help=(
                "backtracking node budget (default 10^7); the "
                "PERIOKNOT_BUDGET environment variable overrides this flag"
            ),
        )

    p = sub.add_parser("parse", help="validate and canonically render codes")
    add_common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser(
        "present", help="Wirtinger presentation and peripheral words"
    )
    add_common(p)
    p.add_argument("--p", type=int, default=None, help="periodicity to use")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("quotient", help="voltage code of a periodic diagram")
    add_common(p)
    p.add_argument("--p", type=int, required=True, help="periodicity to use")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser(
        "symmetrize", help="rebuild the periodic code from a voltage code"
    )
    add_common(p)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("certify", help="run all periodicity checks")
    add_common(p)
    p.add_argument("--p", type=int, required=True, help="periodicity to certify")
    add_oracle(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser(
        "alexander", help="Alexander polynomial via Fox calculus"
    )
    add_common(p)
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("torus", help="periods of the (r, s) torus knot")
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    add_common(p, needs_input=False)
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser(
        "report",
        help="certify and write report.json, checks.csv, and figures",
    )
    add_common(p)
    p.add_argument("--p", type=int, required=True, help="periodicity to certify")
    add_oracle(p)
    p.add_argument(
        "--out", required=True, help="directory for the report bundle"
    )
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GaussCodeError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except OracleBudgetError as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except (ValueError, json.JSONDecodeError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
