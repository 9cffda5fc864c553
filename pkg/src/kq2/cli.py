"""Command-line front end.

Subcommands: group, table, regular, find-q, verify, adams.  Human-readable
output goes to stdout; ``--json`` switches to documented JSON envelopes.

Exit codes:
  0  success
  1  usage or parse error
  2  domain error (not 2-regular, inadmissible q, bound exceeded, ...)
  3  verification failure
"""

from __future__ import annotations

import argparse
import json
import sys

from . import adams, tables, verify
from .abgroup import format_group, group_to_json
from .errors import DegreeOutOfRange, KQ2Error
from .fields import (
    FieldSpec,
    FieldSyntaxError,
    RealQuadratic,
    a_param,
    find_q,
    is_two_regular,
    is_unverified_generic,
    parse_field,
    real_embeddings,
    require_admissible_q,
    two_regular_oracle,
)
from .tables import TheoryTag

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; remap to our contract
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="kq2", description="2-primary hermitian K-group calculator")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_q=True):
        p.add_argument("--field", default="Q", help='field, e.g. "Q", "Q(sqrt 6)", "Q(zeta 2^4)+"')
        if with_q:
            p.add_argument("--q", type=int, default=None, help="auxiliary prime (auto-selected if omitted)")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("group", help="one group of one theory")
    p.add_argument("--theory", required=True, help=", ".join(tables.THEORY_NAMES))
    p.add_argument("--n", type=int, default=None, help="degree (omit for W, W', W1)")
    add_common(p)

    p = sub.add_parser("table", help="groups of several theories for degrees 0..n-max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--theories", default="K,KQ+,KQ-", help="comma-separated theory names")
    add_common(p)

    p = sub.add_parser("regular", help="2-regularity verdict for a field")
    p.add_argument("--oracle", action="store_true", help="re-derive the quadratic verdict from class-group data")
    add_common(p, with_q=False)

    p = sub.add_parser("find-q", help="smallest congruence-admissible prime")
    add_common(p, with_q=False)

    p = sub.add_parser("verify", help="run the table consistency suite")
    p.add_argument("--n-max", type=int, default=64)
    add_common(p)

    p = sub.add_parser("adams", help="parity obstruction for q^4 psi^q - 1")
    p.add_argument("--q", type=int, required=True, help="odd integer >= 3")
    p.add_argument("--dump-coeffs", action="store_true")
    p.add_argument("--json", action="store_true")
    return parser


def _field_meta(spec: FieldSpec) -> dict:
    regular, _ = is_two_regular(spec)
    return {
        "label": str(spec),
        "r": real_embeddings(spec),
        "a_F": a_param(spec),
        "two_regular": regular,
    }


def _resolve_q(args, spec: FieldSpec, notes: list[str]) -> int:
    if getattr(args, "q", None) is None:
        q = find_q(spec)
        notes.append(f"q = {q} auto-selected (smallest congruence-admissible prime)")
        return q
    require_admissible_q(args.q, spec)
    notes.append(f"q = {args.q} (congruence-admissible)")
    return args.q


def _generic_note(spec: FieldSpec, notes: list[str]) -> None:
    if is_unverified_generic(spec):
        notes.append("generic field description is unverified; table values assume 2-regularity")


def _emit(args, payload: dict, human_lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _cmd_group(args) -> int:
    spec = parse_field(args.field)
    notes: list[str] = []
    tag = TheoryTag.parse(args.theory)
    _generic_note(spec, notes)
    q = _resolve_q(args, spec, notes)
    if args.n is not None and args.n == -1 and not tag.allows_degree_minus_one:
        raise _UsageError(f"n = -1 is only defined for KQ+ and KQ-, not {tag.name}")
    g = tables.query(tag, args.n, spec, q)
    if tag.name == "Kbar" and args.n is not None and tables.k_bar_uses_resolved_order(args.n):
        notes.append(
            "Kbar in degree 7 mod 8 uses the even-index torsion order w(4k+4); "
            "this resolution is asserted by the verification suite"
        )
    payload = {
        "query": {"command": "group", "theory": tag.name, "n": args.n, "field": args.field},
        "field": _field_meta(spec),
        "q": q,
        "result": {**group_to_json(g), "formatted": format_group(g)},
        "notes": notes,
    }
    human = [format_group(g)] + [f"# {note}" for note in notes]
    _emit(args, payload, human)
    return EXIT_OK


def _cmd_table(args) -> int:
    spec = parse_field(args.field)
    notes: list[str] = []
    tags = [TheoryTag.parse(name) for name in args.theories.split(",") if name.strip()]
    if not tags:
        raise _UsageError("no theories given")
    no_degree = [tag.name for tag in tags if not tag.needs_degree]
    if no_degree:
        raise _UsageError(f"theories without a degree axis cannot be tabulated: {no_degree}")
    if args.n_max < 0:
        raise _UsageError("--n-max must be >= 0")
    _generic_note(spec, notes)
    q = _resolve_q(args, spec, notes)
    rows = []
    for n in range(0, args.n_max + 1):
        groups = []
        for tag in tags:
            try:
                groups.append(tables.query(tag, n, spec, q))
            except DegreeOutOfRange:
                groups.append(None)  # theory not defined in this degree
        rows.append((n, groups))
    if any(tag.name == "Kbar" for tag in tags) and args.n_max >= 7:
        notes.append(
            "Kbar in degree 7 mod 8 uses the even-index torsion order w(4k+4); "
            "this resolution is asserted by the verification suite"
        )

    def cell(g):
        return "-" if g is None else format_group(g)

    header = ["n"] + [tag.name for tag in tags]
    table_rows = [[str(n)] + [cell(g) for g in groups] for n, groups in rows]
    widths = [max(len(row[i]) for row in [header] + table_rows) for i in range(len(header))]
    human = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
             for row in [header] + table_rows]
    human += [f"# {note}" for note in notes]
    payload = {
        "query": {"command": "table", "theories": [t.name for t in tags],
                  "n_max": args.n_max, "field": args.field},
        "field": _field_meta(spec),
        "q": q,
        "results": [
            {
                "n": n,
                "groups": {
                    tag.name: None if g is None
                    else {**group_to_json(g), "formatted": format_group(g)}
                    for tag, g in zip(tags, groups)
                },
            }
            for n, groups in rows
        ],
        "notes": notes,
    }
    _emit(args, payload, human)
    return EXIT_OK


def _cmd_regular(args) -> int:
    spec = parse_field(args.field)
    notes: list[str] = []
    verdict, reason = is_two_regular(spec)
    reasons = [reason]
    oracle_data = None
    if args.oracle:
        if not isinstance(spec, RealQuadratic):
            raise _UsageError("--oracle is available for real quadratic fields only")
        inv = two_regular_oracle(spec)
        oracle_data = {
            "dyadic_count": inv.dyadic_count,
            "pic_odd": inv.pic_odd,
            "units_indep_signs": inv.units_indep_signs,
            "narrow_pic_odd": inv.narrow_pic_odd,
            "two_regular": inv.two_regular,
            "reasons": list(inv.reasons),
        }
        verdict = inv.two_regular
        reasons = [r for r in inv.reasons]
        if inv.two_regular != is_two_regular(spec)[0]:
            notes.append("oracle verdict disagrees with the closed-form criterion")
    failing = [r for r in reasons if "fail" in r or "even order" in r or "two dyadic" in r]
    if verdict:
        human = [f"2-regular: {'; '.join(reasons)}"]
    else:
        human = [f"not 2-regular: {'; '.join(failing or reasons)}"]
    payload = {
        "query": {"command": "regular", "field": args.field, "oracle": args.oracle},
        "field": _field_meta(spec),
        "result": {"two_regular": verdict, "reasons": reasons, "oracle": oracle_data},
        "notes": notes,
    }
    _emit(args, payload, human + [f"# {n}" for n in notes])
    return EXIT_OK


def _cmd_find_q(args) -> int:
    spec = parse_field(args.field)
    q = find_q(spec)
    payload = {
        "query": {"command": "find-q", "field": args.field},
        "field": _field_meta(spec),
        "q": q,
        "result": {"q": q, "admissibility": "congruence-admissible"},
        "notes": [],
    }
    _emit(args, payload, [f"q = {q} (congruence-admissible for {spec})"])
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = parse_field(args.field)
    notes: list[str] = []
    q = _resolve_q(args, spec, notes)
    reports = verify.run_all(spec, q, args.n_max)
    failures = [rep for rep in reports if not rep.passed]
    human = [f"# {verify.REPORT_HEADER}"]
    human += [f"# {note}" for note in notes]
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        human.append(f"{status}  {rep.name}  [{rep.details}]")
        if rep.counterexample:
            human.append(f"      counterexample: {rep.counterexample}")
    human.append(f"{len(reports) - len(failures)}/{len(reports)} checks passed")
    payload = {
        "query": {"command": "verify", "field": args.field, "n_max": args.n_max},
        "field": _field_meta(spec),
        "q": q,
        "header": verify.REPORT_HEADER,
        "results": verify.reports_to_json(reports),
        "notes": notes,
    }
    _emit(args, payload, human)
    return EXIT_OK if not failures else EXIT_VERIFY


def _cmd_adams(args) -> int:
    series = adams.bracket(args.q, 2 * args.q)
    odd = adams.check_obstruction(args.q)
    coeff = series[2 * args.q]
    human = [
        f"q = {args.q}: coefficient of u^{2 * args.q} is {coeff} "
        f"({'odd' if odd else 'even'}); realification factorization "
        f"{'impossible' if odd else 'NOT excluded'}"
    ]
    if args.dump_coeffs:
        human.append("coefficients: " + " ".join(str(c) for c in series.coeffs))
    payload = {
        "query": {"command": "adams", "q": args.q},
        "result": {
            "obstruction": odd,
            "top_coefficient": coeff,
            "constant_term": series[0],
            "coeffs": list(series.coeffs) if args.dump_coeffs else None,
        },
        "notes": [],
    }
    _emit(args, payload, human)
    return EXIT_OK


_COMMANDS = {
    "group": _cmd_group,
    "table": _cmd_table,
    "regular": _cmd_regular,
    "find-q": _cmd_find_q,
    "verify": _cmd_verify,
    "adams": _cmd_adams,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FieldSyntaxError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KQ2Error as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
