"""Batch command-line surface with JSON input/output and DOT export.

Exit codes: 0 success / verdict true, 1 verdict false, 2 input error,
3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import FinAlgebra
from .closure import is_algebraically_closed, is_existentially_closed
from .duality import (StructSpace, evaluation_e, struct_space_to_dot,
                      x2_axiom_check, xn_membership)
from .errors import (AxiomViolationError, BudgetExceededError,
                     MalformedSequenceError, NotASubalgebraError,
                     SizeLimitError, WrongSignatureError)
from .relations import (adjudicate_n4_discrepancy, compute_Sn,
                        good_sequence_witness, lhd_rel, meet_irreducibles,
                        rel_lattice_to_dot, rel_to_seq,
                        square_subalgebras_oracle)
from .skeleton import priestley_power, skeleton

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}")


class InputError(Exception):
    pass


def _emit(out, payload) -> None:
    json.dump(payload, out, indent=2, sort_keys=True)
    out.write("\n")


def cmd_sn(args, out) -> int:
    lat = compute_Sn(args.n)
    if args.format == "dot":
        out.write(rel_lattice_to_dot(lat))
        return EXIT_OK
    seqs = meet_irreducibles(lat) if args.irreducible else list(lat.elements)
    _emit(out, {
        "n": args.n,
        "count": len(seqs),
        "sequences": [{"y": list(s.y), "label": s.label()} for s in seqs],
        "covers": [list(c) for c in lat.covers],
        "meet_irreducible": list(lat.meet_irreducible),
    })
    return EXIT_OK


def cmd_verify_duality(args, out) -> int:
    algebra = FinAlgebra.from_json(_load_json(args.algebra))
    report = evaluation_e(algebra, args.n)
    size = algebra.size
    dsize = report.hom.target.size
    verdict = report.bijective
    out.write(f"e_A bijective: {size} = {dsize}\n" if verdict
              else f"e_A not bijective: {size} vs {dsize} "
                   f"(injective={report.injective}, surjective={report.surjective})\n")
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_membership(args, out) -> int:
    space = StructSpace.from_json(_load_json(args.space))
    report = xn_membership(space, args.n)
    payload = {"member": report.member,
               "witness": None if report.witness is None else list(
                   _flatten_witness(report.witness))}
    if args.n == 2:
        axioms = x2_axiom_check(space)
        payload["x2_axioms"] = {
            "a": axioms.axiom_a, "b": axioms.axiom_b, "c": axioms.axiom_c,
        }
    _emit(out, payload)
    return EXIT_OK if report.member else EXIT_FALSE


def _flatten_witness(w):
    for item in w:
        if isinstance(item, tuple):
            yield list(item)
        else:
            yield item


def cmd_skeleton(args, out) -> int:
    algebra = FinAlgebra.from_json(_load_json(args.algebra))
    lat, carrier = skeleton(algebra)
    payload = lat.to_json()
    payload["inclusion"] = list(carrier)
    _emit(out, payload)
    return EXIT_OK


def cmd_power(args, out) -> int:
    lat = FinAlgebra.from_json(_load_json(args.lattice))
    _emit(out, priestley_power(args.n, lat).to_json())
    return EXIT_OK


def cmd_classify_ac_ec(args, out) -> int:
    algebra = FinAlgebra.from_json(_load_json(args.algebra))
    ac = is_algebraically_closed(algebra, args.n)
    ec = is_existentially_closed(algebra, args.n)
    _emit(out, {"algebraically_closed": ac.to_json(),
                "existentially_closed": ec.to_json()})
    return EXIT_OK if ac.verdict else EXIT_FALSE


def cmd_oracle_diff(args, out) -> int:
    n = args.n
    lat = compute_Sn(n)
    corner = {s.y for s in lat.elements}
    full = {s.y for s in lat.elements if good_sequence_witness(s, "full") is None}
    oracle_rels = square_subalgebras_oracle(n)
    lhd_pairs = lhd_rel(n).pairs
    between = set()
    for rel in oracle_rels:
        if lhd_pairs <= rel.pairs:
            between.add(rel_to_seq(rel).y)
    lines = [f"relations between the minimal relation and the order at n={n}:",
             f"  sequence algorithm (corner mode): {len(corner)}",
             f"  full-condition mode:              {len(full)}",
             f"  brute-force oracle:               {len(between)}"]
    ok = corner == full == between
    if ok:
        lines.append("  agreement: exact")
    else:
        lines.append(f"  DISCREPANCY: corner-full={sorted(corner ^ full)} "
                     f"corner-oracle={sorted(corner ^ between)}")
    out.write("\n".join(lines) + "\n")
    if n == 4:
        out.write(adjudicate_n4_discrepancy() + "\n")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_export(args, out) -> int:
    space = StructSpace.from_json(_load_json(args.space))
    out.write(struct_space_to_dot(space))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pmvdual")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("sn", help="compute the relation lattice")
    p.add_argument("n", type=int)
    p.add_argument("--irreducible", action="store_true")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_sn)

    p = sub.add_parser("verify-duality", help="run the evaluation map")
    p.add_argument("n", type=int)
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_verify_duality)

    p = sub.add_parser("membership", help="separation-based membership test")
    p.add_argument("n", type=int)
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("skeleton", help="distributive skeleton of an algebra")
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_skeleton)

    p = sub.add_parser("power", help="Priestley power over a lattice")
    p.add_argument("n", type=int)
    p.add_argument("--lattice", required=True)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("classify-ac-ec", help="AC/EC classification")
    p.add_argument("n", type=int)
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_classify_ac_ec)

    p = sub.add_parser("oracle-diff", help="compare algorithm against oracle")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_oracle_diff)

    p = sub.add_parser("export", help="DOT export of a structured space")
    p.add_argument("n", type=int)
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, AxiomViolationError, MalformedSequenceError,
            NotASubalgebraError, SizeLimitError, WrongSignatureError,
            ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
