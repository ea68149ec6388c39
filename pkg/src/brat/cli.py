"""The `brat` command line: exact AF-algebra invariants from the shell.

Every command reads a diagram or group either from a JSON file or from
the built-in catalog via `catalog:NAME`.  Results go to stdout as a
single JSON line; problems go to stderr as a JSON error object with
exit status 2.  Boolean queries answer through the exit status: 0 when
the property holds (member, yes, valid), 1 when it fails.  Outputs are
deterministic byte for byte, and any output that depends on a depth
truncation says so inline.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .bratteli import (
    BratteliDiagram,
    Premorphism,
    canonical_premorphism,
    divide_element,
    k0_unit_divisor,
    maximal_uhf,
    odometer,
    rational_subgroup_witness,
    scale_unit_stage,
    telescope,
    tower_profile,
    uhf_embeds,
    verify_premorphism,
)
from .catalog import catalog_names, get_entry
from .dot import export_dot
from .ordered_group import (
    CyclicOrderedGroup,
    QuadraticElement,
    QuadraticIrrationalGroup,
    coprime_divisor_property,
    max_supernatural,
    rational_subgroup_member,
    unit_divisor,
)
from .supernatural import SupernaturalNumber

DEFAULT_DEPTH = 16


class InputError(ValueError):
    """Anything that makes the request unanswerable: exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _emit(data) -> None:
    sys.stdout.write(json.dumps(data) + "\n")


def _emit_error(message: str, kind: str = "input") -> int:
    sys.stderr.write(json.dumps({"error": {"type": kind, "message": message}}) + "\n")
    return 2


def _load_payload(source: str, want: str):
    if source.startswith("catalog:"):
        name = source[len("catalog:"):]
        try:
            entry = get_entry(name)
        except KeyError as exc:
            raise InputError(str(exc)) from None
        if entry.kind != want:
            raise InputError("catalog entry %r is a %s, not a %s" % (name, entry.kind, want))
        return entry.payload
    try:
        with open(source, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise InputError("cannot read %r: %s" % (source, exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("bad JSON in %r: %s" % (source, exc)) from None
    if want == "diagram":
        return BratteliDiagram.from_data(data)
    return group_from_data(data)


def load_diagram(source: str) -> BratteliDiagram:
    return _load_payload(source, "diagram")


def load_group(source: str):
    return _load_payload(source, "group")


def group_to_data(group) -> dict:
    if isinstance(group, CyclicOrderedGroup):
        return {"kind": "cyclic", "generators": list(group.generators), "unit": group.unit}
    return {
        "kind": "quadratic",
        "H": group.h_number.to_data(),
        "alpha_square": group.alpha_square,
        "unit": group.unit.to_data(),
    }


def group_from_data(data) -> object:
    if not isinstance(data, dict):
        raise InputError("group must be an object, got %r" % (data,))
    kind = data.get("kind")
    try:
        if kind == "cyclic":
            return CyclicOrderedGroup(tuple(data["generators"]), int(data["unit"]))
        if kind == "quadratic":
            return QuadraticIrrationalGroup(
                h_number=SupernaturalNumber.from_data(data["H"]),
                alpha_square=int(data["alpha_square"]),
                unit=QuadraticElement.from_data(data["unit"]),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("bad group description: %s" % exc) from None
    raise InputError("group kind must be 'cyclic' or 'quadratic', got %r" % (kind,))


def _depth_for(diagram: BratteliDiagram, requested) -> int:
    if requested is None:
        if diagram.is_infinite:
            return DEFAULT_DEPTH
        return min(DEFAULT_DEPTH, diagram.given_depth)
    return requested


def _parse_supernatural(text: str) -> SupernaturalNumber:
    try:
        return SupernaturalNumber.from_data(json.loads(text))
    except (json.JSONDecodeError, ValueError) as exc:
        raise InputError("bad supernatural number %r: %s" % (text, exc)) from None


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError("bad integer vector %r" % (text,)) from None


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("bad rational %r: %s" % (text, exc)) from None


def cmd_validate(args) -> int:
    diagram = load_diagram(args.source)
    problems = diagram.violations()
    if not problems:
        _emit({"ok": True})
        return 0
    _emit({
        "ok": False,
        "violations": [
            {"kind": v.kind, "level": v.level, "position": v.position, "message": v.message}
            for v in problems
        ],
    })
    return 1


def cmd_towers(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    profile = tower_profile(diagram, depth)
    _emit({
        "depth": depth,
        "heights": [list(v) for v in profile.heights],
        "gcds": list(profile.gcds),
        "ratios": list(profile.ratios),
    })
    return 0


def cmd_odometer(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    reduced = odometer(diagram, depth)
    if args.format == "dot":
        sys.stdout.write(export_dot(reduced, depth))
    else:
        _emit(reduced.to_data())
    return 0


def cmd_mu(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    result = maximal_uhf(diagram, depth)
    _emit({"mu": result.value.to_data(), "exactness": result.exactness})
    return 0


def cmd_premorphism(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    premorphism = canonical_premorphism(diagram, depth)
    if not args.verify:
        _emit(premorphism.to_data())
        return 0
    report = verify_premorphism(premorphism, odometer(diagram, depth), diagram)
    if report.ok:
        _emit({"verified": True, "depth": depth})
        return 0
    _emit({"verified": False, "level": report.level, "kind": report.kind})
    return 1


def cmd_embed(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    number = _parse_supernatural(args.uhf)
    answer = uhf_embeds(number, diagram, depth)
    _emit({"embeds": answer, "depth": depth})
    return 0 if answer == "yes" else 1


def cmd_k0_divides(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    if args.n < 1:
        raise InputError("--n must be a positive integer")
    witness = k0_unit_divisor(diagram, args.n, depth)
    if witness is None:
        _emit({"witness": None, "depth": depth})
        return 1
    _emit({"stage": witness.stage, "vector": list(witness.entries)})
    return 0


def cmd_rsub(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    found = rational_subgroup_witness(diagram, _parse_vector(args.vector), args.stage, depth)
    if found is None:
        _emit({"member": False, "reason": "no witness up to depth", "depth": depth})
        return 1
    value, stage = found
    _emit({"member": True, "stage": stage, "lambda": str(value),
           "m": value.denominator, "q": value.numerator})
    return 0


def cmd_theta(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    witness = scale_unit_stage(diagram, _parse_fraction(args.x), depth)
    _emit({"stage": witness.stage, "vector": list(witness.entries)})
    return 0


def cmd_divide(args) -> int:
    diagram = load_diagram(args.source)
    depth = _depth_for(diagram, args.depth)
    if args.m < 1:
        raise InputError("--m must be a positive integer")
    witness = divide_element(diagram, _parse_vector(args.vector), args.stage, args.m, depth)
    if witness is None:
        _emit({"witness": None, "depth": depth})
        return 1
    _emit({"stage": witness.stage, "vector": list(witness.entries)})
    return 0


def cmd_telescope(args) -> int:
    diagram = load_diagram(args.source)
    cuts = _parse_vector(args.cuts)
    _emit(telescope(diagram, cuts).to_data())
    return 0


def cmd_sn(args) -> int:
    op = args.operation
    if op == "ell":
        if len(args.operands) != 2:
            raise InputError("ell takes a supernatural number and a stage")
        number = _parse_supernatural(args.operands[0])
        try:
            stage = int(args.operands[1])
        except ValueError:
            raise InputError("bad stage %r" % (args.operands[1],)) from None
        _emit({"ell": number.ell(stage)})
        return 0
    numbers = [_parse_supernatural(text) for text in args.operands]
    if op == "divides":
        if len(numbers) != 2:
            raise InputError("divides takes exactly two operands")
        holds = numbers[0].divides(numbers[1])
        _emit({"divides": holds})
        return 0 if holds else 1
    if op == "mul":
        product = SupernaturalNumber()
        for number in numbers:
            product = product * number
        _emit({"product": product.to_data()})
        return 0
    if op == "sup":
        _emit({"sup": SupernaturalNumber.sup(numbers).to_data()})
        return 0
    if op == "inf":
        if not numbers:
            raise InputError("inf needs at least one operand")
        _emit({"inf": SupernaturalNumber.inf(numbers).to_data()})
        return 0
    raise InputError("unknown sn operation %r" % (op,))


def cmd_group(args) -> int:
    group = load_group(args.source)
    op = args.operation
    if op == "propd":
        report = coprime_divisor_property(group)
        if report.holds:
            _emit({"holds": True})
            return 0
        _emit({"holds": False, "counterexample": list(report.counterexample)})
        return 1
    if op == "maxsn":
        number = max_supernatural(group)
        if number is None:
            _emit({"maxsn": None})
            return 1
        _emit({"maxsn": number.to_data()})
        return 0
    if op == "divides":
        if args.n is None or args.n < 1:
            raise InputError("divides needs --n with a positive integer")
        witness = unit_divisor(group, args.n)
        if witness is None:
            _emit({"witness": None})
            return 1
        if isinstance(witness, QuadraticElement):
            _emit({"witness": witness.to_data()})
        else:
            _emit({"witness": witness})
        return 0
    if op == "rsub":
        if args.g is None:
            raise InputError("rsub needs --g with a group element")
        element = _parse_group_element(group, args.g)
        found = rational_subgroup_member(group, element)
        if found is None:
            _emit({"member": False})
            return 1
        m, q = found
        _emit({"member": True, "m": m, "q": q})
        return 0
    raise InputError("unknown group operation %r" % (op,))


def _parse_group_element(group, text: str):
    if isinstance(group, CyclicOrderedGroup):
        try:
            return int(text)
        except ValueError:
            raise InputError("cyclic group elements are integers, got %r" % (text,)) from None
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError("quadratic elements look like 'q,z', got %r" % (text,))
    try:
        return QuadraticElement(Fraction(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("bad quadratic element %r: %s" % (text, exc)) from None


def cmd_catalog(args) -> int:
    if args.name is None:
        _emit({"entries": catalog_names(), "patterns": ["uhf-<n>"]})
        return 0
    try:
        entry = get_entry(args.name)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    payload = entry.payload.to_data() if entry.kind == "diagram" else group_to_data(entry.payload)
    _emit({
        "name": entry.name,
        "kind": entry.kind,
        "note": entry.note,
        "payload": payload,
        "expected": entry.expected,
    })
    return 0


def _add_source(parser) -> None:
    parser.add_argument("source", help="diagram JSON file or catalog:NAME")


def _add_depth(parser) -> None:
    parser.add_argument("--depth", type=int, default=None,
                        help="levels to compute (default %d, capped at a finite "
                             "diagram's length)" % DEFAULT_DEPTH)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="brat", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", help="check the structural rules of a diagram")
    _add_source(p)
    p.set_defaults(func=cmd_validate)

    p = commands.add_parser("towers", help="heights, gcds, and ratios per level")
    _add_source(p)
    _add_depth(p)
    p.set_defaults(func=cmd_towers)

    p = commands.add_parser("odometer", help="the single-vertex ratio diagram")
    _add_source(p)
    _add_depth(p)
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_odometer)

    p = commands.add_parser("mu", help="supernatural invariant of the maximal UHF subalgebra")
    _add_source(p)
    _add_depth(p)
    p.set_defaults(func=cmd_mu)

    p = commands.add_parser("premorphism", help="canonical odometer premorphism")
    _add_source(p)
    _add_depth(p)
    p.add_argument("--verify", action="store_true", help="check the commuting squares")
    p.set_defaults(func=cmd_premorphism)

    p = commands.add_parser("embed", help="does the given UHF algebra embed unitally")
    _add_source(p)
    _add_depth(p)
    p.add_argument("--uhf", required=True, help="supernatural number as JSON")
    p.set_defaults(func=cmd_embed)

    p = commands.add_parser("k0-divides", help="stage witness that n divides the unit class")
    _add_source(p)
    _add_depth(p)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_k0_divides)

    p = commands.add_parser("rsub", help="rational-subgroup membership of a stage vector")
    _add_source(p)
    _add_depth(p)
    p.add_argument("--stage", type=int, required=True)
    p.add_argument("--vector", required=True, help="comma-separated integers")
    p.set_defaults(func=cmd_rsub)

    p = commands.add_parser("theta", help="represent x*[unit] as a stage vector")
    _add_source(p)
    _add_depth(p)
    p.add_argument("--x", required=True, help="rational like 5/6")
    p.set_defaults(func=cmd_theta)

    p = commands.add_parser("divide", help="divide a stage vector by m in K0")
    _add_source(p)
    _add_depth(p)
    p.add_argument("--stage", type=int, required=True)
    p.add_argument("--vector", required=True, help="comma-separated integers")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_divide)

    p = commands.add_parser("telescope", help="compose matrices between cut points")
    _add_source(p)
    p.add_argument("--cuts", required=True, help="comma-separated increasing levels")
    p.set_defaults(func=cmd_telescope)

    p = commands.add_parser("sn", help="supernatural-number arithmetic")
    p.add_argument("operation", choices=("divides", "mul", "sup", "inf", "ell"))
    p.add_argument("operands", nargs="+",
                   help="supernatural numbers as JSON; ell takes one plus a stage index")
    p.set_defaults(func=cmd_sn)

    p = commands.add_parser("group", help="ordered-group divisibility")
    p.add_argument("operation", choices=("propd", "maxsn", "divides", "rsub"))
    p.add_argument("source", help="group JSON file or catalog:NAME")
    p.add_argument("--n", type=int, default=None, help="divisor (divides)")
    p.add_argument("--g", default=None, help="element: integer, or 'q,z' (rsub)")
    p.set_defaults(func=cmd_group)

    p = commands.add_parser("catalog", help="list or show built-in examples")
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        return _emit_error(str(exc))
    except ValueError as exc:
        return _emit_error(str(exc))


def run() -> None:
    sys.exit(main())
