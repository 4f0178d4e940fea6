"""Command-line interface: ``residue <subcommand> [flags]``.

Exit codes: 0 ok, 1 other failure, 2 parse error, 3 unsupported field
extension, 4 precision exhausted, 5 a residue-sum identity failed.
"""

import argparse
import sys
from dataclasses import dataclass

from .curves import (
    analyze_singularity,
    fundamental_class_check,
    singular_points,
    test_membership,
)
from .errors import (
    ParseError,
    PrecisionError,
    PrecisionExhaustedError,
    ResidueError,
    UnsupportedExtensionError,
)
from .fixtures import CURVE_TEXT, curve_table
from .forms import (
    Chain,
    DiffForm1,
    GeneralizedFraction,
    global_residue_check_p1,
    local_residue_theorem_check,
    parshin_residue,
)
from .series.budget import PrecisionBudget
from .series.puiseux import newton_puiseux, point_json
from .textio import dumps, parse_form, parse_point

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_PARSE = 2
EXIT_EXTENSION = 3
EXIT_PRECISION = 4
EXIT_NONZERO_SUM = 5

ANONYMOUS = "curve"


class CommandFailure(Exception):
    """A command ran but its verdict maps to a nonzero exit code."""

    def __init__(self, message, code, payload=None):
        super().__init__(message)
        self.code = code
        self.payload = payload


@dataclass
class Session:
    curves: dict
    selected: str
    budget: PrecisionBudget
    json: bool
    traced: bool
    emit_series: bool

    def curve(self, name=None):
        name = name or self.selected
        if name is None:
            raise ParseError("no curve given (use --curve)", 0)
        if name not in self.curves:
            raise ParseError(f"unknown curve {name!r}", 0)
        return self.curves[name]

    def with_budget(self, budget):
        return Session(
            self.curves, self.selected, budget, self.json, self.traced, self.emit_series
        )


def _session(args):
    extra = {}
    selected = None
    for spec in args.curve or ():
        if "=" in spec:
            name, text = spec.split("=", 1)
            name = name.strip()
            if not name.isidentifier():
                raise ParseError(f"bad curve name {name!r}", 0)
            extra[name] = text
            selected = name
        elif spec.strip() in CURVE_TEXT or spec.strip() in extra:
            selected = spec.strip()
        else:
            extra[ANONYMOUS] = spec
            selected = ANONYMOUS
    kwargs = {}
    if args.prec_inner is not None:
        kwargs["inner"] = args.prec_inner
    if args.prec_outer is not None:
        kwargs["outer"] = args.prec_outer
    budget = PrecisionBudget.from_env(**kwargs)
    return Session(
        curve_table(extra), selected, budget, args.json, args.traced, args.emit_series
    )


class _SeriesLog:
    """Collects the tower expansions behind each residue."""

    def __init__(self):
        self.records = []

    def __call__(self, budget, branch, deformed, tower):
        self.records.append(
            {
                "budget": {"inner": budget.inner, "outer": budget.outer},
                "branch": branch.index,
                "point": point_json(branch.point),
                "normalization": deformed.normalization,
                "S": deformed.S.to_json(),
                "T": deformed.T.to_json(),
                "tower": tower.to_json(),
            }
        )


# ----------------------------------------------------------------------
# commands; each returns (payload, text lines)


def _analyze_all(session, f):
    return [analyze_singularity(f, pt, session.budget) for pt, _ in singular_points(f)]


def _points_text(reports):
    if not reports:
        return ["no singular points"]
    lines = []
    for r in reports:
        coords = ", ".join(point_json(r.point))
        kind = "unibranch" if r.unibranch else "multibranch"
        lines.append(
            f"point ({coords}) over {r.field.minpoly_text()}: "
            f"{len(r.branches)} branch{'es' if len(r.branches) != 1 else ''}, vDim {r.vdim}, {kind}"
        )
    return lines


def cmd_sing(session, args):
    f = session.curve()
    reports = _analyze_all(session, f)
    payload = {"curve": f.to_str(), "points": [r.to_json() for r in reports]}
    return payload, [f"curve: {f}"] + _points_text(reports)


def cmd_branches(session, args):
    f = session.curve()
    point = parse_point(args.point)
    branches = newton_puiseux(f, point, session.budget)
    payload = {
        "curve": f.to_str(),
        "point": point_json(point),
        "branches": [b.to_json() for b in branches],
    }
    lines = []
    for b in branches:
        lines.append(f"branch {b.index}: e = {b.e}, field {b.field.minpoly_text()}")
        lines.append(f"  s = {b.S}")
        lines.append(f"  t = {b.T}")
    return payload, lines or ["no branches"]


def _parse_chain(text):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) < 3:
        raise ParseError("a chain is CURVE,POINT,INDEX", 0)
    name, index = parts[0], parts[-1]
    if not index.isdigit():
        raise ParseError(f"branch index {index!r} is not a number", len(text) - len(index))
    return name, parse_point(",".join(parts[1:-1])), int(index)


def cmd_parshin(session, args):
    form = parse_form(args.form, session.curves)
    if isinstance(form, DiffForm1):
        raise ParseError("parshin needs a 2-form or a class", 0)
    name, point, index = _parse_chain(args.chain)
    curve = session.curve(name)
    chain = Chain.at(curve, point, index, session.budget)
    log = _SeriesLog() if session.emit_series else None
    rv = parshin_residue(form, chain, session.budget, emit=log)
    payload = {
        "form": form.to_str(),
        "chain": {"curve": name, "point": point_json(chain.point), "branch": index},
        **rv.to_json(),
    }
    if log is not None:
        payload["series"] = log.records
    return payload, [rv.text(session.traced)]


def cmd_sumcheck(session, args):
    form = parse_form(args.form, session.curves)
    log = _SeriesLog() if session.emit_series else None
    if args.p1:
        if not isinstance(form, DiffForm1):
            raise ParseError("--p1 needs a 1-form in s", 0)
        result = global_residue_check_p1(form)
        where = "P1"
    else:
        if isinstance(form, DiffForm1):
            raise ParseError("a local sum needs a 2-form or a class (or use --p1)", 0)
        point = parse_point(args.point)
        result = local_residue_theorem_check(form, point, session.budget, emit=log)
        where = point_json(point)
    payload = {"form": form.to_str(), "where": where, **result.to_json()}
    if log is not None:
        payload["series"] = log.records
    lines = [f"{label}: {v}" for label, v in result.contributions]
    lines.append(f"sum {result.total}: {'pass' if result.ok else 'FAIL'}")
    if not result.ok:
        raise CommandFailure(lines[-1], EXIT_NONZERO_SUM, (payload, lines))
    return payload, lines


def cmd_membership(session, args):
    cls = parse_form(args.cls, session.curves)
    if not isinstance(cls, GeneralizedFraction):
        raise ParseError("expected a class [EXPR ds^dt / NAME^m]", 0)
    f = cls.f
    reports = _analyze_all(session, f)
    log = _SeriesLog() if session.emit_series else None
    per_point = []
    for r in reports:
        m = test_membership(cls, r, session.budget, emit=log)
        per_point.append({"coords": point_json(r.point), **m.to_json()})
    in_l = all(p["inL"] for p in per_point)
    payload = {
        "curve": f.to_str(),
        "points": [r.to_json() for r in reports],
        "membership": {"class": cls.to_str(), "inL": in_l, "points": per_point},
    }
    if log is not None:
        payload["series"] = log.records
    lines = _points_text(reports)
    for p in per_point:
        for item in p["residues"]:
            value = item["traced"] if session.traced else item["value"]
            mono = "s^{}*t^{}".format(*item["monomial"])
            lines.append(f"  ({', '.join(p['coords'])}) branch {item['branch']} {mono}: {value}")
    lines.append(f"inL: {'true' if in_l else 'false'}")
    return payload, lines


def cmd_fclass(session, args):
    f = session.curve()
    reports = _analyze_all(session, f)
    log = _SeriesLog() if session.emit_series else None
    per_point = []
    for r in reports:
        fc = fundamental_class_check(f, r, session.budget, emit=log)
        per_point.append({"coords": point_json(r.point), **fc.to_json()})
    all_zero = all(p["allZero"] for p in per_point)
    payload = {
        "curve": f.to_str(),
        "points": [r.to_json() for r in reports],
        "fundamentalClass": {"allZero": all_zero, "points": per_point},
    }
    if log is not None:
        payload["series"] = log.records
    lines = _points_text(reports)
    lines.append(f"allZero: {'true' if all_zero else 'false'}")
    return payload, lines


COMMANDS = {
    "sing": cmd_sing,
    "branches": cmd_branches,
    "parshin": cmd_parshin,
    "sumcheck": cmd_sumcheck,
    "membership": cmd_membership,
    "fclass": cmd_fclass,
}


# ----------------------------------------------------------------------
# precision doubling


def _stable(obj):
    """Drop series windows and logs, which legitimately depend on the budget."""
    if isinstance(obj, dict):
        if {"var", "low", "coeffs", "precision"} <= obj.keys():
            return None
        return {k: _stable(v) for k, v in obj.items() if k != "series"}
    if isinstance(obj, list):
        return [_stable(v) for v in obj]
    return obj


def _run(session, args):
    payload, lines = COMMANDS[args.command](session, args)
    if args.prec_double:
        doubled = session.with_budget(session.budget.doubled())
        doubled.emit_series = False
        try:
            again, _ = COMMANDS[args.command](doubled, args)
        except CommandFailure as exc:
            again = exc.payload[0]
        if _stable(again) != _stable(payload):
            raise CommandFailure("values changed when the budget was doubled", EXIT_OTHER)
        payload["precisionDoubled"] = True
        lines.append("precision doubling: stable")
    return payload, lines


# ----------------------------------------------------------------------
# entry point


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--curve",
        action="append",
        metavar="NAME=EXPR",
        help="define a curve (NAME=EXPR), select a named one (NAME), or give an expression",
    )
    common.add_argument("--prec-inner", type=int, metavar="N", help="u-window width")
    common.add_argument("--prec-outer", type=int, metavar="N", help="g-window width")
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--traced", action="store_true", help="report traces to the base field")
    common.add_argument(
        "--prec-double", action="store_true", help="rerun at doubled budget and compare"
    )
    common.add_argument(
        "--emit-series", action="store_true", help="dump the tower expansions used"
    )

    parser = argparse.ArgumentParser(
        prog="residue", description="Exact residues along chains on plane curves."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("sing", parents=[common], help="singular points and branch counts")

    p = sub.add_parser("branches", parents=[common], help="Puiseux branches at a point")
    p.add_argument("--point", default="origin", help="'origin' or 'a,b'")

    p = sub.add_parser("parshin", parents=[common], help="residue along one chain")
    p.add_argument("--form", required=True, help="2-form 'EXPR ds^dt' or class '[... / NAME^m]'")
    p.add_argument("--chain", required=True, metavar="CURVE,POINT,INDEX")

    p = sub.add_parser("sumcheck", parents=[common], help="residue theorem identities")
    p.add_argument("--form", required=True)
    where = p.add_mutually_exclusive_group()
    where.add_argument("--p1", action="store_true", help="sum over all points of P^1")
    where.add_argument("--point", default="origin", help="'origin' or 'a,b'")

    p = sub.add_parser("membership", parents=[common], help="residue test for L(X, Y)")
    p.add_argument("--class", dest="cls", required=True, metavar="CLASS")

    sub.add_parser("fclass", parents=[common], help="fundamental class battery")
    return parser


def _emit(session, payload, lines, stream):
    if session.json:
        print(dumps(payload), file=stream)
    else:
        for line in lines:
            print(line, file=stream)
        if session.emit_series and "series" in payload:
            print(dumps(payload["series"]), file=sys.stderr)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        session = _session(args)
        payload, lines = _run(session, args)
    except CommandFailure as exc:
        if exc.payload is not None:
            _emit(session, exc.payload[0], exc.payload[1], sys.stdout)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedExtensionError as exc:
        print(f"unsupported extension: {exc}", file=sys.stderr)
        if exc.system:
            print(dumps(exc.system), file=sys.stderr)
        return EXIT_EXTENSION
    except (PrecisionExhaustedError, PrecisionError) as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ResidueError, ValueError, IndexError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER
    _emit(session, payload, lines, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
