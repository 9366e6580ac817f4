"""Command-line front end.

Every subcommand prints one report.  JSON output is key-sorted so repeated
runs are byte-identical; ``--format table`` prints aligned rows instead.
Exit status: 0 on success, 1 when the input is well-formed but the
computation cannot proceed (bad model file, missing curves, degenerate
weights), 2 for usage errors including malformed number literals.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .adjunction import adjunction_bound, fg_check, qm_minimize
from .catalog import (
    DEFAULT_LINE_CONIC_WEIGHTS,
    TABLE_ORDER,
    CubicCase,
    cubic_delta,
    cubic_model,
    eckardt_report,
    index_two_report,
    line_conic_family,
    small_deg_bound,
)
from .errors import DomainError
from .exactnum import AlgNum, Field, LiteralError, common_field, parse_algnum
from .fujita import SurfaceBlowupModel, summarize
from .oracle import MonomialModel, s_convergence, s_m
from .zariski import certify_chamber

FAMILIES = {"line-conic": line_conic_family}


class UsageError(Exception):
    pass


def _field_json(values) -> dict:
    return common_field(values).to_json()


def _report(command: str, inputs: dict, field: dict, result) -> dict:
    return {"command": command, "input": inputs, "field": field, "result": result}


def _load_model(args) -> SurfaceBlowupModel:
    if args.model is not None:
        try:
            with open(args.model, encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read model file {args.model}: {exc}") from exc
        if not isinstance(obj, dict):
            raise DomainError(f"model file {args.model} must hold a JSON object")
        return SurfaceBlowupModel.from_json(obj)
    return cubic_model(_case(args))


def _case(args) -> CubicCase:
    if args.case is None:
        raise UsageError("give --model PATH or --case NAME")
    if args.case.replace("-", "_") == "line_conic":
        return CubicCase.line_conic(args.a, args.b)
    if args.a is not None or args.b is not None:
        raise UsageError("--a/--b only apply to --case line-conic")
    return CubicCase(args.case)


def _model_input(args) -> dict:
    if args.model is not None:
        return {"model": args.model}
    out = {"case": args.case}
    if args.case.replace("-", "_") == "line_conic":
        out.update(a=args.a, b=args.b)
    return out


def cmd_cubic_delta(args) -> dict:
    if args.all == (args.case is not None):
        raise UsageError("give exactly one of --case or --all")
    names = TABLE_ORDER if args.all else (args.case.replace("-", "_"),)
    rows, vals = [], []
    for name in names:
        value = cubic_delta(name)
        vals.append(value)
        rows.append({"case": name, "delta": value.to_json(), "text": str(value), "approx": round(float(value), 12)})
    return _report("cubic-delta", {"cases": list(names)}, _field_json(vals), rows)


def cmd_cubic_model(args) -> dict:
    model = cubic_model(_case(args))
    return model.to_json()


def cmd_zariski(args) -> dict:
    model = _load_model(args)
    lat = model.lattice
    chambers = []
    for ch in model.chambers:
        row = ch.to_json()
        row["certificates"] = certify_chamber(lat, ch)
        chambers.append(row)
    vals = [x for row in lat.gram for x in row] + [c.t_hi for c in model.chambers]
    return _report("zariski", _model_input(args), _field_json(vals), {"classes": list(lat.classes), "chambers": chambers})


def cmd_svalue(args) -> dict:
    model = _load_model(args)
    summary = summarize(model)
    vals = [summary.s, summary.t, summary.c1_degree, *summary.fixed_part_mults.values()]
    return _report("svalue", _model_input(args), _field_json(vals), summary.to_json())


def cmd_adjunction(args) -> dict:
    model = _load_model(args)
    rep = adjunction_bound(model)
    vals = [rep.lam] + [a for _, a in rep.induced]
    return _report("adjunction", _model_input(args), _field_json(vals), rep.to_json())


def _parse_weights(text: str) -> list[tuple[int, int]]:
    try:
        out = []
        for item in text.split(";"):
            a, b = item.split(",")
            out.append((int(a), int(b)))
        return out
    except ValueError:
        raise UsageError(f"weights must look like '1,1;2,1;3,2', got {text!r}") from None


def cmd_qm_min(args) -> dict:
    family = FAMILIES[args.family]()
    weights = _parse_weights(args.weights) if args.weights else list(DEFAULT_LINE_CONIC_WEIGHTS)
    res = qm_minimize(family, weights)
    inputs = {"family": args.family, "weights": [list(w) for w in weights]}
    vals = [res.value] + ([res.mu_star] if res.mu_star is not None else [])
    return _report("qm-min", inputs, _field_json(vals), res.to_json())


def _literal(text: str) -> AlgNum:
    try:
        return parse_algnum(text)
    except LiteralError:
        raise
    except ValueError as exc:
        raise LiteralError(str(exc)) from exc


def cmd_fg_check(args) -> dict:
    a0, b0 = _literal(args.a), _literal(args.b)
    # the two weights may come from different quadratic fields: widen explicitly
    f = a0.field.compositum(b0.field)
    res = fg_check(a0.lift(f), b0.lift(f))
    return _report("fg-check", {"a": args.a, "b": args.b}, res.field.to_json(), res.to_json())


def cmd_eckardt(args) -> dict:
    rep = eckardt_report(args.n, args.d)
    return _report("eckardt", {"n": args.n, "d": args.d}, Field().to_json(), rep.to_json())


def cmd_small_deg(args) -> dict:
    vol = _literal(args.vol)
    value = small_deg_bound(args.n, vol)
    return _report("small-deg", {"n": args.n, "vol": args.vol}, value.field.to_json(), {"bound": value.to_json()})


def cmd_index_two(args) -> dict:
    rep = index_two_report(args.n)
    vals = [rep.s_tail, rep.c1_tail_deg, rep.curve_bound, rep.eta_bound, rep.point_bound]
    return _report("index-two", {"n": args.n}, _field_json(vals), rep.to_json())


def _fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def cmd_oracle_sm(args) -> dict:
    ambient = {"p1": "curve", "p2": "plane"}[args.model]
    model = MonomialModel(ambient, args.degree, tuple(_fraction_list(args.weights)))
    inputs = {"model": args.model, "degree": args.degree, "weights": args.weights}
    if args.m_list:
        try:
            ms = [int(x) for x in args.m_list.split(",")]
        except ValueError:
            raise UsageError(f"--m-list must be comma-separated integers, got {args.m_list!r}") from None
        rep = s_convergence(model, ms, _fraction_list(args.tolerance)[0])
        inputs.update(m_list=ms, tolerance=args.tolerance)
        if not rep.ok:
            raise DomainError(f"S_m gap at m={ms[-1]} exceeds tolerance {args.tolerance}")
        return _report("oracle-sm", inputs, Field().to_json(), rep.to_json())
    value = s_m(model, args.m)
    inputs["m"] = args.m
    return _report("oracle-sm", inputs, Field().to_json(), {"S_m": AlgNum.rational(value).to_json(), "model": model.to_json()})


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", help="path to a model JSON file")
    p.add_argument("--case", help="cubic-surface preset instead of a file")
    p.add_argument("--a", type=int, help="line weight for --case line-conic")
    p.add_argument("--b", type=int, help="conic weight for --case line-conic")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kstab", description="Exact K-stability invariants of polarized surfaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--format", choices=("json", "table"), default="json")
    # accept --format after the subcommand as well
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[fmt], **kw)

    p = add("cubic-delta", help="delta_x of a cubic surface by tangent-section type")
    p.add_argument("--case", choices=[c.replace("_", "-") for c in TABLE_ORDER])
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_cubic_delta)

    p = add("cubic-model", help="dump a preset model as JSON")
    p.add_argument("--case", required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.set_defaults(func=cmd_cubic_model, model=None)

    for name, fn, text in (
        ("zariski", cmd_zariski, "Zariski chambers of P0 - tE"),
        ("svalue", cmd_svalue, "S, T, volumes and fixed part"),
        ("adjunction", cmd_adjunction, "adjunction lower bound for delta_x"),
    ):
        p = add(name, help=text)
        _add_model_args(p)
        p.set_defaults(func=fn)

    p = add("qm-min", help="minimize A/S over a two-weight family")
    p.add_argument("--family", choices=sorted(FAMILIES), default="line-conic")
    p.add_argument("--weights", help="sample weights, e.g. '1,1;2,1;3,1;3,2;4,3;5,2'")
    p.set_defaults(func=cmd_qm_min)

    p = add("fg-check", help="Q-independence of a0, b0 and the chamber wall")
    p.add_argument("--a", required=True, help="exact literal, e.g. '1+s2'")
    p.add_argument("--b", required=True, help="exact literal, e.g. 's3'")
    p.set_defaults(func=cmd_fg_check)

    p = add("eckardt", help="generalized Eckardt point report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_eckardt)

    p = add("small-deg", help="(n+1)/(L^n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--vol", required=True)
    p.set_defaults(func=cmd_small_deg)

    p = add("index-two", help="index-two hypersurface numerics")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_index_two)

    p = add("oracle-sm", help="brute-force S_m on P^1 or P^2")
    p.add_argument("--model", choices=("p1", "p2"), required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--weights", required=True, help="comma-separated, e.g. '1,2' or '0,0,1'")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--m-list", help="comma-separated ascending m values for a convergence table")
    p.add_argument("--tolerance", default="3/16")
    p.set_defaults(func=cmd_oracle_sm)
    return ap


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            yield from _flatten(x, f"{prefix}[{i}]")
    else:
        yield prefix, obj


def _cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, sort_keys=True)


def render_table(report: dict) -> str:
    result = report.get("result")
    if report.get("command") == "cubic-delta":
        rows = [(r["case"], r["text"], f"{r['approx']:.10f}") for r in result]
        head = ("case", "delta", "approx")
    else:
        rows = [(k, _cell(v)) for k, v in _flatten(report)]
        head = ("key", "value")
    widths = [max(len(str(r[i])) for r in [head, *rows]) for i in range(len(head))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(head, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except (LiteralError, UsageError) as exc:
        print(f"kstab {args.command}: usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError, KeyError) as exc:
        print(f"kstab {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if args.format == "table":
        print(render_table(report))
    else:
        print(json.dumps(report, sort_keys=True, indent=2))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
