"""Command-line front end.

Exit status: 0 on success (including verified identities), 1 on bad input
or a violated constraint, 2 when a verification comes out false.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .exactalg import RationalFn, as_fraction
from .lfactor import default_order, lfactor_series, random_regular_points, verify_identity
from .rootdata import symbols
from .satake import (
    CharacterTriple,
    ConstraintError,
    format_value,
    gsp4_from_uv,
    parse_value,
    symbolic_gsp4,
)
from .shalika import CSContext, PoleError, cs_inert, cs_split
from .structure import PadicSampler, padic_integral_comp1, padic_integral_comp2
from .theta import shalika_verdict, theta_transfer, weyl_normalize

COMMANDS = ("lfactor", "cs-values", "verify-identity", "theta-transfer", "shalika-report", "padic-oracle", "selftest")
EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2

# numeric tolerances for the floating-point oracle
COMP1_TOL = 1e-9
COMP2_TOL = 1e-6


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1); exit 2 is reserved for mismatches."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# input parsing
# --------------------------------------------------------------------------


def parse_n(text: str) -> list[int]:
    """Accepts a range "0..5", a single "3" or a list "0,2,4"."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"cannot parse --n {text!r}") from None
    if not out or min(out) < 0:
        raise InputError(f"--n must list non-negative integers, got {text!r}")
    return out


def load_input(raw: str | None) -> dict:
    if raw is None:
        return {}
    text = raw
    if not raw.lstrip().startswith("{"):
        try:
            with open(raw, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read input {raw!r}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON input: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(obj, dict):
        raise InputError("input must be a JSON object")
    return obj


def _value(obj: dict, key: str):
    try:
        return parse_value(obj[key])
    except ValueError as exc:
        raise InputError(f"field {key!r}: {exc}") from None


def character_from_input(obj: dict) -> CharacterTriple:
    """Accepts {"group", "values"}, {"u", "v"} or any subset of {"x1", "x2", "x0"}.

    Missing slots are filled so the central product is 1, leaving u free:
    with only x2 given, x0 = u and x1 = 1/(x2 u^2).
    """
    if "group" in obj or "values" in obj:
        try:
            chi = CharacterTriple.from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad character: {exc}") from None
        if chi.group != "GSp4":
            raise InputError(f"expected a GSp4 character, got {chi.group}")
        return chi
    if "u" in obj or "v" in obj:
        if not ("u" in obj and "v" in obj):
            raise InputError("give both u and v")
        u, v = _value(obj, "u"), _value(obj, "v")
        if u == 0 or v == 0:
            raise ConstraintError("nonzero Satake parameters", "u and v must be invertible")
        return gsp4_from_uv(u, v)
    given = {k: _value(obj, k) for k in ("x1", "x2", "x0") if k in obj}
    if not given:
        return symbolic_gsp4()
    for k, val in given.items():
        if val == 0:
            raise ConstraintError("nonzero character values", f"{k} = 0")
    if len(given) == 3:
        return CharacterTriple("GSp4", (given["x1"], given["x2"], given["x0"]))
    u = symbols()[0]
    if "x0" in given:
        x0 = given["x0"]
        if "x1" in given:
            return CharacterTriple("GSp4", (given["x1"], 1 / (given["x1"] * x0 * x0), x0))
        if "x2" in given:
            return CharacterTriple("GSp4", (1 / (given["x2"] * x0 * x0), given["x2"], x0))
        # only x0: keep x1 free as u
        return CharacterTriple("GSp4", (u, 1 / (u * x0 * x0), x0))
    if "x1" in given and "x2" in given:
        prod = given["x1"] * given["x2"]
        root = _rational_inverse_sqrt(prod)
        if root is None:
            raise InputError("x1*x2 has no rational inverse square root; give x0 explicitly")
        return CharacterTriple("GSp4", (given["x1"], given["x2"], root))
    if "x2" in given:
        return CharacterTriple("GSp4", (1 / (given["x2"] * u * u), given["x2"], u))
    return CharacterTriple("GSp4", (given["x1"], 1 / (given["x1"] * u * u), u))


def _rational_inverse_sqrt(x) -> Fraction | None:
    if not isinstance(x, Fraction) or x <= 0:
        return None
    from math import isqrt

    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rd, rn)


def q_from(args, obj: dict):
    if args.q is not None:
        try:
            return parse_value(args.q)
        except ValueError as exc:
            raise InputError(f"--q: {exc}") from None
    if "q" in obj:
        return _value(obj, "q")
    return None


def _require_numeric(args, chi: CharacterTriple | None, q) -> None:
    if args.mode != "numeric":
        return
    if chi is not None and chi.is_symbolic():
        raise InputError("numeric mode needs fully numeric character values")
    if q is None:
        raise InputError("numeric mode needs q (input field 'q' or --q)")
    if not isinstance(q, Fraction):
        raise InputError("numeric mode needs a numeric q")


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def render(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, float, str)):
        return x
    if isinstance(x, Fraction):
        return format_value(x)
    if isinstance(x, RationalFn):
        return str(x.reduce())
    if isinstance(x, CharacterTriple):
        return x.to_json()
    if isinstance(x, dict):
        return {k: render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [render(v) for v in x]
    return str(x)


def _flatten(prefix: str, x: Any, rows: list[tuple[str, str]]) -> None:
    if isinstance(x, dict):
        for k, v in x.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(x, list) and any(isinstance(v, (dict, list)) for v in x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, rows)
    elif isinstance(x, list):
        rows.append((prefix, ",".join(str(v) for v in x)))
    else:
        rows.append((prefix, json.dumps(x) if isinstance(x, bool) or x is None else str(x)))


def emit(report: dict, args, table: list[tuple] | None = None, header: tuple | None = None) -> None:
    """JSON always carries the whole report; TSV prints ``table`` when given."""
    report = render(report)
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    else:
        lines = []
        if table is not None:
            lines.append("\t".join(header or ()))
            lines.extend("\t".join(str(render(c)) for c in row) for row in table)
        else:
            rows: list[tuple[str, str]] = []
            _flatten("", report, rows)
            lines.extend(f"{k}\t{v}" for k, v in rows)
        text = "\n".join(lines) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _order(args) -> int:
    order = args.order if args.order is not None else default_order(args.mode)
    if order < 0:
        raise InputError("--order must be non-negative")
    return order


def cmd_lfactor(args) -> int:
    obj = load_input(args.input)
    chi = character_from_input(obj)
    q = q_from(args, obj)
    _require_numeric(args, chi, q)
    order = _order(args)
    twist = "trivial" if args.case == "split" else "quadratic"
    s = lfactor_series(chi, twist, q, order)
    coeffs = [s[k] for k in range(order + 1)]
    report = {"case": args.case, "twist": twist, "order": order, "character": chi, "coefficients": coeffs}
    emit(report, args, [(k, c) for k, c in enumerate(coeffs)], ("k", "coefficient"))
    return EXIT_OK


def cmd_cs_values(args) -> int:
    obj = load_input(args.input)
    chi = character_from_input(obj)
    q = q_from(args, obj)
    ns = parse_n(args.n)
    ctx = CSContext.build(args.case, chi, q)
    _require_numeric(args, chi, q)
    fn = cs_split if args.case == "split" else cs_inert
    values = [fn(n, ctx) for n in ns]
    report = {"case": args.case, "character": ctx.chi, "q": ctx.q, "values": {str(n): v for n, v in zip(ns, values)}}
    emit(report, args, list(zip(ns, values)), ("n", "value"))
    return EXIT_OK


def cmd_verify_identity(args) -> int:
    obj = load_input(args.input)
    order = _order(args)
    if args.mode == "numeric" and not obj:
        # seeded batch of random regular points
        points = []
        all_equal = True
        for u, v, q in random_regular_points(args.points, args.seed):
            r = verify_identity(args.case, gsp4_from_uv(u, v), q, order)
            entry = {"u": u, "v": v, "q": q, "equal": r.equal}
            if not r.equal:
                all_equal = False
                entry.update(first_mismatch=r.first_mismatch, lhs=r.lhs, rhs=r.rhs)
            points.append(entry)
        report = {"case": args.case, "order": order, "equal": all_equal, "seed": args.seed, "points": points}
        emit(report, args)
        return EXIT_OK if all_equal else EXIT_MISMATCH
    chi = character_from_input(obj) if obj else None
    q = q_from(args, obj)
    _require_numeric(args, chi, q)
    r = verify_identity(args.case, chi, q, order)
    emit(r.to_json(), args)
    return EXIT_OK if r.equal else EXIT_MISMATCH


def cmd_theta_transfer(args) -> int:
    obj = load_input(args.input)
    chi = character_from_input(obj)
    q = q_from(args, obj)
    _require_numeric(args, chi, q)
    xi, tag = theta_transfer(chi, q)
    normalized, _ = weyl_normalize(chi)
    emit({"source": chi, "normalized": normalized, "transfer": xi, "case_tag": tag}, args)
    return EXIT_OK


def cmd_shalika_report(args) -> int:
    obj = load_input(args.input)
    chi = character_from_input(obj)
    q = q_from(args, obj)
    _require_numeric(args, chi, q)
    emit(shalika_verdict(chi, q).to_json(), args)
    return EXIT_OK


def cmd_padic_oracle(args) -> int:
    if args.p < 3 or any(args.p % k == 0 for k in range(2, int(args.p**0.5) + 1)):
        raise InputError("--p must be an odd prime")
    sampler = PadicSampler(args.p, args.depth)
    try:
        if args.which == "comp1":
            z2 = as_fraction(parse_value(args.z2))
            res = padic_integral_comp1(sampler, z2, args.jmax)
            tol = COMP1_TOL
            params = {"z2": z2}
        else:
            z1, z0 = as_fraction(parse_value(args.z1)), as_fraction(parse_value(args.z0))
            res = padic_integral_comp2(sampler, z1, z0, args.jmax or 400)
            tol = COMP2_TOL
            params = {"z1": z1, "z0": z0}
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    ok = res["error"] < tol
    report = {"which": args.which, "p": args.p, **params, "value": res["value"],
              "closed_form": res["closed_form"], "error": res["error"], "tolerance": tol, "within_tolerance": ok}
    emit(report, args)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_selftest(args) -> int:
    from .selfcheck import run_all

    results = run_all()
    ok = all(r["passed"] for r in results)
    table = [(r["criterion"], "PASS" if r["passed"] else "FAIL", r["detail"]) for r in results]
    emit({"passed": ok, "criteria": results}, args, table, ("criterion", "status", "detail"))
    return EXIT_OK if ok else EXIT_MISMATCH


HANDLERS = {
    "lfactor": cmd_lfactor,
    "cs-values": cmd_cs_values,
    "verify-identity": cmd_verify_identity,
    "theta-transfer": cmd_theta_transfer,
    "shalika-report": cmd_shalika_report,
    "padic-oracle": cmd_padic_oracle,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--case", choices=("split", "inert"), default="split")
    common.add_argument("--mode", choices=("symbolic", "numeric"), default="symbolic")
    common.add_argument("--order", type=int, default=None,
                        help="truncation order (default 8 symbolic, 16 numeric; env SHALIKA_CS_ORDER)")
    common.add_argument("--n", default="0..5", help='"0..5", "3" or "0,2,4"')
    common.add_argument("--seed", type=int, default=2024, help="seed for random-point batches")
    common.add_argument("--points", type=int, default=20, help="batch size for numeric verify-identity")
    common.add_argument("--input", default=None, help="JSON file path or inline JSON object")
    common.add_argument("--q", default=None, help="residue field size; overrides the input's q")
    common.add_argument("--output", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("json", "tsv"), default="json")

    parser = _Parser(prog="shalika-cs", description="Spherical Shalika functionals and standard L-factors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "padic-oracle":
            p.add_argument("--which", choices=("comp1", "comp2"), default="comp1")
            p.add_argument("--p", type=int, default=3)
            p.add_argument("--z2", default="1")
            p.add_argument("--z1", default="1")
            p.add_argument("--z0", default="1/2")
            p.add_argument("--depth", type=int, default=3)
            p.add_argument("--jmax", type=int, default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except ConstraintError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PoleError as exc:
        print(f"error: pole: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
