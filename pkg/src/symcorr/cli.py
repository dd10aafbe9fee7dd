"""symcorr command line.

    symcorr correlate --class U --params '{"q":["1"]}' --set 0
    symcorr gap --class O-mixed --params '{"q":["1"]}' --alpha 1/2 --l 2
    symcorr identities --family pfaffian-properties --order 6 --seed 7

Exit codes: 0 ok, 2 usage, 3 computation error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import checks, fredholm, oracle
from .exact import ParameterSet, USeries, format_rational, rational
from .kernels import superset_disjoint

EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 2, 3, 4
RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
GAP_CLASSES = ("U", "UU", "O-mixed", "S-mixed", "frob-minus", "frob-half", "rot")


class Usage(Exception):
    pass


# -- parsing ------------------------------------------------------------------------


def parse_rational(text: str, flag: str):
    text = text.strip()
    if not RATIONAL.match(text):
        raise Usage(f"{flag}: expected an integer or a/b, got {text!r}")
    if text.endswith("/0"):
        raise Usage(f"{flag}: zero denominator")
    return rational(text)


def parse_params(text: str | None, flag: str) -> ParameterSet | None:
    if text is None:
        return None
    raw = text
    if not text.lstrip().startswith("{"):
        if not os.path.exists(text):
            raise Usage(f"{flag}: not JSON and no such file: {text!r}")
        with open(text) as fh:
            raw = fh.read()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise Usage(f"{flag}: invalid JSON ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise Usage(f"{flag}: expected a JSON object")
    for key in ("q", "r"):
        vals = obj.get(key, [])
        if not isinstance(vals, list) or not all(isinstance(v, (str, int)) for v in vals):
            raise Usage(f"{flag}: {key} must be a list of rational strings")
        for v in vals:
            if isinstance(v, str):
                parse_rational(v, f"{flag}.{key}")
    if "gamma" in obj:
        g = obj["gamma"]
        if not isinstance(g, (str, int)):
            raise Usage(f"{flag}: gamma must be a rational string")
        if isinstance(g, str):
            parse_rational(g, f"{flag}.gamma")
    try:
        return ParameterSet.from_json(obj)
    except ValueError as exc:
        raise Usage(f"{flag}: {exc}") from None


def parse_points(text: str | None, flag: str, doubled: bool) -> list:
    """Comma list of integers, or of "k/2" half-integers (returned doubled)."""
    if text is None or not text.strip():
        return []
    out = []
    for item in text.split(","):
        item = item.strip()
        if doubled:
            m = re.match(r"^([+-]?\d+)/2$", item)
            if not m or int(m.group(1)) % 2 == 0:
                raise Usage(f"{flag}: expected half-integers k/2 with k odd, got {item!r}")
            out.append(int(m.group(1)))
        else:
            if not re.match(r"^[+-]?\d+$", item):
                raise Usage(f"{flag}: expected integers, got {item!r}")
            out.append(int(item))
    if len(set(out)) != len(out):
        raise Usage(f"{flag}: repeated point")
    return out


def format_point(a: int, doubled: bool) -> str:
    return f"{a}/2" if doubled else str(a)


# -- output ------------------------------------------------------------------------


class Report:
    def __init__(self, args, command: str):
        self.fmt = args.format
        self.header = {"command": command, "order": args.order, "seed": args.seed}
        for key in ("cls", "alpha", "beta", "s"):
            val = getattr(args, key, None)
            if val is not None:
                self.header["class" if key == "cls" else key] = val
        for key in ("params", "params2"):
            p = getattr(args, f"{key}_set", None)
            if p is not None:
                self.header[key] = p.to_json()
        self.fields: dict = {}
        self.lines: list = []

    def series(self, name: str, x: USeries):
        self.fields[name] = {"series": str(x), "coefficients": x.to_json()}
        self.lines.append((name, str(x)))

    def value(self, name: str, v):
        self.fields[name] = v
        self.lines.append((name, str(v)))

    def emit(self, bare: str | None = None):
        if self.fmt == "json":
            print(json.dumps({"header": self.header, **self.fields}, sort_keys=True))
            return
        print("# " + " ".join(f"{k}={json.dumps(v, sort_keys=True, separators=(',', ':'))}"
                              if isinstance(v, dict) else f"{k}={v}"
                              for k, v in self.header.items()))
        if bare is not None:
            print(bare)
            return
        width = max((len(k) for k, _ in self.lines), default=0)
        for k, v in self.lines:
            print(f"{k.ljust(width)}  {v}")


# -- commands ------------------------------------------------------------------------


def _setup(args):
    if args.cls is None:
        raise Usage("--class is required")
    return checks.build(args.cls, args.params_set or ParameterSet(), args.order,
                        args.params2_set, args.alpha_q, args.beta_q)


def _points_for(args, setup):
    d = setup.doubled
    if setup.split:
        if args.set is not None:
            raise Usage(f"class {setup.tag} takes --set0/--set1")
        return {"S0": parse_points(args.set0, "--set0", d), "S1": parse_points(args.set1, "--set1", d)}
    if args.set0 is not None or args.set1 is not None:
        raise Usage(f"class {setup.tag} takes --set")
    return {"S": parse_points(args.set, "--set", d)}


def _with_oracle(args, rep, value, oracle_value):
    rep.series("kernel" if args.oracle else "value", value)
    if not args.oracle:
        rep.emit(bare=None if args.format == "json" else str(value))
        return 0
    defect = value - oracle_value
    rep.series("oracle", oracle_value)
    rep.series("defect", defect)
    rep.emit()
    return EXIT_VERIFY if args.strict and not defect.is_zero() else 0


def cmd_correlate(args):
    setup = _setup(args)
    pts = _points_for(args, setup)
    if args.set is not None and (args.set_plus is not None or args.set_minus is not None):
        raise Usage("use either --set or --set-plus/--set-minus")
    rep = Report(args, "correlate")
    if args.set_plus is not None or args.set_minus is not None:
        if setup.split or setup.tag not in ("U", "UU", "O-mixed", "S-mixed"):
            raise Usage("--set-plus/--set-minus need one of U, UU, O-mixed, S-mixed")
        Sp = parse_points(args.set_plus, "--set-plus", False)
        Sm = parse_points(args.set_minus, "--set-minus", False)
        if set(Sp) & set(Sm):
            raise Usage("--set-plus and --set-minus must be disjoint")
        value = superset_disjoint(setup.kernel, Sp, Sm)
        ov = oracle.superset_disjoint_oracle(setup.measure, Sp, Sm) if args.oracle else None
        return _with_oracle(args, rep, value, ov)
    value = checks.kernel_value(setup, **pts)
    ov = checks.oracle_value(setup, **pts) if args.oracle else None
    return _with_oracle(args, rep, value, ov)


def _window(setup, lo: int, hi: int) -> list:
    if setup.doubled:
        return [2 * a + 1 for a in range(lo, hi + 1)]
    return list(range(lo, hi + 1))


def _gap_oracle(measure, pts):
    return measure.expectation(lambda s: not any(measure.contains(s, a) for a in pts))


def cmd_gap(args):
    setup = _setup(args)
    if setup.tag not in GAP_CLASSES:
        raise Usage(f"gap is available for {', '.join(GAP_CLASSES)}")
    if args.l is None:
        raise Usage("--l is required")
    window = fredholm.gap_window(args.l, args.order)
    pts = _window(setup, window.lo, window.hi)
    value = fredholm.fredholm_auto(setup.kernel, pts, sign=-1)
    rep = Report(args, "gap")
    rep.value("window", [format_point(pts[0], setup.doubled), format_point(pts[-1], setup.doubled)])
    ov = _gap_oracle(setup.measure, pts) if args.oracle else None
    return _with_oracle(args, rep, value, ov)


def cmd_fredholm(args):
    setup = _setup(args)
    if setup.tag not in GAP_CLASSES:
        raise Usage(f"fredholm is available for {', '.join(GAP_CLASSES)}")
    if args.l is None or args.n is None:
        raise Usage("--l and --n give the window [l, n]")
    if args.n < args.l - 1:
        raise Usage("empty window needs n >= l - 1")
    s = args.s_q if args.s_q is not None else rational(1)
    pts = _window(setup, args.l, args.n)
    f = {a: -s for a in pts}
    value = fredholm.correls_functional(setup.kernel, f)
    rep = Report(args, "fredholm")
    ov = oracle.generating_functional_oracle(setup.measure, f) if args.oracle else None
    return _with_oracle(args, rep, value, ov)


def cmd_oracle(args):
    setup = _setup(args)
    rep = Report(args, "oracle")
    if args.l is not None:
        if args.l < 0:
            raise Usage("--l must be >= 0")
        rep.series("row_cdf", oracle.row_cdf_oracle(setup.measure, args.l))
    else:
        pts = _points_for(args, setup)
        rep.series("oracle", checks.oracle_value(setup, **pts))
    rep.value("states", len(setup.measure.states()))
    rep.emit()
    return 0


def _summary(rep, results, label):
    failed = [c for c in results if not c.ok]
    passed = len(results) - len(failed)
    rep.value(label, f"{passed}/{len(results)} passed")
    return failed


def cmd_verify(args):
    rep = Report(args, "verify")
    fin = checks.finite_model_suite(args.seed, args.models)
    bad = _summary(rep, fin, "finite-models")
    if args.cls is not None:
        setup = _setup(args)
        res = checks.kernel_oracle_suite(setup, args.sets_up_to)
        bad += _summary(rep, res, "kernel-vs-oracle")
        rep.value("all-defects-zero", all(c.ok for c in res))
    for c in bad:
        rep.value("FAIL", f"{c.name} {c.detail}".strip())
    rep.emit()
    return EXIT_VERIFY if bad else 0


def cmd_identities(args):
    rep = Report(args, "identities")
    names = [args.family] if args.family else list(checks.FAMILIES)
    bad = []
    total = []
    for name in names:
        res = checks.FAMILIES[name](args.order, args.seed)
        total += res
        if args.format == "text":
            for c in res:
                rep.lines.append(("ok" if c.ok else "FAIL", f"{name}: {c.name}"))
        else:
            rep.fields.setdefault("checks", []).extend(
                {"family": name, "name": c.name, "ok": c.ok} for c in res)
        bad += [c for c in res if not c.ok]
    rep.value("result", f"{len(total) - len(bad)}/{len(total)} passed")
    rep.emit()
    return EXIT_VERIFY if bad else 0


COMMANDS = {"correlate": cmd_correlate, "gap": cmd_gap, "fredholm": cmd_fredholm,
            "verify": cmd_verify, "oracle": cmd_oracle, "identities": cmd_identities}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--class", dest="cls", choices=checks.CLASSES)
    common.add_argument("--params", help="parameter set as JSON or a JSON file path")
    common.add_argument("--params2", help="second parameter set (classes U, UU; defaults to --params)")
    common.add_argument("--alpha", help="rational string")
    common.add_argument("--beta", help="rational string")
    common.add_argument("--s", help="rational string")
    for flag in ("--set", "--set0", "--set1", "--set-plus", "--set-minus"):
        common.add_argument(flag, help="comma list of points (k/2 for half-integer classes)")
    common.add_argument("--l", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--order", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--oracle", action="store_true", help="also print oracle value and defect")
    common.add_argument("--strict", action="store_true", help="exit 4 on a nonzero defect")
    common.add_argument("--family", choices=sorted(checks.FAMILIES))
    common.add_argument("--sets-up-to", type=int, default=2)
    common.add_argument("--models", type=int, default=60, help="finite models for verify")

    parser = argparse.ArgumentParser(prog="symcorr", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "correlate": "Pr(S in T) from the kernel",
        "gap": "Pr(no point in [l, oo)) as a Fredholm pfaffian or determinant",
        "fredholm": "pf(J - sK) or det(I - sK) on the window [l, n]",
        "verify": "finite-model suite and kernel-vs-oracle suite",
        "oracle": "brute-force correlation or first-row distribution",
        "identities": "run identity families",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def _validate(args):
    if args.order < 0:
        raise Usage("--order must be >= 0")
    if args.sets_up_to < 0 or args.models < 0:
        raise Usage("counts must be >= 0")
    args.alpha_q = parse_rational(args.alpha, "--alpha") if args.alpha is not None else 0
    args.beta_q = parse_rational(args.beta, "--beta") if args.beta is not None else 0
    args.s_q = parse_rational(args.s, "--s") if args.s is not None else None
    args.params_set = parse_params(args.params, "--params")
    args.params2_set = parse_params(args.params2, "--params2")
    if args.params2_set is not None and args.cls not in ("U", "UU"):
        raise Usage("--params2 only applies to classes U and UU")
    if args.alpha is not None:
        args.alpha = format_rational(args.alpha_q)
    if args.beta is not None:
        args.beta = format_rational(args.beta_q)
    if args.s is not None:
        args.s = format_rational(args.s_q)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        return COMMANDS[args.command](args)
    except (Usage, checks.UsageError) as exc:
        print(f"symcorr: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, ValueError, oracle.UnsupportedClass) as exc:
        print(f"symcorr: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
