"""Command line driver: ``axialkit <command> [file] [options]``.

Every command prints a report (``--format text`` or ``json``) and exits 0
when every check passes, 1 when some check fails and 2 on errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field as dc_field

from .core.algebra import Algebra, LazyAlgebra, SparseVector, format_combination
from .core.field import QQ, FieldSpec
from .fusion import (
    OUTSIDE,
    FusionLaw,
    decompose,
    parse_law,
    verify_axial,
    verify_decomposition,
    verify_fusion_window,
)
from .io import AlgebraFile, emit_algebra, emit_map, parse_algebra, parse_combination, parse_map
from .maps import (
    CLASSES,
    MAX_EXHAUSTIVE_TUPLES,
    ElementaryPair,
    Mode,
    check_elementary_pair,
    check_n_multiplicative_derivation,
    check_n_multiplicative_iso,
    _tuples,
    nullifying_properties,
    residual_fn,
)
from .martindale import (
    DEFAULT_CAP,
    check_conditions,
    check_conditions_window,
    lemma_statements,
    lemma_statements_window,
)
from .search import TARGETS, SearchSpec, run_search
from .zoo import (
    ZOO_NAMES,
    build,
    format_highwater_key,
    highwater,
    highwater_decomposition,
    parse_highwater_key,
)

ENV_FORMAT = "AXIALKIT_FORMAT"
DEFAULT_WINDOW = 8

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


@dataclass
class Check:
    name: str
    status: str  # pass | fail | window-verified | info
    detail: object = None
    witness: object = None

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "window-verified", "info")

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail, "witness": self.witness}


@dataclass
class Report:
    command: str
    argv: list
    input: dict | None = None
    checks: list = dc_field(default_factory=list)
    error: str | None = None
    output: str | None = None  # free text (emitted files, tables)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if all(c.passed for c in self.checks) else "fail"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL}.get(self.status, EXIT_ERROR)

    def as_dict(self) -> dict:
        d = {
            "command": self.command,
            "argv": self.argv,
            "input": self.input,
            "checks": [c.as_dict() for c in self.checks],
            "status": self.status,
            "exit_code": self.exit_code,
        }
        if self.error is not None:
            d["error"] = self.error
        if self.output is not None:
            d["output"] = self.output
        return d

    def render_text(self) -> str:
        lines = []
        if self.output:
            lines.append(self.output.rstrip("\n"))
        for c in self.checks:
            line = f"{c.name}: {c.status}"
            if c.detail not in (None, "", {}, []):
                line += f"  {_text(c.detail)}"
            lines.append(line)
            if c.witness is not None and not c.passed:
                lines.append(f"  witness: {_text(c.witness)}")
        if self.error is not None:
            lines.append(f"error: {self.error}")
        elif self.checks:
            lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"


def _text(x) -> str:
    if isinstance(x, dict):
        return ", ".join(f"{k}={_text(v)}" for k, v in x.items())
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_text(v) for v in x) + "]"
    return str(x)


# -- formatting helpers ------------------------------------------------------------

def fmt_vector(alg, v) -> str:
    """A vector as text in the algebra-file combination grammar."""
    f = alg.field
    if isinstance(v, SparseVector):
        terms = [(format_highwater_key(k) if isinstance(alg, LazyAlgebra) else str(k), v[k]) for k in v.support()]
    else:
        terms = [(alg.names[k], c) for k, c in enumerate(v) if c]
    return format_combination(f, terms)


def fmt_scalar(field: FieldSpec, x) -> str:
    return field.format(x)


def fmt_element(alg: Algebra, x):
    # table maps work on canonical indices, linear maps on coordinate tuples
    return x if isinstance(x, int) else fmt_vector(alg, x)


# -- input handling ------------------------------------------------------------------

def read_input(path: str | None) -> tuple[str, dict]:
    if path in (None, "-"):
        data = sys.stdin.buffer.read()
        shown = "-"
    else:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}") from None
        shown = path
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise CliError(f"{shown} is not UTF-8 text") from None
    return text, {"path": shown, "sha256": hashlib.sha256(data).hexdigest()}


def load(args, report: Report) -> AlgebraFile:
    text, meta = read_input(args.file)
    report.input = meta
    return parse_algebra(text)


def resolve_law(args, af: AlgebraFile, required=True) -> FusionLaw | None:
    if getattr(args, "law", None):
        return parse_law(args.law, af.field)
    if af.law is None and required:
        raise CliError("no fusion law: pass --law or declare one in the file")
    return af.law


def resolve_axes(args, af: AlgebraFile) -> list:
    specs = getattr(args, "axis", None)
    if not specs:
        if not af.axes:
            raise CliError("no axis: pass --axis or declare one in the file")
        return list(af.axes)
    out = []
    for s in specs:
        toks = s.split()
        if af.is_lazy:
            terms = parse_combination(toks, af.field)
            out.append(af.algebra.vector({parse_highwater_key(k): c for k, c in terms.items()}))
        else:
            out.append(af.algebra.vector(parse_combination(toks, af.field, set(af.algebra.names))))
    return out


def lazy_axis_index(alg, axis) -> int:
    keys = axis.support()
    if len(keys) != 1 or keys[0][0] != "a" or axis[keys[0]] != alg.field.one:
        raise CliError(f"windowed commands need a basis axis a(k), got {fmt_vector(alg, axis)}")
    return keys[0][1]


def windowed(af: AlgebraFile, axis, law: FusionLaw):
    if law.name != "highwater":
        raise CliError("the lazy Highwater algebra only supports law highwater")
    entry = highwater(af.field)
    entry.law = law
    return highwater_decomposition(entry, lazy_axis_index(af.algebra, axis))


def window_of(args) -> int:
    N = args.window if args.window is not None else DEFAULT_WINDOW
    if N < 1:
        raise CliError("--window must be positive")
    return N


# -- commands -------------------------------------------------------------------------

def cmd_decompose(args, report: Report):
    af = load(args, report)
    law = resolve_law(args, af)
    for axis in resolve_axes(args, af):
        label = fmt_vector(af.algebra, axis)
        if af.is_lazy:
            N = window_of(args)
            wd = windowed(af, axis, law)
            parts = wd.parts(N)
            table = {fmt_scalar(af.field, lam): len(g) for lam, g in parts.items()}
            bases = {fmt_scalar(af.field, lam): [fmt_vector(af.algebra, v) for v in g] for lam, g in parts.items()}
            report.checks.append(Check(f"decompose[{label}]", "window-verified",
                                       {"dims": table, "bases": bases, "window": N}))
            continue
        d = decompose(af.algebra, axis, law)
        table = {fmt_scalar(af.field, lam): p.dim for lam, p in d.parts.items()}
        bases = {fmt_scalar(af.field, lam): [fmt_vector(af.algebra, b) for b in p.basis] for lam, p in d.parts.items()}
        wit = None
        if not d.complete:
            rep = verify_decomposition(d)
            wit = fmt_vector(af.algebra, rep.violations[0].u)
        report.checks.append(Check(f"decompose[{label}]", "pass" if d.complete else "fail",
                                   {"dims": table, "bases": bases}, wit))
        lines = [f"axis {label}", "eigenvalue  dim  basis"]
        for lam, p in d.parts.items():
            lines.append(f"{fmt_scalar(af.field, lam):>10}  {p.dim:>3}  "
                         + "; ".join(fmt_vector(af.algebra, b) for b in p.basis))
        report.output = ((report.output or "") + "\n".join(lines) + "\n")


def _fusion_check(af, law, axis, args) -> Check:
    alg = af.algebra
    label = fmt_vector(alg, axis)
    if af.is_lazy:
        rep = verify_fusion_window(windowed(af, axis, law), window_of(args))
        status = "window-verified" if rep.ok else "fail"
    else:
        rep = verify_decomposition(decompose(alg, axis, law))
        status = rep.status
    detail = {"violations": len(rep.violations)}
    wit = None
    if rep.violations:
        v = rep.violations[0]
        f = alg.field
        if v.offending == OUTSIDE or isinstance(v.offending, str):
            detail["kind"] = v.offending if isinstance(v.offending, str) else OUTSIDE
            wit = {"vector": fmt_vector(alg, v.u)}
        else:
            detail["kind"] = "forbidden-component"
            wit = {"left": fmt_scalar(f, v.left), "right": fmt_scalar(f, v.right),
                   "u": fmt_vector(alg, v.u), "v": fmt_vector(alg, v.v),
                   "offending": fmt_scalar(f, v.offending),
                   "component": fmt_vector(alg, v.component) if v.component is not None else None}
    return Check(f"fusion[{label}]", status, detail, wit)


def cmd_fusion_check(args, report: Report):
    af = load(args, report)
    law = resolve_law(args, af)
    for axis in resolve_axes(args, af):
        report.checks.append(_fusion_check(af, law, axis, args))


def cmd_martindale(args, report: Report):
    af = load(args, report)
    law = resolve_law(args, af)
    alg = af.algebra
    for axis in resolve_axes(args, af):
        label = fmt_vector(alg, axis)
        if af.is_lazy:
            rep = check_conditions_window(windowed(af, axis, law), window_of(args))
        else:
            rep = check_conditions(alg, decompose(alg, axis, law))
        for name, ok in rep.conditions.items():
            wit = None
            if name in rep.witnesses:
                target, mult, w = rep.witnesses[name]
                wit = {"part": target, "multipliers": mult, "vector": fmt_vector(alg, w)}
            status = ("window-verified" if rep.window else "pass") if ok else "fail"
            report.checks.append(Check(f"martindale[{label}].{name}", status,
                                       {"kind": rep.kind, "holds": ok}, wit))


def cmd_axial_check(args, report: Report):
    af = load(args, report)
    if af.is_lazy:
        raise CliError("axial-check needs a finite-dimensional algebra")
    law = resolve_law(args, af)
    axes = resolve_axes(args, af)
    rep = verify_axial(af.algebra, axes, law)
    for a in axes:
        report.checks.append(_fusion_check(af, law, a, args) if af.algebra.is_idempotent(a)
                             else Check(f"fusion[{fmt_vector(af.algebra, a)}]", "fail",
                                        {"kind": "not-an-axis"}, {"vector": fmt_vector(af.algebra, a)}))
    report.checks.append(Check("generation", "pass" if rep.generation else "fail",
                               {"axes": len(axes), "dim": af.algebra.dim}))


def cmd_lemma_check(args, report: Report):
    af = load(args, report)
    law = resolve_law(args, af)
    alg = af.algebra
    if args.r < 1:
        raise CliError("--r must be positive")
    for axis in resolve_axes(args, af):
        label = fmt_vector(alg, axis)
        if af.is_lazy:
            rep = lemma_statements_window(windowed(af, axis, law), window_of(args), args.r)
        else:
            method = "words" if args.cap is not None else "span"
            rep = lemma_statements(alg, decompose(alg, axis, law), args.r, method,
                                   args.cap if args.cap is not None else DEFAULT_CAP)
        for c in rep.checks:
            if c.holds:
                status = "window-verified" if rep.window else "pass"
            else:
                status = "fail"
            wit = {"vector": fmt_vector(alg, c.witness)} if c.witness is not None else None
            report.checks.append(Check(f"lemma[{label}].{c.family} {c.statement} A_{c.part}", status,
                                       {"r": args.r}, wit))


def _load_map(path, alg):
    text, _ = read_input(path)
    return parse_map(text, alg)


def _auto_mode(size, arity, samples, seed) -> Mode:
    if samples is None and size is not None and size ** arity <= min(MAX_EXHAUSTIVE_TUPLES, 10**6):
        return Mode.exhaustive(bound=size)
    return Mode.sampled(samples or 1000, seed)


def cmd_residual_check(args, report: Report):
    af = load(args, report)
    if af.is_lazy:
        raise CliError("residual-check needs a finite-dimensional algebra")
    alg = af.algebra
    if args.n < 1:
        raise CliError("--n must be positive")
    m = _load_map(args.map, alg)
    kind = args.map_class
    if kind in ("elem", "jelem"):
        ms = _load_map(args.map_star, alg) if args.map_star else m.inverse()
        fmap = ElementaryPair(m, ms, "elementary" if kind == "elem" else "jordan")
    else:
        fmap = m
    size = None if alg.field.is_rational else alg.field.modulus ** alg.dim
    arity = args.n
    mode = _auto_mode(size, arity if kind in ("iso", "der") else 3, args.samples, args.seed)
    if kind == "iso":
        res = check_n_multiplicative_iso(m, arity, mode)
    elif kind == "der":
        res = check_n_multiplicative_derivation(m, arity, mode)
    else:
        res = check_elementary_pair(fmap, mode)
    mode_name = "exhaustive" if res.exhaustive else "sampled"
    wit = None if res.ok else [x if isinstance(x, str) else fmt_element(alg, x) for x in res.counterexample]
    report.checks.append(Check(f"class[{kind}]", "pass" if res.ok else "fail",
                               {"n": arity, "mode": mode_name, "tuples": res.tuples_checked}, wit))
    # the residual itself, on n-tuples
    rmode = _auto_mode(size, arity, args.samples, args.seed)
    f = residual_fn(kind, fmap)
    A = m.models()[0]
    checked, bad = 0, None
    for tup in _tuples([A] * arity, rmode):
        checked += 1
        if f(*tup) != A.zero:
            bad = tup
            break
    wit = None
    if bad is not None:
        wit = {"args": [fmt_element(alg, x) for x in bad], "value": fmt_element(alg, f(*bad))}
    report.checks.append(Check(f"residual[{kind}] vanishes", "pass" if bad is None else "fail",
                               {"n": arity, "mode": rmode.kind, "tuples": checked}, wit))
    props = nullifying_properties(kind, fmap, count=args.samples or 500, seed=args.seed, r=max(arity - 1, 1))
    for name, chk in props.items():
        wit = None if chk.ok else [fmt_element(alg, x) for x in chk.counterexample]
        report.checks.append(Check(f"nullifying[{kind}].{name}", "pass" if chk.ok else "fail",
                                   {"tuples": chk.tuples_checked}, wit))


def cmd_search(args, report: Report):
    af = load(args, report)
    if af.is_lazy:
        raise CliError("search needs a finite-dimensional algebra")
    law = resolve_law(args, af, required=False)
    spec = SearchSpec(af.algebra, args.target, args.n, args.mode, args.budget, args.seed,
                      axes=list(af.axes), law=law)
    out = run_search(spec)
    detail = {"outcome": out.status, "nodes": out.nodes}
    if out.counts is not None:
        detail["multiplicative"], detail["additive"] = out.counts
    wit = None
    if out.witness is not None:
        text = emit_map(out.witness)
        wit = {"map": text, "pair": list(out.witness_pair), "residual": out.witness_residual}
        report.output = text
        if args.witness_out:
            with open(args.witness_out, "w", encoding="utf-8") as fh:
                fh.write(text)
    # a definite answer (witness or exhausted tree) passes; running out of budget does not
    status = "fail" if out.status == "budget-exhausted" else "pass"
    report.checks.append(Check("search", status, detail, wit))
    for k, rep in enumerate(out.martindale):
        if isinstance(rep, str):
            report.checks.append(Check(f"martindale[axis {k}]", "info", {"note": rep}))
        else:
            report.checks.append(Check(f"martindale[axis {k}]", "info",
                                       {"kind": rep.kind, "conditions": dict(rep.conditions)}))


def cmd_zoo(args, report: Report):
    if args.action == "list":
        report.output = "\n".join(ZOO_NAMES) + "\n"
        return
    if not args.name:
        raise CliError("zoo emit needs an entry name")
    field = FieldSpec.parse(args.field) if args.field else QQ
    entry = build(args.name, field, args.params)
    text = emit_algebra(entry.algebra, entry.axes, entry.law)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.checks.append(Check("emit", "pass", {"name": entry.name, "path": args.output}))
    else:
        report.output = text


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None,
                        help=f"output format (default: ${ENV_FORMAT} or text)")

    def with_file(p):
        p.add_argument("file", nargs="?", default=None, help="algebra file (default: stdin)")

    def with_axis_law(p, law=True):
        p.add_argument("--axis", action="append", metavar="COMB",
                       help="axis name or combination such as '1 eA + 1 eB' (repeatable; default: declared axes)")
        if law:
            p.add_argument("--law", nargs="+", metavar="TOK",
                           help="fusion law such as 'jordan 1/4' (default: declared law)")

    def with_window(p):
        p.add_argument("--window", type=int, default=None,
                       help=f"index window for the lazy Highwater algebra (default {DEFAULT_WINDOW})")

    parser = argparse.ArgumentParser(prog="axialkit", parents=[common],
                                     description="Exact checks for axial algebras and additivity of maps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="eigenspace decomposition at an axis")
    with_file(p), with_axis_law(p), with_window(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("fusion-check", parents=[common], help="verify the fusion law at an axis")
    with_file(p), with_axis_law(p), with_window(p)
    p.set_defaults(func=cmd_fusion_check)

    p = sub.add_parser("martindale", parents=[common], help="Martindale-like conditions at an axis")
    with_file(p), with_axis_law(p), with_window(p)
    p.set_defaults(func=cmd_martindale)

    p = sub.add_parser("axial-check", parents=[common], help="fusion at every axis plus generation")
    with_file(p), with_axis_law(p)
    p.set_defaults(func=cmd_axial_check)

    p = sub.add_parser("lemma-check", parents=[common], help="operator family annihilation and injectivity")
    with_file(p), with_axis_law(p), with_window(p)
    p.add_argument("--r", type=int, default=1, help="word length parameter (default 1)")
    p.add_argument("--cap", type=int, default=None,
                   help="enumerate operator words explicitly, failing beyond this many per family")
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("residual-check", parents=[common], help="class identities and residuals of a map")
    with_file(p)
    p.add_argument("--map", required=True, help="map file")
    p.add_argument("--map-star", default=None, help="second map of an elementary pair (default: inverse)")
    p.add_argument("--class", dest="map_class", required=True, choices=CLASSES)
    p.add_argument("--n", type=int, default=2, help="arity (default 2)")
    p.add_argument("--samples", type=int, default=None,
                   help="random tuples per check (default: exhaustive when small, else 1000)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_residual_check)

    p = sub.add_parser("search", parents=[common], help="look for a non-additive multiplicative map")
    with_file(p)
    p.add_argument("--target", choices=TARGETS, default="nonadditive-iso")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--mode", choices=("backtracking", "exhaustive"), default="backtracking")
    p.add_argument("--budget", type=int, default=10**5, help="node budget for backtracking")
    p.add_argument("--seed", type=int, default=None, help="shuffle candidate order")
    p.add_argument("--law", nargs="+", metavar="TOK", help="law for the Martindale context")
    p.add_argument("--witness-out", default=None, help="write the witness map file here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("zoo", parents=[common], help="emit built-in example algebras")
    p.add_argument("action", choices=("emit", "list"))
    p.add_argument("name", nargs="?", choices=ZOO_NAMES)
    p.add_argument("params", nargs="*", help="entry parameters, e.g. 'matsuo s4 1/4' or 'zero 2'")
    p.add_argument("--field", default=None, help="Q (default) or F<p>")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_zoo)
    return parser


def _format(args) -> str:
    fmt = args.format or os.environ.get(ENV_FORMAT) or "text"
    if fmt not in ("text", "json"):
        fmt = "text"
    return fmt


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_PASS
    report = Report(args.command, argv)
    try:
        args.func(args, report)
    except (CliError, ValueError, ArithmeticError, OSError) as exc:
        # module errors all derive from ValueError
        report.error = str(exc) or type(exc).__name__
        print(f"axialkit {args.command}: {report.error}", file=stderr)
    if _format(args) == "json":
        json.dump(report.as_dict(), stdout, indent=2, default=str)
        stdout.write("\n")
    elif report.error is None:
        stdout.write(report.render_text())
    return report.exit_code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
