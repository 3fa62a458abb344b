"""Command-line front end.

Exit status: 0 success, 1 usage or parse error, 2 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import fixtures
from .arrangement import Arrangement, classify, load_arrangement
from .errors import Degenerate, DoubleOcticError, UnknownScenario
from .exact import render_scalar
from .expr import evaluate_scalar
from .hodge import SCENARIOS, Fixtures, run_scenario
from .theta import (
    DEFAULT_ORDER,
    INFINITY,
    frobenius,
    indicial_roots,
    load_operator,
    local_monodromy,
    parse_point,
    pullback_power,
    render_point,
    riemann_symbol,
)

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    family: str | None = None
    file: str | None = None
    operator: str | None = None
    param: str | None = None
    point: str = "0"
    order: int = DEFAULT_ORDER
    pullback: int | None = None
    scenario: str | None = None
    format: str = "text"
    out: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        fields = {k: v for k, v in vars(ns).items() if k in cls.__dataclass_fields__ and v is not None}
        return cls(**fields)


def _emit(cfg: RunConfig, payload: dict, text: str):
    body = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) if cfg.format == "json" else text
    if cfg.out:
        Path(cfg.out).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)


# analyze


def _parse_param(text: str | None):
    if text is None:
        return None
    if text.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INFINITY
    try:
        return evaluate_scalar(text)
    except (ValueError, ZeroDivisionError, DoubleOcticError) as exc:
        raise UsageError(f"cannot read parameter {text!r}: {exc}") from None


def _load_family(cfg: RunConfig):
    if cfg.family and cfg.file:
        raise UsageError("give either --family or --file")
    if cfg.family:
        try:
            return fixtures.load_family(cfg.family)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if cfg.file:
        return load_arrangement(cfg.file, label=os.path.basename(cfg.file))
    raise UsageError("analyze needs --family or --file")


def cmd_analyze(cfg: RunConfig) -> int:
    param = _parse_param(cfg.param)
    fam = _load_family(cfg)
    if param is INFINITY:
        if fam.label != "main":
            raise UsageError("the fibre at infinity is only available for the main family")
        arr = Arrangement(tuple(fixtures.infinity_fibre_forms()), None, "main at infinity")
    elif param is None:
        if not fam.is_constant():
            raise UsageError("this family depends on s; pass --param")
        arr = Arrangement(fam.forms, None, fam.label)
    else:
        arr = fam.evaluate(param)
    rep = classify(arr)
    _emit(cfg, rep.to_json(), rep.render())
    return EXIT_OK


# pf


def _resolve_operator(path: str):
    if os.path.exists(path):
        return load_operator(path)
    base = os.path.basename(path).removesuffix(".op")
    if base in fixtures.OPERATORS:
        return fixtures.load_builtin_operator(base)
    raise UsageError(f"no such operator file {path!r} and no built-in fixture {base!r}")


def cmd_pf(cfg: RunConfig) -> int:
    if not cfg.operator:
        raise UsageError("pf needs --operator")
    op = _resolve_operator(cfg.operator)
    try:
        point = parse_point(cfg.point)
    except (ValueError, ZeroDivisionError, DoubleOcticError) as exc:
        raise UsageError(f"cannot read point {cfg.point!r}: {exc}") from None
    if cfg.order < 0:
        raise UsageError("--order must be nonnegative")
    sym = riemann_symbol(op)
    sols = frobenius(op, point, cfg.order)
    mono = local_monodromy(op, point, cfg.order)
    payload = {
        "operator": op.render(),
        "order": op.order,
        "riemann_symbol": sym.to_json(),
        "point": render_point(point),
        "exponents": [render_scalar(e) for e in indicial_roots(op, point)],
        "frobenius": [s.to_json() for s in sols],
        "logs_required": any(s.logs_required for s in sols),
        "monodromy": {"verdict": str(mono), **mono.to_json()},
    }
    lines = [f"operator: {op.render()}", "", "Riemann symbol:", sym.render(),
             f"Fuchs relation: total {render_scalar(sym.total())}, expected "
             f"{render_scalar(sym.fuchs_expected())}: {'holds' if sym.fuchs_holds() else 'FAILS'}", "",
             f"Frobenius basis at {render_point(point)} (order {cfg.order}):"]
    for s in sols:
        coeffs = ", ".join(render_scalar(c) for c in s.coefficients)
        tag = ""
        for k, block in enumerate(s.log_blocks, 1):
            tag += f"  + log^{k}/{k}! * [{', '.join(render_scalar(c) for c in block)}]"
        res = f"  resonances {list(s.resonances)}" if s.resonances else ""
        lines.append(f"  rho = {render_scalar(s.exponent)}: [{coeffs}]{res}{tag}")
    lines.append(f"logs required: {'yes' if payload['logs_required'] else 'no'}")
    lines.append(f"local monodromy: {mono}")
    if cfg.pullback is not None:
        if cfg.pullback < 1:
            raise UsageError("--pullback must be a positive integer")
        pb = pullback_power(op, cfg.pullback)
        ex = [render_scalar(e) for e in indicial_roots(pb, point)]
        payload["pullback"] = {"k": cfg.pullback, "operator": pb.render(), "exponents": ex}
        lines.append(f"pullback t -> t^{cfg.pullback}: exponents at {render_point(point)} ({', '.join(ex)})")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


# hodge


def cmd_hodge(cfg: RunConfig) -> int:
    if not cfg.scenario:
        raise UsageError(f"hodge needs --scenario ({', '.join(SCENARIOS)})")
    fx = None
    if cfg.file:
        fx = Fixtures(json.loads(Path(cfg.file).read_text(encoding="utf-8")))
    rep = run_scenario(cfg.scenario, fx)
    _emit(cfg, rep.to_json(), rep.render())
    return EXIT_OK if rep.passed else EXIT_USAGE


# dump-fixtures


def cmd_dump_fixtures(cfg: RunConfig) -> int:
    names = fixtures.list_fixtures()
    if cfg.out:
        root = Path(cfg.out)
        for name in names:
            dest = root / name
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_text(fixtures.read_text(name), encoding="utf-8")
        print(f"wrote {len(names)} fixtures to {root}")
        return EXIT_OK
    if cfg.format == "json":
        print(json.dumps({n: fixtures.read_text(n) for n in names}, indent=2, sort_keys=True))
    else:
        for name in names:
            print(f"==> {name} <==")
            print(fixtures.read_text(name).rstrip("\n"))
            print()
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "pf": cmd_pf, "hodge": cmd_hodge, "dump-fixtures": cmd_dump_fixtures}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="doubleoctic", description="Exact analysis of double octic arrangements and their Picard-Fuchs data.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write the report to this path")

    a = sub.add_parser("analyze", help="classify the singular strata of an arrangement")
    a.add_argument("--family", help=f"built-in family ({', '.join(fixtures.FAMILIES)})")
    a.add_argument("--file", help="arrangement file, one linear form per line")
    a.add_argument("--param", help="parameter value, e.g. 3, -1/2, (-1+sqrt(-3))/2, or infinity")
    common(a)

    f = sub.add_parser("pf", help="local analysis of a Theta-operator")
    f.add_argument("--operator", required=True, help="operator file (built-in fixtures are found by name)")
    f.add_argument("--point", default="0", help="point of the t-line (default 0; 'infinity' allowed)")
    f.add_argument("--order", type=int, default=DEFAULT_ORDER, help="truncation order of the series")
    f.add_argument("--pullback", type=int, help="also report exponents after t -> t^k")
    common(f)

    h = sub.add_parser("hodge", help="run a Hodge-ledger scenario")
    h.add_argument("--scenario", help=", ".join(SCENARIOS))
    h.add_argument("--file", help="alternative cohomology fixture document (JSON)")
    common(h)

    d = sub.add_parser("dump-fixtures", help="print or export the built-in fixtures")
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.add_argument("--out", help="directory to export into")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except Degenerate as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except UnknownScenario as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DoubleOcticError, OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
