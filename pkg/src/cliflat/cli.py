"""``cliflat`` command line.

Exit codes: 0 success, 1 a mathematical failure (violated identity, residual,
structural error from the math layer), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from .evolution import cauchy_verify, semigroup_trajectory
from .poly import CliffordPoly, LatticeParams, SchemaError
from .rational import Q, RationalParseError, format_q, parse_q
from .relations import REGISTRY, registry_list
from .su11 import (
    PreconditionError,
    build_appell,
    build_ladder,
    casimir_constants,
    default_seed,
    fourier_decompose,
    gamma_paths,
    lowering_constants,
)
from .verifier import UnknownRelationError, run_suite, threads_from_env

DEFAULTS = {"n": "2", "h": "1", "mu": "1", "b": "0", "degree": "4", "seed": "0", "format": "json", "output": None}
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    params: LatticeParams
    degree: int
    seed: int
    format: str
    output: str | None


def read_config_file(path: str) -> dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read config file ({exc.strerror})") from None
    out = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _int(name: str, text: str, minimum: int | None = None) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {text!r}") from None
    if minimum is not None and value < minimum:
        raise UsageError(f"{name} must be >= {minimum}, got {value}")
    return value


def rational_arg(name: str, text: str) -> Q:
    try:
        return parse_q(text, strict=False)
    except RationalParseError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def resolve_config(args: argparse.Namespace) -> CliConfig:
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(read_config_file(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    n = _int("n", str(merged["n"]), 1)
    try:
        params = LatticeParams(
            n, rational_arg("h", merged["h"]), rational_arg("mu", merged["mu"]), rational_arg("b", merged["b"])
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fmt = merged["format"]
    if fmt not in FORMATS:
        raise UsageError(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")
    return CliConfig(params, _int("degree", str(merged["degree"]), 0), _int("seed", str(merged["seed"])), fmt, merged["output"])


# ---------------------------------------------------------------------------
# output


def write_output(text: str, path: str | None) -> None:
    """Write once: stdout, or a temp file in the target directory renamed into place."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix=".cliflat-", dir=directory)
    except OSError as exc:
        raise UsageError(f"{path}: cannot write output ({exc.strerror})") from None
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def dump_csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row[k] for k in columns})
    return buf.getvalue()


def dump_text(columns: list[str], rows: list[dict]) -> str:
    table = [columns] + [["" if r.get(c) is None else str(r[c]) for c in columns] for r in rows]
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    return "".join("  ".join(v.ljust(w) for v, w in zip(line, widths)).rstrip() + "\n" for line in table)


def emit(cfg: CliConfig, document: dict, columns: list[str], rows: list[dict]) -> None:
    if cfg.format == "json":
        text = dump_json(document)
    elif cfg.format == "csv":
        text = dump_csv(columns, rows)
    else:
        text = dump_text(columns, rows)
    write_output(text, cfg.output)


def lattice_doc(p: LatticeParams) -> dict:
    return {"n": p.n, **p.to_json()}


def read_poly(path: str) -> CliffordPoly:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read input ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return CliffordPoly.from_json(data)
    except SchemaError as exc:
        raise UsageError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args, cfg: CliConfig) -> int:
    suite = []
    for item in args.suite:
        suite.extend(s for s in item.split(",") if s)
    try:
        threads = threads_from_env()
        report = run_suite(suite or ["all"], [cfg.params], cfg.degree, cfg.seed, threads=threads)
    except UnknownRelationError as exc:
        raise UsageError(f"unknown relation or suite {exc.args[0]!r}; see 'cliflat list-relations'") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = [
        {"id": r.id, "kind": r.kind, "status": r.status, "checked": r.checked, "citation": r.citation}
        for r in report.results
    ]
    if cfg.format == "text":
        write_output(report.text(), cfg.output)
    elif cfg.format == "json":
        write_output(report.dumps(timings=args.timings), cfg.output)
    else:
        emit(cfg, {}, ["id", "kind", "status", "checked", "citation"], rows)
    for r in report.failed:
        print(f"cliflat: relation {r.id} failed", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_list(args, cfg: CliConfig) -> int:
    rows = [
        {"id": rid, "kind": REGISTRY[rid].kind, "citation": cit, "description": desc}
        for rid, cit, desc in registry_list()
    ]
    emit(cfg, {"relations": rows}, ["id", "kind", "citation", "description"], rows)
    return 0


def cmd_gamma(args, cfg: CliConfig) -> int:
    if args.s_max < 0 or args.n_max < 0:
        raise UsageError("--s-max and --n-max must be non-negative")
    rows = []
    for n in range(args.n_max + 1):
        for s in range(args.s_max + 1):
            gp = gamma_paths(s, n)
            row = {"s": s, "n": n, "consistency": gp.status}
            if gp.singular is None:
                row.update(
                    value=format_q(gp.direct),
                    hyp2f1=format_q(gp.hyp2f1),
                    hyp0f1=format_q(gp.hyp0f1),
                    singular_factor=None,
                )
            else:
                row.update(value=None, hyp2f1=None, hyp0f1=None, singular_factor=gp.singular.factor)
            rows.append(row)
    mismatched = sum(1 for r in rows if r["consistency"] == "mismatch")
    if mismatched:
        print(f"cliflat: {mismatched} (s, n) pairs where the evaluation paths disagree", file=sys.stderr)
    columns = ["s", "n", "value", "hyp2f1", "hyp0f1", "consistency", "singular_factor"]
    emit(cfg, {"rows": rows, "s_max": args.s_max, "n_max": args.n_max}, columns, rows)
    return 0


def cmd_appell(args, cfg: CliConfig) -> int:
    if args.s < 0:
        raise UsageError("--s must be non-negative")
    seq = build_appell(cfg.params, args.sign, args.s)
    rows = []
    for s in range(len(seq)):
        rows.append(
            {
                "s": s,
                "lambda": format_q(seq.lambdas[s]),
                "c": None if s == 0 else format_q(seq.constants[s - 1]),
                "poly": seq[s].to_json(),
            }
        )
    flat = [{**r, "poly": json.dumps(r["poly"], sort_keys=True, separators=(",", ":"))} for r in rows]
    doc = {"lattice": lattice_doc(cfg.params), "sign": seq.sign, "lowering_sign": seq.lowering_sign, "rows": rows}
    emit(cfg, doc, ["s", "lambda", "c", "poly"], flat)
    return 0


def cmd_ladder(args, cfg: CliConfig) -> int:
    if args.s < 0:
        raise UsageError("--s must be non-negative")
    m0 = read_poly(args.input) if args.input else default_seed(cfg.params)
    ladder = build_ladder(args.sign, m0, args.s)
    consts = lowering_constants(ladder)
    kappas = casimir_constants(ladder)
    n = m0.n
    rows = []
    for s, w in enumerate(ladder.polys):
        c = consts.get(s)
        rows.append(
            {
                "s": s,
                "lowering_constant": None if c is None else format_q(c),
                "matches_s(s+n+1)": None if s == 0 else c == s * (s + n + 1),
                "matches_s(s+n-1)": None if s == 0 else c == s * (s + n - 1),
                "casimir": None if kappas[s] is None else format_q(kappas[s]),
                "poly": w.to_json(),
            }
        )
    flat = [{**r, "poly": json.dumps(r["poly"], sort_keys=True, separators=(",", ":"))} for r in rows]
    doc = {"lattice": lattice_doc(m0.params), "sign": ladder.sign, "seed": m0.to_json(), "rows": rows}
    columns = ["s", "lowering_constant", "matches_s(s+n+1)", "matches_s(s+n-1)", "casimir", "poly"]
    emit(cfg, doc, columns, flat)
    return 0


def cmd_decompose(args, cfg: CliConfig) -> int:
    p = read_poly(args.input)
    if args.bound is not None and (args.bound < 0 or args.bound < p.degree):
        raise UsageError(f"--bound {args.bound} is below the input degree {p.degree}")
    comps = fourier_decompose(p, args.sign, args.bound)
    rows = [{"s": c.s, "r": c.r, "seed": c.seed.to_json(), "component": c.component.to_json()} for c in comps]
    flat = [
        {
            "s": r["s"],
            "r": r["r"],
            "seed": json.dumps(r["seed"], sort_keys=True, separators=(",", ":")),
            "component": json.dumps(r["component"], sort_keys=True, separators=(",", ":")),
        }
        for r in rows
    ]
    doc = {"input": p.to_json(), "sign": "+" if args.sign == "+" else "-", "components": rows}
    emit(cfg, doc, ["s", "r", "seed", "component"], flat)
    return 0


def cmd_evolve(args, cfg: CliConfig) -> int:
    p = read_poly(args.input)
    t = rational_arg("t", args.t)
    g = semigroup_trajectory(p)
    rep = cauchy_verify(g, p)
    value = g.at(t)
    residuals = {
        "pde": rep.pde_residual.to_json(),
        "initial": rep.initial_residual.to_json(),
        "constraint": rep.constraint_residual.to_json(),
    }
    doc = {
        "t": format_q(t),
        "input": p.to_json(),
        "value": value.to_json(),
        "trajectory": g.to_json(),
        "residuals": residuals,
        "solves_pde": rep.solves_pde,
        "satisfies_constraint": rep.satisfies_constraint,
    }
    rows = [
        {"quantity": "value", "zero": value.is_zero(), "json": value.dumps()},
        {"quantity": "pde_residual", "zero": rep.pde_residual.is_zero(), "json": rep.pde_residual.dumps()},
        {"quantity": "initial_residual", "zero": rep.initial_residual.is_zero(), "json": rep.initial_residual.dumps()},
        {
            "quantity": "constraint_residual",
            "zero": rep.constraint_residual.is_zero(),
            "json": rep.constraint_residual.dumps(),
        },
    ]
    emit(cfg, doc, ["quantity", "zero", "json"], rows)
    return 0 if rep.solves_pde else 1


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("lattice and output")
    g.add_argument("--n", help="dimension (default 2)")
    g.add_argument("--h", help="lattice spacing, exact rational such as 1/3 (default 1)")
    g.add_argument("--mu", help="weight scale mu, exact rational (default 1)")
    g.add_argument("--b", help="weight offset b in w(t) = mu t + b, exact rational (default 0)")
    g.add_argument("--degree", help="degree bound (default 4)")
    g.add_argument("--seed", help="random seed (default 0)")
    g.add_argument("--format", help="json, csv or text (default json)")
    g.add_argument("--output", help="output file (default stdout); written atomically")
    g.add_argument("--config", help="key=value config file; flags take precedence")


def _sign(text: str) -> str:
    if text not in ("+", "-", "plus", "minus"):
        raise argparse.ArgumentTypeError("sign must be +, -, plus or minus")
    return "+" if text in ("+", "plus") else "-"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliflat", description="Exact finite-difference Clifford calculus on hZ^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run relation suites")
    p.add_argument("--suite", action="append", default=[], help="relation id, id prefix or 'all' (repeatable)")
    p.add_argument("--timings", action="store_true", help="include wall times (output no longer byte-stable)")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list-relations", help="list the relation registry")
    _common(p)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("gamma", help="gamma_s table by three evaluation paths")
    p.add_argument("--s-max", type=int, default=10)
    p.add_argument("--n-max", type=int, default=5)
    _common(p)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("appell", help="normalized Appell sequence m_s")
    p.add_argument("--s", type=int, default=4, help="largest index")
    p.add_argument("--sign", type=_sign, default="+", help="raising sign of M_h (default +)")
    _common(p)
    p.set_defaults(func=cmd_appell)

    p = sub.add_parser("ladder", help="ladder basis w_s, lowering constants and Casimir values")
    p.add_argument("--s", type=int, default=6, help="largest index")
    p.add_argument("--sign", type=_sign, default="+")
    p.add_argument("--input", help="seed m_0 as CliffordPoly JSON (default 1); its lattice parameters are used")
    _common(p)
    p.set_defaults(func=cmd_ladder)

    p = sub.add_parser("decompose", help="Fourier decomposition of a CliffordPoly JSON file")
    p.add_argument("--input", required=True)
    p.add_argument("--sign", type=_sign, default="+")
    p.add_argument("--bound", type=int, default=None, help="degree bound (default: degree of the input)")
    _common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("evolve", help="semigroup evolution and Cauchy residuals")
    p.add_argument("--input", required=True)
    p.add_argument("--t", required=True, help="time, exact rational")
    _common(p)
    p.set_defaults(func=cmd_evolve)
    return parser


MATH_ERRORS = (
    ArithmeticError,  # singular parameters, failed decompositions, nilpotency
    PreconditionError,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"cliflat: error: {exc}", file=sys.stderr)
        return 2
    except MATH_ERRORS as exc:
        kind = type(exc).__name__
        print(f"cliflat: {kind}: {exc}", file=sys.stderr)
        return 1


__all__ = ["CliConfig", "build_parser", "main", "resolve_config"]

if __name__ == "__main__":
    sys.exit(main())
