"""Command-line front end.

    mushy-stefan <solve|verify|threshold|equivalence|sweep-h0> --config PATH
                 [--format json|csv] [--out PATH] [--grid NXxNT] [--h HSTEP]
                 [--ladder MIN:MAX:STEPS] [--dinf VALUE]

Exit codes: 0 success, 1 invalid input, 2 no solution (h0 <= h0_star),
3 root-finding failure, 64 usage error.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from mushy_stefan.asymptotics import GAP_FIELDS, estimate_rates, sweep_h0
from mushy_stefan.equivalence import convective_to_dirichlet, dirichlet_to_convective
from mushy_stefan.errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    NoRoot,
    NoSolution,
    ThresholdBypassed,
)
from mushy_stefan.model import ConvectiveBC, DirichletBC, MaterialParams
from mushy_stefan.solver import solve_convective, solve_dirichlet
from mushy_stefan.transcendental import compute_threshold
from mushy_stefan.verify import certify

EXIT_OK, EXIT_INVALID, EXIT_NO_SOLUTION, EXIT_CONVERGENCE, EXIT_USAGE = 0, 1, 2, 3, 64

MATERIAL_KEYS = ("rho", "k1", "k2", "c1", "c2", "l", "eps", "gamma")
BC_KEYS = ("theta0", "Dinf", "h0", "D0")
SWEEP_COLUMNS = ("h0", "xi", "mu") + GAP_FIELDS


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    mp: MaterialParams
    theta0: float
    Dinf: float | None
    h0: float | None
    D0: float | None

    @property
    def bc_kind(self):
        return "convective" if self.h0 is not None else "dirichlet"

    def convective(self):
        if self.h0 is None or self.Dinf is None:
            raise DomainError("this command needs Dinf and h0 in the config")
        return ConvectiveBC(self.theta0, self.Dinf, self.h0)

    def dirichlet(self):
        if self.D0 is None:
            raise DomainError("this command needs D0 in the config")
        return DirichletBC(self.theta0, self.D0)


def parse_config(text):
    """Parse ``key = value`` lines into a RunConfig."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (p.strip() for p in line.partition("="))
        if not sep or not key:
            raise DomainError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in MATERIAL_KEYS + BC_KEYS:
            raise DomainError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise DomainError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(value)
        except ValueError:
            raise DomainError(f"line {lineno}: {key} is not a number: {value!r}") from None
    missing = [k for k in MATERIAL_KEYS + ("theta0",) if k not in values]
    if missing:
        raise DomainError(f"missing keys: {', '.join(missing)}")
    if "h0" not in values and "D0" not in values:
        raise DomainError("config needs h0 (with Dinf) or D0")
    if "h0" in values and "Dinf" not in values:
        raise DomainError("h0 given without Dinf")
    mp = MaterialParams(**{k: values[k] for k in MATERIAL_KEYS})
    return RunConfig(mp, values["theta0"], values.get("Dinf"), values.get("h0"), values.get("D0"))


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise DomainError(f"cannot read config: {exc}") from None


def parse_grid(text):
    try:
        nx, nt = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NXxNT, got {text!r}") from None
    return nx, nt


def parse_ladder(text):
    try:
        lo, hi, steps = text.split(":")
        lo, hi, steps = float(lo), float(hi), int(steps)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:STEPS, got {text!r}") from None
    if not (0 < lo < hi and math.isfinite(hi)) or steps < 2:
        raise argparse.ArgumentTypeError("ladder needs 0 < MIN < MAX and STEPS >= 2")
    return [float(h) for h in np.logspace(math.log10(lo), math.log10(hi), steps)]


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, np.floating):
        return _json_safe(float(obj))
    return obj


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        if isinstance(v, dict):
            out.update(_flatten(v, f"{prefix}{k}."))
        else:
            out[f"{prefix}{k}"] = v
    return out


def _csv_rows(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def render(payload, fmt, rows=None, columns=None):
    if fmt == "json":
        return json.dumps(_json_safe(payload), indent=2, allow_nan=False) + "\n"
    if rows is None:
        flat = _flatten(payload)
        return _csv_rows(list(flat), [flat])
    return _csv_rows(columns, rows)


def _solution_payload(sol):
    thr = sol.threshold
    return {
        "kind": sol.kind,
        "xi": sol.xi,
        "mu": sol.mu,
        "A1": sol.A1,
        "B1": sol.B1,
        "A2": sol.A2,
        "B2": sol.B2,
        "h0_star": thr.h0_star if thr else None,
        "eta": thr.eta if thr else None,
        "solvable": thr.solvable if thr else True,
        "threshold": thr.to_dict() if thr else None,
        "solution": sol.to_dict(),
    }


def _solve(cfg):
    if cfg.bc_kind == "convective":
        return solve_convective(cfg.mp, cfg.convective())
    return solve_dirichlet(cfg.mp, cfg.dirichlet())


def cmd_solve(cfg, args):
    return _solution_payload(_solve(cfg)), None, None


def cmd_verify(cfg, args):
    sol = _solve(cfg)
    report = certify(sol, grid=args.grid, h=args.h)
    return {"report": report.to_dict(), "solution": sol.to_dict()}, None, None


def cmd_threshold(cfg, args):
    return compute_threshold(cfg.mp, cfg.convective()).to_dict(), None, None


def cmd_equivalence(cfg, args):
    records = []
    Dinf = args.dinf if args.dinf is not None else cfg.Dinf
    if cfg.bc_kind == "convective":
        fwd = convective_to_dirichlet(cfg.mp, cfg.convective())
        records.append(fwd)
        dbc = DirichletBC(cfg.theta0, cfg.D0 if cfg.D0 is not None else fwd.D0)
    else:
        dbc = cfg.dirichlet()
    if Dinf is None:
        raise DomainError("the reverse map needs Dinf (config key or --dinf)")
    records.append(dirichlet_to_convective(cfg.mp, dbc, Dinf))
    return {"records": [r.to_dict() for r in records]}, None, None


def cmd_sweep(cfg, args):
    if cfg.Dinf is None:
        raise DomainError("sweep-h0 needs Dinf in the config")
    records = sweep_h0(cfg.mp, cfg.theta0, cfg.Dinf, args.ladder, log=_stderr)
    try:
        rates = estimate_rates(records).to_dict()
        rates_error = None
    except DomainError as exc:
        rates, rates_error = None, str(exc)
        _stderr(f"rates not estimated: {exc}")
    rows = [r.to_dict() for r in records]
    payload = {"records": rows, "rates": rates}
    if rates_error:
        payload["rates_error"] = rates_error
    return payload, rows, SWEEP_COLUMNS


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "threshold": cmd_threshold,
    "equivalence": cmd_equivalence,
    "sweep-h0": cmd_sweep,
}


def _stderr(msg):
    print(msg, file=sys.stderr)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", required=True, metavar="PATH")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--grid", type=parse_grid, default=(8, 8), metavar="NXxNT")
    common.add_argument("--h", type=float, default=1e-3, metavar="HSTEP")
    common.add_argument("--ladder", type=parse_ladder, default=parse_ladder("1e2:1e6:9"),
                        metavar="MIN:MAX:STEPS")
    common.add_argument("--dinf", type=float, metavar="VALUE")

    parser = _Parser(prog="mushy-stefan", description="Similarity solutions of a "
                     "solidification problem with a mushy zone.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _stderr(str(exc))
        return EXIT_USAGE

    try:
        cfg = load_config(args.config)
        payload, rows, columns = COMMANDS[args.command](cfg, args)
    except NoSolution as exc:
        _stderr(f"error: {exc}")
        return EXIT_NO_SOLUTION
    except (ConvergenceError, NoRoot, BracketError) as exc:
        _stderr(f"error: root finding failed: {exc}")
        return EXIT_CONVERGENCE
    except (DomainError, ThresholdBypassed) as exc:
        _stderr(f"error: {exc}")
        return EXIT_INVALID

    text = render(payload, args.format, rows, columns)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
