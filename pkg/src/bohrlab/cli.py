"""Command-line front end.

    bohrlab radii | verify | sharpness | table | bounds  [--tol --trunc --samples --seed --format --out]

Exit codes: 0 success, 1 usage error, 2 radii, 3 verify, 4 table,
5 sharpness, 6 bounds.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

from . import harmonic, radius, suites
from .errors import BohrLabError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RADII = 2
EXIT_VERIFY = 3
EXIT_TABLE = 4
EXIT_SHARPNESS = 5
EXIT_BOUNDS = 6

COMMANDS = ("radii", "verify", "sharpness", "table", "bounds")


@dataclass(frozen=True)
class RunConfig:
    command: str
    tol: float = 1e-12
    trunc: int = 200
    samples: int = 200
    seed: int = 42
    format: str = "text"
    out: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.tol >= 1e-14:
            raise ValueError("--tol must be >= 1e-14")
        if self.samples < 1:
            raise ValueError("--samples must be >= 1")
        if self.trunc < 8:
            raise ValueError("--trunc must be >= 8")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- output ------------------------------------------------------------------

def _num(x):
    if isinstance(x, float):
        return x if math.isfinite(x) else None
    return x


def _csv_cell(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return "" if not math.isfinite(x) else f"{x:.12g}"
    return str(x)


def render(rows: list, columns: list, fmt: str, text_line=None) -> str:
    if fmt == "json":
        return json.dumps([{c: _num(r[c]) for c in columns} for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_csv_cell(r[c]) for c in columns])
        return buf.getvalue()
    line = text_line or (lambda r: "  ".join(_csv_cell(r[c]) for c in columns))
    return "".join(line(r) + "\n" for r in rows)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(msg: str) -> None:
    sys.stderr.write(msg.rstrip("\n") + "\n")


# -- commands ----------------------------------------------------------------

def cmd_radii(cfg: RunConfig) -> int:
    rows = []
    for eq in radius.catalog():
        try:
            res = radius.solve(eq, cfg.tol)
        except BohrLabError as exc:
            _fail(f"radii: solver failed for {eq.id}: {exc}")
            return EXIT_RADII
        delta = None if eq.expected is None else abs(res.root - eq.expected)
        rows.append(dict(id=eq.id, equation=eq.render, root=res.root, expected=eq.expected, delta=delta,
                         residual=res.residual, iterations=res.iterations))
    cols = ["id", "root", "expected", "delta", "residual", "iterations", "equation"]

    def line(r):
        extra = "" if r["expected"] is None else f"  expected={r['expected']:g}  |delta|={r['delta']:.3g}"
        return f"{r['id']} {r['root']:.6f}  root={r['root']:.12g}{extra}  {r['equation']}"

    _emit(cfg, render(rows, cols, cfg.format, line))
    bad = [r["id"] for r in rows if r["delta"] is not None and r["delta"] > radius.EXPECTED_TOL]
    if bad:
        _fail("radii: outside 5e-6 of the quoted value: " + ", ".join(bad))
        return EXIT_RADII
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    rep = suites.run_verify(samples=cfg.samples, seed=cfg.seed, trunc=cfg.trunc)
    rows = [dict(theorem=c.theorem, step=c.step, r_over_radius=c.r_fraction, max_value=c.max_value,
                 max_excess=c.max_excess, evaluations=c.evaluations) for c in rep.cells]
    _emit(cfg, render(rows, ["theorem", "step", "r_over_radius", "max_value", "max_excess", "evaluations"], cfg.format))
    if rep.violations:
        for v in rep.violations:
            _fail(f"verify: violation theorem={v.theorem} seed={v.seed} degree={v.degree} r={v.r:.12g} "
                  f"value={v.value:.12g} error_bound={v.error_bound:.3g}")
        return EXIT_VERIFY
    return EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    cells = harmonic.compare_tables()
    rows = [dict(family=c.family, M=c.M, order=c.row.order, computed=c.row.radius, printed=c.printed,
                 tolerance=c.tolerance, delta=c.delta, ok=c.ok) for c in cells]
    _emit(cfg, render(rows, ["family", "M", "order", "computed", "printed", "tolerance", "delta", "ok"], cfg.format))
    bad = [c for c in cells if not c.ok]
    if bad:
        _fail("table: " + ", ".join(f"{c.family}({c.M:g}) computed={c.row.radius:.6g} printed={c.printed}" for c in bad))
        return EXIT_TABLE
    return EXIT_OK


def cmd_sharpness(cfg: RunConfig) -> int:
    rows = []
    failed = []
    for res in suites.run_sharpness(0.05, trunc=max(cfg.trunc, 400)):
        for a in sorted(res.excess):
            rows.append(dict(kind="theorem", id=res.theorem, a=a, r=res.radii[a], excess=res.excess[a],
                             exceeds=res.exceeds(a), first_exceeding_a=res.first_exceeding_a))
        if not res.ok:
            failed.append(res.theorem)
    for fam, phi in sorted(harmonic.FAMILIES.items()):
        for M in harmonic.TABLE_M:
            ok = harmonic.sharpness_harmonic(phi, M, 0.05)
            rows.append(dict(kind="harmonic", id=fam, a=M, r=harmonic.solve_Rf(phi, M).root * 1.05, excess=None,
                             exceeds=ok, first_exceeding_a=None))
            if not ok:
                failed.append(f"{fam}({M:g})")
    for tid in ("G_1", "G_2"):
        for factor in (1.0, 1.02):
            lr = suites.lambda_optimality(tid, factor)
            for a in sorted(lr.excess):
                rows.append(dict(kind=f"lambda_x{factor:g}", id=tid, a=a, r=radius.constants()["deriv_radius"],
                                 excess=lr.excess[a], exceeds=lr.excess[a] > lr.error_bounds[a], first_exceeding_a=None))
            if lr.violated != (factor > 1.0):
                failed.append(f"{tid}(lambda x{factor:g})")
    _emit(cfg, render(rows, ["kind", "id", "a", "r", "excess", "exceeds", "first_exceeding_a"], cfg.format))
    if failed:
        _fail("sharpness: no exceedance at 1.05 x radius for: " + ", ".join(failed))
        return EXIT_SHARPNESS
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    rep = suites.run_bounds(samples=cfg.samples, seed=cfg.seed, trunc=cfg.trunc)
    rows = [dict(oracle=k, checks=v, failures=sum(1 for f in rep.failures if f[0] == k), slack=None)
            for k, v in sorted(rep.counts.items())]
    rows += [dict(oracle=f"equality:{k}", checks=1, failures=int(abs(v) > 1e-12), slack=v)
             for k, v in sorted(rep.equality_slack.items())]
    rows.append(dict(oracle="area_bound:out_of_range", checks=rep.skipped, failures=0, slack=None))
    _emit(cfg, render(rows, ["oracle", "checks", "failures", "slack"], cfg.format))
    if not rep.ok:
        for name, params, br in rep.failures:
            _fail(f"bounds: {name} failed params={params} lhs={br.lhs:.12g} rhs={br.rhs:.12g}")
        return EXIT_BOUNDS
    return EXIT_OK


HANDLERS = dict(radii=cmd_radii, verify=cmd_verify, sharpness=cmd_sharpness, table=cmd_table, bounds=cmd_bounds)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bohrlab", description="Bohr-type inequality laboratory")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--tol", type=float, default=1e-12, help="bisection tolerance (>= 1e-14)")
    p.add_argument("--trunc", type=int, default=200, help="series truncation order (>= 8)")
    p.add_argument("--samples", type=int, default=200, help="number of Blaschke samples")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.tol, args.trunc, args.samples, args.seed, args.format, args.out)
    except ValueError as exc:
        parser.error(str(exc))
    return HANDLERS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
