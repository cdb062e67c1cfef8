"""Command-line front end.

Exit codes: 0 success, 1 computation failure, 2 usage error. Data goes to
stdout (or ``--output``); progress and diagnostics go to stderr. A relative
``--output`` path is resolved against ``$RNACOMPAT_OUTPUT_DIR`` when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import asymptotics, compatibility, sampler, series
from .structure import STANDARD_CLASSES, StructureClass, dot_bracket_encode, enumerate_counts

OUTPUT_DIR_ENV = "RNACOMPAT_OUTPUT_DIR"

log = logging.getLogger("rnacompat")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    lam: int = 1
    r: int = 1
    n: int | None = None
    n_max: int | None = None
    ratios: str | None = None
    ratios_file: str | None = None
    pairing: str = "two-letter"
    method: str = "both"
    p_sweep: str | None = None
    seed: int = 0
    count: int = 1
    histogram: bool = False
    table_method: str = "auto"
    fmt: str = "csv"
    output: str | None = None
    threads: int = 1

    @property
    def cls(self) -> StructureClass:
        return StructureClass(self.lam, self.r)

    def validate(self) -> None:
        if self.lam < 1 or self.r < 1:
            raise UsageError("--lambda and --r must be >= 1")
        if self.n is not None and self.n < 0:
            raise UsageError("--n must be >= 0")
        if self.n_max is not None and self.n_max < 0:
            raise UsageError("--n-max must be >= 0")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.count < 1:
            raise UsageError("--count must be >= 1")


def _fmt_float(x: float | None, digits: int = 12) -> str:
    return "" if x is None else format(float(x), f".{digits}g")


def _round_fraction(x: Fraction, places: int) -> str:
    """Half-up rounding of an exact rational to a fixed-point string."""
    return _decimal_str(math.floor(x * 10**places + Fraction(1, 2)), places)


def _decimal_str(q: int, places: int) -> str:
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def _parse_sweep(text: str) -> list[Fraction]:
    try:
        start, stop, step = (compatibility.parse_ratio(t) for t in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"--p-sweep expects START:STOP:STEP decimals ({exc})") from exc
    if step <= 0 or start > stop:
        raise UsageError("--p-sweep needs START <= STOP and STEP > 0")
    out, p = [], start
    while p <= stop:
        out.append(p)
        p += step
    return out


def _progress(n: int, n_max: int) -> None:
    if n_max >= 500 and (n % 250 == 0 or n == n_max):
        log.info("table layer %d / %d", n, n_max)


def _build_table(cfg: RunConfig, n_max: int) -> series.ArcCountTable:
    return series.count_table(cfg.cls, n_max, method=cfg.table_method, progress=_progress)


def _emit(cfg: RunConfig, header: Sequence[str], rows: list[Sequence], out: io.TextIOBase) -> None:
    if cfg.fmt == "json":
        json.dump([dict(zip(header, row)) for row in rows], out)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# -- subcommands ----------------------------------------------------------


def cmd_count(cfg: RunConfig, out) -> int:
    if cfg.n_max is None:
        raise UsageError("count needs --n-max")
    if cfg.n is not None and cfg.n > cfg.n_max:
        raise UsageError("--n must not exceed --n-max")
    table = _build_table(cfg, cfg.n_max)
    if cfg.fmt == "json":
        out.write(series.table_to_json(table, cfg.n) + "\n")
    else:
        series.write_table_csv(table, out, cfg.n)
    return 0


def cmd_clt(cfg: RunConfig, out) -> int:
    p = asymptotics.clt_params(cfg.cls)
    row = (cfg.lam, cfg.r, asymptotics.round_half_up(p.mu, 4), asymptotics.round_half_up(p.sigma2, 4), f"{p.rho:.10f}")
    _emit(cfg, ("lambda", "r", "mu", "sigma2", "rho"), [row], out)
    return 0


def cmd_fraction(cfg: RunConfig, out) -> int:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("fraction needs --n >= 1")
    if cfg.method not in ("exact", "gaussian", "both"):
        raise UsageError(f"unknown --method {cfg.method}")
    need_table = cfg.method in ("exact", "both")
    need_params = cfg.method in ("gaussian", "both")

    if cfg.p_sweep is not None:
        if cfg.pairing != "two-letter":
            raise UsageError("--p-sweep is only defined for --pairing two-letter")
        ps = _parse_sweep(cfg.p_sweep)
        ratios = []
        for p in ps:
            try:
                ratios.append(compatibility.RatioVector.two_letter(p, boundary=True))
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        table = _build_table(cfg, cfg.n) if need_table else None
        params = asymptotics.clt_params(cfg.cls) if need_params else None

        def point(rv):
            return compatibility.compatible_fraction(cfg.cls, rv, cfg.n, "two-letter", cfg.method, table, params)

        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(point, ratios))
        rows = [
            (_fmt_float(res.threshold_p), _fmt_float(res.exact), _fmt_float(res.gaussian))
            for res in results
        ]
        _emit(cfg, ("p", "fraction_exact", "fraction_gaussian"), rows, out)
        return 0

    if cfg.ratios is None:
        raise UsageError("fraction needs --ratios or --p-sweep")
    try:
        rv = compatibility.RatioVector.parse(cfg.ratios, boundary=True)
        compatibility.max_compatible_arcs(rv, cfg.n, cfg.pairing)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if rv.boundary:
        log.warning("ratios %s lie on the simplex boundary; limit theorems assume interior ratios", cfg.ratios)
    table = _build_table(cfg, cfg.n) if need_table else None
    params = asymptotics.clt_params(cfg.cls) if need_params else None
    res = compatibility.compatible_fraction(cfg.cls, rv, cfg.n, cfg.pairing, cfg.method, table, params)
    row = (
        cfg.n,
        cfg.pairing,
        res.threshold_l,
        _fmt_float(res.threshold_p),
        _fmt_float(res.exact),
        _fmt_float(res.gaussian),
        _fmt_float(res.abs_difference),
    )
    header = ("n", "pairing", "threshold_l", "threshold_p", "fraction_exact", "fraction_gaussian", "abs_diff")
    _emit(cfg, header, [row], out)
    return 0


def cmd_sample(cfg: RunConfig, out) -> int:
    if cfg.n is None:
        raise UsageError("sample needs --n")
    table = _build_table(cfg, cfg.n)
    state = sampler.SamplerState(table, cfg.seed)
    structures = sampler.sample_uniform(state, cfg.n, cfg.count)
    if cfg.histogram:
        _emit(cfg, ("l", "count"), sampler.arc_histogram(structures), out)
    elif cfg.fmt == "json":
        json.dump([dot_bracket_encode(s) for s in structures], out)
        out.write("\n")
    else:
        for s in structures:
            out.write(dot_bracket_encode(s) + "\n")
    return 0


def cmd_table1(cfg: RunConfig, out) -> int:
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        params = list(pool.map(asymptotics.clt_params, STANDARD_CLASSES))
    rows = [
        (p.cls.lam, p.cls.r, asymptotics.round_half_up(p.mu, 4), asymptotics.round_half_up(p.sigma2, 4))
        for p in params
    ]
    _emit(cfg, ("lambda", "r", "mu", "sigma2"), rows, out)
    return 0


def cmd_table2(cfg: RunConfig, out) -> int:
    if cfg.ratios_file is None:
        raise UsageError("table2 needs --ratios-file")
    try:
        with open(cfg.ratios_file, newline="") as fh, warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            named = compatibility.read_ratio_csv(fh)
    except OSError as exc:
        raise UsageError(f"cannot read ratio file: {exc}") from exc
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad ratio file: {exc}") from exc
    for w in caught:
        log.warning("%s", w.message)
    rows = [(name, _round_fraction(p0, 3), _round_fraction(pb, 3)) for name, p0, pb in compatibility.threshold_rows(named)]
    _emit(cfg, ("name", "p0", "pbar0"), rows, out)
    return 0


def run_selftest(n_max: int = 12, classes=STANDARD_CLASSES) -> list[tuple[StructureClass, bool]]:
    """Brute force vs both table solvers for every class and ``n <= n_max``."""
    results = []
    for c in classes:
        fixed = series.count_table(c, n_max, method="fixed-point")
        rec = series.count_table(c, n_max, method="recurrence")
        ok = fixed.s == rec.s and fixed.t == rec.t
        ok = ok and all(fixed.row(n) == enumerate_counts(c, n) for n in range(n_max + 1))
        results.append((c, ok))
    return results


def cmd_selftest(cfg: RunConfig, out) -> int:
    n_max = 12 if cfg.n_max is None else cfg.n_max
    if n_max > 14:
        raise UsageError("selftest brute force is capped at --n-max 14")
    results = run_selftest(n_max)
    rows = [(c.lam, c.r, n_max, "pass" if ok else "FAIL") for c, ok in results]
    _emit(cfg, ("lambda", "r", "n_max", "status"), rows, out)
    return 0 if all(ok for _, ok in results) else 1


COMMANDS = {
    "count": cmd_count,
    "clt": cmd_clt,
    "fraction": cmd_fraction,
    "sample": cmd_sample,
    "table1": cmd_table1,
    "table2": cmd_table2,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rnacompat",
        description="Count (lambda, r)-constrained RNA secondary structures and their compatible-sequence fractions.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, cls_args: bool = True):
        if cls_args:
            p.add_argument("--lambda", dest="lam", type=int, default=1, help="minimum arc-length (default 1)")
            p.add_argument("--r", type=int, default=1, help="minimum stack-length (default 1)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--threads", type=int, default=1, help="parallel workers for sweeps")
        p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    def table_method(p):
        p.add_argument("--table-method", choices=("auto", "fixed-point", "recurrence"), default="auto")

    p = sub.add_parser("count", help="exact s(n, l) table")
    common(p)
    table_method(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n", type=int, help="emit only this row")

    p = sub.add_parser("clt", help="mu, sigma2 and rho for one class")
    common(p)

    p = sub.add_parser("fraction", help="fraction of structures with a compatible sequence")
    common(p)
    table_method(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pairing", choices=compatibility.PAIRINGS, default="two-letter")
    p.add_argument("--ratios", help="p, or pA,pU,pC,pG as plain decimals")
    p.add_argument("--p-sweep", help="two-letter grid START:STOP:STEP")
    p.add_argument("--method", choices=("exact", "gaussian", "both"), default="both")

    p = sub.add_parser("sample", help="uniform random structures (dot-bracket)")
    common(p)
    table_method(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--histogram", action="store_true", help="emit l,count instead of structures")

    p = sub.add_parser("table1", help="mu and sigma2 for lambda 1..4, r 1..3")
    common(p, cls_args=False)

    p = sub.add_parser("table2", help="p0 and pbar0 from a ratios CSV (name,pA,pU,pC,pG)")
    common(p, cls_args=False)
    p.add_argument("--ratios-file", required=True)

    p = sub.add_parser("selftest", help="brute-force oracle equivalence")
    common(p, cls_args=False)
    p.add_argument("--n-max", type=int, default=12)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    known = {f for f in RunConfig.__dataclass_fields__}
    kwargs = {k: v for k, v in vars(ns).items() if k in known and v is not None}
    return RunConfig(**kwargs)


def _resolve_output(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(ns, "verbose", False) else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    cfg = config_from_args(ns)
    try:
        cfg.validate()
        buf = io.StringIO()
        code = COMMANDS[cfg.subcommand](cfg, buf)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog} {cfg.subcommand}: error: {exc}\n")
    except (ArithmeticError, RuntimeError, AssertionError, ValueError, IndexError) as exc:
        print(f"{parser.prog} {cfg.subcommand}: computation failed: {exc}", file=sys.stderr)
        return 1
    if cfg.output:
        target = _resolve_output(cfg.output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
