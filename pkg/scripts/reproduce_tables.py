"""CLT parameter grid and p0 / pbar0 thresholds for the RNA family ratios."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from _common import log, parse_config, write_csv

from rnacompat.asymptotics import round_half_up, table1
from rnacompat.compatibility import read_ratio_csv, threshold_rows

HERE = Path(__file__).parent


@dataclass
class Config:
    ratios: str = str(HERE / "data" / "family_ratios.csv")
    out_dir: str = "results"


def main(cfg: Config) -> None:
    out = Path(cfg.out_dir)
    rows = [(p.cls.lam, p.cls.r, round_half_up(p.mu, 4), round_half_up(p.sigma2, 4), f"{p.rho:.10f}") for p in table1()]
    write_csv(out / "clt_table.csv", ("lambda", "r", "mu", "sigma2", "rho"), rows)
    for row in rows:
        log.info("lambda=%s r=%s mu=%s sigma2=%s", *row[:4])

    with open(cfg.ratios, newline="") as fh:
        named = read_ratio_csv(fh)
    rows = [(name, f"{float(p0):.3f}", f"{float(pb):.3f}") for name, p0, pb in threshold_rows(named)]
    write_csv(out / "ratio_thresholds.csv", ("name", "p0", "pbar0"), rows)
    for row in rows:
        log.info("%-18s p0=%s pbar0=%s", *row)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
