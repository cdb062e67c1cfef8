"""Largest |exact - gaussian| on the two-letter p grid, scaled by sqrt(n), for every class."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from _common import log, parse_config, write_csv

from rnacompat.asymptotics import clt_params
from rnacompat.compatibility import fraction_curve
from rnacompat.series import count_table
from rnacompat.structure import STANDARD_CLASSES


@dataclass
class Config:
    ns: tuple[int, ...] = (100, 400, 1600)
    out_dir: str = "results"


GRID = [f"0.{k:02d}" for k in range(5, 55, 5)]


def main(cfg: Config) -> None:
    rows = []
    for c in STANDARD_CLASSES:
        t = count_table(c, max(cfg.ns))
        params = clt_params(c)
        for n in cfg.ns:
            err = max(abs(float(e) - g) for _, e, g in fraction_curve(c, n, GRID, t, params))
            rows.append((c.lam, c.r, n, f"{err:.6f}", f"{err * math.sqrt(n):.4f}"))
        log.info("lambda=%d r=%d: %s", c.lam, c.r, " ".join(r[4] for r in rows[-len(cfg.ns):]))
    worst = max(float(r[4]) for r in rows if r[2] == min(cfg.ns))
    log.info("envelope constant at n=%d: %.4f", min(cfg.ns), worst)
    write_csv(Path(cfg.out_dir) / "envelope.csv", ("lambda", "r", "n", "max_error", "scaled"), rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
