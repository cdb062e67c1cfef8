"""Two-letter compatible fraction against purine ratio p, exact and Gaussian.

Panel a varies lambda at fixed r, panel b varies r at fixed lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from _common import log, parse_config, write_csv

from rnacompat.asymptotics import clt_params
from rnacompat.compatibility import fraction_curve
from rnacompat.series import count_table
from rnacompat.structure import StructureClass


@dataclass
class Config:
    n: int = 400
    p_step: str = "0.01"
    panel_a_lams: tuple[int, ...] = (2, 3, 4)
    panel_a_r: int = 3
    panel_b_lam: int = 4
    panel_b_rs: tuple[int, ...] = (1, 2, 3)
    out_dir: str = "results"


def p_grid(step: str) -> list[str]:
    k = round(1 / float(step))
    return [f"{i / k:.4f}" for i in range(1, k // 2 + 1)]


def curve_rows(c: StructureClass, n: int, ps: list[str]) -> list[tuple]:
    t = count_table(c, n)
    pts = fraction_curve(c, n, ps, t, clt_params(c))
    worst = max(abs(float(e) - g) for _, e, g in pts)
    log.info("lambda=%d r=%d n=%d: max |exact - gaussian| = %.4f", c.lam, c.r, n, worst)
    return [(c.lam, c.r, f"{float(p):.4f}", f"{float(e):.8g}", f"{g:.8g}") for p, e, g in pts]


def main(cfg: Config) -> None:
    ps = p_grid(cfg.p_step)
    header = ("lambda", "r", "p", "fraction_exact", "fraction_gaussian")
    out = Path(cfg.out_dir)
    rows = [row for lam in cfg.panel_a_lams for row in curve_rows(StructureClass(lam, cfg.panel_a_r), cfg.n, ps)]
    write_csv(out / f"fraction_vs_lambda_n{cfg.n}.csv", header, rows)
    rows = [row for r in cfg.panel_b_rs for row in curve_rows(StructureClass(cfg.panel_b_lam, r), cfg.n, ps)]
    write_csv(out / f"fraction_vs_r_n{cfg.n}.csv", header, rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
