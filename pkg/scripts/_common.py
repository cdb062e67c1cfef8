"""Shared helpers for the experiment scripts."""

from __future__ import annotations

import argparse
import csv
import dataclasses
import logging
from pathlib import Path
from typing import Iterable, Sequence

log = logging.getLogger("experiments")


def parse_config(cls, description: str):
    """Build a dataclass config from defaults overridden on the command line."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, tuple):
            parser.add_argument(flag, type=type(default[0]), nargs="+", default=default)
        else:
            parser.add_argument(flag, type=type(default), default=default)
    ns = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in vars(ns).items()})


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    log.info("wrote %s", path)
