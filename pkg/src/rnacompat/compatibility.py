"""Fraction of structures admitting a compatible sequence of given nucleotide ratios.

A structure with ``l`` arcs has a compatible sequence with the prescribed
nucleotide counts iff ``l`` does not exceed an arc cap computed from the
counts; the fraction is therefore a CDF of the arc count. Counts are
``floor(p_i n)`` for the first letters and the remainder for the last, all in
exact rational arithmetic.
"""

from __future__ import annotations

import csv
import math
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, TextIO

from .asymptotics import CltParams, gaussian_cdf
from .series import ArcCountTable, arc_cdf
from .structure import StructureClass

TWO_LETTER = "two-letter"
FOUR_LETTER = "four-letter"
PAIRINGS = ("two-letter", "wc", "wobble")

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")


def parse_ratio(value) -> Fraction:
    """Exact rational from a decimal string (``"0.412"`` -> 412/1000).

    Scientific notation is rejected. Floats go through their shortest repr,
    ints and Fractions pass unchanged.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        value = repr(value)
        if "e" in value or "E" in value:
            raise ValueError(f"ratio {value} needs scientific notation; pass a decimal string")
    text = str(value).strip()
    if not _DECIMAL.match(text):
        raise ValueError(f"ratio {text!r} is not a plain decimal number")
    return Fraction(text)


@dataclass(frozen=True)
class RatioVector:
    """Nucleotide ratios: ``(p,)`` purine fraction, or ``(A, U, C, G)``."""

    mode: str
    values: tuple[Fraction, ...]
    boundary: bool = False

    def __post_init__(self) -> None:
        vals = tuple(parse_ratio(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.mode == TWO_LETTER:
            if len(vals) != 1:
                raise ValueError("two-letter ratios take exactly one value (purine fraction)")
            comps = (vals[0], 1 - vals[0])
        elif self.mode == FOUR_LETTER:
            if len(vals) != 4:
                raise ValueError("four-letter ratios take exactly four values (A, U, C, G)")
            if sum(vals) != 1:
                raise ValueError(f"ratios must sum to exactly 1, got {sum(vals)}")
            comps = vals
        else:
            raise ValueError(f"unknown ratio mode {self.mode!r}")
        if any(v < 0 or v > 1 for v in comps):
            raise ValueError(f"ratios must lie in [0, 1], got {vals}")
        on_boundary = any(v == 0 for v in comps)
        if on_boundary and not self.boundary:
            raise ValueError(f"ratios {vals} touch the simplex boundary; pass boundary=True to accept them")
        object.__setattr__(self, "boundary", on_boundary)

    @classmethod
    def two_letter(cls, p, boundary: bool = False) -> RatioVector:
        return cls(TWO_LETTER, (p,), boundary)

    @classmethod
    def four_letter(cls, a, u, c, g, boundary: bool = False, normalize: bool = False) -> RatioVector:
        vals = tuple(parse_ratio(v) for v in (a, u, c, g))
        total = sum(vals)
        if normalize and total != 1:
            if total <= 0:
                raise ValueError("cannot normalize ratios with nonpositive sum")
            vals = tuple(v / total for v in vals)
        return cls(FOUR_LETTER, vals, boundary)

    @classmethod
    def parse(cls, text: str, boundary: bool = False) -> RatioVector:
        """``"0.5"`` or ``"0.25,0.25,0.25,0.25"``."""
        parts = [t for t in text.split(",") if t.strip()]
        if len(parts) == 1:
            return cls.two_letter(parts[0], boundary)
        if len(parts) == 4:
            return cls.four_letter(*parts, boundary=boundary)
        raise ValueError(f"expected 1 or 4 comma-separated ratios, got {len(parts)}")


@dataclass(frozen=True)
class FractionResult:
    threshold_l: int
    threshold_p: Fraction
    exact: Fraction | None = None
    gaussian: float | None = None

    @property
    def abs_difference(self) -> float | None:
        if self.exact is None or self.gaussian is None:
            return None
        return abs(float(self.exact) - self.gaussian)


def _check_pairing(ratios: RatioVector, pairing: str) -> None:
    if pairing not in PAIRINGS:
        raise ValueError(f"unknown pairing {pairing!r}; choose from {PAIRINGS}")
    if (pairing == "two-letter") != (ratios.mode == TWO_LETTER):
        raise ValueError(f"pairing {pairing!r} is inconsistent with {ratios.mode} ratios")


def nucleotide_counts(ratios: RatioVector, n: int) -> tuple[int, ...]:
    """Letter counts for length ``n``; the last letter takes the remainder."""
    if ratios.mode == TWO_LETTER:
        purines = math.floor(ratios.values[0] * n)
        return purines, math.ceil((1 - ratios.values[0]) * n)
    a, u, c = (math.floor(v * n) for v in ratios.values[:3])
    return a, u, c, n - a - u - c


def max_compatible_arcs(ratios: RatioVector, n: int, pairing: str) -> int:
    """Largest arc count for which a compatible sequence with these counts exists."""
    _check_pairing(ratios, pairing)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    counts = nucleotide_counts(ratios, n)
    if pairing == "two-letter":
        return min(counts)
    a, u, c, g = counts
    if pairing == "wc":
        return min(a, u) + min(c, g)
    # U-G pairs draw on the U and G budgets left over by A-U and C-G
    return min(min(a, u) + g, min(c, g) + u)


def ratio_threshold(ratios: RatioVector, pairing: str) -> Fraction:
    """Per-nucleotide pairing budget: ``p``, ``p0`` (wc) or ``pbar0`` (wobble)."""
    _check_pairing(ratios, pairing)
    if pairing == "two-letter":
        return ratios.values[0]
    p1, p2, p3, p4 = ratios.values
    if pairing == "wc":
        return min(p1, p2) + min(p3, p4)
    return min(min(p1, p2) + p4, min(p3, p4) + p2)


def gaussian_fraction(params: CltParams, threshold_p, n: int) -> float:
    return gaussian_cdf((float(threshold_p) - params.mu) * math.sqrt(n) / params.sigma)


def compatible_fraction(
    c: StructureClass,
    ratios: RatioVector,
    n: int,
    pairing: str,
    method: str = "both",
    table: ArcCountTable | None = None,
    params: CltParams | None = None,
) -> FractionResult:
    if method not in ("exact", "gaussian", "both"):
        raise ValueError(f"unknown method {method!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    cap = max_compatible_arcs(ratios, n, pairing)
    p_star = ratio_threshold(ratios, pairing)
    exact = gaussian = None
    if method in ("exact", "both"):
        if table is None:
            raise ValueError("exact fraction needs an ArcCountTable")
        if table.cls != c:
            raise ValueError(f"table is for class {table.cls}, not {c}")
        if table.n_max < n:
            raise ValueError(f"table only covers n <= {table.n_max}, need {n}")
        exact = arc_cdf(table, n, cap)
    if method in ("gaussian", "both"):
        if params is None:
            raise ValueError("gaussian fraction needs CltParams")
        if params.cls != c:
            raise ValueError(f"CLT parameters are for class {params.cls}, not {c}")
        gaussian = gaussian_fraction(params, p_star, n)
    return FractionResult(cap, p_star, exact, gaussian)


def fraction_curve(
    c: StructureClass,
    n: int,
    ps: Iterable,
    table: ArcCountTable,
    params: CltParams,
) -> list[tuple[Fraction, Fraction, float]]:
    """Two-letter ``(p, exact, gaussian)`` over a grid of purine fractions."""
    out = []
    for p in ps:
        res = compatible_fraction(c, RatioVector.two_letter(p, boundary=True), n, "two-letter", "both", table, params)
        out.append((res.threshold_p, res.exact, res.gaussian))
    return out


# -- ratio files ----------------------------------------------------------

RATIO_COLUMNS = ("name", "pA", "pU", "pC", "pG")


def read_ratio_csv(fh: TextIO) -> list[tuple[str, RatioVector]]:
    """Rows ``name,pA,pU,pC,pG``. Rows not summing to 1 are renormalized with a warning."""
    reader = csv.DictReader(fh)
    if reader.fieldnames is None or tuple(f.strip() for f in reader.fieldnames) != RATIO_COLUMNS:
        raise ValueError(f"ratio file header must be {','.join(RATIO_COLUMNS)}, got {reader.fieldnames}")
    out = []
    for row in reader:
        row = {k.strip(): v for k, v in row.items()}
        vals = [parse_ratio(row[k]) for k in RATIO_COLUMNS[1:]]
        if sum(vals) != 1:
            warnings.warn(f"ratios for {row['name']!r} sum to {float(sum(vals))}; renormalized", stacklevel=2)
        out.append((row["name"], RatioVector.four_letter(*vals, boundary=True, normalize=True)))
    return out


def threshold_rows(named: Iterable[tuple[str, RatioVector]]) -> list[tuple[str, Fraction, Fraction]]:
    return [(name, ratio_threshold(rv, "wc"), ratio_threshold(rv, "wobble")) for name, rv in named]
