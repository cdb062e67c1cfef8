"""Exact arc-count tables s(n, l) and t(n, l).

Two solvers produce the same integers:

* ``fixed-point``: graded layer-by-layer solution of the coupled system
  ``S = 1 + x S + S Q`` and ``S - T = Q`` with ``Q = c (T - P)``,
  ``c = (x^2 y)^r / (1 - x^2 y)``. Each layer costs a bivariate convolution,
  so the total work grows like ``n_max^4``.
* ``recurrence``: ``g = B - 2 (x^2 y)^r S`` squares to ``D`` and therefore
  solves ``2 D g' = D_x g``; since ``D(0, y) = 1`` this gives ``g`` one
  x-layer at a time from a fixed number of previous layers. Work grows like
  ``n_max^2`` and is what makes n_max in the thousands practical.

``auto`` uses the fixed point for small tables and the recurrence beyond
``FIXED_POINT_MAX_N``.

Memory: rows are stored triangularly (``l <= (n + 1 - lam) // 2``). At
n_max = 2000 a table holds about 2 * 10^6 Python ints of up to ~3200 bits,
roughly 0.7 GB for ``s`` and ``t`` together.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import numpy as np

from .polynomials import ClassPolynomials, Poly
from .structure import StructureClass

FIXED_POINT_MAX_N = 200

ProgressFn = Callable[[int, int], None]


def _zeros(n: int) -> np.ndarray:
    return np.zeros(n // 2 + 1, dtype=object)


class BivariateSeries:
    """Truncated series ``sum c(n, l) x^n y^l`` with ``l <= n // 2``.

    Coefficients are exact Python ints (or ``Fraction``); row ``n`` is an
    object array of length ``n // 2 + 1``. Every series built from
    ``x^2 y``, ``x`` and constants stays inside that triangle.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[np.ndarray]):
        self.rows = [np.asarray(r, dtype=object) for r in rows]
        for n, r in enumerate(self.rows):
            if len(r) != n // 2 + 1:
                raise ValueError(f"row {n} has length {len(r)}, expected {n // 2 + 1}")

    @property
    def order(self) -> int:
        return len(self.rows) - 1

    @classmethod
    def zero(cls, order: int) -> BivariateSeries:
        return cls([_zeros(n) for n in range(order + 1)])

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> BivariateSeries:
        out = cls.zero(order)
        for (i, j), c in p.items():
            if i > order:
                continue
            if j > i // 2:
                raise ValueError(f"monomial x^{i} y^{j} lies outside the l <= n/2 triangle")
            out.rows[i][j] += c
        return out

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], order: int | None = None) -> BivariateSeries:
        order = len(rows) - 1 if order is None else order
        out = cls.zero(order)
        for n in range(min(order, len(rows) - 1) + 1):
            row = rows[n]
            out.rows[n][: len(row)] = list(row)
        return out

    def coefficient(self, n: int, l: int):
        if n < 0 or n > self.order or l < 0 or l > n // 2:
            return 0
        return self.rows[n][l]

    def truncate(self, order: int) -> BivariateSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return BivariateSeries([r.copy() for r in self.rows[: order + 1]])

    def _check(self, other: BivariateSeries) -> int:
        return min(self.order, other.order)

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        N = self._check(other)
        return BivariateSeries([self.rows[n] + other.rows[n] for n in range(N + 1)])

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        N = self._check(other)
        return BivariateSeries([self.rows[n] - other.rows[n] for n in range(N + 1)])

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries([-r for r in self.rows])

    def scale(self, c) -> BivariateSeries:
        return BivariateSeries([r * c for r in self.rows])

    def __mul__(self, other: BivariateSeries) -> BivariateSeries:
        N = self._check(other)
        out = [_zeros(n) for n in range(N + 1)]
        for m in range(N + 1):
            a = self.rows[m]
            if not a.any():
                continue
            for k in range(N - m + 1):
                b = other.rows[k]
                prod = np.convolve(a, b)
                out[m + k][: len(prod)] += prod
        return BivariateSeries(out)

    def mul_poly(self, p: Poly) -> BivariateSeries:
        """Product with a sparse polynomial, cheap compared to ``*``."""
        out = [_zeros(n) for n in range(self.order + 1)]
        for (i, j), c in p.items():
            for n in range(self.order - i + 1):
                row = self.rows[n]
                out[n + i][j: j + len(row)] += c * row
        return BivariateSeries(out)

    def divide_monomial(self, i: int, j: int) -> BivariateSeries:
        """Exact division by ``x^i y^j``; raises if not divisible."""
        for n in range(min(i, self.order + 1)):
            if self.rows[n].any():
                raise ArithmeticError(f"row {n} nonzero, not divisible by x^{i}")
        out = []
        for n in range(i, self.order + 1):
            row = self.rows[n]
            if row[:j].any():
                raise ArithmeticError(f"row {n} not divisible by y^{j}")
            shifted = row[j:]
            target = _zeros(n - i)
            if shifted[len(target):].any():
                raise ArithmeticError("quotient leaves the l <= n/2 triangle")
            target[: min(len(target), len(shifted))] = shifted[: len(target)]
            out.append(target)
        return BivariateSeries(out)

    def inverse(self) -> BivariateSeries:
        """Multiplicative inverse of a unit (constant term invertible)."""
        a0 = self.rows[0][0]
        if a0 == 0:
            raise ZeroDivisionError("series is not a unit")
        exact_int = all(isinstance(v, int) for r in self.rows for v in r)
        if exact_int and a0 not in (1, -1):
            raise ArithmeticError("integer series must have constant term +-1 to be inverted")
        inv0 = a0 if exact_int else Fraction(1) / a0
        out = [np.array([inv0], dtype=object)]
        for n in range(1, self.order + 1):
            acc = _zeros(n)
            for m in range(1, n + 1):
                if not self.rows[m].any():
                    continue
                prod = np.convolve(self.rows[m], out[n - m])
                acc[: len(prod)] += prod
            out.append(-acc * inv0)
        return BivariateSeries(out)

    def sqrt(self, iterations: int | None = None) -> BivariateSeries:
        """Square root with constant term 1, by Newton iteration ``T <- (T + U/T) / 2``."""
        if self.rows[0][0] != 1:
            raise ValueError("sqrt needs constant term 1")
        half = Fraction(1, 2)
        t = BivariateSeries.from_poly({(0, 0): 1}, self.order)
        t = BivariateSeries([r.astype(object) + Fraction(0) for r in t.rows])
        steps = iterations if iterations is not None else max(1, math.ceil(math.log2(self.order + 1))) + 1
        for _ in range(steps):
            t = (t + self * t.inverse()).scale(half)
        return t

    def is_zero(self) -> bool:
        return not any(r.any() for r in self.rows)

    def nonzero_terms(self) -> Iterator[tuple[int, int, object]]:
        for n, row in enumerate(self.rows):
            for l, v in enumerate(row):
                if v:
                    yield n, l, v

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariateSeries) or other.order != self.order:
            return NotImplemented
        return all((a == b).all() for a, b in zip(self.rows, other.rows))

    def __repr__(self) -> str:
        return f"BivariateSeries(order={self.order})"


# -- tables ---------------------------------------------------------------


def support_bound(lam: int, n: int) -> int:
    """Largest possible arc count on ``n`` vertices with minimum arc-length ``lam``."""
    return max(0, (n + 1 - lam) // 2)


@dataclass(frozen=True)
class ArcCountTable:
    """Exact ``s(n, l)`` and ``t(n, l)`` (reducible structures) for ``n <= n_max``."""

    cls: StructureClass
    n_max: int
    s: tuple[tuple[int, ...], ...]
    t: tuple[tuple[int, ...], ...]
    method: str = "fixed-point"

    def _check_n(self, n: int) -> None:
        if not 0 <= n <= self.n_max:
            raise IndexError(f"n={n} outside table range 0..{self.n_max}")

    def count(self, n: int, l: int) -> int:
        self._check_n(n)
        row = self.s[n]
        return row[l] if 0 <= l < len(row) else 0

    def reducible(self, n: int, l: int) -> int:
        self._check_n(n)
        row = self.t[n]
        return row[l] if 0 <= l < len(row) else 0

    def total(self, n: int) -> int:
        self._check_n(n)
        return sum(self.s[n])

    def reducible_total(self, n: int) -> int:
        self._check_n(n)
        return sum(self.t[n])

    def row(self, n: int) -> dict[int, int]:
        self._check_n(n)
        return {l: c for l, c in enumerate(self.s[n]) if c}

    def arc_mean(self, n: int) -> Fraction:
        row = self.s[n]
        return Fraction(sum(l * c for l, c in enumerate(row)), sum(row))

    def arc_variance(self, n: int) -> Fraction:
        row = self.s[n]
        tot = sum(row)
        m1 = Fraction(sum(l * c for l, c in enumerate(row)), tot)
        m2 = Fraction(sum(l * l * c for l, c in enumerate(row)), tot)
        return m2 - m1 * m1

    def s_series(self) -> BivariateSeries:
        return BivariateSeries.from_rows(self.s)

    def t_series(self) -> BivariateSeries:
        return BivariateSeries.from_rows(self.t)

    def rows(self, n: int | None = None) -> Iterator[tuple[int, int, int]]:
        """``(n, l, count)`` over the support ``l <= (n + 1 - lam) // 2``."""
        ns = range(self.n_max + 1) if n is None else [n]
        for m in ns:
            self._check_n(m)
            for l, c in enumerate(self.s[m]):
                yield m, l, c


def _trim(cls: StructureClass, layers: Sequence[np.ndarray]) -> tuple[tuple[int, ...], ...]:
    out = []
    for n, row in enumerate(layers):
        keep = support_bound(cls.lam, n) + 1
        tail = row[keep:]
        if tail.any():
            raise AssertionError(f"nonzero count beyond the arc-length packing bound at n={n}")
        out.append(tuple(int(v) for v in row[:keep]))
    return tuple(out)


def _solve_fixed_point(cls: StructureClass, n_max: int, progress: ProgressFn | None):
    lam, r = cls.lam, cls.r
    S: list[np.ndarray] = []
    T: list[np.ndarray] = []
    U: list[np.ndarray] = []  # T - P
    Q: list[np.ndarray] = []  # c * U: structures that are one stack-block
    for n in range(n_max + 1):
        q = _zeros(n)
        if n >= 2 * r:
            u = U[n - 2 * r]
            q[r: r + len(u)] += u
        if n >= 2:
            prev = Q[n - 2]
            q[1: 1 + len(prev)] += prev
        s = _zeros(n)
        if n == 0:
            s[0] = 1
        else:
            prev = S[n - 1]
            s[: len(prev)] += prev
        for m in range(0, n - 2 * r + 1):
            block = q if m == 0 else Q[n - m]
            if not block.any():
                continue
            prod = np.convolve(S[m], block)
            s[: len(prod)] += prod
        t = s - q
        u = t.copy()
        if n <= lam - 2:
            u[0] -= 1
        S.append(s)
        T.append(t)
        U.append(u)
        Q.append(q)
        if progress is not None:
            progress(n, n_max)
    return S, T


def _solve_recurrence(cls: StructureClass, n_max: int, progress: ProgressFn | None):
    lam, r = cls.lam, cls.r
    polys = ClassPolynomials(cls)
    if polys.D.get((0, 0)) != 1 or any(j for (i, j) in polys.D if i == 0):
        raise AssertionError("D(0, y) must equal 1")
    terms: dict[int, list[tuple[int, int]]] = {}
    for (i, j), c in polys.D.items():
        if i > 0:
            terms.setdefault(i, []).append((j, c))
    depth = max(terms)
    top = n_max + 2 * r
    # g_m has y-degree <= m // 2; keep only the last `depth` layers
    window: dict[int, np.ndarray] = {0: np.array([1], dtype=object)}
    b_rows: dict[int, dict[int, int]] = {}
    for (i, j), c in polys.B.items():
        b_rows.setdefault(i, {})[j] = c

    S: list[np.ndarray] = []
    for m in range(0, top + 1):
        if m > 0:
            acc = _zeros(m)
            for i, lst in terms.items():
                if i > m:
                    continue
                prev = window[m - i]
                f = 2 * m - 3 * i
                for j, c in lst:
                    acc[j: j + len(prev)] += (c * f) * prev
            g = acc // (-2 * m)
            if (g * (-2 * m) != acc).any():
                raise ArithmeticError(f"non-integral layer {m} in sqrt(D) recurrence")
            window[m] = g
            window.pop(m - depth - 1, None)
        n = m - 2 * r
        if n >= 0:
            # 2 z^r S = B - g, read off at x^m
            row = -window[m]
            for j, c in b_rows.get(m, {}).items():
                row[j] += c
            if row[:r].any():
                raise ArithmeticError(f"layer {m}: B - g not divisible by y^{r}")
            half = row[r:] // 2
            if (half * 2 != row[r:]).any():
                raise ArithmeticError(f"layer {m}: odd coefficient in B - g")
            s = _zeros(n)
            s[: min(len(s), len(half))] = half[: len(s)]
            if half[len(s):].any():
                raise ArithmeticError("solution leaves the l <= n/2 triangle")
            S.append(s)
            if progress is not None:
                progress(n, n_max)

    # T A = (1 - z) S + z^r P
    T: list[np.ndarray] = []
    for n in range(n_max + 1):
        t = S[n].copy()
        if n >= 2:
            prev = S[n - 2]
            t[1: 1 + len(prev)] -= prev
            prev = T[n - 2]
            t[1: 1 + len(prev)] += prev
        if 2 * r <= n <= 2 * r + lam - 2:
            t[r] += 1
        if n >= 2 * r:
            prev = T[n - 2 * r]
            t[r: r + len(prev)] -= prev
        T.append(t)
    return S, T


def count_table(
    c: StructureClass,
    n_max: int,
    method: str = "auto",
    progress: ProgressFn | None = None,
) -> ArcCountTable:
    """Exact arc-count table for class ``c`` up to length ``n_max``."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    if method == "auto":
        method = "fixed-point" if n_max <= FIXED_POINT_MAX_N else "recurrence"
    if method == "fixed-point":
        S, T = _solve_fixed_point(c, n_max, progress)
    elif method == "recurrence":
        S, T = _solve_recurrence(c, n_max, progress)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ArcCountTable(c, n_max, _trim(c, S), _trim(c, T), method)


# -- checks against the generating function -------------------------------


def functional_residual(table: ArcCountTable) -> BivariateSeries:
    """``(x^2 y)^r S^2 - B S + A`` truncated at ``n_max``; zero for a correct table."""
    polys = ClassPolynomials(table.cls)
    N = table.n_max
    S = table.s_series()
    return (S * S).mul_poly(polys.z_r) - S.mul_poly(polys.B) + BivariateSeries.from_poly(polys.A, N)


def catalan_form_series(c: StructureClass, order: int) -> BivariateSeries:
    """``(A / B) C((x^2 y)^r A / B^2)`` with ``C(w) = (1 - sqrt(1 - 4w)) / (2w)``, over rationals."""
    polys = ClassPolynomials(c)
    r = c.r
    to_q = lambda s: BivariateSeries([row + Fraction(0) for row in s.rows])  # noqa: E731
    A = to_q(BivariateSeries.from_poly(polys.A, order + 2 * r))
    B = to_q(BivariateSeries.from_poly(polys.B, order + 2 * r))
    B_inv = B.inverse()
    w = A.mul_poly(polys.z_r) * B_inv * B_inv
    one = to_q(BivariateSeries.from_poly({(0, 0): 1}, order + 2 * r))
    root = (one - w.scale(4)).sqrt()
    # (1 - root) / (2 w) = B^2 (1 - root) / (2 z^r A)
    numer = (one - root) * B * B * A.inverse()
    catalan = numer.divide_monomial(2 * r, r).scale(Fraction(1, 2))
    return (A.truncate(order) * B_inv.truncate(order)) * catalan


# -- closed forms ---------------------------------------------------------


def binom(a: int, b: int) -> int:
    if b < 0 or a < b or a < 0:
        return 0
    return math.comb(a, b)


def narayana(l: int, k: int) -> int:
    """Plane trees with ``l`` edges and ``k`` leaves."""
    if l < 1 or not 1 <= k <= l:
        raise ValueError(f"narayana needs 1 <= k <= l, got l={l}, k={k}")
    num = binom(l, k) * binom(l, k - 1)
    q, rem = divmod(num, l)
    assert rem == 0
    return q


def r1_count(lam: int, n: int, l: int) -> int:
    """1-canonical structures with ``l`` arcs, minimum arc-length ``lam``."""
    if lam < 1 or n < 0 or l < 0:
        raise ValueError(f"invalid arguments lam={lam}, n={n}, l={l}")
    if l == 0:
        return 1
    return sum(narayana(l, k) * binom(n - (lam - 1) * k, 2 * l) for k in range(1, l + 1))


def waterman_count(n: int, l: int) -> int:
    """Minimum arc-length 2, 1-canonical, ``l >= 1`` arcs."""
    if l < 1 or n < 0:
        raise ValueError(f"waterman formula needs l >= 1 and n >= 0, got n={n}, l={l}")
    num = binom(n - l, l + 1) * binom(n - l - 1, l - 1)
    q, rem = divmod(num, l)
    assert rem == 0
    return q


def closed_form_count(kind: str, **args: int) -> int:
    """Dispatch ``narayana(l, k)``, ``r1-general(lam, n, l)`` or ``waterman-lambda2(n, l)``."""
    if kind == "narayana":
        return narayana(args["l"], args["k"])
    if kind == "r1-general":
        return r1_count(args["lam"], args["n"], args["l"])
    if kind == "waterman-lambda2":
        return waterman_count(args["n"], args["l"])
    raise ValueError(f"unknown closed form {kind!r}")


def arc_cdf(table: ArcCountTable, n: int, l: int) -> Fraction:
    """``P(Y <= l)`` for the arc count of a uniform structure on ``n`` vertices."""
    if not 0 <= n <= table.n_max:
        raise IndexError(f"n={n} outside table range 0..{table.n_max}")
    row = table.s[n]
    if l < 0:
        return Fraction(0)
    return Fraction(sum(row[: l + 1]), sum(row))


# -- export ---------------------------------------------------------------


def write_table_csv(table: ArcCountTable, fh: io.TextIOBase, n: int | None = None) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "l", "count"])
    for row in table.rows(n):
        w.writerow(row)


def table_to_json(table: ArcCountTable, n: int | None = None) -> str:
    return json.dumps([{"n": m, "l": l, "count": c} for m, l, c in table.rows(n)])
