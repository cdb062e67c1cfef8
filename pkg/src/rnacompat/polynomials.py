"""Exact integer bivariate polynomials ``{(i, j): c}`` meaning ``sum c x^i y^j``."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from .structure import StructureClass

Poly = dict[tuple[int, int], int]


def poly_add(*polys: Poly) -> Poly:
    out: defaultdict[tuple[int, int], int] = defaultdict(int)
    for p in polys:
        for k, c in p.items():
            out[k] += c
    return {k: c for k, c in sorted(out.items()) if c}


def poly_scale(p: Poly, c: int) -> Poly:
    return {k: c * v for k, v in p.items() if c * v}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: defaultdict[tuple[int, int], int] = defaultdict(int)
    for (a, b), c in p.items():
        for (d, e), f in q.items():
            out[(a + d, b + e)] += c * f
    return {k: c for k, c in sorted(out.items()) if c}


def poly_diff(p: Poly, dx: int = 0, dy: int = 0) -> Poly:
    """Partial derivative d^dx/dx^dx d^dy/dy^dy, exact."""
    out = {}
    for (i, j), c in p.items():
        if i < dx or j < dy:
            continue
        coef = c
        for k in range(dx):
            coef *= i - k
        for k in range(dy):
            coef *= j - k
        if coef:
            out[(i - dx, j - dy)] = coef
    return out


def poly_eval(p: Poly, x, y):
    """Evaluate at numeric ``x, y`` (float, mpf or Fraction alike)."""
    total = 0
    for (i, j), c in p.items():
        total += c * x**i * y**j
    return total


@dataclass(frozen=True)
class ClassPolynomials:
    """``A``, ``B`` and the discriminant divisor ``D = B^2 - 4 (x^2 y)^r A`` for a class."""

    cls: StructureClass

    @cached_property
    def z_r(self) -> Poly:
        r = self.cls.r
        return {(2 * r, r): 1}

    @cached_property
    def P(self) -> Poly:
        # segments too short to host the nested part of an arc
        return {(i, 0): 1 for i in range(self.cls.lam - 1)}

    @cached_property
    def A(self) -> Poly:
        return poly_add({(0, 0): 1, (2, 1): -1}, self.z_r)

    @cached_property
    def B(self) -> Poly:
        one_minus_x = {(0, 0): 1, (1, 0): -1}
        return poly_add(poly_mul(one_minus_x, self.A), poly_mul(self.z_r, self.P))

    @cached_property
    def D(self) -> Poly:
        return poly_add(poly_mul(self.B, self.B), poly_scale(poly_mul(self.z_r, self.A), -4))

    def D_partial(self, dx: int = 0, dy: int = 0) -> Poly:
        return poly_diff(self.D, dx, dy)

    def x_degree(self, p: Poly) -> int:
        return max(i for i, _ in p)
