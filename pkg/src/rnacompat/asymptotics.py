"""Dominant singularity and Gaussian limit parameters of the arc count.

The singularity ``rho(y)`` is the smallest positive root of the discriminant
divisor ``D(x, y) = B^2 - 4 (x^2 y)^r A``. With ``theta(s) = rho(e^s)``,

    mu     = -theta'(0) / theta(0)
    sigma2 = (theta'(0) / theta(0))^2 - theta''(0) / theta(0)

Derivatives of ``rho`` come from implicit differentiation of ``D(rho(y), y) = 0``
using exact polynomial partials; a Richardson-extrapolated finite difference
of ``log theta`` is kept as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from functools import lru_cache

import mpmath
import numpy as np

from .polynomials import ClassPolynomials, Poly, poly_eval
from .structure import STANDARD_CLASSES, StructureClass

SCAN_STEP = 1e-3
ROOT_TOL = 1e-12
WORKING_DPS = 50
FD_STEP = 1e-4
FD_AGREEMENT = 1e-6

# y-range on which the branch has been checked by continuation from y = 1
SUPPORTED_Y = (0.5, 2.0)


class SingularityError(RuntimeError):
    pass


class DegenerateSingularityError(SingularityError):
    pass


@dataclass(frozen=True)
class CltParams:
    cls: StructureClass
    rho: float
    mu: float
    sigma2: float

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


def _eval_float_grid(p: Poly, xs: np.ndarray, y: float) -> np.ndarray:
    out = np.zeros_like(xs)
    for (i, j), c in p.items():
        out += float(c) * xs**i * y**j
    return out


def _mp_eval(p: Poly, x, y):
    return poly_eval(p, mpmath.mpf(x), mpmath.mpf(y))


def _refine(polys: ClassPolynomials, lo, hi, y):
    D = polys.D
    Dx = polys.D_partial(1, 0)
    flo = _mp_eval(D, lo, y)
    tol = mpmath.mpf(10) ** (-(WORKING_DPS // 2))
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fmid = _mp_eval(D, mid, y)
        if fmid == 0:
            lo = hi = mid
            break
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    x = (lo + hi) / 2
    for _ in range(4):
        x = x - _mp_eval(D, x, y) / _mp_eval(Dx, x, y)
    return x


def _singularity_mp(c: StructureClass, y) -> mpmath.mpf:
    if not y > 0:
        raise ValueError(f"y must be positive, got {y}")
    polys = ClassPolynomials(c)
    with mpmath.workdps(WORKING_DPS):
        y = mpmath.mpf(y)
        steps = int(round(1 / SCAN_STEP))
        xs = np.arange(1, steps + 1) * SCAN_STEP
        vals = _eval_float_grid(polys.D, xs, float(y))
        # D(0, y) = 1 > 0; the first nonpositive grid value brackets the root
        hits = np.nonzero(vals <= 0)[0]
        if len(hits) == 0:
            raise SingularityError(f"no dominant singularity located on (0, 1] for class {c}, y={y}")
        k = int(hits[0])
        lo = mpmath.mpf(k) * SCAN_STEP if k else mpmath.mpf(0)
        hi = mpmath.mpf(k + 1) * SCAN_STEP
        if _mp_eval(polys.D, hi, y) > 0 or _mp_eval(polys.D, lo, y) <= 0:
            raise SingularityError(f"sign bracket rejected at high precision for class {c}, y={y}")
        rho = _refine(polys, lo, hi, y)
        if abs(_mp_eval(polys.D_partial(1, 0), rho, y)) < mpmath.mpf(10) ** (-20):
            raise DegenerateSingularityError(f"D_x vanishes at rho={rho} for class {c}")
        return +rho


@lru_cache(maxsize=None)
def _cached_rho(c: StructureClass, y: float) -> float:
    return float(_singularity_mp(c, y))


def dominant_singularity(c: StructureClass, y: float = 1.0) -> float:
    """Smallest positive real root of ``D(., y)``, to about 1e-12 or better."""
    return _cached_rho(c, float(y))


def rho_closed_form(lam: int, y: float) -> float:
    """Known closed forms of the singularity for ``r = 1``, ``lam in {1, 2}``."""
    sy = math.sqrt(y)
    if lam == 1:
        # (1 - 2 sqrt y) / (1 - 4 y), simplified to avoid 0/0 at y = 1/4
        return 1 / (1 + 2 * sy)
    if lam == 2:
        return (1 + 2 * sy - math.sqrt(1 + 4 * sy)) / (2 * y)
    raise ValueError("closed form only known for lam in {1, 2} with r = 1")


def follow_branch(c: StructureClass, y_target: float, step: float = 0.05) -> float:
    """Continue ``rho`` from ``y = 1`` to ``y_target`` by Newton steps.

    Raises if the continued root differs from the minimal positive root at
    ``y_target``, i.e. if the relevant branch is lost along the path.
    """
    polys = ClassPolynomials(c)
    Dx = polys.D_partial(1, 0)
    with mpmath.workdps(WORKING_DPS):
        x = _singularity_mp(c, 1.0)
        k = max(1, int(math.ceil(abs(y_target - 1.0) / step)))
        for i in range(1, k + 1):
            y = mpmath.mpf(1.0) + (mpmath.mpf(y_target) - 1) * i / k
            for _ in range(30):
                dx = _mp_eval(polys.D, x, y) / _mp_eval(Dx, x, y)
                x -= dx
                if abs(dx) < mpmath.mpf(10) ** (-(WORKING_DPS - 10)):
                    break
        direct = _singularity_mp(c, y_target)
        if abs(x - direct) > 1e-9:
            raise SingularityError(f"branch from y=1 lands at {x}, minimal root is {direct} (class {c})")
        return float(x)


@lru_cache(maxsize=None)
def clt_params(c: StructureClass, check: bool = True) -> CltParams:
    """``(rho, mu, sigma2)`` by implicit differentiation at ``y = 1``."""
    polys = ClassPolynomials(c)
    with mpmath.workdps(WORKING_DPS):
        rho = _singularity_mp(c, 1.0)
        one = mpmath.mpf(1)
        d = {(a, b): _mp_eval(polys.D_partial(a, b), rho, one) for a, b in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]}
        if d[(1, 0)] == 0:
            raise DegenerateSingularityError(f"D_x = 0 at rho for class {c}")
        r1 = -d[(0, 1)] / d[(1, 0)]
        r2 = -(d[(2, 0)] * r1**2 + 2 * d[(1, 1)] * r1 + d[(0, 2)]) / d[(1, 0)]
        th1 = r1  # theta'(0) = rho'(1)
        th2 = r2 + r1  # theta''(0) = rho''(1) + rho'(1)
        mu = -th1 / rho
        sigma2 = (th1 / rho) ** 2 - th2 / rho
        params = CltParams(c, float(rho), float(mu), float(sigma2))
    if check:
        fd_mu, fd_sigma2 = clt_params_finite_difference(c)
        if abs(fd_mu - params.mu) > FD_AGREEMENT or abs(fd_sigma2 - params.sigma2) > FD_AGREEMENT:
            raise SingularityError(
                f"implicit and finite-difference CLT parameters disagree for {c}: "
                f"({params.mu}, {params.sigma2}) vs ({fd_mu}, {fd_sigma2})"
            )
    if not (0 < params.mu < 0.5 and params.sigma2 > 0):
        raise SingularityError(f"CLT parameters out of range for {c}: {params}")
    return params


def clt_params_finite_difference(c: StructureClass, h: float = FD_STEP) -> tuple[float, float]:
    """``(mu, sigma2)`` from central differences of ``log theta(s)`` with one Richardson step."""
    with mpmath.workdps(WORKING_DPS):
        h = mpmath.mpf(h)

        def log_theta(s):
            return mpmath.log(_singularity_mp(c, mpmath.exp(s)))

        f0 = log_theta(0)
        vals = {k: log_theta(k * h / 2) for k in (-2, -1, 1, 2)}
        d1_h = (vals[2] - vals[-2]) / (2 * h)
        d1_h2 = (vals[1] - vals[-1]) / h
        d2_h = (vals[2] - 2 * f0 + vals[-2]) / h**2
        d2_h2 = (vals[1] - 2 * f0 + vals[-1]) / (h / 2) ** 2
        d1 = (4 * d1_h2 - d1_h) / 3
        d2 = (4 * d2_h2 - d2_h) / 3
        # mu = -(log theta)'(0), sigma2 = -(log theta)''(0)
        return float(-d1), float(-d2)


def gaussian_cdf(x: float) -> float:
    """Standard normal distribution function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def round_half_up(x: float, places: int) -> str:
    q = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def table1(classes=STANDARD_CLASSES) -> list[CltParams]:
    return [clt_params(c) for c in classes]


def table1_rows(classes=STANDARD_CLASSES, places: int = 4) -> list[tuple[int, int, str, str]]:
    """``(lambda, r, mu, sigma2)`` rounded half-up for presentation."""
    return [(p.cls.lam, p.cls.r, round_half_up(p.mu, places), round_half_up(p.sigma2, places)) for p in table1(classes)]
