"""Uniform generation of structures by unranking against exact counts.

Decomposition (first vertex of a segment):

* empty segment;
* first vertex unpaired, followed by any structure;
* first vertex opens a *block*: a maximal stack of ``k >= r`` arcs, a
  reducible nested segment of length ``>= lam - 1`` and any structure after
  the block.

A reducible segment of length ``m`` is a structure of length ``m`` that does
not open a block spanning all of it, so its ranks are the ranks of length-``m``
structures below ``s(m) - q(m)``. Every structure of length ``n`` corresponds
to exactly one rank in ``[0, s(n))``; a uniform rank gives a uniform structure.

Randomness: ``random.Random`` (Mersenne Twister MT19937) seeded with the
integer seed. A rank below ``N`` is drawn by rejection on
``getrandbits(N.bit_length())``, so equal seeds give identical structures on
every platform.
"""

from __future__ import annotations

import bisect
import random
from collections import Counter
from dataclasses import dataclass, field
from statistics import fmean

from .series import ArcCountTable
from .structure import SecondaryStructure, StructureClass


def randbelow(rng: random.Random, bound: int) -> int:
    if bound <= 0:
        raise ValueError("bound must be positive")
    k = bound.bit_length()
    while True:
        v = rng.getrandbits(k)
        if v < bound:
            return v


@dataclass
class SamplerState:
    """Counts, cached decision tables and a seeded random stream.

    Not safe to share between threads while sampling; use one state per
    thread with distinct seeds. The count table itself is shared read-only.
    """

    table: ArcCountTable
    seed: int = 0
    rng: random.Random = field(init=False, repr=False)
    _s: list[int] = field(init=False, repr=False)
    _q: list[int] = field(init=False, repr=False)
    _u: list[int] = field(init=False, repr=False)
    _block_cum: dict[int, list[int]] = field(init=False, repr=False, default_factory=dict)
    _stack_cum: dict[int, list[int]] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        self.rng = random.Random(self.seed)
        t = self.table
        lam = t.cls.lam
        self._s = [t.total(n) for n in range(t.n_max + 1)]
        # q(n): structures that are a single block, i.e. irreducible ones
        self._q = [t.total(n) - t.reducible_total(n) for n in range(t.n_max + 1)]
        self._u = [t.reducible_total(m) - (1 if m <= lam - 2 else 0) for m in range(t.n_max + 1)]

    @property
    def cls(self) -> StructureClass:
        return self.table.cls

    def block_cumulative(self, n: int) -> list[int]:
        """Running totals of ``q(j) s(n - j)`` over block lengths ``j = 2r .. n``."""
        cum = self._block_cum.get(n)
        if cum is None:
            s, q = self._s, self._q
            cum, acc = [], 0
            for j in range(2 * self.cls.r, n + 1):
                acc += q[j] * s[n - j]
                cum.append(acc)
            self._block_cum[n] = cum
        return cum

    def stack_cumulative(self, j: int) -> list[int]:
        """Running totals of ``u(j - 2k)`` over stack lengths ``k = r .. j // 2``."""
        cum = self._stack_cum.get(j)
        if cum is None:
            cum, acc = [], 0
            for k in range(self.cls.r, j // 2 + 1):
                acc += self._u[j - 2 * k]
                cum.append(acc)
            self._stack_cum[j] = cum
        return cum

    def count(self, n: int) -> int:
        return self._s[n]


def unrank(state: SamplerState, n: int, rank: int) -> SecondaryStructure:
    """The structure of length ``n`` with the given rank in ``[0, s(n))``."""
    if not 0 <= n <= state.table.n_max:
        raise IndexError(f"n={n} outside table range 0..{state.table.n_max}")
    if not 0 <= rank < state._s[n]:
        raise ValueError(f"rank {rank} outside [0, {state._s[n]})")
    s, r = state._s, state.cls.r
    arcs: list[tuple[int, int]] = []
    # segments still to fill: (first vertex, length, rank)
    todo = [(1, n, rank)]
    while todo:
        pos, m, R = todo.pop()
        while m > 0:
            if R < s[m - 1]:
                pos, m = pos + 1, m - 1
                continue
            R -= s[m - 1]
            cum = state.block_cumulative(m)
            idx = bisect.bisect_right(cum, R)
            j = 2 * r + idx
            R -= cum[idx - 1] if idx else 0
            R_block, R_rest = divmod(R, s[m - j])

            scum = state.stack_cumulative(j)
            kidx = bisect.bisect_right(scum, R_block)
            k = r + kidx
            R_nested = R_block - (scum[kidx - 1] if kidx else 0)
            arcs.extend((pos + i, pos + j - 1 - i) for i in range(k))
            # nested reducible part: its ranks are the low ranks of length j - 2k
            todo.append((pos + k, j - 2 * k, R_nested))
            pos, m, R = pos + j, m - j, R_rest
    return SecondaryStructure(n, frozenset(arcs))


def sample_uniform(state: SamplerState, n: int, count: int) -> list[SecondaryStructure]:
    """``count`` independent uniform structures of length ``n``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 <= n <= state.table.n_max:
        raise IndexError(f"n={n} exceeds table range 0..{state.table.n_max}")
    total = state._s[n]
    return [unrank(state, n, randbelow(state.rng, total)) for _ in range(count)]


def empirical_arc_stats(samples: list[SecondaryStructure]) -> tuple[float, float]:
    """Sample mean and unbiased sample variance of the arc counts."""
    if not samples:
        raise ValueError("no samples")
    if len({s.n for s in samples}) != 1:
        raise ValueError("samples must share one length")
    ls = [s.num_arcs for s in samples]
    mean = fmean(ls)
    if len(ls) < 2:
        return mean, 0.0
    var = sum((x - mean) ** 2 for x in ls) / (len(ls) - 1)
    return mean, var


def arc_histogram(samples: list[SecondaryStructure]) -> list[tuple[int, int]]:
    """``(l, count)`` pairs sorted by ``l``."""
    return sorted(Counter(s.num_arcs for s in samples).items())
