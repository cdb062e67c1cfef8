"""Arc diagrams, the (lambda, r) structure classes and a brute-force enumerator.

Vertices are 1-indexed. A structure of class ``StructureClass(lam, r)`` has
noncrossing arcs without shared endpoints, every arc of length ``j - i >= lam``
and every maximal stack of at least ``r`` parallel arcs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Arc = tuple[int, int]

BRUTE_FORCE_CAP = 14


@dataclass(frozen=True, order=True)
class StructureClass:
    """Minimum arc-length ``lam`` and minimum stack-length ``r``."""

    lam: int
    r: int

    def __post_init__(self) -> None:
        if int(self.lam) != self.lam or self.lam < 1:
            raise ValueError(f"minimum arc-length must be an integer >= 1, got {self.lam!r}")
        if int(self.r) != self.r or self.r < 1:
            raise ValueError(f"minimum stack-length must be an integer >= 1, got {self.r!r}")

    def __str__(self) -> str:
        return f"(lambda={self.lam}, r={self.r})"


STANDARD_CLASSES = tuple(StructureClass(lam, r) for lam in range(1, 5) for r in range(1, 4))


@dataclass(frozen=True)
class SecondaryStructure:
    n: int
    arcs: frozenset[Arc] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        arcs = frozenset((int(i), int(j)) for i, j in self.arcs)
        for i, j in arcs:
            if not i < j:
                raise ValueError(f"malformed arc ({i}, {j}): need i < j")
            if i < 1 or j > self.n:
                raise ValueError(f"arc ({i}, {j}) outside vertex range 1..{self.n}")
        object.__setattr__(self, "arcs", arcs)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def partner_map(self) -> dict[int, int]:
        """Vertex -> paired vertex. Assumes no shared endpoints."""
        partners = {}
        for i, j in self.arcs:
            partners[i] = j
            partners[j] = i
        return partners


@dataclass(frozen=True)
class Stack:
    """Maximal run ``(i, j), (i+1, j-1), ..., (i+length-1, j-length+1)``."""

    start: Arc
    length: int

    @property
    def arcs(self) -> list[Arc]:
        i, j = self.start
        return [(i + k, j - k) for k in range(self.length)]


@dataclass(frozen=True)
class Violation:
    kind: str  # shared-endpoint | crossing | arc-length | stack-length
    arcs: tuple[Arc, ...]
    detail: str


def stacks(s: SecondaryStructure) -> list[Stack]:
    """Maximal stacks, recomputed from the arc set every call."""
    arcs = s.arcs
    out = []
    for i, j in sorted(arcs):
        if (i - 1, j + 1) in arcs:
            continue
        length = 1
        while (i + length, j - length) in arcs and i + length < j - length:
            length += 1
        out.append(Stack((i, j), length))
    return out


def validate(s: SecondaryStructure, c: StructureClass) -> list[Violation]:
    """Every violated constraint of ``s`` with respect to class ``c``.

    An empty list means ``s`` is an r-canonical secondary structure with
    minimum arc-length lambda.
    """
    violations: list[Violation] = []
    arcs = s.sorted_arcs()

    seen: dict[int, Arc] = {}
    for arc in arcs:
        for v in arc:
            if v in seen:
                violations.append(
                    Violation("shared-endpoint", (seen[v], arc), f"vertex {v} is shared by {seen[v]} and {arc}")
                )
            else:
                seen[v] = arc

    for a, (i1, j1) in enumerate(arcs):
        for i2, j2 in arcs[a + 1:]:
            if i1 < i2 < j1 < j2:
                violations.append(Violation("crossing", ((i1, j1), (i2, j2)), f"{(i1, j1)} crosses {(i2, j2)}"))

    for i, j in arcs:
        if j - i < c.lam:
            violations.append(Violation("arc-length", ((i, j),), f"arc {(i, j)} has length {j - i} < {c.lam}"))

    for st in stacks(s):
        if st.length < c.r:
            violations.append(
                Violation("stack-length", tuple(st.arcs), f"stack at {st.start} has length {st.length} < {c.r}")
            )
    return violations


def is_valid(s: SecondaryStructure, c: StructureClass) -> bool:
    return not validate(s, c)


def _matchings(lo: int, hi: int, lam: int) -> Iterator[list[Arc]]:
    # noncrossing partial matchings on lo..hi, arcs of length >= lam
    if lo > hi:
        yield []
        return
    for rest in _matchings(lo + 1, hi, lam):
        yield rest
    for j in range(lo + lam, hi + 1):
        for inside in _matchings(lo + 1, j - 1, lam):
            for outside in _matchings(j + 1, hi, lam):
                yield [(lo, j)] + inside + outside


def iter_structures(c: StructureClass, n: int, cap: int = BRUTE_FORCE_CAP) -> Iterator[SecondaryStructure]:
    """Exhaustively generate every valid structure of class ``c`` on ``n`` vertices."""
    if n > cap:
        raise ValueError(f"brute-force enumeration refused for n={n} > cap={cap}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    for arcs in _matchings(1, n, c.lam):
        s = SecondaryStructure(n, frozenset(arcs))
        if all(st.length >= c.r for st in stacks(s)):
            yield s


def enumerate_counts(c: StructureClass, n: int, cap: int = BRUTE_FORCE_CAP) -> dict[int, int]:
    """Brute-force map ``l -> number of valid structures with l arcs`` (nonzero entries only)."""
    tally = Counter(s.num_arcs for s in iter_structures(c, n, cap))
    return dict(sorted(tally.items()))


# -- dot-bracket ----------------------------------------------------------


def dot_bracket_encode(s: SecondaryStructure) -> str:
    chars = ["."] * s.n
    partners: dict[int, int] = {}
    for i, j in s.arcs:
        if i in partners or j in partners:
            raise ValueError("structure has shared endpoints; not representable in dot-bracket")
        partners[i] = j
        partners[j] = i
        chars[i - 1] = "("
        chars[j - 1] = ")"
    arcs = s.sorted_arcs()
    for a, (i1, j1) in enumerate(arcs):
        for i2, j2 in arcs[a + 1:]:
            if i1 < i2 < j1 < j2:
                raise ValueError(f"crossing arcs {(i1, j1)}, {(i2, j2)} are not representable in dot-bracket")
    return "".join(chars)


def dot_bracket_decode(text: str) -> SecondaryStructure:
    text = text.strip()
    opened: list[int] = []
    arcs = []
    for pos, ch in enumerate(text, start=1):
        if ch == "(":
            opened.append(pos)
        elif ch == ")":
            if not opened:
                raise ValueError(f"unbalanced ')' at position {pos}")
            arcs.append((opened.pop(), pos))
        elif ch != ".":
            raise ValueError(f"illegal character {ch!r} at position {pos}")
    if opened:
        raise ValueError(f"unbalanced '(' at position {opened[-1]}")
    return SecondaryStructure(len(text), frozenset(arcs))


def read_dot_bracket(lines: Iterable[str]) -> list[SecondaryStructure]:
    """One structure per line; blank lines are skipped."""
    return [dot_bracket_decode(line) for line in lines if line.strip()]
