"""Proper k-colorings: enumeration, counting, class profiles, balance.

A coloring is an n-vector with entries in {1..k}. Class profiles
record the k class sizes; the balance report measures how far a
profile strays from n/k per class and applies the standard
deviation-count criterion (at most ln^8 k classes may deviate by more
than n/(k ln^4 k)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Union

from coverlab.errors import DomainError
from coverlab.graphs import MultiGraph


@dataclass(frozen=True)
class Coloring:
    """Total assignment of colors 1..k to vertices 1..n."""

    values: tuple[int, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"k must be positive, got {self.k}")
        object.__setattr__(self, "values", tuple(int(c) for c in self.values))
        for v, c in enumerate(self.values, start=1):
            if not 1 <= c <= self.k:
                raise DomainError(f"vertex {v} has color {c}, outside 1..{self.k}")

    @property
    def n(self) -> int:
        return len(self.values)

    def color(self, v: int) -> int:
        if not 1 <= v <= self.n:
            raise DomainError(f"vertex {v} out of range 1..{self.n}")
        return self.values[v - 1]

    def classes(self) -> tuple[frozenset[int], ...]:
        """Vertex sets of the color classes, indexed 0..k-1 for colors 1..k."""
        out = [set() for _ in range(self.k)]
        for v, c in enumerate(self.values, start=1):
            out[c - 1].add(v)
        return tuple(frozenset(s) for s in out)

    def profile(self) -> "ClassProfile":
        counts = [0] * self.k
        for c in self.values:
            counts[c - 1] += 1
        return ClassProfile(tuple(counts))


@dataclass(frozen=True)
class ClassProfile:
    """Sizes of the k color classes, summing to n."""

    nu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(int(x) for x in self.nu))
        if any(x < 0 for x in self.nu):
            raise DomainError(f"class sizes must be nonnegative, got {self.nu}")

    @property
    def k(self) -> int:
        return len(self.nu)

    @property
    def n(self) -> int:
        return sum(self.nu)

    def alpha(self) -> tuple[Fraction, ...]:
        """Class fractions nu_i / n as exact rationals."""
        if self.n == 0:
            raise DomainError("empty profile has no class fractions")
        return tuple(Fraction(x, self.n) for x in self.nu)


def is_proper(graph: MultiGraph, coloring: Coloring) -> bool:
    """True when no edge joins two vertices of equal color.

    A loop makes the coloring improper regardless of the color.
    """
    if coloring.n != graph.n:
        raise DomainError(f"coloring covers {coloring.n} vertices, graph has {graph.n}")
    vals = coloring.values
    for u, v in graph.edges:
        if u == v or vals[u - 1] == vals[v - 1]:
            return False
    return True


def _search_order(graph: MultiGraph) -> list[int]:
    # first-fail: highest degree first, ties by id
    return sorted(graph.vertices(), key=lambda v: (-graph.degree(v), v))


def _proper_assignments(
    graph: MultiGraph, k: int, profile: Optional[ClassProfile]
) -> Iterator[tuple[int, ...]]:
    """Backtracking enumeration in internal (first-fail) vertex order."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if profile is not None:
        if profile.k != k:
            raise DomainError(f"profile has {profile.k} classes, expected {k}")
        if profile.n != graph.n:
            raise DomainError(f"profile sums to {profile.n}, graph has {graph.n} vertices")
    if any(u == v for u, v in graph.edges):
        return  # a loop kills every coloring
    order = _search_order(graph)
    pos_of = {v: i for i, v in enumerate(order)}
    # neighbors already assigned when position i is reached
    earlier: list[list[int]] = [[] for _ in order]
    for u, v in set((min(a, b), max(a, b)) for a, b in graph.edges):
        pu, pv = pos_of[u], pos_of[v]
        if pu < pv:
            earlier[pv].append(pu)
        else:
            earlier[pu].append(pv)
    n = graph.n
    assigned = [0] * n
    counts = [0] * (k + 1)
    cap = list(profile.nu) if profile is not None else None

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            out = [0] * n
            for pos, v in enumerate(order):
                out[v - 1] = assigned[pos]
            yield tuple(out)
            return
        banned = {assigned[j] for j in earlier[i]}
        for c in range(1, k + 1):
            if c in banned:
                continue
            if cap is not None and counts[c] == cap[c - 1]:
                continue
            assigned[i] = c
            counts[c] += 1
            yield from extend(i + 1)
            counts[c] -= 1
        assigned[i] = 0

    yield from extend(0)


def enumerate_proper(
    graph: MultiGraph, k: int, profile: Optional[ClassProfile] = None
) -> Iterator[Coloring]:
    """Yield every proper k-coloring once, in lexicographic order of the
    color vector.

    The search runs in first-fail vertex order internally, so results
    are buffered and sorted before being yielded.
    """
    found = sorted(_proper_assignments(graph, k, profile))
    for vals in found:
        yield Coloring(vals, k)


def count_proper(graph: MultiGraph, k: int, profile: Optional[ClassProfile] = None) -> int:
    """Number of proper k-colorings, optionally restricted to a profile."""
    return sum(1 for _ in _proper_assignments(graph, k, profile))


@dataclass(frozen=True)
class BalanceReport:
    """Outcome of the class-size balance criterion."""

    n: int
    k: int
    target: float
    deviations: tuple[float, ...]
    deviation_threshold: float
    violations: int
    violation_cap: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "target": self.target,
            "deviations": list(self.deviations),
            "deviation_threshold": self.deviation_threshold,
            "violations": self.violations,
            "violation_cap": self.violation_cap,
            "passed": self.passed,
        }


def balance_check(
    subject: Union[Coloring, ClassProfile, Sequence[int]],
    n: Optional[int] = None,
    k: Optional[int] = None,
) -> BalanceReport:
    """Check how balanced a coloring's class profile is.

    A class violates when its size deviates from n/k by more than
    n/(k ln^4 k); the profile passes when at most ln^8 k classes
    violate. Accepts a Coloring, a ClassProfile, or a bare sequence of
    class sizes. Needs k >= 2.
    """
    if isinstance(subject, Coloring):
        profile = subject.profile()
    elif isinstance(subject, ClassProfile):
        profile = subject
    else:
        profile = ClassProfile(tuple(subject))
    if k is not None and profile.k != k:
        raise DomainError(f"profile has {profile.k} classes, expected k={k}")
    if n is not None and profile.n != n:
        raise DomainError(f"profile sums to {profile.n}, expected n={n}")
    n_, k_ = profile.n, profile.k
    if k_ < 2:
        raise DomainError(f"balance criterion needs k >= 2, got k={k_}")
    if n_ < 1:
        raise DomainError("balance criterion needs a nonempty profile")
    log_k = math.log(k_)
    threshold = n_ / (k_ * log_k**4)
    cap = log_k**8
    target = n_ / k_
    deviations = tuple(abs(x - target) for x in profile.nu)
    violations = sum(1 for dev in deviations if dev > threshold)
    return BalanceReport(
        n=n_,
        k=k_,
        target=target,
        deviations=tuple(int(d) if float(d).is_integer() else d for d in deviations),
        deviation_threshold=threshold,
        violations=violations,
        violation_cap=cap,
        passed=violations <= cap,
    )


def write_coloring(coloring: Coloring) -> str:
    """Serialize to the text format: 'n k' header then the color vector."""
    head = f"{coloring.n} {coloring.k}"
    return head + "\n" + " ".join(str(c) for c in coloring.values) + "\n"


def read_coloring(text: str) -> Coloring:
    """Parse the coloring text format; inverse of ``write_coloring``."""
    rows = [line for line in text.splitlines() if line.strip()]
    if len(rows) != 2:
        raise DomainError("coloring input must be a header line plus a value line")
    head = rows[0].split()
    if len(head) != 2:
        raise DomainError(f"malformed header {rows[0]!r}, expected 'n k'")
    n, k = int(head[0]), int(head[1])
    vals = [int(x) for x in rows[1].split()]
    if len(vals) != n:
        raise DomainError(f"header announces {n} values, found {len(vals)}")
    return Coloring(tuple(vals), k)
